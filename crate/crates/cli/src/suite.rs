//! Randomized acceptance batteries behind `schur --suite`.
//!
//! Every random input is drawn from a ChaCha stream keyed by the suite seed,
//! the criterion and the item index, so a report does not depend on how
//! rayon schedules the work.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use schur_core::slope::{all_permutations, factorial};
use schur_core::{
    decompose_character, det_twist_check, enumerate_tableaux, content, induced_parameters, kdiff_holds,
    partitions_of, rank, retriangulate_slopes, schur_matrix, schur_oracle, schur_polynomial, slopes,
    swtsl_check, sym_tensor_std_decompose, torus_kernel, validate_ast, weight_image, admissible_permutations,
    FamilySpec, Matrix, Partition, Poly, Rational, RationalMatrix, RationalPoint, SchurModule, WeightVector,
};

use crate::{exit_code_for, run, Command, JobRequest, EXIT_INVARIANT};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;
const MAX_REPORTED: usize = 12;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub within_budget: bool,
    pub elapsed_ms: u128,
    pub budget_ms: u128,
    pub checks: u64,
    pub detail: String,
    pub counterexamples: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub passed: bool,
    pub criteria: Vec<CriterionReport>,
}

/// Result of one battery before timing is attached.
#[derive(Default)]
struct Tally {
    checks: u64,
    failures: Vec<String>,
    detail: String,
}

impl Tally {
    fn absorb(&mut self, other: Tally) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

fn merge(parts: Vec<Tally>) -> Tally {
    parts.into_iter().fold(Tally::default(), |mut acc, t| {
        acc.absorb(t);
        acc
    })
}

pub const CRITERIA: [(u8, &str, u128); 9] = [
    (1, "functoriality", 60_000),
    (2, "borel and torus images", 60_000),
    (3, "oracle equivalence", 120_000),
    (4, "torus kernel", 10_000),
    (5, "determinant twist", 30_000),
    (6, "symmetric tensor decomposition", 30_000),
    (7, "weight map inequalities", 30_000),
    (8, "slopes and permutation bound", 30_000),
    (9, "symmetric cube example", 5_000),
];

pub fn run_suite(seed: u64) -> SuiteReport {
    let criteria: Vec<CriterionReport> = CRITERIA.iter().map(|&(id, ..)| run_criterion(id, seed)).collect();
    SuiteReport { seed, passed: criteria.iter().all(|c| c.passed), criteria }
}

pub fn run_criterion(id: u8, seed: u64) -> CriterionReport {
    let &(_, name, budget_ms) = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .unwrap_or_else(|| panic!("no criterion {id}"));
    let start = Instant::now();
    let tally = match id {
        1 => functoriality(seed),
        2 => borel(seed),
        3 => oracle(seed),
        4 => kernel(),
        5 => det_twist(seed),
        6 => sym_tensor(seed),
        7 => swtsl(seed),
        8 => slope_suite(seed),
        9 => sym_cube(),
        _ => unreachable!(),
    };
    let elapsed_ms = start.elapsed().as_millis();
    let within_budget = elapsed_ms <= budget_ms;
    let total = tally.failures.len();
    let mut detail = tally.detail;
    if total > 0 {
        detail.push_str(&format!("; {total} failing checks"));
    }
    if !within_budget {
        detail.push_str(&format!("; over budget ({elapsed_ms} ms > {budget_ms} ms)"));
    }
    CriterionReport {
        id,
        name,
        passed: total == 0 && within_budget,
        within_budget,
        elapsed_ms,
        budget_ms,
        checks: tally.checks,
        detail,
        counterexamples: tally.failures.into_iter().take(MAX_REPORTED).collect(),
    }
}

fn stream(seed: u64, criterion: u64, item: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((criterion << 48) | item);
    rng
}

fn rational(rng: &mut ChaCha8Rng) -> Rational {
    let num: i64 = rng.gen_range(-4..=4);
    let den: i64 = if rng.gen_bool(0.25) { rng.gen_range(2..=3) } else { 1 };
    Rational::new(num.into(), den.into())
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> RationalMatrix {
    Matrix::from_fn(n, n, |_, _| rational(rng))
}

fn random_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| rational(rng)).collect()
}

/// `(shape, n)` pairs in a fixed order.
fn shape_grid(max_q: usize, max_n: usize, keep: impl Fn(&Partition, usize) -> bool) -> Vec<(Partition, usize)> {
    (1..=max_n)
        .flat_map(|n| (1..=max_q).flat_map(partitions_of).map(move |u| (u, n)))
        .filter(|(u, n)| keep(u, *n))
        .collect()
}

fn functoriality(seed: u64) -> Tally {
    let grid = shape_grid(5, 4, validate_ast);
    let mut t = merge(
        grid.par_iter()
            .enumerate()
            .map(|(idx, (u, n))| {
                let module = SchurModule::new(u.clone(), *n).expect("within caps");
                let mut t = Tally::default();
                for pair in 0..200u64 {
                    let mut rng = stream(seed, 1, ((idx as u64) << 16) | pair);
                    let a = random_matrix(&mut rng, *n);
                    let b = random_matrix(&mut rng, *n);
                    let lhs = module.matrix(&(&a * &b)).expect("square input");
                    let rhs = &module.matrix(&a).expect("square input") * &module.matrix(&b).expect("square input");
                    t.check(lhs == rhs, || format!("{u} n={n} pair {pair}: S(AB) != S(A)S(B)"));
                }
                t
            })
            .collect(),
    );
    t.detail = format!("{} shapes x 200 pairs", grid.len());
    t
}

fn borel(seed: u64) -> Tally {
    let grid = shape_grid(4, 3, validate_ast);
    let mut t = merge(
        grid.par_iter()
            .enumerate()
            .map(|(idx, (u, n))| {
                let n = *n;
                let module = SchurModule::new(u.clone(), n).expect("within caps");
                let params = induced_parameters(u, n).expect("nonzero module");
                let mut t = Tally::default();
                let mut rng = stream(seed, 2, idx as u64);
                for round in 0..20 {
                    let x = random_point(&mut rng, n);
                    let s = module.matrix(&Matrix::diagonal_from(&x)).expect("square input");
                    let expect: Vec<Rational> = params
                        .iter()
                        .map(|m| {
                            m.exponents.0.iter().zip(&x).fold(Rational::one(), |acc, (&e, xi)| {
                                (0..e).fold(acc, |acc, _| acc * xi)
                            })
                        })
                        .collect();
                    t.check(s.is_diagonal() && s.diagonal() == expect, || {
                        format!("{u} n={n} diagonal round {round}")
                    });
                    let up = random_matrix(&mut rng, n);
                    let up = Matrix::from_fn(n, n, |i, j| if i <= j { up[(i, j)].clone() } else { Rational::zero() });
                    t.check(module.matrix(&up).expect("square input").is_upper_triangular(), || {
                        format!("{u} n={n} upper round {round}")
                    });
                }
                if n > 1 {
                    let mut found = 0;
                    while found < 50 {
                        let a = random_matrix(&mut rng, n);
                        if a.is_upper_triangular() || a.det().expect("square").is_zero() {
                            continue;
                        }
                        found += 1;
                        t.check(!module.matrix(&a).expect("square input").is_upper_triangular(), || {
                            format!("{u} n={n}: non-upper input {a:?} has upper image")
                        });
                    }
                }
                t
            })
            .collect(),
    );
    t.detail = format!("{} shapes; 20 diagonal, 20 upper, 50 non-upper inputs each (n > 1)", grid.len());
    t
}

fn oracle(seed: u64) -> Tally {
    let grid = shape_grid(4, 3, |u, n| rank(u, n) > 0);
    let mut t = merge(
        grid.par_iter()
            .enumerate()
            .map(|(idx, (u, n))| {
                let mut t = Tally::default();
                let mut rng = stream(seed, 3, idx as u64);
                for round in 0..20 {
                    let a = random_matrix(&mut rng, *n);
                    let s = schur_matrix(u, &a).expect("within caps");
                    let ok = schur_oracle(u, &a).and_then(|o| o.agrees_with(&s)).unwrap_or(false);
                    t.check(ok, || format!("{u} n={n} round {round}"));
                }
                t
            })
            .collect(),
    );
    t.detail = format!("{} nonzero (shape, n) pairs x 20 matrices", grid.len());
    t
}

fn kernel() -> Tally {
    let mut t = Tally::default();
    let mut valid = 0;
    let mut rect = 0;
    for n in 1..=5 {
        for u in (1..=6).flat_map(partitions_of) {
            if validate_ast(&u, n) {
                valid += 1;
                let k = torus_kernel(&u, n).expect("n > 0");
                t.check(k.is_diagonal_mu_q, || {
                    format!("{u} n={n}: factors {:?}, free rank {}", k.invariant_factors, k.free_rank)
                });
            } else if u.is_rectangular() {
                rect += 1;
                let k = torus_kernel(&u, n).expect("n > 0");
                t.check(k.ast_violated && k.is_larger_than_diagonal(), || {
                    format!(
                        "{u} n={n}: rectangular shape with kernel {:?} x G_m^{}, not larger than mu_{}",
                        k.invariant_factors,
                        k.free_rank,
                        u.size()
                    )
                });
            }
        }
    }
    t.detail = format!("{valid} valid pairs, {rect} rectangular pairs");
    t
}

fn det_twist(seed: u64) -> Tally {
    let mut cases = Vec::new();
    for n in 1..=3 {
        for u in (1..=8).flat_map(partitions_of) {
            if u.len() != n || u.longest_column() > n {
                continue;
            }
            for k in 1.. {
                if u.size() + n * k > 8 {
                    break;
                }
                cases.push((u.clone(), n, k));
            }
        }
    }
    let mut t = merge(
        cases
            .par_iter()
            .enumerate()
            .map(|(idx, (u, n, k))| {
                let mut t = Tally::default();
                let mut rng = stream(seed, 5, idx as u64);
                for round in 0..100 {
                    let a = random_matrix(&mut rng, *n);
                    t.check(det_twist_check(u, *k, &a).unwrap_or(false), || {
                        format!("{u} n={n} k={k} round {round}")
                    });
                }
                t
            })
            .collect(),
    );
    t.detail = format!("{} (u, k) pairs x 100 matrices", cases.len());
    t
}

fn sym_tensor(seed: u64) -> Tally {
    let cases: Vec<(usize, usize)> = (2..=6).flat_map(|q| (2..=5).map(move |n| (q, n))).collect();
    let mut t = merge(
        cases
            .par_iter()
            .enumerate()
            .map(|(idx, &(q, n))| {
                let mut t = Tally::default();
                let d = match sym_tensor_std_decompose(q, n) {
                    Ok(d) => d,
                    Err(e) => {
                        t.check(false, || format!("q={q} n={n}: {e}"));
                        return t;
                    }
                };
                let sym = Partition::single_row(q - 1).expect("q >= 2");
                t.check(d.dimension() == rank(&sym, n) as u64 * n as u64, || {
                    format!("q={q} n={n}: dimension {}", d.dimension())
                });
                let mut rng = stream(seed, 6, idx as u64);
                for round in 0..20 {
                    let x = random_point(&mut rng, n);
                    let lhs = schur_polynomial(&sym, &x) * x.iter().fold(Rational::zero(), |acc, v| acc + v);
                    t.check(d.evaluate(&x) == lhs, || format!("q={q} n={n} point {round}"));
                }
                t
            })
            .collect(),
    );
    // a negative coefficient must surface as an invariant breach, exit 3
    let mut bad = Poly::zero(2);
    bad.add_term(vec![2, 0], BigInt::one());
    bad.add_term(vec![1, 1], BigInt::from(-3));
    let code = decompose_character(&bad).err().map(|e| exit_code_for(&e));
    t.check(code == Some(EXIT_INVARIANT), || format!("negative coefficient gave exit {code:?}"));
    t.detail = format!("{} (q, n) pairs, 20 points each, plus the breach path", cases.len());
    t
}

fn classical_weight(rng: &mut ChaCha8Rng, n: usize, strict: bool) -> Vec<i64> {
    loop {
        let mut k: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=30)).collect();
        k.sort_unstable_by(|a, b| b.cmp(a));
        if !strict || k.windows(2).all(|w| w[0] > w[1]) {
            return k;
        }
    }
}

/// Every content vector occurs once.
fn multiplicity_free(u: &Partition, n: usize) -> bool {
    let contents: BTreeSet<Vec<usize>> = enumerate_tableaux(u, n).iter().map(|t| content(t, n).0).collect();
    contents.len() == rank(u, n)
}

fn swtsl(seed: u64) -> Tally {
    let grid = shape_grid(6, 5, |u, n| rank(u, n) > 0);
    let free: Vec<&(Partition, usize)> = grid.iter().filter(|(u, n)| multiplicity_free(u, *n)).collect();
    let mut bound = merge(
        grid.par_iter()
            .enumerate()
            .map(|(idx, (u, n))| {
                let mut t = Tally::default();
                let mut rng = stream(seed, 7, idx as u64);
                for _ in 0..100 {
                    let k = WeightVector(
                        [("tau1", classical_weight(&mut rng, *n, false)), ("tau2", classical_weight(&mut rng, *n, false))]
                            .into_iter()
                            .map(|(l, k)| (l.to_string(), k))
                            .collect(),
                    );
                    let r = swtsl_check(u, &k).expect("classical weight");
                    t.check(r.bound_i(), || format!("(2.i) {u} n={n} k={:?}", k.0));
                }
                t
            })
            .collect(),
    );
    let gaps = merge(
        free.par_iter()
            .enumerate()
            .map(|(idx, (u, n))| {
                let mut t = Tally::default();
                let mut rng = stream(seed, 7, (1 << 32) | idx as u64);
                for _ in 0..100 {
                    let k = WeightVector::single("tau", classical_weight(&mut rng, *n, true));
                    let r = swtsl_check(u, &k).expect("classical weight");
                    let img = || weight_image(u, &k).expect("same n").tableau_order.0["tau"].clone();
                    t.check(r.gap_ii(), || format!("(2.ii) {u} n={n} k={:?} image {:?}", k.0["tau"], img()));
                    t.check(r.gap_iii(), || format!("(2.iii) {u} n={n} k={:?} image {:?}", k.0["tau"], img()));
                }
                t
            })
            .collect(),
    );
    let gap_failures = gaps.failures.len();
    bound.absorb(gaps);
    bound.detail = format!(
        "(2.i) on {} (shape, n) pairs x 100 weights; (2.ii)/(2.iii) on {} multiplicity-free pairs x 100 strictly decreasing weights, {gap_failures} gap failures",
        grid.len(),
        free.len()
    );
    bound
}

fn decreasing(rng: &mut ChaCha8Rng, n: usize, spread: i64) -> Vec<i64> {
    let mut k: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=spread)).collect();
    k.sort_unstable_by(|a, b| b.cmp(a));
    k
}

/// A family whose first two points pass the weight-difference condition:
/// widely spaced weights at `x`, other points moved off `I` by distinct
/// offsets, resampled until certified.
fn certified_family(rng: &mut ChaCha8Rng) -> (RationalFamily, u64) {
    let mut attempts = 0;
    loop {
        attempts += 1;
        let n = rng.gen_range(2..=5);
        let r = rng.gen_range(1..=n);
        let mut idx: Vec<usize> = (0..n).collect();
        idx.shuffle(rng);
        let set: BTreeSet<usize> = idx[..r].iter().copied().collect();
        let kx: Vec<i64> = (0..n as i64).rev().map(|i| 1000 * i + rng.gen_range(0..100)).collect();
        let count = rng.gen_range(2..=3);
        let mut points = Vec::new();
        for p in 0..count {
            let k: Vec<i64> = if p == 0 {
                kx.clone()
            } else {
                (0..n)
                    .map(|i| if set.contains(&i) { kx[i] } else { kx[i] + rng.gen_range(1..=200) })
                    .collect()
            };
            if k.windows(2).any(|w| w[0] < w[1]) {
                break;
            }
            points.push(RationalPoint::new(random_point(rng, n), k, None).expect("valid point"));
        }
        if points.len() < count {
            continue;
        }
        let fam = FamilySpec::new(n, set.clone(), points).expect("weights agree on I");
        if kdiff_holds(&fam.points()[0], &fam.points()[1], &set).expect("same rank") {
            return (fam, attempts);
        }
    }
}

type RationalFamily = FamilySpec<Rational>;

fn slope_suite(seed: u64) -> Tally {
    let points = merge(
        (0..1000u64)
            .into_par_iter()
            .map(|item| {
                let mut t = Tally::default();
                let mut rng = stream(seed, 8, item);
                let n = rng.gen_range(1..=5);
                let pt = RationalPoint::new(
                    random_point(&mut rng, n),
                    decreasing(&mut rng, n, 40),
                    Some(random_point(&mut rng, n)),
                )
                .expect("valid point");
                let other = pt.with_norm_const(random_point(&mut rng, n)).expect("same rank");
                let (base, base2) = (slopes(&pt), slopes(&other));
                for sigma in all_permutations(n) {
                    let r = retriangulate_slopes(&pt, &sigma).expect("same rank");
                    let r2 = retriangulate_slopes(&other, &sigma).expect("same rank");
                    let consistent = r == slopes(&pt.permute_phi(&sigma).expect("same rank"));
                    let cancels = (0..n).all(|i| &r[i] - &base[i] == &r2[i] - &base2[i]);
                    t.check(consistent && cancels, || {
                        format!("point {item} sigma {:?}: consistent={consistent} cancels={cancels}", sigma.one_based())
                    });
                }
                t
            })
            .collect(),
    );
    let families: Vec<(Tally, u64)> = (0..500u64)
        .into_par_iter()
        .map(|item| {
            let mut t = Tally::default();
            let mut rng = stream(seed, 8, (1 << 32) | item);
            let (fam, attempts) = certified_family(&mut rng);
            let perms = admissible_permutations(&fam).expect("certified");
            let r = fam.constant_weights();
            let fixed = perms.iter().all(|s| (0..fam.rank()).filter(|i| !fam.const_indices().contains(i)).all(|i| s.fixes(i)));
            t.check(perms.len() as u64 <= factorial(r) && fixed, || {
                format!("family {item}: {} permutations for r={r}, complement fixed={fixed}", perms.len())
            });
            (t, attempts)
        })
        .collect();
    let attempts: u64 = families.iter().map(|f| f.1).sum();
    let mut t = points;
    t.absorb(merge(families.into_iter().map(|f| f.0).collect()));
    // how often an unconstrained random pair is certified, for the report only
    let mut rng = stream(seed, 8, 2 << 32);
    let certified = (0..200)
        .filter(|_| {
            let n = rng.gen_range(2..=4);
            let set: BTreeSet<usize> = [0].into();
            let kx = decreasing(&mut rng, n, 20);
            let mut ky = decreasing(&mut rng, n, 20);
            ky[0] = kx[0];
            if ky.windows(2).any(|w| w[0] < w[1]) {
                return false;
            }
            let x = RationalPoint::new(vec![Rational::zero(); n], kx, None).expect("valid");
            let y = RationalPoint::new(vec![Rational::zero(); n], ky, None).expect("valid");
            kdiff_holds(&x, &y, &set).expect("same rank")
        })
        .count();
    t.detail = format!(
        "1000 points with every sigma; 500 certified families ({attempts} draws); {certified}/200 unconstrained pairs certified"
    );
    t
}

fn sym_cube() -> Tally {
    let mut t = Tally::default();
    let requests = [
        (Command::Rank, json!({ "partition": [1, 1, 1], "n": 2 })),
        (Command::SchurMatrix, json!({ "partition": [1, 1, 1], "matrix": { "diagonal": ["2", "3"] } })),
        (Command::TorusKernel, json!({ "partition": [1, 1, 1], "n": 2 })),
        (Command::WeightMap, json!({ "partition": [1, 1, 1], "weights": { "tau": [5, 0] } })),
    ];
    let mut docs = Vec::new();
    for (command, payload) in requests {
        let req = JobRequest { command, payload, seed: None };
        let first = run(&req);
        let second = run(&req);
        t.check(first.code == 0, || format!("{command:?} exited {}", first.code));
        t.check(first.render() == second.render(), || format!("{command:?} output not reproducible"));
        docs.push(first.document);
    }
    t.check(docs[0]["rank"] == json!(4), || format!("rank {}", docs[0]["rank"]));
    // a = 2, b = 3: (a^3, a^2 b, a b^2, b^3) on the diagonal
    let diag: Vec<serde_json::Value> = ["8/1", "0/1", "0/1", "0/1", "0/1", "12/1", "0/1", "0/1", "0/1", "0/1", "18/1", "0/1", "0/1", "0/1", "0/1", "27/1"]
        .iter()
        .map(|s| json!(s))
        .collect();
    t.check(docs[1]["matrix"]["entries"] == json!(diag), || format!("matrix {}", docs[1]["matrix"]));
    t.check(
        docs[2]["is_diagonal_mu_q"] == json!(true) && docs[2]["invariant_factors"] == json!([1, 3]),
        || format!("kernel {}", docs[2]),
    );
    t.check(docs[3]["tableau_order"]["tau"] == json!([15, 10, 5, 0]), || format!("weight image {}", docs[3]));
    t.detail = "rank, diagonal action, kernel and weight image of Sym^3 at n = 2, each run twice".into();
    t
}
