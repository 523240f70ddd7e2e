use num_traits::{One, Zero};
use proptest::prelude::*;
use schur_core::{
    content, enumerate_tableaux, hook_content_rank, induced_parameters, partitions_of, product_decompose, rank,
    retriangulate_slopes, schur_matrix, schur_matrix_row_convention, schur_oracle, schur_polynomial, slopes,
    weight_image, Matrix, Partition, Rational, RationalMatrix, RationalPoint, WeightVector,
};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(a, b)| Rational::new(a.into(), b.into()))
}

fn square(n: usize) -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec(small_rational(), n * n).prop_map(move |v| Matrix::new(n, n, v).unwrap())
}

/// Shapes of size `1..=max_q` whose module is nonzero in dimension `n`.
fn shapes(max_q: usize, n: usize) -> Vec<Partition> {
    (1..=max_q)
        .flat_map(partitions_of)
        .filter(|u| u.longest_column() <= n)
        .collect()
}

fn shape_and_matrices(max_q: usize, max_n: usize) -> impl Strategy<Value = (Partition, RationalMatrix, RationalMatrix)> {
    (1..=max_n).prop_flat_map(move |n| {
        let all = shapes(max_q, n);
        (prop::sample::select(all), square(n), square(n))
    })
}

fn upper(n: usize) -> impl Strategy<Value = RationalMatrix> {
    square(n).prop_map(move |a| Matrix::from_fn(n, n, |i, j| if i <= j { a[(i, j)].clone() } else { Rational::zero() }))
}

fn point(n: usize) -> impl Strategy<Value = RationalPoint> {
    (
        prop::collection::vec(small_rational(), n),
        prop::collection::vec(0i64..50, n),
        prop::collection::vec(small_rational(), n),
    )
        .prop_map(|(phi, mut k, c)| {
            k.sort_unstable_by(|a, b| b.cmp(a));
            RationalPoint::new(phi, k, Some(c)).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn functoriality((u, a, b) in shape_and_matrices(5, 3)) {
        let lhs = schur_matrix(&u, &(&a * &b)).unwrap();
        let rhs = &schur_matrix(&u, &a).unwrap() * &schur_matrix(&u, &b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn row_convention_is_functorial_too((u, a, b) in shape_and_matrices(4, 3)) {
        let lhs = schur_matrix_row_convention(&u, &(&a * &b)).unwrap();
        let rhs = &schur_matrix_row_convention(&u, &a).unwrap() * &schur_matrix_row_convention(&u, &b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn scalar_matrices((u, a, _b) in shape_and_matrices(5, 3)) {
        let c = a[(0, 0)].clone();
        let n = a.rows();
        let s = schur_matrix(&u, &Matrix::identity(n).scale(&c)).unwrap();
        let cq = (0..u.size()).fold(Rational::one(), |acc, _| acc * c.clone());
        prop_assert_eq!(s.clone(), Matrix::identity(s.rows()).scale(&cq));
        prop_assert_eq!(schur_matrix(&u, &Matrix::<Rational>::identity(n)).unwrap(), Matrix::identity(s.rows()));
    }

    #[test]
    fn diagonal_inputs((u, a, _b) in shape_and_matrices(5, 3)) {
        let n = a.rows();
        let x: Vec<Rational> = (0..n).map(|i| a[(i, i)].clone()).collect();
        let s = schur_matrix(&u, &Matrix::diagonal_from(&x)).unwrap();
        prop_assert!(s.is_diagonal());
        let params = induced_parameters(&u, n).unwrap();
        for (i, m) in params.iter().enumerate() {
            let mono = m.exponents.0.iter().zip(&x).fold(Rational::one(), |acc, (&e, xi)| {
                (0..e).fold(acc, |acc, _| acc * xi.clone())
            });
            prop_assert_eq!(&s[(i, i)], &mono);
        }
        prop_assert_eq!(s.trace(), schur_polynomial(&u, &x));
    }

    #[test]
    fn upper_triangular_inputs(n in 1usize..=3, a in upper(3)) {
        let a = Matrix::from_fn(n, n, |i, j| a[(i, j)].clone());
        for u in shapes(4, n) {
            prop_assert!(schur_matrix(&u, &a).unwrap().is_upper_triangular(), "{}", u);
        }
    }

    #[test]
    fn trace_is_conjugation_invariant((u, a, p) in shape_and_matrices(4, 3)) {
        if let Some(inv) = p.inverse().unwrap() {
            let conj = &(&p * &a) * &inv;
            prop_assert_eq!(schur_matrix(&u, &conj).unwrap().trace(), schur_matrix(&u, &a).unwrap().trace());
        }
    }

    #[test]
    fn oracle_agrees((u, a, _b) in shape_and_matrices(4, 3)) {
        let s = schur_matrix(&u, &a).unwrap();
        prop_assert!(schur_oracle(&u, &a).unwrap().agrees_with(&s).unwrap());
    }

    #[test]
    fn floats_track_rationals((u, a, _b) in shape_and_matrices(4, 3)) {
        let exact = schur_matrix(&u, &a).unwrap();
        let af = a.map(|x| x.numer().to_string().parse::<f64>().unwrap() / x.denom().to_string().parse::<f64>().unwrap());
        let approx = schur_matrix(&u, &af).unwrap();
        for (x, y) in exact.entries().iter().zip(approx.entries()) {
            let xf = x.numer().to_string().parse::<f64>().unwrap() / x.denom().to_string().parse::<f64>().unwrap();
            prop_assert!((xf - y).abs() <= 1e-9 * (1.0 + xf.abs()));
        }
    }

    #[test]
    fn weight_map_is_additive(
        n in 1usize..=4,
        k1 in prop::collection::vec(-20i64..20, 4),
        k2 in prop::collection::vec(-20i64..20, 4),
        pick in 0usize..100,
    ) {
        let all = shapes(5, n);
        let u = &all[pick % all.len()];
        let w1 = WeightVector::single("t", k1[..n].to_vec());
        let w2 = WeightVector::single("t", k2[..n].to_vec());
        let sum = weight_image(u, &w1.add(&w2).unwrap()).unwrap().tableau_order;
        let parts = weight_image(u, &w1).unwrap().tableau_order.add(&weight_image(u, &w2).unwrap().tableau_order).unwrap();
        prop_assert_eq!(sum, parts);
    }

    #[test]
    fn retriangulation_random_points(pt in (1usize..=5).prop_flat_map(point), c in prop::collection::vec(small_rational(), 5)) {
        let n = pt.rank();
        for sigma in schur_core::slope::all_permutations(n) {
            let r = retriangulate_slopes(&pt, &sigma).unwrap();
            prop_assert_eq!(&r, &slopes(&pt.permute_phi(&sigma).unwrap()));
            let other = pt.with_norm_const(c[..n].to_vec()).unwrap();
            let r2 = retriangulate_slopes(&other, &sigma).unwrap();
            for i in 0..n {
                prop_assert_eq!(&r[i] - &slopes(&pt)[i], &r2[i] - &slopes(&other)[i]);
            }
        }
    }
}

#[test]
fn enumeration_is_strictly_increasing() {
    for total in 1..=6 {
        for u in partitions_of(total) {
            for n in 1..=4 {
                let tabs = enumerate_tableaux(&u, n);
                assert!(tabs.windows(2).all(|w| w[0] < w[1]), "{u} n={n}");
                assert_eq!(tabs.is_empty(), u.longest_column() > n);
            }
        }
    }
}

#[test]
fn content_multiset_is_symmetric() {
    for total in 1..=5 {
        for u in partitions_of(total) {
            for n in 1..=3 {
                let contents: Vec<Vec<usize>> = enumerate_tableaux(&u, n).iter().map(|t| content(t, n).0).collect();
                let mut base = contents.clone();
                base.sort();
                for sigma in schur_core::slope::all_permutations(n) {
                    let mut moved: Vec<Vec<usize>> = contents
                        .iter()
                        .map(|c| (0..n).map(|i| c[sigma.apply(i)]).collect())
                        .collect();
                    moved.sort();
                    assert_eq!(moved, base, "{u} n={n}");
                }
            }
        }
    }
}

#[test]
fn det_twist_keeps_rank() {
    for n in 1..=3 {
        for total in n..=6 {
            for u in partitions_of(total).into_iter().filter(|u| u.len() == n && u.longest_column() <= n) {
                for k in 1..=2 {
                    let t = u.det_twist(n, k).unwrap();
                    assert_eq!(rank(&t, n), rank(&u, n));
                    assert_eq!(hook_content_rank(&t, n), hook_content_rank(&u, n));
                }
            }
        }
    }
}

#[test]
fn products_are_symmetric_and_evaluate() {
    let pts: Vec<Vec<Rational>> = vec![
        vec![Rational::new(1.into(), 2.into()), Rational::from_integer(3.into()), Rational::from_integer((-2).into())],
        vec![Rational::from_integer(2.into()), Rational::new((-1).into(), 3.into()), Rational::from_integer(5.into())],
    ];
    for n in 2..=3 {
        let all = shapes(3, n);
        for a in &all {
            for b in &all {
                let d = product_decompose(a, b, n).unwrap();
                assert_eq!(d, product_decompose(b, a, n).unwrap());
                for x in &pts {
                    let x = &x[..n];
                    assert_eq!(schur_polynomial(a, x) * schur_polynomial(b, x), d.evaluate(x));
                }
            }
        }
    }
}
