use proptest::prelude::*;
use rankone_core::ranktwo::{
    classify_case, make_rank_two, maximizer_count, project_pair, projection_closed_form, ratio_f,
    CaseTag, RankTwoParams,
};
use rankone_core::spectral::ratio;
use rankone_core::symtensor::{frob_inner, sym_outer};

fn unit(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, n)
        .prop_filter("nonzero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-2)
        .prop_map(|v| {
            let r = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.into_iter().map(|x| x / r).collect()
        })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn params() -> impl Strategy<Value = (usize, RankTwoParams)> {
    (3usize..8, 2usize..4).prop_flat_map(|(d, n)| {
        (Just(d), -2.0f64..2.0, -2.0f64..2.0, unit(n), unit(n))
            .prop_filter("independent", |(_, a, b, u, v)| {
                a.abs() > 0.05 && b.abs() > 0.05 && dot(u, v).abs() < 0.99
            })
            .prop_map(|(d, a, b, u, v)| (d, RankTwoParams::new(a, b, u, v)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn canonical_form_is_the_same_tensor((d, p) in params()) {
        let (c, sign) = p.canonical(d).unwrap();
        let a = make_rank_two(&p, d).unwrap();
        let b = make_rank_two(&c, d).unwrap().scaled(sign);
        prop_assert!(a.add_scaled(-1.0, &b).unwrap().frob_norm() < 1e-12 * (1.0 + a.frob_norm()));
        prop_assert!(c.alpha > 0.0 && dot(&c.u, &c.v) >= 0.0);
        prop_assert!(c.beta <= 0.0 || c.alpha >= c.beta);
    }

    #[test]
    fn objective_matches_full_ratio((d, p) in params()) {
        let f = ratio_f(&p, d).unwrap();
        prop_assert!(f > 0.0 && f <= 1.0 + 1e-12);
        if p.u.len() == 2 {
            let r = ratio(&make_rank_two(&p, d).unwrap()).unwrap();
            prop_assert!((f - r * r).abs() < 1e-10);
        }
    }

    #[test]
    fn sum_case_half((d, p) in params()) {
        let (c, _) = p.canonical(d).unwrap();
        if classify_case(&c) == CaseTag::Sum {
            prop_assert!(ratio_f(&c, d).unwrap() >= 0.5 - 1e-12);
        }
    }

    #[test]
    fn generic_case_has_one_maximizer((d, p) in params()) {
        let (c, _) = p.canonical(d).unwrap();
        if classify_case(&c) == CaseTag::Generic && c.alpha > c.beta * (1.0 + 1e-6) {
            prop_assert_eq!(maximizer_count(&c, d).unwrap(), 1);
        }
    }

    #[test]
    fn projection_residual_is_orthogonal((d, u, v, w) in (2usize..6, 2usize..5)
        .prop_flat_map(|(d, n)| (Just(d), unit(n), unit(n), prop::collection::vec(-1.0f64..1.0, n)))
        .prop_filter("independent", |(_, u, v, _)| dot(u, v).abs() < 0.99))
    {
        let n = u.len();
        let p = project_pair(&u, &v, &w, d).unwrap();
        let target = sym_outer(&w, d, &w, 0).unwrap();
        let r = target.add_scaled(-1.0, &p.tensor).unwrap();
        for f in [&u, &v] {
            for i in 0..n {
                let mut e = vec![0.0; n];
                e[i] = 1.0;
                let g = sym_outer(f, d - 1, &e, 1).unwrap();
                prop_assert!(frob_inner(&g, &r).unwrap().abs() < 1e-11);
            }
        }
        prop_assert!(p.tensor.frob_norm() <= target.frob_norm() * (1.0 + 1e-12));
    }

    #[test]
    fn closed_form_is_exact_on_the_generators((d, u, v) in (2usize..6, 2usize..4)
        .prop_flat_map(|(d, n)| (Just(d), unit(n), unit(n)))
        .prop_filter("independent", |(_, u, v)| dot(u, v).abs() < 0.95))
    {
        for w in [&u, &v] {
            let c = projection_closed_form(&u, &v, w, d).unwrap();
            let p = project_pair(&u, &v, w, d).unwrap();
            prop_assert!(c.tensor.add_scaled(-1.0, &p.tensor).unwrap().frob_norm() < 1e-10);
        }
    }
}
