use std::sync::Arc;

use proptest::prelude::*;
use strata_algebra::*;

fn ring3() -> Arc<PolyRing> {
    PolyRing::grevlex(["x", "y", "z"])
}

fn poly_strategy(ring: Arc<PolyRing>, max_terms: usize, max_exp: u32) -> impl Strategy<Value = Polynomial> {
    let n = ring.nvars();
    prop::collection::vec((prop::collection::vec(0..=max_exp, n), -4i64..=4), 0..=max_terms).prop_map(move |terms| {
        Polynomial::from_terms(&ring, terms.into_iter().map(|(e, c)| (e, BigRational::from_integer(c.into()))))
    })
}

fn small_limits() -> GroebnerLimits {
    GroebnerLimits { max_basis: 200, max_degree: 24, max_reductions: 5_000 }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, rng_seed: proptest::test_runner::RngSeed::Fixed(11), ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms(a in poly_strategy(ring3(), 4, 2), b in poly_strategy(ring3(), 4, 2), c in poly_strategy(ring3(), 4, 2)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn order_is_multiplicative(a in prop::collection::vec(0u32..4, 3), b in prop::collection::vec(0u32..4, 3), c in prop::collection::vec(0u32..4, 3)) {
        for order in [MonomialOrder::GrevLex, MonomialOrder::Lex, MonomialOrder::Block { split: 1 }] {
            let ac: Vec<u32> = a.iter().zip(&c).map(|(x, y)| x + y).collect();
            let bc: Vec<u32> = b.iter().zip(&c).map(|(x, y)| x + y).collect();
            prop_assert_eq!(order.cmp(&a, &b), order.cmp(&ac, &bc));
            prop_assert_eq!(order.cmp(&a, &b), order.cmp(&b, &a).reverse());
            prop_assert!(order.cmp(&ac, &a) != std::cmp::Ordering::Less);
        }
    }

    #[test]
    fn membership_matches_explicit_combinations(
        g1 in poly_strategy(ring3(), 3, 2),
        g2 in poly_strategy(ring3(), 3, 2),
        hs in prop::collection::vec((poly_strategy(ring3(), 3, 1), poly_strategy(ring3(), 3, 1)), 20),
    ) {
        let r = ring3();
        let ideal = Ideal::new(&r, vec![g1.clone(), g2.clone()]).unwrap();
        let Ok(ideal) = ideal.with_basis(&small_limits()) else { return Ok(()) };
        prop_assert!(ideal.contains(&g1).unwrap());
        prop_assert!(ideal.contains(&g2).unwrap());
        for (h1, h2) in &hs {
            let member = &(h1 * &g1) + &(h2 * &g2);
            prop_assert!(ideal.contains(&member).unwrap());
        }
        if !ideal.is_unit().unwrap() {
            // normal forms are fixed points of reduction
            let probe = &Polynomial::var(&r, 0) + &Polynomial::one(&r);
            let nf = ideal.normal_form(&probe).unwrap();
            prop_assert_eq!(ideal.normal_form(&nf).unwrap(), nf.clone());
        }
    }

    #[test]
    fn basis_is_reduced_and_stable(g1 in poly_strategy(ring3(), 3, 2), g2 in poly_strategy(ring3(), 3, 2)) {
        let Ok(gb) = groebner_basis(&[g1, g2], &small_limits()) else { return Ok(()) };
        for (k, g) in gb.iter().enumerate() {
            prop_assert!(g.leading_coeff().map(|c| c == &BigRational::from_integer(1.into())).unwrap_or(false));
            let others: Vec<Polynomial> = gb.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, p)| p.clone()).collect();
            prop_assert_eq!(&reduce(g, &others), g);
        }
        prop_assert_eq!(groebner_basis(&gb, &small_limits()).unwrap(), gb);
    }

    #[test]
    fn saturation_is_idempotent(g1 in poly_strategy(ring3(), 3, 2), s in poly_strategy(ring3(), 2, 1)) {
        prop_assume!(!s.is_zero());
        let r = ring3();
        let i = Ideal::new(&r, vec![g1]).unwrap();
        let Ok(once) = i.saturate(&s, &small_limits()) else { return Ok(()) };
        let Ok(twice) = once.saturate(&s, &small_limits()) else { return Ok(()) };
        prop_assert_eq!(once.basis(), twice.basis());
    }

    #[test]
    fn content_reconstructs(p in poly_strategy(ring3(), 4, 2), q in poly_strategy(ring3(), 3, 2), var in 0usize..3) {
        let f = &p * &q;
        prop_assume!(!f.is_zero());
        let (c, prim) = content_factor(&f, var);
        prop_assert_eq!(&c * &prim, f);
        prop_assert!(content_in(&prim, var).is_constant());
    }

    #[test]
    fn gcd_divides_both(p in poly_strategy(ring3(), 3, 2), q in poly_strategy(ring3(), 3, 2), h in poly_strategy(ring3(), 3, 2)) {
        let a = &p * &h;
        let b = &q * &h;
        prop_assume!(!a.is_zero() && !b.is_zero());
        let g = gcd(&a, &b);
        prop_assert!(a.div_exact(&g).is_some());
        prop_assert!(b.div_exact(&g).is_some());
        prop_assert!(g.div_exact(&h.normalized()).is_some());
    }

    #[test]
    fn univariate_factors_multiply_back(roots in prop::collection::vec((-5i64..=5, 1i64..=3), 0..4), quad in 0i64..4, lead in 1i64..5) {
        let r = PolyRing::grevlex(["x"]);
        let mut p = Polynomial::from_int(&r, lead);
        for (a, b) in roots {
            p = &p * &r.parse(&format!("{b}*x - {}", a.rem_euclid(7))).unwrap();
        }
        p = &p * &r.parse(&format!("x^2 + {quad}*x + 3")).unwrap();
        let f = univariate_rational_factors(&p).unwrap();
        prop_assert_eq!(f.expand(&r), p);
    }

    #[test]
    fn column_scaling_shifts_valuations(entries in prop::collection::vec((-3i64..=3, -3i64..=3), 8), col in 0usize..4, k in 1usize..3) {
        let q = CoefficientField::Rationals;
        let cells: Vec<TPoly> = entries.iter().map(|&(a, b)| TPoly::linear(&q, q.from_int(a), q.from_int(b))).collect();
        let m = TPolynomialMatrix::new(q.clone(), vec![cells[..4].to_vec(), cells[4..].to_vec()]).unwrap();
        let base = t_valuation_of_minors(&m, 2, None).unwrap();
        let scaled = t_valuation_of_minors(&m.scale_column(col, k), 2, None).unwrap();
        for (a, b) in base.iter().zip(&scaled) {
            let expected = if a.columns.contains(&col) { a.valuation.map(|v| v + k) } else { a.valuation };
            prop_assert_eq!(b.valuation, expected);
        }
    }
}
