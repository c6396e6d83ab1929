use kummer_core::exactalg::{
    int, parse_rational, poly_gcd, poly_gcd_prs, rat, ratfunc_reduce, squarefree_decompose, Poly, RatFunc, Rational,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn poly_strategy(max_deg: usize, bound: i64) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-bound..=bound, 1..=max_deg + 1).prop_map(|c| Poly::from_ints(&c))
}

fn nonzero_poly(max_deg: usize, bound: i64) -> impl Strategy<Value = Poly> {
    poly_strategy(max_deg, bound).prop_filter("nonzero", |p| !p.is_zero())
}

/// Polynomial with small rational coefficients.
fn rat_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((-20i64..=20, 1i64..=6), 1..=max_deg + 1)
        .prop_map(|c| Poly::new(c.into_iter().map(|(n, d)| rat(n, d)).collect()))
        .prop_filter("nonzero", |p| !p.is_zero())
}

fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=17).prop_map(|(n, d)| rat(n, d))
}

fn divides(d: &Poly, f: &Poly) -> bool {
    f.div_rem(d).map(|(_, r)| r.is_zero()).unwrap_or(false)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn gcd_of_common_multiple(f in poly_strategy(8, 100), g in poly_strategy(8, 100), h in nonzero_poly(4, 100)) {
        let lhs = poly_gcd(&(&f * &h), &(&g * &h));
        let rhs = (&poly_gcd(&f, &g) * &h).monic();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn modular_and_prs_gcd_agree(f in rat_poly(10), g in rat_poly(10), h in rat_poly(5)) {
        let (a, b) = (&f * &h, &g * &h);
        prop_assert_eq!(poly_gcd(&a, &b), poly_gcd_prs(&a, &b));
    }

    #[test]
    fn gcd_divides_both(f in nonzero_poly(8, 100), g in nonzero_poly(8, 100)) {
        let d = poly_gcd(&f, &g);
        prop_assert!(d.is_monic());
        prop_assert!(divides(&d, &f) && divides(&d, &g));
        let (cf, cg) = (f.exact_div(&d).unwrap(), g.exact_div(&d).unwrap());
        prop_assert!(poly_gcd(&cf, &cg).is_one());
    }

    #[test]
    fn squarefree_reassembles(
        factors in prop::collection::vec((nonzero_poly(3, 9), 1u32..=4), 1..=4),
        lead in (1i64..=12, 1i64..=12),
    ) {
        let f = factors
            .iter()
            .fold(Poly::constant(rat(lead.0, lead.1)), |acc, (p, e)| &acc * &p.pow(*e));
        let sq = squarefree_decompose(&f).unwrap();
        prop_assert_eq!(sq.reassemble(), f.clone());
        let mut last = 0;
        for (i, (s, e)) in sq.parts.iter().enumerate() {
            prop_assert!(*e > last);
            last = *e;
            prop_assert!(s.is_monic() && !s.is_constant());
            prop_assert!(poly_gcd(s, &s.derivative()).is_one());
            for (t, _) in &sq.parts[i + 1..] {
                prop_assert!(poly_gcd(s, t).is_one());
            }
        }
        prop_assert_eq!(&sq.odd_part() * &sq.half_square().pow(2), f);
    }

    #[test]
    fn reduce_is_idempotent_and_stable(
        num in poly_strategy(6, 30),
        den in nonzero_poly(6, 30),
        common in nonzero_poly(3, 10),
        points in prop::collection::vec(rational_strategy(), 20),
    ) {
        let (n, d) = (&num * &common, &den * &common);
        let r = ratfunc_reduce(n.clone(), d.clone()).unwrap();
        prop_assert!(r.den().is_monic());
        prop_assert!(poly_gcd(r.num(), r.den()).is_one());
        prop_assert_eq!(ratfunc_reduce(r.num().clone(), r.den().clone()).unwrap(), r.clone());
        for x in &points {
            let dv = d.eval(x);
            if dv == int(0) {
                continue;
            }
            prop_assert_eq!(r.eval(x), Some(n.eval(x) / dv));
        }
    }

    #[test]
    fn ratfunc_field_identities(
        a in (nonzero_poly(3, 9), nonzero_poly(3, 9)),
        b in (nonzero_poly(3, 9), nonzero_poly(3, 9)),
        c in (nonzero_poly(3, 9), nonzero_poly(3, 9)),
    ) {
        let mk = |(n, d): (Poly, Poly)| RatFunc::new(n, d).unwrap();
        let (a, b, c) = (mk(a), mk(b), mk(c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &a.recip().unwrap(), RatFunc::one());
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!((&a * &b).checked_div(&b).unwrap(), a);
    }

    #[test]
    fn rational_text_round_trip(n in any::<i64>(), d in 1i64..=i64::MAX) {
        let r = Rational::new(BigInt::from(n), BigInt::from(d));
        prop_assert_eq!(parse_rational(&r.to_string()).unwrap(), r);
    }
}

#[test]
fn gcd_of_high_degree_products() {
    // (t^2 + 3)^5 (t - 7/2)^3 against (t^2 + 3)^2 (t + 1)^4
    let q = Poly::from_ints(&[3, 0, 1]);
    let l = Poly::new(vec![rat(-7, 2), int(1)]);
    let m = Poly::from_ints(&[1, 1]);
    let f = &q.pow(5) * &l.pow(3);
    let g = &q.pow(2) * &m.pow(4);
    assert_eq!(poly_gcd(&f, &g), q.pow(2));
    assert_eq!(poly_gcd_prs(&f, &g), q.pow(2));
}
