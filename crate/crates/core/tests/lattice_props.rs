use kummer_core::exactalg::{int, rat};
use kummer_core::lattice::{
    count_representations, enumeration_bound, find_representation, height_pairing, n_invariant, representations,
};
use kummer_core::pencil::Quadruple;
use proptest::prelude::*;

/// Naive quadruple loop over a box wider than the enumeration bound.
fn brute_count(n: i64) -> u64 {
    let b = enumeration_bound(n) + 2;
    let f = |u: i64, w: i64| u * u - u + w * w - w + u * w;
    let mut count = 0;
    for p in -b..=b {
        for q in -b..=b {
            let first = f(p, q);
            if first > n {
                continue;
            }
            for r in -b..=b {
                for s in -b..=b {
                    if first + f(r, s) == n {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

fn divisor_sum(k: u64) -> u64 {
    (1..=k).filter(|d| k % d == 0).sum()
}

#[test]
fn counts_match_divisor_formula() {
    for n in 0..=40 {
        let c = count_representations(n).unwrap();
        assert_eq!(c.brute, brute_count(n), "n = {n}");
        assert_eq!(c.formula, 3 * divisor_sum(3 * n as u64 + 2), "n = {n}");
        assert!(c.agrees(), "n = {n}: {c:?}");
    }
}

#[test]
fn frozen_small_counts() {
    let frozen = [9, 18, 45, 36, 72, 54, 126, 72, 126, 90, 189];
    for (n, want) in frozen.into_iter().enumerate() {
        assert_eq!(count_representations(n as i64).unwrap().brute, want, "n = {n}");
    }
}

#[test]
fn representations_sorted_and_exact() {
    for n in [1, 5, 17] {
        let reps = representations(n).unwrap();
        assert!(reps.windows(2).all(|w| w[0] < w[1]));
        assert!(reps.iter().all(|&v| n_invariant(v) == n));
        assert_eq!(find_representation(n).unwrap(), reps[0]);
    }
}

fn quad() -> impl Strategy<Value = Quadruple> {
    prop::array::uniform4(-1000i64..=1000).prop_map(Quadruple::from)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gram_matches_closed_form(v in quad()) {
        let [p, q, r, s] = v.as_array();
        let closed = rat(4, 3) * int(p * p + p * q + q * q + r * r + r * s + s * s);
        prop_assert_eq!(height_pairing(v, v), closed);
    }

    #[test]
    fn invariant_from_height(v in quad()) {
        let [p, q, r, s] = v.as_array();
        let lhs = int(2 * n_invariant(v));
        let rhs = rat(3, 2) * height_pairing(v, v) - int(2 * (p + q + r + s));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn invariant_non_negative(v in prop::array::uniform4(-50i64..=50).prop_map(Quadruple::from)) {
        prop_assert!(n_invariant(v) >= 0);
    }

    #[test]
    fn pairing_symmetric_bilinear(v in quad(), w in quad(), u in quad()) {
        prop_assert_eq!(height_pairing(v, w), height_pairing(w, v));
        let vw = Quadruple::new(v.p + w.p, v.q + w.q, v.r + w.r, v.s + w.s);
        prop_assert_eq!(height_pairing(vw, u), height_pairing(v, u) + height_pairing(w, u));
    }

    #[test]
    fn every_positive_n_is_represented(n in 1i64..=300) {
        prop_assert_eq!(n_invariant(find_representation(n).unwrap()), n);
    }
}
