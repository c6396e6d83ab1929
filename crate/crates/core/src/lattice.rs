//! The invariant `n(p,q,r,s)`, the height pairing on the span of
//! `A22, A33, A23, A32`, and counting of quadruples with a given `n`.

use crate::exactalg::{rat, Rational};
use crate::pencil::Quadruple;
use crate::{Error, Result};

/// Gram matrix of the height pairing in the basis `A22, A33, A23, A32`,
/// stored as numerators over 3.
pub const HEIGHT_GRAM_THIRDS: [[i64; 4]; 4] = [[4, 2, 0, 0], [2, 4, 0, 0], [0, 0, 4, 2], [0, 0, 2, 4]];

pub fn height_gram() -> [[Rational; 4]; 4] {
    HEIGHT_GRAM_THIRDS.map(|row| row.map(|e| rat(e, 3)))
}

/// `p(p-1) + q(q-1) + r(r-1) + s(s-1) + pq + rs`; never negative.
pub fn n_invariant(v: Quadruple) -> i64 {
    let pair = |u: i64, w: i64| u * (u - 1) + w * (w - 1) + u * w;
    pair(v.p, v.q) + pair(v.r, v.s)
}

/// `v^T G w` with `G` the height Gram matrix.
pub fn height_pairing(v: Quadruple, w: Quadruple) -> Rational {
    let (v, w) = (v.as_array(), w.as_array());
    let mut thirds = 0i64;
    for (i, row) in HEIGHT_GRAM_THIRDS.iter().enumerate() {
        for (j, g) in row.iter().enumerate() {
            thirds += v[i] * g * w[j];
        }
    }
    rat(thirds, 3)
}

/// Every quadruple with `n_invariant = n` has all entries within this bound.
pub fn enumeration_bound(n: i64) -> i64 {
    let target = 2 * n + 2;
    let root = target.isqrt();
    1 + if root * root == target { root } else { root + 1 }
}

/// Sum of divisors by trial division.
pub fn sigma1(k: u64) -> u64 {
    let mut total = 0;
    let mut d = 1;
    while d * d <= k {
        if k % d == 0 {
            total += d;
            if d * d != k {
                total += k / d;
            }
        }
        d += 1;
    }
    total
}

/// All quadruples with `n_invariant = n`, in lexicographic order.
pub fn representations(n: i64) -> Result<Vec<Quadruple>> {
    if n < 0 {
        return Err(Error::NegativeInput(n));
    }
    let b = enumeration_bound(n);
    // split the search over pairs so the inner loop is a lookup
    let mut pairs_by_value: Vec<Vec<(i64, i64)>> = vec![Vec::new(); n as usize + 1];
    for u in -b..=b {
        for w in -b..=b {
            let val = u * (u - 1) + w * (w - 1) + u * w;
            if (0..=n).contains(&val) {
                pairs_by_value[val as usize].push((u, w));
            }
        }
    }
    let mut out = Vec::new();
    for (k, first) in pairs_by_value.iter().enumerate() {
        for &(p, q) in first {
            for &(r, s) in &pairs_by_value[n as usize - k] {
                out.push(Quadruple::new(p, q, r, s));
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct RepresentationCount {
    pub n: i64,
    /// Exhaustive count within the enumeration bound.
    pub brute: u64,
    /// `3 sigma_1(3n + 2)`.
    pub formula: u64,
}

impl RepresentationCount {
    pub fn agrees(&self) -> bool {
        self.brute == self.formula
    }
}

pub fn count_representations(n: i64) -> Result<RepresentationCount> {
    let brute = representations(n)?.len() as u64;
    Ok(RepresentationCount {
        n,
        brute,
        formula: 3 * sigma1(3 * n as u64 + 2),
    })
}

/// Lexicographically smallest quadruple with `n_invariant = n`, for `n >= 1`.
pub fn find_representation(n: i64) -> Result<Quadruple> {
    if n < 1 {
        return Err(Error::NegativeInput(n));
    }
    representations(n)?
        .into_iter()
        .next()
        .ok_or(Error::NegativeInput(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;

    #[test]
    fn n_examples() {
        assert_eq!(n_invariant(Quadruple::new(0, 0, 1, 1)), 1);
        assert_eq!(n_invariant(Quadruple::new(2, 0, 0, 0)), 2);
        assert_eq!(n_invariant(Quadruple::new(0, 0, 0, 0)), 0);
    }

    #[test]
    fn gram_entries() {
        let e = |k: usize| {
            let mut a = [0; 4];
            a[k] = 1;
            Quadruple::from(a)
        };
        assert_eq!(height_pairing(e(0), e(0)), rat(4, 3));
        assert_eq!(height_pairing(e(0), e(1)), rat(2, 3));
        assert_eq!(height_pairing(e(0), e(2)), int(0));
        let v = Quadruple::new(0, 0, 1, 1);
        assert_eq!(height_pairing(v, v), int(4));
        let g = height_gram();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(g[i][j], g[j][i]);
                assert_eq!(height_pairing(e(i), e(j)), g[i][j]);
            }
        }
    }

    #[test]
    fn bound_is_ceiling() {
        // 1 + ceil(sqrt(2n + 2))
        assert_eq!(enumeration_bound(0), 3);
        assert_eq!(enumeration_bound(1), 3);
        assert_eq!(enumeration_bound(7), 5);
        assert_eq!(enumeration_bound(40), 11);
    }

    #[test]
    fn sigma() {
        assert_eq!(sigma1(1), 1);
        assert_eq!(sigma1(2), 3);
        assert_eq!(sigma1(5), 6);
        assert_eq!(sigma1(8), 15);
        assert_eq!(sigma1(36), 91);
    }

    #[test]
    fn counts_small() {
        for (n, expected) in [(0, 9), (1, 18), (2, 45)] {
            let c = count_representations(n).unwrap();
            assert_eq!(c.brute, expected);
            assert_eq!(c.formula, expected);
        }
        assert_eq!(count_representations(-1), Err(Error::NegativeInput(-1)));
    }

    #[test]
    fn find_rejects_zero() {
        assert_eq!(find_representation(0), Err(Error::NegativeInput(0)));
        let w = find_representation(2).unwrap();
        assert_eq!(n_invariant(w), 2);
    }
}
