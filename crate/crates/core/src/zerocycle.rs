//! Vanishing certificates for Albanese-kernel cycles `z_{c,d}`.
//!
//! A hyperelliptic witness `w` gives `z_{w,w} = 0`. Since `z` is bilinear
//! and symmetric, `z_{c,d}` vanishes as soon as the symmetric tensor `c . d`
//! is a rational combination of the squares `w . w`. The engine works modulo
//! torsion and only ever answers "certified" or "undecided".

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exactalg::serial::rational_vec;
use crate::exactalg::Rational;
use crate::{Error, Result};

/// Integer combinations `n_1 a_1 + ... + n_m a_m` asserted hyperelliptic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSet {
    pub m: usize,
    pub witnesses: Vec<Vec<i64>>,
}

impl WitnessSet {
    pub fn new(m: usize, witnesses: Vec<Vec<i64>>) -> Result<Self> {
        let ws = WitnessSet { m, witnesses };
        ws.validate()?;
        Ok(ws)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::NegativeInput(0));
        }
        for w in &self.witnesses {
            check_len(self.m, w.len())?;
        }
        Ok(())
    }

    fn rational_witness(&self, k: usize) -> Vec<Rational> {
        self.witnesses[k]
            .iter()
            .map(|&x| Rational::from_integer(BigInt::from(x)))
            .collect()
    }

    fn square_columns(&self) -> Vec<Vec<Rational>> {
        (0..self.witnesses.len())
            .map(|k| {
                let w = self.rational_witness(k);
                sym_product(&w, &w)
            })
            .collect()
    }
}

fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, got })
    }
}

pub fn sym_dimension(m: usize) -> usize {
    m * (m + 1) / 2
}

fn sym_product(v: &[Rational], w: &[Rational]) -> Vec<Rational> {
    let m = v.len();
    let mut out = Vec::with_capacity(sym_dimension(m));
    for i in 0..m {
        out.push(&v[i] * &w[i]);
        for j in i + 1..m {
            out.push(&v[i] * &w[j] + &v[j] * &w[i]);
        }
    }
    out
}

/// Coordinates of `v . w` in the basis `e_i . e_j` (`i <= j`, row-major):
/// `v_i w_i` on the diagonal and `v_i w_j + v_j w_i` off it.
pub fn sym_square(v: &[Rational], w: &[Rational]) -> Result<Vec<Rational>> {
    check_len(v.len(), w.len())?;
    Ok(sym_product(v, w))
}

/// Row echelon form in place; returns the pivot column of each pivot row.
/// Pivot: largest numerator magnitude in the column, lowest row on ties.
fn echelon(rows: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let mut best: Option<usize> = None;
        for i in r..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            match best {
                Some(b) if rows[i][col].numer().abs() <= rows[b][col].numer().abs() => {}
                _ => best = Some(i),
            }
        }
        let Some(p) = best else { continue };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, pv) in row.iter_mut().zip(&pivot_row) {
                *x -= &factor * pv;
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Rank over the rationals of `{w . w : w in witnesses}`.
pub fn span_rank(ws: &WitnessSet) -> Result<usize> {
    ws.validate()?;
    let mut rows = ws.square_columns();
    Ok(echelon(&mut rows, sym_dimension(ws.m)).len())
}

pub fn is_full_span(ws: &WitnessSet) -> Result<bool> {
    Ok(span_rank(ws)? == sym_dimension(ws.m))
}

/// `denominator * (c . d) = sum coefficients[i] * (w_i . w_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(with = "bigint_str")]
    pub denominator: BigInt,
    #[serde(with = "rational_vec")]
    pub coefficients: Vec<Rational>,
}

mod bigint_str {
    use num_bigint::BigInt;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

impl Certificate {
    /// Exact re-check of the defining identity.
    pub fn verify(&self, ws: &WitnessSet, c: &[Rational], d: &[Rational]) -> bool {
        if self.denominator.is_zero()
            || self.coefficients.len() != ws.witnesses.len()
            || c.len() != ws.m
            || d.len() != ws.m
            || ws.validate().is_err()
        {
            return false;
        }
        let n = Rational::from_integer(self.denominator.clone());
        let lhs: Vec<Rational> = sym_product(c, d).into_iter().map(|x| x * &n).collect();
        let mut rhs = vec![Rational::zero(); sym_dimension(ws.m)];
        for (col, r) in ws.square_columns().iter().zip(&self.coefficients) {
            for (acc, x) in rhs.iter_mut().zip(col) {
                *acc += x * r;
            }
        }
        lhs == rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Certified(Certificate),
    /// Not in the span. This is not a proof that the cycle is nonzero.
    Undecided,
}

impl Verdict {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Verdict::Certified(c) => Some(c),
            Verdict::Undecided => None,
        }
    }
}

/// Try to write `c . d` in the span of the witness squares. Rational `c`, `d`
/// stand for points of the divisible hull.
pub fn certify_vanishing(ws: &WitnessSet, c: &[Rational], d: &[Rational]) -> Result<Verdict> {
    ws.validate()?;
    check_len(ws.m, c.len())?;
    check_len(ws.m, d.len())?;
    let k = ws.witnesses.len();
    let dim = sym_dimension(ws.m);
    let columns = ws.square_columns();
    let target = sym_product(c, d);

    // augmented system: one row per Sym^2 coordinate, one column per witness
    let mut rows: Vec<Vec<Rational>> = (0..dim)
        .map(|row| {
            let mut r: Vec<Rational> = columns.iter().map(|col| col[row].clone()).collect();
            r.push(target[row].clone());
            r
        })
        .collect();
    let pivots = echelon(&mut rows, k);
    if rows[pivots.len()..].iter().any(|r| !r[k].is_zero()) {
        return Ok(Verdict::Undecided);
    }
    let mut solution = vec![Rational::zero(); k];
    for (row, &col) in pivots.iter().enumerate() {
        solution[col] = rows[row][k].clone();
    }
    let denominator = solution
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scale = Rational::from_integer(denominator.clone());
    let cert = Certificate {
        denominator,
        coefficients: solution.into_iter().map(|x| x * &scale).collect(),
    };
    if !cert.verify(ws, c, d) {
        return Err(Error::InternalInvariantViolation {
            check: crate::error::InvariantCheck::CertificateIdentity,
            detail: "certificate failed re-verification".into(),
        });
    }
    Ok(Verdict::Certified(cert))
}

/// Whether `(1,0)`, `(0,1)`, `(m,n)` have squares spanning `Sym^2 Q^2`.
pub fn abel_criterion(m: i64, n: i64) -> bool {
    let ws = WitnessSet {
        m: 2,
        witnesses: vec![vec![1, 0], vec![0, 1], vec![m, n]],
    };
    span_rank(&ws).expect("well-formed witness set") == 3
}

/// Witness file: a witness set plus targets to decide.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFile {
    pub m: usize,
    pub witnesses: Vec<Vec<i64>>,
    pub targets: Vec<Target>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Target {
    #[serde(with = "rational_vec")]
    pub c: Vec<Rational>,
    #[serde(with = "rational_vec")]
    pub d: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetResult {
    #[serde(with = "rational_vec")]
    pub c: Vec<Rational>,
    #[serde(with = "rational_vec")]
    pub d: Vec<Rational>,
    pub result: Verdict,
}

impl WitnessFile {
    pub fn witness_set(&self) -> Result<WitnessSet> {
        WitnessSet::new(self.m, self.witnesses.clone())
    }

    pub fn decide_all(&self) -> Result<Vec<TargetResult>> {
        let ws = self.witness_set()?;
        self.targets
            .iter()
            .map(|t| {
                Ok(TargetResult {
                    c: t.c.clone(),
                    d: t.d.clone(),
                    result: certify_vanishing(&ws, &t.c, &t.d)?,
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn spanning() -> WitnessSet {
        WitnessSet::new(2, vec![vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap()
    }

    #[test]
    fn sym_square_examples() {
        assert_eq!(sym_square(&v(&[1, 1]), &v(&[1, 1])).unwrap(), v(&[1, 2, 1]));
        assert_eq!(sym_square(&v(&[1, 0]), &v(&[0, 1])).unwrap(), v(&[0, 1, 0]));
        assert_eq!(
            sym_square(&v(&[1, 0]), &v(&[0, 1, 2])),
            Err(Error::LengthMismatch { expected: 2, got: 3 })
        );
    }

    #[test]
    fn ranks() {
        assert_eq!(span_rank(&spanning()).unwrap(), 3);
        let ws = WitnessSet::new(2, vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(span_rank(&ws).unwrap(), 2);
        let ws = WitnessSet::new(2, vec![vec![1, 0], vec![2, 0], vec![3, 0]]).unwrap();
        assert_eq!(span_rank(&ws).unwrap(), 1);
        assert!(WitnessSet::new(2, vec![vec![1]]).is_err());
    }

    #[test]
    fn certificate_for_mixed_term() {
        let ws = spanning();
        let verdict = certify_vanishing(&ws, &v(&[1, 0]), &v(&[0, 1])).unwrap();
        let cert = verdict.certificate().unwrap();
        assert_eq!(cert.denominator, BigInt::from(2));
        assert_eq!(cert.coefficients, v(&[-1, -1, 1]));
        assert!(cert.verify(&ws, &v(&[1, 0]), &v(&[0, 1])));
    }

    #[test]
    fn undecided_without_span() {
        let ws = WitnessSet::new(2, vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(
            certify_vanishing(&ws, &v(&[1, 0]), &v(&[0, 1])).unwrap(),
            Verdict::Undecided
        );
    }

    #[test]
    fn divisible_hull_targets() {
        let ws = spanning();
        let c = vec![rat(1, 2), int(0)];
        let d = vec![int(0), rat(1, 3)];
        let verdict = certify_vanishing(&ws, &c, &d).unwrap();
        let cert = verdict.certificate().unwrap();
        assert!((&cert.denominator % BigInt::from(6)).is_zero());
        assert!(cert.verify(&ws, &c, &d));
    }

    #[test]
    fn tampered_certificate_fails() {
        let ws = spanning();
        let (c, d) = (v(&[1, 0]), v(&[0, 1]));
        let mut cert = certify_vanishing(&ws, &c, &d).unwrap().certificate().unwrap().clone();
        cert.coefficients[2] = int(2);
        assert!(!cert.verify(&ws, &c, &d));
    }

    #[test]
    fn abel() {
        assert!(abel_criterion(1, 1));
        assert!(!abel_criterion(0, 5));
        assert!(abel_criterion(-3, 2));
    }

    #[test]
    fn verdict_serialization() {
        let s = serde_json::to_string(&Verdict::Undecided).unwrap();
        assert_eq!(s, "\"undecided\"");
        let cert = certify_vanishing(&spanning(), &v(&[1, 0]), &v(&[0, 1])).unwrap();
        let s = serde_json::to_string(&cert).unwrap();
        assert_eq!(s, r#"{"certified":{"denominator":"2","coefficients":["-1","-1","1"]}}"#);
        assert_eq!(serde_json::from_str::<Verdict>(&s).unwrap(), cert);
    }
}
