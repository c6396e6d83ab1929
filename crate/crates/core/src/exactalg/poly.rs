use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::{Error, Result};

/// Dense univariate polynomial over the rationals, constant term first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| super::int(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    /// The indeterminate.
    pub fn x() -> Self {
        Poly::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// `x^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.push(c);
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial (degree minus infinity).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; only for callers that
    /// have already excluded zero or do not care.
    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeffs.first().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Divide by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        match self.coeffs.last() {
            None => Poly::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::DivisionByZeroPolynomial)?;
        let Some(dn) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if dn < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let inv_lc = d.leading().recip();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Rational::zero(); dn - dd + 1];
        for k in (0..=dn - dd).rev() {
            let c = &rem[k + dd] * &inv_lc;
            if c.is_zero() {
                continue;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            quo[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quo), Poly::new(rem)))
    }

    /// Quotient of a division known to be exact.
    pub fn exact_div(&self, d: &Poly) -> Result<Poly> {
        if d.is_zero() {
            return Err(Error::DivisionByZeroPolynomial);
        }
        if self.is_zero() {
            return Ok(Poly::zero());
        }
        // Gauss: the quotient of primitive integer polynomials is integral
        let (cf, f) = self.content_and_primitive();
        let (cd, g) = d.content_and_primitive();
        if let Some(q) = integer_exact_div(&f, &g) {
            let c = cf / cd;
            return Ok(Poly::new(q.into_iter().map(|x| &c * Rational::from_integer(x)).collect()));
        }
        let (q, r) = self.div_rem(d)?;
        debug_assert!(r.is_zero(), "exact_div left a remainder");
        Ok(q)
    }

    /// `p(q(x))`.
    pub fn compose(&self, q: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &Poly::constant(c.clone());
        }
        acc
    }

    /// `(ints, den)` with `self = ints / den`.
    fn cleared(&self) -> (Vec<BigInt>, BigInt) {
        let mut den = BigInt::one();
        for c in &self.coeffs {
            let d = c.denom();
            if !d.is_one() && !(&den % d).is_zero() {
                den = den.lcm(d);
            }
        }
        let ints = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        (ints, den)
    }

    /// `(c, ints)` with `self = c * ints` and `ints` of content one.
    fn content_and_primitive(&self) -> (Rational, Vec<BigInt>) {
        let (ints, den) = self.cleared();
        let g = integer_content(&ints);
        let prim = ints.into_iter().map(|c| c / &g).collect();
        (Rational::new(g, den), prim)
    }

    /// Integer coefficient vector with content one and the same roots.
    fn primitive_integer(&self) -> Vec<BigInt> {
        self.content_and_primitive().1
    }

    fn from_integer_coeffs(ints: Vec<BigInt>) -> Poly {
        Poly::new(ints.into_iter().map(Rational::from_integer).collect())
    }
}

/// `f / g` over the integers, or `None` when it leaves a remainder or a
/// fractional coefficient.
fn integer_exact_div(f: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    if f.len() < g.len() {
        return None;
    }
    let lg = g.last().expect("nonzero");
    let mut rem = f.to_vec();
    let mut quo = vec![BigInt::zero(); f.len() - g.len() + 1];
    for k in (0..quo.len()).rev() {
        let top = &rem[k + g.len() - 1];
        if top.is_zero() {
            continue;
        }
        let (c, r) = top.div_rem(lg);
        if !r.is_zero() {
            return None;
        }
        for (i, gc) in g.iter().enumerate() {
            rem[k + i] -= &c * gc;
        }
        quo[k] = c;
    }
    rem.iter().all(Zero::is_zero).then_some(quo)
}

/// Gcd of the coefficients, seeded with the smallest one so most steps are cheap.
pub(super) fn integer_content(v: &[BigInt]) -> BigInt {
    let mut g = v
        .iter()
        .filter(|c| !c.is_zero())
        .min_by_key(|c| c.bits())
        .map(|c| c.abs())
        .unwrap_or_default();
    for c in v {
        if g.is_one() {
            break;
        }
        if !c.is_zero() {
            g = g.gcd(c);
        }
    }
    g
}

fn trim_int(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn make_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    trim_int(&mut v);
    let g = integer_content(&v);
    if g.is_zero() || g.is_one() {
        return v;
    }
    for c in v.iter_mut() {
        *c /= &g;
    }
    v
}

/// Sparse pseudo-remainder of `a` by `b` over the integers.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let lb = b.last().expect("nonzero divisor");
    while r.len() >= b.len() && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - b.len();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &lr * bc;
        }
        trim_int(&mut r);
        r = make_primitive(r);
    }
    r
}

/// Monic greatest common divisor over the rationals; `gcd(0, 0) = 0`.
pub fn poly_gcd(f: &Poly, g: &Poly) -> Poly {
    if let Some(trivial) = trivial_gcd(f, g) {
        return trivial;
    }
    let (a, b) = (f.primitive_integer(), g.primitive_integer());
    Poly::from_integer_coeffs(super::modgcd::modular_gcd(&a, &b)).monic()
}

/// The same gcd through a primitive remainder sequence over the integers.
/// Slower on large inputs; kept as an independent check on [`poly_gcd`].
pub fn poly_gcd_prs(f: &Poly, g: &Poly) -> Poly {
    if let Some(trivial) = trivial_gcd(f, g) {
        return trivial;
    }
    let (mut a, mut b) = (f.primitive_integer(), g.primitive_integer());
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if b.len() == 1 {
            return Poly::one();
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        b = r;
    }
    Poly::from_integer_coeffs(a).monic()
}

fn trivial_gcd(f: &Poly, g: &Poly) -> Option<Poly> {
    if f.is_zero() {
        return Some(g.monic());
    }
    if g.is_zero() {
        return Some(f.monic());
    }
    if f.is_constant() || g.is_constant() {
        return Some(Poly::one());
    }
    None
}

/// `f = content * prod parts[i].0 ^ parts[i].1`, parts monic, squarefree and
/// pairwise coprime, sorted by increasing multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub content: Rational,
    pub parts: Vec<(Poly, u32)>,
}

impl SquarefreeDecomposition {
    pub fn reassemble(&self) -> Poly {
        self.parts
            .iter()
            .fold(Poly::constant(self.content.clone()), |acc, (s, e)| {
                &acc * &s.pow(*e)
            })
    }

    /// Product of the parts with odd multiplicity, times the content.
    pub fn odd_part(&self) -> Poly {
        self.parts
            .iter()
            .filter(|(_, e)| e % 2 == 1)
            .fold(Poly::constant(self.content.clone()), |acc, (s, _)| {
                &acc * s
            })
    }

    /// `prod S_e^(e / 2)`, so that `f = odd_part * half_square^2`.
    pub fn half_square(&self) -> Poly {
        self.parts
            .iter()
            .filter(|(_, e)| *e >= 2)
            .fold(Poly::one(), |acc, (s, e)| &acc * &s.pow(e / 2))
    }
}

/// Yun's squarefree decomposition.
pub fn squarefree_decompose(f: &Poly) -> Result<SquarefreeDecomposition> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let content = f.leading();
    let f = f.monic();
    let mut parts = Vec::new();
    if f.is_constant() {
        return Ok(SquarefreeDecomposition { content, parts });
    }
    let df = f.derivative();
    let a0 = poly_gcd(&f, &df);
    let mut b = f.exact_div(&a0)?;
    let c = df.exact_div(&a0)?;
    let mut d = &c - &b.derivative();
    let mut e = 1u32;
    while !b.is_constant() {
        let a = poly_gcd(&b, &d);
        let nb = b.exact_div(&a)?;
        let nc = d.exact_div(&a)?;
        d = &nc - &nb.derivative();
        if !a.is_constant() {
            parts.push((a, e));
        }
        b = nb;
        e += 1;
    }
    Ok(SquarefreeDecomposition { content, parts })
}

fn add_coeffs(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    out
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly::new(add_coeffs(&self.coeffs, &rhs.coeffs))
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        // multiply over the integers and normalise each coefficient once
        let (a, da) = self.cleared();
        let (b, db) = rhs.cleared();
        let den = da * db;
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        Poly::new(out.into_iter().map(|c| Rational::new(c, den.clone())).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = k == 0 || !abs.is_one();
            if show_coeff {
                if abs.is_integer() {
                    write!(f, "{abs}")?;
                } else {
                    write!(f, "({abs})")?;
                }
            }
            match k {
                0 => {}
                1 => f.write_str(if show_coeff { "*t" } else { "t" })?,
                _ => write!(f, "{}t^{k}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn gcd_examples() {
        // x^2 - 1, x^2 - 2x + 1
        assert_eq!(poly_gcd(&p(&[-1, 0, 1]), &p(&[1, -2, 1])), p(&[-1, 1]));
        let f = p(&[4, 6, 2]);
        assert_eq!(poly_gcd(&f, &Poly::zero()), f.monic());
        assert_eq!(poly_gcd(&Poly::zero(), &Poly::zero()), Poly::zero());
        // x^2 - 4x + 4 = (x-2)^2 ; x^3 - 8 = (x-2)(x^2+2x+4)
        assert_eq!(poly_gcd(&p(&[4, -4, 1]), &p(&[-8, 0, 0, 1])), p(&[-2, 1]));
    }

    #[test]
    fn gcd_coprime_and_constant() {
        assert_eq!(poly_gcd(&p(&[1, 1]), &p(&[2, 1])), Poly::one());
        assert_eq!(poly_gcd(&p(&[3]), &p(&[2, 1])), Poly::one());
    }

    #[test]
    fn div_rem_reconstructs() {
        let f = p(&[5, -3, 0, 7, 2]);
        let d = Poly::new(vec![crate::exactalg::rat(1, 3), int(0), int(3)]);
        let (q, r) = f.div_rem(&d).unwrap();
        assert_eq!(&(&q * &d) + &r, f);
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(f.div_rem(&Poly::zero()), Err(Error::DivisionByZeroPolynomial));
    }

    #[test]
    fn squarefree_examples() {
        // (x-1)^2 (x+2)
        let f = &p(&[1, -2, 1]) * &p(&[2, 1]);
        let sq = squarefree_decompose(&f).unwrap();
        assert_eq!(sq.content, int(1));
        assert_eq!(sq.parts, vec![(p(&[2, 1]), 1), (p(&[-1, 1]), 2)]);

        let sq = squarefree_decompose(&p(&[0, 0, 6])).unwrap();
        assert_eq!(sq.content, int(6));
        assert_eq!(sq.parts, vec![(p(&[0, 1]), 2)]);

        // (x^2-4)(x^2-6)(x^2-8): squarefree because gcd with derivative is 1
        let f = &(&p(&[-4, 0, 1]) * &p(&[-6, 0, 1])) * &p(&[-8, 0, 1]);
        assert!(poly_gcd(&f, &f.derivative()).is_one());
        let sq = squarefree_decompose(&f).unwrap();
        assert_eq!(sq.content, int(1));
        assert_eq!(sq.parts, vec![(f.clone(), 1)]);

        assert_eq!(squarefree_decompose(&Poly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn squarefree_high_multiplicity() {
        // 3 x^3 (x+1)^4 (x-2)
        let f = &(&p(&[0, 0, 0, 3]) * &p(&[1, 1]).pow(4)) * &p(&[-2, 1]);
        let sq = squarefree_decompose(&f).unwrap();
        assert_eq!(sq.content, int(3));
        assert_eq!(
            sq.parts,
            vec![(p(&[-2, 1]), 1), (p(&[0, 1]), 3), (p(&[1, 1]), 4)]
        );
        assert_eq!(sq.reassemble(), f);
        assert_eq!(&sq.odd_part() * &sq.half_square().pow(2), f);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-1, 0, 2]).to_string(), "2*t^2 - 1");
        assert_eq!(p(&[0, -1]).to_string(), "-t");
        assert_eq!(Poly::zero().to_string(), "0");
    }
}
