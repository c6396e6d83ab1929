//! Inose's pencil on the Kummer surface of `E_a x E_b`, viewed as the plane
//! cubic
//!
//! ```text
//! F(x, y) = t^2 x (x - 1)(x - a) - y (y - 1)(y - b) = 0
//! ```
//!
//! over `Q(t)`, with chord-and-tangent Mordell-Weil arithmetic. The identity
//! is the constant section `A11 = (0, 0)`, which is not a flex, so addition
//! is `P + Q = O * (P * Q)` where `*` is the third intersection.
//!
//! The cubic meets the line at infinity where `m^3 = t^2`, which has no
//! solution in `Q(t)`, so every chord or tangent through two affine points
//! has an affine third point and points at infinity never arise.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exactalg::serial::rational_str;
use crate::exactalg::{int, Poly, RatFunc, Rational};
use crate::{Error, Result};

/// Legendre parameters of two non-isomorphic elliptic curves
/// `E_a: y^2 = x(x-1)(x-a)` and `E_b: y^2 = x(x-1)(x-b)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawConfig")]
pub struct PencilConfig {
    #[serde(with = "rational_str")]
    a: Rational,
    #[serde(with = "rational_str")]
    b: Rational,
}

#[derive(Deserialize)]
struct RawConfig {
    #[serde(with = "rational_str")]
    a: Rational,
    #[serde(with = "rational_str")]
    b: Rational,
}

impl TryFrom<RawConfig> for PencilConfig {
    type Error = Error;
    fn try_from(raw: RawConfig) -> Result<Self> {
        validate_config(raw.a, raw.b)
    }
}

impl PencilConfig {
    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// `(0, 1, a)[i - 1]`, the x-coordinates of the 2-torsion of `E_a`.
    pub fn alpha(&self, i: usize) -> Rational {
        match i {
            1 => Rational::zero(),
            2 => Rational::one(),
            _ => self.a.clone(),
        }
    }

    /// `(0, 1, b)[j - 1]`.
    pub fn beta(&self, j: usize) -> Rational {
        match j {
            1 => Rational::zero(),
            2 => Rational::one(),
            _ => self.b.clone(),
        }
    }

    /// `x (x - 1)(x - a)` applied to a rational function.
    pub fn cubic_a(&self, h: &RatFunc) -> RatFunc {
        legendre_cubic(h, &self.a)
    }

    /// `y (y - 1)(y - b)` applied to a rational function.
    pub fn cubic_b(&self, h: &RatFunc) -> RatFunc {
        legendre_cubic(h, &self.b)
    }
}

impl fmt::Display for PencilConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a={}, b={})", self.a, self.b)
    }
}

fn legendre_cubic(h: &RatFunc, lambda: &Rational) -> RatFunc {
    let h1 = h.add_constant(&-Rational::one());
    let hl = h.add_constant(&-lambda);
    &(h * &h1) * &hl
}

/// The six values `b` for which `j(E_b) = j(E_a)`.
pub fn j_orbit(a: &Rational) -> [Rational; 6] {
    let one = Rational::one();
    [
        a.clone(),
        &one - a,
        a.recip(),
        (&one - a).recip(),
        (a - &one) / a,
        a / (a - &one),
    ]
}

pub fn validate_config(a: Rational, b: Rational) -> Result<PencilConfig> {
    let degenerate = |x: &Rational| x.is_zero() || x.is_one();
    if degenerate(&a) || degenerate(&b) {
        return Err(Error::DegenerateLegendre);
    }
    if j_orbit(&a).contains(&b) {
        return Err(Error::IsomorphicFactors);
    }
    Ok(PencilConfig { a, b })
}

/// A section `t -> (h1(t), h2(t))` of the pencil.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PencilPoint {
    pub h1: RatFunc,
    pub h2: RatFunc,
}

impl PencilPoint {
    pub fn new(h1: RatFunc, h2: RatFunc) -> Self {
        PencilPoint { h1, h2 }
    }

    pub fn constant(x: Rational, y: Rational) -> Self {
        PencilPoint::new(RatFunc::constant(x), RatFunc::constant(y))
    }

    /// The zero section `A11`.
    pub fn identity() -> Self {
        PencilPoint::constant(Rational::zero(), Rational::zero())
    }

    pub fn is_identity(&self) -> bool {
        self.h1.is_zero() && self.h2.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.h1.is_constant() && self.h2.is_constant()
    }
}

impl fmt::Display for PencilPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.h1, self.h2)
    }
}

/// Coefficients of `P = p A22 + q A33 + r A23 + s A32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 4]", into = "[i64; 4]")]
pub struct Quadruple {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub s: i64,
}

impl Quadruple {
    pub const fn new(p: i64, q: i64, r: i64, s: i64) -> Self {
        Quadruple { p, q, r, s }
    }

    pub fn as_array(&self) -> [i64; 4] {
        [self.p, self.q, self.r, self.s]
    }

    pub fn is_zero(&self) -> bool {
        self.as_array() == [0; 4]
    }
}

impl From<[i64; 4]> for Quadruple {
    fn from([p, q, r, s]: [i64; 4]) -> Self {
        Quadruple { p, q, r, s }
    }
}

impl From<Quadruple> for [i64; 4] {
    fn from(v: Quadruple) -> Self {
        v.as_array()
    }
}

impl fmt::Display for Quadruple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.p, self.q, self.r, self.s)
    }
}

impl FromStr for Quadruple {
    type Err = Error;

    /// Comma-separated integers, e.g. `"0,0,1,1"`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<i64> = s
            .split(',')
            .map(|x| x.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse(format!("invalid quadruple {s:?}")))?;
        let arr: [i64; 4] = parts
            .try_into()
            .map_err(|_| Error::Parse(format!("quadruple {s:?} needs four entries")))?;
        Ok(arr.into())
    }
}

/// The constant section `A_ij = (alpha_i, beta_j)` for `1 <= i, j <= 3`.
pub fn named_section(cfg: &PencilConfig, i: usize, j: usize) -> Result<PencilPoint> {
    if !(1..=3).contains(&i) || !(1..=3).contains(&j) {
        return Err(Error::BadSectionIndex(i, j));
    }
    Ok(PencilPoint::constant(cfg.alpha(i), cfg.beta(j)))
}

fn t_squared() -> RatFunc {
    RatFunc::from_poly(Poly::monomial(Rational::one(), 2))
}

/// `t^2 h1(h1-1)(h1-a) - h2(h2-1)(h2-b)`.
pub fn pencil_residual(cfg: &PencilConfig, pt: &PencilPoint) -> RatFunc {
    &(&t_squared() * &cfg.cubic_a(&pt.h1)) - &cfg.cubic_b(&pt.h2)
}

pub fn satisfies_pencil(cfg: &PencilConfig, pt: &PencilPoint) -> bool {
    pencil_residual(cfg, pt).is_zero()
}

fn ensure_on(cfg: &PencilConfig, pt: &PencilPoint) -> Result<()> {
    if satisfies_pencil(cfg, pt) {
        Ok(())
    } else {
        Err(Error::NotOnPencil)
    }
}

/// `3x^2 - 2(1 + l)x + l`, the derivative of `x(x-1)(x-l)`.
fn cubic_derivative(h: &RatFunc, lambda: &Rational) -> RatFunc {
    let three_h2 = (h * h).scale(&int(3));
    let lin = h.scale(&(-int(2) * (Rational::one() + lambda)));
    (&three_h2 + &lin).add_constant(lambda)
}

/// Third point of the line through `P` and `Q` (tangent when equal).
pub fn third_intersection(cfg: &PencilConfig, p: &PencilPoint, q: &PencilPoint) -> Result<PencilPoint> {
    ensure_on(cfg, p)?;
    ensure_on(cfg, q)?;
    third_unchecked(cfg, p, q)
}

pub(crate) fn third_unchecked(cfg: &PencilConfig, p: &PencilPoint, q: &PencilPoint) -> Result<PencilPoint> {
    let one_plus_b = Rational::one() + cfg.b();
    let vertical = |y_sum: RatFunc| -> PencilPoint {
        // roots of y(y-1)(y-b) = const sum to 1 + b
        PencilPoint::new(p.h1.clone(), (-&y_sum).add_constant(&one_plus_b))
    };

    let slope = if p == q {
        let fy = -cubic_derivative(&p.h2, cfg.b());
        let fx = &t_squared() * &cubic_derivative(&p.h1, cfg.a());
        if fy.is_zero() {
            if fx.is_zero() {
                return Err(Error::SingularPoint);
            }
            return Ok(vertical(p.h2.scale(&int(2))));
        }
        (-&fx).checked_div(&fy)?
    } else if p.h1 == q.h1 {
        return Ok(vertical(&p.h2 + &q.h2));
    } else {
        (&q.h2 - &p.h2).checked_div(&(&q.h1 - &p.h1))?
    };

    let intercept = &p.h2 - &(&slope * &p.h1);
    let t2 = t_squared();
    let m2 = &slope * &slope;
    let lead = &t2 - &(&m2 * &slope);
    // x^2 coefficient of F(x, m x + c)
    let b_coef = &(-&t2.scale(&(Rational::one() + cfg.a())))
        - &(&m2 * &intercept.scale(&int(3)).add_constant(&-&one_plus_b));
    let x_sum = (-&b_coef).checked_div(&lead)?;
    let x3 = &(&x_sum - &p.h1) - &q.h1;
    let y3 = &(&slope * &x3) + &intercept;
    Ok(PencilPoint::new(x3, y3))
}

fn add_unchecked(cfg: &PencilConfig, p: &PencilPoint, q: &PencilPoint) -> Result<PencilPoint> {
    if p.is_identity() {
        return Ok(q.clone());
    }
    if q.is_identity() {
        return Ok(p.clone());
    }
    let pq = third_unchecked(cfg, p, q)?;
    third_unchecked(cfg, &PencilPoint::identity(), &pq)
}

fn neg_unchecked(cfg: &PencilConfig, p: &PencilPoint) -> Result<PencilPoint> {
    if p.is_identity() {
        return Ok(p.clone());
    }
    let o = PencilPoint::identity();
    let oo = third_unchecked(cfg, &o, &o)?;
    third_unchecked(cfg, p, &oo)
}

fn scale_unchecked(cfg: &PencilConfig, k: i64, p: &PencilPoint) -> Result<PencilPoint> {
    let mut base = if k < 0 { neg_unchecked(cfg, p)? } else { p.clone() };
    let mut k = k.unsigned_abs();
    let mut acc = PencilPoint::identity();
    while k > 0 {
        if k & 1 == 1 {
            acc = add_unchecked(cfg, &acc, &base)?;
        }
        k >>= 1;
        if k > 0 {
            base = add_unchecked(cfg, &base, &base)?;
        }
    }
    Ok(acc)
}

/// Mordell-Weil sum with `A11` as zero.
pub fn mw_add(cfg: &PencilConfig, p: &PencilPoint, q: &PencilPoint) -> Result<PencilPoint> {
    ensure_on(cfg, p)?;
    ensure_on(cfg, q)?;
    add_unchecked(cfg, p, q)
}

pub fn mw_neg(cfg: &PencilConfig, p: &PencilPoint) -> Result<PencilPoint> {
    ensure_on(cfg, p)?;
    neg_unchecked(cfg, p)
}

/// `k`-fold sum by double-and-add; negative `k` negates first.
pub fn mw_scale(cfg: &PencilConfig, k: i64, p: &PencilPoint) -> Result<PencilPoint> {
    ensure_on(cfg, p)?;
    scale_unchecked(cfg, k, p)
}

/// `p A22 + q A33 + r A23 + s A32`.
pub fn section_from_quadruple(cfg: &PencilConfig, quad: Quadruple) -> Result<PencilPoint> {
    let gens = [(quad.p, (2, 2)), (quad.q, (3, 3)), (quad.r, (2, 3)), (quad.s, (3, 2))];
    let mut acc = PencilPoint::identity();
    for (k, (i, j)) in gens {
        if k == 0 {
            continue;
        }
        let g = named_section(cfg, i, j)?;
        let term = scale_unchecked(cfg, k, &g)?;
        acc = add_unchecked(cfg, &acc, &term)?;
    }
    Ok(acc)
}
