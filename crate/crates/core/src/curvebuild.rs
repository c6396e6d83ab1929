//! Pull a section of the pencil back to `E_a x E_b`.
//!
//! A section `t -> (h1(t), h2(t))` gives the double cover
//! `C: y^2 = h1(x)(h1(x) - 1)(h1(x) - a)` whose normalization `H` is
//! hyperelliptic and maps to both factors by
//! `(x, y) -> (h1(x), y)` and `(x, y) -> (h2(x), x y)`.
//!
//! Intersection numbers with the constant sections are counted with gcd
//! degrees only; roots are never enumerated.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::InvariantCheck;
use crate::exactalg::serial::rational_str;
use crate::exactalg::{int, poly_gcd, rat, rational_sqrt, squarefree_decompose, Poly, RatFunc, Rational};
use crate::lattice::{height_pairing, n_invariant};
use crate::pencil::{self, named_section, section_from_quadruple, PencilConfig, PencilPoint, Quadruple};
use crate::{Error, Result};

/// Clear denominators of `h1 (h1 - 1)(h1 - a)`: with `h1 = P/Q` reduced this
/// is `P (P - Q)(P - a Q) Q`, and `y^2 = f` has the function field of `C`
/// (rescale `y` by `Q^2`).
pub fn branch_polynomial(cfg: &PencilConfig, h1: &RatFunc) -> Result<Poly> {
    if h1.is_constant() {
        return Err(Error::ConstantSection);
    }
    let [p, pq, pa, q] = branch_factors(cfg, h1);
    Ok(&(&(&p * &pq) * &pa) * &q)
}

fn branch_factors(cfg: &PencilConfig, h1: &RatFunc) -> [Poly; 4] {
    let p = h1.num().clone();
    let q = h1.den().clone();
    let pq = &p - &q;
    let pa = &p - &q.scale(cfg.a());
    [p, pq, pa, q]
}

/// Number of branch points of `y^2 = f` over the projective line, and the
/// genus of the smooth model. Infinity is a branch point when `deg f` is odd.
pub fn genus_from_branch(f: &Poly) -> Result<(usize, i64)> {
    let deg = f.degree().ok_or(Error::ZeroPolynomial)?;
    if deg == 0 {
        return Err(Error::ConstantSection);
    }
    let sq = squarefree_decompose(f)?;
    let finite: usize = sq
        .parts
        .iter()
        .filter(|(_, e)| e % 2 == 1)
        .map(|(s, _)| s.degree_or_zero())
        .sum();
    let branch = finite + deg % 2;
    if branch % 2 == 1 {
        return Err(Error::OddBranchParity);
    }
    Ok((branch, branch as i64 / 2 - 1))
}

/// Intersection number of a section with the constant section `A_ij`.
///
/// At each of the nine points `(alpha_i, beta_j)` the fiber is smooth with
/// `x1` as local coordinate, so the local multiplicity at a finite `t` is the
/// order of `h1 - alpha_i`, counted where `h2 = beta_j`. Writing the numerator
/// of `h1 - alpha_i` as `prod S_e^e`, the affine total is
/// `sum e * deg gcd(S_e, numerator(h2 - beta_j))`.
///
/// The fiber at `t = infinity` is handled in the chart `s = 1/t`, where the
/// roles of the two coordinates swap and `x2` is the fiber coordinate.
pub fn named_intersection(cfg: &PencilConfig, pt: &PencilPoint, i: usize, j: usize) -> Result<i64> {
    let a_ij = named_section(cfg, i, j)?;
    if *pt == a_ij {
        return Err(Error::SelfIntersectionRequest(i, j));
    }
    let (alpha, beta) = (cfg.alpha(i), cfg.beta(j));
    let dx = pt.h1.add_constant(&-&alpha);
    let dy = pt.h2.add_constant(&-&beta);
    if dx.is_zero() || dy.is_zero() {
        // a constant coordinate that differs from A_ij in the other one:
        // the sections are disjoint
        return Ok(0);
    }
    let mut total = 0i64;
    if !dx.num().is_constant() {
        let sq = squarefree_decompose(dx.num())?;
        for (s, e) in &sq.parts {
            let common = poly_gcd(s, dy.num());
            total += *e as i64 * common.degree_or_zero() as i64;
        }
    }
    if pt.h1.value_at_infinity() == Some(alpha) && pt.h2.value_at_infinity() == Some(beta) {
        total += dy.order_at_infinity().unwrap_or(0);
    }
    Ok(total)
}

/// Which simple components the section meets in the two `IV*` fibers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Components {
    /// `k` with the section meeting `F_k` at `t = infinity`.
    pub fiber_inf: usize,
    /// `j` with the section meeting `G_j` at `t = 0`.
    pub fiber_zero: usize,
    #[serde(with = "rational_str")]
    pub contr_inf: Rational,
    #[serde(with = "rational_str")]
    pub contr_zero: Rational,
}

fn contr(component: usize) -> Rational {
    if component == 1 {
        Rational::zero()
    } else {
        rat(4, 3)
    }
}

pub fn classify_components(cfg: &PencilConfig, pt: &PencilPoint) -> Result<Components> {
    let fail = |what: String| Error::ComponentClassificationFailure(what);
    let at_inf = pt
        .h1
        .value_at_infinity()
        .ok_or_else(|| fail("h1 has a pole at t = infinity".into()))?;
    let fiber_inf = (1..=3)
        .find(|&k| cfg.alpha(k) == at_inf)
        .ok_or_else(|| fail(format!("h1(infinity) = {at_inf} is not a root of E_a")))?;
    let at_zero = pt
        .h2
        .eval(&Rational::zero())
        .ok_or_else(|| fail("h2 has a pole at t = 0".into()))?;
    let fiber_zero = (1..=3)
        .find(|&j| cfg.beta(j) == at_zero)
        .ok_or_else(|| fail(format!("h2(0) = {at_zero} is not a root of E_b")))?;
    Ok(Components {
        fiber_inf,
        fiber_zero,
        contr_inf: contr(fiber_inf),
        contr_zero: contr(fiber_zero),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionStats {
    pub deg_h1: usize,
    pub deg_h2: usize,
    /// `named[i-1][j-1] = P . A_ij`.
    pub named: [[i64; 3]; 3],
    pub sum_named: i64,
    /// `P . A00`, from `3 P.A00 = 2 P.(F1 + F2 + F3) + sum P.A_ij`.
    #[serde(with = "rational_str")]
    pub a00: Rational,
    /// `P . D = 2/3 + 4/3 sum P.A_ij`.
    #[serde(with = "rational_str")]
    pub total_d: Rational,
    pub p_a11: i64,
    pub component_inf: usize,
    pub component_zero: usize,
    #[serde(with = "rational_str")]
    pub contr_zero: Rational,
    #[serde(with = "rational_str")]
    pub contr_inf: Rational,
    #[serde(with = "rational_str")]
    pub height: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperellipticModel {
    pub config: PencilConfig,
    pub quad: Quadruple,
    pub n: i64,
    /// Branch polynomial `P (P - Q)(P - aQ) Q`.
    pub f: Poly,
    /// Odd-multiplicity part of `f`, keeping its content.
    pub sf: Poly,
    /// `f = sf * m^2`.
    pub m: Poly,
    pub genus: i64,
    pub branch_count: usize,
    pub h1: RatFunc,
    pub h2: RatFunc,
    /// `m / Q^2`; the `E_a` image of `(x, Y)` on `Y^2 = sf` has `y = Y * y_multiplier(x)`.
    pub y_multiplier: RatFunc,
    pub stats: IntersectionStats,
    pub genus_is_expected: bool,
}

impl HyperellipticModel {
    pub fn expected_genus(&self) -> i64 {
        4 * self.n - 2
    }
}

fn violation(check: InvariantCheck, detail: String) -> Error {
    Error::InternalInvariantViolation { check, detail }
}

fn ensure(ok: bool, check: InvariantCheck, detail: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(violation(check, detail()))
    }
}

/// Construct the hyperelliptic curve of `p A22 + q A33 + r A23 + s A32` and
/// check every intersection identity it must satisfy.
pub fn build_model(cfg: &PencilConfig, quad: Quadruple) -> Result<HyperellipticModel> {
    let n = n_invariant(quad);
    if n == 0 {
        return Err(Error::DegenerateSection);
    }
    let section = section_from_quadruple(cfg, quad)?;
    let PencilPoint { h1, h2 } = section.clone();

    let f = branch_polynomial(cfg, &h1)?;
    let sq = squarefree_decompose(&f)?;
    let sf = sq.odd_part();
    let m = sq.half_square();
    let (branch_count, genus) = genus_from_branch(&f)?;
    let q1 = h1.den().clone();
    let y_multiplier = RatFunc::new(m.clone(), q1.pow(2))?;

    let mut named = [[0i64; 3]; 3];
    for i in 1..=3 {
        for j in 1..=3 {
            named[i - 1][j - 1] = named_intersection(cfg, &section, i, j)?;
        }
    }
    let sum_named: i64 = named.iter().flatten().sum();
    let comps = classify_components(cfg, &section)?;
    let height = height_pairing(quad, quad);
    let stats = IntersectionStats {
        deg_h1: h1.degree(),
        deg_h2: h2.degree(),
        named,
        sum_named,
        a00: rat(2 + sum_named, 3),
        total_d: rat(2, 3) + rat(4, 3) * int(sum_named),
        p_a11: named[0][0],
        component_inf: comps.fiber_inf,
        component_zero: comps.fiber_zero,
        contr_zero: comps.contr_zero,
        contr_inf: comps.contr_inf,
        height,
    };

    let model = HyperellipticModel {
        config: cfg.clone(),
        quad,
        n,
        f,
        sf,
        m,
        genus,
        branch_count,
        h1,
        h2,
        y_multiplier,
        genus_is_expected: genus == 4 * n - 2,
        stats,
    };
    check_model(&model)?;
    Ok(model)
}

/// Re-verify the construction theorems on a built model.
pub fn check_model(model: &HyperellipticModel) -> Result<()> {
    use InvariantCheck::*;
    let n = model.n;
    let st = &model.stats;
    let two_n = (2 * n) as usize;

    ensure(st.deg_h1 == two_n && st.deg_h2 == two_n, ProjectionDegree, || {
        format!("deg h1 = {}, deg h2 = {}, 2n = {two_n}", st.deg_h1, st.deg_h2)
    })?;
    ensure(st.sum_named == 6 * n - 2, NamedSum, || {
        format!("sum = {}, expected {}", st.sum_named, 6 * n - 2)
    })?;
    ensure(
        st.total_d == int(8 * n - 2) && st.a00 == int(2 * n) && st.a00.is_integer(),
        ExceptionalTotal,
        || format!("P.D = {}, P.A00 = {}", st.total_d, st.a00),
    )?;
    let half = rat(1, 2);
    let rhs = &half * &st.height - int(2) + &half * &st.contr_zero + &half * &st.contr_inf;
    ensure(int(st.p_a11) == rhs, HeightFormula, || {
        format!("P.A11 = {}, height formula gives {rhs}", st.p_a11)
    })?;

    let upper = 8 * n - 2;
    let lower = (n + 2) / 3 - 18;
    let bc = model.branch_count as i64;
    ensure(
        bc % 2 == 0 && bc <= upper && bc >= lower && model.genus >= 1,
        BranchBounds,
        || format!("branch count {bc}, genus {}, bounds [{lower}, {upper}]", model.genus),
    )?;

    let cfg = &model.config;
    let [p, pq, pa, q] = branch_factors(cfg, &model.h1);
    let factors = [&p, &pq, &pa, &q];
    let mut coprime = true;
    for x in 0..4 {
        for y in x + 1..4 {
            coprime &= poly_gcd(factors[x], factors[y]).is_one();
        }
    }
    let curve_rhs = cfg.cubic_a(&model.h1);
    let lifted = &(&model.y_multiplier * &model.y_multiplier) * &RatFunc::from_poly(model.sf.clone());
    let section = PencilPoint::new(model.h1.clone(), model.h2.clone());
    ensure(
        coprime
            && model.f == &model.sf * &model.m.pow(2)
            && lifted == curve_rhs
            && pencil::satisfies_pencil(cfg, &section),
        MapIdentities,
        || "branch factors, f = sf m^2, or a map identity failed".to_string(),
    )
}

/// A rational point on a Legendre curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffinePoint {
    #[serde(with = "rational_str")]
    pub x: Rational,
    #[serde(with = "rational_str")]
    pub y: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    /// Point `(x, Y)` on `Y^2 = sf`.
    pub point: AffinePoint,
    pub weierstrass: bool,
    pub image_a: AffinePoint,
    pub image_b: AffinePoint,
    /// Both images satisfy their Legendre equations exactly.
    pub on_curves: bool,
    /// Both images are 2-torsion.
    pub two_torsion: bool,
}

fn on_legendre(pt: &AffinePoint, lambda: &Rational) -> bool {
    let x = &pt.x;
    &pt.y * &pt.y == x * (x - Rational::one()) * (x - lambda)
}

fn is_two_torsion(pt: &AffinePoint, lambda: &Rational) -> bool {
    pt.y.is_zero() && (pt.x.is_zero() || pt.x.is_one() || &pt.x == lambda)
}

/// Scan `x = u/v` with `|u|, |v| <= height_bound` for rational points of
/// `Y^2 = sf` and push them to both elliptic factors.
pub fn harvest_witnesses(model: &HyperellipticModel, height_bound: u64) -> Vec<WitnessRecord> {
    let cfg = &model.config;
    let bound = height_bound as i64;
    let mut out = Vec::new();
    for v in 1..=bound.max(1) {
        for u in -bound..=bound {
            if Integer::gcd(&u, &v) != 1 {
                continue;
            }
            let x = Rational::new(BigInt::from(u), BigInt::from(v));
            if let Some(rec) = witness_at(model, cfg, x) {
                out.push(rec);
            }
        }
    }
    out
}

fn witness_at(model: &HyperellipticModel, cfg: &PencilConfig, x: Rational) -> Option<WitnessRecord> {
    let y = rational_sqrt(&model.sf.eval(&x))?;
    let x1 = model.h1.eval(&x)?;
    let x2 = model.h2.eval(&x)?;
    let y1 = &y * model.y_multiplier.eval(&x)?;
    let y2 = &x * &y1;
    let image_a = AffinePoint { x: x1, y: y1 };
    let image_b = AffinePoint { x: x2, y: y2 };
    let weierstrass = y.is_zero();
    let on_curves = on_legendre(&image_a, cfg.a()) && on_legendre(&image_b, cfg.b());
    let two_torsion = is_two_torsion(&image_a, cfg.a()) && is_two_torsion(&image_b, cfg.b());
    Some(WitnessRecord {
        point: AffinePoint { x, y },
        weierstrass,
        image_a,
        image_b,
        on_curves,
        two_torsion,
    })
}

/// Persisted form of a model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub config: PencilConfig,
    pub quad: Quadruple,
    pub n: i64,
    pub genus: i64,
    pub branch_count: usize,
    pub sf: Poly,
    pub maps: CurveMaps,
    pub stats: IntersectionStats,
    pub genus_is_expected: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveMaps {
    pub h1: RatFunc,
    pub h2: RatFunc,
    pub y_multiplier: RatFunc,
}

impl From<&HyperellipticModel> for CurveRecord {
    fn from(m: &HyperellipticModel) -> Self {
        CurveRecord {
            config: m.config.clone(),
            quad: m.quad,
            n: m.n,
            genus: m.genus,
            branch_count: m.branch_count,
            sf: m.sf.clone(),
            maps: CurveMaps {
                h1: m.h1.clone(),
                h2: m.h2.clone(),
                y_multiplier: m.y_multiplier.clone(),
            },
            stats: m.stats.clone(),
            genus_is_expected: m.genus_is_expected,
        }
    }
}
