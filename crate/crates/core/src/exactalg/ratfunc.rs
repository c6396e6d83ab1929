use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{poly_gcd, Poly, Rational};
use crate::{Error, Result};

/// Reduced rational function `num / den` with `den` monic and coprime to `num`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

/// Bring `num / den` into canonical form.
pub fn ratfunc_reduce(num: Poly, den: Poly) -> Result<RatFunc> {
    RatFunc::new(num, den)
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZeroPolynomial);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = poly_gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (num.exact_div(&g)?, den.exact_div(&g)?)
            }
        };
        let lc = den.leading();
        if lc.is_one() {
            Ok(RatFunc { num, den })
        } else {
            let inv = lc.recip();
            Ok(RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            })
        }
    }

    /// Wrap parts already known to be canonical.
    fn from_canonical(num: Poly, den: Poly) -> Self {
        debug_assert!(den.is_monic());
        RatFunc { num, den }
    }

    pub fn zero() -> Self {
        RatFunc::from_canonical(Poly::zero(), Poly::one())
    }

    pub fn one() -> Self {
        RatFunc::constant(Rational::one())
    }

    /// The pencil parameter itself.
    pub fn t() -> Self {
        RatFunc::from_canonical(Poly::x(), Poly::one())
    }

    pub fn constant(c: Rational) -> Self {
        RatFunc::from_canonical(Poly::constant(c), Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc::from_canonical(p, Poly::one())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        self.is_constant().then(|| self.num.constant_term())
    }

    /// `max(deg num, deg den)`, the degree of the induced map `P^1 -> P^1`.
    pub fn degree(&self) -> usize {
        self.num.degree_or_zero().max(self.den.degree_or_zero())
    }

    /// `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    /// Limit as `t -> infinity`; `None` when it is a pole.
    pub fn value_at_infinity(&self) -> Option<Rational> {
        let dn = self.num.degree();
        let dd = self.den.degree_or_zero();
        match dn {
            None => Some(Rational::zero()),
            Some(k) if k < dd => Some(Rational::zero()),
            Some(k) if k == dd => Some(self.num.leading() / self.den.leading()),
            Some(_) => None,
        }
    }

    /// Order of vanishing at `t = infinity` (negative for a pole). The zero
    /// function has no order and returns `None`.
    pub fn order_at_infinity(&self) -> Option<i64> {
        let dn = self.num.degree()? as i64;
        Some(self.den.degree_or_zero() as i64 - dn)
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::from_canonical(self.num.scale(c), self.den.clone())
    }

    pub fn recip(&self) -> Result<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZeroPolynomial);
        }
        // gcds between the cross terms keep intermediates small
        let g1 = poly_gcd(&self.num, &rhs.num);
        let g2 = poly_gcd(&self.den, &rhs.den);
        let n = &self.num.exact_div(&g1)? * &rhs.den.exact_div(&g2)?;
        let d = &self.den.exact_div(&g2)? * &rhs.num.exact_div(&g1)?;
        RatFunc::new(n, d)
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        // powers of coprime polynomials stay coprime
        let num = self.num.pow(e);
        let den = self.den.pow(e);
        RatFunc::from_canonical(num, den)
    }

    pub fn add_constant(&self, c: &Rational) -> RatFunc {
        if c.is_zero() {
            return self.clone();
        }
        let num = &self.num + &self.den.scale(c);
        if num.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::from_canonical(num, self.den.clone())
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone())
                .expect("nonzero denominator");
        }
        if rhs.den.is_one() {
            let num = &self.num + &(&rhs.num * &self.den);
            return RatFunc::new(num, self.den.clone()).expect("nonzero denominator");
        }
        if self.den.is_one() {
            return rhs + self;
        }
        let g = poly_gcd(&self.den, &rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RatFunc::from_canonical(num, &self.den * &rhs.den);
        }
        let a = rhs.den.exact_div(&g).expect("exact");
        let b = self.den.exact_div(&g).expect("exact");
        let num = &(&self.num * &a) + &(&rhs.num * &b);
        if num.is_zero() {
            return RatFunc::zero();
        }
        // the sum is already coprime to a * b, so only g can cancel
        let h = poly_gcd(&num, &g);
        let den = &self.den * &a;
        if h.is_one() {
            RatFunc::from_canonical(num, den)
        } else {
            RatFunc::from_canonical(num.exact_div(&h).expect("exact"), den.exact_div(&h).expect("exact"))
        }
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::from_canonical(-&self.num, self.den.clone())
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        let g1 = poly_gcd(&self.num, &rhs.den);
        let g2 = poly_gcd(&rhs.num, &self.den);
        let n = &self.num.exact_div(&g1).expect("exact") * &rhs.num.exact_div(&g2).expect("exact");
        let d = &self.den.exact_div(&g2).expect("exact") * &rhs.den.exact_div(&g1).expect("exact");
        // cross-cancelled factors of reduced inputs are coprime; normalize the leading coefficient
        let lc = d.leading();
        if lc.is_one() {
            RatFunc::from_canonical(n, d)
        } else {
            let inv = lc.recip();
            RatFunc::from_canonical(n.scale(&inv), d.scale(&inv))
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}
