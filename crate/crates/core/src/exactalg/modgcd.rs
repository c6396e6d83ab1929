//! Multi-prime modular gcd for primitive integer polynomials.
//!
//! Images modulo 62-bit primes are combined by CRT; the leading coefficient
//! of the result is forced to `gcd(lc a, lc b)` so the images agree. A prime
//! whose image has too large a degree is unlucky and skipped. Once the
//! symmetric lift stops changing, the candidate is confirmed by exact
//! division, so the answer never depends on the heuristic.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit inputs.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &b in &BASES {
        let mut x = pow_mod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const PRIME_CACHE: usize = 512;

fn cached_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(PRIME_CACHE);
        let mut n = (1u64 << 62) - 1;
        while out.len() < PRIME_CACHE {
            if is_prime(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

/// Primes below `2^62`, descending; unbounded.
fn primes() -> impl Iterator<Item = u64> {
    let cached = cached_primes();
    let last = *cached.last().unwrap();
    cached.iter().copied().chain(
        (1..)
            .map(move |k| last - 2 * k)
            .filter(|&n| is_prime(n)),
    )
}

fn reduce(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Monic gcd over `F_p`.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        // a <- a mod b
        let inv = inv_mod(*b.last().unwrap(), p);
        while a.len() >= b.len() {
            let c = mul_mod(*a.last().unwrap(), inv, p);
            let shift = a.len() - b.len();
            for (i, &bc) in b.iter().enumerate() {
                let sub = mul_mod(c, bc, p);
                let x = &mut a[i + shift];
                *x = if *x >= sub { *x - sub } else { *x + p - sub };
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&lc) = a.last() {
        let inv = inv_mod(lc, p);
        for x in a.iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
    }
    a
}

/// Whether `h` divides `a` exactly in `Z[x]`.
fn divides(h: &[BigInt], a: &[BigInt]) -> bool {
    let lh = h.last().expect("nonzero");
    let mut r = a.to_vec();
    while r.len() >= h.len() {
        let (q, rem) = r.last().unwrap().div_rem(lh);
        if !rem.is_zero() {
            return false;
        }
        let shift = r.len() - h.len();
        for (i, hc) in h.iter().enumerate() {
            r[i + shift] -= &q * hc;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r.is_empty()
}

fn symmetric(c: &BigInt, modulus: &BigInt, half: &BigInt) -> BigInt {
    if c > half {
        c - modulus
    } else {
        c.clone()
    }
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = super::poly::integer_content(&v);
    if !g.is_zero() && !g.is_one() {
        for c in v.iter_mut() {
            *c /= &g;
        }
    }
    if v.last().is_some_and(Signed::is_negative) {
        for c in v.iter_mut() {
            *c = -&*c;
        }
    }
    v
}

/// Primitive gcd of two primitive integer polynomials of positive degree,
/// with positive leading coefficient.
pub(crate) fn modular_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let la = a.last().expect("nonzero");
    let lb = b.last().expect("nonzero");
    let lc_gcd = la.gcd(lb);

    let mut modulus = BigInt::one();
    let mut residues: Vec<BigInt> = Vec::new();
    let mut degree: Option<usize> = None;
    let mut candidate: Option<Vec<BigInt>> = None;

    for p in primes() {
        let pb = BigInt::from(p);
        if (la % &pb).is_zero() || (lb % &pb).is_zero() {
            continue;
        }
        let ap: Vec<u64> = a.iter().map(|c| reduce(c, p)).collect();
        let bp: Vec<u64> = b.iter().map(|c| reduce(c, p)).collect();
        let mut g = gcd_mod(ap, bp, p);
        let d = g.len() - 1;
        if d == 0 {
            return vec![BigInt::one()];
        }
        if degree.is_some_and(|known| d > known) {
            continue;
        }
        let scale = reduce(&lc_gcd, p);
        for x in g.iter_mut() {
            *x = mul_mod(*x, scale, p);
        }
        if degree != Some(d) {
            degree = Some(d);
            modulus = pb;
            residues = g.into_iter().map(BigInt::from).collect();
            candidate = None;
            continue;
        }
        // CRT: x = r + M * ((g - r) * M^-1 mod p)
        let m_inv = inv_mod(reduce(&modulus, p), p);
        for (r, &gp) in residues.iter_mut().zip(&g) {
            let rp = reduce(r, p);
            let diff = if gp >= rp { gp - rp } else { gp + p - rp };
            let k = mul_mod(diff, m_inv, p);
            *r += &modulus * BigInt::from(k);
        }
        modulus *= &pb;
        let half = &modulus >> 1;
        let lifted: Vec<BigInt> = residues.iter().map(|r| symmetric(r, &modulus, &half)).collect();
        let next = primitive(lifted);
        if candidate.as_ref() == Some(&next) && divides(&next, a) && divides(&next, b) {
            return next;
        }
        candidate = Some(next);
    }
    unreachable!("prime iterator is unbounded")
}
