//! Real quadratic fields `Q(sqrt(d))` with exact rational coordinates:
//! arithmetic, integrality, odd-prime splitting, valuations, and reduction
//! to residue fields.
//!
//! Elements are stored as a pair `(x, y)` meaning `x + y*sqrt(d)`; the field
//! object carries `d` and performs all operations, so elements themselves are
//! plain data. Primes of the field are described by their splitting type:
//! ramified (`p | d`, uniformizer `sqrt(d)`, `e = 2`), split (a square root
//! of `d` exists mod `p`; valuations go through a Hensel-lifted root), or
//! inert (residue field of order `p^2`).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use ntcore::field::{FieldElement, FiniteField};

use crate::CurveError;

/// An element `x + y*sqrt(d)`; operations live on [`QuadField`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadElement {
    pub x: BigRational,
    pub y: BigRational,
}

impl fmt::Display for QuadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_zero() {
            return write!(f, "{}", self.x);
        }
        let s_part = if self.y.is_one() {
            "s".to_string()
        } else if (-&self.y).is_one() {
            "-s".to_string()
        } else {
            format!("{}*s", self.y)
        };
        if self.x.is_zero() {
            write!(f, "{s_part}")
        } else if s_part.starts_with('-') {
            write!(f, "{}{}", self.x, s_part)
        } else {
            write!(f, "{}+{}", self.x, s_part)
        }
    }
}

/// A prime of the quadratic field lying over an odd rational prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuadPrime {
    /// `p | d`; the uniformizer is `sqrt(d)`, `e = 2`, `f = 1`.
    Ramified { p: u64 },
    /// `d` is a nonzero square mod `p`; `root` is the smallest square root.
    /// `e = 1`, `f = 1`, and `sqrt(d)` maps to the Hensel lift of `root`.
    Split { p: u64, root: u64 },
    /// `d` is a non-square mod `p`; `e = 1`, `f = 2`.
    Inert { p: u64 },
}

impl QuadPrime {
    pub fn residue_char(&self) -> u64 {
        match self {
            QuadPrime::Ramified { p } | QuadPrime::Split { p, .. } | QuadPrime::Inert { p } => *p,
        }
    }

    pub fn ramification(&self) -> u64 {
        match self {
            QuadPrime::Ramified { .. } => 2,
            _ => 1,
        }
    }

    pub fn residue_degree(&self) -> u64 {
        match self {
            QuadPrime::Inert { .. } => 2,
            _ => 1,
        }
    }

    pub fn residue_order(&self) -> u64 {
        let p = self.residue_char();
        p.pow(self.residue_degree() as u32)
    }
}

/// The field `Q(sqrt(d))` for squarefree `d`, or the degenerate rational
/// context (`d = 0`) used internally for curves over `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadField {
    d: i64,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

fn is_squarefree(n: i64) -> bool {
    let mut m = n.unsigned_abs();
    let mut k = 2u64;
    while k * k <= m {
        if m % (k * k) == 0 {
            return false;
        }
        while m % k == 0 {
            m /= k;
        }
        k += 1;
    }
    true
}

impl QuadField {
    pub fn new(d: i64) -> Result<QuadField, CurveError> {
        if d == 0 || d == 1 || !is_squarefree(d) {
            return Err(CurveError::InvalidFieldDatum(d));
        }
        Ok(QuadField { d })
    }

    /// The arithmetic context for curves over `Q`: every element handled
    /// through it keeps `y = 0`, so `d` never enters.
    pub(crate) fn rational_context() -> QuadField {
        QuadField { d: 0 }
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn element(&self, x: BigRational, y: BigRational) -> QuadElement {
        QuadElement { x, y }
    }

    pub fn from_pair(&self, x: i64, y: i64) -> QuadElement {
        QuadElement {
            x: BigRational::from_integer(BigInt::from(x)),
            y: BigRational::from_integer(BigInt::from(y)),
        }
    }

    pub fn from_integer(&self, n: i64) -> QuadElement {
        self.from_pair(n, 0)
    }

    pub fn zero(&self) -> QuadElement {
        self.from_pair(0, 0)
    }

    pub fn one(&self) -> QuadElement {
        self.from_pair(1, 0)
    }

    /// `sqrt(d)` itself.
    pub fn root(&self) -> QuadElement {
        self.from_pair(0, 1)
    }

    pub fn is_zero(&self, a: &QuadElement) -> bool {
        a.x.is_zero() && a.y.is_zero()
    }

    pub fn add(&self, a: &QuadElement, b: &QuadElement) -> QuadElement {
        QuadElement { x: &a.x + &b.x, y: &a.y + &b.y }
    }

    pub fn sub(&self, a: &QuadElement, b: &QuadElement) -> QuadElement {
        QuadElement { x: &a.x - &b.x, y: &a.y - &b.y }
    }

    pub fn neg(&self, a: &QuadElement) -> QuadElement {
        QuadElement { x: -&a.x, y: -&a.y }
    }

    pub fn mul(&self, a: &QuadElement, b: &QuadElement) -> QuadElement {
        let d = BigRational::from_integer(BigInt::from(self.d));
        QuadElement {
            x: &a.x * &b.x + &d * &a.y * &b.y,
            y: &a.x * &b.y + &a.y * &b.x,
        }
    }

    pub fn scale(&self, n: i64, a: &QuadElement) -> QuadElement {
        let n = BigRational::from_integer(BigInt::from(n));
        QuadElement { x: &n * &a.x, y: &n * &a.y }
    }

    pub fn conjugate(&self, a: &QuadElement) -> QuadElement {
        QuadElement { x: a.x.clone(), y: -&a.y }
    }

    /// `x^2 - d y^2`.
    pub fn norm(&self, a: &QuadElement) -> BigRational {
        let d = BigRational::from_integer(BigInt::from(self.d));
        &a.x * &a.x - &d * &a.y * &a.y
    }

    pub fn trace(&self, a: &QuadElement) -> BigRational {
        &a.x + &a.x
    }

    /// Inverse of a nonzero element: the conjugate over the norm.
    pub fn inv(&self, a: &QuadElement) -> QuadElement {
        let n = self.norm(a);
        assert!(!n.is_zero(), "inverse of zero (or of a zero divisor)");
        QuadElement { x: &a.x / &n, y: -&a.y / &n }
    }

    pub fn div(&self, a: &QuadElement, b: &QuadElement) -> QuadElement {
        self.mul(a, &self.inv(b))
    }

    /// Algebraic integer test: trace and norm both integers. This admits the
    /// half-integer elements exactly when `d = 1 mod 4`.
    pub fn is_integral(&self, a: &QuadElement) -> bool {
        self.trace(a).is_integer() && self.norm(a).is_integer()
    }

    /// The prime of the field above an odd rational prime `p`.
    pub fn prime_above(&self, p: u64) -> Result<QuadPrime, CurveError> {
        if p == 2 || !is_prime(p) {
            return Err(CurveError::InvalidPrime(p));
        }
        let d_mod = self.d.rem_euclid(p as i64) as u64;
        if d_mod == 0 {
            return Ok(QuadPrime::Ramified { p });
        }
        // Euler's criterion, then a direct root scan.
        let mut pow = 1u64;
        let mut base = d_mod % p;
        let mut exp = (p - 1) / 2;
        while exp > 0 {
            if exp & 1 == 1 {
                pow = pow * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        if pow == 1 {
            let root = (1..p).find(|r| r * r % p == d_mod).expect("criterion says a root exists");
            Ok(QuadPrime::Split { p, root })
        } else {
            Ok(QuadPrime::Inert { p })
        }
    }

    /// Valuation at the given prime, normalized so the uniformizer has
    /// valuation 1. `None` is the valuation of zero.
    pub fn valuation(&self, prime: &QuadPrime, a: &QuadElement) -> Option<i64> {
        if self.is_zero(a) {
            return None;
        }
        let p = prime.residue_char();
        match prime {
            QuadPrime::Ramified { .. } => {
                // v(x + y sqrt(d)) = min(2 v_p(x), 1 + 2 v_p(y)); the two
                // candidates have opposite parities, so the minimum is exact.
                let vx = rational_valuation(p, &a.x).map(|v| 2 * v);
                let vy = rational_valuation(p, &a.y).map(|v| 1 + 2 * v);
                match (vx, vy) {
                    (Some(u), Some(w)) => Some(u.min(w)),
                    (u, w) => u.or(w),
                }
            }
            QuadPrime::Inert { .. } => {
                // 1 and sqrt(d) stay independent over the residue field, so
                // no cancellation is possible.
                let vx = rational_valuation(p, &a.x);
                let vy = rational_valuation(p, &a.y);
                match (vx, vy) {
                    (Some(u), Some(w)) => Some(u.min(w)),
                    (u, w) => u.or(w),
                }
            }
            QuadPrime::Split { root, .. } => Some(self.split_embedding(p, *root, a).0),
        }
    }

    /// The image of `a` under the embedding `sqrt(d) -> r` into `Q_p`,
    /// returned as (valuation, unit residue mod p).
    fn split_embedding(&self, p: u64, root: u64, a: &QuadElement) -> (i64, u64) {
        let vx = rational_valuation(p, &a.x);
        let vy = rational_valuation(p, &a.y);
        let m = match (vx, vy) {
            (Some(u), Some(w)) => u.min(w),
            (Some(u), None) => u,
            (None, Some(w)) => w,
            (None, None) => unreachable!("zero handled by the caller"),
        };
        // Scale so both coordinates are p-integral and at least one a unit.
        let scale = pow_rational(p, -m);
        let u = &a.x * &scale;
        let w = &a.y * &scale;
        // The cancellation depth is bounded through the norm: v(a) + v(conj a)
        // = v_p(N(a)), and v(conj a) >= m.
        let norm_val = rational_valuation(p, &self.norm(a)).expect("nonzero element, nonzero norm");
        let cap = (norm_val - 2 * m).max(0) as u32 + 4;
        let mut k = 8u32.max(cap.min(64));
        loop {
            let modulus = BigInt::from(p).pow(k);
            let r = hensel_root(p, self.d, root, k);
            let s = (rational_mod(&u, &modulus, p) + rational_mod(&w, &modulus, p) * &r)
                .mod_floor(&modulus);
            if !s.is_zero() {
                let (v, unit) = split_off_p(p, &s);
                if (v as u32) < k {
                    let residue = unit.mod_floor(&BigInt::from(p)).to_u64().unwrap();
                    return (m + v, residue);
                }
            }
            k *= 2;
            assert!(k <= 4096, "split valuation failed to stabilize");
        }
    }

    /// Reduce an element of non-negative valuation to the residue field.
    /// `fq` must match the prime's residue field shape.
    pub fn reduce(
        &self,
        prime: &QuadPrime,
        a: &QuadElement,
        fq: &FiniteField,
    ) -> Result<FieldElement, CurveError> {
        let p = prime.residue_char();
        assert_eq!(fq.characteristic(), p, "residue field characteristic mismatch");
        assert_eq!(
            fq.degree() as u64,
            prime.residue_degree(),
            "residue field degree mismatch"
        );
        if self.is_zero(a) {
            return Ok(fq.zero());
        }
        match self.valuation(prime, a) {
            Some(v) if v < 0 => return Err(CurveError::NonIntegralModel),
            _ => {}
        }
        match prime {
            QuadPrime::Ramified { .. } => {
                // sqrt(d) reduces to zero; x is p-integral by the valuation
                // parity argument.
                Ok(fq.from_u64(rational_residue(p, &a.x)))
            }
            QuadPrime::Split { root, .. } => {
                let (v, unit) = self.split_embedding(p, *root, a);
                Ok(if v > 0 { fq.zero() } else { fq.from_u64(unit) })
            }
            QuadPrime::Inert { .. } => {
                // Embed sqrt(d) as a square root of d in GF(p^2).
                let target = fq.from_u64(self.d.rem_euclid(p as i64) as u64);
                let s = fq
                    .elements()
                    .find(|e| fq.mul(e, e) == target)
                    .expect("d has a square root in the quadratic extension");
                let xr = fq.from_u64(rational_residue(p, &a.x));
                let yr = fq.from_u64(rational_residue(p, &a.y));
                Ok(fq.add(&xr, &fq.mul(&yr, &s)))
            }
        }
    }

    /// Parse "x", "y*s", "x+y*s", "x-y*s" with rational parts like "-3/2".
    pub fn parse_element(&self, text: &str) -> Result<QuadElement, CurveError> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(CurveError::ParseError("empty coefficient".into()));
        }
        let bad = || CurveError::ParseError(format!("bad coefficient `{text}`"));
        let mut x = BigRational::zero();
        let mut y = BigRational::zero();
        // Split into signed terms at '+'/'-' (except a leading sign).
        let mut terms: Vec<String> = Vec::new();
        let mut current = String::new();
        for (i, c) in compact.chars().enumerate() {
            if (c == '+' || c == '-') && i > 0 {
                terms.push(current.clone());
                current.clear();
            }
            current.push(c);
        }
        terms.push(current);
        for raw in terms {
            let (sign, body) = match raw.strip_prefix('-') {
                Some(rest) => (-1i64, rest.to_string()),
                None => (1i64, raw.strip_prefix('+').unwrap_or(&raw).to_string()),
            };
            let (is_root, num_part) = if body == "s" {
                (true, String::new())
            } else if let Some(rest) = body.strip_suffix("*s") {
                (true, rest.to_string())
            } else {
                (false, body.clone())
            };
            let value = if is_root && num_part.is_empty() {
                BigRational::one()
            } else {
                parse_rational(&num_part).ok_or_else(bad)?
            };
            let signed = value * BigRational::from_integer(BigInt::from(sign));
            if is_root {
                y += signed;
            } else {
                x += signed;
            }
        }
        Ok(QuadElement { x, y })
    }
}

fn parse_rational(text: &str) -> Option<BigRational> {
    if let Some((n, d)) = text.split_once('/') {
        let num: BigInt = n.parse().ok()?;
        let den: BigInt = d.parse().ok()?;
        if den.is_zero() {
            return None;
        }
        Some(BigRational::new(num, den))
    } else {
        let num: BigInt = text.parse().ok()?;
        Some(BigRational::from_integer(num))
    }
}

/// `p`-adic valuation of a nonzero integer.
fn int_valuation(p: u64, n: &BigInt) -> i64 {
    assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut m = n.abs();
    let mut v = 0;
    while (&m % &p).is_zero() {
        m /= &p;
        v += 1;
    }
    v
}

/// `p`-adic valuation of a rational; `None` for zero.
pub(crate) fn rational_valuation(p: u64, r: &BigRational) -> Option<i64> {
    if r.is_zero() {
        None
    } else {
        Some(int_valuation(p, r.numer()) - int_valuation(p, r.denom()))
    }
}

/// `p^k` as a rational, for possibly negative `k`.
fn pow_rational(p: u64, k: i64) -> BigRational {
    let pk = BigInt::from(p).pow(k.unsigned_abs() as u32);
    if k >= 0 {
        BigRational::from_integer(pk)
    } else {
        BigRational::new(BigInt::one(), pk)
    }
}

/// Residue mod p of a rational with p-unit denominator.
pub(crate) fn rational_residue(p: u64, r: &BigRational) -> u64 {
    let modulus = BigInt::from(p);
    let num = r.numer().mod_floor(&modulus);
    let den = r.denom().mod_floor(&modulus);
    assert!(!den.is_zero(), "denominator divisible by p");
    let inv = mod_inverse(&den, &modulus);
    (num * inv).mod_floor(&modulus).to_u64().unwrap()
}

/// A p-integral rational reduced mod `p^k` (the modulus is given).
fn rational_mod(r: &BigRational, modulus: &BigInt, p: u64) -> BigInt {
    let num = r.numer().mod_floor(modulus);
    let den = r.denom().mod_floor(modulus);
    assert!(!(r.denom() % BigInt::from(p)).is_zero(), "denominator not a p-unit");
    num * mod_inverse(&den, modulus) % modulus
}

fn mod_inverse(a: &BigInt, modulus: &BigInt) -> BigInt {
    let e = a.extended_gcd(modulus);
    assert!(e.gcd.is_one(), "element not invertible mod the given modulus");
    e.x.mod_floor(modulus)
}

/// Split off the p-part of a nonzero integer: `(v, unit)` with
/// `n = p^v * unit`.
fn split_off_p(p: u64, n: &BigInt) -> (i64, BigInt) {
    let p = BigInt::from(p);
    let mut m = n.clone();
    let mut v = 0;
    while (&m % &p).is_zero() {
        m /= &p;
        v += 1;
    }
    (v, m)
}

/// Square root of `d` mod `p^k` extending the given residue root (which
/// selects the prime): one digit of precision per Newton step.
fn hensel_root(p: u64, d: i64, base_root: u64, k: u32) -> BigInt {
    let pb = BigInt::from(p);
    let target = BigInt::from(d);
    debug_assert_eq!(
        (base_root * base_root % p) as i64,
        d.rem_euclid(p as i64),
        "the supplied residue is not a root"
    );
    let mut r = BigInt::from(base_root);
    let mut modulus = pb.clone();
    for _ in 1..k {
        let next = &modulus * &pb;
        // One more digit: r <- r - t p^j with t = (r^2 - d)/p^j * (2r)^{-1}.
        let f = (&r * &r - &target).mod_floor(&next);
        let t = ((&f / &modulus) * mod_inverse(&((BigInt::from(2) * &r) % &pb), &pb))
            .mod_floor(&pb);
        r = (&r - t * &modulus).mod_floor(&next);
        modulus = next;
        debug_assert!(((&r * &r - &target) % &modulus).is_zero(), "Hensel step lost the root");
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn arithmetic_and_inverse() {
        let f = QuadField::new(2).unwrap();
        let a = f.from_pair(1, 1);
        let b = f.from_pair(3, -1);
        // (1 + s)(3 - s) = 1 + 2s.
        assert_eq!(f.mul(&a, &b), f.from_pair(1, 2));
        let inv = f.inv(&f.from_pair(3, 1));
        assert_eq!(f.mul(&inv, &f.from_pair(3, 1)), f.one());
        assert_eq!(inv.x, BigRational::new(BigInt::from(3), BigInt::from(7)));
        assert_eq!(f.norm(&f.from_pair(3, 1)), q(7));
    }

    #[test]
    fn integrality_follows_d_mod_four() {
        let f17 = QuadField::new(17).unwrap();
        let half = f17.element(
            BigRational::new(BigInt::one(), BigInt::from(2)),
            BigRational::new(BigInt::one(), BigInt::from(2)),
        );
        assert!(f17.is_integral(&half), "(1+sqrt(17))/2 is integral");
        let f2 = QuadField::new(2).unwrap();
        let half2 = f2.element(
            BigRational::new(BigInt::one(), BigInt::from(2)),
            BigRational::new(BigInt::one(), BigInt::from(2)),
        );
        assert!(!f2.is_integral(&half2));
        assert!(f2.is_integral(&f2.from_pair(4, -3)));
    }

    #[test]
    fn splitting_types() {
        let f2 = QuadField::new(2).unwrap();
        assert_eq!(f2.prime_above(7).unwrap(), QuadPrime::Split { p: 7, root: 3 });
        assert_eq!(f2.prime_above(5).unwrap(), QuadPrime::Inert { p: 5 });
        let f3 = QuadField::new(3).unwrap();
        assert_eq!(f3.prime_above(3).unwrap(), QuadPrime::Ramified { p: 3 });
        let f17 = QuadField::new(17).unwrap();
        // 17 = 4 mod 13, and the smallest square root of 4 is 2.
        assert_eq!(f17.prime_above(13).unwrap(), QuadPrime::Split { p: 13, root: 2 });
        assert!(matches!(f17.prime_above(43).unwrap(), QuadPrime::Split { .. }));
        assert_eq!(f2.prime_above(2), Err(CurveError::InvalidPrime(2)));
        assert_eq!(f2.prime_above(9), Err(CurveError::InvalidPrime(9)));
    }

    #[test]
    fn ramified_valuations() {
        let f = QuadField::new(3).unwrap();
        let pr = f.prime_above(3).unwrap();
        assert_eq!(f.valuation(&pr, &f.root()), Some(1));
        assert_eq!(f.valuation(&pr, &f.from_integer(3)), Some(2));
        assert_eq!(f.valuation(&pr, &f.from_integer(2)), Some(0));
        // 96 sqrt(3) - 448: the rational part is a 3-unit, so v = 0.
        let delta = f.from_pair(-448, 96);
        assert_eq!(f.valuation(&pr, &delta), Some(0));
        assert_eq!(f.valuation(&pr, &f.zero()), None);
        // -8 sqrt(3) has v = 1.
        assert_eq!(f.valuation(&pr, &f.from_pair(0, -8)), Some(1));
    }

    #[test]
    fn split_valuations_through_hensel() {
        let f = QuadField::new(2).unwrap();
        let pr = f.prime_above(7).unwrap();
        // sqrt(2) - 3 generates the prime: v = 1.
        assert_eq!(f.valuation(&pr, &f.from_pair(-3, 1)), Some(1));
        // Its conjugate is a unit there.
        assert_eq!(f.valuation(&pr, &f.from_pair(-3, -1)), Some(0));
        // (sqrt(2) - 3)/7 has valuation 1 - 1 = 0 despite denominator 7.
        let z = f.element(
            BigRational::new(BigInt::from(-3), BigInt::from(7)),
            BigRational::new(BigInt::from(1), BigInt::from(7)),
        );
        assert_eq!(f.valuation(&pr, &z), Some(0));
        // Deep cancellation: (sqrt(2) - 3)^3 has valuation 3.
        let g = f.from_pair(-3, 1);
        let cube = f.mul(&g, &f.mul(&g, &g));
        assert_eq!(f.valuation(&pr, &cube), Some(3));
    }

    #[test]
    fn reductions_land_in_the_right_fields() {
        let f3 = QuadField::new(3).unwrap();
        let pr = f3.prime_above(3).unwrap();
        let fp = FiniteField::new(3, 1).unwrap();
        // sqrt(3) dies, -448 = 2 mod 3.
        let delta = f3.from_pair(-448, 96);
        assert_eq!(f3.reduce(&pr, &delta, &fp).unwrap(), fp.from_u64(2));

        let f2 = QuadField::new(2).unwrap();
        let pr7 = f2.prime_above(7).unwrap();
        let f7 = FiniteField::new(7, 1).unwrap();
        // sqrt(2) -> 3 mod 7, so 1 + sqrt(2) -> 4.
        assert_eq!(f2.reduce(&pr7, &f2.from_pair(1, 1), &f7).unwrap(), f7.from_u64(4));
        // The deep-denominator unit from the valuation test reduces to 1.
        let z = f2.element(
            BigRational::new(BigInt::from(-3), BigInt::from(7)),
            BigRational::new(BigInt::from(1), BigInt::from(7)),
        );
        assert_eq!(f2.reduce(&pr7, &z, &f7).unwrap(), f7.from_u64(1));
        // Negative valuation is rejected.
        let bad = f2.element(BigRational::new(BigInt::one(), BigInt::from(7)), BigRational::zero());
        assert_eq!(f2.reduce(&pr7, &bad, &f7), Err(CurveError::NonIntegralModel));

        // Inert: 5 in Q(sqrt 2), residue field GF(25).
        let pr5 = f2.prime_above(5).unwrap();
        let f25 = FiniteField::new(5, 2).unwrap();
        let img = f2.reduce(&pr5, &f2.from_pair(0, 1), &f25).unwrap();
        assert_eq!(f25.mul(&img, &img), f25.from_u64(2));
    }

    #[test]
    fn element_parsing() {
        let f = QuadField::new(3).unwrap();
        assert_eq!(f.parse_element("s").unwrap(), f.from_pair(0, 1));
        assert_eq!(f.parse_element("-448+96*s").unwrap(), f.from_pair(-448, 96));
        assert_eq!(f.parse_element("2-s").unwrap(), f.from_pair(2, -1));
        assert_eq!(
            f.parse_element("1/2+1/2*s").unwrap(),
            f.element(
                BigRational::new(BigInt::one(), BigInt::from(2)),
                BigRational::new(BigInt::one(), BigInt::from(2)),
            )
        );
        assert_eq!(f.parse_element("-10").unwrap(), f.from_integer(-10));
        assert!(f.parse_element("").is_err());
        assert!(f.parse_element("x+y").is_err());
    }

    #[test]
    fn display_round_trip() {
        let f = QuadField::new(3).unwrap();
        for z in [f.from_pair(-448, 96), f.from_pair(0, -1), f.from_pair(5, 0), f.zero()] {
            let shown = z.to_string();
            assert_eq!(f.parse_element(&shown).unwrap(), z, "round trip of {shown}");
        }
    }

    #[test]
    fn field_datum_validation() {
        assert!(QuadField::new(6).is_ok());
        assert!(QuadField::new(-3).is_ok());
        assert_eq!(QuadField::new(0), Err(CurveError::InvalidFieldDatum(0)));
        assert_eq!(QuadField::new(1), Err(CurveError::InvalidFieldDatum(1)));
        assert_eq!(QuadField::new(12), Err(CurveError::InvalidFieldDatum(12)));
    }
}
