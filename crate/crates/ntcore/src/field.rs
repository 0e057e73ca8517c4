//! Finite fields `GF(p^r)` for small odd `p`, with deterministic modulus
//! choice and Frobenius.
//!
//! Elements are residue polynomials modulo a monic irreducible polynomial of
//! degree `r` over `F_p`. The modulus is chosen deterministically as the
//! smallest monic irreducible in lexicographic order on the coefficient
//! vector `(c_0, c_1, ..., c_{r-1})`, so field representations are
//! reproducible across runs.

use std::fmt;

use thiserror::Error;

/// Largest supported characteristic. The Witt-vector layer is exercised at
/// `p` in `{3, 5, 7}`; curve reductions need residue fields up to `F_43`.
/// The cap keeps exhaustive element scans cheap.
pub const MAX_P: u64 = 97;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not an odd prime in 3..={MAX_P}")]
    UnsupportedCharacteristic(u64),
    #[error("extension degree must be >= 1")]
    ZeroDegree,
}

/// The field `GF(p^r)` together with its chosen modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    r: usize,
    /// Monic modulus of degree `r`: coefficients `c_0..c_r` with `c_r = 1`.
    modulus: Vec<u64>,
}

/// An element of a [`FiniteField`]: residue polynomial coefficients
/// `c_0 + c_1 x + ... + c_{r-1} x^{r-1}` reduced mod `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{c}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                (_, _) => write!(f, "{c}x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

impl FiniteField {
    /// Construct `GF(p^r)` with the deterministic modulus.
    pub fn new(p: u64, r: usize) -> Result<FiniteField, FieldError> {
        if !is_prime(p) || p % 2 == 0 || p > MAX_P || p < 3 {
            return Err(FieldError::UnsupportedCharacteristic(p));
        }
        if r == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let modulus = smallest_irreducible(p, r);
        Ok(FiniteField { p, r, modulus })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.r
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.r as u32)
    }

    /// Coefficients `c_0..c_r` of the monic modulus.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { coeffs: vec![0; self.r] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_u64(1)
    }

    pub fn from_u64(&self, n: u64) -> FieldElement {
        let mut coeffs = vec![0; self.r];
        coeffs[0] = n % self.p;
        FieldElement { coeffs }
    }

    /// The negative residue `-n mod p` as a field element.
    pub fn from_i64(&self, n: i64) -> FieldElement {
        let p = self.p as i64;
        self.from_u64(n.rem_euclid(p) as u64)
    }

    /// Build an element from residue-polynomial coefficients (length <= r).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> FieldElement {
        assert!(coeffs.len() <= self.r, "coefficient vector too long");
        let mut c = vec![0; self.r];
        for (i, &x) in coeffs.iter().enumerate() {
            c[i] = x % self.p;
        }
        FieldElement { coeffs: c }
    }

    /// The residue class `x` of the generator (the image of the variable).
    pub fn generator(&self) -> FieldElement {
        if self.r == 1 {
            // x reduces to 0 modulo a degree-1 modulus x + c0.
            self.from_i64(-(self.modulus[0] as i64))
        } else {
            let mut coeffs = vec![0; self.r];
            coeffs[1] = 1;
            FieldElement { coeffs }
        }
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| (x + y) % self.p)
            .collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let coeffs = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        // Schoolbook product then reduction; degrees are tiny.
        let mut prod = vec![0u64; 2 * self.r];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        self.reduce(&mut prod);
        FieldElement { coeffs: prod }
    }

    pub fn scalar_mul(&self, c: u64, a: &FieldElement) -> FieldElement {
        let c = c % self.p;
        let coeffs = a.coeffs.iter().map(|&x| (x * c) % self.p).collect();
        FieldElement { coeffs }
    }

    /// Reduce a coefficient vector modulo the modulus in place, truncating to
    /// length `r`.
    fn reduce(&self, v: &mut Vec<u64>) {
        for i in (self.r..v.len()).rev() {
            let c = v[i];
            if c != 0 {
                v[i] = 0;
                // x^i = x^{i-r} * (x^r) = x^{i-r} * (-c_0 - ... - c_{r-1} x^{r-1})
                for j in 0..self.r {
                    let sub = (c * self.modulus[j]) % self.p;
                    v[i - self.r + j] = (v[i - self.r + j] + self.p - sub) % self.p;
                }
            }
        }
        v.truncate(self.r);
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: &FieldElement) -> FieldElement {
        assert!(!self.is_zero(a), "inverse of zero");
        self.pow(a, self.order() - 2)
    }

    /// The Frobenius automorphism `x -> x^p`.
    pub fn frobenius(&self, a: &FieldElement) -> FieldElement {
        self.pow(a, self.p)
    }

    /// The inverse of Frobenius, `x -> x^{p^{r-1}}`.
    pub fn frobenius_inv(&self, a: &FieldElement) -> FieldElement {
        let mut out = a.clone();
        for _ in 0..self.r - 1 {
            out = self.frobenius(&out);
        }
        out
    }

    /// Iterate over all `p^r` elements in a fixed order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let total = self.order();
        (0..total).map(move |mut n| {
            let mut coeffs = vec![0; self.r];
            for c in coeffs.iter_mut() {
                *c = n % self.p;
                n /= self.p;
            }
            FieldElement { coeffs }
        })
    }

    /// An embedding of `sub` into `self`, given as the image of `sub`'s
    /// generator, if one exists (iff `sub.degree()` divides `self.degree()`
    /// and characteristics match).
    pub fn subfield_embedding(&self, sub: &FiniteField) -> Option<FieldElement> {
        if sub.p != self.p || self.r % sub.r != 0 {
            return None;
        }
        // A root of sub's modulus generates a copy of the subfield.
        self.elements().find(|cand| {
            let mut acc = self.zero();
            // Evaluate sub.modulus at cand via Horner.
            for &c in sub.modulus.iter().rev() {
                acc = self.mul(&acc, cand);
                acc = self.add(&acc, &self.from_u64(c));
            }
            self.is_zero(&acc)
        })
    }

    /// Evaluate a polynomial with `F_p` coefficients (`c_0..c_d`) at `a`.
    pub fn eval_prime_poly(&self, coeffs: &[u64], a: &FieldElement) -> FieldElement {
        let mut acc = self.zero();
        for &c in coeffs.iter().rev() {
            acc = self.mul(&acc, a);
            acc = self.add(&acc, &self.from_u64(c));
        }
        acc
    }
}

/// Smallest monic irreducible of degree `r` over `F_p`, by lexicographic
/// order on `(c_0, ..., c_{r-1})`.
fn smallest_irreducible(p: u64, r: usize) -> Vec<u64> {
    let total = p.pow(r as u32);
    for n in 0..total {
        let mut coeffs = vec![0u64; r + 1];
        coeffs[r] = 1;
        let mut m = n;
        // Lex order with c_0 most significant.
        for i in (0..r).rev() {
            coeffs[i] = m % p;
            m /= p;
        }
        if is_irreducible(p, &coeffs) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over F_p")
}

/// Trial factorization: no monic divisor of degree `1..=deg/2`.
fn is_irreducible(p: u64, poly: &[u64]) -> bool {
    let deg = poly.len() - 1;
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let total = p.pow(d as u32);
        for n in 0..total {
            let mut div = vec![0u64; d + 1];
            div[d] = 1;
            let mut m = n;
            for c in div.iter_mut().take(d) {
                *c = m % p;
                m /= p;
            }
            if divides(p, &div, poly) {
                return false;
            }
        }
    }
    true
}

/// Does monic `div` divide `poly` over `F_p`?
fn divides(p: u64, div: &[u64], poly: &[u64]) -> bool {
    let mut rem: Vec<u64> = poly.to_vec();
    let d = div.len() - 1;
    while rem.len() > d {
        let lead = *rem.last().unwrap();
        let shift = rem.len() - 1 - d;
        if lead != 0 {
            for (i, &c) in div.iter().enumerate() {
                let idx = shift + i;
                rem[idx] = (rem[idx] + p - (lead * c) % p) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c == 0)
}
