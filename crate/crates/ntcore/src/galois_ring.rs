//! Galois rings `GR(p^m, r)`: truncated Witt rings of `GF(p^r)` in
//! polynomial form.
//!
//! `GR(p^m, r) = (Z/p^m)[t] / (f)`, where `f` is the monic lift (with
//! coefficients in `0..p`) of the modulus chosen for `GF(p^r)`. Reduction
//! mod `p` maps onto the field; the Teichmueller section is computed by
//! iterating `y -> y^{p^r}` to its fixed point.

use thiserror::Error;

use crate::field::{FieldElement, FiniteField};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GaloisRingError {
    #[error("element has a coordinate {coord} not divisible by p = {p}")]
    InexactDivisionByP { coord: u64, p: u64 },
}

/// The ring `GR(p^m, r)` over the field `GF(p^r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisRing {
    field: FiniteField,
    m: u32,
    modulus: u64,
    /// Monic lift of the field modulus, coefficients in `0..p`.
    poly_modulus: Vec<u64>,
}

/// An element: residue-polynomial coefficients in `Z/p^m`, length `r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    coeffs: Vec<u64>,
}

impl RingElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

impl GaloisRing {
    /// `GR(p^m, r)` over the given field; `m >= 1`.
    pub fn new(field: &FiniteField, m: u32) -> GaloisRing {
        assert!(m >= 1);
        let p = field.characteristic();
        let modulus = p.checked_pow(m).expect("p^m overflows u64");
        // Guard against overflow in schoolbook products: coefficients are
        // < p^m and we take products of two plus a small accumulator.
        assert!(modulus < (1u64 << 31), "precision p^m too large");
        GaloisRing {
            field: field.clone(),
            m,
            modulus,
            poly_modulus: field.modulus().to_vec(),
        }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn precision(&self) -> u32 {
        self.m
    }

    pub fn characteristic_power(&self) -> u64 {
        self.modulus
    }

    fn r(&self) -> usize {
        self.field.degree()
    }

    pub fn zero(&self) -> RingElement {
        RingElement { coeffs: vec![0; self.r()] }
    }

    pub fn one(&self) -> RingElement {
        self.from_u64(1)
    }

    pub fn from_u64(&self, n: u64) -> RingElement {
        let mut coeffs = vec![0; self.r()];
        coeffs[0] = n % self.modulus;
        RingElement { coeffs }
    }

    /// The naive lift of a field element: coefficients reinterpreted in
    /// `0..p` inside `Z/p^m`.
    pub fn lift(&self, a: &FieldElement) -> RingElement {
        RingElement { coeffs: a.coeffs().to_vec() }
    }

    /// Reduction modulo `p` onto the residue field.
    pub fn reduce(&self, a: &RingElement) -> FieldElement {
        let p = self.field.characteristic();
        let coeffs: Vec<u64> = a.coeffs.iter().map(|&c| c % p).collect();
        self.field.from_coeffs(&coeffs)
    }

    pub fn is_zero(&self, a: &RingElement) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| (x + y) % self.modulus)
            .collect();
        RingElement { coeffs }
    }

    pub fn neg(&self, a: &RingElement) -> RingElement {
        let coeffs = a.coeffs.iter().map(|&x| (self.modulus - x) % self.modulus).collect();
        RingElement { coeffs }
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.add(a, &self.neg(b))
    }

    pub fn scalar_mul(&self, c: u64, a: &RingElement) -> RingElement {
        let c = c % self.modulus;
        let coeffs = a.coeffs.iter().map(|&x| x * c % self.modulus).collect();
        RingElement { coeffs }
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let r = self.r();
        let mut prod = vec![0u64; 2 * r];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.modulus;
            }
        }
        // Reduce by the monic lifted modulus.
        for i in (r..2 * r).rev() {
            let c = prod[i];
            if c != 0 {
                prod[i] = 0;
                for j in 0..r {
                    let sub = c * self.poly_modulus[j] % self.modulus;
                    prod[i - r + j] = (prod[i - r + j] + self.modulus - sub) % self.modulus;
                }
            }
        }
        prod.truncate(r);
        RingElement { coeffs: prod }
    }

    pub fn pow(&self, a: &RingElement, mut e: u64) -> RingElement {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// The Teichmueller lift: the unique lift of `a` fixed by `y -> y^{p^r}`.
    pub fn teichmuller(&self, a: &FieldElement) -> RingElement {
        let q = self.field.order();
        let mut y = self.lift(a);
        // Each iteration at least doubles the precision to which y is fixed;
        // m iterations always suffice.
        for _ in 0..self.m {
            let next = self.pow(&y, q);
            if next == y {
                break;
            }
            y = next;
        }
        debug_assert_eq!(self.pow(&y, q), y, "Teichmueller iteration must stabilize");
        y
    }

    /// Exact division by `p`, well defined modulo `p^{m-1}` (the result is
    /// returned in the same ring; only its residue at lower precision is
    /// meaningful).
    pub fn div_p(&self, a: &RingElement) -> Result<RingElement, GaloisRingError> {
        let p = self.field.characteristic();
        let mut coeffs = Vec::with_capacity(a.coeffs.len());
        for &c in &a.coeffs {
            if c % p != 0 {
                return Err(GaloisRingError::InexactDivisionByP { coord: c, p });
            }
            coeffs.push(c / p);
        }
        Ok(RingElement { coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_case_is_integers_mod_p_m() {
        let f3 = FiniteField::new(3, 1).unwrap();
        let gr = GaloisRing::new(&f3, 2);
        let a = gr.from_u64(7);
        let b = gr.from_u64(5);
        assert_eq!(gr.mul(&a, &b), gr.from_u64(35 % 9));
        assert_eq!(gr.add(&a, &b), gr.from_u64(12 % 9));
    }

    #[test]
    fn teichmuller_of_two_mod_nine_is_eight() {
        // The multiplicative lift of 2 in Z/9 is 8 = -1: (-1)^3 = -1.
        let f3 = FiniteField::new(3, 1).unwrap();
        let gr = GaloisRing::new(&f3, 2);
        let t = gr.teichmuller(&f3.from_u64(2));
        assert_eq!(t, gr.from_u64(8));
    }

    #[test]
    fn teichmuller_is_multiplicative_gf9() {
        let f9 = FiniteField::new(3, 2).unwrap();
        let gr = GaloisRing::new(&f9, 3);
        let els: Vec<_> = f9.elements().collect();
        for a in &els {
            for b in &els {
                let lhs = gr.mul(&gr.teichmuller(a), &gr.teichmuller(b));
                let rhs = gr.teichmuller(&f9.mul(a, b));
                assert_eq!(lhs, rhs);
            }
            // Reduction inverts the lift.
            assert_eq!(gr.reduce(&gr.teichmuller(a)), *a);
        }
    }

    #[test]
    fn exact_division_by_p() {
        let f3 = FiniteField::new(3, 1).unwrap();
        let gr = GaloisRing::new(&f3, 2);
        let six = gr.from_u64(6);
        assert_eq!(gr.div_p(&six).unwrap(), gr.from_u64(2));
        let err = gr.div_p(&gr.from_u64(4)).unwrap_err();
        assert_eq!(err, GaloisRingError::InexactDivisionByP { coord: 4, p: 3 });
    }
}
