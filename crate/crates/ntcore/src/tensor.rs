//! The tensor product of two finite fields of the same characteristic, as a
//! quotient algebra.
//!
//! For fields `k` and `F` of characteristic `p`, the product `k (x) F` (over
//! `F_p`) is represented as `F[x] / (modulus of k)`: a free `F`-algebra of
//! dimension `[k : F_p]`, generally with zero divisors. The `k`-side
//! Frobenius acts as the `F`-algebra endomorphism `x -> x^p`, which has
//! order `[k : F_p]` and fixes `F`.

use crate::field::{FieldElement, FiniteField};

/// The algebra `k (x) F` in quotient form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorAlgebra {
    left: FiniteField,
    right: FiniteField,
}

/// An element: coefficients over the right field, indexed by powers of the
/// left generator, length `[k : F_p]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorElement {
    coeffs: Vec<FieldElement>,
}

impl TensorElement {
    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }
}

impl TensorAlgebra {
    pub fn new(left: &FiniteField, right: &FiniteField) -> TensorAlgebra {
        assert_eq!(
            left.characteristic(),
            right.characteristic(),
            "tensor factors must share a characteristic"
        );
        TensorAlgebra { left: left.clone(), right: right.clone() }
    }

    pub fn left(&self) -> &FiniteField {
        &self.left
    }

    pub fn right(&self) -> &FiniteField {
        &self.right
    }

    /// Dimension over the right field: `[k : F_p]`.
    pub fn dim(&self) -> usize {
        self.left.degree()
    }

    /// Total number of elements.
    pub fn order(&self) -> u64 {
        self.right.order().pow(self.dim() as u32)
    }

    pub fn zero(&self) -> TensorElement {
        TensorElement { coeffs: vec![self.right.zero(); self.dim()] }
    }

    pub fn one(&self) -> TensorElement {
        let mut coeffs = vec![self.right.zero(); self.dim()];
        coeffs[0] = self.right.one();
        TensorElement { coeffs }
    }

    /// Embed a right-field scalar.
    pub fn from_right(&self, c: &FieldElement) -> TensorElement {
        let mut coeffs = vec![self.right.zero(); self.dim()];
        coeffs[0] = c.clone();
        TensorElement { coeffs }
    }

    /// The image of the left generator.
    pub fn left_generator(&self) -> TensorElement {
        if self.dim() == 1 {
            // Degree-one left factor: the generator is a prime-field scalar.
            let g = self.left.generator();
            self.from_right(&self.right.from_u64(g.coeffs()[0]))
        } else {
            let mut coeffs = vec![self.right.zero(); self.dim()];
            coeffs[1] = self.right.one();
            TensorElement { coeffs }
        }
    }

    /// Build from right-field coefficients (length <= dim).
    pub fn from_coeffs(&self, coeffs: &[FieldElement]) -> TensorElement {
        assert!(coeffs.len() <= self.dim());
        let mut c = vec![self.right.zero(); self.dim()];
        c[..coeffs.len()].clone_from_slice(coeffs);
        TensorElement { coeffs: c }
    }

    pub fn is_zero(&self, a: &TensorElement) -> bool {
        a.coeffs.iter().all(|c| self.right.is_zero(c))
    }

    pub fn add(&self, a: &TensorElement, b: &TensorElement) -> TensorElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| self.right.add(x, y))
            .collect();
        TensorElement { coeffs }
    }

    pub fn neg(&self, a: &TensorElement) -> TensorElement {
        TensorElement { coeffs: a.coeffs.iter().map(|x| self.right.neg(x)).collect() }
    }

    pub fn sub(&self, a: &TensorElement, b: &TensorElement) -> TensorElement {
        self.add(a, &self.neg(b))
    }

    /// Multiply by a right-field scalar.
    pub fn scale(&self, c: &FieldElement, a: &TensorElement) -> TensorElement {
        TensorElement { coeffs: a.coeffs.iter().map(|x| self.right.mul(c, x)).collect() }
    }

    pub fn mul(&self, a: &TensorElement, b: &TensorElement) -> TensorElement {
        let d = self.dim();
        let mut prod = vec![self.right.zero(); 2 * d];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.right.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                let t = self.right.mul(x, y);
                prod[i + j] = self.right.add(&prod[i + j], &t);
            }
        }
        // Reduce by the left modulus, whose coefficients are prime-field
        // scalars inside the right field.
        let modulus = self.left.modulus();
        for i in (d..2 * d).rev() {
            if self.right.is_zero(&prod[i]) {
                continue;
            }
            let lead = prod[i].clone();
            prod[i] = self.right.zero();
            for (j, &mc) in modulus.iter().take(d).enumerate() {
                let t = self.right.mul(&lead, &self.right.from_u64(mc));
                prod[i - d + j] = self.right.sub(&prod[i - d + j], &t);
            }
        }
        prod.truncate(d);
        TensorElement { coeffs: prod }
    }

    /// The left-side Frobenius `x -> x^p`, an algebra endomorphism fixing
    /// the right field.
    pub fn left_frobenius(&self, a: &TensorElement) -> TensorElement {
        let p = self.left.characteristic();
        let x_p = self.monomial_power(p as usize);
        let mut acc = self.zero();
        for (i, c) in a.coeffs.iter().enumerate() {
            if self.right.is_zero(c) {
                continue;
            }
            let mut term = self.from_right(c);
            for _ in 0..i {
                term = self.mul(&term, &x_p);
            }
            acc = self.add(&acc, &term);
        }
        acc
    }

    /// Inverse of the left Frobenius (apply it `dim - 1` more times).
    pub fn left_frobenius_inv(&self, a: &TensorElement) -> TensorElement {
        let mut out = a.clone();
        for _ in 0..self.dim().saturating_sub(1) {
            out = self.left_frobenius(&out);
        }
        out
    }

    /// `x^e` as an element (reduced).
    fn monomial_power(&self, e: usize) -> TensorElement {
        let g = self.left_generator();
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, &g);
        }
        acc
    }

    /// Iterate all elements in a fixed order.
    pub fn elements(&self) -> impl Iterator<Item = TensorElement> + '_ {
        let per_coeff: Vec<Vec<FieldElement>> =
            vec![self.right.elements().collect(); self.dim()];
        let total = self.order();
        (0..total).map(move |mut n| {
            let q = self.right.order();
            let coeffs = per_coeff
                .iter()
                .map(|row| {
                    let c = row[(n % q) as usize].clone();
                    n /= q;
                    c
                })
                .collect();
            TensorElement { coeffs }
        })
    }

    /// Pack an element into a base-`q` integer key (for hash sets during
    /// exhaustive enumerations).
    pub fn pack(&self, a: &TensorElement) -> u64 {
        let p = self.right.characteristic();
        let mut key = 0u64;
        for c in a.coeffs.iter().rev() {
            for &digit in c.coeffs().iter().rev() {
                key = key
                    .checked_mul(p)
                    .and_then(|k| k.checked_add(digit))
                    .expect("packed key overflows u64");
            }
        }
        key
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_and_ring_axioms() {
        let k = FiniteField::new(3, 2).unwrap();
        let f = FiniteField::new(3, 2).unwrap();
        let t = TensorAlgebra::new(&k, &f);
        assert_eq!(t.dim(), 2);
        assert_eq!(t.order(), 81);
        let els: Vec<_> = t.elements().collect();
        assert_eq!(els.len(), 81);
        // Spot-check associativity/distributivity on a subsample.
        for a in els.iter().step_by(7) {
            for b in els.iter().step_by(11) {
                assert_eq!(t.mul(a, b), t.mul(b, a));
                for c in els.iter().step_by(13) {
                    assert_eq!(t.mul(a, &t.mul(b, c)), t.mul(&t.mul(a, b), c));
                    assert_eq!(t.mul(a, &t.add(b, c)), t.add(&t.mul(a, b), &t.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn zero_divisors_exist_when_left_embeds_in_right() {
        // F_9 (x) F_9 is not a field: the left modulus x^2 + 1 splits in F_9.
        let k = FiniteField::new(3, 2).unwrap();
        let t = TensorAlgebra::new(&k, &k);
        let els: Vec<_> = t.elements().collect();
        let has_zero_divisor = els.iter().any(|a| {
            !t.is_zero(a) && els.iter().any(|b| !t.is_zero(b) && t.is_zero(&t.mul(a, b)))
        });
        assert!(has_zero_divisor);
    }

    #[test]
    fn left_frobenius_properties() {
        let k = FiniteField::new(3, 2).unwrap();
        let f = FiniteField::new(3, 2).unwrap();
        let t = TensorAlgebra::new(&k, &f);
        let els: Vec<_> = t.elements().collect();
        for a in &els {
            // Order [k : F_p] = 2.
            assert_eq!(t.left_frobenius(&t.left_frobenius(a)), *a);
            assert_eq!(t.left_frobenius_inv(&t.left_frobenius(a)), *a);
            // Additive and multiplicative on a subsample.
            for b in els.iter().step_by(9) {
                assert_eq!(
                    t.left_frobenius(&t.add(a, b)),
                    t.add(&t.left_frobenius(a), &t.left_frobenius(b))
                );
                assert_eq!(
                    t.left_frobenius(&t.mul(a, b)),
                    t.mul(&t.left_frobenius(a), &t.left_frobenius(b))
                );
            }
        }
        // Fixes the right field.
        for c in f.elements() {
            let emb = t.from_right(&c);
            assert_eq!(t.left_frobenius(&emb), emb);
        }
        // Moves the left generator (order exactly 2, not 1).
        let g = t.left_generator();
        assert_ne!(t.left_frobenius(&g), g);
    }

    #[test]
    fn packing_is_injective() {
        let k = FiniteField::new(3, 1).unwrap();
        let f = FiniteField::new(3, 2).unwrap();
        let t = TensorAlgebra::new(&k, &f);
        let mut keys: Vec<u64> = t.elements().map(|a| t.pack(&a)).collect();
        keys.sort_unstable();
        keys.dedup();
        assert_eq!(keys.len(), t.order() as usize);
    }
}
