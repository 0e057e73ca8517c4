//! Finite-dimensional monomial algebras over a finite field, presented by
//! power-rewrite relations `X_j^p = d_j * X_{t_j}` with `d_j` either `0` or
//! `1`.
//!
//! The monomial basis consists of all exponent vectors with entries below
//! `p`, so the dimension over the base field is `p^g` for `g` generators.
//! Products are reduced by carrying: whenever an exponent reaches `p`, it is
//! lowered by `p`, the coefficient is multiplied by `d_j`, and the target
//! generator's exponent goes up by one. Tensor powers of an algebra are
//! again algebras of the same shape (blocks of generators with the rewrite
//! rules replicated per block), which keeps comultiplication targets and
//! triple products inside a single representation.

use std::collections::BTreeMap;

use crate::field::{FieldElement, FiniteField};

/// One rewrite rule `X_j^p = d * X_target`, with `d` restricted to 0 or 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rewrite {
    pub unit: bool,
    pub target: usize,
}

/// A monomial algebra with power rewrites.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilpotentAlgebra {
    field: FiniteField,
    rewrites: Vec<Rewrite>,
}

/// An element: map from exponent vector (length = number of generators,
/// entries `< p`) to nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    terms: BTreeMap<Vec<u8>, FieldElement>,
}

impl NilpotentAlgebra {
    pub fn new(field: &FiniteField, rewrites: Vec<Rewrite>) -> NilpotentAlgebra {
        assert!(!rewrites.is_empty());
        for rw in &rewrites {
            assert!(rw.target < rewrites.len());
        }
        NilpotentAlgebra { field: field.clone(), rewrites }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn generators(&self) -> usize {
        self.rewrites.len()
    }

    pub fn rewrites(&self) -> &[Rewrite] {
        &self.rewrites
    }

    /// Dimension over the base field: `p^g`.
    pub fn dimension(&self) -> u64 {
        self.field
            .characteristic()
            .checked_pow(self.generators() as u32)
            .expect("algebra dimension overflows u64")
    }

    /// True iff the ideal generated by all `X_j` is nilpotent — equivalent
    /// to every cycle of the rewrite-target graph containing a rule with
    /// coefficient zero.
    pub fn has_nilpotent_ideal(&self) -> bool {
        let g = self.generators();
        'outer: for start in 0..g {
            // Walk into the cycle reachable from `start`.
            let mut node = start;
            for _ in 0..g {
                node = self.rewrites[node].target;
            }
            // `node` now lies on a cycle; traverse it once.
            let first = node;
            loop {
                if !self.rewrites[node].unit {
                    continue 'outer;
                }
                node = self.rewrites[node].target;
                if node == first {
                    return false; // all-unit cycle: X stays non-nilpotent
                }
            }
        }
        true
    }

    /// The `m`-fold tensor power: `m` blocks of generators, rewrite rules
    /// replicated within each block.
    pub fn tensor_power(&self, m: usize) -> NilpotentAlgebra {
        assert!(m >= 1);
        let g = self.generators();
        let mut rewrites = Vec::with_capacity(m * g);
        for block in 0..m {
            for rw in &self.rewrites {
                rewrites.push(Rewrite { unit: rw.unit, target: block * g + rw.target });
            }
        }
        NilpotentAlgebra { field: self.field.clone(), rewrites }
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement { terms: BTreeMap::new() }
    }

    pub fn one(&self) -> AlgebraElement {
        self.monomial(&vec![0; self.generators()], &self.field.one())
    }

    pub fn generator(&self, j: usize) -> AlgebraElement {
        assert!(j < self.generators());
        let mut expo = vec![0; self.generators()];
        expo[j] = 1;
        self.monomial(&expo, &self.field.one())
    }

    /// A single monomial with the given exponents (must be reduced, i.e.
    /// entries `< p`) and coefficient.
    pub fn monomial(&self, expo: &[u8], coeff: &FieldElement) -> AlgebraElement {
        assert_eq!(expo.len(), self.generators());
        assert!(expo.iter().all(|&e| (e as u64) < self.field.characteristic()));
        let mut terms = BTreeMap::new();
        if !self.field.is_zero(coeff) {
            terms.insert(expo.to_vec(), coeff.clone());
        }
        AlgebraElement { terms }
    }

    pub fn from_scalar(&self, c: &FieldElement) -> AlgebraElement {
        self.monomial(&vec![0; self.generators()], c)
    }

    pub fn is_zero(&self, a: &AlgebraElement) -> bool {
        a.terms.is_empty()
    }

    fn insert_add(&self, terms: &mut BTreeMap<Vec<u8>, FieldElement>, key: Vec<u8>, c: FieldElement) {
        if self.field.is_zero(&c) {
            return;
        }
        use std::collections::btree_map::Entry;
        match terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = self.field.add(o.get(), &c);
                if self.field.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let mut terms = a.terms.clone();
        for (e, c) in &b.terms {
            self.insert_add(&mut terms, e.clone(), c.clone());
        }
        AlgebraElement { terms }
    }

    pub fn neg(&self, a: &AlgebraElement) -> AlgebraElement {
        let terms = a.terms.iter().map(|(e, c)| (e.clone(), self.field.neg(c))).collect();
        AlgebraElement { terms }
    }

    pub fn sub(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, c: &FieldElement, a: &AlgebraElement) -> AlgebraElement {
        if self.field.is_zero(c) {
            return self.zero();
        }
        let terms = a.terms.iter().map(|(e, x)| (e.clone(), self.field.mul(c, x))).collect();
        AlgebraElement { terms }
    }

    /// Reduce an unreduced exponent vector by carrying; returns `None` if a
    /// carry hits a zero-coefficient rewrite (the monomial dies).
    fn reduce_monomial(&self, expo: &mut [u16]) -> Option<()> {
        let p = self.field.characteristic() as u16;
        loop {
            let mut carried = false;
            for j in 0..expo.len() {
                while expo[j] >= p {
                    expo[j] -= p;
                    let rw = self.rewrites[j];
                    if !rw.unit {
                        return None;
                    }
                    expo[rw.target] += 1;
                    carried = true;
                }
            }
            if !carried {
                return Some(());
            }
        }
    }

    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let g = self.generators();
        let mut terms = BTreeMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let mut expo: Vec<u16> =
                    (0..g).map(|j| ea[j] as u16 + eb[j] as u16).collect();
                if self.reduce_monomial(&mut expo).is_none() {
                    continue;
                }
                let key: Vec<u8> = expo.iter().map(|&e| e as u8).collect();
                self.insert_add(&mut terms, key, self.field.mul(ca, cb));
            }
        }
        AlgebraElement { terms }
    }

    pub fn pow(&self, a: &AlgebraElement, e: u32) -> AlgebraElement {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// The coefficient of the empty monomial (the counit evaluation
    /// `X_j -> 0`).
    pub fn constant_term(&self, a: &AlgebraElement) -> FieldElement {
        a.terms
            .get(&vec![0; self.generators()])
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// True iff the element lies in the augmentation ideal (no constant
    /// term).
    pub fn in_ideal(&self, a: &AlgebraElement) -> bool {
        self.field.is_zero(&self.constant_term(a))
    }

    /// Apply a field automorphism (given as a closure) to every coefficient.
    pub fn map_coeffs(
        &self,
        a: &AlgebraElement,
        f: impl Fn(&FieldElement) -> FieldElement,
    ) -> AlgebraElement {
        let terms = a
            .terms
            .iter()
            .filter_map(|(e, c)| {
                let fc = f(c);
                (!self.field.is_zero(&fc)).then(|| (e.clone(), fc))
            })
            .collect();
        AlgebraElement { terms }
    }

    /// Iterate terms as `(exponents, coefficient)`.
    pub fn terms<'a>(&self, a: &'a AlgebraElement) -> impl Iterator<Item = (&'a [u8], &'a FieldElement)> {
        a.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// Coefficients of `a` on the full monomial basis, exponent vectors
    /// enumerated lexicographically with the last generator varying fastest.
    pub fn coefficient_vector(&self, a: &AlgebraElement) -> Vec<FieldElement> {
        let g = self.generators();
        let p = self.field.characteristic();
        let dim = self.dimension();
        let mut out = Vec::with_capacity(dim as usize);
        for code in 0..dim {
            let mut expo = vec![0u8; g];
            let mut c = code;
            for j in (0..g).rev() {
                expo[j] = (c % p) as u8;
                c /= p;
            }
            out.push(a.terms.get(&expo).cloned().unwrap_or_else(|| self.field.zero()));
        }
        out
    }

    /// Embed an element of `base` into this algebra, assumed to be
    /// `base.tensor_power(m)`, placing it in the block `factor`.
    pub fn embed_factor(
        &self,
        base: &NilpotentAlgebra,
        factor: usize,
        a: &AlgebraElement,
    ) -> AlgebraElement {
        let g = base.generators();
        assert_eq!(self.generators() % g, 0);
        let blocks = self.generators() / g;
        assert!(factor < blocks);
        let terms = a
            .terms
            .iter()
            .map(|(e, c)| {
                let mut expo = vec![0u8; self.generators()];
                expo[factor * g..(factor + 1) * g].copy_from_slice(e);
                (expo, c.clone())
            })
            .collect();
        AlgebraElement { terms }
    }
}

/// Apply the algebra map determined by generator images: each source
/// monomial `c * prod X_j^{e_j}` goes to `c * prod images[j]^{e_j}` in the
/// destination algebra.
pub fn apply_algebra_map(
    src: &NilpotentAlgebra,
    dst: &NilpotentAlgebra,
    images: &[AlgebraElement],
    a: &AlgebraElement,
) -> AlgebraElement {
    assert_eq!(images.len(), src.generators());
    let mut acc = dst.zero();
    for (expo, coeff) in src.terms(a) {
        let mut term = dst.from_scalar(coeff);
        for (j, &e) in expo.iter().enumerate() {
            if e > 0 {
                term = dst.mul(&term, &dst.pow(&images[j], e as u32));
            }
        }
        acc = dst.add(&acc, &term);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    /// k[X]/(X^3) over F_3: one generator, rewrite X^3 = 0.
    fn truncated_line() -> (FiniteField, NilpotentAlgebra) {
        let f = FiniteField::new(3, 1).unwrap();
        let alg = NilpotentAlgebra::new(&f, vec![Rewrite { unit: false, target: 0 }]);
        (f, alg)
    }

    #[test]
    fn truncated_polynomial_arithmetic() {
        let (f, alg) = truncated_line();
        let x = alg.generator(0);
        let x2 = alg.mul(&x, &x);
        assert!(!alg.is_zero(&x2));
        // X^3 = 0.
        assert!(alg.is_zero(&alg.mul(&x2, &x)));
        // (1 + X)^3 = 1 + 3X + 3X^2 + X^3 = 1 in characteristic 3.
        let one_plus_x = alg.add(&alg.one(), &x);
        assert_eq!(alg.pow(&one_plus_x, 3), alg.one());
        assert_eq!(alg.dimension(), 3);
        assert!(alg.has_nilpotent_ideal());
        let _ = f;
    }

    #[test]
    fn unit_rewrite_carries() {
        // Two generators, X_0^3 = X_1, X_1^3 = 0.
        let f = FiniteField::new(3, 1).unwrap();
        let alg = NilpotentAlgebra::new(
            &f,
            vec![Rewrite { unit: true, target: 1 }, Rewrite { unit: false, target: 0 }],
        );
        let x0 = alg.generator(0);
        let x1 = alg.generator(1);
        assert_eq!(alg.pow(&x0, 3), x1);
        // X_0^9 = X_1^3 = 0.
        assert!(alg.is_zero(&alg.pow(&x0, 9)));
        assert!(alg.has_nilpotent_ideal());

        // The all-unit cycle is not nilpotent: X_0^3 = X_1, X_1^3 = X_0.
        let etale = NilpotentAlgebra::new(
            &f,
            vec![Rewrite { unit: true, target: 1 }, Rewrite { unit: true, target: 0 }],
        );
        assert!(!etale.has_nilpotent_ideal());
        assert_eq!(etale.pow(&etale.generator(0), 9), etale.generator(0));
    }

    #[test]
    fn tensor_square_dimension_and_embedding() {
        let (_, alg) = truncated_line();
        let sq = alg.tensor_power(2);
        assert_eq!(sq.dimension(), alg.dimension() * alg.dimension());
        let x = alg.generator(0);
        let left = sq.embed_factor(&alg, 0, &x);
        let right = sq.embed_factor(&alg, 1, &x);
        // X (x) 1 and 1 (x) X commute and multiply to X (x) X.
        assert_eq!(sq.mul(&left, &right), sq.mul(&right, &left));
        assert!(!sq.is_zero(&sq.mul(&left, &right)));
        // Cubes vanish blockwise.
        assert!(sq.is_zero(&sq.pow(&left, 3)));
    }

    #[test]
    fn algebra_map_extension_is_multiplicative() {
        let (f, alg) = truncated_line();
        let sq = alg.tensor_power(2);
        let x = alg.generator(0);
        // The map X -> X(x)1 + 1(x)X.
        let img = sq.add(&sq.embed_factor(&alg, 0, &x), &sq.embed_factor(&alg, 1, &x));
        let a = alg.add(&alg.one(), &x);
        let b = alg.mul(&x, &x);
        let ab = alg.mul(&a, &b);
        let fa = apply_algebra_map(&alg, &sq, std::slice::from_ref(&img), &a);
        let fb = apply_algebra_map(&alg, &sq, std::slice::from_ref(&img), &b);
        let fab = apply_algebra_map(&alg, &sq, std::slice::from_ref(&img), &ab);
        assert_eq!(fab, sq.mul(&fa, &fb));
        let _ = f;
    }

    #[test]
    fn frobenius_is_additive_on_ideal_elements() {
        // In characteristic p, (u+v)^p = u^p + v^p.
        let f = FiniteField::new(3, 2).unwrap();
        let alg = NilpotentAlgebra::new(
            &f,
            vec![Rewrite { unit: false, target: 1 }, Rewrite { unit: true, target: 0 }],
        );
        let u = alg.scale(&f.generator(), &alg.generator(0));
        let v = alg.mul(&alg.generator(0), &alg.generator(1));
        let lhs = alg.pow(&alg.add(&u, &v), 3);
        let rhs = alg.add(&alg.pow(&u, 3), &alg.pow(&v, 3));
        assert_eq!(lhs, rhs);
    }
}
