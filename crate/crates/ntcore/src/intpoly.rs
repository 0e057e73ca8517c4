//! Sparse multivariate polynomials with arbitrary-precision integer
//! coefficients.
//!
//! These are the workhorse for the universal addition laws on truncated Witt
//! vectors, where intermediate coefficients (binomial and multinomial
//! numbers divided by prime powers) overflow machine integers long before
//! the final answers do. Exponent vectors are fixed-width arrays so monomial
//! keys stay on the stack; polynomials are canonical maps from exponent
//! vector to nonzero coefficient.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Hard cap on the number of variables; exponent keys are fixed arrays.
pub const MAX_VARS: usize = 12;

type Expo = [u16; MAX_VARS];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("coefficient {coeff} of monomial {monomial:?} is not divisible by {divisor}")]
    InexactDivision {
        coeff: BigInt,
        divisor: BigInt,
        monomial: Vec<u16>,
    },
}

/// A polynomial in `Z[x_0, ..., x_{nvars-1}]`, stored sparsely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    nvars: usize,
    terms: BTreeMap<Expo, BigInt>,
}

impl IntPolynomial {
    pub fn zero(nvars: usize) -> IntPolynomial {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables supported");
        IntPolynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> IntPolynomial {
        let mut p = IntPolynomial::zero(nvars);
        let c = c.into();
        if !c.is_zero() {
            p.terms.insert([0; MAX_VARS], c);
        }
        p
    }

    /// The single variable `x_i`.
    pub fn var(nvars: usize, i: usize) -> IntPolynomial {
        IntPolynomial::var_pow(nvars, i, 1)
    }

    /// The monomial `x_i^e`.
    pub fn var_pow(nvars: usize, i: usize, e: u16) -> IntPolynomial {
        assert!(nvars <= MAX_VARS && i < nvars);
        let mut p = IntPolynomial::zero(nvars);
        let mut expo = [0; MAX_VARS];
        expo[i] = e;
        p.terms.insert(expo, BigInt::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterate terms as `(exponents, coefficient)` with exponents truncated
    /// to `nvars`.
    pub fn terms(&self) -> impl Iterator<Item = (&[u16], &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (&e[..self.nvars], c))
    }

    /// Coefficient of the monomial with the given exponents (zero if absent).
    pub fn coeff(&self, expo: &[u16]) -> BigInt {
        assert_eq!(expo.len(), self.nvars);
        let mut key = [0; MAX_VARS];
        key[..self.nvars].copy_from_slice(expo);
        self.terms.get(&key).cloned().unwrap_or_else(BigInt::zero)
    }

    fn insert_add(terms: &mut BTreeMap<Expo, BigInt>, key: Expo, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &IntPolynomial) -> IntPolynomial {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            Self::insert_add(&mut out.terms, *e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> IntPolynomial {
        let terms = self.terms.iter().map(|(e, c)| (*e, -c)).collect();
        IntPolynomial { nvars: self.nvars, terms }
    }

    pub fn sub(&self, other: &IntPolynomial) -> IntPolynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> IntPolynomial {
        if k.is_zero() {
            return IntPolynomial::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(e, c)| (*e, c * k)).collect();
        IntPolynomial { nvars: self.nvars, terms }
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        assert_eq!(self.nvars, other.nvars);
        // Iterate over the smaller operand; each of its terms shifts the
        // larger operand into the accumulator.
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = IntPolynomial::zero(self.nvars);
        for (es, cs) in &small.terms {
            for (el, cl) in &large.terms {
                let mut key = [0u16; MAX_VARS];
                for i in 0..self.nvars {
                    key[i] = es[i].checked_add(el[i]).expect("exponent overflow");
                }
                Self::insert_add(&mut out.terms, key, cs * cl);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> IntPolynomial {
        let mut acc = IntPolynomial::constant(self.nvars, 1);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Divide every coefficient exactly by `d`, failing if any remainder is
    /// nonzero. This exactness is the correctness certificate for the
    /// recursive Witt addition-law construction.
    pub fn div_exact(&self, d: &BigInt) -> Result<IntPolynomial, PolyError> {
        assert!(!d.is_zero());
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return Err(PolyError::InexactDivision {
                    coeff: c.clone(),
                    divisor: d.clone(),
                    monomial: e[..self.nvars].to_vec(),
                });
            }
            terms.insert(*e, q);
        }
        Ok(IntPolynomial { nvars: self.nvars, terms })
    }

    /// Substitute `images[i]` for `x_i`. All images must share a variable
    /// count, which becomes the variable count of the result.
    pub fn substitute(&self, images: &[IntPolynomial]) -> IntPolynomial {
        assert_eq!(images.len(), self.nvars);
        let out_nvars = images.first().map_or(0, |p| p.nvars);
        assert!(images.iter().all(|p| p.nvars == out_nvars));
        let mut out = IntPolynomial::zero(out_nvars);
        for (e, c) in &self.terms {
            let mut term = IntPolynomial::constant(out_nvars, c.clone());
            for (i, img) in images.iter().enumerate() {
                if e[i] > 0 {
                    term = term.mul(&img.pow(e[i] as u32));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Rename variable `i` to `mapping[i]` inside a ring with `new_nvars`
    /// variables. The mapping must be injective on the support.
    pub fn map_variables(&self, mapping: &[usize], new_nvars: usize) -> IntPolynomial {
        assert_eq!(mapping.len(), self.nvars);
        assert!(new_nvars <= MAX_VARS);
        let mut out = IntPolynomial::zero(new_nvars);
        for (e, c) in &self.terms {
            let mut key = [0u16; MAX_VARS];
            for i in 0..self.nvars {
                if e[i] > 0 {
                    assert!(mapping[i] < new_nvars);
                    assert_eq!(key[mapping[i]], 0, "variable mapping must be injective");
                    key[mapping[i]] = e[i];
                }
            }
            Self::insert_add(&mut out.terms, key, c.clone());
        }
        out
    }

    /// Reduce all coefficients into `0..p`.
    pub fn mod_coeffs(&self, p: u64) -> IntPolynomial {
        let m = BigInt::from(p);
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut r = c % &m;
            if r.is_negative() {
                r += &m;
            }
            if !r.is_zero() {
                terms.insert(*e, r);
            }
        }
        IntPolynomial { nvars: self.nvars, terms }
    }

    /// Drop every monomial in which some variable from `vars` appears with
    /// exponent `>= bound` (reduction modulo the ideal generated by those
    /// powers).
    pub fn kill_powers(&self, vars: &[usize], bound: u16) -> IntPolynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| vars.iter().all(|&v| e[v] < bound))
            .map(|(e, c)| (*e, c.clone()))
            .collect();
        IntPolynomial { nvars: self.nvars, terms }
    }

    /// Evaluate at big-integer arguments.
    pub fn eval_bigint(&self, args: &[BigInt]) -> BigInt {
        assert_eq!(args.len(), self.nvars);
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..self.nvars {
                if e[i] > 0 {
                    t *= args[i].pow(e[i] as u32);
                }
            }
            acc += t;
        }
        acc
    }

    /// Evaluate in `Z/m` at residue arguments.
    pub fn eval_mod(&self, m: u64, args: &[u64]) -> u64 {
        assert_eq!(args.len(), self.nvars);
        let mm = BigInt::from(m);
        let args: Vec<BigInt> = args.iter().map(|&a| BigInt::from(a % m)).collect();
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c % &mm;
            for i in 0..self.nvars {
                for _ in 0..e[i] {
                    t = (t * &args[i]) % &mm;
                }
            }
            acc = (acc + t) % &mm;
        }
        let mut r = acc % &mm;
        if r.is_negative() {
            r += &mm;
        }
        let digits = r.to_u64_digits().1;
        digits.first().copied().unwrap_or(0)
    }

    /// Evaluate in a finite field at field-element arguments (coefficients
    /// are taken mod the characteristic).
    pub fn eval_in_field(
        &self,
        field: &crate::field::FiniteField,
        args: &[crate::field::FieldElement],
    ) -> crate::field::FieldElement {
        assert_eq!(args.len(), self.nvars);
        let p = field.characteristic();
        let mut acc = field.zero();
        for (e, c) in &self.terms {
            let mut r = c % BigInt::from(p);
            if r.is_negative() {
                r += BigInt::from(p);
            }
            let c_res = r.to_u64_digits().1.first().copied().unwrap_or(0);
            if c_res == 0 {
                continue;
            }
            let mut t = field.from_u64(c_res);
            for i in 0..self.nvars {
                if e[i] > 0 {
                    t = field.mul(&t, &field.pow(&args[i], e[i] as u64));
                }
            }
            acc = field.add(&acc, &t);
        }
        acc
    }

    /// Largest exponent appearing for variable `i`.
    pub fn max_degree_in(&self, i: usize) -> u16 {
        assert!(i < self.nvars);
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> IntPolynomial {
        IntPolynomial::var(2, i)
    }

    #[test]
    fn binomial_expansion() {
        // (x+y)^3 = x^3 + 3x^2 y + 3x y^2 + y^3
        let s = x(0).add(&x(1)).pow(3);
        assert_eq!(s.num_terms(), 4);
        assert_eq!(s.coeff(&[3, 0]), BigInt::from(1));
        assert_eq!(s.coeff(&[2, 1]), BigInt::from(3));
        assert_eq!(s.coeff(&[1, 2]), BigInt::from(3));
        assert_eq!(s.coeff(&[0, 3]), BigInt::from(1));
    }

    #[test]
    fn ring_identities() {
        let a = x(0).add(&x(1).scale(&BigInt::from(2)));
        let b = x(0).mul(&x(1)).sub(&IntPolynomial::constant(2, 5));
        // Distributivity and commutativity.
        let c = x(0).sub(&x(1));
        assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        assert_eq!(a.mul(&b), b.mul(&a));
        assert_eq!(a.sub(&a), IntPolynomial::zero(2));
    }

    #[test]
    fn exact_division_succeeds_and_fails() {
        let three_xy = x(0).mul(&x(1)).scale(&BigInt::from(6));
        let div = three_xy.div_exact(&BigInt::from(3)).unwrap();
        assert_eq!(div.coeff(&[1, 1]), BigInt::from(2));

        let odd = x(0).scale(&BigInt::from(5));
        let err = odd.div_exact(&BigInt::from(3)).unwrap_err();
        match err {
            PolyError::InexactDivision { coeff, divisor, monomial } => {
                assert_eq!(coeff, BigInt::from(5));
                assert_eq!(divisor, BigInt::from(3));
                assert_eq!(monomial, vec![1, 0]);
            }
        }
    }

    #[test]
    fn substitution_composes() {
        // f(x,y) = x^2 + y, then x -> u+v, y -> uv gives (u+v)^2 + uv.
        let f = x(0).pow(2).add(&x(1));
        let u_plus_v = IntPolynomial::var(2, 0).add(&IntPolynomial::var(2, 1));
        let uv = IntPolynomial::var(2, 0).mul(&IntPolynomial::var(2, 1));
        let g = f.substitute(&[u_plus_v.clone(), uv.clone()]);
        assert_eq!(g, u_plus_v.pow(2).add(&uv));
    }

    #[test]
    fn kill_powers_reduces_modulo_power_ideal() {
        // x^3 y + x y dies in the first term only when killing x^3.
        let p = x(0).pow(3).mul(&x(1)).add(&x(0).mul(&x(1)));
        let q = p.kill_powers(&[0], 3);
        assert_eq!(q, x(0).mul(&x(1)));
        // Killing powers of y alone leaves everything (max y-degree is 1).
        assert_eq!(p.kill_powers(&[1], 3), p);
    }

    #[test]
    fn evaluation_matches_arithmetic() {
        let f = x(0).pow(2).mul(&x(1)).sub(&IntPolynomial::constant(2, 7));
        let v = f.eval_bigint(&[BigInt::from(3), BigInt::from(4)]);
        assert_eq!(v, BigInt::from(3 * 3 * 4 - 7));
        assert_eq!(f.eval_mod(5, &[3, 4]), (36u64 - 7) % 5);
    }

    #[test]
    fn map_variables_relabels() {
        let f = x(0).pow(2).add(&x(1));
        // Send x->z (index 2), y->w (index 0) in a 3-variable ring.
        let g = f.map_variables(&[2, 0], 3);
        let z = IntPolynomial::var(3, 2);
        let w = IntPolynomial::var(3, 0);
        assert_eq!(g, z.pow(2).add(&w));
    }
}
