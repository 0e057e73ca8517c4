//! Witt covectors over a monomial algebra: bounded-depth sequences with the
//! stabilized addition law, Frobenius and Verschiebung shifts, and the
//! Teichmueller scalar action.
//!
//! A covector is a sequence `(..., a_{-n}, ..., a_{-1}, a_0)` of algebra
//! elements whose deep entries are nilpotent. We store entries indexed by
//! depth (`entries[n]` is the entry `n` steps below the top) plus a tail
//! descriptor: either all-zero beyond the stored window, or periodic — the
//! entry at depth `n + period` equals `multiplier` times the coefficientwise
//! `sigma^{-period}` twist of the entry at depth `n`.
//!
//! Addition evaluates the truncated addition law directly in the algebra:
//! the output entry at depth `n` is
//! `a_n + b_n + sum_{r>=1} (-1)^{r-1} (prod_{j=1}^{r-1}(a_{n+j}+b_{n+j}))^{p-1}
//!  * sum_{i=1}^{p-1} a_{n+r}^i b_{n+r}^{p-i} / (i!(p-i)!)`,
//! which stabilizes because deep terms have total degree past the
//! nilpotence index of the augmentation ideal. Entries at depth two or more
//! below an output index must have vanishing p-th power for the truncation
//! to be valid; violations are reported, never silently absorbed.

use thiserror::Error;

use crate::algebra::{AlgebraElement, NilpotentAlgebra};
use crate::field::FieldElement;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CovectorError {
    #[error("entry at depth {depth} has a nonzero p-th power; the addition law does not truncate")]
    NilpotenceViolation { depth: usize },
    #[error("operands live over different algebras")]
    AlgebraMismatch,
    #[error("periodic tails of the operands do not match")]
    TailMismatch,
    #[error("computed entries do not repeat with the declared period at depth {depth}")]
    PeriodicityViolation { depth: usize },
    #[error("entry at depth {depth} must lie in the augmentation ideal and be nilpotent")]
    ContractViolation { depth: usize },
    #[error("periodic declaration needs at least two stored periods ({needed}), got {got} entries")]
    ShallowPeriodicData { needed: usize, got: usize },
}

/// Behavior of a covector beyond its stored entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tail {
    Zero,
    Periodic { period: usize, multiplier: FieldElement },
}

/// A covector with stored entries `entries[n]` = entry at depth `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Covector {
    algebra: NilpotentAlgebra,
    entries: Vec<AlgebraElement>,
    tail: Tail,
}

impl Covector {
    /// The zero covector `(..., 0, 0)`.
    pub fn zero(algebra: &NilpotentAlgebra) -> Covector {
        Covector {
            algebra: algebra.clone(),
            entries: vec![algebra.zero()],
            tail: Tail::Zero,
        }
    }

    /// A covector with finitely many nonzero entries. `entries[n]` is the
    /// entry at depth `n`; entries below the stored window are zero.
    pub fn with_zero_tail(
        algebra: &NilpotentAlgebra,
        entries: Vec<AlgebraElement>,
    ) -> Result<Covector, CovectorError> {
        let mut c = Covector { algebra: algebra.clone(), entries, tail: Tail::Zero };
        if c.entries.is_empty() {
            c.entries.push(algebra.zero());
        }
        c.check_contract()?;
        c.normalize();
        Ok(c)
    }

    /// A covector whose entries repeat with the declared period and
    /// sigma-twisted multiplier below the stored window. At least two full
    /// periods must be stored; the last period is verified against the
    /// previous one.
    pub fn with_periodic_tail(
        algebra: &NilpotentAlgebra,
        entries: Vec<AlgebraElement>,
        period: usize,
        multiplier: FieldElement,
    ) -> Result<Covector, CovectorError> {
        assert!(period >= 1);
        assert!(
            !algebra.field().is_zero(&multiplier),
            "a vanishing multiplier is a zero tail, not a periodic one"
        );
        let needed = 2 * period;
        if entries.len() < needed {
            return Err(CovectorError::ShallowPeriodicData { needed, got: entries.len() });
        }
        let mut c = Covector {
            algebra: algebra.clone(),
            entries,
            tail: Tail::Periodic { period, multiplier },
        };
        c.check_contract()?;
        c.check_period()?;
        c.normalize();
        Ok(c)
    }

    fn check_contract(&self) -> Result<(), CovectorError> {
        for (n, e) in self.entries.iter().enumerate().skip(1) {
            if !self.algebra.in_ideal(e) || !self.is_nilpotent(e) {
                return Err(CovectorError::ContractViolation { depth: n });
            }
        }
        Ok(())
    }

    fn is_nilpotent(&self, a: &AlgebraElement) -> bool {
        // x is nilpotent iff x^{p^{g+1}} = 0: a nilpotent element of a
        // p^g-dimensional algebra has nilpotence index at most p^g + 1.
        let p = self.algebra.field().characteristic() as u32;
        let mut y = a.clone();
        for _ in 0..=self.algebra.generators() {
            if self.algebra.is_zero(&y) {
                return true;
            }
            y = self.algebra.pow(&y, p);
        }
        self.algebra.is_zero(&y)
    }

    /// Verify the declared period over the deepest stored period.
    fn check_period(&self) -> Result<(), CovectorError> {
        if let Tail::Periodic { period, ref multiplier } = self.tail {
            let len = self.entries.len();
            for n in len - period..len {
                let expected = self.twisted_copy(&self.entries[n - period], period, multiplier);
                if self.entries[n] != expected {
                    return Err(CovectorError::PeriodicityViolation { depth: n });
                }
            }
        }
        Ok(())
    }

    /// `multiplier * sigma^{-steps}(a)` with the twist on coefficients.
    fn twisted_copy(
        &self,
        a: &AlgebraElement,
        steps: usize,
        multiplier: &FieldElement,
    ) -> AlgebraElement {
        let f = self.algebra.field();
        let twisted = self.algebra.map_coeffs(a, |c| {
            let mut x = c.clone();
            for _ in 0..steps {
                x = f.frobenius_inv(&x);
            }
            x
        });
        self.algebra.scale(multiplier, &twisted)
    }

    /// Canonical form, so that structural equality is mathematical
    /// equality: periodic storage keeps the minimal window (at least two
    /// periods) with deeper tail-reproducible entries dropped; a periodic
    /// tail whose final period vanishes is really a zero tail; zero tails
    /// drop stored zeros at the deep end.
    fn normalize(&mut self) {
        if let Tail::Periodic { period, ref multiplier } = self.tail {
            let multiplier = multiplier.clone();
            while self.entries.len() > 2 * period {
                let len = self.entries.len();
                let reproduced =
                    self.twisted_copy(&self.entries[len - 1 - period], period, &multiplier);
                if self.entries[len - 1] == reproduced {
                    self.entries.pop();
                } else {
                    break;
                }
            }
            let len = self.entries.len();
            if self.entries[len - period..].iter().all(|e| self.algebra.is_zero(e)) {
                self.tail = Tail::Zero;
            } else {
                return;
            }
        }
        while self.entries.len() > 1 && self.algebra.is_zero(self.entries.last().unwrap()) {
            self.entries.pop();
        }
    }

    pub fn algebra(&self) -> &NilpotentAlgebra {
        &self.algebra
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    pub fn stored_entries(&self) -> &[AlgebraElement] {
        &self.entries
    }

    /// The entry at the given depth, materializing the tail as needed.
    pub fn entry(&self, depth: usize) -> AlgebraElement {
        if depth < self.entries.len() {
            return self.entries[depth].clone();
        }
        match &self.tail {
            Tail::Zero => self.algebra.zero(),
            Tail::Periodic { period, multiplier } => {
                let base = self.entry(depth - period);
                self.twisted_copy(&base, *period, multiplier)
            }
        }
    }

    /// Entries at depths `0..=depth`.
    pub fn materialize(&self, depth: usize) -> Vec<AlgebraElement> {
        (0..=depth).map(|n| self.entry(n)).collect()
    }

    /// Depth of the deepest nonzero stored entry of a zero-tail covector.
    fn support_depth(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn agrees_on_window(&self, other: &Covector, depth: usize) -> bool {
        self.algebra == other.algebra && self.materialize(depth) == other.materialize(depth)
    }
}

/// `1/(i!(p-i)!) mod p` as a field scalar.
fn inv_fact_scalar(alg: &NilpotentAlgebra, i: u64) -> FieldElement {
    let p = alg.field().characteristic();
    let mut f = 1u64;
    for j in 2..=i {
        f = f * (j % p) % p;
    }
    for j in 2..=(p - i) {
        f = f * (j % p) % p;
    }
    // Invert by Fermat.
    let mut inv = 1u64;
    let mut base = f;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            inv = inv * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    alg.field().from_u64(inv)
}

/// Evaluate the truncated addition law on aligned windows: `aw[0]` and
/// `bw[0]` are the entries at the output depth, deeper entries follow.
fn truncated_sum(
    alg: &NilpotentAlgebra,
    aw: &[AlgebraElement],
    bw: &[AlgebraElement],
) -> AlgebraElement {
    let p = alg.field().characteristic();
    let w = aw.len() - 1;
    let mut acc = alg.add(&aw[0], &bw[0]);
    // Running product (a_1+b_1)^{p-1} ... (a_{r-1}+b_{r-1})^{p-1}.
    let mut running = alg.one();
    for r in 1..=w {
        if alg.is_zero(&running) {
            break; // every deeper term carries this factor
        }
        let inner = {
            let mut s = alg.zero();
            if !alg.is_zero(&aw[r]) && !alg.is_zero(&bw[r]) {
                // Power tables a^i, b^{p-i} for i = 1..p-1.
                let mut a_pows = Vec::with_capacity(p as usize);
                let mut b_pows = Vec::with_capacity(p as usize);
                a_pows.push(alg.one());
                b_pows.push(alg.one());
                for i in 1..p {
                    let an = alg.mul(&a_pows[(i - 1) as usize], &aw[r]);
                    let bn = alg.mul(&b_pows[(i - 1) as usize], &bw[r]);
                    a_pows.push(an);
                    b_pows.push(bn);
                }
                for i in 1..p {
                    let c = inv_fact_scalar(alg, i);
                    let t = alg.mul(&a_pows[i as usize], &b_pows[(p - i) as usize]);
                    s = alg.add(&s, &alg.scale(&c, &t));
                }
            }
            s
        };
        if !alg.is_zero(&inner) {
            let term = alg.mul(&running, &inner);
            // Sign (-1)^{r-1}.
            acc = if r % 2 == 1 { alg.add(&acc, &term) } else { alg.sub(&acc, &term) };
        }
        if r < w {
            let factor = alg.pow(&alg.add(&aw[r], &bw[r]), (p - 1) as u32);
            running = alg.mul(&running, &factor);
        }
    }
    acc
}

/// Verify the truncation precondition: entries at depth >= 2 have zero
/// p-th power.
fn check_truncation_precondition(c: &Covector) -> Result<(), CovectorError> {
    let alg = c.algebra();
    let p = alg.field().characteristic() as u32;
    for (n, e) in c.stored_entries().iter().enumerate().skip(2) {
        if !alg.is_zero(&alg.pow(e, p)) {
            return Err(CovectorError::NilpotenceViolation { depth: n });
        }
    }
    Ok(())
}

/// The covector group law. `depth` controls how many entries of the result
/// are stored when a periodic tail is involved; finite-support sums are
/// always computed exactly in full.
pub fn covector_add(a: &Covector, b: &Covector, depth: usize) -> Result<Covector, CovectorError> {
    if a.algebra() != b.algebra() {
        return Err(CovectorError::AlgebraMismatch);
    }
    let alg = a.algebra().clone();
    check_truncation_precondition(a)?;
    check_truncation_precondition(b)?;

    // The term at window depth r has total degree >= (r-1)(p-1) + p in the
    // augmentation ideal, so windows longer than the generator count add
    // nothing; a margin of g + 2 makes every requested entry stable.
    let margin = alg.generators() + 2;

    let result_tail = match (a.tail(), b.tail()) {
        (Tail::Zero, Tail::Zero) => Tail::Zero,
        (Tail::Periodic { period, multiplier }, Tail::Zero)
        | (Tail::Zero, Tail::Periodic { period, multiplier }) => {
            Tail::Periodic { period: *period, multiplier: multiplier.clone() }
        }
        (
            Tail::Periodic { period: pa, multiplier: ma },
            Tail::Periodic { period: pb, multiplier: mb },
        ) => {
            if pa != pb || ma != mb {
                return Err(CovectorError::TailMismatch);
            }
            Tail::Periodic { period: *pa, multiplier: ma.clone() }
        }
    };

    match result_tail {
        Tail::Zero => {
            let support = a.support_depth().max(b.support_depth());
            let mat = support + margin;
            let aw = a.materialize(mat);
            let bw = b.materialize(mat);
            let entries: Vec<AlgebraElement> =
                (0..=support).map(|n| truncated_sum(&alg, &aw[n..], &bw[n..])).collect();
            Covector::with_zero_tail(&alg, entries)
        }
        Tail::Periodic { period, multiplier } => {
            let store = depth.max(2 * period);
            let mat = store + margin;
            let aw = a.materialize(mat);
            let bw = b.materialize(mat);
            let entries: Vec<AlgebraElement> =
                (0..=store).map(|n| truncated_sum(&alg, &aw[n..], &bw[n..])).collect();
            Covector::with_periodic_tail(&alg, entries, period, multiplier)
        }
    }
}

/// Frobenius: raise every entry to the p-th power in place.
pub fn frobenius_cw(a: &Covector) -> Covector {
    let alg = a.algebra().clone();
    let p = alg.field().characteristic() as u32;
    let entries = a.stored_entries().iter().map(|e| alg.pow(e, p)).collect();
    let tail = match a.tail() {
        Tail::Zero => Tail::Zero,
        Tail::Periodic { period, multiplier } => Tail::Periodic {
            period: *period,
            // (m * sigma^{-T} x)^p = sigma(m) * sigma^{-T}(x^p).
            multiplier: alg.field().frobenius(multiplier),
        },
    };
    let mut out = Covector { algebra: alg, entries, tail };
    out.normalize();
    debug_assert!(out.check_period().is_ok());
    out
}

/// Verschiebung: shift entries one slot shallower, dropping the top.
pub fn verschiebung_cw(a: &Covector) -> Covector {
    let alg = a.algebra().clone();
    match a.tail() {
        Tail::Zero => {
            let mut entries: Vec<AlgebraElement> =
                a.stored_entries().iter().skip(1).cloned().collect();
            if entries.is_empty() {
                entries.push(alg.zero());
            }
            let mut out = Covector { algebra: alg, entries, tail: Tail::Zero };
            out.normalize();
            out
        }
        Tail::Periodic { period, multiplier } => {
            // Keep two full periods stored after the shift.
            let mat = a.materialize(2 * period + 1);
            let entries = mat[1..].to_vec();
            let mut out = Covector {
                algebra: alg,
                entries,
                tail: Tail::Periodic { period: *period, multiplier: multiplier.clone() },
            };
            debug_assert!(out.check_period().is_ok());
            out.normalize();
            out
        }
    }
}

/// The Teichmueller scalar action: the entry at depth `n` is multiplied by
/// `sigma^{-n}(x)`.
pub fn scalar_action(x: &FieldElement, a: &Covector) -> Covector {
    let alg = a.algebra().clone();
    let f = alg.field().clone();
    if f.is_zero(x) {
        return Covector::zero(&alg);
    }
    let entries = a
        .stored_entries()
        .iter()
        .enumerate()
        .map(|(n, e)| {
            let mut s = x.clone();
            for _ in 0..n {
                s = f.frobenius_inv(&s);
            }
            alg.scale(&s, e)
        })
        .collect();
    let mut out = Covector { algebra: alg, entries, tail: a.tail().clone() };
    out.normalize();
    debug_assert!(out.check_period().is_ok());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rewrite;
    use crate::field::FiniteField;

    /// k[X]/(X^3) over F_3.
    fn line3() -> NilpotentAlgebra {
        let f = FiniteField::new(3, 1).unwrap();
        NilpotentAlgebra::new(&f, vec![Rewrite { unit: false, target: 0 }])
    }

    fn add(a: &Covector, b: &Covector) -> Covector {
        covector_add(a, b, 4).unwrap()
    }

    /// p-fold sum by repeated addition.
    fn times_p(a: &Covector) -> Covector {
        let p = a.algebra().field().characteristic();
        let mut acc = a.clone();
        for _ in 1..p {
            acc = add(&acc, a);
        }
        acc
    }

    #[test]
    fn zero_is_neutral() {
        let alg = line3();
        let x = alg.generator(0);
        let a = Covector::with_zero_tail(&alg, vec![x.clone(), alg.mul(&x, &x)]).unwrap();
        let z = Covector::zero(&alg);
        assert_eq!(add(&a, &z), a);
        assert_eq!(add(&z, &a), a);
    }

    #[test]
    fn zero_square_entries_add_plainly() {
        // Entries with zero square kill every correction term.
        let alg = line3();
        let x2 = alg.mul(&alg.generator(0), &alg.generator(0));
        let a = Covector::with_zero_tail(&alg, vec![x2.clone()]).unwrap();
        let sum = add(&a, &a);
        let expected =
            Covector::with_zero_tail(&alg, vec![alg.add(&x2, &x2)]).unwrap();
        assert_eq!(sum, expected);
        // Same at depth 1: corrections (degree >= 3 in X^2) vanish.
        let b = Covector::with_zero_tail(&alg, vec![alg.zero(), x2.clone()]).unwrap();
        let sum_b = add(&b, &b);
        let expected_b =
            Covector::with_zero_tail(&alg, vec![alg.zero(), alg.add(&x2, &x2)]).unwrap();
        assert_eq!(sum_b, expected_b);
    }

    #[test]
    fn triple_sum_equals_fv() {
        // 3 * (...,0,X) = F(V(...,0,X)) = 0 over F_3[X]/(X^3).
        let alg = line3();
        let x = alg.generator(0);
        let t = Covector::with_zero_tail(&alg, vec![x.clone()]).unwrap();
        let triple = times_p(&t);
        let fv = frobenius_cw(&verschiebung_cw(&t));
        assert_eq!(triple, fv);
        assert_eq!(triple, Covector::zero(&alg));
        // Depth-one variant: corrections appear and still cancel to FV.
        let t1 = Covector::with_zero_tail(&alg, vec![x.clone(), x.clone()]).unwrap();
        let triple1 = times_p(&t1);
        let fv1 = frobenius_cw(&verschiebung_cw(&t1));
        assert_eq!(triple1, fv1);
    }

    #[test]
    fn fv_equals_p_on_random_covectors() {
        // A_k for two generators, both rewrites vanishing (X_0^3 = X_1^3 = 0)
        // and the mixed pattern X_1^3 = X_0.
        let f = FiniteField::new(3, 2).unwrap();
        let algs = [
            NilpotentAlgebra::new(
                &f,
                vec![Rewrite { unit: false, target: 1 }, Rewrite { unit: false, target: 0 }],
            ),
            NilpotentAlgebra::new(
                &f,
                vec![Rewrite { unit: false, target: 1 }, Rewrite { unit: true, target: 0 }],
            ),
        ];
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for alg in &algs {
            let f = alg.field().clone();
            // Monomials with zero p-th power: those containing X_0.
            let x0 = alg.generator(0);
            let x01 = alg.mul(&alg.generator(0), &alg.generator(1));
            for _ in 0..5 {
                let rand_el = |rng: &mut dyn FnMut() -> u64| {
                    let c1 = f.from_u64(rng() % 9);
                    let c2 = f.from_u64(rng() % 9);
                    alg.add(&alg.scale(&c1, &x0), &alg.scale(&c2, &x01))
                };
                let e0 = rand_el(&mut next);
                let e1 = rand_el(&mut next);
                let e2 = rand_el(&mut next);
                let a = Covector::with_zero_tail(alg, vec![e0, e1, e2]).unwrap();
                let fv = frobenius_cw(&verschiebung_cw(&a));
                let vf = verschiebung_cw(&frobenius_cw(&a));
                let pa = times_p(&a);
                assert_eq!(fv, pa);
                assert_eq!(vf, pa);
            }
        }
    }

    #[test]
    fn group_axioms_depth_one_exhaustive() {
        let alg = line3();
        let f = alg.field().clone();
        let x = alg.generator(0);
        let x2 = alg.mul(&x, &x);
        // All ideal elements c1 X + c2 X^2 (depth-1 slots) and all algebra
        // elements (depth-0 slot).
        let ideal: Vec<AlgebraElement> = (0..9)
            .map(|n| {
                alg.add(
                    &alg.scale(&f.from_u64(n % 3), &x),
                    &alg.scale(&f.from_u64(n / 3), &x2),
                )
            })
            .collect();
        let full: Vec<AlgebraElement> = (0..27)
            .map(|n| {
                alg.add(
                    &alg.from_scalar(&f.from_u64(n % 3)),
                    &alg.add(
                        &alg.scale(&f.from_u64(n / 3 % 3), &x),
                        &alg.scale(&f.from_u64(n / 9), &x2),
                    ),
                )
            })
            .collect();
        let mut all = Vec::new();
        for deep in &ideal {
            for top in &full {
                all.push(
                    Covector::with_zero_tail(&alg, vec![top.clone(), deep.clone()]).unwrap(),
                );
            }
        }
        assert_eq!(all.len(), 243);
        // Commutativity, exhaustively.
        for (i, a) in all.iter().enumerate() {
            for b in all.iter().skip(i + 1) {
                assert_eq!(add(a, b), add(b, a));
            }
        }
        // Associativity on a strided sample.
        for a in all.iter().step_by(7) {
            for b in all.iter().step_by(11) {
                for c in all.iter().step_by(13) {
                    assert_eq!(add(&add(a, b), c), add(a, &add(b, c)));
                }
            }
        }
    }

    #[test]
    fn operators_are_additive_and_shift_correctly() {
        let alg = line3();
        let x = alg.generator(0);
        let x2 = alg.mul(&x, &x);
        let a = Covector::with_zero_tail(&alg, vec![x.clone(), x2.clone()]).unwrap();
        let b = Covector::with_zero_tail(&alg, vec![x2.clone(), x2.clone()]).unwrap();
        // V drops the top entry.
        let va = verschiebung_cw(&a);
        assert_eq!(va.stored_entries(), &[x2.clone()]);
        // F of zero is zero.
        assert_eq!(frobenius_cw(&Covector::zero(&alg)), Covector::zero(&alg));
        // Additivity.
        let sum = add(&a, &b);
        assert_eq!(frobenius_cw(&sum), add(&frobenius_cw(&a), &frobenius_cw(&b)));
        assert_eq!(verschiebung_cw(&sum), add(&va, &verschiebung_cw(&b)));
    }

    #[test]
    fn scalar_action_identities() {
        let alg = line3();
        let f = alg.field().clone();
        let x = alg.generator(0);
        let a = Covector::with_zero_tail(&alg, vec![x.clone(), alg.mul(&x, &x)]).unwrap();
        assert_eq!(scalar_action(&f.one(), &a), a);
        assert_eq!(scalar_action(&f.zero(), &a), Covector::zero(&alg));
    }

    #[test]
    fn semilinear_relations_over_gf9() {
        // F([alpha] a) = [alpha^3] F(a) and V([alpha] a) = [sigma^{-1} alpha] V(a),
        // exhaustively over GF(9).
        let f = FiniteField::new(3, 2).unwrap();
        let alg = NilpotentAlgebra::new(&f, vec![Rewrite { unit: false, target: 0 }]);
        let x = alg.generator(0);
        let g = f.generator();
        let a = Covector::with_zero_tail(
            &alg,
            vec![alg.scale(&g, &x), alg.mul(&x, &x), alg.scale(&g, &alg.mul(&x, &x))],
        )
        .unwrap();
        for alpha in f.elements() {
            let lhs_f = frobenius_cw(&scalar_action(&alpha, &a));
            let rhs_f = scalar_action(&f.frobenius(&alpha), &frobenius_cw(&a));
            assert_eq!(lhs_f, rhs_f);
            let lhs_v = verschiebung_cw(&scalar_action(&alpha, &a));
            let rhs_v = scalar_action(&f.frobenius_inv(&alpha), &verschiebung_cw(&a));
            assert_eq!(lhs_v, rhs_v);
        }
    }

    #[test]
    fn periodic_tail_materializes_and_adds_stably() {
        // Period-1 covector with entries (-1)^n X over F_3[X]/(X^3).
        let alg = line3();
        let f = alg.field().clone();
        let x = alg.generator(0);
        let minus_one = f.from_i64(-1);
        let e = Covector::with_periodic_tail(
            &alg,
            vec![x.clone(), alg.scale(&minus_one, &x)],
            1,
            minus_one.clone(),
        )
        .unwrap();
        // Materialized entries alternate sign.
        assert_eq!(e.entry(2), x);
        assert_eq!(e.entry(3), alg.scale(&minus_one, &x));
        // Depth-stability: the sum at depths D and D+2 agrees on [0, D].
        let d = 4;
        let s1 = covector_add(&e, &e, d).unwrap();
        let s2 = covector_add(&e, &e, d + 2).unwrap();
        assert!(s1.agrees_on_window(&s2, d));
    }

    #[test]
    fn nilpotence_violation_is_reported() {
        // X_1 has X_1^3 = X_0 != 0; at depth 2 that breaks the truncation.
        let f = FiniteField::new(3, 1).unwrap();
        let alg = NilpotentAlgebra::new(
            &f,
            vec![Rewrite { unit: false, target: 1 }, Rewrite { unit: true, target: 0 }],
        );
        let x1 = alg.generator(1);
        let bad = Covector::with_zero_tail(&alg, vec![alg.zero(), alg.zero(), x1]).unwrap();
        let err = covector_add(&bad, &Covector::zero(&alg), 4).unwrap_err();
        assert_eq!(err, CovectorError::NilpotenceViolation { depth: 2 });
        // The same entry at depth 1 is fine.
        let ok = Covector::with_zero_tail(&alg, vec![alg.zero(), alg.generator(1)]).unwrap();
        assert!(covector_add(&ok, &Covector::zero(&alg), 4).is_ok());
    }
}
