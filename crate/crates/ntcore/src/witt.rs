//! Truncated Witt vectors and the universal addition laws.
//!
//! The addition polynomials `S_0, ..., S_n` are built recursively over `Z`:
//! `S_m = Y_m + Z_m + sum_{i=1}^{m} (Y_{m-i}^{p^i} + Z_{m-i}^{p^i} - S_{m-i}^{p^i}) / p^i`,
//! where every division must be exact — the exactness check doubles as a
//! correctness certificate for the construction. The defining property,
//! checked symbolically by [`verify_witt_sum_identity`], is
//! `W_n(S_0..S_n) = W_n(Y_0..Y_n) + W_n(Z_0..Z_n)` for the ghost polynomials
//! `W_n(X_0..X_n) = X_0^{p^n} + p X_1^{p^{n-1}} + ... + p^n X_n`.
//!
//! The truncated covector addition polynomial reduces `S_n` modulo `p` and
//! modulo high powers of the deep variables; the congruence between the two
//! is checked symbolically by [`verify_truncation_congruence`].
//!
//! Variable convention inside a depth-`n` polynomial ring with `2(n+1)`
//! variables: the first block of `n+1` variables is the `Y` family, the
//! second block the `Z` family. For the addition polynomials index `i` means
//! `Y_i`/`Z_i`; for the truncated covector polynomial index `j` means depth
//! `j`, i.e. the entry `j` steps below the top.

use num_bigint::BigInt;
use num_traits::One;

use crate::field::{FieldElement, FiniteField};
use crate::intpoly::IntPolynomial;

/// Index of `Y_i` in the depth-`n` variable layout.
pub fn y_index(_n: usize, i: usize) -> usize {
    i
}

/// Index of `Z_i` in the depth-`n` variable layout.
pub fn z_index(n: usize, i: usize) -> usize {
    n + 1 + i
}

/// The universal addition polynomials `S_0..S_n` for `p`-typical Witt
/// vectors, exact over `Z`.
pub fn witt_sum_polynomials(p: u64, n: usize) -> Vec<IntPolynomial> {
    let nv = 2 * (n + 1);
    let mut sums: Vec<IntPolynomial> = Vec::with_capacity(n + 1);
    // pows[j][i] caches S_j^{p^i}; successive p-th powers fill it.
    let mut pows: Vec<Vec<IntPolynomial>> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let top = IntPolynomial::var(nv, y_index(n, m)).add(&IntPolynomial::var(nv, z_index(n, m)));
        // Only the combined numerator sum_{i} p^{m-i} (Y^{p^i}+Z^{p^i}-S^{p^i})
        // is divisible by p^m; the individual summands are not.
        let mut numer = IntPolynomial::zero(nv);
        for i in 1..=m {
            let j = m - i;
            while pows[j].len() <= i {
                let next = pows[j].last().unwrap().pow(p as u32);
                pows[j].push(next);
            }
            let e = (p as u128).pow(i as u32) as u16;
            let weight = BigInt::from(p).pow((m - i) as u32);
            let part = IntPolynomial::var_pow(nv, y_index(n, j), e)
                .add(&IntPolynomial::var_pow(nv, z_index(n, j), e))
                .sub(&pows[j][i]);
            numer = numer.add(&part.scale(&weight));
        }
        let sm = if m == 0 {
            top
        } else {
            let p_m = BigInt::from(p).pow(m as u32);
            top.add(
                &numer
                    .div_exact(&p_m)
                    .expect("Witt addition-law numerator is divisible by p^m"),
            )
        };
        pows.push(vec![sm.clone()]);
        sums.push(sm);
    }
    sums
}

/// Check `W_n(S_0..S_n) = W_n(Y) + W_n(Z)` exactly over `Z`.
pub fn verify_witt_sum_identity(p: u64, n: usize) -> bool {
    let sums = witt_sum_polynomials(p, n);
    let nv = 2 * (n + 1);
    let mut acc = IntPolynomial::zero(nv);
    let mut p_pow = BigInt::one();
    for i in 0..=n {
        let e = (p as u128).pow((n - i) as u32) as u16;
        acc = acc.add(&sums[i].pow(e as u32).scale(&p_pow));
        acc = acc.sub(&IntPolynomial::var_pow(nv, y_index(n, i), e).scale(&p_pow));
        acc = acc.sub(&IntPolynomial::var_pow(nv, z_index(n, i), e).scale(&p_pow));
        p_pow *= p;
    }
    acc.is_zero()
}

/// Inverse of `x` modulo the prime `p`.
fn inv_mod(x: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    let mut base = x % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// `1 / (i! (p-i)!) mod p` for `1 <= i <= p-1`.
fn inv_fact_pair(i: u64, p: u64) -> u64 {
    let mut f = 1u64;
    for j in 2..=i {
        f = f * (j % p) % p;
    }
    for j in 2..=(p - i) {
        f = f * (j % p) % p;
    }
    inv_mod(f, p)
}

/// The depth-`n` truncated covector addition polynomial over `F_p`
/// (coefficients in `0..p`), in the depth-indexed variable layout.
///
/// Explicitly: the top-entry sum, plus for each depth `r` in `1..=n` the term
/// `(-1)^{r-1} * (prod_{j=1}^{r-1} (Y_j + Z_j))^{p-1} * sum_{i=1}^{p-1} Y_r^i Z_r^{p-i} / (i!(p-i)!)`.
pub fn truncated_covector_addition_poly(p: u64, n: usize) -> IntPolynomial {
    assert!(n >= 1, "truncation depth must be at least 1");
    let nv = 2 * (n + 1);
    let y = |j: usize| IntPolynomial::var(nv, y_index(n, j));
    let z = |j: usize| IntPolynomial::var(nv, z_index(n, j));

    let mut acc = y(0).add(&z(0));
    // Running product (Y_1+Z_1)...(Y_{r-1}+Z_{r-1}), raised to p-1 per term.
    let mut running = IntPolynomial::constant(nv, 1);
    for r in 1..=n {
        let mut inner = IntPolynomial::zero(nv);
        for i in 1..p {
            let c = inv_fact_pair(i, p);
            let mono = IntPolynomial::var_pow(nv, y_index(n, r), i as u16)
                .mul(&IntPolynomial::var_pow(nv, z_index(n, r), (p - i) as u16))
                .scale(&BigInt::from(c));
            inner = inner.add(&mono);
        }
        let term = running.pow((p - 1) as u32).mul(&inner);
        // Sign (-1)^{r-1}: positive for odd r.
        acc = if r % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
        running = running.mul(&y(r).add(&z(r)));
    }
    acc.mod_coeffs(p)
}

/// Check that `S_n`, with its variables relabeled by depth (`Y_j` becomes the
/// entry `n-j` steps below the top), agrees with the truncated covector
/// addition polynomial modulo `p` and modulo `p`-th powers of all variables
/// at depth `>= 2`.
pub fn verify_truncation_congruence(p: u64, n: usize) -> bool {
    assert!(n >= 1);
    let sums = witt_sum_polynomials(p, n);
    let nv = 2 * (n + 1);
    // Relabel index i -> depth n - i in both families.
    let mut mapping = vec![0usize; nv];
    for i in 0..=n {
        mapping[y_index(n, i)] = y_index(n, n - i);
        mapping[z_index(n, i)] = z_index(n, n - i);
    }
    let relabeled = sums[n].map_variables(&mapping, nv);
    let deep: Vec<usize> = (2..=n)
        .flat_map(|j| [y_index(n, j), z_index(n, j)])
        .collect();
    let lhs = relabeled.mod_coeffs(p).kill_powers(&deep, p as u16);
    let rhs = truncated_covector_addition_poly(p, n)
        .kill_powers(&deep, p as u16);
    lhs == rhs
}

/// A truncated Witt vector: coordinates `a_0..a_n` over a finite field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WittVector {
    coords: Vec<FieldElement>,
}

impl WittVector {
    pub fn new(coords: Vec<FieldElement>) -> WittVector {
        assert!(!coords.is_empty());
        WittVector { coords }
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    pub fn depth(&self) -> usize {
        self.coords.len() - 1
    }

    /// Index of the first nonzero coordinate, if any.
    pub fn valuation(&self, field: &FiniteField) -> Option<usize> {
        self.coords.iter().position(|c| !field.is_zero(c))
    }
}

/// The Teichmueller lift `(x, 0, ..., 0)` at depth `n`.
pub fn teichmuller(field: &FiniteField, x: &FieldElement, n: usize) -> WittVector {
    let mut coords = vec![field.zero(); n + 1];
    coords[0] = x.clone();
    WittVector::new(coords)
}

/// Addition in `W_n(k)`, with the addition-law polynomials compiled once at
/// construction for repeated use.
pub struct WittAddLaw {
    field: FiniteField,
    n: usize,
    /// Each polynomial as (coefficient residue, exponents) pairs.
    compiled: Vec<Vec<(u64, Vec<u16>)>>,
}

impl WittAddLaw {
    pub fn new(field: &FiniteField, n: usize) -> WittAddLaw {
        let p = field.characteristic();
        let compiled = witt_sum_polynomials(p, n)
            .iter()
            .map(|s| {
                s.mod_coeffs(p)
                    .terms()
                    .map(|(e, c)| {
                        let digits = c.to_u64_digits().1;
                        (digits.first().copied().unwrap_or(0), e.to_vec())
                    })
                    .collect()
            })
            .collect();
        WittAddLaw { field: field.clone(), n, compiled }
    }

    pub fn depth(&self) -> usize {
        self.n
    }

    pub fn add(&self, a: &WittVector, b: &WittVector) -> WittVector {
        assert_eq!(a.depth(), self.n);
        assert_eq!(b.depth(), self.n);
        let f = &self.field;
        // Power tables args[v][e] = arg_v^e up to the max exponent used.
        let args: Vec<&FieldElement> = a.coords.iter().chain(b.coords.iter()).collect();
        let max_e: u16 = self
            .compiled
            .iter()
            .flat_map(|terms| terms.iter().flat_map(|(_, e)| e.iter().copied()))
            .max()
            .unwrap_or(0);
        let mut pow_table: Vec<Vec<FieldElement>> = Vec::with_capacity(args.len());
        for arg in &args {
            let mut row = Vec::with_capacity(max_e as usize + 1);
            row.push(f.one());
            for e in 1..=max_e as usize {
                let next = f.mul(&row[e - 1], arg);
                row.push(next);
            }
            pow_table.push(row);
        }
        let coords = self
            .compiled
            .iter()
            .map(|terms| {
                let mut acc = f.zero();
                for (c, expos) in terms {
                    let mut t = f.from_u64(*c);
                    for (v, &e) in expos.iter().enumerate() {
                        if e > 0 {
                            t = f.mul(&t, &pow_table[v][e as usize]);
                        }
                    }
                    acc = f.add(&acc, &t);
                }
                acc
            })
            .collect();
        WittVector::new(coords)
    }
}

/// For prime-field coordinates, the residue `W_n(lift(a_0), .., lift(a_n))`
/// modulo `p^{n+1}` — the canonical bijection `W_n(F_p) -> Z/p^{n+1}`.
pub fn ghost_residue(field: &FiniteField, a: &WittVector) -> u64 {
    assert_eq!(field.degree(), 1, "ghost residue is for prime-field coordinates");
    let p = field.characteristic();
    let n = a.depth();
    let modulus = p.pow(n as u32 + 1);
    let mut acc = 0u64;
    let mut p_pow = 1u64;
    for (i, c) in a.coords.iter().enumerate() {
        let lift = c.coeffs()[0] % modulus;
        let mut term = 1u64;
        for _ in 0..(p as u128).pow((n - i) as u32) {
            term = term * lift % modulus;
        }
        acc = (acc + p_pow * term) % modulus;
        p_pow *= p;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_addition_polynomials() {
        // S_0 = Y_0 + Z_0.
        let s = witt_sum_polynomials(3, 0);
        let y0 = IntPolynomial::var(2, 0);
        let z0 = IntPolynomial::var(2, 1);
        assert_eq!(s[0], y0.add(&z0));

        // S_1 = Y_1 + Z_1 - Y_0^2 Z_0 - Y_0 Z_0^2 at p = 3.
        let s = witt_sum_polynomials(3, 1);
        let y = |i| IntPolynomial::var(4, y_index(1, i));
        let z = |i| IntPolynomial::var(4, z_index(1, i));
        let expected = y(1)
            .add(&z(1))
            .sub(&y(0).pow(2).mul(&z(0)))
            .sub(&y(0).mul(&z(0).pow(2)));
        assert_eq!(s[1], expected);
    }

    #[test]
    fn addition_identity_small() {
        for (p, n) in [(3, 1), (3, 2), (5, 1), (7, 1)] {
            assert!(verify_witt_sum_identity(p, n), "identity failed for p={p}, n={n}");
        }
    }

    #[test]
    fn addition_identity_depth_three() {
        assert!(verify_witt_sum_identity(3, 3));
    }

    #[test]
    fn addition_identity_depth_three_p5() {
        assert!(verify_witt_sum_identity(5, 3));
    }

    #[test]
    fn truncation_congruence_p5() {
        assert!(verify_truncation_congruence(5, 1));
        assert!(verify_truncation_congruence(5, 2));
        assert!(verify_truncation_congruence(5, 3));
    }

    #[test]
    fn truncated_poly_matches_hand_expansion() {
        // Depth 1, p = 3: Y_0+Z_0 + 2 Y_1^2 Z_1 + 2 Y_1 Z_1^2 (depth-indexed).
        let s = truncated_covector_addition_poly(3, 1);
        let y = |j| IntPolynomial::var(4, y_index(1, j));
        let z = |j| IntPolynomial::var(4, z_index(1, j));
        let two = BigInt::from(2);
        let expected = y(0)
            .add(&z(0))
            .add(&y(1).pow(2).mul(&z(1)).scale(&two))
            .add(&y(1).mul(&z(1).pow(2)).scale(&two));
        assert_eq!(s, expected);

        // Depth 2 adds -(Y_1+Z_1)^2 (2 Y_2^2 Z_2 + 2 Y_2 Z_2^2), mod 3.
        let s2 = truncated_covector_addition_poly(3, 2);
        let y = |j| IntPolynomial::var(6, y_index(2, j));
        let z = |j| IntPolynomial::var(6, z_index(2, j));
        let shallow = y(0)
            .add(&z(0))
            .add(&y(1).pow(2).mul(&z(1)).scale(&two))
            .add(&y(1).mul(&z(1).pow(2)).scale(&two));
        let deep = y(1)
            .add(&z(1))
            .pow(2)
            .mul(&y(2).pow(2).mul(&z(2)).scale(&two).add(&y(2).mul(&z(2).pow(2)).scale(&two)));
        let expected2 = shallow.sub(&deep).mod_coeffs(3);
        assert_eq!(s2, expected2);
    }

    #[test]
    fn truncation_congruence_p3() {
        assert!(verify_truncation_congruence(3, 1));
        assert!(verify_truncation_congruence(3, 2));
        assert!(verify_truncation_congruence(3, 3));
    }

    #[test]
    fn ghost_bijection_and_additivity() {
        // W_n(F_3) must match Z/3^{n+1} under the ghost residue, exhaustively.
        let f = FiniteField::new(3, 1).unwrap();
        for n in 0..=2usize {
            let law = WittAddLaw::new(&f, n);
            let modulus = 3u64.pow(n as u32 + 1);
            let all: Vec<WittVector> = (0..modulus)
                .map(|mut m| {
                    let mut coords = Vec::new();
                    for _ in 0..=n {
                        coords.push(f.from_u64(m % 3));
                        m /= 3;
                    }
                    WittVector::new(coords)
                })
                .collect();
            // Bijection: all ghost residues distinct.
            let mut seen: Vec<u64> = all.iter().map(|a| ghost_residue(&f, a)).collect();
            seen.sort_unstable();
            seen.dedup();
            assert_eq!(seen.len(), modulus as usize);
            // Additivity of the ghost residue.
            for a in &all {
                for b in &all {
                    let sum = law.add(a, b);
                    let lhs = ghost_residue(&f, &sum);
                    let rhs = (ghost_residue(&f, a) + ghost_residue(&f, b)) % modulus;
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn teichmuller_shape_and_cube_root() {
        let f = FiniteField::new(3, 1).unwrap();
        let t1 = teichmuller(&f, &f.one(), 2);
        assert_eq!(t1.coords(), &[f.one(), f.zero(), f.zero()]);
        let t0 = teichmuller(&f, &f.zero(), 2);
        assert!(t0.valuation(&f).is_none());

        // In W_1(F_3) = Z/9 the lift of 2 is 8 = -1, the nontrivial cube
        // root of itself: (-1)^3 = -1 in Z/9.
        let t2 = teichmuller(&f, &f.from_u64(2), 1);
        assert_eq!(ghost_residue(&f, &t2), 8);

        // Multiplicativity through the ghost residue at depth 2.
        let n = 2;
        let modulus = 27u64;
        for x in 0..3u64 {
            for y in 0..3u64 {
                let gx = ghost_residue(&f, &teichmuller(&f, &f.from_u64(x), n));
                let gy = ghost_residue(&f, &teichmuller(&f, &f.from_u64(y), n));
                let gxy = ghost_residue(&f, &teichmuller(&f, &f.from_u64(x * y % 3), n));
                assert_eq!(gx * gy % modulus, gxy);
            }
        }
    }

    #[test]
    fn witt_addition_over_extension_field() {
        // Spot-check associativity and commutativity of the compiled law
        // over GF(9) at depth 1.
        let f = FiniteField::new(3, 2).unwrap();
        let law = WittAddLaw::new(&f, 1);
        let g = f.generator();
        let a = WittVector::new(vec![g.clone(), f.one()]);
        let b = WittVector::new(vec![f.from_u64(2), g.clone()]);
        let c = WittVector::new(vec![f.add(&g, &f.one()), f.from_u64(2)]);
        assert_eq!(law.add(&a, &b), law.add(&b, &a));
        assert_eq!(law.add(&law.add(&a, &b), &c), law.add(&a, &law.add(&b, &c)));
        // Zero is neutral.
        let zero = WittVector::new(vec![f.zero(), f.zero()]);
        assert_eq!(law.add(&a, &zero), a);
    }
}
