//! Raynaud-type group scheme presentations over a finite field: the
//! coordinate ring `k[X_0..X_{r-1}] / (X_i^p - delta_i X_{i+1})` with
//! indices cyclic mod r and each `delta_i` either a unit (normalized to 1)
//! or `p` times a unit, its comultiplication, and the associated covectors.
//!
//! The structure constants come from `omega = p!` via `gamma_j = omega /
//! delta_j`: `gamma_j` vanishes mod p exactly when `delta_j` is a unit, and
//! equals `(p-1)! = -1` mod p otherwise. `lambda_j` is the Teichmueller
//! lift of `gamma_j` mod p, so it is 0 or -1. Everything downstream needs
//! these quantities at mod-p^2 precision at most.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::algebra::{apply_algebra_map, AlgebraElement, NilpotentAlgebra, Rewrite};
use crate::covector::{covector_add, Covector, CovectorError, Tail};
use crate::field::{FieldElement, FiniteField};
use crate::report::{Check, Provenance, VerificationReport};

/// Assumption string attached to every report that relies on the fixed
/// choice of omega.
pub const OMEGA_ASSUMPTION: &str =
    "omega is fixed to p!; all uses here need at most mod p^2 precision";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RaynaudError {
    #[error("p must be an odd prime in the supported range, got {0}")]
    UnsupportedPrime(u64),
    #[error("delta must have length r = {r} with every entry 1 or p, got {got:?}")]
    InvalidDelta { r: usize, got: Vec<u64> },
    #[error("pair enumeration for generator {generator} hit an exponent pattern without a unique valid offset")]
    InvalidPairing { generator: usize },
    #[error("a lift's contribution at depth {depth} is not divisible by the required power of p")]
    PrecisionError { depth: usize },
    #[error(transparent)]
    Covector(#[from] CovectorError),
}

/// A group scheme presentation of type `(p, r, delta)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RaynaudScheme {
    field: FiniteField,
    p: u64,
    r: usize,
    delta: Vec<u64>,
    omega: u64,
    gamma: Vec<u64>,
    lambda: Vec<u64>,
}

impl RaynaudScheme {
    /// `delta` entries must be 1 or p; the base field is `F_{p^r}`.
    pub fn new(p: u64, r: usize, delta: &[u64]) -> Result<RaynaudScheme, RaynaudError> {
        let field = FiniteField::new(p, r.max(1)).map_err(|_| RaynaudError::UnsupportedPrime(p))?;
        if r == 0 || delta.len() != r || delta.iter().any(|&d| d != 1 && d != p) {
            return Err(RaynaudError::InvalidDelta { r, got: delta.to_vec() });
        }
        let p2 = p * p;
        let omega: u64 = (1..=p).product();
        let gamma: Vec<u64> = delta.iter().map(|&d| (omega / d) % p2).collect();
        let lambda: Vec<u64> = gamma
            .iter()
            .map(|&g| {
                let mut t = g % p;
                if t != 0 {
                    // Iterate the p-th power map until stable mod p^2.
                    loop {
                        let next = pow_mod(t, p, p2);
                        if next == t {
                            break;
                        }
                        t = next;
                    }
                }
                t
            })
            .collect();
        for (j, &d) in delta.iter().enumerate() {
            // gamma_j = 0 mod p iff delta_j is a unit; lambda_j is 0 or -1.
            assert_eq!(gamma[j] % p == 0, d == 1);
            assert!(lambda[j] == 0 || lambda[j] == p2 - 1);
        }
        Ok(RaynaudScheme { field, p, r, delta: delta.to_vec(), omega, gamma, lambda })
    }

    /// Parse a comma-separated pattern of "1"/"p" entries.
    pub fn parse_delta(p: u64, pattern: &str) -> Result<Vec<u64>, RaynaudError> {
        pattern
            .split(',')
            .map(|tok| match tok.trim() {
                "1" => Ok(1),
                "p" => Ok(p),
                other => Err(RaynaudError::InvalidDelta {
                    r: 0,
                    got: other.parse::<u64>().map(|v| vec![v]).unwrap_or_default(),
                }),
            })
            .collect()
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn delta(&self) -> &[u64] {
        &self.delta
    }

    pub fn omega(&self) -> u64 {
        self.omega
    }

    /// `gamma_j = omega / delta_j` mod p^2.
    pub fn gamma(&self) -> &[u64] {
        &self.gamma
    }

    /// Teichmueller lifts of `gamma_j` mod p, as residues mod p^2.
    pub fn lambda(&self) -> &[u64] {
        &self.lambda
    }

    pub fn delta_string(&self) -> String {
        self.delta
            .iter()
            .map(|&d| if d == 1 { "1" } else { "p" })
            .collect::<Vec<_>>()
            .join(",")
    }

    /// `delta_i` mod p: 1 in the unit (etale) direction, 0 otherwise.
    pub fn delta_bar(&self, i: usize) -> u64 {
        if self.delta[i % self.r] == 1 {
            1
        } else {
            0
        }
    }

    /// `gamma_i` mod p as a field scalar: 0 or -1.
    pub fn gamma_bar(&self, i: usize) -> FieldElement {
        self.field.from_u64(self.gamma[i % self.r] % self.p)
    }

    /// Index arithmetic in Z/rZ: `i - k`.
    fn back(&self, i: usize, k: usize) -> usize {
        (i + self.r - (k % self.r)) % self.r
    }

    /// The special-fibre coordinate ring `A_k` as a monomial algebra.
    pub fn algebra(&self) -> NilpotentAlgebra {
        let rewrites = (0..self.r)
            .map(|i| Rewrite { unit: self.delta[i] == 1, target: (i + 1) % self.r })
            .collect();
        NilpotentAlgebra::new(&self.field, rewrites)
    }

    /// Coordinate ring with its comultiplication, built and cross-checked.
    pub fn coordinate_ring(&self) -> Result<CoordinateRing, RaynaudError> {
        let algebra = self.algebra();
        let square = algebra.tensor_power(2);
        let mut comultiplication = Vec::with_capacity(self.r);
        for i in 0..self.r {
            comultiplication.push(self.comultiplication_image(&square, i)?);
        }
        Ok(CoordinateRing { scheme: self.clone(), algebra, square, comultiplication })
    }

    /// `Delta(X_i)`: the primitive part plus one correction block per
    /// offset h = 1..r. A pair contributes at offset h when the exponents
    /// sum to p at position i-h, to p-1 at positions i-k for 0<k<h, and
    /// vanish elsewhere; its coefficient is
    /// `gamma_{i-h}...gamma_{i-1} / (omega_{chi'} omega_{chi''})` where
    /// `omega_chi` is the product of factorials of the exponents, mod p.
    fn comultiplication_image(
        &self,
        square: &NilpotentAlgebra,
        i: usize,
    ) -> Result<AlgebraElement, RaynaudError> {
        let p = self.p;
        let r = self.r;
        let f = &self.field;
        let mut acc = square.add(&square.generator(i), &square.generator(r + i));
        let mut seen: BTreeSet<Vec<u8>> = BTreeSet::new();
        for h in 1..=r {
            // Product gamma_{i-h} ... gamma_{i-1}; zero kills the block.
            let mut gprod = f.one();
            for t in 1..=h {
                gprod = f.mul(&gprod, &self.gamma_bar(self.back(i, t)));
            }
            if f.is_zero(&gprod) {
                continue;
            }
            let middles = h - 1;
            let mut mid_count = 1u64;
            for _ in 0..middles {
                mid_count *= p;
            }
            for s in 1..p {
                for mid in 0..mid_count {
                    let mut a_left = vec![0u8; r];
                    let mut a_right = vec![0u8; r];
                    a_left[self.back(i, h)] = s as u8;
                    a_right[self.back(i, h)] = (p - s) as u8;
                    let mut m = mid;
                    for k in 1..h {
                        let d = (m % p) as u8;
                        m /= p;
                        a_left[self.back(i, k)] = d;
                        a_right[self.back(i, k)] = (p - 1) as u8 - d;
                    }
                    if self.classify_pair(i, &a_left, &a_right) != Some(h) {
                        return Err(RaynaudError::InvalidPairing { generator: i });
                    }
                    let mut key = a_left.clone();
                    key.extend_from_slice(&a_right);
                    if !seen.insert(key.clone()) {
                        return Err(RaynaudError::InvalidPairing { generator: i });
                    }
                    let coeff = f.mul(
                        &gprod,
                        &f.inv(&f.mul(
                            &factorial_product(f, &a_left),
                            &factorial_product(f, &a_right),
                        )),
                    );
                    acc = square.add(&acc, &square.monomial(&key, &coeff));
                }
            }
        }
        Ok(acc)
    }

    /// Re-derive the offset h from an exponent pair relative to generator
    /// i; None unless exactly one offset matches the position pattern.
    /// Defensive check against indexing bugs in the enumeration.
    fn classify_pair(&self, i: usize, a_left: &[u8], a_right: &[u8]) -> Option<usize> {
        let p = self.p as u16;
        let mut matched = Vec::new();
        'offsets: for h in 1..=self.r {
            for pos in 0..self.r {
                // At offset h, position i-h carries exponent sum p, the
                // positions i-k for 0<k<h carry sum p-1, the rest nothing.
                let mut want = 0u16;
                for k in 1..=h {
                    if pos == self.back(i, k) {
                        want = if k == h { p } else { p - 1 };
                        break;
                    }
                }
                let sum = a_left[pos] as u16 + a_right[pos] as u16;
                if sum != want {
                    continue 'offsets;
                }
                if want == p && !(1..p).contains(&(a_left[pos] as u16)) {
                    continue 'offsets;
                }
            }
            matched.push(h);
        }
        if matched.len() == 1 {
            Some(matched[0])
        } else {
            None
        }
    }

    /// The covectors e_1..e_r: the depth-n entry of e_i is
    /// `gamma_{i-1}...gamma_{i-n} X_{i-n}` mod p, so entries survive only
    /// while the delta values walked through are all p, and the tail is
    /// periodic exactly when no gamma in the cycle vanishes.
    pub fn dieudonne_covectors(&self, algebra: &NilpotentAlgebra) -> Vec<Covector> {
        let f = &self.field;
        (0..self.r)
            .map(|i| {
                let all_p = self.delta.iter().all(|&d| d != 1);
                if all_p {
                    let entries: Vec<AlgebraElement> =
                        (0..2 * self.r).map(|n| self.covector_entry(algebra, i, n)).collect();
                    let multiplier = f.from_i64(if self.r % 2 == 1 { -1 } else { 1 });
                    Covector::with_periodic_tail(algebra, entries, self.r, multiplier)
                        .expect("periodic by construction")
                } else {
                    let mut entries = Vec::new();
                    for n in 0.. {
                        let e = self.covector_entry(algebra, i, n);
                        if n > 0 && algebra.is_zero(&e) {
                            break;
                        }
                        entries.push(e);
                    }
                    Covector::with_zero_tail(algebra, entries)
                        .expect("entries below the top are nilpotent by construction")
                }
            })
            .collect()
    }

    fn covector_entry(&self, algebra: &NilpotentAlgebra, i: usize, n: usize) -> AlgebraElement {
        let mut c = self.field.one();
        for t in 1..=n {
            c = self.field.mul(&c, &self.gamma_bar(self.back(i, t)));
        }
        algebra.scale(&c, &algebra.generator(self.back(i, n)))
    }

    /// Check `Delta(e_i) = e_i (x) 1 + 1 (x) e_i` as covectors over the
    /// tensor square, comparing entries on depths `0..=depth` (default
    /// `2r+2`), with the right-hand sum computed by the covector group law.
    pub fn verify_hom_condition(
        &self,
        depth: Option<usize>,
    ) -> Result<VerificationReport, RaynaudError> {
        let depth = depth.unwrap_or(2 * self.r + 2);
        let ring = self.coordinate_ring()?;
        let covectors = self.dieudonne_covectors(ring.algebra());
        let mut report = VerificationReport::new("hom-condition");
        report.set_input("p", self.p.to_string());
        report.set_input("r", self.r.to_string());
        report.set_input("delta", self.delta_string());
        report.set_input("depth", depth.to_string());
        report.assume(OMEGA_ASSUMPTION);
        report.push(Check::holds(
            "relations",
            "comultiplication respects the defining relations of the coordinate ring",
            ring.verify_relation_respect(),
            Provenance::Derived,
        ));
        report.push(Check::holds(
            "coassociativity",
            "the two double-comultiplication compositions agree on generators",
            ring.verify_coassociativity(),
            Provenance::Derived,
        ));
        report.push(Check::holds(
            "counit",
            "the counit laws hold on generators",
            ring.verify_counit(),
            Provenance::Derived,
        ));
        for (i, e) in covectors.iter().enumerate() {
            let lhs = ring.comultiply_covector(e)?;
            let left = ring.embed_covector(e, 0)?;
            let right = ring.embed_covector(e, 1)?;
            let rhs = covector_add(&left, &right, depth)?;
            let ok = lhs.agrees_on_window(&rhs, depth);
            report.push(Check::holds(
                &format!("e{}", i + 1),
                "comultiplication applied entrywise equals the covector sum of the two tensor embeddings",
                ok,
                Provenance::Stated,
            ));
        }
        Ok(report)
    }
}

fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc
}

/// Product of factorials of the exponents, as a field scalar.
fn factorial_product(f: &FiniteField, expo: &[u8]) -> FieldElement {
    let p = f.characteristic();
    let mut acc = 1u64;
    for &e in expo {
        for j in 2..=(e as u64) {
            acc = acc * (j % p) % p;
        }
    }
    f.from_u64(acc)
}

/// The special-fibre coordinate ring with its comultiplication.
#[derive(Debug, Clone)]
pub struct CoordinateRing {
    scheme: RaynaudScheme,
    algebra: NilpotentAlgebra,
    square: NilpotentAlgebra,
    comultiplication: Vec<AlgebraElement>,
}

impl CoordinateRing {
    pub fn algebra(&self) -> &NilpotentAlgebra {
        &self.algebra
    }

    pub fn square(&self) -> &NilpotentAlgebra {
        &self.square
    }

    /// `Delta(X_i)` in the tensor square.
    pub fn comultiplication_of(&self, i: usize) -> &AlgebraElement {
        &self.comultiplication[i]
    }

    /// Apply `Delta` to an arbitrary element, multiplicatively extended.
    pub fn comultiply(&self, a: &AlgebraElement) -> AlgebraElement {
        apply_algebra_map(&self.algebra, &self.square, &self.comultiplication, a)
    }

    /// `Delta(X_i)^p = delta_i Delta(X_{i+1})` must hold in the square.
    pub fn verify_relation_respect(&self) -> bool {
        let p = self.scheme.p as u32;
        let r = self.scheme.r;
        (0..r).all(|i| {
            let lhs = self.square.pow(&self.comultiplication[i], p);
            let rhs = if self.scheme.delta_bar(i) == 1 {
                self.comultiplication[(i + 1) % r].clone()
            } else {
                self.square.zero()
            };
            lhs == rhs
        })
    }

    /// `(Delta (x) id) Delta = (id (x) Delta) Delta` on generators.
    pub fn verify_coassociativity(&self) -> bool {
        let r = self.scheme.r;
        let cube = self.algebra.tensor_power(3);
        // Embeddings of the square into blocks (0,1) and (1,2) of the cube.
        let shift0: Vec<AlgebraElement> = (0..2 * r).map(|g| cube.generator(g)).collect();
        let shift1: Vec<AlgebraElement> = (0..2 * r).map(|g| cube.generator(g + r)).collect();
        let left_images: Vec<AlgebraElement> = (0..2 * r)
            .map(|g| {
                if g < r {
                    apply_algebra_map(&self.square, &cube, &shift0, &self.comultiplication[g])
                } else {
                    cube.generator(r + g)
                }
            })
            .collect();
        let right_images: Vec<AlgebraElement> = (0..2 * r)
            .map(|g| {
                if g < r {
                    cube.generator(g)
                } else {
                    apply_algebra_map(&self.square, &cube, &shift1, &self.comultiplication[g - r])
                }
            })
            .collect();
        (0..r).all(|i| {
            let lhs = apply_algebra_map(&self.square, &cube, &left_images, &self.comultiplication[i]);
            let rhs =
                apply_algebra_map(&self.square, &cube, &right_images, &self.comultiplication[i]);
            lhs == rhs
        })
    }

    /// `(eps (x) id) Delta = id = (id (x) eps) Delta` on generators, with
    /// the counit killing every generator.
    pub fn verify_counit(&self) -> bool {
        let r = self.scheme.r;
        let left_eps: Vec<AlgebraElement> = (0..2 * r)
            .map(|g| if g < r { self.algebra.zero() } else { self.algebra.generator(g - r) })
            .collect();
        let right_eps: Vec<AlgebraElement> = (0..2 * r)
            .map(|g| if g < r { self.algebra.generator(g) } else { self.algebra.zero() })
            .collect();
        (0..r).all(|i| {
            let l = apply_algebra_map(&self.square, &self.algebra, &left_eps, &self.comultiplication[i]);
            let rgt =
                apply_algebra_map(&self.square, &self.algebra, &right_eps, &self.comultiplication[i]);
            l == self.algebra.generator(i) && rgt == self.algebra.generator(i)
        })
    }

    /// Apply the comultiplication to every entry of a covector, producing a
    /// covector over the tensor square with the same tail behavior.
    pub fn comultiply_covector(&self, c: &Covector) -> Result<Covector, CovectorError> {
        let entries: Vec<AlgebraElement> =
            c.stored_entries().iter().map(|e| self.comultiply(e)).collect();
        match c.tail() {
            Tail::Zero => Covector::with_zero_tail(&self.square, entries),
            Tail::Periodic { period, multiplier } => {
                Covector::with_periodic_tail(&self.square, entries, *period, multiplier.clone())
            }
        }
    }

    /// Embed a covector over `A` into the tensor square as `c (x) 1`
    /// (factor 0) or `1 (x) c` (factor 1).
    pub fn embed_covector(&self, c: &Covector, factor: usize) -> Result<Covector, CovectorError> {
        let entries: Vec<AlgebraElement> = c
            .stored_entries()
            .iter()
            .map(|e| self.square.embed_factor(&self.algebra, factor, e))
            .collect();
        match c.tail() {
            Tail::Zero => Covector::with_zero_tail(&self.square, entries),
            Tail::Periodic { period, multiplier } => {
                Covector::with_periodic_tail(&self.square, entries, *period, multiplier.clone())
            }
        }
    }
}
