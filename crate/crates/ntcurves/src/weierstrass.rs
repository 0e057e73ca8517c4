//! Weierstrass models over `Q` or a real quadratic field: the standard
//! invariants, valuation-based reduction types at odd places, exact point
//! counts over small residue fields, supersingularity by trace, and torsion
//! bounds through reduction at split primes.
//!
//! The reduction-type classifier uses scaling substitutions only (`x ->
//! u^2 x`, `y -> u^3 y` with `u` a uniformizer power): after removing every
//! such scaling, `v(Delta) = 0` is good reduction, `v(c4) = 0 < v(Delta)` is
//! multiplicative, and the rest is additive. That classification is complete
//! for the models this crate handles at odd residue characteristic; general
//! minimality (translations included) is out of scope.

use std::collections::HashMap;

use num_traits::Zero;

use ntcore::field::{FieldElement, FiniteField};

use crate::quadfield::{rational_valuation, QuadElement, QuadField, QuadPrime};
use crate::CurveError;

/// Largest residue field a brute-force point count will accept.
pub const COUNT_LIMIT: u64 = 1_000_000;

/// The base field of a model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Base {
    Rationals,
    Quadratic(QuadField),
}

/// A place of the base field at odd residue characteristic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Place {
    Rational(u64),
    Quadratic(QuadPrime),
}

impl Place {
    pub fn residue_char(&self) -> u64 {
        match self {
            Place::Rational(p) => *p,
            Place::Quadratic(pr) => pr.residue_char(),
        }
    }

    pub fn ramification(&self) -> u64 {
        match self {
            Place::Rational(_) => 1,
            Place::Quadratic(pr) => pr.ramification(),
        }
    }

    pub fn residue_order(&self) -> u64 {
        match self {
            Place::Rational(p) => *p,
            Place::Quadratic(pr) => pr.residue_order(),
        }
    }

    pub fn residue_field(&self) -> FiniteField {
        let p = self.residue_char();
        let f = match self {
            Place::Rational(_) => 1,
            Place::Quadratic(pr) => pr.residue_degree() as usize,
        };
        FiniteField::new(p, f).expect("odd prime place")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionType {
    Good,
    Multiplicative,
    Additive,
}

/// A long Weierstrass model `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveModel {
    base: Base,
    a: [QuadElement; 5],
}

/// The derived quantities of a model; all identities checked on
/// construction.
#[derive(Debug, Clone)]
pub struct Invariants {
    pub b2: QuadElement,
    pub b4: QuadElement,
    pub b6: QuadElement,
    pub b8: QuadElement,
    pub c4: QuadElement,
    pub c6: QuadElement,
    pub delta: QuadElement,
    pub j: QuadElement,
}

impl CurveModel {
    pub fn rational_from_integers(a: [i64; 5]) -> CurveModel {
        let ctx = QuadField::rational_context();
        CurveModel {
            base: Base::Rationals,
            a: [
                ctx.from_integer(a[0]),
                ctx.from_integer(a[1]),
                ctx.from_integer(a[2]),
                ctx.from_integer(a[3]),
                ctx.from_integer(a[4]),
            ],
        }
    }

    pub fn quadratic(field: QuadField, a: [QuadElement; 5]) -> CurveModel {
        CurveModel { base: Base::Quadratic(field), a }
    }

    /// Parse "a1,a2,a3,a4,a6 over Q" or "... over Q(sqrt(d))" with
    /// coefficients like "-10", "1/2", "s", "2-3*s".
    pub fn parse(text: &str) -> Result<CurveModel, CurveError> {
        let (coeff_part, base_part) = text
            .split_once(" over ")
            .ok_or_else(|| CurveError::ParseError("expected `<coeffs> over <base>`".into()))?;
        let base_part = base_part.trim();
        let (base, ctx) = if base_part == "Q" {
            (Base::Rationals, QuadField::rational_context())
        } else {
            let inner = base_part
                .strip_prefix("Q(sqrt(")
                .and_then(|rest| rest.strip_suffix("))"))
                .ok_or_else(|| {
                    CurveError::ParseError(format!("unrecognized base field `{base_part}`"))
                })?;
            let d: i64 = inner
                .parse()
                .map_err(|_| CurveError::ParseError(format!("bad field datum `{inner}`")))?;
            let field = QuadField::new(d)?;
            (Base::Quadratic(field.clone()), field)
        };
        let raw: Vec<&str> = coeff_part.split(',').collect();
        if raw.len() != 5 {
            return Err(CurveError::ParseError(format!(
                "expected five coefficients, got {}",
                raw.len()
            )));
        }
        let mut a = Vec::with_capacity(5);
        for piece in raw {
            let z = ctx.parse_element(piece)?;
            if base == Base::Rationals && !z.y.is_zero() {
                return Err(CurveError::ParseError(
                    "irrational coefficient in a curve over Q".into(),
                ));
            }
            a.push(z);
        }
        Ok(CurveModel { base, a: a.try_into().unwrap() })
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    pub fn coefficients(&self) -> &[QuadElement; 5] {
        &self.a
    }

    /// The arithmetic context: the quadratic field, or the degenerate
    /// rational context for curves over `Q`.
    pub(crate) fn context(&self) -> QuadField {
        self.ctx()
    }

    fn ctx(&self) -> QuadField {
        match &self.base {
            Base::Rationals => QuadField::rational_context(),
            Base::Quadratic(f) => f.clone(),
        }
    }

    /// The standard quantities. Both defining identities are asserted:
    /// 4 b8 = b2 b6 - b4^2 and 1728 Delta = c4^3 - c6^2.
    pub fn invariants(&self) -> Result<Invariants, CurveError> {
        let f = self.ctx();
        let [a1, a2, a3, a4, a6] = &self.a;
        let b2 = f.add(&f.mul(a1, a1), &f.scale(4, a2));
        let b4 = f.add(&f.scale(2, a4), &f.mul(a1, a3));
        let b6 = f.add(&f.mul(a3, a3), &f.scale(4, a6));
        let b8 = {
            let t1 = f.mul(&f.mul(a1, a1), a6);
            let t2 = f.scale(4, &f.mul(a2, a6));
            let t3 = f.neg(&f.mul(&f.mul(a1, a3), a4));
            let t4 = f.mul(a2, &f.mul(a3, a3));
            let t5 = f.neg(&f.mul(a4, a4));
            f.add(&f.add(&f.add(&t1, &t2), &f.add(&t3, &t4)), &t5)
        };
        let c4 = f.sub(&f.mul(&b2, &b2), &f.scale(24, &b4));
        let c6 = {
            let t1 = f.neg(&f.mul(&b2, &f.mul(&b2, &b2)));
            let t2 = f.scale(36, &f.mul(&b2, &b4));
            let t3 = f.scale(-216, &b6);
            f.add(&f.add(&t1, &t2), &t3)
        };
        let delta = {
            let t1 = f.neg(&f.mul(&f.mul(&b2, &b2), &b8));
            let t2 = f.scale(-8, &f.mul(&b4, &f.mul(&b4, &b4)));
            let t3 = f.scale(-27, &f.mul(&b6, &b6));
            let t4 = f.scale(9, &f.mul(&b2, &f.mul(&b4, &b6)));
            f.add(&f.add(&t1, &t2), &f.add(&t3, &t4))
        };
        // 4 b8 = b2 b6 - b4^2.
        assert_eq!(
            f.scale(4, &b8),
            f.sub(&f.mul(&b2, &b6), &f.mul(&b4, &b4)),
            "b-invariant identity failed"
        );
        // 1728 Delta = c4^3 - c6^2.
        assert_eq!(
            f.scale(1728, &delta),
            f.sub(&f.mul(&c4, &f.mul(&c4, &c4)), &f.mul(&c6, &c6)),
            "c-invariant identity failed"
        );
        if f.is_zero(&delta) {
            return Err(CurveError::SingularCurve);
        }
        let j = f.div(&f.mul(&c4, &f.mul(&c4, &c4)), &delta);
        Ok(Invariants { b2, b4, b6, b8, c4, c6, delta, j })
    }

    /// Valuation of an element at a place of the base (checked for
    /// compatibility between the place and the base).
    pub(crate) fn place_valuation(&self, place: &Place, z: &QuadElement) -> Option<i64> {
        match (place, &self.base) {
            (Place::Rational(p), Base::Rationals) => {
                assert!(z.y.is_zero(), "rational model with irrational coefficient");
                rational_valuation(*p, &z.x)
            }
            (Place::Quadratic(pr), Base::Quadratic(f)) => f.valuation(pr, z),
            _ => panic!("place does not belong to the model's base field"),
        }
    }

    /// Good / multiplicative / additive at an odd place, after removing
    /// scaling substitutions.
    pub fn reduction_type(&self, place: &Place) -> Result<ReductionType, CurveError> {
        let vals: Vec<Option<i64>> =
            self.a.iter().map(|z| self.place_valuation(place, z)).collect();
        if vals.iter().any(|v| matches!(v, Some(w) if *w < 0)) {
            return Err(CurveError::NonIntegralModel);
        }
        // Scaling x -> u^2 x, y -> u^3 y divides a_i by u^i; the model stays
        // integral while v(a_i) >= i for every nonzero coefficient.
        let weights = [1i64, 2, 3, 4, 6];
        let k = vals
            .iter()
            .zip(weights)
            .filter_map(|(v, w)| v.map(|val| val / w))
            .min()
            .unwrap_or(0);
        let inv = self.invariants()?;
        let v_delta = self
            .place_valuation(place, &inv.delta)
            .expect("nonsingular curve has nonzero discriminant")
            - 12 * k;
        let v_c4 = self.place_valuation(place, &inv.c4).map(|v| v - 4 * k);
        assert!(v_delta >= 0, "scaling removed too much");
        Ok(if v_delta == 0 {
            ReductionType::Good
        } else if v_c4 == Some(0) {
            ReductionType::Multiplicative
        } else {
            ReductionType::Additive
        })
    }

    /// Reduce the model at a place of good or bad reduction into the residue
    /// field, after removing scaling substitutions.
    pub fn reduce_at(&self, place: &Place) -> Result<ReducedCurve, CurveError> {
        let field = place.residue_field();
        let ctx = self.ctx();
        let vals: Vec<Option<i64>> =
            self.a.iter().map(|z| self.place_valuation(place, z)).collect();
        if vals.iter().any(|v| matches!(v, Some(w) if *w < 0)) {
            return Err(CurveError::NonIntegralModel);
        }
        let weights = [1i64, 2, 3, 4, 6];
        let k = vals
            .iter()
            .zip(weights)
            .filter_map(|(v, w)| v.map(|val| val / w))
            .min()
            .unwrap_or(0);
        // Divide a_i by pi^(i k) before reducing.
        let uniformizer = match (place, &self.base) {
            (Place::Rational(p), _) => ctx.from_integer(*p as i64),
            (Place::Quadratic(QuadPrime::Ramified { .. }), Base::Quadratic(f)) => f.root(),
            (Place::Quadratic(pr), _) => ctx.from_integer(pr.residue_char() as i64),
        };
        let mut reduced = Vec::with_capacity(5);
        for (z, w) in self.a.iter().zip(weights) {
            let mut scaled = z.clone();
            for _ in 0..(w * k) {
                scaled = ctx.div(&scaled, &uniformizer);
            }
            let img = match (place, &self.base) {
                (Place::Rational(p), Base::Rationals) => {
                    field.from_u64(crate::quadfield::rational_residue(*p, &scaled.x))
                }
                (Place::Quadratic(pr), Base::Quadratic(f)) => f.reduce(pr, &scaled, &field)?,
                _ => panic!("place does not belong to the model's base field"),
            };
            reduced.push(img);
        }
        Ok(ReducedCurve { field, a: reduced.try_into().unwrap() })
    }

    /// Trace-zero test at a place of good reduction.
    pub fn is_supersingular(&self, place: &Place) -> Result<bool, CurveError> {
        if self.reduction_type(place)? != ReductionType::Good {
            return Err(CurveError::BadReduction);
        }
        let reduced = self.reduce_at(place)?;
        let trace = reduced.trace_of_frobenius()?;
        Ok(trace.rem_euclid(place.residue_char() as i64) == 0)
    }

    /// gcd of point counts at the listed rational primes, each required to
    /// split in the base field and be a good-reduction prime. The per-prime
    /// counts are returned for reporting.
    pub fn torsion_bound(&self, primes: &[u64]) -> Result<(u64, Vec<(u64, u64)>), CurveError> {
        let field = match &self.base {
            Base::Quadratic(f) => f,
            Base::Rationals => panic!("torsion bounds are computed over a quadratic base"),
        };
        if primes.is_empty() {
            return Err(CurveError::EmptyPrimeList);
        }
        let mut bound = 0u64;
        let mut counts = Vec::new();
        for &p in primes {
            let prime = field.prime_above(p)?;
            if !matches!(prime, QuadPrime::Split { .. }) {
                return Err(CurveError::PrimeNotSplit { p, d: field.d() });
            }
            let place = Place::Quadratic(prime);
            if self.reduction_type(&place)? != ReductionType::Good {
                return Err(CurveError::BadReductionPrime { p });
            }
            let n = self.reduce_at(&place)?.count_points()?;
            counts.push((p, n));
            bound = num_integer::gcd(bound, n);
        }
        Ok((bound, counts))
    }
}

/// A Weierstrass model over a finite field of odd characteristic.
#[derive(Debug, Clone)]
pub struct ReducedCurve {
    field: FiniteField,
    a: [FieldElement; 5],
}

impl ReducedCurve {
    pub fn new(field: FiniteField, a: [FieldElement; 5]) -> ReducedCurve {
        assert!(field.characteristic() % 2 == 1, "odd characteristic only");
        ReducedCurve { field, a }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn discriminant(&self) -> FieldElement {
        let f = &self.field;
        let [a1, a2, a3, a4, a6] = &self.a;
        let four = f.from_u64(4);
        let b2 = f.add(&f.mul(a1, a1), &f.mul(&four, a2));
        let b4 = f.add(&f.add(a4, a4), &f.mul(a1, a3));
        let b6 = f.add(&f.mul(a3, a3), &f.mul(&four, a6));
        let b8 = {
            let t1 = f.mul(&f.mul(a1, a1), a6);
            let t2 = f.mul(&four, &f.mul(a2, a6));
            let t3 = f.neg(&f.mul(&f.mul(a1, a3), a4));
            let t4 = f.mul(a2, &f.mul(a3, a3));
            let t5 = f.neg(&f.mul(a4, a4));
            f.add(&f.add(&t1, &t2), &f.add(&f.add(&t3, &t4), &t5))
        };
        let t1 = f.neg(&f.mul(&f.mul(&b2, &b2), &b8));
        let t2 = f.mul(&f.from_i64(-8), &f.mul(&b4, &f.mul(&b4, &b4)));
        let t3 = f.mul(&f.from_i64(-27), &f.mul(&b6, &b6));
        let t4 = f.mul(&f.from_u64(9), &f.mul(&b2, &f.mul(&b4, &b6)));
        f.add(&f.add(&t1, &t2), &f.add(&t3, &t4))
    }

    /// Exact point count including the point at infinity, by completing the
    /// square: `u = 2y + a1 x + a3` turns the model into `u^2 = g(x)`.
    pub fn count_points(&self) -> Result<u64, CurveError> {
        let f = &self.field;
        assert!(f.order() <= COUNT_LIMIT, "residue field too large for brute force");
        if f.is_zero(&self.discriminant()) {
            return Err(CurveError::SingularReduction);
        }
        let [a1, a2, a3, a4, a6] = &self.a;
        // Square table: how many u solve u^2 = value.
        let mut roots: HashMap<FieldElement, u64> = HashMap::new();
        for w in f.elements() {
            *roots.entry(f.mul(&w, &w)).or_insert(0) += 1;
        }
        let four = f.from_u64(4);
        let mut count = 1u64; // infinity
        for x in f.elements() {
            let x2 = f.mul(&x, &x);
            let rhs = f.add(&f.add(&f.mul(&x, &x2), &f.mul(a2, &x2)), &f.add(&f.mul(a4, &x), a6));
            let lin = f.add(&f.mul(a1, &x), a3);
            let g = f.add(&f.mul(&lin, &lin), &f.mul(&four, &rhs));
            count += roots.get(&g).copied().unwrap_or(0);
        }
        Ok(count)
    }

    /// `q + 1 - #E(F_q)`, with the Hasse bound asserted.
    pub fn trace_of_frobenius(&self) -> Result<i64, CurveError> {
        let q = self.field.order();
        let n = self.count_points()?;
        let trace = q as i64 + 1 - n as i64;
        assert!(trace * trace <= 4 * q as i64, "Hasse bound violated: count is wrong");
        Ok(trace)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn section_example() -> CurveModel {
        // y^2 = x^3 + sqrt(3) x^2 + x + 1 over Q(sqrt 3).
        CurveModel::parse("0,s,0,1,1 over Q(sqrt(3))").unwrap()
    }

    fn x015() -> CurveModel {
        CurveModel::rational_from_integers([1, 1, 1, -10, -10])
    }

    fn x015_over(d: i64) -> CurveModel {
        CurveModel::parse(&format!("1,1,1,-10,-10 over Q(sqrt({d}))")).unwrap()
    }

    #[test]
    fn discriminants_and_j() {
        let f = QuadField::new(3).unwrap();
        let inv = section_example().invariants().unwrap();
        // 32(3 sqrt(3) - 14) = -448 + 96 sqrt(3).
        assert_eq!(inv.delta, f.from_pair(-448, 96));

        let inv2 = CurveModel::rational_from_integers([0, 0, 0, 1, 0]).invariants().unwrap();
        assert_eq!(inv2.delta.x, BigRational::from_integer(BigInt::from(-64)));
        assert_eq!(inv2.j.x, BigRational::from_integer(BigInt::from(1728)));

        assert_eq!(
            CurveModel::rational_from_integers([0, 0, 0, 0, 0]).invariants().unwrap_err(),
            CurveError::SingularCurve
        );

        // X_0(15): Delta = 3^4 5^4.
        let inv3 = x015().invariants().unwrap();
        assert_eq!(inv3.delta.x, BigRational::from_integer(BigInt::from(50625)));
    }

    #[test]
    fn reduction_types() {
        let f3 = QuadField::new(3).unwrap();
        let place = Place::Quadratic(f3.prime_above(3).unwrap());
        assert_eq!(section_example().reduction_type(&place).unwrap(), ReductionType::Good);

        // y^2 = x^3 + 5 at 5: c4 = 0, v(Delta) = 2.
        let e5 = CurveModel::rational_from_integers([0, 0, 0, 0, 5]);
        assert_eq!(
            e5.reduction_type(&Place::Rational(5)).unwrap(),
            ReductionType::Additive
        );

        // X_0(15) is multiplicative at its conductor primes.
        assert_eq!(
            x015().reduction_type(&Place::Rational(3)).unwrap(),
            ReductionType::Multiplicative
        );
        assert_eq!(
            x015().reduction_type(&Place::Rational(5)).unwrap(),
            ReductionType::Multiplicative
        );
        let f2 = QuadField::new(2).unwrap();
        let p7 = Place::Quadratic(f2.prime_above(7).unwrap());
        assert_eq!(x015_over(2).reduction_type(&p7).unwrap(), ReductionType::Good);

        // A non-integral model is rejected.
        let ctx = QuadField::rational_context();
        let bad = CurveModel {
            base: Base::Rationals,
            a: [
                ctx.zero(),
                ctx.zero(),
                ctx.zero(),
                ctx.element(BigRational::new(BigInt::from(1), BigInt::from(3)), BigRational::zero()),
                ctx.one(),
            ],
        };
        assert_eq!(bad.reduction_type(&Place::Rational(3)), Err(CurveError::NonIntegralModel));
    }

    #[test]
    fn scaling_substitutions_are_removed() {
        // y^2 = x^3 + p^4 x + p^6 is a scaled copy of y^2 = x^3 + x + 1,
        // which has good reduction at 5.
        let p = 5i64;
        let e = CurveModel::rational_from_integers([0, 0, 0, p.pow(4), p.pow(6)]);
        assert_eq!(e.reduction_type(&Place::Rational(5)).unwrap(), ReductionType::Good);
        let r = e.reduce_at(&Place::Rational(5)).unwrap();
        // The reduced curve is y^2 = x^3 + x + 1 over F_5.
        let f5 = FiniteField::new(5, 1).unwrap();
        assert_eq!(r.a[3], f5.one());
        assert_eq!(r.a[4], f5.one());
    }

    #[test]
    fn point_counts_match_reference_values() {
        let f2 = QuadField::new(2).unwrap();
        let p7 = Place::Quadratic(f2.prime_above(7).unwrap());
        assert_eq!(x015_over(2).reduce_at(&p7).unwrap().count_points().unwrap(), 8);

        let f17 = QuadField::new(17).unwrap();
        for (p, expect) in [(13u64, 16u64), (43, 40)] {
            let place = Place::Quadratic(f17.prime_above(p).unwrap());
            assert_eq!(
                x015_over(17).reduce_at(&place).unwrap().count_points().unwrap(),
                expect,
                "count over F_{p}"
            );
        }

        // Hand enumeration: y^2 = x^3 + x + 1 over F_3 has 4 points.
        let e = CurveModel::rational_from_integers([0, 0, 0, 1, 1]);
        assert_eq!(e.reduce_at(&Place::Rational(3)).unwrap().count_points().unwrap(), 4);

        // A singular reduction is refused.
        let nodal = CurveModel::rational_from_integers([0, 0, 0, -3, 2]); // Delta = 0 mod 5? no:
        // Delta(y^2 = x^3 - 3x + 2) = 0 over Q already; use reduce of a good
        // curve at a bad prime instead.
        assert!(nodal.invariants().is_err());
        let r = x015().reduce_at(&Place::Rational(5)).unwrap();
        assert_eq!(r.count_points(), Err(CurveError::SingularReduction));
    }

    #[test]
    fn supersingularity() {
        let f3 = QuadField::new(3).unwrap();
        let place = Place::Quadratic(f3.prime_above(3).unwrap());
        // The reduced curve is y^2 = x^3 + x + 1 over F_3 with 4 points,
        // so the trace is zero.
        assert_eq!(section_example().is_supersingular(&place).unwrap(), true);

        // j = 1728 is supersingular at 7 (7 = 3 mod 4).
        let e = CurveModel::rational_from_integers([0, 0, 0, 1, 0]);
        assert_eq!(e.is_supersingular(&Place::Rational(7)).unwrap(), true);

        // y^2 = x^3 + x + 2 over F_5 has 4 points: trace 2, ordinary.
        let e2 = CurveModel::rational_from_integers([0, 0, 0, 1, 2]);
        assert_eq!(e2.reduce_at(&Place::Rational(5)).unwrap().count_points().unwrap(), 4);
        assert_eq!(e2.is_supersingular(&Place::Rational(5)).unwrap(), false);

        // Asking at a bad place is an error.
        assert_eq!(x015().is_supersingular(&Place::Rational(5)), Err(CurveError::BadReduction));
    }

    #[test]
    fn torsion_bounds() {
        assert_eq!(x015_over(2).torsion_bound(&[7]).unwrap().0, 8);
        let (bound, counts) = x015_over(17).torsion_bound(&[13, 43]).unwrap();
        assert_eq!(bound, 8);
        assert_eq!(counts, vec![(13, 16), (43, 40)]);
        // Fewer primes can only weaken the bound.
        assert_eq!(x015_over(17).torsion_bound(&[13]).unwrap().0, 16);

        assert_eq!(
            x015_over(2).torsion_bound(&[5]),
            Err(CurveError::PrimeNotSplit { p: 5, d: 2 })
        );
        assert_eq!(
            x015_over(2).torsion_bound(&[]),
            Err(CurveError::EmptyPrimeList)
        );
        // 3 splits in Q(sqrt(17))? 17 = 2 mod 3, non-residue; inert. Use a
        // split bad prime instead: 5 splits in Q(sqrt(19))? Keep it concrete:
        // 7 splits in Q(sqrt(2)) but X_0(15) twisted badly is out of scope,
        // so exercise the bad-reduction arm over Q(sqrt(17)) where 47 splits
        // and reduction is good, while 5 does not split.
        assert!(matches!(
            x015_over(17).torsion_bound(&[5]),
            Err(CurveError::PrimeNotSplit { p: 5, d: 17 })
        ));
    }

    #[test]
    fn hasse_bound_holds_on_every_count() {
        let f2 = QuadField::new(2).unwrap();
        for p in [7u64, 17, 23, 31] {
            if let Ok(QuadPrime::Split { .. }) = f2.prime_above(p) {
                let place = Place::Quadratic(f2.prime_above(p).unwrap());
                if x015_over(2).reduction_type(&place).unwrap() == ReductionType::Good {
                    // trace_of_frobenius asserts the bound internally.
                    x015_over(2).reduce_at(&place).unwrap().trace_of_frobenius().unwrap();
                }
            }
        }
    }

    #[test]
    fn parse_errors() {
        assert!(CurveModel::parse("1,2,3 over Q").is_err());
        assert!(CurveModel::parse("1,1,1,-10,-10 over Z").is_err());
        assert!(CurveModel::parse("s,0,0,1,1 over Q").is_err());
        assert!(CurveModel::parse("1,1,1,-10,-10 over Q(sqrt(12))").is_err());
    }
}
