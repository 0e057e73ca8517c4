//! Quadratic and biquadratic number fields: discriminants and integral
//! bases, Minkowski bounds with a certified rational estimate, and
//! class-number verification by enumeration of small primes and search for
//! principal generators.
//!
//! The guiding rule is that a class number is only ever *asserted* when the
//! arithmetic proves it: imaginary quadratic fields get the exact count of
//! reduced forms, while principality searches that exhaust their budget
//! report `SearchInconclusive` instead of guessing.

use thiserror::Error;

pub mod biquadratic;
pub mod quadratic;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NumberFieldError {
    /// The field datum must be squarefree and different from 0 and 1.
    #[error("invalid field datum {0}: need a squarefree integer other than 0 and 1")]
    InvalidFieldDatum(i64),
    /// Enumeration work is capped by the discriminant size.
    #[error("discriminant {0} exceeds the supported size")]
    DiscriminantTooLarge(i64),
    /// Biquadratic verification is capped by the Minkowski bound.
    #[error("Minkowski bound {0} exceeds the supported range")]
    MinkowskiBoundTooLarge(String),
    /// A principality search ran out of budget: the class number is not
    /// determined either way.
    #[error("principality search exhausted for norm {target} (height {height}); class number undetermined")]
    SearchInconclusive { target: u64, height: i64 },
    /// A field description could not be parsed.
    #[error("cannot parse field spec: {0}")]
    ParseError(String),
}

/// A parsed field description, as the command-line front end supplies it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldSpec {
    /// `Q(sqrt(d))`.
    Quadratic(i64),
    /// `Q(sqrt(a),sqrt(b))`.
    Biquadratic(i64, i64),
}

/// Parse `Q(sqrt(d))` or `Q(sqrt(a),sqrt(b))`.
pub fn parse_field_spec(text: &str) -> Result<FieldSpec, NumberFieldError> {
    let inner = text
        .trim()
        .strip_prefix("Q(")
        .and_then(|rest| rest.strip_suffix(')'))
        .ok_or_else(|| NumberFieldError::ParseError(format!("`{text}` is not Q(...)")))?;
    let radicals: Vec<&str> = inner.split(',').map(str::trim).collect();
    let parse_radical = |piece: &str| -> Result<i64, NumberFieldError> {
        piece
            .strip_prefix("sqrt(")
            .and_then(|rest| rest.strip_suffix(')'))
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| NumberFieldError::ParseError(format!("`{piece}` is not sqrt(<int>)")))
    };
    match radicals.as_slice() {
        [one] => Ok(FieldSpec::Quadratic(parse_radical(one)?)),
        [one, two] => Ok(FieldSpec::Biquadratic(parse_radical(one)?, parse_radical(two)?)),
        _ => Err(NumberFieldError::ParseError(
            "expected one or two sqrt(...) radicals".to_string(),
        )),
    }
}

pub(crate) fn is_squarefree(n: i64) -> bool {
    let n = n.abs();
    if n == 0 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % (d * d) == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The squarefree part of a product of two squarefree integers.
pub(crate) fn squarefree_part(n: i64) -> i64 {
    let sign = n.signum();
    let mut n = n.abs();
    let mut d = 2;
    while d * d <= n {
        while n % (d * d) == 0 {
            n /= d * d;
        }
        d += 1;
    }
    sign * n
}

/// Kronecker symbol `(a / n)` for positive `n`.
pub(crate) fn kronecker(a: i64, n: u64) -> i64 {
    match n {
        0 => panic!("kronecker symbol needs a nonzero modulus"),
        1 => 1,
        2 => {
            if a % 2 == 0 {
                0
            } else if (a.rem_euclid(8)) == 1 || (a.rem_euclid(8)) == 7 {
                1
            } else {
                -1
            }
        }
        _ if n % 2 == 0 => kronecker(a, 2) * kronecker(a, n / 2),
        p => {
            // Odd prime modulus: Euler's criterion.
            debug_assert!(crate::quadratic::is_prime_u64(p), "odd modulus must be prime here");
            let r = a.rem_euclid(p as i64) as u64;
            if r == 0 {
                return 0;
            }
            let mut pow = 1u64;
            let mut base = r % p;
            let mut e = (p - 1) / 2;
            while e > 0 {
                if e & 1 == 1 {
                    pow = pow * base % p;
                }
                base = base * base % p;
                e >>= 1;
            }
            if pow == 1 {
                1
            } else {
                debug_assert_eq!(pow, p - 1);
                -1
            }
        }
    }
}
