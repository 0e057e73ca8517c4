//! A 2-Sylow subgroup of `GL_2(F_3)` presented by the two matrices
//! `tau = (1 1 / -1 1)` and `c = (1 0 / 0 -1)`: their orders, the braid
//! relation between them, the order-16 group they generate, and the
//! non-abelian order-8 subgroup `<tau^2, c tau>` inside `SL_2(F_3)`.

use ntcore::report::{Check, Provenance, VerificationReport};

/// A 2x2 matrix over `F_3`, entries reduced mod 3.
pub type Mat = [[u64; 2]; 2];

pub const IDENTITY: Mat = [[1, 0], [0, 1]];
/// `tau = (1 1 / -1 1)` with `-1 = 2` in `F_3`.
pub const TAU: Mat = [[1, 1], [2, 1]];
/// `c = (1 0 / 0 -1)`.
pub const C: Mat = [[1, 0], [0, 2]];

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let mut out = [[0u64; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = (a[i][0] * b[0][j] + a[i][1] * b[1][j]) % 3;
        }
    }
    out
}

pub fn mat_pow(a: &Mat, e: u32) -> Mat {
    let mut out = IDENTITY;
    for _ in 0..e {
        out = mat_mul(&out, a);
    }
    out
}

pub fn det(a: &Mat) -> u64 {
    (a[0][0] * a[1][1] + 2 * a[0][1] * a[1][0]) % 3 // minus is times 2 mod 3
}

/// Multiplicative order, capped at the order of `GL_2(F_3)`.
pub fn order(a: &Mat) -> u32 {
    let mut power = *a;
    for e in 1..=48 {
        if power == IDENTITY {
            return e;
        }
        power = mat_mul(&power, a);
    }
    panic!("element order exceeds |GL_2(F_3)| = 48");
}

/// Closure of a generating set under multiplication.
pub fn generated_group(generators: &[Mat]) -> Vec<Mat> {
    let mut elements = vec![IDENTITY];
    let mut frontier = vec![IDENTITY];
    while let Some(m) = frontier.pop() {
        for g in generators {
            let next = mat_mul(&m, g);
            if !elements.contains(&next) {
                elements.push(next);
                frontier.push(next);
            }
        }
    }
    elements
}

/// Verify the structure of the 2-Sylow subgroup generated by `c` and `tau`
/// and of its non-abelian subgroup `<tau^2, c tau>` inside `SL_2(F_3)`.
pub fn sylow2_check() -> VerificationReport {
    let start = std::time::Instant::now();
    let mut report = VerificationReport::new("sylow2");
    report.set_input("tau", "(1 1 / -1 1) over F_3");
    report.set_input("c", "(1 0 / 0 -1) over F_3");

    report.push(Check::exact(
        "order-tau",
        "tau has order 8",
        order(&TAU).to_string(),
        "8",
        Provenance::Stated,
    ));
    report.push(Check::exact(
        "order-c",
        "c has order 2",
        order(&C).to_string(),
        "2",
        Provenance::Stated,
    ));
    report.push(Check::holds(
        "braid-relation",
        "c tau = tau^3 c",
        mat_mul(&C, &TAU) == mat_mul(&mat_pow(&TAU, 3), &C),
        Provenance::Stated,
    ));

    let full = generated_group(&[C, TAU]);
    report.set_value("group_order", serde_json::json!(full.len()));
    report.push(Check::exact(
        "group-order",
        "<c, tau> has order 16",
        full.len().to_string(),
        "16",
        Provenance::Stated,
    ));

    let tau2 = mat_pow(&TAU, 2);
    let ctau = mat_mul(&C, &TAU);
    report.push(Check::exact(
        "generator-dets",
        "det(tau^2) = det(c tau) = 1",
        format!("{},{}", det(&tau2), det(&ctau)),
        "1,1",
        Provenance::Derived,
    ));
    let sub = generated_group(&[tau2, ctau]);
    report.set_value("subgroup_order", serde_json::json!(sub.len()));
    report.push(Check::holds(
        "subgroup-in-sl2",
        "every element of <tau^2, c tau> has determinant 1",
        sub.iter().all(|m| det(m) == 1),
        Provenance::Derived,
    ));
    report.push(Check::exact(
        "subgroup-order",
        "<tau^2, c tau> has order 8",
        sub.len().to_string(),
        "8",
        Provenance::Derived,
    ));
    report.push(Check::holds(
        "non-abelian",
        "(c tau) tau^2 differs from tau^2 (c tau)",
        mat_mul(&ctau, &tau2) != mat_mul(&tau2, &ctau),
        Provenance::Stated,
    ));

    report.runtime_ms = start.elapsed().as_millis() as u64;
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_arithmetic() {
        assert_eq!(mat_mul(&TAU, &IDENTITY), TAU);
        assert_eq!(det(&TAU), 2); // det tau = 1 - (-1) = 2 = -1 mod 3
        assert_eq!(det(&C), 2);
        assert_eq!(mat_pow(&TAU, 8), IDENTITY);
        assert_ne!(mat_pow(&TAU, 4), IDENTITY);
    }

    #[test]
    fn group_orders() {
        assert_eq!(order(&TAU), 8);
        assert_eq!(order(&C), 2);
        assert_eq!(generated_group(&[C, TAU]).len(), 16);
        assert_eq!(generated_group(&[mat_pow(&TAU, 2), mat_mul(&C, &TAU)]).len(), 8);
    }

    #[test]
    fn report_passes() {
        let report = sylow2_check();
        assert!(report.passed(), "{}", report.to_text());
        assert_eq!(report.checks.len(), 8);
    }
}
