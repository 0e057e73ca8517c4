//! Gaussian elimination over a finite field: rank, span membership, and a
//! reduced row-echelon form with deterministic pivot choice.

use crate::field::{FieldElement, FiniteField};

/// Reduce rows in place to row-echelon form; returns the rank. Pivots are
/// chosen left to right, rows processed in order, so the result is
/// deterministic.
pub fn row_reduce(field: &FiniteField, rows: &mut Vec<Vec<FieldElement>>) -> usize {
    let ncols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    for row in rows.iter() {
        assert_eq!(row.len(), ncols, "ragged matrix");
    }
    let mut rank = 0;
    for col in 0..ncols {
        // Find a pivot row at or below `rank`.
        let Some(pivot) = (rank..rows.len()).find(|&i| !field.is_zero(&rows[i][col])) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = field.inv(&rows[rank][col]);
        for c in 0..ncols {
            rows[rank][c] = field.mul(&rows[rank][c], &inv);
        }
        for i in 0..rows.len() {
            if i != rank && !field.is_zero(&rows[i][col]) {
                let factor = rows[i][col].clone();
                for c in 0..ncols {
                    let t = field.mul(&factor, &rows[rank][c]);
                    rows[i][c] = field.sub(&rows[i][c], &t);
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rank
}

pub fn rank(field: &FiniteField, rows: &[Vec<FieldElement>]) -> usize {
    let mut m = rows.to_vec();
    row_reduce(field, &mut m)
}

/// Does `v` lie in the row span of `basis`?
pub fn in_span(field: &FiniteField, basis: &[Vec<FieldElement>], v: &[FieldElement]) -> bool {
    let base_rank = rank(field, basis);
    let mut extended = basis.to_vec();
    extended.push(v.to_vec());
    rank(field, &extended) == base_rank
}

/// Do two row sets span the same subspace?
pub fn same_span(field: &FiniteField, a: &[Vec<FieldElement>], b: &[Vec<FieldElement>]) -> bool {
    let ra = rank(field, a);
    let rb = rank(field, b);
    if ra != rb {
        return false;
    }
    let mut joint = a.to_vec();
    joint.extend(b.iter().cloned());
    rank(field, &joint) == ra
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FiniteField {
        FiniteField::new(3, 1).unwrap()
    }

    fn row(field: &FiniteField, vals: &[i64]) -> Vec<FieldElement> {
        vals.iter().map(|&v| field.from_i64(v)).collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        let f = f3();
        let rows = vec![row(&f, &[1, 2, 0]), row(&f, &[2, 4, 0]), row(&f, &[0, 0, 1])];
        // Second row is twice the first.
        assert_eq!(rank(&f, &rows), 2);
    }

    #[test]
    fn span_membership() {
        let f = f3();
        let basis = vec![row(&f, &[1, 1, 0]), row(&f, &[0, 0, 1])];
        assert!(in_span(&f, &basis, &row(&f, &[2, 2, 1])));
        assert!(!in_span(&f, &basis, &row(&f, &[1, 0, 0])));
    }

    #[test]
    fn span_equality_is_basis_independent() {
        let f = f3();
        let a = vec![row(&f, &[1, 0]), row(&f, &[0, 1])];
        let b = vec![row(&f, &[1, 1]), row(&f, &[1, 2])];
        assert!(same_span(&f, &a, &b));
        let c = vec![row(&f, &[1, 1])];
        assert!(!same_span(&f, &a, &c));
    }

    #[test]
    fn echelon_form_over_extension_field() {
        let f = FiniteField::new(3, 2).unwrap();
        let g = f.generator();
        let mut rows = vec![
            vec![g.clone(), f.one()],
            vec![f.mul(&g, &g), f.mul(&g, &f.one())],
        ];
        // Second row is g times the first.
        assert_eq!(row_reduce(&f, &mut rows), 1);
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0][0], f.one());
    }
}
