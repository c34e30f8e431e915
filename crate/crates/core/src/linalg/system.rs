//! Homogeneous linear systems whose unknowns are the entries of a map.
//!
//! Constraint assembly for derivation spaces, hom spaces and similar
//! solution-space computations: callers allocate variable indices, add rows,
//! and read off a deterministic kernel basis.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::matrix::Matrix;
use super::{Field, Scalar};

pub struct LinearSystem {
    field: Field,
    n_vars: usize,
    rows: Vec<BTreeMap<usize, Scalar>>,
}

impl LinearSystem {
    pub fn new(field: Field, n_vars: usize) -> Self {
        LinearSystem {
            field,
            n_vars,
            rows: Vec::new(),
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    /// Add one homogeneous constraint `Σ coeff · x_var = 0`. Repeated
    /// variables accumulate.
    pub fn add_row(&mut self, entries: impl IntoIterator<Item = (usize, Scalar)>) {
        let mut row: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (var, coeff) in entries {
            assert!(var < self.n_vars, "variable index out of range");
            let cur = row
                .remove(&var)
                .unwrap_or_else(|| Scalar::zero(self.field));
            let sum = cur.add(&coeff);
            if !sum.is_zero() {
                row.insert(var, sum);
            }
        }
        if !row.is_empty() {
            self.rows.push(row);
        }
    }

    /// Deterministic basis of the solution space, columns of an
    /// `n_vars × dim` matrix.
    pub fn solution_basis(&self) -> Matrix {
        if self.rows.is_empty() {
            return Matrix::identity(self.field, self.n_vars);
        }
        let mut m = Matrix::zero(self.field, self.rows.len(), self.n_vars);
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                m.set(r, *c, v);
            }
        }
        m.kernel_basis()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_a_small_system() {
        // x0 + x1 = 0, x1 + x2 = 0 over F2: solutions span (1,1,1).
        let mut sys = LinearSystem::new(Field::F2, 3);
        sys.add_row([(0, Scalar::one(Field::F2)), (1, Scalar::one(Field::F2))]);
        sys.add_row([(1, Scalar::one(Field::F2)), (2, Scalar::one(Field::F2))]);
        let b = sys.solution_basis();
        assert_eq!(b.cols(), 1);
        assert!(b.get(0, 0).is_one() && b.get(1, 0).is_one() && b.get(2, 0).is_one());
    }

    #[test]
    fn accumulates_repeated_variables() {
        // x0 + x0 = 0 over Q collapses to 2·x0 = 0.
        let mut sys = LinearSystem::new(Field::Q, 2);
        sys.add_row([
            (0, Scalar::one(Field::Q)),
            (0, Scalar::one(Field::Q)),
        ]);
        let b = sys.solution_basis();
        assert_eq!(b.cols(), 1); // only x1 free
        assert!(b.get(0, 0).is_zero());
    }
}
