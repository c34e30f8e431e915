//! Dense exact matrices: bit-packed over F2, arbitrary-precision over Q.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{Field, Scalar};

/// Bit-packed F2 matrix. Unused high bits of the last word of every row are
/// kept zero so that equality and hashing are structural.
#[derive(Debug, Clone, PartialEq, Eq)]
struct BitMatrix {
    words_per_row: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    fn new(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64);
        BitMatrix {
            words_per_row,
            data: vec![0u64; rows * words_per_row],
        }
    }

    #[inline]
    fn get(&self, r: usize, c: usize) -> bool {
        (self.data[r * self.words_per_row + c / 64] >> (c % 64)) & 1 == 1
    }

    #[inline]
    fn set(&mut self, r: usize, c: usize, v: bool) {
        let w = &mut self.data[r * self.words_per_row + c / 64];
        if v {
            *w |= 1u64 << (c % 64);
        } else {
            *w &= !(1u64 << (c % 64));
        }
    }

    #[inline]

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        let w = self.words_per_row;
        let (a, b) = (src * w, dst * w);
        for k in 0..w {
            let v = self.data[a + k];
            self.data[b + k] ^= v;
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let w = self.words_per_row;
        for k in 0..w {
            self.data.swap(i * w + k, j * w + k);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    F2(BitMatrix),
    Q(Vec<BigRational>), // row-major
}

/// An exact matrix over the session field. Rows act on column vectors:
/// a map `f: V -> W` is a `dim W x dim V` matrix with `f(v) = M v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    repr: Repr,
}

/// Result of deterministic row reduction.
#[derive(Debug, Clone)]
pub struct Rref {
    /// The reduced row-echelon form.
    pub reduced: Matrix,
    /// Pivot column of each pivot row, in row order (strictly increasing).
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl Matrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Self {
        let repr = match field {
            Field::F2 => Repr::F2(BitMatrix::new(rows, cols)),
            Field::Q => Repr::Q(vec![BigRational::zero(); rows * cols]),
        };
        Matrix { rows, cols, repr }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, &Scalar::one(field));
        }
        m
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut m = Matrix::zero(field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = f(r, c);
                if !v.is_zero() {
                    m.set(r, c, &v);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        match &self.repr {
            Repr::F2(_) => Field::F2,
            Repr::Q(_) => Field::Q,
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        assert!(r < self.rows && c < self.cols, "index out of range");
        match &self.repr {
            Repr::F2(b) => Scalar::F2(b.get(r, c)),
            Repr::Q(e) => Scalar::Q(e[r * self.cols + c].clone()),
        }
    }

    pub fn set(&mut self, r: usize, c: usize, v: &Scalar) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        match (&mut self.repr, v) {
            (Repr::F2(b), Scalar::F2(x)) => b.set(r, c, *x),
            (Repr::Q(e), Scalar::Q(x)) => e[r * self.cols + c] = x.clone(),
            _ => panic!("scalar field does not match matrix field"),
        }
    }

    pub fn add_assign_entry(&mut self, r: usize, c: usize, v: &Scalar) {
        let cur = self.get(r, c);
        self.set(r, c, &cur.add(v));
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::F2(b) => b.data.iter().all(|w| *w == 0),
            Repr::Q(e) => e.iter().all(|x| x.is_zero()),
        }
    }

    pub fn neg(&self) -> Matrix {
        match &self.repr {
            Repr::F2(_) => self.clone(),
            Repr::Q(e) => Matrix {
                rows: self.rows,
                cols: self.cols,
                repr: Repr::Q(e.iter().map(|x| -x.clone()).collect()),
            },
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "row mismatch in add");
        assert_eq!(self.cols, other.cols, "col mismatch in add");
        match (&self.repr, &other.repr) {
            (Repr::F2(a), Repr::F2(b)) => {
                let mut out = a.clone();
                for (w, v) in out.data.iter_mut().zip(b.data.iter()) {
                    *w ^= v;
                }
                Matrix {
                    rows: self.rows,
                    cols: self.cols,
                    repr: Repr::F2(out),
                }
            }
            (Repr::Q(a), Repr::Q(b)) => Matrix {
                rows: self.rows,
                cols: self.cols,
                repr: Repr::Q(a.iter().zip(b.iter()).map(|(x, y)| x + y).collect()),
            },
            _ => panic!("mixed fields in matrix add"),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        match (&self.repr, s) {
            (Repr::F2(_), Scalar::F2(b)) => {
                if *b {
                    self.clone()
                } else {
                    Matrix::zero(Field::F2, self.rows, self.cols)
                }
            }
            (Repr::Q(e), Scalar::Q(x)) => Matrix {
                rows: self.rows,
                cols: self.cols,
                repr: Repr::Q(e.iter().map(|y| y * x).collect()),
            },
            _ => panic!("mixed fields in scale"),
        }
    }

    /// Matrix product: `self * other`, composing maps right-to-left.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, other.rows,
            "inner dimension mismatch in matrix product"
        );
        match (&self.repr, &other.repr) {
            (Repr::F2(a), Repr::F2(b)) => {
                let mut out = BitMatrix::new(self.rows, other.cols);
                let w = out.words_per_row;
                for i in 0..self.rows {
                    for j in 0..self.cols {
                        if a.get(i, j) {
                            let (dst, src) = (i * w, j * w);
                            for k in 0..w {
                                let v = b.data[src + k];
                                out.data[dst + k] ^= v;
                            }
                        }
                    }
                }
                Matrix {
                    rows: self.rows,
                    cols: other.cols,
                    repr: Repr::F2(out),
                }
            }
            (Repr::Q(a), Repr::Q(b)) => {
                let mut out = vec![BigRational::zero(); self.rows * other.cols];
                for i in 0..self.rows {
                    for j in 0..self.cols {
                        let x = &a[i * self.cols + j];
                        if x.is_zero() {
                            continue;
                        }
                        for k in 0..other.cols {
                            let y = &b[j * other.cols + k];
                            if !y.is_zero() {
                                out[i * other.cols + k] += x * y;
                            }
                        }
                    }
                }
                Matrix {
                    rows: self.rows,
                    cols: other.cols,
                    repr: Repr::Q(out),
                }
            }
            _ => panic!("mixed fields in matrix product"),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.field(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if !v.is_zero() {
                    out.set(c, r, &v);
                }
            }
        }
        out
    }

    /// Stack side by side: `[self | rhs | ...]`.
    pub fn hstack(parts: &[&Matrix]) -> Matrix {
        assert!(!parts.is_empty());
        let rows = parts[0].rows;
        let field = parts[0].field();
        let cols: usize = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zero(field, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack row mismatch");
            for r in 0..rows {
                for c in 0..m.cols {
                    let v = m.get(r, c);
                    if !v.is_zero() {
                        out.set(r, off + c, &v);
                    }
                }
            }
            off += m.cols;
        }
        out
    }

    /// Stack vertically.
    pub fn vstack(parts: &[&Matrix]) -> Matrix {
        assert!(!parts.is_empty());
        let cols = parts[0].cols;
        let field = parts[0].field();
        let rows: usize = parts.iter().map(|m| m.rows).sum();
        let mut out = Matrix::zero(field, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.cols, cols, "vstack col mismatch");
            for r in 0..m.rows {
                for c in 0..cols {
                    let v = m.get(r, c);
                    if !v.is_zero() {
                        out.set(off + r, c, &v);
                    }
                }
            }
            off += m.rows;
        }
        out
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zero(self.field(), self.rows, idx.len());
        for (k, &c) in idx.iter().enumerate() {
            for r in 0..self.rows {
                let v = self.get(r, c);
                if !v.is_zero() {
                    out.set(r, k, &v);
                }
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zero(self.field(), idx.len(), self.cols);
        for (k, &r) in idx.iter().enumerate() {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if !v.is_zero() {
                    out.set(k, c, &v);
                }
            }
        }
        out
    }

    pub fn column(&self, c: usize) -> Matrix {
        self.select_columns(&[c])
    }

    /// Deterministic reduced row-echelon form. Pivot choice: scan columns
    /// left to right, take the lowest-index candidate row.
    pub fn rref(&self) -> Rref {
        match &self.repr {
            Repr::F2(_) => self.rref_f2(),
            Repr::Q(_) => self.rref_q(),
        }
    }

    fn rref_f2(&self) -> Rref {
        let mut m = match &self.repr {
            Repr::F2(b) => b.clone(),
            _ => unreachable!(),
        };
        let mut pivots = Vec::new();
        let mut next_row = 0usize;
        for c in 0..self.cols {
            if next_row >= self.rows {
                break;
            }
            let mut pivot = None;
            for r in next_row..self.rows {
                if m.get(r, c) {
                    pivot = Some(r);
                    break;
                }
            }
            let Some(p) = pivot else { continue };
            m.swap_rows(next_row, p);
            for r in 0..self.rows {
                if r != next_row && m.get(r, c) {
                    m.xor_row_into(next_row, r);
                }
            }
            pivots.push(c);
            next_row += 1;
        }
        Rref {
            reduced: Matrix {
                rows: self.rows,
                cols: self.cols,
                repr: Repr::F2(m),
            },
            pivots,
        }
    }

    fn rref_q(&self) -> Rref {
        let mut e = match &self.repr {
            Repr::Q(v) => v.clone(),
            _ => unreachable!(),
        };
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut next_row = 0usize;
        for c in 0..cols {
            if next_row >= self.rows {
                break;
            }
            let mut pivot = None;
            for r in next_row..self.rows {
                if !e[r * cols + c].is_zero() {
                    pivot = Some(r);
                    break;
                }
            }
            let Some(p) = pivot else { continue };
            if p != next_row {
                for k in 0..cols {
                    e.swap(p * cols + k, next_row * cols + k);
                }
            }
            let inv = e[next_row * cols + c].recip();
            for k in 0..cols {
                let v = &e[next_row * cols + k] * &inv;
                e[next_row * cols + k] = v;
            }
            for r in 0..self.rows {
                if r == next_row {
                    continue;
                }
                let factor = e[r * cols + c].clone();
                if factor.is_zero() {
                    continue;
                }
                for k in 0..cols {
                    let v = &e[r * cols + k] - &factor * &e[next_row * cols + k];
                    e[r * cols + k] = v;
                }
            }
            pivots.push(c);
            next_row += 1;
        }
        Rref {
            reduced: Matrix {
                rows: self.rows,
                cols,
                repr: Repr::Q(e),
            },
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the null space `{x : self * x = 0}`, as matrix columns in
    /// ascending free-column order. Deterministic.
    pub fn kernel_basis(&self) -> Matrix {
        let Rref { reduced, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|c| !is_pivot[*c]).collect();
        let mut out = Matrix::zero(self.field(), self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, &Scalar::one(self.field()));
            for (row, &pc) in pivots.iter().enumerate() {
                let v = reduced.get(row, fc);
                if !v.is_zero() {
                    out.set(pc, k, &v.neg());
                }
            }
        }
        out
    }

    /// Solve `self * X = rhs` for `X`; `None` when inconsistent. Free
    /// variables are set to zero, so the solution is deterministic.
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows, "solve: row mismatch");
        let aug = Matrix::hstack(&[self, rhs]);
        let Rref { reduced, pivots } = aug.rref();
        // Any pivot in the augmented block means inconsistency.
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zero(self.field(), self.cols, rhs.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            for k in 0..rhs.cols {
                let v = reduced.get(row, self.cols + k);
                if !v.is_zero() {
                    x.set(pc, k, &v);
                }
            }
        }
        Some(x)
    }

    /// Deterministic basis of the column space: the columns of `self` at the
    /// pivot positions of the RREF.
    pub fn column_space_basis(&self) -> Matrix {
        let piv = self.rref().pivots;
        self.select_columns(&piv)
    }

    /// Render as rows of scalars, for reports and debugging.
    pub fn render_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).render()).collect())
            .collect()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn zero_3x3_f2_has_rank_0_kernel_3() {
        let m = Matrix::zero(Field::F2, 3, 3);
        let r = m.rref();
        assert_eq!(r.rank(), 0);
        assert_eq!(m.kernel_basis().cols(), 3);
    }

    #[test]
    fn identity_4x4_q_has_rank_4_kernel_0() {
        let m = Matrix::identity(Field::Q, 4);
        assert_eq!(m.rank(), 4);
        assert_eq!(m.kernel_basis().cols(), 0);
    }

    // Independent elimination oracle: scans columns right-to-left and picks
    // the highest-index candidate row, i.e. the reversed pivot order.
    fn rank_reversed_pivots(m: &Matrix) -> usize {
        let mut work = m.clone();
        let mut used = vec![false; m.rows()];
        let mut rank = 0;
        for c in (0..m.cols()).rev() {
            let mut pivot = None;
            for r in (0..m.rows()).rev() {
                if !used[r] && !work.get(r, c).is_zero() {
                    pivot = Some(r);
                    break;
                }
            }
            let Some(p) = pivot else { continue };
            used[p] = true;
            rank += 1;
            let inv = match work.get(p, c) {
                Scalar::F2(_) => Scalar::F2(true),
                Scalar::Q(q) => Scalar::Q(q.recip()),
            };
            for r in 0..m.rows() {
                if r == p || work.get(r, c).is_zero() {
                    continue;
                }
                let f = work.get(r, c).mul(&inv).neg();
                for k in 0..m.cols() {
                    let v = work.get(r, k).add(&f.mul(&work.get(p, k)));
                    work.set(r, k, &v);
                }
            }
        }
        rank
    }

    #[test]
    fn random_f2_rank_matches_reversed_pivot_oracle() {
        let mut rng = StdRng::seed_from_u64(0x5eed);
        for _ in 0..50 {
            let m = Matrix::from_fn(Field::F2, 5, 8, |_, _| {
                Scalar::F2(rng.gen_bool(0.4))
            });
            assert_eq!(m.rank(), rank_reversed_pivots(&m));
        }
    }

    #[test]
    fn random_q_rank_matches_reversed_pivot_oracle() {
        let mut rng = StdRng::seed_from_u64(0xbeef);
        for _ in 0..20 {
            let m = Matrix::from_fn(Field::Q, 4, 6, |_, _| {
                Scalar::from_int(Field::Q, rng.gen_range(-3..=3))
            });
            assert_eq!(m.rank(), rank_reversed_pivots(&m));
        }
    }

    #[test]
    fn rank_nullity_on_random_matrices() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..40 {
            let rows = rng.gen_range(1..6);
            let cols = rng.gen_range(1..6);
            let m = Matrix::from_fn(Field::F2, rows, cols, |_, _| {
                Scalar::F2(rng.gen_bool(0.5))
            });
            assert_eq!(m.rank() + m.kernel_basis().cols(), cols);
            // Kernel columns are honest solutions.
            let k = m.kernel_basis();
            if k.cols() > 0 {
                assert!(m.mul(&k).is_zero());
            }
        }
    }

    #[test]
    fn solve_finds_exact_solutions() {
        let a = Matrix::from_fn(Field::Q, 3, 3, |r, c| {
            Scalar::from_int(Field::Q, ((r * 3 + c) % 5) as i64 + 1)
        });
        let x = Matrix::from_fn(Field::Q, 3, 2, |r, c| {
            Scalar::rational(r as i64 + 1, c as i64 + 2)
        });
        let b = a.mul(&x);
        let sol = a.solve(&b).expect("consistent");
        assert_eq!(a.mul(&sol), b);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = Matrix::zero(Field::F2, 2, 2);
        let mut b = Matrix::zero(Field::F2, 2, 1);
        b.set(0, 0, &Scalar::one(Field::F2));
        assert!(a.solve(&b).is_none());
    }
}
