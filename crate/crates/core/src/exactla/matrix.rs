use std::fmt;

use super::{Field, LinAlgError, Scalar};

/// A coordinate vector over the session field.
pub type Vector = Vec<Scalar>;

/// Dense matrix over a single exact field, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with the row operations producing it:
/// `transform * original == reduced`.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: Matrix,
    pub transform: Matrix,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from integer rows. All rows must have equal length.
    pub fn from_i64_rows(field: Field, rows: &[Vec<i64>]) -> Result<Self, LinAlgError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinAlgError::DimensionMismatch { expected: cols, found: row.len() });
            }
            data.extend(row.iter().map(|&v| field.from_i64(v)));
        }
        Ok(Matrix { field, rows: rows.len(), cols, data })
    }

    /// Builds a `rows x columns.len()` matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vector]) -> Result<Self, LinAlgError> {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(LinAlgError::DimensionMismatch { expected: rows, found: col.len() });
            }
            for (r, v) in col.iter().enumerate() {
                m.check_field(v)?;
                m.data[r * m.cols + c] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn from_rows(field: Field, cols: usize, rows: &[Vector]) -> Result<Self, LinAlgError> {
        let mut m = Matrix::zeros(field, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(LinAlgError::DimensionMismatch { expected: cols, found: row.len() });
            }
            for (c, v) in row.iter().enumerate() {
                m.check_field(v)?;
                m.data[r * cols + c] = v.clone();
            }
        }
        Ok(m)
    }

    fn check_field(&self, v: &Scalar) -> Result<(), LinAlgError> {
        if self.field.owns(v) {
            Ok(())
        } else {
            Err(LinAlgError::FieldMismatch)
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> Result<&Scalar, LinAlgError> {
        if r >= self.rows || c >= self.cols {
            return Err(self.out_of_bounds(r, c));
        }
        Ok(&self.data[r * self.cols + c])
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) -> Result<(), LinAlgError> {
        if r >= self.rows || c >= self.cols {
            return Err(self.out_of_bounds(r, c));
        }
        self.check_field(&v)?;
        self.data[r * self.cols + c] = v;
        Ok(())
    }

    /// Adds `v` to the entry at `(r, c)`.
    pub fn add_at(&mut self, r: usize, c: usize, v: &Scalar) -> Result<(), LinAlgError> {
        let cur = self.get(r, c)?.clone();
        self.set(r, c, &cur + v)
    }

    fn out_of_bounds(&self, row: usize, col: usize) -> LinAlgError {
        LinAlgError::OutOfBounds { row, col, rows: self.rows, cols: self.cols }
    }

    // Panicking accessors for internal loops whose indices are bounded by construction.
    fn at(&self, r: usize, c: usize) -> &Scalar {
        assert!(r < self.rows && c < self.cols, "{}", self.out_of_bounds(r, c));
        &self.data[r * self.cols + c]
    }

    fn at_mut(&mut self, r: usize, c: usize) -> &mut Scalar {
        assert!(r < self.rows && c < self.cols, "{}", self.out_of_bounds(r, c));
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix, LinAlgError> {
        if self.cols != rhs.rows {
            return Err(LinAlgError::DimensionMismatch { expected: self.cols, found: rhs.rows });
        }
        if self.field != rhs.field {
            return Err(LinAlgError::FieldMismatch);
        }
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a * b;
                    let slot = out.at_mut(r, c);
                    *slot = &*slot + &prod;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vector, LinAlgError> {
        if v.len() != self.cols {
            return Err(LinAlgError::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        let mut out = vec![self.field.zero(); self.rows];
        for (r, slot) in out.iter_mut().enumerate() {
            for (c, x) in v.iter().enumerate() {
                let a = self.at(r, c);
                if a.is_zero() || x.is_zero() {
                    continue;
                }
                *slot = &*slot + &(a * x);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix, LinAlgError> {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix, LinAlgError> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let mut out = self.clone();
        for v in out.data.iter_mut() {
            *v = &*v * s;
        }
        out
    }

    fn zip_with(
        &self,
        rhs: &Matrix,
        op: impl Fn(&Scalar, &Scalar) -> Scalar,
    ) -> Result<Matrix, LinAlgError> {
        if self.shape() != rhs.shape() {
            return Err(LinAlgError::ShapeMismatch { left: self.shape(), right: rhs.shape() });
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| op(a, b)).collect();
        Ok(Matrix { field: self.field, rows: self.rows, cols: self.cols, data })
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &Matrix) -> Result<Matrix, LinAlgError> {
        if self.rows != rhs.rows {
            return Err(LinAlgError::DimensionMismatch { expected: self.rows, found: rhs.rows });
        }
        let mut out = Matrix::zeros(self.field, self.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at_mut(r, c) = self.at(r, c).clone();
            }
            for c in 0..rhs.cols {
                *out.at_mut(r, self.cols + c) = rhs.at(r, c).clone();
            }
        }
        Ok(out)
    }

    /// Block-diagonal sum `self ⊕ rhs`.
    pub fn direct_sum(&self, rhs: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows + rhs.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at_mut(r, c) = self.at(r, c).clone();
            }
        }
        for r in 0..rhs.rows {
            for c in 0..rhs.cols {
                *out.at_mut(self.rows + r, self.cols + c) = rhs.at(r, c).clone();
            }
        }
        out
    }

    /// Kronecker product: entry `(r1 * q + r2, c1 * t + c2)` is `self[r1, c1] * rhs[r2, c2]`
    /// where `rhs` is `q x t`.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows * rhs.rows, self.cols * rhs.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.at(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..rhs.rows {
                    for c2 in 0..rhs.cols {
                        *out.at_mut(r1 * rhs.rows + r2, c1 * rhs.cols + c2) = a * rhs.at(r2, c2);
                    }
                }
            }
        }
        out
    }

    /// Adds `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &Matrix) -> Result<(), LinAlgError> {
        if r0 + block.rows > self.rows || c0 + block.cols > self.cols {
            return Err(LinAlgError::DimensionMismatch { expected: self.rows, found: r0 + block.rows });
        }
        for r in 0..block.rows {
            for c in 0..block.cols {
                let v = self.at(r0 + r, c0 + c) + block.at(r, c);
                *self.at_mut(r0 + r, c0 + c) = v;
            }
        }
        Ok(())
    }

    /// Rows `range` as a new matrix.
    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            for c in 0..self.cols {
                *out.at_mut(i, c) = self.at(r, c).clone();
            }
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                *out.at_mut(r, j) = self.at(r, c).clone();
            }
        }
        out
    }

    /// Gauss-Jordan elimination to reduced row echelon form, tracking the row operations.
    pub fn echelon(&self) -> Echelon {
        let mut reduced = self.clone();
        let mut transform = Matrix::identity(self.field, self.rows);
        let pivots = reduced.reduce_in_place(Some(&mut transform));
        Echelon { reduced, transform, pivots }
    }

    fn reduce_in_place(&mut self, mut track: Option<&mut Matrix>) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            if let Some(t) = track.as_deref_mut() {
                t.swap_rows(row, p);
            }
            let inv = self.at(row, col).inverse().expect("pivot is nonzero");
            self.scale_row(row, &inv);
            if let Some(t) = track.as_deref_mut() {
                t.scale_row(row, &inv);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.at(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                self.axpy_row(r, row, &factor);
                if let Some(t) = track.as_deref_mut() {
                    t.axpy_row(r, row, &factor);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: &Scalar) {
        for c in 0..self.cols {
            let v = self.at_mut(r, c);
            *v = &*v * s;
        }
    }

    // row[target] -= factor * row[source]
    fn axpy_row(&mut self, target: usize, source: usize, factor: &Scalar) {
        for c in 0..self.cols {
            let s = self.at(source, c);
            if s.is_zero() {
                continue;
            }
            let delta = factor * s;
            let v = self.at_mut(target, c);
            *v = &*v - &delta;
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.reduce_in_place(None).len()
    }

    /// Basis of the null space `{v : self * v = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let mut m = self.clone();
        let pivots = m.reduce_in_place(None);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m.at(r, free);
            }
            basis.push(v);
        }
        basis
    }

    /// Some `x` with `self * x = b`, or `None` when `b` is outside the column space.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vector>, LinAlgError> {
        if b.len() != self.rows {
            return Err(LinAlgError::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        let e = self.echelon();
        let tb = e.transform.mul_vec(b)?;
        if tb[e.rank()..].iter().any(|v| !v.is_zero()) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &p) in e.pivots.iter().enumerate() {
            x[p] = tb[r].clone();
        }
        Ok(Some(x))
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let e = self.echelon();
        (e.rank() == self.rows).then_some(e.transform)
    }

    /// A left inverse `L` with `L * self = I` for a matrix of full column rank.
    pub fn left_inverse(&self) -> Option<Matrix> {
        let e = self.echelon();
        if e.rank() != self.cols {
            return None;
        }
        let top: Vec<usize> = (0..self.cols).collect();
        Some(e.transform.select_rows(&top))
    }

    /// Column indices forming a basis of the column space.
    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut m = self.clone();
        m.reduce_in_place(None)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.at(r, c))?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[Vec<i64>]) -> Matrix {
        Matrix::from_i64_rows(Field::Rational, rows).unwrap()
    }

    #[test]
    fn kronecker_and_blocks() {
        let a = q(&[vec![1, 2], vec![0, -1]]);
        let b = q(&[vec![0, 1]]);
        assert_eq!(a.kron(&b), q(&[vec![0, 1, 0, 2], vec![0, 0, 0, -1]]));
        assert_eq!(Matrix::identity(Field::Rational, 2).kron(&Matrix::identity(Field::Rational, 3)), Matrix::identity(Field::Rational, 6));
        let mut m = Matrix::zeros(Field::Rational, 3, 3);
        m.add_block(1, 1, &a).unwrap();
        m.add_block(1, 1, &a).unwrap();
        assert_eq!(m, q(&[vec![0, 0, 0], vec![0, 2, 4], vec![0, 0, -2]]));
        assert!(m.add_block(2, 2, &a).is_err());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(q(&[vec![1, 2], vec![2, 4]]).rank(), 1);
        assert_eq!(Matrix::zeros(Field::Rational, 3, 5).rank(), 0);
        for n in 0..5 {
            assert_eq!(Matrix::identity(Field::Rational, n).rank(), n);
        }
    }

    #[test]
    fn kernel_of_proportional_rows() {
        let m = q(&[vec![1, 2], vec![2, 4]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        // proportional to (2, -1)
        let v = &k[0];
        let ratio = &v[0] * &v[1].inverse().unwrap();
        assert_eq!(ratio, Field::Rational.from_i64(-2));
        assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
    }

    #[test]
    fn kernel_edge_cases() {
        assert!(q(&[vec![2, 1], vec![1, 1]]).kernel_basis().is_empty());
        assert_eq!(Matrix::zeros(Field::Rational, 2, 3).kernel_basis().len(), 3);
    }

    #[test]
    fn solve_examples() {
        let f = Field::Rational;
        let id = Matrix::identity(f, 3);
        let b: Vector = [4, -1, 7].iter().map(|&v| f.from_i64(v)).collect();
        assert_eq!(id.solve(&b).unwrap(), Some(b.clone()));

        let z = Matrix::zeros(f, 2, 2);
        assert_eq!(z.solve(&[f.one(), f.zero()]).unwrap(), None);

        let m = q(&[vec![1, 1]]);
        let x = m.solve(&[f.from_i64(3)]).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), vec![f.from_i64(3)]);

        assert!(m.solve(&[f.one(), f.one()]).is_err());
    }

    #[test]
    fn out_of_bounds_is_an_error() {
        let m = Matrix::zeros(Field::Rational, 2, 2);
        assert!(matches!(m.get(2, 0), Err(LinAlgError::OutOfBounds { .. })));
        let mut m = m;
        assert!(m.set(0, 5, Field::Rational.one()).is_err());
    }

    #[test]
    fn inverse_and_left_inverse() {
        let m = q(&[vec![2, 1], vec![1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv.mul(&m).unwrap(), Matrix::identity(Field::Rational, 2));
        let tall = q(&[vec![1, 0], vec![1, 1], vec![0, 3]]);
        let l = tall.left_inverse().unwrap();
        assert_eq!(l.mul(&tall).unwrap(), Matrix::identity(Field::Rational, 2));
        assert!(q(&[vec![1, 2], vec![2, 4]]).inverse().is_none());
    }
}
