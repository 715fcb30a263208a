use super::{Field, LinAlgError, Matrix, Scalar, Vector};

/// A linear subspace of `field^ambient_dim`, held as an independent spanning list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient_dim: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    /// Wraps `basis`, rejecting it unless the vectors are independent.
    pub fn new(field: Field, ambient_dim: usize, basis: Vec<Vector>) -> Result<Self, LinAlgError> {
        let m = Matrix::from_columns(field, ambient_dim, &basis)?;
        if m.rank() != basis.len() {
            return Err(LinAlgError::DependentBasis);
        }
        Ok(Subspace { field, ambient_dim, basis })
    }

    /// The span of arbitrary vectors, pruned to an independent subset.
    pub fn span(field: Field, ambient_dim: usize, vectors: &[Vector]) -> Result<Self, LinAlgError> {
        let m = Matrix::from_columns(field, ambient_dim, vectors)?;
        let basis = m.pivot_columns();
        Ok(Subspace {
            field,
            ambient_dim,
            basis: basis.into_iter().map(|c| vectors[c].clone()).collect(),
        })
    }

    /// Span of the standard basis vectors at `coords`.
    pub fn coordinate(field: Field, ambient_dim: usize, coords: &[usize]) -> Self {
        let basis = coords
            .iter()
            .map(|&c| {
                let mut v = vec![field.zero(); ambient_dim];
                v[c] = field.one();
                v
            })
            .collect();
        Subspace { field, ambient_dim, basis }
    }

    pub fn zero(field: Field, ambient_dim: usize) -> Self {
        Subspace { field, ambient_dim, basis: Vec::new() }
    }

    pub fn full(field: Field, ambient_dim: usize) -> Self {
        let all: Vec<usize> = (0..ambient_dim).collect();
        Subspace::coordinate(field, ambient_dim, &all)
    }

    /// Column space of `m`.
    pub fn image(m: &Matrix) -> Self {
        let cols = m.pivot_columns();
        Subspace {
            field: m.field(),
            ambient_dim: m.rows(),
            basis: cols.into_iter().map(|c| m.column(c)).collect(),
        }
    }

    /// Null space of `m`.
    pub fn kernel(m: &Matrix) -> Self {
        Subspace {
            field: m.field(),
            ambient_dim: m.cols(),
            basis: m.kernel_basis(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// `ambient_dim x dim` matrix whose columns are the basis.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.field, self.ambient_dim, &self.basis)
            .expect("basis vectors have ambient length")
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool, LinAlgError> {
        Ok(self.basis_matrix().solve(v)?.is_some())
    }

    /// Whether every basis vector of `other` lies in `self`.
    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool, LinAlgError> {
        if other.ambient_dim != self.ambient_dim {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        let m = self.basis_matrix();
        for v in &other.basis {
            if m.solve(v)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality of spans.
    pub fn same_span(&self, other: &Subspace) -> Result<bool, LinAlgError> {
        Ok(self.dim() == other.dim() && self.contains_subspace(other)?)
    }

    /// Image of this subspace under `f`.
    pub fn map(&self, f: &Matrix) -> Result<Subspace, LinAlgError> {
        if f.cols() != self.ambient_dim {
            return Err(LinAlgError::DimensionMismatch { expected: f.cols(), found: self.ambient_dim });
        }
        let imgs = self
            .basis
            .iter()
            .map(|v| f.mul_vec(v))
            .collect::<Result<Vec<_>, _>>()?;
        Subspace::span(self.field, f.rows(), &imgs)
    }

    /// Sum of two subspaces of the same ambient space.
    pub fn join(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        if other.ambient_dim != self.ambient_dim {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::span(self.field, self.ambient_dim, &all)
    }
}

/// A surjection `q : field^ambient_dim -> field^(ambient_dim - dim sub)` with kernel exactly `sub`.
///
/// The target coordinates are the non-pivot coordinates of the reduced basis of `sub`,
/// so standard vectors on those coordinates form a section of `q`.
pub fn quotient_map(ambient_dim: usize, sub: &Subspace) -> Result<Matrix, LinAlgError> {
    Ok(QuotientData::new(ambient_dim, sub)?.map)
}

pub(crate) struct QuotientData {
    pub map: Matrix,
    /// Ambient coordinates whose unit vectors map to the standard basis of the quotient.
    pub section_coords: Vec<usize>,
}

impl QuotientData {
    pub fn new(ambient_dim: usize, sub: &Subspace) -> Result<Self, LinAlgError> {
        if sub.ambient_dim() != ambient_dim {
            return Err(LinAlgError::DimensionMismatch {
                expected: ambient_dim,
                found: sub.ambient_dim(),
            });
        }
        let field = sub.field();
        let rows = Matrix::from_rows(field, ambient_dim, sub.basis())?;
        let e = rows.echelon();
        if e.rank() != sub.dim() {
            return Err(LinAlgError::DependentBasis);
        }
        let mut is_pivot = vec![false; ambient_dim];
        for &p in &e.pivots {
            is_pivot[p] = true;
        }
        let section_coords: Vec<usize> = (0..ambient_dim).filter(|&c| !is_pivot[c]).collect();
        // q(v) = (v - sum_j v[p_j] * r_j) restricted to the non-pivot coordinates
        let mut map = Matrix::zeros(field, section_coords.len(), ambient_dim);
        for (qi, &c) in section_coords.iter().enumerate() {
            map.set(qi, c, field.one())?;
            for (j, &p) in e.pivots.iter().enumerate() {
                let r = e.reduced.get(j, c)?;
                if !r.is_zero() {
                    map.set(qi, p, -r)?;
                }
            }
        }
        Ok(QuotientData { map, section_coords })
    }

    /// `ambient x quotient` matrix of the section.
    pub fn section(&self) -> Matrix {
        let field = self.map.field();
        let mut s = Matrix::zeros(field, self.map.cols(), self.section_coords.len());
        for (j, &c) in self.section_coords.iter().enumerate() {
            s.set(c, j, field.one()).expect("section coordinate in range");
        }
        s
    }
}

/// The unique `g` with `g * q_src = q_dst * f`, where `f` must carry `src_sub` into `dst_sub`.
pub fn induced_on_quotient(
    f: &Matrix,
    src_sub: &Subspace,
    dst_sub: &Subspace,
) -> Result<Matrix, LinAlgError> {
    if f.cols() != src_sub.ambient_dim() {
        return Err(LinAlgError::DimensionMismatch { expected: f.cols(), found: src_sub.ambient_dim() });
    }
    if f.rows() != dst_sub.ambient_dim() {
        return Err(LinAlgError::DimensionMismatch { expected: f.rows(), found: dst_sub.ambient_dim() });
    }
    if !dst_sub.contains_subspace(&src_sub.map(f)?)? {
        return Err(LinAlgError::NotInvariant);
    }
    let src_q = QuotientData::new(src_sub.ambient_dim(), src_sub)?;
    let dst_q = QuotientData::new(dst_sub.ambient_dim(), dst_sub)?;
    dst_q.map.mul(f)?.mul(&src_q.section())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(field: Field, xs: &[i64]) -> Vector {
        xs.iter().map(|&x| field.from_i64(x)).collect()
    }

    #[test]
    fn quotient_examples() {
        let f = Field::Rational;
        let q0 = quotient_map(3, &Subspace::zero(f, 3)).unwrap();
        assert_eq!(q0, Matrix::identity(f, 3));

        let qf = quotient_map(3, &Subspace::full(f, 3)).unwrap();
        assert_eq!(qf.shape(), (0, 3));

        let sub = Subspace::new(f, 2, vec![v(f, &[1, 1])]).unwrap();
        let q = quotient_map(2, &sub).unwrap();
        assert_eq!(q.shape(), (1, 2));
        assert!(q.mul_vec(&v(f, &[1, 1])).unwrap().iter().all(Scalar::is_zero));
        assert_eq!(q.rank(), 1);
    }

    #[test]
    fn dependent_basis_rejected() {
        let f = Field::Rational;
        assert!(matches!(
            Subspace::new(f, 2, vec![v(f, &[1, 2]), v(f, &[2, 4])]),
            Err(LinAlgError::DependentBasis)
        ));
    }

    #[test]
    fn induced_examples() {
        let f = Field::Rational;
        let id = Matrix::identity(f, 2);
        let sub = Subspace::new(f, 2, vec![v(f, &[1, 0])]).unwrap();
        let g = induced_on_quotient(&id, &sub, &sub).unwrap();
        assert_eq!(g, Matrix::identity(f, 1));
        // commuting square g q_src = q_dst f
        let q = quotient_map(2, &sub).unwrap();
        assert_eq!(g.mul(&q).unwrap(), q.mul(&id).unwrap());
        // second coordinate survives
        assert_eq!(q.mul_vec(&v(f, &[0, 1])).unwrap(), v(f, &[1]));

        let g = induced_on_quotient(&id, &sub, &Subspace::full(f, 2)).unwrap();
        assert_eq!(g.rows(), 0);

        let swap = Matrix::from_i64_rows(f, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert!(matches!(
            induced_on_quotient(&swap, &sub, &sub),
            Err(LinAlgError::NotInvariant)
        ));
    }

    #[test]
    fn span_prunes_dependent_vectors() {
        let f = Field::Rational;
        let s = Subspace::span(f, 3, &[v(f, &[1, 0, 1]), v(f, &[2, 0, 2]), v(f, &[0, 1, 0])]).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&v(f, &[3, 5, 3])).unwrap());
        assert!(!s.contains(&v(f, &[1, 0, 0])).unwrap());
    }
}
