//! Exact linear subspaces of a fixed coordinate space.
//!
//! A subspace is stored by its reduced-echelon basis matrix (rows are
//! basis vectors), which makes equality, membership, and quotient
//! bookkeeping canonical.

use std::fmt;

use num_traits::Zero;

use crate::linalg::Mat;
use crate::scalar::Rat;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    /// Reduced echelon basis, one row per basis vector.
    basis: Mat,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SubspaceError {
    /// `quotient_dim(V, W)` was called with `W ⊄ V`; this signals a
    /// broken closure/exactness inclusion upstream, not a user error.
    NotContained,
    AmbientMismatch {
        left: usize,
        right: usize,
    },
}

impl fmt::Display for SubspaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubspaceError::NotContained => {
                write!(f, "quotient denominator is not contained in the numerator")
            }
            SubspaceError::AmbientMismatch { left, right } => {
                write!(f, "ambient dimension mismatch: {left} vs {right}")
            }
        }
    }
}

impl std::error::Error for SubspaceError {}

impl Subspace {
    pub fn zero(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Mat::zeros(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Mat::identity(ambient),
        }
    }

    /// Span of the given vectors, reduced to echelon form.
    pub fn span(ambient: usize, vectors: &[Vec<Rat>]) -> Subspace {
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector length mismatch");
        }
        if vectors.is_empty() {
            return Subspace::zero(ambient);
        }
        let m = Mat::from_rows(vectors.to_vec());
        let (rref, pivots) = m.rref();
        let rows: Vec<Vec<Rat>> = (0..pivots.len()).map(|r| rref.row(r)).collect();
        let basis = if rows.is_empty() {
            Mat::zeros(0, ambient)
        } else {
            Mat::from_rows(rows)
        };
        Subspace { ambient, basis }
    }

    /// Kernel of the matrix as a map out of `ambient = m.cols()`.
    pub fn kernel_of(m: &Mat) -> Subspace {
        Subspace::span(m.cols(), &m.kernel_basis())
    }

    /// Column space of the matrix, inside `ambient = m.rows()`.
    pub fn image_of(m: &Mat) -> Subspace {
        let cols: Vec<Vec<Rat>> = (0..m.cols()).map(|c| m.col(c)).collect();
        Subspace::span(m.rows(), &cols)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rat>> {
        (0..self.basis.rows()).map(|r| self.basis.row(r)).collect()
    }

    pub fn basis_matrix(&self) -> &Mat {
        &self.basis
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        if self.dim() == 0 {
            return false;
        }
        // v ∈ rowspace(basis) iff basis^T x = v is solvable.
        self.basis.transpose().solve(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis_vectors().iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        let mut vectors = self.basis_vectors();
        vectors.extend(other.basis_vectors());
        Subspace::span(self.ambient, &vectors)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(self.ambient);
        }
        // Solve a·U = b·V: kernel of [U^T | -V^T].
        let ut = self.basis.transpose();
        let vt = other.basis.transpose().neg();
        let stacked = ut.hstack(&vt);
        let mut vectors = Vec::new();
        for k in stacked.kernel_basis() {
            let coeffs = &k[..self.dim()];
            let mut v = vec![Rat::zero(); self.ambient];
            for (i, c) in coeffs.iter().enumerate() {
                if Zero::is_zero(c) {
                    continue;
                }
                for j in 0..self.ambient {
                    v[j] = &v[j] + c * self.basis.get(i, j);
                }
            }
            vectors.push(v);
        }
        Subspace::span(self.ambient, &vectors)
    }

    /// `dim V − dim W`, after asserting `W ⊆ V`.
    pub fn quotient_dim(&self, w: &Subspace) -> Result<usize, SubspaceError> {
        if self.ambient != w.ambient {
            return Err(SubspaceError::AmbientMismatch {
                left: self.ambient,
                right: w.ambient,
            });
        }
        if !w.is_subspace_of(self) {
            return Err(SubspaceError::NotContained);
        }
        Ok(self.dim() - w.dim())
    }

    /// Deterministic representatives of `self / w`: rows of the echelon
    /// basis of `self` that extend the echelon basis of `w`, in order.
    pub fn quotient_representatives(&self, w: &Subspace) -> Result<Vec<Vec<Rat>>, SubspaceError> {
        if !w.is_subspace_of(self) {
            return Err(SubspaceError::NotContained);
        }
        let mut current = w.clone();
        let mut reps = Vec::new();
        for v in self.basis_vectors() {
            if !current.contains(&v) {
                reps.push(v.clone());
                let mut vs = current.basis_vectors();
                vs.push(v);
                current = Subspace::span(self.ambient, &vs);
            }
        }
        debug_assert_eq!(reps.len(), self.dim() - w.dim());
        Ok(reps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rint;

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rint(x)).collect()
    }

    #[test]
    fn span_reduces() {
        let s = Subspace::span(3, &[v(&[1, 1, 0]), v(&[2, 2, 0]), v(&[0, 0, 1])]);
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&v(&[3, 3, 5])));
        assert!(!s.contains(&v(&[1, 0, 0])));
    }

    #[test]
    fn intersect_self_is_identity() {
        let s = Subspace::span(4, &[v(&[1, 0, 1, 0]), v(&[0, 1, 0, 1])]);
        assert_eq!(s.intersect(&s), s);
    }

    #[test]
    fn intersect_planes() {
        let a = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]);
        let i = a.intersect(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&v(&[0, 5, 0])));
    }

    #[test]
    fn quotient_requires_containment() {
        let a = Subspace::span(3, &[v(&[1, 0, 0])]);
        let b = Subspace::span(3, &[v(&[0, 1, 0])]);
        assert_eq!(a.quotient_dim(&b), Err(SubspaceError::NotContained));
        let whole = a.sum(&b);
        assert_eq!(whole.quotient_dim(&a), Ok(1));
        let reps = whole.quotient_representatives(&a).unwrap();
        assert_eq!(reps.len(), 1);
    }

    #[test]
    fn sum_and_dims() {
        let a = Subspace::span(4, &[v(&[1, 0, 0, 0])]);
        let b = Subspace::span(4, &[v(&[1, 1, 0, 0])]);
        assert_eq!(a.sum(&b).dim(), 2);
    }
}
