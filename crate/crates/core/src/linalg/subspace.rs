use num_traits::Zero;

use super::Mat;
use crate::rational::Rational;

/// A linear subspace of `Q^n`, stored by a canonical basis.
///
/// The basis columns are the nonzero rows of the reduced row-echelon form of
/// any spanning set (taken as rows), transposed. Two spanning sets of the same
/// subspace therefore give identical representations and `==` is subspace
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Mat,
}

impl Subspace {
    /// The span of the columns of `spanning`.
    pub fn from_spanning(spanning: &Mat) -> Subspace {
        let rr = spanning.transpose().rref();
        let basis = rr.reduced.block(0, 0, rr.rank, spanning.rows()).transpose();
        Subspace {
            ambient_dim: spanning.rows(),
            basis,
        }
    }

    pub fn from_vectors(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Subspace {
        Subspace::from_spanning(&Mat::from_columns(ambient_dim, vectors))
    }

    pub fn zero(ambient_dim: usize) -> Subspace {
        Subspace {
            ambient_dim,
            basis: Mat::zeros(ambient_dim, 0),
        }
    }

    pub fn full(ambient_dim: usize) -> Subspace {
        Subspace {
            ambient_dim,
            basis: Mat::identity(ambient_dim),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Basis vectors as columns.
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        self.basis.solve_vec(v).is_ok()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.basis.columns().iter().all(|c| other.contains(c))
    }

    /// `self + other`.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::from_spanning(&Mat::hstack(&[&self.basis, &other.basis], self.ambient_dim))
    }

    /// `self ∩ other`, from the kernel of `[B_self | −B_other]`.
    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let neg = -&other.basis;
        let stacked = Mat::hstack(&[&self.basis, &neg], self.ambient_dim);
        let kernel = stacked.kernel_basis();
        let coords = kernel.basis().block(0, 0, self.dim(), kernel.dim());
        Subspace::from_spanning(&(&self.basis * &coords))
    }

    /// Image of the subspace under `m`.
    pub fn image_under(&self, m: &Mat) -> Subspace {
        Subspace::from_spanning(&(m * &self.basis))
    }

    /// True when `self ∩ other = 0` and the dimensions add up to the ambient one.
    pub fn is_complement_of(&self, other: &Subspace) -> bool {
        self.dim() + other.dim() == self.ambient_dim
            && Mat::hstack(&[&self.basis, &other.basis], self.ambient_dim).rank() == self.ambient_dim
    }

    /// Pushes a subspace given in this subspace's coordinates into ambient ones.
    pub fn lift(&self, inner: &Subspace) -> Subspace {
        Subspace::from_spanning(&(&self.basis * inner.basis()))
    }

    /// Coordinates of the columns of `m` (lying in this subspace) in its basis.
    pub fn coordinates(&self, m: &Mat) -> crate::Result<Mat> {
        self.basis.solve(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, d: &[i64]) -> Mat {
        Mat::from_i64(rows, cols, d)
    }

    #[test]
    fn canonical_representation() {
        let a = Subspace::from_spanning(&m(3, 2, &[1, 2, 1, 0, 0, 4]));
        let b = Subspace::from_spanning(&m(3, 3, &[3, 4, 1, 1, 2, -1, 4, 4, 4]));
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn sum_intersection() {
        let xy = Subspace::from_spanning(&m(3, 2, &[1, 0, 0, 1, 0, 0]));
        let yz = Subspace::from_spanning(&m(3, 2, &[0, 0, 1, 0, 0, 1]));
        assert_eq!(xy.sum(&yz), Subspace::full(3));
        assert_eq!(xy.intersection(&yz), Subspace::from_spanning(&m(3, 1, &[0, 1, 0])));
        assert!(xy.intersection(&Subspace::zero(3)).is_zero());
        assert!(Subspace::from_spanning(&m(3, 1, &[0, 0, 1])).is_complement_of(&xy));
        assert!(!yz.is_complement_of(&xy));
    }

    #[test]
    fn containment() {
        let s = Subspace::from_spanning(&m(2, 1, &[1, 1]));
        assert!(s.contains(&[Rational::from(3), Rational::from(3)]));
        assert!(!s.contains(&[Rational::from(1), Rational::from(0)]));
        assert!(Subspace::zero(2).is_subspace_of(&s));
        assert!(!Subspace::full(2).is_subspace_of(&s));
    }
}
