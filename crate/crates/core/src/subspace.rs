//! Exact subspaces of an ambient coordinate space, stored in reduced
//! row-echelon form so that equality of subspaces is equality of values.

use crate::error::{Error, Result};
use crate::matrix::{dot, Matrix};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    /// Nonzero rows of an rref matrix; `ambient` columns.
    basis: Matrix,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
        }
    }

    pub fn span<V: AsRef<[Scalar]>>(ambient: usize, vectors: &[V]) -> Result<Self> {
        let rows: Vec<Vec<Scalar>> = vectors.iter().map(|v| v.as_ref().to_vec()).collect();
        let m = Matrix::from_rows(ambient, rows)?;
        let rref = m.rref();
        let basis = Matrix::from_rows(ambient, (0..rref.rank).map(|i| rref.matrix.row(i).to_vec()).collect())?;
        Ok(Subspace { ambient, basis })
    }

    /// Span of the listed coordinate axes.
    pub fn coordinate(ambient: usize, axes: &[usize]) -> Self {
        let vectors: Vec<Vec<Scalar>> = axes.iter().map(|&a| crate::matrix::unit_vector(ambient, a)).collect();
        Subspace::span(ambient, &vectors).expect("unit vectors fit the ambient space")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vectors()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: v.len(),
            });
        }
        if v.iter().all(Scalar::is_zero) {
            return Ok(true);
        }
        let mut rows = self.vectors();
        rows.push(v.to_vec());
        Ok(Matrix::from_rows(self.ambient, rows)?.rank() == self.dim())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.sum(other)?.dim() == self.dim())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut rows = self.vectors();
        rows.extend(other.vectors());
        Subspace::span(self.ambient, &rows)
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        // a·S = b·T  ⇔  (a, b) ∈ ker [Sᵀ | −Tᵀ]
        let p = self.dim();
        let mut columns: Vec<Vec<Scalar>> = self.vectors();
        columns.extend(other.vectors().into_iter().map(|v| v.iter().map(|x| -x).collect()));
        let system = Matrix::from_columns(self.ambient, &columns)?;
        let vectors: Vec<Vec<Scalar>> = system
            .kernel()
            .into_iter()
            .map(|coeffs| self.combine(&coeffs[..p]))
            .collect();
        Subspace::span(self.ambient, &vectors)
    }

    /// `Σ coeffs[r] * basis[r]`.
    pub fn combine(&self, coeffs: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.ambient];
        for (r, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(self.basis.row(r)) {
                if !b.is_zero() {
                    *o += &(c * b);
                }
            }
        }
        out
    }

    /// Coordinates of `v` with respect to the echelon basis, if `v` lies in
    /// the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if !self.contains(v)? {
            return Ok(None);
        }
        let pivots = self.basis.rref().pivots;
        Ok(Some(pivots.iter().map(|&p| v[p].clone()).collect()))
    }

    /// The annihilator `{φ : φ(s) = 0 for all s}` as row vectors.
    pub fn annihilator(&self) -> Vec<Vec<Scalar>> {
        if self.is_zero() {
            return (0..self.ambient).map(|i| crate::matrix::unit_vector(self.ambient, i)).collect();
        }
        self.basis.kernel()
    }

    /// Image `{m v : v ∈ self}` under a linear map.
    pub fn image(&self, m: &Matrix) -> Result<Subspace> {
        if m.cols() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: m.cols(),
            });
        }
        let vectors: Vec<Vec<Scalar>> = self.vectors().iter().map(|v| m.mul_vec(v)).collect::<Result<_>>()?;
        Subspace::span(m.rows(), &vectors)
    }

    /// True when `φ(v) = 0` for every annihilator row `φ`; equivalent to
    /// [`Self::contains`] but reuses a precomputed annihilator.
    pub fn annihilated_by(annihilator: &[Vec<Scalar>], v: &[Scalar]) -> bool {
        annihilator.iter().all(|phi| dot(phi, v).is_zero())
    }
}

impl serde::Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Subspace", 2)?;
        st.serialize_field("ambient", &self.ambient)?;
        st.serialize_field("basis", &self.basis)?;
        st.end()
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} in {}) ", self.dim(), self.ambient)?;
        self.basis.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Scalar::from(x)).collect()
    }

    #[test]
    fn canonical_representative() {
        let a = Subspace::span(3, &[v(&[1, 1, 0]), v(&[0, 1, 0])]).unwrap();
        let b = Subspace::coordinate(3, &[0, 1]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn sums_and_intersections() {
        let xy = Subspace::coordinate(3, &[0, 1]);
        let yz = Subspace::coordinate(3, &[1, 2]);
        assert_eq!(xy.intersection(&yz).unwrap(), Subspace::coordinate(3, &[1]));
        assert!(xy.sum(&yz).unwrap().is_full());
        let diag = Subspace::span(3, &[v(&[1, 1, 1])]).unwrap();
        assert!(xy.intersection(&diag).unwrap().is_zero());
        assert!(xy.contains(&v(&[3, -2, 0])).unwrap());
        assert!(!xy.contains(&v(&[0, 0, 1])).unwrap());
    }

    #[test]
    fn coordinates_and_annihilator() {
        let s = Subspace::span(3, &[v(&[1, 0, 2]), v(&[0, 1, 3])]).unwrap();
        let w = v(&[2, -1, 1]);
        assert_eq!(s.coordinates(&w).unwrap(), Some(v(&[2, -1])));
        let ann = s.annihilator();
        assert_eq!(ann.len(), 1);
        assert!(Subspace::annihilated_by(&ann, &w));
        assert!(!Subspace::annihilated_by(&ann, &v(&[1, 0, 0])));
    }
}
