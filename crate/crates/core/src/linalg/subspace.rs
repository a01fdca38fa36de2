use super::matrix::{dot, Mat};
use crate::rat::Rat;
use crate::{Error, Result};
use num::Zero;
use serde::{Deserialize, Serialize};

/// A linear subspace in canonical form: the basis rows form an RREF matrix
/// with no zero rows, so two subspaces are equal iff their bases are equal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Mat::zeros(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Mat::identity(ambient),
        }
    }

    /// Canonicalize a spanning set.
    pub fn from_vectors(ambient: usize, vectors: &[Vec<Rat>]) -> Result<Self> {
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch {
                    left: ambient,
                    right: v.len(),
                });
            }
        }
        if vectors.is_empty() {
            return Ok(Subspace::zero(ambient));
        }
        let m = Mat::from_rows(vectors.to_vec())?;
        let (r, pivots) = m.rref();
        let basis = Mat::from_rows(
            (0..pivots.len()).map(|i| r.row(i).to_vec()).collect(),
        )?;
        Ok(Subspace { ambient, basis })
    }

    /// Span of the rows of `m`.
    pub fn from_rows(m: &Mat) -> Self {
        Subspace::from_vectors(m.ncols(), &m.row_vecs()).expect("rows have equal length")
    }

    /// Span of the columns of `m`.
    pub fn from_cols(m: &Mat) -> Self {
        Subspace::from_rows(&m.transpose())
    }

    pub fn nullspace(m: &Mat) -> Self {
        Subspace::from_vectors(m.ncols(), &m.nullspace_vectors())
            .expect("nullspace vectors have matching length")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rat>> {
        self.basis.row_vecs()
    }

    pub fn basis_matrix(&self) -> &Mat {
        &self.basis
    }

    pub fn contains(&self, v: &[Rat]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                left: self.ambient,
                right: v.len(),
            });
        }
        let mut rows = self.basis.row_vecs();
        rows.push(v.to_vec());
        let m = Mat::from_rows(rows)?;
        Ok(m.rank() == self.dim())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        for v in other.basis_vectors() {
            if !self.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut rows = self.basis.row_vecs();
        rows.extend(other.basis.row_vecs());
        Subspace::from_vectors(self.ambient, &rows)
    }

    /// `span(A) ∩ span(B)` via the kernel of `[Aᵀ | −Bᵀ]`.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        let a_t = self.basis.transpose();
        let b_t = other.basis.transpose();
        let neg_b = Mat::from_rows(
            b_t.row_vecs()
                .into_iter()
                .map(|row| row.into_iter().map(|v| -v).collect())
                .collect(),
        )?;
        let joint = a_t.hstack(&neg_b)?;
        let vectors: Vec<Vec<Rat>> = joint
            .nullspace_vectors()
            .into_iter()
            .map(|k| {
                let coeffs = &k[..self.dim()];
                let mut x = vec![Rat::zero(); self.ambient];
                for (c, row) in coeffs.iter().zip(self.basis.row_vecs()) {
                    if c.is_zero() {
                        continue;
                    }
                    for (xi, ri) in x.iter_mut().zip(row) {
                        *xi += c * &ri;
                    }
                }
                x
            })
            .collect();
        Subspace::from_vectors(self.ambient, &vectors)
    }

    /// Orthogonal complement in the full ambient space (standard dot product).
    pub fn orthogonal_complement(&self) -> Subspace {
        if self.is_zero() {
            return Subspace::full(self.ambient);
        }
        Subspace::nullspace(&self.basis)
    }

    /// Orthogonal complement of `self` inside `within`: `self⊥ ∩ within`.
    pub fn orthogonal_complement_within(&self, within: &Subspace) -> Result<Subspace> {
        self.orthogonal_complement().intersection(within)
    }

    /// Image under selecting the given coordinates (in order).
    pub fn project_coords(&self, coords: &[usize]) -> Result<Subspace> {
        for &c in coords {
            if c >= self.ambient {
                return Err(Error::DimensionMismatch {
                    left: self.ambient,
                    right: c,
                });
            }
        }
        let vectors: Vec<Vec<Rat>> = self
            .basis
            .row_vecs()
            .into_iter()
            .map(|row| coords.iter().map(|&c| row[c].clone()).collect())
            .collect();
        Subspace::from_vectors(coords.len(), &vectors)
    }

    /// `dim(self / other) = dim self − dim(self ∩ other)`.
    pub fn quotient_dim(&self, other: &Subspace) -> Result<usize> {
        Ok(self.dim() - self.intersection(other)?.dim())
    }

    /// Orthogonal projection of `v` onto this subspace (Gram solve).
    pub fn project_vector(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                left: self.ambient,
                right: v.len(),
            });
        }
        if self.is_zero() {
            return Ok(vec![Rat::zero(); self.ambient]);
        }
        let b = &self.basis;
        let gram = b.mul(&b.transpose())?;
        let rhs = b.mul_vec(v)?;
        let sol = gram
            .solve_affine(&rhs)?
            .expect("Gram matrix of independent rows is invertible");
        let mut out = vec![Rat::zero(); self.ambient];
        for (c, row) in sol.particular.iter().zip(b.row_vecs()) {
            for (oi, ri) in out.iter_mut().zip(row) {
                *oi += c * &ri;
            }
        }
        Ok(out)
    }

    /// Coordinates of `v` in this basis, if `v` lies in the subspace.
    pub fn coordinates_of(&self, v: &[Rat]) -> Result<Option<Vec<Rat>>> {
        if !self.contains(v)? {
            return Ok(None);
        }
        let bt = self.basis.transpose();
        Ok(bt.solve_affine(v)?.map(|s| s.particular))
    }
}

/// Convenience: is `v` orthogonal to every basis vector of `s`?
pub fn orthogonal_to(v: &[Rat], s: &Subspace) -> bool {
    s.basis_vectors().iter().all(|b| dot(v, b).is_zero())
}
