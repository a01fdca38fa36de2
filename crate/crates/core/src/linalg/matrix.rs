use crate::rat::{int, Rat};
use crate::{Error, Result};
use num::{One, Zero};
use serde::{Deserialize, Serialize};

/// Dense matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mat {
    rows: usize,
    cols: usize,
    #[serde(with = "crate::rat::serde_rat_vec")]
    data: Vec<Rat>,
}

/// Full solution set of `A x = b`: one particular solution plus a basis of
/// the homogeneous solutions.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineSolution {
    pub particular: Vec<Rat>,
    pub kernel: Vec<Vec<Rat>>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        for row in &rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    left: c,
                    right: row.len(),
                });
            }
        }
        Ok(Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Mat::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| int(v)).collect())
                .collect(),
        )
    }

    pub fn from_cols(cols: Vec<Vec<Rat>>) -> Result<Self> {
        Mat::from_rows(cols)?.transpose_ok()
    }

    fn transpose_ok(self) -> Result<Self> {
        Ok(self.transpose())
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn hstack(&self, other: &Mat) -> Result<Mat> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                left: self.rows,
                right: other.rows,
            });
        }
        let mut m = Mat::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(m)
    }

    pub fn vstack(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                left: self.cols,
                right: other.cols,
            });
        }
        let mut rows = self.row_vecs();
        rows.extend(other.row_vecs());
        Mat::from_rows(rows)
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                left: self.cols,
                right: other.rows,
            });
        }
        let mut m = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * other.get(k, j);
                    if !add.is_zero() {
                        let cur = m.get(i, j).clone();
                        m.set(i, j, cur + add);
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if self.cols != v.len() {
            return Err(Error::ShapeMismatch {
                rows: self.rows,
                cols: self.cols,
                len: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    /// Reduced row echelon form together with the pivot column indices.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    let a = m.get(r, j).clone();
                    let b = m.get(p, j).clone();
                    m.set(r, j, b);
                    m.set(p, j, a);
                }
            }
            let inv = m.get(r, c).clone();
            for j in 0..m.cols {
                let v = m.get(r, j) / &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone();
                    for j in 0..m.cols {
                        let v = m.get(i, j) - &f * m.get(r, j);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : A x = 0}` (one vector per free column).
    pub fn nullspace_vectors(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rat::zero(); self.cols];
                v[f] = Rat::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f).clone();
                }
                v
            })
            .collect()
    }

    /// Exact solve of `A x = b`; `None` when inconsistent.
    pub fn solve_affine(&self, b: &[Rat]) -> Result<Option<AffineSolution>> {
        if b.len() != self.rows {
            return Err(Error::ShapeMismatch {
                rows: self.rows,
                cols: self.cols,
                len: b.len(),
            });
        }
        let rhs = Mat::from_rows(b.iter().map(|v| vec![v.clone()]).collect())?;
        let aug = self.hstack(&rhs)?;
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut particular = vec![Rat::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            particular[p] = r.get(i, self.cols).clone();
        }
        Ok(Some(AffineSolution {
            particular,
            kernel: self.nullspace_vectors(),
        }))
    }
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}
