//! Double-description enumeration of the extreme rays of a pointed cone
//! `{ y : rows · y >= 0 }` over exact rationals.
//!
//! Incremental halfspace insertion: start from an invertible subsystem, then
//! for each remaining constraint keep the satisfied rays and replace the cut
//! pairs of adjacent rays with their boundary combinations. Adjacency is
//! decided algebraically (rank of the common tight set), which is always
//! valid for pointed cones.

use crate::linalg::{dot, Mat};
use crate::rat::{primitive_rat, Rat};
use crate::{Error, Result};
use num::{Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(n: usize) -> Self {
        BitSet {
            words: vec![0; n.div_ceil(64)],
        }
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    fn ones(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, word) in self.words.iter().enumerate() {
            let mut bits = *word;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                out.push(w * 64 + b);
                bits &= bits - 1;
            }
        }
        out
    }
}

fn rank_of_selected(rows: &[Vec<Rat>], idx: &[usize]) -> usize {
    if idx.is_empty() {
        return 0;
    }
    Mat::from_rows(idx.iter().map(|&i| rows[i].clone()).collect())
        .expect("selected rows share a length")
        .rank()
}

/// Tight-constraint sets for each ray over the first `n_processed` rows.
fn tight_sets(rows: &[Vec<Rat>], n_processed: usize, rays: &[Vec<Rat>]) -> Vec<BitSet> {
    rays.iter()
        .map(|r| {
            let mut t = BitSet::new(n_processed);
            for (i, row) in rows.iter().take(n_processed).enumerate() {
                if dot(row, r).is_zero() {
                    t.set(i);
                }
            }
            t
        })
        .collect()
}

/// Extreme rays of the pointed cone `{ y : rows[i] . y >= 0 for all i }`,
/// as primitive integer vectors in lexicographic order. A constraint matrix
/// of rank below the ambient dimension means the cone contains a line; that
/// case is reported as unbounded rather than enumerated.
pub fn extreme_rays(rows_in: &Mat) -> Result<Vec<Vec<Rat>>> {
    let dim = rows_in.ncols();
    if dim == 0 {
        return Ok(Vec::new());
    }
    let rows: Vec<Vec<Rat>> = rows_in
        .row_vecs()
        .into_iter()
        .filter(|r| r.iter().any(|v| !v.is_zero()))
        .collect();
    if Mat::from_rows(rows.clone())?.rank() < dim {
        return Err(Error::Unbounded);
    }

    // Reorder so an invertible subsystem comes first; its inverse columns
    // are the extreme rays of the initial cone.
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..rows.len() {
        if chosen.len() == dim {
            break;
        }
        let mut trial = chosen.clone();
        trial.push(i);
        if rank_of_selected(&rows, &trial) == trial.len() {
            chosen = trial;
        }
    }
    debug_assert_eq!(chosen.len(), dim);
    let mut ordered: Vec<Vec<Rat>> = chosen.iter().map(|&i| rows[i].clone()).collect();
    for (i, row) in rows.iter().enumerate() {
        if !chosen.contains(&i) {
            ordered.push(row.clone());
        }
    }
    let rows = ordered;

    let base = Mat::from_rows(rows[..dim].to_vec())?;
    let mut rays: Vec<Vec<Rat>> = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut e = vec![Rat::zero(); dim];
        e[j] = num::One::one();
        let sol = base
            .solve_affine(&e)?
            .expect("initial subsystem is invertible");
        rays.push(primitive_rat(&sol.particular));
    }

    for next in dim..rows.len() {
        let m = &rows[next];
        let values: Vec<Rat> = rays.iter().map(|r| dot(m, r)).collect();
        if values.iter().all(|v| !v.is_negative()) {
            continue;
        }
        let tights = tight_sets(&rows, next, &rays);
        let mut kept: Vec<Vec<Rat>> = Vec::new();
        for (r, v) in rays.iter().zip(&values) {
            if !v.is_negative() {
                kept.push(r.clone());
            }
        }
        for (ip, vp) in values.iter().enumerate() {
            if !vp.is_positive() {
                continue;
            }
            for (im, vm) in values.iter().enumerate() {
                if !vm.is_negative() {
                    continue;
                }
                let common = tights[ip].and(&tights[im]).ones();
                if rank_of_selected(&rows, &common) != dim - 2 {
                    continue;
                }
                let combo: Vec<Rat> = rays[ip]
                    .iter()
                    .zip(&rays[im])
                    .map(|(p, mneg)| vp * mneg - vm * p)
                    .collect();
                let combo = primitive_rat(&combo);
                if !kept.contains(&combo) {
                    kept.push(combo);
                }
            }
        }
        rays = kept;
        if rays.is_empty() {
            break;
        }
    }

    rays.sort();
    Ok(rays)
}
