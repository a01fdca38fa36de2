//! Lattice-point counting in bounded rational polytopes and exact
//! polynomial fitting of the resulting counting series.
//!
//! For a polytope `P` and a positive integer `n`, the points of `P` whose
//! coordinates can be written over the denominator `n` are in bijection with
//! the integer points of the dilation `nP`, so both counting functions here
//! reduce to exact enumeration of dilations. When the vertices are integral
//! the counts grow polynomially in `n`, interpolation recovers the
//! polynomial exactly, and the inclusive and interior polynomials determine
//! one another by the reflection `p°(n) = (-1)^d p(-n)`.

use crate::geometry::{Location, Polytope};
use crate::rat::{int, Rat};
use crate::{Error, Result};
use num::{BigInt, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A polynomial with rational coefficients, stored in ascending degree
/// order with trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polynomial {
    #[serde(with = "crate::rat::serde_rat_vec")]
    coeffs: Vec<Rat>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.len() > 1 && coeffs.last().map(|c| c.is_zero()) == Some(true) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Rat::zero());
        }
        Polynomial { coeffs }
    }

    pub fn coefficients(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Unique interpolating polynomial through distinct sample points.
    pub fn lagrange(points: &[(Rat, Rat)]) -> Polynomial {
        let mut coeffs = vec![Rat::zero(); points.len().max(1)];
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut num = vec![Rat::one()];
            let mut den = Rat::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if j == i {
                    continue;
                }
                let mut next = vec![Rat::zero(); num.len() + 1];
                for (k, c) in num.iter().enumerate() {
                    next[k + 1] += c;
                    next[k] -= c * xj;
                }
                num = next;
                den *= xi - xj;
            }
            for (k, c) in num.iter().enumerate() {
                coeffs[k] += yi * c / &den;
            }
        }
        Polynomial::new(coeffs)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() && self.degree() > 0 {
                continue;
            }
            let mag = c.abs();
            if wrote {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let coeff = if mag.is_one() && k > 0 {
                String::new()
            } else if mag.is_integer() {
                mag.to_string()
            } else {
                format!("({})", mag)
            };
            match k {
                0 => write!(f, "{}", if coeff.is_empty() { "1".into() } else { coeff })?,
                1 => write!(f, "{}n", coeff)?,
                _ => write!(f, "{}n^{}", coeff, k)?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// One row of a counting series: the dilation factor, the number of integer
/// points of the dilation, and the number in its relative interior.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub n: u32,
    pub inclusive: u64,
    pub interior: u64,
}

/// The fitted counting polynomials of a polytope with integral vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FittedCounts {
    pub inclusive: Polynomial,
    pub interior: Polynomial,
}

/// A polytope together with its counting series and, optionally, the
/// polynomials fitted to that series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountSeries {
    pub polytope: Polytope,
    pub values: Vec<CountRow>,
    pub fitted: Option<FittedCounts>,
}

/// Scales a polytope by a nonnegative integer factor. The zero dilation of
/// a non-empty polytope is the origin.
pub fn dilate(p: &Polytope, n: u32) -> Result<Polytope> {
    if p.is_empty() {
        return Ok(Polytope::empty(p.ambient()));
    }
    let k = int(i64::from(n));
    let scaled: Vec<Vec<Rat>> = p
        .vertices()
        .iter()
        .map(|v| v.iter().map(|x| x * &k).collect())
        .collect();
    Polytope::convex_hull(&scaled)
}

fn for_each_lattice_point(
    p: &Polytope,
    f: &mut impl FnMut(&[Rat], Location) -> Result<()>,
) -> Result<()> {
    if p.is_empty() {
        return Ok(());
    }
    let d = p.ambient();
    let mut lo = Vec::with_capacity(d);
    let mut hi = Vec::with_capacity(d);
    for i in 0..d {
        let coords = p.vertices().iter().map(|v| &v[i]);
        let min = coords.clone().min().expect("non-empty vertex list");
        let max = coords.max().expect("non-empty vertex list");
        lo.push(min.ceil().to_integer());
        hi.push(max.floor().to_integer());
    }
    let mut x = vec![Rat::zero(); d];
    descend(p, &lo, &hi, &mut x, 0, f)
}

fn descend(
    p: &Polytope,
    lo: &[BigInt],
    hi: &[BigInt],
    x: &mut Vec<Rat>,
    i: usize,
    f: &mut impl FnMut(&[Rat], Location) -> Result<()>,
) -> Result<()> {
    if i == lo.len() {
        let loc = p.locate(x)?;
        if loc != Location::Outside {
            f(x, loc)?;
        }
        return Ok(());
    }
    let mut v = lo[i].clone();
    while v <= hi[i] {
        x[i] = Rat::from_integer(v.clone());
        descend(p, lo, hi, x, i + 1, f)?;
        v += 1;
    }
    Ok(())
}

/// Enumerates the integer points of a polytope in lexicographic order —
/// all of them, or only those in the relative interior.
pub fn lattice_points(p: &Polytope, interior_only: bool) -> Result<Vec<Vec<Rat>>> {
    let mut out = Vec::new();
    for_each_lattice_point(p, &mut |x, loc| {
        if !interior_only || loc == Location::RelativeInterior {
            out.push(x.to_vec());
        }
        Ok(())
    })?;
    Ok(out)
}

/// Counts the points of `P` (and of its relative interior) expressible over
/// the denominator `n`: exactly the integer points of the dilation `nP`.
pub fn denominator_bounded_count(p: &Polytope, n: u32) -> Result<(u64, u64)> {
    let q = dilate(p, n)?;
    let (mut inclusive, mut interior) = (0u64, 0u64);
    for_each_lattice_point(&q, &mut |_, loc| {
        inclusive += 1;
        if loc == Location::RelativeInterior {
            interior += 1;
        }
        Ok(())
    })?;
    Ok((inclusive, interior))
}

/// The counting series of a polytope for dilation factors `0..=up_to`, with
/// no polynomial fit attached.
pub fn count_series(p: &Polytope, up_to: u32) -> Result<CountSeries> {
    let mut values = Vec::with_capacity(up_to as usize + 1);
    for n in 0..=up_to {
        let (inclusive, interior) = denominator_bounded_count(p, n)?;
        values.push(CountRow {
            n,
            inclusive,
            interior,
        });
    }
    Ok(CountSeries {
        polytope: p.clone(),
        values,
        fitted: None,
    })
}

/// Fits the counting polynomials of a polytope with integral vertices. The
/// degree must equal the polytope's dimension. The inclusive polynomial is
/// interpolated through dilations `0..=d` (the zero dilation contributes
/// the constant term 1), the interior polynomial through `1..=d+1`; both
/// must then reproduce the computed counts up to dilation `d+3` exactly.
pub fn fit_count_polynomial(p: &Polytope, degree: usize) -> Result<CountSeries> {
    let dim = p.dimension().ok_or(Error::EmptyPolytope)?;
    if degree != dim {
        return Err(Error::DimensionMismatch {
            left: degree,
            right: dim,
        });
    }
    for v in p.vertices() {
        if v.iter().any(|x| !x.is_integer()) {
            return Err(Error::NonIntegralVertices);
        }
    }
    let series = count_series(p, degree as u32 + 3)?;
    let values = &series.values;

    let sample = |range: std::ops::RangeInclusive<usize>, pick: fn(&CountRow) -> u64| {
        range
            .map(|n| (int(n as i64), int(pick(&values[n]) as i64)))
            .collect::<Vec<_>>()
    };
    let inclusive = Polynomial::lagrange(&sample(0..=degree, |r| r.inclusive));
    let interior = Polynomial::lagrange(&sample(1..=degree + 1, |r| r.interior));

    let validate = |poly: &Polynomial, from: usize, pick: fn(&CountRow) -> u64| -> Result<()> {
        for n in from..=degree + 3 {
            let predicted = poly.eval(&int(n as i64));
            let counted = pick(&values[n]);
            if predicted != int(counted as i64) {
                return Err(Error::FitValidation {
                    n: n as u32,
                    predicted: predicted.to_string(),
                    counted: counted.to_string(),
                });
            }
        }
        Ok(())
    };
    validate(&inclusive, degree + 1, |r| r.inclusive)?;
    validate(&interior, degree + 2, |r| r.interior)?;

    Ok(CountSeries {
        fitted: Some(FittedCounts {
            inclusive,
            interior,
        }),
        ..series
    })
}
