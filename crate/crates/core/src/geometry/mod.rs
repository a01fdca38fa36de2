//! Exact convex geometry: hulls, cones, polytope intersection, dimension,
//! interior rational points, and point-location queries.

mod dd;

use crate::linalg::{dot, Mat, Subspace};
use crate::lp;
use crate::rat::{int, primitive_rat, Rat};
use crate::{Error, Result};
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use dd::extreme_rays;

/// The halfspace `normal . x <= offset` (or, in an equality list, the
/// hyperplane `normal . x = offset`). Normals are primitive integer vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Halfspace {
    #[serde(with = "crate::rat::serde_rat_vec")]
    pub normal: Vec<Rat>,
    #[serde(with = "crate::rat::serde_rat")]
    pub offset: Rat,
}

impl Halfspace {
    pub fn eval(&self, x: &[Rat]) -> Rat {
        dot(&self.normal, x)
    }
}

/// Scale (normal, offset) by the positive factor that makes the normal a
/// primitive integer vector.
fn canonical_constraint(normal: &[Rat], offset: &Rat) -> Halfspace {
    let scaled = primitive_rat(normal);
    let j = normal
        .iter()
        .position(|v| !v.is_zero())
        .expect("constraint normal must be nonzero");
    let factor = &scaled[j] / &normal[j];
    Halfspace {
        normal: scaled,
        offset: offset * &factor,
    }
}

/// How a point sits relative to a polytope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Location {
    Outside,
    Boundary,
    RelativeInterior,
}

/// A bounded convex polytope carrying both representations: the extreme
/// points (V-rep) and the facet halfspaces plus affine-hull equalities
/// (H-rep). The two are cross-checked on construction. The empty polytope
/// stores no vertices and no constraints; `is_empty` is authoritative for it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polytope {
    ambient: usize,
    #[serde(with = "crate::rat::serde_rat_mat")]
    vertices: Vec<Vec<Rat>>,
    halfspaces: Vec<Halfspace>,
    equalities: Vec<Halfspace>,
}

fn first_nonzero_cols(m: &Mat) -> Vec<usize> {
    (0..m.nrows())
        .map(|i| {
            m.row(i)
                .iter()
                .position(|v| !v.is_zero())
                .expect("canonical basis rows are nonzero")
        })
        .collect()
}

fn affine_rank(points: &[Vec<Rat>]) -> usize {
    match points.split_first() {
        None => 0,
        Some((p0, rest)) => {
            let diffs: Vec<Vec<Rat>> = rest
                .iter()
                .map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect())
                .collect();
            if diffs.is_empty() {
                0
            } else {
                Mat::from_rows(diffs).expect("points share a length").rank()
            }
        }
    }
}

impl Polytope {
    pub fn empty(ambient: usize) -> Self {
        Polytope {
            ambient,
            vertices: Vec::new(),
            halfspaces: Vec::new(),
            equalities: Vec::new(),
        }
    }

    /// Hull of a non-empty rational point set: minimal V-rep, derived H-rep.
    pub fn convex_hull(points: &[Vec<Rat>]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyPointList);
        }
        let ambient = points[0].len();
        for p in points {
            if p.len() != ambient {
                return Err(Error::DimensionMismatch {
                    left: ambient,
                    right: p.len(),
                });
            }
        }
        let mut pts: Vec<Vec<Rat>> = Vec::new();
        for p in points {
            if !pts.contains(p) {
                pts.push(p.clone());
            }
        }

        // Affine hull: equalities from the orthogonal complement of the
        // difference span.
        let v0 = pts[0].clone();
        let diffs: Vec<Vec<Rat>> = pts
            .iter()
            .map(|p| p.iter().zip(&v0).map(|(a, b)| a - b).collect())
            .collect();
        let span = Subspace::from_vectors(ambient, &diffs)?;
        let dim = span.dim();
        let complement = span.orthogonal_complement();
        let equalities: Vec<Halfspace> = complement
            .basis_vectors()
            .iter()
            .map(|e| canonical_constraint(e, &dot(e, &v0)))
            .collect();

        if dim == 0 {
            return Ok(Polytope {
                ambient,
                vertices: vec![v0],
                halfspaces: Vec::new(),
                equalities,
            });
        }

        // The span's RREF pivot coordinates give an affine-invertible
        // projection of the hull onto full-dimensional coordinates.
        let pivots = first_nonzero_cols(span.basis_matrix());
        let proj: Vec<Vec<Rat>> = pts
            .iter()
            .map(|p| pivots.iter().map(|&j| p[j].clone()).collect())
            .collect();

        // Facets of the full-dimensional hull come from the extreme rays of
        // the homogenized dual cone { a : (q_i, 1) . a >= 0 }.
        let dual_rows = Mat::from_rows(
            proj.iter()
                .map(|q| {
                    let mut row = q.clone();
                    row.push(Rat::one());
                    row
                })
                .collect(),
        )?;
        let rays = dd::extreme_rays(&dual_rows)?;
        let mut halfspaces: Vec<Halfspace> = rays
            .iter()
            .map(|a| {
                let (m, a0) = a.split_at(dim);
                let mut normal = vec![Rat::zero(); ambient];
                for (t, &j) in pivots.iter().enumerate() {
                    normal[j] = -&m[t];
                }
                canonical_constraint(&normal, &a0[0])
            })
            .collect();
        halfspaces.sort_by(|a, b| (&a.normal, &a.offset).cmp(&(&b.normal, &b.offset)));

        // A point is extreme iff its tight constraints span the ambient
        // space.
        let eq_rows: Vec<Vec<Rat>> = equalities.iter().map(|e| e.normal.clone()).collect();
        let mut vertices: Vec<Vec<Rat>> = pts
            .into_iter()
            .filter(|p| {
                let mut tight = eq_rows.clone();
                for h in &halfspaces {
                    if h.eval(p) == h.offset {
                        tight.push(h.normal.clone());
                    }
                }
                Mat::from_rows(tight).expect("normals share a length").rank() == ambient
            })
            .collect();
        vertices.sort();

        let poly = Polytope {
            ambient,
            vertices,
            halfspaces,
            equalities,
        };
        poly.check_consistency(points);
        Ok(poly)
    }

    /// Cross-checks the two representations: every input point satisfies the
    /// H-rep, and every facet is tight on an affinely (dim-1)-dimensional
    /// vertex set.
    fn check_consistency(&self, source_points: &[Vec<Rat>]) {
        for p in source_points {
            for e in &self.equalities {
                assert!(e.eval(p) == e.offset, "point violates affine hull");
            }
            for h in &self.halfspaces {
                assert!(h.eval(p) <= h.offset, "point violates a facet");
            }
        }
        let dim = self.ambient - self.equalities.len();
        for h in &self.halfspaces {
            let tight: Vec<Vec<Rat>> = self
                .vertices
                .iter()
                .filter(|v| h.eval(v) == h.offset)
                .cloned()
                .collect();
            assert!(
                affine_rank(&tight) == dim - 1,
                "facet is not supported by a rank dim-1 vertex set"
            );
        }
    }

    /// Exact solution set of the given constraints, rebuilt in canonical
    /// form. Unbounded solution sets are rejected.
    pub fn from_hrep(
        ambient: usize,
        halfspaces: &[Halfspace],
        equalities: &[Halfspace],
    ) -> Result<Self> {
        for c in halfspaces.iter().chain(equalities) {
            if c.normal.len() != ambient {
                return Err(Error::DimensionMismatch {
                    left: ambient,
                    right: c.normal.len(),
                });
            }
        }
        // Eliminate the equalities first: x = x0 + B u.
        let (x0, basis_cols): (Vec<Rat>, Vec<Vec<Rat>>) = if equalities.is_empty() {
            (
                vec![Rat::zero(); ambient],
                Mat::identity(ambient).col_vecs(),
            )
        } else {
            let e = Mat::from_rows(equalities.iter().map(|q| q.normal.clone()).collect())?;
            let f: Vec<Rat> = equalities.iter().map(|q| q.offset.clone()).collect();
            match e.solve_affine(&f)? {
                None => return Ok(Polytope::empty(ambient)),
                Some(sol) => (sol.particular, sol.kernel),
            }
        };
        let inner_dim = basis_cols.len();
        if inner_dim == 0 {
            let ok = halfspaces.iter().all(|h| h.eval(&x0) <= h.offset);
            return if ok {
                Polytope::convex_hull(&[x0])
            } else {
                Ok(Polytope::empty(ambient))
            };
        }
        let b = Mat::from_cols(basis_cols)?;

        // Homogenize into the cone { (u, t) : t >= 0, substituted rows }.
        let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(halfspaces.len() + 1);
        for h in halfspaces {
            let reduced = b.transpose().mul_vec(&h.normal)?;
            let rhs = &h.offset - dot(&h.normal, &x0);
            let mut row: Vec<Rat> = reduced.iter().map(|v| -v).collect();
            row.push(rhs);
            rows.push(row);
        }
        let mut t_row = vec![Rat::zero(); inner_dim];
        t_row.push(Rat::one());
        rows.push(t_row);

        let rays = dd::extreme_rays(&Mat::from_rows(rows)?)?;
        let mut vertices = Vec::new();
        for ray in rays {
            let (u, t) = ray.split_at(inner_dim);
            if t[0].is_zero() {
                return Err(Error::Unbounded);
            }
            let scaled: Vec<Rat> = u.iter().map(|v| v / &t[0]).collect();
            let x: Vec<Rat> = x0
                .iter()
                .zip(b.mul_vec(&scaled)?)
                .map(|(a, d)| a + d)
                .collect();
            vertices.push(x);
        }
        if vertices.is_empty() {
            return Ok(Polytope::empty(ambient));
        }
        let poly = Polytope::convex_hull(&vertices)?;
        for v in poly.vertices() {
            for h in halfspaces {
                assert!(h.eval(v) <= h.offset, "computed vertex violates input");
            }
            for e in equalities {
                assert!(e.eval(v) == e.offset, "computed vertex violates input");
            }
        }
        Ok(poly)
    }

    pub fn intersect(&self, other: &Polytope) -> Result<Polytope> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        if self.is_empty() || other.is_empty() {
            return Ok(Polytope::empty(self.ambient));
        }
        let halfspaces: Vec<Halfspace> = self
            .halfspaces
            .iter()
            .chain(&other.halfspaces)
            .cloned()
            .collect();
        let equalities: Vec<Halfspace> = self
            .equalities
            .iter()
            .chain(&other.equalities)
            .cloned()
            .collect();
        Polytope::from_hrep(self.ambient, &halfspaces, &equalities)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Dimension of the affine hull; None for the empty polytope.
    pub fn dimension(&self) -> Option<usize> {
        if self.is_empty() {
            None
        } else {
            Some(self.ambient - self.equalities.len())
        }
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn equalities(&self) -> &[Halfspace] {
        &self.equalities
    }

    pub fn locate(&self, x: &[Rat]) -> Result<Location> {
        if x.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                left: self.ambient,
                right: x.len(),
            });
        }
        if self.is_empty() {
            return Ok(Location::Outside);
        }
        for e in &self.equalities {
            if e.eval(x) != e.offset {
                return Ok(Location::Outside);
            }
        }
        let mut tight = false;
        for h in &self.halfspaces {
            let v = h.eval(x);
            if v > h.offset {
                return Ok(Location::Outside);
            }
            if v == h.offset {
                tight = true;
            }
        }
        Ok(if tight {
            Location::Boundary
        } else {
            Location::RelativeInterior
        })
    }

    pub fn contains_point(&self, x: &[Rat]) -> Result<bool> {
        Ok(self.locate(x)? != Location::Outside)
    }

    /// The vertex centroid: a rational point in the relative interior (the
    /// unique point when the dimension is zero).
    pub fn interior_rational_point(&self) -> Result<Vec<Rat>> {
        if self.is_empty() {
            return Err(Error::EmptyPolytope);
        }
        let k = int(self.vertices.len() as i64);
        let mut c = vec![Rat::zero(); self.ambient];
        for v in &self.vertices {
            for (ci, vi) in c.iter_mut().zip(v) {
                *ci += vi;
            }
        }
        Ok(c.into_iter().map(|v| v / &k).collect())
    }
}

/// A polyhedral cone given by primitive integer generating rays.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cone {
    ambient: usize,
    #[serde(with = "crate::rat::serde_rat_mat")]
    generators: Vec<Vec<Rat>>,
}

impl Cone {
    /// Canonicalizes the rays: primitive scaling, zero rays dropped,
    /// duplicates removed, lexicographic order.
    pub fn from_rays(ambient: usize, rays: &[Vec<Rat>]) -> Result<Self> {
        let mut generators: Vec<Vec<Rat>> = Vec::new();
        for r in rays {
            if r.len() != ambient {
                return Err(Error::DimensionMismatch {
                    left: ambient,
                    right: r.len(),
                });
            }
            if r.iter().all(|v| v.is_zero()) {
                continue;
            }
            let p = primitive_rat(r);
            if !generators.contains(&p) {
                generators.push(p);
            }
        }
        generators.sort();
        Ok(Cone {
            ambient,
            generators,
        })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn generators(&self) -> &[Vec<Rat>] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Exact membership: is x a nonnegative combination of the generators?
    pub fn contains(&self, x: &[Rat]) -> Result<bool> {
        if x.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                left: self.ambient,
                right: x.len(),
            });
        }
        if x.iter().all(|v| v.is_zero()) {
            return Ok(true);
        }
        if self.generators.is_empty() {
            return Ok(false);
        }
        let constraints: Vec<lp::Constraint> = (0..self.ambient)
            .map(|j| {
                lp::Constraint::eq(
                    self.generators.iter().map(|g| g[j].clone()).collect(),
                    x[j].clone(),
                )
            })
            .collect();
        Ok(lp::feasible_point(self.generators.len(), &constraints)?.is_some())
    }
}

/// Cuts the cone with the hyperplane `normal . x = offset`, which must meet
/// every generating ray at a positive parameter: the vertices are the
/// per-ray intersection points, reduced to extreme points.
pub fn slice_cone(cone: &Cone, normal: &[Rat], offset: &Rat) -> Result<Polytope> {
    if normal.len() != cone.ambient() {
        return Err(Error::DimensionMismatch {
            left: cone.ambient(),
            right: normal.len(),
        });
    }
    if offset.is_negative() {
        return Err(Error::RayMissesHyperplane);
    }
    let mut points = Vec::new();
    for g in cone.generators() {
        let v = dot(normal, g);
        if !v.is_positive() {
            return Err(Error::RayMissesHyperplane);
        }
        let scale = offset / &v;
        points.push(g.iter().map(|x| x * &scale).collect());
    }
    if points.is_empty() {
        return Ok(Polytope::empty(cone.ambient()));
    }
    Polytope::convex_hull(&points)
}

/// Nonnegative rational weights summing to one with `sum w_i g_i = x`.
///
/// If x equals a generator, the indicator weights on its first occurrence
/// are returned. Otherwise the weights are the deterministic basic feasible
/// solution found by Bland-pivoted phase-one simplex; its support is an
/// affinely independent subset of the generators, i.e. a simplex containing
/// x.
pub fn rational_convex_combination(x: &[Rat], generators: &[Vec<Rat>]) -> Result<Vec<Rat>> {
    if generators.is_empty() {
        return Err(Error::EmptyPointList);
    }
    let ambient = x.len();
    for g in generators {
        if g.len() != ambient {
            return Err(Error::DimensionMismatch {
                left: ambient,
                right: g.len(),
            });
        }
    }
    if let Some(i) = generators.iter().position(|g| g.as_slice() == x) {
        let mut w = vec![Rat::zero(); generators.len()];
        w[i] = Rat::one();
        return Ok(w);
    }
    let mut constraints: Vec<lp::Constraint> = (0..ambient)
        .map(|j| {
            lp::Constraint::eq(
                generators.iter().map(|g| g[j].clone()).collect(),
                x[j].clone(),
            )
        })
        .collect();
    constraints.push(lp::Constraint::eq(
        vec![Rat::one(); generators.len()],
        Rat::one(),
    ));
    lp::feasible_point(generators.len(), &constraints)?.ok_or(Error::PointOutsideHull)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn pt(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn ptr(xs: &[(i64, i64)]) -> Vec<Rat> {
        xs.iter().map(|&(p, q)| rat(p, q)).collect()
    }

    #[test]
    fn single_point_is_zero_dimensional() {
        let p = Polytope::convex_hull(&[ptr(&[(1, 2), (1, 3)])]).unwrap();
        assert_eq!(p.dimension(), Some(0));
        assert_eq!(p.vertices().len(), 1);
        assert_eq!(p.equalities().len(), 2);
        assert!(p.halfspaces().is_empty());
        assert_eq!(
            p.locate(&ptr(&[(1, 2), (1, 3)])).unwrap(),
            Location::RelativeInterior
        );
    }

    #[test]
    fn two_points_make_a_segment() {
        let a = ptr(&[(1, 2), (1, 2), (0, 1)]);
        let b = ptr(&[(0, 1), (1, 2), (1, 2)]);
        let p = Polytope::convex_hull(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(p.dimension(), Some(1));
        assert_eq!(p.vertices(), &[b, a]); // lexicographic order
        assert_eq!(p.equalities().len(), 2);
        assert_eq!(p.halfspaces().len(), 2);
        let mid = ptr(&[(1, 4), (1, 2), (1, 4)]);
        assert_eq!(p.locate(&mid).unwrap(), Location::RelativeInterior);
        assert_eq!(p.interior_rational_point().unwrap(), mid);
    }

    #[test]
    fn unit_square_has_four_facets() {
        let p = Polytope::convex_hull(&[
            pt(&[0, 0]),
            pt(&[1, 0]),
            pt(&[0, 1]),
            pt(&[1, 1]),
        ])
        .unwrap();
        assert_eq!(p.dimension(), Some(2));
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.halfspaces().len(), 4);
        assert!(p.equalities().is_empty());
        assert_eq!(
            p.locate(&ptr(&[(1, 2), (1, 2)])).unwrap(),
            Location::RelativeInterior
        );
        assert_eq!(p.locate(&ptr(&[(1, 2), (0, 1)])).unwrap(), Location::Boundary);
        assert_eq!(p.locate(&pt(&[2, 0])).unwrap(), Location::Outside);
    }

    #[test]
    fn interior_points_of_input_are_not_vertices() {
        let p = Polytope::convex_hull(&[
            pt(&[0, 0]),
            pt(&[2, 0]),
            pt(&[0, 2]),
            pt(&[2, 2]),
            pt(&[1, 1]),
            pt(&[1, 0]),
        ])
        .unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert!(!p.vertices().contains(&pt(&[1, 1])));
        assert!(!p.vertices().contains(&pt(&[1, 0])));
    }

    #[test]
    fn segment_misses_a_point_off_its_line() {
        let seg = Polytope::convex_hull(&[
            ptr(&[(1, 2), (1, 2), (0, 1)]),
            ptr(&[(0, 1), (1, 2), (1, 2)]),
        ])
        .unwrap();
        let point = Polytope::convex_hull(&[ptr(&[(1, 4), (1, 4), (1, 2)])]).unwrap();
        let meet = seg.intersect(&point).unwrap();
        assert!(meet.is_empty());
        assert_eq!(meet.dimension(), None);
    }

    #[test]
    fn intersection_of_overlapping_squares() {
        let a = Polytope::convex_hull(&[pt(&[0, 0]), pt(&[2, 0]), pt(&[0, 2]), pt(&[2, 2])])
            .unwrap();
        let b = Polytope::convex_hull(&[pt(&[1, 1]), pt(&[3, 1]), pt(&[1, 3]), pt(&[3, 3])])
            .unwrap();
        let meet = a.intersect(&b).unwrap();
        assert_eq!(meet.dimension(), Some(2));
        assert_eq!(
            meet.vertices(),
            &[pt(&[1, 1]), pt(&[1, 2]), pt(&[2, 1]), pt(&[2, 2])]
        );
    }

    #[test]
    fn intersection_is_idempotent_and_commutative() {
        let a = Polytope::convex_hull(&[pt(&[0, 0]), pt(&[2, 0]), pt(&[1, 2])]).unwrap();
        let b = Polytope::convex_hull(&[pt(&[0, 1]), pt(&[2, 1]), pt(&[1, -1])]).unwrap();
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert_eq!(a.intersect(&b).unwrap(), b.intersect(&a).unwrap());
        let dim = a.intersect(&b).unwrap().dimension().unwrap();
        assert!(dim <= a.dimension().unwrap());
        assert!(dim <= b.dimension().unwrap());
    }

    #[test]
    fn disjoint_polytopes_intersect_empty() {
        let a = Polytope::convex_hull(&[pt(&[0, 0]), pt(&[1, 0])]).unwrap();
        let b = Polytope::convex_hull(&[pt(&[3, 3]), pt(&[4, 3])]).unwrap();
        assert!(a.intersect(&b).unwrap().is_empty());
    }

    #[test]
    fn hull_of_own_vertices_is_identity() {
        let p = Polytope::convex_hull(&[
            pt(&[0, 0, 1]),
            pt(&[0, 1, 0]),
            pt(&[1, 0, 0]),
            ptr(&[(1, 3), (1, 3), (1, 3)]),
        ])
        .unwrap();
        assert_eq!(Polytope::convex_hull(p.vertices()).unwrap(), p);
    }

    #[test]
    fn unbounded_hrep_is_rejected() {
        assert_eq!(
            Polytope::from_hrep(
                2,
                &[Halfspace {
                    normal: pt(&[1, 0]),
                    offset: int(1)
                }],
                &[],
            ),
            Err(Error::Unbounded)
        );
    }

    #[test]
    fn infeasible_hrep_is_empty() {
        let p = Polytope::from_hrep(
            1,
            &[
                Halfspace {
                    normal: pt(&[1]),
                    offset: int(-1),
                },
                Halfspace {
                    normal: pt(&[-1]),
                    offset: int(0),
                },
            ],
            &[],
        )
        .unwrap();
        assert!(p.is_empty());
    }

    #[test]
    fn slice_normalizes_each_ray() {
        let cone = Cone::from_rays(
            3,
            &[pt(&[1, 1, 0]), pt(&[0, 1, 1]), pt(&[1, 1, 2])],
        )
        .unwrap();
        let p = slice_cone(&cone, &pt(&[1, 1, 1]), &int(1)).unwrap();
        assert_eq!(p.dimension(), Some(2));
        assert_eq!(
            p.vertices(),
            &[
                ptr(&[(0, 1), (1, 2), (1, 2)]),
                ptr(&[(1, 4), (1, 4), (1, 2)]),
                ptr(&[(1, 2), (1, 2), (0, 1)]),
            ]
        );
    }

    #[test]
    fn slice_rejects_a_parallel_ray() {
        let cone = Cone::from_rays(4, &[pt(&[1, 0, 0, 1])]).unwrap();
        assert_eq!(
            slice_cone(&cone, &pt(&[1, 1, 1, -1]), &int(1)),
            Err(Error::RayMissesHyperplane)
        );
    }

    #[test]
    fn cone_membership_is_exact() {
        let cone = Cone::from_rays(3, &[pt(&[1, 1, 0]), pt(&[0, 1, 1])]).unwrap();
        assert!(cone.contains(&pt(&[1, 2, 1])).unwrap());
        assert!(cone.contains(&pt(&[0, 0, 0])).unwrap());
        assert!(!cone.contains(&pt(&[1, 0, 1])).unwrap());
        assert!(!cone.contains(&pt(&[-1, -1, 0])).unwrap());
    }

    #[test]
    fn cone_canonicalizes_rays() {
        let cone = Cone::from_rays(
            2,
            &[
                pt(&[2, 4]),
                pt(&[1, 2]),
                pt(&[0, 0]),
                ptr(&[(1, 3), (2, 3)]),
            ],
        )
        .unwrap();
        assert_eq!(cone.generators(), &[pt(&[1, 2])]);
    }

    #[test]
    fn combination_weights_recombine_exactly() {
        let gens = vec![pt(&[1, 0, 0]), pt(&[0, 1, 0]), ptr(&[(1, 3), (1, 3), (1, 3)])];
        let x = ptr(&[(3, 8), (3, 8), (1, 4)]);
        let w = rational_convex_combination(&x, &gens).unwrap();
        assert_eq!(w, vec![rat(1, 8), rat(1, 8), rat(3, 4)]);
        let mut sum = vec![Rat::zero(); 3];
        for (wi, g) in w.iter().zip(&gens) {
            for (s, gi) in sum.iter_mut().zip(g) {
                *s += wi * gi;
            }
        }
        assert_eq!(sum, x);
    }

    #[test]
    fn generator_point_gets_indicator_weights() {
        let gens = vec![pt(&[1, 0]), pt(&[0, 1]), pt(&[1, 1])];
        assert_eq!(
            rational_convex_combination(&pt(&[0, 1]), &gens).unwrap(),
            vec![int(0), int(1), int(0)]
        );
    }

    #[test]
    fn outside_point_is_rejected() {
        let gens = vec![pt(&[0, 0]), pt(&[1, 0])];
        assert_eq!(
            rational_convex_combination(&pt(&[0, 1]), &gens),
            Err(Error::PointOutsideHull)
        );
    }
}

#[cfg(test)]
mod property_tests {
    use super::*;
    use crate::rat::{int, rat};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_point(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Rat> {
        (0..dim)
            .map(|_| rat(rng.gen_range(-6..=6), rng.gen_range(1..=3)))
            .collect()
    }

    #[test]
    fn hull_contains_every_input_point() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xc0ffee);
        for _ in 0..60 {
            let dim = rng.gen_range(1..=3);
            let count = rng.gen_range(1..=7);
            let pts: Vec<Vec<Rat>> = (0..count).map(|_| random_point(&mut rng, dim)).collect();
            let p = Polytope::convex_hull(&pts).unwrap();
            for q in &pts {
                assert_ne!(p.locate(q).unwrap(), Location::Outside);
                assert!(p.vertices().contains(q) || p.locate(q).unwrap() != Location::Outside);
            }
            for v in p.vertices() {
                assert!(pts.contains(v));
            }
            assert_eq!(Polytope::convex_hull(p.vertices()).unwrap(), p);
        }
    }

    #[test]
    fn intersections_of_random_boxes_match_interval_arithmetic() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xbeef);
        for _ in 0..40 {
            let dim = rng.gen_range(1..=3);
            let mk = |rng: &mut ChaCha8Rng| -> (Vec<i64>, Vec<i64>) {
                let lo: Vec<i64> = (0..dim).map(|_| rng.gen_range(-4..=2)).collect();
                let hi: Vec<i64> = lo.iter().map(|&l| l + rng.gen_range(0..=4)).collect();
                (lo, hi)
            };
            let (alo, ahi) = mk(&mut rng);
            let (blo, bhi) = mk(&mut rng);
            let corners = |lo: &[i64], hi: &[i64]| -> Vec<Vec<Rat>> {
                (0..1usize << dim)
                    .map(|mask| {
                        (0..dim)
                            .map(|j| int(if mask >> j & 1 == 1 { hi[j] } else { lo[j] }))
                            .collect()
                    })
                    .collect()
            };
            let a = Polytope::convex_hull(&corners(&alo, &ahi)).unwrap();
            let b = Polytope::convex_hull(&corners(&blo, &bhi)).unwrap();
            let meet = a.intersect(&b).unwrap();
            let ilo: Vec<i64> = alo.iter().zip(&blo).map(|(x, y)| *x.max(y)).collect();
            let ihi: Vec<i64> = ahi.iter().zip(&bhi).map(|(x, y)| *x.min(y)).collect();
            if ilo.iter().zip(&ihi).any(|(l, h)| l > h) {
                assert!(meet.is_empty());
            } else {
                assert_eq!(meet, Polytope::convex_hull(&corners(&ilo, &ihi)).unwrap());
            }
        }
    }

    #[test]
    fn interior_point_always_lands_in_relative_interior() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xaaaa);
        for _ in 0..60 {
            let dim = rng.gen_range(1..=3);
            let count = rng.gen_range(1..=6);
            let pts: Vec<Vec<Rat>> = (0..count).map(|_| random_point(&mut rng, dim)).collect();
            let p = Polytope::convex_hull(&pts).unwrap();
            let c = p.interior_rational_point().unwrap();
            assert_eq!(p.locate(&c).unwrap(), Location::RelativeInterior);
        }
    }

    #[test]
    fn random_convex_combinations_are_recovered() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5555);
        for _ in 0..60 {
            let dim = rng.gen_range(1..=3);
            let count = rng.gen_range(1..=5);
            let gens: Vec<Vec<Rat>> = (0..count).map(|_| random_point(&mut rng, dim)).collect();
            // Build a random rational convex combination.
            let raw: Vec<i64> = (0..count).map(|_| rng.gen_range(0..=4)).collect();
            let total: i64 = raw.iter().sum();
            if total == 0 {
                continue;
            }
            let x: Vec<Rat> = (0..dim)
                .map(|j| {
                    gens.iter()
                        .zip(&raw)
                        .map(|(g, &w)| &g[j] * int(w))
                        .fold(Rat::zero(), |a, v| a + v)
                        / int(total)
                })
                .collect();
            let w = rational_convex_combination(&x, &gens).unwrap();
            assert_eq!(w.iter().fold(Rat::zero(), |a, v| a + v), Rat::one());
            for wi in &w {
                assert!(!wi.is_negative());
            }
            let recombined: Vec<Rat> = (0..dim)
                .map(|j| {
                    gens.iter()
                        .zip(&w)
                        .map(|(g, wi)| &g[j] * wi)
                        .fold(Rat::zero(), |a, v| a + v)
                })
                .collect();
            assert_eq!(recombined, x);
        }
    }
}
