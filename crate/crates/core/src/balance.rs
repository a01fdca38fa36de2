//! Classification and construction of reaction balances.
//!
//! A balance assigns a rational coefficient to every species — nonpositive
//! for reactants, nonnegative for products, not all zero — so that every
//! element (and the net charge, when any species carries one) tallies to
//! zero exactly. The set of balances is a pointed polyhedral cone; this
//! module classifies that cone two independent ways, produces canonical
//! integer balances, and expresses multiply-balanced equations as mixtures
//! of uniquely balanced ones.

use crate::error::Error;
use crate::formula::Reaction;
use crate::geometry::{
    extreme_rays, rational_convex_combination, slice_cone, Cone, Halfspace, Location, Polytope,
};
use crate::linalg::{dot, Mat, Subspace};
use crate::lp::{self, Constraint};
use crate::rat::{int, primitive_rat, Rat};
use crate::Result;
use itertools::Itertools;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Reactants,
    Products,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BalanceKind {
    /// No nonzero coefficient assignment balances the reaction.
    NoBalance,
    /// Exactly one balance exists up to a positive scale factor.
    UniqueUpToScale,
    /// Essentially different balances exist.
    Multiple,
}

/// Everything the classifier learns about a reaction's balance cone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalanceClassification {
    pub kind: BalanceKind,
    /// Dimension of the polytope where the normalized reactant and product
    /// regions meet; `None` when they miss each other entirely, or in the
    /// degenerate charged case where no slicing hyperplane faces every
    /// species (never for uncharged reactions).
    pub intersection_dim: Option<usize>,
    /// Dimension of the full coefficient solution space, signs ignored.
    pub moduli_dim: usize,
    /// Dimension of the intersection of the reactant and product column
    /// spans. Always equals `moduli_dim - kernel_dims.0 - kernel_dims.1`.
    pub cone_span_dim: usize,
    /// Kernel dimensions of the reactant and product composition columns.
    /// Nonzero entries mean a side can present the same totals more than
    /// one way.
    pub kernel_dims: (usize, usize),
}

/// A canonical integer balance: coefficients are coprime integers stored
/// with reactant entries nonpositive and product entries nonnegative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Balance {
    reaction: Reaction,
    #[serde(with = "crate::rat::serde_rat_vec")]
    coefficients: Vec<Rat>,
}

impl Balance {
    /// Validate signed coefficients against the reaction and store them in
    /// canonical form (coprime integers, signs preserved).
    pub fn new(reaction: Reaction, coefficients: Vec<Rat>) -> Result<Balance> {
        let (r, p) = side_matrices(&reaction)?;
        let s = r.ncols() + p.ncols();
        if coefficients.len() != s {
            return Err(Error::DimensionMismatch {
                left: s,
                right: coefficients.len(),
            });
        }
        let nr = r.ncols();
        for (i, c) in coefficients.iter().enumerate() {
            let ok = if i < nr {
                !c.is_positive()
            } else {
                !c.is_negative()
            };
            if !ok {
                return Err(Error::NoBalanceExists);
            }
        }
        if coefficients.iter().all(|c| c.is_zero()) {
            return Err(Error::NoBalanceExists);
        }
        let residual = r.hstack(&p)?.mul_vec(&coefficients)?;
        if residual.iter().any(|v| !v.is_zero()) {
            return Err(Error::NoBalanceExists);
        }
        Ok(Balance {
            reaction,
            coefficients: primitive_rat(&coefficients),
        })
    }

    pub fn reaction(&self) -> &Reaction {
        &self.reaction
    }

    /// Signed coefficients over all species, reactants first.
    pub fn coefficients(&self) -> &[Rat] {
        &self.coefficients
    }

    /// Reactant coefficients as the positive numbers a chemist would write.
    pub fn reactant_coefficients(&self) -> Vec<Rat> {
        self.coefficients[..self.reaction.n_reactants()]
            .iter()
            .map(|c| -c)
            .collect()
    }

    pub fn product_coefficients(&self) -> Vec<Rat> {
        self.coefficients[self.reaction.n_reactants()..].to_vec()
    }

    /// Render as a conventional equation, dropping zero-coefficient species
    /// and unit coefficients.
    pub fn format(&self) -> String {
        let nr = self.reaction.n_reactants();
        let side = |pairs: &[(String, crate::formula::Composition)], offset: usize| {
            let terms: Vec<String> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| !self.coefficients[offset + i].is_zero())
                .map(|(i, (label, _))| {
                    let mag = self.coefficients[offset + i].abs();
                    if mag.is_one() {
                        label.clone()
                    } else {
                        format!("{}{}", mag.to_integer(), label)
                    }
                })
                .collect();
            if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" + ")
            }
        };
        format!(
            "{} = {}",
            side(&self.reaction.reactants, 0),
            side(&self.reaction.products, nr)
        )
    }
}

/// Composition columns split by side, including the charge row whenever any
/// species is charged.
fn side_matrices(rx: &Reaction) -> Result<(Mat, Mat)> {
    let order = rx.element_order();
    let m = rx.composition_matrix(&order, rx.has_charge())?;
    let cols = m.col_vecs();
    let nr = rx.n_reactants();
    Ok((
        Mat::from_cols(cols[..nr].to_vec())?,
        Mat::from_cols(cols[nr..].to_vec())?,
    ))
}

fn kind_from_ray_count(n: usize) -> BalanceKind {
    match n {
        0 => BalanceKind::NoBalance,
        1 => BalanceKind::UniqueUpToScale,
        _ => BalanceKind::Multiple,
    }
}

/// Extreme rays of the sign-constrained solution cone spanned by the given
/// basis: vectors `sum c_j b_j` that are nonpositive on the first `nr`
/// coordinates and nonnegative after. Returned as primitive integer signed
/// coefficient vectors, lexicographically sorted.
fn signed_rays_from_basis(basis: &[Vec<Rat>], s: usize, nr: usize) -> Result<Vec<Vec<Rat>>> {
    let k = basis.len();
    if k == 0 {
        return Ok(Vec::new());
    }
    let mut rows = Vec::with_capacity(s);
    for i in 0..s {
        let row: Vec<Rat> = (0..k)
            .map(|j| {
                if i < nr {
                    -&basis[j][i]
                } else {
                    basis[j][i].clone()
                }
            })
            .collect();
        rows.push(row);
    }
    let rays_c = extreme_rays(&Mat::from_rows(rows)?)?;
    let mut out: Vec<Vec<Rat>> = rays_c
        .iter()
        .map(|c| {
            let a: Vec<Rat> = (0..s)
                .map(|i| {
                    (0..k).fold(int(0), |acc, j| acc + &c[j] * &basis[j][i])
                })
                .collect();
            primitive_rat(&a)
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Signed extreme-ray balances of the column system, one vector per ray.
pub(crate) fn moduli_rays(r: &Mat, p: &Mat) -> Result<Vec<Vec<Rat>>> {
    let m = r.hstack(p)?;
    let ns = Subspace::nullspace(&m);
    signed_rays_from_basis(&ns.basis_vectors(), m.ncols(), r.ncols())
}

/// A hyperplane normal valuing every species column positively: the
/// all-ones vector when that works, otherwise a deterministic feasible
/// choice, or `None` when no such hyperplane exists.
fn slicing_normal(r: &Mat, p: &Mat) -> Result<Option<Vec<Rat>>> {
    let d = r.nrows();
    let cols: Vec<Vec<Rat>> = r
        .col_vecs()
        .into_iter()
        .chain(p.col_vecs())
        .collect();
    let ones = vec![int(1); d];
    if cols.iter().all(|g| dot(&ones, g).is_positive()) {
        return Ok(Some(ones));
    }
    // Search for a free normal n = u - w with u, w >= 0 and n.g >= 1 per
    // column; any solution scales every species to a common level.
    let cons: Vec<Constraint> = cols
        .iter()
        .map(|g| {
            let mut c: Vec<Rat> = g.clone();
            c.extend(g.iter().map(|v| -v));
            Constraint::ge(c, int(1))
        })
        .collect();
    match lp::feasible_point(2 * d, &cons)? {
        None => Ok(None),
        Some(x) => Ok(Some((0..d).map(|t| &x[t] - &x[d + t]).collect())),
    }
}

/// Slice the conic span of the columns at `normal . x = 1`.
fn sliced_side(cols: &Mat, normal: &[Rat]) -> Result<Polytope> {
    let cone = Cone::from_rays(cols.nrows(), &cols.col_vecs())?;
    slice_cone(&cone, normal, &int(1))
}

/// Species columns rescaled onto the slicing hyperplane.
fn normalized_columns(m: &Mat, normal: &[Rat]) -> Vec<Vec<Rat>> {
    m.col_vecs()
        .into_iter()
        .map(|g| {
            let s = dot(normal, &g);
            g.iter().map(|v| v / &s).collect()
        })
        .collect()
}

/// All convex-weight presentations of `x` from the given generators, as a
/// polytope in weight space.
fn representation_polytope(x: &[Rat], gens: &[Vec<Rat>]) -> Result<Polytope> {
    let n = gens.len();
    let mut eqs: Vec<Halfspace> = (0..x.len())
        .map(|c| Halfspace {
            normal: gens.iter().map(|g| g[c].clone()).collect(),
            offset: x[c].clone(),
        })
        .collect();
    eqs.push(Halfspace {
        normal: vec![int(1); n],
        offset: int(1),
    });
    let nonneg: Vec<Halfspace> = (0..n)
        .map(|i| {
            let mut v = vec![int(0); n];
            v[i] = int(-1);
            Halfspace {
                normal: v,
                offset: int(0),
            }
        })
        .collect();
    Polytope::from_hrep(n, &nonneg, &eqs)
}

struct SlicedSystem {
    reactant_polytope: Polytope,
    product_polytope: Polytope,
    intersection: Polytope,
    normal: Vec<Rat>,
}

fn sliced_system(r: &Mat, p: &Mat) -> Result<Option<SlicedSystem>> {
    let normal = match slicing_normal(r, p)? {
        None => return Ok(None),
        Some(n) => n,
    };
    let reactant_polytope = sliced_side(r, &normal)?;
    let product_polytope = sliced_side(p, &normal)?;
    let intersection = reactant_polytope.intersect(&product_polytope)?;
    Ok(Some(SlicedSystem {
        reactant_polytope,
        product_polytope,
        intersection,
        normal,
    }))
}

pub(crate) fn classify_columns(r: &Mat, p: &Mat) -> Result<BalanceClassification> {
    if r.nrows() != p.nrows() {
        return Err(Error::DimensionMismatch {
            left: r.nrows(),
            right: p.nrows(),
        });
    }
    if r.ncols() == 0 || p.ncols() == 0 {
        return Err(Error::EmptySide);
    }
    let m = r.hstack(p)?;
    let moduli_dim = Subspace::nullspace(&m).dim();
    let ker_r = Subspace::nullspace(r).dim();
    let ker_p = Subspace::nullspace(p).dim();
    let cone_span_dim = Subspace::from_cols(r)
        .intersection(&Subspace::from_cols(p))?
        .dim();
    assert_eq!(
        moduli_dim,
        cone_span_dim + ker_r + ker_p,
        "solution-space dimension must split into span overlap plus kernels"
    );

    let rays = moduli_rays(r, p)?;
    let kind = kind_from_ray_count(rays.len());

    // Independent geometric check: meet the two normalized regions and read
    // the answer off the intersection polytope.
    let intersection_dim = match sliced_system(r, p)? {
        None => None,
        Some(sys) => {
            let geo_kind = if sys.intersection.is_empty() {
                BalanceKind::NoBalance
            } else if sys.intersection.dimension() == Some(0) {
                let x = &sys.intersection.vertices()[0];
                let unique_r =
                    representation_polytope(x, &normalized_columns(r, &sys.normal))?
                        .dimension()
                        == Some(0);
                let unique_p =
                    representation_polytope(x, &normalized_columns(p, &sys.normal))?
                        .dimension()
                        == Some(0);
                if unique_r && unique_p {
                    BalanceKind::UniqueUpToScale
                } else {
                    BalanceKind::Multiple
                }
            } else {
                BalanceKind::Multiple
            };
            assert_eq!(
                kind, geo_kind,
                "algebraic and geometric classifications must agree"
            );
            sys.intersection.dimension()
        }
    };

    Ok(BalanceClassification {
        kind,
        intersection_dim,
        moduli_dim,
        cone_span_dim,
        kernel_dims: (ker_r, ker_p),
    })
}

/// Classify the reaction's balance cone, cross-checking the algebraic
/// count of extreme balances against the intersection geometry.
pub fn classify(rx: &Reaction) -> Result<BalanceClassification> {
    let (r, p) = side_matrices(rx)?;
    classify_columns(&r, &p)
}

/// The extreme balances of the reaction: every balance is a nonnegative
/// combination of these. Lexicographic order of the signed coefficient
/// vectors.
pub fn generating_balances(rx: &Reaction) -> Result<Vec<Balance>> {
    let (r, p) = side_matrices(rx)?;
    moduli_rays(&r, &p)?
        .into_iter()
        .map(|ray| Balance::new(rx.clone(), ray))
        .collect()
}

/// The normalized reactant and product regions on the common slicing
/// hyperplane.
pub fn reactant_product_polytopes(rx: &Reaction) -> Result<(Polytope, Polytope)> {
    let (r, p) = side_matrices(rx)?;
    match sliced_system(&r, &p)? {
        None => Err(Error::RayMissesHyperplane),
        Some(sys) => Ok((sys.reactant_polytope, sys.product_polytope)),
    }
}

/// Where the normalized reactant and product regions meet. Balances
/// correspond to points of this polytope (together with a choice of
/// presentation on each side).
pub fn intersection_polytope(rx: &Reaction) -> Result<Polytope> {
    let (r, p) = side_matrices(rx)?;
    match sliced_system(&r, &p)? {
        None => Err(Error::RayMissesHyperplane),
        Some(sys) => Ok(sys.intersection),
    }
}

/// One inequality of the balance-cone description, attributed to the
/// species whose sign requirement produced it. `coefficients . c >= 0`
/// in the coordinates of the accompanying basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuliInequality {
    pub species: String,
    #[serde(with = "crate::rat::serde_rat_vec")]
    pub coefficients: Vec<Rat>,
}

/// The balance cone written as sign inequalities over coordinates in a
/// basis of the coefficient solution space. The description depends on the
/// basis, so the basis is reported alongside; inequalities appear one per
/// species, redundancies included.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuliPolyhedron {
    #[serde(with = "crate::rat::serde_rat_mat")]
    pub basis: Vec<Vec<Rat>>,
    pub inequalities: Vec<ModuliInequality>,
}

fn build_moduli(rx: &Reaction, basis: Vec<Vec<Rat>>) -> ModuliPolyhedron {
    let nr = rx.n_reactants();
    let labels = rx.species_labels();
    let inequalities = labels
        .iter()
        .enumerate()
        .map(|(i, label)| ModuliInequality {
            species: label.clone(),
            coefficients: basis
                .iter()
                .map(|b| if i < nr { -&b[i] } else { b[i].clone() })
                .collect(),
        })
        .collect();
    ModuliPolyhedron {
        basis,
        inequalities,
    }
}

/// Sign description of the balance cone in the canonical basis of the
/// coefficient solution space. Errors when that space is zero.
pub fn moduli_polyhedron(rx: &Reaction) -> Result<ModuliPolyhedron> {
    let (r, p) = side_matrices(rx)?;
    let ns = Subspace::nullspace(&r.hstack(&p)?);
    if ns.dim() == 0 {
        return Err(Error::ZeroNullspace);
    }
    Ok(build_moduli(rx, ns.basis_vectors()))
}

/// Same description in a caller-supplied basis of the solution space. The
/// basis must consist of independent solution vectors spanning the whole
/// space.
pub fn moduli_polyhedron_with_basis(rx: &Reaction, basis: &[Vec<Rat>]) -> Result<ModuliPolyhedron> {
    let (r, p) = side_matrices(rx)?;
    let m = r.hstack(&p)?;
    let ns = Subspace::nullspace(&m);
    if ns.dim() == 0 {
        return Err(Error::ZeroNullspace);
    }
    if basis.len() != ns.dim() {
        return Err(Error::DimensionMismatch {
            left: ns.dim(),
            right: basis.len(),
        });
    }
    for b in basis {
        if b.len() != m.ncols() {
            return Err(Error::DimensionMismatch {
                left: m.ncols(),
                right: b.len(),
            });
        }
        if !ns.contains(b)? {
            return Err(Error::DegenerateCombination);
        }
    }
    if Subspace::from_vectors(m.ncols(), basis)?.dim() != basis.len() {
        return Err(Error::DegenerateCombination);
    }
    Ok(build_moduli(rx, basis.to_vec()))
}

/// A balance pinned to one point of the intersection polytope, plus
/// whether that point's presentation was forced. When either side's
/// columns are dependent the flag is false and the balance returned is one
/// deterministic representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalanceAtPoint {
    pub balance: Balance,
    pub representation_unique: bool,
}

/// Build the canonical integer balance whose normalized species totals
/// meet at `x`, a point of the intersection polytope.
pub fn balance_at(rx: &Reaction, x: &[Rat]) -> Result<BalanceAtPoint> {
    let (r, p) = side_matrices(rx)?;
    if x.len() != r.nrows() {
        return Err(Error::DimensionMismatch {
            left: r.nrows(),
            right: x.len(),
        });
    }
    let sys = match sliced_system(&r, &p)? {
        None => return Err(Error::RayMissesHyperplane),
        Some(sys) => sys,
    };
    if sys.intersection.is_empty() || sys.intersection.locate(x)? == Location::Outside {
        return Err(Error::PointOutsidePolytope);
    }
    // Convex weights on each side's normalized columns, then undo the
    // normalization so both sides reproduce x exactly.
    let mut signed = Vec::with_capacity(r.ncols() + p.ncols());
    for (m, negate) in [(&r, true), (&p, false)] {
        let gens = normalized_columns(m, &sys.normal);
        let w = rational_convex_combination(x, &gens)?;
        for (i, wi) in w.iter().enumerate() {
            let a = wi / dot(&sys.normal, &m.col(i));
            signed.push(if negate { -a } else { a });
        }
    }
    let ker_r = Subspace::nullspace(&r).dim();
    let ker_p = Subspace::nullspace(&p).dim();
    Ok(BalanceAtPoint {
        balance: Balance::new(rx.clone(), signed)?,
        representation_unique: ker_r == 0 && ker_p == 0,
    })
}

/// Result of imposing a fixed ratio among same-side species: the
/// classification of the restricted system, computed by replacing the
/// constrained columns with their ratio-weighted average, together with
/// the matching numbers from the independent row-augmentation route.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionOutcome {
    pub classification: BalanceClassification,
    pub augmented_moduli_dim: usize,
    pub augmented_ray_count: usize,
}

/// Impose `species[0] : species[1] : ...` = `ratio[0] : ratio[1] : ...` on
/// one side of the reaction. Both computation routes run and must agree;
/// a single-species restriction changes nothing.
pub fn apply_ratio_restriction<S: AsRef<str>>(
    rx: &Reaction,
    side: Side,
    species: &[S],
    ratio: &[Rat],
) -> Result<RestrictionOutcome> {
    if species.is_empty() {
        return Err(Error::EmptySide);
    }
    if species.len() != ratio.len() {
        return Err(Error::DimensionMismatch {
            left: species.len(),
            right: ratio.len(),
        });
    }
    if ratio.iter().any(|v| !v.is_positive()) {
        return Err(Error::DegenerateCombination);
    }
    let side_list = match side {
        Side::Reactants => &rx.reactants,
        Side::Products => &rx.products,
    };
    let mut idx = Vec::with_capacity(species.len());
    for s in species {
        let name = s.as_ref();
        let pos = side_list
            .iter()
            .position(|(label, _)| label == name)
            .ok_or_else(|| Error::SpeciesNotOnSide(name.to_string()))?;
        if idx.contains(&pos) {
            return Err(Error::DuplicateSpecies(name.to_string()));
        }
        idx.push(pos);
    }

    let (r, p) = side_matrices(rx)?;
    let constrained = match side {
        Side::Reactants => &r,
        Side::Products => &p,
    };

    // Route one: replace the constrained columns by their ratio-weighted
    // average, placed where the first of them stood.
    let total: Rat = ratio.iter().fold(int(0), |acc, v| acc + v);
    let d = constrained.nrows();
    let mut merged = vec![int(0); d];
    for (j, &col) in idx.iter().enumerate() {
        let weight = &ratio[j] / &total;
        for (t, v) in constrained.col(col).iter().enumerate() {
            merged[t] += v * &weight;
        }
    }
    let mut new_cols = Vec::with_capacity(constrained.ncols() - idx.len() + 1);
    for t in 0..constrained.ncols() {
        if t == idx[0] {
            new_cols.push(merged.clone());
        } else if !idx.contains(&t) {
            new_cols.push(constrained.col(t));
        }
    }
    let replaced = Mat::from_cols(new_cols)?;
    let classification = match side {
        Side::Reactants => classify_columns(&replaced, &p)?,
        Side::Products => classify_columns(&r, &replaced)?,
    };

    // Route two: keep every column and append one proportionality row per
    // consecutive pair of constrained species.
    let m = r.hstack(&p)?;
    let nr = r.ncols();
    let offset = match side {
        Side::Reactants => 0,
        Side::Products => nr,
    };
    let mut m_aug = m.clone();
    if idx.len() > 1 {
        let mut rows = Vec::with_capacity(idx.len() - 1);
        for j in 0..idx.len() - 1 {
            let mut row = vec![int(0); m.ncols()];
            row[offset + idx[j]] = ratio[j + 1].clone();
            row[offset + idx[j + 1]] = -&ratio[j];
            rows.push(row);
        }
        m_aug = m.vstack(&Mat::from_rows(rows)?)?;
    }
    let ns_aug = Subspace::nullspace(&m_aug);
    let augmented_moduli_dim = ns_aug.dim();
    let augmented_ray_count =
        signed_rays_from_basis(&ns_aug.basis_vectors(), m.ncols(), nr)?.len();

    assert_eq!(
        classification.kind,
        kind_from_ray_count(augmented_ray_count),
        "column replacement and row augmentation must classify alike"
    );
    assert_eq!(
        classification.moduli_dim, augmented_moduli_dim,
        "column replacement and row augmentation must agree on dimension"
    );

    Ok(RestrictionOutcome {
        classification,
        augmented_moduli_dim,
        augmented_ray_count,
    })
}

/// One uniquely balanced constituent of a mixture, with its weight in the
/// decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixtureComponent {
    pub balance: Balance,
    #[serde(with = "crate::rat::serde_rat")]
    pub weight: Rat,
}

/// Write a balance as a positively weighted sum of balances over species
/// subsets, each of which balances uniquely. Components are searched in
/// order of increasing subset size, then lexicographically, so the result
/// is deterministic; the weighted sum reproduces the input exactly.
pub fn mixture_decomposition(b: &Balance) -> Result<Vec<MixtureComponent>> {
    let rx = b.reaction();
    let (r, p) = side_matrices(rx)?;
    let a = b.coefficients();
    let nr = r.ncols();
    let s = nr + p.ncols();
    let supp_r: Vec<usize> = (0..nr).filter(|&i| !a[i].is_zero()).collect();
    let supp_p: Vec<usize> = (nr..s).filter(|&i| !a[i].is_zero()).collect();
    if supp_r.is_empty() || supp_p.is_empty() {
        return Err(Error::NoBalanceExists);
    }

    let select = |cols: &[usize]| -> Result<Mat> {
        Mat::from_cols(
            cols.iter()
                .map(|&i| {
                    if i < nr {
                        r.col(i)
                    } else {
                        p.col(i - nr)
                    }
                })
                .collect(),
        )
    };

    // Already uniquely balanced on its support: one component, weight one.
    let support_rays = moduli_rays(&select(&supp_r)?, &select(&supp_p)?)?;
    if support_rays.len() == 1 {
        return Ok(vec![MixtureComponent {
            balance: b.clone(),
            weight: int(1),
        }]);
    }

    let mut components: Vec<Vec<Rat>> = Vec::new();
    for total in 2..=supp_r.len() + supp_p.len() {
        for rn in 1..total {
            let pn = total - rn;
            if rn > supp_r.len() || pn > supp_p.len() {
                continue;
            }
            for rsub in supp_r.iter().copied().combinations(rn) {
                for psub in supp_p.iter().copied().combinations(pn) {
                    let rays = moduli_rays(&select(&rsub)?, &select(&psub)?)?;
                    if rays.len() != 1 {
                        continue;
                    }
                    let mut full = vec![int(0); s];
                    for (t, &gi) in rsub.iter().chain(&psub).enumerate() {
                        full[gi] = rays[0][t].clone();
                    }
                    if !components.contains(&full) {
                        components.push(full);
                    }
                }
            }
        }
    }

    // Deterministic exact nonnegative weights recombining to the input.
    let cons: Vec<Constraint> = (0..s)
        .map(|i| {
            Constraint::eq(
                components.iter().map(|c| c[i].clone()).collect(),
                a[i].clone(),
            )
        })
        .collect();
    let w = lp::feasible_point(components.len(), &cons)?.ok_or(Error::NoBalanceExists)?;

    let mut out = Vec::new();
    for (c, wi) in components.into_iter().zip(w) {
        if wi.is_zero() {
            continue;
        }
        out.push(MixtureComponent {
            balance: Balance::new(rx.clone(), c)?,
            weight: wi,
        });
    }
    debug_assert!({
        let mut sum = vec![int(0); s];
        for comp in &out {
            for (t, v) in comp.balance.coefficients().iter().enumerate() {
                sum[t] += v * &comp.weight;
            }
        }
        sum == a
    });
    Ok(out)
}
