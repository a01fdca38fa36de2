//! Mechanism analysis over exact rationals.
//!
//! A mechanism is a list of elementary steps over a species list, recorded as
//! a matrix with one row per species and one column per step (negative
//! entries consume, positive entries produce). Species are partitioned into
//! *known* species — the ones an overall reaction may mention — and
//! *intermediates*. This module computes conservation relations, enumerates
//! the overall reactions a mechanism can realize, enumerates the step
//! combinations realizing a given overall reaction, solves the inverse
//! problem of constraining the step space from an elemental matrix plus
//! observed dependencies, and orders steps by how soon their reactant
//! intermediates can first be produced.

use crate::formula::Reaction;
use crate::linalg::{Mat, Subspace};
use crate::lp::{self, Constraint, LpOutcome};
use crate::rat::{int, Rat};
use crate::{Error, Result};
use num::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeSet;

/// A reaction mechanism: ordered species labels, a partition of the species
/// indices into known species and intermediates, and the step matrix (rows =
/// species, columns = elementary steps, integer entries, negative =
/// consumed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mechanism {
    species_order: Vec<String>,
    known: Vec<usize>,
    intermediates: Vec<usize>,
    n: Mat,
}

fn check_partition(n_species: usize, known: &[usize], intermediates: &[usize]) -> Result<()> {
    let mut seen = vec![false; n_species];
    for &i in known.iter().chain(intermediates) {
        if i >= n_species || seen[i] {
            return Err(Error::PartitionMismatch);
        }
        seen[i] = true;
    }
    if seen.iter().all(|&s| s) {
        Ok(())
    } else {
        Err(Error::PartitionMismatch)
    }
}

impl Mechanism {
    pub fn new(
        species_order: Vec<String>,
        known: Vec<usize>,
        intermediates: Vec<usize>,
        n: Mat,
    ) -> Result<Self> {
        if n.nrows() != species_order.len() {
            return Err(Error::DimensionMismatch {
                left: n.nrows(),
                right: species_order.len(),
            });
        }
        check_partition(species_order.len(), &known, &intermediates)?;
        for i in 0..n.nrows() {
            for j in 0..n.ncols() {
                if !n.get(i, j).is_integer() {
                    return Err(Error::NonIntegralSteps);
                }
            }
        }
        for j in 0..n.ncols() {
            let col = n.col(j);
            let has_neg = col.iter().any(|x| x.is_negative());
            let has_pos = col.iter().any(|x| x.is_positive());
            if !has_neg || !has_pos {
                return Err(Error::OneSidedStep(j));
            }
        }
        Ok(Mechanism {
            species_order,
            known,
            intermediates,
            n,
        })
    }

    /// Convenience constructor from integer rows.
    pub fn from_int_rows(
        species_order: Vec<String>,
        known: Vec<usize>,
        intermediates: Vec<usize>,
        rows: Vec<Vec<i64>>,
    ) -> Result<Self> {
        Mechanism::new(species_order, known, intermediates, Mat::from_int_rows(&rows)?)
    }

    /// Reads each column of a balanced reaction list as one step; the
    /// species order is taken from the reactions' union in first-appearance
    /// order. Intermediates are the species in `intermediate_labels`.
    pub fn from_reactions(reactions: &[Reaction], intermediate_labels: &[String]) -> Result<Self> {
        let mut order: Vec<String> = Vec::new();
        for rx in reactions {
            for (label, _) in rx.species() {
                if !order.contains(label) {
                    order.push(label.clone());
                }
            }
        }
        let mut rows = vec![vec![Rat::zero(); reactions.len()]; order.len()];
        for (j, rx) in reactions.iter().enumerate() {
            for (label, _) in rx.reactants.iter() {
                let i = order.iter().position(|l| l == label).unwrap();
                rows[i][j] -= Rat::from(int(1));
            }
            for (label, _) in rx.products.iter() {
                let i = order.iter().position(|l| l == label).unwrap();
                rows[i][j] += Rat::from(int(1));
            }
        }
        let (mut known, mut intermediates) = (Vec::new(), Vec::new());
        for (i, label) in order.iter().enumerate() {
            if intermediate_labels.contains(label) {
                intermediates.push(i);
            } else {
                known.push(i);
            }
        }
        Mechanism::new(order, known, intermediates, Mat::from_rows(rows)?)
    }

    pub fn species(&self) -> &[String] {
        &self.species_order
    }

    pub fn known(&self) -> &[usize] {
        &self.known
    }

    pub fn intermediates(&self) -> &[usize] {
        &self.intermediates
    }

    pub fn matrix(&self) -> &Mat {
        &self.n
    }

    pub fn n_species(&self) -> usize {
        self.species_order.len()
    }

    pub fn n_steps(&self) -> usize {
        self.n.ncols()
    }
}

#[derive(Serialize, Deserialize)]
struct MechanismJson {
    species: Vec<String>,
    known: Vec<usize>,
    intermediates: Vec<usize>,
    #[serde(rename = "N")]
    n: Vec<Vec<i64>>,
}

impl Serialize for Mechanism {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<i64>> = (0..self.n.nrows())
            .map(|i| {
                self.n
                    .row(i)
                    .iter()
                    .map(|x| x.to_integer().to_i64().expect("step entries fit in i64"))
                    .collect()
            })
            .collect();
        MechanismJson {
            species: self.species_order.clone(),
            known: self.known.clone(),
            intermediates: self.intermediates.clone(),
            n: rows,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Mechanism {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = MechanismJson::deserialize(deserializer)?;
        Mechanism::from_int_rows(raw.species, raw.known, raw.intermediates, raw.n)
            .map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Conservation
// ---------------------------------------------------------------------------

/// Conservation structure of a mechanism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConservationReport {
    /// Left kernel of the step matrix: all linear combinations of species
    /// amounts that every step preserves.
    pub mass_space: Subspace,
    /// Row space of the elemental matrix, when one is supplied — the
    /// conservation relations explained by element counts alone.
    pub element_space: Option<Subspace>,
    /// dim ker(elemental matrix) − dim span(step columns): the conservation
    /// relations beyond those forced by elements. Present only with an
    /// elemental matrix.
    pub homology_dim: Option<usize>,
    /// The mass space restricted to known-species coordinates.
    pub observed_space: Subspace,
    /// Whether some strictly positive species combination is conserved.
    pub conservative: bool,
}

/// Computes the conservation structure. When an elemental matrix is given it
/// must annihilate the step matrix exactly, and its row space is checked to
/// lie inside the mass space. Conservativeness is decided by exact
/// feasibility of a conserved combination with every coefficient at least
/// one.
pub fn conservation_report(
    mech: &Mechanism,
    elemental: Option<&Mat>,
) -> Result<ConservationReport> {
    let s = mech.n_species();
    let mass_space = Subspace::nullspace(&mech.n.transpose());
    let observed_space = mass_space.project_coords(mech.known())?;

    let mut constraints: Vec<Constraint> = (0..mech.n_steps())
        .map(|j| Constraint::eq(mech.n.col(j), Rat::zero()))
        .collect();
    for i in 0..s {
        let mut unit = vec![Rat::zero(); s];
        unit[i] = int(1);
        constraints.push(Constraint::ge(unit, int(1)));
    }
    let conservative = lp::feasible_point(s, &constraints)?.is_some();

    let (element_space, homology_dim) = match elemental {
        Some(m) => {
            if m.ncols() != s {
                return Err(Error::DimensionMismatch {
                    left: m.ncols(),
                    right: s,
                });
            }
            if !m.mul(&mech.n)?.is_zero() {
                return Err(Error::ElementMatrixMismatch);
            }
            let rows = Subspace::from_rows(m);
            if !mass_space.contains_subspace(&rows)? {
                return Err(Error::ElementMatrixMismatch);
            }
            let hom = Subspace::nullspace(m).dim() - Subspace::from_cols(&mech.n).dim();
            (Some(rows), Some(hom))
        }
        None => (None, None),
    };

    Ok(ConservationReport {
        mass_space,
        element_space,
        homology_dim,
        observed_space,
        conservative,
    })
}

// ---------------------------------------------------------------------------
// Overall reactions consistent with a mechanism
// ---------------------------------------------------------------------------

/// Whether `c` is a nonnegative combination of the step columns, decided by
/// exact feasibility.
pub fn is_consistent(mech: &Mechanism, c: &[Rat]) -> Result<bool> {
    if c.len() != mech.n_species() {
        return Err(Error::DimensionMismatch {
            left: c.len(),
            right: mech.n_species(),
        });
    }
    let constraints: Vec<Constraint> = (0..mech.n_species())
        .map(|i| Constraint::eq(mech.n.row(i).to_vec(), c[i].clone()))
        .collect();
    Ok(lp::feasible_point(mech.n_steps(), &constraints)?.is_some())
}

/// The overall reactions a mechanism can realize within a total-coefficient
/// budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistentReactions {
    /// All nonzero integer species vectors with coefficient magnitudes
    /// summing to at most the budget that are nonnegative combinations of
    /// the step columns, in lexicographic order.
    pub reactions: Vec<Vec<Rat>>,
    /// Lattice points of the bounded region, the zero point included.
    pub lattice_count: usize,
}

/// Enumerates every integer species vector `c` with Σ|cᵢ| ≤ `t` that some
/// nonnegative step combination realizes. Candidates are pre-filtered to the
/// span of the step columns (orthogonality to the mass space), then settled
/// by exact feasibility. The reported lattice count includes the zero
/// vector; the reaction list does not.
pub fn consistent_reactions(mech: &Mechanism, t: u32) -> Result<ConsistentReactions> {
    let s = mech.n_species();
    let mass_basis = mech_mass_basis(mech);
    let mut reactions = Vec::new();
    let mut lattice_count = 0usize;

    // Depth-first over coordinates with the remaining ℓ1 budget; partial
    // dot products against the mass-space basis are carried along so the
    // span filter at a leaf costs only a zero test.
    let mut c = vec![0i64; s];
    let mut dots = vec![Rat::zero(); mass_basis.len()];
    enumerate_budget(mech, &mass_basis, &mut c, &mut dots, 0, t as i64, &mut |c| {
        if c.iter().all(|&x| x == 0) {
            lattice_count += 1;
            return Ok(());
        }
        let vec: Vec<Rat> = c.iter().map(|&x| int(x)).collect();
        if is_consistent(mech, &vec)? {
            lattice_count += 1;
            reactions.push(vec);
        }
        Ok(())
    })?;
    Ok(ConsistentReactions {
        reactions,
        lattice_count,
    })
}

fn mech_mass_basis(mech: &Mechanism) -> Vec<Vec<Rat>> {
    Subspace::nullspace(&mech.n.transpose()).basis_vectors()
}

fn enumerate_budget(
    mech: &Mechanism,
    basis: &[Vec<Rat>],
    c: &mut Vec<i64>,
    dots: &mut Vec<Rat>,
    i: usize,
    budget: i64,
    visit: &mut impl FnMut(&[i64]) -> Result<()>,
) -> Result<()> {
    if i == c.len() {
        if dots.iter().all(|d| d.is_zero()) {
            visit(c)?;
        }
        return Ok(());
    }
    for v in -budget..=budget {
        c[i] = v;
        let dv = int(v);
        for (d, b) in dots.iter_mut().zip(basis) {
            *d += &b[i] * &dv;
        }
        enumerate_budget(mech, basis, c, dots, i + 1, budget - v.abs(), visit)?;
        for (d, b) in dots.iter_mut().zip(basis) {
            *d -= &b[i] * &dv;
        }
    }
    c[i] = 0;
    Ok(())
}

/// Convex hull of all lattice points (zero included) that
/// [`consistent_reactions`] finds for this budget.
pub fn consistent_region(mech: &Mechanism, t: u32) -> Result<crate::geometry::Polytope> {
    let found = consistent_reactions(mech, t)?;
    let mut points = found.reactions;
    points.push(vec![Rat::zero(); mech.n_species()]);
    crate::geometry::Polytope::convex_hull(&points)
}

// ---------------------------------------------------------------------------
// Algebraic representations
// ---------------------------------------------------------------------------

/// Whether a mechanism has finitely many nonnegative step combinations for
/// each overall reaction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Finiteness {
    Finite,
    /// The solution sets are unbounded; the witness is a nonzero nonnegative
    /// step combination that cancels to nothing and can be added freely.
    Infinite { witness: Vec<Rat> },
}

/// Decides whether zero lies in the convex hull of the step columns. When it
/// does, the convex weights form the unboundedness witness.
pub fn representation_finiteness(mech: &Mechanism) -> Result<Finiteness> {
    let k = mech.n_steps();
    let mut constraints: Vec<Constraint> = (0..mech.n_species())
        .map(|i| Constraint::eq(mech.n.row(i).to_vec(), Rat::zero()))
        .collect();
    constraints.push(Constraint::eq(vec![int(1); k], int(1)));
    Ok(match lp::feasible_point(k, &constraints)? {
        Some(witness) => Finiteness::Infinite { witness },
        None => Finiteness::Finite,
    })
}

/// All nonnegative integer step combinations realizing the overall reaction
/// `c`, in lexicographic order. Without a step bound the solution set must
/// be finite (zero outside the hull of the step columns); with one, only
/// combinations whose steps sum to at most the bound are returned.
pub fn algebraic_representations(
    mech: &Mechanism,
    c: &[Rat],
    step_bound: Option<u32>,
) -> Result<Vec<Vec<Rat>>> {
    let s = mech.n_species();
    let k = mech.n_steps();
    if c.len() != s {
        return Err(Error::DimensionMismatch {
            left: c.len(),
            right: s,
        });
    }
    if step_bound.is_none() {
        if let Finiteness::Infinite { witness } = representation_finiteness(mech)? {
            let shown: Vec<String> = witness.iter().map(|x| x.to_string()).collect();
            return Err(Error::InfiniteRepresentations(format!(
                "({})",
                shown.join(", ")
            )));
        }
    }

    let mut constraints: Vec<Constraint> = (0..s)
        .map(|i| Constraint::eq(mech.n.row(i).to_vec(), c[i].clone()))
        .collect();
    if let Some(t) = step_bound {
        constraints.push(Constraint::le(vec![int(1); k], int(i64::from(t))));
    }

    // Exact per-step maxima over the solution polytope give an integer box.
    let mut bounds = Vec::with_capacity(k);
    for j in 0..k {
        let mut obj = vec![Rat::zero(); k];
        obj[j] = int(1);
        match lp::maximize(&obj, &constraints)? {
            LpOutcome::Optimal { value, .. } => bounds.push(value.floor().to_integer()),
            LpOutcome::Infeasible => return Ok(Vec::new()),
            LpOutcome::Unbounded => return Err(Error::Unbounded),
        }
    }
    let bounds: Vec<i64> = bounds
        .iter()
        .map(|b| b.to_i64().expect("solution box fits in i64"))
        .collect();

    let budget = step_bound.map(|t| i64::from(t));
    let mut out = Vec::new();
    let mut x = vec![0i64; k];
    enumerate_box(&bounds, &mut x, 0, budget, &mut |x| {
        let vec: Vec<Rat> = x.iter().map(|&v| int(v)).collect();
        if mech.n.mul_vec(&vec)? == c {
            out.push(vec);
        }
        Ok(())
    })?;
    Ok(out)
}

fn enumerate_box(
    bounds: &[i64],
    x: &mut Vec<i64>,
    i: usize,
    budget: Option<i64>,
    visit: &mut impl FnMut(&[i64]) -> Result<()>,
) -> Result<()> {
    if i == bounds.len() {
        return visit(x);
    }
    let cap = match budget {
        Some(b) => bounds[i].min(b),
        None => bounds[i],
    };
    for v in 0..=cap {
        x[i] = v;
        enumerate_box(bounds, x, i + 1, budget.map(|b| b - v), visit)?;
    }
    x[i] = 0;
    Ok(())
}

// ---------------------------------------------------------------------------
// The inverse problem
// ---------------------------------------------------------------------------

/// Subspace data recoverable from an elemental matrix and observed
/// dependencies alone, without knowing the mechanism. Spaces over known
/// coordinates use the known-index ordering; full-species spaces use the
/// species ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseReport {
    /// Within known coordinates: the orthogonal complement of the
    /// known-species part of the elemental row space.
    pub complement_space: Subspace,
    /// Observed dependencies projected onto that complement — the part the
    /// elemental matrix cannot explain.
    pub projected_observations: Subspace,
    /// Its dimension: how many observed dependencies exceed elemental ones.
    pub excess_dim: usize,
    /// Intersection of the known-species parts of the elemental kernel and
    /// row space: the directions along which candidate dependency spaces may
    /// vary without changing anything observable.
    pub ambiguity_space: Subspace,
    /// Elemental-kernel vectors supported entirely on intermediates — the
    /// kernel of restriction to known coordinates. Trivial exactly when the
    /// lift below is unique.
    pub hidden_kernel: Subspace,
    /// Present when the observations are assumed complete.
    pub lift: Option<LiftReport>,
}

/// The completion of the projected observations into full species space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftReport {
    /// The dependency space: elemental-kernel vectors whose known part spans
    /// the projected observations. Always contains the zero-padded
    /// projected observations; alternative choices differ by vectors whose
    /// known part lies in the ambiguity space.
    pub dependency_space: Subspace,
    /// True when the hidden kernel is trivial, making the lift unique.
    pub unique: bool,
    /// Orthogonal complement of dependency space ⊕ elemental row space: the
    /// candidate span for the unknown step columns.
    pub candidate_step_space: Subspace,
}

/// Computes every inverse-problem space from the elemental matrix and the
/// observed dependencies (given over full species coordinates but required
/// to vanish on intermediates). With `assume_complete`, the observed excess
/// is lifted into the elemental kernel by zero-padding — padding a vector
/// orthogonal to the known part of the row space keeps it orthogonal to the
/// whole row space, so the lift always lands in the kernel.
pub fn inverse_mechanism_spaces(
    n_species: usize,
    known: &[usize],
    intermediates: &[usize],
    elemental: &Mat,
    observed: &Subspace,
    assume_complete: bool,
) -> Result<InverseReport> {
    check_partition(n_species, known, intermediates)?;
    if elemental.ncols() != n_species {
        return Err(Error::DimensionMismatch {
            left: elemental.ncols(),
            right: n_species,
        });
    }
    if observed.ambient() != n_species {
        return Err(Error::DimensionMismatch {
            left: observed.ambient(),
            right: n_species,
        });
    }
    for v in observed.basis_vectors() {
        if intermediates.iter().any(|&u| !v[u].is_zero()) {
            return Err(Error::ObservedOutsideKnown);
        }
    }
    let observed_k = observed.project_coords(known)?;

    let kernel = Subspace::nullspace(elemental);
    let rows = Subspace::from_rows(elemental);
    let known_kernel = kernel.project_coords(known)?;
    let known_rows = rows.project_coords(known)?;
    let complement_space = known_rows.orthogonal_complement();

    let projected: Vec<Vec<Rat>> = observed_k
        .basis_vectors()
        .into_iter()
        .map(|v| {
            let onto = known_rows.project_vector(&v)?;
            Ok(v.iter().zip(onto).map(|(a, b)| a - b).collect())
        })
        .collect::<Result<_>>()?;
    let projected_observations = Subspace::from_vectors(known.len(), &projected)?;
    let excess_dim = projected_observations.dim();

    let ambiguity_space = known_kernel.intersection(&known_rows)?;

    let units: Vec<Vec<Rat>> = intermediates
        .iter()
        .map(|&u| {
            let mut e = vec![Rat::zero(); n_species];
            e[u] = int(1);
            e
        })
        .collect();
    let intermediate_axes = Subspace::from_vectors(n_species, &units)?;
    let hidden_kernel = kernel.intersection(&intermediate_axes)?;

    let lift = if assume_complete {
        let padded: Vec<Vec<Rat>> = projected_observations
            .basis_vectors()
            .into_iter()
            .map(|w| {
                let mut h = vec![Rat::zero(); n_species];
                for (slot, &ki) in known.iter().enumerate() {
                    h[ki] = w[slot].clone();
                }
                h
            })
            .collect();
        for h in &padded {
            if !elemental.mul_vec(h)?.iter().all(|x| x.is_zero()) {
                return Err(Error::InconsistentObservations);
            }
        }
        let dependency_space = Subspace::from_vectors(n_species, &padded)?;
        let candidate_step_space = dependency_space.sum(&rows)?.orthogonal_complement();
        Some(LiftReport {
            unique: hidden_kernel.is_zero(),
            dependency_space,
            candidate_step_space,
        })
    } else {
        None
    };

    Ok(InverseReport {
        complement_space,
        projected_observations,
        excess_dim,
        ambiguity_space,
        hidden_kernel,
        lift,
    })
}

// ---------------------------------------------------------------------------
// Precedence of steps
// ---------------------------------------------------------------------------

/// How soon each step of a mechanism can first fire, working outward from
/// the known species.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrecedenceReport {
    /// Intermediates producible after each round: stage 0 is empty (only
    /// known species on hand), and each later stage adds what the currently
    /// fireable steps produce. Strictly growing until the last entry.
    pub stages: Vec<BTreeSet<usize>>,
    /// Steps fireable at each stage — every reactant is known or already
    /// produced. Cumulative and aligned with `stages`.
    pub available: Vec<BTreeSet<usize>>,
    /// For each step, the 1-based first stage count at which it can fire;
    /// `None` marks a step whose reactant intermediates are never produced.
    pub levels: Vec<Option<usize>>,
}

impl PrecedenceReport {
    /// Whether firing the steps in `x` respects precedence as a whole: the
    /// support of `x` must be exactly the fireable set of some stage.
    pub fn order_realizable(&self, x: &[Rat]) -> bool {
        if Some(x.len()) != self.levels.len().into() {
            return false;
        }
        let support: BTreeSet<usize> = x
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(j, _)| j)
            .collect();
        self.available.iter().any(|a| *a == support)
    }
}

/// Iterates the reachability map: start with the known species, fire every
/// step whose reactants are on hand, add the intermediates produced, and
/// repeat until nothing new appears. The iteration is monotone and stops
/// within one round per intermediate.
pub fn precedence_analysis(mech: &Mechanism) -> PrecedenceReport {
    let inter: BTreeSet<usize> = mech.intermediates().iter().copied().collect();
    let mut stages: Vec<BTreeSet<usize>> = vec![BTreeSet::new()];
    let mut available: Vec<BTreeSet<usize>> = Vec::new();
    let mut levels: Vec<Option<usize>> = vec![None; mech.n_steps()];

    loop {
        let current = stages.last().unwrap().clone();
        let fireable: BTreeSet<usize> = (0..mech.n_steps())
            .filter(|&j| {
                mech.matrix().col(j).iter().enumerate().all(|(i, x)| {
                    !x.is_negative() || !inter.contains(&i) || current.contains(&i)
                })
            })
            .collect();
        for &j in &fireable {
            levels[j].get_or_insert(stages.len());
        }
        let mut next = current.clone();
        for &j in &fireable {
            for (i, x) in mech.matrix().col(j).iter().enumerate() {
                if x.is_positive() && inter.contains(&i) {
                    next.insert(i);
                }
            }
        }
        if let Some(prev) = available.last() {
            debug_assert!(fireable.is_superset(prev));
        }
        available.push(fireable);
        if next == current {
            break;
        }
        stages.push(next);
    }
    PrecedenceReport {
        stages,
        available,
        levels,
    }
}

// ---------------------------------------------------------------------------
// Candidate steps from a subspace
// ---------------------------------------------------------------------------

/// Small-coefficient candidate steps found inside a subspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSteps {
    /// One representative per sign pair, first nonzero entry positive,
    /// lexicographically ordered.
    pub representatives: Vec<Vec<Rat>>,
    /// Number of integer vectors found (each representative and its
    /// negation).
    pub vector_count: usize,
}

/// Enumerates the integer vectors of the subspace with entries in
/// `[-bound, bound]` that have both a positive and a negative entry — the
/// shape of an elementary step. Combination coefficients over the reduced
/// basis equal the vector's pivot-coordinate entries, so scanning integer
/// coefficients in the box is exhaustive.
pub fn candidate_elementary_reactions(space: &Subspace, bound: u32) -> Result<CandidateSteps> {
    let basis = space.basis_vectors();
    let s = space.ambient();
    let b = i64::from(bound);
    let mut found: BTreeSet<Vec<Rat>> = BTreeSet::new();

    let mut lambda = vec![0i64; basis.len()];
    enumerate_lambda(&basis, s, b, &mut lambda, 0, &mut |x: &[Rat]| {
        if x.iter().all(|v| v.is_zero()) {
            return;
        }
        let ok = x.iter().all(|v| v.is_integer() && v.abs() <= int(b))
            && x.iter().any(|v| v.is_positive())
            && x.iter().any(|v| v.is_negative());
        if !ok {
            return;
        }
        let flip = x
            .iter()
            .find(|v| !v.is_zero())
            .map(|v| v.is_negative())
            .unwrap_or(false);
        let rep: Vec<Rat> = if flip {
            x.iter().map(|v| -v).collect()
        } else {
            x.to_vec()
        };
        found.insert(rep);
    });
    let representatives: Vec<Vec<Rat>> = found.into_iter().collect();
    let vector_count = representatives.len() * 2;
    Ok(CandidateSteps {
        representatives,
        vector_count,
    })
}

fn enumerate_lambda(
    basis: &[Vec<Rat>],
    ambient: usize,
    b: i64,
    lambda: &mut Vec<i64>,
    i: usize,
    visit: &mut impl FnMut(&[Rat]),
) {
    if i == basis.len() {
        let mut x = vec![Rat::zero(); ambient];
        for (l, bv) in lambda.iter().zip(basis) {
            if *l == 0 {
                continue;
            }
            let lv = int(*l);
            for (xi, bi) in x.iter_mut().zip(bv) {
                *xi += &lv * bi;
            }
        }
        visit(&x);
        return;
    }
    for v in -b..=b {
        lambda[i] = v;
        enumerate_lambda(basis, ambient, b, lambda, i + 1, visit);
    }
    lambda[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::orthogonal_to;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rv(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn azomethane() -> Mechanism {
        Mechanism::from_int_rows(
            [
                "C2H6N2", "N2", "CH4", "C2H6", "C3H8N2", "C4H12N2", "CH3", "C2H5N2", "C3H9N2",
            ]
            .iter()
            .map(|s| s.to_string())
            .collect(),
            (0..6).collect(),
            (6..9).collect(),
            vec![
                vec![-1, -1, 0, 0, -1, 0],
                vec![1, 0, 0, 0, 0, 0],
                vec![0, 1, 0, 0, 0, 0],
                vec![0, 0, 1, 0, 0, 0],
                vec![0, 0, 0, 1, 0, 0],
                vec![0, 0, 0, 0, 0, 1],
                vec![2, -1, -2, -1, -1, -1],
                vec![0, 1, 0, -1, 0, 0],
                vec![0, 0, 0, 0, 1, -1],
            ],
        )
        .unwrap()
    }

    fn azomethane_elements() -> Mat {
        Mat::from_int_rows(&[
            vec![2, 0, 1, 2, 3, 4, 1, 2, 3],
            vec![6, 0, 4, 6, 8, 12, 3, 5, 9],
            vec![2, 2, 0, 0, 2, 2, 0, 2, 2],
        ])
        .unwrap()
    }

    fn formaldehyde_elements() -> Mat {
        Mat::from_int_rows(&[
            vec![2, 0, 0, 1, 0, 2, 2, 2, 2, 1, 1, 1],
            vec![1, 0, 0, 0, 1, 0, 1, 0, 1, 1, 0, 0],
            vec![1, 0, 0, 0, 1, 1, 2, 0, 1, 1, 1, 0],
            vec![0, 1, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0],
            vec![0, 3, 2, 1, 0, 0, 0, 0, 3, 0, 0, 0],
        ])
        .unwrap()
    }

    fn formaldehyde_steps() -> Mat {
        Mat::from_int_rows(&[
            vec![-1, 0, 0, 1, 0, -1, -1, -1],
            vec![-1, 0, -1, 0, 0, 0, 0, 0],
            vec![0, 1, 1, 0, 0, 0, 0, 0],
            vec![0, 1, 1, 0, 0, 0, 0, 0],
            vec![0, 0, 1, 0, 0, 0, 0, 0],
            vec![0, 0, 0, -1, -1, 1, 0, 0],
            vec![0, 0, 0, 0, 1, 0, 1, 0],
            vec![0, 0, 0, 0, 0, 0, 0, 1],
            vec![1, -1, 0, 0, 0, 0, 0, 0],
            vec![0, 1, -1, -1, -1, 1, 0, 1],
            vec![0, 0, 0, 1, 0, -1, -1, 0],
            vec![0, 0, 0, 0, 1, 0, 1, -1],
        ])
        .unwrap()
    }

    #[test]
    fn two_step_chain_conserves_a_positive_combination() {
        let mech = Mechanism::from_int_rows(
            vec!["S1".into(), "S2".into(), "S3".into()],
            vec![0, 1, 2],
            vec![],
            vec![vec![-1, -1], vec![1, -1], vec![1, 2]],
        )
        .unwrap();
        let report = conservation_report(&mech, None).unwrap();
        assert_eq!(report.mass_space.dim(), 1);
        assert!(report.mass_space.contains(&rv(&[3, 1, 2])).unwrap());
        assert!(report.conservative);
        assert!(report.element_space.is_none());
    }

    #[test]
    fn azomethane_conservation_closes_with_zero_homology() {
        let mech = azomethane();
        let m = azomethane_elements();
        let report = conservation_report(&mech, Some(&m)).unwrap();
        assert_eq!(report.mass_space.dim(), 3);
        assert_eq!(report.element_space.as_ref().unwrap().dim(), 3);
        assert!(report
            .mass_space
            .contains_subspace(report.element_space.as_ref().unwrap())
            .unwrap());
        assert_eq!(report.homology_dim, Some(0));
        assert_eq!(report.observed_space.dim(), 3);
        assert!(report.conservative);
    }

    #[test]
    fn mismatched_element_matrix_is_rejected() {
        let mech = azomethane();
        let mut rows = vec![
            vec![2, 0, 1, 2, 3, 4, 1, 2, 3],
            vec![6, 0, 4, 6, 8, 12, 3, 5, 9],
            vec![2, 2, 0, 0, 2, 2, 0, 2, 2],
        ];
        rows[0][0] = 3;
        let bad = Mat::from_int_rows(&rows).unwrap();
        assert!(matches!(
            conservation_report(&mech, Some(&bad)),
            Err(Error::ElementMatrixMismatch)
        ));
    }

    #[test]
    fn partition_and_step_shape_are_validated() {
        let species = vec!["A".into(), "B".into()];
        let rows = vec![vec![-1], vec![1]];
        assert!(matches!(
            Mechanism::from_int_rows(species.clone(), vec![0], vec![0], rows.clone()),
            Err(Error::PartitionMismatch)
        ));
        assert!(matches!(
            Mechanism::from_int_rows(species.clone(), vec![0, 1], vec![], vec![vec![1], vec![1]]),
            Err(Error::OneSidedStep(0))
        ));
        assert!(Mechanism::from_int_rows(species, vec![0, 1], vec![], rows).is_ok());
    }

    #[test]
    fn azomethane_radius_six_lattice_count() {
        let mech = azomethane();
        let found = consistent_reactions(&mech, 6).unwrap();
        assert_eq!(found.lattice_count, 35);
        assert_eq!(found.reactions.len(), 34);
        // The net decomposition into nitrogen and ethane is among them.
        assert!(found
            .reactions
            .contains(&rv(&[-2, 2, 0, 2, 0, 0, 0, 0, 0])));
        // Closure: every reported reaction passes a fresh membership test,
        // is integral, nonzero, and within budget.
        for c in &found.reactions {
            assert!(is_consistent(&mech, c).unwrap());
            let total: Rat = c.iter().map(|x| x.abs()).sum();
            assert!(total <= int(6));
            assert!(c.iter().any(|x| !x.is_zero()));
            assert!(c.iter().all(|x| x.is_integer()));
        }
    }

    #[test]
    fn azomethane_region_is_a_six_polytope_with_fourteen_vertices() {
        let region = consistent_region(&azomethane(), 6).unwrap();
        assert_eq!(region.dimension(), Some(6));
        let expected: BTreeSet<Vec<Rat>> = [
            [0, 0, 0, 0, 0, 0, 0, 0, 0],
            [-2, 0, 0, 0, 0, 0, -2, 0, 2],
            [0, 0, 0, 0, 0, 2, -2, 0, -2],
            [0, 0, 0, 0, 2, 0, -2, -2, 0],
            [0, 0, 0, 2, 0, 0, -4, 0, 0],
            [-1, 0, 1, 0, 0, 0, -1, 1, 0],
            [-1, 0, 1, 0, 1, 0, -2, 0, 0],
            [-1, 1, 0, 0, 0, 0, 2, 0, 0],
            [-3, 1, 0, 0, 0, 0, 0, 0, 2],
            [-1, 1, 0, 0, 0, 2, 0, 0, -2],
            [-1, 1, 0, 0, 2, 0, 0, -2, 0],
            [-2, 1, 1, 0, 0, 0, 1, 1, 0],
            [-2, 1, 1, 0, 1, 0, 0, 0, 0],
            [-2, 2, 0, 2, 0, 0, 0, 0, 0],
        ]
        .iter()
        .map(|v| rv(v))
        .collect();
        let got: BTreeSet<Vec<Rat>> = region.vertices().iter().cloned().collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn one_step_conversion_counts_its_lattice_points() {
        let mech = Mechanism::from_int_rows(
            vec!["A".into(), "B".into()],
            vec![0, 1],
            vec![],
            vec![vec![-1], vec![1]],
        )
        .unwrap();
        let found = consistent_reactions(&mech, 2).unwrap();
        // Only the forward direction is realizable by nonnegative firing.
        assert_eq!(found.reactions, vec![rv(&[-1, 1])]);
        assert_eq!(found.lattice_count, 2);
    }

    #[test]
    fn azomethane_admits_one_bounded_representation() {
        let mech = azomethane();
        assert_eq!(
            representation_finiteness(&mech).unwrap(),
            Finiteness::Finite
        );
        let c = rv(&[-5, 3, 1, 1, 1, 1, 0, 0, 0]);
        let reps = algebraic_representations(&mech, &c, None).unwrap();
        assert_eq!(reps, vec![rv(&[3, 1, 1, 1, 1, 1])]);
    }

    #[test]
    fn zero_reaction_has_only_the_empty_representation() {
        let mech = azomethane();
        let reps = algebraic_representations(&mech, &rv(&[0; 9]), None).unwrap();
        assert_eq!(reps, vec![rv(&[0; 6])]);
    }

    #[test]
    fn unbounded_solution_sets_are_witnessed() {
        let mech = Mechanism::from_int_rows(
            vec!["A".into(), "B".into()],
            vec![0, 1],
            vec![],
            vec![vec![-1, 1], vec![1, -1]],
        )
        .unwrap();
        let fin = representation_finiteness(&mech).unwrap();
        let Finiteness::Infinite { witness } = fin else {
            panic!("expected an unboundedness witness");
        };
        assert!(witness.iter().all(|w| !w.is_negative()));
        assert!(witness.iter().any(|w| w.is_positive()));
        assert!(mech
            .matrix()
            .mul_vec(&witness)
            .unwrap()
            .iter()
            .all(|x| x.is_zero()));

        let c = rv(&[-1, 1]);
        assert!(matches!(
            algebraic_representations(&mech, &c, None),
            Err(Error::InfiniteRepresentations(_))
        ));
        let reps = algebraic_representations(&mech, &c, Some(3)).unwrap();
        assert_eq!(reps, vec![rv(&[1, 0]), rv(&[2, 1])]);
    }

    #[test]
    fn observed_dependencies_must_live_on_knowns() {
        let m = azomethane_elements();
        let observed = Subspace::from_vectors(9, &[rv(&[1, 0, 0, 0, 0, 0, 1, 0, 0])]).unwrap();
        assert!(matches!(
            inverse_mechanism_spaces(9, &[0, 1, 2, 3, 4, 5], &[6, 7, 8], &m, &observed, true),
            Err(Error::ObservedOutsideKnown)
        ));
    }

    #[test]
    fn azomethane_inverse_spaces_close_with_no_excess() {
        let m = azomethane_elements();
        let observed = Subspace::from_vectors(
            9,
            &[
                rv(&[-1, -3, 1, 2, 0, 1, 0, 0, 0]),
                rv(&[2, 4, 0, -2, 0, 0, 0, 0, 0]),
                rv(&[0, 0, -1, 0, 1, 0, 0, 0, 0]),
            ],
        )
        .unwrap();
        let report =
            inverse_mechanism_spaces(9, &[0, 1, 2, 3, 4, 5], &[6, 7, 8], &m, &observed, true)
                .unwrap();
        assert_eq!(report.excess_dim, 0);
        assert_eq!(report.projected_observations.dim(), 0);
        assert_eq!(report.ambiguity_space.dim(), 3);
        assert!(report.hidden_kernel.is_zero());
        let lift = report.lift.unwrap();
        assert!(lift.unique);
        assert_eq!(lift.dependency_space.dim(), 0);
        // With nothing to explain beyond elements, the candidate step span
        // is the whole elemental kernel.
        assert_eq!(lift.candidate_step_space.dim(), 6);
        assert!(lift
            .candidate_step_space
            .contains_subspace(&Subspace::nullspace(&m))
            .unwrap());
    }

    #[test]
    fn formaldehyde_inverse_spaces_and_the_excess_direction() {
        let m = formaldehyde_elements();
        let known: Vec<usize> = (0..8).collect();
        let inter: Vec<usize> = (8..12).collect();

        // Truth table for the subspace dimensions, computed from m alone.
        let kernel = Subspace::nullspace(&m);
        let rows = Subspace::from_rows(&m);
        assert_eq!(kernel.dim(), 7);
        assert_eq!(rows.dim(), 5);
        assert_eq!(kernel.project_coords(&known).unwrap().dim(), 7);
        assert_eq!(rows.project_coords(&known).unwrap().dim(), 5);
        assert_eq!(rows.project_coords(&inter).unwrap().dim(), 4);

        let observed = Subspace::from_vectors(
            12,
            &[
                rv(&[1, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0]),
                rv(&[0, 1, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0]),
                rv(&[0, 0, 1, 0, -2, 0, 0, 0, 0, 0, 0, 0]),
                rv(&[0, 0, 0, 1, -2, 0, 0, 0, 0, 0, 0, 0]),
                rv(&[0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0]),
                rv(&[0, 0, 0, 0, 0, 0, 1, -1, 0, 0, 0, 0]),
            ],
        )
        .unwrap();
        assert_eq!(observed.dim(), 6);

        let report = inverse_mechanism_spaces(12, &known, &inter, &m, &observed, true).unwrap();
        assert_eq!(report.complement_space.dim(), 3);
        assert_eq!(report.excess_dim, 1);
        let target = vec![
            int(1),
            crate::rat::rat(-12, 23),
            crate::rat::rat(12, 23),
            crate::rat::rat(12, 23),
            crate::rat::rat(-49, 23),
            crate::rat::rat(-26, 23),
            crate::rat::rat(26, 23),
            crate::rat::rat(-29, 23),
        ];
        assert!(report.projected_observations.contains(&target).unwrap());

        assert_eq!(report.ambiguity_space.dim(), 4);
        for v in [
            rv(&[1, 0, 0, 0, 1, 0, 1, 0]),
            rv(&[-1, 0, 0, 0, -1, 1, 0, 0]),
            rv(&[0, 2, 1, 1, 0, 0, 0, 0]),
        ] {
            assert!(report.ambiguity_space.contains(&v).unwrap());
        }
        assert!(report.hidden_kernel.is_zero());

        let lift = report.lift.unwrap();
        assert!(lift.unique);
        assert_eq!(lift.dependency_space.dim(), 1);
        let mut padded = target.clone();
        padded.extend([Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()]);
        assert!(lift.dependency_space.contains(&padded).unwrap());
        assert_eq!(lift.candidate_step_space.dim(), 6);
    }

    #[test]
    fn formaldehyde_hidden_dependency_cross_check() {
        let m = formaldehyde_elements();
        let n = formaldehyde_steps();
        assert!(m.mul(&n).unwrap().is_zero());

        // The dependency direction of the actual mechanism: elemental-kernel
        // vectors orthogonal to every step column.
        let kernel = Subspace::nullspace(&m);
        let steps = Subspace::from_cols(&n);
        let h_actual = kernel.intersection(&steps.orthogonal_complement()).unwrap();
        assert_eq!(h_actual.dim(), 1);
        let basis = h_actual.basis_vectors();
        let lead = basis[0][0].clone();
        let scaled: Vec<Rat> = basis[0].iter().map(|x| x / &lead).collect();
        let frozen = vec![
            int(1),
            crate::rat::rat(-47, 64),
            crate::rat::rat(15, 32),
            crate::rat::rat(15, 32),
            crate::rat::rat(-75, 32),
            crate::rat::rat(-5, 128),
            crate::rat::rat(7, 4),
            crate::rat::rat(-101, 128),
            crate::rat::rat(17, 64),
            crate::rat::rat(-43, 64),
            crate::rat::rat(-219, 128),
            crate::rat::rat(-315, 128),
        ];
        assert_eq!(scaled, frozen);

        // Species space splits orthogonally into step span ⊕ dependency ⊕
        // elemental rows.
        let rows = Subspace::from_rows(&m);
        assert_eq!(steps.dim() + h_actual.dim() + rows.dim(), 12);
        for sv in steps.basis_vectors() {
            assert!(orthogonal_to(&sv, &rows));
            assert!(orthogonal_to(&sv, &h_actual));
        }
        for hv in h_actual.basis_vectors() {
            assert!(orthogonal_to(&hv, &rows));
        }

        // The actual dependency and the zero-padded lift differ by a vector
        // whose known part lies in the ambiguity space.
        let known: Vec<usize> = (0..8).collect();
        let observed = Subspace::from_cols(&n)
            .orthogonal_complement()
            .intersection(&Subspace::from_vectors(12, &{
                let mut units = Vec::new();
                for k in 0..8usize {
                    let mut e = vec![Rat::zero(); 12];
                    e[k] = int(1);
                    units.push(e);
                }
                units
            }).unwrap())
            .unwrap();
        // Observed dependencies: left-kernel of the step matrix restricted
        // to known species, padded with zeros.
        let report =
            inverse_mechanism_spaces(12, &known, &[8, 9, 10, 11], &m, &observed, true).unwrap();
        let lift = report.lift.unwrap();
        let target: Vec<Rat> = lift.dependency_space.basis_vectors()[0][..8].to_vec();

        // Scale the actual dependency so its projection onto the complement
        // space matches the lift's known part.
        let known_rows = Subspace::from_rows(&m).project_coords(&known).unwrap();
        let h_known: Vec<Rat> = scaled[..8].to_vec();
        let onto = known_rows.project_vector(&h_known).unwrap();
        let resid: Vec<Rat> = h_known.iter().zip(&onto).map(|(a, b)| a - b).collect();
        let (mut num, mut den) = (Rat::zero(), Rat::zero());
        for (t, r) in target.iter().zip(&resid) {
            if !r.is_zero() {
                num = t.clone();
                den = r.clone();
                break;
            }
        }
        assert!(!den.is_zero());
        let lam = num / den;
        let diff: Vec<Rat> = h_known
            .iter()
            .zip(&target)
            .map(|(h, t)| &lam * h - t)
            .collect();
        assert!(report.ambiguity_space.contains(&diff).unwrap());
    }

    #[test]
    fn azomethane_precedence_levels_and_stages() {
        let mech = azomethane();
        let report = precedence_analysis(&mech);
        assert_eq!(
            report.levels,
            vec![Some(1), Some(2), Some(2), Some(3), Some(2), Some(3)]
        );
        let stage_sets: Vec<Vec<usize>> = report
            .stages
            .iter()
            .map(|s| s.iter().copied().collect())
            .collect();
        assert_eq!(stage_sets, vec![vec![], vec![6], vec![6, 7, 8]]);
        let avail: Vec<Vec<usize>> = report
            .available
            .iter()
            .map(|s| s.iter().copied().collect())
            .collect();
        assert_eq!(avail, vec![vec![0], vec![0, 1, 2, 4], vec![0, 1, 2, 3, 4, 5]]);
        for w in report.stages.windows(2) {
            assert!(w[1].is_superset(&w[0]));
        }
        assert!(report.stages.len() <= mech.intermediates().len() + 1);

        assert!(report.order_realizable(&rv(&[3, 1, 1, 1, 1, 1])));
        assert!(report.order_realizable(&rv(&[2, 0, 0, 0, 0, 0])));
        assert!(!report.order_realizable(&rv(&[1, 1, 0, 0, 0, 0])));
    }

    #[test]
    fn unproduced_intermediate_blocks_its_step() {
        let mech = Mechanism::from_int_rows(
            vec!["A".into(), "I".into(), "B".into()],
            vec![0, 2],
            vec![1],
            vec![vec![-1, 0], vec![0, -1], vec![1, 1]],
        )
        .unwrap();
        let report = precedence_analysis(&mech);
        assert_eq!(report.levels, vec![Some(1), None]);
        assert_eq!(report.stages, vec![BTreeSet::new()]);
    }

    #[test]
    fn azomethane_candidate_steps_within_the_unit_box() {
        let kernel = Subspace::nullspace(&azomethane_elements());
        let found = candidate_elementary_reactions(&kernel, 1).unwrap();
        assert_eq!(found.representatives.len(), 58);
        assert_eq!(found.vector_count, 116);
        for rep in &found.representatives {
            assert!(kernel.contains(rep).unwrap());
            assert!(rep.iter().all(|x| x.is_integer() && x.abs() <= int(1)));
            assert!(rep.iter().any(|x| x.is_positive()));
            assert!(rep.iter().any(|x| x.is_negative()));
            assert!(rep.iter().find(|x| !x.is_zero()).unwrap().is_positive());
        }
    }

    #[test]
    fn candidate_steps_for_a_line_and_the_zero_space() {
        let line = Subspace::from_vectors(2, &[rv(&[1, -1])]).unwrap();
        let found = candidate_elementary_reactions(&line, 2).unwrap();
        assert_eq!(found.representatives, vec![rv(&[1, -1]), rv(&[2, -2])]);
        assert_eq!(found.vector_count, 4);

        let zero = Subspace::zero(4);
        let none = candidate_elementary_reactions(&zero, 3).unwrap();
        assert!(none.representatives.is_empty());
        assert_eq!(none.vector_count, 0);
    }

    #[test]
    fn mechanism_json_round_trips() {
        let mech = azomethane();
        let json = serde_json::to_string(&mech).unwrap();
        assert!(json.contains("\"species\""));
        assert!(json.contains("\"known\""));
        assert!(json.contains("\"intermediates\""));
        assert!(json.contains("\"N\""));
        let back: Mechanism = serde_json::from_str(&json).unwrap();
        assert_eq!(back, mech);

        let literal = r#"{"species":["A","B"],"known":[0],"intermediates":[1],
                          "N":[[-1],[1]]}"#;
        let small: Mechanism = serde_json::from_str(literal).unwrap();
        assert_eq!(small.n_steps(), 1);
        assert_eq!(small.intermediates(), &[1]);
    }

    #[test]
    fn random_consistent_sets_pass_their_own_membership_test() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut nonempty = 0;
        for _ in 0..40 {
            let mut rows = vec![vec![0i64; 2]; 3];
            for j in 0..2 {
                loop {
                    for r in rows.iter_mut() {
                        r[j] = rng.gen_range(-2..=2);
                    }
                    let col: Vec<i64> = rows.iter().map(|r| r[j]).collect();
                    if col.iter().any(|&x| x < 0) && col.iter().any(|&x| x > 0) {
                        break;
                    }
                }
            }
            let mech = Mechanism::from_int_rows(
                vec!["A".into(), "B".into(), "C".into()],
                vec![0, 1, 2],
                vec![],
                rows,
            )
            .unwrap();
            let found = consistent_reactions(&mech, 3).unwrap();
            assert_eq!(found.lattice_count, found.reactions.len() + 1);
            if !found.reactions.is_empty() {
                nonempty += 1;
            }
            for c in &found.reactions {
                assert!(is_consistent(&mech, c).unwrap());
                let reps = algebraic_representations(&mech, c, Some(6)).unwrap();
                for x in &reps {
                    assert!(x.iter().all(|v| !v.is_negative() && v.is_integer()));
                    assert_eq!(mech.matrix().mul_vec(x).unwrap(), *c);
                }
            }
        }
        assert!(nonempty > 20);
    }
}
