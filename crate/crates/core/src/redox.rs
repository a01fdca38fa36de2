//! Charged-species balancing.
//!
//! Charge enters the balancing problem as one extra conserved coordinate,
//! and three classical devices deal with it: slicing the charge-augmented
//! species cone by a searched hyperplane, neutralizing every ion with
//! fictitious spectator counterions, and the textbook half-reaction recipe
//! (balance the core elements, then oxygen with H2O, hydrogen with H⁺,
//! switch to OH⁻ in basic medium, and finish the charge with electrons).
//! The recipe is also analyzed as a search procedure: which balances of a
//! whole reaction can be reached by splitting it into two half-reactions,
//! balancing each, and cancelling electrons.

use crate::balance::{self, Balance};
use crate::formula::{parse_formula, Composition, Reaction};
use crate::linalg::{dot, Mat};
use crate::lp::{self, Constraint};
use crate::rat::{int, serde_rat_vec, Rat};
use crate::{Error, Result};
use num::{BigInt, Integer, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Solvent regime for the half-reaction recipe: acids balance hydrogen
/// with H⁺, bases trade every H⁺ for a water/hydroxide pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Medium {
    Acidic,
    Basic,
}

/// One half of a redox process: an unweighted reaction (ions and an
/// explicit electron species allowed) tagged with its medium.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfReaction {
    reaction: Reaction,
    medium: Medium,
}

impl HalfReaction {
    /// Wraps a reaction, rejecting electron species on both sides at once.
    pub fn new(reaction: Reaction, medium: Medium) -> Result<HalfReaction> {
        let on_left = reaction.reactants.iter().any(|(_, c)| c.is_electron());
        let on_right = reaction.products.iter().any(|(_, c)| c.is_electron());
        if on_left && on_right {
            return Err(Error::ElectronOnBothSides);
        }
        Ok(HalfReaction { reaction, medium })
    }

    pub fn reaction(&self) -> &Reaction {
        &self.reaction
    }

    pub fn medium(&self) -> Medium {
        self.medium
    }
}

// ---------------------------------------------------------------------------
// Charge-augmented slicing
// ---------------------------------------------------------------------------

/// A uniform candidate normal that failed, with the witness species whose
/// vector it does not value positively (its ray never crosses the plane).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceRejection {
    #[serde(with = "serde_rat_vec")]
    pub candidate: Vec<Rat>,
    pub species: String,
}

/// Outcome of looking for a hyperplane `n·x = 1` crossed by every species
/// ray of the charge-augmented system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SliceOutcome {
    /// A uniform (all-ones, charge ±1) candidate already works.
    Canonical {
        #[serde(with = "serde_rat_vec")]
        normal: Vec<Rat>,
    },
    /// The uniform candidates fail but a feasibility search found a normal.
    Searched {
        #[serde(with = "serde_rat_vec")]
        normal: Vec<Rat>,
        rejections: Vec<SliceRejection>,
    },
    /// No hyperplane meets every ray; callers must stay at cone level.
    NoCanonicalSlice { rejections: Vec<SliceRejection> },
}

/// A reaction's species vectors extended by one trailing charge coordinate,
/// together with the result of the slicing-hyperplane search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeSystem {
    pub element_order: Vec<String>,
    pub species: Vec<String>,
    /// Columns are species vectors; the last row is the charge row.
    pub matrix: Mat,
    pub slice: SliceOutcome,
}

fn first_missed_species(normal: &[Rat], labels: &[String], cols: &[Vec<Rat>]) -> Option<String> {
    labels
        .iter()
        .zip(cols)
        .find(|(_, g)| !dot(normal, g).is_positive())
        .map(|(l, _)| l.clone())
}

/// Builds the charge-augmented species matrix and searches for a slicing
/// hyperplane valuing every species positively. Uniform candidates (atom
/// count plus or minus charge) are tried first; when both fail an exact
/// feasibility program looks for any valid normal, and only when that is
/// infeasible does the result fall back to `NoCanonicalSlice`.
pub fn charge_system(rx: &Reaction) -> Result<ChargeSystem> {
    let element_order = rx.element_order();
    let matrix = rx.composition_matrix(&element_order, true)?;
    let labels = rx.species_labels();
    let cols = matrix.col_vecs();
    let d = matrix.nrows();

    let mut rejections = Vec::new();
    for charge_sign in [1i64, -1] {
        let mut candidate = vec![int(1); d];
        candidate[d - 1] = int(charge_sign);
        match first_missed_species(&candidate, &labels, &cols) {
            None => {
                return Ok(ChargeSystem {
                    element_order,
                    species: labels,
                    matrix,
                    slice: SliceOutcome::Canonical { normal: candidate },
                })
            }
            Some(species) => rejections.push(SliceRejection { candidate, species }),
        }
    }

    // Free normal n = u - w with n·g >= 1 for every species column g.
    let cons: Vec<Constraint> = cols
        .iter()
        .map(|g| {
            let mut c: Vec<Rat> = g.clone();
            c.extend(g.iter().map(|v| -v));
            Constraint::ge(c, int(1))
        })
        .collect();
    let slice = match lp::feasible_point(2 * d, &cons)? {
        Some(x) => SliceOutcome::Searched {
            normal: (0..d).map(|t| &x[t] - &x[d + t]).collect(),
            rejections,
        },
        None => SliceOutcome::NoCanonicalSlice { rejections },
    };
    Ok(ChargeSystem {
        element_order,
        species: labels,
        matrix,
        slice,
    })
}

// ---------------------------------------------------------------------------
// Spectator-ion transformation
// ---------------------------------------------------------------------------

const CATION: &str = "Q";
const ANION: &str = "X";

fn bind_spectators(comp: &Composition) -> Result<Composition> {
    if comp.charge == 0 {
        return Ok(comp.clone());
    }
    let mut elements = comp.elements.clone();
    if comp.charge > 0 {
        elements.insert(ANION.to_string(), comp.charge as u32);
    } else {
        elements.insert(CATION.to_string(), (-comp.charge) as u32);
    }
    Composition::new(elements, 0)
}

fn side_has(side: &[(String, Composition)], element: &str) -> bool {
    side.iter().any(|(_, c)| c.elements.contains_key(element))
}

/// Neutralizes every ion by binding fictitious spectator counterions:
/// charge +k becomes k bound X⁻ units, charge −k becomes k bound Q⁺ units,
/// so the result is an ordinary neutral reaction over elements ∪ {Q, X}.
/// The neutral salt QX is appended to the products whenever Q or X would
/// otherwise appear on only one side. A reaction without charges is
/// returned unchanged.
pub fn spectator_transform(rx: &Reaction) -> Result<Reaction> {
    if !rx.has_charge() {
        return Ok(rx.clone());
    }
    let rebind = |side: &[(String, Composition)]| -> Result<Vec<(String, Composition)>> {
        side.iter()
            .map(|(label, comp)| {
                let bound = bind_spectators(comp)?;
                let new_label = if comp.charge == 0 {
                    label.clone()
                } else {
                    bound.render()
                };
                Ok((new_label, bound))
            })
            .collect()
    };
    let reactants = rebind(&rx.reactants)?;
    let mut products = rebind(&rx.products)?;

    let single_sided = |element: &str| {
        let left = side_has(&reactants, element);
        let right = side_has(&products, element);
        (left || right) && left != right
    };
    if single_sided(CATION) || single_sided(ANION) {
        let mut salt = indexmap::IndexMap::new();
        salt.insert(CATION.to_string(), 1);
        salt.insert(ANION.to_string(), 1);
        products.push(("QX".to_string(), Composition::new(salt, 0)?));
    }
    Reaction::new(reactants, products)
}

/// Deletes the spectator bookkeeping from a balance of a transformed
/// reaction, mapping its coefficients position-wise back onto the original
/// (a trailing QX term, if present, is dropped) and re-validating the
/// result — so success certifies exact element and charge conservation.
pub fn strip_spectators(b: &Balance, original: &Reaction) -> Result<Balance> {
    let nr = original.n_reactants();
    let np = original.n_products();
    let transformed = b.reaction();
    if transformed.n_reactants() != nr
        || transformed.n_products() < np
        || transformed.n_products() > np + 1
    {
        return Err(Error::DimensionMismatch {
            left: transformed.n_reactants() + transformed.n_products(),
            right: nr + np,
        });
    }
    let coeffs: Vec<Rat> = b.coefficients()[..nr + np].to_vec();
    Balance::new(original.clone(), coeffs)
}

// ---------------------------------------------------------------------------
// The half-reaction recipe
// ---------------------------------------------------------------------------

fn water() -> Composition {
    parse_formula("H2O").expect("fixed formula")
}

fn proton() -> Composition {
    parse_formula("H^+").expect("fixed formula")
}

fn hydroxide() -> Composition {
    parse_formula("OH^-").expect("fixed formula")
}

/// The four reagents the recipe itself manages; when one of them is listed
/// in a half-reaction it is still driven by its own step rather than
/// carried as ordinary stock.
fn is_recipe_reagent(c: &Composition) -> bool {
    c.is_electron() || *c == water() || *c == proton() || *c == hydroxide()
}

fn core_elements(rx: &Reaction) -> Vec<String> {
    rx.element_order()
        .into_iter()
        .filter(|e| e != "H" && e != "O")
        .collect()
}

fn core_vector(comp: &Composition, core: &[String]) -> Vec<Rat> {
    core.iter()
        .map(|e| int(comp.elements.get(e).map(|&k| k as i64).unwrap_or(0)))
        .collect()
}

struct CoreProjection {
    /// Indices (into reactants / products) of species with a nonzero
    /// projection, with their projected columns.
    reactant_cols: Vec<(usize, Vec<Rat>)>,
    product_cols: Vec<(usize, Vec<Rat>)>,
}

fn project_core(rx: &Reaction) -> CoreProjection {
    let core = core_elements(rx);
    let keep = |side: &[(String, Composition)]| {
        side.iter()
            .enumerate()
            .map(|(i, (_, c))| (i, core_vector(c, &core)))
            .filter(|(_, v)| v.iter().any(|x| !x.is_zero()))
            .collect::<Vec<_>>()
    };
    CoreProjection {
        reactant_cols: keep(&rx.reactants),
        product_cols: keep(&rx.products),
    }
}

/// Signed extreme balances of the projection onto non-H, non-O elements
/// (charge ignored), indexed like the projection's kept species. Empty
/// when both sides project away entirely (vacuously realizable).
fn core_extreme_balances(proj: &CoreProjection) -> Result<Vec<Vec<Rat>>> {
    let nr = proj.reactant_cols.len();
    let np = proj.product_cols.len();
    if nr == 0 && np == 0 {
        return Ok(vec![Vec::new()]);
    }
    if nr == 0 || np == 0 {
        return Err(Error::HalfReactionInfeasible);
    }
    let rmat = Mat::from_cols(proj.reactant_cols.iter().map(|(_, v)| v.clone()).collect())?;
    let pmat = Mat::from_cols(proj.product_cols.iter().map(|(_, v)| v.clone()).collect())?;
    let rays = balance::moduli_rays(&rmat, &pmat)?;
    if rays.is_empty() {
        return Err(Error::HalfReactionInfeasible);
    }
    Ok(rays)
}

/// Working state of the recipe: signed coefficients (reactants negative)
/// for the half-reaction's own species plus the four managed reagents.
struct RecipeState {
    species: Vec<(String, Composition, Rat)>,
    water: Rat,
    proton: Rat,
    hydroxide: Rat,
    electron: Rat,
}

impl RecipeState {
    fn net<F: Fn(&Composition) -> Rat>(&self, f: F) -> Rat {
        let mut total: Rat = self
            .species
            .iter()
            .map(|(_, c, a)| a * f(c))
            .sum();
        total = total + &self.water * f(&water()) + &self.proton * f(&proton());
        total + &self.hydroxide * f(&hydroxide())
    }

    fn net_element(&self, element: &str) -> Rat {
        self.net(|c| int(c.elements.get(element).map(|&k| k as i64).unwrap_or(0)))
    }

    fn net_charge(&self) -> Rat {
        // The managed electron slot is excluded here on purpose: step (5)
        // reads the imbalance it has to absorb.
        self.net(|c| int(c.charge))
    }
}

fn lift_core_balance(h: &HalfReaction, proj: &CoreProjection, ray: &[Rat]) -> Result<Balance> {
    let rx = h.reaction();
    let nr_kept = proj.reactant_cols.len();

    // Step (1): core species take their projected balance; species the
    // projection cannot see keep coefficient one on their stated side,
    // except the recipe's own reagents, which start at zero.
    let mut signed_r: Vec<Rat> = rx
        .reactants
        .iter()
        .map(|(_, c)| {
            if is_recipe_reagent(c) {
                Rat::zero()
            } else {
                int(-1)
            }
        })
        .collect();
    let mut signed_p: Vec<Rat> = rx
        .products
        .iter()
        .map(|(_, c)| {
            if is_recipe_reagent(c) {
                Rat::zero()
            } else {
                int(1)
            }
        })
        .collect();
    for (k, (i, _)) in proj.reactant_cols.iter().enumerate() {
        signed_r[*i] = ray[k].clone();
    }
    for (k, (j, _)) in proj.product_cols.iter().enumerate() {
        signed_p[*j] = ray[nr_kept + k].clone();
    }

    let mut state = RecipeState {
        species: rx
            .reactants
            .iter()
            .zip(&signed_r)
            .chain(rx.products.iter().zip(&signed_p))
            .filter(|((_, c), _)| !is_recipe_reagent(c))
            .map(|((l, c), a)| (l.clone(), c.clone(), a.clone()))
            .collect(),
        water: Rat::zero(),
        proton: Rat::zero(),
        hydroxide: Rat::zero(),
        electron: Rat::zero(),
    };

    // Step (2): oxygen with water.
    state.water = -state.net_element("O");
    // Step (3): hydrogen with protons.
    state.proton = -state.net_element("H");
    // Step (4): in base, trade each proton for a water/hydroxide pair.
    if h.medium() == Medium::Basic {
        let c = std::mem::replace(&mut state.proton, Rat::zero());
        state.water += &c;
        state.hydroxide -= &c;
    }
    // Step (5): charge with electrons.
    state.electron = state.net_charge();

    // Assemble: electrons and water lead the reactant side, protons and
    // hydroxide trail it; on the product side all reagents trail.
    let mut reactants: Vec<(String, Composition, Rat)> = Vec::new();
    let mut products: Vec<(String, Composition, Rat)> = Vec::new();
    let take = |out: &mut Vec<(String, Composition, Rat)>,
                    label: &str,
                    comp: Composition,
                    coeff: &Rat,
                    negative: bool| {
        if coeff.is_negative() == negative && !coeff.is_zero() {
            out.push((label.to_string(), comp, coeff.clone()));
        }
    };
    take(&mut reactants, "e^-", Composition::electron(), &state.electron, true);
    take(&mut reactants, "H2O", water(), &state.water, true);
    for (l, c, a) in &state.species {
        take(&mut reactants, l, c.clone(), a, true);
    }
    take(&mut reactants, "H^+", proton(), &state.proton, true);
    take(&mut reactants, "OH^-", hydroxide(), &state.hydroxide, true);
    for (l, c, a) in &state.species {
        take(&mut products, l, c.clone(), a, false);
    }
    take(&mut products, "H2O", water(), &state.water, false);
    take(&mut products, "H^+", proton(), &state.proton, false);
    take(&mut products, "OH^-", hydroxide(), &state.hydroxide, false);
    take(&mut products, "e^-", Composition::electron(), &state.electron, false);

    let coeffs: Vec<Rat> = reactants
        .iter()
        .chain(&products)
        .map(|(_, _, a)| a.clone())
        .collect();
    let rx_out = Reaction::new(
        reactants.into_iter().map(|(l, c, _)| (l, c)).collect(),
        products.into_iter().map(|(l, c, _)| (l, c)).collect(),
    )?;
    Balance::new(rx_out, coeffs)
}

/// All deterministic outcomes of the recipe: one lifted balance per
/// extreme balance of the half-reaction's non-H,O core. A single entry
/// means the recipe is deterministic for this half-reaction.
pub fn half_reaction_extremes(h: &HalfReaction) -> Result<Vec<Balance>> {
    let proj = project_core(h.reaction());
    let rays = core_extreme_balances(&proj)?;
    rays.iter().map(|ray| lift_core_balance(h, &proj, ray)).collect()
}

/// Runs the five-step recipe. Errors if the core admits no balance, or
/// lists the extreme outcomes in the error when it admits several instead
/// of silently picking one.
pub fn balance_half_reaction(h: &HalfReaction) -> Result<Balance> {
    let mut lifts = half_reaction_extremes(h)?;
    if lifts.len() == 1 {
        Ok(lifts.pop().expect("checked length"))
    } else {
        let listing = lifts.iter().map(Balance::format).collect::<Vec<_>>().join("; ");
        Err(Error::HalfReactionAmbiguous(listing))
    }
}

/// Signed electron coefficient of a balanced half-reaction (negative when
/// electrons sit among the reactants, zero when none appear).
pub fn electron_coefficient(b: &Balance) -> Rat {
    b.reaction()
        .species()
        .zip(b.coefficients())
        .filter(|((_, c), _)| c.is_electron())
        .map(|(_, a)| a.clone())
        .sum()
}

// ---------------------------------------------------------------------------
// Combining half-reactions
// ---------------------------------------------------------------------------

fn as_integer(x: &Rat) -> BigInt {
    debug_assert!(x.is_integer(), "balances are canonically integral");
    x.to_integer()
}

/// Combines two balanced half-reactions by the smallest positive integer
/// multipliers that cancel the electrons exactly. Electrons must appear on
/// opposite sides; a half without electrons, or a pair whose sum cancels
/// entirely (one is the other's reversal), is reported as degenerate.
pub fn combine_half_reactions(ox: &Balance, red: &Balance) -> Result<Balance> {
    let e_ox = electron_coefficient(ox);
    let e_red = electron_coefficient(red);
    if e_ox.is_zero() || e_red.is_zero() {
        return Err(Error::DegenerateCombination);
    }
    if e_ox.is_positive() == e_red.is_positive() {
        return Err(Error::ElectronsSameSide);
    }
    let n_ox = as_integer(&e_ox).abs();
    let n_red = as_integer(&e_red).abs();
    let l = n_ox.lcm(&n_red);
    let m_ox = Rat::from(&l / n_ox);
    let m_red = Rat::from(&l / n_red);

    // Net signed coefficient per species label, in first-appearance order;
    // any electron composition shares the one canonical slot.
    let mut order: Vec<(String, Composition)> = Vec::new();
    let mut totals: Vec<Rat> = Vec::new();
    let mut add = |label: &str, comp: &Composition, amount: Rat| -> Result<()> {
        let key = if comp.is_electron() { "e^-" } else { label };
        match order.iter().position(|(l, _)| l == key) {
            Some(i) => {
                if order[i].1 != *comp && !comp.is_electron() {
                    return Err(Error::DuplicateSpecies(key.to_string()));
                }
                totals[i] += amount;
            }
            None => {
                order.push((key.to_string(), comp.clone()));
                totals.push(amount);
            }
        }
        Ok(())
    };
    for (b, m) in [(ox, &m_ox), (red, &m_red)] {
        for ((label, comp), a) in b.reaction().species().zip(b.coefficients()) {
            add(label, comp, m * a)?;
        }
    }

    let mut reactants = Vec::new();
    let mut products = Vec::new();
    let mut coeffs_r = Vec::new();
    let mut coeffs_p = Vec::new();
    for ((label, comp), total) in order.into_iter().zip(totals) {
        if total.is_zero() {
            continue;
        }
        if total.is_negative() {
            reactants.push((label, comp));
            coeffs_r.push(total);
        } else {
            products.push((label, comp));
            coeffs_p.push(total);
        }
    }
    if reactants.is_empty() || products.is_empty() {
        return Err(Error::DegenerateCombination);
    }
    coeffs_r.extend(coeffs_p);
    Balance::new(Reaction::new(reactants, products)?, coeffs_r)
}

// ---------------------------------------------------------------------------
// Split enumeration and reachable balances
// ---------------------------------------------------------------------------

type HalfShape = (Vec<usize>, Vec<usize>);

fn subsets(n: usize) -> Vec<Vec<usize>> {
    (1u32..(1 << n))
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
        .collect()
}

fn half_is_realizable(rx: &Reaction, shape: &HalfShape) -> Result<bool> {
    let half = reaction_from_shape(rx, shape)?;
    let proj = project_core(&half);
    match core_extreme_balances(&proj) {
        Ok(_) => Ok(true),
        Err(Error::HalfReactionInfeasible) => Ok(false),
        Err(e) => Err(e),
    }
}

fn reaction_from_shape(rx: &Reaction, shape: &HalfShape) -> Result<Reaction> {
    let pick = |side: &[(String, Composition)], idx: &[usize]| {
        idx.iter().map(|&i| side[i].clone()).collect::<Vec<_>>()
    };
    Reaction::new(
        pick(&rx.reactants, &shape.0),
        pick(&rx.products, &shape.1),
    )
}

fn shape_size(s: &HalfShape) -> usize {
    s.0.len() + s.1.len()
}

/// Enumerates coverings of the reaction by two half-reactions, each of
/// which can pass step (1) of the recipe: R = R1 ∪ R2 and P = P1 ∪ P2,
/// not necessarily disjointly. Proper halves (neither equal to the whole
/// reaction) are preferred; only when no proper covering exists does the
/// enumeration admit the whole reaction as one of the halves, so a
/// single-species-per-side reaction yields the trivial (whole, whole)
/// split. Splits are ordered by total subset size then lexicographically,
/// counting each unordered pair once.
pub fn enumerate_half_reaction_splits(rx: &Reaction) -> Result<Vec<(Reaction, Reaction)>> {
    let nr = rx.n_reactants();
    let np = rx.n_products();
    let full_r: Vec<usize> = (0..nr).collect();
    let full_p: Vec<usize> = (0..np).collect();

    let mut halves: Vec<HalfShape> = Vec::new();
    for r_set in subsets(nr) {
        for p_set in subsets(np) {
            let shape = (r_set.clone(), p_set);
            if half_is_realizable(rx, &shape)? {
                halves.push(shape);
            }
        }
    }
    halves.sort_by_key(|s| (shape_size(s), s.clone()));

    let covering_pairs = |allow_whole: bool| {
        let mut found: Vec<(HalfShape, HalfShape)> = Vec::new();
        for (i, h1) in halves.iter().enumerate() {
            if !allow_whole && h1.0 == full_r && h1.1 == full_p {
                continue;
            }
            for h2 in &halves[i..] {
                if !allow_whole && h2.0 == full_r && h2.1 == full_p {
                    continue;
                }
                let r_union: BTreeSet<usize> =
                    h1.0.iter().chain(&h2.0).copied().collect();
                let p_union: BTreeSet<usize> =
                    h1.1.iter().chain(&h2.1).copied().collect();
                if r_union.len() == nr && p_union.len() == np {
                    found.push((h1.clone(), h2.clone()));
                }
            }
        }
        found
    };

    let mut pairs = covering_pairs(false);
    if pairs.is_empty() {
        pairs = covering_pairs(true);
    }
    pairs.sort_by_key(|(a, b)| {
        (
            shape_size(a) + shape_size(b),
            a.clone(),
            b.clone(),
        )
    });
    pairs
        .into_iter()
        .map(|(a, b)| Ok((reaction_from_shape(rx, &a)?, reaction_from_shape(rx, &b)?)))
        .collect()
}

/// Signed primitive coefficients keyed by species label — the canonical
/// form used to compare balances that may order species differently or
/// carry explicit zero coefficients.
fn canonical_form(b: &Balance) -> Vec<(String, Rat)> {
    let mut entries: Vec<(String, Rat)> = b
        .reaction()
        .species()
        .zip(b.coefficients())
        .filter(|(_, a)| !a.is_zero())
        .map(|((l, _), a)| (l.clone(), a.clone()))
        .collect();
    entries.sort();
    entries
}

/// Whether any balance in `set` equals `target` up to species order.
pub fn contains_balance(set: &[Balance], target: &Balance) -> bool {
    let key = canonical_form(target);
    set.iter().any(|b| canonical_form(b) == key)
}

/// Every balance the half-reaction method can produce for this reaction:
/// each enumerated split has both halves run through the recipe (all
/// extreme outcomes when a core is ambiguous), electron-carrying pairs on
/// opposite sides are combined, and a half that comes out electron-free is
/// itself a finished balance (the degenerate scaling case). Results are
/// deduplicated into discovery order.
pub fn half_reaction_reachable_balances(rx: &Reaction, medium: Medium) -> Result<Vec<Balance>> {
    let mut out: Vec<Balance> = Vec::new();
    let mut seen: BTreeSet<Vec<(String, Rat)>> = BTreeSet::new();
    let mut push = |b: Balance, out: &mut Vec<Balance>| {
        if seen.insert(canonical_form(&b)) {
            out.push(b);
        }
    };
    for (h1, h2) in enumerate_half_reaction_splits(rx)? {
        let lifts1 = half_reaction_extremes(&HalfReaction::new(h1, medium)?)?;
        let lifts2 = half_reaction_extremes(&HalfReaction::new(h2, medium)?)?;
        for b1 in &lifts1 {
            if electron_coefficient(b1).is_zero() {
                push(b1.clone(), &mut out);
            }
        }
        for b2 in &lifts2 {
            if electron_coefficient(b2).is_zero() {
                push(b2.clone(), &mut out);
            }
        }
        for b1 in &lifts1 {
            for b2 in &lifts2 {
                let e1 = electron_coefficient(b1);
                let e2 = electron_coefficient(b2);
                if e1.is_zero() || e2.is_zero() || e1.is_positive() == e2.is_positive() {
                    continue;
                }
                match combine_half_reactions(b1, b2) {
                    Ok(b) => push(b, &mut out),
                    Err(Error::DegenerateCombination) => {}
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(out)
}
