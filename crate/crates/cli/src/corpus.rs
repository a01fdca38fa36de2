//! The embedded golden-example corpus: sixteen numbered end-to-end checks
//! comparing live computation against the project's reference ledger.
//!
//! Two ledger entries (checks 04 and 13) disagree with exact recomputation.
//! Those checks therefore carry *two* expectations: the ledger comparison
//! must fail, and the recomputed values must hold. A check lands in one of
//! three states: it matched the ledger, it missed the ledger exactly as
//! documented (recomputed truth confirmed), or something unexpected
//! happened. The healthy profile is fourteen `Pass` plus two
//! `DocumentedMismatch`.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use indexmap::IndexMap;
use num::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stoichos::balance::{
    apply_ratio_restriction, balance_at, classify, generating_balances, intersection_polytope,
    mixture_decomposition, Balance, BalanceKind, Side,
};
use stoichos::formula::{parse_equation, Composition, Reaction};
use stoichos::geometry::Polytope;
use stoichos::lattice::{denominator_bounded_count, fit_count_polynomial};
use stoichos::linalg::{Mat, Subspace};
use stoichos::mechanism::{
    algebraic_representations, candidate_elementary_reactions, conservation_report,
    consistent_reactions, consistent_region, inverse_mechanism_spaces, precedence_analysis,
    representation_finiteness, Finiteness, Mechanism,
};
use stoichos::rat::{int, rat, Rat};
use stoichos::redox::{
    balance_half_reaction, combine_half_reactions, contains_balance,
    enumerate_half_reaction_splits, half_reaction_reachable_balances, HalfReaction, Medium,
};

/// How one corpus check came out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckState {
    /// Computation matches the reference ledger.
    Pass,
    /// Computation contradicts the ledger exactly as documented, and the
    /// recomputed replacement values hold.
    DocumentedMismatch,
    /// Anything else — a regression either way.
    Unexpected,
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub number: u32,
    pub state: CheckState,
    pub detail: String,
}

fn plain(number: u32, pass: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult {
        number,
        state: if pass {
            CheckState::Pass
        } else {
            CheckState::Unexpected
        },
        detail: detail.into(),
    }
}

/// For checks whose ledger entry is known-bad: `ledger_match` is the
/// comparison against the ledger, `truth_ok` the comparison against the
/// pinned recomputation.
fn documented(number: u32, ledger_match: bool, truth_ok: bool, detail: impl Into<String>) -> CheckResult {
    let state = if !ledger_match && truth_ok {
        CheckState::DocumentedMismatch
    } else {
        CheckState::Unexpected
    };
    CheckResult {
        number,
        state,
        detail: detail.into(),
    }
}

/// The states a healthy corpus run produces, indexed by check number.
pub fn expected_state(number: u32) -> CheckState {
    match number {
        4 | 13 => CheckState::DocumentedMismatch,
        _ => CheckState::Pass,
    }
}

/// True when every check is in its expected state.
pub fn profile_ok(results: &[CheckResult]) -> bool {
    results.len() == 16
        && results
            .iter()
            .all(|r| r.state == expected_state(r.number))
}

fn rv(xs: &[i64]) -> Vec<Rat> {
    xs.iter().map(|&x| int(x)).collect()
}

// ---------------------------------------------------------------------------
// Shared fixtures
// ---------------------------------------------------------------------------

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

fn formaldehyde_observed() -> Subspace {
    Subspace::from_vectors(
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
    .unwrap()
}

fn azomethane_observed() -> Subspace {
    Subspace::from_vectors(
        9,
        &[
            rv(&[-1, -3, 1, 2, 0, 1, 0, 0, 0]),
            rv(&[2, 4, 0, -2, 0, 0, 0, 0, 0]),
            rv(&[0, 0, -1, 0, 1, 0, 0, 0, 0]),
        ],
    )
    .unwrap()
}

/// The balancing quadrilateral of the three-against-three system, scaled by
/// 36 so every vertex is integral.
fn scaled_quadrilateral() -> Polytope {
    Polytope::convex_hull(&[
        rv(&[15, 15, 6]),
        rv(&[16, 10, 10]),
        rv(&[10, 16, 10]),
        rv(&[12, 12, 12]),
    ])
    .unwrap()
}

fn coeff_map(b: &Balance) -> BTreeMap<String, Rat> {
    b.reaction()
        .species()
        .zip(b.coefficients())
        .filter(|(_, a)| !a.is_zero())
        .map(|((l, _), a)| (l.clone(), a.clone()))
        .collect()
}

fn expect_map(pairs: &[(&str, i64)]) -> BTreeMap<String, Rat> {
    pairs.iter().map(|(l, a)| (l.to_string(), int(*a))).collect()
}

/// Random reactant/product composition matrices: 2–3 element rows,
/// 1–3 species per side, entries 0..=max_entry with no zero column.
fn random_system(rng: &mut ChaCha8Rng, max_entry: i64) -> (Mat, Mat) {
    let rows = rng.gen_range(2..=3);
    let nr = rng.gen_range(1..=3);
    let np = rng.gen_range(1..=3);
    let col = |rng: &mut ChaCha8Rng| -> Vec<Rat> {
        loop {
            let v: Vec<i64> = (0..rows).map(|_| rng.gen_range(0..=max_entry)).collect();
            if v.iter().any(|&x| x > 0) {
                return v.iter().map(|&x| int(x)).collect();
            }
        }
    };
    let r = Mat::from_cols((0..nr).map(|_| col(rng)).collect()).unwrap();
    let p = Mat::from_cols((0..np).map(|_| col(rng)).collect()).unwrap();
    (r, p)
}

fn reaction_from_columns(r: &Mat, p: &Mat) -> Reaction {
    let name = |prefix: &str, i: usize| format!("{}{}", prefix, i);
    let comp = |col: Vec<Rat>| {
        let mut map = IndexMap::new();
        for (t, v) in col.iter().enumerate() {
            let n = v.to_integer();
            if n > 0.into() {
                map.insert(["A", "B", "C"][t].to_string(), u32::try_from(n).unwrap());
            }
        }
        Composition::new(map, 0).unwrap()
    };
    Reaction::new(
        r.col_vecs()
            .into_iter()
            .enumerate()
            .map(|(i, c)| (name("R", i), comp(c)))
            .collect(),
        p.col_vecs()
            .into_iter()
            .enumerate()
            .map(|(i, c)| (name("P", i), comp(c)))
            .collect(),
    )
    .unwrap()
}

// ---------------------------------------------------------------------------
// The sixteen checks
// ---------------------------------------------------------------------------

/// 01: two species against one share no balance at all.
fn c01_unbalanceable_pair() -> CheckResult {
    let rx = parse_equation("XY + YZ -> XYZ2").unwrap();
    let cls = classify(&rx).unwrap();
    let rays = generating_balances(&rx).unwrap();
    let pass = cls.kind == BalanceKind::NoBalance
        && cls.moduli_dim == 0
        && cls.intersection_dim.is_none()
        && rays.is_empty();
    plain(
        1,
        pass,
        format!(
            "kind={:?} moduli_dim={} rays={}",
            cls.kind,
            cls.moduli_dim,
            rays.len()
        ),
    )
}

/// 02: the three-element composition matrix has the expected 3-dimensional
/// kernel, span-equal to the reference basis.
fn c02_nullspace_span() -> CheckResult {
    let m = Mat::from_int_rows(&[
        vec![1, 0, 1, 1, 0, 5],
        vec![0, 1, 1, 0, 1, 5],
        vec![0, 0, 1, 1, 1, 2],
    ])
    .unwrap();
    let ns = Subspace::nullspace(&m);
    let reference = Subspace::from_vectors(
        6,
        &[
            rv(&[0, 1, -1, 1, 0, 0]),
            rv(&[1, 0, -1, 0, 1, 0]),
            rv(&[-3, -3, -2, 0, 0, 1]),
        ],
    )
    .unwrap();
    let pass = ns.dim() == 3
        && ns.contains_subspace(&reference).unwrap()
        && reference.contains_subspace(&ns).unwrap();
    plain(2, pass, format!("dim={} span_equal={}", ns.dim(), pass))
}

/// 03: the three-against-three system meets in a quadrilateral, and two
/// interior points recover two distinct balances.
fn c03_quadrilateral_balances() -> CheckResult {
    let rx = parse_equation("X + Y + XYZ -> XZ + YZ + X5Y5Z2").unwrap();
    let inter = intersection_polytope(&rx).unwrap();
    let verts: BTreeSet<Vec<Rat>> = inter.vertices().iter().cloned().collect();
    let expected: BTreeSet<Vec<Rat>> = [
        vec![rat(5, 18), rat(4, 9), rat(5, 18)],
        vec![rat(1, 3), rat(1, 3), rat(1, 3)],
        vec![rat(5, 12), rat(5, 12), rat(1, 6)],
        vec![rat(4, 9), rat(5, 18), rat(5, 18)],
    ]
    .into_iter()
    .collect();
    let b1 = balance_at(&rx, &[rat(3, 8), rat(3, 8), rat(1, 4)]).unwrap();
    let b2 = balance_at(&rx, &[rat(2, 5), rat(2, 5), rat(1, 5)]).unwrap();
    let pass = inter.dimension() == Some(2)
        && verts == expected
        && b1.balance.coefficients() == rv(&[-2, -2, -4, 1, 1, 1])
        && b2.balance.coefficients() == rv(&[-8, -8, -8, 1, 1, 3])
        && b1.balance.coefficients() != b2.balance.coefficients();
    plain(
        3,
        pass,
        format!(
            "dim={:?} vertices={} b1={} b2={}",
            inter.dimension(),
            verts.len(),
            b1.balance.format(),
            b2.balance.format()
        ),
    )
}

/// 04: interior lattice counts of the scaled quadrilateral's dilations.
/// The reference ledger says 16 at n=1, 33 at n=2, interior polynomial
/// n^2 + 14n + 1. Exact recount: 16 at n=1 but 67 at n=2, interior
/// polynomial 18n^2 - 3n + 1 — the area and boundary bookkeeping
/// (area 72, boundary 12, hence 72 - 12/2 + 1 = 67 interior points at n=2)
/// confirms the recount, so the ledger entry cannot stand. This check is
/// expected to land in `DocumentedMismatch`.
fn c04_quadrilateral_interior_counts() -> CheckResult {
    let quad = scaled_quadrilateral();
    let t0 = Instant::now();
    let (_, nu1) = denominator_bounded_count(&quad, 1).unwrap();
    let (_, nu2) = denominator_bounded_count(&quad, 2).unwrap();
    let fitted = fit_count_polynomial(&quad, 2).unwrap();
    let elapsed = t0.elapsed();
    let interior = fitted.fitted.as_ref().unwrap().interior.clone();
    let inclusive = fitted.fitted.as_ref().unwrap().inclusive.clone();

    let truth_ok = nu1 == 16
        && nu2 == 67
        && interior.coefficients() == rv(&[1, -3, 18])
        && inclusive.coefficients() == rv(&[1, 3, 18]);
    let ledger_match = nu1 == 16 && nu2 == 33 && interior.coefficients() == rv(&[1, 14, 1]);
    documented(
        4,
        ledger_match,
        truth_ok,
        format!(
            "nu(1)={} nu(2)={} (ledger says 33) interior fit {} (ledger says n^2 + 14n + 1) [{:?}]",
            nu1, nu2, interior, elapsed
        ),
    )
}

/// 05: the ozone system meets in a segment, and two points on it give the
/// expected balances.
fn c05_ozone_segment() -> CheckResult {
    let rx = parse_equation("NO + O3 -> NO2 + O2").unwrap();
    let inter = intersection_polytope(&rx).unwrap();
    let verts: BTreeSet<Vec<Rat>> = inter.vertices().iter().cloned().collect();
    let expected: BTreeSet<Vec<Rat>> = [vec![int(0), int(1)], vec![rat(1, 3), rat(2, 3)]]
        .into_iter()
        .collect();
    let b1 = balance_at(&rx, &[rat(1, 5), rat(4, 5)]).unwrap();
    let b2 = balance_at(&rx, &[rat(1, 4), rat(3, 4)]).unwrap();
    let pass = inter.dimension() == Some(1)
        && verts == expected
        && b1.balance.format() == "NO + O3 = NO2 + O2"
        && b2.balance.format() == "6NO + 4O3 = 6NO2 + 3O2";
    plain(
        5,
        pass,
        format!(
            "dim={:?} b(1/5)={} b(1/4)={}",
            inter.dimension(),
            b1.balance.format(),
            b2.balance.format()
        ),
    )
}

/// 06: the permanganate/peroxide family is one-dimensional until the 2:5
/// reactant ratio pins it, by both the geometric and the row-augmentation
/// routes.
fn c06_permanganate_restriction() -> CheckResult {
    let rx = parse_equation("KMnO4 + H2O2 + H2SO4 -> MnSO4 + K2SO4 + O2 + H2O").unwrap();
    let before = classify(&rx).unwrap();
    let out = apply_ratio_restriction(
        &rx,
        Side::Reactants,
        &["KMnO4", "H2O2"],
        &[int(2), int(5)],
    )
    .unwrap();
    let pass = before.intersection_dim == Some(1)
        && before.kind == BalanceKind::Multiple
        && out.classification.intersection_dim == Some(0)
        && out.classification.kind == BalanceKind::UniqueUpToScale
        && out.augmented_ray_count == 1
        && out.augmented_moduli_dim == out.classification.moduli_dim;
    plain(
        6,
        pass,
        format!(
            "before dim={:?} after dim={:?} rays={} moduli {}={}",
            before.intersection_dim,
            out.classification.intersection_dim,
            out.augmented_ray_count,
            out.augmented_moduli_dim,
            out.classification.moduli_dim
        ),
    )
}

/// 07: random balanceable reactions decompose into uniquely-balanced
/// components that recombine exactly.
fn c07_random_mixture_decomposition() -> CheckResult {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x3737);
    let mut processed = 0;
    let mut failures = 0;
    while processed < 200 {
        let (r, p) = random_system(&mut rng, 4);
        let rx = reaction_from_columns(&r, &p);
        let rays = generating_balances(&rx).unwrap();
        if rays.is_empty() {
            continue;
        }
        // A strictly positive combination keeps both sides nonzero.
        let mut a = vec![int(0); r.ncols() + p.ncols()];
        for ray in &rays {
            let w = rng.gen_range(1..=2);
            for (t, v) in ray.coefficients().iter().enumerate() {
                a[t] += v * int(w);
            }
        }
        let b = Balance::new(rx.clone(), a).unwrap();
        processed += 1;

        let parts = mixture_decomposition(&b).unwrap();
        let mut sum = vec![int(0); b.coefficients().len()];
        let mut ok = true;
        for part in &parts {
            ok &= part.weight.is_positive();
            for (t, v) in part.balance.coefficients().iter().enumerate() {
                sum[t] += v * &part.weight;
            }
            // Each component, restricted to its support, balances uniquely.
            let support: Vec<usize> = part
                .balance
                .coefficients()
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, _)| i)
                .collect();
            let nr = rx.n_reactants();
            let sub = Reaction::new(
                support
                    .iter()
                    .filter(|&&i| i < nr)
                    .map(|&i| rx.reactants[i].clone())
                    .collect(),
                support
                    .iter()
                    .filter(|&&i| i >= nr)
                    .map(|&i| rx.products[i - nr].clone())
                    .collect(),
            )
            .unwrap();
            ok &= classify(&sub).unwrap().kind == BalanceKind::UniqueUpToScale;
        }
        ok &= sum == b.coefficients();
        if !ok {
            failures += 1;
        }
    }
    let elapsed = t0.elapsed();
    let pass = failures == 0 && elapsed.as_secs() < 30;
    plain(
        7,
        pass,
        format!(
            "200 balances decomposed, {} failures [{:?}]",
            failures, elapsed
        ),
    )
}

/// 08: the gold-cyanide system's four half-reactions balance to the
/// reference table, the combined overall balance carries water and
/// hydroxide 1:1, and the skewed overall balance stays unreachable.
fn c08_gold_cyanide_half_reactions() -> CheckResult {
    let gold = parse_equation("Au + CN^- + O2 -> [Au(CN)2]^- + H2O2").unwrap();

    let splits = enumerate_half_reaction_splits(&gold).unwrap();
    let mut seen: BTreeSet<(Vec<String>, Vec<String>)> = BTreeSet::new();
    for (h1, h2) in &splits {
        for h in [h1, h2] {
            seen.insert((
                h.reactants.iter().map(|(l, _)| l.clone()).collect(),
                h.products.iter().map(|(l, _)| l.clone()).collect(),
            ));
        }
    }
    let lbl = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let expected_splits: BTreeSet<(Vec<String>, Vec<String>)> = [
        (lbl(&["Au", "CN^-"]), lbl(&["[Au(CN)2]^-"])),
        (lbl(&["Au", "CN^-", "O2"]), lbl(&["[Au(CN)2]^-"])),
        (lbl(&["Au", "CN^-"]), lbl(&["[Au(CN)2]^-", "H2O2"])),
        (lbl(&["O2"]), lbl(&["H2O2"])),
    ]
    .into_iter()
    .collect();

    let half = |text: &str| {
        balance_half_reaction(
            &HalfReaction::new(parse_equation(text).unwrap(), Medium::Basic).unwrap(),
        )
        .unwrap()
    };
    let dissolution = half("Au + CN^- -> [Au(CN)2]^-");
    let with_oxygen = half("Au + CN^- + O2 -> [Au(CN)2]^-");
    let with_peroxide = half("Au + CN^- -> [Au(CN)2]^- + H2O2");
    let reduction = half("O2 -> H2O2");
    let table_ok = coeff_map(&dissolution)
        == expect_map(&[("Au", -1), ("CN^-", -2), ("[Au(CN)2]^-", 1), ("e^-", 1)])
        && coeff_map(&with_oxygen)
            == expect_map(&[
                ("e^-", -3),
                ("H2O", -2),
                ("Au", -1),
                ("CN^-", -2),
                ("O2", -1),
                ("[Au(CN)2]^-", 1),
                ("OH^-", 4),
            ])
        && coeff_map(&with_peroxide)
            == expect_map(&[
                ("Au", -1),
                ("CN^-", -2),
                ("OH^-", -2),
                ("[Au(CN)2]^-", 1),
                ("H2O2", 1),
                ("e^-", 3),
            ])
        && coeff_map(&reduction)
            == expect_map(&[
                ("e^-", -2),
                ("H2O", -2),
                ("O2", -1),
                ("H2O2", 1),
                ("OH^-", 2),
            ]);

    let combined = combine_half_reactions(&dissolution, &reduction).unwrap();
    let cmap = coeff_map(&combined);
    let water_hydroxide_one_to_one = cmap["H2O"] == -cmap["OH^-"].clone();

    let reachable = half_reaction_reachable_balances(&gold, Medium::Basic).unwrap();
    let main = expect_map(&[
        ("Au", -2),
        ("CN^-", -4),
        ("O2", -1),
        ("H2O", -2),
        ("[Au(CN)2]^-", 2),
        ("H2O2", 1),
        ("OH^-", 2),
    ]);
    let reachable_maps: BTreeSet<BTreeMap<String, Rat>> =
        reachable.iter().map(coeff_map).collect();

    let augmented = parse_equation("Au + CN^- + O2 + H2O -> [Au(CN)2]^- + H2O2 + OH^-").unwrap();
    let skewed = Balance::new(augmented, rv(&[-6, -12, -2, -4, 6, 1, 6])).unwrap();

    let pass = splits.len() == 4
        && seen == expected_splits
        && table_ok
        && cmap == main
        && water_hydroxide_one_to_one
        && reachable.len() == 2
        && reachable_maps.contains(&main)
        && !contains_balance(&reachable, &skewed);
    plain(
        8,
        pass,
        format!(
            "splits={} table_ok={} combined={} reachable={} skewed_absent={}",
            splits.len(),
            table_ok,
            combined.format(),
            reachable.len(),
            !contains_balance(&reachable, &skewed)
        ),
    )
}

/// 09: kernel dimension of a concatenated matrix splits into the two
/// kernels plus the column-space overlap, on 500 random pairs.
fn c09_concatenation_identity() -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0661);
    let mut failures = 0;
    for _ in 0..500 {
        let n = rng.gen_range(1..=5);
        let a_cols = rng.gen_range(1..=4);
        let b_cols = rng.gen_range(1..=4);
        let mut mk = |cols: usize| {
            Mat::from_int_rows(
                &(0..n)
                    .map(|_| (0..cols).map(|_| rng.gen_range(-3..=3)).collect())
                    .collect::<Vec<_>>(),
            )
            .unwrap()
        };
        let a = mk(a_cols);
        let b = mk(b_cols);
        let m = a.hstack(&b).unwrap();
        let overlap = Subspace::from_cols(&a)
            .intersection(&Subspace::from_cols(&b))
            .unwrap()
            .dim();
        let lhs = Subspace::nullspace(&m).dim() - overlap;
        let rhs = Subspace::nullspace(&a).dim() + Subspace::nullspace(&b).dim();
        if lhs != rhs {
            failures += 1;
        }
    }
    plain(9, failures == 0, format!("500 pairs, {} failures", failures))
}

/// 10: the two-step chain conserves exactly the (3,1,2) weighting, with a
/// strictly positive witness.
fn c10_chain_mass_space() -> CheckResult {
    let mech = Mechanism::from_int_rows(
        vec!["S1".into(), "S2".into(), "S3".into()],
        vec![0, 1, 2],
        vec![],
        vec![vec![-1, -1], vec![1, -1], vec![1, 2]],
    )
    .unwrap();
    let report = conservation_report(&mech, None).unwrap();
    let pass = report.mass_space.dim() == 1
        && report.mass_space.contains(&rv(&[3, 1, 2])).unwrap()
        && report.conservative;
    plain(
        10,
        pass,
        format!(
            "mass_dim={} contains(3,1,2)={} conservative={}",
            report.mass_space.dim(),
            report.mass_space.contains(&rv(&[3, 1, 2])).unwrap(),
            report.conservative
        ),
    )
}

/// 11: the azomethane mechanism admits exactly 35 overall reaction vectors
/// within budget six, spanning a six-dimensional region with 14 vertices.
fn c11_azomethane_census() -> CheckResult {
    let t0 = Instant::now();
    let mech = azomethane();
    let found = consistent_reactions(&mech, 6).unwrap();
    let region = consistent_region(&mech, 6).unwrap();
    let elapsed = t0.elapsed();
    let pass = found.lattice_count == 35
        && found.reactions.len() == 34
        && region.dimension() == Some(6)
        && region.vertices().len() == 14
        && elapsed.as_secs() < 60;
    plain(
        11,
        pass,
        format!(
            "lattice_count={} dim={:?} vertices={} [{:?}]",
            found.lattice_count,
            region.dimension(),
            region.vertices().len(),
            elapsed
        ),
    )
}

/// 12: the azomethane net reaction has exactly one bounded representation.
fn c12_azomethane_representation() -> CheckResult {
    let mech = azomethane();
    let finite = representation_finiteness(&mech).unwrap() == Finiteness::Finite;
    let c = rv(&[-5, 3, 1, 1, 1, 1, 0, 0, 0]);
    let reps = algebraic_representations(&mech, &c, None).unwrap();
    let pass = finite && reps == vec![rv(&[3, 1, 1, 1, 1, 1])];
    plain(
        12,
        pass,
        format!("finite={} representations={:?}", finite, reps.len()),
    )
}

/// 13: the inverse-problem dimension table for the formaldehyde and
/// azomethane systems. The reference ledger lists the unknown-coordinate
/// projection of the formaldehyde row space as 5, but that projection lands
/// in a 4-dimensional coordinate space (four unknown species), so its true
/// dimension is 4. This check is expected to land in `DocumentedMismatch`
/// on that single entry.
fn c13_inverse_dimension_table() -> CheckResult {
    let table = |elements: &Mat, observed: &Subspace, known: &[usize], unknown: &[usize]| {
        let s = elements.ncols();
        let ns = Subspace::nullspace(elements);
        let rs = Subspace::from_rows(elements);
        let k_units: Vec<Vec<Rat>> = known
            .iter()
            .map(|&i| {
                let mut e = vec![int(0); s];
                e[i] = int(1);
                e
            })
            .collect();
        let k = Subspace::from_vectors(s, &k_units).unwrap();
        let pk_ns = ns.project_coords(known).unwrap();
        let pk_rs = rs.project_coords(known).unwrap();
        let meet = pk_ns.intersection(&pk_rs).unwrap();
        let o = observed.project_coords(known).unwrap();
        let quot = o.quotient_dim(&pk_rs).unwrap();
        let pu_rs = rs.project_coords(unknown).unwrap();
        [
            ns.dim(),
            rs.dim(),
            k.dim(),
            pk_ns.dim(),
            pk_rs.dim(),
            meet.dim(),
            o.dim(),
            quot,
            pu_rs.dim(),
        ]
    };
    let f = table(
        &formaldehyde_elements(),
        &formaldehyde_observed(),
        &(0..8).collect::<Vec<_>>(),
        &(8..12).collect::<Vec<_>>(),
    );
    let a = table(
        &azomethane_elements(),
        &azomethane_observed(),
        &(0..6).collect::<Vec<_>>(),
        &(6..9).collect::<Vec<_>>(),
    );

    let truth_ok = f == [7, 5, 8, 7, 5, 4, 6, 1, 4] && a == [6, 3, 6, 6, 3, 3, 3, 0, 3];
    let ledger_f = [7, 5, 8, 7, 5, 4, 6, 1, 5];
    let ledger_a = [6, 3, 6, 6, 3, 3, 3, 0, 3];
    let mismatches: Vec<usize> = (0..9)
        .filter(|&i| f[i] != ledger_f[i] || a[i] != ledger_a[i])
        .collect();
    documented(
        13,
        mismatches.is_empty(),
        truth_ok,
        format!(
            "computed f={:?} a={:?}; ledger disagrees at rows {:?} (unknown-projection of a 5-dim row space into 4 coordinates)",
            f, a, mismatches
        ),
    )
}

/// 14: the observation direction beyond the elemental rows is spanned by
/// the dense-fraction vector.
fn c14_excess_observation_direction() -> CheckResult {
    let known: Vec<usize> = (0..8).collect();
    let inter: Vec<usize> = (8..12).collect();
    let report = inverse_mechanism_spaces(
        12,
        &known,
        &inter,
        &formaldehyde_elements(),
        &formaldehyde_observed(),
        true,
    )
    .unwrap();
    let target = vec![
        int(1),
        rat(-12, 23),
        rat(12, 23),
        rat(12, 23),
        rat(-49, 23),
        rat(-26, 23),
        rat(26, 23),
        rat(-29, 23),
    ];
    let pass = report.projected_observations.dim() == 1
        && report.projected_observations.contains(&target).unwrap();
    plain(
        14,
        pass,
        format!(
            "excess_dim={} span_contains_target={}",
            report.projected_observations.dim(),
            report.projected_observations.contains(&target).unwrap()
        ),
    )
}

/// 15: azomethane precedence stages grow {} → {CH3} → all three
/// intermediates, and the unit box holds 116 candidate step vectors in 58
/// sign classes.
fn c15_precedence_and_candidates() -> CheckResult {
    let t0 = Instant::now();
    let mech = azomethane();
    let report = precedence_analysis(&mech);
    let stage1: BTreeSet<usize> = [6].into_iter().collect();
    let stage2: BTreeSet<usize> = [6, 7, 8].into_iter().collect();
    let stages_ok = report.stages.len() == 3
        && report.stages[0].is_empty()
        && report.stages[1] == stage1
        && report.stages[2] == stage2;
    let kernel = Subspace::nullspace(&azomethane_elements());
    let found = candidate_elementary_reactions(&kernel, 1).unwrap();
    let elapsed = t0.elapsed();
    let pass = stages_ok
        && found.representatives.len() == 58
        && found.vector_count == 116
        && elapsed.as_secs() < 10;
    plain(
        15,
        pass,
        format!(
            "stages={:?} lines={} vectors={} [{:?}]",
            report.stages,
            found.representatives.len(),
            found.vector_count,
            elapsed
        ),
    )
}

/// 16: on 500 random reactions the classification's dimension bookkeeping
/// holds and the ray-count and polytope views agree.
fn c16_classification_identity() -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(0x2818);
    let mut failures = 0;
    for _ in 0..500 {
        let (r, p) = random_system(&mut rng, 3);
        let rx = reaction_from_columns(&r, &p);
        let cls = classify(&rx).unwrap();
        let rays = generating_balances(&rx).unwrap();
        let mut ok = cls.moduli_dim == cls.cone_span_dim + cls.kernel_dims.0 + cls.kernel_dims.1;
        ok &= match cls.kind {
            BalanceKind::NoBalance => rays.is_empty() && cls.intersection_dim.is_none(),
            BalanceKind::UniqueUpToScale => rays.len() == 1 && cls.intersection_dim.is_some(),
            BalanceKind::Multiple => rays.len() >= 2 && cls.intersection_dim.is_some(),
        };
        // The polytope route must read off the same dimension.
        let geo_dim = intersection_polytope(&rx).ok().and_then(|p| p.dimension());
        ok &= geo_dim == cls.intersection_dim;
        // With trivial side kernels, the kind is decided by the polytope.
        if cls.kernel_dims == (0, 0) {
            ok &= match cls.kind {
                BalanceKind::NoBalance => cls.intersection_dim.is_none(),
                BalanceKind::UniqueUpToScale => cls.intersection_dim == Some(0),
                BalanceKind::Multiple => cls.intersection_dim.map_or(false, |d| d >= 1),
            };
        }
        if !ok {
            failures += 1;
        }
    }
    plain(
        16,
        failures == 0,
        format!("500 reactions, {} failures", failures),
    )
}

/// One report line per check, stable across text output and test logs.
pub fn format_line(r: &CheckResult) -> String {
    let tag = match r.state {
        CheckState::Pass => "PASS",
        CheckState::DocumentedMismatch => "FAIL (documented reference mismatch)",
        CheckState::Unexpected => "FAIL",
    };
    format!("criterion {:02}: {} — {}", r.number, tag, r.detail)
}

/// One-line tally of a full run.
pub fn summary(results: &[CheckResult]) -> String {
    let count = |s: CheckState| results.iter().filter(|r| r.state == s).count();
    format!(
        "{} passed, {} documented reference mismatches, {} unexpected",
        count(CheckState::Pass),
        count(CheckState::DocumentedMismatch),
        count(CheckState::Unexpected)
    )
}

/// Runs the whole corpus in order.
pub fn run() -> Vec<CheckResult> {
    vec![
        c01_unbalanceable_pair(),
        c02_nullspace_span(),
        c03_quadrilateral_balances(),
        c04_quadrilateral_interior_counts(),
        c05_ozone_segment(),
        c06_permanganate_restriction(),
        c07_random_mixture_decomposition(),
        c08_gold_cyanide_half_reactions(),
        c09_concatenation_identity(),
        c10_chain_mass_space(),
        c11_azomethane_census(),
        c12_azomethane_representation(),
        c13_inverse_dimension_table(),
        c14_excess_observation_direction(),
        c15_precedence_and_candidates(),
        c16_classification_identity(),
    ]
}
