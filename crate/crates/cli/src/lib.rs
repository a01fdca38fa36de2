//! Command-line front end for the stoichiometry workbench: classification
//! and balancing, redox bookkeeping, mechanism analysis, lattice-point
//! counting, and polytope export, in text or JSON.
//!
//! Exit-code contract: 0 on success (an unbalanceable reaction is a
//! *reported classification*, not an error), 1 on domain errors (malformed
//! equations or JSON, infeasible requests), 2 on usage errors (bad flags,
//! unreadable input files).

pub mod corpus;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::{Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use stoichos::balance::{
    apply_ratio_restriction, balance_at, classify, generating_balances, intersection_polytope,
    mixture_decomposition, moduli_polyhedron, reactant_product_polytopes, Balance,
    BalanceClassification, BalanceKind, Side,
};
use stoichos::formula::{parse_equation, Composition, Reaction};
use stoichos::geometry::Polytope;
use stoichos::lattice::{count_series, denominator_bounded_count, fit_count_polynomial};
use stoichos::linalg::{Mat, Subspace};
use stoichos::mechanism::{
    algebraic_representations, candidate_elementary_reactions, conservation_report,
    consistent_reactions, consistent_region, inverse_mechanism_spaces, precedence_analysis,
    representation_finiteness, Finiteness, Mechanism,
};
use stoichos::rat::{int, Rat};
use stoichos::redox::{
    balance_half_reaction, charge_system, electron_coefficient, enumerate_half_reaction_splits,
    half_reaction_reachable_balances, spectator_transform, strip_spectators, HalfReaction, Medium,
    SliceOutcome,
};

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// CLI failure, partitioned by exit code: usage errors exit 2, domain
/// errors exit 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Domain(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => write!(f, "{}", m),
        }
    }
}

fn domain<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Domain(e.to_string())
}

// ---------------------------------------------------------------------------
// Argument grammar
// ---------------------------------------------------------------------------

#[derive(Parser, Debug)]
#[command(
    name = "stoichos",
    version,
    about = "Exact-arithmetic workbench: balance reactions, analyze redox systems, \
             count lattice points, export reaction polytopes, probe mechanisms"
)]
pub struct RunConfig {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify a reaction and produce canonical integer balances
    Balance(BalanceArgs),
    /// Balance redox systems: half-reactions, the charge row, or spectator binding
    Redox(RedoxArgs),
    /// Analyze a mechanism given as JSON
    Mechanism(MechanismArgs),
    /// Count lattice points of a polytope under dilation
    Count(CountArgs),
    /// Export reactant, product, and intersection polytopes
    Polytope(PolytopeArgs),
    /// Run the embedded golden-example corpus and report per-check results
    Corpus,
}

/// Where a subcommand's primary input comes from: an inline argument, a
/// file (`-` for standard input), or standard input when neither is given.
#[derive(Args, Debug)]
pub struct InputArgs {
    /// Inline input: an equation, or JSON for the structured subcommands
    pub input: Option<String>,

    /// Read the input from this file instead; "-" reads standard input
    #[arg(short, long, conflicts_with = "input")]
    pub file: Option<String>,
}

#[derive(Args, Debug)]
pub struct BalanceArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Balance at a point of the reactant simplex: comma-separated rationals
    #[arg(long)]
    pub at: Option<String>,

    /// Pin a mole ratio, e.g. "reactants:KMnO4,H2O2=2:5"
    #[arg(long)]
    pub restrict: Option<String>,

    /// Element order for the reported composition matrix, comma-separated
    #[arg(long)]
    pub elements: Option<String>,

    /// Also report the moduli polyhedron and the intersection polytope
    #[arg(long)]
    pub geometry: bool,

    /// Decompose the balance (the unique one, or the one at --at) into
    /// minimal components
    #[arg(long)]
    pub decompose: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MediumArg {
    Acidic,
    Basic,
}

impl From<MediumArg> for Medium {
    fn from(m: MediumArg) -> Medium {
        match m {
            MediumArg::Acidic => Medium::Acidic,
            MediumArg::Basic => Medium::Basic,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    /// Split into half-reactions, balance each, recombine
    HalfReaction,
    /// Balance directly with the charge row in the composition matrix
    ChargeRow,
    /// Bind charged species with formal spectators, balance, strip
    Spectator,
}

#[derive(Args, Debug)]
pub struct RedoxArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Reaction medium
    #[arg(long, value_enum, default_value_t = MediumArg::Acidic)]
    pub medium: MediumArg,

    /// Balancing route
    #[arg(long, value_enum, default_value_t = MethodArg::HalfReaction)]
    pub method: MethodArg,

    /// Balance the input as a single half-reaction
    #[arg(long)]
    pub half: bool,

    /// List the ways the reaction splits into two half-reactions
    #[arg(long)]
    pub splits: bool,
}

#[derive(Args, Debug)]
pub struct MechanismArgs {
    #[command(subcommand)]
    pub action: MechanismAction,
}

#[derive(Subcommand, Debug)]
pub enum MechanismAction {
    /// Conservation-law report, optionally against an elemental matrix
    Report {
        #[command(flatten)]
        input: InputArgs,
        /// Elemental matrix: JSON rows inline, or a path to a file of them
        #[arg(long)]
        elements: Option<String>,
    },
    /// Enumerate overall reactions consistent with the mechanism
    Consistent {
        #[command(flatten)]
        input: InputArgs,
        /// Step budget: total step firings allowed
        #[arg(long, visible_alias = "budget")]
        t: u32,
        /// Also report the consistent region polytope
        #[arg(long)]
        region: bool,
    },
    /// Enumerate the ways an overall reaction arises from the steps
    Represent {
        #[command(flatten)]
        input: InputArgs,
        /// Overall reaction vector over the species, comma-separated rationals
        #[arg(long, visible_alias = "target", allow_hyphen_values = true)]
        c: String,
        /// Cap on the total number of step firings
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Inverse problem: what the observed conservation laws determine
    Inverse {
        #[command(flatten)]
        input: InputArgs,
        /// Observed conservation vectors: JSON rows inline, or a path
        #[arg(long)]
        observed: String,
        /// Elemental matrix: JSON rows inline, or a path
        #[arg(long)]
        elements: String,
        /// Treat the intermediate list as complete (enables the lift report)
        #[arg(long)]
        complete: bool,
    },
    /// Stage structure of the earliest firing order
    Precedence {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Candidate elementary steps in the kernel of an elemental matrix
    Candidates {
        #[command(flatten)]
        input: InputArgs,
        /// Entry bound of the search box
        #[arg(long, default_value_t = 1)]
        bound: u32,
    },
}

#[derive(Args, Debug)]
pub struct CountArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Denominator bound for a single count
    #[arg(long, default_value_t = 1)]
    pub n: u32,

    /// Report every denominator from 1 up to this bound
    #[arg(long, conflicts_with = "n")]
    pub up_to: Option<u32>,

    /// Fit counting polynomials of this degree through the series
    #[arg(long, conflicts_with_all = ["n", "up_to"])]
    pub fit: Option<usize>,

    /// Interior counts only
    #[arg(long)]
    pub interior: bool,
}

#[derive(Args, Debug)]
pub struct PolytopeArgs {
    #[command(flatten)]
    pub input: InputArgs,
}

// ---------------------------------------------------------------------------
// Input plumbing
// ---------------------------------------------------------------------------

fn read_stdin() -> Result<String, CliError> {
    let mut s = String::new();
    std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
        .map_err(|e| CliError::Usage(format!("cannot read standard input: {}", e)))?;
    Ok(s)
}

fn read_source(input: &InputArgs) -> Result<String, CliError> {
    if let Some(inline) = &input.input {
        return Ok(inline.clone());
    }
    if let Some(path) = &input.file {
        if path == "-" {
            return read_stdin();
        }
        return std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {}", path, e)));
    }
    read_stdin()
}

/// Flag values that carry structured data: inline JSON when the value
/// starts like JSON, otherwise a path to a file holding it.
fn read_value_or_path(v: &str) -> Result<String, CliError> {
    let t = v.trim_start();
    if t.starts_with('[') || t.starts_with('{') {
        Ok(v.to_string())
    } else {
        std::fs::read_to_string(v).map_err(|e| CliError::Usage(format!("cannot read {}: {}", v, e)))
    }
}

fn parse_rat_str(s: &str) -> Result<Rat, String> {
    s.trim()
        .parse::<Rat>()
        .map_err(|e| format!("cannot parse rational '{}': {}", s.trim(), e))
}

/// Comma-separated rationals from a flag value.
fn parse_rat_list(s: &str) -> Result<Vec<Rat>, CliError> {
    s.split(',')
        .map(|t| parse_rat_str(t).map_err(CliError::Usage))
        .collect()
}

/// `side:species,...=r1:r2:...` from the --restrict flag.
fn parse_restrict(s: &str) -> Result<(Side, Vec<String>, Vec<Rat>), CliError> {
    let usage =
        || CliError::Usage(format!("--restrict expects side:species,...=r1:r2:..., got '{}'", s));
    let (side_s, rest) = s.split_once(':').ok_or_else(usage)?;
    let side = match side_s.trim() {
        "reactants" => Side::Reactants,
        "products" => Side::Products,
        _ => return Err(usage()),
    };
    let (species_s, ratio_s) = rest.split_once('=').ok_or_else(usage)?;
    let species: Vec<String> = species_s
        .split(',')
        .map(|x| x.trim().to_string())
        .filter(|x| !x.is_empty())
        .collect();
    let ratio: Vec<Rat> = ratio_s
        .split(':')
        .map(|t| parse_rat_str(t).map_err(|_| usage()))
        .collect::<Result<_, _>>()?;
    if species.is_empty() || species.len() != ratio.len() {
        return Err(usage());
    }
    Ok((side, species, ratio))
}

/// A JSON scalar as an exact rational: integers directly, everything else
/// as a "p/q" string. Floats are rejected — they cannot round-trip exactly.
fn value_to_rat(v: &Value) -> Result<Rat, String> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(int)
            .ok_or_else(|| format!("entry {} is not an integer; write rationals as \"p/q\" strings", n)),
        Value::String(s) => parse_rat_str(s),
        other => Err(format!("expected an integer or \"p/q\" string, found {}", other)),
    }
}

fn value_to_vec(v: &Value) -> Result<Vec<Rat>, String> {
    v.as_array()
        .ok_or_else(|| format!("expected an array of entries, found {}", v))?
        .iter()
        .map(value_to_rat)
        .collect()
}

fn value_to_rows(v: &Value) -> Result<Vec<Vec<Rat>>, String> {
    v.as_array()
        .ok_or_else(|| format!("expected an array of rows, found {}", v))?
        .iter()
        .map(value_to_vec)
        .collect()
}

/// Matrix rows handed in through a flag value (inline JSON or a path).
fn parse_matrix_arg(v: &str) -> Result<Vec<Vec<Rat>>, CliError> {
    let text = read_value_or_path(v)?;
    let parsed: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("matrix argument is not JSON: {}", e)))?;
    value_to_rows(&parsed).map_err(CliError::Usage)
}

/// Polytope input: a full exported record, an object with a "vertices"
/// field, or a bare array of vertices. Rebuilt from its vertices either
/// way, so the halfspace data is rederived rather than trusted.
fn parse_polytope_input(text: &str) -> Result<Polytope, CliError> {
    let parsed: Value = serde_json::from_str(text)
        .map_err(|e| CliError::Domain(format!("polytope input is not JSON: {}", e)))?;
    let verts_value = match &parsed {
        Value::Object(m) => m
            .get("vertices")
            .ok_or_else(|| CliError::Domain("polytope JSON needs a \"vertices\" field".into()))?,
        Value::Array(_) => &parsed,
        other => {
            return Err(CliError::Domain(format!(
                "expected a polytope object or vertex array, found {}",
                other
            )))
        }
    };
    let rows = value_to_rows(verts_value).map_err(CliError::Domain)?;
    Polytope::convex_hull(&rows).map_err(domain)
}

fn parse_mechanism_input(input: &InputArgs) -> Result<Mechanism, CliError> {
    let text = read_source(input)?;
    serde_json::from_str(&text).map_err(|e| CliError::Domain(format!("mechanism JSON: {}", e)))
}

// ---------------------------------------------------------------------------
// Rendering helpers
// ---------------------------------------------------------------------------

fn jval<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("value serialization")
}

fn rats_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|r| Value::String(r.to_string())).collect())
}

fn vecs_json(vs: &[Vec<Rat>]) -> Value {
    Value::Array(vs.iter().map(|v| rats_json(v)).collect())
}

fn subspace_json(s: &Subspace) -> Value {
    json!({
        "ambient": s.ambient(),
        "dim": s.dim(),
        "basis": vecs_json(&s.basis_vectors()),
    })
}

fn finish_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON rendering");
    s.push('\n');
    s
}

fn join_rats(v: &[Rat], sep: &str) -> String {
    v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(sep)
}

fn point_str(p: &[Rat]) -> String {
    format!("({})", join_rats(p, ", "))
}

fn vec_str(p: &[Rat]) -> String {
    format!("[{}]", join_rats(p, ", "))
}

fn side_labels(side: &[(String, Composition)]) -> String {
    side.iter()
        .map(|(l, _)| l.as_str())
        .collect::<Vec<_>>()
        .join(" + ")
}

fn reaction_line(rx: &Reaction) -> String {
    format!("{} -> {}", side_labels(&rx.reactants), side_labels(&rx.products))
}

fn kind_line(cls: &BalanceClassification) -> String {
    match cls.kind {
        BalanceKind::NoBalance => "no balancing exists".to_string(),
        BalanceKind::UniqueUpToScale => "unique balancing up to scale".to_string(),
        BalanceKind::Multiple => format!(
            "balancing family of dimension {}",
            cls.intersection_dim.unwrap_or(0)
        ),
    }
}

/// A net species vector rendered as an equation: negative entries on the
/// left, positive on the right.
fn format_net(species: &[String], c: &[Rat]) -> String {
    let mut left: Vec<String> = Vec::new();
    let mut right: Vec<String> = Vec::new();
    for (label, a) in species.iter().zip(c) {
        if a.is_zero() {
            continue;
        }
        let mag = a.abs();
        let term = if mag == int(1) {
            label.clone()
        } else {
            format!("{}{}", mag, label)
        };
        if a.is_negative() {
            left.push(term);
        } else {
            right.push(term);
        }
    }
    let side = |v: Vec<String>| {
        if v.is_empty() {
            "0".to_string()
        } else {
            v.join(" + ")
        }
    };
    format!("{} = {}", side(left), side(right))
}

fn polytope_block(out: &mut String, name: &str, p: &Polytope) {
    match p.dimension() {
        None => {
            let _ = writeln!(out, "{}: empty", name);
        }
        Some(d) => {
            let _ = writeln!(out, "{}: dimension {}, {} vertices", name, d, p.vertices().len());
            for v in p.vertices() {
                let _ = writeln!(out, "  {}", point_str(v));
            }
        }
    }
}

fn index_set_str(set: &BTreeSet<usize>) -> String {
    if set.is_empty() {
        "{}".to_string()
    } else {
        format!(
            "{{{}}}",
            set.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(", ")
        )
    }
}

fn label_set_str(labels: &[String], set: &BTreeSet<usize>) -> String {
    if set.is_empty() {
        "{}".to_string()
    } else {
        format!(
            "{{{}}}",
            set.iter()
                .map(|&i| labels[i].as_str())
                .collect::<Vec<_>>()
                .join(", ")
        )
    }
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

fn run_balance(a: &BalanceArgs, json: bool) -> Result<String, CliError> {
    let text = read_source(&a.input)?;
    let rx = parse_equation(text.trim()).map_err(domain)?;
    let cls = classify(&rx).map_err(domain)?;
    let rays = generating_balances(&rx).map_err(domain)?;

    let order: Vec<String> = match &a.elements {
        Some(s) => s.split(',').map(|x| x.trim().to_string()).collect(),
        None => rx.element_order(),
    };
    let matrix = rx
        .composition_matrix(&order, rx.has_charge())
        .map_err(domain)?;

    let at_point = match &a.at {
        Some(s) => {
            let pt = parse_rat_list(s)?;
            Some((pt.clone(), balance_at(&rx, &pt).map_err(domain)?))
        }
        None => None,
    };

    let restriction = match &a.restrict {
        Some(s) => {
            let (side, species, ratio) = parse_restrict(s)?;
            let out = apply_ratio_restriction(&rx, side, &species, &ratio).map_err(domain)?;
            Some((side, species, ratio, out))
        }
        None => None,
    };

    let geometry = if a.geometry {
        let moduli = moduli_polyhedron(&rx).map_err(domain)?;
        Some((moduli, intersection_polytope(&rx)))
    } else {
        None
    };

    let decomposition = if a.decompose {
        let target = if let Some((_, bp)) = &at_point {
            bp.balance.clone()
        } else if rays.len() == 1 {
            rays[0].clone()
        } else {
            return Err(CliError::Usage(
                "--decompose needs a uniquely balanced reaction or an --at point".into(),
            ));
        };
        Some(mixture_decomposition(&target).map_err(domain)?)
    } else {
        None
    };

    if json {
        let mut obj = serde_json::Map::new();
        obj.insert("reaction".into(), jval(&rx));
        obj.insert("classification".into(), jval(&cls));
        obj.insert("balances".into(), jval(&rays));
        obj.insert(
            "element_order".into(),
            Value::Array(order.iter().map(|e| Value::String(e.clone())).collect()),
        );
        obj.insert("matrix".into(), jval(&matrix));
        if let Some((pt, bp)) = &at_point {
            obj.insert("at".into(), json!({"point": rats_json(pt), "result": jval(bp)}));
        }
        if let Some((side, species, ratio, out)) = &restriction {
            obj.insert(
                "restriction".into(),
                json!({
                    "side": jval(side),
                    "species": species,
                    "ratio": rats_json(ratio),
                    "outcome": jval(out),
                }),
            );
        }
        if let Some((moduli, inter)) = &geometry {
            obj.insert("moduli".into(), jval(moduli));
            match inter {
                Ok(p) => {
                    obj.insert("intersection".into(), jval(p));
                }
                Err(e) => {
                    obj.insert("intersection".into(), Value::Null);
                    obj.insert("intersection_note".into(), Value::String(e.to_string()));
                }
            }
        }
        if let Some(parts) = &decomposition {
            obj.insert("decomposition".into(), jval(parts));
        }
        return Ok(finish_json(&Value::Object(obj)));
    }

    let mut out = String::new();
    let _ = writeln!(out, "{}", kind_line(&cls));
    for b in &rays {
        let _ = writeln!(out, "  {}", b.format());
    }
    if a.elements.is_some() {
        let _ = writeln!(out, "element order: {}", order.join(", "));
        for i in 0..matrix.nrows() {
            let _ = writeln!(out, "  {}", vec_str(matrix.row(i)));
        }
    }
    if let Some((pt, bp)) = &at_point {
        let note = if bp.representation_unique {
            ""
        } else {
            "  (representation not unique)"
        };
        let _ = writeln!(out, "at {}: {}{}", point_str(pt), bp.balance.format(), note);
    }
    if let Some((side, species, ratio, res)) = &restriction {
        let side_name = match side {
            Side::Reactants => "reactants",
            Side::Products => "products",
        };
        let _ = writeln!(
            out,
            "restricted {} {} = {}: {} ({} generating ray{})",
            side_name,
            species.join(":"),
            join_rats(ratio, ":"),
            kind_line(&res.classification),
            res.augmented_ray_count,
            if res.augmented_ray_count == 1 { "" } else { "s" }
        );
    }
    if let Some((moduli, inter)) = &geometry {
        let _ = writeln!(
            out,
            "moduli polyhedron: dimension {}, {} facet inequalities",
            moduli.basis.len(),
            moduli.inequalities.len()
        );
        match inter {
            Ok(p) => polytope_block(&mut out, "intersection polytope", p),
            Err(e) => {
                let _ = writeln!(out, "intersection polytope: not defined ({})", e);
            }
        }
    }
    if let Some(parts) = &decomposition {
        let _ = writeln!(out, "mixture decomposition: {} component(s)", parts.len());
        for part in parts {
            let _ = writeln!(out, "  weight {}: {}", part.weight, part.balance.format());
        }
    }
    Ok(out)
}

fn run_redox(a: &RedoxArgs, json: bool) -> Result<String, CliError> {
    let text = read_source(&a.input)?;
    let rx = parse_equation(text.trim()).map_err(domain)?;
    let medium: Medium = a.medium.into();

    if a.half {
        if a.method != MethodArg::HalfReaction {
            return Err(CliError::Usage(
                "--half applies only to --method half-reaction".into(),
            ));
        }
        let h = HalfReaction::new(rx, medium).map_err(domain)?;
        let b = balance_half_reaction(&h).map_err(domain)?;
        let e = electron_coefficient(&b);
        if json {
            return Ok(finish_json(&json!({
                "medium": jval(&medium),
                "half_balance": jval(&b),
                "electron_coefficient": e.to_string(),
            })));
        }
        let mut out = String::new();
        let _ = writeln!(out, "{}", b.format());
        let _ = writeln!(out, "electron coefficient: {}", e);
        return Ok(out);
    }

    if a.splits {
        let splits = enumerate_half_reaction_splits(&rx).map_err(domain)?;
        if json {
            let items: Vec<Value> = splits
                .iter()
                .map(|(h1, h2)| json!({"first": jval(h1), "second": jval(h2)}))
                .collect();
            return Ok(finish_json(&json!({"splits": items})));
        }
        let mut out = String::new();
        let _ = writeln!(out, "half-reaction splits: {}", splits.len());
        for (i, (h1, h2)) in splits.iter().enumerate() {
            let _ = writeln!(
                out,
                "  {}: {}  ||  {}",
                i + 1,
                reaction_line(h1),
                reaction_line(h2)
            );
        }
        return Ok(out);
    }

    match a.method {
        MethodArg::HalfReaction => {
            let balances = half_reaction_reachable_balances(&rx, medium).map_err(domain)?;
            if json {
                return Ok(finish_json(&json!({
                    "method": "half-reaction",
                    "medium": jval(&medium),
                    "balances": jval(&balances),
                })));
            }
            let mut out = String::new();
            if balances.is_empty() {
                let _ = writeln!(out, "no balancing reachable through half-reaction pairs");
            } else {
                let _ = writeln!(
                    out,
                    "balances reachable through half-reaction pairs: {}",
                    balances.len()
                );
                for b in &balances {
                    let _ = writeln!(out, "  {}", b.format());
                }
            }
            Ok(out)
        }
        MethodArg::ChargeRow => {
            let cs = charge_system(&rx).map_err(domain)?;
            let rays = generating_balances(&rx).map_err(domain)?;
            if json {
                return Ok(finish_json(&json!({
                    "method": "charge-row",
                    "charge_system": jval(&cs),
                    "balances": jval(&rays),
                })));
            }
            let slice_note = match &cs.slice {
                SliceOutcome::Canonical { .. } => "canonical slice".to_string(),
                SliceOutcome::Searched { normal, .. } => {
                    format!("slice found after search (normal {})", vec_str(normal))
                }
                SliceOutcome::NoCanonicalSlice { .. } => "no admissible slice".to_string(),
            };
            let mut out = String::new();
            let _ = writeln!(out, "charge row: {}", slice_note);
            if rays.is_empty() {
                let _ = writeln!(out, "no balancing exists");
            } else {
                for b in &rays {
                    let _ = writeln!(out, "  {}", b.format());
                }
            }
            Ok(out)
        }
        MethodArg::Spectator => {
            let t = spectator_transform(&rx).map_err(domain)?;
            let rays = generating_balances(&t).map_err(domain)?;
            let stripped: Vec<Balance> = rays
                .iter()
                .map(|b| strip_spectators(b, &rx))
                .collect::<Result<_, _>>()
                .map_err(domain)?;
            if json {
                return Ok(finish_json(&json!({
                    "method": "spectator",
                    "bound_form": jval(&t),
                    "balances": jval(&stripped),
                })));
            }
            let mut out = String::new();
            let _ = writeln!(out, "bound form: {}", reaction_line(&t));
            if stripped.is_empty() {
                let _ = writeln!(out, "no balancing exists");
            } else {
                for b in &stripped {
                    let _ = writeln!(out, "  {}", b.format());
                }
            }
            Ok(out)
        }
    }
}

fn run_mechanism(action: &MechanismAction, json: bool) -> Result<String, CliError> {
    match action {
        MechanismAction::Report { input, elements } => {
            let mech = parse_mechanism_input(input)?;
            let elemental = match elements {
                Some(v) => Some(Mat::from_rows(parse_matrix_arg(v)?).map_err(domain)?),
                None => None,
            };
            let rep = conservation_report(&mech, elemental.as_ref()).map_err(domain)?;
            if json {
                return Ok(finish_json(&json!({
                    "species": mech.species(),
                    "known": mech.known(),
                    "intermediates": mech.intermediates(),
                    "mass_space": subspace_json(&rep.mass_space),
                    "element_space": rep.element_space.as_ref().map(subspace_json),
                    "homology_dim": rep.homology_dim,
                    "observed_space": subspace_json(&rep.observed_space),
                    "conservative": rep.conservative,
                })));
            }
            let mut out = String::new();
            let _ = writeln!(
                out,
                "species: {} ({} known, {} intermediate); steps: {}",
                mech.n_species(),
                mech.known().len(),
                mech.intermediates().len(),
                mech.n_steps()
            );
            let _ = writeln!(out, "mass space dimension: {}", rep.mass_space.dim());
            for b in rep.mass_space.basis_vectors() {
                let _ = writeln!(out, "  {}", vec_str(&b));
            }
            if let Some(es) = &rep.element_space {
                let _ = writeln!(out, "element space dimension: {}", es.dim());
            }
            if let Some(h) = rep.homology_dim {
                let _ = writeln!(out, "homology dimension: {}", h);
            }
            let _ = writeln!(
                out,
                "observed projection dimension: {}",
                rep.observed_space.dim()
            );
            let _ = writeln!(
                out,
                "conservative: {}",
                if rep.conservative { "yes" } else { "no" }
            );
            Ok(out)
        }
        MechanismAction::Consistent { input, t, region } => {
            let mech = parse_mechanism_input(input)?;
            let found = consistent_reactions(&mech, *t).map_err(domain)?;
            let reg = if *region {
                Some(consistent_region(&mech, *t).map_err(domain)?)
            } else {
                None
            };
            if json {
                let mut obj = serde_json::Map::new();
                obj.insert("t".into(), json!(t));
                obj.insert("lattice_count".into(), json!(found.lattice_count));
                obj.insert("reactions".into(), vecs_json(&found.reactions));
                if let Some(p) = &reg {
                    obj.insert("region".into(), jval(p));
                }
                return Ok(finish_json(&Value::Object(obj)));
            }
            let mut out = String::new();
            let _ = writeln!(
                out,
                "consistent lattice reactions with step budget {}: {} ({} nonzero)",
                t,
                found.lattice_count,
                found.reactions.len()
            );
            for c in &found.reactions {
                let _ = writeln!(out, "  {}", format_net(mech.species(), c));
            }
            if let Some(p) = &reg {
                polytope_block(&mut out, "consistent region", p);
            }
            Ok(out)
        }
        MechanismAction::Represent { input, c, bound } => {
            let mech = parse_mechanism_input(input)?;
            let target = parse_rat_list(c)?;
            let fin = representation_finiteness(&mech).map_err(domain)?;
            let reps = algebraic_representations(&mech, &target, *bound).map_err(domain)?;
            if json {
                let fin_json = match &fin {
                    Finiteness::Finite => json!("finite"),
                    Finiteness::Infinite { witness } => json!({"infinite": rats_json(witness)}),
                };
                return Ok(finish_json(&json!({
                    "finiteness": fin_json,
                    "target": rats_json(&target),
                    "representations": vecs_json(&reps),
                })));
            }
            let mut out = String::new();
            match &fin {
                Finiteness::Finite => {
                    let _ = writeln!(out, "representation space: finite");
                }
                Finiteness::Infinite { witness } => {
                    let _ = writeln!(
                        out,
                        "representation space: infinite (free direction {})",
                        vec_str(witness)
                    );
                }
            }
            let _ = writeln!(out, "target: {}", format_net(mech.species(), &target));
            let _ = writeln!(out, "representations: {}", reps.len());
            for r in &reps {
                let _ = writeln!(out, "  steps {}", vec_str(r));
            }
            Ok(out)
        }
        MechanismAction::Inverse {
            input,
            observed,
            elements,
            complete,
        } => {
            let mech = parse_mechanism_input(input)?;
            let elemental = Mat::from_rows(parse_matrix_arg(elements)?).map_err(domain)?;
            let obs_rows = parse_matrix_arg(observed)?;
            let obs = Subspace::from_vectors(mech.n_species(), &obs_rows).map_err(domain)?;
            let rep = inverse_mechanism_spaces(
                mech.n_species(),
                mech.known(),
                mech.intermediates(),
                &elemental,
                &obs,
                *complete,
            )
            .map_err(domain)?;
            if json {
                let lift = rep.lift.as_ref().map(|l| {
                    json!({
                        "dependency_space": subspace_json(&l.dependency_space),
                        "unique": l.unique,
                        "candidate_step_space": subspace_json(&l.candidate_step_space),
                    })
                });
                return Ok(finish_json(&json!({
                    "complement_space": subspace_json(&rep.complement_space),
                    "projected_observations": subspace_json(&rep.projected_observations),
                    "excess_dim": rep.excess_dim,
                    "ambiguity_space": subspace_json(&rep.ambiguity_space),
                    "hidden_kernel": subspace_json(&rep.hidden_kernel),
                    "lift": lift,
                })));
            }
            let mut out = String::new();
            let _ = writeln!(
                out,
                "complement of elemental laws: dimension {}",
                rep.complement_space.dim()
            );
            let _ = writeln!(
                out,
                "observations beyond elemental laws: dimension {}",
                rep.excess_dim
            );
            for b in rep.projected_observations.basis_vectors() {
                let _ = writeln!(out, "  {}", vec_str(&b));
            }
            let _ = writeln!(out, "ambiguity space dimension: {}", rep.ambiguity_space.dim());
            let _ = writeln!(out, "hidden kernel dimension: {}", rep.hidden_kernel.dim());
            match &rep.lift {
                Some(l) => {
                    let _ = writeln!(
                        out,
                        "lift: dependency dimension {}, unique: {}, candidate step space dimension {}",
                        l.dependency_space.dim(),
                        if l.unique { "yes" } else { "no" },
                        l.candidate_step_space.dim()
                    );
                }
                None => {
                    let _ = writeln!(out, "lift: not attempted");
                }
            }
            Ok(out)
        }
        MechanismAction::Precedence { input } => {
            let mech = parse_mechanism_input(input)?;
            let rep = precedence_analysis(&mech);
            if json {
                let stages: Vec<Vec<usize>> =
                    rep.stages.iter().map(|s| s.iter().copied().collect()).collect();
                let stage_species: Vec<Vec<String>> = rep
                    .stages
                    .iter()
                    .map(|s| s.iter().map(|&i| mech.species()[i].clone()).collect())
                    .collect();
                let available: Vec<Vec<usize>> =
                    rep.available.iter().map(|s| s.iter().copied().collect()).collect();
                return Ok(finish_json(&json!({
                    "stages": stages,
                    "stage_species": stage_species,
                    "available_steps": available,
                    "levels": rep.levels,
                })));
            }
            let mut out = String::new();
            let _ = writeln!(out, "stages:");
            for (i, st) in rep.stages.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "  after round {}: {}",
                    i,
                    label_set_str(mech.species(), st)
                );
            }
            let _ = writeln!(out, "fireable steps per stage:");
            for (i, av) in rep.available.iter().enumerate() {
                let _ = writeln!(out, "  stage {}: {}", i, index_set_str(av));
            }
            let _ = writeln!(out, "step levels:");
            for (j, lvl) in rep.levels.iter().enumerate() {
                match lvl {
                    Some(l) => {
                        let _ = writeln!(out, "  step {}: first fireable at stage {}", j, l);
                    }
                    None => {
                        let _ = writeln!(out, "  step {}: never fireable", j);
                    }
                }
            }
            Ok(out)
        }
        MechanismAction::Candidates { input, bound } => {
            let text = read_source(input)?;
            let parsed: Value = serde_json::from_str(&text)
                .map_err(|e| CliError::Domain(format!("matrix input is not JSON: {}", e)))?;
            let rows = value_to_rows(&parsed).map_err(CliError::Domain)?;
            let m = Mat::from_rows(rows).map_err(domain)?;
            let kernel = Subspace::nullspace(&m);
            let found = candidate_elementary_reactions(&kernel, *bound).map_err(domain)?;
            if json {
                return Ok(finish_json(&json!({
                    "kernel_dim": kernel.dim(),
                    "bound": bound,
                    "vector_count": found.vector_count,
                    "representatives": vecs_json(&found.representatives),
                })));
            }
            let mut out = String::new();
            let _ = writeln!(out, "kernel dimension: {}", kernel.dim());
            let _ = writeln!(
                out,
                "candidate step vectors with entries bounded by {}: {} ({} up to sign)",
                bound,
                found.vector_count,
                found.representatives.len()
            );
            for r in &found.representatives {
                let _ = writeln!(out, "  {}", vec_str(r));
            }
            Ok(out)
        }
    }
}

fn run_count(a: &CountArgs, json: bool) -> Result<String, CliError> {
    let text = read_source(&a.input)?;
    let p = parse_polytope_input(&text)?;

    if let Some(degree) = a.fit {
        let series = fit_count_polynomial(&p, degree).map_err(domain)?;
        if json {
            return Ok(finish_json(&jval(&series)));
        }
        let mut out = String::new();
        for row in &series.values {
            if a.interior {
                let _ = writeln!(out, "n={}: {} interior", row.n, row.interior);
            } else {
                let _ = writeln!(
                    out,
                    "n={}: {} lattice points ({} interior)",
                    row.n, row.inclusive, row.interior
                );
            }
        }
        if let Some(f) = &series.fitted {
            if !a.interior {
                let _ = writeln!(out, "fitted inclusive: {}", f.inclusive);
            }
            let _ = writeln!(out, "fitted interior: {}", f.interior);
        }
        return Ok(out);
    }

    if let Some(m) = a.up_to {
        let series = count_series(&p, m).map_err(domain)?;
        if json {
            return Ok(finish_json(&jval(&series)));
        }
        let mut out = String::new();
        for row in &series.values {
            if a.interior {
                let _ = writeln!(out, "n={}: {} interior", row.n, row.interior);
            } else {
                let _ = writeln!(
                    out,
                    "n={}: {} lattice points ({} interior)",
                    row.n, row.inclusive, row.interior
                );
            }
        }
        return Ok(out);
    }

    let (inclusive, interior) = denominator_bounded_count(&p, a.n).map_err(domain)?;
    if json {
        return Ok(finish_json(&json!({
            "n": a.n,
            "inclusive": inclusive,
            "interior": interior,
        })));
    }
    let mut out = String::new();
    if a.interior {
        let _ = writeln!(out, "denominator {}: {} interior lattice points", a.n, interior);
    } else {
        let _ = writeln!(
            out,
            "denominator {}: {} lattice points ({} interior)",
            a.n, inclusive, interior
        );
    }
    Ok(out)
}

fn run_polytope(a: &PolytopeArgs, json: bool) -> Result<String, CliError> {
    let text = read_source(&a.input)?;
    let rx = parse_equation(text.trim()).map_err(domain)?;
    let (pr, pp) = reactant_product_polytopes(&rx).map_err(domain)?;
    let inter = intersection_polytope(&rx);

    if json {
        let mut obj = serde_json::Map::new();
        obj.insert("reactants".into(), jval(&pr));
        obj.insert("products".into(), jval(&pp));
        match &inter {
            Ok(p) => {
                obj.insert("intersection".into(), jval(p));
            }
            Err(e) => {
                obj.insert("intersection".into(), Value::Null);
                obj.insert("intersection_note".into(), Value::String(e.to_string()));
            }
        }
        return Ok(finish_json(&Value::Object(obj)));
    }

    let mut out = String::new();
    polytope_block(&mut out, "reactant polytope", &pr);
    polytope_block(&mut out, "product polytope", &pp);
    match &inter {
        Ok(p) => polytope_block(&mut out, "intersection polytope", p),
        Err(e) => {
            let _ = writeln!(out, "intersection polytope: not defined ({})", e);
        }
    }
    Ok(out)
}

fn run_corpus(json: bool) -> Result<String, CliError> {
    let results = corpus::run();
    let healthy = corpus::profile_ok(&results);

    let rendered = if json {
        let items: Vec<Value> = results
            .iter()
            .map(|r| {
                let state = match r.state {
                    corpus::CheckState::Pass => "pass",
                    corpus::CheckState::DocumentedMismatch => "documented_mismatch",
                    corpus::CheckState::Unexpected => "unexpected",
                };
                json!({"number": r.number, "state": state, "detail": r.detail})
            })
            .collect();
        finish_json(&json!({"results": items, "expected_profile": healthy}))
    } else {
        let mut out = String::new();
        for r in &results {
            let _ = writeln!(out, "{}", corpus::format_line(r));
        }
        let _ = writeln!(out, "summary: {}", corpus::summary(&results));
        out
    };

    if healthy {
        Ok(rendered)
    } else {
        Err(CliError::Domain(format!(
            "{}corpus run deviated from the expected profile",
            rendered
        )))
    }
}

/// Dispatches a parsed invocation and returns the rendered output.
pub fn run(cfg: &RunConfig) -> Result<String, CliError> {
    match &cfg.command {
        Command::Balance(a) => run_balance(a, cfg.json),
        Command::Redox(a) => run_redox(a, cfg.json),
        Command::Mechanism(a) => run_mechanism(&a.action, cfg.json),
        Command::Count(a) => run_count(a, cfg.json),
        Command::Polytope(a) => run_polytope(a, cfg.json),
        Command::Corpus => run_corpus(cfg.json),
    }
}
