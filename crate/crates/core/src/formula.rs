//! Chemical formula and equation parsing into exact compositions.
//!
//! Grammar:
//!   formula  := item+ charge?
//!   item     := element subscript? | group subscript?
//!   element  := uppercase lowercase*
//!   group    := '(' item+ ')' | '[' item+ ']'
//!   charge   := '^' digits? ('+'|'-')  |  '+'+  |  '-'+
//!
//! Subscripts are positive integers (no leading zeros). Hydrate dots and
//! isotope prefixes are rejected. The free electron is written "e^-" (or
//! "e-") and carries an empty element map with charge -1. Element symbols are
//! not checked against the periodic table, so hypothetical elements such as
//! X, Y, Z, Q parse fine.

use crate::linalg::Mat;
use crate::rat::{int, Rat};
use crate::{Error, Result};
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

/// An exact element multiset plus net charge in elementary units.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Composition {
    pub elements: IndexMap<String, u32>,
    pub charge: i64,
}

impl Composition {
    pub fn new(elements: IndexMap<String, u32>, charge: i64) -> Result<Self> {
        if elements.values().any(|&n| n == 0) {
            return Err(Error::EmptyComposition);
        }
        if elements.is_empty() && charge != -1 {
            return Err(Error::EmptyComposition);
        }
        Ok(Composition { elements, charge })
    }

    pub fn electron() -> Self {
        Composition {
            elements: IndexMap::new(),
            charge: -1,
        }
    }

    pub fn is_electron(&self) -> bool {
        self.elements.is_empty() && self.charge == -1
    }

    pub fn atom_count(&self) -> u64 {
        self.elements.values().map(|&n| n as u64).sum()
    }

    /// Canonical text form; parsing it back yields an equal Composition.
    pub fn render(&self) -> String {
        if self.is_electron() {
            return "e^-".to_string();
        }
        let mut out = String::new();
        for (el, &n) in &self.elements {
            out.push_str(el);
            if n > 1 {
                out.push_str(&n.to_string());
            }
        }
        if self.charge != 0 {
            out.push('^');
            let mag = self.charge.unsigned_abs();
            if mag > 1 {
                out.push_str(&mag.to_string());
            }
            out.push(if self.charge > 0 { '+' } else { '-' });
        }
        out
    }

    /// Multiplicity vector in the given element order, optionally with the
    /// charge appended as the final component.
    pub fn composition_vector<S: AsRef<str>>(
        &self,
        element_order: &[S],
        with_charge: bool,
    ) -> Result<Vec<Rat>> {
        for el in self.elements.keys() {
            if !element_order.iter().any(|s| s.as_ref() == el) {
                return Err(Error::UnknownElement(el.clone()));
            }
        }
        let mut v: Vec<Rat> = element_order
            .iter()
            .map(|s| int(*self.elements.get(s.as_ref()).unwrap_or(&0) as i64))
            .collect();
        if with_charge {
            v.push(int(self.charge));
        }
        Ok(v)
    }

    /// Element proportions: the multiplicity vector scaled to sum to one.
    pub fn barycentric_point<S: AsRef<str>>(&self, element_order: &[S]) -> Result<Vec<Rat>> {
        let total = self.atom_count();
        if total == 0 {
            return Err(Error::EmptyComposition);
        }
        let t = int(total as i64);
        Ok(self
            .composition_vector(element_order, false)?
            .into_iter()
            .map(|x| x / &t)
            .collect())
    }
}

/// An unweighted reaction schema: labeled species partitioned into
/// reactants and products.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reaction {
    pub reactants: Vec<(String, Composition)>,
    pub products: Vec<(String, Composition)>,
}

impl Reaction {
    pub fn new(
        reactants: Vec<(String, Composition)>,
        products: Vec<(String, Composition)>,
    ) -> Result<Self> {
        if reactants.is_empty() || products.is_empty() {
            return Err(Error::EmptySide);
        }
        let mut seen = std::collections::HashSet::new();
        for (label, _) in reactants.iter().chain(&products) {
            if !seen.insert(label.clone()) {
                return Err(Error::DuplicateSpecies(label.clone()));
            }
        }
        Ok(Reaction {
            reactants,
            products,
        })
    }

    pub fn n_reactants(&self) -> usize {
        self.reactants.len()
    }

    pub fn n_products(&self) -> usize {
        self.products.len()
    }

    pub fn species(&self) -> impl Iterator<Item = &(String, Composition)> {
        self.reactants.iter().chain(&self.products)
    }

    pub fn species_labels(&self) -> Vec<String> {
        self.species().map(|(l, _)| l.clone()).collect()
    }

    /// Elements in first-appearance order across reactants then products.
    pub fn element_order(&self) -> Vec<String> {
        let mut order = Vec::new();
        for (_, comp) in self.species() {
            for el in comp.elements.keys() {
                if !order.iter().any(|o| o == el) {
                    order.push(el.clone());
                }
            }
        }
        order
    }

    pub fn has_charge(&self) -> bool {
        self.species().any(|(_, c)| c.charge != 0)
    }

    /// Matrix whose columns are the species multiplicity vectors, reactants
    /// first, in the given element order.
    pub fn composition_matrix<S: AsRef<str>>(
        &self,
        element_order: &[S],
        with_charge: bool,
    ) -> Result<Mat> {
        let cols: Result<Vec<Vec<Rat>>> = self
            .species()
            .map(|(_, c)| c.composition_vector(element_order, with_charge))
            .collect();
        Mat::from_cols(cols?)
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn err(&self, pos: usize, msg: &str) -> Error {
        Error::Parse {
            pos,
            msg: msg.to_string(),
        }
    }

    /// Positive integer with no leading zero.
    fn subscript(&mut self) -> Result<u32> {
        let start = self.pos;
        let mut digits = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                digits.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        if digits.starts_with('0') {
            return Err(Error::ZeroSubscript { pos: start });
        }
        digits
            .parse::<u32>()
            .map_err(|_| self.err(start, "subscript too large"))
    }

    fn element_symbol(&mut self) -> String {
        let mut sym = String::new();
        sym.push(self.bump().expect("caller checked uppercase"));
        while let Some(c) = self.peek() {
            if c.is_ascii_lowercase() {
                sym.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        sym
    }

    fn merge(
        &self,
        into: &mut IndexMap<String, u32>,
        sym: String,
        count: u32,
        pos: usize,
    ) -> Result<()> {
        let slot = into.entry(sym).or_insert(0);
        *slot = slot
            .checked_add(count)
            .ok_or_else(|| self.err(pos, "element count overflow"))?;
        Ok(())
    }

    /// Parses item+ until EOF, a charge token (top level only), or the
    /// closing bracket. `opened` is Some((open_char, open_pos)) inside a
    /// group.
    fn body(&mut self, opened: Option<(char, usize)>) -> Result<IndexMap<String, u32>> {
        let mut elements: IndexMap<String, u32> = IndexMap::new();
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_uppercase() => {
                    let at = self.pos;
                    let sym = self.element_symbol();
                    let n = if self.peek().is_some_and(|d| d.is_ascii_digit()) {
                        self.subscript()?
                    } else {
                        1
                    };
                    self.merge(&mut elements, sym, n, at)?;
                }
                Some(open @ ('(' | '[')) => {
                    let open_pos = self.pos;
                    self.pos += 1;
                    let inner = self.body(Some((open, open_pos)))?;
                    let n = if self.peek().is_some_and(|d| d.is_ascii_digit()) {
                        self.subscript()?
                    } else {
                        1
                    };
                    for (sym, count) in inner {
                        let scaled = count
                            .checked_mul(n)
                            .ok_or_else(|| self.err(open_pos, "element count overflow"))?;
                        self.merge(&mut elements, sym, scaled, open_pos)?;
                    }
                }
                Some(close @ (')' | ']')) => match opened {
                    Some((open, open_pos)) => {
                        let expected = if open == '(' { ')' } else { ']' };
                        if close != expected {
                            return Err(Error::UnbalancedBracket { pos: open_pos });
                        }
                        if elements.is_empty() {
                            return Err(self.err(open_pos, "empty group"));
                        }
                        self.pos += 1;
                        return Ok(elements);
                    }
                    None => {
                        return Err(Error::UnbalancedBracket { pos: self.pos });
                    }
                },
                Some('^' | '+' | '-') if opened.is_none() => return Ok(elements),
                Some(c) => {
                    return Err(self.err(self.pos, &format!("unexpected character '{c}'")));
                }
                None => match opened {
                    Some((_, open_pos)) => {
                        return Err(Error::UnbalancedBracket { pos: open_pos });
                    }
                    None => return Ok(elements),
                },
            }
        }
    }

    /// '^' digits? sign, or a run of identical bare signs. Must end the text.
    fn charge(&mut self) -> Result<i64> {
        match self.peek() {
            None => Ok(0),
            Some('^') => {
                self.pos += 1;
                let mag_start = self.pos;
                let mut digits = String::new();
                while let Some(c) = self.peek() {
                    if c.is_ascii_digit() {
                        digits.push(c);
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                let mag: i64 = if digits.is_empty() {
                    1
                } else if digits.starts_with('0') {
                    return Err(self.err(mag_start, "invalid charge magnitude"));
                } else {
                    digits
                        .parse()
                        .map_err(|_| self.err(mag_start, "charge too large"))?
                };
                match self.bump() {
                    Some('+') => Ok(mag),
                    Some('-') => Ok(-mag),
                    _ => Err(self.err(self.pos.saturating_sub(1), "expected '+' or '-' after '^'")),
                }
            }
            Some(sign @ ('+' | '-')) => {
                let mut mag = 0i64;
                while self.peek() == Some(sign) {
                    mag += 1;
                    self.pos += 1;
                }
                Ok(if sign == '+' { mag } else { -mag })
            }
            Some(c) => Err(self.err(self.pos, &format!("unexpected character '{c}'"))),
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Composition> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(Error::Parse {
            pos: 0,
            msg: "empty formula".to_string(),
        });
    }
    if trimmed == "e^-" || trimmed == "e-" {
        return Ok(Composition::electron());
    }
    let mut p = Parser::new(trimmed);
    let elements = p.body(None)?;
    let charge = p.charge()?;
    if p.pos < p.chars.len() {
        return Err(p.err(p.pos, "trailing input after charge"));
    }
    if elements.is_empty() {
        return Err(p.err(0, "formula has no elements"));
    }
    Ok(Composition { elements, charge })
}

/// Splits one side of an equation on '+' tokens that are surrounded by
/// whitespace (a '+' glued to a formula is a charge sign, not a separator).
fn split_side(side: &str) -> Vec<String> {
    let chars: Vec<char> = side.chars().collect();
    let mut terms = Vec::new();
    let mut current = String::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '+'
            && i > 0
            && chars[i - 1].is_whitespace()
            && chars.get(i + 1).is_some_and(|n| n.is_whitespace())
        {
            terms.push(current.trim().to_string());
            current = String::new();
            i += 1;
            continue;
        }
        current.push(c);
        i += 1;
    }
    terms.push(current.trim().to_string());
    terms
}

fn parse_term(term: &str) -> Result<(u32, String, Composition)> {
    let trimmed = term.trim();
    if trimmed.is_empty() {
        return Err(Error::Parse {
            pos: 0,
            msg: "empty species term".to_string(),
        });
    }
    let mut coeff = 1u32;
    let mut rest = trimmed;
    let digits: String = trimmed.chars().take_while(|c| c.is_ascii_digit()).collect();
    // A leading integer is a stoichiometric coefficient only when followed by
    // whitespace; "2H2" stays a coefficient too, but "e^-"-like lowercase
    // starts never begin with digits anyway.
    if !digits.is_empty() {
        if digits.starts_with('0') {
            return Err(Error::Parse {
                pos: 0,
                msg: "zero coefficient".to_string(),
            });
        }
        coeff = digits.parse().map_err(|_| Error::Parse {
            pos: 0,
            msg: "coefficient too large".to_string(),
        })?;
        rest = trimmed[digits.len()..].trim_start();
        if rest.is_empty() {
            return Err(Error::Parse {
                pos: digits.len(),
                msg: "missing formula after coefficient".to_string(),
            });
        }
    }
    let comp = parse_formula(rest)?;
    Ok((coeff, rest.to_string(), comp))
}

/// Parses an equation, also returning the input's stoichiometric
/// coefficients (default 1) which the Reaction schema itself does not carry.
pub fn parse_equation_detailed(text: &str) -> Result<(Reaction, Vec<u32>, Vec<u32>)> {
    let separators = ["->", "→", "="];
    let split_at = separators
        .iter()
        .filter_map(|sep| text.find(sep).map(|i| (i, sep.len())))
        .min();
    let Some((idx, sep_len)) = split_at else {
        return Err(Error::MissingSeparator);
    };
    let left = &text[..idx];
    let right = &text[idx + sep_len..];
    let parse_side = |side: &str| -> Result<(Vec<(String, Composition)>, Vec<u32>)> {
        if side.trim().is_empty() {
            return Err(Error::EmptySide);
        }
        let mut species = Vec::new();
        let mut coeffs = Vec::new();
        for term in split_side(side) {
            let (coeff, label, comp) = parse_term(&term)?;
            species.push((label, comp));
            coeffs.push(coeff);
        }
        Ok((species, coeffs))
    };
    let (reactants, rc) = parse_side(left)?;
    let (products, pc) = parse_side(right)?;
    Ok((Reaction::new(reactants, products)?, rc, pc))
}

pub fn parse_equation(text: &str) -> Result<Reaction> {
    parse_equation_detailed(text).map(|(r, _, _)| r)
}


#[cfg(test)]
mod grammar_property_tests {
    use super::*;
    use proptest::prelude::*;

    #[derive(Debug, Clone)]
    enum Item {
        Element(String, u32),
        Group(Vec<Item>, u32),
    }

    fn render_items(items: &[Item], out: &mut String) {
        for item in items {
            match item {
                Item::Element(sym, n) => {
                    out.push_str(sym);
                    if *n > 1 {
                        out.push_str(&n.to_string());
                    }
                }
                Item::Group(inner, n) => {
                    out.push('(');
                    render_items(inner, out);
                    out.push(')');
                    if *n > 1 {
                        out.push_str(&n.to_string());
                    }
                }
            }
        }
    }

    fn tally(items: &[Item], scale: u32, into: &mut IndexMap<String, u32>) {
        for item in items {
            match item {
                Item::Element(sym, n) => {
                    *into.entry(sym.clone()).or_insert(0) += n * scale;
                }
                Item::Group(inner, n) => tally(inner, n * scale, into),
            }
        }
    }

    fn element_strategy() -> impl Strategy<Value = Item> {
        (
            prop::sample::select(vec!["H", "O", "C", "Fe", "Cl", "X", "Y", "Uuo"]),
            1u32..6,
        )
            .prop_map(|(s, n)| Item::Element(s.to_string(), n))
    }

    fn item_strategy() -> impl Strategy<Value = Item> {
        element_strategy().prop_recursive(2, 8, 3, |inner| {
            (prop::collection::vec(inner, 1..4), 1u32..4)
                .prop_map(|(items, n)| Item::Group(items, n))
        })
    }

    proptest! {
        #[test]
        fn parser_matches_reference_tally(
            items in prop::collection::vec(item_strategy(), 1..5),
            charge in -3i64..=3,
        ) {
            let mut text = String::new();
            render_items(&items, &mut text);
            if charge != 0 {
                text.push('^');
                if charge.abs() > 1 {
                    text.push_str(&charge.abs().to_string());
                }
                text.push(if charge > 0 { '+' } else { '-' });
            }
            let parsed = parse_formula(&text).unwrap();
            let mut expected = IndexMap::new();
            tally(&items, 1, &mut expected);
            prop_assert_eq!(&parsed.charge, &charge);
            for (sym, n) in &expected {
                prop_assert_eq!(parsed.elements.get(sym), Some(n));
            }
            prop_assert_eq!(parsed.elements.len(), expected.len());
            // Canonical render must reparse to the same composition.
            prop_assert_eq!(parse_formula(&parsed.render()).unwrap(), parsed);
        }

        #[test]
        fn concatenation_adds_composition_vectors(
            a in prop::collection::vec(item_strategy(), 1..4),
            b in prop::collection::vec(item_strategy(), 1..4),
        ) {
            let mut ta = String::new();
            render_items(&a, &mut ta);
            let mut tb = String::new();
            render_items(&b, &mut tb);
            let ca = parse_formula(&ta).unwrap();
            let cb = parse_formula(&tb).unwrap();
            let cab = parse_formula(&format!("{ta}{tb}")).unwrap();
            let order = ["H", "O", "C", "Fe", "Cl", "X", "Y", "Uuo"];
            let va = ca.composition_vector(&order, false).unwrap();
            let vb = cb.composition_vector(&order, false).unwrap();
            let vab = cab.composition_vector(&order, false).unwrap();
            for i in 0..order.len() {
                prop_assert_eq!(&va[i] + &vb[i], vab[i].clone());
            }
        }
    }
}
