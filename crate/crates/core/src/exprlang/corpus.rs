//! Loader for the bundled relation corpus.
//!
//! The file is a sequence of blocks introduced by `[group ID]`,
//! `[relation ID]` or `[family ID]` headers. Each block holds `key: value`
//! fields; an indented line continues the previous field. See
//! `data/relations.txt` for the full layout.

use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactalg::Rat;
use crate::tableaux::{catalogue_entries, CatalogueEntry, Partition, StdTableau};
use crate::words::Bidegree;
use crate::{Error, Result};

use super::ast::Expr;
use super::parser::parse;
use super::pure::PurePoly;

/// Environment variable naming a corpus file to use instead of the bundled one.
pub const CORPUS_ENV: &str = "TRACE42_CORPUS";

const BUNDLED: &str = include_str!("../../data/relations.txt");

/// One auxiliary product `v_j` of a shape.
#[derive(Clone, Debug)]
pub struct VDef {
    pub name: String,
    pub expr: Expr,
}

/// The shared context of the relations of one shape.
#[derive(Clone, Debug)]
pub struct RelationGroup {
    pub id: String,
    pub shape: Partition,
    pub vs: Vec<VDef>,
    pub notes: Vec<String>,
}

/// A catalogued highest weight vector with its coefficient in a relation.
#[derive(Clone, Debug)]
pub struct WTerm {
    /// 1-based position in the shape's catalogue.
    pub index: usize,
    pub tableau: StdTableau,
    pub coeff: Rat,
}

/// An auxiliary product with its coefficient in a relation.
#[derive(Clone, Debug)]
pub struct VTerm {
    /// 1-based position in the group's list of v's.
    pub index: usize,
    pub expr: Expr,
    pub coeff: Rat,
}

/// One relation `Σ a_i w_i + Σ b_j v_j = 0`.
#[derive(Clone, Debug)]
pub struct RelationRecord {
    pub id: String,
    pub shape: Partition,
    pub w_terms: Vec<WTerm>,
    pub v_terms: Vec<VTerm>,
    /// Transcription caveats inherited from the group plus any of the record's own.
    pub notes: Vec<String>,
}

impl RelationRecord {
    /// The left-hand side as a polynomial in traces. Zero iff the relation holds
    /// identically before reduction modulo the trace identities.
    pub fn assemble(&self) -> Result<PurePoly> {
        let cat = catalogue_entries(self.shape)?;
        let mut acc = PurePoly::zero();
        for w in &self.w_terms {
            acc = acc.plus(&PurePoly::from_trace(&cat[w.index - 1].vector()).scale(&w.coeff));
        }
        for v in &self.v_terms {
            acc = acc.plus(&v.expr.to_pure()?.scale(&v.coeff));
        }
        Ok(acc)
    }

    /// Dense w-coefficients, indexed by catalogue position.
    pub fn w_vector(&self) -> Vec<Rat> {
        let q = self.w_terms.iter().map(|w| w.index).max().unwrap_or(0);
        let mut out = vec![Rat::zero(); q];
        for w in &self.w_terms {
            out[w.index - 1] = w.coeff.clone();
        }
        out
    }

    /// The relation as text, e.g. `6*w1 - 12*w2 + 6*v1`.
    pub fn terms_text(&self) -> String {
        let mut parts: Vec<(String, &Rat)> = Vec::new();
        for w in &self.w_terms {
            parts.push((format!("w{}", w.index), &w.coeff));
        }
        for v in &self.v_terms {
            parts.push((format!("v{}", v.index), &v.coeff));
        }
        let mut s = String::new();
        for (i, (name, c)) in parts.iter().enumerate() {
            let neg = **c < Rat::zero();
            let mag = if neg { -(*c).clone() } else { (*c).clone() };
            match (i, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            if !mag.is_one() {
                s.push_str(&format!("{mag}*"));
            }
            s.push_str(name);
        }
        s
    }
}

/// The parsed corpus. Immutable after load.
#[derive(Clone, Debug)]
pub struct Corpus {
    groups: Vec<RelationGroup>,
    records: Vec<RelationRecord>,
}

impl Corpus {
    pub fn records(&self) -> &[RelationRecord] {
        &self.records
    }

    pub fn groups(&self) -> &[RelationGroup] {
        &self.groups
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&RelationRecord> {
        self.records.iter().find(|r| r.id == id)
    }

    pub fn group(&self, shape: Partition) -> Option<&RelationGroup> {
        self.groups.iter().find(|g| g.shape == shape)
    }

    pub fn records_for(&self, shape: Partition) -> impl Iterator<Item = &RelationRecord> {
        self.records.iter().filter(move |r| r.shape == shape)
    }

    /// Shapes in file order.
    pub fn shapes(&self) -> Vec<Partition> {
        self.groups.iter().map(|g| g.shape).collect()
    }
}

/// Loads the corpus named by [`CORPUS_ENV`], or the bundled copy.
pub fn load_corpus() -> Result<Corpus> {
    match std::env::var_os(CORPUS_ENV) {
        Some(path) if !path.is_empty() => load_corpus_from(Path::new(&path)),
        _ => parse_corpus(BUNDLED),
    }
}

pub fn load_corpus_from(path: &Path) -> Result<Corpus> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read corpus file {}: {e}", path.display())))?;
    parse_corpus(&text)
}

struct Block {
    kind: String,
    id: String,
    fields: Vec<(String, String)>,
}

impl Block {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Corpus {
            id: self.id.clone(),
            msg: msg.into(),
        })
    }

    fn one(&self, key: &str) -> Result<&str> {
        let mut it = self.fields.iter().filter(|(k, _)| k == key);
        match (it.next(), it.next()) {
            (Some((_, v)), None) => Ok(v),
            (None, _) => self.err(format!("missing field '{key}'")),
            _ => self.err(format!("repeated field '{key}'")),
        }
    }

    fn notes(&self) -> Vec<String> {
        self.fields
            .iter()
            .filter(|(k, _)| k == "note")
            .map(|(_, v)| v.clone())
            .collect()
    }
}

fn split_blocks(text: &str) -> Result<Vec<Block>> {
    let mut blocks: Vec<Block> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim_end();
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let at = |msg: &str| Error::Corpus {
            id: format!("line {}", lineno + 1),
            msg: msg.into(),
        };
        if let Some(head) = trimmed.strip_prefix('[') {
            let head = head
                .strip_suffix(']')
                .ok_or_else(|| at("unterminated header"))?;
            let (kind, id) = head
                .split_once(' ')
                .ok_or_else(|| at("header needs a kind and an id"))?;
            blocks.push(Block {
                kind: kind.to_string(),
                id: id.trim().to_string(),
                fields: Vec::new(),
            });
            continue;
        }
        let block = blocks
            .last_mut()
            .ok_or_else(|| at("field outside any block"))?;
        if line.starts_with(char::is_whitespace) {
            let last = block
                .fields
                .last_mut()
                .ok_or_else(|| at("continuation without a field"))?;
            last.1.push(' ');
            last.1.push_str(trimmed);
        } else {
            let (k, v) = trimmed
                .split_once(':')
                .ok_or_else(|| at("expected 'key: value'"))?;
            block
                .fields
                .push((k.trim().to_string(), v.trim().to_string()));
        }
    }
    Ok(blocks)
}

/// Parses corpus text. Errors name the offending block.
pub fn parse_corpus(text: &str) -> Result<Corpus> {
    let blocks = split_blocks(text)?;
    let mut groups: Vec<RelationGroup> = Vec::new();
    let mut records: Vec<RelationRecord> = Vec::new();

    for b in &blocks {
        match b.kind.as_str() {
            "group" => groups.push(read_group(b)?),
            "relation" => {
                let g = find_group(b, &groups)?;
                let coeffs = parse_linear(b.one("terms")?).or_else(|m| b.err(m))?;
                let mut notes = g.notes.clone();
                notes.extend(b.notes());
                records.push(build_record(b, g, b.id.clone(), coeffs, notes)?);
            }
            "family" => {
                let g = find_group(b, &groups)?;
                let n: usize = b
                    .one("alpha")?
                    .parse()
                    .or_else(|_| b.err("alpha must be a count"))?;
                let mut betas = Vec::new();
                for j in 1..=g.vs.len() {
                    let form = parse_linear(b.one(&format!("beta{j}"))?).or_else(|m| b.err(m))?;
                    betas.push(form);
                }
                for k in 1..=n {
                    let unit = format!("a{k}");
                    let mut coeffs = vec![(format!("w{k}"), Rat::one())];
                    for (j, form) in betas.iter().enumerate() {
                        let c: Rat = form
                            .iter()
                            .filter(|(name, _)| *name == unit)
                            .map(|(_, c)| c.clone())
                            .sum();
                        coeffs.push((format!("v{}", j + 1), c));
                    }
                    let mut notes = g.notes.clone();
                    notes.extend(b.notes());
                    records.push(build_record(b, g, format!("{}{k}", b.id), coeffs, notes)?);
                }
            }
            other => return b.err(format!("unknown block kind '{other}'")),
        }
    }

    let mut seen = HashSet::new();
    for r in &records {
        if !seen.insert(r.id.as_str()) {
            return Err(Error::Corpus {
                id: r.id.clone(),
                msg: "duplicate id".into(),
            });
        }
    }
    Ok(Corpus { groups, records })
}

fn find_group<'a>(b: &Block, groups: &'a [RelationGroup]) -> Result<&'a RelationGroup> {
    let gid = b.one("group")?;
    match groups.iter().find(|g| g.id == gid) {
        Some(g) => Ok(g),
        None => b.err(format!("unknown group '{gid}'")),
    }
}

fn read_group(b: &Block) -> Result<RelationGroup> {
    let shape: Partition = b.one("shape")?.parse()?;
    let target = Bidegree {
        p: shape.l1,
        q: shape.l2,
    };
    let mut vs = Vec::new();
    for (k, text) in &b.fields {
        let Some(idx) = k.strip_prefix('v') else {
            continue;
        };
        if idx.parse::<usize>() != Ok(vs.len() + 1) {
            return b.err(format!("'{k}' is out of order"));
        }
        let expr = parse(text).or_else(|e| b.err(format!("{k}: {e}")))?;
        let pure = expr.to_pure()?;
        if pure.is_zero() {
            return b.err(format!("{k} expands to zero"));
        }
        if pure.bidegrees() != [target] {
            return b.err(format!("{k} is not homogeneous of bidegree {target}"));
        }
        vs.push(VDef {
            name: k.clone(),
            expr,
        });
    }
    Ok(RelationGroup {
        id: b.id.clone(),
        shape,
        vs,
        notes: b.notes(),
    })
}

fn build_record(
    b: &Block,
    g: &RelationGroup,
    id: String,
    coeffs: Vec<(String, Rat)>,
    notes: Vec<String>,
) -> Result<RelationRecord> {
    let cat: Vec<CatalogueEntry> = catalogue_entries(g.shape)?;
    let mut ws: BTreeMap<usize, Rat> = BTreeMap::new();
    let mut vs: BTreeMap<usize, Rat> = BTreeMap::new();
    for (name, c) in coeffs {
        let (slot, limit, map) = match name.split_at(1) {
            ("w", i) => (i, cat.len(), &mut ws),
            ("v", i) => (i, g.vs.len(), &mut vs),
            _ => return b.err(format!("unknown symbol '{name}'")),
        };
        let i: usize = slot
            .parse()
            .or_else(|_| b.err(format!("bad symbol '{name}'")))?;
        if i == 0 || i > limit {
            return b.err(format!("'{name}' is out of range (1..={limit})"));
        }
        *map.entry(i).or_insert_with(Rat::zero) += c;
    }
    ws.retain(|_, c| !c.is_zero());
    vs.retain(|_, c| !c.is_zero());
    if ws.is_empty() && vs.is_empty() {
        return Err(Error::Corpus {
            id,
            msg: "all coefficients vanish".into(),
        });
    }
    Ok(RelationRecord {
        id,
        shape: g.shape,
        w_terms: ws
            .into_iter()
            .map(|(i, coeff)| WTerm {
                index: i,
                tableau: cat[i - 1].tableau.clone(),
                coeff,
            })
            .collect(),
        v_terms: vs
            .into_iter()
            .map(|(i, coeff)| VTerm {
                index: i,
                expr: g.vs[i - 1].expr.clone(),
                coeff,
            })
            .collect(),
        notes,
    })
}

/// Parses `c(t1 ± t2 ...)` or `t1 ± t2 ...` where each term is `[rational]['*']name`.
fn parse_linear(text: &str) -> std::result::Result<Vec<(String, Rat)>, String> {
    let s: Vec<u8> = text.bytes().filter(|c| !c.is_ascii_whitespace()).collect();
    let mut pos = 0;

    let read_rat = |pos: &mut usize| -> Option<Rat> {
        let start = *pos;
        while *pos < s.len() && s[*pos].is_ascii_digit() {
            *pos += 1;
        }
        if *pos == start {
            return None;
        }
        let num: BigInt = std::str::from_utf8(&s[start..*pos]).ok()?.parse().ok()?;
        if *pos < s.len() && s[*pos] == b'/' {
            *pos += 1;
            let ds = *pos;
            while *pos < s.len() && s[*pos].is_ascii_digit() {
                *pos += 1;
            }
            let den: BigInt = std::str::from_utf8(&s[ds..*pos]).ok()?.parse().ok()?;
            if den.is_zero() {
                return None;
            }
            return Some(Rat::new(num, den));
        }
        Some(Rat::from_integer(num))
    };

    let mut scale = Rat::one();
    let mut closing = false;
    let save = pos;
    if let Some(c) = read_rat(&mut pos) {
        if pos < s.len() && s[pos] == b'*' && s.get(pos + 1) == Some(&b'(') {
            pos += 1;
        }
        if pos < s.len() && s[pos] == b'(' {
            pos += 1;
            scale = c;
            closing = true;
        } else {
            pos = save;
        }
    }

    let mut out = Vec::new();
    loop {
        if pos >= s.len() || (closing && s[pos] == b')') {
            break;
        }
        let mut sign = Rat::one();
        if s[pos] == b'+' || s[pos] == b'-' {
            if s[pos] == b'-' {
                sign = -sign;
            }
            pos += 1;
        } else if !out.is_empty() {
            return Err(format!("expected '+' or '-' at {pos}"));
        }
        let c = read_rat(&mut pos).unwrap_or_else(Rat::one);
        if pos < s.len() && s[pos] == b'*' {
            pos += 1;
        }
        let start = pos;
        if pos < s.len() && s[pos].is_ascii_alphabetic() {
            pos += 1;
            while pos < s.len() && s[pos].is_ascii_digit() {
                pos += 1;
            }
        }
        if pos == start {
            return Err(format!("expected a symbol at {pos}"));
        }
        let name = String::from_utf8_lossy(&s[start..pos]).into_owned();
        out.push((name, sign * c * &scale));
    }
    if closing {
        if pos >= s.len() || s[pos] != b')' {
            return Err("missing ')'".into());
        }
        pos += 1;
    }
    if pos != s.len() || out.is_empty() {
        return Err(format!("trailing input at {pos}"));
    }
    Ok(out)
}
