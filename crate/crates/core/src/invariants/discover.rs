use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::report::display_all;
use super::{pivot_columns, EvalConfig, GeneratorSet, Mode, RunHeader, EXTRA_POINTS};
use crate::exactalg::{Fp, FpMatrix, ModP, Rat};
use crate::exprlang::Corpus;
use crate::genmat::{eval_many_at_points, eval_symbolic, sample_points, Evaluable, TraceTree};
use crate::tableaux::{hwv_basis, Partition};
use crate::words::Bidegree;
use crate::{Error, Result};

/// Outcome of solving for the linear relations among the catalogued highest
/// weight vectors `w_i` of a shape and the products `v_j` recorded for it.
#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub header: RunHeader,
    pub shape: Partition,
    /// Number of catalogued `w_i`.
    pub q: usize,
    /// Number of recorded products `v_j`.
    pub p: usize,
    /// Products of lower-degree weight vectors of this bidegree.
    pub old_products: usize,
    /// Dimension of the solution space of `Σ a_i w_i + Σ b_j v_j = 0`.
    pub nullspace_dim: usize,
    /// Reduced basis of that space, coordinates `(a | b)`; empty when some
    /// entry could not be lifted to a small rational.
    #[serde(serialize_with = "serialize_basis")]
    pub nullspace: Vec<Vec<Rat>>,
    /// Symbolic check of every basis vector, when requested.
    pub nullspace_certified: Option<bool>,
    pub matched: Vec<String>,
    pub unmatched: Vec<String>,
    /// Rank of the `w` part of the solutions with the recorded products.
    pub corpus_w_rank: usize,
    /// Rank of the `w` part of the solutions with all lower-degree products.
    pub w_projection_rank: usize,
    pub new_generator_multiplicity: usize,
}

fn serialize_basis<S: serde::Serializer>(
    v: &[Vec<Rat>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for row in v {
        seq.serialize_element(&StrRow(row))?;
    }
    seq.end()
}

struct StrRow<'a>(&'a [Rat]);

impl Serialize for StrRow<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        display_all(self.0, s)
    }
}

fn eval_matrix(trees: &[TraceTree], prime: u64, seed: u64) -> Result<FpMatrix> {
    let rows = eval_many_at_points(
        trees,
        &sample_points(prime, seed, trees.len() + EXTRA_POINTS),
    )?;
    Ok(FpMatrix::from_rows(trees.len(), rows))
}

/// Smallest-height rational congruent to `a` mod `p`, if both parts fit
/// under `sqrt(p / 2)`.
fn lift_rational(a: Fp) -> Option<Rat> {
    let p = a.modulus() as i128;
    let bound = ((p / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (p, a.value() as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if s1 == 0 || s1.abs() > bound {
        return None;
    }
    Some(Rat::new(BigInt::from(r1), BigInt::from(s1)))
}

fn vanishes(m: &FpMatrix, v: &[Rat]) -> Result<bool> {
    let p = m.get(0, 0).modulus();
    let v: Vec<Fp> = v.iter().map(|c| c.modp(p)).collect::<Result<_>>()?;
    Ok(m.apply(&v).iter().all(|x| x.value() == 0))
}

fn rank_of_columns(m: &FpMatrix, cols: std::ops::Range<usize>) -> usize {
    let rows = (0..m.rows())
        .map(|r| m.row(r)[cols.clone()].to_vec())
        .collect();
    FpMatrix::from_rows(cols.len(), rows).rank()
}

/// Solves for the relations of one shape. `gens` must hold the generator
/// modules of all degrees below the shape's.
pub fn discover_relations(
    shape: Partition,
    gens: &GeneratorSet,
    corpus: &Corpus,
    cfg: &EvalConfig,
) -> Result<RelationReport> {
    if shape.degree() > 10 {
        return Err(Error::Invalid(format!("shape {shape} has degree above 10")));
    }
    let ws = hwv_basis(shape)?;
    let q = ws.len();
    let vs: Vec<TraceTree> = match corpus.group(shape) {
        Some(g) => {
            g.vs.iter()
                .map(|v| v.expr.compile())
                .collect::<Result<_>>()?
        }
        None => Vec::new(),
    };
    let p = vs.len();
    let mut cols: Vec<TraceTree> = ws.iter().map(|w| TraceTree::Traces(w.clone())).collect();
    cols.extend(vs);

    let mats = [
        eval_matrix(&cols, cfg.primes[0], cfg.seed)?,
        eval_matrix(&cols, cfg.primes[1], cfg.seed)?,
    ];
    let ranks = [mats[0].rank(), mats[1].rank()];
    if ranks[0] != ranks[1] {
        return Err(Error::ModularDisagreement {
            rank1: ranks[0],
            rank2: ranks[1],
        });
    }
    let nullspace_dim = cols.len() - ranks[0];
    let corpus_w_rank = q - (ranks[0] - rank_of_columns(&mats[0], q..cols.len()));

    let one = Fp::new(1, cfg.primes[0]);
    let lifted: Option<Vec<Vec<Rat>>> = mats[0]
        .nullspace(&one)
        .into_iter()
        .map(|v| v.into_iter().map(lift_rational).collect())
        .collect();
    let mut nullspace = Vec::new();
    if let Some(basis) = lifted {
        let mut ok = true;
        for v in &basis {
            ok &= vanishes(&mats[1], v)?;
        }
        if ok {
            nullspace = basis;
        }
    }
    let nullspace_certified = match cfg.mode {
        Mode::Symbolic if !nullspace.is_empty() => {
            let mut ok = true;
            for v in &nullspace {
                let combo = TraceTree::Sum(
                    v.iter()
                        .zip(&cols)
                        .filter(|(c, _)| !c.is_zero())
                        .map(|(c, t)| (c.clone(), t.clone()))
                        .collect(),
                );
                ok &= eval_symbolic(&combo)?.is_zero();
            }
            Some(ok)
        }
        _ => None,
    };

    let (mut matched, mut unmatched) = (Vec::new(), Vec::new());
    for rec in corpus.records_for(shape) {
        let mut v = rec.w_vector();
        v.resize(q, Rat::zero());
        v.extend(std::iter::repeat(Rat::zero()).take(p));
        for t in &rec.v_terms {
            v[q + t.index - 1] += &t.coeff;
        }
        if vanishes(&mats[0], &v)? && vanishes(&mats[1], &v)? {
            matched.push(rec.id.clone());
        } else {
            unmatched.push(rec.id.clone());
        }
    }

    let b = Bidegree::new(shape.l1, shape.l2);
    let mut old_cols = gens.products(b, shape.degree());
    let old_products = old_cols.len();
    old_cols.extend(ws.iter().map(|w| TraceTree::Traces(w.clone())));
    let modular = EvalConfig {
        mode: Mode::Modular,
        ..cfg.clone()
    };
    let new_generator_multiplicity = pivot_columns(&old_cols, &modular)?
        .into_iter()
        .filter(|&i| i >= old_products)
        .count();

    Ok(RelationReport {
        header: cfg.into(),
        shape,
        q,
        p,
        old_products,
        nullspace_dim,
        nullspace,
        nullspace_certified,
        matched,
        unmatched,
        corpus_w_rank,
        w_projection_rank: q - new_generator_multiplicity,
        new_generator_multiplicity,
    })
}

impl fmt::Display for RelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.header)?;
        writeln!(
            f,
            "shape {}: q = {}, p = {}, lower-degree products = {}",
            self.shape, self.q, self.p, self.old_products
        )?;
        writeln!(f, "nullspace of (w | v): dimension {}", self.nullspace_dim)?;
        for v in &self.nullspace {
            let (w, rest) = v.split_at(self.q);
            let join = |xs: &[Rat]| {
                xs.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            writeln!(f, "  ({} | {})", join(w), join(rest))?;
        }
        if let Some(c) = self.nullspace_certified {
            writeln!(
                f,
                "symbolic check of basis: {}",
                if c { "pass" } else { "FAIL" }
            )?;
        }
        writeln!(f, "corpus relations in nullspace: {}", list(&self.matched))?;
        if !self.unmatched.is_empty() {
            writeln!(
                f,
                "corpus relations NOT in nullspace: {}",
                list(&self.unmatched)
            )?;
        }
        writeln!(
            f,
            "rank of w-part (recorded products): {}",
            self.corpus_w_rank
        )?;
        writeln!(
            f,
            "rank of w-part (all lower-degree products): {}",
            self.w_projection_rank
        )?;
        write!(
            f,
            "new generator multiplicity: {}",
            self.new_generator_multiplicity
        )
    }
}

fn list(xs: &[String]) -> String {
    if xs.is_empty() {
        "none".into()
    } else {
        xs.join(", ")
    }
}
