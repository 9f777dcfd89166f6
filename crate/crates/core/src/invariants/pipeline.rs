use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::{hilbert_c0, stated_generator, EvalConfig, Mode};
use crate::exactalg::{FpMatrix, Monomial, MultiPoly, Rat};
use crate::genmat::{eval_many_at_points, eval_symbolic, sample_points, TraceTree};
use crate::schur::{schur_decompose, SchurDecomp};
use crate::tableaux::{hwv_basis, ModuleDecomp, Partition};
use crate::words::{enumerate_basis, Bidegree, TracePoly};
use crate::{Error, Result};

/// Points used beyond the number of columns when ranks are taken modularly.
pub const EXTRA_POINTS: usize = 8;

/// A generator `W(λ)` together with one weight vector per bidegree, obtained
/// from the highest weight vector by repeated lowering.
#[derive(Clone, Debug)]
pub struct GeneratorModule {
    pub shape: Partition,
    pub generator: TracePoly,
    pub weight_basis: Vec<TracePoly>,
}

impl GeneratorModule {
    pub fn new(shape: Partition, generator: TracePoly) -> Result<Self> {
        let top = Bidegree::new(shape.l1, shape.l2);
        if generator.bidegree() != Some(top) {
            return Err(Error::Invalid(format!(
                "generator is not of bidegree {top}"
            )));
        }
        if !generator.delta().is_zero() {
            return Err(Error::Invalid(format!(
                "generator of ({},{}) is not a highest weight vector",
                shape.l1, shape.l2
            )));
        }
        let mut weight_basis = vec![generator.clone()];
        for _ in shape.l2..shape.l1 {
            let next = weight_basis.last().expect("nonempty").lower();
            debug_assert!(!next.is_zero());
            weight_basis.push(next);
        }
        Ok(GeneratorModule {
            shape,
            generator,
            weight_basis,
        })
    }

    pub fn degree(&self) -> u32 {
        self.shape.degree()
    }

    /// The same module with its generator multiplied by `c`.
    pub fn rescaled(&self, c: &Rat) -> Result<Self> {
        GeneratorModule::new(self.shape, self.generator.scale(c))
    }
}

/// Generator modules collected so far, in the order they were found.
#[derive(Clone, Debug, Default)]
pub struct GeneratorSet {
    entries: Vec<GeneratorModule>,
}

impl GeneratorSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Modules built from the stated generators of `shapes`.
    pub fn from_shapes(shapes: &[Partition]) -> Result<Self> {
        let mut s = GeneratorSet::new();
        for &sh in shapes {
            s.push(GeneratorModule::new(sh, stated_generator(sh))?);
        }
        Ok(s)
    }

    pub fn push(&mut self, m: GeneratorModule) {
        self.entries.push(m);
    }

    pub fn entries(&self) -> &[GeneratorModule] {
        &self.entries
    }

    pub fn entries_mut(&mut self) -> &mut [GeneratorModule] {
        &mut self.entries
    }

    pub fn shapes(&self) -> Vec<Partition> {
        self.entries.iter().map(|e| e.shape).collect()
    }

    /// Weight vectors of modules of degree below `below`.
    fn weight_vectors(&self, below: u32) -> Vec<(Bidegree, &TracePoly)> {
        self.entries
            .iter()
            .filter(|e| e.degree() < below)
            .flat_map(|e| e.weight_basis.iter())
            .map(|v| (v.bidegree().expect("weight vectors are bihomogeneous"), v))
            .collect()
    }

    /// Every product of weight vectors of modules of degree below `below`
    /// with total bidegree `b`, as products of traces.
    pub fn products(&self, b: Bidegree, below: u32) -> Vec<TraceTree> {
        let vs = self.weight_vectors(below);
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        collect_products(&vs, 0, b, &mut chosen, &mut out);
        out
    }
}

fn collect_products(
    vs: &[(Bidegree, &TracePoly)],
    start: usize,
    rest: Bidegree,
    chosen: &mut Vec<usize>,
    out: &mut Vec<TraceTree>,
) {
    if rest.total() == 0 {
        if !chosen.is_empty() {
            out.push(TraceTree::Product(
                chosen
                    .iter()
                    .map(|&i| TraceTree::Traces(vs[i].1.clone()))
                    .collect(),
            ));
        }
        return;
    }
    for i in start..vs.len() {
        let b = vs[i].0;
        if b.p <= rest.p && b.q <= rest.q {
            chosen.push(i);
            collect_products(
                vs,
                i,
                Bidegree::new(rest.p - b.p, rest.q - b.q),
                chosen,
                out,
            );
            chosen.pop();
        }
    }
}

/// Indices of the columns that are not combinations of earlier ones, taken
/// in order. In modular mode both primes must give the same answer.
pub fn pivot_columns(trees: &[TraceTree], cfg: &EvalConfig) -> Result<Vec<usize>> {
    if trees.is_empty() {
        return Ok(Vec::new());
    }
    match cfg.mode {
        Mode::Modular => {
            let count = trees.len() + EXTRA_POINTS;
            let mut first: Option<Vec<usize>> = None;
            for &p in &cfg.primes {
                let rows = eval_many_at_points(trees, &sample_points(p, cfg.seed, count))?;
                let pivots = FpMatrix::from_rows(trees.len(), rows).rref().1;
                match &first {
                    Some(f) if *f != pivots => {
                        return Err(Error::ModularDisagreement {
                            rank1: f.len(),
                            rank2: pivots.len(),
                        })
                    }
                    Some(_) => {}
                    None => first = Some(pivots),
                }
            }
            Ok(first.expect("two primes"))
        }
        Mode::Symbolic => {
            let mut echelon = SparseEchelon::default();
            let mut pivots = Vec::new();
            for (i, t) in trees.iter().enumerate() {
                if echelon.insert(eval_symbolic(t)?) {
                    pivots.push(i);
                }
            }
            Ok(pivots)
        }
    }
}

/// Polynomials kept in echelon form, keyed by leading monomial.
#[derive(Default)]
struct SparseEchelon {
    rows: BTreeMap<Monomial, MultiPoly<Rat>>,
}

impl SparseEchelon {
    fn lead(p: &MultiPoly<Rat>) -> Option<(Monomial, Rat)> {
        p.terms()
            .max_by(|a, b| a.0.cmp(b.0))
            .map(|(m, c)| (*m, c.clone()))
    }

    /// Reduces `p` against the stored rows and keeps it if something is
    /// left. Returns whether `p` was independent.
    fn insert(&mut self, mut p: MultiPoly<Rat>) -> bool {
        while let Some((m, c)) = Self::lead(&p) {
            match self.rows.get(&m) {
                Some(row) => {
                    let lc = row
                        .coeff(&m.exponents(row.vars().len()))
                        .expect("lead present")
                        .clone();
                    p = p.minus(&row.scale(&(c / lc)));
                }
                None => {
                    self.rows.insert(m, p);
                    return true;
                }
            }
        }
        false
    }
}

/// Dimension of the bidegree-`b` part of the subalgebra generated by the
/// modules of `gens` of degree below `|b|`.
pub fn subalgebra_dim(gens: &GeneratorSet, b: Bidegree, cfg: &EvalConfig) -> Result<usize> {
    Ok(pivot_columns(&gens.products(b, b.total()), cfg)?.len())
}

/// Dimensions at one bidegree of degree `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BidegreeDims {
    pub bidegree: Bidegree,
    /// Products of lower-degree weight vectors tried.
    pub products: usize,
    /// Cyclic words of this bidegree.
    pub words: usize,
    /// Dimension of the part generated in lower degree.
    pub old_dim: usize,
    /// Dimension of the whole component.
    pub total_dim: usize,
    /// The same dimension read off the closed-form Hilbert series.
    pub series_dim: usize,
}

impl BidegreeDims {
    pub fn new_dim(&self) -> usize {
        self.total_dim - self.old_dim
    }
}

/// A module of new generators found in some degree.
#[derive(Clone, Debug, Serialize)]
pub struct NewModule {
    pub shape: Partition,
    #[serde(serialize_with = "super::report::display")]
    pub generator: TracePoly,
    /// Whether the stated generator `tr([x,y]^l2 x^(l1-l2))` (or its `(5,5)`
    /// replacement) lies outside the old span and was used.
    pub stated_generator: bool,
}

/// Everything computed for one degree.
#[derive(Clone, Debug, Serialize)]
pub struct DegreeStep {
    pub degree: u32,
    pub bidegrees: Vec<BidegreeDims>,
    #[serde(serialize_with = "super::report::display")]
    pub decomposition: SchurDecomp,
    pub new_modules: Vec<NewModule>,
}

impl DegreeStep {
    /// Old plus new dimension equals the series coefficient everywhere.
    pub fn consistent(&self) -> bool {
        self.bidegrees.iter().all(|d| d.total_dim == d.series_dim)
    }

    pub fn modules(&self) -> ModuleDecomp {
        self.decomposition.to_modules()
    }
}

/// Computes the new generators of degree `n`, given all generators of lower
/// degree, and picks a highest weight vector for each new module.
pub fn degree_step(n: u32, gens: &GeneratorSet, cfg: &EvalConfig) -> Result<DegreeStep> {
    let series = hilbert_c0(n)?.series;
    let mut bidegrees = Vec::new();
    let mut character = MultiPoly::zero(&crate::exactalg::tu_vars());
    for p in (0..=n).rev() {
        let b = Bidegree::new(p, n - p);
        let mut cols = gens.products(b, n);
        let products = cols.len();
        let words = enumerate_basis(b);
        cols.extend(
            words
                .iter()
                .map(|w| TraceTree::Traces(TracePoly::from_word(*w, Rat::from_integer(1.into())))),
        );
        let pivots = pivot_columns(&cols, cfg)?;
        let old_dim = pivots.iter().filter(|&&i| i < products).count();
        let dims = BidegreeDims {
            bidegree: b,
            products,
            words: words.len(),
            old_dim,
            total_dim: pivots.len(),
            series_dim: series_usize(&series.coeff(p, n - p))?,
        };
        if dims.new_dim() > 0 {
            character.add_term(
                Monomial::from_exponents(&[p, n - p]),
                Rat::from_integer(dims.new_dim().into()),
            );
        }
        bidegrees.push(dims);
    }
    let decomposition = schur_decompose(&character)?;
    let mut new_modules = Vec::new();
    for &(shape, mult) in decomposition.terms() {
        new_modules.extend(choose_generators(shape, mult as usize, gens, cfg)?);
    }
    Ok(DegreeStep {
        degree: n,
        bidegrees,
        decomposition,
        new_modules,
    })
}

fn series_usize(c: &Rat) -> Result<usize> {
    use num_traits::ToPrimitive;
    if !c.is_integer() || c < &Rat::zero() {
        return Err(Error::Invalid(format!(
            "series coefficient {c} is not a dimension"
        )));
    }
    c.to_integer()
        .to_usize()
        .ok_or_else(|| Error::Invalid("series coefficient too large".into()))
}

/// Picks `mult` highest weight vectors of shape `shape` independent modulo
/// the old part, trying the stated generator first and then the catalogue.
fn choose_generators(
    shape: Partition,
    mult: usize,
    gens: &GeneratorSet,
    cfg: &EvalConfig,
) -> Result<Vec<NewModule>> {
    let b = Bidegree::new(shape.l1, shape.l2);
    let mut cols = gens.products(b, shape.degree());
    let old = cols.len();
    let mut candidates = vec![stated_generator(shape)];
    candidates.extend(hwv_basis(shape)?);
    cols.extend(candidates.iter().map(|c| TraceTree::Traces(c.clone())));
    let picked: Vec<usize> = pivot_columns(&cols, cfg)?
        .into_iter()
        .filter(|&i| i >= old)
        .map(|i| i - old)
        .take(mult)
        .collect();
    if picked.len() < mult {
        return Err(Error::Invalid(format!(
            "only {} of {mult} new highest weight vectors of shape ({},{}) found",
            picked.len(),
            shape.l1,
            shape.l2
        )));
    }
    Ok(picked
        .into_iter()
        .map(|i| NewModule {
            shape,
            generator: candidates[i].clone(),
            stated_generator: i == 0,
        })
        .collect())
}

/// The steps for degrees `1..=max_degree` and the generators they produced.
#[derive(Clone, Debug)]
pub struct PipelineRun {
    pub steps: Vec<DegreeStep>,
    pub generators: GeneratorSet,
}

/// Runs the degree-by-degree search up to `max_degree`.
pub fn run_pipeline(max_degree: u32, cfg: &EvalConfig) -> Result<PipelineRun> {
    run_pipeline_with(max_degree, cfg, |_| {})
}

/// As [`run_pipeline`], calling `progress` after each degree.
pub fn run_pipeline_with(
    max_degree: u32,
    cfg: &EvalConfig,
    mut progress: impl FnMut(&DegreeStep),
) -> Result<PipelineRun> {
    let mut gens = GeneratorSet::new();
    let mut steps = Vec::new();
    for n in 1..=max_degree {
        let step = degree_step(n, &gens, cfg)?;
        for m in &step.new_modules {
            gens.push(GeneratorModule::new(m.shape, m.generator.clone())?);
        }
        progress(&step);
        steps.push(step);
    }
    Ok(PipelineRun {
        steps,
        generators: gens,
    })
}

/// The modules of new generators of degree `n`.
pub fn new_generator_decomp(n: u32, cfg: &EvalConfig) -> Result<ModuleDecomp> {
    if !(1..=10).contains(&n) {
        return Err(Error::Invalid(format!("degree {n} outside 1..=10")));
    }
    let run = run_pipeline(n, cfg)?;
    Ok(run.steps.last().expect("at least one step").modules())
}
