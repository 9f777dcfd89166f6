//! Hilbert series, the degree-by-degree search for new generators, relation
//! discovery, and the checks that tie them together.
//!
//! Everything here works in the traceless algebra `C0`. The degree-one
//! module `W(1,0)` spanned by `tr(X), tr(Y)` splits off as a tensor factor and
//! is re-attached only in the final summary.
//!
//! Ranks are computed either modularly (evaluation at seeded random points
//! modulo two primes, with the ranks required to agree) or symbolically
//! (exact elimination of the polynomials over `Q`). [`EvalConfig`] carries
//! the choice together with the primes and the seed; every report echoes it.

mod discover;
mod pipeline;
mod remarks;
mod report;
mod series;
mod verify;

use serde::Serialize;

use crate::exactalg::DEFAULT_PRIMES;
use crate::tableaux::Partition;
use crate::words::{expand_55_generator, expand_bracket_power, TracePoly};

pub use discover::{discover_relations, RelationReport};
pub use pipeline::{
    degree_step, new_generator_decomp, pivot_columns, run_pipeline, run_pipeline_with,
    subalgebra_dim, BidegreeDims, DegreeStep, GeneratorModule, GeneratorSet, NewModule,
    PipelineRun, EXTRA_POINTS,
};
pub use remarks::{
    bracket_five_identity, jacobian_rank, parameter_elements, remark_checks, IdentityCheck,
    JacobianCheck, RemarkReport, SeriesDifference,
};
pub use report::RunHeader;
pub use series::{
    denominator_c0, hilbert, hilbert_c0, hilbert_c42, hilbert_km, hilbert_un, module_factors,
    numerator_c0, relation_character, SeriesId, SeriesReport, MAX_SERIES_DEGREE,
};
pub use verify::{
    corpus_table, verify_corpus, verify_record, verify_theorem, verify_theorem_with, RecordCheck,
    TheoremReport, POINTS_PER_PRIME,
};

/// How ranks and identities are decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Modular,
    Symbolic,
}

impl std::str::FromStr for Mode {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "modular" => Ok(Mode::Modular),
            "symbolic" => Ok(Mode::Symbolic),
            _ => Err(crate::Error::Invalid(format!(
                "unknown mode `{s}` (expected modular or symbolic)"
            ))),
        }
    }
}

pub const DEFAULT_SEED: u64 = 42;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvalConfig {
    pub mode: Mode,
    pub primes: [u64; 2],
    pub seed: u64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            mode: Mode::Modular,
            primes: DEFAULT_PRIMES,
            seed: DEFAULT_SEED,
        }
    }
}

impl EvalConfig {
    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

fn part(a: u32, b: u32) -> Partition {
    Partition { l1: a, l2: b }
}

/// The twelve generator modules of the traceless algebra, by degree.
pub fn theorem_modules_c0() -> Vec<Partition> {
    [
        (2, 0),
        (3, 0),
        (4, 0),
        (2, 2),
        (3, 2),
        (4, 2),
        (3, 3),
        (4, 3),
        (5, 3),
        (4, 4),
        (6, 3),
        (5, 5),
    ]
    .into_iter()
    .map(|(a, b)| part(a, b))
    .collect()
}

/// All thirteen generator modules, `W(1,0)` first.
pub fn theorem_modules() -> Vec<Partition> {
    let mut v = vec![part(1, 0)];
    v.extend(theorem_modules_c0());
    v
}

/// The highest weight vector expected to generate `W(λ)`:
/// `tr([x,y]^l2 x^(l1-l2))`, except for `(5,5)` where that trace is
/// decomposable and `tr([x,y]^3 (x^2y^2 - xy^2x - yx^2y + y^2x^2))` is used.
pub fn stated_generator(shape: Partition) -> TracePoly {
    if shape == part(5, 5) {
        expand_55_generator()
    } else {
        expand_bracket_power(shape.l2, shape.l1 - shape.l2)
    }
}
