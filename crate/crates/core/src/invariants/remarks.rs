use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::verify::POINTS_PER_PRIME;
use super::{relation_character, theorem_modules_c0, EvalConfig, RunHeader, MAX_SERIES_DEGREE};
use crate::exactalg::{rank_nullspace, rat, QMatrix, Rat};
use crate::genmat::{eval_at_points, eval_symbolic, sample_points, Mat4, TraceTree};
use crate::words::{expand_bracket_power, Letter, TracePoly};
use crate::{Error, Result};

/// `tr([x,y]^5) - 5/6 tr([x,y]^2) tr([x,y]^3)`.
pub fn bracket_five_identity() -> TraceTree {
    let b = |s| TraceTree::Traces(expand_bracket_power(s, 0));
    TraceTree::Sum(vec![
        (Rat::one(), b(5)),
        (rat(-5, 6), TraceTree::Product(vec![b(2), b(3)])),
    ])
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub modular: bool,
    /// Present when the symbolic check was requested.
    pub symbolic: Option<bool>,
}

/// One degree of `H(K[M]) - H(C0)`.
#[derive(Clone, Debug, Serialize)]
pub struct SeriesDifference {
    pub degree: u32,
    pub computed: String,
    /// The decomposition printed for this degree, if one was printed.
    pub printed: Option<String>,
}

impl SeriesDifference {
    pub fn matches(&self) -> bool {
        self.printed.as_deref().map_or(true, |p| p == self.computed)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct JacobianCheck {
    pub seed: u64,
    /// Entries of `X` then `Y`, row by row.
    pub point: Vec<i64>,
    pub elements: Vec<String>,
    pub rank: usize,
}

impl JacobianCheck {
    pub fn passed(&self) -> bool {
        self.rank == self.elements.len()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RemarkReport {
    pub header: RunHeader,
    pub bracket_five: IdentityCheck,
    /// Degrees 11 upward. The printed text has the opposite sign; the
    /// Schur-positive difference is the one with `H(K[M])` first.
    pub differences: Vec<SeriesDifference>,
    pub jacobian: JacobianCheck,
    pub passed: bool,
}

fn printed_difference(n: u32) -> Option<&'static str> {
    match n {
        11 => Some("0"),
        12 => Some("S(7,5) + 2*S(6,6)"),
        13 => Some("S(8,5) + 2*S(7,6)"),
        14 => Some("2*S(9,5) + 6*S(8,6) + 2*S(7,7)"),
        15 => Some("2*S(10,5) + 9*S(9,6) + 7*S(8,7)"),
        _ => None,
    }
}

/// The seventeen elements: all traces of degree at most 4 in generic `X, Y`
/// and `tr([X,Y]^2 X^2)`, `tr([X,Y]^2 Y^2)`.
pub fn parameter_elements() -> Vec<TracePoly> {
    let words = [
        "x", "y", "xx", "xy", "yy", "xxx", "xxy", "xyy", "yyy", "xxxx", "xxxy", "xxyy", "xyxy",
        "xyyy", "yyyy",
    ];
    let mut out: Vec<TracePoly> = words
        .iter()
        .map(|w| TracePoly::trace_of(w).expect("nonempty"))
        .collect();
    let w42 = expand_bracket_power(2, 2);
    let swap = [[Rat::zero(), Rat::one()], [Rat::one(), Rat::zero()]];
    let swapped = w42.substitute(swap);
    out.push(w42);
    out.push(swapped);
    out
}

/// Gradient of `tp` with respect to the 32 entries of `X` and `Y`: for a
/// word `L_0 .. L_{k-1}`, the derivative in `(L_s)_{ij}` is entry `(j, i)` of
/// the cyclic product `L_{s+1} .. L_{k-1} L_0 .. L_{s-1}`.
fn gradient(tp: &TracePoly, x: &Mat4<Rat>, y: &Mat4<Rat>) -> Vec<Rat> {
    let mut grad = vec![Rat::zero(); 32];
    let id = Mat4::scalar(&Rat::one());
    for (w, c) in tp.terms() {
        let letters = w.word().0;
        let k = letters.len();
        for s in 0..k {
            let rest = (1..k).fold(id.clone(), |acc, d| {
                let m = match letters[(s + d) % k] {
                    Letter::X => x,
                    Letter::Y => y,
                };
                acc.mul(m)
            });
            let offset = if letters[s] == Letter::X { 0 } else { 16 };
            for i in 0..4 {
                for j in 0..4 {
                    grad[offset + 4 * i + j] += c * rest.entry(j, i);
                }
            }
        }
    }
    grad
}

/// Rank of the Jacobian of [`parameter_elements`] at a seeded integer point
/// with entries in `-50..=50`.
pub fn jacobian_rank(seed: u64) -> JacobianCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let point: Vec<i64> = (0..32).map(|_| rng.gen_range(-50..=50)).collect();
    let m = |off: usize| Mat4::from_fn(|i, j| Rat::from_integer(point[off + 4 * i + j].into()));
    let (x, y) = (m(0), m(16));
    let elems = parameter_elements();
    let rows = elems.iter().map(|e| gradient(e, &x, &y)).collect();
    let rank = rank_nullspace(&QMatrix::from_rows(32, rows)).0;
    JacobianCheck {
        seed,
        point,
        elements: elems.iter().map(|e| e.to_string()).collect(),
        rank,
    }
}

/// The three remark checks. `max_degree` bounds the series difference and
/// must be at least 13.
pub fn remark_checks(cfg: &EvalConfig, max_degree: u32, symbolic: bool) -> Result<RemarkReport> {
    if !(13..=MAX_SERIES_DEGREE).contains(&max_degree) {
        return Err(Error::Invalid(format!(
            "degree bound {max_degree} outside 13..={MAX_SERIES_DEGREE}"
        )));
    }
    let id = bracket_five_identity();
    let mut modular = true;
    for &p in &cfg.primes {
        modular &= eval_at_points(&id, &sample_points(p, cfg.seed, POINTS_PER_PRIME))?
            .iter()
            .all(|v| v.value() == 0);
    }
    let symbolic = if symbolic {
        Some(eval_symbolic(&id)?.is_zero())
    } else {
        None
    };
    let bracket_five = IdentityCheck { modular, symbolic };

    let character = relation_character(&theorem_modules_c0(), max_degree)?;
    let differences: Vec<SeriesDifference> = character
        .into_iter()
        .filter(|(n, _)| *n >= 11)
        .map(|(n, d)| SeriesDifference {
            degree: n,
            computed: d.to_string(),
            printed: printed_difference(n).map(String::from),
        })
        .collect();

    let jacobian = jacobian_rank(cfg.seed);
    let differences_ok = differences
        .iter()
        .filter(|d| d.degree <= 13)
        .all(SeriesDifference::matches);
    let passed = modular && symbolic != Some(false) && differences_ok && jacobian.passed();
    Ok(RemarkReport {
        header: cfg.into(),
        bracket_five,
        differences,
        jacobian,
        passed,
    })
}

fn mark(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

impl fmt::Display for RemarkReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.header)?;
        writeln!(f, "tr([x,y]^5) - 5/6 tr([x,y]^2) tr([x,y]^3) = 0")?;
        writeln!(f, "  modular: {}", mark(self.bracket_five.modular))?;
        if let Some(s) = self.bracket_five.symbolic {
            writeln!(f, "  symbolic: {}", mark(s))?;
        }
        writeln!(
            f,
            "H(K[M]) - H(C0) by degree (printed with the opposite sign):"
        )?;
        for d in &self.differences {
            write!(f, "  {:<3} {}", d.degree, d.computed)?;
            match &d.printed {
                Some(p) if *p == d.computed => writeln!(f, "  (as printed)")?,
                Some(p) => writeln!(f, "  (printed: {p})")?,
                None => writeln!(f)?,
            }
        }
        writeln!(
            f,
            "Jacobian of the 17 parameters (seed {}): rank {}",
            self.jacobian.seed, self.jacobian.rank
        )?;
        writeln!(f, "  point: {:?}", self.jacobian.point)?;
        write!(f, "remarks: {}", mark(self.passed))
    }
}
