//! Two-row partitions, standard tableaux and highest weight vectors built
//! from them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::exactalg::{rank_nullspace, rat, QMatrix, Rat};
use crate::words::{cyclic_canonicalize, enumerate_basis, Letter, TracePoly, Word};
use crate::{Error, Result};

/// A partition `(l1, l2)` with `l1 >= l2 >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Partition {
    pub l1: u32,
    pub l2: u32,
}

impl Partition {
    pub fn new(l1: u32, l2: u32) -> Result<Self> {
        if l1 < l2 {
            return Err(Error::InvalidPartition(l1, l2));
        }
        Ok(Partition { l1, l2 })
    }

    pub fn degree(self) -> u32 {
        self.l1 + self.l2
    }

    /// Every two-row partition of `n`, largest first row first.
    pub fn all_of(n: u32) -> Vec<Partition> {
        (0..=n / 2).map(|l2| Partition { l1: n - l2, l2 }).collect()
    }

    /// Dimension of `W(λ)`: `l1 - l2 + 1`.
    pub fn dim(self) -> u32 {
        self.l1 - self.l2 + 1
    }
}

/// Larger first row sorts first.
impl Ord for Partition {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        o.l1.cmp(&self.l1).then(o.l2.cmp(&self.l2))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

/// Reads `(a,b)`, `(n)` or `a,b`.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("bad partition '{s}'"));
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut parts = inner
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| bad()));
        let l1 = parts.next().ok_or_else(bad)??;
        let l2 = parts.next().transpose()?.unwrap_or(0);
        if parts.next().is_some() {
            return Err(bad());
        }
        Partition::new(l1, l2)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.l2 == 0 {
            write!(f, "({})", self.l1)
        } else {
            write!(f, "({},{})", self.l1, self.l2)
        }
    }
}

/// Standard tableau of a two-row shape.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StdTableau {
    shape: Partition,
    row1: Vec<u32>,
    row2: Vec<u32>,
}

impl StdTableau {
    pub fn new(row1: Vec<u32>, row2: Vec<u32>) -> Result<Self> {
        let shape = Partition::new(row1.len() as u32, row2.len() as u32)?;
        let bad = |msg: &str| Error::Invalid(format!("not a standard tableau: {msg}"));
        let increasing = |r: &[u32]| r.windows(2).all(|w| w[0] < w[1]);
        if !increasing(&row1) || !increasing(&row2) {
            return Err(bad("rows must increase"));
        }
        if row2.iter().zip(&row1).any(|(b, a)| b <= a) {
            return Err(bad("columns must increase"));
        }
        let mut all: Vec<u32> = row1.iter().chain(&row2).copied().collect();
        all.sort_unstable();
        if all.iter().enumerate().any(|(i, &v)| v != i as u32 + 1) {
            return Err(bad("entries must be 1..n"));
        }
        Ok(StdTableau { shape, row1, row2 })
    }

    pub fn shape(&self) -> Partition {
        self.shape
    }

    pub fn row1(&self) -> &[u32] {
        &self.row1
    }

    pub fn row2(&self) -> &[u32] {
        &self.row2
    }

    /// The tableau filled column by column: `[1,3,...,2s-1,2s+1,... | 2,4,...,2s]`.
    pub fn identity(shape: Partition) -> Self {
        let s = shape.l2;
        let row1 = (0..s)
            .map(|i| 2 * i + 1)
            .chain(2 * s + 1..=shape.degree())
            .collect();
        let row2 = (0..s).map(|i| 2 * i + 2).collect();
        StdTableau { shape, row1, row2 }
    }
}

impl fmt::Display for StdTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |r: &[u32]| r.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(f, "[{} | {}]", join(&self.row1), join(&self.row2))
    }
}

impl FromStr for StdTableau {
    type Err = Error;

    /// Parses `[1,3,5 | 2,4]`; the brackets are optional.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        let (a, b) = s
            .split_once('|')
            .ok_or_else(|| Error::Invalid(format!("tableau {s:?} lacks '|'")))?;
        let row = |r: &str| -> Result<Vec<u32>> {
            r.split(',')
                .map(str::trim)
                .filter(|x| !x.is_empty())
                .map(|x| {
                    x.parse()
                        .map_err(|_| Error::Invalid(format!("bad tableau entry {x:?}")))
                })
                .collect()
        };
        StdTableau::new(row(a)?, row(b)?)
    }
}

/// Multiplicities of irreducible modules: `Σ m(λ) W(λ)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModuleDecomp {
    terms: BTreeMap<Partition, u32>,
}

impl ModuleDecomp {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: &[((u32, u32), u32)]) -> Self {
        let mut d = Self::new();
        for &((a, b), m) in pairs {
            d.add(Partition { l1: a, l2: b }, m);
        }
        d
    }

    pub fn add(&mut self, lambda: Partition, m: u32) {
        if m > 0 {
            *self.terms.entry(lambda).or_insert(0) += m;
        }
    }

    pub fn multiplicity(&self, lambda: Partition) -> u32 {
        self.terms.get(&lambda).copied().unwrap_or(0)
    }

    /// Terms with the largest first row first.
    pub fn iter(&self) -> impl Iterator<Item = (Partition, u32)> + '_ {
        self.terms.iter().map(|(p, m)| (*p, *m))
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total vector-space dimension `Σ m(λ) (l1 - l2 + 1)`.
    pub fn dim(&self) -> u32 {
        self.iter().map(|(p, m)| m * p.dim()).sum()
    }
}

/// Renders as `W(6) + 2W(4,2) + W(3,3)`, or `0` when empty.
impl fmt::Display for ModuleDecomp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(p, m)| {
                if m == 1 {
                    format!("W{p}")
                } else {
                    format!("{m}W{p}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// All standard tableaux of a shape.
pub fn standard_tableaux(shape: Partition) -> Vec<StdTableau> {
    fn fill(
        shape: Partition,
        next: u32,
        r1: &mut Vec<u32>,
        r2: &mut Vec<u32>,
        out: &mut Vec<StdTableau>,
    ) {
        if next > shape.degree() {
            out.push(StdTableau {
                shape,
                row1: r1.clone(),
                row2: r2.clone(),
            });
            return;
        }
        if (r1.len() as u32) < shape.l1 {
            r1.push(next);
            fill(shape, next + 1, r1, r2, out);
            r1.pop();
        }
        if (r2.len() as u32) < shape.l2 && r2.len() < r1.len() {
            r2.push(next);
            fill(shape, next + 1, r1, r2, out);
            r2.pop();
        }
    }
    let mut out = Vec::new();
    fill(shape, 1, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

/// Highest weight vector of a tableau.
///
/// Column `i` pairs position `row1[i]` with `row2[i]`. Each column
/// contributes `x` at the top entry and `y` at the bottom one, minus the
/// swapped assignment; all positions outside the columns carry `x`. The
/// resulting noncommutative polynomial is wrapped in a trace.
pub fn hwv_from_tableau(t: &StdTableau) -> TracePoly {
    let n = t.shape.degree() as usize;
    let cols: Vec<(usize, usize)> = t
        .row2
        .iter()
        .zip(&t.row1)
        .map(|(&b, &a)| (a as usize - 1, b as usize - 1))
        .collect();
    let mut out = TracePoly::zero();
    for mask in 0u32..1 << cols.len() {
        let mut letters = vec![Letter::X; n];
        for (i, &(top, bottom)) in cols.iter().enumerate() {
            if mask >> i & 1 == 0 {
                letters[bottom] = Letter::Y;
            } else {
                letters[top] = Letter::Y;
            }
        }
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        let w = cyclic_canonicalize(&Word::new(letters)).expect("shape has positive degree");
        out.add_term(w, rat(sign, 1));
    }
    out
}

/// One catalogue entry: a tableau and the scalar applied to its vector.
#[derive(Clone, Debug)]
pub struct CatalogueEntry {
    pub tableau: StdTableau,
    pub scalar: Rat,
}

impl CatalogueEntry {
    pub fn vector(&self) -> TracePoly {
        hwv_from_tableau(&self.tableau).scale(&self.scalar)
    }
}

type Row = &'static [u32];

/// Tableaux of the highest weight vector basis for every shape with
/// `l2 >= 2` and degree at most 10, with their normalizing scalars.
const CATALOGUE: &[((u32, u32), &[(Row, Row, (i64, i64))])] = &[
    ((2, 2), &[(&[1, 3], &[2, 4], (1, 2))]),
    ((3, 2), &[(&[1, 3, 5], &[2, 4], (1, 1))]),
    (
        (4, 2),
        &[
            (&[1, 3, 5, 6], &[2, 4], (1, 1)),
            (&[1, 2, 5, 6], &[3, 4], (1, 1)),
        ],
    ),
    ((3, 3), &[(&[1, 3, 5], &[2, 4, 6], (1, 3))]),
    (
        (5, 2),
        &[
            (&[1, 3, 5, 6, 7], &[2, 4], (1, 1)),
            (&[1, 2, 5, 6, 7], &[3, 4], (1, 1)),
        ],
    ),
    (
        (4, 3),
        &[
            (&[1, 3, 5, 7], &[2, 4, 6], (1, 1)),
            (&[1, 2, 5, 7], &[3, 4, 6], (1, 1)),
        ],
    ),
    (
        (6, 2),
        &[
            (&[1, 3, 5, 6, 7, 8], &[2, 4], (1, 1)),
            (&[1, 2, 5, 6, 7, 8], &[3, 4], (1, 1)),
            (&[1, 3, 4, 6, 7, 8], &[2, 5], (1, 1)),
        ],
    ),
    (
        (5, 3),
        &[
            (&[1, 3, 5, 7, 8], &[2, 4, 6], (1, 1)),
            (&[1, 2, 5, 7, 8], &[3, 4, 6], (1, 1)),
            (&[1, 3, 5, 6, 8], &[2, 4, 7], (1, 1)),
        ],
    ),
    (
        (4, 4),
        &[
            (&[1, 3, 5, 7], &[2, 4, 6, 8], (1, 2)),
            (&[1, 2, 5, 7], &[3, 4, 6, 8], (1, 1)),
            (&[1, 2, 5, 6], &[3, 4, 7, 8], (1, 2)),
        ],
    ),
    (
        (7, 2),
        &[
            (&[1, 3, 5, 6, 7, 8, 9], &[2, 4], (1, 1)),
            (&[1, 2, 5, 6, 7, 8, 9], &[3, 4], (1, 1)),
            (&[1, 2, 4, 6, 7, 8, 9], &[3, 5], (1, 1)),
        ],
    ),
    (
        (6, 3),
        &[
            (&[1, 3, 5, 7, 8, 9], &[2, 4, 6], (1, 1)),
            (&[1, 2, 5, 7, 8, 9], &[3, 4, 6], (1, 1)),
            (&[1, 2, 4, 7, 8, 9], &[3, 5, 6], (1, 1)),
            (&[1, 3, 5, 6, 8, 9], &[2, 4, 7], (1, 1)),
            (&[1, 3, 5, 6, 7, 9], &[2, 4, 8], (1, 1)),
            (&[1, 2, 4, 6, 8, 9], &[3, 5, 7], (1, 1)),
        ],
    ),
    (
        (5, 4),
        &[
            (&[1, 3, 5, 7, 9], &[2, 4, 6, 8], (1, 1)),
            (&[1, 2, 5, 7, 9], &[3, 4, 6, 8], (1, 1)),
            (&[1, 2, 4, 7, 9], &[3, 5, 6, 8], (1, 1)),
            (&[1, 2, 3, 4, 9], &[5, 6, 7, 8], (1, 1)),
        ],
    ),
    (
        (8, 2),
        &[
            (&[1, 3, 5, 6, 7, 8, 9, 10], &[2, 4], (1, 1)),
            (&[1, 3, 4, 6, 7, 8, 9, 10], &[2, 5], (1, 1)),
            (&[1, 3, 4, 5, 7, 8, 9, 10], &[2, 6], (1, 1)),
            (&[1, 3, 4, 5, 6, 8, 9, 10], &[2, 7], (1, 1)),
        ],
    ),
    (
        (7, 3),
        &[
            (&[1, 3, 5, 7, 8, 9, 10], &[2, 4, 6], (1, 1)),
            (&[1, 3, 5, 6, 8, 9, 10], &[2, 4, 7], (1, 1)),
            (&[1, 3, 5, 6, 7, 9, 10], &[2, 4, 8], (1, 1)),
            (&[1, 3, 5, 6, 7, 8, 10], &[2, 4, 9], (1, 1)),
            (&[1, 2, 5, 6, 7, 9, 10], &[3, 4, 8], (1, 1)),
            (&[1, 3, 4, 7, 8, 9, 10], &[2, 5, 6], (1, 1)),
            (&[1, 2, 3, 7, 8, 9, 10], &[4, 5, 6], (1, 1)),
        ],
    ),
    (
        (6, 4),
        &[
            (&[1, 3, 5, 7, 9, 10], &[2, 4, 6, 8], (1, 1)),
            (&[1, 2, 3, 4, 5, 6], &[7, 8, 9, 10], (1, 1)),
            (&[1, 2, 3, 7, 9, 10], &[4, 5, 6, 8], (1, 1)),
            (&[1, 2, 5, 7, 9, 10], &[3, 4, 6, 8], (1, 1)),
            (&[1, 2, 5, 6, 9, 10], &[3, 4, 7, 8], (1, 1)),
            (&[1, 2, 5, 6, 7, 10], &[3, 4, 8, 9], (1, 1)),
            (&[1, 3, 4, 7, 8, 10], &[2, 5, 6, 9], (1, 1)),
            (&[1, 2, 4, 6, 8, 10], &[3, 5, 7, 9], (1, 1)),
            (&[1, 3, 4, 5, 8, 9], &[2, 6, 7, 10], (1, 1)),
            (&[1, 3, 4, 7, 9, 10], &[2, 5, 6, 8], (1, 1)),
        ],
    ),
    (
        (5, 5),
        &[
            (&[1, 3, 5, 7, 9], &[2, 4, 6, 8, 10], (1, 1)),
            (&[1, 3, 5, 7, 8], &[2, 4, 6, 9, 10], (1, 1)),
            (&[1, 3, 5, 6, 7], &[2, 4, 8, 9, 10], (1, 1)),
            (&[1, 2, 3, 4, 9], &[5, 6, 7, 8, 10], (1, 1)),
        ],
    ),
];

/// Catalogued tableaux and scalars for a shape.
///
/// Single-row shapes `(n)` use the one-row tableau. Shapes with `l2 = 1`
/// never occur among the trace spaces and are not catalogued.
pub fn catalogue_entries(shape: Partition) -> Result<Vec<CatalogueEntry>> {
    if shape.degree() == 0 {
        return Err(Error::ShapeNotCatalogued(shape.l1, shape.l2));
    }
    if shape.l2 == 0 {
        return Ok(vec![CatalogueEntry {
            tableau: StdTableau::identity(shape),
            scalar: Rat::one(),
        }]);
    }
    let (_, rows) = CATALOGUE
        .iter()
        .find(|((a, b), _)| *a == shape.l1 && *b == shape.l2)
        .ok_or(Error::ShapeNotCatalogued(shape.l1, shape.l2))?;
    rows.iter()
        .map(|(r1, r2, (n, d))| {
            Ok(CatalogueEntry {
                tableau: StdTableau::new(r1.to_vec(), r2.to_vec())?,
                scalar: rat(*n, *d),
            })
        })
        .collect()
}

/// Basis `w_1, ..., w_q` of the highest weight vectors of shape `λ` in `U_n`.
pub fn hwv_basis(shape: Partition) -> Result<Vec<TracePoly>> {
    Ok(catalogue_entries(shape)?
        .iter()
        .map(CatalogueEntry::vector)
        .collect())
}

/// Every shape present in the catalogue, in catalogue order.
pub fn catalogued_shapes() -> Vec<Partition> {
    let mut out: Vec<Partition> = (1..=10).map(|n| Partition { l1: n, l2: 0 }).collect();
    out.extend(
        CATALOGUE
            .iter()
            .map(|((a, b), _)| Partition { l1: *a, l2: *b }),
    );
    out
}

/// Rank of the coefficient matrix of `vs` over the cyclic-word basis of
/// their common bidegree.
pub fn independence_rank(vs: &[TracePoly]) -> Result<usize> {
    let mut bideg = None;
    for v in vs.iter().filter(|v| !v.is_zero()) {
        let b = v.bidegree().ok_or(Error::MixedBidegree)?;
        if bideg.is_some_and(|c| c != b) {
            return Err(Error::MixedBidegree);
        }
        bideg = Some(b);
    }
    let Some(b) = bideg else { return Ok(0) };
    let basis = enumerate_basis(b);
    let rows = vs
        .iter()
        .map(|v| basis.iter().map(|w| v.coeff(w)).collect())
        .collect();
    Ok(rank_nullspace(&QMatrix::from_rows(basis.len(), rows)).0)
}
