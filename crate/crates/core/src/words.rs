//! Formal traces: words over `{x, y}` up to rotation, rational combinations
//! of them, and the derivations acting on them.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exactalg::tu_vars;
use crate::exactalg::{MultiPoly, Rat};
use crate::{Error, Result};

/// Longest word a [`CyclicWord`] can hold.
pub const MAX_WORD_LEN: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Y,
    X,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::X => 'x',
            Letter::Y => 'y',
        }
    }
}

/// A finite product `z1 z2 ... zk` of letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// Parses a plain letter string such as `"xxyxy"`.
    pub fn from_letters(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'x' => Ok(Letter::X),
                'y' => Ok(Letter::Y),
                _ => Err(Error::Invalid(format!("letter {c:?} outside {{x,y}}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bidegree(&self) -> Bidegree {
        let p = self.0.iter().filter(|&&l| l == Letter::X).count() as u32;
        Bidegree::new(p, self.0.len() as u32 - p)
    }

    pub fn rotated(&self, k: usize) -> Word {
        let mut v = self.0.clone();
        if !v.is_empty() {
            let k = k % v.len();
            v.rotate_left(k);
        }
        Word(v)
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

/// Bidegree `(p, q)`: `p` letters `x` and `q` letters `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct Bidegree {
    pub p: u32,
    pub q: u32,
}

impl Bidegree {
    pub const fn new(p: u32, q: u32) -> Self {
        Bidegree { p, q }
    }

    pub fn total(self) -> u32 {
        self.p + self.q
    }
}

impl std::ops::Add for Bidegree {
    type Output = Bidegree;
    fn add(self, o: Bidegree) -> Bidegree {
        Bidegree::new(self.p + o.p, self.q + o.q)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// A word up to rotation, stored as its distinguished representative.
///
/// Writing a rotation that starts with `x` and ends with `y` as
/// `x^a1 y^b1 ... x^ap y^bp`, the representative is the one whose tuple
/// `(a1, ..., ap, b1, ..., bp)` is lexicographically greatest. Letters are
/// packed into bits, `x` = 1, first letter in bit 0.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct CyclicWord {
    len: u8,
    bits: u32,
}

fn letter_at(bits: u32, i: usize) -> Letter {
    if bits >> i & 1 == 1 {
        Letter::X
    } else {
        Letter::Y
    }
}

fn rotate_bits(bits: u32, len: usize, k: usize) -> u32 {
    if k == 0 || len == 0 {
        return bits;
    }
    let mask = if len == 32 {
        u32::MAX
    } else {
        (1u32 << len) - 1
    };
    ((bits >> k) | (bits << (len - k))) & mask
}

/// Run lengths `(a1..ap)`, `(b1..bp)` of a word beginning with `x` and
/// ending with `y`.
fn runs(bits: u32, len: usize) -> (Vec<u8>, Vec<u8>) {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut i = 0;
    while i < len {
        let l = letter_at(bits, i);
        let mut j = i;
        while j < len && letter_at(bits, j) == l {
            j += 1;
        }
        match l {
            Letter::X => xs.push((j - i) as u8),
            Letter::Y => ys.push((j - i) as u8),
        }
        i = j;
    }
    (xs, ys)
}

impl CyclicWord {
    pub fn new(w: &Word) -> Result<Self> {
        cyclic_canonicalize(w)
    }

    /// `tr(x^n)`.
    pub fn x_power(n: usize) -> Self {
        assert!((1..=MAX_WORD_LEN).contains(&n));
        let bits = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        CyclicWord { len: n as u8, bits }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn letter(&self, i: usize) -> Letter {
        letter_at(self.bits, i)
    }

    pub fn word(&self) -> Word {
        Word((0..self.len()).map(|i| self.letter(i)).collect())
    }

    pub fn bidegree(&self) -> Bidegree {
        let p = self.bits.count_ones();
        Bidegree::new(p, self.len as u32 - p)
    }

    /// Comparison key; injective on canonical words.
    fn key(&self) -> (Vec<u8>, Vec<u8>) {
        runs(self.bits, self.len())
    }

    /// Exponent runs as displayed: `[(a1, b1), ..., (ap, bp)]`, where a
    /// pure power has a single pair with a zero entry.
    pub fn exponent_pairs(&self) -> Vec<(u32, u32)> {
        let (xs, ys) = self.key();
        if ys.is_empty() {
            return vec![(xs[0] as u32, 0)];
        }
        if xs.is_empty() {
            return vec![(0, ys[0] as u32)];
        }
        xs.iter()
            .zip(&ys)
            .map(|(&a, &b)| (a as u32, b as u32))
            .collect()
    }
}

impl Ord for CyclicWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for CyclicWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tr({self})")
    }
}

/// Renders as `x^a1*y^b1*...*x^ap*y^bp` with exponent 1 omitted.
impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.len() {
            let l = self.letter(i);
            let mut j = i;
            while j < self.len() && self.letter(j) == l {
                j += 1;
            }
            parts.push(match j - i {
                1 => l.as_char().to_string(),
                e => format!("{}^{e}", l.as_char()),
            });
            i = j;
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// Distinguished rotation of a nonempty word.
pub fn cyclic_canonicalize(w: &Word) -> Result<CyclicWord> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let len = w.len();
    if len > MAX_WORD_LEN {
        return Err(Error::Invalid(format!("word longer than {MAX_WORD_LEN}")));
    }
    let bits = w.0.iter().enumerate().fold(
        0u32,
        |acc, (i, l)| if *l == Letter::X { acc | 1 << i } else { acc },
    );
    let ones = bits.count_ones() as usize;
    if ones == 0 || ones == len {
        return Ok(CyclicWord {
            len: len as u8,
            bits,
        });
    }
    let mut best: Option<(u32, (Vec<u8>, Vec<u8>))> = None;
    for k in 0..len {
        let prev = (k + len - 1) % len;
        if letter_at(bits, k) != Letter::X || letter_at(bits, prev) != Letter::Y {
            continue;
        }
        let r = rotate_bits(bits, len, k);
        let key = runs(r, len);
        if best.as_ref().map_or(true, |(_, b)| key > *b) {
            best = Some((r, key));
        }
    }
    let (bits, _) = best.expect("a mixed word has an x preceded by a y");
    Ok(CyclicWord {
        len: len as u8,
        bits,
    })
}

/// All cyclic words of bidegree `b`, each once, in descending order.
pub fn enumerate_basis(b: Bidegree) -> Vec<CyclicWord> {
    let n = b.total() as usize;
    assert!(
        (1..=MAX_WORD_LEN).contains(&n),
        "bidegree total must be in 1..=32"
    );
    let mut found = std::collections::BTreeSet::new();
    // every arrangement of p letters x among n positions
    let mut stack: Vec<(Vec<Letter>, u32, u32)> = vec![(Vec::with_capacity(n), b.p, b.q)];
    while let Some((prefix, px, qy)) = stack.pop() {
        if px == 0 && qy == 0 {
            found.insert(cyclic_canonicalize(&Word(prefix)).expect("nonempty"));
            continue;
        }
        if px > 0 {
            let mut v = prefix.clone();
            v.push(Letter::X);
            stack.push((v, px - 1, qy));
        }
        if qy > 0 {
            let mut v = prefix;
            v.push(Letter::Y);
            stack.push((v, px, qy - 1));
        }
    }
    found.into_iter().rev().collect()
}

/// Hilbert polynomial `Σ dim U_n^(p,q) t^p u^q` of the traces of length `n`.
pub fn u_n_hilbert(n: u32) -> MultiPoly<Rat> {
    assert!(n >= 1, "trace length must be positive");
    let terms = (0..=n).map(|p| {
        let dim = enumerate_basis(Bidegree::new(p, n - p)).len() as i64;
        ([p, n - p], Rat::from_integer(BigInt::from(dim)))
    });
    MultiPoly::from_terms(&tu_vars(), terms)
}

/// Rational linear combination of traces of cyclic words.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TracePoly {
    terms: BTreeMap<CyclicWord, Rat>,
}

impl TracePoly {
    pub fn zero() -> Self {
        TracePoly::default()
    }

    pub fn from_word(w: CyclicWord, c: Rat) -> Self {
        let mut t = TracePoly::zero();
        t.add_term(w, c);
        t
    }

    /// `tr(w)` for a plain letter string, e.g. `"xxyy"`.
    pub fn trace_of(letters: &str) -> Result<Self> {
        let w = cyclic_canonicalize(&Word::from_letters(letters)?)?;
        Ok(TracePoly::from_word(w, Rat::one()))
    }

    pub fn add_term(&mut self, w: CyclicWord, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &CyclicWord) -> Rat {
        self.terms.get(w).cloned().unwrap_or_else(Rat::zero)
    }

    /// Terms with the greatest cyclic word first.
    pub fn terms(&self) -> impl Iterator<Item = (&CyclicWord, &Rat)> {
        self.terms.iter().rev()
    }

    /// Common bidegree of all terms; `None` for zero or mixed input.
    pub fn bidegree(&self) -> Option<Bidegree> {
        let mut it = self.terms.keys().map(CyclicWord::bidegree);
        let first = it.next()?;
        it.all(|b| b == first).then_some(first)
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return TracePoly::zero();
        }
        TracePoly {
            terms: self.terms.iter().map(|(w, c)| (*w, c * s)).collect(),
        }
    }

    pub fn plus(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(*w, c.clone());
        }
        out
    }

    pub fn minus(&self, o: &Self) -> Self {
        self.plus(&o.scale(&-Rat::one()))
    }

    /// Applies a letter-level derivation to every trace: the sum over all
    /// positions holding `from` with that letter replaced by `to`.
    fn derive(&self, from: Letter, to: Letter) -> Self {
        let mut out = TracePoly::zero();
        for (w, c) in &self.terms {
            let letters = w.word();
            for (i, &l) in letters.0.iter().enumerate() {
                if l != from {
                    continue;
                }
                let mut v = letters.clone();
                v.0[i] = to;
                out.add_term(cyclic_canonicalize(&v).expect("nonempty"), c.clone());
            }
        }
        out
    }

    /// Raising derivation `δ`: `δ(x) = 0`, `δ(y) = x`.
    pub fn delta(&self) -> Self {
        self.derive(Letter::Y, Letter::X)
    }

    /// Lowering derivation: `x ↦ y`, `y ↦ 0`.
    pub fn lower(&self) -> Self {
        self.derive(Letter::X, Letter::Y)
    }

    /// Linear substitution `x ↦ a·x + b·y`, `y ↦ c·x + d·y` inside every
    /// trace.
    pub fn substitute(&self, g: [[Rat; 2]; 2]) -> Self {
        let image = |l: Letter| -> NcPoly {
            let (a, b) = match l {
                Letter::X => (&g[0][0], &g[0][1]),
                Letter::Y => (&g[1][0], &g[1][1]),
            };
            NcPoly::letter(Letter::X)
                .scale(a)
                .plus(&NcPoly::letter(Letter::Y).scale(b))
        };
        let mut out = TracePoly::zero();
        for (w, c) in &self.terms {
            let prod = w
                .word()
                .0
                .iter()
                .fold(NcPoly::one(), |acc, &l| acc.times(&image(l)));
            out = out.plus(&prod.trace().scale(c));
        }
        out
    }
}

impl fmt::Debug for TracePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TracePoly({self})")
    }
}

/// Renders in the expression grammar, e.g. `2*tr(x*y*x*y) - 2*tr(x^2*y^2)`.
impl fmt::Display for TracePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag.is_one() {
                write!(f, "tr({w})")?;
            } else {
                write!(f, "{mag}*tr({w})")?;
            }
        }
        Ok(())
    }
}

/// Noncommutative polynomial in `x, y` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NcPoly {
    terms: BTreeMap<Word, Rat>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = NcPoly::zero();
        p.add_term(Word::default(), c);
        p
    }

    pub fn letter(l: Letter) -> Self {
        let mut p = NcPoly::zero();
        p.add_term(Word(vec![l]), Rat::one());
        p
    }

    pub fn word(w: Word) -> Self {
        let mut p = NcPoly::zero();
        p.add_term(w, Rat::one());
        p
    }

    pub fn add_term(&mut self, w: Word, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, s: &Rat) -> Self {
        let mut out = NcPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * s);
        }
        out
    }

    pub fn plus(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn minus(&self, o: &Self) -> Self {
        self.plus(&o.scale(&-Rat::one()))
    }

    pub fn times(&self, o: &Self) -> Self {
        let mut out = NcPoly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                out.add_term(a.concat(b), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(NcPoly::one(), |acc, _| acc.times(self))
    }

    /// Commutator `ab - ba`.
    pub fn bracket(a: &Self, b: &Self) -> Self {
        a.times(b).minus(&b.times(a))
    }

    /// Formal trace. The empty word has no trace in this setting, so a
    /// nonzero constant term is rejected.
    pub fn try_trace(&self) -> Result<TracePoly> {
        let mut out = TracePoly::zero();
        for (w, c) in &self.terms {
            let cw = cyclic_canonicalize(w)?;
            out.add_term(cw, c.clone());
        }
        Ok(out)
    }

    pub fn trace(&self) -> TracePoly {
        self.try_trace()
            .expect("trace of a polynomial with constant term")
    }
}

/// `tr((xy - yx)^s x^r)` expanded in the cyclic-word basis.
pub fn expand_bracket_power(s: u32, r: u32) -> TracePoly {
    assert!(s + r >= 1, "empty product has no trace");
    let x = NcPoly::letter(Letter::X);
    let y = NcPoly::letter(Letter::Y);
    NcPoly::bracket(&x, &y).pow(s).times(&x.pow(r)).trace()
}

/// `tr((xy - yx)^3 (x^2y^2 - xyyx - yxxy + y^2x^2))`.
pub fn expand_55_generator() -> TracePoly {
    let x = NcPoly::letter(Letter::X);
    let y = NcPoly::letter(Letter::Y);
    let w = |s: &str| NcPoly::word(Word::from_letters(s).expect("letters"));
    let tail = w("xxyy")
        .minus(&w("xyyx"))
        .minus(&w("yxxy"))
        .plus(&w("yyxx"));
    NcPoly::bracket(&x, &y).pow(3).times(&tail).trace()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn cw(s: &str) -> CyclicWord {
        cyclic_canonicalize(&Word::from_letters(s).unwrap()).unwrap()
    }

    fn tp(pairs: &[(i64, &str)]) -> TracePoly {
        let mut t = TracePoly::zero();
        for &(c, w) in pairs {
            t.add_term(cw(w), rat(c, 1));
        }
        t
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(cw("yxx").to_string(), "x^2*y");
        assert_eq!(cw("xyxy").to_string(), "x*y*x*y");
        assert_eq!(cw("yxxy").to_string(), "x^2*y^2");
    }

    #[test]
    fn representative_prefers_longer_second_x_run() {
        // the representative of x^2 y^3 x^2 y keeps the y^3 block first
        assert_eq!(cw("xxyxxyyy").to_string(), "x^2*y^3*x^2*y");
        assert_eq!(cw("yxyxx").to_string(), "x^2*y*x*y");
    }

    #[test]
    fn empty_word_rejected() {
        assert_eq!(cyclic_canonicalize(&Word::default()), Err(Error::EmptyWord));
    }

    #[test]
    fn basis_22() {
        let b: Vec<String> = enumerate_basis(Bidegree::new(2, 2))
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(b, ["x^2*y^2", "x*y*x*y"]);
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(enumerate_basis(Bidegree::new(5, 3)).len(), 7);
        assert_eq!(enumerate_basis(Bidegree::new(5, 5)).len(), 26);
        assert_eq!(enumerate_basis(Bidegree::new(4, 4)).len(), 10);
    }

    #[test]
    fn hilbert_of_u4_and_u1() {
        assert_eq!(
            u_n_hilbert(4).to_string(),
            "t^4 + t^3*u + 2*t^2*u^2 + t*u^3 + u^4"
        );
        assert_eq!(u_n_hilbert(1).to_string(), "t + u");
        assert_eq!(u_n_hilbert(8).coeff(&[4, 4]), Some(&rat(10, 1)));
    }

    #[test]
    fn delta_examples() {
        assert_eq!(tp(&[(1, "yy")]).delta(), tp(&[(2, "xy")]));
        assert!(tp(&[(-1, "xxyy"), (1, "xyxy")]).delta().is_zero());
        assert!(tp(&[(1, "xxxxx")]).delta().is_zero());
    }

    #[test]
    fn delta_shifts_bidegree() {
        let t = tp(&[(3, "xxyyy"), (-2, "xyxyy")]);
        assert_eq!(t.delta().bidegree(), Some(Bidegree::new(3, 2)));
    }

    #[test]
    fn bracket_powers() {
        assert_eq!(expand_bracket_power(2, 0), tp(&[(2, "xyxy"), (-2, "xxyy")]));
        assert_eq!(expand_bracket_power(0, 5), tp(&[(1, "xxxxx")]));
        assert_eq!(
            expand_bracket_power(2, 2),
            tp(&[(-1, "xxxxyy"), (2, "xxxyxy"), (-1, "xxyxxy")])
        );
    }

    #[test]
    fn generator_55_is_highest_weight() {
        let g = expand_55_generator();
        assert!(!g.is_zero());
        assert_eq!(g.bidegree(), Some(Bidegree::new(5, 5)));
        assert!(g.delta().is_zero());
    }

    #[test]
    fn display_grammar() {
        assert_eq!(
            expand_bracket_power(2, 0).to_string(),
            "-2*tr(x^2*y^2) + 2*tr(x*y*x*y)"
        );
    }

    #[test]
    fn lowering_from_x_power() {
        let l = tp(&[(1, "xxx")]).lower();
        assert_eq!(l, tp(&[(3, "xxy")]));
    }
}
