use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::exactalg::Rat;
use crate::words::{Bidegree, CyclicWord, TracePoly};

/// Polynomial in the traces `tr(w)`, each monomial a sorted multiset of
/// cyclic words.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct PurePoly {
    terms: BTreeMap<Vec<CyclicWord>, Rat>,
}

impl PurePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = Self::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn from_trace(tp: &TracePoly) -> Self {
        let mut p = Self::zero();
        for (w, c) in tp.terms() {
            p.add_term(vec![*w], c.clone());
        }
        p
    }

    /// Adds `c` times the product of the traces of `words`.
    pub fn add_term(&mut self, mut words: Vec<CyclicWord>, c: Rat) {
        if c.is_zero() {
            return;
        }
        words.sort();
        let slot = self.terms.entry(words.clone()).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&words);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[CyclicWord], &Rat)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, s: &Rat) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c * s);
        }
        out
    }

    pub fn plus(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn minus(&self, o: &Self) -> Self {
        self.plus(&o.scale(&-Rat::one()))
    }

    pub fn times(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let mut k = a.clone();
                k.extend_from_slice(b);
                out.add_term(k, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.times(self))
    }

    /// Common bidegree of all monomials, `None` when mixed or zero.
    pub fn bidegree(&self) -> Option<Bidegree> {
        let mut degs = self.terms.keys().map(|k| {
            k.iter()
                .fold(Bidegree::new(0, 0), |acc, w| acc + w.bidegree())
        });
        let first = degs.next()?;
        degs.all(|b| b == first).then_some(first)
    }

    /// Bidegrees of the monomials, each once, in increasing order.
    pub fn bidegrees(&self) -> Vec<Bidegree> {
        let mut v: Vec<Bidegree> = self
            .terms
            .keys()
            .map(|k| {
                k.iter()
                    .fold(Bidegree::new(0, 0), |acc, w| acc + w.bidegree())
            })
            .collect();
        v.sort();
        v.dedup();
        v
    }

    /// All distinct cyclic words occurring in some monomial.
    pub fn words(&self) -> Vec<CyclicWord> {
        let mut v: Vec<CyclicWord> = self.terms.keys().flatten().copied().collect();
        v.sort();
        v.dedup();
        v
    }
}

impl fmt::Debug for PurePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PurePoly({self})")
    }
}

/// Renders in the expression grammar with repeated traces as powers.
impl fmt::Display for PurePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            let mut j = k.len();
            while j > 0 {
                let w = k[j - 1];
                let mut e = 0;
                while j > 0 && k[j - 1] == w {
                    e += 1;
                    j -= 1;
                }
                factors.push(if e == 1 {
                    format!("tr({w})")
                } else {
                    format!("tr({w})^{e}")
                });
            }
            match (factors.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{}", factors.join("*"))?,
                (false, false) => write!(f, "{mag}*{}", factors.join("*"))?,
            }
        }
        Ok(())
    }
}
