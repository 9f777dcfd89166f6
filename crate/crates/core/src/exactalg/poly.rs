use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use rustc_hash::FxHashMap;

use super::field::{Coeff, ModP, Rat};
use crate::Result;

/// Upper bound on the number of variables of a [`VarSet`].
pub const MAX_VARS: usize = 20;

/// Exponent vector; unused trailing slots stay zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial([u8; MAX_VARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; MAX_VARS])
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = [0u8; MAX_VARS];
        for (slot, &e) in m.iter_mut().zip(exps) {
            *slot = u8::try_from(e).expect("exponent exceeds 255");
        }
        Monomial(m)
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i] as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.0[..nvars].iter().map(|&e| e as u32).collect()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    #[inline]
    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0.iter()) {
            *a += *b;
        }
        Monomial(m)
    }
}

/// Ordered, interned list of variable names.
#[derive(Clone)]
pub struct VarSet(Arc<[String]>);

fn interner() -> &'static Mutex<HashMap<Vec<String>, VarSet>> {
    static CELL: OnceLock<Mutex<HashMap<Vec<String>, VarSet>>> = OnceLock::new();
    CELL.get_or_init(|| Mutex::new(HashMap::new()))
}

impl VarSet {
    /// Names are sorted lexicographically and deduplicated.
    pub fn new<I, S>(names: I) -> VarSet
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut v: Vec<String> = names.into_iter().map(Into::into).collect();
        v.sort();
        v.dedup();
        assert!(v.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        let mut table = interner().lock().expect("varset interner poisoned");
        table
            .entry(v.clone())
            .or_insert_with(|| VarSet(v.into()))
            .clone()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.binary_search_by(|n| n.as_str().cmp(name)).ok()
    }

    pub fn union(&self, other: &VarSet) -> VarSet {
        if self == other {
            return self.clone();
        }
        VarSet::new(self.0.iter().chain(other.0.iter()).cloned())
    }
}

impl PartialEq for VarSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for VarSet {}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// Sparse multivariate polynomial with coefficients in a [`Coeff`] ring.
///
/// Zero coefficients are never stored, so two polynomials over the same
/// variable set are equal exactly when their term maps are equal.
#[derive(Clone)]
pub struct MultiPoly<C> {
    vars: VarSet,
    terms: FxHashMap<Monomial, C>,
}

impl<C: Coeff> MultiPoly<C> {
    pub fn zero(vars: &VarSet) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: FxHashMap::default(),
        }
    }

    pub fn constant(vars: &VarSet, c: C) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero_coeff() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    /// The variable `name` with coefficient `one`.
    pub fn var(vars: &VarSet, name: &str, one: C) -> Self {
        let i = vars
            .index_of(name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        let mut e = vec![0u32; vars.len()];
        e[i] = 1;
        Self::from_terms(vars, [(e, one)])
    }

    pub fn from_terms<I, E>(vars: &VarSet, terms: I) -> Self
    where
        I: IntoIterator<Item = (E, C)>,
        E: AsRef<[u32]>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            let e = e.as_ref();
            assert_eq!(e.len(), vars.len(), "exponent vector length");
            p.add_term(Monomial::from_exponents(e), c);
        }
        p
    }

    pub(crate) fn from_map(vars: &VarSet, mut terms: FxHashMap<Monomial, C>) -> Self {
        terms.retain(|_, c| !c.is_zero_coeff());
        MultiPoly {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                e.get_mut().add_assign_coeff(&c);
                if e.get().is_zero_coeff() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                if !c.is_zero_coeff() {
                    e.insert(c);
                }
            }
        }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    /// Terms in a deterministic order: by total degree, then exponent
    /// vector, both descending.
    pub fn sorted_terms(&self) -> Vec<(Monomial, C)> {
        let mut v: Vec<(Monomial, C)> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then(b.0.cmp(&a.0)));
        v
    }

    pub fn coeff(&self, exps: &[u32]) -> Option<&C> {
        self.terms.get(&Monomial::from_exponents(exps))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Homogeneous component of total degree `d`.
    pub fn component(&self, d: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() == d)
            .map(|(m, c)| (*m, c.clone()))
            .collect();
        MultiPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// Drops every term of total degree above `d`.
    pub fn truncate(&self, d: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() <= d)
            .map(|(m, c)| (*m, c.clone()))
            .collect();
        MultiPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// Re-expresses the polynomial over a superset of its variables.
    pub fn embed(&self, target: &VarSet) -> Self {
        if &self.vars == target {
            return self.clone();
        }
        let map: Vec<usize> = self
            .vars
            .names()
            .iter()
            .map(|n| {
                target
                    .index_of(n)
                    .unwrap_or_else(|| panic!("variable {n} missing from target set"))
            })
            .collect();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = [0u8; MAX_VARS];
            for (i, &j) in map.iter().enumerate() {
                e[j] = m.0[i];
            }
            out.terms.insert(Monomial(e), c.clone());
        }
        out
    }

    fn aligned<'a>(
        &'a self,
        o: &'a Self,
    ) -> (std::borrow::Cow<'a, Self>, std::borrow::Cow<'a, Self>) {
        use std::borrow::Cow;
        if self.vars == o.vars {
            (Cow::Borrowed(self), Cow::Borrowed(o))
        } else {
            let u = self.vars.union(&o.vars);
            (Cow::Owned(self.embed(&u)), Cow::Owned(o.embed(&u)))
        }
    }

    pub fn plus(&self, o: &Self) -> Self {
        let (a, b) = self.aligned(o);
        let mut out = a.into_owned();
        for (m, c) in &b.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn minus(&self, o: &Self) -> Self {
        let (a, b) = self.aligned(o);
        let mut out = a.into_owned();
        for (m, c) in &b.terms {
            out.add_term(*m, c.negated());
        }
        out
    }

    pub fn negated(&self) -> Self {
        self.map_coeffs(|c| c.negated())
    }

    pub fn times(&self, o: &Self) -> Self {
        let (a, b) = self.aligned(o);
        let (a, b) = if a.terms.len() < b.terms.len() {
            (b, a)
        } else {
            (a, b)
        };
        let mut out: FxHashMap<Monomial, C> = FxHashMap::default();
        out.reserve(a.terms.len() * b.terms.len().min(8));
        for (mb, cb) in &b.terms {
            for (ma, ca) in &a.terms {
                let c = ca.times(cb);
                match out.entry(ma.mul(mb)) {
                    Entry::Occupied(mut e) => e.get_mut().add_assign_coeff(&c),
                    Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        Self::from_map(&a.vars, out)
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero_coeff() {
            return Self::zero(&self.vars);
        }
        self.map_coeffs(|c| c.times(s))
    }

    pub fn pow(&self, e: u32, one: C) -> Self {
        let mut acc = Self::constant(&self.vars, one);
        for _ in 0..e {
            acc = acc.times(self);
        }
        acc
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        let terms = self.terms.iter().map(|(m, c)| (*m, f(c))).collect();
        MultiPoly::from_map(&self.vars, terms)
    }

    pub fn try_map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> Result<D>) -> Result<MultiPoly<D>> {
        let mut terms = FxHashMap::default();
        for (m, c) in &self.terms {
            terms.insert(*m, f(c)?);
        }
        Ok(MultiPoly::from_map(&self.vars, terms))
    }

    /// Evaluates at a point given in variable order.
    pub fn eval(&self, point: &[C]) -> Option<C> {
        assert_eq!(point.len(), self.vars.len(), "point dimension");
        let mut acc: Option<C> = None;
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                for _ in 0..m.0[i] {
                    t = t.times(x);
                }
            }
            acc = Some(match acc {
                None => t,
                Some(a) => a.plus(&t),
            });
        }
        acc
    }

    /// Formal partial derivative.
    pub fn derivative(&self, name: &str) -> Self {
        let Some(i) = self.vars.index_of(name) else {
            return Self::zero(&self.vars);
        };
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut nm = *m;
            nm.0[i] -= 1;
            out.add_term(nm, c.times(&c.from_i64_like(e as i64)));
        }
        out
    }
}

impl<C: Coeff> PartialEq for MultiPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            self.terms == other.terms
        } else {
            let (a, b) = self.aligned(other);
            a.terms == b.terms
        }
    }
}

impl<C: Coeff> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl<C: Coeff> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in terms.iter().enumerate() {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, name) in self.vars.names().iter().enumerate() {
                match m.0[i] {
                    0 => {}
                    1 => factors.push(name.clone()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<C: Coeff> Add<&MultiPoly<C>> for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, o: &MultiPoly<C>) -> MultiPoly<C> {
        self.plus(o)
    }
}

impl<C: Coeff> Sub<&MultiPoly<C>> for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, o: &MultiPoly<C>) -> MultiPoly<C> {
        self.minus(o)
    }
}

impl<C: Coeff> Mul<&MultiPoly<C>> for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, o: &MultiPoly<C>) -> MultiPoly<C> {
        self.times(o)
    }
}

impl<C: Coeff> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        self.negated()
    }
}

impl MultiPoly<Rat> {
    pub fn one(vars: &VarSet) -> Self {
        Self::constant(vars, num_traits::One::one())
    }

    pub fn rat_var(vars: &VarSet, name: &str) -> Self {
        Self::var(vars, name, num_traits::One::one())
    }

    pub fn pow_rat(&self, e: u32) -> Self {
        self.pow(e, num_traits::One::one())
    }
}

impl ModP for MultiPoly<Rat> {
    type Output = MultiPoly<super::field::Fp>;
    fn modp(&self, prime: u64) -> Result<Self::Output> {
        self.try_map_coeffs(|c| c.modp(prime))
    }
}


/// Rational polynomials are themselves coefficients, so matrices of
/// polynomials reuse the generic matrix code.
impl Coeff for MultiPoly<Rat> {
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn zero_like(&self) -> Self {
        Self::zero(&self.vars)
    }
    fn one_like(&self) -> Self {
        Self::one(&self.vars)
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Self::constant(&self.vars, Rat::from_integer(n.into()))
    }
    fn plus(&self, o: &Self) -> Self {
        MultiPoly::plus(self, o)
    }
    fn minus(&self, o: &Self) -> Self {
        MultiPoly::minus(self, o)
    }
    fn times(&self, o: &Self) -> Self {
        MultiPoly::times(self, o)
    }
    fn negated(&self) -> Self {
        MultiPoly::negated(self)
    }
}
