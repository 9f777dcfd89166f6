//! Generic traceless 4×4 matrices and evaluation of trace expressions.
//!
//! Over the trace algebra, a pair of traceless matrices may be simultaneously
//! conjugated so that the first is diagonal. The model pair is therefore
//!
//! ```text
//! x = diag(x1, x2, x3, -(x1+x2+x3))      y = (y_ij) with y44 = -(y11+y22+y33)
//! ```
//!
//! in 18 commuting variables. Trace expressions are evaluated by multiplying
//! matrices whose entries live in any [`Scalar`] ring: polynomials for exact
//! symbolic evaluation, or a prime field for fast random-point evaluation.

use std::collections::HashMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::exactalg::{rat, Coeff, Fp, ModP, MultiPoly, Rat, VarSet};
use crate::exprlang::{Expr, PurePoly, RelationRecord};
use crate::tableaux::catalogue_entries;
use crate::words::{CyclicWord, Letter, TracePoly, Word};
use crate::Result;

/// The free variables, in the order the diagonal and the rows of `y` list them.
pub const VARIABLE_NAMES: [&str; 18] = [
    "x1", "x2", "x3", "y11", "y12", "y13", "y14", "y21", "y22", "y23", "y24", "y31", "y32", "y33",
    "y34", "y41", "y42", "y43",
];

pub fn generic_vars() -> VarSet {
    VarSet::new(VARIABLE_NAMES)
}

/// Coefficient rings that rationals can be mapped into.
pub trait Scalar: Coeff {
    /// Image of `r`, built alongside `self` (same modulus or variable set).
    fn embed(&self, r: &Rat) -> Result<Self>;
}

impl Scalar for Rat {
    fn embed(&self, r: &Rat) -> Result<Self> {
        Ok(r.clone())
    }
}

impl Scalar for Fp {
    fn embed(&self, r: &Rat) -> Result<Self> {
        r.modp(self.modulus())
    }
}

impl Scalar for MultiPoly<Rat> {
    fn embed(&self, r: &Rat) -> Result<Self> {
        Ok(MultiPoly::constant(self.vars(), r.clone()))
    }
}

/// A 4×4 matrix over a coefficient ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat4<C>(pub [[C; 4]; 4]);

impl<C: Coeff> Mat4<C> {
    pub fn from_fn(f: impl Fn(usize, usize) -> C) -> Self {
        Mat4(std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))))
    }

    pub fn scalar(c: &C) -> Self {
        let z = c.zero_like();
        Self::from_fn(|i, j| if i == j { c.clone() } else { z.clone() })
    }

    pub fn entry(&self, i: usize, j: usize) -> &C {
        &self.0[i][j]
    }

    pub fn mul(&self, o: &Self) -> Self {
        let zero = self.0[0][0].zero_like();
        Self::from_fn(|i, j| {
            let mut acc = zero.clone();
            for k in 0..4 {
                let (a, b) = (&self.0[i][k], &o.0[k][j]);
                if !a.is_zero_coeff() && !b.is_zero_coeff() {
                    acc.add_assign_coeff(&a.times(b));
                }
            }
            acc
        })
    }

    pub fn plus(&self, o: &Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j].plus(&o.0[i][j]))
    }

    pub fn minus(&self, o: &Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j].minus(&o.0[i][j]))
    }

    pub fn scale(&self, s: &C) -> Self {
        Self::from_fn(|i, j| self.0[i][j].times(s))
    }

    pub fn trace(&self) -> C {
        let mut acc = self.0[0][0].clone();
        for i in 1..4 {
            acc.add_assign_coeff(&self.0[i][i]);
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::scalar(&self.0[0][0].one_like());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(|c| c.is_zero_coeff())
    }
}

/// Symbolic matrix over the 18 generic variables.
pub type SymMatrix = Mat4<MultiPoly<Rat>>;

/// The diagonal `x` and full traceless `y` built from 18 values, in
/// [`VARIABLE_NAMES`] order.
pub fn build_pair<C: Coeff>(values: &[C]) -> (Mat4<C>, Mat4<C>) {
    assert_eq!(values.len(), VARIABLE_NAMES.len(), "one value per variable");
    let zero = values[0].zero_like();
    let x4 = values[0].plus(&values[1]).plus(&values[2]).negated();
    let x = Mat4::from_fn(|i, j| match (i == j, i) {
        (true, 3) => x4.clone(),
        (true, _) => values[i].clone(),
        _ => zero.clone(),
    });
    let y44 = values[3].plus(&values[8]).plus(&values[13]).negated();
    let y = Mat4::from_fn(|i, j| {
        if (i, j) == (3, 3) {
            y44.clone()
        } else {
            values[3 + 4 * i + j].clone()
        }
    });
    (x, y)
}

/// The generic traceless pair over [`generic_vars`].
#[derive(Clone, Debug)]
pub struct GenericPair {
    pub x: SymMatrix,
    pub y: SymMatrix,
}

pub fn generic_traceless_pair() -> GenericPair {
    let vars = generic_vars();
    let values: Vec<MultiPoly<Rat>> = VARIABLE_NAMES
        .iter()
        .map(|n| MultiPoly::rat_var(&vars, n))
        .collect();
    let (x, y) = build_pair(&values);
    GenericPair { x, y }
}

/// An expression compiled down to sums and products of linear combinations
/// of traces of cyclic words.
#[derive(Clone, Debug, PartialEq)]
pub enum TraceTree {
    Const(Rat),
    Traces(TracePoly),
    Power(Box<TraceTree>, u32),
    Product(Vec<TraceTree>),
    Sum(Vec<(Rat, TraceTree)>),
}

/// Anything that compiles to a [`TraceTree`].
pub trait Evaluable {
    fn compile(&self) -> Result<TraceTree>;
}

impl Evaluable for TraceTree {
    fn compile(&self) -> Result<TraceTree> {
        Ok(self.clone())
    }
}

impl Evaluable for TracePoly {
    fn compile(&self) -> Result<TraceTree> {
        Ok(TraceTree::Traces(self.clone()))
    }
}

impl Evaluable for PurePoly {
    fn compile(&self) -> Result<TraceTree> {
        Ok(TraceTree::Sum(
            self.terms()
                .map(|(ws, c)| {
                    let fs = ws
                        .iter()
                        .map(|w| TraceTree::Traces(TracePoly::from_word(*w, Rat::one())));
                    (c.clone(), TraceTree::Product(fs.collect()))
                })
                .collect(),
        ))
    }
}

impl Evaluable for Expr {
    fn compile(&self) -> Result<TraceTree> {
        Ok(match self {
            Expr::Const(c) => TraceTree::Const(c.clone()),
            Expr::Trace(nc) => TraceTree::Traces(nc.to_ncpoly().try_trace()?),
            Expr::Power(b, e) => TraceTree::Power(Box::new(b.compile()?), *e),
            Expr::Product(fs) => {
                TraceTree::Product(fs.iter().map(|f| f.compile()).collect::<Result<_>>()?)
            }
            Expr::Sum(ts) => TraceTree::Sum(
                ts.iter()
                    .map(|(c, t)| Ok((c.clone(), t.compile()?)))
                    .collect::<Result<_>>()?,
            ),
        })
    }
}

impl Evaluable for RelationRecord {
    fn compile(&self) -> Result<TraceTree> {
        let cat = catalogue_entries(self.shape)?;
        let mut terms = Vec::new();
        for w in &self.w_terms {
            terms.push((
                w.coeff.clone(),
                TraceTree::Traces(cat[w.index - 1].vector()),
            ));
        }
        for v in &self.v_terms {
            terms.push((v.coeff.clone(), v.expr.compile()?));
        }
        Ok(TraceTree::Sum(terms))
    }
}

/// Evaluates traces at a fixed pair of matrices, caching every prefix
/// product and every trace it has seen.
pub struct TraceEvaluator<C> {
    x: Mat4<C>,
    y: Mat4<C>,
    one: C,
    prefixes: HashMap<(u8, u32), Mat4<C>>,
    traces: HashMap<CyclicWord, C>,
}

impl<C: Scalar> TraceEvaluator<C> {
    pub fn new(x: Mat4<C>, y: Mat4<C>) -> Self {
        let one = x.0[0][0].one_like();
        TraceEvaluator {
            x,
            y,
            one,
            prefixes: HashMap::new(),
            traces: HashMap::new(),
        }
    }

    /// The product of the letters of a raw word, without canonicalizing.
    pub fn word_matrix(&mut self, w: &Word) -> Mat4<C> {
        let mut bits = 0u32;
        let mut m = Mat4::scalar(&self.one);
        for (i, l) in w.0.iter().enumerate() {
            if *l == Letter::X {
                bits |= 1 << i;
            }
            let key = ((i + 1) as u8, bits);
            if let Some(p) = self.prefixes.get(&key) {
                m = p.clone();
                continue;
            }
            m = m.mul(match l {
                Letter::X => &self.x,
                Letter::Y => &self.y,
            });
            self.prefixes.insert(key, m.clone());
        }
        m
    }

    pub fn trace_word(&mut self, w: &CyclicWord) -> C {
        if let Some(t) = self.traces.get(w) {
            return t.clone();
        }
        let t = self.word_matrix(&w.word()).trace();
        self.traces.insert(*w, t.clone());
        t
    }

    pub fn trace_poly(&mut self, tp: &TracePoly) -> Result<C> {
        let mut acc = self.one.zero_like();
        for (w, c) in tp.terms() {
            let t = self.trace_word(w);
            acc.add_assign_coeff(&t.times(&self.one.embed(c)?));
        }
        Ok(acc)
    }

    pub fn eval(&mut self, t: &TraceTree) -> Result<C> {
        Ok(match t {
            TraceTree::Const(c) => self.one.embed(c)?,
            TraceTree::Traces(tp) => self.trace_poly(tp)?,
            TraceTree::Power(b, e) => {
                let base = self.eval(b)?;
                (0..*e).fold(self.one.clone(), |acc, _| acc.times(&base))
            }
            TraceTree::Product(fs) => {
                let mut acc = self.one.clone();
                for f in fs {
                    let v = self.eval(f)?;
                    if v.is_zero_coeff() {
                        return Ok(self.one.zero_like());
                    }
                    acc = acc.times(&v);
                }
                acc
            }
            TraceTree::Sum(ts) => {
                let mut acc = self.one.zero_like();
                for (c, f) in ts {
                    if c.is_zero() {
                        continue;
                    }
                    let v = self.eval(f)?;
                    acc.add_assign_coeff(&v.times(&self.one.embed(c)?));
                }
                acc
            }
        })
    }
}

/// Exact evaluation on the generic traceless pair.
pub fn eval_symbolic<E: Evaluable + ?Sized>(e: &E) -> Result<MultiPoly<Rat>> {
    eval_on_pair(e, &generic_traceless_pair())
}

pub fn eval_on_pair<E: Evaluable + ?Sized>(e: &E, pair: &GenericPair) -> Result<MultiPoly<Rat>> {
    let tree = e.compile()?;
    TraceEvaluator::new(pair.x.clone(), pair.y.clone()).eval(&tree)
}

pub fn eval_trace_poly(tp: &TracePoly, pair: &GenericPair) -> MultiPoly<Rat> {
    TraceEvaluator::new(pair.x.clone(), pair.y.clone())
        .trace_poly(tp)
        .expect("rational embedding cannot fail")
}

pub fn eval_expr(e: &Expr, pair: &GenericPair) -> Result<MultiPoly<Rat>> {
    eval_on_pair(e, pair)
}

/// A random assignment of the 18 variables modulo a prime, reproducible from
/// `(seed, index)`.
#[derive(Clone, Debug)]
pub struct EvalPoint {
    pub prime: u64,
    pub seed: u64,
    pub index: u64,
    pub values: Vec<Fp>,
}

impl EvalPoint {
    pub fn new(prime: u64, seed: u64, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        let values = (0..VARIABLE_NAMES.len())
            .map(|_| Fp::new(rng.gen_range(0..prime), prime))
            .collect();
        EvalPoint {
            prime,
            seed,
            index,
            values,
        }
    }

    pub fn pair(&self) -> (Mat4<Fp>, Mat4<Fp>) {
        build_pair(&self.values)
    }

    pub fn evaluator(&self) -> TraceEvaluator<Fp> {
        let (x, y) = self.pair();
        TraceEvaluator::new(x, y)
    }

    /// Value of a polynomial over [`generic_vars`] at this point.
    pub fn substitute(&self, p: &MultiPoly<Rat>) -> Result<Fp> {
        let q = p.modp(self.prime)?;
        Ok(q.eval(&self.values).unwrap_or(Fp::new(0, self.prime)))
    }
}

/// `count` points with indices `0..count`.
pub fn sample_points(prime: u64, seed: u64, count: usize) -> Vec<EvalPoint> {
    (0..count as u64)
        .map(|i| EvalPoint::new(prime, seed, i))
        .collect()
}

/// Values of one expression at each point, in point order.
pub fn eval_at_points<E: Evaluable + ?Sized>(e: &E, points: &[EvalPoint]) -> Result<Vec<Fp>> {
    let tree = e.compile()?;
    points
        .par_iter()
        .map(|pt| pt.evaluator().eval(&tree))
        .collect()
}

/// Values of many expressions at each point: row `i` holds the values at
/// `points[i]`. Traces are shared across expressions at the same point.
pub fn eval_many_at_points(trees: &[TraceTree], points: &[EvalPoint]) -> Result<Vec<Vec<Fp>>> {
    points
        .par_iter()
        .map(|pt| {
            let mut ev = pt.evaluator();
            trees.iter().map(|t| ev.eval(t)).collect()
        })
        .collect()
}

/// Upper bound on the chance that a nonzero polynomial of total degree
/// `degree` vanishes at `points` independent uniform points mod `prime`.
pub fn false_pass_bound(degree: u32, prime: u64, points: usize) -> f64 {
    (degree as f64 / prime as f64).powi(points as i32)
}

/// Coefficients of the Cayley–Hamilton identity of a traceless 4×4 matrix,
/// `x^4 = c2 tr(x^2) x^2 + c3 tr(x^3) x + (c4_p22 tr(x^2)^2 + c4_p4 tr(x^4)) e`.
#[derive(Clone, Debug, PartialEq)]
pub struct CayleyHamilton {
    pub c2: Rat,
    pub c3: Rat,
    pub c4_p22: Rat,
    pub c4_p4: Rat,
}

/// Derives the coefficients from Newton's identities with `p1 = 0`.
pub fn cayley_hamilton_traceless() -> CayleyHamilton {
    let vars = VarSet::new(["p2", "p3", "p4"]);
    let p = |k: usize| match k {
        1 => MultiPoly::zero(&vars),
        _ => MultiPoly::rat_var(&vars, &format!("p{k}")),
    };
    // e_k = (1/k) Σ_{i=1..k} (-1)^(i-1) e_{k-i} p_i
    let mut e = vec![MultiPoly::one(&vars)];
    for k in 1..=4usize {
        let mut acc = MultiPoly::zero(&vars);
        for i in 1..=k {
            let term = e[k - i].times(&p(i));
            acc = if i % 2 == 1 {
                acc.plus(&term)
            } else {
                acc.minus(&term)
            };
        }
        e.push(acc.scale(&rat(1, k as i64)));
    }
    // x^4 = e1 x^3 - e2 x^2 + e3 x - e4
    let c = |poly: &MultiPoly<Rat>, exps: [u32; 3]| {
        poly.coeff(&exps).cloned().unwrap_or_else(Rat::zero)
    };
    CayleyHamilton {
        c2: -c(&e[2], [1, 0, 0]),
        c3: c(&e[3], [0, 1, 0]),
        c4_p22: -c(&e[4], [2, 0, 0]),
        c4_p4: -c(&e[4], [0, 0, 1]),
    }
}

impl CayleyHamilton {
    /// The variant with constant term `-1/4 tr(x^2)^2 + 1/8 tr(x^4)`, which does not hold.
    pub fn as_printed() -> Self {
        CayleyHamilton {
            c2: rat(1, 2),
            c3: rat(1, 3),
            c4_p22: rat(-1, 4),
            c4_p4: rat(1, 8),
        }
    }

    /// `x^4 - c2 tr(x^2) x^2 - c3 tr(x^3) x - (c4_p22 tr(x^2)^2 + c4_p4 tr(x^4)) e`.
    pub fn residual<C: Scalar>(&self, m: &Mat4<C>) -> Result<Mat4<C>> {
        let one = m.0[0][0].one_like();
        let m2 = m.mul(m);
        let m3 = m2.mul(m);
        let m4 = m3.mul(m);
        let (p2, p3, p4) = (m2.trace(), m3.trace(), m4.trace());
        let k = |r: &Rat| one.embed(r);
        let constant = p2
            .times(&p2)
            .times(&k(&self.c4_p22)?)
            .plus(&p4.times(&k(&self.c4_p4)?));
        Ok(m4
            .minus(&m2.scale(&p2.times(&k(&self.c2)?)))
            .minus(&m.scale(&p3.times(&k(&self.c3)?)))
            .minus(&Mat4::scalar(&constant)))
    }

    /// The residual vanishes identically on the full generic traceless `y`.
    pub fn certify(&self) -> Result<bool> {
        Ok(self.residual(&generic_traceless_pair().y)?.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::exactalg::DEFAULT_PRIMES;
    use crate::exprlang::parse;
    use crate::tableaux::{catalogue_entries, catalogued_shapes, Partition};
    use crate::words::cyclic_canonicalize;

    fn p() -> u64 {
        DEFAULT_PRIMES[0]
    }

    #[test]
    fn pair_is_traceless() {
        let g = generic_traceless_pair();
        assert!(g.x.trace().is_zero());
        assert!(g.y.trace().is_zero());
        assert_eq!(g.y.entry(3, 3).to_string(), "-y11 - y22 - y33");
    }

    #[test]
    fn trace_xy_matches_hand_expansion() {
        let g = generic_traceless_pair();
        let vars = generic_vars();
        let v = |n: &str| MultiPoly::rat_var(&vars, n);
        let s = v("x1").plus(&v("x2")).plus(&v("x3"));
        let t = v("y11").plus(&v("y22")).plus(&v("y33"));
        let expected = v("x1")
            .times(&v("y11"))
            .plus(&v("x2").times(&v("y22")))
            .plus(&v("x3").times(&v("y33")))
            .plus(&s.times(&t));
        let got = eval_trace_poly(&TracePoly::trace_of("xy").unwrap(), &g);
        assert_eq!(got, expected);
    }

    #[test]
    fn hand_multiplied_matrices_agree() {
        // independent oracle: entrywise sums over explicit index loops
        let pt = EvalPoint::new(p(), 3, 0);
        let (x, y) = pt.pair();
        let mut xy = [[Fp::new(0, p()); 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    xy[i][j] = &xy[i][j] + &(&x.0[i][k] * &y.0[k][j]);
                }
            }
        }
        assert_eq!(x.mul(&y).0, xy);
    }

    #[test]
    fn fifth_power_trace_identity() {
        let e = parse("tr(x^5) - 5/6*tr(x^2)*tr(x^3)").unwrap();
        assert!(eval_symbolic(&e).unwrap().is_zero());
        let e = parse("tr(y^5) - 5/6*tr(y^2)*tr(y^3)").unwrap();
        assert!(eval_symbolic(&e).unwrap().is_zero());
    }

    #[test]
    fn trace_y_and_constants() {
        assert!(eval_symbolic(&TracePoly::trace_of("y").unwrap())
            .unwrap()
            .is_zero());
        let c = eval_symbolic(&parse("7/3").unwrap()).unwrap();
        assert_eq!(c, MultiPoly::constant(&generic_vars(), rat(7, 3)));
    }

    #[test]
    fn hwv_22_is_nonzero_of_bidegree_22() {
        let v = catalogue_entries(Partition::new(2, 2).unwrap()).unwrap()[0].vector();
        let poly = eval_symbolic(&v).unwrap();
        assert!(!poly.is_zero());
        for (m, _) in poly.terms() {
            let xdeg: u32 = (0..3).map(|i| m.exponent(i)).sum();
            let ydeg: u32 = (3..18).map(|i| m.exponent(i)).sum();
            assert_eq!((xdeg, ydeg), (2, 2));
        }
    }

    #[test]
    fn discriminant_like_product_is_nonzero_at_a_point() {
        let e = parse("tr(x^2)tr(y^2) - tr(xy)^2").unwrap();
        let vals = eval_at_points(&e, &sample_points(p(), 11, 3)).unwrap();
        assert!(vals.iter().all(|v| v.value() != 0));
    }

    #[test]
    fn cayley_hamilton_coefficients() {
        let ch = cayley_hamilton_traceless();
        assert_eq!(
            ch,
            CayleyHamilton {
                c2: rat(1, 2),
                c3: rat(1, 3),
                c4_p22: rat(-1, 8),
                c4_p4: rat(1, 4)
            }
        );
        assert!(ch.certify().unwrap());
        assert!(!CayleyHamilton::as_printed().certify().unwrap());
    }

    #[test]
    fn cayley_hamilton_against_determinant() {
        // independent oracle: e4 = det for a traceless matrix, so the constant
        // term of the identity must be -det(y)
        let pt = EvalPoint::new(p(), 5, 1);
        let (_, y) = pt.pair();
        let det = fp_det(&y);
        let ch = cayley_hamilton_traceless();
        let y2 = y.mul(&y);
        let y4 = y2.mul(&y2);
        let (p2, p4) = (y2.trace(), y4.trace());
        let k = |r: &Rat| r.modp(p()).unwrap();
        let constant = &(&(&p2 * &p2) * &k(&ch.c4_p22)) + &(&p4 * &k(&ch.c4_p4));
        assert_eq!(constant, -&det);
    }

    fn fp_det(m: &Mat4<Fp>) -> Fp {
        // Leibniz expansion over all 24 permutations
        let mut total = Fp::new(0, p());
        let idx = [0usize, 1, 2, 3];
        let mut perms = Vec::new();
        permute(&mut idx.clone(), 0, &mut perms);
        for perm in perms {
            let mut inversions = 0;
            for i in 0..4 {
                for j in i + 1..4 {
                    if perm[i] > perm[j] {
                        inversions += 1;
                    }
                }
            }
            let mut prod = Fp::new(1, p());
            for (i, &j) in perm.iter().enumerate() {
                prod = &prod * &m.0[i][j];
            }
            total = if inversions % 2 == 0 {
                &total + &prod
            } else {
                &total - &prod
            };
        }
        total
    }

    fn permute(a: &mut [usize; 4], k: usize, out: &mut Vec<[usize; 4]>) {
        if k == 4 {
            out.push(*a);
            return;
        }
        for i in k..4 {
            a.swap(k, i);
            permute(a, k + 1, out);
            a.swap(k, i);
        }
    }

    #[test]
    fn points_are_reproducible() {
        let a = sample_points(p(), 42, 4);
        let b = sample_points(p(), 42, 4);
        assert_eq!(a[3].values, b[3].values);
        assert_ne!(a[0].values, a[1].values);
    }

    #[test]
    fn equivariance_under_x_plus_y() {
        // f(x+y, y) computed by substituting letters agrees with evaluating f at (X+Y, Y)
        let g = [[rat(1, 1), rat(1, 1)], [rat(0, 1), rat(1, 1)]];
        for shape in catalogued_shapes().into_iter().filter(|s| s.degree() <= 7) {
            for e in catalogue_entries(shape).unwrap() {
                let f = e.vector();
                for idx in 0..2 {
                    let pt = EvalPoint::new(p(), 9, idx);
                    let (x, y) = pt.pair();
                    let lhs = pt.evaluator().trace_poly(&f.substitute(g.clone())).unwrap();
                    let rhs = TraceEvaluator::new(x.plus(&y), y).trace_poly(&f).unwrap();
                    assert_eq!(lhs, rhs, "{shape}");
                }
            }
        }
    }

    fn word_strategy(max: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(prop_oneof![Just(Letter::X), Just(Letter::Y)], 1..=max).prop_map(Word)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn rotation_leaves_trace_unchanged(w in word_strategy(8), k in 0usize..8, idx in 0u64..1000) {
            let pt = EvalPoint::new(p(), 17, idx);
            let mut ev = pt.evaluator();
            let a = ev.word_matrix(&w).trace();
            let b = ev.word_matrix(&w.rotated(k % w.len())).trace();
            prop_assert_eq!(a, b);
            let c = ev.trace_word(&cyclic_canonicalize(&w).unwrap());
            prop_assert_eq!(a, c);
        }

        #[test]
        fn point_values_match_symbolic_substitution(w in word_strategy(6), idx in 0u64..1000) {
            let tp = TracePoly::from_word(cyclic_canonicalize(&w).unwrap(), rat(1, 1));
            let pt = EvalPoint::new(p(), 23, idx);
            let sym = eval_symbolic(&tp).unwrap();
            prop_assert_eq!(pt.substitute(&sym).unwrap(), pt.evaluator().trace_poly(&tp).unwrap());
        }

        #[test]
        fn evaluation_is_a_ring_homomorphism(a in word_strategy(5), b in word_strategy(5), idx in 0u64..1000) {
            let ta = format!("tr({})", a.0.iter().map(|l| l.as_char()).collect::<String>());
            let tb = format!("tr({})", b.0.iter().map(|l| l.as_char()).collect::<String>());
            let sum = parse(&format!("{ta} + {tb}")).unwrap();
            let prod = parse(&format!("{ta}*{tb}")).unwrap();
            let pt = EvalPoint::new(p(), 29, idx);
            let va = eval_at_points(&parse(&ta).unwrap(), std::slice::from_ref(&pt)).unwrap()[0];
            let vb = eval_at_points(&parse(&tb).unwrap(), std::slice::from_ref(&pt)).unwrap()[0];
            prop_assert_eq!(eval_at_points(&sum, std::slice::from_ref(&pt)).unwrap()[0], &va + &vb);
            prop_assert_eq!(eval_at_points(&prod, std::slice::from_ref(&pt)).unwrap()[0], &va * &vb);
        }
    }
}
