//! Property checks shared by the proptest suite and the acceptance run.
//!
//! Each check takes concrete inputs and returns `Err` with a description on
//! the first violated law, so callers can drive it from proptest strategies
//! or from a seeded generator.

#![allow(dead_code)]

use std::collections::HashSet;

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use trace42::exactalg::{
    rank_nullspace, rat, Fp, FpMatrix, MultiPoly, QMatrix, Rat, VarSet, DEFAULT_PRIMES,
};
use trace42::exprlang::{parse, parse_nc, Expr, Nc};
use trace42::words::{cyclic_canonicalize, enumerate_basis, Bidegree, Letter, TracePoly, Word};

pub type Check = Result<(), String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

pub fn poly_vars() -> VarSet {
    VarSet::new(["a", "b", "c"])
}

/// Terms are `(exponents, numerator, denominator)`.
pub fn poly_from_terms(terms: &[([u32; 3], i64, i64)]) -> MultiPoly<Rat> {
    MultiPoly::from_terms(
        &poly_vars(),
        terms.iter().map(|(e, n, d)| (*e, rat(*n, *d))),
    )
}

pub fn random_poly(rng: &mut ChaCha8Rng) -> MultiPoly<Rat> {
    let n = rng.gen_range(0..6);
    let terms: Vec<([u32; 3], i64, i64)> = (0..n)
        .map(|_| {
            let e = [
                rng.gen_range(0..4),
                rng.gen_range(0..4),
                rng.gen_range(0..4),
            ];
            (e, rng.gen_range(-9..=9), rng.gen_range(1..=5))
        })
        .collect();
    poly_from_terms(&terms)
}

/// Commutative ring laws, plus evaluation at a rational point as a ring
/// homomorphism into `Q`.
pub fn ring_axioms(
    a: &MultiPoly<Rat>,
    b: &MultiPoly<Rat>,
    c: &MultiPoly<Rat>,
    point: &[Rat; 3],
) -> Check {
    let vars = poly_vars();
    let zero = MultiPoly::zero(&vars);
    let one = MultiPoly::one(&vars);
    ensure(a.plus(b) == b.plus(a), || {
        format!("a+b != b+a for a={a}, b={b}")
    })?;
    ensure(a.times(b) == b.times(a), || {
        format!("ab != ba for a={a}, b={b}")
    })?;
    ensure(a.plus(b).plus(c) == a.plus(&b.plus(c)), || {
        "addition not associative".into()
    })?;
    ensure(a.times(b).times(c) == a.times(&b.times(c)), || {
        "multiplication not associative".into()
    })?;
    ensure(a.times(&b.plus(c)) == a.times(b).plus(&a.times(c)), || {
        "not distributive".into()
    })?;
    ensure(a.plus(&zero) == *a && a.times(&one) == *a, || {
        format!("identities fail for {a}")
    })?;
    ensure(
        a.minus(a).is_zero() && a.plus(&a.negated()).is_zero(),
        || format!("a - a != 0 for {a}"),
    )?;
    ensure(a.times(&zero).is_zero(), || "a*0 != 0".into())?;
    ensure(a.pow_rat(3) == a.times(a).times(a), || {
        "cube differs from repeated product".into()
    })?;
    let ev = |p: &MultiPoly<Rat>| p.eval(point).unwrap_or_else(Rat::zero);
    ensure(ev(&a.plus(b)) == ev(a) + ev(b), || {
        "evaluation does not respect sums".into()
    })?;
    ensure(ev(&a.times(b)) == ev(a) * ev(b), || {
        "evaluation does not respect products".into()
    })?;
    Ok(())
}

pub fn random_nc(rng: &mut ChaCha8Rng, depth: u32) -> Nc {
    if depth == 0 || rng.gen_bool(0.3) {
        return Nc::Letter(if rng.gen_bool(0.5) {
            Letter::X
        } else {
            Letter::Y
        });
    }
    match rng.gen_range(0..4) {
        0 => Nc::Bracket(
            Box::new(random_nc(rng, depth - 1)),
            Box::new(random_nc(rng, depth - 1)),
        ),
        1 => Nc::Power(Box::new(random_nc(rng, depth - 1)), rng.gen_range(1..4)),
        2 => Nc::Product(
            (0..rng.gen_range(2..4))
                .map(|_| random_nc(rng, depth - 1))
                .collect(),
        ),
        _ => Nc::Sum(
            (0..rng.gen_range(1..4))
                .map(|_| (random_coeff(rng), random_nc(rng, depth - 1)))
                .collect(),
        ),
    }
}

fn random_coeff(rng: &mut ChaCha8Rng) -> Rat {
    rat(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

pub fn random_expr(rng: &mut ChaCha8Rng, depth: u32) -> Expr {
    if depth == 0 || rng.gen_bool(0.3) {
        return if rng.gen_bool(0.2) {
            Expr::Const(rat(rng.gen_range(0..5), rng.gen_range(1..4)))
        } else {
            Expr::Trace(random_nc(rng, 3))
        };
    }
    match rng.gen_range(0..3) {
        0 => Expr::Power(Box::new(random_expr(rng, depth - 1)), rng.gen_range(1..4)),
        1 => Expr::Product(
            (0..rng.gen_range(2..4))
                .map(|_| random_expr(rng, depth - 1))
                .collect(),
        ),
        _ => Expr::Sum(
            (0..rng.gen_range(1..4))
                .map(|_| (random_coeff(rng), random_expr(rng, depth - 1)))
                .collect(),
        ),
    }
}

/// Printing then parsing returns the same tree.
pub fn expr_round_trip(e: &Expr) -> Check {
    let text = e.to_string();
    let back = parse(&text).map_err(|err| format!("`{text}` does not parse: {err}"))?;
    ensure(back == *e, || {
        format!("`{text}` parses to a different tree")
    })
}

pub fn nc_round_trip(e: &Nc) -> Check {
    let text = e.to_string();
    let back = parse_nc(&text).map_err(|err| format!("`{text}` does not parse: {err}"))?;
    ensure(back == *e, || {
        format!("`{text}` parses to a different tree")
    })
}

fn word_of(bits: u32, len: usize) -> Word {
    Word::new(
        (0..len)
            .map(|i| {
                if bits >> i & 1 == 1 {
                    Letter::Y
                } else {
                    Letter::X
                }
            })
            .collect(),
    )
}

fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count() as u64
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of binary necklaces of length `a + b` with `a` x's, by Burnside.
pub fn necklace_count(a: u64, b: u64) -> u64 {
    let n = a + b;
    let g = num_integer::gcd(a, b);
    let s: u64 = (1..=g)
        .filter(|d| g % d == 0)
        .map(|d| euler_phi(d) * binomial(n / d, a / d))
        .sum();
    s / n
}

/// Every word of length `1..=max_len`: all rotations share one canonical
/// form, the form is a rotation of the word and is fixed by canonicalizing
/// again, and the classes per bidegree match both the Burnside count and
/// the enumerated basis. Returns the number of words checked.
pub fn canonicalization_exhaustive(max_len: usize) -> Result<usize, String> {
    let mut checked = 0;
    for len in 1..=max_len {
        let mut classes = HashSet::new();
        for bits in 0..(1u32 << len) {
            let w = word_of(bits, len);
            let c = cyclic_canonicalize(&w).map_err(|e| e.to_string())?;
            ensure((0..len).any(|k| w.rotated(k) == c.word()), || {
                format!("{w} canonicalizes to a non-rotation {c}")
            })?;
            ensure(cyclic_canonicalize(&c.word()).ok() == Some(c), || {
                format!("canonical form of {w} is not fixed")
            })?;
            for k in 1..len {
                let ck = cyclic_canonicalize(&w.rotated(k)).map_err(|e| e.to_string())?;
                ensure(ck == c, || {
                    format!("rotation {k} of {w} gives {ck}, not {c}")
                })?;
            }
            classes.insert(c);
            checked += 1;
        }
        for a in 0..=len as u32 {
            let b = Bidegree::new(a, len as u32 - a);
            let in_class = classes.iter().filter(|c| c.bidegree() == b).count() as u64;
            let expected = necklace_count(a as u64, len as u64 - a as u64);
            ensure(in_class == expected, || {
                format!("{b}: {in_class} classes, Burnside gives {expected}")
            })?;
            let basis = enumerate_basis(b);
            ensure(basis.len() as u64 == expected, || {
                format!("{b}: basis has {} words", basis.len())
            })?;
        }
    }
    Ok(checked)
}

pub fn random_trace_poly(rng: &mut ChaCha8Rng, b: Bidegree) -> TracePoly {
    let basis = enumerate_basis(b);
    let mut out = TracePoly::zero();
    for w in basis {
        if rng.gen_bool(0.6) {
            out.add_term(w, random_coeff(rng));
        }
    }
    out
}

/// `δ` is linear, and `exp(δ)` equals the substitution `y ↦ y + x`.
pub fn delta_laws(p: &TracePoly, q: &TracePoly, a: &Rat, b: &Rat) -> Check {
    let combo = p.scale(a).plus(&q.scale(b));
    ensure(
        combo.delta() == p.delta().scale(a).plus(&q.delta().scale(b)),
        || format!("δ not linear on {p} and {q}"),
    )?;
    let shift = [[Rat::one(), Rat::zero()], [Rat::one(), Rat::one()]];
    let (mut term, mut series, mut j) = (p.clone(), TracePoly::zero(), 0i64);
    while !term.is_zero() {
        series = series.plus(&term);
        j += 1;
        term = term.delta().scale(&rat(1, j));
    }
    ensure(p.substitute(shift) == series, || {
        format!("exp(δ) differs from y -> y + x on {p}")
    })
}

/// Rank over `Q` by Gauss–Jordan elimination, by Bareiss elimination, and
/// modulo both default primes all agree.
pub fn rank_agreement(rows: &[Vec<i64>], cols: usize) -> Result<usize, String> {
    let q = QMatrix::from_rows(
        cols,
        rows.iter()
            .map(|r| r.iter().map(|&x| rat(x, 1)).collect())
            .collect(),
    );
    let gauss = q.rank();
    let bareiss = rank_nullspace(&q).0;
    ensure(gauss == bareiss, || {
        format!("Gauss rank {gauss}, Bareiss rank {bareiss}")
    })?;
    for p in DEFAULT_PRIMES {
        let m = FpMatrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| Fp::from_i64(x, p)).collect())
                .collect(),
        );
        let r = m.rank();
        ensure(r == gauss, || format!("rank {r} mod {p}, {gauss} over Q"))?;
    }
    Ok(gauss)
}

/// A random integer matrix with planted dependencies: each extra row is an
/// integer combination of the first `base` rows.
pub fn random_low_rank(
    rng: &mut ChaCha8Rng,
    rows: usize,
    cols: usize,
    base: usize,
) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..base)
        .map(|_| (0..cols).map(|_| rng.gen_range(-20..=20)).collect())
        .collect();
    for _ in base..rows {
        let coeffs: Vec<i64> = (0..base).map(|_| rng.gen_range(-3..=3)).collect();
        m.push(
            (0..cols)
                .map(|j| (0..base).map(|i| coeffs[i] * m[i][j]).sum())
                .collect(),
        );
    }
    m
}
