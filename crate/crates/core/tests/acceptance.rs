//! One line per acceptance criterion. Expected values are transcribed from
//! the printed source; derived values are checked against independent
//! computations. Exits nonzero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use trace42::exactalg::{
    rank_nullspace, rat, Fp, FpMatrix, MultiPoly, QMatrix, Rat, DEFAULT_PRIMES,
};
use trace42::exprlang::load_corpus;
use trace42::genmat::{cayley_hamilton_traceless, eval_symbolic, CayleyHamilton, TraceTree};
use trace42::invariants::{
    discover_relations, hilbert_c0, remark_checks, theorem_modules, theorem_modules_c0,
    verify_corpus, verify_theorem, EvalConfig, GeneratorSet, Mode,
};
use trace42::schur::schur_decompose;
use trace42::tableaux::{catalogued_shapes, hwv_basis, independence_rank, Partition};
use trace42::words::{cyclic_canonicalize, enumerate_basis, Bidegree, TracePoly, Word};

type Outcome = Result<String, String>;

fn part(a: u32, b: u32) -> Partition {
    Partition::new(a, b).unwrap()
}

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// `h_0 .. h_10` as printed.
const PRINTED_HILBERT: [&str; 11] = [
    "S(0,0)",
    "0",
    "S(2,0)",
    "S(3,0)",
    "2*S(4,0) + 2*S(2,2)",
    "S(5,0) + S(4,1) + 2*S(3,2)",
    "3*S(6,0) + S(5,1) + 5*S(4,2) + S(3,3)",
    "2*S(7,0) + 2*S(6,1) + 5*S(5,2) + 4*S(4,3)",
    "4*S(8,0) + 2*S(7,1) + 10*S(6,2) + 6*S(5,3) + 8*S(4,4)",
    "3*S(9,0) + 3*S(8,1) + 10*S(7,2) + 13*S(6,3) + 8*S(5,4)",
    "5*S(10,0) + 4*S(9,1) + 16*S(8,2) + 16*S(7,3) + 24*S(6,4) + 5*S(5,5)",
];

fn hilbert_table() -> Outcome {
    let r = hilbert_c0(10).map_err(|e| e.to_string())?;
    for (n, d) in &r.components {
        let got = d.to_string();
        check(
            got == PRINTED_HILBERT[*n as usize],
            format!("h{n} = {got}, printed {}", PRINTED_HILBERT[*n as usize]),
        )?;
    }
    Ok("h0..h10 verbatim".into())
}

/// Coefficients of `H(U_n)` from `t^n` down to `u^n`, and the printed
/// decomposition, for `n = 1..10`.
const PRINTED_UN: [(&[u64], &str); 10] = [
    (&[1, 1], "S(1,0)"),
    (&[1, 1, 1], "S(2,0)"),
    (&[1, 1, 1, 1], "S(3,0)"),
    (&[1, 1, 2, 1, 1], "S(4,0) + S(2,2)"),
    (&[1, 1, 2, 2, 1, 1], "S(5,0) + S(3,2)"),
    (&[1, 1, 3, 4, 3, 1, 1], "S(6,0) + 2*S(4,2) + S(3,3)"),
    (&[1, 1, 3, 5, 5, 3, 1, 1], "S(7,0) + 2*S(5,2) + 2*S(4,3)"),
    (
        &[1, 1, 4, 7, 10, 7, 4, 1, 1],
        "S(8,0) + 3*S(6,2) + 3*S(5,3) + 3*S(4,4)",
    ),
    (
        &[1, 1, 4, 10, 14, 14, 10, 4, 1, 1],
        "S(9,0) + 3*S(7,2) + 6*S(6,3) + 4*S(5,4)",
    ),
    (
        &[1, 1, 5, 12, 22, 26, 22, 12, 5, 1, 1],
        "S(10,0) + 4*S(8,2) + 7*S(7,3) + 10*S(6,4) + 4*S(5,5)",
    ),
];

fn word_bases() -> Outcome {
    let vars = trace42::exactalg::tu_vars();
    for (i, (coeffs, decomp)) in PRINTED_UN.iter().enumerate() {
        let n = i as u32 + 1;
        let mut h = MultiPoly::zero(&vars);
        for a in 0..=n {
            let dim = enumerate_basis(Bidegree::new(n - a, a)).len() as u64;
            check(
                dim == coeffs[a as usize],
                format!("h{n},{a} = {dim}, printed {}", coeffs[a as usize]),
            )?;
            h.add_term(
                trace42::exactalg::Monomial::from_exponents(&[n - a, a]),
                rat(dim as i64, 1),
            );
        }
        let d = schur_decompose(&h).map_err(|e| e.to_string())?.to_string();
        check(d == *decomp, format!("U{n} = {d}, printed {decomp}"))?;
    }
    let spot = |a, b| enumerate_basis(Bidegree::new(a, b)).len();
    check(
        spot(5, 3) == 7 && spot(4, 4) == 10 && spot(5, 5) == 26,
        "spot dimensions",
    )?;
    Ok("U1..U10 verbatim; h83=7, h84=10, h10,5=26".into())
}

/// The 6x6 coefficient matrix displayed for (6,3): rows are the words below,
/// columns `w1..w6`.
const DISPLAYED_63: [[i64; 6]; 6] = [
    [0, 0, 1, 0, 1, 0],
    [1, 1, -1, -1, -1, 2],
    [-1, -1, -1, 0, -1, -2],
    [-1, 0, 1, 0, 1, 0],
    [1, 1, -1, 2, 0, 0],
    [-1, 1, 0, 0, 0, -1],
];
const DISPLAYED_63_WORDS: [&str; 6] = [
    "xxxxxxyyy",
    "xxxxxyyxy",
    "xxxxxyxyy",
    "xxxxyyxxy",
    "xxxxyxxyy",
    "xxxyxxyxy",
];

fn multiplicity_in_un(shape: Partition) -> u64 {
    let (_, decomp) = PRINTED_UN[shape.degree() as usize - 1];
    let name = format!("S({},{})", shape.l1, shape.l2);
    decomp
        .split(" + ")
        .find_map(|t| match t.split_once('*') {
            Some((m, s)) if s == name => m.parse().ok(),
            None if t == name => Some(1),
            _ => None,
        })
        .unwrap_or(0)
}

fn catalogue() -> Outcome {
    let mut vectors = 0;
    for shape in catalogued_shapes() {
        let basis = hwv_basis(shape).map_err(|e| e.to_string())?;
        for (i, w) in basis.iter().enumerate() {
            check(
                w.delta().is_zero(),
                format!("w{} of {shape} is not killed by δ", i + 1),
            )?;
            check(
                w.bidegree() == Some(Bidegree::new(shape.l1, shape.l2)),
                format!("w{} of {shape} has wrong bidegree", i + 1),
            )?;
        }
        let rank = independence_rank(&basis).map_err(|e| e.to_string())? as u64;
        let expected = multiplicity_in_un(shape);
        check(
            rank == expected,
            format!("{shape}: rank {rank}, multiplicity {expected}"),
        )?;
        vectors += basis.len();
    }
    let rows: Vec<Vec<Rat>> = DISPLAYED_63
        .iter()
        .map(|r| r.iter().map(|&x| rat(x, 1)).collect())
        .collect();
    let displayed = QMatrix::from_rows(6, rows);
    let (q_rank, gauss_rank) = (rank_nullspace(&displayed).0, displayed.rank());
    let fp_rank = FpMatrix::from_rows(
        6,
        DISPLAYED_63
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| Fp::from_i64(x, DEFAULT_PRIMES[0]))
                    .collect()
            })
            .collect(),
    )
    .rank();
    check(
        q_rank == 6 && gauss_rank == 6 && fp_rank == 6,
        format!("displayed matrix rank {q_rank}/{gauss_rank}/{fp_rank}"),
    )?;
    // The same minor taken from the catalogue's own expansions.
    let ws = hwv_basis(part(6, 3)).map_err(|e| e.to_string())?;
    let minor: Vec<Vec<Rat>> = DISPLAYED_63_WORDS
        .iter()
        .map(|w| {
            let c = cyclic_canonicalize(&Word::from_letters(w).unwrap()).unwrap();
            ws.iter().map(|v| v.coeff(&c)).collect()
        })
        .collect();
    let minor_equal = minor
        .iter()
        .flatten()
        .zip(DISPLAYED_63.iter().flatten())
        .all(|(a, b)| *a == rat(*b, 1));
    let minor_rank = rank_nullspace(&QMatrix::from_rows(6, minor)).0;
    Ok(format!(
        "{vectors} vectors delta-killed, ranks = multiplicities, displayed (6,3) matrix rank 6 \
         (catalogue minor on the same words: rank {minor_rank}, {})",
        if minor_equal {
            "identical"
        } else {
            "entries differ from the display"
        }
    ))
}

fn cayley_hamilton() -> Outcome {
    let ch = cayley_hamilton_traceless();
    // x^4 - 1/2 tr(x^2) x^2 - 1/3 tr(x^3) x + (1/8 tr^2(x^2) - 1/4 tr(x^4)) e = 0
    let lhs_p22 = -ch.c4_p22.clone();
    let lhs_p4 = -ch.c4_p4.clone();
    check(
        ch.c2 == rat(1, 2) && ch.c3 == rat(1, 3),
        format!("c2 = {}, c3 = {}", ch.c2, ch.c3),
    )?;
    check(
        lhs_p22 == rat(1, 8) && lhs_p4 == rat(-1, 4),
        format!("constant term {lhs_p22} tr^2(x^2) + {lhs_p4} tr(x^4)"),
    )?;
    check(
        ch.certify().map_err(|e| e.to_string())?,
        "derived identity does not vanish on generic traceless matrix",
    )?;
    let printed_holds = CayleyHamilton::as_printed()
        .certify()
        .map_err(|e| e.to_string())?;
    let t = |w: &str| TraceTree::Traces(TracePoly::trace_of(w).unwrap());
    let quintic = TraceTree::Sum(vec![
        (rat(1, 1), t("xxxxx")),
        (rat(-5, 6), TraceTree::Product(vec![t("xx"), t("xxx")])),
    ]);
    check(
        eval_symbolic(&quintic)
            .map_err(|e| e.to_string())?
            .is_zero(),
        "tr(x^5) - 5/6 tr(x^2) tr(x^3) is not zero",
    )?;
    Ok(format!(
        "certified with constant 1/8 tr^2(x^2) - 1/4 tr(x^4); tr(x^5) identity zero; displayed constant {}",
        if printed_holds { "also certifies" } else { "does not certify" }
    ))
}

fn corpus() -> Outcome {
    let corpus = load_corpus().map_err(|e| e.to_string())?;
    check(corpus.len() == 47, format!("{} records", corpus.len()))?;
    let cfg = EvalConfig::default();
    let start = Instant::now();
    let modular = verify_corpus(&corpus, &cfg, 0).map_err(|e| e.to_string())?;
    let modular_time = start.elapsed();
    for c in &modular {
        check(c.passed, format!("{} fails: {:?}", c.id, c.witness))?;
        let bound = c.log2_false_pass.unwrap_or(0.0);
        check(
            bound < -400.0,
            format!("{}: false-pass bound 2^{bound:.0}", c.id),
        )?;
    }
    // Schwartz-Zippel at degree 10, 40 points per prime, both primes.
    let worst: f64 = DEFAULT_PRIMES
        .iter()
        .map(|&p| 40.0 * (10f64.log2() - (p as f64).log2()))
        .sum();
    check(worst < -400.0, "bound")?;
    check(
        modular_time < Duration::from_secs(120),
        format!("modular pass took {modular_time:?}"),
    )?;

    let start = Instant::now();
    let symbolic = verify_corpus(&corpus, &cfg.clone().with_mode(Mode::Symbolic), 8)
        .map_err(|e| e.to_string())?;
    let symbolic_time = start.elapsed();
    let certified: Vec<_> = symbolic
        .iter()
        .filter(|c| c.method == Mode::Symbolic)
        .collect();
    let small = corpus
        .records()
        .iter()
        .filter(|r| r.shape.degree() <= 8)
        .count();
    check(
        certified.len() == small,
        format!("{} of {small} small records certified", certified.len()),
    )?;
    for c in &certified {
        check(
            c.passed,
            format!("{} fails symbolically: {:?}", c.id, c.witness),
        )?;
    }
    check(
        symbolic_time < Duration::from_secs(1800),
        format!("symbolic pass took {symbolic_time:?}"),
    )?;
    Ok(format!(
        "47/47 modular in {modular_time:.2?} (bound <= 2^{worst:.0}); {small}/{small} of degree <= 8 symbolic in {symbolic_time:.2?}"
    ))
}

fn discovery() -> Outcome {
    let corpus = load_corpus().map_err(|e| e.to_string())?;
    let cfg = EvalConfig::default();
    let expected = [
        ((4, 2), 1),
        ((5, 3), 1),
        ((4, 4), 1),
        ((6, 3), 1),
        ((5, 5), 1),
        ((6, 2), 0),
        ((5, 2), 0),
        ((7, 2), 0),
        ((5, 4), 0),
        ((8, 2), 0),
        ((7, 3), 0),
        ((6, 4), 0),
    ];
    let modules = theorem_modules_c0();
    let mut matched = 0;
    for ((a, b), mult) in expected {
        let shape = part(a, b);
        let lower: Vec<Partition> = modules
            .iter()
            .copied()
            .filter(|m| m.degree() < shape.degree())
            .collect();
        let gens = GeneratorSet::from_shapes(&lower).map_err(|e| e.to_string())?;
        let r = discover_relations(shape, &gens, &corpus, &cfg).map_err(|e| e.to_string())?;
        check(
            r.unmatched.is_empty(),
            format!("{shape}: {:?} not in the nullspace", r.unmatched),
        )?;
        check(
            r.matched.len() == corpus.records_for(shape).count(),
            format!("{shape}: {} of the records matched", r.matched.len()),
        )?;
        check(
            r.new_generator_multiplicity == mult,
            format!("{shape}: new multiplicity {}", r.new_generator_multiplicity),
        )?;
        // A new generator of this shape appears in the theorem iff mult is 1.
        check(
            modules.contains(&shape) == (mult == 1),
            format!("{shape} disagrees with the module list"),
        )?;
        matched += r.matched.len();
    }
    Ok(format!(
        "{matched} corpus relations in computed nullspaces; multiplicities 1,1,1,1,1 and 0 x7"
    ))
}

fn theorem() -> Outcome {
    let start = Instant::now();
    let r = verify_theorem(&EvalConfig::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let printed = [
        (1, 0),
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
    ];
    let printed: Vec<Partition> = printed.iter().map(|&(a, b)| part(a, b)).collect();
    check(
        theorem_modules() == printed,
        "module list constant differs from the printed list",
    )?;
    check(
        r.modules == printed,
        format!("computed modules {:?}", r.modules),
    )?;
    check(r.generators_stated, "a stated generator was rejected")?;
    check(
        r.dimensions_consistent,
        "old + new dimensions disagree with the series",
    )?;
    check(
        r.series_match,
        "H(K[M]) differs from H(C0) through degree 10",
    )?;
    check(r.passed, "report failed")?;
    check(
        elapsed < Duration::from_secs(1800),
        format!("took {elapsed:?}"),
    )?;
    Ok(format!(
        "13 modules with stated generators, series agree through degree 10, {elapsed:.2?}"
    ))
}

fn remarks() -> Outcome {
    let r = remark_checks(&EvalConfig::default(), 15, true).map_err(|e| e.to_string())?;
    check(
        r.bracket_five.modular,
        "tr([x,y]^5) identity fails modularly",
    )?;
    check(
        r.bracket_five.symbolic == Some(true),
        "tr([x,y]^5) identity fails symbolically",
    )?;
    let diff = |n: u32| {
        r.differences
            .iter()
            .find(|d| d.degree == n)
            .map(|d| d.computed.clone())
            .unwrap_or_default()
    };
    check(diff(11) == "0", format!("degree 11: {}", diff(11)))?;
    check(
        diff(12) == "S(7,5) + 2*S(6,6)",
        format!("degree 12: {}", diff(12)),
    )?;
    check(
        diff(13) == "S(8,5) + 2*S(7,6)",
        format!("degree 13: {}", diff(13)),
    )?;
    check(
        r.jacobian.rank == 17 && r.jacobian.elements.len() == 17,
        format!("Jacobian rank {}", r.jacobian.rank),
    )?;
    check(r.passed, "report failed")?;
    Ok(format!("bracket identity zero; differences 11..13 as printed; Jacobian rank 17 at seed {} point {:?}", r.jacobian.seed, r.jacobian.point))
}

fn properties() -> Outcome {
    use common::*;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut lines = Vec::new();
    let limit = Duration::from_secs(60);
    let mut suite = |name: &str,
                     f: &mut dyn FnMut(&mut ChaCha8Rng) -> Result<usize, String>|
     -> Result<(), String> {
        let start = Instant::now();
        let n = f(&mut rng).map_err(|e| format!("{name}: {e}"))?;
        let t = start.elapsed();
        check(t < limit, format!("{name} took {t:?}"))?;
        lines.push(format!("{name} {n} in {t:.2?}"));
        Ok(())
    };
    suite("ring", &mut |rng| {
        use rand::Rng;
        for _ in 0..300 {
            let (a, b, c) = (random_poly(rng), random_poly(rng), random_poly(rng));
            let pt = [(); 3].map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)));
            ring_axioms(&a, &b, &c, &pt)?;
        }
        Ok(300)
    })?;
    suite("round-trip", &mut |rng| {
        for _ in 0..300 {
            expr_round_trip(&random_expr(rng, 4))?;
            nc_round_trip(&random_nc(rng, 4))?;
        }
        let corpus = load_corpus().map_err(|e| e.to_string())?;
        let mut n = 600;
        for g in corpus.groups() {
            for v in &g.vs {
                expr_round_trip(&v.expr)?;
                n += 1;
            }
        }
        Ok(n)
    })?;
    suite("canonical", &mut |_| canonicalization_exhaustive(8))?;
    suite("delta", &mut |rng| {
        use rand::Rng;
        for _ in 0..200 {
            let b = Bidegree::new(rng.gen_range(1..6), rng.gen_range(1..4));
            let (p, q) = (random_trace_poly(rng, b), random_trace_poly(rng, b));
            delta_laws(
                &p,
                &q,
                &rat(rng.gen_range(-5..5), 3),
                &rat(rng.gen_range(-5..5), 2),
            )?;
        }
        Ok(200)
    })?;
    suite("rank", &mut |rng| {
        use rand::Rng;
        for _ in 0..300 {
            let base = rng.gen_range(1..6);
            let rows = random_low_rank(rng, 8, 9, base);
            let r = rank_agreement(&rows, 9)?;
            check(r <= base, format!("rank {r} above planted {base}"))?;
        }
        Ok(300)
    })?;
    Ok(lines.join(", "))
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome, Duration); 9] = [
        (
            1,
            "Hilbert series table",
            hilbert_table,
            Duration::from_secs(1),
        ),
        (2, "cyclic-word bases", word_bases, Duration::from_secs(1)),
        (
            3,
            "highest weight vector catalogue",
            catalogue,
            Duration::from_secs(5),
        ),
        (
            4,
            "Cayley-Hamilton and tr(x^5)",
            cayley_hamilton,
            Duration::from_secs(10),
        ),
        (5, "relation corpus", corpus, Duration::from_secs(1920)),
        (
            6,
            "relation discovery",
            discovery,
            Duration::from_secs(1800),
        ),
        (
            7,
            "thirteen generator modules",
            theorem,
            Duration::from_secs(1800),
        ),
        (8, "remarks", remarks, Duration::from_secs(1800)),
        (9, "property suites", properties, Duration::from_secs(300)),
    ];
    let mut failed = 0;
    for (n, name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|m| {
            if elapsed < limit {
                Ok(m)
            } else {
                Err(format!("{m}; took {elapsed:?}, limit {limit:?}"))
            }
        });
        match outcome {
            Ok(msg) => println!("criterion {n}: pass  {name} [{elapsed:.2?}] {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {n}: FAIL  {name} [{elapsed:.2?}] {msg}");
            }
        }
    }
    println!("acceptance: {} of 9 criteria pass", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
