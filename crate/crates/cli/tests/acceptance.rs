//! Acceptance suite: one PASS/FAIL line per criterion, with the individual
//! checks listed underneath.
//!
//! Expected b-functions are built here from the bracket definition and from
//! explicit linear factors, not through the bracket code of the engines.
//! Two criteria compare against closed forms that cannot hold as stated; they
//! are listed in `KNOWN_CONFLICTS`, still print FAIL, and do not change the
//! exit status. Any other failure, or a known conflict that starts passing,
//! makes the binary exit nonzero.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use bpoly::{equal_up_to_scalar, FactorProduct, SparsePoly};
use candecomp::{dn_canonical, generic_decomposition};
use clap::Parser;
use num_rational::BigRational;
use quiver_core::{generic_hom_ext, positive_roots, Arrow, Decomposition, Quiver};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reflect_engine::{run_reflect, Direction, DEFAULT_MAX_REFLECTIONS};
use slice_engine::{run_slice, SliceError};
use weyl_oracle::{afunction, negative_rational_roots, rational_roots, run_oracle, semi_invariant, OracleConfig};

const KNOWN_CONFLICTS: &[(usize, &str)] = &[
    (3, "the displayed D_n product has degree 3(β3−β1) while deg f = 2(β3−β1); see the corrected form check"),
    (4, "the E6 closed form contains [s]^3 brackets, whose roots −4/3, −5/3 are not integers"),
];

fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn quiver(n: usize, edges: &[(usize, usize)]) -> Quiver {
    let e: Vec<(usize, usize)> = edges.iter().map(|&(t, h)| (t - 1, h - 1)).collect();
    Quiver::from_edges(n, &e).unwrap()
}

fn linear(coeffs: &[i64], shift: i64) -> FactorProduct {
    FactorProduct::linear(coeffs, q(shift)).unwrap()
}

fn prod(fs: impl IntoIterator<Item = FactorProduct>, nvars: usize) -> FactorProduct {
    fs.into_iter().fold(FactorProduct::unit(nvars), |acc, f| acc.mul(&f).unwrap())
}

/// [s]^d_{a,b} straight from the definition: ∏_{i=b−a+1}^{b} ∏_{j=0}^{Σmₖdₖ−1} (d·s + i + j).
fn br(d: &[i64], m: &[i64], a: i64, b: i64) -> FactorProduct {
    assert!(0 <= a && a <= b, "bracket range {a}..{b}");
    let width: i64 = d.iter().zip(m).map(|(x, y)| x * y).sum();
    let mut out = FactorProduct::unit(d.len());
    if d.iter().all(|&x| x == 0) {
        return out;
    }
    for i in b - a + 1..=b {
        for j in 0..width {
            out = out.mul(&linear(d, i + j)).unwrap();
        }
    }
    out
}

fn br1(d: i64, a: i64, b: i64) -> FactorProduct {
    br(&[d], &[1], a, b)
}

struct Report {
    lines: Vec<String>,
    pass: bool,
}

impl Report {
    fn new() -> Self {
        Report { lines: Vec::new(), pass: true }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        self.lines.push(format!("{} {what}", if ok { "ok  " } else { "FAIL" }));
        self.pass &= ok;
    }

    fn note(&mut self, what: impl Into<String>) {
        self.lines.push(format!("     {}", what.into()));
    }
}

/// Results shared with the property criterion.
#[derive(Default)]
struct Collected {
    products: Vec<(String, FactorProduct)>,
    /// (label, degree of the oracle b, Σ mᵢ deg fᵢ)
    oracle_degrees: Vec<(String, u32, u32)>,
}

impl Collected {
    fn product(&mut self, label: impl Into<String>, p: &FactorProduct) {
        self.products.push((label.into(), p.clone()));
    }

    /// Runs the oracle on the Schofield semi-invariants and compares with `expected` up to a scalar.
    fn oracle(&mut self, r: &mut Report, label: &str, quiv: &Quiver, beta: &[i64], alphas: &[Vec<i64>], m: &[i64], expected: &FactorProduct) {
        let fs: Result<Vec<SparsePoly>, _> = alphas.iter().map(|a| semi_invariant(quiv, beta, a, 42)).collect();
        let run = fs.and_then(|fs| run_oracle(&fs, m, &OracleConfig::default()));
        match run {
            Ok(run) => {
                let degree = run.b.total_degree().unwrap_or(0);
                self.oracle_degrees.push((label.into(), degree, run.expected_degree));
                let scalar = equal_up_to_scalar(&run.b, &expected.expand().unwrap());
                r.check(scalar.is_some(), format!("{label}: oracle agrees up to scalar {}", scalar.map_or("-".into(), |s| s.to_string())));
            }
            Err(e) => r.check(false, format!("{label}: oracle failed: {e}")),
        }
    }
}

fn slice(quiv: &Quiver, beta: &[i64], alphas: &[Vec<i64>], m: &[i64]) -> Result<FactorProduct, String> {
    run_slice(quiv, beta, alphas, m).map(|r| r.product).map_err(|e| e.to_string())
}

fn reflect(quiv: &Quiver, beta: &[i64], alphas: &[Vec<i64>], m: &[i64], dir: Direction) -> Result<FactorProduct, String> {
    run_reflect(quiv, beta, alphas, m, dir, DEFAULT_MAX_REFLECTIONS).map(|r| r.product).map_err(|e| e.to_string())
}

fn same(got: &Result<FactorProduct, String>, want: &FactorProduct) -> bool {
    got.as_ref().is_ok_and(|g| g == want)
}

fn proportional(got: &Result<FactorProduct, String>, want: &FactorProduct) -> bool {
    got.as_ref().is_ok_and(|g| g.proportional(want).is_some())
}

fn show(p: &Result<FactorProduct, String>) -> String {
    match p {
        Ok(p) => p.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

fn cli_stdout(args: &[&str], text: &str) -> String {
    let cli = cli::Cli::try_parse_from(std::iter::once("qbfn").chain(args.iter().copied()).chain(["-"])).unwrap();
    cli::run_on(&cli.command, text).stdout
}

fn criterion_1(c: &mut Collected) -> Report {
    let mut r = Report::new();
    let start = Instant::now();
    let a2 = quiver(2, &[(1, 2)]);
    for n in 1..=4i64 {
        let expect = prod((1..=n).map(|i| linear(&[1], i)), 1);
        let beta = [n, n];
        let alpha = [vec![1, 0]];
        let s = slice(&a2, &beta, &alpha, &[1]);
        let f = reflect(&a2, &beta, &alpha, &[1], Direction::Auto);
        r.check(same(&s, &expect), format!("n={n} slice: {}", show(&s)));
        r.check(same(&f, &expect), format!("n={n} reflect: {}", show(&f)));
        let text = format!("vertices 2\narrow a: 1 -> 2\nbeta {n} {n}\nalpha 1 0\n");
        for method in ["slice", "reflect"] {
            let out = cli_stdout(&["bfn", "--method", method], &text);
            r.check(out.contains(&format!("b(s) = {expect}\n")), format!("n={n} `bfn --method {method}` prints {expect}"));
        }
        if let Ok(p) = &s {
            c.product(format!("A2 n={n}"), p);
        }
        if n <= 3 {
            c.oracle(&mut r, &format!("n={n}"), &a2, &beta, &alpha, &[1], &expect);
        }
    }
    let elapsed = start.elapsed();
    r.check(elapsed < Duration::from_secs(10), format!("runtime {:.2?} < 10 s", elapsed));
    r
}

fn d4() -> Quiver {
    quiver(4, &[(1, 4), (2, 4), (3, 4)])
}

fn criterion_2(c: &mut Collected) -> Report {
    let mut r = Report::new();
    let alpha = [vec![1, 1, 1, 1]];
    let beta = [1, 1, 2, 2];
    let expect = prod([linear(&[1], 1).pow(2), linear(&[1], 2).pow(2)], 1);
    let s = slice(&d4(), &beta, &alpha, &[1]);
    r.check(proportional(&s, &expect), format!("slice: {}", show(&s)));
    for dir in [Direction::Sink, Direction::Source] {
        let f = reflect(&d4(), &beta, &alpha, &[1], dir);
        r.check(proportional(&f, &expect), format!("reflect ({dir}): {}", show(&f)));
    }
    if let Ok(p) = &s {
        c.product("D4 (1,1,2,2)", p);
    }
    c.oracle(&mut r, "D4 (1,1,2,2)", &d4(), &beta, &alpha, &[1], &expect);

    let want = ["[s]_{β1,β4}", "[s]_{β4-β1,β2}", "[s]_{β4-β3,β1}", "[s]_{β4-β2,β3}", "[s]_{β4-β1}"];
    match run_slice(&d4(), &[3, 4, 5, 6], &alpha, &[1]) {
        Ok(run) => {
            let got = run.trace.symbolic_sequence();
            r.check(got == want, format!("symbolic sequence at β=(3,4,5,6): {}", got.join(" ")));
        }
        Err(e) => r.check(false, format!("symbolic sequence: slice failed: {e}")),
    }
    if let Ok(run) = run_slice(&d4(), &beta, &alpha, &[1]) {
        r.note(format!("at β=(1,1,2,2) a zero-dimensional vertex is pruned: {}", run.trace.symbolic_sequence().join(" ")));
    }
    r
}

fn d5_long() -> Quiver {
    quiver(5, &[(1, 2), (2, 3), (4, 3), (5, 3)])
}

/// β on 1→2→3←4, 5→3 with β1 ≤ β2 ≤ β3, β4, β5 ≤ β3−β1 and β1+β2+β4+β5 = 2β3.
fn random_d5_betas(count: usize, seed: u64) -> Vec<[i64; 5]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let b1 = rng.gen_range(1..=3);
        let b2 = b1 + rng.gen_range(0..=3);
        let b3 = b2 + rng.gen_range(1..=4);
        let b4 = rng.gen_range(0..=b3 - b1);
        let b5 = 2 * b3 - b1 - b2 - b4;
        if (0..=b3 - b1).contains(&b5) && !out.contains(&[b1, b2, b3, b4, b5]) {
            out.push([b1, b2, b3, b4, b5]);
        }
    }
    out
}

fn criterion_3(c: &mut Collected) -> Report {
    let mut r = Report::new();
    let alpha = [vec![1, 2, 2, 1, 1]];
    for beta in random_d5_betas(5, 5) {
        let [b1, b2, b3, b4, b5] = beta;
        let cn = b3 - b1;
        // n = 5: the product over i runs over i = 3 only.
        let displayed = prod(
            [br1(1, b1, b2), br1(2, b1, b3), br1(1, b2 - b1, b3 - b1), br1(1, b4, cn), br1(1, b5, cn), br1(1, cn, cn)],
            1,
        );
        let corrected = prod(
            [br1(1, b1, b2), br1(2, b1, b3), br1(1, cn, cn), br1(1, cn - (b2 - b1), b4), br1(1, cn - b4, b5), br1(1, cn - b5, b2 - b1)],
            1,
        );
        let s = slice(&d5_long(), &beta, &alpha, &[1]);
        let f = reflect(&d5_long(), &beta, &alpha, &[1], Direction::Auto);
        r.check(same(&s, &displayed), format!("β={beta:?} slice equals the displayed product {displayed}"));
        r.check(proportional(&f, s.as_ref().unwrap_or(&displayed)), format!("β={beta:?} reflect agrees with slice up to scalar"));
        let deg = b1 + 2 * b3;
        r.note(format!(
            "slice {} (degree {}), corrected form {}, deg f = β1+2β3 = {deg}, displayed degree {}",
            show(&s),
            s.as_ref().map_or(-1, |p| p.degree()),
            if same(&s, &corrected) { "matches" } else { "differs" },
            displayed.degree()
        ));
        if let Ok(p) = &s {
            c.product(format!("D5 β={beta:?}"), p);
        }
    }
    r
}

fn e6() -> Quiver {
    quiver(6, &[(1, 2), (2, 6), (3, 4), (4, 6), (5, 6)])
}

fn e6_polynomial_form(b: [i64; 6]) -> FactorProduct {
    let [b1, b2, b3, b4, b5, b6] = b;
    prod(
        [
            br1(1, b1, b1 + b4 + b5 - b6),
            br1(1, b3, b2 + b3 + b5 - b6),
            br1(2, b6 - b5 - b3, b2),
            br1(2, b6 - b5 - b1, b4),
            br1(3, b1 + b3 + b5 - b6, b6),
            br1(1, b6 - b5 - b3, b1),
            br1(1, b1 + b3 + b5 - b6, b3),
            br1(1, b3, b6 - b5),
            br1(2, b6 - b3 - b1, b2 + b4 + b5 - b6),
            br1(1, b5, b5),
        ],
        1,
    )
}

/// The quotient form read off the Coxeter transformations.
fn e6_quotient_form(b: [i64; 6]) -> FactorProduct {
    let [b1, b2, b3, b4, b5, b6] = b;
    let full = |d, x| br1(d, x, x);
    let num = prod(
        [
            full(1, b1),
            full(2, b2),
            full(1, b3),
            full(2, b4),
            full(1, b5),
            full(3, b6),
            full(1, b1 + b4 + b5 - b6),
            full(1, b2 + b3 + b5 - b6),
            full(1, b2 + b4 - b6),
            full(2, b2 + b4 + b5 - b6),
            full(1, b6 - b5),
        ],
        1,
    );
    let den = prod(
        [
            full(1, b4 + b5 - b6),
            full(2, b1 + b4 + b5 - b6),
            full(1, b2 + b5 - b6),
            full(2, b2 + b3 + b5 - b6),
            full(1, b2 + b4 - b6),
            full(3, b2 + b4 + b5 - b6),
            full(1, b6 - b5 - b1),
            full(1, b6 - b5 - b3),
            full(1, b1 + b3 + b5 - b6),
            full(2, b6 - b5),
        ],
        1,
    );
    num.div(&den).unwrap()
}

fn criterion_4(c: &mut Collected) -> Report {
    let mut r = Report::new();
    let alpha = [vec![1, 2, 1, 2, 2, 3]];
    let beta = [2, 2, 2, 2, 2, 4];
    let [b1, b2, b3, b4, b5, b6] = beta;
    let inequalities = b6 <= b4 + b5 && b6 <= b2 + b5 && b6 <= b2 + b4 && b6 <= b1 + b3 + b5 && b6 >= b1 + b5 && b6 >= b3 + b5;
    r.check(inequalities && b1 + b2 + b3 + b4 + 2 * b5 == 3 * b6, "β=(2,2,2,2,2,4) satisfies the linear condition and the inequalities");
    match run_slice(&e6(), &beta, &alpha, &[1]) {
        Err(SliceError::NotSliceable(d)) => {
            r.check(d.summary == "no 1-sink; no 1-source with α1=α2 or α*1=0", format!("slice: not sliceable: {}", d.summary));
        }
        other => r.check(false, format!("slice should be not sliceable, got {other:?}")),
    }
    let poly = e6_polynomial_form(beta);
    r.check(e6_quotient_form(beta) == poly, "quotient and polynomial closed forms agree at β");
    let got = reflect(&e6(), &beta, &alpha, &[1], Direction::Auto);
    r.check(proportional(&got, &poly), format!("reflect: {} ~ {poly}", show(&got)));
    if let Ok(p) = &got {
        c.product("E6 (2,2,2,2,2,4)", p);
        let roots = rational_roots(&p.expand().unwrap());
        r.check(roots.fully_linear() && roots.all_negative(), "all roots are negative rationals");
        let fractional: Vec<String> =
            roots.roots.iter().filter(|(x, _)| !x.is_integer()).map(|(x, k)| format!("{x} (multiplicity {k})")).collect();
        r.check(fractional.is_empty(), format!("all roots are integers; non-integer roots: {}", fractional.join(", ")));
    }
    r
}

fn kronecker() -> Quiver {
    let arrows = vec![Arrow { id: "x".into(), tail: 0, head: 1 }, Arrow { id: "y".into(), tail: 0, head: 1 }];
    Quiver::new(vec!["1".into(), "2".into()], arrows).unwrap()
}

fn criterion_5(c: &mut Collected) -> Report {
    let mut r = Report::new();
    for n in 1..=2i64 {
        for k in 1..=2i64 {
            let beta = [n * k, (n + 1) * k];
            let alpha = [vec![n + 1, n + 2]];
            let expect = prod((1..=n).map(|i| br1(i, 2 * k, (i + 1) * k)), 1);
            let got = reflect(&kronecker(), &beta, &alpha, &[1], Direction::Sink);
            r.check(same(&got, &expect), format!("(n,k)=({n},{k}): {}", show(&got)));
            if let Ok(p) = &got {
                c.product(format!("Kronecker (n,k)=({n},{k})"), p);
            }
            if (n, k) == (1, 1) {
                c.oracle(&mut r, "(n,k)=(1,1)", &kronecker(), &beta, &alpha, &[1], &expect);
            }
        }
    }
    r
}

fn criterion_6(c: &mut Collected) -> Report {
    let mut r = Report::new();
    // Two weights on D5 with β1+β4 = β3, β2 = β5.
    let q5 = quiver(5, &[(2, 1), (2, 5), (3, 5), (5, 4)]);
    let alphas = [vec![0, 1, 1, 0, 1], vec![1, 1, 0, 0, 0]];
    let m = [1, 1];
    let formula = |b: [i64; 5]| {
        let [b1, b2, b3, _, _] = b;
        prod([br(&[1, 1], &m, b2 - b1, b2), br(&[0, 1], &m, b1, b1), br(&[1, 0], &m, b3, b3), br(&[1, 0], &m, b3, b2)], 2)
    };
    let mut family = 0;
    for b1 in 0..=2 {
        for b4 in 0..=2 {
            for extra in 0..=1 {
                let b3 = b1 + b4;
                let b2 = b3 + extra;
                let beta = [b1, b2, b3, b4, b2];
                if beta.iter().all(|&x| x == 0) {
                    continue;
                }
                family += 1;
                match run_slice(&q5, &beta, &alphas, &m) {
                    Ok(run) => {
                        let symbolic = prod(
                            run.trace.steps.iter().flat_map(|s| s.symbolic.iter()).map(|sb| {
                                br(&sb.degrees, &m, sb.lo.eval(&beta), sb.hi.eval(&beta))
                            }),
                            2,
                        );
                        if run.product != formula(beta) || symbolic != run.product {
                            r.check(false, format!("two weights at β={beta:?}: {} vs {}", run.product, formula(beta)));
                        }
                    }
                    Err(e) => r.check(false, format!("two weights at β={beta:?}: {e}")),
                }
            }
        }
    }
    r.check(r.pass, format!("two-weight D5 formula and symbolic trace agree on {family} dimension vectors"));
    let beta = [1, 2, 2, 1, 2];
    if let Ok(run) = run_slice(&q5, &beta, &alphas, &m) {
        r.note(format!("symbolic trace: {}", run.trace.symbolic_sequence().join(" ")));
        c.product("two-weight D5", &run.product);
    }
    c.oracle(&mut r, "two-weight D5 at β=(1,2,2,1,2)", &q5, &beta, &alphas, &m, &formula(beta));

    // Four weights on 1→4←3←2, 4→5 with β = (n,n,2n,2n,n).
    let q4 = quiver(5, &[(1, 4), (3, 4), (2, 3), (4, 5)]);
    let alphas4 = [vec![0, 0, 1, 0, 0], vec![1, 0, 0, 1, 0], vec![0, 1, 1, 1, 0], vec![1, 1, 1, 1, 1]];
    let m4 = [1, 1, 1, 1];
    let n = 1;
    let expect = prod(
        [
            br(&[0, 1, 0, 0], &m4, n, n),
            br(&[0, 1, 1, 1], &m4, n, 2 * n),
            br(&[0, 0, 0, 1], &m4, n, n),
            br(&[1, 0, 0, 0], &m4, n, n),
            br(&[1, 0, 1, 1], &m4, n, 2 * n),
            br(&[0, 0, 1, 0], &m4, n, n),
        ],
        4,
    );
    let got = reflect(&q4, &[n, n, 2 * n, 2 * n, n], &alphas4, &m4, Direction::Sink);
    r.check(same(&got, &expect), format!("four weights at n=1: {}", show(&got)));
    if let Ok(p) = &got {
        c.product("four-weight D5", p);
    }

    // Two of the three D4 semi-invariants at β = (n,n,n,2n).
    let (m1, m2) = (1, 1);
    let mut factors = Vec::new();
    for i in 0..m1 + m2 {
        for j in n + 1..=2 * n {
            factors.push(linear(&[1, 1], i + j));
        }
    }
    for i in 0..m1 {
        for j in 1..=n {
            factors.push(linear(&[1, 0], i + j));
        }
    }
    for i in 0..m2 {
        for j in 1..=n {
            factors.push(linear(&[0, 1], i + j));
        }
    }
    let b_prime = prod(factors, 2);
    let pair = [vec![0, 1, 1, 1], vec![1, 0, 1, 1]];
    let s = slice(&d4(), &[n, n, n, 2 * n], &pair, &[m1, m2]);
    r.check(same(&s, &b_prime), format!("b′ at n=1 by slicing: {}", show(&s)));
    if let Ok(p) = &s {
        c.product("b′", p);
    }
    c.oracle(&mut r, "b′ at n=1", &d4(), &[n, n, n, 2 * n], &pair, &[m1, m2], &b_prime);

    // a-function at X = (1,0)ᵀ, Y = (0,1)ᵀ, Z = (1,1)ᵀ.
    let triple = [vec![0, 1, 1, 1], vec![1, 0, 1, 1], vec![1, 1, 0, 1]];
    let fs: Result<Vec<SparsePoly>, _> = triple.iter().map(|a| semi_invariant(&d4(), &[1, 1, 1, 2], a, 13)).collect();
    let a0 = [q(1), q(0), q(0), q(1), q(1), q(1)];
    match fs.and_then(|fs| afunction(&fs, &a0)) {
        Ok(a) => {
            let s = |i| SparsePoly::var(3, i);
            let total = &(&s(0) + &s(1)) + &s(2);
            for (k, ak) in a.iter().enumerate() {
                let ok = equal_up_to_scalar(ak, &(&s(k) * &total)).is_some();
                r.check(ok, format!("a_{} = s_{}(s1+s2+s3) up to scalar", k + 1, k + 1));
            }
        }
        Err(e) => r.check(false, format!("a-function failed: {e}")),
    }
    r
}

fn dec(parts: &[(&[i64], usize)]) -> Decomposition {
    Decomposition { parts: parts.iter().map(|(v, k)| (v.to_vec(), *k)).collect() }.normalized()
}

fn random_tree_edges(rng: &mut ChaCha8Rng, base: &[(usize, usize)], n: usize) -> Quiver {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let edges: Vec<(usize, usize)> = base
        .iter()
        .map(|&(a, b)| if rng.gen_bool(0.5) { (perm[a], perm[b]) } else { (perm[b], perm[a]) })
        .collect();
    Quiver::from_edges(n, &edges).unwrap()
}

fn criterion_7() -> Report {
    let mut r = Report::new();
    let d5 = quiver(5, &[(2, 1), (2, 5), (3, 2), (3, 4)]);
    let expect = dec(&[(&[1, 1, 1, 1, 0], 1), (&[0, 1, 1, 1, 1], 2), (&[1, 2, 1, 0, 1], 1), (&[1, 1, 1, 0, 1], 1)]);
    match dn_canonical(&d5, &[3, 6, 5, 3, 4], 42) {
        Ok((d, g)) => {
            r.check(d == expect, format!("D5 (3,6,5,3,4): {d}"));
            r.note(format!("diagram:\n         {}", g.render().trim_end().replace('\n', "\n         ")));
        }
        Err(e) => r.check(false, format!("D5: {e}")),
    }
    let d6 = quiver(6, &[(1, 2), (2, 6), (3, 2), (3, 4), (4, 5)]);
    let arbitrated = dec(&[
        (&[1, 1, 1, 0, 0, 1], 1),
        (&[1, 1, 1, 1, 1, 1], 1),
        (&[1, 2, 2, 1, 1, 1], 1),
        (&[0, 1, 1, 0, 0, 1], 1),
        (&[0, 0, 0, 0, 1, 0], 2),
        (&[0, 0, 1, 1, 1, 0], 1),
    ]);
    let printed_total = dec(&[
        (&[1, 1, 1, 0, 0, 1], 1),
        (&[1, 1, 1, 1, 1, 1], 1),
        (&[1, 2, 2, 1, 1, 1], 1),
        (&[0, 1, 0, 0, 0, 1], 1),
        (&[0, 0, 0, 0, 1, 0], 2),
        (&[0, 0, 1, 1, 1, 0], 1),
    ])
    .total(6);
    let beta6 = [3, 5, 6, 3, 5, 4];
    match dn_canonical(&d6, &beta6, 42) {
        Ok((d, _)) => r.check(d == arbitrated, format!("D6 (3,5,6,3,5,4): {d}")),
        Err(e) => r.check(false, format!("D6: {e}")),
    }
    r.note(format!("with the printed summand (0,1,0,0,0,1) the total is {printed_total:?}, not {beta6:?}"));

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut agree = 0;
    for case in 0..100u64 {
        let n = rng.gen_range(4..=8);
        let mut base: Vec<(usize, usize)> = (1..n - 1).map(|i| (i - 1, i)).collect();
        base.push((1, n - 1));
        let quiv = random_tree_edges(&mut rng, &base, n);
        let beta: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=9)).collect();
        let ok = match (dn_canonical(&quiv, &beta, case), generic_decomposition(&quiv, &beta, case + 1000)) {
            (Ok((d, _)), Ok(g)) => d == g,
            _ => false,
        };
        if ok {
            agree += 1;
        } else {
            r.note(format!("case {case}: disagreement on {:?} β={beta:?}", quiv.arrows()));
        }
    }
    r.check(agree == 100, format!("{agree}/100 random D_n instances: dn_canonical ≡ generic_decomposition"));
    r
}

/// A β with Hom(α,β) = Ext(α,β) = 0 generically and σ(β) = 0.
fn find_beta(quiv: &Quiver, alpha: &[i64], rng: &mut ChaCha8Rng, max: i64) -> Option<Vec<i64>> {
    let sigma = quiv.sigma_from_alpha(alpha);
    for _ in 0..400 {
        let beta: Vec<i64> = (0..quiv.n_vertices()).map(|_| rng.gen_range(0..max)).collect();
        if beta.iter().all(|&b| b == 0) || Quiver::pair(&sigma, &beta) != 0 {
            continue;
        }
        if generic_hom_ext(quiv, alpha, &beta, rng.gen()).ok()? == (0, 0) {
            return Some(beta);
        }
    }
    None
}

fn random_dynkin(rng: &mut ChaCha8Rng) -> Quiver {
    let (n, base): (usize, Vec<(usize, usize)>) = match rng.gen_range(0..3) {
        0 => {
            let n = rng.gen_range(2..=6);
            (n, (1..n).map(|i| (i - 1, i)).collect())
        }
        1 => {
            let n = rng.gen_range(4..=7);
            let mut e: Vec<(usize, usize)> = (1..n - 1).map(|i| (i - 1, i)).collect();
            e.push((n - 3, n - 1));
            (n, e)
        }
        _ => (6, vec![(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]),
    };
    random_tree_edges(rng, &base, n)
}

fn criterion_8(c: &Collected) -> Report {
    let mut r = Report::new();
    let mut rng = ChaCha8Rng::seed_from_u64(8);

    // (i)
    let (mut sliceable, mut attempts, mut disagreements) = (0, 0, Vec::new());
    while sliceable < 50 && attempts < 2000 {
        attempts += 1;
        let quiv = random_dynkin(&mut rng);
        let roots = positive_roots(&quiv).unwrap();
        let alpha = roots.choose(&mut rng).unwrap().clone();
        let Some(beta) = find_beta(&quiv, &alpha, &mut rng, 5) else { continue };
        let alphas = [alpha.clone()];
        let Ok(s) = run_slice(&quiv, &beta, &alphas, &[1]) else { continue };
        sliceable += 1;
        let f = reflect(&quiv, &beta, &alphas, &[1], Direction::Auto);
        if !proportional(&f, &s.product) {
            disagreements.push(format!("{:?} α={alpha:?} β={beta:?}: slice {} reflect {}", quiv.arrows(), s.product, show(&f)));
        }
    }
    for d in &disagreements {
        r.note(d.clone());
    }
    r.check(sliceable == 50 && disagreements.is_empty(), format!("(i) slice ~ reflect on {sliceable} sliceable Dynkin instances ({attempts} drawn)"));

    // (ii)
    let bad: Vec<&str> = c
        .products
        .iter()
        .filter(|(_, p)| !p.expand().is_ok_and(|e| negative_rational_roots(&e)))
        .map(|(l, _)| l.as_str())
        .collect();
    r.check(bad.is_empty(), format!("(ii) {} computed b-functions have only negative rational roots {bad:?}", c.products.len()));

    // (iii)
    let off: Vec<String> =
        c.oracle_degrees.iter().filter(|(_, d, e)| d != e).map(|(l, d, e)| format!("{l}: {d} vs {e}")).collect();
    r.check(
        off.is_empty() && !c.oracle_degrees.is_empty(),
        format!("(iii) deg b = Σ mᵢ deg fᵢ on {} oracle runs {off:?}", c.oracle_degrees.len()),
    );

    // (iv)
    let cases = [
        ("A3", quiver(3, &[(1, 2), (3, 2)]), 4),
        ("D4", d4(), 6),
        ("D5", d5_long(), 8),
        ("E6", e6(), 12),
    ];
    for (name, quiv, h) in cases {
        let cox = quiv.coxeter_matrix();
        let by_reflections = quiv.coxeter_from_reflections(&quiv.admissible_sink_order()).unwrap();
        let ok = cox.pow(h).is_identity() && (1..h).all(|k| !cox.pow(k).is_identity()) && cox == by_reflections;
        r.check(ok, format!("(iv) {name}: c has order h = {h} and equals the composite of sink reflections"));
    }

    // (v)
    let (mut tested, mut failures) = (0, Vec::new());
    let mut draws = 0;
    while tested < 100 && draws < 2000 {
        draws += 1;
        let n = rng.gen_range(2..=8);
        let base: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
        let quiv = random_tree_edges(&mut rng, &base, n);
        let mut alpha = vec![0i64; n];
        alpha[rng.gen_range(0..n)] = 1;
        for _ in 0..rng.gen_range(0..n) {
            let a = &quiv.arrows()[rng.gen_range(0..quiv.arrows().len())];
            if (alpha[a.tail] == 1) != (alpha[a.head] == 1) {
                alpha[a.tail] = 1;
                alpha[a.head] = 1;
            }
        }
        let Some(beta) = find_beta(&quiv, &alpha, &mut rng, 4) else { continue };
        tested += 1;
        if let Err(e) = run_slice(&quiv, &beta, &[alpha.clone()], &[1]) {
            failures.push(format!("{:?} α={alpha:?} β={beta:?}: {e}", quiv.arrows()));
        }
    }
    for f in &failures {
        r.note(f.clone());
    }
    r.check(tested == 100 && failures.is_empty(), format!("(v) {tested} random trees with 0/1 weights are sliceable"));
    r
}

fn main() {
    let start = Instant::now();
    let mut collected = Collected::default();
    let titles = [
        "Cayley identity on A2",
        "D4 with β=(1,1,2,2)",
        "D5 closed form against the displayed product",
        "E6: not sliceable, reflection matches the closed form",
        "Kronecker family",
        "several variables",
        "canonical decompositions",
        "property suites",
    ];
    let mut unexpected = Vec::new();
    for (i, title) in titles.iter().enumerate() {
        let k = i + 1;
        let t = Instant::now();
        let run = catch_unwind(AssertUnwindSafe(|| match k {
            1 => criterion_1(&mut collected),
            2 => criterion_2(&mut collected),
            3 => criterion_3(&mut collected),
            4 => criterion_4(&mut collected),
            5 => criterion_5(&mut collected),
            6 => criterion_6(&mut collected),
            7 => criterion_7(),
            _ => criterion_8(&collected),
        }));
        let report = run.unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            let mut r = Report::new();
            r.check(false, format!("panicked: {}", msg.unwrap_or_default()));
            r
        });
        let conflict = KNOWN_CONFLICTS.iter().find(|(n, _)| *n == k);
        let verdict = if report.pass { "PASS" } else { "FAIL" };
        println!("criterion {k}: {verdict}  {title}  ({:.2?})", t.elapsed());
        for line in &report.lines {
            println!("    {line}");
        }
        match (report.pass, conflict) {
            (false, Some((_, why))) => println!("    known conflict: {why}"),
            (true, Some(_)) => {
                println!("    listed as a known conflict but passed");
                unexpected.push(k);
            }
            (false, None) => unexpected.push(k),
            (true, None) => {}
        }
    }
    println!("total {:.2?}", start.elapsed());
    if !unexpected.is_empty() {
        println!("unexpected results in criteria {unexpected:?}");
        std::process::exit(1);
    }
}
