use std::time::Instant;

use bpoly::{bracket, bracket1, equal_up_to_scalar, FactorProduct, SparsePoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use quiver_core::{Arrow, Quiver, RatMatrix, Representation};
use slice_engine::run_slice;
use weyl_oracle::modp::{crt_symmetric, Fp, PRIMES};
use weyl_oracle::*;

fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn quiver(n: usize, edges: &[(usize, usize)]) -> Quiver {
    let e: Vec<(usize, usize)> = edges.iter().map(|&(t, h)| (t - 1, h - 1)).collect();
    Quiver::from_edges(n, &e).unwrap()
}

fn d4() -> Quiver {
    quiver(4, &[(1, 4), (2, 4), (3, 4)])
}

fn kronecker() -> Quiver {
    let arrows = vec![Arrow { id: "x".into(), tail: 0, head: 1 }, Arrow { id: "y".into(), tail: 0, head: 1 }];
    Quiver::new(vec!["1".into(), "2".into()], arrows).unwrap()
}

fn prod(fs: &[FactorProduct]) -> FactorProduct {
    fs.iter().fold(FactorProduct::unit(fs[0].nvars()), |acc, f| acc.mul(f).unwrap())
}

fn exact() -> OracleConfig {
    OracleConfig { mode: OracleMode::Exact, ..OracleConfig::default() }
}

fn det2() -> SparsePoly {
    let x = |i| SparsePoly::var(4, i);
    &(&x(0) * &x(3)) - &(&x(1) * &x(2))
}

/// Leibniz expansion, independent of the cofactor code under test.
fn leibniz(m: &[Vec<SparsePoly>], nvars: usize) -> SparsePoly {
    fn perms(k: usize, rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            perms(k, rest, cur, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    let n = m.len();
    let mut all = Vec::new();
    perms(n, &mut (0..n).collect(), &mut Vec::new(), &mut all);
    let mut acc = SparsePoly::zero(nvars);
    for p in all {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let term = (0..n).fold(SparsePoly::one(nvars), |t, i| &t * &m[i][p[i]]);
        acc = if inversions % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

#[test]
fn determinant_of_two_by_two() {
    let b = bfunction_oracle(&[det2()], &[1], &OracleConfig::default()).unwrap();
    let expect = bracket1(1, 2, 2).unwrap().expand().unwrap();
    assert_eq!(b, expect);
    assert_eq!(bfunction_oracle(&[det2()], &[1], &exact()).unwrap(), expect);
    let run = run_oracle(&[det2()], &[1], &exact()).unwrap();
    // f*(∂)f² = 6f at N = 1.
    assert_eq!(run.values[1], (vec![1], q(6)));
}

#[test]
fn single_variable() {
    let x = SparsePoly::var(1, 0);
    let b = bfunction_oracle(&[x.clone()], &[1], &OracleConfig::default()).unwrap();
    assert_eq!(b, SparsePoly::linear(&[q(1)], q(1)));
    assert_eq!(factor_negative(&b).unwrap(), FactorProduct::linear(&[1], q(1)).unwrap());
    // ∂²x^(N+2) = (N+1)(N+2)x^N.
    let b2 = bfunction_oracle(&[x], &[2], &exact()).unwrap();
    assert_eq!(b2, bracket1(1, 2, 2).unwrap().expand().unwrap());
}

#[test]
fn cayley_identity() {
    let a2 = quiver(2, &[(1, 2)]);
    for n in 1..=3 {
        let f = semi_invariant(&a2, &[n, n], &[1, 0], 7).unwrap();
        assert_eq!(f.total_degree(), Some(n as u32));
        let report = verify(&bracket1(1, n, n).unwrap(), &[f], &[1], &OracleConfig::default()).unwrap();
        assert!(report.matches, "{:?}", report.detail);
        assert_eq!(report.scalar, Some(q(1)));
    }
}

#[test]
fn d4_small_beta_matches_slice() {
    let beta = [1, 1, 2, 2];
    let alpha = vec![1, 1, 1, 1];
    let f = semi_invariant(&d4(), &beta, &alpha, 3).unwrap();
    let slice = run_slice(&d4(), &beta, &[alpha], &[1]).unwrap().product;
    let run = run_oracle(&[f.clone()], &[1], &OracleConfig::default()).unwrap();
    assert_eq!(run.b.total_degree(), Some(run.expected_degree));
    assert_eq!(run.expected_degree, 4);
    assert!(equal_up_to_scalar(&run.b, &slice.expand().unwrap()).is_some());
    assert!(negative_rational_roots(&run.b));
    let factored = factor_negative(&run.b).unwrap();
    assert_eq!(factored.render(), "(s+1)^2 * (s+2)^2");
}

#[test]
fn oracle_is_seed_independent() {
    let beta = [1, 1, 2, 2];
    let alpha = [1, 1, 1, 1];
    let f1 = semi_invariant(&d4(), &beta, &alpha, 1).unwrap();
    let f2 = semi_invariant(&d4(), &beta, &alpha, 2).unwrap();
    let b1 = bfunction_oracle(&[f1], &[1], &OracleConfig { seed: 5, ..OracleConfig::default() }).unwrap();
    let b2 = bfunction_oracle(&[f2], &[1], &OracleConfig { seed: 6, ..OracleConfig::default() }).unwrap();
    assert!(equal_up_to_scalar(&b1, &b2).is_some());
}

#[test]
fn kronecker_smallest_case() {
    let f = semi_invariant(&kronecker(), &[1, 2], &[2, 3], 11).unwrap();
    let report = verify(&bracket1(1, 2, 2).unwrap(), &[f], &[1], &OracleConfig::default()).unwrap();
    assert!(report.matches, "{:?}", report.detail);
}

#[test]
fn two_weight_d5() {
    let q5 = quiver(5, &[(2, 1), (2, 5), (3, 5), (5, 4)]);
    let alphas = [vec![0, 1, 1, 0, 1], vec![1, 1, 0, 0, 0]];
    let beta = [1, 2, 2, 1, 2];
    let m = [1, 1];
    let fs: Vec<SparsePoly> = alphas.iter().map(|a| semi_invariant(&q5, &beta, a, 42).unwrap()).collect();
    let closed = prod(&[
        bracket(&[1, 1], &m, 1, 2).unwrap(),
        bracket(&[0, 1], &m, 1, 1).unwrap(),
        bracket(&[1, 0], &m, 2, 2).unwrap(),
        bracket(&[1, 0], &m, 2, 2).unwrap(),
    ]);
    let start = Instant::now();
    let report = verify(&closed, &fs, &m, &OracleConfig::default()).unwrap();
    assert!(report.matches, "{:?}", report.detail);
    assert_eq!(report.oracle.total_degree(), Some(7));
    assert!(negative_rational_roots(&report.oracle));
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn structure_example_two_variable_part() {
    let beta = [1, 1, 1, 2];
    let alphas = [vec![0, 1, 1, 1], vec![1, 0, 1, 1]];
    let m = [1, 1];
    let fs: Vec<SparsePoly> = alphas.iter().map(|a| semi_invariant(&d4(), &beta, a, 9).unwrap()).collect();
    let closed = prod(&[
        bracket(&[1, 1], &m, 1, 2).unwrap(),
        bracket(&[1, 0], &m, 1, 1).unwrap(),
        bracket(&[0, 1], &m, 1, 1).unwrap(),
    ]);
    let report = verify(&closed, &fs, &m, &OracleConfig::default()).unwrap();
    assert!(report.matches, "{:?}", report.detail);
    let exact_report = verify(&closed, &fs, &m, &exact()).unwrap();
    assert_eq!(exact_report.oracle, report.oracle);
}

#[test]
fn modular_and_exact_agree() {
    let a2 = quiver(2, &[(1, 2)]);
    let f = semi_invariant(&a2, &[2, 2], &[1, 0], 1).unwrap();
    let g = semi_invariant(&kronecker(), &[1, 2], &[2, 3], 1).unwrap();
    let x = |i| SparsePoly::var(5, i);
    let split = vec![&(&x(0) * &x(3)) - &(&x(1) * &x(2)), x(4)];
    for fs in [vec![f], vec![g], split] {
        let m = vec![1; fs.len()];
        let a = run_oracle(&fs, &m, &OracleConfig::default()).unwrap();
        let b = run_oracle(&fs, &m, &exact()).unwrap();
        assert_eq!(a.values, b.values);
        assert_eq!(a.b, b.b);
    }
    let expect = prod(&[bracket(&[1, 0], &[1, 1], 2, 2).unwrap(), bracket(&[0, 1], &[1, 1], 1, 1).unwrap()]);
    let x = |i| SparsePoly::var(5, i);
    let fs = [&(&x(0) * &x(3)) - &(&x(1) * &x(2)), x(4)];
    assert_eq!(bfunction_oracle(&fs, &[1, 1], &exact()).unwrap(), expect.expand().unwrap());
}

#[test]
fn perturbed_closed_form_is_rejected() {
    let wrong = prod(&[FactorProduct::linear(&[1], q(1)).unwrap(), FactorProduct::linear(&[1], q(3)).unwrap()]);
    let report = verify(&wrong, &[det2()], &[1], &OracleConfig::default()).unwrap();
    assert!(!report.matches);
    assert_eq!(report.scalar, None);
    assert_eq!(report.detail.as_deref(), Some("coefficient of s: oracle 3, expected 4 (after scaling by 1)"));
}

#[test]
fn inexact_division_is_reported() {
    // x + x²y is not a semi-invariant and has no constant-coefficient identity.
    let x = SparsePoly::var(2, 0);
    let y = SparsePoly::var(2, 1);
    let f = &x + &(&x.pow(2) * &y);
    let err = bfunction_oracle(&[f.clone()], &[1], &OracleConfig::default()).unwrap_err();
    assert!(matches!(err, OracleError::InexactDivision(_)), "{err:?}");
    assert!(matches!(bfunction_oracle(&[f], &[1], &exact()), Err(OracleError::InexactDivision(_))));
}

#[test]
fn budget_is_enforced() {
    let cfg = OracleConfig { budget: 10, ..OracleConfig::default() };
    assert!(matches!(bfunction_oracle(&[det2()], &[1], &cfg), Err(OracleError::Budget { .. })));
    assert!(matches!(bfunction_oracle(&[], &[], &cfg), Err(OracleError::NoPolynomials)));
    assert!(matches!(bfunction_oracle(&[det2()], &[1, 1], &cfg), Err(OracleError::BadExponents(_))));
    assert!(matches!(bfunction_oracle(&[SparsePoly::zero(2)], &[1], &cfg), Err(OracleError::ZeroPolynomial(0))));
}

fn all_ones(q: &Quiver, dim: &[usize]) -> Representation {
    let maps = q
        .arrows()
        .iter()
        .map(|a| RatMatrix::from_i64(dim[a.head], dim[a.tail], &vec![1; dim[a.head] * dim[a.tail]]))
        .collect();
    Representation { dim: dim.to_vec(), maps }
}

#[test]
fn schofield_d4_grid() {
    let v = all_ones(&d4(), &[1, 1, 1, 1]);
    let (m, f) = build_schofield(&d4(), &[1, 1, 2, 2], &v).unwrap();
    assert_eq!(m.size(), 6);
    assert_eq!(m.nvars(), 8);
    // Variables: X = a1 (2×1), Y = a2 (2×1), Z = a3 (2×2, row-major).
    let x = |i| SparsePoly::var(8, i);
    let z = SparsePoly::zero(8);
    let grid = vec![
        vec![x(0), x(2), z.clone(), z.clone()],
        vec![x(1), x(3), z.clone(), z.clone()],
        vec![z.clone(), x(2), x(4), x(5)],
        vec![z.clone(), x(3), x(6), x(7)],
    ];
    let expect = leibniz(&grid, 8);
    assert!(equal_up_to_scalar(&f, &expect).is_some(), "{f:?}");
}

#[test]
fn schofield_single_block_is_determinant() {
    let a2 = quiver(2, &[(1, 2)]);
    let n = 3;
    let v = Representation::zero(&a2, &[1, 0]);
    let (m, f) = build_schofield(&a2, &[n, n], &v).unwrap();
    assert_eq!(m.size(), 3);
    let grid: Vec<Vec<SparsePoly>> = (0..3).map(|i| (0..3).map(|j| SparsePoly::var(9, i * 3 + j)).collect()).collect();
    let d = leibniz(&grid, 9);
    assert!(f == d || f == -&d);
}

#[test]
fn schofield_vanishes_outside_inequalities() {
    let v = all_ones(&d4(), &[1, 1, 1, 1]);
    let (_, f) = build_schofield(&d4(), &[4, 1, 1, 3], &v).unwrap();
    assert!(f.is_zero());
    let (_, f) = build_schofield(&d4(), &[3, 1, 2, 3], &v).unwrap();
    assert!(!f.is_zero());
    assert!(matches!(build_schofield(&d4(), &[1, 1, 1, 1], &v), Err(OracleError::NonSquare { rows: 3, cols: 4 })));
}

#[test]
fn exceptional_representations() {
    let a2 = quiver(2, &[(1, 2)]);
    let s1 = random_exceptional(&a2, &[1, 0], 0).unwrap();
    assert_eq!(s1.maps[0].rows, 0);
    let v = random_exceptional(&d4(), &[1, 1, 1, 1], 4).unwrap();
    assert!(v.maps.iter().all(|m| !m.get(0, 0).eq(&q(0))));
    assert!(matches!(random_exceptional(&kronecker(), &[1, 1], 0), Err(OracleError::NotRealRoot { tits: 0, .. })));
}

#[test]
fn afunctions() {
    let x = SparsePoly::var(1, 0);
    let a = afunction(&[x], &[q(1)]).unwrap();
    assert_eq!(a[0], SparsePoly::var(1, 0));

    let id = [q(1), q(0), q(0), q(1)];
    let a = afunction(&[det2()], &id).unwrap();
    assert_eq!(a[0], SparsePoly::var(1, 0).pow(2));
    assert!(matches!(afunction(&[det2()], &vec![q(0); 4]), Err(OracleError::ZeroAtPoint(0))));
}

#[test]
fn structure_example_afunction() {
    // X = (1,0)ᵀ, Y = (0,1)ᵀ, Z = (1,1)ᵀ on D4 with β = (1,1,1,2).
    let alphas = [[0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1]];
    let fs: Vec<SparsePoly> = alphas.iter().map(|a| semi_invariant(&d4(), &[1, 1, 1, 2], a, 13).unwrap()).collect();
    let a0 = [q(1), q(0), q(0), q(1), q(1), q(1)];
    let a = afunction(&fs, &a0).unwrap();
    let s = |i| SparsePoly::var(3, i);
    let total = &(&s(0) + &s(1)) + &s(2);
    for (k, ak) in a.iter().enumerate() {
        let expect = &s(k) * &total;
        assert!(equal_up_to_scalar(ak, &expect).is_some(), "a_{} = {ak:?}", k + 1);
    }
}

#[test]
fn rational_root_search() {
    // (2s+1)(s+3)²(s−2)
    let p = prod(&[FactorProduct::linear(&[2], q(1)).unwrap(), FactorProduct::linear(&[1], q(3)).unwrap().pow(2)])
        .expand()
        .unwrap();
    let p = &p * &SparsePoly::linear(&[q(1)], q(-2));
    let r = rational_roots(&p);
    assert!(r.fully_linear());
    assert_eq!(r.roots, vec![(q(-3), 2), (BigRational::new((-1).into(), 2.into()), 1), (q(2), 1)]);
    assert!(!negative_rational_roots(&p));
    let irreducible = &SparsePoly::var(1, 0).pow(2) + &SparsePoly::one(1);
    assert_eq!(rational_roots(&irreducible).residual_degree, 2);
}

proptest! {
    #[test]
    fn crt_round_trip(v in any::<i128>()) {
        let v = BigInt::from(v >> 10);
        let residues: Vec<u64> = PRIMES.iter().map(|&p| Fp(p).int(&v)).collect();
        prop_assert_eq!(crt_symmetric(&residues, &PRIMES), v);
    }

    #[test]
    fn cayley_for_any_seed(seed in any::<u64>(), n in 1i64..=2) {
        let a2 = quiver(2, &[(1, 2)]);
        let f = semi_invariant(&a2, &[n, n], &[1, 0], seed).unwrap();
        let cfg = OracleConfig { seed, ..OracleConfig::default() };
        let b = bfunction_oracle(&[f], &[1], &cfg).unwrap();
        prop_assert_eq!(b, bracket1(1, n, n).unwrap().expand().unwrap());
    }
}
