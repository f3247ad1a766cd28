use std::collections::HashMap;

use bpoly::{equal_up_to_scalar, SparsePoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use quiver_core::rng_for;
use rand::Rng;

use crate::error::OracleError;
use crate::modp::{crt_symmetric, Fp, PRIMES};
use crate::series::MonomialSpace;

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "BFQ_ORACLE_BUDGET";
/// Maximum of (grid points) × (truncated series length).
pub const DEFAULT_BUDGET: u128 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleMode {
    /// f*(∂)f^(N+m) evaluated at random points modulo several primes.
    Modular,
    /// Full symbolic differentiation and exact division.
    Exact,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub mode: OracleMode,
    pub budget: u128,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { mode: OracleMode::Modular, budget: budget_from_env(), seed: 42 }
    }
}

pub fn budget_from_env() -> u128 {
    std::env::var(BUDGET_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleRun {
    /// b(s₁,…,s_l) with f normalised as given.
    pub b: SparsePoly,
    /// The exponent tuples N and the quotients b(N).
    pub values: Vec<(Vec<u32>, BigRational)>,
    /// Σ mᵢ·deg fᵢ.
    pub expected_degree: u32,
    pub cost: u128,
}

pub fn bfunction_oracle(fs: &[SparsePoly], m: &[i64], cfg: &OracleConfig) -> Result<SparsePoly, OracleError> {
    run_oracle(fs, m, cfg).map(|r| r.b)
}

/// Solves ∏fᵢ^{mᵢ}(∂)·∏fᵢ^{Nᵢ+mᵢ} = b(N)·∏fᵢ^{Nᵢ} on the simplex |N| ≤ Σmᵢ·deg fᵢ
/// and interpolates b.
pub fn run_oracle(fs: &[SparsePoly], m: &[i64], cfg: &OracleConfig) -> Result<OracleRun, OracleError> {
    let first = fs.first().ok_or(OracleError::NoPolynomials)?;
    let n = first.nvars();
    if fs.iter().any(|f| f.nvars() != n) {
        return Err(OracleError::Arity);
    }
    if m.len() != fs.len() || m.iter().any(|&x| x < 0) {
        return Err(OracleError::BadExponents(m.to_vec()));
    }
    let m: Vec<u32> = m.iter().map(|&x| x as u32).collect();
    let mut degs = Vec::new();
    for (i, f) in fs.iter().enumerate() {
        degs.push(f.total_degree().ok_or(OracleError::ZeroPolynomial(i))?);
    }
    let t: u32 = degs.iter().zip(&m).map(|(d, k)| d * k).sum();
    let grid = simplex(fs.len(), t);
    let cost = grid.len() as u128 * MonomialSpace::size(n, t);
    if cost > cfg.budget {
        return Err(OracleError::Budget { cost, budget: cfg.budget });
    }
    let op = fs.iter().zip(&m).fold(SparsePoly::one(n), |acc, (f, &k)| &acc * &f.pow(k));
    let values = match cfg.mode {
        OracleMode::Exact => exact_values(fs, &m, &op, &grid)?,
        OracleMode::Modular => modular_values(fs, &m, &op, &grid, t, cfg.seed)?,
    };
    let b = interpolate(fs.len(), &grid, &values);
    Ok(OracleRun { b, values: grid.into_iter().zip(values).collect(), expected_degree: t, cost })
}

/// Exponent tuples of total degree ≤ t, by increasing degree.
fn simplex(l: usize, t: u32) -> Vec<Vec<u32>> {
    fn rec(e: &mut Vec<u32>, j: usize, left: u32, out: &mut Vec<Vec<u32>>) {
        if j + 1 == e.len() {
            e[j] = left;
            out.push(e.clone());
            return;
        }
        for x in (0..=left).rev() {
            e[j] = x;
            rec(e, j + 1, left - x, out);
        }
    }
    let mut out = Vec::new();
    for d in 0..=t {
        rec(&mut vec![0; l], 0, d, &mut out);
    }
    out
}

fn exact_values(fs: &[SparsePoly], m: &[u32], op: &SparsePoly, grid: &[Vec<u32>]) -> Result<Vec<BigRational>, OracleError> {
    let n = op.nvars();
    let mut out = Vec::new();
    for big_n in grid {
        let lifted = fs.iter().zip(big_n.iter().zip(m)).fold(SparsePoly::one(n), |acc, (f, (&k, &mi))| &acc * &f.pow(k + mi));
        let g = lifted.apply_operator(op);
        let h = fs.iter().zip(big_n).fold(SparsePoly::one(n), |acc, (f, &k)| &acc * &f.pow(k));
        let q = if g.is_zero() {
            BigRational::zero()
        } else {
            equal_up_to_scalar(&g, &h).ok_or_else(|| OracleError::InexactDivision(big_n.clone()))?
        };
        out.push(q);
    }
    Ok(out)
}

fn eval_mod(f: Fp, p: &SparsePoly, x: &[u64]) -> Option<u64> {
    let mut acc = 0;
    for (e, c) in p.terms() {
        let mut t = f.rat(c)?;
        for (&xi, &k) in x.iter().zip(e) {
            t = f.mul(t, f.pow(xi, k as u64));
        }
        acc = f.add(acc, t);
    }
    Some(acc)
}

fn pick_point(fs: &[SparsePoly], rng: &mut impl Rng) -> Result<Vec<u64>, OracleError> {
    let n = fs[0].nvars();
    for _ in 0..16 {
        let x: Vec<u64> = (0..n).map(|_| rng.gen_range(1..1u64 << 40)).collect();
        let ok = PRIMES.iter().all(|&p| fs.iter().all(|g| eval_mod(Fp(p), g, &x).is_some_and(|v| v != 0)));
        if ok {
            return Ok(x);
        }
    }
    Err(OracleError::NoPoint)
}

/// b(N) mod p at the point x for every grid point. F_N = ∏fᵢ^{Nᵢ+mᵢ} is
/// expanded around x as a series truncated at the operator's degree, built
/// from a predecessor grid point by one multiplication.
fn values_at(
    f: Fp,
    space: &MonomialSpace,
    fs: &[SparsePoly],
    m: &[u32],
    op_terms: &[(usize, BigInt)],
    grid: &[Vec<u32>],
    x: &[u64],
) -> Result<Vec<u64>, OracleError> {
    let shifted: Vec<_> = fs.iter().map(|g| space.shifted(f, g, x).ok_or(OracleError::NoPoint)).collect::<Result<_, _>>()?;
    let inv: Vec<u64> = fs
        .iter()
        .enumerate()
        .map(|(i, g)| eval_mod(f, g, x).and_then(|v| f.inv(v)).ok_or(OracleError::ZeroAtPoint(i)))
        .collect::<Result<_, _>>()?;
    let op: Vec<(usize, u64)> = op_terms.iter().map(|(pos, c)| (*pos, f.int(c))).collect();
    let index: HashMap<&[u32], usize> = grid.iter().enumerate().map(|(i, e)| (e.as_slice(), i)).collect();

    let mut base = space.one(f);
    for (g, &k) in shifted.iter().zip(m) {
        for _ in 0..k {
            base = space.mul(f, &base, g);
        }
    }
    let mut series: Vec<Vec<u64>> = Vec::with_capacity(grid.len());
    let mut out = Vec::with_capacity(grid.len());
    for big_n in grid {
        let s = match big_n.iter().position(|&k| k > 0) {
            None => base.clone(),
            Some(i) => {
                let mut prev = big_n.clone();
                prev[i] -= 1;
                space.mul(f, &series[index[prev.as_slice()]], &shifted[i])
            }
        };
        let mut v = op.iter().fold(0, |acc, &(pos, c)| f.add(acc, f.mul(c, s[pos])));
        for (&k, &iv) in big_n.iter().zip(&inv) {
            v = f.mul(v, f.pow(iv, k as u64));
        }
        out.push(v);
        series.push(s);
    }
    Ok(out)
}

fn modular_values(
    fs: &[SparsePoly],
    m: &[u32],
    op: &SparsePoly,
    grid: &[Vec<u32>],
    t: u32,
    seed: u64,
) -> Result<Vec<BigRational>, OracleError> {
    let n = op.nvars();
    let space = MonomialSpace::new(n, t).ok_or(OracleError::Budget { cost: u128::MAX, budget: 0 })?;
    // op(∂) applied to y^μ at y = 0 leaves μ!·op_μ.
    let mut op_terms = Vec::new();
    for (e, c) in op.terms() {
        let fact: BigInt = e.iter().map(|&k| (1..=k as u64).fold(BigInt::one(), |a, i| a * i)).product();
        let c = c * BigRational::from_integer(fact);
        if !c.is_integer() {
            return Err(OracleError::InexactDivision(vec![]));
        }
        op_terms.push((space.position(e).expect("op degree within truncation"), c.to_integer()));
    }
    let mut rng = rng_for(seed);
    let x0 = pick_point(fs, &mut rng)?;
    let x1 = pick_point(fs, &mut rng)?;
    let mut residues = vec![Vec::new(); grid.len()];
    for &p in &PRIMES {
        let f = Fp(p);
        let a = values_at(f, &space, fs, m, &op_terms, grid, &x0)?;
        let b = values_at(f, &space, fs, m, &op_terms, grid, &x1)?;
        for (k, (va, vb)) in a.iter().zip(&b).enumerate() {
            if va != vb {
                return Err(OracleError::InexactDivision(grid[k].clone()));
            }
            residues[k].push(*va);
        }
    }
    Ok(residues.iter().map(|r| BigRational::from_integer(crt_symmetric(r, &PRIMES))).collect())
}

/// Newton interpolation on the simplex in the binomial basis ∏ C(sᵢ, kᵢ).
fn interpolate(l: usize, grid: &[Vec<u32>], values: &[BigRational]) -> SparsePoly {
    let index: HashMap<&[u32], usize> = grid.iter().enumerate().map(|(i, e)| (e.as_slice(), i)).collect();
    let mut b = SparsePoly::zero(l);
    let mut cache: HashMap<(usize, u32), SparsePoly> = HashMap::new();
    for k in grid {
        let mut c = BigRational::zero();
        let mut j = vec![0u32; l];
        loop {
            let mut w = BigInt::one();
            for (&ki, &ji) in k.iter().zip(&j) {
                w *= binom_big(ki, ji);
            }
            let parity: u32 = k.iter().zip(&j).map(|(a, b)| a - b).sum();
            let term = &values[index[j.as_slice()]] * BigRational::from_integer(w);
            if parity % 2 == 0 {
                c += term;
            } else {
                c -= term;
            }
            if !next_in_box(&mut j, k) {
                break;
            }
        }
        if c.is_zero() {
            continue;
        }
        let mut basis = SparsePoly::constant(l, c);
        for (i, &ki) in k.iter().enumerate() {
            if ki > 0 {
                let p = cache.entry((i, ki)).or_insert_with(|| binomial_poly(l, i, ki));
                basis = &basis * p;
            }
        }
        b = &b + &basis;
    }
    b
}

fn next_in_box(j: &mut [u32], k: &[u32]) -> bool {
    for i in 0..j.len() {
        if j[i] < k[i] {
            j[i] += 1;
            return true;
        }
        j[i] = 0;
    }
    false
}

fn binom_big(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// C(s_i, k) = s_i(s_i−1)⋯(s_i−k+1)/k!.
fn binomial_poly(l: usize, i: usize, k: u32) -> SparsePoly {
    let mut coeffs = vec![BigRational::zero(); l];
    coeffs[i] = BigRational::one();
    let mut p = SparsePoly::one(l);
    for r in 0..k {
        p = &p * &SparsePoly::linear(&coeffs, BigRational::from_integer(BigInt::from(-(r as i64))));
    }
    let fact = (1..=k as u64).fold(BigInt::one(), |a, i| a * i);
    p.scale(&BigRational::new(BigInt::one(), fact))
}
