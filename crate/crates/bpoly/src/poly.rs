use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Monomial = Vec<u32>;

/// Sparse multivariate polynomial with exact rational coefficients over a
/// fixed number of variables. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

impl SparsePoly {
    pub fn zero(nvars: usize) -> Self {
        SparsePoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, BigRational::one());
        p
    }

    /// Affine-linear polynomial Σ coeffs_i x_i + shift.
    pub fn linear(coeffs: &[BigRational], shift: BigRational) -> Self {
        let n = coeffs.len();
        let mut p = Self::constant(n, shift);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; n];
                e[i] = 1;
                p.terms.insert(e, c.clone());
            }
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "monomial arity");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match it.next() {
            None => true,
            Some(d) => it.all(|x| x == d),
        }
    }

    /// Lexicographically largest monomial and its coefficient.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        SparsePoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut f = e.clone();
                f[var] -= 1;
                out.add_term(f, c * q(e[var] as i64));
            }
        }
        out
    }

    /// Applies the constant-coefficient operator op(∂) to `self`: each variable
    /// x_i of `op` is read as ∂/∂x_i.
    pub fn apply_operator(&self, op: &SparsePoly) -> Self {
        assert_eq!(op.nvars, self.nvars);
        let mut acc: HashMap<Monomial, BigRational> = HashMap::new();
        for (mu, c) in &op.terms {
            for (nu, d) in &self.terms {
                if mu.iter().zip(nu).any(|(m, n)| m > n) {
                    continue;
                }
                let mut factor = BigInt::one();
                for (&m, &n) in mu.iter().zip(nu) {
                    for k in 0..m {
                        factor *= BigInt::from(n - k);
                    }
                }
                let e: Monomial = nu.iter().zip(mu).map(|(n, m)| n - m).collect();
                let v = c * d * BigRational::from_integer(factor);
                *acc.entry(e).or_insert_with(BigRational::zero) += v;
            }
        }
        Self::collect(self.nvars, acc)
    }

    fn collect(nvars: usize, acc: HashMap<Monomial, BigRational>) -> Self {
        SparsePoly { nvars, terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// Substitutes polynomial `subs[i]` (all over a common variable set) for x_i.
    pub fn substitute(&self, subs: &[SparsePoly]) -> SparsePoly {
        assert_eq!(subs.len(), self.nvars);
        let m = subs.first().map(|s| s.nvars).unwrap_or(0);
        let mut out = SparsePoly::zero(m);
        for (e, c) in &self.terms {
            let mut t = SparsePoly::constant(m, c.clone());
            for (s, &k) in subs.iter().zip(e) {
                if k > 0 {
                    t = &t * &s.pow(k);
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Coefficients c_0..c_d of a univariate polynomial.
    pub fn univariate_coeffs(&self) -> Vec<BigRational> {
        assert_eq!(self.nvars, 1, "univariate polynomial expected");
        let d = self.total_degree().unwrap_or(0) as usize;
        let mut out = vec![BigRational::zero(); d + 1];
        for (e, c) in &self.terms {
            out[e[0] as usize] = c.clone();
        }
        out
    }

    pub fn from_univariate(coeffs: &[BigRational]) -> Self {
        Self::from_terms(1, coeffs.iter().enumerate().map(|(i, c)| (vec![i as u32], c.clone())))
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .zip(names)
                .filter(|(k, _)| **k > 0)
                .map(|(k, n)| if *k == 1 { n.clone() } else { format!("{n}^{k}") })
                .collect();
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                s.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    s.push_str(&abs.to_string());
                    s.push('*');
                }
                s.push_str(&mono.join("*"));
            }
        }
        s
    }

    pub fn default_names(nvars: usize) -> Vec<String> {
        if nvars == 1 {
            vec!["s".into()]
        } else {
            (1..=nvars).map(|i| format!("s{i}")).collect()
        }
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&Self::default_names(self.nvars)))
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        self.scale(&-BigRational::one())
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut acc: HashMap<Monomial, BigRational> = HashMap::with_capacity(self.len() * rhs.len());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Monomial = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let v = c1 * c2;
                match acc.get_mut(&e) {
                    Some(x) => *x += v,
                    None => {
                        acc.insert(e, v);
                    }
                }
            }
        }
        SparsePoly::collect(self.nvars, acc)
    }
}

/// Returns λ with p = λ·q, normalizing by the lexicographically leading
/// coefficient; `None` when no nonzero λ exists.
pub fn equal_up_to_scalar(p: &SparsePoly, q: &SparsePoly) -> Option<BigRational> {
    if p.nvars != q.nvars {
        return None;
    }
    match (p.leading_term(), q.leading_term()) {
        (None, None) => Some(BigRational::one()),
        (Some((ep, cp)), Some((eq, cq))) => {
            if ep != eq || p.len() != q.len() {
                return None;
            }
            let lambda = cp / cq;
            if &q.scale(&lambda) == p {
                Some(lambda)
            } else {
                None
            }
        }
        _ => None,
    }
}
