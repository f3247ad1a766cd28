use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::BpolyError;
use crate::poly::SparsePoly;

/// d₁s₁ + … + d_l s_l + c with a primitive nonnegative coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearFactor {
    coeffs: Vec<i64>,
    shift: BigRational,
}

impl LinearFactor {
    /// Normalizes (coeffs, shift) by the gcd of the coefficients; returns the
    /// factor together with the content that was divided out.
    pub fn new(coeffs: &[i64], shift: BigRational) -> Result<(LinearFactor, i64), BpolyError> {
        if coeffs.iter().any(|&d| d < 0) || coeffs.iter().all(|&d| d == 0) {
            return Err(BpolyError::BadCoefficients(coeffs.to_vec()));
        }
        let g = coeffs.iter().fold(0i64, |g, &d| g.gcd(&d));
        let shift = shift / BigRational::from_integer(g.into());
        Ok((LinearFactor { coeffs: coeffs.iter().map(|d| d / g).collect(), shift }, g))
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn shift(&self) -> &BigRational {
        &self.shift
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    /// Integer form (k·coeffs, k·shift) with k the denominator of the shift.
    pub fn integral(&self) -> (Vec<i64>, BigInt, BigInt) {
        let k = self.shift.denom().clone();
        let coeffs = self.coeffs.iter().map(|d| d * i64::try_from(&k).unwrap_or(1)).collect();
        (coeffs, self.shift.numer().clone(), k)
    }

    pub fn to_poly(&self) -> SparsePoly {
        let c: Vec<BigRational> = self.coeffs.iter().map(|&d| BigRational::from_integer(d.into())).collect();
        SparsePoly::linear(&c, self.shift.clone())
    }

    pub fn render(&self, names: &[String]) -> String {
        let (coeffs, num, _) = self.integral();
        let mut s = String::new();
        for (d, n) in coeffs.iter().zip(names) {
            if *d == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('+');
            }
            if *d != 1 {
                s.push_str(&d.to_string());
            }
            s.push_str(n);
        }
        if num.is_positive() {
            s.push('+');
            s.push_str(&num.to_string());
        } else if num.is_negative() {
            s.push_str(&num.to_string());
        }
        s
    }
}

/// Nonzero scalar times a product of linear factors with signed multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorProduct {
    nvars: usize,
    scalar: BigRational,
    factors: BTreeMap<LinearFactor, i64>,
}

impl FactorProduct {
    pub fn unit(nvars: usize) -> Self {
        FactorProduct { nvars, scalar: BigRational::one(), factors: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Result<Self, BpolyError> {
        if c.is_zero() {
            return Err(BpolyError::ZeroScalar);
        }
        Ok(FactorProduct { nvars, scalar: c, factors: BTreeMap::new() })
    }

    /// The single factor Σ dᵢsᵢ + c.
    pub fn linear(coeffs: &[i64], shift: BigRational) -> Result<Self, BpolyError> {
        let (f, g) = LinearFactor::new(coeffs, shift)?;
        let mut p = Self::unit(coeffs.len());
        p.scalar = BigRational::from_integer(g.into());
        p.factors.insert(f, 1);
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn scalar(&self) -> &BigRational {
        &self.scalar
    }

    pub fn factors(&self) -> impl Iterator<Item = (&LinearFactor, i64)> {
        self.factors.iter().map(|(f, &m)| (f, m))
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty() && self.scalar.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.factors.values().all(|&m| m > 0)
    }

    /// Σ multiplicities; the total degree when the product is a polynomial.
    pub fn degree(&self) -> i64 {
        self.factors.values().sum()
    }

    fn check_arity(&self, other: &Self) -> Result<(), BpolyError> {
        if self.nvars != other.nvars {
            return Err(BpolyError::Arity { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    fn combine(&self, other: &Self, sign: i64) -> Result<Self, BpolyError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        if sign > 0 {
            out.scalar *= &other.scalar;
        } else {
            out.scalar /= &other.scalar;
        }
        for (f, &m) in &other.factors {
            let e = out.factors.entry(f.clone()).or_insert(0);
            *e += sign * m;
            if *e == 0 {
                out.factors.remove(f);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, BpolyError> {
        self.combine(other, 1)
    }

    pub fn div(&self, other: &Self) -> Result<Self, BpolyError> {
        self.combine(other, -1)
    }

    pub fn inverse(&self) -> Self {
        Self::unit(self.nvars).div(self).expect("same arity")
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::unit(self.nvars);
        for _ in 0..k {
            out = out.mul(self).expect("same arity");
        }
        out
    }

    /// Scalar multiple; `c` must be nonzero.
    pub fn scaled(&self, c: &BigRational) -> Self {
        assert!(!c.is_zero(), "scaling by zero");
        let mut out = self.clone();
        out.scalar *= c;
        out
    }

    /// Expands to a dense polynomial; fails on negative multiplicities.
    pub fn expand(&self) -> Result<SparsePoly, BpolyError> {
        if !self.is_polynomial() {
            return Err(BpolyError::NotPolynomial);
        }
        let mut acc = SparsePoly::constant(self.nvars, self.scalar.clone());
        for (f, &m) in &self.factors {
            acc = &acc * &f.to_poly().pow(m as u32);
        }
        Ok(acc)
    }

    /// λ with self = λ·other when both have the same factors.
    pub fn proportional(&self, other: &Self) -> Option<BigRational> {
        if self.nvars == other.nvars && self.factors == other.factors {
            Some(&self.scalar / &other.scalar)
        } else {
            None
        }
    }

    /// True when every factor has the form d·s + c with c > 0 (all roots of the
    /// single-variable specialisations negative).
    pub fn shifts_positive(&self) -> bool {
        self.factors.keys().all(|f| f.shift.is_positive())
    }

    /// Substitutes s_i ↦ s for all i, giving a one-variable product.
    pub fn diagonal(&self) -> Self {
        let mut out = Self::unit(1);
        out.scalar = self.scalar.clone();
        for (f, &m) in &self.factors {
            let d: i64 = f.coeffs.iter().sum();
            let lf = FactorProduct::linear(&[d], f.shift.clone()).expect("positive coefficient");
            let p = if m > 0 { lf.pow(m as u32) } else { lf.inverse().pow((-m) as u32) };
            out = out.mul(&p).expect("one variable");
        }
        out
    }

    pub fn render(&self) -> String {
        self.render_with(&SparsePoly::default_names(self.nvars))
    }

    /// Explicit factor list, e.g. `2 * (s+1)^2 * (2s+3)`; factors printed with
    /// integer coefficients and the scalar adjusted accordingly.
    pub fn render_with(&self, names: &[String]) -> String {
        let mut scalar = self.scalar.clone();
        let mut parts = Vec::new();
        for (f, &m) in &self.factors {
            let (_, _, k) = f.integral();
            scalar /= BigRational::from_integer(num_traits::pow(k, m.unsigned_abs() as usize)).pow(m.signum() as i32);
            let body = format!("({})", f.render(names));
            parts.push(if m == 1 { body } else { format!("{body}^{m}") });
        }
        if parts.is_empty() {
            return scalar.to_string();
        }
        if !scalar.is_one() {
            parts.insert(0, scalar.to_string());
        }
        parts.join(" * ")
    }
}

impl fmt::Display for FactorProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

#[derive(Serialize)]
struct FactorJson {
    coeffs: Vec<i64>,
    shift: String,
    multiplicity: i64,
}

impl Serialize for FactorProduct {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let factors: Vec<FactorJson> = self
            .factors
            .iter()
            .map(|(f, &m)| FactorJson { coeffs: f.coeffs.clone(), shift: f.shift.to_string(), multiplicity: m })
            .collect();
        let mut st = ser.serialize_struct("FactorProduct", 4)?;
        st.serialize_field("variables", &self.nvars)?;
        st.serialize_field("scalar", &self.scalar.to_string())?;
        st.serialize_field("factors", &factors)?;
        st.serialize_field("text", &self.render())?;
        st.end()
    }
}

/// [s]^{d}_{a,b} with exponent tuple m: the product over i ∈ [b−a+1, b] and
/// j ∈ [0, Σ mₖdₖ − 1] of (d·s + i + j).
pub fn bracket(d: &[i64], m: &[i64], a: i64, b: i64) -> Result<FactorProduct, BpolyError> {
    if d.len() != m.len() {
        return Err(BpolyError::Arity { left: d.len(), right: m.len() });
    }
    if a < 0 || a > b {
        return Err(BpolyError::BadRange { a, b });
    }
    if d.iter().chain(m).any(|&x| x < 0) {
        return Err(BpolyError::BadCoefficients(d.to_vec()));
    }
    let total: i64 = d.iter().zip(m).map(|(x, y)| x * y).sum();
    let mut out = FactorProduct::unit(d.len());
    if a == 0 || total == 0 {
        return Ok(out);
    }
    let (f0, g) = LinearFactor::new(d, BigRational::zero())?;
    let gq = BigRational::from_integer(g.into());
    for i in (b - a + 1)..=b {
        for j in 0..total {
            let shift = BigRational::from_integer((i + j).into()) / &gq;
            let f = LinearFactor { coeffs: f0.coeffs.clone(), shift };
            *out.factors.entry(f).or_insert(0) += 1;
            out.scalar *= &gq;
        }
    }
    Ok(out)
}

/// Single-variable bracket [s]^d_{a,b}.
pub fn bracket1(d: i64, a: i64, b: i64) -> Result<FactorProduct, BpolyError> {
    bracket(&[d], &[1], a, b)
}

/// [s]^d_b = [s]^d_{b,b}.
pub fn bracket_full(d: &[i64], m: &[i64], b: i64) -> Result<FactorProduct, BpolyError> {
    bracket(d, m, b, b)
}
