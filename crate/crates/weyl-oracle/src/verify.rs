use bpoly::{equal_up_to_scalar, FactorProduct, SparsePoly};
use num_rational::BigRational;
use num_traits::One;

use crate::error::OracleError;
use crate::oracle::{bfunction_oracle, OracleConfig};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub matches: bool,
    /// λ with oracle = λ·closed form.
    pub scalar: Option<BigRational>,
    pub detail: Option<String>,
    pub oracle: SparsePoly,
    pub expected: SparsePoly,
}

pub fn variable_names(l: usize) -> Vec<String> {
    if l == 1 {
        vec!["s".into()]
    } else {
        (1..=l).map(|i| format!("s{i}")).collect()
    }
}

fn monomial(e: &[u32], names: &[String]) -> String {
    let parts: Vec<String> = e
        .iter()
        .zip(names)
        .filter(|(k, _)| **k > 0)
        .map(|(k, n)| if *k == 1 { n.clone() } else { format!("{n}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// The first coefficient (from the top) where `oracle` and λ·`expected`
/// differ, λ matching the leading coefficients.
fn first_difference(oracle: &SparsePoly, expected: &SparsePoly) -> String {
    if oracle.nvars() != expected.nvars() {
        return format!("variable count {} vs {}", oracle.nvars(), expected.nvars());
    }
    let names = variable_names(oracle.nvars());
    let lambda = match (oracle.leading_term(), expected.leading_term()) {
        (Some((_, a)), Some((_, b))) => a / b,
        _ => BigRational::one(),
    };
    let scaled = expected.scale(&lambda);
    let mut monos: Vec<&Vec<u32>> = oracle.terms().map(|(e, _)| e).chain(scaled.terms().map(|(e, _)| e)).collect();
    monos.sort();
    monos.dedup();
    for e in monos.into_iter().rev() {
        let (a, b) = (oracle.coeff(e), scaled.coeff(e));
        if a != b {
            return format!("coefficient of {}: oracle {a}, expected {b} (after scaling by {lambda})", monomial(e, &names));
        }
    }
    "polynomials agree".into()
}

/// Compares a closed form with the oracle's b-function up to a scalar.
pub fn verify(closed: &FactorProduct, fs: &[SparsePoly], m: &[i64], cfg: &OracleConfig) -> Result<VerifyReport, OracleError> {
    let expected = closed.expand()?;
    let oracle = bfunction_oracle(fs, m, cfg)?;
    let scalar = if oracle.nvars() == expected.nvars() { equal_up_to_scalar(&oracle, &expected) } else { None };
    let detail = scalar.is_none().then(|| first_difference(&oracle, &expected));
    Ok(VerifyReport { matches: scalar.is_some(), scalar, detail, oracle, expected })
}
