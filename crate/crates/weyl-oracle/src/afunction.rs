use bpoly::SparsePoly;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::OracleError;

/// a_k(s) = f_k(A₀)·f_k(Σᵢ sᵢ·grad log fᵢ(A₀)), one polynomial in (s₁,…,s_l) per k.
pub fn afunction(fs: &[SparsePoly], a0: &[BigRational]) -> Result<Vec<SparsePoly>, OracleError> {
    let first = fs.first().ok_or(OracleError::NoPolynomials)?;
    let n = first.nvars();
    if fs.iter().any(|f| f.nvars() != n) {
        return Err(OracleError::Arity);
    }
    if a0.len() != n {
        return Err(OracleError::PointArity { expected: n, found: a0.len() });
    }
    let l = fs.len();
    let mut values = Vec::new();
    let mut grads = Vec::new();
    for (i, f) in fs.iter().enumerate() {
        let v = f.eval(a0);
        if v.is_zero() {
            return Err(OracleError::ZeroAtPoint(i));
        }
        grads.push((0..n).map(|j| f.derivative(j).eval(a0) / &v).collect::<Vec<_>>());
        values.push(v);
    }
    let point: Vec<SparsePoly> = (0..n)
        .map(|j| {
            let coeffs: Vec<BigRational> = grads.iter().map(|g| g[j].clone()).collect();
            SparsePoly::linear(&coeffs, BigRational::zero())
        })
        .collect();
    debug_assert!(point.iter().all(|p| p.nvars() == l));
    Ok(fs.iter().zip(&values).map(|(f, v)| f.substitute(&point).scale(v)).collect())
}
