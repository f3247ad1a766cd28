use std::collections::HashSet;

use quiver_core::{IntMatrix, Quiver};
use serde::Serialize;

/// Result of iterating c (or c⁻¹) on a dimension vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitCheck {
    /// Some iterate left the nonnegative cone.
    pub found: bool,
    /// Iterations performed.
    pub steps: usize,
    /// Gave up at the cap without deciding.
    pub capped: bool,
}

fn iterate(c: &IntMatrix, alpha: &[i64], cap: usize) -> OrbitCheck {
    let mut v = alpha.to_vec();
    let mut seen = HashSet::new();
    for k in 1..=cap {
        v = c.mul_vec(&v);
        if v.iter().any(|&x| x < 0) {
            return OrbitCheck { found: true, steps: k, capped: false };
        }
        if !seen.insert(v.clone()) {
            return OrbitCheck { found: false, steps: k, capped: false };
        }
    }
    OrbitCheck { found: false, steps: cap, capped: true }
}

/// α is preprojective if some cᵏ(α) is not a nonnegative vector.
pub fn is_preprojective(q: &Quiver, alpha: &[i64], cap: usize) -> OrbitCheck {
    iterate(&q.coxeter_matrix(), alpha, cap)
}

/// α is preinjective if some c⁻ᵏ(α) is not a nonnegative vector.
pub fn is_preinjective(q: &Quiver, alpha: &[i64], cap: usize) -> OrbitCheck {
    let inv = q.coxeter_matrix().inverse().expect("Coxeter matrix is unimodular");
    iterate(&inv, alpha, cap)
}
