use quiver_core::{classify_components, decompose_by_hom, generic_hom_ext, rng_for, DimVector, Decomposition, DynkinType, Quiver, QuiverType, Representation};

use crate::error::DecompError;

const SAMPLES: u64 = 3;
const SECOND_SEED: u64 = 0xA076_1D64_78BD_642F;

fn dims(beta: &[i64]) -> Result<Vec<usize>, DecompError> {
    beta.iter().map(|&b| usize::try_from(b).map_err(|_| DecompError::Quiver(quiver_core::QuiverError::NegativeDimension))).collect()
}

fn component_types(q: &Quiver) -> Option<Vec<DynkinType>> {
    classify_components(q)
        .into_iter()
        .map(|(_, t)| match t {
            QuiverType::Dynkin(d) => Some(d),
            _ => None,
        })
        .collect()
}

/// Decomposition of a random representation of dimension β, computed from Hom
/// dimensions against every indecomposable; two independent samples must agree.
pub fn generic_decomposition(q: &Quiver, beta: &[i64], seed: u64) -> Result<Decomposition, DecompError> {
    if beta.len() != q.n_vertices() {
        return Err(quiver_core::QuiverError::LengthMismatch { expected: q.n_vertices(), found: beta.len() }.into());
    }
    if component_types(q).is_none() {
        return Err(DecompError::NotDynkin);
    }
    let d = dims(beta)?;
    let sample = |s: u64| {
        let mut rng = rng_for(s);
        let m = Representation::random(q, &d, &mut rng);
        decompose_by_hom(q, &m, s.rotate_left(17)).map(|x| x.normalized())
    };
    let mut last = None;
    for attempt in 0..SAMPLES {
        let s = seed.wrapping_add(attempt.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        match (sample(s), sample(s ^ SECOND_SEED)) {
            (Ok(a), Ok(b)) if a == b => return Ok(a),
            (Ok(a), Ok(b)) => last = Some(DecompError::SeedDisagreement { first: a.to_string(), second: b.to_string() }),
            (Err(e), _) | (_, Err(e)) => last = Some(e.into()),
        }
    }
    Err(last.expect("at least one sample"))
}

/// Generic Hom between the indecomposables of dimension α and β is nonzero.
pub fn has_hom(q: &Quiver, alpha: &[i64], beta: &[i64], seed: u64) -> Result<bool, DecompError> {
    Ok(generic_hom_ext(q, alpha, beta, seed)?.0 > 0)
}

/// Orders distinct roots so that a nonzero map from the i-th to the j-th
/// occurs only for j < i; ties keep the input order.
pub fn hom_order(q: &Quiver, roots: &[DimVector], seed: u64) -> Result<Vec<usize>, DecompError> {
    let n = roots.len();
    // before[i]: roots that must precede i (targets of maps out of i).
    let mut before = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            if i != j && has_hom(q, &roots[i], &roots[j], seed)? {
                before[i].push(j);
            }
        }
    }
    let mut placed = vec![false; n];
    let mut order = Vec::new();
    while order.len() < n {
        let next = (0..n).find(|&i| !placed[i] && before[i].iter().all(|&j| placed[j])).ok_or(DecompError::HomCycle)?;
        placed[next] = true;
        order.push(next);
    }
    Ok(order)
}

/// Generic decomposition of a type-A quiver, summands ordered by the Hom relation.
pub fn an_decomposition(q: &Quiver, beta: &[i64], seed: u64) -> Result<Decomposition, DecompError> {
    let types = component_types(q).ok_or(DecompError::NotTypeA)?;
    if !types.iter().all(|t| matches!(t, DynkinType::A(_))) {
        return Err(DecompError::NotTypeA);
    }
    let d = generic_decomposition(q, beta, seed)?;
    let roots: Vec<DimVector> = d.parts.iter().map(|(r, _)| r.clone()).collect();
    let order = hom_order(q, &roots, seed)?;
    Ok(Decomposition { parts: order.into_iter().map(|i| d.parts[i].clone()).collect() })
}

/// Pairwise generic Ext between the summands vanishes.
pub fn ext_vanishes(q: &Quiver, d: &Decomposition, seed: u64) -> Result<bool, DecompError> {
    for (a, _) in &d.parts {
        for (b, _) in &d.parts {
            if generic_hom_ext(q, a, b, seed)?.1 != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
