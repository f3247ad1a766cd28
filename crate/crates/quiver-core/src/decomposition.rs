use std::fmt;

use num_rational::BigRational;
use serde::Serialize;

use crate::dynkin::positive_roots;
use crate::error::QuiverError;
use crate::matrix::{as_nonneg_int, solve_rational};
use crate::quiver::{DimVector, Quiver};
use crate::rep::{hom_dim, rng_for, to_dims, Representation};

/// Direct-sum decomposition as (dimension vector, multiplicity) pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub parts: Vec<(DimVector, usize)>,
}

impl Decomposition {
    /// Merges equal summands and sorts by dimension vector.
    pub fn normalized(&self) -> Decomposition {
        let mut map: std::collections::BTreeMap<DimVector, usize> = Default::default();
        for (v, m) in &self.parts {
            if *m > 0 {
                *map.entry(v.clone()).or_default() += m;
            }
        }
        Decomposition { parts: map.into_iter().collect() }
    }

    pub fn total(&self, n: usize) -> DimVector {
        let mut t = vec![0; n];
        for (v, m) in &self.parts {
            for (ti, vi) in t.iter_mut().zip(v) {
                *ti += vi * *m as i64;
            }
        }
        t
    }

    pub fn same_as(&self, other: &Decomposition) -> bool {
        self.normalized() == other.normalized()
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|(v, m)| {
                let body = format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
                if *m == 1 {
                    body
                } else {
                    format!("{body}^{m}")
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

const BRICK_TRIES: usize = 16;

/// Multiplicities of the indecomposables in a representation `m` of a Dynkin
/// quiver, read off from dim Hom(V_r, m) for one random representative V_r of
/// every positive root r. The Hom matrix between the V_r is unitriangular up
/// to ordering, so the linear system has a unique solution.
pub fn decompose_by_hom(q: &Quiver, m: &Representation, seed: u64) -> Result<Decomposition, QuiverError> {
    m.check_shapes(q)?;
    let roots = positive_roots(q)?;
    let mut rng = rng_for(seed);
    // A sample with End(V) ≠ k is decomposable (e.g. a zero 1×1 map); resample it.
    let mut reps = Vec::with_capacity(roots.len());
    for r in &roots {
        let dim = to_dims(r).expect("roots are positive");
        let mut v = Representation::random(q, &dim, &mut rng);
        let mut tries = 1;
        while hom_dim(q, &v, &v) != 1 {
            if tries == BRICK_TRIES {
                return Err(QuiverError::Decomposition(format!("no indecomposable sample of dimension {r:?}")));
            }
            v = Representation::random(q, &dim, &mut rng);
            tries += 1;
        }
        reps.push(v);
    }
    let h: Vec<BigRational> =
        reps.iter().map(|v| BigRational::from_integer(hom_dim(q, v, m).into())).collect();
    let gram: Vec<Vec<BigRational>> = reps
        .iter()
        .map(|v| reps.iter().map(|w| BigRational::from_integer(hom_dim(q, v, w).into())).collect())
        .collect();
    let mult = solve_rational(&gram, &h)
        .ok_or_else(|| QuiverError::Decomposition("singular Hom matrix between roots".into()))?;
    let mut parts = Vec::new();
    for (r, x) in roots.iter().zip(&mult) {
        let k = as_nonneg_int(x)
            .ok_or_else(|| QuiverError::Decomposition(format!("multiplicity {x} of {r:?} is not a nonnegative integer")))?;
        if k > 0 {
            parts.push((r.clone(), k as usize));
        }
    }
    let d = Decomposition { parts };
    if d.total(q.n_vertices()) != m.dim_vector() {
        return Err(QuiverError::Decomposition("summands do not add up to the dimension vector".into()));
    }
    Ok(d)
}
