use bpoly::ReductionTrace;
use num_rational::BigRational;
use num_traits::One;
use quiver_core::{classify, decompose_by_hom, Arrow, Decomposition, Quiver, QuiverType, Representation};

use crate::error::SliceError;

/// A locally semi-simple representation read off a slice trace.
#[derive(Clone, Debug, PartialEq)]
pub struct LocallySemisimple {
    pub quiver: Quiver,
    pub rep: Representation,
    pub decomposition: Decomposition,
}

/// Rebuilds the input quiver of a trace.
pub fn input_quiver(trace: &ReductionTrace) -> Result<Quiver, SliceError> {
    let labels = trace.input.labels.clone();
    let index = |l: &str| {
        labels.iter().position(|x| x == l).ok_or_else(|| SliceError::Internal(format!("unknown vertex {l} in trace")))
    };
    let mut arrows = Vec::new();
    for (id, t, h) in &trace.input.arrows {
        arrows.push(Arrow { id: id.clone(), tail: index(t)?, head: index(h)? });
    }
    Ok(Quiver::new(labels.clone(), arrows)?)
}

/// Assembles the representation whose arrows are the identity blocks recorded
/// by each slice step, and decomposes it.
pub fn locally_semisimple(trace: &ReductionTrace, seed: u64) -> Result<LocallySemisimple, SliceError> {
    if let Some(step) = trace.steps.iter().find(|s| !s.reversible) {
        return Err(SliceError::Unsupported(format!(
            "step on {} splits a vertex with nonzero weight; the block layout is not determined",
            step.target
        )));
    }
    let q = input_quiver(trace)?;
    let dim: Vec<usize> = trace.input.beta.iter().map(|&b| b as usize).collect();
    let mut rep = Representation::zero(&q, &dim);
    for link in trace.steps.iter().flat_map(|s| &s.links) {
        let m = &mut rep.maps[link.arrow];
        for i in 0..link.size {
            let (r, c) = (link.head.offset + i, link.tail.offset + i);
            if r >= m.rows || c >= m.cols {
                return Err(SliceError::Internal(format!("block link on arrow {} leaves the matrix", link.arrow)));
            }
            m.set(r, c, BigRational::one());
        }
    }
    let decomposition = match classify(&q) {
        QuiverType::Dynkin(_) => decompose_by_hom(&q, &rep, seed)?,
        _ => coordinate_components(&q, &rep),
    };
    Ok(LocallySemisimple { quiver: q, rep, decomposition: decomposition.normalized() })
}

/// Connected components of the graph on basis vectors joined by nonzero entries.
fn coordinate_components(q: &Quiver, rep: &Representation) -> Decomposition {
    let mut base = vec![0usize; q.n_vertices() + 1];
    for x in 0..q.n_vertices() {
        base[x + 1] = base[x] + rep.dim[x];
    }
    let total = base[q.n_vertices()];
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for (a, m) in q.arrows().iter().zip(&rep.maps) {
        for r in 0..m.rows {
            for c in 0..m.cols {
                if !num_traits::Zero::is_zero(m.get(r, c)) {
                    let (u, v) = (find(&mut parent, base[a.tail] + c), find(&mut parent, base[a.head] + r));
                    parent[u] = v;
                }
            }
        }
    }
    let mut comps: std::collections::BTreeMap<usize, Vec<i64>> = Default::default();
    for x in 0..q.n_vertices() {
        for i in base[x]..base[x + 1] {
            let root = find(&mut parent, i);
            comps.entry(root).or_insert_with(|| vec![0; q.n_vertices()])[x] += 1;
        }
    }
    Decomposition { parts: comps.into_values().map(|v| (v, 1)).collect() }
}
