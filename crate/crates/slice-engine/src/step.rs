use std::fmt;

use bpoly::{bracket, Block, BlockLink, FactorProduct, ReductionTrace, StepKind, SymBracket, TraceStep};
use serde::Serialize;

use crate::error::SliceError;
use crate::state::{SliceArrow, SliceState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ArrowRole {
    /// The tail meets no other arrow.
    OneSource,
    /// The head meets no other arrow.
    OneSink,
}

impl fmt::Display for ArrowRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ArrowRole::OneSource => "1-source",
            ArrowRole::OneSink => "1-sink",
        })
    }
}

/// An arrow together with the endpoint playing the role of vertex 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub arrow: usize,
    pub role: ArrowRole,
    /// The endpoint meeting no other arrow.
    pub v1: usize,
    pub v2: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Ineligible {
    Parallel,
    NotOneSourceOrSink,
    LargerDimension { beta1: i64, beta2: i64 },
    ZeroWeight,
    /// The real-Schur-root condition fails for weight `weight`.
    Condition { role: ArrowRole, weight: usize },
}

impl fmt::Display for Ineligible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ineligible::Parallel => write!(f, "parallel arrows between the endpoints"),
            Ineligible::NotOneSourceOrSink => write!(f, "neither a 1-source nor a 1-sink"),
            Ineligible::LargerDimension { beta1, beta2 } => write!(f, "β1={beta1} > β2={beta2}"),
            Ineligible::ZeroWeight => write!(f, "σ(1)=0 for every weight"),
            Ineligible::Condition { role: ArrowRole::OneSource, weight } => {
                write!(f, "1-source with α1≠α2 and α*1≠0 (weight {})", weight + 1)
            }
            Ineligible::Condition { role: ArrowRole::OneSink, weight } => {
                write!(f, "1-sink with α1≠0 and α*1≠α*2 (weight {})", weight + 1)
            }
        }
    }
}

/// The ways arrow `k` can be read as a 1-source or 1-sink.
pub fn roles(state: &SliceState, k: usize) -> Vec<Candidate> {
    let a = &state.arrows[k];
    let mut out = Vec::new();
    if state.degree(a.tail) == 1 {
        out.push(Candidate { arrow: k, role: ArrowRole::OneSource, v1: a.tail, v2: a.head });
    }
    if state.degree(a.head) == 1 {
        out.push(Candidate { arrow: k, role: ArrowRole::OneSink, v1: a.head, v2: a.tail });
    }
    out
}

fn parallel(state: &SliceState, k: usize) -> bool {
    let a = &state.arrows[k];
    state
        .arrows
        .iter()
        .filter(|b| (b.tail == a.tail && b.head == a.head) || (b.tail == a.head && b.head == a.tail))
        .count()
        > 1
}

/// Checks the slicing hypotheses for one reading of an arrow, in the order
/// the diagnostic reports them.
pub fn check(state: &SliceState, c: &Candidate, alphas: &[Vec<i64>], stars: &[Vec<i64>]) -> Result<(), Ineligible> {
    for (i, (al, st)) in alphas.iter().zip(stars).enumerate() {
        let ok = match c.role {
            ArrowRole::OneSource => al[c.v1] == al[c.v2] || st[c.v1] == 0,
            ArrowRole::OneSink => al[c.v1] == 0 || st[c.v1] == st[c.v2],
        };
        if !ok {
            return Err(Ineligible::Condition { role: c.role, weight: i });
        }
    }
    let (b1, b2) = (state.vertices[c.v1].beta, state.vertices[c.v2].beta);
    if b1 > b2 {
        return Err(Ineligible::LargerDimension { beta1: b1, beta2: b2 });
    }
    if state.vertices[c.v1].sigma.iter().all(|&s| s == 0) {
        return Err(Ineligible::ZeroWeight);
    }
    Ok(())
}

/// First eligible reading of arrow `k`, or the reason the last reading failed.
pub fn eligibility(state: &SliceState, k: usize) -> Result<Candidate, Ineligible> {
    if parallel(state, k) {
        return Err(Ineligible::Parallel);
    }
    let rs = roles(state, k);
    if rs.is_empty() {
        return Err(Ineligible::NotOneSourceOrSink);
    }
    let (alphas, stars) = (state.alphas(), state.alpha_stars());
    let mut last = Ineligible::NotOneSourceOrSink;
    for c in rs {
        match check(state, &c, &alphas, &stars) {
            Ok(()) => return Ok(c),
            Err(e) => last = e,
        }
    }
    Err(last)
}

/// Eligible arrows, most recently created first, then in creation order.
pub fn eligible_arrows(state: &SliceState) -> Vec<Candidate> {
    let mut out: Vec<Candidate> = (0..state.arrows.len()).filter_map(|k| eligibility(state, k).ok()).collect();
    out.sort_by_key(|c| (std::cmp::Reverse(state.arrows[c.arrow].generation), state.arrows[c.arrow].seq));
    out
}

/// Slices arrow `k` and returns the bracket factor.
pub fn slice_step(state: &mut SliceState, k: usize, trace: &mut ReductionTrace) -> Result<FactorProduct, SliceError> {
    if k >= state.arrows.len() {
        return Err(SliceError::Ineligible { arrow: format!("#{k}"), reason: Ineligible::NotOneSourceOrSink });
    }
    let c = eligibility(state, k)
        .map_err(|reason| SliceError::Ineligible { arrow: state.arrows[k].id.clone(), reason })?;
    apply(state, c, trace)
}

fn block_for(state: &SliceState, v: usize, input_vertex: usize) -> Result<Block, SliceError> {
    state.vertices[v]
        .blocks
        .iter()
        .find(|b| b.vertex == input_vertex)
        .cloned()
        .ok_or_else(|| SliceError::Internal(format!("vertex {} carries no block of the arrow's endpoint", state.vertices[v].label)))
}

pub(crate) fn apply(state: &mut SliceState, c: Candidate, trace: &mut ReductionTrace) -> Result<FactorProduct, SliceError> {
    let Candidate { arrow: k, role, v1, v2 } = c;
    state.steps += 1;
    let gen = state.steps;
    let alpha_before = state.alphas();
    let (b1, b2) = (state.vertices[v1].beta, state.vertices[v2].beta);
    let d: Vec<i64> = state.vertices[v1].sigma.iter().map(|s| s.abs()).collect();
    let factor = bracket(&d, &state.m, b1, b2)?;
    let symbolic = SymBracket {
        degrees: d.clone(),
        lo: state.vertices[v1].sym.simplest(&state.relations),
        hi: state.vertices[v2].sym.simplest(&state.relations),
    };

    // The arrow becomes an identity onto the first β1 coordinates of vertex 2.
    let origin = state.arrows[k].origin;
    let (in_tail, in_head) = (state.input_arrow(origin).0, state.input_arrow(origin).1);
    let (tail_v, head_v) = (state.arrows[k].tail, state.arrows[k].head);
    let link = BlockLink {
        arrow: origin,
        tail: block_for(state, tail_v, in_tail)?,
        head: block_for(state, head_v, in_head)?,
        size: b1 as usize,
    };
    let absorbed = state.vertices[v2].blocks.clone();
    state.vertices[v1].blocks.extend(absorbed);
    for b in &mut state.vertices[v2].blocks {
        b.offset += b1 as usize;
    }

    let removed = state.arrows.remove(k);
    let mut added = Vec::new();
    for a in &state.arrows {
        if a.tail == v2 {
            added.push((v1, a.head, a.origin, a.id.clone()));
        } else if a.head == v2 {
            added.push((a.tail, v1, a.origin, a.id.clone()));
        }
    }
    for (t, h, origin, id) in added {
        let seq = state.fresh_seq();
        state.arrows.push(SliceArrow { id: format!("{id}@{gen}"), tail: t, head: h, origin, generation: gen, seq });
    }

    let s2 = state.vertices[v2].sigma.clone();
    for (s1, s2) in state.vertices[v1].sigma.iter_mut().zip(&s2) {
        *s1 += s2;
    }
    state.vertices[v2].beta -= b1;
    let sym1 = state.vertices[v1].sym.clone();
    state.vertices[v2].sym = state.vertices[v2].sym.sub(&sym1);
    let mut label = format!("{}'", state.vertices[v2].label);
    while state.vertices.iter().any(|v| v.label == label) {
        label.push('\'');
    }
    state.vertices[v2].label = label;

    check_alpha_update(state, role, v1, v2, &alpha_before)?;

    trace.push(TraceStep {
        kind: StepKind::Slice,
        target: removed.id.clone(),
        factor: factor.clone(),
        symbolic: vec![symbolic],
        divisor: vec![],
        note: format!("{role} at {}", state.vertices[v1].label),
        state: state.snapshot(),
        links: vec![link],
        reversible: true,
    });
    Ok(factor)
}

/// α_a = α + (α2−α1)·d(P1) − α1·d(S2) for a 1-source and
/// α_a = α + α1·d(P1) − α1·d(S1) for a 1-sink, with P1 taken on the new quiver.
fn check_alpha_update(
    state: &SliceState,
    role: ArrowRole,
    v1: usize,
    v2: usize,
    before: &[Vec<i64>],
) -> Result<(), SliceError> {
    let q = state.quiver();
    let mut paths = vec![0i64; q.n_vertices()];
    paths[v1] = 1;
    for &x in q.topological_order() {
        for a in q.arrows() {
            if a.tail == x {
                paths[a.head] += paths[x];
            }
        }
    }
    for (after, alpha) in state.alphas().iter().zip(before) {
        let (a1, a2) = (alpha[v1], alpha[v2]);
        let mut expect: Vec<i64> = match role {
            ArrowRole::OneSource => alpha.iter().zip(&paths).map(|(a, p)| a + (a2 - a1) * p).collect(),
            ArrowRole::OneSink => alpha.iter().zip(&paths).map(|(a, p)| a + a1 * p).collect(),
        };
        match role {
            ArrowRole::OneSource => expect[v2] -= a1,
            ArrowRole::OneSink => expect[v1] -= a1,
        }
        if &expect != after {
            return Err(SliceError::Internal(format!("weight update mismatch: expected {expect:?}, got {after:?}")));
        }
    }
    Ok(())
}
