use bpoly::{FactorProduct, ReductionTrace, StateSnapshot};
use quiver_core::Quiver;
use serde::Serialize;

use crate::error::SliceError;
use crate::rules::prune_and_simplify;
use crate::state::SliceState;
use crate::step::{apply, check, eligible_arrows, roles, ArrowRole, Candidate, Ineligible};

#[derive(Clone, Debug, PartialEq)]
pub struct SliceRun {
    pub product: FactorProduct,
    pub trace: ReductionTrace,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ArrowReport {
    pub arrow: String,
    pub role: Option<ArrowRole>,
    pub reason: Ineligible,
}

/// Why no arrow of a reduced state can be sliced.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Diagnostic {
    pub summary: String,
    pub arrows: Vec<ArrowReport>,
    pub state: StateSnapshot,
    pub trace: ReductionTrace,
}

impl Diagnostic {
    pub fn render(&self) -> String {
        let mut s = format!("not sliceable: {}\n  state: {}\n", self.summary, self.state.render());
        for r in &self.arrows {
            let role = r.role.map(|x| format!("{x}, ")).unwrap_or_default();
            s.push_str(&format!("  {}: {role}{}\n", r.arrow, r.reason));
        }
        s
    }
}

fn diagnose(state: &SliceState, trace: ReductionTrace) -> Diagnostic {
    let (alphas, stars) = (state.alphas(), state.alpha_stars());
    let mut arrows = Vec::new();
    let mut sinks = Vec::new();
    let mut sources = Vec::new();
    for k in 0..state.arrows.len() {
        let id = state.arrows[k].id.clone();
        let a = &state.arrows[k];
        let parallel = state
            .arrows
            .iter()
            .filter(|b| (b.tail == a.tail && b.head == a.head) || (b.tail == a.head && b.head == a.tail))
            .count()
            > 1;
        if parallel {
            arrows.push(ArrowReport { arrow: id, role: None, reason: Ineligible::Parallel });
            continue;
        }
        let rs: Vec<Candidate> = roles(state, k);
        if rs.is_empty() {
            arrows.push(ArrowReport { arrow: id.clone(), role: None, reason: Ineligible::NotOneSourceOrSink });
        }
        for c in rs {
            let reason = check(state, &c, &alphas, &stars).expect_err("no eligible arrow remains");
            let cond = matches!(reason, Ineligible::Condition { .. });
            match c.role {
                ArrowRole::OneSink => sinks.push(cond),
                ArrowRole::OneSource => sources.push(cond),
            }
            arrows.push(ArrowReport { arrow: id.clone(), role: Some(c.role), reason });
        }
    }
    let mut parts = Vec::new();
    if sinks.is_empty() {
        parts.push("no 1-sink".to_string());
    } else if sinks.iter().all(|&c| c) {
        parts.push("no 1-sink with α1=0 or α*1=α*2".into());
    }
    if sources.is_empty() {
        parts.push("no 1-source".into());
    } else if sources.iter().all(|&c| c) {
        parts.push("no 1-source with α1=α2 or α*1=0".into());
    }
    if parts.is_empty() {
        parts.push("no 1-source or 1-sink arrow with β1≤β2 and σ(1)≠0".into());
    }
    Diagnostic { summary: parts.join("; "), arrows, state: state.snapshot(), trace }
}

/// Slices until the quiver is empty, picking among eligible arrows with `choose`
/// (given the number of eligible arrows in tie-break order, returns an index).
pub fn run_slice_with(
    q: &Quiver,
    beta: &[i64],
    alphas: &[Vec<i64>],
    m: &[i64],
    mut choose: impl FnMut(usize) -> usize,
) -> Result<SliceRun, SliceError> {
    let mut state = SliceState::new(q, beta, alphas, m)?;
    let mut trace = ReductionTrace::new("slice", state.input.clone());
    let mut product = FactorProduct::unit(m.len());
    loop {
        prune_and_simplify(&mut state, &mut trace)?;
        if state.is_empty() {
            return Ok(SliceRun { product, trace });
        }
        let cands = eligible_arrows(&state);
        if cands.is_empty() {
            return Err(SliceError::NotSliceable(Box::new(diagnose(&state, trace))));
        }
        let pick = choose(cands.len()).min(cands.len() - 1);
        let f = apply(&mut state, cands[pick], &mut trace)?;
        product = product.mul(&f)?;
    }
}

/// Deterministic slice run: the newest eligible arrow first, ties by creation order.
pub fn run_slice(q: &Quiver, beta: &[i64], alphas: &[Vec<i64>], m: &[i64]) -> Result<SliceRun, SliceError> {
    run_slice_with(q, beta, alphas, m, |_| 0)
}
