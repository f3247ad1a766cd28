use bpoly::{FactorProduct, ReductionTrace, StepKind, TraceStep};

use crate::error::SliceError;
use crate::state::SliceState;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Rule {
    /// α_v = 0: drop arrows out of v, split v along its incoming arrows.
    A,
    /// α*_v = 0: drop arrows into v, split v along its outgoing arrows.
    B,
}

/// Applies support pruning and the simplification rules until none fires.
/// A rule fires at a vertex only when its hypothesis holds for every weight.
pub fn prune_and_simplify(state: &mut SliceState, trace: &mut ReductionTrace) -> Result<(), SliceError> {
    loop {
        if prune(state, trace)? {
            continue;
        }
        if apply_rule(state, trace, Rule::A) {
            continue;
        }
        if apply_rule(state, trace, Rule::B) {
            continue;
        }
        return Ok(());
    }
}

fn unit_step(state: &SliceState, kind: StepKind, target: String, note: String, reversible: bool) -> TraceStep {
    TraceStep {
        kind,
        target,
        factor: FactorProduct::unit(state.n_weights()),
        symbolic: vec![],
        divisor: vec![],
        note,
        state: state.snapshot(),
        links: vec![],
        reversible,
    }
}

fn prune(state: &mut SliceState, trace: &mut ReductionTrace) -> Result<bool, SliceError> {
    let mut drop = Vec::new();
    let mut notes = Vec::new();
    for (i, v) in state.vertices.iter().enumerate() {
        // A weighted endpoint of an arrow must map injectively (1-source) or
        // surjectively (1-sink) wherever f ≠ 0.
        if state.degree(i) == 1 && v.sigma.iter().any(|&s| s != 0) {
            let a = state.arrows.iter().find(|a| a.tail == i || a.head == i).expect("degree 1");
            let other = if a.tail == i { a.head } else { a.tail };
            if v.beta > state.vertices[other].beta {
                return Err(SliceError::ZeroSemiInvariant(v.label.clone()));
            }
        }
        if v.beta == 0 {
            drop.push(i);
            notes.push((v.label.clone(), "zero dimension"));
        } else if state.degree(i) == 0 {
            if v.sigma.iter().any(|&s| s != 0) {
                return Err(SliceError::ZeroSemiInvariant(v.label.clone()));
            }
            drop.push(i);
            notes.push((v.label.clone(), "isolated"));
        }
    }
    if drop.is_empty() {
        return Ok(false);
    }
    state.remove_vertices(&drop);
    for (label, why) in notes {
        trace.push(unit_step(state, StepKind::Prune, label, why.into(), true));
    }
    Ok(true)
}

fn copy_label(state: &SliceState, base: &str, k: usize) -> String {
    let letters = b"abcdefghijklmnopqrstuvwxyz";
    let mut label = format!("{base}{}", letters[k % 26] as char);
    while state.vertices.iter().any(|v| v.label == label) {
        label.push('\'');
    }
    label
}

fn apply_rule(state: &mut SliceState, trace: &mut ReductionTrace, rule: Rule) -> bool {
    let (values, other) = match rule {
        Rule::A => (state.alphas(), None),
        Rule::B => (state.alpha_stars(), Some(state.alphas())),
    };
    let n = state.vertices.len();
    let fires = |v: usize| {
        if values.iter().any(|w| w[v] != 0) {
            return false;
        }
        let (deleted, kept) = match rule {
            Rule::A => (state.arrows.iter().filter(|a| a.tail == v).count(), state.arrows.iter().filter(|a| a.head == v).count()),
            Rule::B => (state.arrows.iter().filter(|a| a.head == v).count(), state.arrows.iter().filter(|a| a.tail == v).count()),
        };
        deleted > 0 || kept > 1
    };
    let Some(v) = (0..n).find(|&v| fires(v)) else { return false };

    let deleted: Vec<String> = state
        .arrows
        .iter()
        .filter(|a| if rule == Rule::A { a.tail == v } else { a.head == v })
        .map(|a| a.id.clone())
        .collect();
    state.arrows.retain(|a| if rule == Rule::A { a.tail != v } else { a.head != v });
    let kept: Vec<usize> = (0..state.arrows.len())
        .filter(|&k| if rule == Rule::A { state.arrows[k].head == v } else { state.arrows[k].tail == v })
        .collect();

    let base = state.vertices[v].label.clone();
    let mut values = values;
    let mut copies = Vec::new();
    if kept.len() > 1 {
        for (c, &k) in kept.iter().enumerate() {
            let label = copy_label(state, &base, c);
            let idx = if c == 0 {
                v
            } else {
                let mut copy = state.vertices[v].clone();
                copy.label.clone_from(&label);
                state.vertices.push(copy);
                for w in values.iter_mut() {
                    w.push(0);
                }
                state.vertices.len() - 1
            };
            if c == 0 {
                state.vertices[v].label.clone_from(&label);
            }
            if rule == Rule::A {
                state.arrows[k].head = idx;
            } else {
                state.arrows[k].tail = idx;
            }
            copies.push(label);
        }
    }
    match rule {
        Rule::A => state.recompute_sigma_from_alpha(&values),
        Rule::B => state.recompute_sigma_from_alpha_star(&values),
    }

    let ambiguous = rule == Rule::B && copies.len() > 1 && other.is_some_and(|al| al.iter().any(|w| w[v] != 0));
    let mut note = String::new();
    if !deleted.is_empty() {
        note.push_str(&format!("deleted {}", deleted.join(",")));
    }
    if !copies.is_empty() {
        if !note.is_empty() {
            note.push_str("; ");
        }
        note.push_str(&format!("split into {}", copies.join(",")));
    }
    let kind = if rule == Rule::A { StepKind::SimplifyA } else { StepKind::SimplifyB };
    trace.push(unit_step(state, kind, base, note, !ambiguous));
    true
}
