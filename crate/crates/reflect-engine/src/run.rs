use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use bpoly::{FactorProduct, ReductionTrace};
use quiver_core::Quiver;
use serde::Serialize;

use crate::error::ReflectError;
use crate::state::ReflectState;

pub const DEFAULT_MAX_REFLECTIONS: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Sink,
    Source,
    /// Sinks first; sources if the sink run cycles or hits the cap.
    Auto,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Sink => "sink",
            Direction::Source => "source",
            Direction::Auto => "auto",
        })
    }
}

impl FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sink" => Ok(Direction::Sink),
            "source" => Ok(Direction::Source),
            "auto" => Ok(Direction::Auto),
            _ => Err(format!("unknown direction {s:?} (expected sink, source or auto)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReflectRun {
    pub product: FactorProduct,
    pub trace: ReductionTrace,
    /// The direction that succeeded (never `Auto`).
    pub direction: Direction,
    pub reflections: usize,
}

type StateKey = (Vec<(usize, usize)>, Vec<String>, Vec<i64>, Vec<Vec<i64>>);

fn key(s: &ReflectState) -> StateKey {
    (
        s.quiver.arrows().iter().map(|a| (a.tail, a.head)).collect(),
        s.quiver.labels().to_vec(),
        s.beta.clone(),
        s.alphas.clone(),
    )
}

/// Whole Coxeter passes along the admissible sink order until the weights vanish.
fn run_sinks(
    q: &Quiver,
    beta: &[i64],
    alphas: &[Vec<i64>],
    m: &[i64],
    method: &str,
    cap: usize,
) -> Result<ReflectRun, ReflectError> {
    let mut st = ReflectState::new(q, beta, alphas, m, method)?;
    let mut seen = HashSet::new();
    'outer: loop {
        st.prune()?;
        if st.is_constant() {
            break;
        }
        if !seen.insert(key(&st)) {
            return Err(ReflectError::Stuck(st.reflections));
        }
        let order: Vec<String> =
            st.quiver.admissible_sink_order().iter().map(|&x| st.quiver.label(x).to_string()).collect();
        for label in order {
            st.prune()?;
            if st.is_constant() {
                break 'outer;
            }
            let Some(x) = st.quiver.vertex_index(&label) else { continue };
            if !st.quiver.is_sink(x) {
                continue;
            }
            if st.reflections >= cap {
                return Err(ReflectError::Capped(cap));
            }
            st.castle_step(x)?;
        }
    }
    if !st.accumulator.is_polynomial() {
        return Err(ReflectError::NotPolynomial(st.accumulator.render()));
    }
    Ok(ReflectRun { product: st.accumulator, trace: st.trace, direction: Direction::Sink, reflections: st.reflections })
}

/// The dual run: sinks of the opposite quiver, whose weights are the α* vectors.
fn run_sources(q: &Quiver, beta: &[i64], alphas: &[Vec<i64>], m: &[i64], cap: usize) -> Result<ReflectRun, ReflectError> {
    for a in alphas {
        q.euler_form(a, beta)?;
    }
    let stars: Vec<Vec<i64>> = alphas.iter().map(|a| q.alpha_star_from_sigma(&q.sigma_from_alpha(a))).collect();
    let mut run = run_sinks(&q.opposite(), beta, &stars, m, "reflect (sources, opposite quiver)", cap)?;
    run.direction = Direction::Source;
    Ok(run)
}

/// Computes b_m(s̲) by castling transforms, stopping when every weight vanishes.
pub fn run_reflect(
    q: &Quiver,
    beta: &[i64],
    alphas: &[Vec<i64>],
    m: &[i64],
    direction: Direction,
    max_reflections: usize,
) -> Result<ReflectRun, ReflectError> {
    match direction {
        Direction::Sink => run_sinks(q, beta, alphas, m, "reflect (sinks)", max_reflections),
        Direction::Source => run_sources(q, beta, alphas, m, max_reflections),
        Direction::Auto => match run_sinks(q, beta, alphas, m, "reflect (sinks)", max_reflections) {
            Err(e @ (ReflectError::Capped(_) | ReflectError::Stuck(_))) => {
                run_sources(q, beta, alphas, m, max_reflections).map_err(|_| e)
            }
            other => other,
        },
    }
}
