use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::factor::FactorProduct;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    Slice,
    SimplifyA,
    SimplifyB,
    Prune,
    Castle,
    Drop,
}

impl StepKind {
    pub fn tag(self) -> &'static str {
        match self {
            StepKind::Slice => "slice",
            StepKind::SimplifyA => "simplify-a",
            StepKind::SimplifyB => "simplify-b'",
            StepKind::Prune => "prune",
            StepKind::Castle => "castle",
            StepKind::Drop => "drop",
        }
    }
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Integer linear form in the dimension symbols β_x of the input quiver.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SymDim(pub Vec<i64>);

impl SymDim {
    pub fn symbol(n: usize, x: usize) -> Self {
        let mut v = vec![0; n];
        v[x] = 1;
        SymDim(v)
    }

    pub fn zero(n: usize) -> Self {
        SymDim(vec![0; n])
    }

    pub fn add(&self, other: &SymDim) -> SymDim {
        SymDim(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &SymDim) -> SymDim {
        SymDim(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// The representative of `self` modulo integer combinations of `relations`
    /// (each known to vanish on β) with the fewest terms, then the smallest
    /// coefficients. Multiples in -2..=2 of each relation are tried.
    pub fn simplest(&self, relations: &[SymDim]) -> SymDim {
        let cost = |v: &SymDim| (v.0.iter().filter(|&&c| c != 0).count(), v.0.iter().map(|c| c.abs()).sum::<i64>());
        let mut best = self.clone();
        let mut ks = vec![-2i64; relations.len()];
        if relations.is_empty() || relations.len() > 4 {
            return best;
        }
        loop {
            let mut cand = self.clone();
            for (k, r) in ks.iter().zip(relations) {
                for (c, x) in cand.0.iter_mut().zip(&r.0) {
                    *c += k * x;
                }
            }
            if cost(&cand) < cost(&best) {
                best = cand;
            }
            let Some(i) = ks.iter().position(|&k| k < 2) else { break };
            ks[i] += 1;
            for k in &mut ks[..i] {
                *k = -2;
            }
        }
        best
    }

    pub fn eval(&self, beta: &[i64]) -> i64 {
        self.0.iter().zip(beta).map(|(c, b)| c * b).sum()
    }

    /// Positive terms first, then negative ones, each in vertex order:
    /// `β1+β3-β5`.
    pub fn render(&self, labels: &[String]) -> String {
        let mut s = String::new();
        let term = |s: &mut String, c: i64, l: &str| {
            let a = c.abs();
            if a != 1 {
                let _ = write!(s, "{a}");
            }
            let _ = write!(s, "β{l}");
        };
        for (c, l) in self.0.iter().zip(labels).filter(|(c, _)| **c > 0) {
            if !s.is_empty() {
                s.push('+');
            }
            term(&mut s, *c, l);
        }
        for (c, l) in self.0.iter().zip(labels).filter(|(c, _)| **c < 0) {
            s.push('-');
            term(&mut s, *c, l);
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

/// Display form of a bracket `[s]^{d}_{a,b}` with symbolic range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymBracket {
    pub degrees: Vec<i64>,
    pub lo: SymDim,
    pub hi: SymDim,
}

impl SymBracket {
    pub fn render(&self, labels: &[String]) -> String {
        let mut s = String::from("[s]");
        let nonzero: Vec<i64> = self.degrees.clone();
        let unit = nonzero.len() == 1 && nonzero[0] == 1;
        if !unit {
            let d: Vec<String> = nonzero.iter().map(i64::to_string).collect();
            let _ = write!(s, "^{{{}}}", d.join(","));
        }
        if self.lo == self.hi {
            let _ = write!(s, "_{{{}}}", self.hi.render(labels));
        } else {
            let _ = write!(s, "_{{{},{}}}", self.lo.render(labels), self.hi.render(labels));
        }
        s
    }
}

/// Plain-data copy of a quiver state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StateSnapshot {
    pub labels: Vec<String>,
    /// (id, tail label, head label)
    pub arrows: Vec<(String, String, String)>,
    pub beta: Vec<i64>,
    pub alphas: Vec<Vec<i64>>,
}

impl StateSnapshot {
    pub fn render(&self) -> String {
        let arrows: Vec<String> = self.arrows.iter().map(|(id, t, h)| format!("{id}:{t}->{h}")).collect();
        let alphas: Vec<String> = self.alphas.iter().map(|a| fmt_vec(a)).collect();
        format!(
            "vertices [{}] arrows [{}] beta {} alpha {}",
            self.labels.join(","),
            arrows.join(" "),
            fmt_vec(&self.beta),
            alphas.join(" ")
        )
    }
}

pub fn fmt_vec(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

/// A run of coordinates `offset..offset+size` of the space at an input vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Block {
    pub vertex: usize,
    pub offset: usize,
}

/// Identity map of rank `size` placed on an input arrow between two
/// coordinate blocks; produced by slice steps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockLink {
    pub arrow: usize,
    pub tail: Block,
    pub head: Block,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceStep {
    pub kind: StepKind,
    /// Arrow id or vertex label the step acts on.
    pub target: String,
    pub factor: FactorProduct,
    pub symbolic: Vec<SymBracket>,
    /// Brackets the factor is divided by (castling steps).
    pub divisor: Vec<SymBracket>,
    pub note: String,
    pub state: StateSnapshot,
    pub links: Vec<BlockLink>,
    /// False for steps that locally semi-simple reconstruction cannot reverse.
    pub reversible: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReductionTrace {
    pub method: String,
    pub input: StateSnapshot,
    pub steps: Vec<TraceStep>,
}

impl ReductionTrace {
    pub fn new(method: &str, input: StateSnapshot) -> Self {
        ReductionTrace { method: method.into(), input, steps: Vec::new() }
    }

    pub fn push(&mut self, step: TraceStep) {
        self.steps.push(step);
    }

    /// Product of all step factors.
    pub fn product(&self, nvars: usize) -> FactorProduct {
        self.steps
            .iter()
            .fold(FactorProduct::unit(nvars), |acc, s| acc.mul(&s.factor).expect("trace factors share arity"))
    }

    /// Symbolic brackets of the factor-bearing steps, in order.
    pub fn symbolic_sequence(&self) -> Vec<String> {
        self.steps
            .iter()
            .flat_map(|s| s.symbolic.iter().map(|b| b.render(&self.input.labels)))
            .collect()
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} trace, start: {}", self.method, self.input.render());
        for (i, s) in self.steps.iter().enumerate() {
            let sym: Vec<String> = s.symbolic.iter().map(|b| b.render(&self.input.labels)).collect();
            let _ = write!(out, "  {:>3}. {:<12} {:<10}", i + 1, s.kind.tag(), s.target);
            if !sym.is_empty() {
                let _ = write!(out, " {}", sym.join(" * "));
            }
            let div: Vec<String> = s.divisor.iter().map(|b| b.render(&self.input.labels)).collect();
            if !div.is_empty() {
                let _ = write!(out, " / {}", div.join(" * "));
            }
            if !s.factor.is_unit() {
                let _ = write!(out, " = {}", s.factor);
            }
            if !s.note.is_empty() {
                let _ = write!(out, "  [{}]", s.note);
            }
            out.push('\n');
            let _ = writeln!(out, "         {}", s.state.render());
        }
        out
    }
}

impl fmt::Display for ReductionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_text())
    }
}
