use bpoly::{bracket, FactorProduct, ReductionTrace, StateSnapshot, StepKind, SymBracket, SymDim, TraceStep};
use quiver_core::{Quiver, QuiverError};

use crate::error::ReflectError;

/// Outcome of one castling step at a sink.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CastleOutcome {
    /// r₂ > 0: the vertex becomes a source.
    Reflected,
    /// r₂ = 0: one determinant factors off and the vertex disappears.
    Separated,
    /// r₂ < 0: no weight lives at the vertex; it is dropped.
    Dropped,
}

/// Current (Q, β, α¹…αˡ) together with the accumulated factor ratio.
#[derive(Clone, Debug, PartialEq)]
pub struct ReflectState {
    pub quiver: Quiver,
    pub beta: Vec<i64>,
    pub alphas: Vec<Vec<i64>>,
    pub m: Vec<i64>,
    /// Signed product: b(input) = accumulator · b(current state).
    pub accumulator: FactorProduct,
    pub trace: ReductionTrace,
    pub reflections: usize,
    sym: Vec<SymDim>,
    relations: Vec<SymDim>,
}

impl ReflectState {
    pub fn new(q: &Quiver, beta: &[i64], alphas: &[Vec<i64>], m: &[i64], method: &str) -> Result<Self, ReflectError> {
        let n = q.n_vertices();
        if beta.len() != n {
            return Err(QuiverError::LengthMismatch { expected: n, found: beta.len() }.into());
        }
        if beta.iter().any(|&b| b < 0) {
            return Err(QuiverError::NegativeDimension.into());
        }
        if alphas.is_empty() {
            return Err(ReflectError::NoWeights);
        }
        if m.len() != alphas.len() || m.iter().any(|&x| x < 0) {
            return Err(ReflectError::BadExponents(m.to_vec()));
        }
        let mut relations = Vec::new();
        for (i, a) in alphas.iter().enumerate() {
            q.euler_form(a, beta)?;
            let s = q.sigma_from_alpha(a);
            let v = Quiver::pair(&s, beta);
            if v != 0 {
                return Err(ReflectError::InvalidWeight { index: i, value: v });
            }
            relations.push(SymDim(s));
        }
        let input = snapshot(q, beta, alphas);
        Ok(ReflectState {
            quiver: q.clone(),
            beta: beta.to_vec(),
            alphas: alphas.to_vec(),
            m: m.to_vec(),
            accumulator: FactorProduct::unit(alphas.len()),
            trace: ReductionTrace::new(method, input),
            reflections: 0,
            sym: (0..n).map(|x| SymDim::symbol(n, x)).collect(),
            relations,
        })
    }

    pub fn sigmas(&self) -> Vec<Vec<i64>> {
        self.alphas.iter().map(|a| self.quiver.sigma_from_alpha(a)).collect()
    }

    /// All weights vanish: the semi-invariants are constants.
    pub fn is_constant(&self) -> bool {
        self.sigmas().iter().all(|s| s.iter().all(|&v| v == 0))
    }

    pub fn snapshot(&self) -> StateSnapshot {
        snapshot(&self.quiver, &self.beta, &self.alphas)
    }

    /// Removes vertex `x`, keeping the weights σⁱ on the remaining vertices.
    fn remove(&mut self, x: usize) {
        let keep: Vec<usize> = (0..self.quiver.n_vertices()).filter(|&v| v != x).collect();
        let sigmas = self.sigmas();
        let q = self.quiver.induced(&keep);
        self.alphas = sigmas
            .iter()
            .map(|s| q.alpha_from_sigma(&keep.iter().map(|&v| s[v]).collect::<Vec<_>>()))
            .collect();
        self.beta = keep.iter().map(|&v| self.beta[v]).collect();
        self.sym = keep.iter().map(|&v| self.sym[v].clone()).collect();
        self.quiver = q;
    }

    fn push(&mut self, kind: StepKind, target: String, factor: FactorProduct, note: String) {
        self.trace.push(TraceStep {
            kind,
            target,
            factor,
            symbolic: vec![],
            divisor: vec![],
            note,
            state: self.snapshot(),
            links: vec![],
            reversible: true,
        });
    }

    fn drop_vertex(&mut self, x: usize, why: &str) {
        let label = self.quiver.label(x).to_string();
        self.remove(x);
        let unit = FactorProduct::unit(self.m.len());
        self.push(StepKind::Drop, label, unit, why.into());
    }

    /// Drops zero-dimensional vertices and isolated vertices without weight.
    pub fn prune(&mut self) -> Result<(), ReflectError> {
        loop {
            let sigmas = self.sigmas();
            let n = self.quiver.n_vertices();
            let Some(x) = (0..n).find(|&x| self.beta[x] == 0 || self.quiver.degree(x) == 0) else {
                return Ok(());
            };
            if self.beta[x] == 0 {
                self.drop_vertex(x, "zero dimension");
            } else if sigmas.iter().any(|s| s[x] != 0) {
                return Err(ReflectError::ZeroSemiInvariant(self.quiver.label(x).to_string()));
            } else {
                self.drop_vertex(x, "isolated, weight 0");
            }
        }
    }

    /// Castling transform at the sink `x`:
    /// b_f · [s]^d_{r₂} = b_{f'} · [s]^d_{r₁} with r₁ = β_x, r₂ = c_x(β)_x, dᵢ = c_x(αⁱ)_x.
    pub fn castle_step(&mut self, x: usize) -> Result<CastleOutcome, ReflectError> {
        let label = self.quiver.label(x).to_string();
        if x >= self.quiver.n_vertices() || !self.quiver.is_sink(x) || self.beta[x] <= 0 {
            return Err(ReflectError::NotSink(label));
        }
        let r1 = self.beta[x];
        let r2 = self.quiver.reflect_vector(x, &self.beta)[x];
        if r2 < 0 {
            if self.sigmas().iter().any(|s| s[x] != 0) {
                return Err(ReflectError::DependsOnDroppedVertex(label));
            }
            self.drop_vertex(x, &format!("r1={r1}, r2={r2} < 0"));
            return Ok(CastleOutcome::Dropped);
        }
        let d: Vec<i64> = self.alphas.iter().map(|a| self.quiver.reflect_vector(x, a)[x]).collect();
        if let Some((i, &deg)) = d.iter().enumerate().find(|(_, &v)| v < 0) {
            return Err(ReflectError::NegativeDegree { vertex: label, weight: i, degree: deg });
        }
        let num = bracket(&d, &self.m, r1, r1)?;
        let factor = if r2 > 0 { num.div(&bracket(&d, &self.m, r2, r2)?)? } else { num };

        let old_sym = self.sym[x].clone();
        let mut new_sym = SymDim::zero(old_sym.0.len()).sub(&old_sym);
        for a in self.quiver.arrows() {
            if a.head == x {
                new_sym = new_sym.add(&self.sym[a.tail]);
            }
        }
        let (q, beta, alphas) = self.quiver.reflect(x, &self.beta, &self.alphas)?;
        self.quiver = q;
        self.beta = beta;
        self.alphas = alphas;
        self.sym[x] = new_sym.clone();
        self.reflections += 1;
        self.accumulator = self.accumulator.mul(&factor)?;

        let outcome = if r2 == 0 {
            self.remove(x);
            CastleOutcome::Separated
        } else {
            CastleOutcome::Reflected
        };
        let sym_bracket = |s: &SymDim| SymBracket { degrees: d.clone(), lo: s.clone(), hi: s.clone() };
        let symbolic = vec![sym_bracket(&old_sym.simplest(&self.relations))];
        let divisor = if r2 > 0 { vec![sym_bracket(&new_sym.simplest(&self.relations))] } else { vec![] };
        let note = format!("r1={r1}, r2={r2}, d={}", bpoly::fmt_vec(&d)) + if r2 == 0 { "; vertex separated" } else { "" };
        self.push(StepKind::Castle, label, factor, note);
        let step = self.trace.steps.last_mut().expect("just pushed");
        step.symbolic = symbolic;
        step.divisor = divisor;
        Ok(outcome)
    }
}

fn snapshot(q: &Quiver, beta: &[i64], alphas: &[Vec<i64>]) -> StateSnapshot {
    StateSnapshot {
        labels: q.labels().to_vec(),
        arrows: q
            .arrows()
            .iter()
            .map(|a| (a.id.clone(), q.label(a.tail).to_string(), q.label(a.head).to_string()))
            .collect(),
        beta: beta.to_vec(),
        alphas: alphas.to_vec(),
    }
}
