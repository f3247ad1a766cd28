use bpoly::{Block, StateSnapshot, SymDim};
use quiver_core::{Arrow, Quiver};

use crate::error::SliceError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceVertex {
    pub label: String,
    pub beta: i64,
    /// σⁱ at this vertex, one entry per weight.
    pub sigma: Vec<i64>,
    /// β as a linear form in the input dimensions, for display.
    pub sym: SymDim,
    /// Coordinates of the input vertices that this vertex's space occupies.
    pub blocks: Vec<Block>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceArrow {
    pub id: String,
    pub tail: usize,
    pub head: usize,
    /// Index of the input arrow this arrow is a component of.
    pub origin: usize,
    /// Slice step that created the arrow (0 for input arrows and their split copies).
    pub generation: usize,
    /// Creation counter; input arrows come first in declared order.
    pub seq: usize,
}

/// Current (Q, β, σ¹…σˡ) of a slice computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceState {
    pub vertices: Vec<SliceVertex>,
    pub arrows: Vec<SliceArrow>,
    pub m: Vec<i64>,
    pub input: StateSnapshot,
    pub(crate) input_ends: Vec<(usize, usize)>,
    /// σⁱ of the input as linear forms; each vanishes on β.
    pub(crate) relations: Vec<SymDim>,
    pub(crate) next_seq: usize,
    pub(crate) steps: usize,
}

impl SliceState {
    /// Checks σⁱ(β) = 0 for every weight α¹…αˡ and sets up the state.
    pub fn new(q: &Quiver, beta: &[i64], alphas: &[Vec<i64>], m: &[i64]) -> Result<Self, SliceError> {
        let n = q.n_vertices();
        if beta.len() != n {
            return Err(SliceError::Quiver(quiver_core::QuiverError::LengthMismatch { expected: n, found: beta.len() }));
        }
        if beta.iter().any(|&b| b < 0) {
            return Err(SliceError::Quiver(quiver_core::QuiverError::NegativeDimension));
        }
        if alphas.is_empty() {
            return Err(SliceError::NoWeights);
        }
        if m.len() != alphas.len() || m.iter().any(|&x| x < 0) {
            return Err(SliceError::BadExponents(m.to_vec()));
        }
        let mut sigmas = Vec::new();
        for (i, a) in alphas.iter().enumerate() {
            q.euler_form(a, beta)?;
            let s = q.sigma_from_alpha(a);
            let v = Quiver::pair(&s, beta);
            if v != 0 {
                return Err(SliceError::InvalidWeight { index: i, value: v });
            }
            sigmas.push(s);
        }
        let vertices = (0..n)
            .map(|x| SliceVertex {
                label: q.label(x).to_string(),
                beta: beta[x],
                sigma: sigmas.iter().map(|s| s[x]).collect(),
                sym: SymDim::symbol(n, x),
                blocks: vec![Block { vertex: x, offset: 0 }],
            })
            .collect();
        let arrows = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, a)| SliceArrow { id: a.id.clone(), tail: a.tail, head: a.head, origin: k, generation: 0, seq: k })
            .collect();
        let input = StateSnapshot {
            labels: q.labels().to_vec(),
            arrows: q
                .arrows()
                .iter()
                .map(|a| (a.id.clone(), q.label(a.tail).to_string(), q.label(a.head).to_string()))
                .collect(),
            beta: beta.to_vec(),
            alphas: alphas.to_vec(),
        };
        let input_ends = q.arrows().iter().map(|a| (a.tail, a.head)).collect();
        let relations = sigmas.iter().map(|s| SymDim(s.clone())).collect();
        Ok(SliceState {
            vertices,
            arrows,
            m: m.to_vec(),
            input,
            input_ends,
            relations,
            next_seq: q.arrows().len(),
            steps: 0,
        })
    }

    pub fn n_weights(&self) -> usize {
        self.m.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn quiver(&self) -> Quiver {
        let labels = self.vertices.iter().map(|v| v.label.clone()).collect();
        let arrows = self.arrows.iter().map(|a| Arrow { id: a.id.clone(), tail: a.tail, head: a.head }).collect();
        Quiver::new(labels, arrows).expect("slice states stay acyclic")
    }

    pub fn beta(&self) -> Vec<i64> {
        self.vertices.iter().map(|v| v.beta).collect()
    }

    pub fn sigma(&self, i: usize) -> Vec<i64> {
        self.vertices.iter().map(|v| v.sigma[i]).collect()
    }

    pub fn alphas(&self) -> Vec<Vec<i64>> {
        let q = self.quiver();
        (0..self.n_weights()).map(|i| q.alpha_from_sigma(&self.sigma(i))).collect()
    }

    pub fn alpha_stars(&self) -> Vec<Vec<i64>> {
        let q = self.quiver();
        (0..self.n_weights()).map(|i| q.alpha_star_from_sigma(&self.sigma(i))).collect()
    }

    /// ⟨αⁱ, αⁱ⟩ on the current quiver, per weight.
    pub fn tits_values(&self) -> Vec<i64> {
        let q = self.quiver();
        self.alphas().iter().map(|a| q.tits_form(a)).collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.arrows.iter().filter(|a| a.tail == v || a.head == v).count()
    }

    pub fn snapshot(&self) -> StateSnapshot {
        StateSnapshot {
            labels: self.vertices.iter().map(|v| v.label.clone()).collect(),
            arrows: self
                .arrows
                .iter()
                .map(|a| (a.id.clone(), self.vertices[a.tail].label.clone(), self.vertices[a.head].label.clone()))
                .collect(),
            beta: self.beta(),
            alphas: self.alphas(),
        }
    }

    /// (tail, head) of input arrow `k`.
    pub fn input_arrow(&self, k: usize) -> (usize, usize) {
        self.input_ends[k]
    }

    pub(crate) fn fresh_seq(&mut self) -> usize {
        self.next_seq += 1;
        self.next_seq - 1
    }

    /// Removes the vertices in `drop` together with their arrows, renumbering the rest.
    pub(crate) fn remove_vertices(&mut self, drop: &[usize]) {
        let mut map = vec![usize::MAX; self.vertices.len()];
        let mut kept = Vec::new();
        for (i, v) in self.vertices.drain(..).enumerate() {
            if !drop.contains(&i) {
                map[i] = kept.len();
                kept.push(v);
            }
        }
        self.vertices = kept;
        self.arrows.retain(|a| map[a.tail] != usize::MAX && map[a.head] != usize::MAX);
        for a in &mut self.arrows {
            a.tail = map[a.tail];
            a.head = map[a.head];
        }
    }

    pub(crate) fn recompute_sigma_from_alpha(&mut self, alphas: &[Vec<i64>]) {
        let q = self.quiver();
        for (i, a) in alphas.iter().enumerate() {
            let s = q.sigma_from_alpha(a);
            for (v, sv) in self.vertices.iter_mut().zip(s) {
                v.sigma[i] = sv;
            }
        }
    }

    pub(crate) fn recompute_sigma_from_alpha_star(&mut self, stars: &[Vec<i64>]) {
        let q = self.quiver();
        for (i, a) in stars.iter().enumerate() {
            let s = q.sigma_from_alpha_star(a);
            for (v, sv) in self.vertices.iter_mut().zip(s) {
                v.sigma[i] = sv;
            }
        }
    }
}
