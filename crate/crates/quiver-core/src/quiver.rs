use std::collections::{BTreeSet, BinaryHeap, HashSet};
use std::cmp::Reverse;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::QuiverError;
use crate::matrix::IntMatrix;

/// Integer vector indexed by the vertices of a quiver (β, α, α*, roots).
pub type DimVector = Vec<i64>;
/// Character σ viewed as an integer function on vertices.
pub type Weight = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

/// Finite quiver without oriented cycles. Vertices are addressed by index;
/// `labels` holds the user-facing ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    labels: Vec<String>,
    arrows: Vec<Arrow>,
    topo: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    DuplicateVertex(String),
    DuplicateArrow(String),
    UnknownEndpoint { arrow: String, index: usize },
    Loop { arrow: String, vertex: String },
    Cycle(Vec<String>),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateVertex(v) => write!(f, "duplicate vertex id {v}"),
            Violation::DuplicateArrow(a) => write!(f, "duplicate arrow id {a}"),
            Violation::UnknownEndpoint { arrow, index } => {
                write!(f, "arrow {arrow} refers to unknown vertex #{index}")
            }
            Violation::Loop { arrow, vertex } => write!(f, "loop {arrow} at vertex {vertex}"),
            Violation::Cycle(vs) => write!(f, "oriented cycle through {{{}}}", vs.join(",")),
        }
    }
}

/// Checks the quiver axioms. On success returns the topological order that
/// always picks the smallest available vertex index.
pub fn validate_quiver(labels: &[String], arrows: &[Arrow]) -> Result<Vec<usize>, Vec<Violation>> {
    let n = labels.len();
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            out.push(Violation::DuplicateVertex(l.clone()));
        }
    }
    let mut seen = HashSet::new();
    for a in arrows {
        if !seen.insert(a.id.as_str()) {
            out.push(Violation::DuplicateArrow(a.id.clone()));
        }
        for &e in &[a.tail, a.head] {
            if e >= n {
                out.push(Violation::UnknownEndpoint { arrow: a.id.clone(), index: e });
            }
        }
        if a.tail == a.head && a.tail < n {
            out.push(Violation::Loop { arrow: a.id.clone(), vertex: labels[a.tail].clone() });
        }
    }
    if !out.is_empty() {
        return Err(out);
    }
    let mut indeg = vec![0usize; n];
    for a in arrows {
        indeg[a.head] += 1;
    }
    let mut heap: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(v)) = heap.pop() {
        order.push(v);
        for a in arrows.iter().filter(|a| a.tail == v) {
            indeg[a.head] -= 1;
            if indeg[a.head] == 0 {
                heap.push(Reverse(a.head));
            }
        }
    }
    if order.len() < n {
        let placed: HashSet<usize> = order.iter().copied().collect();
        let rest: Vec<usize> = (0..n).filter(|v| !placed.contains(v)).collect();
        out.push(Violation::Cycle(find_cycle(&rest, arrows).iter().map(|&v| labels[v].clone()).collect()));
        return Err(out);
    }
    Ok(order)
}

// Walks backwards along incoming arrows inside the unsorted remainder until a
// vertex repeats; every vertex left over by Kahn's algorithm has such an arrow.
fn find_cycle(rest: &[usize], arrows: &[Arrow]) -> Vec<usize> {
    let inside: HashSet<usize> = rest.iter().copied().collect();
    let mut path = vec![rest[0]];
    loop {
        let v = *path.last().unwrap();
        let prev = arrows
            .iter()
            .find(|a| a.head == v && inside.contains(&a.tail))
            .map(|a| a.tail)
            .expect("remainder vertex without incoming arrow");
        if let Some(pos) = path.iter().position(|&u| u == prev) {
            let mut cyc: Vec<usize> = path[pos..].to_vec();
            cyc.reverse();
            let set: BTreeSet<usize> = cyc.iter().copied().collect();
            return set.into_iter().collect();
        }
        path.push(prev);
    }
}

impl Quiver {
    pub fn new(labels: Vec<String>, arrows: Vec<Arrow>) -> Result<Quiver, QuiverError> {
        let topo = validate_quiver(&labels, &arrows).map_err(QuiverError::Invalid)?;
        Ok(Quiver { labels, arrows, topo })
    }

    /// Vertices labelled `1..=n`, arrows `a1, a2, …` from 0-based `(tail, head)` pairs.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Quiver, QuiverError> {
        let labels = (1..=n).map(|i| i.to_string()).collect();
        let arrows = edges
            .iter()
            .enumerate()
            .map(|(i, &(t, h))| Arrow { id: format!("a{}", i + 1), tail: t, head: h })
            .collect();
        Quiver::new(labels, arrows)
    }

    pub fn n_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn is_sink(&self, v: usize) -> bool {
        !self.arrows.iter().any(|a| a.tail == v)
    }

    pub fn is_source(&self, v: usize) -> bool {
        !self.arrows.iter().any(|a| a.head == v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.arrows.iter().filter(|a| a.tail == v || a.head == v).count()
    }

    /// Number of arrows joining `x` and `y` in either direction.
    pub fn edge_count(&self, x: usize, y: usize) -> usize {
        self.arrows
            .iter()
            .filter(|a| (a.tail == x && a.head == y) || (a.tail == y && a.head == x))
            .count()
    }

    pub fn opposite(&self) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow { id: a.id.clone(), tail: a.head, head: a.tail })
            .collect();
        Quiver::new(self.labels.clone(), arrows).expect("opposite of an acyclic quiver is acyclic")
    }

    /// Full subquiver on `keep` (in the given order), with index map old -> new.
    pub fn induced(&self, keep: &[usize]) -> Quiver {
        let mut map = vec![usize::MAX; self.n_vertices()];
        for (i, &v) in keep.iter().enumerate() {
            map[v] = i;
        }
        let labels = keep.iter().map(|&v| self.labels[v].clone()).collect();
        let arrows = self
            .arrows
            .iter()
            .filter(|a| map[a.tail] != usize::MAX && map[a.head] != usize::MAX)
            .map(|a| Arrow { id: a.id.clone(), tail: map[a.tail], head: map[a.head] })
            .collect();
        Quiver::new(labels, arrows).expect("subquiver of an acyclic quiver is acyclic")
    }

    /// Connected components of the underlying graph, each sorted ascending.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n_vertices();
        let mut comp = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let c = out.len();
            let mut stack = vec![s];
            comp[s] = c;
            let mut members = vec![];
            while let Some(v) = stack.pop() {
                members.push(v);
                for a in &self.arrows {
                    let w = if a.tail == v {
                        a.head
                    } else if a.head == v {
                        a.tail
                    } else {
                        continue;
                    };
                    if comp[w] == usize::MAX {
                        comp[w] = c;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    fn check_len(&self, v: &[i64]) -> Result<(), QuiverError> {
        if v.len() != self.n_vertices() {
            return Err(QuiverError::LengthMismatch { expected: self.n_vertices(), found: v.len() });
        }
        Ok(())
    }

    /// E = I − A with A_{xy} the number of arrows x → y.
    pub fn euler_matrix(&self) -> IntMatrix {
        let n = self.n_vertices();
        let mut e = IntMatrix::identity(n);
        for a in &self.arrows {
            e[(a.tail, a.head)] -= 1;
        }
        e
    }

    /// ⟨α,β⟩ = Σ α_xβ_x − Σ_a α_{ta}β_{ha}.
    pub fn euler_form(&self, alpha: &[i64], beta: &[i64]) -> Result<i64, QuiverError> {
        self.check_len(alpha)?;
        self.check_len(beta)?;
        Ok(self.euler_unchecked(alpha, beta))
    }

    pub(crate) fn euler_unchecked(&self, alpha: &[i64], beta: &[i64]) -> i64 {
        let diag: i64 = alpha.iter().zip(beta).map(|(a, b)| a * b).sum();
        diag - self.arrows.iter().map(|a| alpha[a.tail] * beta[a.head]).sum::<i64>()
    }

    /// σ(x) = ⟨α, ε_x⟩.
    pub fn sigma_from_alpha(&self, alpha: &[i64]) -> Weight {
        let mut s = alpha.to_vec();
        for a in &self.arrows {
            s[a.head] -= alpha[a.tail];
        }
        s
    }

    pub fn alpha_from_sigma(&self, sigma: &[i64]) -> DimVector {
        let mut alpha = vec![0; self.n_vertices()];
        for &x in &self.topo {
            alpha[x] = sigma[x]
                + self.arrows.iter().filter(|a| a.head == x).map(|a| alpha[a.tail]).sum::<i64>();
        }
        alpha
    }

    /// α* with σ = −⟨·, α*⟩.
    pub fn alpha_star_from_sigma(&self, sigma: &[i64]) -> DimVector {
        let mut star = vec![0; self.n_vertices()];
        for &x in self.topo.iter().rev() {
            star[x] = -sigma[x]
                + self.arrows.iter().filter(|a| a.tail == x).map(|a| star[a.head]).sum::<i64>();
        }
        star
    }

    pub fn sigma_from_alpha_star(&self, star: &[i64]) -> Weight {
        let mut s: Vec<i64> = star.iter().map(|v| -v).collect();
        for a in &self.arrows {
            s[a.tail] += star[a.head];
        }
        s
    }

    pub fn convert_weight(&self, given: &WeightSpec) -> Result<WeightForms, QuiverError> {
        let sigma = match given {
            WeightSpec::Alpha(v) => {
                self.check_len(v)?;
                self.sigma_from_alpha(v)
            }
            WeightSpec::AlphaStar(v) => {
                self.check_len(v)?;
                self.sigma_from_alpha_star(v)
            }
            WeightSpec::Sigma(v) => {
                self.check_len(v)?;
                v.clone()
            }
        };
        Ok(WeightForms {
            alpha: self.alpha_from_sigma(&sigma),
            alpha_star: self.alpha_star_from_sigma(&sigma),
            sigma,
        })
    }

    /// σ(β) = Σ σ(x)β_x.
    pub fn pair(sigma: &[i64], beta: &[i64]) -> i64 {
        sigma.iter().zip(beta).map(|(s, b)| s * b).sum()
    }

    /// c_x on a vector: −v_x + Σ over edges x-z of v_z; other entries unchanged.
    pub fn reflect_vector(&self, x: usize, v: &[i64]) -> DimVector {
        let mut out = v.to_vec();
        let mut acc = -v[x];
        for a in &self.arrows {
            if a.tail == x {
                acc += v[a.head];
            } else if a.head == x {
                acc += v[a.tail];
            }
        }
        out[x] = acc;
        out
    }

    /// Reverses every arrow at `x`.
    pub fn reflect_quiver(&self, x: usize) -> Result<Quiver, QuiverError> {
        if !self.is_sink(x) && !self.is_source(x) {
            return Err(QuiverError::NotSinkOrSource(self.labels[x].clone()));
        }
        let arrows = self
            .arrows
            .iter()
            .map(|a| {
                if a.tail == x || a.head == x {
                    Arrow { id: a.id.clone(), tail: a.head, head: a.tail }
                } else {
                    a.clone()
                }
            })
            .collect();
        Quiver::new(self.labels.clone(), arrows)
    }

    /// Reflection at a sink or source: returns (c_xQ, c_x(β), [c_x(αⁱ)]).
    pub fn reflect(
        &self,
        x: usize,
        beta: &[i64],
        alphas: &[DimVector],
    ) -> Result<(Quiver, DimVector, Vec<DimVector>), QuiverError> {
        self.check_len(beta)?;
        for a in alphas {
            self.check_len(a)?;
        }
        let q = self.reflect_quiver(x)?;
        Ok((
            q,
            self.reflect_vector(x, beta),
            alphas.iter().map(|a| self.reflect_vector(x, a)).collect(),
        ))
    }

    /// Reverse topological order: each vertex is a sink once its successors
    /// have been reflected.
    pub fn admissible_sink_order(&self) -> Vec<usize> {
        self.topo.iter().rev().copied().collect()
    }

    /// c = −E⁻¹Eᵀ.
    pub fn coxeter_matrix(&self) -> IntMatrix {
        let e = self.euler_matrix();
        let inv = e.inverse().expect("Euler matrix is unimodular");
        -(&inv * &e.transpose())
    }

    /// The composite c_{i_k}···c_{i_1} of single reflections along `order`.
    pub fn coxeter_from_reflections(&self, order: &[usize]) -> Result<IntMatrix, QuiverError> {
        let n = self.n_vertices();
        let mut q = self.clone();
        let mut m = IntMatrix::identity(n);
        for &x in order {
            if !q.is_sink(x) {
                return Err(QuiverError::NotSinkOrSource(q.labels[x].clone()));
            }
            let mut r = IntMatrix::identity(n);
            r[(x, x)] = -1;
            for a in q.arrows() {
                if a.head == x {
                    r[(x, a.tail)] += 1;
                }
            }
            m = &r * &m;
            q = q.reflect_quiver(x)?;
        }
        Ok(m)
    }

    /// Tits form q(v) = ⟨v,v⟩.
    pub fn tits_form(&self, v: &[i64]) -> i64 {
        self.euler_unchecked(v, v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightSpec {
    Alpha(DimVector),
    AlphaStar(DimVector),
    Sigma(Weight),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightForms {
    pub alpha: DimVector,
    pub sigma: Weight,
    pub alpha_star: DimVector,
}

/// Unit vector ε_x.
pub fn unit(n: usize, x: usize) -> DimVector {
    let mut v = vec![0; n];
    v[x] = 1;
    v
}
