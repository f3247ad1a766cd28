use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::QuiverError;
use crate::quiver::{DimVector, Quiver};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum EuclideanType {
    /// Ã_n: a cycle on n+1 vertices (n = 1 is the Kronecker quiver).
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum QuiverType {
    Dynkin(DynkinType),
    Euclidean(EuclideanType),
    Other,
}

impl DynkinType {
    pub fn rank(self) -> usize {
        match self {
            DynkinType::A(n) | DynkinType::D(n) => n,
            DynkinType::E6 => 6,
            DynkinType::E7 => 7,
            DynkinType::E8 => 8,
        }
    }

    pub fn coxeter_number(self) -> u32 {
        match self {
            DynkinType::A(n) => n as u32 + 1,
            DynkinType::D(n) => 2 * n as u32 - 2,
            DynkinType::E6 => 12,
            DynkinType::E7 => 18,
            DynkinType::E8 => 30,
        }
    }

    pub fn root_count(self) -> usize {
        match self {
            DynkinType::A(n) => n * (n + 1) / 2,
            DynkinType::D(n) => n * (n - 1),
            DynkinType::E6 => 36,
            DynkinType::E7 => 63,
            DynkinType::E8 => 120,
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E6 => write!(f, "E6"),
            DynkinType::E7 => write!(f, "E7"),
            DynkinType::E8 => write!(f, "E8"),
        }
    }
}

impl fmt::Display for QuiverType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuiverType::Dynkin(t) => write!(f, "Dynkin {t}"),
            QuiverType::Euclidean(t) => {
                let s = match t {
                    EuclideanType::A(n) => format!("A{n}"),
                    EuclideanType::D(n) => format!("D{n}"),
                    EuclideanType::E6 => "E6".into(),
                    EuclideanType::E7 => "E7".into(),
                    EuclideanType::E8 => "E8".into(),
                };
                write!(f, "Euclidean ~{s}")
            }
            QuiverType::Other => write!(f, "other (wild)"),
        }
    }
}

/// Classifies a connected quiver by the shape of its underlying graph.
pub fn classify(q: &Quiver) -> QuiverType {
    let n = q.n_vertices();
    if n == 0 {
        return QuiverType::Other;
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for a in q.arrows() {
        adj[a.tail].push(a.head);
        adj[a.head].push(a.tail);
    }
    let edges = q.arrows().len();
    if edges == n {
        // One cycle. A genuine cycle of length ≥ 2 through every vertex is Ã_{n−1}.
        if adj.iter().all(|nb| nb.len() == 2) {
            return QuiverType::Euclidean(EuclideanType::A(n - 1));
        }
        return QuiverType::Other;
    }
    if edges + 1 != n {
        return QuiverType::Other;
    }
    // A tree (connectedness assumed).
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    if branch.is_empty() {
        return QuiverType::Dynkin(DynkinType::A(n));
    }
    let max_deg = adj.iter().map(Vec::len).max().unwrap();
    if max_deg > 4 {
        return QuiverType::Other;
    }
    if max_deg == 4 {
        if n == 5 {
            return QuiverType::Euclidean(EuclideanType::D(4));
        }
        return QuiverType::Other;
    }
    if branch.len() == 2 {
        // ~D_n: two branch points, each carrying two leaves.
        let ok = branch.iter().all(|&b| adj[b].iter().filter(|&&w| adj[w].len() == 1).count() == 2);
        if ok {
            return QuiverType::Euclidean(EuclideanType::D(n - 1));
        }
        return QuiverType::Other;
    }
    if branch.len() > 2 {
        return QuiverType::Other;
    }
    let b = branch[0];
    let mut arms: Vec<usize> = adj[b]
        .iter()
        .map(|&start| {
            let (mut prev, mut cur, mut len) = (b, start, 1);
            while adj[cur].len() == 2 {
                let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                prev = cur;
                cur = next;
                len += 1;
            }
            len
        })
        .collect();
    arms.sort_unstable();
    match (arms[0], arms[1], arms[2]) {
        (1, 1, k) => QuiverType::Dynkin(DynkinType::D(k + 3)),
        (1, 2, 2) => QuiverType::Dynkin(DynkinType::E6),
        (1, 2, 3) => QuiverType::Dynkin(DynkinType::E7),
        (1, 2, 4) => QuiverType::Dynkin(DynkinType::E8),
        (2, 2, 2) => QuiverType::Euclidean(EuclideanType::E6),
        (1, 3, 3) => QuiverType::Euclidean(EuclideanType::E7),
        (1, 2, 5) => QuiverType::Euclidean(EuclideanType::E8),
        _ => QuiverType::Other,
    }
}

/// Classification of each connected component, in component order.
pub fn classify_components(q: &Quiver) -> Vec<(Vec<usize>, QuiverType)> {
    q.components().into_iter().map(|c| {
        let t = classify(&q.induced(&c));
        (c, t)
    }).collect()
}

/// Dynkin types of all components, or `None` if some component is not Dynkin.
pub fn dynkin_types(q: &Quiver) -> Option<Vec<DynkinType>> {
    classify_components(q)
        .into_iter()
        .map(|(_, t)| match t {
            QuiverType::Dynkin(d) => Some(d),
            _ => None,
        })
        .collect()
}

/// Positive roots of a Dynkin quiver (every component Dynkin), sorted by
/// height and then lexicographically.
pub fn positive_roots(q: &Quiver) -> Result<Vec<DimVector>, QuiverError> {
    if dynkin_types(q).is_none() {
        return Err(QuiverError::NotDynkin);
    }
    let n = q.n_vertices();
    let mut seen: BTreeSet<DimVector> = BTreeSet::new();
    let mut queue: VecDeque<DimVector> = VecDeque::new();
    for x in 0..n {
        let e = crate::quiver::unit(n, x);
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(r) = queue.pop_front() {
        for x in 0..n {
            let mut c = r.clone();
            c[x] += 1;
            if !seen.contains(&c) && q.tits_form(&c) == 1 {
                seen.insert(c.clone());
                queue.push_back(c);
            }
        }
    }
    let mut roots: Vec<DimVector> = seen.into_iter().collect();
    roots.sort_by(|a, b| a.iter().sum::<i64>().cmp(&b.iter().sum::<i64>()).then_with(|| a.cmp(b)));
    Ok(roots)
}

/// Coxeter number of a connected Dynkin quiver.
pub fn coxeter_number(q: &Quiver) -> Result<u32, QuiverError> {
    match classify(q) {
        QuiverType::Dynkin(t) => Ok(t.coxeter_number()),
        _ => Err(QuiverError::NotDynkin),
    }
}
