use std::fmt::Write as _;

use quiver_core::{classify, Decomposition, DimVector, DynkinType, Quiver, QuiverType};
use serde::Serialize;

use crate::error::DecompError;
use crate::generic::{generic_decomposition, has_hom, hom_order};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowClass {
    /// Zero at the branch vertex; passes through unchanged.
    Zero,
    /// Above the top line.
    Second,
    /// Below the top line.
    First,
    /// Opened by a ∘ beyond the first-class rows.
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramRow {
    pub class: RowClass,
    pub circle: bool,
    /// Interval summands of the A_{n−1} part in this row, as full dimension vectors.
    pub parts: Vec<DimVector>,
}

impl DiagramRow {
    pub fn dim(&self, n: usize, extra: usize) -> DimVector {
        let mut v = vec![0; n];
        for p in &self.parts {
            for (a, b) in v.iter_mut().zip(p) {
                *a += b;
            }
        }
        if self.circle {
            v[extra] += 1;
        }
        v
    }
}

/// The diagram state after moving second-class rows onto the ∘ rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DnDiagram {
    /// Vertices in the order 1, 2, …, n−1 of the chain, then n.
    pub order: Vec<usize>,
    pub labels: Vec<String>,
    pub rows: Vec<DiagramRow>,
    /// The top line sits above `rows[top_line]`, the bottom line above `rows[bottom_line]`.
    pub top_line: usize,
    pub bottom_line: usize,
    /// The arrow 2–n pointed n → 2 and the opposite quiver was used.
    pub opposite: bool,
}

impl DnDiagram {
    /// Bullet counts per chain vertex, summed over rows.
    pub fn column_sums(&self) -> Vec<i64> {
        let chain = &self.order[..self.order.len() - 1];
        chain.iter().map(|&v| self.rows.iter().flat_map(|r| &r.parts).map(|p| p[v]).sum()).collect()
    }

    pub fn circles(&self) -> usize {
        self.rows.iter().filter(|r| r.circle).count()
    }

    pub fn render(&self) -> String {
        let chain = &self.order[..self.order.len() - 1];
        let width = chain.iter().map(|&v| self.labels[v].chars().count()).max().unwrap_or(1).max(3) + 1;
        let mut out = String::new();
        let mut header = String::from("  ");
        for &v in chain {
            write!(header, "{:<width$}", self.labels[v]).unwrap();
        }
        out.push_str(header.trim_end());
        out.push('\n');
        let line = format!("{}\n", "─".repeat(2 + width * chain.len()));
        for (i, row) in self.rows.iter().enumerate() {
            if i == self.top_line {
                out.push_str(&line);
            }
            if i == self.bottom_line {
                out.push_str(&line);
            }
            let mut s = String::from(if row.circle { "∘ " } else { "  " });
            for &v in chain {
                let k: i64 = row.parts.iter().map(|p| p[v]).sum();
                let cell = "•".repeat(k as usize);
                write!(s, "{cell}{}", " ".repeat(width.saturating_sub(k as usize))).unwrap();
            }
            out.push_str(s.trim_end());
            out.push('\n');
        }
        if self.bottom_line >= self.rows.len() {
            out.push_str(&line);
            if self.top_line >= self.rows.len() {
                out.push_str(&line);
            }
        }
        out
    }
}

/// Vertices of a D_n quiver in the order 1, 2, …, n−1, n with n a leaf at the
/// branch vertex 2, and whether the opposite quiver is needed for 2 → n.
fn dn_labelling(q: &Quiver) -> Result<(Vec<usize>, bool), DecompError> {
    let n = q.n_vertices();
    if !matches!(classify(q), QuiverType::Dynkin(DynkinType::D(_))) {
        return Err(DecompError::NotTypeD);
    }
    let mut adj = vec![Vec::new(); n];
    for a in q.arrows() {
        adj[a.tail].push(a.head);
        adj[a.head].push(a.tail);
    }
    let b = (0..n).find(|&v| adj[v].len() == 3).ok_or(DecompError::NotTypeD)?;
    let mut leaves: Vec<usize> = adj[b].iter().copied().filter(|&w| adj[w].len() == 1).collect();
    leaves.sort_unstable();
    // Prefer the last-numbered leaf for n, as in the usual labelling.
    let out_leaf = leaves.iter().rev().copied().find(|&w| q.arrows().iter().any(|a| a.tail == b && a.head == w));
    let (vn, opposite) = match out_leaf {
        Some(w) => (w, false),
        None => (*leaves.last().expect("leaves at the branch vertex"), true),
    };
    let v1 = *leaves.iter().find(|&&w| w != vn).expect("two leaves at the branch vertex");
    let mut order = vec![v1, b];
    let (mut prev, mut cur) = (b, adj[b].iter().copied().find(|&w| w != v1 && w != vn));
    while let Some(c) = cur {
        order.push(c);
        let next = adj[c].iter().copied().find(|&w| w != prev);
        prev = c;
        cur = next;
    }
    order.push(vn);
    debug_assert_eq!(order.len(), n);
    Ok((order, opposite))
}

/// Canonical decomposition of a D_n dimension vector by the diagram rule,
/// cross-checked against [`generic_decomposition`].
pub fn dn_canonical(q: &Quiver, beta: &[i64], seed: u64) -> Result<(Decomposition, DnDiagram), DecompError> {
    let n = q.n_vertices();
    if beta.len() != n {
        return Err(quiver_core::QuiverError::LengthMismatch { expected: n, found: beta.len() }.into());
    }
    let (order, opposite) = dn_labelling(q)?;
    let work = if opposite { q.opposite() } else { q.clone() };
    let (v1, v2, vn) = (order[0], order[1], order[n - 1]);
    let chain = &order[..n - 1];

    let sub = work.induced(chain);
    let sub_beta: Vec<i64> = chain.iter().map(|&v| beta[v]).collect();
    let lift = |r: &DimVector| {
        let mut v = vec![0; n];
        for (i, &x) in chain.iter().enumerate() {
            v[x] = r[i];
        }
        v
    };
    let a_dec = generic_decomposition(&sub, &sub_beta, seed)?;
    let roots: Vec<DimVector> = a_dec.parts.iter().map(|(r, _)| lift(r)).collect();
    let order_idx = hom_order(&work, &roots, seed)?;

    // With 1 → 2 no interval through 1 maps to one avoiding 1, so those rows
    // lie below the line; with 2 → 1 the roles swap.
    let one_into_two = work.arrows().iter().any(|a| a.tail == v1 && a.head == v2);
    let mut zero_rows = Vec::new();
    let mut first = Vec::new();
    let mut second = Vec::new();
    for &i in &order_idx {
        let (r, k) = (&roots[i], a_dec.parts[i].1);
        let target = if r[v2] == 0 {
            &mut zero_rows
        } else if (r[v1] == 1) == one_into_two {
            &mut first
        } else {
            &mut second
        };
        target.extend(std::iter::repeat_n(r.clone(), k));
    }

    let circles = beta[vn] as usize;
    let mut rows: Vec<DiagramRow> = zero_rows.iter().map(|r| DiagramRow { class: RowClass::Zero, circle: false, parts: vec![r.clone()] }).collect();
    let mut region: Vec<DiagramRow> = (0..circles)
        .map(|i| match first.get(i) {
            Some(r) => DiagramRow { class: RowClass::First, circle: true, parts: vec![r.clone()] },
            None => DiagramRow { class: RowClass::Empty, circle: true, parts: vec![] },
        })
        .collect();
    let mut moved = 0;
    for (j, w) in second.iter().enumerate() {
        let Some(r) = circles.checked_sub(j + 1) else { break };
        if let Some(v) = first.get(r) {
            if has_hom(&work, w, v, seed)? {
                break;
            }
        }
        region[r].parts.push(w.clone());
        moved += 1;
    }
    rows.extend(second[moved..].iter().map(|r| DiagramRow { class: RowClass::Second, circle: false, parts: vec![r.clone()] }));
    let top_line = rows.len();
    rows.extend(region);
    let bottom_line = rows.len();
    rows.extend(first.iter().skip(circles).map(|r| DiagramRow { class: RowClass::First, circle: false, parts: vec![r.clone()] }));

    let mut parts: Vec<(DimVector, usize)> = rows.iter().map(|r| (r.dim(n, vn), 1)).collect();
    parts.retain(|(v, _)| v.iter().any(|&x| x != 0));
    let decomposition = Decomposition { parts }.normalized();
    let generic = generic_decomposition(q, beta, seed)?;
    if generic != decomposition {
        return Err(DecompError::CrossCheck { diagram: decomposition.to_string(), generic: generic.to_string() });
    }
    let labels = q.labels().to_vec();
    Ok((decomposition, DnDiagram { order, labels, rows, top_line, bottom_line, opposite }))
}
