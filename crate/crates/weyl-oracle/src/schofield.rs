use std::collections::HashMap;

use bpoly::SparsePoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use quiver_core::rep::GENERIC_RETRIES;
use quiver_core::{hom_dim_exact, rng_for, BlockEntry, BlockLayout, Quiver, RatMatrix, Representation};
use rand::Rng;

use crate::error::OracleError;

/// Entries of exceptional representations are drawn from -B..=B.
pub const EXCEPTIONAL_ENTRY_BOUND: i64 = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entry {
    Const(BigRational),
    /// Coordinate of a generic arrow matrix W(a).
    Var(usize),
}

/// The grid d^V_W with rows labelled by (arrow, copy) and columns by
/// (vertex, copy); W is generic, so its entries are variables.
#[derive(Clone, Debug)]
pub struct BlockMatrix {
    pub layout: BlockLayout,
    pub var_names: Vec<String>,
    /// Nonzero entries of each row, by column.
    pub rows: Vec<Vec<(usize, Entry)>>,
}

impl BlockMatrix {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn nvars(&self) -> usize {
        self.var_names.len()
    }

    pub fn render(&self) -> String {
        let n = self.layout.cols;
        let mut out = String::new();
        for row in &self.rows {
            let mut cells = vec!["0".to_string(); n];
            for (c, e) in row {
                cells[*c] = match e {
                    Entry::Const(v) => v.to_string(),
                    Entry::Var(i) => self.var_names[*i].clone(),
                };
            }
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    /// Cofactor expansion along rows taken sparsest first, memoised on the
    /// set of used columns.
    pub fn determinant(&self) -> SparsePoly {
        let nv = self.nvars();
        let n = self.rows.len();
        let mut seen = vec![false; n];
        for row in &self.rows {
            for (c, _) in row {
                seen[*c] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return SparsePoly::zero(nv);
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&r| (self.rows[r].len(), r));
        let mut det = Expansion { m: self, order: &order, memo: HashMap::new(), nv }
            .minor(0, &mut vec![0u64; n.div_ceil(64)]);
        if permutation_sign(&order) < 0 {
            det = -&det;
        }
        det
    }
}

struct Expansion<'a> {
    m: &'a BlockMatrix,
    order: &'a [usize],
    memo: HashMap<Vec<u64>, SparsePoly>,
    nv: usize,
}

impl Expansion<'_> {
    fn minor(&mut self, k: usize, used: &mut Vec<u64>) -> SparsePoly {
        if k == self.order.len() {
            return SparsePoly::one(self.nv);
        }
        if let Some(p) = self.memo.get(used.as_slice()) {
            return p.clone();
        }
        let mut acc = SparsePoly::zero(self.nv);
        let row = &self.m.rows[self.order[k]];
        for (c, e) in row {
            let (w, b) = (c / 64, c % 64);
            if used[w] >> b & 1 == 1 {
                continue;
            }
            let below = used[..w].iter().map(|x| x.count_ones()).sum::<u32>() + (used[w] & ((1u64 << b) - 1)).count_ones();
            let pos = *c as u32 - below;
            used[w] |= 1 << b;
            let sub = self.minor(k + 1, used);
            used[w] &= !(1 << b);
            if sub.is_zero() {
                continue;
            }
            let term = match e {
                Entry::Const(v) => sub.scale(v),
                Entry::Var(i) => &sub * &SparsePoly::var(self.nv, *i),
            };
            acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        self.memo.insert(used.clone(), acc.clone());
        acc
    }
}

fn permutation_sign(p: &[usize]) -> i32 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

fn dims(v: &[i64]) -> Result<Vec<usize>, OracleError> {
    v.iter().map(|&x| usize::try_from(x).map_err(|_| OracleError::Quiver(quiver_core::QuiverError::NegativeDimension))).collect()
}

/// The Schofield semi-invariant c^V on Rep(Q, β) as a determinant in the
/// coordinates of the generic arrow matrices.
pub fn build_schofield(q: &Quiver, beta: &[i64], v: &Representation) -> Result<(BlockMatrix, SparsePoly), OracleError> {
    if beta.len() != q.n_vertices() {
        return Err(quiver_core::QuiverError::LengthMismatch { expected: q.n_vertices(), found: beta.len() }.into());
    }
    v.check_shapes(q).map_err(|_| OracleError::Shape)?;
    let beta = dims(beta)?;
    let layout = BlockLayout::new(q, &v.dim, &beta);
    if layout.rows != layout.cols {
        return Err(OracleError::NonSquare { rows: layout.rows, cols: layout.cols });
    }
    let mut offsets = Vec::new();
    let mut var_names = Vec::new();
    for a in q.arrows() {
        offsets.push(var_names.len());
        for i in 0..beta[a.head] {
            for j in 0..beta[a.tail] {
                var_names.push(format!("{}[{},{}]", a.id, i + 1, j + 1));
            }
        }
    }
    let mut rows: Vec<Vec<(usize, Entry)>> = vec![Vec::new(); layout.rows];
    layout.for_each_entry(q, v, |r, c, e| {
        let entry = match e {
            BlockEntry::Fixed(x) => Entry::Const(x),
            // The sign of the W blocks is dropped; it only changes c^V by ±1.
            BlockEntry::Generic(k, i, j) => Entry::Var(offsets[k] + i * beta[q.arrows()[k].tail] + j),
        };
        rows[r].push((c, entry));
    });
    for row in &mut rows {
        row.sort_by_key(|(c, _)| *c);
    }
    let m = BlockMatrix { layout, var_names, rows };
    let f = m.determinant();
    Ok((m, f))
}

/// Scales `p` to an integer polynomial with coprime coefficients and a
/// positive leading coefficient.
pub fn primitive(p: &SparsePoly) -> SparsePoly {
    let mut lcm = BigInt::one();
    let mut gcd = BigInt::zero();
    for (_, c) in p.terms() {
        lcm = lcm.lcm(c.denom());
    }
    for (_, c) in p.terms() {
        gcd = gcd.gcd(&(c * BigRational::from_integer(lcm.clone())).to_integer());
    }
    if gcd.is_zero() {
        return p.clone();
    }
    let mut scale = BigRational::new(lcm, gcd);
    if p.leading_term().is_some_and(|(_, c)| c.is_negative()) {
        scale = -scale;
    }
    p.scale(&scale)
}

/// A random integer representation of dimension α with End(V) = k, which for
/// ⟨α,α⟩ = 1 means Ext(V,V) = 0.
pub fn random_exceptional(q: &Quiver, alpha: &[i64], seed: u64) -> Result<Representation, OracleError> {
    if alpha.len() != q.n_vertices() {
        return Err(quiver_core::QuiverError::LengthMismatch { expected: q.n_vertices(), found: alpha.len() }.into());
    }
    let dim = dims(alpha)?;
    let tits = q.tits_form(alpha);
    if tits != 1 {
        return Err(OracleError::NotRealRoot { alpha: alpha.to_vec(), tits });
    }
    for attempt in 0..GENERIC_RETRIES {
        let mut rng = rng_for(seed.wrapping_add(attempt.wrapping_mul(0x9E37_79B9_7F4A_7C15)));
        let maps = q
            .arrows()
            .iter()
            .map(|a| {
                let (r, c) = (dim[a.head], dim[a.tail]);
                let vals: Vec<i64> =
                    (0..r * c).map(|_| rng.gen_range(-EXCEPTIONAL_ENTRY_BOUND..=EXCEPTIONAL_ENTRY_BOUND)).collect();
                RatMatrix::from_i64(r, c, &vals)
            })
            .collect();
        let v = Representation { dim: dim.clone(), maps };
        if hom_dim_exact(q, &v, &v) == 1 {
            return Ok(v);
        }
    }
    Err(OracleError::NotExceptional { alpha: alpha.to_vec(), attempts: GENERIC_RETRIES })
}

/// The primitive semi-invariant c^V for a random exceptional V of dimension α.
pub fn semi_invariant(q: &Quiver, beta: &[i64], alpha: &[i64], seed: u64) -> Result<SparsePoly, OracleError> {
    let v = random_exceptional(q, alpha, seed)?;
    let (_, f) = build_schofield(q, beta, &v)?;
    Ok(primitive(&f))
}
