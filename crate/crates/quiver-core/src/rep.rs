use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::QuiverError;
use crate::matrix::{rank_mod_p, rat_mod_p, RatMatrix, MOD_P};
use crate::quiver::Quiver;

/// Range of the random integer entries used for generic representations.
pub const RANDOM_ENTRY_BOUND: i64 = 99;
/// Number of seed pairs tried before a generic computation gives up.
pub const GENERIC_RETRIES: u64 = 3;

/// Concrete representation: one (dim head × dim tail) matrix per arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub dim: Vec<usize>,
    pub maps: Vec<RatMatrix>,
}

impl Representation {
    pub fn zero(q: &Quiver, dim: &[usize]) -> Self {
        let maps = q.arrows().iter().map(|a| RatMatrix::zeros(dim[a.head], dim[a.tail])).collect();
        Representation { dim: dim.to_vec(), maps }
    }

    pub fn random(q: &Quiver, dim: &[usize], rng: &mut impl Rng) -> Self {
        let maps = q
            .arrows()
            .iter()
            .map(|a| {
                let (r, c) = (dim[a.head], dim[a.tail]);
                let vals: Vec<i64> =
                    (0..r * c).map(|_| rng.gen_range(-RANDOM_ENTRY_BOUND..=RANDOM_ENTRY_BOUND)).collect();
                RatMatrix::from_i64(r, c, &vals)
            })
            .collect();
        Representation { dim: dim.to_vec(), maps }
    }

    pub fn check_shapes(&self, q: &Quiver) -> Result<(), QuiverError> {
        if self.dim.len() != q.n_vertices() || self.maps.len() != q.arrows().len() {
            return Err(QuiverError::RepresentationShape);
        }
        for (a, m) in q.arrows().iter().zip(&self.maps) {
            if m.rows != self.dim[a.head] || m.cols != self.dim[a.tail] {
                return Err(QuiverError::RepresentationShape);
            }
        }
        Ok(())
    }

    pub fn dim_vector(&self) -> Vec<i64> {
        self.dim.iter().map(|&d| d as i64).collect()
    }
}

/// Row/column offsets of the block matrix d^V_W for dimension vectors α (of V)
/// and β (of W): one row block of size α_{ta}β_{ha} per arrow, one column block
/// of size α_xβ_x per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockLayout {
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
    pub row_offsets: Vec<usize>,
    pub col_offsets: Vec<usize>,
    pub rows: usize,
    pub cols: usize,
}

impl BlockLayout {
    pub fn new(q: &Quiver, alpha: &[usize], beta: &[usize]) -> Self {
        let mut row_offsets = Vec::new();
        let mut rows = 0;
        for a in q.arrows() {
            row_offsets.push(rows);
            rows += alpha[a.tail] * beta[a.head];
        }
        let mut col_offsets = Vec::new();
        let mut cols = 0;
        for x in 0..q.n_vertices() {
            col_offsets.push(cols);
            cols += alpha[x] * beta[x];
        }
        BlockLayout { alpha: alpha.to_vec(), beta: beta.to_vec(), row_offsets, col_offsets, rows, cols }
    }

    /// Position of entry (r, c) of φ(x) ∈ Hom(V_x, W_x) (a β_x × α_x matrix), column-major.
    pub fn col(&self, x: usize, r: usize, c: usize) -> usize {
        self.col_offsets[x] + c * self.beta[x] + r
    }

    /// Position of entry (r, c) of the β_{ha} × α_{ta} image block of arrow `k`.
    pub fn row(&self, q: &Quiver, k: usize, r: usize, c: usize) -> usize {
        self.row_offsets[k] + c * self.beta[q.arrows()[k].head] + r
    }

    /// Calls `emit(row, col, entry)` for every structural entry of d^V_W:
    /// `Fixed(v)` entries come from V(a)ᵀ ⊗ I and `Generic(k, i, j)` entries stand
    /// for −W(a_k)_{ij} from I ⊗ W(a).
    pub fn for_each_entry(&self, q: &Quiver, v: &Representation, mut emit: impl FnMut(usize, usize, BlockEntry)) {
        for (k, a) in q.arrows().iter().enumerate() {
            let (t, h) = (a.tail, a.head);
            // φ(h)V(a): entry (r, c) of the image gets Σ_{c'} φ(h)[r,c'] V(a)[c',c].
            for c in 0..self.alpha[t] {
                for r in 0..self.beta[h] {
                    let row = self.row(q, k, r, c);
                    for cp in 0..self.alpha[h] {
                        let val = v.maps[k].get(cp, c);
                        if !val.is_zero() {
                            emit(row, self.col(h, r, cp), BlockEntry::Fixed(val.clone()));
                        }
                    }
                    // −W(a)φ(t): Σ_{r'} W(a)[r,r'] φ(t)[r',c].
                    for rp in 0..self.beta[t] {
                        emit(row, self.col(t, rp, c), BlockEntry::Generic(k, r, rp));
                    }
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockEntry {
    Fixed(BigRational),
    Generic(usize, usize, usize),
}

/// The numeric matrix of d^V_W : ⊕_x Hom(V_x,W_x) → ⊕_a Hom(V_{ta},W_{ha}).
pub fn d_matrix(q: &Quiver, v: &Representation, w: &Representation) -> RatMatrix {
    let layout = BlockLayout::new(q, &v.dim, &w.dim);
    let mut m = RatMatrix::zeros(layout.rows, layout.cols);
    layout.for_each_entry(q, v, |r, c, e| {
        let val = match e {
            BlockEntry::Fixed(x) => x,
            BlockEntry::Generic(k, i, j) => -w.maps[k].get(i, j).clone(),
        };
        let cur = m.get(r, c).clone();
        m.set(r, c, cur + val);
    });
    m
}

/// dim Hom(V, W) = Σ α_xβ_x − rank d^V_W, with the rank computed modulo a large prime.
pub fn hom_dim(q: &Quiver, v: &Representation, w: &Representation) -> usize {
    let layout = BlockLayout::new(q, &v.dim, &w.dim);
    if layout.cols == 0 {
        return 0;
    }
    let mut a = vec![vec![0u64; layout.cols]; layout.rows];
    layout.for_each_entry(q, v, |r, c, e| {
        let val = match e {
            BlockEntry::Fixed(x) => rat_mod_p(&x),
            BlockEntry::Generic(k, i, j) => {
                let x = rat_mod_p(w.maps[k].get(i, j));
                (MOD_P - x) % MOD_P
            }
        };
        a[r][c] = (a[r][c] + val) % MOD_P;
    });
    layout.cols - rank_mod_p(&mut a)
}

/// dim Hom(V, W) with the rank computed exactly over ℚ.
pub fn hom_dim_exact(q: &Quiver, v: &Representation, w: &Representation) -> usize {
    let m = d_matrix(q, v, w);
    m.cols - m.rank()
}

pub(crate) fn to_dims(v: &[i64]) -> Result<Vec<usize>, QuiverError> {
    v.iter()
        .map(|&x| usize::try_from(x).map_err(|_| QuiverError::NegativeDimension))
        .collect()
}

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generic (hom, ext) between dimension vectors α and β, from random
/// representations. Two independent samples must agree; up to
/// [`GENERIC_RETRIES`] pairs of samples are tried.
pub fn generic_hom_ext(q: &Quiver, alpha: &[i64], beta: &[i64], seed: u64) -> Result<(usize, usize), QuiverError> {
    let euler = q.euler_form(alpha, beta)?;
    let (da, db) = (to_dims(alpha)?, to_dims(beta)?);
    let sample = |s: u64| {
        let mut rng = rng_for(s);
        let v = Representation::random(q, &da, &mut rng);
        let w = Representation::random(q, &db, &mut rng);
        hom_dim(q, &v, &w)
    };
    for attempt in 0..GENERIC_RETRIES {
        let s1 = seed.wrapping_add(attempt.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let h1 = sample(s1);
        let h2 = sample(s1 ^ 0xD1B5_4A32_D192_ED03);
        if h1 == h2 {
            let ext = h1 as i64 - euler;
            debug_assert!(ext >= 0);
            return Ok((h1, ext as usize));
        }
    }
    Err(QuiverError::GenericDisagreement)
}
