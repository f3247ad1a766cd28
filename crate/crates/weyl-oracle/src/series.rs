use std::collections::HashMap;

use bpoly::SparsePoly;

use crate::modp::Fp;

/// Binomial coefficient as u128, saturating.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i + 1) as u128;
    }
    acc
}

/// Monomials in `n` variables of total degree at most `t`, grouped by degree
/// and packed into u128 keys so that key(a) + key(b) = key(a·b).
pub struct MonomialSpace {
    bits: u32,
    t: u32,
    keys: Vec<u128>,
    /// keys[starts[d]..starts[d+1]] have degree d.
    starts: Vec<usize>,
    index: HashMap<u128, u32>,
}

impl MonomialSpace {
    /// Number of monomials of degree ≤ t in n variables.
    pub fn size(n: usize, t: u32) -> u128 {
        binomial(n as u64 + t as u64, t as u64)
    }

    /// `None` when the packed exponents do not fit in 128 bits.
    pub fn new(n: usize, t: u32) -> Option<Self> {
        let bits = 32 - t.leading_zeros().min(31);
        if n as u32 * bits > 128 {
            return None;
        }
        let mut keys = Vec::new();
        let mut starts = vec![0];
        for d in 0..=t {
            let mut e = vec![0u32; n];
            compositions(&mut e, 0, d, &mut |e| keys.push(pack(e, bits)));
            starts.push(keys.len());
        }
        let index = keys.iter().enumerate().map(|(i, &k)| (k, i as u32)).collect();
        Some(MonomialSpace { bits, t, keys, starts, index })
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn pack(&self, e: &[u32]) -> u128 {
        pack(e, self.bits)
    }

    pub fn position(&self, e: &[u32]) -> Option<usize> {
        if e.iter().sum::<u32>() > self.t {
            return None;
        }
        self.index.get(&self.pack(e)).map(|&i| i as usize)
    }

    pub fn one(&self, f: Fp) -> Vec<u64> {
        let mut v = vec![0; self.len()];
        v[0] = 1 % f.0;
        v
    }

    /// Truncated product of a dense series with a sparse one whose terms are
    /// sorted by degree.
    pub fn mul(&self, f: Fp, a: &[u64], b: &[(u128, u32, u64)]) -> Vec<u64> {
        let mut out = vec![0u64; self.len()];
        for d in 0..=self.t {
            for i in self.starts[d as usize]..self.starts[d as usize + 1] {
                let c = a[i];
                if c == 0 {
                    continue;
                }
                for &(k, dk, ck) in b {
                    if d + dk > self.t {
                        break;
                    }
                    let j = self.index[&(self.keys[i] + k)] as usize;
                    out[j] = f.add(out[j], f.mul(c, ck));
                }
            }
        }
        out
    }

    /// p(y + x0) modulo f, truncated at degree t, as a degree-sorted term list.
    pub fn shifted(&self, f: Fp, p: &SparsePoly, x0: &[u64]) -> Option<Vec<(u128, u32, u64)>> {
        let n = p.nvars();
        let mut acc: HashMap<Vec<u32>, u64> = HashMap::new();
        for (e, c) in p.terms() {
            let c = f.rat(c)?;
            // Expand ∏ (x0_j + y_j)^{e_j} one variable at a time.
            let mut partial: Vec<(Vec<u32>, u64)> = vec![(vec![0; n], c)];
            for (j, &ej) in e.iter().enumerate() {
                if ej == 0 {
                    continue;
                }
                let mut next = Vec::with_capacity(partial.len() * (ej as usize + 1));
                for (mono, c) in &partial {
                    let deg: u32 = mono.iter().sum();
                    for k in 0..=ej {
                        if deg + k > self.t {
                            break;
                        }
                        let coeff = f.mul(binomial(ej as u64, k as u64) as u64 % f.0, f.pow(x0[j], (ej - k) as u64));
                        let mut m = mono.clone();
                        m[j] = k;
                        next.push((m, f.mul(*c, coeff)));
                    }
                }
                partial = next;
            }
            for (m, c) in partial {
                let slot = acc.entry(m).or_insert(0);
                *slot = f.add(*slot, c);
            }
        }
        let mut out: Vec<(u128, u32, u64)> = acc
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(m, c)| (self.pack(&m), m.iter().sum(), c))
            .collect();
        out.sort_by_key(|&(k, d, _)| (d, k));
        Some(out)
    }
}

fn pack(e: &[u32], bits: u32) -> u128 {
    e.iter().enumerate().fold(0u128, |acc, (j, &x)| acc | ((x as u128) << (bits * j as u32)))
}

fn compositions(e: &mut Vec<u32>, j: usize, left: u32, emit: &mut impl FnMut(&[u32])) {
    if j + 1 == e.len() {
        e[j] = left;
        emit(e);
        e[j] = 0;
        return;
    }
    if e.is_empty() {
        if left == 0 {
            emit(e);
        }
        return;
    }
    for x in (0..=left).rev() {
        e[j] = x;
        compositions(e, j + 1, left - x, emit);
    }
    e[j] = 0;
}
