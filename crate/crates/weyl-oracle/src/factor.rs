use bpoly::{equal_up_to_scalar, FactorProduct, SparsePoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rational roots of a univariate polynomial, with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalRoots {
    pub roots: Vec<(BigRational, u32)>,
    /// Degree of the cofactor without rational roots.
    pub residual_degree: usize,
}

impl RationalRoots {
    pub fn fully_linear(&self) -> bool {
        self.residual_degree == 0
    }

    pub fn all_negative(&self) -> bool {
        self.fully_linear() && self.roots.iter().all(|(r, _)| r.is_negative())
    }
}

fn primitive_coeffs(p: &SparsePoly) -> Vec<BigInt> {
    let cs = p.univariate_coeffs();
    let lcm = cs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = cs.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64().filter(|&n| n < 1 << 40)?;
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    Some(out)
}

/// Fujiwara's bound on the absolute value of the roots.
fn root_bound(c: &[BigInt]) -> f64 {
    let d = c.len() - 1;
    let lead = c[d].to_f64().unwrap_or(f64::MAX).abs();
    (1..=d)
        .map(|k| {
            let a = c[d - k].to_f64().unwrap_or(f64::MAX).abs() / lead;
            let e = if k == d { a / 2.0 } else { a };
            e.powf(1.0 / k as f64)
        })
        .fold(0.0, f64::max)
        * 2.0
}

/// Divides by (q·s − p) when p/q is a root; the coefficients stay integral.
fn deflate(c: &[BigInt], p: &BigInt, q: &BigInt) -> Option<Vec<BigInt>> {
    let d = c.len() - 1;
    let mut out = vec![BigInt::zero(); d];
    let mut carry = BigInt::zero();
    for i in (1..=d).rev() {
        let num = &c[i] + &carry;
        if !(&num % q).is_zero() {
            return None;
        }
        out[i - 1] = &num / q;
        carry = &out[i - 1] * p;
    }
    (&c[0] + carry).is_zero().then_some(out)
}

/// Rational roots by the rational root test over denominators dividing the
/// leading coefficient and numerators within the root bound.
pub fn rational_roots(p: &SparsePoly) -> RationalRoots {
    let mut c = primitive_coeffs(p);
    while c.len() > 1 && c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    let mut roots: Vec<(BigRational, u32)> = Vec::new();
    let push = |roots: &mut Vec<(BigRational, u32)>, r: BigRational| match roots.iter_mut().find(|(x, _)| *x == r) {
        Some((_, k)) => *k += 1,
        None => roots.push((r, 1)),
    };
    while c.len() > 1 && c[0].is_zero() {
        c.remove(0);
        push(&mut roots, BigRational::zero());
    }
    if c.len() > 1 {
        if let Some(qs) = divisors(&c[c.len() - 1]) {
            let bound = root_bound(&c);
            for q in qs {
                let limit = (bound * q as f64).ceil().min(1e7) as i64;
                for a in 1..=limit {
                    if a.gcd(&(q as i64)) != 1 {
                        continue;
                    }
                    for sign in [-1i64, 1] {
                        let (pb, qb) = (BigInt::from(sign * a), BigInt::from(q));
                        while c.len() > 1 {
                            match deflate(&c, &pb, &qb) {
                                Some(next) => {
                                    c = next;
                                    push(&mut roots, BigRational::new(pb.clone(), qb.clone()));
                                }
                                None => break,
                            }
                        }
                    }
                }
            }
        }
    }
    roots.sort();
    RationalRoots { roots, residual_degree: c.len() - 1 }
}

/// Whether `p` factors into linear factors with negative rational roots; a
/// multivariate polynomial is tested on the diagonal s₁ = … = s_l.
pub fn negative_rational_roots(p: &SparsePoly) -> bool {
    let uni = if p.nvars() == 1 {
        p.clone()
    } else {
        let t = SparsePoly::var(1, 0);
        p.substitute(&vec![t; p.nvars()])
    };
    rational_roots(&uni).all_negative()
}

/// The factored form of a univariate polynomial whose roots are all negative
/// rationals.
pub fn factor_negative(p: &SparsePoly) -> Option<FactorProduct> {
    if p.nvars() != 1 || p.is_zero() {
        return None;
    }
    let rr = rational_roots(p);
    if !rr.all_negative() {
        return None;
    }
    let mut prod = FactorProduct::unit(1);
    for (r, k) in &rr.roots {
        let d = r.denom().to_i64()?;
        let lin = FactorProduct::linear(&[d], BigRational::from_integer(-r.numer().clone())).ok()?;
        prod = prod.mul(&lin.pow(*k)).ok()?;
    }
    let lambda = equal_up_to_scalar(p, &prod.expand().ok()?)?;
    Some(prod.scaled(&lambda))
}
