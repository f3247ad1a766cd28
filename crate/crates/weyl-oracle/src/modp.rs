use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Primes used for multi-modular evaluation; their product exceeds 2^180.
pub const PRIMES: [u64; 3] = [(1 << 61) - 1, (1 << 62) - 57, (1 << 60) - 93];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp(pub u64);

impl Fp {
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a as u128 + b as u128;
        (s % self.0 as u128) as u64
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.0 - (b - a)
        }
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    pub fn pow(self, mut a: u64, mut k: u64) -> u64 {
        let mut acc = 1 % self.0;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            k >>= 1;
        }
        acc
    }

    pub fn inv(self, a: u64) -> Option<u64> {
        (a % self.0 != 0).then(|| self.pow(a, self.0 - 2))
    }

    pub fn int(self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.0)).to_u64().expect("reduced")
    }

    /// Image of a rational whose denominator is prime to p.
    pub fn rat(self, v: &BigRational) -> Option<u64> {
        let d = self.inv(self.int(v.denom()))?;
        Some(self.mul(self.int(v.numer()), d))
    }
}

/// The integer of least absolute value with the given residues.
pub fn crt_symmetric(residues: &[u64], primes: &[u64]) -> BigInt {
    let mut x = BigInt::zero();
    let mut modulus = BigInt::one();
    for (&r, &p) in residues.iter().zip(primes) {
        let bp = BigInt::from(p);
        // x + modulus·t ≡ r (mod p)
        let f = Fp(p);
        let diff = f.sub(r, f.int(&x));
        let t = f.mul(diff, f.inv(f.int(&modulus)).expect("distinct primes"));
        x += &modulus * BigInt::from(t);
        modulus *= bp;
    }
    if (&x * 2u8) > modulus {
        x -= &modulus;
    }
    debug_assert!(x.abs() * 2u8 <= modulus);
    x
}
