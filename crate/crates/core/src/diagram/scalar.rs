use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Euclid, One, Zero};

/// Coefficients of path categories: a Euclidean ring with canonical
/// remainders, so that Hermite normal forms give unique representatives.
pub trait Coefficient:
    Copy
    + Eq
    + Ord
    + Hash
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// `(q, r)` with `self = q * d + r` and `r` the canonical remainder.
    fn div_rem_canonical(self, d: Self) -> (Self, Self);

    /// Size used to pick Euclidean pivots; zero only for zero.
    fn euclid_norm(self) -> u64;

    /// A unit `u` with `u * self` the canonical associate.
    fn normalizing_unit(self) -> Self;

    fn from_i64(v: i64) -> Self;

    fn ring_name() -> String;
}

/// A prime field small enough to enumerate.
pub trait FiniteField: Coefficient {
    fn order() -> u32;

    fn elements() -> Vec<Self>;

    fn inv(self) -> Option<Self>;
}

impl Coefficient for i64 {
    fn div_rem_canonical(self, d: Self) -> (Self, Self) {
        (Euclid::div_euclid(&self, &d), Euclid::rem_euclid(&self, &d))
    }

    fn euclid_norm(self) -> u64 {
        self.unsigned_abs()
    }

    fn normalizing_unit(self) -> Self {
        if self < 0 {
            -1
        } else {
            1
        }
    }

    fn from_i64(v: i64) -> Self {
        v
    }

    fn ring_name() -> String {
        "Z".to_owned()
    }
}

/// Integers modulo the prime `P`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fp<const P: u32>(u32);

pub type F2 = Fp<2>;
pub type F3 = Fp<3>;
pub type F5 = Fp<5>;
pub type F7 = Fp<7>;

impl<const P: u32> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }
}

impl<const P: u32> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Fp((self.0 + o.0) % P)
    }
}

impl<const P: u32> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp((self.0 + P - o.0) % P)
    }
}

impl<const P: u32> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp(((self.0 as u64 * o.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u32> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u32> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u32> Coefficient for Fp<P> {
    fn div_rem_canonical(self, d: Self) -> (Self, Self) {
        match d.inv() {
            Some(i) => (self * i, Fp(0)),
            None => (Fp(0), self),
        }
    }

    fn euclid_norm(self) -> u64 {
        u64::from(self.0 != 0)
    }

    fn normalizing_unit(self) -> Self {
        self.inv().unwrap_or(Fp(1))
    }

    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }

    fn ring_name() -> String {
        format!("F{P}")
    }
}

impl<const P: u32> FiniteField for Fp<P> {
    fn order() -> u32 {
        P
    }

    fn elements() -> Vec<Self> {
        (0..P).map(Fp).collect()
    }

    fn inv(self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        // Fermat: a^(P-2)
        let (mut base, mut exp, mut acc) = (self.0 as u64, P as u64 - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % P as u64;
            }
            base = base * base % P as u64;
            exp >>= 1;
        }
        Some(Fp(acc as u32))
    }
}

/// Primes accepted where a field is chosen at run time.
pub const SUPPORTED_PRIMES: &[u32] = &[2, 3, 5, 7, 11, 13];
