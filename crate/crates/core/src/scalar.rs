//! Exact scalar types for the base ring of constants.
//!
//! Every computation in this crate is bit-exact, so the scalar layer is
//! restricted to exact commutative coefficient rings: arbitrary-precision
//! rationals ([`Q`]) and prime fields ([`Zp`]). The [`Scalar`] trait builds on
//! the `num-traits` vocabulary (`Zero`, `One`, arithmetic operators) and adds
//! the few operations exact algorithms need (partial inverse, embedding of
//! integers and fractions).

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational numbers, the default field of constants.
pub type Q = BigRational;

/// An exact commutative coefficient ring.
pub trait Scalar:
    Clone
    + Eq
    + Ord
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Multiplicative inverse, if it exists.
    fn inv(&self) -> Option<Self>;

    /// Image of an integer.
    fn from_i64(n: i64) -> Self;

    /// Image of the fraction `num/den`, if `den` is invertible.
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self>;

    /// Characteristic of the ring (0 for the rationals).
    fn characteristic() -> u64;

    /// Exact division, if the divisor is invertible.
    fn try_div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.clone() * i)
    }

    /// `true` if the printed form starts with a minus sign.
    fn is_negative(&self) -> bool {
        false
    }
}

impl Scalar for BigRational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(BigRational::new(num.clone(), den.clone()))
        }
    }

    fn characteristic() -> u64 {
        0
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// Convenience constructor for rationals.
pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Convenience constructor for integral rationals.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// The prime field Z/PZ. `P` must be prime for `inv` to be total on
/// nonzero elements; this is checked in debug builds on construction.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Zp<const P: u64>(u64);

impl<const P: u64> Zp<P> {
    /// Reduces an integer modulo `P`.
    pub fn new(n: i64) -> Self {
        debug_assert!(P >= 2, "modulus must be at least 2");
        Zp(n.rem_euclid(P as i64) as u64)
    }

    /// Canonical representative in `0..P`.
    pub fn value(self) -> u64 {
        self.0
    }
}

impl<const P: u64> Debug for Zp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Display for Zp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Zp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Zp((self.0 + rhs.0) % P)
    }
}

impl<const P: u64> Sub for Zp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Zp((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u64> Mul for Zp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Zp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for Zp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Zp((P - self.0) % P)
    }
}

impl<const P: u64> Zero for Zp<P> {
    fn zero() -> Self {
        Zp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Zp<P> {
    fn one() -> Self {
        Zp(1 % P)
    }
}

impl<const P: u64> Scalar for Zp<P> {
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        let g = (self.0 as i128).extended_gcd(&(P as i128));
        if g.gcd != 1 {
            return None;
        }
        Some(Zp(g.x.rem_euclid(P as i128) as u64))
    }

    fn from_i64(n: i64) -> Self {
        Zp::new(n)
    }

    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        let p = BigInt::from(P);
        let n = num.mod_floor(&p).to_u64()?;
        let d = den.mod_floor(&p).to_u64()?;
        Zp::<P>(d).inv().map(|di| Zp::<P>(n) * di)
    }

    fn characteristic() -> u64 {
        P
    }
}

/// Binomial coefficient as an exact scalar, computed by Pascal's rule so it
/// is valid in every characteristic.
pub fn binomial<S: Scalar>(n: usize, k: usize) -> S {
    if k > n {
        return S::zero();
    }
    let mut row = vec![S::one()];
    for i in 1..=n {
        let mut next = Vec::with_capacity(i + 1);
        next.push(S::one());
        for j in 1..i {
            next.push(row[j - 1].clone() + row[j].clone());
        }
        next.push(S::one());
        row = next;
    }
    row[k].clone()
}

/// `n!` as an exact scalar.
pub fn factorial<S: Scalar>(n: usize) -> S {
    (1..=n).fold(S::one(), |acc, i| acc * S::from_i64(i as i64))
}

/// Parses a decimal integer or fraction literal such as `3`, `-2`, `3/2`.
pub fn parse_scalar<S: Scalar>(text: &str) -> Option<S> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (text.parse::<BigInt>().ok()?, BigInt::one()),
    };
    S::from_ratio(&num, &den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zp_inverse_and_arithmetic() {
        type F5 = Zp<5>;
        for n in 1..5 {
            let a = F5::new(n);
            assert_eq!(a * a.inv().unwrap(), F5::one());
        }
        assert_eq!(F5::new(3) + F5::new(4), F5::new(2));
        assert_eq!(-F5::new(1), F5::new(4));
        assert!(F5::zero().inv().is_none());
    }

    #[test]
    fn binomials_reduce_modulo_p() {
        assert_eq!(binomial::<Q>(6, 2), qi(15));
        assert_eq!(binomial::<Zp<5>>(5, 2), Zp::new(0));
        assert_eq!(binomial::<Zp<5>>(6, 2), Zp::new(0));
        assert_eq!(binomial::<Zp<5>>(7, 1), Zp::new(2));
    }

    #[test]
    fn fraction_parsing() {
        assert_eq!(parse_scalar::<Q>("3/2"), Some(q(3, 2)));
        assert_eq!(parse_scalar::<Q>("-4"), Some(qi(-4)));
        assert_eq!(parse_scalar::<Zp<5>>("1/2"), Some(Zp::new(3)));
        assert_eq!(parse_scalar::<Zp<5>>("1/5"), None);
    }
}
