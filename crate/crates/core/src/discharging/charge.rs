use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Exact rational charge. Always stored in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Charge(BigRational);

impl Charge {
    pub fn new(numer: i64, denom: i64) -> Self {
        Charge(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn int(v: i64) -> Self {
        Charge(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn zero() -> Self {
        Charge(BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Charge {
    fn from(v: i64) -> Self {
        Charge::int(v)
    }
}

impl PartialOrd for Charge {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Charge {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl Add for Charge {
    type Output = Charge;
    fn add(self, rhs: Charge) -> Charge {
        Charge(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Charge> for &'a Charge {
    type Output = Charge;
    fn add(self, rhs: &Charge) -> Charge {
        Charge(&self.0 + &rhs.0)
    }
}

impl Sub for Charge {
    type Output = Charge;
    fn sub(self, rhs: Charge) -> Charge {
        Charge(self.0 - rhs.0)
    }
}

impl<'a> Sub<&'a Charge> for &'a Charge {
    type Output = Charge;
    fn sub(self, rhs: &Charge) -> Charge {
        Charge(&self.0 - &rhs.0)
    }
}

impl AddAssign<&Charge> for Charge {
    fn add_assign(&mut self, rhs: &Charge) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Charge> for Charge {
    fn sub_assign(&mut self, rhs: &Charge) {
        self.0 -= &rhs.0;
    }
}

impl Neg for Charge {
    type Output = Charge;
    fn neg(self) -> Charge {
        Charge(-self.0)
    }
}

impl Neg for &Charge {
    type Output = Charge;
    fn neg(self) -> Charge {
        Charge(-&self.0)
    }
}

impl Mul<i64> for &Charge {
    type Output = Charge;
    fn mul(self, rhs: i64) -> Charge {
        Charge(&self.0 * BigRational::from_integer(BigInt::from(rhs)))
    }
}

impl Mul<&Charge> for &Charge {
    type Output = Charge;
    fn mul(self, rhs: &Charge) -> Charge {
        Charge(&self.0 * &rhs.0)
    }
}

impl Div<i64> for &Charge {
    type Output = Charge;
    fn div(self, rhs: i64) -> Charge {
        Charge(&self.0 / BigRational::from_integer(BigInt::from(rhs)))
    }
}

impl Sum for Charge {
    fn sum<I: Iterator<Item = Charge>>(iter: I) -> Charge {
        iter.fold(Charge::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a Charge> for Charge {
    fn sum<I: Iterator<Item = &'a Charge>>(iter: I) -> Charge {
        iter.fold(Charge::zero(), |mut a, b| {
            a += b;
            a
        })
    }
}

/// Renders as `p` or `p/q`.
impl fmt::Display for Charge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom() == &BigInt::from(1) {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Charge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_and_exact() {
        let a = Charge::new(2, 12);
        assert_eq!(a, Charge::new(1, 6));
        assert_eq!(a.to_string(), "1/6");
        let s: Charge = [Charge::new(1, 2), Charge::new(-4, 3), Charge::new(5, 6)].iter().sum();
        assert!(s.is_zero());
        assert_eq!(Charge::new(-5, 3).to_string(), "-5/3");
        assert_eq!(Charge::int(4).to_string(), "4");
        assert_eq!(&Charge::new(2, 3) / 4, Charge::new(1, 6));
    }
}
