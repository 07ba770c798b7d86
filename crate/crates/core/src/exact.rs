//! Exact dyadic arithmetic for adjacency weights.
//!
//! Every weight produced by the lattice constructions is an integer multiple
//! of 1/4, so weights are stored as integer numerators over a fixed
//! denominator of 4. Products of two weights land on a denominator of 16 and
//! are accumulated as plain integers before being reduced to a
//! [`Rational64`].

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Rational64;

/// Common denominator of every stored weight.
pub const DENOM: i32 = 4;

/// A weight `n/4`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quarter(pub i32);

impl Quarter {
    pub const ZERO: Quarter = Quarter(0);
    pub const ONE: Quarter = Quarter(DENOM);
    pub const HALF: Quarter = Quarter(DENOM / 2);

    #[inline]
    pub fn numerator(self) -> i32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn abs(self) -> Quarter {
        Quarter(self.0.abs())
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        f64::from(self.0) / f64::from(DENOM)
    }

    pub fn to_ratio(self) -> Rational64 {
        Rational64::new(i64::from(self.0), i64::from(DENOM))
    }

    /// Converts an exact rational back to quarters, if it is representable.
    pub fn from_ratio(r: Rational64) -> Option<Quarter> {
        let scaled = r * Rational64::from_integer(i64::from(DENOM));
        if scaled.is_integer() {
            i32::try_from(*scaled.numer()).ok().map(Quarter)
        } else {
            None
        }
    }

    /// Product of two quarters, in sixteenths.
    #[inline]
    pub fn mul_sixteenths(self, other: Quarter) -> i64 {
        i64::from(self.0) * i64::from(other.0)
    }
}

impl Neg for Quarter {
    type Output = Quarter;
    fn neg(self) -> Quarter {
        Quarter(-self.0)
    }
}

impl Add for Quarter {
    type Output = Quarter;
    fn add(self, rhs: Quarter) -> Quarter {
        Quarter(self.0 + rhs.0)
    }
}

impl Sub for Quarter {
    type Output = Quarter;
    fn sub(self, rhs: Quarter) -> Quarter {
        Quarter(self.0 - rhs.0)
    }
}

impl fmt::Display for Quarter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0, DENOM)
    }
}

/// Reduces a sum of quarter products (in sixteenths) to a rational.
#[inline]
pub fn sixteenths(n: i64) -> Rational64 {
    Rational64::new(n, i64::from(DENOM * DENOM))
}

/// Dense square matrix of quarter weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    side: usize,
    data: Vec<Quarter>,
}

impl ExactMatrix {
    pub fn zeros(side: usize) -> Self {
        ExactMatrix {
            side,
            data: vec![Quarter::ZERO; side * side],
        }
    }

    pub fn identity(side: usize) -> Self {
        let mut m = Self::zeros(side);
        for i in 0..side {
            m.set(i, i, Quarter::ONE);
        }
        m
    }

    #[inline]
    pub fn side(&self) -> usize {
        self.side
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Quarter {
        self.data[i * self.side + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, w: Quarter) {
        self.data[i * self.side + j] = w;
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.side).all(|i| (i + 1..self.side).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|w| !w.is_zero()).count()
    }

    /// Entries as `f64`, row-major.
    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.data.iter().map(|w| w.to_f64()).collect()
    }
}

/// Read access to a square matrix of quarter weights.
pub trait QuarterMatrix {
    fn side(&self) -> usize;
    fn entry(&self, i: usize, j: usize) -> Quarter;
}

impl QuarterMatrix for ExactMatrix {
    fn side(&self) -> usize {
        self.side
    }

    fn entry(&self, i: usize, j: usize) -> Quarter {
        self.get(i, j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_round_trip() {
        for n in -16..=16 {
            let q = Quarter(n);
            assert_eq!(Quarter::from_ratio(q.to_ratio()), Some(q));
        }
        assert_eq!(Quarter::from_ratio(Rational64::new(1, 8)), None);
    }

    #[test]
    fn display_uses_fixed_denominator() {
        assert_eq!(Quarter(-1).to_string(), "-1/4");
        assert_eq!(Quarter::ONE.to_string(), "4/4");
    }

    #[test]
    fn product_in_sixteenths() {
        assert_eq!(sixteenths(Quarter(2).mul_sixteenths(Quarter(2))), Rational64::new(1, 4));
    }
}
