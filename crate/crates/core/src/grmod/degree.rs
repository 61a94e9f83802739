use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};

/// A grading value in the half-integer lattice, stored in halves.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Degree(i64);

impl Degree {
    pub const ZERO: Degree = Degree(0);

    pub fn new(j: i64) -> Degree {
        Degree(2 * j)
    }

    pub fn from_halves(h: i64) -> Degree {
        Degree(h)
    }

    pub fn halves(self) -> i64 {
        self.0
    }

    pub fn is_integral(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn as_integer(self) -> Option<i64> {
        self.is_integral().then_some(self.0 / 2)
    }

    /// Parse `"3"`, `"-2"` or `"k/2"`.
    pub fn parse(text: &str) -> Result<Degree> {
        let t = text.trim();
        let bad = || Error::Parse(format!("bad degree {text:?}"));
        match t.split_once('/') {
            None => t.parse::<i64>().map(Degree::new).map_err(|_| bad()),
            Some((k, "2")) => k.trim().parse::<i64>().map(Degree).map_err(|_| bad()),
            Some(_) => Err(bad()),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_integer() {
            Some(j) => write!(f, "{j}"),
            None => write!(f, "{}/2", self.0),
        }
    }
}

impl Add for Degree {
    type Output = Degree;
    fn add(self, o: Degree) -> Degree {
        Degree(self.0 + o.0)
    }
}

impl Sub for Degree {
    type Output = Degree;
    fn sub(self, o: Degree) -> Degree {
        Degree(self.0 - o.0)
    }
}

impl Neg for Degree {
    type Output = Degree;
    fn neg(self) -> Degree {
        Degree(-self.0)
    }
}

/// The grading group of a module category.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Grading {
    /// Z-graded (half-integers allowed through doubling).
    Integer,
    /// Z/n-graded; degrees are reduced mod n.
    Cyclic(u32),
    /// Ungraded: every degree is zero.
    Trivial,
}

impl Grading {
    pub fn normalize(self, d: Degree) -> Degree {
        match self {
            Grading::Integer => d,
            Grading::Cyclic(n) => Degree(d.0.rem_euclid(2 * n as i64)),
            Grading::Trivial => Degree::ZERO,
        }
    }

    pub fn is_cyclic(self) -> bool {
        matches!(self, Grading::Cyclic(_))
    }
}

impl fmt::Display for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grading::Integer => write!(f, "Z"),
            Grading::Cyclic(n) => write!(f, "Z/{n}"),
            Grading::Trivial => write!(f, "trivial"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        assert_eq!(Degree::parse("-3").unwrap(), Degree::new(-3));
        assert_eq!(Degree::parse("-1/2").unwrap(), Degree::from_halves(-1));
        assert_eq!(Degree::parse("4/2").unwrap(), Degree::new(2));
        assert!(Degree::parse("1/3").is_err());
        assert!(Degree::parse("x").is_err());
        assert_eq!(Degree::from_halves(3).to_string(), "3/2");
        assert_eq!(Degree::new(-2).to_string(), "-2");
    }

    #[test]
    fn cyclic_reduction() {
        let g = Grading::Cyclic(3);
        assert_eq!(g.normalize(Degree::new(-1)), Degree::new(2));
        assert_eq!(g.normalize(Degree::from_halves(-1)), Degree::from_halves(5));
        assert_eq!(Grading::Trivial.normalize(Degree::new(7)), Degree::ZERO);
    }
}
