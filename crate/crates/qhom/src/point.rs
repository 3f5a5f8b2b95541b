//! Rational points of the projective plane in a canonical representative.

use crate::error::{Error, Result};
use crate::rational::{rat_from_string, rat_to_string, Rational};
use num::{One, Zero};
use std::fmt;

/// A point of P^2 with rational coordinates, scaled so the first nonzero
/// coordinate is 1. The canonical form makes points usable as exact
/// dictionary keys in reports.
#[derive(Clone, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub struct ProjectivePoint {
    coords: [Rational; 3],
}

impl ProjectivePoint {
    pub fn new(coords: [Rational; 3]) -> Result<Self> {
        let k = coords
            .iter()
            .position(|c| !c.is_zero())
            .ok_or_else(|| Error::Parse {
                pos: 0,
                msg: "projective point cannot be (0:0:0)".into(),
            })?;
        let s = coords[k].clone();
        let mut c = coords;
        for x in &mut c {
            *x /= s.clone();
        }
        Ok(ProjectivePoint { coords: c })
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self> {
        ProjectivePoint::new([
            Rational::from_integer(a.into()),
            Rational::from_integer(b.into()),
            Rational::from_integer(c.into()),
        ])
    }

    /// Parses `a:b:c` with rational entries.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("expected a:b:c, got {:?}", s),
            });
        }
        let mut coords = [Rational::zero(), Rational::zero(), Rational::zero()];
        for (i, p) in parts.iter().enumerate() {
            coords[i] = rat_from_string(p.trim())?;
        }
        ProjectivePoint::new(coords)
    }

    pub fn coords(&self) -> &[Rational; 3] {
        &self.coords
    }

    /// Index of the first nonzero coordinate (which equals 1).
    pub fn pivot(&self) -> usize {
        self.coords.iter().position(|c| c.is_one()).unwrap()
    }

    /// Coordinates padded to the engine's variable count.
    pub fn affine_coords(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = self.coords.to_vec();
        v.push(Rational::zero());
        v
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}:{}:{})",
            rat_to_string(&self.coords[0]),
            rat_to_string(&self.coords[1]),
            rat_to_string(&self.coords[2])
        )
    }
}
