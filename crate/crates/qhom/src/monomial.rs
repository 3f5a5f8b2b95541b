//! Monomials in up to [`MAX_VARS`] variables with a fixed exponent layout.
//!
//! The public ring is `Q[x0,x1,x2]`; the fourth slot is reserved for the
//! auxiliary variable used by ideal intersection and radical membership.

use std::fmt;

/// Three ambient variables plus one auxiliary slot.
pub const MAX_VARS: usize = 4;

/// Index of the auxiliary variable in extended-ring computations.
pub const AUX_VAR: usize = 3;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Monomial {
    pub exps: [u16; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(i: usize) -> Self {
        let mut m = Monomial::default();
        m.exps[i] = 1;
        m
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        let mut m = Monomial::default();
        m.exps[..exps.len()].copy_from_slice(exps);
        m
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    /// Total degree restricted to the variables in `mask`.
    pub fn degree_in(&self, mask: u8) -> u32 {
        (0..MAX_VARS)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| self.exps[i] as u32)
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// True when every variable occurring here lies in `mask`.
    pub fn supported_on(&self, mask: u8) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] == 0 || mask & (1 << i) != 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] += other.exps[i];
        }
        m
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] <= other.exps[i])
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            let mut m = *self;
            for i in 0..MAX_VARS {
                m.exps[i] -= other.exps[i];
            }
            Some(m)
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] = m.exps[i].max(other.exps[i]);
        }
        m
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] = m.exps[i].min(other.exps[i]);
        }
        m
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    /// Applies a variable permutation: exponent of new variable `i` is taken
    /// from old variable `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Monomial {
        let mut m = Monomial::default();
        for (i, &src) in perm.iter().enumerate() {
            m.exps[i] = self.exps[src];
        }
        m
    }
}

pub fn var_name(i: usize) -> String {
    if i == AUX_VAR {
        "t".to_string()
    } else {
        format!("x{}", i)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for i in 0..MAX_VARS {
            if self.exps[i] > 0 {
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}", var_name(i))?;
                if self.exps[i] > 1 {
                    write!(f, "^{}", self.exps[i])?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lcm_gcd_div() {
        let a = Monomial::from_exps(&[2, 0, 1]);
        let b = Monomial::from_exps(&[1, 3, 0]);
        assert_eq!(a.lcm(&b), Monomial::from_exps(&[2, 3, 1]));
        assert_eq!(a.gcd(&b), Monomial::from_exps(&[1, 0, 0]));
        assert_eq!(a.lcm(&b).div(&a).unwrap(), Monomial::from_exps(&[0, 3, 0]));
        assert!(a.div(&b).is_none());
    }

    #[test]
    fn coprime_and_support() {
        let a = Monomial::from_exps(&[2, 0, 0]);
        let b = Monomial::from_exps(&[0, 0, 5]);
        assert!(a.coprime(&b));
        assert!(a.supported_on(0b001));
        assert!(!b.supported_on(0b011));
    }
}
