//! Multivariate polynomials over Q with a canonical term order.
//!
//! Terms are stored strictly descending under grevlex with no zero
//! coefficients, so equal polynomials have equal representations.

use crate::monomial::{Monomial, AUX_VAR, MAX_VARS};
use crate::order::MonomialOrder;
use crate::rational::{rat_abs_string, Rational};
use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Term {
    pub coeff: Rational,
    pub mon: Monomial,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            Polynomial::zero()
        } else {
            Polynomial {
                terms: vec![Term {
                    coeff: c,
                    mon: Monomial::one(),
                }],
            }
        }
    }

    pub fn var(i: usize) -> Self {
        Polynomial {
            terms: vec![Term {
                coeff: Rational::one(),
                mon: Monomial::var(i),
            }],
        }
    }

    pub fn monomial(c: Rational, mon: Monomial) -> Self {
        Polynomial::from_terms(vec![Term { coeff: c, mon }])
    }

    /// Canonicalizes an arbitrary term list: sorts descending under grevlex,
    /// merges equal monomials, drops zeros.
    pub fn from_terms(mut terms: Vec<Term>) -> Self {
        let ord = MonomialOrder::Grevlex;
        terms.sort_by(|a, b| ord.cmp(&b.mon, &a.mon));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mon == t.mon => last.coeff += t.coeff,
                _ => {
                    if let Some(last) = out.last() {
                        if last.coeff.is_zero() {
                            out.pop();
                        }
                    }
                    out.push(t);
                }
            }
        }
        if let Some(last) = out.last() {
            if last.coeff.is_zero() {
                out.pop();
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        Polynomial { terms: out }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; zero polynomial reports 0.
    pub fn degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|t| t.mon.total_degree())
            .max()
            .unwrap_or(0)
    }

    /// Degree if homogeneous (zero counts as homogeneous of any degree).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.iter().map(|t| t.mon.total_degree());
        let d = match it.next() {
            None => return Some(0),
            Some(d) => d,
        };
        if it.all(|e| e == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some()
    }

    /// Bitmask of variables actually occurring.
    pub fn support(&self) -> u8 {
        let mut mask = 0u8;
        for t in &self.terms {
            for i in 0..MAX_VARS {
                if t.mon.exps[i] > 0 {
                    mask |= 1 << i;
                }
            }
        }
        mask
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: -t.coeff.clone(),
                    mon: t.mon,
                })
                .collect(),
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        // merge of two sorted term lists
        let ord = MonomialOrder::Grevlex;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match ord.cmp(&self.terms[i].mon, &other.terms[j].mon) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].coeff + &other.terms[j].coeff;
                    if !c.is_zero() {
                        out.push(Term {
                            coeff: c,
                            mon: self.terms[i].mon,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Polynomial { terms: out }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: &t.coeff * c,
                    mon: t.mon,
                })
                .collect(),
        }
    }

    /// Multiplies by a single term (order preserved, no re-sort needed).
    pub fn mul_term(&self, c: &Rational, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: &t.coeff * c,
                    mon: t.mon.mul(m),
                })
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        // accumulate the shorter operand against the longer
        let (short, long) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Polynomial::zero();
        for t in &short.terms {
            acc = acc.add(&long.mul_term(&t.coeff, &t.mon));
        }
        acc
    }

    pub fn power(&self, n: u32) -> Polynomial {
        let mut result = Polynomial::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial_derivative(&self, i: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.mon.exps[i] > 0)
            .map(|t| {
                let e = t.mon.exps[i];
                let mut m = t.mon;
                m.exps[i] -= 1;
                Term {
                    coeff: &t.coeff * BigRational::from(BigInt::from(e)),
                    mon: m,
                }
            })
            .collect();
        // differentiation preserves grevlex-descending sortedness within the
        // surviving terms only up to ties; re-canonicalize to stay safe
        Polynomial::from_terms(terms)
    }

    /// Exact evaluation at rational coordinates (length `MAX_VARS`, unused
    /// slots zero).
    pub fn evaluate(&self, coords: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for t in &self.terms {
            let mut v = t.coeff.clone();
            for i in 0..MAX_VARS {
                let e = t.mon.exps[i];
                if e > 0 {
                    let c = coords.get(i).cloned().unwrap_or_else(Rational::zero);
                    v *= num::pow::pow(c, e as usize);
                }
            }
            acc += v;
        }
        acc
    }

    /// Substitutes `images[i]` for variable `i`.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        let mut acc = Polynomial::zero();
        for t in &self.terms {
            let mut prod = Polynomial::constant(t.coeff.clone());
            for i in 0..MAX_VARS {
                let e = t.mon.exps[i];
                if e > 0 {
                    let img = images.get(i).cloned().unwrap_or_else(|| Polynomial::var(i));
                    prod = prod.mul(&img.power(e as u32));
                }
            }
            acc = acc.add(&prod);
        }
        acc
    }

    /// Renames variables: new variable `i` receives old variable `perm[i]`.
    /// `perm` must be injective on the support.
    pub fn permute_vars(&self, perm: &[usize]) -> Polynomial {
        Polynomial::from_terms(
            self.terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff.clone(),
                    mon: t.mon.permute(perm),
                })
                .collect(),
        )
    }

    pub fn leading_term(&self, ord: &MonomialOrder) -> Option<&Term> {
        match ord {
            MonomialOrder::Grevlex => self.terms.first(),
            _ => self.terms.iter().max_by(|a, b| ord.cmp(&a.mon, &b.mon)),
        }
    }

    /// Terms sorted descending under `ord` (cheap for grevlex).
    pub fn terms_sorted(&self, ord: &MonomialOrder) -> Vec<Term> {
        let mut ts = self.terms.clone();
        if !matches!(ord, MonomialOrder::Grevlex) {
            ts.sort_by(|a, b| ord.cmp(&b.mon, &a.mon));
        }
        ts
    }

    /// Divides exactly by `g`; returns the quotient only when the remainder
    /// of the one-divisor division algorithm is zero.
    pub fn exact_div(&self, g: &Polynomial) -> Option<Polynomial> {
        assert!(!g.is_zero(), "division by zero polynomial");
        let glt = &g.terms[0];
        let mut rem = self.clone();
        let mut quot: Vec<Term> = Vec::new();
        while !rem.is_zero() {
            let rlt = &rem.terms[0];
            let m = rlt.mon.div(&glt.mon)?;
            let c = &rlt.coeff / &glt.coeff;
            quot.push(Term {
                coeff: c.clone(),
                mon: m,
            });
            rem = rem.sub(&g.mul_term(&c, &m));
        }
        Some(Polynomial::from_terms(quot))
    }

    /// Clears denominators and integer content; leading (grevlex) coefficient
    /// made positive. Returns the primitive polynomial and the scalar `s`
    /// with `self = s * primitive`.
    pub fn primitive_part(&self) -> (Polynomial, Rational) {
        if self.is_zero() {
            return (Polynomial::zero(), Rational::one());
        }
        let mut den = BigInt::one();
        for t in &self.terms {
            den = den.lcm(t.coeff.denom());
        }
        let mut num = BigInt::zero();
        for t in &self.terms {
            num = num.gcd(&(t.coeff.numer() * &den / t.coeff.denom()));
        }
        let mut scale = BigRational::new(num, den);
        if self.terms[0].coeff.is_negative() {
            scale = -scale;
        }
        let inv = scale.recip();
        (self.scale(&inv), scale)
    }

    /// Leading grevlex coefficient (None for zero).
    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|t| &t.coeff)
    }

    /// True when the polynomial is a nonzero constant.
    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].mon.is_one()
    }

    /// True when the auxiliary variable occurs.
    pub fn uses_aux(&self) -> bool {
        self.support() & (1 << AUX_VAR) != 0
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let c = rat_abs_string(&t.coeff);
            if t.mon.is_one() {
                write!(f, "{}", c)?;
            } else if c == "1" {
                write!(f, "{}", t.mon)?;
            } else {
                write!(f, "{}*{}", c, t.mon)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn x(i: usize) -> Polynomial {
        Polynomial::var(i)
    }

    #[test]
    fn additive_inverse() {
        let f = x(0);
        assert!(f.add(&f.neg()).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let f = x(0).add(&x(1)).mul(&x(0).sub(&x(1)));
        let expect = x(0).mul(&x(0)).sub(&x(1).mul(&x(1)));
        assert_eq!(f, expect);
    }

    #[test]
    fn ploski_factor_square() {
        // (x0*x2 + x1^2)^2 = x0^2*x2^2 + 2*x0*x1^2*x2 + x1^4
        let base = x(0).mul(&x(2)).add(&x(1).power(2));
        let sq = base.power(2);
        let expect = x(0)
            .power(2)
            .mul(&x(2).power(2))
            .add(&x(0).mul(&x(1).power(2)).mul(&x(2)).scale(&rat_int(2)))
            .add(&x(1).power(4));
        assert_eq!(sq, expect);
    }

    #[test]
    fn derivative_drops_degree() {
        // d/dx2 (x0^7 + x0^3 x1^4 + x1^6 x2) = x1^6
        let f = x(0)
            .power(7)
            .add(&x(0).power(3).mul(&x(1).power(4)))
            .add(&x(1).power(6).mul(&x(2)));
        assert_eq!(f.partial_derivative(2), x(1).power(6));
        assert!(Polynomial::constant(rat_int(5))
            .partial_derivative(0)
            .is_zero());
    }

    #[test]
    fn evaluate_points() {
        let f = x(0).power(2).add(&x(1).power(2));
        let v = f.evaluate(&[rat_int(1), rat_int(2), rat_int(0), rat_int(0)]);
        assert_eq!(v, rat_int(5));
    }

    #[test]
    fn exact_division() {
        let f = x(0).power(2).sub(&x(1).power(2));
        let g = x(0).add(&x(1));
        let q = f.exact_div(&g).unwrap();
        assert_eq!(q, x(0).sub(&x(1)));
        assert!(f.exact_div(&x(2)).is_none());
    }

    #[test]
    fn primitive_part_scaling() {
        let f = x(0).scale(&rat(4, 3)).add(&x(1).scale(&rat(2, 3)));
        let (prim, s) = f.primitive_part();
        assert_eq!(prim, x(0).scale(&rat_int(2)).add(&x(1)));
        assert_eq!(prim.scale(&s), f);
    }

    #[test]
    fn display_canonical() {
        let f = x(0)
            .power(2)
            .sub(&x(0).mul(&x(1)).scale(&rat(3, 2)))
            .add(&Polynomial::constant(rat_int(-7)));
        assert_eq!(f.to_string(), "x0^2 - 3/2*x0*x1 - 7");
    }
}
