//! Ideal-level interface over the module engine: reduced Groebner bases,
//! normal forms, Hilbert functions, dimensions, and the classical ideal
//! operations (sum, intersection, quotient, saturation, elimination, radical
//! membership).

use crate::engine::{module_buchberger, reduce, GbLimits, ModPoly, StepCounter};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, AUX_VAR, MAX_VARS};
use crate::order::MonomialOrder;
use crate::poly::Polynomial;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ideal {
    pub gens: Vec<Polynomial>,
    /// Number of ambient variables (indices `0..nvars`); at most 3. The
    /// fourth slot is reserved for the auxiliary variable.
    pub nvars: usize,
}

impl Ideal {
    pub fn new(gens: Vec<Polynomial>, nvars: usize) -> Self {
        assert!(nvars <= AUX_VAR);
        debug_assert!(gens.iter().all(|g| !g.uses_aux()));
        Ideal { gens, nvars }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroebnerBasis {
    pub order: MonomialOrder,
    /// Reduced basis: monic, tail-reduced, sorted ascending by leading term.
    pub basis: Vec<Polynomial>,
    pub nvars: usize,
}

/// Reduced Groebner basis of an ideal under `order`.
pub fn buchberger(ideal: &Ideal, order: MonomialOrder, limits: &GbLimits) -> Result<GroebnerBasis> {
    gb_of_polys(&ideal.gens, order, ideal.nvars, limits)
}

pub fn gb_of_polys(
    polys: &[Polynomial],
    order: MonomialOrder,
    nvars: usize,
    limits: &GbLimits,
) -> Result<GroebnerBasis> {
    let mods: Vec<ModPoly> = polys
        .iter()
        .map(|p| ModPoly::from_polynomial(p, 0, &order))
        .collect();
    let out = module_buchberger(&mods, &order, &[0], limits, false)?;
    Ok(GroebnerBasis {
        order,
        basis: out.basis.iter().map(|b| b.component(0)).collect(),
        nvars,
    })
}

impl GroebnerBasis {
    pub fn normal_form(&self, f: &Polynomial, limits: &GbLimits) -> Result<Polynomial> {
        let mods: Vec<ModPoly> = self
            .basis
            .iter()
            .map(|p| ModPoly::from_polynomial(p, 0, &self.order))
            .collect();
        let mut counter = StepCounter::new(limits);
        let fm = ModPoly::from_polynomial(f, 0, &self.order);
        let (nf, _) = reduce(&fm, &mods, &self.order, &mut counter, false)?;
        Ok(nf.component(0))
    }

    pub fn contains(&self, f: &Polynomial, limits: &GbLimits) -> Result<bool> {
        Ok(self.normal_form(f, limits)?.is_zero())
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    /// Leading monomials of the reduced basis.
    pub fn staircase(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .map(|p| p.leading_term(&self.order).unwrap().mon)
            .collect()
    }

    fn ambient_mask(&self) -> u8 {
        (1u8 << self.nvars) - 1
    }

    /// Number of standard monomials of total degree `t` in the ambient
    /// variables (the Hilbert function of the quotient when the ideal is
    /// homogeneous and the order is degree-compatible).
    pub fn hilbert_function(&self, t: u32) -> usize {
        let stairs = self.staircase();
        let mut count = 0usize;
        let mut exps = [0u16; MAX_VARS];
        count_standard(&stairs, self.nvars, 0, t, &mut exps, &mut count);
        count
    }

    /// Krull dimension of the quotient ring: the largest number of variables
    /// supporting no leading monomial. The unit ideal reports -1.
    pub fn krull_dimension(&self) -> isize {
        let stairs = self.staircase();
        let mut best: isize = -1;
        let full = self.ambient_mask();
        for mask in 0..=full {
            if mask & !full != 0 {
                continue;
            }
            if stairs.iter().any(|m| m.supported_on(mask)) {
                continue;
            }
            best = best.max(mask.count_ones() as isize);
        }
        best
    }

    /// Q-dimension of the quotient by a zero-dimensional affine ideal, by
    /// counting standard monomials. Errors when the quotient is not finite
    /// dimensional.
    pub fn affine_vs_dim(&self) -> Result<usize> {
        if self.is_unit_ideal() {
            return Ok(0);
        }
        let stairs = self.staircase();
        let mut bounds = [0u16; MAX_VARS];
        for i in 0..self.nvars {
            let pure = stairs
                .iter()
                .filter(|m| m.supported_on(1 << i))
                .map(|m| m.exps[i])
                .min();
            match pure {
                Some(e) => bounds[i] = e,
                None => return Err(Error::PositiveDimensional),
            }
        }
        let mut count = 0usize;
        let mut exps = [0u16; MAX_VARS];
        count_boxed(&stairs, self.nvars, 0, &bounds, &mut exps, &mut count);
        Ok(count)
    }

    /// First degree from which the Hilbert function stays constant for
    /// `window` consecutive values, with the constant value. Requires a
    /// quotient of Krull dimension at most 1.
    pub fn stable_degree(&self, window: usize) -> Result<(u32, usize)> {
        if self.krull_dimension() > 1 {
            return Err(Error::PositiveDimensional);
        }
        let max_stair = self
            .staircase()
            .iter()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0);
        let cap = 3 * max_stair + window as u32 + 50;
        // the plateau is only trusted beyond the top staircase degree
        let start = max_stair;
        let mut run_start = start;
        let mut run_value = self.hilbert_function(start);
        let mut run_len = 1usize;
        for t in (start + 1)..=cap {
            let v = self.hilbert_function(t);
            if v == run_value {
                run_len += 1;
            } else {
                run_start = t;
                run_value = v;
                run_len = 1;
            }
            if run_len >= window {
                return Ok((run_start, run_value));
            }
        }
        Err(Error::Internal(
            "Hilbert function failed to stabilize within the scan bound".into(),
        ))
    }
}

fn count_standard(
    stairs: &[Monomial],
    nvars: usize,
    var: usize,
    remaining: u32,
    exps: &mut [u16; MAX_VARS],
    count: &mut usize,
) {
    if var + 1 == nvars {
        exps[var] = remaining as u16;
        let m = Monomial { exps: *exps };
        if !stairs.iter().any(|s| s.divides(&m)) {
            *count += 1;
        }
        exps[var] = 0;
        return;
    }
    for e in 0..=remaining {
        exps[var] = e as u16;
        count_standard(stairs, nvars, var + 1, remaining - e, exps, count);
    }
    exps[var] = 0;
}

fn count_boxed(
    stairs: &[Monomial],
    nvars: usize,
    var: usize,
    bounds: &[u16; MAX_VARS],
    exps: &mut [u16; MAX_VARS],
    count: &mut usize,
) {
    if var == nvars {
        let m = Monomial { exps: *exps };
        if !stairs.iter().any(|s| s.divides(&m)) {
            *count += 1;
        }
        return;
    }
    for e in 0..bounds[var] {
        exps[var] = e;
        count_boxed(stairs, nvars, var + 1, bounds, exps, count);
    }
    exps[var] = 0;
}

/// I + J.
pub fn ideal_sum(a: &Ideal, b: &Ideal) -> Ideal {
    assert_eq!(a.nvars, b.nvars);
    let mut gens = a.gens.clone();
    gens.extend(b.gens.iter().cloned());
    Ideal::new(gens, a.nvars)
}

/// Generators supported on the complement of `mask`, i.e. the elimination
/// ideal, via a block order.
pub fn eliminate(ideal: &Ideal, mask: u8, limits: &GbLimits) -> Result<Vec<Polynomial>> {
    let order = MonomialOrder::Elim { eliminate: mask };
    let mods: Vec<ModPoly> = ideal
        .gens
        .iter()
        .map(|p| ModPoly::from_polynomial(p, 0, &order))
        .collect();
    let out = module_buchberger(&mods, &order, &[0], limits, false)?;
    Ok(out
        .basis
        .iter()
        .map(|b| b.component(0))
        .filter(|p| p.support() & mask == 0)
        .collect())
}

/// I ∩ J via the auxiliary variable: eliminate t from t·I + (1-t)·J.
pub fn intersect(a: &Ideal, b: &Ideal, limits: &GbLimits) -> Result<Ideal> {
    assert_eq!(a.nvars, b.nvars);
    let t = Polynomial::var(AUX_VAR);
    let one_minus_t = Polynomial::one().sub(&t);
    let mut gens: Vec<Polynomial> = a.gens.iter().map(|g| g.mul(&t)).collect();
    gens.extend(b.gens.iter().map(|g| g.mul(&one_minus_t)));
    let extended = Ideal {
        gens,
        nvars: a.nvars,
    };
    let kept = eliminate(&extended, 1 << AUX_VAR, limits)?;
    Ok(Ideal::new(kept, a.nvars))
}

/// I : h = (I ∩ <h>) / h.
pub fn ideal_quotient(ideal: &Ideal, h: &Polynomial, limits: &GbLimits) -> Result<Ideal> {
    assert!(!h.is_zero());
    let principal = Ideal::new(vec![h.clone()], ideal.nvars);
    let meet = intersect(ideal, &principal, limits)?;
    let gens = meet
        .gens
        .iter()
        .map(|g| {
            g.exact_div(h).ok_or_else(|| {
                Error::Internal("intersection with a principal ideal not divisible".into())
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Ideal::new(gens, ideal.nvars))
}

/// I : J = ∩_j (I : g_j).
pub fn quotient_by_ideal(ideal: &Ideal, j: &Ideal, limits: &GbLimits) -> Result<Ideal> {
    let mut acc: Option<Ideal> = None;
    for g in &j.gens {
        if g.is_zero() {
            continue;
        }
        let q = ideal_quotient(ideal, g, limits)?;
        acc = Some(match acc {
            None => q,
            Some(prev) => intersect(&prev, &q, limits)?,
        });
    }
    Ok(acc.unwrap_or_else(|| ideal.clone()))
}

/// I : h^∞ by iterating quotients until the reduced Groebner basis is stable.
/// Returns the saturation and the exponent at which it stabilized.
pub fn saturate(
    ideal: &Ideal,
    h: &Polynomial,
    limits: &GbLimits,
    max_iters: usize,
) -> Result<(Ideal, usize)> {
    let mut current = ideal.clone();
    let mut gb = buchberger(&current, MonomialOrder::Grevlex, limits)?;
    for k in 0..max_iters {
        let next = ideal_quotient(&current, h, limits)?;
        let gb_next = buchberger(&next, MonomialOrder::Grevlex, limits)?;
        if gb_next.basis == gb.basis {
            return Ok((Ideal::new(gb.basis, ideal.nvars), k));
        }
        current = next;
        gb = gb_next;
    }
    Err(Error::SaturationCapExceeded)
}

/// Saturation of a homogeneous ideal by a single variable, using the grevlex
/// property: with the variable last in precedence, dividing every reduced
/// basis element by its highest power of that variable yields a basis of the
/// saturation. Much cheaper than iterated quotients.
pub fn saturate_by_variable_homogeneous(
    ideal: &Ideal,
    var: usize,
    limits: &GbLimits,
) -> Result<Ideal> {
    assert!(var < ideal.nvars && ideal.nvars == 3);
    debug_assert!(ideal.is_homogeneous());
    // permutation sending `var` to the last slot (an involution)
    let perm: [usize; MAX_VARS] = match var {
        2 => [0, 1, 2, 3],
        1 => [0, 2, 1, 3],
        _ => [2, 1, 0, 3],
    };
    let permuted: Vec<Polynomial> = ideal.gens.iter().map(|g| g.permute_vars(&perm)).collect();
    let gb = gb_of_polys(&permuted, MonomialOrder::Grevlex, ideal.nvars, limits)?;
    let divided: Vec<Polynomial> = gb
        .basis
        .iter()
        .map(|g| {
            let e = g.terms().iter().map(|t| t.mon.exps[2]).min().unwrap_or(0);
            if e == 0 {
                g.clone()
            } else {
                let mut m = Monomial::one();
                m.exps[2] = e;
                g.exact_div(&Polynomial::monomial(num::One::one(), m))
                    .unwrap()
            }
        })
        .map(|g| g.permute_vars(&perm))
        .collect();
    Ok(Ideal::new(divided, ideal.nvars))
}

/// Rabinowitsch trick: h ∈ √I iff 1 ∈ I + <1 - t·h>.
pub fn radical_membership(h: &Polynomial, ideal: &Ideal, limits: &GbLimits) -> Result<bool> {
    if h.is_zero() {
        let gb = buchberger(ideal, MonomialOrder::Grevlex, limits)?;
        return Ok(gb.basis.is_empty() || gb.is_unit_ideal());
    }
    let t = Polynomial::var(AUX_VAR);
    let mut gens = ideal.gens.clone();
    gens.push(Polynomial::one().sub(&t.mul(h)));
    let gb = gb_of_polys(&gens, MonomialOrder::Grevlex, ideal.nvars, limits)?;
    Ok(gb.is_unit_ideal())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_polynomial;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap()
    }

    fn ideal(gens: &[&str]) -> Ideal {
        Ideal::new(gens.iter().map(|s| p(s)).collect(), 3)
    }

    fn lim() -> GbLimits {
        GbLimits::default()
    }

    #[test]
    fn normal_form_reduces() {
        let gb = buchberger(&ideal(&["x0"]), MonomialOrder::Grevlex, &lim()).unwrap();
        let nf = gb.normal_form(&p("x0^2 + x1"), &lim()).unwrap();
        assert_eq!(nf, p("x1"));
        assert!(gb.contains(&p("x0*x2"), &lim()).unwrap());
    }

    #[test]
    fn fermat_cubic_milnor_algebra() {
        // Jacobian ideal of x0^3+x1^3+x2^3 (scaled): <x0^2, x1^2, x2^2>
        let gb = buchberger(
            &ideal(&["x0^2", "x1^2", "x2^2"]),
            MonomialOrder::Grevlex,
            &lim(),
        )
        .unwrap();
        let hf: Vec<usize> = (0..5).map(|t| gb.hilbert_function(t)).collect();
        assert_eq!(hf, vec![1, 3, 3, 1, 0]);
        assert_eq!(gb.affine_vs_dim().unwrap(), 8);
        assert_eq!(gb.krull_dimension(), 0);
    }

    #[test]
    fn dimension_of_curve_and_unit() {
        let gb = buchberger(&ideal(&["x0"]), MonomialOrder::Grevlex, &lim()).unwrap();
        assert_eq!(gb.krull_dimension(), 2);
        assert!(gb.affine_vs_dim().is_err());
        let unit = buchberger(&ideal(&["x0", "1 - x0"]), MonomialOrder::Grevlex, &lim()).unwrap();
        assert!(unit.is_unit_ideal());
        assert_eq!(unit.krull_dimension(), -1);
        assert_eq!(unit.affine_vs_dim().unwrap(), 0);
    }

    #[test]
    fn intersection_of_principal_ideals() {
        let meet = intersect(&ideal(&["x0"]), &ideal(&["x1"]), &lim()).unwrap();
        let gb = buchberger(&meet, MonomialOrder::Grevlex, &lim()).unwrap();
        assert_eq!(gb.basis, vec![p("x0*x1")]);
    }

    #[test]
    fn quotient_and_saturation() {
        let q = ideal_quotient(&ideal(&["x0*x1"]), &p("x0"), &lim()).unwrap();
        let gb = buchberger(&q, MonomialOrder::Grevlex, &lim()).unwrap();
        assert_eq!(gb.basis, vec![p("x1")]);

        let (sat, iters) = saturate(&ideal(&["x0*x1", "x0*x2"]), &p("x0"), &lim(), 20).unwrap();
        let gb = buchberger(&sat, MonomialOrder::Grevlex, &lim()).unwrap();
        assert_eq!(gb.basis, vec![p("x2"), p("x1")]);
        assert!(iters >= 1);
    }

    #[test]
    fn homogeneous_variable_saturation_agrees() {
        let i = ideal(&["x0^2*x1 - x0*x2^2", "x0^3"]);
        for var in 0..3 {
            let fast = saturate_by_variable_homogeneous(&i, var, &lim()).unwrap();
            let (slow, _) = saturate(&i, &Polynomial::var(var), &lim(), 30).unwrap();
            let gf = buchberger(&fast, MonomialOrder::Grevlex, &lim()).unwrap();
            let gs = buchberger(&slow, MonomialOrder::Grevlex, &lim()).unwrap();
            assert_eq!(gf.basis, gs.basis, "variable {}", var);
        }
    }

    #[test]
    fn elimination_finds_the_twisted_cubic_equation() {
        // x0 = s^2, x1 = s^3 with s = x2: eliminating x2 yields x0^3 - x1^2
        let i = ideal(&["x0 - x2^2", "x1 - x2^3"]);
        let kept = eliminate(&i, 1 << 2, &lim()).unwrap();
        let gb = gb_of_polys(&kept, MonomialOrder::Grevlex, 3, &lim()).unwrap();
        assert!(gb.contains(&p("x0^3 - x1^2"), &lim()).unwrap());
        assert!(kept.iter().all(|g| g.support() & (1 << 2) == 0));
    }

    #[test]
    fn radical_membership_rabinowitsch() {
        let i = ideal(&["x0^3"]);
        assert!(radical_membership(&p("x0"), &i, &lim()).unwrap());
        assert!(!radical_membership(&p("x1"), &i, &lim()).unwrap());
        // radical of an intersection
        let j = ideal(&["x0^2*x1^3"]);
        assert!(radical_membership(&p("x0*x1"), &j, &lim()).unwrap());
        assert!(!radical_membership(&p("x0"), &j, &lim()).unwrap());
    }

    #[test]
    fn quotient_by_ideal_matches_pointwise() {
        let i = ideal(&["x0*x1", "x0*x2"]);
        let j = ideal(&["x1", "x2"]);
        let q = quotient_by_ideal(&i, &j, &lim()).unwrap();
        let gb = buchberger(&q, MonomialOrder::Grevlex, &lim()).unwrap();
        assert_eq!(gb.basis, vec![p("x0")]);
    }
}
