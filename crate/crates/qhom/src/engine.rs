//! The shared reduction engine: Buchberger's algorithm for submodules of a
//! free module R^k (ideals are the rank-1 case), normal forms with quotient
//! tracking, and Schreyer syzygies of a computed basis.
//!
//! Terms are ordered term-over-position: the monomial is compared under the
//! active order, ties broken by ascending component index. S-pair selection
//! follows the normal strategy (minimal lcm degree, lexicographic tiebreak on
//! the lcm monomial, then pair indices), so the reduced basis is
//! reproducible.

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::order::{cmp_module, MonomialOrder};
use crate::poly::{Polynomial, Term};
use crate::rational::Rational;
use num::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeSet;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MTerm {
    pub coeff: Rational,
    pub mon: Monomial,
    pub comp: u32,
}

/// An element of a free module R^k, terms sorted strictly descending.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ModPoly {
    pub terms: Vec<MTerm>,
}

#[derive(Clone, Copy, Debug)]
pub struct GbLimits {
    /// Cap on the total number of term cancellations.
    pub max_reductions: u64,
}

impl Default for GbLimits {
    fn default() -> Self {
        GbLimits {
            max_reductions: 50_000_000,
        }
    }
}

impl ModPoly {
    pub fn zero() -> Self {
        ModPoly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn unit(comp: u32) -> Self {
        ModPoly {
            terms: vec![MTerm {
                coeff: Rational::one(),
                mon: Monomial::one(),
                comp,
            }],
        }
    }

    pub fn normalize(mut terms: Vec<MTerm>, ord: &MonomialOrder) -> Self {
        terms.sort_by(|a, b| cmp_module(ord, &b.mon, b.comp, &a.mon, a.comp));
        let mut out: Vec<MTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mon == t.mon && last.comp == t.comp => {
                    last.coeff += t.coeff;
                    if last.coeff.is_zero() {
                        out.pop();
                    }
                }
                _ => {
                    if !t.coeff.is_zero() {
                        out.push(t);
                    }
                }
            }
        }
        ModPoly { terms: out }
    }

    pub fn from_polynomial(p: &Polynomial, comp: u32, ord: &MonomialOrder) -> Self {
        ModPoly::normalize(
            p.terms()
                .iter()
                .map(|t| MTerm {
                    coeff: t.coeff.clone(),
                    mon: t.mon,
                    comp,
                })
                .collect(),
            ord,
        )
    }

    pub fn from_components(comps: &[Polynomial], ord: &MonomialOrder) -> Self {
        let mut terms = Vec::new();
        for (i, p) in comps.iter().enumerate() {
            terms.extend(p.terms().iter().map(|t| MTerm {
                coeff: t.coeff.clone(),
                mon: t.mon,
                comp: i as u32,
            }));
        }
        ModPoly::normalize(terms, ord)
    }

    pub fn component(&self, comp: u32) -> Polynomial {
        Polynomial::from_terms(
            self.terms
                .iter()
                .filter(|t| t.comp == comp)
                .map(|t| Term {
                    coeff: t.coeff.clone(),
                    mon: t.mon,
                })
                .collect(),
        )
    }

    pub fn to_components(&self, rank: usize) -> Vec<Polynomial> {
        (0..rank as u32).map(|c| self.component(c)).collect()
    }

    pub fn lead(&self) -> &MTerm {
        &self.terms[0]
    }

    pub fn scale(&self, c: &Rational) -> ModPoly {
        if c.is_zero() {
            return ModPoly::zero();
        }
        ModPoly {
            terms: self
                .terms
                .iter()
                .map(|t| MTerm {
                    coeff: &t.coeff * c,
                    mon: t.mon,
                    comp: t.comp,
                })
                .collect(),
        }
    }

    /// self + c * m * other, both sorted under `ord`.
    pub fn add_scaled(
        &self,
        c: &Rational,
        m: &Monomial,
        other: &ModPoly,
        ord: &MonomialOrder,
    ) -> ModPoly {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let a = &self.terms[i];
            let bm = other.terms[j].mon.mul(m);
            let bc = other.terms[j].comp;
            match cmp_module(ord, &a.mon, a.comp, &bm, bc) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(MTerm {
                        coeff: &other.terms[j].coeff * c,
                        mon: bm,
                        comp: bc,
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let v = &a.coeff + &other.terms[j].coeff * c;
                    if !v.is_zero() {
                        out.push(MTerm {
                            coeff: v,
                            mon: a.mon,
                            comp: a.comp,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        while j < other.terms.len() {
            out.push(MTerm {
                coeff: &other.terms[j].coeff * c,
                mon: other.terms[j].mon.mul(m),
                comp: other.terms[j].comp,
            });
            j += 1;
        }
        ModPoly { terms: out }
    }

    /// Clears denominators and content; leading coefficient made positive.
    /// Returns the scalar `s` with `self = s * primitive`.
    pub fn make_primitive(&mut self) -> Rational {
        use num::BigInt;
        use num::Integer;
        if self.is_zero() {
            return Rational::one();
        }
        let mut den = BigInt::one();
        for t in &self.terms {
            den = den.lcm(t.coeff.denom());
        }
        let mut num = BigInt::zero();
        for t in &self.terms {
            num = num.gcd(&(t.coeff.numer() * &den / t.coeff.denom()));
        }
        let mut s = Rational::new(num, den);
        if self.terms[0].coeff.is_negative() {
            s = -s;
        }
        let inv = s.clone().recip();
        for t in &mut self.terms {
            t.coeff = &t.coeff * &inv;
        }
        s
    }

    /// Degree of a homogeneous element given component twists; None if not
    /// homogeneous.
    pub fn homogeneous_degree(&self, twists: &[i64]) -> Option<i64> {
        let mut deg = None;
        for t in &self.terms {
            let d = t.mon.total_degree() as i64 + twists[t.comp as usize];
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg
    }
}

/// Counts cancellation work against the configured cap.
pub struct StepCounter {
    pub steps: u64,
    pub cap: u64,
}

impl StepCounter {
    pub fn new(limits: &GbLimits) -> Self {
        StepCounter {
            steps: 0,
            cap: limits.max_reductions,
        }
    }

    fn bump(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.cap {
            Err(Error::StepCapExceeded(self.steps))
        } else {
            Ok(())
        }
    }
}

/// Full normal form of `f` against `basis`. When `quotients` is requested,
/// returns ring-polynomial quotients `q` with `f = sum q[k] * basis[k] + nf`.
pub fn reduce(
    f: &ModPoly,
    basis: &[ModPoly],
    ord: &MonomialOrder,
    counter: &mut StepCounter,
    want_quotients: bool,
) -> Result<(ModPoly, Option<Vec<Polynomial>>)> {
    let mut quots: Vec<Vec<Term>> = if want_quotients {
        vec![Vec::new(); basis.len()]
    } else {
        Vec::new()
    };
    let mut rem: Vec<MTerm> = Vec::new();
    let mut work = f.clone();
    'outer: while !work.is_zero() {
        let lt = work.lead().clone();
        for (k, b) in basis.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let bl = b.lead();
            if bl.comp == lt.comp && bl.mon.divides(&lt.mon) {
                counter.bump()?;
                let c = &lt.coeff / &bl.coeff;
                let m = lt.mon.div(&bl.mon).unwrap();
                work = work.add_scaled(&-&c, &m, b, ord);
                if want_quotients {
                    quots[k].push(Term { coeff: c, mon: m });
                }
                continue 'outer;
            }
        }
        // no reducer: the leading term joins the normal form
        rem.push(work.terms.remove(0));
    }
    let nf = ModPoly { terms: rem };
    let q = if want_quotients {
        Some(quots.into_iter().map(Polynomial::from_terms).collect())
    } else {
        None
    };
    Ok((nf, q))
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: u32,
    degree: i64,
}

fn pair_key(p: &Pair) -> (i64, [u16; 4], u32, usize, usize) {
    (p.degree, p.lcm.exps, p.comp, p.i, p.j)
}

pub struct GbOutput {
    /// Reduced basis, sorted ascending by leading term, monic.
    pub basis: Vec<ModPoly>,
    /// For each basis element, its expression over the input generators
    /// (an element of R^m with m = number of generators). Present when
    /// tracking was requested.
    pub reprs: Option<Vec<ModPoly>>,
    pub steps: u64,
}

/// Buchberger's algorithm with the product criterion (rank-1 inputs only),
/// the chain criterion, and optional tracking of each basis element as a
/// combination of the input generators.
pub fn module_buchberger(
    gens: &[ModPoly],
    ord: &MonomialOrder,
    twists: &[i64],
    limits: &GbLimits,
    track: bool,
) -> Result<GbOutput> {
    let mut counter = StepCounter::new(limits);
    let rank_one = gens.iter().all(|g| g.terms.iter().all(|t| t.comp == 0));
    let mut basis: Vec<ModPoly> = Vec::new();
    let mut reprs: Vec<ModPoly> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let mut el = g.clone();
        let s = el.make_primitive();
        basis.push(el);
        // repr = (1/s) * e_i so that element = repr . gens
        reprs.push(ModPoly::unit(i as u32).scale(&s.recip()));
    }

    let mut pairs: Vec<Pair> = Vec::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    let add_pairs = |basis: &[ModPoly], new_idx: usize, pairs: &mut Vec<Pair>| {
        let ln = basis[new_idx].lead();
        for k in 0..new_idx {
            let lk = basis[k].lead();
            if lk.comp == ln.comp {
                let lcm = lk.mon.lcm(&ln.mon);
                pairs.push(Pair {
                    i: k,
                    j: new_idx,
                    lcm,
                    comp: ln.comp,
                    degree: lcm.total_degree() as i64
                        + twists.get(ln.comp as usize).copied().unwrap_or(0),
                });
            }
        }
    };
    for idx in 0..basis.len() {
        add_pairs(&basis, idx, &mut pairs);
    }

    while !pairs.is_empty() {
        let best = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, p)| pair_key(p))
            .map(|(k, _)| k)
            .unwrap();
        let pair = pairs.swap_remove(best);
        done.insert((pair.i, pair.j));

        let (gi, gj) = (&basis[pair.i], &basis[pair.j]);
        let (li, lj) = (gi.lead(), gj.lead());

        // product criterion (valid in the ring case only)
        if rank_one && li.mon.coprime(&lj.mon) {
            continue;
        }
        // chain criterion
        let chained = basis.iter().enumerate().any(|(k, b)| {
            k != pair.i
                && k != pair.j
                && !b.is_zero()
                && b.lead().comp == pair.comp
                && b.lead().mon.divides(&pair.lcm)
                && done.contains(&(pair.i.min(k), pair.i.max(k)))
                && done.contains(&(pair.j.min(k), pair.j.max(k)))
        });
        if chained {
            continue;
        }

        let ci = (Rational::one() / &li.coeff).clone();
        let mi = pair.lcm.div(&li.mon).unwrap();
        let cj = (Rational::one() / &lj.coeff).clone();
        let mj = pair.lcm.div(&lj.mon).unwrap();
        let spoly =
            ModPoly::zero()
                .add_scaled(&ci, &mi, gi, ord)
                .add_scaled(&-cj.clone(), &mj, gj, ord);

        let (nf, quots) = reduce(&spoly, &basis, ord, &mut counter, track)?;
        if nf.is_zero() {
            continue;
        }
        let mut el = nf;
        let s = el.make_primitive();
        if track {
            // repr(S-poly) minus repr of subtracted multiples, all over 1/s
            let mut r = ModPoly::zero()
                .add_scaled(&ci, &mi, &reprs[pair.i], ord)
                .add_scaled(&-cj, &mj, &reprs[pair.j], ord);
            for (k, q) in quots.unwrap().iter().enumerate() {
                for t in q.terms() {
                    r = r.add_scaled(&-&t.coeff, &t.mon, &reprs[k], ord);
                }
            }
            reprs.push(r.scale(&s.recip()));
        } else {
            reprs.push(ModPoly::zero());
        }
        basis.push(el);
        let new_idx = basis.len() - 1;
        add_pairs(&basis, new_idx, &mut pairs);
    }

    // minimalize: drop elements whose leading term is divisible by another's
    let mut keep: Vec<bool> = vec![true; basis.len()];
    for a in 0..basis.len() {
        if !keep[a] {
            continue;
        }
        for b in 0..basis.len() {
            if a == b || !keep[b] {
                continue;
            }
            let (la, lb) = (basis[a].lead(), basis[b].lead());
            if la.comp == lb.comp && lb.mon.divides(&la.mon) {
                // prefer keeping the one with the smaller leading monomial;
                // equal leading monomials keep the earlier element
                if la.mon == lb.mon && a < b {
                    keep[b] = false;
                } else {
                    keep[a] = false;
                    break;
                }
            }
        }
    }
    let mut min_basis: Vec<ModPoly> = Vec::new();
    let mut min_reprs: Vec<ModPoly> = Vec::new();
    for (k, f) in keep.iter().enumerate() {
        if *f {
            min_basis.push(basis[k].clone());
            min_reprs.push(reprs[k].clone());
        }
    }

    // tail-reduce each element against the others and make monic
    let mut changed = true;
    while changed {
        changed = false;
        for k in 0..min_basis.len() {
            let me = min_basis[k].clone();
            let others: Vec<ModPoly> = min_basis
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != k)
                .map(|(_, b)| b.clone())
                .collect();
            let (nf, quots) = reduce(&me, &others, ord, &mut counter, track)?;
            if nf != me {
                changed = true;
                if track {
                    let mut r = min_reprs[k].clone();
                    let mut oi = 0;
                    for (i, _) in min_basis.iter().enumerate() {
                        if i == k {
                            continue;
                        }
                        let q = &quots.as_ref().unwrap()[oi];
                        for t in q.terms() {
                            let delta = min_reprs[i].clone();
                            r = r.add_scaled(&-&t.coeff, &t.mon, &delta, ord);
                        }
                        oi += 1;
                    }
                    min_reprs[k] = r;
                }
                min_basis[k] = nf;
            }
        }
    }
    for k in 0..min_basis.len() {
        let lc = min_basis[k].lead().coeff.clone();
        let inv = lc.recip();
        min_basis[k] = min_basis[k].scale(&inv);
        if track {
            min_reprs[k] = min_reprs[k].scale(&inv);
        }
    }

    // deterministic ordering: ascending leading term
    let mut order_idx: Vec<usize> = (0..min_basis.len()).collect();
    order_idx.sort_by(|&a, &b| {
        let (la, lb) = (min_basis[a].lead(), min_basis[b].lead());
        cmp_module(ord, &la.mon, la.comp, &lb.mon, lb.comp)
    });
    let basis_out: Vec<ModPoly> = order_idx.iter().map(|&k| min_basis[k].clone()).collect();
    let reprs_out: Vec<ModPoly> = order_idx.iter().map(|&k| min_reprs[k].clone()).collect();

    Ok(GbOutput {
        basis: basis_out,
        reprs: if track { Some(reprs_out) } else { None },
        steps: counter.steps,
    })
}

/// Schreyer generators of the syzygy module of a Groebner basis: every
/// same-component S-pair is reduced to zero and the recorded quotients give
/// one syzygy each. No pair criteria are applied here, which doubles as an
/// exhaustive post-hoc check of the Buchberger criterion.
pub fn schreyer_syzygies(
    gb: &[ModPoly],
    ord: &MonomialOrder,
    limits: &GbLimits,
) -> Result<Vec<ModPoly>> {
    let mut counter = StepCounter::new(limits);
    let mut syzygies = Vec::new();
    for i in 0..gb.len() {
        for j in (i + 1)..gb.len() {
            let (li, lj) = (gb[i].lead(), gb[j].lead());
            if li.comp != lj.comp {
                continue;
            }
            let lcm = li.mon.lcm(&lj.mon);
            let ci = Rational::one() / &li.coeff;
            let mi = lcm.div(&li.mon).unwrap();
            let cj = Rational::one() / &lj.coeff;
            let mj = lcm.div(&lj.mon).unwrap();
            let spoly = ModPoly::zero()
                .add_scaled(&ci, &mi, &gb[i], ord)
                .add_scaled(&-cj.clone(), &mj, &gb[j], ord);
            let (nf, quots) = reduce(&spoly, gb, ord, &mut counter, true)?;
            if !nf.is_zero() {
                return Err(Error::Internal(
                    "S-polynomial of a Groebner basis did not reduce to zero".into(),
                ));
            }
            let mut terms = vec![
                MTerm {
                    coeff: ci,
                    mon: mi,
                    comp: i as u32,
                },
                MTerm {
                    coeff: -cj,
                    mon: mj,
                    comp: j as u32,
                },
            ];
            for (k, q) in quots.unwrap().iter().enumerate() {
                terms.extend(q.terms().iter().map(|t| MTerm {
                    coeff: -&t.coeff,
                    mon: t.mon,
                    comp: k as u32,
                }));
            }
            let syz = ModPoly::normalize(terms, ord);
            if !syz.is_zero() {
                syzygies.push(syz);
            }
        }
    }
    Ok(syzygies)
}

/// Generators of the syzygy module of an arbitrary generating set, obtained
/// from a tracked Groebner basis, Schreyer syzygies, and the change of basis
/// in both directions.
pub fn syzygies_of_generators(
    gens: &[ModPoly],
    ord: &MonomialOrder,
    twists: &[i64],
    limits: &GbLimits,
) -> Result<Vec<ModPoly>> {
    let gb = module_buchberger(gens, ord, twists, limits, true)?;
    let reprs = gb.reprs.as_ref().unwrap();
    let schreyer = schreyer_syzygies(&gb.basis, ord, limits)?;
    let mut out: Vec<ModPoly> = Vec::new();
    // sigma over GB -> sigma . reprs, a syzygy of the generators
    for sigma in &schreyer {
        let mut v = ModPoly::zero();
        for t in &sigma.terms {
            v = v.add_scaled(&t.coeff, &t.mon, &reprs[t.comp as usize], ord);
        }
        if !v.is_zero() {
            out.push(v);
        }
    }
    // e_i - (expression of gen_i over the GB) . reprs
    let mut counter = StepCounter::new(limits);
    for (i, g) in gens.iter().enumerate() {
        let (nf, quots) = reduce(g, &gb.basis, ord, &mut counter, true)?;
        if !nf.is_zero() {
            return Err(Error::Internal(
                "generator does not reduce to zero against its own basis".into(),
            ));
        }
        let mut v = ModPoly::unit(i as u32);
        for (k, q) in quots.unwrap().iter().enumerate() {
            for t in q.terms() {
                v = v.add_scaled(&-&t.coeff, &t.mon, &reprs[k], ord);
            }
        }
        if !v.is_zero() {
            out.push(v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_polynomial;

    fn ideal_gb(gens: &[&str]) -> Vec<Polynomial> {
        let ord = MonomialOrder::Grevlex;
        let mods: Vec<ModPoly> = gens
            .iter()
            .map(|s| ModPoly::from_polynomial(&parse_polynomial(s).unwrap(), 0, &ord))
            .collect();
        let out = module_buchberger(&mods, &ord, &[0], &GbLimits::default(), false).unwrap();
        out.basis.iter().map(|b| b.component(0)).collect()
    }

    #[test]
    fn already_a_basis() {
        let gb = ideal_gb(&["x0", "x1"]);
        let strs: Vec<String> = gb.iter().map(|p| p.to_string()).collect();
        assert_eq!(strs, vec!["x1", "x0"]);
    }

    #[test]
    fn textbook_completion() {
        // <x0^3 - 2*x0*x1, x0^2*x1 - 2*x1^2 + x0> has the reduced basis
        // {x1^2 - x0/2, x0*x1, x0^2}
        let gb = ideal_gb(&["x0^3 - 2*x0*x1", "x0^2*x1 - 2*x1^2 + x0"]);
        let strs: Vec<String> = gb.iter().map(|p| p.to_string()).collect();
        assert_eq!(strs, vec!["x1^2 - 1/2*x0", "x0*x1", "x0^2"]);
        // all S-pairs of the output reduce to zero (checked by schreyer)
        let ord = MonomialOrder::Grevlex;
        let mods: Vec<ModPoly> = gb
            .iter()
            .map(|p| ModPoly::from_polynomial(p, 0, &ord))
            .collect();
        schreyer_syzygies(&mods, &ord, &GbLimits::default()).unwrap();
    }

    #[test]
    fn reduced_basis_unique_under_permutation() {
        let a = ideal_gb(&["x0^3 - 2*x0*x1", "x0^2*x1 - 2*x1^2 + x0"]);
        let b = ideal_gb(&["x0^2*x1 - 2*x1^2 + x0", "x0^3 - 2*x0*x1"]);
        assert_eq!(a, b);
    }

    #[test]
    fn koszul_syzygy_of_two_variables() {
        let ord = MonomialOrder::Grevlex;
        let gens: Vec<ModPoly> = ["x0", "x1"]
            .iter()
            .map(|s| ModPoly::from_polynomial(&parse_polynomial(s).unwrap(), 0, &ord))
            .collect();
        let syz = syzygies_of_generators(&gens, &ord, &[0], &GbLimits::default()).unwrap();
        // all syzygies must annihilate the generators
        for v in &syz {
            let mut acc = Polynomial::zero();
            for (i, g) in ["x0", "x1"].iter().enumerate() {
                let gi = parse_polynomial(g).unwrap();
                acc = acc.add(&v.component(i as u32).mul(&gi));
            }
            assert!(acc.is_zero());
        }
        // the Koszul relation (x1, -x0) is among them up to sign/scale
        assert!(!syz.is_empty());
    }

    #[test]
    fn tracked_representation_is_exact() {
        let ord = MonomialOrder::Grevlex;
        let gens_s = ["x0^2 - x1*x2", "x1^2 - x0*x2"];
        let gens: Vec<ModPoly> = gens_s
            .iter()
            .map(|s| ModPoly::from_polynomial(&parse_polynomial(s).unwrap(), 0, &ord))
            .collect();
        let out = module_buchberger(&gens, &ord, &[0], &GbLimits::default(), true).unwrap();
        for (b, r) in out.basis.iter().zip(out.reprs.as_ref().unwrap()) {
            let mut acc = Polynomial::zero();
            for (i, s) in gens_s.iter().enumerate() {
                let gi = parse_polynomial(s).unwrap();
                acc = acc.add(&r.component(i as u32).mul(&gi));
            }
            assert_eq!(acc, b.component(0));
        }
    }

    #[test]
    fn step_cap_is_enforced() {
        let ord = MonomialOrder::Grevlex;
        let gens: Vec<ModPoly> = ["x0^3 - x0*x1^2", "x0*x1 - x2^2"]
            .iter()
            .map(|s| ModPoly::from_polynomial(&parse_polynomial(s).unwrap(), 0, &ord))
            .collect();
        let tiny = GbLimits { max_reductions: 0 };
        match module_buchberger(&gens, &ord, &[0], &tiny, false) {
            Err(Error::StepCapExceeded(_)) => {}
            other => panic!("expected step cap error, got {:?}", other.map(|o| o.steps)),
        }
    }
}
