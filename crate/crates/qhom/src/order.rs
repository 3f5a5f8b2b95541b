//! Monomial orders: graded reverse lexicographic, lexicographic, and block
//! elimination orders. Variable precedence is fixed as x0 > x1 > x2 > t.

use crate::monomial::{Monomial, MAX_VARS};
use std::cmp::Ordering;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic; the canonical storage order.
    Grevlex,
    Lex,
    /// Elimination order: monomials are compared first by grevlex restricted
    /// to the variables in `eliminate` (a bitmask), then by grevlex on the
    /// remaining variables. Any monomial involving an eliminated variable is
    /// greater than any monomial free of them.
    Elim {
        eliminate: u8,
    },
}

/// Grevlex comparison restricted to the variables in `mask`.
fn grevlex_masked(a: &Monomial, b: &Monomial, mask: u8) -> Ordering {
    let da = a.degree_in(mask);
    let db = b.degree_in(mask);
    if da != db {
        return da.cmp(&db);
    }
    // Equal degree: the last variable (lowest precedence) where they differ
    // decides, with the smaller exponent winning.
    for i in (0..MAX_VARS).rev() {
        if mask & (1 << i) == 0 {
            continue;
        }
        if a.exps[i] != b.exps[i] {
            return b.exps[i].cmp(&a.exps[i]);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => grevlex_masked(a, b, u8::MAX),
            MonomialOrder::Lex => {
                for i in 0..MAX_VARS {
                    if a.exps[i] != b.exps[i] {
                        return a.exps[i].cmp(&b.exps[i]);
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Elim { eliminate } => {
                grevlex_masked(a, b, eliminate).then_with(|| grevlex_masked(a, b, !eliminate))
            }
        }
    }
}

/// Term-over-position comparison for free-module terms: the monomial is
/// compared first, ties broken by ascending component index (lower component
/// is greater).
pub fn cmp_module(ord: &MonomialOrder, a: &Monomial, ca: u32, b: &Monomial, cb: u32) -> Ordering {
    ord.cmp(a, b).then_with(|| cb.cmp(&ca))
}
