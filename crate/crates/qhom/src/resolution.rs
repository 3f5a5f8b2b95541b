//! Graded free resolutions: syzygy bases, minimal generating sets of graded
//! modules, minimal free resolutions with exactness and minimality checks,
//! the canonical first syzygy matrix of a curve's Jacobian ideal, and the
//! minimal degree of a relation (mdr) by exact linear algebra.

use crate::engine::{syzygies_of_generators, GbLimits, ModPoly};
use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::monomial::{Monomial, MAX_VARS};
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use num::{Signed, Zero};

/// Monomials of total degree `n` in the first `nvars` variables, descending
/// under grevlex.
pub fn monomials_of_degree(n: u32, nvars: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = [0u16; MAX_VARS];
    fn rec(
        nvars: usize,
        var: usize,
        left: u32,
        exps: &mut [u16; MAX_VARS],
        out: &mut Vec<Monomial>,
    ) {
        if var + 1 == nvars {
            exps[var] = left as u16;
            out.push(Monomial { exps: *exps });
            exps[var] = 0;
            return;
        }
        for e in (0..=left).rev() {
            exps[var] = e as u16;
            rec(nvars, var + 1, left - e, exps, out);
        }
        exps[var] = 0;
    }
    rec(nvars, 0, n, &mut exps, &mut out);
    let ord = MonomialOrder::Grevlex;
    out.sort_by(|a, b| ord.cmp(b, a));
    out
}

/// A map of graded free modules, stored column-major as elements of the
/// target. Degrees are absolute: entry (r,c) is homogeneous of degree
/// `col_degrees[c] - row_degrees[r]` (or zero).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedMatrix {
    pub rows: usize,
    pub entries: Vec<Vec<Polynomial>>, // entries[c][r]: column-major
    pub row_degrees: Vec<i64>,
    pub col_degrees: Vec<i64>,
}

impl GradedMatrix {
    pub fn cols(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[c][r]
    }

    pub fn column(&self, c: usize) -> &[Polynomial] {
        &self.entries[c]
    }

    pub fn from_modpolys(cols: &[ModPoly], row_degrees: Vec<i64>) -> Result<GradedMatrix> {
        let rows = row_degrees.len();
        let mut entries = Vec::with_capacity(cols.len());
        let mut col_degrees = Vec::with_capacity(cols.len());
        for v in cols {
            let d = v
                .homogeneous_degree(&row_degrees)
                .ok_or_else(|| Error::Internal("non-homogeneous syzygy column".into()))?;
            col_degrees.push(d);
            entries.push(v.to_components(rows));
        }
        Ok(GradedMatrix {
            rows,
            entries,
            row_degrees,
            col_degrees,
        })
    }

    /// Checks the grading of every entry.
    pub fn is_graded(&self) -> bool {
        self.entries.iter().enumerate().all(|(c, col)| {
            col.iter().enumerate().all(|(r, p)| {
                p.is_zero()
                    || p.homogeneous_degree().map(i64::from)
                        == Some(self.col_degrees[c] - self.row_degrees[r])
            })
        })
    }

    /// True when no entry is a nonzero constant (the matrix maps into the
    /// irrelevant-maximal-ideal multiple of the target).
    pub fn is_minimal(&self) -> bool {
        self.entries.iter().flatten().all(|p| !p.is_constant())
    }

    /// Matrix-vector product: image of column vector `v` (length cols).
    pub fn apply(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        let mut out = vec![Polynomial::zero(); self.rows];
        for (c, col) in self.entries.iter().enumerate() {
            if v[c].is_zero() {
                continue;
            }
            for (r, e) in col.iter().enumerate() {
                if !e.is_zero() {
                    out[r] = out[r].add(&e.mul(&v[c]));
                }
            }
        }
        out
    }

    /// True when `self . other` is the zero matrix.
    pub fn composes_to_zero(&self, other: &GradedMatrix) -> bool {
        assert_eq!(self.cols(), other.rows);
        (0..other.cols()).all(|c| self.apply(other.column(c)).iter().all(|p| p.is_zero()))
    }
}

/// Removes unit entries of a presentation matrix by exact column operations,
/// deleting the corresponding row and column each time, then drops zero
/// columns. Matrices produced by the minimal resolution have no unit entries;
/// this pass is the independent check for that.
pub fn prune_constant_entries(m: &GradedMatrix) -> GradedMatrix {
    let mut entries = m.entries.clone();
    let mut row_degrees = m.row_degrees.clone();
    let mut col_degrees = m.col_degrees.clone();
    loop {
        let mut found = None;
        'scan: for c in 0..entries.len() {
            for r in 0..row_degrees.len() {
                if entries[c][r].is_constant() {
                    found = Some((r, c));
                    break 'scan;
                }
            }
        }
        let Some((r, c)) = found else { break };
        let pivot = entries[c][r].clone();
        let pivot_col = entries[c].clone();
        for (ci, col) in entries.iter_mut().enumerate() {
            if ci == c || col[r].is_zero() {
                continue;
            }
            let factor = col[r].exact_div(&pivot).unwrap();
            for (ri, e) in col.iter_mut().enumerate() {
                *e = e.sub(&factor.mul(&pivot_col[ri]));
            }
        }
        entries.remove(c);
        col_degrees.remove(c);
        for col in &mut entries {
            col.remove(r);
        }
        row_degrees.remove(r);
    }
    let mut keep_entries = Vec::new();
    let mut keep_degrees = Vec::new();
    for (c, col) in entries.iter().enumerate() {
        if col.iter().any(|p| !p.is_zero()) {
            keep_entries.push(col.clone());
            keep_degrees.push(col_degrees[c]);
        }
    }
    GradedMatrix {
        rows: row_degrees.len(),
        entries: keep_entries,
        row_degrees,
        col_degrees: keep_degrees,
    }
}

/// Generators of the syzygy module of `gens` (elements of a graded free
/// module with the given twists).
pub fn syzygy_basis(gens: &[ModPoly], twists: &[i64], limits: &GbLimits) -> Result<Vec<ModPoly>> {
    syzygies_of_generators(gens, &MonomialOrder::Grevlex, twists, limits)
}

/// Minimal generating set of the graded module generated by `gens`: greedy
/// ascending by degree, keeping an element iff it is not in the submodule
/// generated by those already kept. Returns the kept elements with their
/// degrees, ascending.
pub fn minimal_generators(
    gens: &[ModPoly],
    twists: &[i64],
    limits: &GbLimits,
) -> Result<Vec<(ModPoly, i64)>> {
    let ord = MonomialOrder::Grevlex;
    let mut with_deg: Vec<(ModPoly, i64)> = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let d = g
            .homogeneous_degree(twists)
            .ok_or_else(|| Error::Internal("minimal_generators needs homogeneous input".into()))?;
        with_deg.push((g.clone(), d));
    }
    with_deg.sort_by_key(|(_, d)| *d);
    let mut kept: Vec<(ModPoly, i64)> = Vec::new();
    let mut basis: Vec<ModPoly> = Vec::new();
    for (g, d) in with_deg {
        let gb = crate::engine::module_buchberger(&basis, &ord, twists, limits, false)?;
        let mut counter = crate::engine::StepCounter::new(limits);
        let (nf, _) = crate::engine::reduce(&g, &gb.basis, &ord, &mut counter, false)?;
        if !nf.is_zero() {
            basis.push(g.clone());
            kept.push((g, d));
        }
    }
    Ok(kept)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BettiTable {
    /// `levels[i]` are the ascending absolute degrees of the generators of
    /// the i-th module of the resolution.
    pub levels: Vec<Vec<i64>>,
}

#[derive(Clone, Debug)]
pub struct FreeResolution {
    /// Degrees of the minimal generators of the resolved module.
    pub initial_degrees: Vec<i64>,
    /// `matrices[0]` presents the module on those generators; each later
    /// matrix presents the syzygies of the previous one.
    pub matrices: Vec<GradedMatrix>,
}

impl FreeResolution {
    pub fn length(&self) -> usize {
        self.matrices.len()
    }

    pub fn betti(&self) -> BettiTable {
        let mut levels = vec![self.initial_degrees.clone()];
        for m in &self.matrices {
            levels.push(m.col_degrees.clone());
        }
        BettiTable { levels }
    }

    /// Exactness-of-complex and minimality checks; the resolution is built to
    /// satisfy both, so a failure is an internal error.
    pub fn verify(&self) -> Result<()> {
        for m in &self.matrices {
            if !m.is_graded() {
                return Err(Error::Internal("resolution matrix not graded".into()));
            }
            if !m.is_minimal() {
                return Err(Error::Internal("resolution matrix not minimal".into()));
            }
        }
        for w in self.matrices.windows(2) {
            if !w[0].composes_to_zero(&w[1]) {
                return Err(Error::Internal(
                    "resolution differentials do not compose to zero".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Minimal graded free resolution of the module generated by `gens` inside
/// R^{rank} with the given twists. Stops when the syzygy module vanishes;
/// errors past `max_len` steps.
pub fn minimal_free_resolution_of_module(
    gens: &[ModPoly],
    twists: &[i64],
    limits: &GbLimits,
    max_len: usize,
) -> Result<FreeResolution> {
    let min0 = minimal_generators(gens, twists, limits)?;
    let initial_degrees: Vec<i64> = min0.iter().map(|(_, d)| *d).collect();
    let mut current: Vec<ModPoly> = min0.into_iter().map(|(g, _)| g).collect();
    let mut current_deg = initial_degrees.clone();
    let mut matrices = Vec::new();
    loop {
        let syz = syzygy_basis(&current, &current_deg, limits)?;
        let min_syz = minimal_generators(&syz, &current_deg, limits)?;
        if min_syz.is_empty() {
            break;
        }
        if matrices.len() >= max_len {
            return Err(Error::ResolutionTooLong(max_len));
        }
        let cols: Vec<ModPoly> = min_syz.iter().map(|(g, _)| g.clone()).collect();
        let m = GradedMatrix::from_modpolys(&cols, current_deg.clone())?;
        current_deg = m.col_degrees.clone();
        matrices.push(m);
        current = cols;
    }
    let res = FreeResolution {
        initial_degrees,
        matrices,
    };
    res.verify()?;
    Ok(res)
}

/// Minimal free resolution of an ideal given by ring generators.
pub fn minimal_free_resolution(
    gens: &[Polynomial],
    limits: &GbLimits,
    max_len: usize,
) -> Result<FreeResolution> {
    let ord = MonomialOrder::Grevlex;
    let mods: Vec<ModPoly> = gens
        .iter()
        .map(|g| ModPoly::from_polynomial(g, 0, &ord))
        .collect();
    minimal_free_resolution_of_module(&mods, &[0], limits, max_len)
}

/// A syzygy (a,b,c) of the three partial derivatives, with
/// a*f_x0 + b*f_x1 + c*f_x2 = 0; its degree is the common degree of the
/// components.
pub type SyzygyVector = Vec<Polynomial>;

/// Canonical first syzygy matrix: columns are a minimal generating set of the
/// syzygy module of the partial derivatives, each column primitive over the
/// integers with positive leading coefficient in its topmost nonzero entry,
/// ordered by ascending degree with deterministic tiebreaks.
pub fn first_syzygy_matrix(f: &Polynomial, limits: &GbLimits) -> Result<GradedMatrix> {
    let d = f.homogeneous_degree().ok_or(Error::NotHomogeneous)? as i64;
    let ord = MonomialOrder::Grevlex;
    let partials: Vec<ModPoly> = (0..3)
        .map(|i| ModPoly::from_polynomial(&f.partial_derivative(i), 0, &ord))
        .collect();
    let syz = syzygy_basis(&partials, &[0], limits)?;
    // components of the syzygies are graded with all three twists d-1
    let twists = vec![d - 1; 3];
    let min_syz = minimal_generators(&syz, &twists, limits)?;
    let cols: Vec<ModPoly> = min_syz.iter().map(|(g, _)| g.clone()).collect();
    let mut m = GradedMatrix::from_modpolys(&cols, twists)?;
    // column normalization: clear denominators and content, topmost nonzero
    // entry with positive leading coefficient
    for col in &mut m.entries {
        let joined = Polynomial::from_terms(
            col.iter()
                .enumerate()
                .flat_map(|(r, p)| {
                    p.terms().iter().map(move |t| crate::poly::Term {
                        coeff: t.coeff.clone(),
                        mon: {
                            // tag with a huge artificial exponent per row to
                            // keep terms distinct while sharing content
                            let mut mm = t.mon;
                            mm.exps[3] = r as u16;
                            mm
                        },
                    })
                })
                .collect(),
        );
        if joined.is_zero() {
            continue;
        }
        let (_, scale) = joined.primitive_part();
        let mut s = scale;
        let top = col.iter().find(|p| !p.is_zero()).unwrap();
        if (top.leading_coeff().unwrap() / &s).is_negative() {
            s = -s;
        }
        let inv = s.recip();
        for p in col.iter_mut() {
            *p = p.scale(&inv);
        }
    }
    // deterministic column order
    let mut idx: Vec<usize> = (0..m.cols()).collect();
    idx.sort_by(|&a, &b| {
        let ka = column_key(&m, a);
        let kb = column_key(&m, b);
        ka.cmp(&kb)
    });
    m.entries = idx.iter().map(|&i| m.entries[i].clone()).collect();
    m.col_degrees = idx.iter().map(|&i| m.col_degrees[i]).collect();
    Ok(m)
}

fn column_key(m: &GradedMatrix, c: usize) -> (i64, usize, Vec<String>) {
    let first = m.entries[c]
        .iter()
        .position(|p| !p.is_zero())
        .unwrap_or(m.rows);
    (
        m.col_degrees[c],
        first,
        m.entries[c].iter().map(|p| p.to_string()).collect(),
    )
}

/// Relation degrees of the curve: the column degrees of the first syzygy
/// matrix measured on components (deg a), not absolute.
pub fn syzygy_component_degrees(m: &GradedMatrix) -> Vec<i64> {
    let shift = m.row_degrees[0];
    m.col_degrees.iter().map(|d| d - shift).collect()
}

#[derive(Clone, Debug)]
pub struct MdrResult {
    pub r: u32,
    /// A nonzero syzygy (a,b,c) of the partials in the minimal degree.
    pub witness: SyzygyVector,
}

/// Minimal degree of a relation among the partial derivatives, found by an
/// exact nullspace search in ascending degree. Independent of the Groebner
/// machinery, so it doubles as a cross-check on the resolution.
pub fn mdr(f: &Polynomial) -> Result<MdrResult> {
    let d = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    if d < 1 {
        return Err(Error::DegreeTooSmall { min: 1, got: d });
    }
    let partials: Vec<Polynomial> = (0..3).map(|i| f.partial_derivative(i)).collect();
    for n in 0..=(2 * d) {
        let source = monomials_of_degree(n, 3);
        let target = monomials_of_degree(n + d - 1, 3);
        let tindex = |m: &Monomial| target.iter().position(|t| t == m).unwrap();
        let mut mat = RationalMatrix::zeros(target.len(), 3 * source.len());
        for (b, sm) in source.iter().enumerate() {
            for (i, p) in partials.iter().enumerate() {
                let col = i * source.len() + b;
                for t in p.terms() {
                    let row = tindex(&t.mon.mul(sm));
                    *mat.at_mut(row, col) = mat.at(row, col) + &t.coeff;
                }
            }
        }
        let null = mat.nullspace_basis();
        if let Some(v) = null.first() {
            let mut witness = Vec::with_capacity(3);
            for i in 0..3 {
                let terms = source
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| !v[i * source.len() + b].is_zero())
                    .map(|(b, m)| crate::poly::Term {
                        coeff: v[i * source.len() + b].clone(),
                        mon: *m,
                    })
                    .collect();
                witness.push(Polynomial::from_terms(terms));
            }
            // certificate: the witness annihilates the gradient
            let mut acc = Polynomial::zero();
            for (w, p) in witness.iter().zip(&partials) {
                acc = acc.add(&w.mul(p));
            }
            if !acc.is_zero() {
                return Err(Error::Internal("mdr witness fails to annihilate".into()));
            }
            return Ok(MdrResult { r: n, witness });
        }
    }
    Err(Error::Internal(
        "no syzygy found within the degree bound".into(),
    ))
}
