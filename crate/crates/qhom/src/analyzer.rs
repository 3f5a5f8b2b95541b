//! The analysis pipeline: validation gate, free / nearly free / 3-syzygy
//! classification with the Tjurina cross-check, the rank criterion for
//! quasi-homogeneity with its independent local Milnor/Tjurina oracle, and
//! the structural identity checks on the syzygy matrix.

use crate::engine::{GbLimits, ModPoly};
use crate::error::{Error, Result};
use crate::groebner::{
    buchberger, eliminate, gb_of_polys, intersect, radical_membership,
    saturate_by_variable_homogeneous, GroebnerBasis, Ideal,
};
use crate::linalg::RationalMatrix;
use crate::monomial::MAX_VARS;
use crate::order::MonomialOrder;
use crate::point::ProjectivePoint;
use crate::poly::Polynomial;
use crate::rational::{rat_int, Rational};
use crate::resolution::{
    first_syzygy_matrix, mdr, minimal_generators, syzygy_basis, syzygy_component_degrees,
    BettiTable, GradedMatrix, MdrResult,
};
use num::{BigInt, One, Signed, Zero};
use std::collections::BTreeSet;

#[derive(Clone, Debug)]
pub struct CurveInput {
    pub f: Polynomial,
    pub degree: u32,
    pub label: Option<String>,
    pub declared_points: Vec<ProjectivePoint>,
}

/// Validation gate: homogeneous of degree at least 3, Jacobian scheme at most
/// a finite set of points (Krull dimension of R/J_f at most 1), not a cone.
pub fn validate_curve(f: &Polynomial, limits: &GbLimits) -> Result<CurveInput> {
    let degree = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    if f.is_zero() || degree < 3 {
        return Err(Error::DegreeTooSmall {
            min: 3,
            got: degree,
        });
    }
    let partials: Vec<Polynomial> = (0..3).map(|i| f.partial_derivative(i)).collect();
    let gb = gb_of_polys(&partials, MonomialOrder::Grevlex, 3, limits)?;
    if gb.krull_dimension() > 1 {
        return Err(Error::NonIsolatedSingularities);
    }
    if mdr(f)?.r == 0 {
        return Err(Error::Cone);
    }
    Ok(CurveInput {
        f: f.clone(),
        degree,
        label: None,
        declared_points: Vec::new(),
    })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Classification {
    Free { d1: i64, d2: i64 },
    NearlyFree { d1: i64, d2: i64 },
    ThreeSyzygy { d1: i64, d2: i64, d3: i64 },
    Other,
}

impl Classification {
    pub fn name(&self) -> &'static str {
        match self {
            Classification::Free { .. } => "Free",
            Classification::NearlyFree { .. } => "NearlyFree",
            Classification::ThreeSyzygy { .. } => "ThreeSyzygy",
            Classification::Other => "Other",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClassifiedCurve {
    pub input: CurveInput,
    pub r: u32,
    pub mdr_witness: Vec<Polynomial>,
    pub tau: usize,
    pub tau_stable_from: u32,
    pub classification: Classification,
    pub betti: BettiTable,
    /// The canonical first syzygy matrix M_f (3 rows).
    pub syzygy_matrix: GradedMatrix,
    /// Minimal second syzygies of the columns of M_f, when any.
    pub second_syzygies: Option<GradedMatrix>,
    pub jacobian_gb: GroebnerBasis,
}

impl ClassifiedCurve {
    pub fn d(&self) -> u32 {
        self.input.degree
    }

    /// Component degrees (deg a) of the columns of M_f, ascending.
    pub fn relation_degrees(&self) -> Vec<i64> {
        syzygy_component_degrees(&self.syzygy_matrix)
    }

    /// Hypotheses of the rank criterion: d > 2r for free curves, d >= 2r for
    /// nearly free curves.
    pub fn criterion_hypotheses_met(&self) -> bool {
        let (d, r) = (self.d() as i64, self.r as i64);
        match self.classification {
            Classification::Free { .. } => d > 2 * r,
            Classification::NearlyFree { .. } => d >= 2 * r,
            _ => false,
        }
    }
}

pub fn classify(input: &CurveInput, window: usize, limits: &GbLimits) -> Result<ClassifiedCurve> {
    let f = &input.f;
    let d = input.degree as i64;
    let partials: Vec<Polynomial> = (0..3).map(|i| f.partial_derivative(i)).collect();
    let jacobian_gb = gb_of_polys(&partials, MonomialOrder::Grevlex, 3, limits)?;
    let (tau_stable_from, tau) = jacobian_gb.stable_degree(window)?;

    let m = first_syzygy_matrix(f, limits)?;
    let rel_degrees = syzygy_component_degrees(&m);

    // second syzygies of the columns of M_f
    let ord = MonomialOrder::Grevlex;
    let twists = m.col_degrees.clone();
    let cols: Vec<ModPoly> = (0..m.cols())
        .map(|c| ModPoly::from_components(m.column(c), &ord))
        .collect();
    let syz2 = syzygy_basis(&cols, &twists, limits)?;
    let min2 = minimal_generators(&syz2, &twists, limits)?;
    let second = if min2.is_empty() {
        None
    } else {
        let cols2: Vec<ModPoly> = min2.iter().map(|(g, _)| g.clone()).collect();
        Some(GradedMatrix::from_modpolys(&cols2, twists)?)
    };

    let mdr_res: MdrResult = mdr(f)?;
    let r = mdr_res.r;
    if r == 0 {
        return Err(Error::Cone);
    }
    if rel_degrees.first().copied() != Some(r as i64) {
        return Err(Error::Internal(
            "mdr disagrees with the smallest syzygy column degree".into(),
        ));
    }

    let classification = match (rel_degrees.len(), &second) {
        (2, None) => {
            let (d1, d2) = (rel_degrees[0], rel_degrees[1]);
            if d1 + d2 != d - 1 {
                return Err(Error::Internal(
                    "free twist law d1+d2 = d-1 violated".into(),
                ));
            }
            Classification::Free { d1, d2 }
        }
        (3, Some(s)) => {
            let (d1, d2, d3) = (rel_degrees[0], rel_degrees[1], rel_degrees[2]);
            let nearly = d2 == d3 && d1 + d2 == d && s.cols() == 1 && s.col_degrees == vec![d + d2];
            if nearly {
                Classification::NearlyFree { d1, d2 }
            } else {
                Classification::ThreeSyzygy { d1, d2, d3 }
            }
        }
        (3, None) => {
            let (d1, d2, d3) = (rel_degrees[0], rel_degrees[1], rel_degrees[2]);
            Classification::ThreeSyzygy { d1, d2, d3 }
        }
        _ => Classification::Other,
    };

    // Tjurina cross-check under the degree hypotheses
    let formula = (d - 1) * (d - r as i64 - 1) + (r as i64) * (r as i64);
    match classification {
        Classification::Free { .. } if d > 2 * r as i64 => {
            if tau as i64 != formula {
                return Err(Error::Internal(format!(
                    "free curve tau {} does not match the formula value {}",
                    tau, formula
                )));
            }
        }
        Classification::NearlyFree { .. } if d >= 2 * r as i64 => {
            if tau as i64 != formula - 1 {
                return Err(Error::Internal(format!(
                    "nearly free curve tau {} does not match the formula value {}",
                    tau,
                    formula - 1
                )));
            }
        }
        _ => {}
    }

    let mut betti_levels = vec![m.row_degrees.clone(), m.col_degrees.clone()];
    if let Some(s) = &second {
        betti_levels.push(s.col_degrees.clone());
    }

    Ok(ClassifiedCurve {
        input: input.clone(),
        r,
        mdr_witness: mdr_res.witness,
        tau,
        tau_stable_from,
        classification,
        betti: BettiTable {
            levels: betti_levels,
        },
        syzygy_matrix: m,
        second_syzygies: second,
        jacobian_gb,
    })
}

/// du Plessis-Wall bounds on the total Tjurina number, with the sharper upper
/// bound present exactly when 2r + 1 > d.
pub fn dp_wall_bounds(d: i64, r: i64) -> (i64, i64, Option<i64>) {
    assert!(d >= 3 && r > 0 && r <= d - 1);
    let lower = (d - 1) * (d - r - 1);
    let upper = lower + r * r;
    let secondary = if 2 * r + 1 > d {
        Some(d * (d - 1) / 2 - r * r + r * (d - 2))
    } else {
        None
    };
    (lower, upper, secondary)
}

/// The linear change of coordinates used by [`dehomogenize_at`], recorded for
/// reproducibility: x_i is replaced by row i of `matrix` applied to
/// (1, x1, x2).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoordinateChange {
    pub matrix: [[Rational; 3]; 3],
}

/// Moves `p` to (1:0:0) and sets the first coordinate to 1: the matrix has
/// `p` as its first column and the standard basis vectors of the other
/// coordinates (in order) as the remaining columns. Returns the local
/// equation g(x1, x2).
pub fn dehomogenize_at(f: &Polynomial, p: &ProjectivePoint) -> (Polynomial, CoordinateChange) {
    let k = p.pivot();
    let mut cols: Vec<[Rational; 3]> = vec![p.coords().clone()];
    for j in 0..3 {
        if j != k {
            let mut e = [Rational::zero(), Rational::zero(), Rational::zero()];
            e[j] = Rational::one();
            cols.push(e);
        }
    }
    let mut matrix = [
        [Rational::zero(), Rational::zero(), Rational::zero()],
        [Rational::zero(), Rational::zero(), Rational::zero()],
        [Rational::zero(), Rational::zero(), Rational::zero()],
    ];
    for (c, col) in cols.iter().enumerate() {
        for i in 0..3 {
            matrix[i][c] = col[i].clone();
        }
    }
    // x_i -> matrix[i][0]*1 + matrix[i][1]*x1 + matrix[i][2]*x2
    let images: Vec<Polynomial> = (0..3)
        .map(|i| {
            Polynomial::constant(matrix[i][0].clone())
                .add(&Polynomial::var(1).scale(&matrix[i][1]))
                .add(&Polynomial::var(2).scale(&matrix[i][2]))
        })
        .collect();
    (f.substitute(&images), CoordinateChange { matrix })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LocalInvariants {
    pub point: ProjectivePoint,
    pub mu: usize,
    pub tau: usize,
    pub change: CoordinateChange,
}

impl LocalInvariants {
    pub fn is_quasi_homogeneous(&self) -> bool {
        self.mu == self.tau
    }
}

pub fn is_singular_point(f: &Polynomial, p: &ProjectivePoint) -> bool {
    let coords = p.affine_coords();
    (0..3).all(|i| f.partial_derivative(i).evaluate(&coords).is_zero())
}

/// Q-dimension of the local algebra at the origin. R/(I + m^N) is supported
/// at the origin only, so its dimension equals that of A/m^N A for the local
/// algebra A; the sequence is nondecreasing in N and by Nakayama the first
/// repeat is the limit. Never stabilizing means a positive-dimensional
/// component through the origin.
fn local_dim_at_origin(gens: &[Polynomial], limits: &GbLimits) -> Result<usize> {
    let mut prev: Option<usize> = None;
    for n in 1u32..=512 {
        let mut all = gens.to_vec();
        all.extend(
            crate::resolution::monomials_of_degree(n, 2)
                .into_iter()
                .map(|m| Polynomial::monomial(rat_int(1), m)),
        );
        let gb = gb_of_polys(&all, MonomialOrder::Grevlex, 2, limits)?;
        let dim = gb
            .affine_vs_dim()
            .map_err(|_| Error::NonIsolatedCriticalLocus)?;
        if prev == Some(dim) {
            return Ok(dim);
        }
        prev = Some(dim);
    }
    Err(Error::NonIsolatedCriticalLocus)
}

/// Local Milnor and Tjurina numbers at a rational singular point, via the
/// affine count minus the count away from the origin.
pub fn milnor_tjurina_local(
    f: &Polynomial,
    p: &ProjectivePoint,
    limits: &GbLimits,
) -> Result<LocalInvariants> {
    if !is_singular_point(f, p) {
        return Err(Error::NotSingularPoint(p.to_string()));
    }
    let (g, change) = dehomogenize_at(f, p);
    // the local equation lives in x1, x2; remap to the engine's variables 0, 1
    let g01 = g.permute_vars(&[1, 2, 0, 3]);
    let g1 = g01.partial_derivative(0);
    let g2 = g01.partial_derivative(1);
    let mu = local_dim_at_origin(&[g1.clone(), g2.clone()], limits)?;
    let tau = local_dim_at_origin(&[g1, g2, g01], limits)?;
    if tau > mu || tau == 0 {
        return Err(Error::Internal(format!(
            "local invariants out of range at {}: mu {}, tau {}",
            p, mu, tau
        )));
    }
    Ok(LocalInvariants {
        point: p.clone(),
        mu,
        tau,
        change,
    })
}

/// Exact rank of M_f evaluated at a singular point, and the criterion's
/// quasi-homogeneity flag (rank >= 1).
pub fn rank_at_point(c: &ClassifiedCurve, p: &ProjectivePoint) -> Result<(usize, bool)> {
    if !is_singular_point(&c.input.f, p) {
        return Err(Error::NotSingularPoint(p.to_string()));
    }
    let coords = p.affine_coords();
    let m = &c.syzygy_matrix;
    let mut mat = RationalMatrix::zeros(m.rows, m.cols());
    for col in 0..m.cols() {
        for row in 0..m.rows {
            *mat.at_mut(row, col) = m.entry(row, col).evaluate(&coords);
        }
    }
    let rank = mat.rank();
    Ok((rank, rank >= 1))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum QhVerdict {
    AllQH,
    ExistsNonQH,
}

#[derive(Clone, Debug)]
pub struct QhReport {
    pub verdict: QhVerdict,
    /// Degree of the saturated entries-ideal scheme Y_f (ExistsNonQH only).
    pub scheme_degree: Option<usize>,
    /// Rational points where M_f vanishes entirely.
    pub rank_zero_points: Vec<ProjectivePoint>,
    pub warnings: Vec<String>,
}

/// Global form of the rank criterion: all singularities are
/// quasi-homogeneous iff the zero set of the ideal E of all entries of M_f is
/// empty, decided by radical membership of each variable. Requires the
/// theorems' degree hypotheses unless `experiment` is set.
pub fn qh_criterion_global(
    c: &ClassifiedCurve,
    limits: &GbLimits,
    experiment: bool,
) -> Result<QhReport> {
    match c.classification {
        Classification::Free { .. } | Classification::NearlyFree { .. } => {
            if !c.criterion_hypotheses_met() {
                let (d, r) = (c.d(), c.r);
                return Err(Error::HypothesesNotMet(format!(
                    "d = {}, r = {} violates the degree inequality",
                    d, r
                )));
            }
        }
        Classification::ThreeSyzygy { .. } if experiment => {}
        _ => {
            return Err(Error::HypothesesNotMet(format!(
                "classification {} is outside the criterion",
                c.classification.name()
            )))
        }
    }
    let entries: Vec<Polynomial> = (0..c.syzygy_matrix.cols())
        .flat_map(|col| c.syzygy_matrix.column(col).iter().cloned())
        .filter(|p| !p.is_zero())
        .collect();
    let e = Ideal::new(entries, 3);
    let mut all = true;
    for i in 0..3 {
        if !radical_membership(&Polynomial::var(i), &e, limits)? {
            all = false;
            break;
        }
    }
    if all {
        return Ok(QhReport {
            verdict: QhVerdict::AllQH,
            scheme_degree: None,
            rank_zero_points: Vec::new(),
            warnings: Vec::new(),
        });
    }
    // saturate with respect to the irrelevant ideal, variable by variable
    let mut sat = saturate_by_variable_homogeneous(&e, 0, limits)?;
    for var in 1..3 {
        let s = saturate_by_variable_homogeneous(&e, var, limits)?;
        sat = intersect(&sat, &s, limits)?;
    }
    let sat_gb = buchberger(&sat, MonomialOrder::Grevlex, limits)?;
    let (_, scheme_degree) = sat_gb.stable_degree(3.max(c.d() as usize))?;
    let mut warnings = Vec::new();
    let points = rational_points_of(&sat, limits, &mut warnings)?;
    // keep only genuine rank-0 singular points
    let mut kept = Vec::new();
    for p in points {
        if is_singular_point(&c.input.f, &p) {
            let (rank, _) = rank_at_point(c, &p)?;
            if rank == 0 {
                kept.push(p);
            }
        }
    }
    Ok(QhReport {
        verdict: QhVerdict::ExistsNonQH,
        scheme_degree: Some(scheme_degree),
        rank_zero_points: kept,
        warnings,
    })
}

/// Rational points of the projective scheme of a homogeneous ideal, found
/// chart by chart from univariate eliminants and the rational root theorem.
pub fn rational_points_of(
    ideal: &Ideal,
    limits: &GbLimits,
    warnings: &mut Vec<String>,
) -> Result<Vec<ProjectivePoint>> {
    let mut found: BTreeSet<ProjectivePoint> = BTreeSet::new();
    for chart in 0..3usize {
        // set x_chart = 1; the two remaining variables map to 0, 1
        let others: Vec<usize> = (0..3).filter(|&j| j != chart).collect();
        let mut perm = [0usize; MAX_VARS];
        // new variable i reads old variable perm[i]; send chart -> unused slot
        perm[0] = others[0];
        perm[1] = others[1];
        perm[2] = chart;
        perm[3] = 3;
        let affine: Vec<Polynomial> = ideal
            .gens
            .iter()
            .map(|g| {
                g.permute_vars(&perm).substitute(&[
                    Polynomial::var(0),
                    Polynomial::var(1),
                    Polynomial::one(),
                    Polynomial::var(3),
                ])
            })
            .filter(|g| !g.is_zero())
            .collect();
        if affine.is_empty() {
            continue;
        }
        let a = Ideal::new(affine.clone(), 2);
        let elim = eliminate(&a, 1 << 1, limits)?;
        let Some(e0) = elim.iter().find(|p| !p.is_zero()) else {
            warnings.push(format!(
                "chart x{} = 1: positive-dimensional locus, skipping point extraction",
                chart
            ));
            continue;
        };
        if e0.is_constant() {
            continue; // empty in this chart
        }
        for a0 in univariate_rational_roots(e0, 0, warnings) {
            // substitute the first coordinate and solve the fibre
            let fibre: Vec<Polynomial> = affine
                .iter()
                .map(|g| {
                    g.substitute(&[
                        Polynomial::constant(a0.clone()),
                        Polynomial::var(1),
                        Polynomial::var(2),
                        Polynomial::var(3),
                    ])
                })
                .filter(|g| !g.is_zero())
                .collect();
            let candidates: Vec<Rational> = match fibre.iter().find(|g| !g.is_constant()) {
                Some(u) => univariate_rational_roots(u, 1, warnings),
                None => {
                    if fibre.is_empty() {
                        warnings.push(format!(
                            "chart x{} = 1: fibre over a root is not finite",
                            chart
                        ));
                    }
                    continue;
                }
            };
            for a1 in candidates {
                let coords = vec![a0.clone(), a1.clone(), Rational::zero(), Rational::zero()];
                if affine.iter().all(|g| g.evaluate(&coords).is_zero()) {
                    let mut proj = [Rational::zero(), Rational::zero(), Rational::zero()];
                    proj[chart] = Rational::one();
                    proj[others[0]] = a0.clone();
                    proj[others[1]] = a1.clone();
                    found.insert(ProjectivePoint::new(proj)?);
                }
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Rational roots of a univariate polynomial in variable `var`, via the
/// rational root theorem with trial-division factoring. Incomplete
/// factorizations are reported as warnings (roots may be missed), never as
/// errors.
pub fn univariate_rational_roots(
    p: &Polynomial,
    var: usize,
    warnings: &mut Vec<String>,
) -> Vec<Rational> {
    debug_assert!(p.support() & !(1 << var) == 0);
    let mut roots = Vec::new();
    let mut work = p.clone();
    // factor out powers of the variable: root 0
    let min_exp = work
        .terms()
        .iter()
        .map(|t| t.mon.exps[var])
        .min()
        .unwrap_or(0);
    if min_exp > 0 {
        roots.push(Rational::zero());
        let mut m = crate::monomial::Monomial::one();
        m.exps[var] = min_exp;
        work = work
            .exact_div(&Polynomial::monomial(Rational::one(), m))
            .unwrap();
    }
    if work.is_constant() || work.is_zero() {
        roots.sort();
        return roots;
    }
    let (prim, _) = work.primitive_part();
    let deg = prim.degree();
    let coeff_of = |e: u32| -> BigInt {
        prim.terms()
            .iter()
            .find(|t| t.mon.exps[var] as u32 == e)
            .map(|t| t.coeff.numer().clone())
            .unwrap_or_else(BigInt::zero)
    };
    let lead = coeff_of(deg);
    let tail = coeff_of(0);
    let (num_divs, c1) = divisors(&tail.abs());
    let (den_divs, c2) = divisors(&lead.abs());
    if !(c1 && c2) {
        warnings.push("incomplete integer factorization in rational root search".into());
    }
    let mut seen: BTreeSet<Rational> = BTreeSet::new();
    for n in &num_divs {
        for d in &den_divs {
            for sign in [1i64, -1] {
                let cand = Rational::new(n * BigInt::from(sign), d.clone());
                if seen.contains(&cand) {
                    continue;
                }
                seen.insert(cand.clone());
                let mut coords = vec![Rational::zero(); MAX_VARS];
                coords[var] = cand.clone();
                if prim.evaluate(&coords).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

/// Positive divisors by trial division; the flag is false when a composite
/// cofactor above the trial bound was treated as prime (divisors may be
/// missing).
fn divisors(n: &BigInt) -> (Vec<BigInt>, bool) {
    let bound: u64 = 1_000_000;
    let mut complete = true;
    let mut n = n.clone();
    if n.is_zero() {
        return (vec![BigInt::one()], true);
    }
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2u32);
    while &p * &p <= n && p <= BigInt::from(bound) {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            factors.push((p.clone(), e));
        }
        p += 1u32;
    }
    if !n.is_one() {
        if n > BigInt::from(bound) * BigInt::from(bound) {
            complete = false;
        }
        factors.push((n, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::new();
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs.dedup();
    (divs, complete)
}

#[derive(Clone, Debug)]
pub struct IdentityReport {
    /// Free: the nonzero scalar c with x0*M0 - x1*M1 + x2*M2 = c*f.
    pub recovery_scalar: Option<Rational>,
    /// Nearly free: degrees of (alpha, beta, gamma) from the bordered
    /// divisions, and the sign pattern making (s1*alpha, s2*beta, s3*gamma) a
    /// second syzygy of M_f.
    pub bordered_degrees: Option<(u32, u32, u32)>,
    pub sign_pattern: Option<[i8; 3]>,
}

fn minor(m: &GradedMatrix, skip_row: usize, c0: usize, c1: usize) -> Polynomial {
    let rows: Vec<usize> = (0..3).filter(|&r| r != skip_row).collect();
    m.entry(rows[0], c0)
        .mul(m.entry(rows[1], c1))
        .sub(&m.entry(rows[0], c1).mul(m.entry(rows[1], c0)))
}

/// The signed maximal-minor triple of a 3x2 matrix: (M0, -M1, M2).
pub fn signed_minors(m: &GradedMatrix) -> [Polynomial; 3] {
    assert_eq!(m.cols(), 2);
    [
        minor(m, 0, 0, 1),
        minor(m, 1, 0, 1).neg(),
        minor(m, 2, 0, 1),
    ]
}

fn cross(a: &[Polynomial], b: &[Polynomial]) -> [Polynomial; 3] {
    [
        a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
        a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
        a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
    ]
}

/// Structural identities of the syzygy matrix. A failure here is an internal
/// error: the identities are theorems for correctly computed matrices.
pub fn identity_checks(c: &ClassifiedCurve) -> Result<IdentityReport> {
    let f = &c.input.f;
    let d = c.d();
    let m = &c.syzygy_matrix;
    match c.classification {
        Classification::Free { .. } => {
            // det of M_f bordered with the variable column, expanded as
            // x0*M0 - x1*M1 + x2*M2, recovers a scalar multiple of f
            let [s0, s1, s2] = signed_minors(m);
            let lhs = Polynomial::var(0)
                .mul(&s0)
                .add(&Polynomial::var(1).mul(&s1))
                .add(&Polynomial::var(2).mul(&s2));
            let q = lhs
                .exact_div(f)
                .ok_or_else(|| Error::Internal("free recovery identity not divisible".into()))?;
            if !q.is_constant() {
                return Err(Error::Internal(
                    "free recovery quotient not a scalar".into(),
                ));
            }
            Ok(IdentityReport {
                recovery_scalar: Some(q.leading_coeff().unwrap().clone()),
                bordered_degrees: None,
                sign_pattern: None,
            })
        }
        Classification::NearlyFree { .. } => {
            let a: Vec<Polynomial> = m.column(0).to_vec();
            let b: Vec<Polynomial> = m.column(1).to_vec();
            let cc: Vec<Polynomial> = m.column(2).to_vec();
            let df = f.scale(&rat_int(d as i64));
            // bordered determinants det[x | Y | Z] = (x . Y x Z) = d*f*quotient
            let mut greek = Vec::new();
            for (y, z) in [(&b, &cc), (&cc, &a), (&a, &b)] {
                let w = cross(y, z);
                let borded = Polynomial::var(0)
                    .mul(&w[0])
                    .add(&Polynomial::var(1).mul(&w[1]))
                    .add(&Polynomial::var(2).mul(&w[2]));
                let q = borded.exact_div(&df).ok_or_else(|| {
                    Error::Internal("bordered determinant not divisible by d*f".into())
                })?;
                greek.push(q);
            }
            let (alpha, beta, gamma) = (&greek[0], &greek[1], &greek[2]);
            let degs = (alpha.degree(), beta.degree(), gamma.degree());
            let expected_alpha = (d as i64 - 2 * c.r as i64 + 1).max(0) as u32;
            if degs.0 != expected_alpha || degs.1 != 1 || degs.2 != 1 {
                return Err(Error::Internal(format!(
                    "bordered quotient degrees {:?} off the expected ({}, 1, 1)",
                    degs, expected_alpha
                )));
            }
            // some signed combination is the second syzygy of M_f
            let mut pattern = None;
            'outer: for s1 in [1i8, -1] {
                for s2 in [1i8, -1] {
                    for s3 in [1i8, -1] {
                        let v = [
                            alpha.scale(&rat_int(s1 as i64)),
                            beta.scale(&rat_int(s2 as i64)),
                            gamma.scale(&rat_int(s3 as i64)),
                        ];
                        let img = m.apply(&v);
                        if img.iter().all(|p| p.is_zero()) {
                            pattern = Some([s1, s2, s3]);
                            break 'outer;
                        }
                    }
                }
            }
            let pattern = pattern.ok_or_else(|| {
                Error::Internal("no sign pattern of (alpha, beta, gamma) annihilates M_f".into())
            })?;
            // consistency with the computed second syzygy up to scalar
            if let Some(p2) = &c.second_syzygies {
                let v = [
                    alpha.scale(&rat_int(pattern[0] as i64)),
                    beta.scale(&rat_int(pattern[1] as i64)),
                    gamma.scale(&rat_int(pattern[2] as i64)),
                ];
                let s = p2.column(0);
                for i in 0..3 {
                    for j in (i + 1)..3 {
                        if !s[i].mul(&v[j]).sub(&s[j].mul(&v[i])).is_zero() {
                            return Err(Error::Internal(
                                "bordered quotients not proportional to the second syzygy".into(),
                            ));
                        }
                    }
                }
            }
            Ok(IdentityReport {
                recovery_scalar: None,
                bordered_degrees: Some(degs),
                sign_pattern: Some(pattern),
            })
        }
        _ => Err(Error::HypothesesNotMet(
            "identity checks apply to free and nearly free curves".into(),
        )),
    }
}

/// True iff the homogeneous triple is curl-free; then it is a gradient, and
/// the reconstruction g = (x0 f0 + x1 f1 + x2 f2)/d with grad g = t is
/// asserted.
pub fn curl_check(t: &[Polynomial; 3], d: u32) -> Result<bool> {
    for i in 0..3 {
        for j in (i + 1)..3 {
            if !t[j]
                .partial_derivative(i)
                .sub(&t[i].partial_derivative(j))
                .is_zero()
            {
                return Ok(false);
            }
        }
    }
    let g = Polynomial::var(0)
        .mul(&t[0])
        .add(&Polynomial::var(1).mul(&t[1]))
        .add(&Polynomial::var(2).mul(&t[2]))
        .scale(&Rational::new(BigInt::one(), BigInt::from(d)));
    for (i, ti) in t.iter().enumerate() {
        if g.partial_derivative(i) != *ti {
            return Err(Error::Internal(
                "curl-free triple failed gradient reconstruction".into(),
            ));
        }
    }
    Ok(true)
}

/// The explicit nearly free syzygy matrix and second syzygy built from a
/// degree-1 relation of the shape (0, b*x_i1, c*x_i2) up to permutation of
/// the variable roles, detected from the mdr certificate.
pub fn special_syzygy_matrix(c: &ClassifiedCurve) -> Result<(GradedMatrix, Vec<Polynomial>)> {
    if !matches!(c.classification, Classification::NearlyFree { .. }) || c.r != 1 {
        return Err(Error::ShapeHypothesisNotMet);
    }
    let w = &c.mdr_witness;
    let i0 = (0..3)
        .find(|&i| w[i].is_zero())
        .ok_or(Error::ShapeHypothesisNotMet)?;
    let others: Vec<usize> = (0..3).filter(|&i| i != i0).collect();
    let (i1, i2) = (others[0], others[1]);
    // the nonzero entries must be scalar multiples of their own variable
    let scalar_of = |i: usize| -> Option<Rational> {
        let terms = w[i].terms();
        if terms.len() == 1 && terms[0].mon == crate::monomial::Monomial::var(i) {
            Some(terms[0].coeff.clone())
        } else {
            None
        }
    };
    let b = scalar_of(i1).ok_or(Error::ShapeHypothesisNotMet)?;
    let cs = scalar_of(i2).ok_or(Error::ShapeHypothesisNotMet)?;
    let f = &c.input.f;
    let partials: Vec<Polynomial> = (0..3).map(|i| f.partial_derivative(i)).collect();
    // decompose d_{i0} f = g*x_{i1} + h*x_{i2} + omega(x_{i0}); need h = 0
    let mut omega_terms = Vec::new();
    let mut g_terms = Vec::new();
    let mut h_terms = Vec::new();
    for t in partials[i0].terms() {
        if t.mon.supported_on(1 << i0) {
            omega_terms.push(t.clone());
        } else if t.mon.exps[i1] > 0 {
            let mut mm = t.mon;
            mm.exps[i1] -= 1;
            g_terms.push(crate::poly::Term {
                coeff: t.coeff.clone(),
                mon: mm,
            });
        } else {
            let mut mm = t.mon;
            mm.exps[i2] -= 1;
            h_terms.push(crate::poly::Term {
                coeff: t.coeff.clone(),
                mon: mm,
            });
        }
    }
    let omega = Polynomial::from_terms(omega_terms);
    let g = Polynomial::from_terms(g_terms);
    let h = Polynomial::from_terms(h_terms);
    if !h.is_zero() || omega.is_zero() {
        return Err(Error::ShapeHypothesisNotMet);
    }
    let d = c.d() as i64;
    let xi1 = Polynomial::var(i1);
    let xi2 = Polynomial::var(i2);
    let ratio = &cs / &b;
    // columns of the displayed matrix, rows indexed by the ambient variables
    let mut cols = vec![vec![Polynomial::zero(); 3]; 3];
    cols[0][i0] = Polynomial::zero();
    cols[0][i1] = xi1.scale(&b);
    cols[0][i2] = xi2.scale(&cs);
    cols[1][i0] = partials[i1].neg();
    cols[1][i1] = omega.clone();
    cols[1][i2] = g.mul(&xi2).scale(&ratio).neg();
    cols[2][i0] = partials[i2].neg();
    cols[2][i1] = Polynomial::zero();
    cols[2][i2] = partials[i0].clone();
    let matrix = GradedMatrix {
        rows: 3,
        entries: cols,
        row_degrees: vec![d - 1; 3],
        col_degrees: vec![d, 2 * d - 2, 2 * d - 2],
    };
    let p_f = vec![omega.clone(), xi1.scale(&b).neg(), xi2.scale(&cs).neg()];
    // both constructions are exact: columns are syzygies, M_f * P_f = 0
    for col in 0..3 {
        let mut acc = Polynomial::zero();
        for row in 0..3 {
            acc = acc.add(&matrix.entry(row, col).mul(&partials[row]));
        }
        if !acc.is_zero() {
            return Err(Error::Internal(
                "special matrix column is not a syzygy".into(),
            ));
        }
    }
    if !matrix.apply(&p_f).iter().all(|p| p.is_zero()) {
        return Err(Error::Internal(
            "special matrix does not annihilate P_f".into(),
        ));
    }
    Ok((matrix, p_f))
}

#[derive(Clone, Debug)]
pub struct ExperimentRow {
    pub point: ProjectivePoint,
    pub rank: usize,
    pub mu: usize,
    pub tau: usize,
    pub agree: bool,
}

/// Conjectural rank criterion on 3-syzygy curves: per point, compare the rank
/// flag with the Saito oracle. Disagreements are findings, never failures.
pub fn conjecture_experiment(
    c: &ClassifiedCurve,
    points: &[ProjectivePoint],
    limits: &GbLimits,
) -> Result<Vec<ExperimentRow>> {
    if !matches!(c.classification, Classification::ThreeSyzygy { .. }) {
        return Err(Error::NotThreeSyzygy);
    }
    let mut rows = Vec::new();
    for p in points {
        let (rank, flag) = rank_at_point(c, p)?;
        let loc = milnor_tjurina_local(&c.input.f, p, limits)?;
        rows.push(ExperimentRow {
            point: p.clone(),
            rank,
            mu: loc.mu,
            tau: loc.tau,
            agree: flag == loc.is_quasi_homogeneous(),
        });
    }
    Ok(rows)
}
