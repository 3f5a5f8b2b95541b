//! Named curve families with their declared singular points. Each family is
//! built from a key=value parameter map so the CLI can construct instances
//! and sweep over integer parameters.

use crate::analyzer::CurveInput;
use crate::error::{Error, Result};
use crate::parser::parse_polynomial;
use crate::point::ProjectivePoint;
use crate::poly::Polynomial;
use crate::rational::{rat_from_string, rat_int, Rational};
use num::Zero;
use std::collections::BTreeMap;

pub type Params = BTreeMap<String, String>;

/// Registered family names, in presentation order.
pub const FAMILY_NAMES: &[&str] = &[
    "ploski_even",
    "ploski_odd",
    "cuspidal_free",
    "line_arrangement",
    "c2",
    "cl6",
    "three_syzygy",
    "fermat_product",
    "septic_free",
    "septic_nearly_free",
    "septic_plus",
    "quintic_qh",
    "quintic_non_qh",
    "conic_lines_9",
    "lines_conic_12",
];

/// One-line usage hint per family, for `--help`-style listings.
pub fn family_usage(name: &str) -> Option<&'static str> {
    Some(match name {
        "ploski_even" => "m (>= 2), optional a=a1,...,am nonzero distinct; degree 2m",
        "ploski_odd" => "m (>= 2), optional a=a1,...,am nonzero distinct; degree 2m+1",
        "cuspidal_free" => "d, r with 2 <= r < d/2",
        "line_arrangement" => "d (>= 5), optional r with 1 <= r < d/2",
        "c2" => "m (>= 2), optional a=a1,...,am nonzero distinct; degree 2m",
        "cl6" => "m (>= 2), optional a=a1,...,am nonzero distinct; degree 2m+1",
        "three_syzygy" => "k (>= 2); degree 2k+1",
        "fermat_product" => "d (>= 3); degree 2d",
        "septic_free" | "septic_nearly_free" | "septic_plus" => "no parameters",
        "quintic_qh" | "quintic_non_qh" => "no parameters",
        "conic_lines_9" | "lines_conic_12" => "no parameters",
        _ => return None,
    })
}

fn param_u32(params: &Params, key: &str) -> Result<u32> {
    let raw = params
        .get(key)
        .ok_or_else(|| Error::InvalidFamilyParams(format!("missing parameter '{}'", key)))?;
    raw.trim().parse::<u32>().map_err(|_| {
        Error::InvalidFamilyParams(format!("parameter '{}' must be a nonnegative integer", key))
    })
}

fn param_u32_opt(params: &Params, key: &str) -> Result<Option<u32>> {
    match params.get(key) {
        None => Ok(None),
        Some(_) => param_u32(params, key).map(Some),
    }
}

/// Coefficient list a = a1,...,am; defaults to 1, 2, ..., m. Entries must be
/// nonzero and pairwise distinct.
fn param_coeffs(params: &Params, m: u32) -> Result<Vec<Rational>> {
    let a: Vec<Rational> = match params.get("a") {
        None => (1..=m as i64).map(rat_int).collect(),
        Some(raw) => {
            let mut out = Vec::new();
            for piece in raw.split(',') {
                out.push(rat_from_string(piece.trim()).map_err(|_| {
                    Error::InvalidFamilyParams(format!("bad rational '{}' in a", piece.trim()))
                })?);
            }
            out
        }
    };
    if a.len() != m as usize {
        return Err(Error::InvalidFamilyParams(format!(
            "expected {} coefficients, got {}",
            m,
            a.len()
        )));
    }
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            return Err(Error::InvalidFamilyParams(
                "coefficients must be nonzero".into(),
            ));
        }
        for aj in &a[..i] {
            if ai == aj {
                return Err(Error::InvalidFamilyParams(
                    "coefficients must be distinct".into(),
                ));
            }
        }
    }
    Ok(a)
}

fn curve(f: Polynomial, label: String, points: Vec<ProjectivePoint>) -> Result<CurveInput> {
    let degree = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    Ok(CurveInput {
        f,
        degree,
        label: Some(label),
        declared_points: points,
    })
}

fn fixed(expr: &str, label: &str, points: Vec<ProjectivePoint>) -> Result<CurveInput> {
    curve(parse_polynomial(expr)?, label.to_string(), points)
}

/// a*x0 + b*x1 + c*x2 with integer coefficients.
fn linear(a: i64, b: i64, c: i64) -> Polynomial {
    Polynomial::var(0)
        .scale(&rat_int(a))
        .add(&Polynomial::var(1).scale(&rat_int(b)))
        .add(&Polynomial::var(2).scale(&rat_int(c)))
}

fn product(factors: &[Polynomial]) -> Polynomial {
    factors.iter().fold(Polynomial::one(), |acc, g| acc.mul(g))
}

/// x0^2 + a_i*(x0*x2 + x1^2) factors multiplied together.
fn ploski_core(a: &[Rational]) -> Polynomial {
    let x0 = Polynomial::var(0);
    let base = x0
        .mul(&Polynomial::var(2))
        .add(&Polynomial::var(1).power(2));
    let factors: Vec<Polynomial> = a
        .iter()
        .map(|ai| x0.power(2).add(&base.scale(ai)))
        .collect();
    product(&factors)
}

/// x0*x2 + a_i*x1^2 factors multiplied together.
fn tacnodal_core(a: &[Rational]) -> Polynomial {
    let base = Polynomial::var(0).mul(&Polynomial::var(2));
    let sq = Polynomial::var(1).power(2);
    let factors: Vec<Polynomial> = a.iter().map(|ai| base.add(&sq.scale(ai))).collect();
    product(&factors)
}

/// Intersection point of two projective lines given by coefficient triples,
/// or None when the lines coincide.
fn line_meet(u: [i64; 3], v: [i64; 3]) -> Option<ProjectivePoint> {
    let c = [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ];
    if c == [0, 0, 0] {
        return None;
    }
    ProjectivePoint::from_ints(c[0], c[1], c[2]).ok()
}

pub fn family_generators(name: &str, params: &Params) -> Result<CurveInput> {
    match name {
        "ploski_even" => {
            let m = param_u32(params, "m")?;
            if m < 2 {
                return Err(Error::InvalidFamilyParams("need m >= 2".into()));
            }
            let a = param_coeffs(params, m)?;
            curve(
                ploski_core(&a),
                format!("ploski_even(m={})", m),
                vec![ProjectivePoint::from_ints(0, 0, 1)?],
            )
        }
        "ploski_odd" => {
            let m = param_u32(params, "m")?;
            if m < 2 {
                return Err(Error::InvalidFamilyParams("need m >= 2".into()));
            }
            let a = param_coeffs(params, m)?;
            curve(
                Polynomial::var(0).mul(&ploski_core(&a)),
                format!("ploski_odd(m={})", m),
                vec![ProjectivePoint::from_ints(0, 0, 1)?],
            )
        }
        "cuspidal_free" => {
            let d = param_u32(params, "d")?;
            let r = param_u32(params, "r")?;
            if r < 2 || 2 * r >= d {
                return Err(Error::InvalidFamilyParams("need 2 <= r < d/2".into()));
            }
            let f = Polynomial::var(0)
                .power(d)
                .add(
                    &Polynomial::var(0)
                        .power(r)
                        .mul(&Polynomial::var(1).power(d - r)),
                )
                .add(&Polynomial::var(1).power(d - 1).mul(&Polynomial::var(2)));
            curve(
                f,
                format!("cuspidal_free(d={},r={})", d, r),
                vec![ProjectivePoint::from_ints(0, 0, 1)?],
            )
        }
        "line_arrangement" => {
            let d = param_u32(params, "d")?;
            if d < 5 {
                return Err(Error::InvalidFamilyParams("need d >= 5".into()));
            }
            let r = match param_u32_opt(params, "r")? {
                Some(r) => r,
                None => (d - 1) / 2,
            };
            if r < 1 || 2 * r >= d {
                return Err(Error::InvalidFamilyParams("need 1 <= r < d/2".into()));
            }
            let s = d - 1 - r;
            let mut factors = vec![Polynomial::var(0)];
            for i in 1..=r as i64 {
                factors.push(linear(-i, 1, 0));
            }
            for j in 1..=s as i64 {
                factors.push(linear(-j, 0, 1));
            }
            let mut points = vec![
                ProjectivePoint::from_ints(0, 0, 1)?,
                ProjectivePoint::from_ints(0, 1, 0)?,
            ];
            for i in 1..=r as i64 {
                for j in 1..=s as i64 {
                    points.push(ProjectivePoint::from_ints(1, i, j)?);
                }
            }
            curve(
                product(&factors),
                format!("line_arrangement(d={},r={})", d, r),
                points,
            )
        }
        "c2" => {
            let m = param_u32(params, "m")?;
            if m < 2 {
                return Err(Error::InvalidFamilyParams("need m >= 2".into()));
            }
            let a = param_coeffs(params, m)?;
            curve(
                tacnodal_core(&a),
                format!("c2(m={})", m),
                vec![
                    ProjectivePoint::from_ints(0, 0, 1)?,
                    ProjectivePoint::from_ints(1, 0, 0)?,
                ],
            )
        }
        "cl6" => {
            let m = param_u32(params, "m")?;
            if m < 2 {
                return Err(Error::InvalidFamilyParams("need m >= 2".into()));
            }
            let a = param_coeffs(params, m)?;
            curve(
                Polynomial::var(1).mul(&tacnodal_core(&a)),
                format!("cl6(m={})", m),
                vec![
                    ProjectivePoint::from_ints(0, 0, 1)?,
                    ProjectivePoint::from_ints(1, 0, 0)?,
                ],
            )
        }
        "three_syzygy" => {
            let k = param_u32(params, "k")?;
            if k < 2 {
                return Err(Error::InvalidFamilyParams("need k >= 2".into()));
            }
            let d = 2 * k + 1;
            let f = Polynomial::var(0).power(d).add(
                &Polynomial::var(0)
                    .power(2)
                    .add(&Polynomial::var(1).power(2))
                    .power(k)
                    .mul(&Polynomial::var(2)),
            );
            curve(
                f,
                format!("three_syzygy(k={})", k),
                vec![ProjectivePoint::from_ints(0, 0, 1)?],
            )
        }
        "fermat_product" => {
            let d = param_u32(params, "d")?;
            if d < 3 {
                return Err(Error::InvalidFamilyParams("need d >= 3".into()));
            }
            let fermat = Polynomial::var(0)
                .power(d)
                .add(&Polynomial::var(1).power(d))
                .add(&Polynomial::var(2).power(d));
            let pencil = Polynomial::var(0)
                .power(d)
                .add(&Polynomial::var(1).power(d));
            curve(
                fermat.mul(&pencil),
                format!("fermat_product(d={})", d),
                vec![],
            )
        }
        "septic_free" => fixed(
            "x0^7 + x0^3*x1^4 + x1^6*x2",
            "septic_free",
            vec![ProjectivePoint::from_ints(0, 0, 1)?],
        ),
        "septic_nearly_free" => fixed(
            "x0^7 + x0^4*x1^3 + x1^6*x2",
            "septic_nearly_free",
            vec![ProjectivePoint::from_ints(0, 0, 1)?],
        ),
        "septic_plus" => fixed(
            "x0^7 + x0^6*x2 + x1^6*x2",
            "septic_plus",
            vec![ProjectivePoint::from_ints(0, 0, 1)?],
        ),
        "quintic_qh" => fixed(
            "x0*(x0^3*x2 + x1^4)",
            "quintic_qh",
            vec![ProjectivePoint::from_ints(0, 0, 1)?],
        ),
        "quintic_non_qh" => fixed(
            "x0*(x0^3*x2 + x0^2*x1^2 + x1^4)",
            "quintic_non_qh",
            vec![ProjectivePoint::from_ints(0, 0, 1)?],
        ),
        "conic_lines_9" => fixed(
            "x0*(x0*x1 - x1^2 + x2^2)*(x0*x2 - x0^2 + x1^2 - x2^2)\
             *(x0*x1 + x1^2 - x2^2)*(x0*x2 + x0^2 - x1^2 + x2^2)",
            "conic_lines_9",
            vec![
                ProjectivePoint::from_ints(1, 0, 0)?,
                ProjectivePoint::from_ints(1, -1, 0)?,
                ProjectivePoint::from_ints(1, 1, 0)?,
                ProjectivePoint::from_ints(0, -1, 1)?,
                ProjectivePoint::from_ints(0, 1, 1)?,
            ],
        ),
        "lines_conic_12" => lines_conic_12(),
        _ => Err(Error::InvalidFamilyParams(format!(
            "unknown family '{}'",
            name
        ))),
    }
}

/// Degree 12: ten lines and a conic. The five points on the conic each meet
/// four lines; the remaining fifteen singular points are simple line
/// crossings, computed here from the pairwise line intersections.
fn lines_conic_12() -> Result<CurveInput> {
    let lines: [[i64; 3]; 10] = [
        [1, 0, 0],
        [0, 1, 0],
        [1, -2, 0],
        [-2, 1, 0],
        [1, 0, -1],
        [0, 1, -1],
        [1, -1, 1],
        [1, -1, -1],
        [1, 1, -1],
        [1, 1, -3],
    ];
    let conic = parse_polynomial("x0^2 + x1^2 - x0*x1 - x0*x2 - x1*x2")?;
    let factors: Vec<Polynomial> = lines
        .iter()
        .map(|&[a, b, c]| linear(a, b, c))
        .chain(std::iter::once(conic))
        .collect();
    let conic_points = [
        ProjectivePoint::from_ints(0, 0, 1)?,
        ProjectivePoint::from_ints(0, 1, 1)?,
        ProjectivePoint::from_ints(1, 2, 1)?,
        ProjectivePoint::from_ints(2, 1, 1)?,
        ProjectivePoint::from_ints(1, 0, 1)?,
    ];
    let mut crossings = std::collections::BTreeSet::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            if let Some(p) = line_meet(lines[i], lines[j]) {
                if !conic_points.contains(&p) {
                    crossings.insert(p);
                }
            }
        }
    }
    let mut points: Vec<ProjectivePoint> = conic_points.to_vec();
    points.extend(crossings);
    curve(product(&factors), "lines_conic_12".to_string(), points)
}
