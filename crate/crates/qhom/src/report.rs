//! Report assembly: the full analysis pipeline plus text and JSON rendering.
//! JSON output is deterministic (sorted keys, exact "p/q" rationals, no
//! timing field); the text rendering may carry timings.

use crate::analyzer::{
    classify, dp_wall_bounds, identity_checks, is_singular_point, milnor_tjurina_local,
    qh_criterion_global, rank_at_point, validate_curve, Classification, ClassifiedCurve,
    CurveInput, IdentityReport, LocalInvariants, QhReport, QhVerdict,
};
use crate::config::AnalysisConfig;
use crate::error::{Error, Result};
use crate::point::ProjectivePoint;
use crate::rational::rat_to_string;
use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

#[derive(Clone, Debug)]
pub struct PointRecord {
    pub point: ProjectivePoint,
    pub declared: bool,
    pub rank: usize,
    /// The rank test's verdict (rank >= 1 means quasi-homogeneous).
    pub criterion_qh: bool,
    /// Whether the rank test is backed by a theorem for this curve.
    pub hypotheses_met: bool,
    pub oracle: Option<LocalInvariants>,
    /// Criterion vs oracle, when both are present.
    pub agreement: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct CurveReport {
    pub curve: ClassifiedCurve,
    pub dpwall: (i64, i64, Option<i64>),
    /// The global criterion verdict, or the reason it does not apply.
    pub qh: std::result::Result<QhReport, Error>,
    pub points: Vec<PointRecord>,
    pub identities: Option<IdentityReport>,
    pub warnings: Vec<String>,
    pub elapsed: Duration,
}

/// Full pipeline: validate, classify, run the global criterion, build the
/// per-point table over declared points plus extracted rank-0 points, and
/// check the structural identities.
pub fn analyze_curve(
    input: &CurveInput,
    cfg: &AnalysisConfig,
    with_oracle: bool,
) -> Result<CurveReport> {
    let start = Instant::now();
    let limits = cfg.limits();
    let mut validated = validate_curve(&input.f, &limits)?;
    validated.label = input.label.clone();
    validated.declared_points = input.declared_points.clone();
    let curve = classify(&validated, cfg.window_for(validated.degree), &limits)?;
    let mut warnings = Vec::new();

    let qh = match qh_criterion_global(&curve, &limits, cfg.experiment) {
        Ok(r) => {
            warnings.extend(r.warnings.iter().cloned());
            Ok(r)
        }
        Err(e) if e.is_rejection() => {
            warnings.push(format!("global criterion skipped: {}", e));
            Err(e)
        }
        Err(e) => return Err(e),
    };

    let hypotheses_met = curve.criterion_hypotheses_met()
        || (cfg.experiment && matches!(curve.classification, Classification::ThreeSyzygy { .. }));

    let mut seen: BTreeSet<ProjectivePoint> = BTreeSet::new();
    let mut queue: Vec<(ProjectivePoint, bool)> = Vec::new();
    for p in &curve.input.declared_points {
        if seen.insert(p.clone()) {
            queue.push((p.clone(), true));
        }
    }
    if let Ok(r) = &qh {
        for p in &r.rank_zero_points {
            if seen.insert(p.clone()) {
                queue.push((p.clone(), false));
            }
        }
    }

    let mut points = Vec::new();
    for (p, declared) in queue {
        if !is_singular_point(&curve.input.f, &p) {
            warnings.push(format!("declared point {} is not singular, skipped", p));
            continue;
        }
        let (rank, criterion_qh) = rank_at_point(&curve, &p)?;
        let oracle = if with_oracle {
            Some(milnor_tjurina_local(&curve.input.f, &p, &limits)?)
        } else {
            None
        };
        let agreement = oracle
            .as_ref()
            .map(|o| o.is_quasi_homogeneous() == criterion_qh);
        points.push(PointRecord {
            point: p,
            declared,
            rank,
            criterion_qh,
            hypotheses_met,
            oracle,
            agreement,
        });
    }

    let identities = match curve.classification {
        Classification::Free { .. } | Classification::NearlyFree { .. } => {
            Some(identity_checks(&curve)?)
        }
        _ => None,
    };

    let dpwall = dp_wall_bounds(curve.d() as i64, curve.r as i64);
    Ok(CurveReport {
        curve,
        dpwall,
        qh,
        points,
        identities,
        warnings,
        elapsed: start.elapsed(),
    })
}

fn classification_json(c: &Classification) -> Value {
    let exponents: Vec<i64> = match *c {
        Classification::Free { d1, d2 } => vec![d1, d2],
        Classification::NearlyFree { d1, d2 } => vec![d1, d2],
        Classification::ThreeSyzygy { d1, d2, d3 } => vec![d1, d2, d3],
        Classification::Other => vec![],
    };
    json!({ "name": c.name(), "exponents": exponents })
}

fn point_json(rec: &PointRecord) -> Value {
    let mut v = json!({
        "point": rec.point.to_string(),
        "declared": rec.declared,
        "rank": rec.rank,
        "criterion_qh": rec.criterion_qh,
        "hypotheses_met": rec.hypotheses_met,
    });
    if let Some(o) = &rec.oracle {
        v["mu"] = json!(o.mu);
        v["tau"] = json!(o.tau);
        v["oracle_qh"] = json!(o.is_quasi_homogeneous());
    }
    if let Some(a) = rec.agreement {
        v["agreement"] = json!(a);
    }
    v
}

impl CurveReport {
    pub fn to_json(&self) -> Value {
        let c = &self.curve;
        let qh = match &self.qh {
            Ok(r) => {
                let verdict = match r.verdict {
                    QhVerdict::AllQH => "all_qh",
                    QhVerdict::ExistsNonQH => "exists_non_qh",
                };
                json!({
                    "verdict": verdict,
                    "scheme_degree": r.scheme_degree,
                    "rank_zero_points": r.rank_zero_points.iter()
                        .map(|p| p.to_string()).collect::<Vec<_>>(),
                })
            }
            Err(e) => json!({ "error": { "code": e.code(), "message": e.to_string() } }),
        };
        let identities = match &self.identities {
            None => Value::Null,
            Some(r) => json!({
                "recovery_scalar": r.recovery_scalar.as_ref().map(rat_to_string),
                "bordered_degrees": r.bordered_degrees.map(|(a, b, g)| vec![a, b, g]),
                "sign_pattern": r.sign_pattern.map(|s| s.to_vec()),
            }),
        };
        json!({
            "input": {
                "label": c.input.label,
                "f": c.input.f.to_string(),
                "declared_points": c.input.declared_points.iter()
                    .map(|p| p.to_string()).collect::<Vec<_>>(),
            },
            "degree": c.d(),
            "mdr": {
                "r": c.r,
                "witness": c.mdr_witness.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            },
            "classification": classification_json(&c.classification),
            "betti": c.betti.levels,
            "tjurina": { "total": c.tau, "stable_from": c.tau_stable_from },
            "dpwall": {
                "lower": self.dpwall.0,
                "upper": self.dpwall.1,
                "secondary_upper": self.dpwall.2,
            },
            "qh": qh,
            "points": self.points.iter().map(point_json).collect::<Vec<_>>(),
            "identities": identities,
            "warnings": self.warnings,
        })
    }

    pub fn to_text(&self, with_timing: bool) -> String {
        let c = &self.curve;
        let mut out = String::new();
        let label = c.input.label.clone().unwrap_or_else(|| "input".to_string());
        out.push_str(&format!("curve {}: f = {}\n", label, c.input.f));
        out.push_str(&format!(
            "degree {}, mdr {}, classification {}",
            c.d(),
            c.r,
            c.classification.name()
        ));
        let exps: Vec<i64> = match c.classification {
            Classification::Free { d1, d2 } | Classification::NearlyFree { d1, d2 } => {
                vec![d1, d2]
            }
            Classification::ThreeSyzygy { d1, d2, d3 } => vec![d1, d2, d3],
            Classification::Other => vec![],
        };
        if !exps.is_empty() {
            out.push_str(&format!(" {:?}", exps));
        }
        out.push('\n');
        out.push_str(&format!(
            "tau = {} (stable from degree {}), betti {:?}\n",
            c.tau, c.tau_stable_from, c.betti.levels
        ));
        let (lo, hi, sec) = self.dpwall;
        out.push_str(&format!("tjurina window [{}, {}]", lo, hi));
        if let Some(s) = sec {
            out.push_str(&format!(" (secondary upper bound {})", s));
        }
        out.push('\n');
        match &self.qh {
            Ok(r) => match r.verdict {
                QhVerdict::AllQH => out.push_str("verdict: all singularities quasi-homogeneous\n"),
                QhVerdict::ExistsNonQH => {
                    out.push_str(&format!(
                        "verdict: non-quasi-homogeneous singularities exist (scheme degree {})\n",
                        r.scheme_degree.unwrap_or(0)
                    ));
                }
            },
            Err(e) => out.push_str(&format!("verdict: unavailable ({})\n", e)),
        }
        if !self.points.is_empty() {
            out.push_str("points:\n");
            for rec in &self.points {
                out.push_str(&format!(
                    "  {}  rank {}  criterion {}{}",
                    rec.point,
                    rec.rank,
                    if rec.criterion_qh { "QH" } else { "non-QH" },
                    if rec.hypotheses_met {
                        ""
                    } else {
                        " (outside theorem hypotheses)"
                    }
                ));
                if let Some(o) = &rec.oracle {
                    out.push_str(&format!(
                        "  mu {} tau {} oracle {}",
                        o.mu,
                        o.tau,
                        if o.is_quasi_homogeneous() {
                            "QH"
                        } else {
                            "non-QH"
                        }
                    ));
                }
                if let Some(a) = rec.agreement {
                    out.push_str(&format!("  agree {}", a));
                }
                out.push('\n');
            }
        }
        if let Some(r) = &self.identities {
            if let Some(s) = &r.recovery_scalar {
                out.push_str(&format!(
                    "identities: minors recover f with scalar {}\n",
                    rat_to_string(s)
                ));
            }
            if let Some((a, b, g)) = r.bordered_degrees {
                out.push_str(&format!(
                    "identities: bordered divisions exact, degrees ({}, {}, {})\n",
                    a, b, g
                ));
            }
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {}\n", w));
        }
        if with_timing {
            out.push_str(&format!("elapsed: {:.2?}\n", self.elapsed));
        }
        out
    }
}

/// Report for `check-point`: one record for one user-supplied point.
pub fn check_point(
    input: &CurveInput,
    p: &ProjectivePoint,
    cfg: &AnalysisConfig,
) -> Result<PointRecord> {
    let limits = cfg.limits();
    let validated = validate_curve(&input.f, &limits)?;
    let curve = classify(&validated, cfg.window_for(validated.degree), &limits)?;
    let (rank, criterion_qh) = rank_at_point(&curve, p)?;
    let oracle = milnor_tjurina_local(&curve.input.f, p, &limits)?;
    let agreement = Some(oracle.is_quasi_homogeneous() == criterion_qh);
    Ok(PointRecord {
        point: p.clone(),
        declared: false,
        rank,
        criterion_qh,
        hypotheses_met: curve.criterion_hypotheses_met(),
        oracle: Some(oracle),
        agreement,
    })
}

pub fn point_record_json(rec: &PointRecord) -> Value {
    point_json(rec)
}

pub fn point_record_text(rec: &PointRecord) -> String {
    let mut out = format!(
        "{}  rank {}  criterion {}{}",
        rec.point,
        rec.rank,
        if rec.criterion_qh { "QH" } else { "non-QH" },
        if rec.hypotheses_met {
            ""
        } else {
            " (outside theorem hypotheses)"
        }
    );
    if let Some(o) = &rec.oracle {
        out.push_str(&format!(
            "  mu {} tau {} oracle {}",
            o.mu,
            o.tau,
            if o.is_quasi_homogeneous() {
                "QH"
            } else {
                "non-QH"
            }
        ));
    }
    if let Some(a) = rec.agreement {
        out.push_str(&format!("  agree {}", a));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_polynomial;

    fn input(expr: &str) -> CurveInput {
        let f = parse_polynomial(expr).unwrap();
        CurveInput {
            degree: f.homogeneous_degree().unwrap(),
            f,
            label: None,
            declared_points: vec![ProjectivePoint::from_ints(0, 0, 1).unwrap()],
        }
    }

    #[test]
    fn free_septic_report() {
        let cfg = AnalysisConfig::default();
        let rep = analyze_curve(&input("x0^7 + x0^3*x1^4 + x1^6*x2"), &cfg, true).unwrap();
        assert_eq!(rep.curve.tau, 27);
        // the unique cusp has mu 30 > tau 27, so it is not quasi-homogeneous
        assert!(matches!(
            rep.qh,
            Ok(QhReport {
                verdict: QhVerdict::ExistsNonQH,
                ..
            })
        ));
        assert_eq!(rep.points.len(), 1);
        assert_eq!(rep.points[0].rank, 0);
        assert_eq!(rep.points[0].agreement, Some(true));
        let v = rep.to_json();
        assert_eq!(v["degree"], 7);
        assert_eq!(v["qh"]["verdict"], "exists_non_qh");
        assert_eq!(v["tjurina"]["total"], 27);
        assert!(v.get("elapsed").is_none());
    }

    #[test]
    fn json_is_deterministic() {
        let cfg = AnalysisConfig::default();
        let a = analyze_curve(&input("x0*(x0^3*x2 + x1^4)"), &cfg, true)
            .unwrap()
            .to_json()
            .to_string();
        let b = analyze_curve(&input("x0*(x0^3*x2 + x1^4)"), &cfg, true)
            .unwrap()
            .to_json()
            .to_string();
        assert_eq!(a, b);
    }

    #[test]
    fn no_oracle_skips_local_invariants() {
        let cfg = AnalysisConfig::default();
        let rep = analyze_curve(&input("x0^7 + x0^3*x1^4 + x1^6*x2"), &cfg, false).unwrap();
        assert!(rep.points[0].oracle.is_none());
        assert!(rep.points[0].agreement.is_none());
        let v = rep.to_json();
        assert!(v["points"][0].get("mu").is_none());
    }

    #[test]
    fn check_point_on_nearly_free() {
        let cfg = AnalysisConfig::default();
        let rec = check_point(
            &input("x0^7 + x0^4*x1^3 + x1^6*x2"),
            &ProjectivePoint::from_ints(0, 0, 1).unwrap(),
            &cfg,
        )
        .unwrap();
        assert!(!rec.criterion_qh || rec.rank > 0);
        assert_eq!(rec.agreement, Some(true));
        let rejected = check_point(
            &input("x0^7 + x0^4*x1^3 + x1^6*x2"),
            &ProjectivePoint::from_ints(1, 1, 1).unwrap(),
            &cfg,
        );
        assert!(matches!(rejected.unwrap_err(), Error::NotSingularPoint(_)));
    }
}
