//! Acceptance suite. Each criterion is one test printing a PASS/FAIL line;
//! run with `--nocapture` to see every line.

use qhom::analyzer::{
    classify, conjecture_experiment, curl_check, dp_wall_bounds, identity_checks,
    milnor_tjurina_local, qh_criterion_global, rank_at_point, signed_minors, validate_curve,
    Classification, ClassifiedCurve, CurveInput, QhVerdict,
};
use qhom::config::AnalysisConfig;
use qhom::engine::{module_buchberger, reduce, GbLimits, ModPoly, StepCounter};
use qhom::families::{family_generators, Params};
use qhom::groebner::{gb_of_polys, radical_membership, Ideal};
use qhom::order::MonomialOrder;
use qhom::parser::parse_polynomial;
use qhom::point::ProjectivePoint;
use qhom::poly::Polynomial;
use qhom::rational::rat_int;
use qhom::report::analyze_curve;
use qhom::resolution::minimal_free_resolution;
use std::panic::{catch_unwind, AssertUnwindSafe};

fn criterion(n: usize, name: &str, body: impl FnOnce()) {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(()) => println!("criterion {} ({}): PASS", n, name),
        Err(e) => {
            println!("criterion {} ({}): FAIL", n, name);
            std::panic::resume_unwind(e);
        }
    }
}

fn lim() -> GbLimits {
    GbLimits::default()
}

fn fam(name: &str, pairs: &[(&str, &str)]) -> CurveInput {
    let params: Params = pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
    family_generators(name, &params).unwrap()
}

fn classified(input: &CurveInput) -> ClassifiedCurve {
    classify(input, 3.max(input.degree as usize), &lim()).unwrap()
}

fn pt(a: i64, b: i64, c: i64) -> ProjectivePoint {
    ProjectivePoint::from_ints(a, b, c).unwrap()
}

#[test]
fn acceptance_1_septic_triple() {
    criterion(1, "septic triple", || {
        let free = classified(&fam("septic_free", &[]));
        assert_eq!(free.classification, Classification::Free { d1: 3, d2: 3 });
        assert_eq!(free.r, 3);
        assert_eq!(free.tau, 27);
        assert_eq!(free.betti.levels, vec![vec![6, 6, 6], vec![9, 9]]);

        let nearly = classified(&fam("septic_nearly_free", &[]));
        assert_eq!(
            nearly.classification,
            Classification::NearlyFree { d1: 3, d2: 4 }
        );
        assert_eq!(nearly.r, 3);
        assert_eq!(nearly.tau, 26);
        assert_eq!(
            nearly.betti.levels,
            vec![vec![6, 6, 6], vec![9, 10, 10], vec![11]]
        );

        let other = classified(&fam("septic_plus", &[]));
        assert_eq!(other.classification, Classification::Other);
        assert_eq!(other.r, 2);
        assert_eq!(other.tau, 25);
        assert_eq!(
            other.betti.levels,
            vec![vec![6, 6, 6], vec![8, 12, 12, 12], vec![13, 13]]
        );
    });
}

#[test]
fn acceptance_2_quintic_oracle() {
    criterion(2, "quintic oracle", || {
        let p = pt(0, 0, 1);

        let qh = fam("quintic_qh", &[]);
        let c = classified(&qh);
        assert_eq!(c.r, 1);
        let loc = milnor_tjurina_local(&qh.f, &p, &lim()).unwrap();
        assert_eq!((loc.mu, loc.tau), (13, 13));
        let (_, flag) = rank_at_point(&c, &p).unwrap();
        assert!(flag);

        let non = fam("quintic_non_qh", &[]);
        let c = classified(&non);
        assert_eq!(c.r, 2);
        let loc = milnor_tjurina_local(&non.f, &p, &lim()).unwrap();
        assert_eq!((loc.mu, loc.tau), (13, 12));
        let (rank, flag) = rank_at_point(&c, &p).unwrap();
        assert_eq!(rank, 0);
        assert!(!flag);
    });
}

#[test]
fn acceptance_3_tacnodal_curves() {
    criterion(3, "tacnodal family sweep", || {
        for m in 2..=4u32 {
            for name in ["ploski_even", "ploski_odd"] {
                let input = fam(name, &[("m", &m.to_string())]);
                let c = classified(&input);
                let d = input.degree as i64;
                assert_eq!(c.classification, Classification::Free { d1: 1, d2: d - 2 });
                // closed formulas for the unique singular point
                let mu = (d - 1) * (d - 1) - d / 2;
                let tau = d * d - 3 * d + 3;
                let loc = milnor_tjurina_local(&input.f, &pt(0, 0, 1), &lim()).unwrap();
                assert_eq!((loc.mu as i64, loc.tau as i64), (mu, tau));
                let report = qh_criterion_global(&c, &lim(), false).unwrap();
                if mu == tau {
                    // degenerate smallest case d = 4: the tacnode is
                    // quasi-homogeneous and the criterion must see it
                    assert_eq!((name, m), ("ploski_even", 2));
                    assert_eq!(report.verdict, QhVerdict::AllQH);
                } else {
                    assert_eq!(report.verdict, QhVerdict::ExistsNonQH);
                    assert_eq!(report.rank_zero_points, vec![pt(0, 0, 1)]);
                    let q = report.scheme_degree.unwrap();
                    assert_eq!(q, 1);
                    assert!(q as i64 <= (c.r as i64) * (c.r as i64));
                }
            }
        }
    });
}

#[test]
fn acceptance_4_line_arrangements() {
    criterion(4, "line arrangements all QH", || {
        for d in [5u32, 6, 7] {
            let input = fam("line_arrangement", &[("d", &d.to_string())]);
            let c = classified(&input);
            assert!(matches!(c.classification, Classification::Free { .. }));
            let report = qh_criterion_global(&c, &lim(), false).unwrap();
            assert_eq!(report.verdict, QhVerdict::AllQH);
            // directly: every variable is in the radical of the entries ideal
            let entries: Vec<Polynomial> = (0..c.syzygy_matrix.cols())
                .flat_map(|j| c.syzygy_matrix.column(j).to_vec())
                .filter(|p| !p.is_zero())
                .collect();
            let e = Ideal::new(entries, 3);
            for i in 0..3 {
                assert!(radical_membership(&Polynomial::var(i), &e, &lim()).unwrap());
            }
        }
    });
}

#[test]
fn acceptance_5_conic_lines_9() {
    criterion(5, "degree 9 conic-line arrangement", || {
        let input = fam("conic_lines_9", &[]);
        let c = classified(&input);
        assert!(matches!(
            c.classification,
            Classification::NearlyFree { .. }
        ));
        assert_eq!(c.r, 4);
        assert_eq!(c.tau, 47);
        let expected_ranks = [1usize, 1, 1, 0, 0];
        for (p, want) in input.declared_points.iter().zip(expected_ranks) {
            let (rank, _) = rank_at_point(&c, p).unwrap();
            assert_eq!(rank, want, "rank at {}", p);
            let loc = milnor_tjurina_local(&input.f, p, &lim()).unwrap();
            if want == 1 {
                assert_eq!(loc.mu, loc.tau, "expected QH at {}", p);
            } else {
                assert!(loc.mu > loc.tau, "expected non-QH at {}", p);
            }
        }
    });
}

#[test]
fn acceptance_6_lines_conic_12() {
    criterion(6, "degree 12 arrangement", || {
        let input = fam("lines_conic_12", &[]);
        let c = classified(&input);
        assert!(matches!(
            c.classification,
            Classification::NearlyFree { .. }
        ));
        assert_eq!(c.r, 6);
        assert_eq!(c.tau, 90);
        assert_eq!(input.declared_points.len(), 20);
        let mut total_mu = 0usize;
        for (i, p) in input.declared_points.iter().enumerate() {
            let on_conic = i < 5;
            let loc = milnor_tjurina_local(&input.f, p, &lim()).unwrap();
            total_mu += loc.mu;
            assert_eq!(loc.mu, if on_conic { 16 } else { 1 }, "mu at {}", p);
            let (rank, _) = rank_at_point(&c, p).unwrap();
            assert_eq!(rank == 0, on_conic, "rank at {}", p);
        }
        assert_eq!(total_mu, 95);
    });
}

#[test]
fn acceptance_7_three_syzygy_conjecture() {
    criterion(7, "3-syzygy cusp family", || {
        for k in [2u32, 3] {
            let input = fam("three_syzygy", &[("k", &k.to_string())]);
            let d = input.degree as i64;
            let c = classified(&input);
            assert_eq!(
                c.classification,
                Classification::ThreeSyzygy {
                    d1: 2,
                    d2: d - 2,
                    d3: d - 1
                }
            );
            let p = pt(0, 0, 1);
            let loc = milnor_tjurina_local(&input.f, &p, &lim()).unwrap();
            assert_eq!(loc.mu as i64, d * d - 3 * d + 1);
            assert_eq!(loc.tau as i64, d * d - 4 * d + 5);
            let (rank, _) = rank_at_point(&c, &p).unwrap();
            assert_eq!(rank, 0);
            let rows = conjecture_experiment(&c, &[p], &lim()).unwrap();
            assert!(rows.iter().all(|r| r.agree));
        }
    });
}

// deterministic xorshift generator for the random-polynomial suite
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

fn random_homogeneous(rng: &mut Rng) -> Polynomial {
    let d = 3 + rng.below(6) as u32; // degree 3..8
    let terms = 3 + rng.below(3);
    let mut f = Polynomial::zero();
    for _ in 0..terms {
        let a = rng.below(d as u64 + 1) as u32;
        let b = rng.below((d - a) as u64 + 1) as u32;
        let c = d - a - b;
        let coeff = rat_int(1 + rng.below(9) as i64 - 5).clone();
        let mono = Polynomial::var(0)
            .power(a)
            .mul(&Polynomial::var(1).power(b))
            .mul(&Polynomial::var(2).power(c));
        f = f.add(&mono.scale(&coeff));
    }
    if f.is_zero() || f.homogeneous_degree() != Some(d) {
        return random_homogeneous(rng);
    }
    f
}

fn corpus() -> Vec<CurveInput> {
    vec![
        fam("septic_free", &[]),
        fam("septic_nearly_free", &[]),
        fam("septic_plus", &[]),
        fam("quintic_qh", &[]),
        fam("quintic_non_qh", &[]),
        fam("ploski_even", &[("m", "2")]),
        fam("ploski_odd", &[("m", "2")]),
        fam("c2", &[("m", "2")]),
        fam("cl6", &[("m", "2")]),
        fam("line_arrangement", &[("d", "5")]),
        fam("conic_lines_9", &[]),
        fam("three_syzygy", &[("k", "2")]),
        fam("fermat_product", &[("d", "3")]),
        fam("cuspidal_free", &[("d", "6"), ("r", "2")]),
    ]
}

#[test]
fn acceptance_8_property_suites() {
    criterion(8, "property suites", || {
        let ord = MonomialOrder::Grevlex;

        // Euler identity through the Groebner engine on 100 random curves
        let mut rng = Rng(0x9e3779b97f4a7c15);
        for _ in 0..100 {
            let f = random_homogeneous(&mut rng);
            let d = f.homogeneous_degree().unwrap();
            let partials: Vec<Polynomial> = (0..3).map(|i| f.partial_derivative(i)).collect();
            let gb = gb_of_polys(&partials, ord, 3, &lim()).unwrap();
            let df = f.scale(&rat_int(d as i64));
            assert!(
                gb.normal_form(&df, &lim()).unwrap().is_zero(),
                "Euler identity failed for {}",
                f
            );
        }

        for input in corpus() {
            let f = &input.f;
            let d = input.degree;
            let partials: Vec<Polynomial> = (0..3).map(|i| f.partial_derivative(i)).collect();
            let c = classified(&input);
            let m = &c.syzygy_matrix;

            // Koszul syzygies lie in the module spanned by the columns of M_f
            let cols: Vec<ModPoly> = (0..m.cols())
                .map(|j| ModPoly::from_components(&m.column(j), &ord))
                .collect();
            let twists = vec![(d - 1) as i64; 3];
            let gb = module_buchberger(&cols, &ord, &twists, &lim(), false).unwrap();
            let koszul = [
                [partials[1].clone(), partials[0].neg(), Polynomial::zero()],
                [partials[2].clone(), Polynomial::zero(), partials[0].neg()],
                [Polynomial::zero(), partials[2].clone(), partials[1].neg()],
            ];
            for k in koszul {
                let v = ModPoly::from_components(&k, &ord);
                let mut counter = StepCounter::new(&lim());
                let (nf, _) = reduce(&v, &gb.basis, &ord, &mut counter, false).unwrap();
                assert!(nf.is_zero(), "Koszul syzygy not in Syz for {}", f);
            }

            // resolution invariants: graded, minimal, consecutive products zero
            let res = minimal_free_resolution(&partials, &lim(), 5).unwrap();
            res.verify().unwrap();

            // Tjurina window, with the characterization under the hypotheses
            let (lo, hi, _) = dp_wall_bounds(d as i64, c.r as i64);
            assert!(lo <= c.tau as i64 && c.tau as i64 <= hi);
            if (d as i64) > 2 * c.r as i64 {
                assert_eq!(
                    c.tau as i64 == hi,
                    matches!(c.classification, Classification::Free { .. })
                );
            }
            if (d as i64) >= 2 * c.r as i64 {
                assert_eq!(
                    c.tau as i64 == hi - 1,
                    matches!(c.classification, Classification::NearlyFree { .. })
                );
            }

            // gradients are curl-free; so are minor triples of free matrices
            let grads = [
                partials[0].clone(),
                partials[1].clone(),
                partials[2].clone(),
            ];
            assert!(curl_check(&grads, d).unwrap());
            if matches!(c.classification, Classification::Free { .. }) {
                assert!(curl_check(&signed_minors(m), d).unwrap());
            }

            // structural identities on free and nearly free curves
            match c.classification {
                Classification::Free { .. } => {
                    let rep = identity_checks(&c).unwrap();
                    assert!(rep.recovery_scalar.is_some());
                }
                Classification::NearlyFree { .. } => {
                    let rep = identity_checks(&c).unwrap();
                    let (da, db, dg) = rep.bordered_degrees.unwrap();
                    assert_eq!(da as i64, d as i64 - 2 * c.r as i64 + 1);
                    assert_eq!((db, dg), (1, 1));
                }
                _ => {}
            }

            // criterion vs oracle at every tabulated rational singular point
            if c.criterion_hypotheses_met() {
                let cfg = AnalysisConfig::default();
                let rep = analyze_curve(&input, &cfg, true).unwrap();
                for rec in &rep.points {
                    assert_eq!(rec.agreement, Some(true), "disagreement at {}", rec.point);
                }
            }
        }
    });
}

#[test]
fn acceptance_9_determinism() {
    criterion(9, "byte-identical JSON", || {
        let cfg = AnalysisConfig::default();
        let sample = [
            fam("septic_free", &[]),
            fam("septic_nearly_free", &[]),
            fam("quintic_non_qh", &[]),
            fam("c2", &[("m", "2")]),
            fam("line_arrangement", &[("d", "5")]),
        ];
        for input in sample {
            let a = analyze_curve(&input, &cfg, true)
                .unwrap()
                .to_json()
                .to_string();
            let b = analyze_curve(&input, &cfg, true)
                .unwrap()
                .to_json()
                .to_string();
            assert_eq!(a, b, "nondeterministic report for {:?}", input.label);
            assert!(!a.contains("elapsed"));
        }
    });
}

#[test]
fn validation_rejects_bad_input() {
    let err = validate_curve(&parse_polynomial("x0^2 + x1^3").unwrap(), &lim()).unwrap_err();
    assert!(err.is_rejection());
}
