use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spinorkit::exactnum::{ExactMatrix, GaussianRational};
use spinorkit::gamma::GammaRep;
use spinorkit::identities::{eval_text, expand_in_gamma_basis, parse_expr, reconstruct, verify, verify_all};

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

fn scalar_of(text: &str, d: usize) -> GaussianRational {
    let ev = eval_text(text, d).unwrap();
    assert!(ev.free.is_empty());
    ev.values[0].1.as_scalar().unwrap()
}

#[test]
fn gamma3_agrees_with_antisymmetric_contraction_at_r1() {
    for d in 2..=8usize {
        let lhs = eval_text("G^a G^b G_a", d).unwrap();
        let anti = eval_text("G^a G^{b} G_a", d).unwrap();
        let rhs = eval_text(&format!("{} G^b", d as i64 - 2), d).unwrap();
        let r = 1i64;
        let anti_coeff = (if (r + 1) % 2 == 0 { 1 } else { -1 }) * (d as i64 - 2 * r);
        let rhs_anti = eval_text(&format!("{} G^b", anti_coeff), d).unwrap();
        for (((x, y), z), w) in lhs.values.iter().zip(&anti.values).zip(&rhs.values).zip(&rhs_anti.values) {
            assert_eq!(x.1, z.1);
            assert_eq!(y.1, w.1);
            assert_eq!(z.1, w.1);
        }
    }
}

#[test]
fn contraction_at_zero_one_reproduces_gamma2_only_with_alternative_sign() {
    for d in 2..=10usize {
        let gamma2 = scalar_of("G^a G_a", d);
        assert_eq!(gamma2, GaussianRational::int(-(d as i64)));
        let (r, s) = (0usize, 1usize);
        let count = factorial(d - r) / factorial(d - r - s);
        let displayed = if r % 2 == 0 { count } else { -count };
        let alternative = if (s * (s + 1) / 2) % 2 == 0 { count } else { -count };
        assert_ne!(GaussianRational::int(displayed), gamma2);
        assert_eq!(GaussianRational::int(alternative), gamma2);
    }
}

#[test]
fn registry_outcomes_per_dimension() {
    for d in 2..=8 {
        for r in verify_all(d).unwrap() {
            let expect_displayed = !matches!(r.id.as_str(), "contraction-s" | "d4-gamma5-2" | "gamma5-gammac" | "godplz" | "fierz-1" | "lemma-fierz");
            assert_eq!(r.displayed_holds, expect_displayed, "{} at D={}", r.id, d);
            assert_eq!(r.pass, r.id != "lemma-fierz", "{} at D={}", r.id, d);
        }
    }
}

#[test]
fn exactly_one_godplz_sign_holds() {
    let r = verify("godplz", 4).unwrap();
    let holding: Vec<&str> = r.readings.iter().filter(|x| x.holds).map(|x| x.reading.as_str()).collect();
    assert_eq!(holding, ["3χ̄γαψ, sign (−1)^{|α|}"]);
}

#[test]
fn fierz_rearrangement_holds_only_negated() {
    let r = verify("fierz-1", 4).unwrap();
    assert!(!r.readings[0].holds);
    assert_eq!(r.holding_reading.as_deref(), Some("right-hand side negated"));
    assert!(r.readings[0].witness.is_some());
}

#[test]
fn out_of_scope_requests_are_rejected() {
    assert!(verify("d4-gamma3", 6).is_err());
    assert!(verify("trace-orthogonality", 5).is_err());
    assert!(verify("flip-0", 10).is_err());
    assert!(verify("no-such-identity", 4).is_err());
}

#[test]
fn expansion_reconstructs_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for d in [2usize, 4, 6, 8] {
        let rep = GammaRep::build(d).unwrap();
        let n = rep.size();
        for _ in 0..20 {
            let data: Vec<GaussianRational> = (0..n * n)
                .map(|_| if rng.gen_bool(0.3) { GaussianRational::complex_int(rng.gen_range(-5..=5), rng.gen_range(-5..=5)) } else { GaussianRational::zero() })
                .collect();
            let m = ExactMatrix::from_vec(n, n, data);
            let c = expand_in_gamma_basis(&m, &rep).unwrap();
            assert_eq!(reconstruct(&c, &rep).unwrap(), m, "D={}", d);
        }
    }
}

#[test]
fn eval_examples() {
    assert_eq!(eval_text("G^a G_a", 4).unwrap().render(), "-4·Id\n");
    assert_eq!(scalar_of("G^a G^b G_a G_b", 4), GaussianRational::int(-8));
    assert_eq!(scalar_of("eta[a,b] eta_[a,b]", 5), GaussianRational::int(5));
    assert!(eval_text("G^a G^a", 4).is_err());
    assert!(eval_text("G^a + G^b", 4).is_err());
    assert!(eval_text("eps[a,b,c]", 4).is_err());
}

fn term() -> impl Strategy<Value = String> {
    const TEMPLATES: [&str; 7] = ["G^b", "G^a G^b G_a", "G^{b c} G_c", "eta[b,c] G_c", "G_a G^a G^b", "(G^b + G^a G_a G^b)", "G^{a b} G_a"];
    (-6i64..=6, 1i64..=4, prop::sample::select(&TEMPLATES[..]), any::<bool>()).prop_map(|(p, q, t, imag)| {
        let coeff = if q == 1 { format!("{}", p.abs()) } else { format!("{}/{}", p.abs(), q) };
        format!("{}{} {}", coeff, if imag { "i" } else { "" }, t)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parser_round_trips(terms in prop::collection::vec((term(), any::<bool>()), 1..5)) {
        let mut text = String::new();
        for (k, (t, neg)) in terms.iter().enumerate() {
            if k > 0 || *neg {
                text.push_str(if *neg { " - " } else { " + " });
            }
            text.push_str(t);
        }
        let e = parse_expr(&text).unwrap();
        let again = parse_expr(&e.to_string()).unwrap();
        prop_assert_eq!(&again, &e);
        let x = spinorkit::identities::eval_expr(&e, &GammaRep::build(4).unwrap()).unwrap();
        let y = spinorkit::identities::eval_expr(&again, &GammaRep::build(4).unwrap()).unwrap();
        prop_assert_eq!(x.values, y.values);
    }
}
