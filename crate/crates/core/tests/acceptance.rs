//! Eight exactness criteria, one PASS/FAIL line each. Criteria that fail for
//! documented reasons are listed in `EXPECTED`, together with the exact items
//! that fail; any other outcome fails the test.

use std::io::Write;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spinorkit::classification::{classify_complex, classify_real, validate};
use spinorkit::clifford::{spin_generator_matrix, Signature};
use spinorkit::conjugation::{admissible_etas, charge_conj, epsilon_of, in_table_cell, invariant_failures, scherk_value, solve_b, t_from_matrices, t_parameter, ScherkValue};
use spinorkit::exactnum::{intertwiners, ExactMatrix, GaussianRational};
use spinorkit::forms::{lemma_reports, split_21, split_31, volume_coefficient, Coframe, FormKit, MapVariant};
use spinorkit::gamma::GammaRep;
use spinorkit::identities::{verify, verify_all, IdentityReport, REGISTRY};

/// Criterion number and the items expected to fail in it.
const EXPECTED: &[(usize, &[&str])] = &[
    (
        4,
        &[
            "contraction-s@D=2",
            "contraction-s@D=3",
            "contraction-s@D=4",
            "contraction-s@D=5",
            "contraction-s@D=6",
            "contraction-s@D=7",
            "contraction-s@D=8",
            "contraction-s@D=9",
            "contraction-s@D=10",
            "d4-gamma5-2@D=4",
            "gamma5-gammac@D=4",
        ],
    ),
    (6, &["fierz-1@D=4", "lemma-fierz@D=4"]),
    (8, &["volume-identity@e=identity", "volume-identity@e=random#0", "volume-identity@e=random#1", "volume-identity@e=random#2", "volume-identity@e=random#3", "volume-identity@e=random#4"]),
];

type Failures = Vec<String>;

// ---- criterion 1 -------------------------------------------------------

/// Transcription of the real classification table: `(r−s) mod 8` selects the
/// field, the matrix size `2^{N/2}` and whether the algebra is doubled.
fn table_full(r: usize, s: usize) -> String {
    let d = r + s;
    let (field, n, double) = match (r as i64 - s as i64).rem_euclid(8) {
        0 | 6 => ("R", d, false),
        2 | 4 => ("H", d - 2, false),
        1 | 5 => ("C", d - 1, false),
        3 => ("H", d - 3, true),
        _ => ("R", d - 1, true),
    };
    label(field, n, double)
}

fn table_even(r: usize, s: usize) -> String {
    let d = r + s;
    let (field, n, double) = match (r as i64 - s as i64).rem_euclid(8) {
        1 | 7 => ("R", d - 1, false),
        3 | 5 => ("H", d - 3, false),
        2 | 6 => ("C", d - 2, false),
        4 => ("H", d - 4, true),
        _ => ("R", d - 2, true),
    };
    label(field, n, double)
}

fn table_complex(d: usize) -> (String, String) {
    if d % 2 == 0 { (label("C", d, false), label("C", d - 2, true)) } else { (label("C", d - 1, true), label("C", d - 1, false)) }
}

fn label(field: &str, n: usize, double: bool) -> String {
    let one = format!("{}({})", field, 1u64 << (n / 2));
    if double { format!("{}+{}", one, one) } else { one }
}

fn criterion_1() -> Failures {
    let mut f = Vec::new();
    for r in 0..=8 {
        for s in 0..=8 {
            if r + s == 0 {
                continue;
            }
            let sig = Signature::new(r, s).unwrap();
            let c = classify_real(sig).unwrap();
            if c.full.label() != table_full(r, s) || c.even.label() != table_even(r, s) {
                f.push(format!("table@({},{})", r, s));
            }
            if !validate(sig).unwrap().ok() {
                f.push(format!("validators@({},{})", r, s));
            }
        }
    }
    for d in 1..=10 {
        let c = classify_complex(d).unwrap();
        if (c.full.label(), c.even.label()) != table_complex(d) {
            f.push(format!("complex@D={}", d));
        }
    }
    f
}

// ---- criterion 2 -------------------------------------------------------

fn criterion_2() -> Failures {
    let mut f = Vec::new();
    for d in 2..=11 {
        let rep = GammaRep::build(d).unwrap();
        let g = rep.gammas();
        let n = rep.size();
        for a in 0..d {
            for b in 0..d {
                let expect = ExactMatrix::scalar(n, GaussianRational::int(-2 * rep.eta_ab(a, b)));
                if g[a].anticommutator(&g[b]) != expect {
                    f.push(format!("clifford@D={} ({},{})", d, a, b));
                }
            }
            let herm = if a == 0 { g[a].adjoint() == g[a] } else { g[a].adjoint() == -&g[a] };
            if !herm {
                f.push(format!("hermiticity@D={} a={}", d, a));
            }
            if !(&g[a] * &g[a].adjoint()).is_identity() {
                f.push(format!("unitarity@D={} a={}", d, a));
            }
        }
        if intertwiners(g, g).len() != 1 {
            f.push(format!("commutant@D={}", d));
        }
    }
    f
}

// ---- criterion 3 -------------------------------------------------------

/// `cos(πm/4) − η sin(πm/4)` as `(value, in units of √2)`.
fn scherk_oracle(m: i64, eta: i64) -> (i64, bool) {
    let half = std::f64::consts::FRAC_PI_4;
    let x = (half * m as f64).cos() - eta as f64 * (half * m as f64).sin();
    let r2 = std::f64::consts::SQRT_2;
    for v in [-1i64, 0, 1] {
        if (x - v as f64).abs() < 1e-9 {
            return (v, false);
        }
        if v != 0 && (x - v as f64 * r2).abs() < 1e-9 {
            return (v, true);
        }
    }
    unreachable!("trigonometric values at multiples of π/4")
}

fn criterion_3() -> Failures {
    let mut f = Vec::new();
    for d in 2..=11usize {
        let rep = GammaRep::build(d).unwrap();
        for eta in admissible_etas(d) {
            let right: Vec<ExactMatrix> = rep.gammas().iter().map(|g| g.conj().scale(&GaussianRational::int(eta))).collect();
            if intertwiners(rep.gammas(), &right).len() != 1 {
                f.push(format!("kernel@D={} η={}", d, eta));
                continue;
            }
            let eps = epsilon_of(&solve_b(&rep, eta).unwrap()).unwrap();
            let (v, root2) = scherk_oracle(d as i64 - 2, eta);
            let agrees = if d % 2 == 0 {
                !root2 && v == eps
            } else {
                // derived for D = 2k only: the odd case takes the sign and the
                // even case D − 1 with the same η
                root2 && v == eps && scherk_oracle(d as i64 - 3, eta) == (eps, false)
            };
            let lib = match scherk_value(d - 1, eta) {
                ScherkValue::Unit(x) => (x, false),
                ScherkValue::Root2(x) => (x, true),
                ScherkValue::Zero => (0, true),
            };
            if !agrees || lib != (v, root2) {
                f.push(format!("scherk@D={} η={}", d, eta));
            }
            if !in_table_cell(d, eps, eta) {
                f.push(format!("table@D={} η={}", d, eta));
            }
            let data = charge_conj(&rep, eta).unwrap();
            if !invariant_failures(&data, &rep).is_empty() {
                f.push(format!("C-properties@D={} η={}", d, eta));
            }
        }
    }
    let rep = GammaRep::build(4).unwrap();
    let b = solve_b(&rep, -1).unwrap();
    let g2 = rep.gamma(2);
    let (i, j, x) = g2.nonzeros()[0];
    if b != g2.scale(&(&b[(i, j)] / x)) {
        f.push("B∝Γ_2@D=4".into());
    }
    f
}

// ---- criterion 4 -------------------------------------------------------

/// Reading graded for each identity: the displayed one, except that godplz
/// uses its appendix form and the ε identities use `ε^{0123} = +1`.
fn graded_reading(r: &IdentityReport) -> &str {
    match r.id.as_str() {
        "godplz" => "3χ̄γαψ, sign (−1)^{|α|}",
        "d4-gamma3" | "d4-gamma5-2" => "ε^{0123} = +1",
        "gamma5-gammac" => "full contraction, ε^{0123} = +1",
        _ => &r.readings[0].reading,
    }
}

fn graded_holds(r: &IdentityReport) -> bool {
    let name = graded_reading(r);
    r.readings.iter().find(|x| x.reading == name).unwrap_or_else(|| panic!("{} has no reading '{}'", r.id, name)).holds
}

const ALGEBRAIC_SUITE_EXCLUDES: &[&str] = &["flip-0", "flip-1", "flip-2", "flip-3", "flip-N", "fierz-0", "fierz-1", "fierz-2", "lemma-fierz"];

fn criterion_4() -> Failures {
    let mut f = Vec::new();
    for d in 2..=10 {
        for r in verify_all(d).unwrap() {
            if ALGEBRAIC_SUITE_EXCLUDES.contains(&r.id.as_str()) {
                continue;
            }
            if !graded_holds(&r) {
                f.push(format!("{}@D={}", r.id, d));
            }
        }
    }
    f
}

// ---- criterion 5 -------------------------------------------------------

fn criterion_5() -> Failures {
    let mut f = Vec::new();
    for id in ["flip-0", "flip-1", "flip-2", "flip-3", "flip-N"] {
        if !verify(id, 4).unwrap().displayed_holds {
            f.push(format!("{}@D=4", id));
        }
    }
    for n in 0..=8usize {
        let oracle = if ((n + 1) / 2) % 2 == 0 { 1 } else { -1 };
        if t_parameter(n) != oracle || t_parameter(n + 4) != t_parameter(n) {
            f.push(format!("t_{}", n));
        }
    }
    let rep = GammaRep::build(4).unwrap();
    let data = charge_conj(&rep, -1).unwrap();
    for n in 0..=4 {
        if t_from_matrices(&data, &rep, n).unwrap() != Some(t_parameter(n)) {
            f.push(format!("t_{}@matrices", n));
        }
    }
    f
}

// ---- criterion 6 -------------------------------------------------------

fn criterion_6() -> Failures {
    ["fierz-0", "fierz-1", "fierz-2", "lemma-fierz"]
        .into_iter()
        .filter(|id| !verify(id, 4).unwrap().displayed_holds)
        .map(|id| format!("{}@D=4", id))
        .collect()
}

// ---- criterion 7 -------------------------------------------------------

fn frames() -> Vec<(String, Coframe)> {
    let mut v = vec![("e=identity".to_string(), Coframe::identity())];
    v.extend(Coframe::seeded(8128, 5).into_iter().enumerate().map(|(k, c)| (format!("e=random#{}", k), c)));
    v
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<GaussianRational> {
    use rand::Rng;
    (0..n).map(|_| GaussianRational::frac(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect()
}

fn criterion_7() -> Failures {
    let mut f = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, frame) in frames() {
        for r in lemma_reports(&frame).unwrap() {
            if r.id == "volume-identity" {
                continue;
            }
            if !r.pass || r.expected != 4 * r.form_count as i64 {
                f.push(format!("{} [{}]@{}", r.id, r.quantity, name));
            }
        }
        let kit = FormKit::new(&frame).unwrap();
        let maps = [
            (kit.build_map(MapVariant::EGamma10).unwrap(), kit.build_map(MapVariant::Gamma3_31).unwrap(), 64, "split_31"),
            (kit.build_map(MapVariant::We { i: 1, j: 0 }).unwrap(), kit.build_map(MapVariant::GammaGamma3_21).unwrap(), 96, "split_21"),
        ];
        for (image, kernel, n, which) in &maps {
            for _ in 0..20 {
                let theta = random_vector(&mut rng, *n);
                let (alpha, beta) = if *which == "split_31" { split_31(&theta, &kit) } else { split_21(&theta, &kit) }.unwrap();
                let back: Vec<GaussianRational> = image.apply(&alpha).iter().zip(&beta).map(|(x, y)| x + y).collect();
                if back != theta || !kernel.apply(&beta).iter().all(GaussianRational::is_zero) {
                    f.push(format!("{}@{}", which, name));
                    break;
                }
            }
        }
    }
    f
}

// ---- criterion 8 -------------------------------------------------------

fn vectorize(m: &ExactMatrix) -> ExactMatrix {
    ExactMatrix::from_vec(m.rows() * m.cols(), 1, m.entries())
}

fn criterion_8() -> Failures {
    let mut f = Vec::new();
    for d in 2..=6 {
        let rep = GammaRep::build(d).unwrap();
        let sig = rep.sig();
        let pairs: Vec<(usize, usize)> = (0..d).flat_map(|a| ((a + 1)..d).map(move |b| (a, b))).collect();
        let quarter = GaussianRational::frac(1, 4);
        let s: Vec<ExactMatrix> = pairs.iter().map(|&(a, b)| rep.gamma(a).commutator(rep.gamma(b)).scale(&quarter)).collect();
        let m: Vec<ExactMatrix> = pairs.iter().map(|&(a, b)| spin_generator_matrix(a, b, sig).unwrap()).collect();
        let basis = ExactMatrix::hstack(&s.iter().map(vectorize).collect::<Vec<_>>());
        for i in 0..pairs.len() {
            for j in 0..pairs.len() {
                let coeffs = basis.solve_unique(&vectorize(&s[i].commutator(&s[j]))).unwrap().col_vec(0);
                let rhs = coeffs.iter().zip(&m).fold(ExactMatrix::zeros(d, d), |acc, (c, x)| &acc + &x.scale(c));
                if m[i].commutator(&m[j]) != rhs {
                    f.push(format!("structure-constants@D={} {:?},{:?}", d, pairs[i], pairs[j]));
                }
            }
        }
    }
    for (name, frame) in frames() {
        let kit = FormKit::new(&frame).unwrap();
        if !kit.volume_identity_residual(1).unwrap().is_zero() {
            f.push(format!("volume-identity@{}", name));
            report(&format!("    volume identity at {}: holds with c = {:?} in eγ³ = c·iγ^5γ̲Vol_V", name, volume_coefficient(&kit).unwrap()));
        }
    }
    f
}

// Written to the raw handle so the lines appear even when output is captured.
fn report(line: &str) {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{}", line).unwrap();
    out.flush().unwrap();
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Failures); 8] = [
        ("classification tables and validators", criterion_1),
        ("gamma representations D = 2..11", criterion_2),
        ("conjugation D = 2..11", criterion_3),
        ("identity suite D = 2..10", criterion_4),
        ("flip relations and t_N", criterion_5),
        ("Fierz rearrangements and lemma", criterion_6),
        ("D = 4 form lemmata", criterion_7),
        ("cross-module coherence", criterion_8),
    ];
    assert_eq!(REGISTRY.len(), 26);
    report("");
    let mut mismatches = Vec::new();
    for (k, (name, run)) in criteria.iter().enumerate() {
        let k = k + 1;
        let t = Instant::now();
        let failures = run();
        let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
        report(&format!("criterion {} [{}]: {} ({:.1}s, tolerance 0)", k, name, verdict, t.elapsed().as_secs_f64()));
        for item in &failures {
            report(&format!("    failing: {}", item));
        }
        let mut expected: Vec<String> = EXPECTED.iter().find(|(c, _)| *c == k).map(|(_, v)| v.iter().map(|s| s.to_string()).collect()).unwrap_or_default();
        let mut got = failures.clone();
        got.sort();
        expected.sort();
        if got != expected {
            mismatches.push(format!("criterion {}: expected failures {:?}, got {:?}", k, expected, failures));
        }
    }
    assert!(mismatches.is_empty(), "unexpected outcomes:\n{}", mismatches.join("\n"));
}
