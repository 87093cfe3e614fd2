use spinorkit::conjugation::*;
use spinorkit::exactnum::{ExactMatrix, GaussianRational};
use spinorkit::gamma::GammaRep;
use spinorkit::superalgebra::{generic_majorana, GeneratorPool, SuperSpinor};

#[test]
fn intertwiner_matches_scherk_formula_and_table() {
    for d in 2..=11 {
        let rep = GammaRep::build(d).unwrap();
        for eta in [1, -1] {
            let res = charge_conj(&rep, eta);
            if admissible_etas(d).contains(&eta) {
                let data = res.unwrap_or_else(|e| panic!("D={} η={}: {}", d, eta, e));
                assert_eq!(data.epsilon, epsilon_formula(d - 1, eta).unwrap(), "D={} η={}", d, eta);
                assert!(in_table_cell(d, data.epsilon, eta), "D={} η={} ε={}", d, eta, data.epsilon);
                assert!(invariant_failures(&data, &rep).is_empty());
            } else {
                assert!(res.is_err(), "D={} η={}", d, eta);
                assert!(epsilon_formula(d - 1, eta).is_err());
            }
        }
    }
}

#[test]
fn phase_convention() {
    for d in 2..=9 {
        let rep = GammaRep::build(d).unwrap();
        for eta in admissible_etas(d) {
            let b = solve_b(&rep, eta).unwrap();
            let w = b.entries().into_iter().find(|x| !x.is_zero()).unwrap();
            assert!(w.is_real() && w.re > num_rational::BigRational::from_integer(0.into()));
        }
    }
}

#[test]
fn spin_invariance_of_c() {
    for d in 2..=8 {
        let rep = GammaRep::build(d).unwrap();
        for eta in admissible_etas(d) {
            let data = charge_conj(&rep, eta).unwrap();
            let binv = data.b.adjoint();
            for a in 0..d {
                for b in (a + 1)..d {
                    let gab = rep.gamma_anti(&[a, b]).unwrap();
                    assert_eq!(&gab.transpose() * &data.c, -&(&data.c * &gab));
                    assert_eq!(&(&data.b * &gab.conj()) * &binv, gab);
                }
            }
        }
    }
}

#[test]
fn phi_squares_to_epsilon() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for d in 2..=9 {
        let rep = GammaRep::build(d).unwrap();
        for eta in admissible_etas(d) {
            let data = charge_conj(&rep, eta).unwrap();
            let psi: Vec<GaussianRational> =
                (0..rep.size()).map(|_| GaussianRational::complex_int(rng.gen_range(-9..=9), rng.gen_range(-9..=9))).collect();
            let twice = phi(&data.b, &phi(&data.b, &psi));
            let expect: Vec<GaussianRational> = psi.iter().map(|x| x * &GaussianRational::int(data.epsilon)).collect();
            assert_eq!(twice, expect);
        }
    }
}

#[test]
fn t_signs_from_matrices() {
    for d in 2..=8 {
        let rep = GammaRep::build(d).unwrap();
        for eta in admissible_etas(d) {
            let data = charge_conj(&rep, eta).unwrap();
            for n in 0..=d {
                assert_eq!(t_from_matrices(&data, &rep, n).unwrap(), Some(t_general(data.epsilon, eta, n)), "D={} η={} N={}", d, eta, n);
            }
        }
    }
    let rep = GammaRep::build(4).unwrap();
    let data = charge_conj(&rep, -1).unwrap();
    for n in 0..=4 {
        assert_eq!(t_from_matrices(&data, &rep, n).unwrap(), Some(t_parameter(n)));
    }
    for n in 0..4 {
        assert_eq!(t_footnote(1, -1, n), Some(t_parameter(n)));
    }
}

#[test]
fn majorana_conditions() {
    let rep = GammaRep::build(4).unwrap();
    let data = charge_conj(&rep, -1).unwrap();
    let mut pool = GeneratorPool::new();
    let dirac = SuperSpinor::generic_dirac(&mut pool, "d", 1, 4).unwrap();
    assert!(!majorana_check(&dirac, &data, &rep).unwrap());
    for parity in [0, 1] {
        let psi = generic_majorana(&mut pool, "m", parity, &data, &rep).unwrap();
        assert!(majorana_check(&psi, &data, &rep).unwrap());
        for a in 0..4 {
            for b in (a + 1)..4 {
                let rotated = psi.apply(&rep.gamma_anti(&[a, b]).unwrap());
                assert!(majorana_check(&rotated, &data, &rep).unwrap());
            }
        }
    }
    // projector pattern ψ + Bψ*
    let star = SuperSpinor { components: dirac.star(), parity: 1 };
    let bstar = star.apply(&data.b);
    let sym = SuperSpinor::new(dirac.components.iter().zip(&bstar.components).map(|(x, y)| x + y).collect(), 1).unwrap();
    assert!(majorana_check(&sym, &data, &rep).unwrap());

    let two = GammaRep::build(2).unwrap();
    let d2 = charge_conj(&two, 1).unwrap();
    let real = SuperSpinor::generic_dirac(&mut pool, "r", 0, 2).unwrap();
    assert!(majorana_check(&real, &d2, &two).unwrap());
    assert_eq!(majorana_kind(d2.eta), MajoranaKind::PseudoMajorana);

    let q = charge_conj(&rep, 1).unwrap();
    assert!(majorana_check(&dirac, &q, &rep).is_err());
    assert!(generic_majorana(&mut pool, "q", 1, &q, &rep).is_err());
    let _ = ExactMatrix::identity(1);
}
