//! Lorentzian gamma representations built by induction on the dimension.
//!
//! `Γ_0² = +1`, `Γ_i² = −1`, `Γ_0` hermitian, `Γ_i` anti-hermitian. The base
//! is `D = 2`; `D = 4` is the Weyl basis; odd `D` adjoins `αΓ_*`, even `D ≥ 6`
//! doubles `D − 2`.

use serde::Serialize;

use crate::clifford::Signature;
use crate::error::{Error, Result};
use crate::exactnum::{intertwiners, ExactMatrix, GaussianRational};

pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaRep {
    dim: usize,
    k: usize,
    gammas: Vec<ExactMatrix>,
}

#[cfg(test)]
fn g(re: i64, im: i64) -> GaussianRational {
    GaussianRational::complex_int(re, im)
}

/// `σ_0 … σ_3`, with `σ_2 = [[0, i], [−i, 0]]`.
pub fn pauli(a: usize) -> ExactMatrix {
    match a {
        0 => ExactMatrix::identity(2),
        1 => ExactMatrix::from_int_pairs(&[&[(0, 0), (1, 0)], &[(1, 0), (0, 0)]]),
        2 => ExactMatrix::from_int_pairs(&[&[(0, 0), (0, 1)], &[(0, -1), (0, 0)]]),
        3 => ExactMatrix::from_int_pairs(&[&[(1, 0), (0, 0)], &[(0, 0), (-1, 0)]]),
        _ => panic!("Pauli index out of range"),
    }
}

/// `D = 2`: `Γ_0 = σ_1`, `Γ_1 = [[0, 1], [−1, 0]]`.
pub fn base_two() -> Vec<ExactMatrix> {
    vec![pauli(1), ExactMatrix::from_int_pairs(&[&[(0, 0), (1, 0)], &[(-1, 0), (0, 0)]])]
}

/// `D = 4` Weyl basis `Γ_a = [[0, σ_a], [σ̄_a, 0]]`, `σ̄_0 = σ_0`, `σ̄_i = −σ_i`.
pub fn weyl_four() -> Vec<ExactMatrix> {
    let z = ExactMatrix::zeros(2, 2);
    (0..4)
        .map(|a| {
            let s = pauli(a);
            let sbar = if a == 0 { s.clone() } else { -&s };
            ExactMatrix::block2(&z, &s, &sbar, &z)
        })
        .collect()
}

fn product(ms: &[ExactMatrix]) -> ExactMatrix {
    let n = ms[0].rows();
    ms.iter().fold(ExactMatrix::identity(n), |acc, m| &acc * m)
}

/// Phase `α` of the odd step, predicted from the parity of `k`.
pub fn odd_step_alpha_formula(k: usize) -> GaussianRational {
    if k % 2 == 0 { GaussianRational::one() } else { GaussianRational::i() }
}

/// Adjoins `Γ_{d+1} = αΓ_0⋯Γ_d` to an even-dimensional set. `α` is chosen from
/// the computed `Γ_*²` and then checked against [`odd_step_alpha_formula`].
pub fn odd_step(gammas: &[ExactMatrix]) -> Result<Vec<ExactMatrix>> {
    let d = gammas.len();
    if d % 2 != 0 {
        return Err(Error::Dimension(format!("odd step needs even D, got {}", d)));
    }
    let star = product(gammas);
    let sq = (&star * &star).as_scalar().ok_or_else(|| Error::Dimension("Γ_*² is not scalar".into()))?;
    let alpha = if sq.is_one() {
        GaussianRational::i()
    } else if sq == GaussianRational::int(-1) {
        GaussianRational::one()
    } else {
        return Err(Error::Dimension(format!("Γ_*² = {}", sq)));
    };
    if alpha != odd_step_alpha_formula(d / 2) {
        return Err(Error::Dimension(format!("α mismatch at D = {}", d)));
    }
    let mut out = gammas.to_vec();
    out.push(star.scale(&alpha));
    Ok(out)
}

/// Doubles an even-dimensional set to `D + 2`:
/// `[[0, Γ_a], [Γ_a, 0]]`, `[[0, 1], [−1, 0]]`, `diag(i, −i)`.
pub fn even_step(gammas: &[ExactMatrix]) -> Result<Vec<ExactMatrix>> {
    let d = gammas.len();
    if d % 2 != 0 {
        return Err(Error::Dimension(format!("even step needs even D, got {}", d)));
    }
    let n = gammas[0].rows();
    let z = ExactMatrix::zeros(n, n);
    let id = ExactMatrix::identity(n);
    let mut out: Vec<ExactMatrix> = gammas.iter().map(|m| ExactMatrix::block2(&z, m, m, &z)).collect();
    out.push(ExactMatrix::block2(&z, &id, &(-&id), &z));
    let i = ExactMatrix::scalar(n, GaussianRational::i());
    out.push(ExactMatrix::block2(&i, &z, &z, &(-&i)));
    Ok(out)
}

/// The last generator as printed in the even-step display, `diag(i, i)`;
/// kept for the check that it fails to anticommute.
pub fn even_step_printed_last(n: usize) -> ExactMatrix {
    ExactMatrix::scalar(2 * n, GaussianRational::i())
}

impl GammaRep {
    pub fn build(dim: usize) -> Result<GammaRep> {
        if !(MIN_DIM..=MAX_DIM).contains(&dim) {
            return Err(Error::Dimension(format!("D = {} outside {}..={}", dim, MIN_DIM, MAX_DIM)));
        }
        let gammas = match dim {
            2 => base_two(),
            3 => odd_step(&base_two())?,
            4 => weyl_four(),
            d if d % 2 == 1 => odd_step(&GammaRep::build(d - 1)?.gammas)?,
            d => even_step(&GammaRep::build(d - 2)?.gammas)?,
        };
        Self::from_matrices(gammas)
    }

    pub fn from_matrices(gammas: Vec<ExactMatrix>) -> Result<GammaRep> {
        let dim = gammas.len();
        let n = gammas.first().map_or(0, |m| m.rows());
        if n == 0 || !n.is_power_of_two() || gammas.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::Shape("gamma matrices must be square of equal power-of-two size".into()));
        }
        Ok(GammaRep { dim, k: n.trailing_zeros() as usize, gammas })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Spinor dimension `2^k`.
    pub fn size(&self) -> usize {
        1 << self.k
    }

    pub fn sig(&self) -> Signature {
        Signature::lorentzian(self.dim).expect("dimension within range")
    }

    pub fn eta(&self, a: usize) -> i64 {
        if a == 0 { -1 } else { 1 }
    }

    pub fn eta_ab(&self, a: usize, b: usize) -> i64 {
        if a == b { self.eta(a) } else { 0 }
    }

    /// `Γ_a`.
    pub fn gamma(&self, a: usize) -> &ExactMatrix {
        &self.gammas[a]
    }

    /// `Γ^a = η^{ab}Γ_b`.
    pub fn gamma_up(&self, a: usize) -> ExactMatrix {
        if self.eta(a) < 0 { -&self.gammas[a] } else { self.gammas[a].clone() }
    }

    pub fn gammas(&self) -> &[ExactMatrix] {
        &self.gammas
    }

    pub fn identity(&self) -> ExactMatrix {
        ExactMatrix::identity(self.size())
    }

    fn check_indices(&self, idx: &[usize]) -> Result<()> {
        if let Some(a) = idx.iter().find(|&&a| a >= self.dim) {
            return Err(Error::Index(format!("index {} out of range for D = {}", a, self.dim)));
        }
        Ok(())
    }

    /// `Γ_{a_1⋯a_n} = Γ_{[a_1}⋯Γ_{a_n]}` with weight one. Distinct basis
    /// gammas anticommute, so the antisymmetrized sum collapses to the product.
    pub fn gamma_anti(&self, idx: &[usize]) -> Result<ExactMatrix> {
        self.check_indices(idx)?;
        if has_repeat(idx) {
            return Ok(ExactMatrix::zeros(self.size(), self.size()));
        }
        Ok(idx.iter().fold(self.identity(), |acc, &a| &acc * &self.gammas[a]))
    }

    /// `Γ^{a_1⋯a_n}`.
    pub fn gamma_anti_up(&self, idx: &[usize]) -> Result<ExactMatrix> {
        let m = self.gamma_anti(idx)?;
        let flips = idx.iter().filter(|&&a| self.eta(a) < 0).count();
        Ok(if flips % 2 == 1 { -&m } else { m })
    }

    /// Antisymmetrization by the explicit `(1/n!) Σ sgn(π)` sum; an oracle for
    /// [`GammaRep::gamma_anti`] at small `n`.
    pub fn gamma_anti_by_permutations(&self, idx: &[usize]) -> Result<ExactMatrix> {
        self.check_indices(idx)?;
        let n = idx.len();
        let mut acc = ExactMatrix::zeros(self.size(), self.size());
        let mut count = 0i64;
        for (perm, sign) in permutations(n) {
            let m = perm.iter().fold(self.identity(), |a, &p| &a * &self.gammas[idx[p]]);
            acc = if sign > 0 { &acc + &m } else { &acc - &m };
            count += 1;
        }
        Ok(acc.scale(&GaussianRational::frac(1, count)))
    }

    /// `γ^5 = iγ^0γ^1γ^2γ^3` (upper indices) in `D = 4`.
    pub fn gamma5(&self) -> Result<ExactMatrix> {
        if self.dim != 4 {
            return Err(Error::Dimension(format!("γ^5 needs D = 4, got {}", self.dim)));
        }
        let p = product(&(0..4).map(|a| self.gamma_up(a)).collect::<Vec<_>>());
        Ok(p.scale(&GaussianRational::i()))
    }

    /// `Ā = Γ_0^{-1} A† Γ_0`.
    pub fn dirac_conj(&self, a: &ExactMatrix) -> Result<ExactMatrix> {
        if a.rows() != self.size() || a.cols() != self.size() {
            return Err(Error::Shape(format!("expected {}x{} operator", self.size(), self.size())));
        }
        let g0 = &self.gammas[0];
        let inv = g0.inverse().ok_or_else(|| Error::NotInvertible("Γ_0".into()))?;
        Ok(&(&inv * &a.adjoint()) * g0)
    }

    /// Dirac pairing `ψ_1† Γ_0 ψ_2`.
    pub fn dirac_pairing(&self, psi1: &[GaussianRational], psi2: &[GaussianRational]) -> GaussianRational {
        let a = ExactMatrix::column(psi1.to_vec()).adjoint();
        let b = ExactMatrix::column(psi2.to_vec());
        (&(&a * &self.gammas[0]) * &b)[(0, 0)].clone()
    }

    /// Dimension of `{X : XΓ_a = Γ_a X ∀a}`, from the exact kernel of the
    /// stacked commutator system.
    pub fn commutant_dim(&self) -> usize {
        commutant_dim(&self.gammas)
    }

    /// `Γ_a Γ_b + Γ_b Γ_a = −2η_ab·1` for all pairs.
    pub fn clifford_relations_hold(&self) -> bool {
        let n = self.size();
        (0..self.dim).all(|a| {
            (a..self.dim).all(|b| {
                let ac = self.gammas[a].anticommutator(&self.gammas[b]);
                ac == ExactMatrix::scalar(n, GaussianRational::int(-2 * self.eta_ab(a, b)))
            })
        })
    }

    /// `Γ_0` hermitian, `Γ_i` anti-hermitian.
    pub fn hermiticity_holds(&self) -> bool {
        self.gammas.iter().enumerate().all(|(a, m)| {
            let adj = m.adjoint();
            if a == 0 { adj == *m } else { adj == -m }
        })
    }

    pub fn unitarity_holds(&self) -> bool {
        self.gammas.iter().all(|m| (m * &m.adjoint()).is_identity())
    }
}

/// Commutant dimension of a set of square matrices of equal size.
pub fn commutant_dim(ms: &[ExactMatrix]) -> usize {
    intertwiners(ms, ms).len()
}

fn has_repeat(idx: &[usize]) -> bool {
    let mut seen = 0u64;
    for &a in idx {
        if seen & (1 << a) != 0 {
            return true;
        }
        seen |= 1 << a;
    }
    false
}

/// All permutations of `0..n` with their signs.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, n: usize, out: &mut Vec<(Vec<usize>, i64)>) {
        if cur.len() == n {
            let mut inv = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if cur[i] > cur[j] {
                        inv += 1;
                    }
                }
            }
            out.push((cur.clone(), if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(cur, used, n, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], n, &mut out);
    out
}

/// JSON shape of an emitted representation.
#[derive(Serialize)]
pub struct GammaJson<'a> {
    pub dim: usize,
    pub k: usize,
    pub eta: Vec<i64>,
    pub matrices: &'a [ExactMatrix],
}

impl GammaRep {
    pub fn to_json(&self) -> GammaJson<'_> {
        GammaJson { dim: self.dim, k: self.k, eta: (0..self.dim).map(|a| self.eta(a)).collect(), matrices: &self.gammas }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_dimensional_base() {
        let r = GammaRep::build(2).unwrap();
        assert_eq!(r.gamma(0), &pauli(1));
        assert_eq!(r.gamma(1), &ExactMatrix::from_int_pairs(&[&[(0, 0), (1, 0)], &[(-1, 0), (0, 0)]]));
        assert!(r.clifford_relations_hold());
    }

    #[test]
    fn weyl_basis_blocks() {
        let r = GammaRep::build(4).unwrap();
        let g2 = r.gamma(2);
        assert_eq!(g2[(0, 3)], g(0, 1));
        assert_eq!(g2[(1, 2)], g(0, -1));
        assert_eq!(g2[(2, 1)], g(0, -1));
        assert_eq!(g2[(3, 0)], g(0, 1));
        assert!(r.clifford_relations_hold() && r.hermiticity_holds() && r.unitarity_holds());
    }

    #[test]
    fn five_dimensional_step() {
        let r = GammaRep::build(5).unwrap();
        let four = GammaRep::build(4).unwrap();
        let star = product(four.gammas());
        assert_eq!(r.gamma(4), &star);
        assert_eq!(&(r.gamma(4) * r.gamma(4)), &ExactMatrix::scalar(4, g(-1, 0)));
    }

    #[test]
    fn even_step_from_two_is_not_the_weyl_basis() {
        let doubled = even_step(&base_two()).unwrap();
        let rep = GammaRep::from_matrices(doubled.clone()).unwrap();
        assert!(rep.clifford_relations_hold());
        assert_ne!(doubled, weyl_four());
    }

    #[test]
    fn printed_last_generator_commutes() {
        let base = weyl_four();
        let bad = even_step_printed_last(4);
        let doubled = even_step(&base).unwrap();
        assert!(bad.commutator(&doubled[0]).is_zero());
        assert!(!bad.anticommutator(&doubled[0]).is_zero());
        assert!(doubled[5].anticommutator(&doubled[0]).is_zero());
    }

    #[test]
    fn antisymmetrized_products() {
        let r = GammaRep::build(4).unwrap();
        let ab = r.gamma_anti(&[1, 2]).unwrap();
        let half = r.gamma(1).commutator(r.gamma(2)).scale(&GaussianRational::frac(1, 2));
        assert_eq!(ab, half);
        assert!(r.gamma_anti(&[3, 3]).unwrap().is_zero());
        assert_eq!(r.gamma_anti(&[0, 1, 2, 3]).unwrap(), product(r.gammas()));
        for idx in [vec![2, 0, 1], vec![3, 1], vec![0, 2, 3, 1]] {
            assert_eq!(r.gamma_anti(&idx).unwrap(), r.gamma_anti_by_permutations(&idx).unwrap());
        }
    }

    #[test]
    fn gamma_five_properties() {
        let r = GammaRep::build(4).unwrap();
        let g5 = r.gamma5().unwrap();
        assert!((&g5 * &g5).is_identity());
        for a in 0..4 {
            assert!(g5.anticommutator(r.gamma(a)).is_zero());
        }
        assert_eq!(g5.adjoint(), g5);
        assert!(g5.trace().is_zero());
        assert!(GammaRep::build(5).unwrap().gamma5().is_err());
    }

    #[test]
    fn dirac_conjugation() {
        let r = GammaRep::build(4).unwrap();
        for a in 0..4 {
            assert_eq!(&r.dirac_conj(r.gamma(a)).unwrap(), r.gamma(a));
            for b in 0..4 {
                if a != b {
                    let m = r.gamma_anti(&[a, b]).unwrap();
                    assert_eq!(r.dirac_conj(&m).unwrap(), -&m);
                }
            }
        }
        assert!(r.dirac_conj(&r.identity()).unwrap().is_identity());
        assert!(r.dirac_conj(&ExactMatrix::identity(2)).is_err());
    }

    #[test]
    fn irreducible_small_dims() {
        for d in [2, 4, 5] {
            assert_eq!(GammaRep::build(d).unwrap().commutant_dim(), 1, "D = {}", d);
        }
    }

    #[test]
    fn out_of_range() {
        assert!(GammaRep::build(1).is_err());
        assert!(GammaRep::build(13).is_err());
    }
}
