//! Pointwise model of spinor-valued forms `Ω^{(k,l)} = Ω^k(M, ∧^l V)` in
//! `D = 4` and the rank statements about maps built from a coframe.
//!
//! `dx^μ` and `v_a` are modelled as eight mutually anticommuting generators:
//! bits `0..4` of a blade mask are `dx^0..dx^3`, bits `4..8` are `v_0..v_3`.
//! Spinor parity is dropped, which does not affect ranks.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::conjugation::subsets;
use crate::error::{Error, Result};
use crate::exactnum::{ExactMatrix, GaussianRational};
use crate::gamma::GammaRep;
use crate::identities::MatForm;

const GENERATORS: usize = 8;

fn dx_mask(set: &[usize]) -> u32 {
    set.iter().map(|&m| 1u32 << m).sum()
}

fn v_mask(set: &[usize]) -> u32 {
    set.iter().map(|&a| 1u32 << (4 + a)).sum()
}

/// Components `e^a_μ`, row `a`, column `μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coframe {
    e: ExactMatrix,
}

impl Coframe {
    pub fn new(e: ExactMatrix) -> Result<Self> {
        if e.rows() != 4 || e.cols() != 4 {
            return Err(Error::Shape(format!("coframe must be 4×4, got {}×{}", e.rows(), e.cols())));
        }
        if e.inverse().is_none() {
            return Err(Error::Singular("coframe is not invertible".into()));
        }
        Ok(Coframe { e })
    }

    pub fn identity() -> Self {
        Coframe { e: ExactMatrix::identity(4) }
    }

    /// Invertible coframe with integer entries in `-3..=3`, plus `4` on the
    /// diagonal half of the time.
    pub fn random(rng: &mut impl Rng) -> Self {
        loop {
            let data = (0..16)
                .map(|k| {
                    let x = rng.gen_range(-3i64..=3);
                    let bump = if k % 5 == 0 && rng.gen_bool(0.5) { 4 } else { 0 };
                    GaussianRational::int(x + bump)
                })
                .collect();
            if let Ok(c) = Coframe::new(ExactMatrix::from_vec(4, 4, data)) {
                return c;
            }
        }
    }

    pub fn seeded(seed: u64, count: usize) -> Vec<Coframe> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| Coframe::random(&mut rng)).collect()
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.e
    }

    /// Inverse components `e^μ_a`, row `μ`, column `a`.
    pub fn inverse(&self) -> ExactMatrix {
        self.e.inverse().expect("coframe is invertible")
    }

    /// `e^a_μ dx^μ v_a ⊗ Id_n`.
    pub fn form(&self, n: usize) -> MatForm {
        let mut x = MatForm::zero(n, GENERATORS);
        for a in 0..4 {
            for mu in 0..4 {
                let c = &self.e[(a, mu)];
                if !c.is_zero() {
                    x.add_term(dx_mask(&[mu]) | v_mask(&[a]), ExactMatrix::scalar(n, c.clone()));
                }
            }
        }
        x
    }
}

/// `g_{μν} = e^a_μ e^b_ν η_{ab}`.
pub fn metric_from_coframe(e: &Coframe, eta: &ExactMatrix) -> ExactMatrix {
    &(&e.e.transpose() * eta) * &e.e
}

/// Fibre of `Ω^{(p,l)}`, optionally tensored with the four-dimensional spinor space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FiberSpace {
    pub p: usize,
    pub l: usize,
    pub spinor: bool,
}

impl FiberSpace {
    pub fn new(p: usize, l: usize, spinor: bool) -> Result<Self> {
        if p > 4 || l > 4 {
            return Err(Error::Dimension(format!("degrees ({}, {}) exceed 4", p, l)));
        }
        Ok(FiberSpace { p, l, spinor })
    }

    pub fn spinor_size(&self) -> usize {
        if self.spinor { 4 } else { 1 }
    }

    /// Basis as `(blade mask, spinor index)`, forms outer, spinor inner.
    pub fn basis(&self) -> Vec<(u32, usize)> {
        let mut out = Vec::new();
        for ps in subsets(4, self.p) {
            for ls in subsets(4, self.l) {
                for s in 0..self.spinor_size() {
                    out.push((dx_mask(&ps) | v_mask(&ls), s));
                }
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        binomial(4, self.p) * binomial(4, self.l) * self.spinor_size()
    }

    fn position(&self, mask: u32, s: usize) -> Option<usize> {
        self.basis().iter().position(|&(m, t)| m == mask && t == s)
    }

    /// `Σ_k x_k b_k` as a form with column-vector coefficients, one term per blade.
    pub fn to_terms(&self, x: &[GaussianRational]) -> Vec<(u32, Vec<GaussianRational>)> {
        let n = self.spinor_size();
        let mut out: Vec<(u32, Vec<GaussianRational>)> = Vec::new();
        for (k, &(mask, s)) in self.basis().iter().enumerate() {
            match out.last_mut() {
                Some((m, v)) if *m == mask => v[s] = x[k].clone(),
                _ => {
                    let mut v = vec![GaussianRational::zero(); n];
                    v[s] = x[k].clone();
                    out.push((mask, v));
                }
            }
        }
        out
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Linear map between fibres, as a matrix in the enumerated bases.
#[derive(Clone, Debug)]
pub struct FiberMap {
    pub domain: FiberSpace,
    pub codomain: FiberSpace,
    pub matrix: ExactMatrix,
}

impl FiberMap {
    /// Left multiplication by a matrix-valued form.
    pub fn left_mult(x: &MatForm, domain: FiberSpace, codomain: FiberSpace) -> Result<FiberMap> {
        if x.size() != domain.spinor_size() || x.size() != codomain.spinor_size() {
            return Err(Error::Shape("form coefficients do not match the spinor factor".into()));
        }
        let mut m = ExactMatrix::zeros(codomain.dim(), domain.dim());
        for (col, &(mask, s)) in domain.basis().iter().enumerate() {
            for (&k, coeff) in x.terms() {
                if k & mask != 0 {
                    continue;
                }
                let sign = crate::clifford::reorder_sign(k, mask);
                for t in 0..codomain.spinor_size() {
                    let c = &coeff[(t, s)];
                    if c.is_zero() {
                        continue;
                    }
                    let row = codomain.position(k | mask, t).ok_or_else(|| {
                        Error::Dimension(format!("image blade {:#010b} lies outside Ω^({},{})", k | mask, codomain.p, codomain.l))
                    })?;
                    m[(row, col)] += &c.scale(&crate::exactnum::rat(sign));
                }
            }
        }
        Ok(FiberMap { domain, codomain, matrix: m })
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn kernel(&self) -> Vec<ExactMatrix> {
        self.matrix.null_space()
    }

    pub fn apply(&self, x: &[GaussianRational]) -> Vec<GaussianRational> {
        (&self.matrix * &ExactMatrix::column(x.to_vec())).col_vec(0)
    }

    pub fn compose(&self, first: &FiberMap) -> Result<FiberMap> {
        if first.codomain != self.domain {
            return Err(Error::Shape("maps do not compose".into()));
        }
        Ok(FiberMap { domain: first.domain, codomain: self.codomain, matrix: &self.matrix * &first.matrix })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapVariant {
    /// `α ↦ eα` on `Ω^{(i,j)}`.
    We { i: usize, j: usize },
    /// `ψ ↦ (1/3!)eγ³ψ`, `Ω^{(1,0)} → Ω^{(2,4)}`.
    Theta10,
    /// `ψ ↦ (1/3!)eγ³γ̲ψ`, `Ω^{(1,0)} → Ω^{(3,4)}`.
    ThetaGamma10,
    /// `ψ ↦ (1/3!)eγ̲γ³ψ`, `Ω^{(1,0)} → Ω^{(3,4)}`.
    ThetaGamma10Conj,
    /// `β ↦ γ³β`, `Ω^{(3,1)} → Ω^{(3,4)}`.
    Gamma3_31,
    /// `α ↦ ieγ̲α`, `Ω^{(1,0)} → Ω^{(3,1)}`.
    EGamma10,
    /// `β ↦ γ̲γ³β`, `Ω^{(2,1)} → Ω^{(3,4)}`.
    GammaGamma3_21,
}

/// Building blocks of the maps at one coframe.
pub struct FormKit {
    pub rep: GammaRep,
    pub e: MatForm,
    pub gamma: MatForm,
    pub gamma3: MatForm,
    /// `γ̲ = [e,γ] = e^a_μ γ_a dx^μ`.
    pub gamma_under: MatForm,
    pub vol_v: MatForm,
}

impl FormKit {
    pub fn new(coframe: &Coframe) -> Result<Self> {
        let rep = GammaRep::build(4)?;
        let mut gamma = MatForm::zero(4, GENERATORS);
        for a in 0..4 {
            gamma.add_term(v_mask(&[a]), rep.gamma_up(a));
        }
        let gamma3 = gamma.mul(&gamma).mul(&gamma);
        let mut gamma_under = MatForm::zero(4, GENERATORS);
        for mu in 0..4 {
            let m = (0..4).fold(ExactMatrix::zeros(4, 4), |acc, a| &acc + &rep.gamma(a).scale(&coframe.e[(a, mu)]));
            gamma_under.add_term(dx_mask(&[mu]), m);
        }
        let vol_v = MatForm::term(ExactMatrix::identity(4), v_mask(&[0, 1, 2, 3]), GENERATORS);
        Ok(FormKit { e: coframe.form(4), rep, gamma, gamma3, gamma_under, vol_v })
    }

    fn sixth(&self, x: MatForm) -> MatForm {
        x.scale(&GaussianRational::frac(1, 6))
    }

    pub fn build_map(&self, variant: MapVariant) -> Result<FiberMap> {
        let sp = |p, l| FiberSpace::new(p, l, true);
        match variant {
            MapVariant::We { i, j } => {
                if i >= 4 || j >= 4 {
                    return Err(Error::Dimension(format!("W_e({},{}) leaves the degree range", i, j)));
                }
                FiberMap::left_mult(&self.e, sp(i, j)?, sp(i + 1, j + 1)?)
            }
            MapVariant::Theta10 => FiberMap::left_mult(&self.sixth(self.e.mul(&self.gamma3)), sp(1, 0)?, sp(2, 4)?),
            MapVariant::ThetaGamma10 => {
                FiberMap::left_mult(&self.sixth(self.e.mul(&self.gamma3).mul(&self.gamma_under)), sp(1, 0)?, sp(3, 4)?)
            }
            MapVariant::ThetaGamma10Conj => {
                FiberMap::left_mult(&self.sixth(self.e.mul(&self.gamma_under).mul(&self.gamma3)), sp(1, 0)?, sp(3, 4)?)
            }
            MapVariant::Gamma3_31 => FiberMap::left_mult(&self.gamma3, sp(3, 1)?, sp(3, 4)?),
            MapVariant::EGamma10 => {
                FiberMap::left_mult(&self.e.mul(&self.gamma_under).scale(&GaussianRational::i()), sp(1, 0)?, sp(3, 1)?)
            }
            MapVariant::GammaGamma3_21 => FiberMap::left_mult(&self.gamma_under.mul(&self.gamma3), sp(2, 1)?, sp(3, 4)?),
        }
    }

    /// `eγ³ − c·iγ^5γ̲Vol_V` for `c = ±1`.
    pub fn volume_identity_residual(&self, c: i64) -> Result<MatForm> {
        let g5 = self.rep.gamma5()?.scale(&GaussianRational::complex_int(0, c));
        let rhs = self.gamma_under.mul(&self.vol_v).left_matrix(&g5);
        Ok(self.e.mul(&self.gamma3).sub(&rhs))
    }
}

/// Solves `θ = A α + β` with `B β = 0`, given that `B A` is invertible.
fn split(theta: &[GaussianRational], a: &FiberMap, b: &FiberMap) -> Result<(Vec<GaussianRational>, Vec<GaussianRational>)> {
    let ba = b.compose(a)?;
    let rhs = ExactMatrix::column(b.apply(theta));
    let alpha = ba.matrix.solve_unique(&rhs)?.col_vec(0);
    let image = a.apply(&alpha);
    let beta: Vec<GaussianRational> = theta.iter().zip(&image).map(|(t, x)| t - x).collect();
    Ok((alpha, beta))
}

/// `θ = ieγ̲α + β` with `γ³β = 0`, for `θ` in the `Ω^{(3,1)}` fibre.
pub fn split_31(theta: &[GaussianRational], kit: &FormKit) -> Result<(Vec<GaussianRational>, Vec<GaussianRational>)> {
    split(theta, &kit.build_map(MapVariant::EGamma10)?, &kit.build_map(MapVariant::Gamma3_31)?)
}

/// `θ = eα + β` with `γ̲γ³β = 0`, for `θ` in the `Ω^{(2,1)}` fibre.
pub fn split_21(theta: &[GaussianRational], kit: &FormKit) -> Result<(Vec<GaussianRational>, Vec<GaussianRational>)> {
    split(theta, &kit.build_map(MapVariant::We { i: 1, j: 0 })?, &kit.build_map(MapVariant::GammaGamma3_21)?)
}

/// Rank of the column span of `[A | kernel basis]`.
fn joint_rank(a: &FiberMap, kernel: &[ExactMatrix]) -> usize {
    let mut cols = vec![a.matrix.clone()];
    cols.extend(kernel.iter().cloned());
    ExactMatrix::hstack(&cols).rank()
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub id: &'static str,
    pub quantity: &'static str,
    /// Form-counting value, before the spinor factor of 4.
    pub form_count: usize,
    pub expected: i64,
    pub computed: i64,
    pub pass: bool,
}

fn row(id: &'static str, quantity: &'static str, form_count: usize, expected: usize, computed: usize) -> LemmaReport {
    let (expected, computed) = (expected as i64, computed as i64);
    LemmaReport { id, quantity, form_count, expected, computed, pass: expected == computed }
}

/// The integer `c` in `-12..=12` with `eγ³ = c·iγ^5γ̲Vol_V`, if any.
pub fn volume_coefficient(kit: &FormKit) -> Result<Option<i64>> {
    for c in -12..=12 {
        if kit.volume_identity_residual(c)?.is_zero() {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Every rank/kernel statement at one coframe.
pub fn lemma_reports(coframe: &Coframe) -> Result<Vec<LemmaReport>> {
    let kit = FormKit::new(coframe)?;
    let t10 = kit.build_map(MapVariant::Theta10)?;
    let tg = kit.build_map(MapVariant::ThetaGamma10)?;
    let tgc = kit.build_map(MapVariant::ThetaGamma10Conj)?;
    let g31 = kit.build_map(MapVariant::Gamma3_31)?;
    let eg = kit.build_map(MapVariant::EGamma10)?;
    let w10 = kit.build_map(MapVariant::We { i: 1, j: 0 })?;
    let gg21 = kit.build_map(MapVariant::GammaGamma3_21)?;
    let k31 = g31.kernel();
    let k21 = gg21.kernel();
    let vol = volume_coefficient(&kit)?;
    Ok(vec![
        row("injectivity-egamma3", "rank Θ^(1,0)", 4, 16, t10.rank()),
        row("iso-10-34", "rank Θ_γ^(1,0)", 4, 16, tg.rank()),
        row("iso-10-34-conjugate", "rank of ψ ↦ (1/3!)eγ̲γ³ψ", 4, 16, tgc.rank()),
        row("splitting-31", "rank (eγ̲)_(1,0)", 4, 16, eg.rank()),
        row("splitting-31", "dim ker (γ³)_(3,1)", 12, 48, k31.len()),
        row("splitting-31", "dim Im(eγ̲) + ker(γ³)", 16, 64, joint_rank(&eg, &k31)),
        row("splitting-21", "rank W_e^(1,0)", 4, 16, w10.rank()),
        row("splitting-21", "dim ker (γ̲γ³)_(2,1)", 20, 80, k21.len()),
        row("splitting-21", "dim Im(W_e) + ker(γ̲γ³)", 24, 96, joint_rank(&w10, &k21)),
        LemmaReport {
            id: "volume-identity",
            quantity: "c in eγ³ = c·iγ^5γ̲Vol_V (0 if none)",
            form_count: 1,
            expected: 1,
            computed: vol.unwrap_or(0),
            pass: vol == Some(1),
        },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fiber_dimensions() {
        assert_eq!(FiberSpace::new(1, 0, true).unwrap().dim(), 16);
        assert_eq!(FiberSpace::new(3, 1, true).unwrap().dim(), 64);
        assert_eq!(FiberSpace::new(2, 1, true).unwrap().dim(), 96);
        assert_eq!(FiberSpace::new(3, 4, true).unwrap().dim(), 16);
        assert_eq!(FiberSpace::new(2, 4, false).unwrap().dim(), 6);
    }

    #[test]
    fn metric_examples() {
        let eta = ExactMatrix::from_rows(
            (0..4).map(|i| (0..4).map(|j| GaussianRational::int(if i != j { 0 } else if i == 0 { -1 } else { 1 })).collect()).collect(),
        );
        assert_eq!(metric_from_coframe(&Coframe::identity(), &eta), eta);
        let mut e = ExactMatrix::identity(4);
        e[(0, 0)] = GaussianRational::int(2);
        let g = metric_from_coframe(&Coframe::new(e).unwrap(), &eta);
        assert_eq!(g[(0, 0)], GaussianRational::int(-4));
        assert_eq!(g[(1, 1)], GaussianRational::one());
    }

    #[test]
    fn singular_coframe_rejected() {
        assert!(Coframe::new(ExactMatrix::zeros(4, 4)).is_err());
    }
}
