//! Fierz rearrangements for `D = 4` Majorana spinors with `C = B^tΓ_0`.

use super::registry::{ReadingResult, Tally};
use crate::conjugation::{charge_conj, ConjugationData};
use crate::error::{Error, Result};
use crate::exactnum::{ExactMatrix, GaussianRational};
use crate::gamma::{permutations, GammaRep};
use crate::superalgebra::{form_bilinear, generic_majorana, GeneratorPool, SuperElement, SuperSpinor};

fn need_four(rep: &GammaRep) -> Result<()> {
    if rep.dim() != 4 {
        return Err(Error::Inapplicable { id: "fierz".into(), dim: rep.dim() });
    }
    Ok(())
}

/// Lowered-index `(Cγ^a)_{αβ}` for every `a`.
pub fn lowered_gammas(rep: &GammaRep, conj: &ConjugationData) -> Vec<ExactMatrix> {
    (0..rep.dim()).map(|a| &conj.c * &rep.gamma_up(a)).collect()
}

/// `Σ_a (Cγ^a)_{αβ}(Cγ_a)_{ρδ}` symmetrized over `(β,ρ,δ)`, at every index
/// tuple.
pub fn fierz0(rep: &GammaRep) -> Result<ReadingResult> {
    need_four(rep)?;
    let conj = charge_conj(rep, -1)?;
    let up = lowered_gammas(rep, &conj);
    let down: Vec<ExactMatrix> = (0..4).map(|a| &conj.c * rep.gamma(a)).collect();
    let t = |al: usize, be: usize, rh: usize, de: usize| -> GaussianRational {
        (0..4).map(|a| &up[a][(al, be)] * &down[a][(rh, de)]).sum()
    };
    let perms = permutations(3);
    let mut tally = Tally::default();
    for al in 0..4 {
        for be in 0..4 {
            for rh in 0..4 {
                for de in 0..4 {
                    let idx = [be, rh, de];
                    let s: GaussianRational = perms.iter().map(|(p, _)| t(al, idx[p[0]], idx[p[1]], idx[p[2]])).sum();
                    tally.check(|| format!("α={} β={} ρ={} δ={}: sum = {}", al, be, rh, de, s), s.is_zero());
                }
            }
        }
    }
    Ok(tally.finish("displayed"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Rearr1,
    Rearr2,
}

fn pm(e: u8) -> i64 {
    if e % 2 == 0 { 1 } else { -1 }
}

struct Context {
    rep: GammaRep,
    conj: ConjugationData,
    pool: GeneratorPool,
}

impl Context {
    fn new(rep: &GammaRep) -> Result<Self> {
        need_four(rep)?;
        Ok(Context { rep: rep.clone(), conj: charge_conj(rep, -1)?, pool: GeneratorPool::with_frame(4) })
    }

    fn spinor(&mut self, label: &str, parity: u8) -> Result<SuperSpinor> {
        generic_majorana(&mut self.pool, label, parity, &self.conj, &self.rep)
    }

    fn bil(&self, x: &SuperSpinor, n: usize, y: &SuperSpinor) -> SuperElement {
        form_bilinear(x, n, y, &self.conj, &self.rep, &self.pool)
    }
}

/// Residual of one rearrangement for spinors `λ_1..λ_4`, with the right-hand
/// side multiplied by `overall`.
pub fn rearrangement_residual(rep: &GammaRep, variant: Variant, parities: [u8; 4], overall: i64) -> Result<SuperElement> {
    let mut cx = Context::new(rep)?;
    let l: Vec<SuperSpinor> =
        parities.iter().enumerate().map(|(i, &p)| cx.spinor(&format!("λ{}_", i + 1), p)).collect::<Result<_>>()?;
    let [_, p2, p3, p4] = parities;
    let s1 = GaussianRational::int(pm(p2 * p3));
    let s2 = GaussianRational::int(pm(p4 * (p2 + p3 + 1) + p3));
    let lhs = &cx.bil(&l[0], 3, &l[1]) * &cx.bil(&l[2], 1, &l[3]);
    let rhs = match variant {
        Variant::Rearr1 => &(&cx.bil(&l[0], 1, &l[2]) * &cx.bil(&l[1], 3, &l[3])).scale(&s1)
            + &(&cx.bil(&l[0], 1, &l[3]) * &cx.bil(&l[1], 3, &l[2])).scale(&s2),
        Variant::Rearr2 => -&(&(&cx.bil(&l[0], 3, &l[2]) * &cx.bil(&l[1], 1, &l[3])).scale(&s1)
            + &(&cx.bil(&l[0], 3, &l[3]) * &cx.bil(&l[1], 1, &l[2])).scale(&s2)),
    };
    Ok(&lhs - &rhs.scale(&GaussianRational::int(overall)))
}

/// All sixteen parity assignments. The first rearrangement is also read with
/// its right-hand side negated.
pub fn rearrangement_all(rep: &GammaRep, variant: Variant) -> Result<Vec<ReadingResult>> {
    let readings: &[(&str, i64)] = match variant {
        Variant::Rearr1 => &[("displayed", 1), ("right-hand side negated", -1)],
        Variant::Rearr2 => &[("displayed", 1)],
    };
    let mut out = Vec::new();
    for &(name, overall) in readings {
        let mut t = Tally::default();
        for bits in 0..16u8 {
            let ps = [bits & 1, bits >> 1 & 1, bits >> 2 & 1, bits >> 3 & 1];
            let r = rearrangement_residual(rep, variant, ps, overall)?;
            t.zero(|| format!("parities {:?}", ps), &r);
        }
        out.push(t.finish(name));
    }
    Ok(out)
}

/// The three products `λ̄γ³χχ̄γψ`, `χ̄γχλ̄γ³ψ`, `λ̄γχχ̄γ³ψ`.
pub fn lemma_products(rep: &GammaRep, lambda_parity: u8, chi_parity: u8, psi_parity: u8) -> Result<[SuperElement; 3]> {
    let mut cx = Context::new(rep)?;
    let lam = cx.spinor("λ", lambda_parity)?;
    let chi = cx.spinor("χ", chi_parity)?;
    let psi = cx.spinor("ψ", psi_parity)?;
    Ok([
        &cx.bil(&lam, 3, &chi) * &cx.bil(&chi, 1, &psi),
        &cx.bil(&chi, 1, &chi) * &cx.bil(&lam, 3, &psi),
        &cx.bil(&lam, 1, &chi) * &cx.bil(&chi, 3, &psi),
    ])
}

pub fn lemma_all(rep: &GammaRep) -> Result<Vec<ReadingResult>> {
    let mut t = Tally::default();
    for lp in [0u8, 1] {
        for (i, x) in lemma_products(rep, lp, 0, 1)?.iter().enumerate() {
            t.zero(|| format!("|λ|={} product {}", lp, i + 1), x);
        }
    }
    Ok(vec![t.finish("displayed")])
}
