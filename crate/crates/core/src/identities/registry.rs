//! Registry of gamma-matrix, bracket and spinor identities, each verified
//! exactly at a concrete dimension.
//!
//! An identity may carry several readings (sign or normalization variants).
//! The first reading is the displayed statement; the report records which
//! readings hold.

use serde::Serialize;

use super::fierz;
use super::matform::MatForm;
use crate::conjugation::{charge_conj, subsets, t_parameter};
use crate::error::{Error, Result};
use crate::exactnum::{ExactMatrix, GaussianRational};
use crate::gamma::GammaRep;
use crate::superalgebra::{form_bilinear, generic_majorana, gamma_form_power, GeneratorPool, SuperElement, SuperMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    /// Any dimension with a gamma representation.
    Generic,
    /// Only `D = 4`.
    FourOnly,
    /// Dimensions with Majorana spinors (`ε = 1`, `η = −1`) whose two generic
    /// spinors fit the odd-generator pool.
    Majorana,
    /// Even dimensions.
    Even,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct IdentityInfo {
    pub id: &'static str,
    pub statement: &'static str,
    pub scope: Scope,
}

pub const REGISTRY: &[IdentityInfo] = &[
    IdentityInfo { id: "gamma2", statement: "Γ^aΓ_a = −D", scope: Scope::Generic },
    IdentityInfo { id: "gamma3", statement: "Γ^aΓ^bΓ_a = (D−2)Γ^b", scope: Scope::Generic },
    IdentityInfo { id: "gamma4", statement: "Γ^aΓ^bΓ^cΓ_a = (4−D)Γ^bΓ^c + 4η^{bc}", scope: Scope::Generic },
    IdentityInfo {
        id: "gamma5",
        statement: "Γ^aΓ^bΓ^cΓ^dΓ_a = (D−6)Γ^bΓ^cΓ^d − 4η^{cd}Γ^b − 4η^{bc}Γ^d + 4η^{bd}Γ^c",
        scope: Scope::Generic,
    },
    IdentityInfo {
        id: "easy-shuffle",
        statement: "Γ^{a_1⋯a_r} = ½(Γ^{a_1}Γ^{a_2⋯a_r} − (−1)^rΓ^{a_2⋯a_r}Γ^{a_1})",
        scope: Scope::Generic,
    },
    IdentityInfo { id: "anti-gamma-r", statement: "Γ^aΓ^{a_1⋯a_r}Γ_a = (−1)^{r+1}(D−2r)Γ^{a_1⋯a_r}", scope: Scope::Generic },
    IdentityInfo {
        id: "contraction-s",
        statement: "Γ^{a_1⋯a_r b_1⋯b_s}Γ_{b_1⋯b_s} = (−1)^r (D−r)!/(D−r−s)! Γ^{a_1⋯a_r}",
        scope: Scope::Generic,
    },
    IdentityInfo { id: "d4-gamma5", statement: "γ^aγ^bγ^cγ^dγ_a = 2γ^dγ^cγ^b", scope: Scope::FourOnly },
    IdentityInfo {
        id: "d4-gamma3",
        statement: "γ^aγ^bγ^c = −η^{ab}γ^c − η^{bc}γ^a + η^{ac}γ^b + iε^{dabc}γ_dγ^5",
        scope: Scope::FourOnly,
    },
    IdentityInfo { id: "d4-gamma5-2", statement: "γ^5γ^{cd} = −(i/2)ε^{abcd}γ_{ab}", scope: Scope::FourOnly },
    IdentityInfo { id: "gamma5-gammac", statement: "γ^aγ^5 = iε^{abcd}γ_{bcd}", scope: Scope::FourOnly },
    IdentityInfo { id: "va-gammaN", statement: "[v_a,Γ^N] = N[v_a,Γ]Γ^{N−1} + N(N−1)v_aΓ^{N−2}", scope: Scope::Generic },
    IdentityInfo { id: "va-gammaN-2", statement: "[v_a,Γ^N] = (−1)^{N−1}(NΓ^{N−1}Γ_a + N(N−1)Γ^{N−2}v_a)", scope: Scope::Generic },
    IdentityInfo { id: "va-gamma-gammaN", statement: "[v_a,Γ]Γ^N − (−1)^NΓ^N[v_a,Γ] = −2Nv_aΓ^{N−1}", scope: Scope::Generic },
    IdentityInfo { id: "theta-gamma-gamma2", statement: "[Γ,Θ]Γ² = Γ²[Γ,Θ] + 4NΓΘ", scope: Scope::Generic },
    IdentityInfo {
        id: "godplz",
        statement: "χ̄γ³[α,ψ] = 3χ̄γψ + (−1)^{|α|}½χ̄[α,γ³]_Vψ",
        scope: Scope::FourOnly,
    },
    IdentityInfo { id: "trace-orthogonality", statement: "Tr(Γ^{[A]}Γ_{[B]}) = (−1)^{[A]}2^kδ^{[A]}_{[B]}", scope: Scope::Even },
    IdentityInfo { id: "flip-0", statement: "χ̄ψ = −(−1)^{|χ||ψ|}ψ̄χ", scope: Scope::Majorana },
    IdentityInfo { id: "flip-1", statement: "χ̄Γψ = (−1)^{|ψ|+|χ|+|ψ||χ|}ψ̄Γχ", scope: Scope::Majorana },
    IdentityInfo { id: "flip-2", statement: "χ̄Γ²ψ = (−1)^{|ψ||χ|}ψ̄Γ²χ", scope: Scope::Majorana },
    IdentityInfo { id: "flip-3", statement: "χ̄Γ³ψ = −(−1)^{|ψ|+|χ|+|ψ||χ|}ψ̄Γ³χ", scope: Scope::Majorana },
    IdentityInfo { id: "flip-N", statement: "χ̄Γ^Nψ = −t_N(−1)^{N(|ψ|+|χ|)+|ψ||χ|}ψ̄Γ^Nχ", scope: Scope::Majorana },
    IdentityInfo { id: "fierz-0", statement: "(γ^a)·_{α(β}(γ_a)·_{ρδ)} = 0", scope: Scope::FourOnly },
    IdentityInfo {
        id: "fierz-1",
        statement: "λ̄_1γ³λ_2λ̄_3γλ_4 = (−1)^{|λ_2||λ_3|}λ̄_1γλ_3λ̄_2γ³λ_4 + (−1)^{|λ_4|(|λ_2|+|λ_3|+1)+|λ_3|}λ̄_1γλ_4λ̄_2γ³λ_3",
        scope: Scope::FourOnly,
    },
    IdentityInfo {
        id: "fierz-2",
        statement: "λ̄_1γ³λ_2λ̄_3γλ_4 = −(−1)^{|λ_2||λ_3|}λ̄_1γ³λ_3λ̄_2γλ_4 − (−1)^{|λ_4|(|λ_2|+|λ_3|+1)+|λ_3|}λ̄_1γ³λ_4λ̄_2γλ_3",
        scope: Scope::FourOnly,
    },
    IdentityInfo { id: "lemma-fierz", statement: "λ̄γ³χχ̄γψ = χ̄γχλ̄γ³ψ = λ̄γχχ̄γ³ψ = 0 for |χ| = 0, |ψ| = 1", scope: Scope::FourOnly },
];

pub fn lookup(id: &str) -> Result<&'static IdentityInfo> {
    let id = id.strip_prefix("id:").unwrap_or(id);
    REGISTRY.iter().find(|i| i.id == id).ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

pub fn applicable(info: &IdentityInfo, dim: usize) -> bool {
    if !(crate::gamma::MIN_DIM..=crate::gamma::MAX_DIM).contains(&dim) {
        return false;
    }
    match info.scope {
        Scope::Generic => true,
        Scope::FourOnly => dim == 4,
        Scope::Majorana => matches!(dim % 8, 2 | 3 | 4) && 2 * (1usize << (dim / 2)) + dim <= crate::superalgebra::MAX_ODD,
        Scope::Even => dim % 2 == 0,
    }
}

/// Outcome of one reading of an identity.
#[derive(Clone, Debug, Serialize)]
pub struct ReadingResult {
    pub reading: String,
    pub holds: bool,
    pub cases: usize,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub id: String,
    pub statement: String,
    pub dim: usize,
    pub pass: bool,
    /// Whether the first (displayed) reading holds.
    pub displayed_holds: bool,
    /// The first reading that holds.
    pub holding_reading: Option<String>,
    pub readings: Vec<ReadingResult>,
}

impl IdentityReport {
    pub fn witness(&self) -> Option<&str> {
        self.readings.iter().find_map(|r| r.witness.as_deref())
    }
}

/// Accumulates exact comparisons, keeping the first failure.
#[derive(Default)]
pub(crate) struct Tally {
    cases: usize,
    witness: Option<String>,
}

impl Tally {
    pub(crate) fn mat(&mut self, label: impl FnOnce() -> String, lhs: &ExactMatrix, rhs: &ExactMatrix) {
        self.cases += 1;
        if self.witness.is_none() && lhs != rhs {
            self.witness = Some(format!("{}: lhs − rhs = {}", label(), lhs - rhs));
        }
    }

    pub(crate) fn form(&mut self, label: impl FnOnce() -> String, lhs: &MatForm, rhs: &MatForm) {
        self.cases += 1;
        if self.witness.is_none() && lhs != rhs {
            self.witness = Some(format!("{}: lhs − rhs = {}", label(), lhs.sub(rhs).render()));
        }
    }

    pub(crate) fn zero(&mut self, label: impl FnOnce() -> String, x: &SuperElement) {
        self.cases += 1;
        if self.witness.is_none() && !x.is_zero() {
            self.witness = Some(format!("{}: residual = {}", label(), x));
        }
    }

    pub(crate) fn supermat_zero(&mut self, label: impl FnOnce() -> String, x: &SuperMatrix) {
        self.cases += 1;
        if self.witness.is_none() && !x.is_zero() {
            let n = x.size();
            let (i, j) = (0..n * n).map(|k| (k / n, k % n)).find(|&(i, j)| !x.get(i, j).is_zero()).expect("nonzero entry");
            self.witness = Some(format!("{}: entry ({},{}) = {}", label(), i, j, x.get(i, j)));
        }
    }

    pub(crate) fn check(&mut self, label: impl FnOnce() -> String, ok: bool) {
        self.cases += 1;
        if self.witness.is_none() && !ok {
            self.witness = Some(label());
        }
    }

    pub(crate) fn finish(self, reading: &str) -> ReadingResult {
        ReadingResult { reading: reading.to_string(), holds: self.witness.is_none(), cases: self.cases, witness: self.witness }
    }
}

fn gi(k: i64) -> GaussianRational {
    GaussianRational::int(k)
}

fn frac(p: i64, q: i64) -> GaussianRational {
    GaussianRational::frac(p, q)
}

/// Sign of the permutation `idx` of `0..4`, zero on repeats.
pub fn levi_civita(idx: &[usize]) -> i64 {
    let n = idx.len();
    let mut seen = 0u32;
    for &a in idx {
        if a >= n || seen & (1 << a) != 0 {
            return 0;
        }
        seen |= 1 << a;
    }
    let mut inv = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            if idx[i] > idx[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 { 1 } else { -1 }
}

/// Normalization of `ε^{abcd}` in `D = 4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EpsConvention {
    /// `ε^{0123} = +1`.
    UpperPlus,
    /// `ε_{0123} = +1`, hence `ε^{0123} = −1`.
    LowerPlus,
}

impl EpsConvention {
    pub fn upper(self, idx: &[usize]) -> i64 {
        let s = levi_civita(idx);
        match self {
            EpsConvention::UpperPlus => s,
            EpsConvention::LowerPlus => -s,
        }
    }

    pub fn lower(self, idx: &[usize]) -> i64 {
        -self.upper(idx)
    }

    pub fn label(self) -> &'static str {
        match self {
            EpsConvention::UpperPlus => "ε^{0123} = +1",
            EpsConvention::LowerPlus => "ε_{0123} = +1",
        }
    }
}

fn eta_up(rep: &GammaRep, a: usize, b: usize) -> GaussianRational {
    gi(rep.eta_ab(a, b))
}

fn prod(ms: &[&ExactMatrix]) -> ExactMatrix {
    let n = ms[0].rows();
    ms.iter().fold(ExactMatrix::identity(n), |acc, m| &acc * *m)
}

fn contract_sum(rep: &GammaRep, inner: &ExactMatrix) -> ExactMatrix {
    (0..rep.dim()).fold(ExactMatrix::zeros(rep.size(), rep.size()), |acc, a| &acc + &prod(&[&rep.gamma_up(a), inner, rep.gamma(a)]))
}

fn check_gamma2(rep: &GammaRep) -> Vec<ReadingResult> {
    let mut t = Tally::default();
    let lhs = contract_sum(rep, &rep.identity());
    t.mat(|| "Γ^aΓ_a".into(), &lhs, &ExactMatrix::scalar(rep.size(), gi(-(rep.dim() as i64))));
    vec![t.finish("displayed")]
}

fn check_gamma3(rep: &GammaRep) -> Vec<ReadingResult> {
    let d = rep.dim() as i64;
    let mut t = Tally::default();
    for b in 0..rep.dim() {
        let gb = rep.gamma_up(b);
        t.mat(|| format!("b={}", b), &contract_sum(rep, &gb), &gb.scale(&gi(d - 2)));
    }
    vec![t.finish("displayed")]
}

fn check_gamma4(rep: &GammaRep) -> Vec<ReadingResult> {
    let d = rep.dim() as i64;
    let mut t = Tally::default();
    for b in 0..rep.dim() {
        for c in 0..rep.dim() {
            let bc = &rep.gamma_up(b) * &rep.gamma_up(c);
            let rhs = &bc.scale(&gi(4 - d)) + &ExactMatrix::scalar(rep.size(), &eta_up(rep, b, c) * &gi(4));
            t.mat(|| format!("b={} c={}", b, c), &contract_sum(rep, &bc), &rhs);
        }
    }
    vec![t.finish("displayed")]
}

fn check_gamma5(rep: &GammaRep) -> Vec<ReadingResult> {
    let d = rep.dim() as i64;
    let mut t = Tally::default();
    let g: Vec<ExactMatrix> = (0..rep.dim()).map(|a| rep.gamma_up(a)).collect();
    for b in 0..rep.dim() {
        for c in 0..rep.dim() {
            for e in 0..rep.dim() {
                let bce = prod(&[&g[b], &g[c], &g[e]]);
                let rhs = &(&(&bce.scale(&gi(d - 6)) - &g[b].scale(&(&eta_up(rep, c, e) * &gi(4))))
                    - &g[e].scale(&(&eta_up(rep, b, c) * &gi(4))))
                    + &g[c].scale(&(&eta_up(rep, b, e) * &gi(4)));
                t.mat(|| format!("b={} c={} d={}", b, c, e), &contract_sum(rep, &bce), &rhs);
            }
        }
    }
    vec![t.finish("displayed")]
}

fn check_easy_shuffle(rep: &GammaRep) -> Result<Vec<ReadingResult>> {
    let mut t = Tally::default();
    for r in 1..=rep.dim() {
        for a1 in 0..rep.dim() {
            for rest in subsets(rep.dim(), r - 1) {
                let mut all = vec![a1];
                all.extend(&rest);
                let lhs = rep.gamma_anti_up(&all)?;
                let g1 = rep.gamma_up(a1);
                let gr = rep.gamma_anti_up(&rest)?;
                let sign = if r % 2 == 0 { 1 } else { -1 };
                let rhs = (&(&g1 * &gr) - &(&gr * &g1).scale(&gi(sign))).scale(&frac(1, 2));
                t.mat(|| format!("indices {:?}", all), &lhs, &rhs);
            }
        }
    }
    Ok(vec![t.finish("displayed")])
}

fn check_anti_gamma(rep: &GammaRep) -> Result<Vec<ReadingResult>> {
    let d = rep.dim() as i64;
    let mut t = Tally::default();
    for r in 0..=rep.dim() {
        for set in subsets(rep.dim(), r) {
            let m = rep.gamma_anti_up(&set)?;
            let sign = if (r + 1) % 2 == 0 { 1 } else { -1 };
            t.mat(|| format!("indices {:?}", set), &contract_sum(rep, &m), &m.scale(&gi(sign * (d - 2 * r as i64))));
        }
    }
    Ok(vec![t.finish("displayed")])
}

fn falling(n: usize, k: usize) -> i64 {
    (0..k).map(|i| (n - i) as i64).product()
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// Sums over ordered `b`-tuples reduce to `s!` times the sum over sets, since
/// both factors are antisymmetric in the `b`'s.
fn check_contraction_s(rep: &GammaRep) -> Result<Vec<ReadingResult>> {
    let d = rep.dim();
    let sign_readings: [(&str, fn(usize, usize) -> i64); 2] = [
        ("displayed sign (−1)^r", |r, _| if r % 2 == 0 { 1 } else { -1 }),
        ("sign (−1)^{s(s+1)/2}", |_, s| if (s * (s + 1) / 2) % 2 == 0 { 1 } else { -1 }),
    ];
    let mut tallies: Vec<Tally> = sign_readings.iter().map(|_| Tally::default()).collect();
    for r in 0..=d {
        for s in 0..=(d - r) {
            for a in subsets(d, r) {
                let amask: u32 = a.iter().map(|&x| 1u32 << x).sum();
                let mut lhs = ExactMatrix::zeros(rep.size(), rep.size());
                for b in subsets(d, s) {
                    if b.iter().any(|&x| amask >> x & 1 == 1) {
                        continue;
                    }
                    let mut ab = a.clone();
                    ab.extend(&b);
                    lhs = &lhs + &(&rep.gamma_anti_up(&ab)? * &rep.gamma_anti(&b)?);
                }
                let lhs = lhs.scale(&gi(factorial(s)));
                let ga = rep.gamma_anti_up(&a)?;
                for ((_, sign), t) in sign_readings.iter().zip(tallies.iter_mut()) {
                    let rhs = ga.scale(&gi(sign(r, s) * falling(d - r, s)));
                    t.mat(|| format!("r={} s={} a={:?}", r, s, a), &lhs, &rhs);
                }
            }
        }
    }
    Ok(tallies.into_iter().zip(sign_readings).map(|(t, (name, _))| t.finish(name)).collect())
}

fn check_d4_gamma5(rep: &GammaRep) -> Vec<ReadingResult> {
    let mut t = Tally::default();
    let g: Vec<ExactMatrix> = (0..4).map(|a| rep.gamma_up(a)).collect();
    for b in 0..4 {
        for c in 0..4 {
            for e in 0..4 {
                let lhs = contract_sum(rep, &prod(&[&g[b], &g[c], &g[e]]));
                let rhs = prod(&[&g[e], &g[c], &g[b]]).scale(&gi(2));
                t.mat(|| format!("b={} c={} d={}", b, c, e), &lhs, &rhs);
            }
        }
    }
    vec![t.finish("displayed")]
}

const CONVENTIONS: [EpsConvention; 2] = [EpsConvention::UpperPlus, EpsConvention::LowerPlus];

fn check_d4_gamma3(rep: &GammaRep) -> Result<Vec<ReadingResult>> {
    let g5 = rep.gamma5()?;
    let g: Vec<ExactMatrix> = (0..4).map(|a| rep.gamma_up(a)).collect();
    let mut out = Vec::new();
    for conv in CONVENTIONS {
        let mut t = Tally::default();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    let lhs = prod(&[&g[a], &g[b], &g[c]]);
                    let mut rhs = &(&g[b].scale(&eta_up(rep, a, c)) - &g[c].scale(&eta_up(rep, a, b))) - &g[a].scale(&eta_up(rep, b, c));
                    for e in 0..4 {
                        let eps = conv.upper(&[e, a, b, c]);
                        if eps != 0 {
                            rhs = &rhs + &(rep.gamma(e) * &g5).scale(&GaussianRational::complex_int(0, eps));
                        }
                    }
                    t.mat(|| format!("a={} b={} c={}", a, b, c), &lhs, &rhs);
                }
            }
        }
        out.push(t.finish(conv.label()));
    }
    Ok(out)
}

fn check_d4_gamma5_2(rep: &GammaRep) -> Result<Vec<ReadingResult>> {
    let g5 = rep.gamma5()?;
    let mut out = Vec::new();
    for conv in CONVENTIONS {
        let mut t = Tally::default();
        for c in 0..4 {
            for d in 0..4 {
                let lhs = &g5 * &rep.gamma_anti_up(&[c, d])?;
                let mut rhs = ExactMatrix::zeros(4, 4);
                for a in 0..4 {
                    for b in 0..4 {
                        let eps = conv.upper(&[a, b, c, d]);
                        if eps != 0 {
                            rhs = &rhs + &rep.gamma_anti(&[a, b])?.scale(&GaussianRational::new(crate::exactnum::rat(0), crate::exactnum::ratio(-eps, 2)));
                        }
                    }
                }
                t.mat(|| format!("c={} d={}", c, d), &lhs, &rhs);
            }
        }
        out.push(t.finish(conv.label()));
    }
    Ok(out)
}

fn check_gamma5_gammac(rep: &GammaRep) -> Result<Vec<ReadingResult>> {
    let g5 = rep.gamma5()?;
    let mut out = Vec::new();
    for (norm, label) in [(1, "full contraction"), (6, "contraction with 1/3!")] {
        for conv in CONVENTIONS {
            let mut t = Tally::default();
            for a in 0..4 {
                let lhs = &rep.gamma_up(a) * &g5;
                let mut rhs = ExactMatrix::zeros(4, 4);
                for b in 0..4 {
                    for c in 0..4 {
                        for d in 0..4 {
                            let eps = conv.upper(&[a, b, c, d]);
                            if eps != 0 {
                                let coeff = GaussianRational::new(crate::exactnum::rat(0), crate::exactnum::ratio(eps, norm));
                                rhs = &rhs + &rep.gamma_anti(&[b, c, d])?.scale(&coeff);
                            }
                        }
                    }
                }
                t.mat(|| format!("a={}", a), &lhs, &rhs);
            }
            out.push(t.finish(&format!("{}, {}", label, conv.label())));
        }
    }
    Ok(out)
}

fn gamma_lower_form(rep: &GammaRep, a: usize) -> MatForm {
    MatForm::scalar_form(rep.gamma(a).clone(), rep.dim())
}

fn check_va_gamma_n(rep: &GammaRep, second: bool) -> Vec<ReadingResult> {
    let d = rep.dim();
    let n = rep.size();
    let powers: Vec<MatForm> = (0..=d + 1).map(|k| MatForm::gamma_power(rep, k)).collect();
    let mut t = Tally::default();
    for big_n in 2..=d + 1 {
        let nn = big_n as i64;
        for a in 0..d {
            let lhs = powers[big_n].contract(a, rep.eta(a));
            let va = MatForm::v(n, d, a);
            let ga = gamma_lower_form(rep, a);
            let rhs = if !second {
                ga.mul(&powers[big_n - 1]).scale_int(nn).add(&va.mul(&powers[big_n - 2]).scale_int(nn * (nn - 1)))
            } else {
                let inner = powers[big_n - 1].mul(&ga).scale_int(nn).add(&powers[big_n - 2].mul(&va).scale_int(nn * (nn - 1)));
                if big_n % 2 == 1 { inner } else { inner.neg() }
            };
            t.form(|| format!("N={} a={}", big_n, a), &lhs, &rhs);
        }
    }
    vec![t.finish("displayed")]
}

fn check_va_gamma_gamma_n(rep: &GammaRep) -> Vec<ReadingResult> {
    let d = rep.dim();
    let n = rep.size();
    let mut t = Tally::default();
    for big_n in 1..=d + 1 {
        let gn = MatForm::gamma_power(rep, big_n);
        let gn1 = MatForm::gamma_power(rep, big_n - 1);
        for a in 0..d {
            let ga = gamma_lower_form(rep, a);
            let sign = if big_n % 2 == 0 { 1 } else { -1 };
            let lhs = ga.mul(&gn).sub(&gn.mul(&ga).scale_int(sign));
            let rhs = MatForm::v(n, d, a).mul(&gn1).scale_int(-2 * big_n as i64);
            t.form(|| format!("N={} a={}", big_n, a), &lhs, &rhs);
        }
    }
    vec![t.finish("displayed")]
}

/// Checked on every basis blade `Θ = v_A`; the identity is linear in `Θ`.
/// At `D ≤ 4` it is also checked with a Grassmann coefficient of each parity.
fn check_theta(rep: &GammaRep) -> Result<Vec<ReadingResult>> {
    let d = rep.dim();
    let n = rep.size();
    let g = MatForm::gamma(rep);
    let g2 = g.mul(&g);
    let mut t = Tally::default();
    for big_n in 0..=d {
        for set in subsets(d, big_n) {
            let mask: u32 = set.iter().map(|&x| 1u32 << x).sum();
            let theta = MatForm::term(ExactMatrix::identity(n), mask, d);
            let br = theta.gamma_bracket(rep);
            let lhs = br.mul(&g2);
            let rhs = g2.mul(&br).add(&g.mul(&theta).scale_int(4 * big_n as i64));
            t.form(|| format!("N={} Θ=v{:?}", big_n, set), &lhs, &rhs);
        }
    }
    if d <= 4 {
        for parity in [0u8, 1] {
            for big_n in 0..=d {
                let mut pool = GeneratorPool::with_frame(d);
                let mut theta = SuperElement::zero();
                for set in subsets(d, big_n) {
                    let c = pool.fresh("Θ", parity)?;
                    let blade = set.iter().fold(SuperElement::one(), |acc, &a| &acc * &pool.v(a));
                    theta = &theta + &(&c * &blade);
                }
                let theta_m = SuperMatrix::identity_times(n, &theta);
                let br = (0..d).fold(SuperMatrix::zeros(n), |acc, c| acc.add(&theta_m.contract(c, rep.eta(c)).left_exact(&rep.gamma_up(c))));
                let g1 = gamma_form_power(rep, &pool, 1);
                let g2s = gamma_form_power(rep, &pool, 2);
                let resid = br.mul(&g2s).sub(&g2s.mul(&br)).sub(&g1.mul(&theta_m).scale(&gi(4 * big_n as i64)));
                t.supermat_zero(|| format!("N={} |Θ|={} symbolic", big_n, parity), &resid);
            }
        }
    }
    Ok(vec![t.finish("displayed")])
}

/// Operator form `γ³R_α − 3γα − s·½[α,γ³]_V` with `R_α = −¼α^{ab}γ_{ab}`,
/// for symbolic `α` of parity `p`, plus spinor sandwiches.
fn check_godplz(rep: &GammaRep) -> Result<Vec<ReadingResult>> {
    let conj = charge_conj(rep, -1)?;
    let readings = ["displayed: 3χ̄γψ, sign (−1)^{|α|}", "3χ̄γαψ, sign (−1)^{|α|}", "3χ̄γαψ, sign +1"];
    let mut tallies: Vec<Tally> = readings.iter().map(|_| Tally::default()).collect();
    for p in [0u8, 1] {
        let mut pool = GeneratorPool::with_frame(4);
        let mut coef = vec![vec![SuperElement::zero(); 4]; 4];
        for a in 0..4 {
            for b in (a + 1)..4 {
                let x = pool.fresh("α", p)?;
                coef[b][a] = -&x;
                coef[a][b] = x;
            }
        }
        let alpha = (0..4).fold(SuperElement::zero(), |acc, a| {
            ((a + 1)..4).fold(acc, |acc, b| &acc + &(&coef[a][b] * &(&pool.v(a) * &pool.v(b))))
        });
        let mut r_alpha = SuperMatrix::zeros(4);
        for a in 0..4 {
            for b in 0..4 {
                if a != b {
                    r_alpha = r_alpha.add(&SuperMatrix::from_exact(&rep.gamma_anti(&[a, b])?, &coef[a][b]));
                }
            }
        }
        let r_alpha = r_alpha.scale(&frac(-1, 4));
        let g1 = gamma_form_power(rep, &pool, 1);
        let g3 = gamma_form_power(rep, &pool, 3);
        let lhs = g3.mul(&r_alpha);
        let so = g3.map(|x| {
            let mut acc = SuperElement::zero();
            for a in 0..4 {
                for c in 0..4 {
                    if coef[a][c].is_zero() {
                        continue;
                    }
                    let dx = x.odd_derivative(c).scale(&gi(rep.eta(c)));
                    if !dx.is_zero() {
                        acc = &acc + &(&(&coef[a][c] * &pool.v(a)) * &dx);
                    }
                }
            }
            acc
        });
        let sign_alpha = if p == 0 { 1 } else { -1 };
        let half_so = |s: i64| so.scale(&frac(s, 2));
        let candidates = [
            g1.scale(&gi(3)).add(&half_so(sign_alpha)),
            g1.mul(&SuperMatrix::identity_times(4, &alpha)).scale(&gi(3)).add(&half_so(sign_alpha)),
            g1.mul(&SuperMatrix::identity_times(4, &alpha)).scale(&gi(3)).add(&half_so(1)),
        ];
        let mut spinors = Vec::new();
        for (pc, pp) in [(0u8, 0u8), (0, 1), (1, 0), (1, 1)] {
            let chi = generic_majorana(&mut pool, "χ", pc, &conj, rep)?;
            let psi = generic_majorana(&mut pool, "ψ", pp, &conj, rep)?;
            spinors.push((chi, psi));
        }
        for (rhs, t) in candidates.iter().zip(tallies.iter_mut()) {
            let resid = lhs.sub(rhs);
            t.supermat_zero(|| format!("|α|={} operator form", p), &resid);
            for (chi, psi) in &spinors {
                let x = crate::superalgebra::sandwich(chi, &conj.c, &resid, psi);
                t.zero(|| format!("|α|={} |χ|={} |ψ|={}", p, chi.parity, psi.parity), &x);
            }
        }
    }
    Ok(tallies.into_iter().zip(readings).map(|(t, r)| t.finish(r)).collect())
}

fn check_trace_orthogonality(rep: &GammaRep) -> Result<Vec<ReadingResult>> {
    let d = rep.dim();
    let mut t = Tally::default();
    let sets: Vec<Vec<usize>> = (0..=d).flat_map(|r| subsets(d, r)).collect();
    let up: Vec<ExactMatrix> = sets.iter().map(|s| rep.gamma_anti_up(s)).collect::<Result<_>>()?;
    let low: Vec<ExactMatrix> = sets
        .iter()
        .map(|s| {
            let rev: Vec<usize> = s.iter().rev().copied().collect();
            rep.gamma_anti(&rev)
        })
        .collect::<Result<_>>()?;
    let two_k = rep.size() as i64;
    for (i, a) in sets.iter().enumerate() {
        let nz = up[i].nonzeros();
        for (j, _) in sets.iter().enumerate() {
            let tr: GaussianRational = nz.iter().map(|&(r, c, x)| x * &low[j][(c, r)]).sum();
            let expect = if i == j { gi(if a.len() % 2 == 0 { two_k } else { -two_k }) } else { GaussianRational::zero() };
            t.check(|| format!("Tr(Γ^{:?}Γ_{:?}) = {}", a, sets[j], tr), tr == expect);
        }
    }
    Ok(vec![t.finish("displayed")])
}

/// Sign `s` in `χ̄Γ^Nψ = s·ψ̄Γ^Nχ` per the displayed flip law.
pub fn flip_sign(n: usize, pc: u8, pp: u8) -> i64 {
    let (c, p) = (pc as usize, pp as usize);
    let e = n * (p + c) + p * c;
    let s = if e % 2 == 0 { 1 } else { -1 };
    -t_parameter(n) * s
}

/// Signs of the four displayed flip relations, written out separately.
fn flip_displayed(n: usize, pc: u8, pp: u8) -> i64 {
    let (c, p) = (pc as i64, pp as i64);
    let pm = |e: i64| if e % 2 == 0 { 1 } else { -1 };
    match n {
        0 => -pm(c * p),
        1 => pm(p + c + p * c),
        2 => pm(p * c),
        3 => -pm(p + c + p * c),
        _ => unreachable!("displayed flips cover N ≤ 3"),
    }
}

fn check_flip(rep: &GammaRep, which: Option<usize>) -> Result<Vec<ReadingResult>> {
    let conj = charge_conj(rep, -1)?;
    let d = rep.dim();
    let ns: Vec<usize> = match which {
        Some(n) => vec![n],
        None => (0..=d.min(4)).collect(),
    };
    let mut t = Tally::default();
    for (pc, pp) in [(0u8, 0u8), (0, 1), (1, 0), (1, 1)] {
        let mut pool = GeneratorPool::with_frame(d);
        let chi = generic_majorana(&mut pool, "χ", pc, &conj, rep)?;
        let psi = generic_majorana(&mut pool, "ψ", pp, &conj, rep)?;
        for &n in &ns {
            let s = if which.is_some() { flip_displayed(n, pc, pp) } else { flip_sign(n, pc, pp) };
            let lhs = form_bilinear(&chi, n, &psi, &conj, rep, &pool);
            let rhs = form_bilinear(&psi, n, &chi, &conj, rep, &pool).scale(&gi(s));
            t.zero(|| format!("N={} |χ|={} |ψ|={}", n, pc, pp), &(&lhs - &rhs));
            t.check(|| format!("N={} |χ|={} |ψ|={}: bilinear vanishes identically", n, pc, pp), !lhs.is_zero() || n > d);
        }
    }
    Ok(vec![t.finish("displayed")])
}

pub fn verify(id: &str, dim: usize) -> Result<IdentityReport> {
    let info = lookup(id)?;
    if !applicable(info, dim) {
        return Err(Error::Inapplicable { id: info.id.to_string(), dim });
    }
    let rep = GammaRep::build(dim)?;
    let readings = match info.id {
        "gamma2" => check_gamma2(&rep),
        "gamma3" => check_gamma3(&rep),
        "gamma4" => check_gamma4(&rep),
        "gamma5" => check_gamma5(&rep),
        "easy-shuffle" => check_easy_shuffle(&rep)?,
        "anti-gamma-r" => check_anti_gamma(&rep)?,
        "contraction-s" => check_contraction_s(&rep)?,
        "d4-gamma5" => check_d4_gamma5(&rep),
        "d4-gamma3" => check_d4_gamma3(&rep)?,
        "d4-gamma5-2" => check_d4_gamma5_2(&rep)?,
        "gamma5-gammac" => check_gamma5_gammac(&rep)?,
        "va-gammaN" => check_va_gamma_n(&rep, false),
        "va-gammaN-2" => check_va_gamma_n(&rep, true),
        "va-gamma-gammaN" => check_va_gamma_gamma_n(&rep),
        "theta-gamma-gamma2" => check_theta(&rep)?,
        "godplz" => check_godplz(&rep)?,
        "trace-orthogonality" => check_trace_orthogonality(&rep)?,
        "flip-0" => check_flip(&rep, Some(0))?,
        "flip-1" => check_flip(&rep, Some(1))?,
        "flip-2" => check_flip(&rep, Some(2))?,
        "flip-3" => check_flip(&rep, Some(3))?,
        "flip-N" => check_flip(&rep, None)?,
        "fierz-0" => vec![fierz::fierz0(&rep)?],
        "fierz-1" => fierz::rearrangement_all(&rep, fierz::Variant::Rearr1)?,
        "fierz-2" => fierz::rearrangement_all(&rep, fierz::Variant::Rearr2)?,
        "lemma-fierz" => fierz::lemma_all(&rep)?,
        other => return Err(Error::UnknownIdentity(other.to_string())),
    };
    let holding = readings.iter().find(|r| r.holds).map(|r| r.reading.clone());
    Ok(IdentityReport {
        id: info.id.to_string(),
        statement: info.statement.to_string(),
        dim,
        pass: holding.is_some(),
        displayed_holds: readings.first().is_some_and(|r| r.holds),
        holding_reading: holding,
        readings,
    })
}

/// Every identity applicable at `dim`, in registry order.
pub fn verify_all(dim: usize) -> Result<Vec<IdentityReport>> {
    REGISTRY.iter().filter(|i| applicable(i, dim)).map(|i| verify(i.id, dim)).collect()
}
