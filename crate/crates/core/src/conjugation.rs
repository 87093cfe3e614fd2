//! Intertwiner `B` with `Γ_a = ηB^{−1}Γ_a^*B`, the sign `ε` from `BB^* = ε`,
//! the charge-conjugation matrix `C = B^tΓ_0`, the symmetry signs `t_N` and
//! the Majorana condition `Bψ^* = ψ`.

use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{intertwiners, ExactMatrix, GaussianRational, Rational};
use crate::gamma::GammaRep;
use crate::superalgebra::SuperSpinor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Structure {
    Real,
    Quaternionic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MajoranaKind {
    Majorana,
    PseudoMajorana,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugationData {
    pub dim: usize,
    pub eta: i64,
    pub epsilon: i64,
    pub b: ExactMatrix,
    pub c: ExactMatrix,
    pub structure: Structure,
}

/// `η` values for which an intertwiner exists: both for even `D`,
/// `(−1)^k` with `k = ⌊D/2⌋` for odd `D`.
pub fn admissible_etas(dim: usize) -> Vec<i64> {
    if dim % 2 == 0 {
        vec![1, -1]
    } else if (dim / 2) % 2 == 0 {
        vec![1]
    } else {
        vec![-1]
    }
}

fn check_sign(x: i64, what: &str) -> Result<()> {
    if x == 1 || x == -1 { Ok(()) } else { Err(Error::InvalidArgument(format!("{} must be ±1, got {}", what, x))) }
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    if &(&rn * &rn) == n && &(&rd * &rd) == d { Some(Rational::new(rn, rd)) } else { None }
}

/// Solves `BΓ_a − ηΓ_a^*B = 0`, then scales to a unitary matrix whose first
/// nonzero entry (row-major) is real positive.
pub fn solve_b(rep: &GammaRep, eta: i64) -> Result<ExactMatrix> {
    check_sign(eta, "η")?;
    let right: Vec<ExactMatrix> = rep.gammas().iter().map(|g| g.conj().scale(&GaussianRational::int(eta))).collect();
    let kernel = intertwiners(rep.gammas(), &right);
    let b0 = match kernel.len() {
        0 => return Err(Error::EmptyKernel(format!("D = {}, η = {}", rep.dim(), eta))),
        1 => kernel.into_iter().next().expect("one kernel vector"),
        k => return Err(Error::DegenerateKernel(k)),
    };
    let c = (&b0 * &b0.adjoint())
        .as_scalar()
        .filter(|c| c.is_real() && c.re.is_positive())
        .ok_or_else(|| Error::NotInvertible("B·B† is not a positive multiple of Id".into()))?;
    let w = b0.entries().iter().find(|x| !x.is_zero()).expect("nonzero kernel vector").clone();
    // first entry after scaling is √(|w|²/c)
    let target = rational_sqrt(&(w.norm_sqr() / &c.re))
        .ok_or_else(|| Error::IrrationalScale(format!("|w|²/c = {}", w.norm_sqr() / &c.re)))?;
    let lambda = &GaussianRational::real(target) / &w;
    Ok(b0.scale(&lambda))
}

/// `ε` from `B·B^* = ε·Id`.
pub fn epsilon_of(b: &ExactMatrix) -> Result<i64> {
    let p = (b * &b.conj()).as_scalar().ok_or_else(|| Error::NotInvertible("B·B* is not scalar".into()))?;
    if p.is_one() {
        Ok(1)
    } else if p == GaussianRational::int(-1) {
        Ok(-1)
    } else {
        Err(Error::NotInvertible(format!("B·B* = {}·Id", p)))
    }
}

/// Exact value of `cos(πm/4) − η sin(πm/4)`: `±1`, `±√2` or `0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScherkValue {
    Unit(i64),
    Root2(i64),
    Zero,
}

pub fn scherk_value(d: usize, eta: i64) -> ScherkValue {
    // (cos, sin) at multiples of π/4, in units of 1 (even m) or 1/√2 (odd m)
    let m = (d as i64 - 1).rem_euclid(8) as usize;
    const TABLE: [(i64, i64); 8] = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)];
    let (c, s) = TABLE[m];
    let v = c - eta * s;
    if m % 2 == 0 {
        ScherkValue::Unit(v)
    } else if v == 0 {
        ScherkValue::Zero
    } else {
        ScherkValue::Root2(v.signum())
    }
}

/// `ε = cos(π(d−1)/4) − η sin(π(d−1)/4)`, `d = D − 1`. For odd `D` the
/// expression is `±√2` at the admissible `η` and `0` otherwise; its sign is
/// returned and the vanishing case is rejected.
pub fn epsilon_formula(d: usize, eta: i64) -> Result<i64> {
    check_sign(eta, "η")?;
    match scherk_value(d, eta) {
        ScherkValue::Unit(v) | ScherkValue::Root2(v) => Ok(v),
        ScherkValue::Zero => Err(Error::InvalidArgument(format!("η = {} is not admissible at D = {}", eta, d + 1))),
    }
}

/// Residues `D mod 8` listed in the `(ε, η)` cell of the table.
pub fn table_cell(epsilon: i64, eta: i64) -> &'static [usize] {
    match (epsilon, eta) {
        (1, 1) => &[1, 2, 0],
        (1, -1) => &[2, 3, 4],
        (-1, 1) => &[4, 5, 6],
        _ => &[6, 7, 0],
    }
}

pub fn in_table_cell(dim: usize, epsilon: i64, eta: i64) -> bool {
    table_cell(epsilon, eta).contains(&(dim % 8))
}

pub fn table_row_label(epsilon: i64, eta: i64) -> String {
    let ds: Vec<String> = table_cell(epsilon, eta).iter().map(|&r| if r == 0 { "8".into() } else { r.to_string() }).collect();
    format!("ε={}, η={}: D = {} mod 8", epsilon, eta, ds.join(","))
}

pub fn charge_conj(rep: &GammaRep, eta: i64) -> Result<ConjugationData> {
    let b = solve_b(rep, eta)?;
    let epsilon = epsilon_of(&b)?;
    let c = &b.transpose() * rep.gamma(0);
    let data = ConjugationData {
        dim: rep.dim(),
        eta,
        epsilon,
        b,
        c,
        structure: if epsilon == 1 { Structure::Real } else { Structure::Quaternionic },
    };
    if let Some(bad) = invariant_failures(&data, rep).first() {
        return Err(Error::NotInvertible(format!("conjugation invariant failed: {}", bad)));
    }
    Ok(data)
}

/// Names of the violated conjugation invariants.
pub fn invariant_failures(data: &ConjugationData, rep: &GammaRep) -> Vec<&'static str> {
    let mut out = Vec::new();
    let (b, c) = (&data.b, &data.c);
    let eta = GaussianRational::int(data.eta);
    let binv = b.adjoint();
    if !(b * &binv).is_identity() {
        out.push("B unitary");
    }
    if b.transpose() != b.scale(&GaussianRational::int(data.epsilon)) {
        out.push("B^t = εB");
    }
    if rep.gammas().iter().any(|g| &(&(&binv * &g.conj()) * b).scale(&eta) != g) {
        out.push("Γ_a = ηB^{-1}Γ_a^*B");
    }
    if rep.gammas().iter().any(|g| &g.transpose() * c != (c * g).scale(&eta)) {
        out.push("Γ_a^tC = ηCΓ_a");
    }
    if !(c * &c.adjoint()).is_identity() {
        out.push("CC† = Id");
    }
    if c.transpose() != c.scale(&GaussianRational::int(data.epsilon * data.eta)) {
        out.push("C^t = εηC");
    }
    out
}

/// `t_N = (−1)^{⌊(N+1)/2⌋}`.
pub fn t_parameter(n: usize) -> i64 {
    if ((n + 1) / 2) % 2 == 0 { 1 } else { -1 }
}

/// `t_N` from `(CΓ^N)^t = −t_N CΓ^N` for general `(ε, η)`:
/// `−ε η^{N+1} (−1)^{N(N−1)/2}`.
pub fn t_general(epsilon: i64, eta: i64, n: usize) -> i64 {
    let eta_pow = if (n + 1) % 2 == 0 { 1 } else { eta };
    let rev = if (n * n.saturating_sub(1) / 2) % 2 == 0 { 1 } else { -1 };
    -epsilon * eta_pow * rev
}

/// Footnote forms `t_0 = t_3 = −εη`, `t_1 = t_2 = −ε`.
pub fn t_footnote(epsilon: i64, eta: i64, n: usize) -> Option<i64> {
    match n {
        0 | 3 => Some(-epsilon * eta),
        1 | 2 => Some(-epsilon),
        _ => None,
    }
}

/// `t_N` read off the matrices `CΓ^{a_1⋯a_N}`; `None` if the sign is not
/// uniform or every such matrix vanishes.
pub fn t_from_matrices(data: &ConjugationData, rep: &GammaRep, n: usize) -> Result<Option<i64>> {
    let mut found: Option<i64> = None;
    for idx in subsets(rep.dim(), n) {
        let m = &data.c * &rep.gamma_anti_up(&idx)?;
        let mt = m.transpose();
        let t = if mt == -&m {
            1
        } else if mt == m {
            -1
        } else {
            return Ok(None);
        };
        if found.is_some_and(|f| f != t) {
            return Ok(None);
        }
        found = Some(t);
    }
    Ok(found)
}

/// Increasing index tuples of length `n` from `0..dim`.
pub fn subsets(dim: usize, n: usize) -> Vec<Vec<usize>> {
    (0u32..(1u32 << dim))
        .filter(|m| m.count_ones() as usize == n)
        .map(|m| (0..dim).filter(|a| m >> a & 1 == 1).collect())
        .collect()
}

/// `φ(ψ) = Bψ^*` on exact vectors.
pub fn phi(b: &ExactMatrix, psi: &[GaussianRational]) -> Vec<GaussianRational> {
    let v = ExactMatrix::column(psi.iter().map(GaussianRational::conj).collect());
    (b * &v).col_vec(0)
}

pub fn majorana_kind(eta: i64) -> MajoranaKind {
    if eta == -1 { MajoranaKind::Majorana } else { MajoranaKind::PseudoMajorana }
}

/// `Bψ^* = ψ` componentwise in the superalgebra.
pub fn majorana_check(psi: &SuperSpinor, conj: &ConjugationData, rep: &GammaRep) -> Result<bool> {
    if conj.epsilon != 1 {
        return Err(Error::Quaternionic(format!("D = {}, η = {}", rep.dim(), conj.eta)));
    }
    if psi.size() != rep.size() {
        return Err(Error::Shape(format!("spinor of size {} for D = {}", psi.size(), rep.dim())));
    }
    let star = SuperSpinor { components: psi.star(), parity: psi.parity };
    Ok(star.apply(&conj.b).components == psi.components)
}

#[derive(Serialize)]
pub struct ConjugationReport {
    pub dim: usize,
    pub eta: i64,
    pub epsilon: i64,
    pub epsilon_formula: i64,
    pub structure: Structure,
    pub kind: Option<MajoranaKind>,
    pub table_row: String,
    pub in_table: bool,
    pub b: ExactMatrix,
    pub c: ExactMatrix,
}

pub fn report(rep: &GammaRep, eta: i64) -> Result<ConjugationReport> {
    let data = charge_conj(rep, eta)?;
    Ok(ConjugationReport {
        dim: data.dim,
        eta,
        epsilon: data.epsilon,
        epsilon_formula: epsilon_formula(data.dim - 1, eta)?,
        structure: data.structure,
        kind: (data.epsilon == 1).then(|| majorana_kind(eta)),
        table_row: table_row_label(data.epsilon, eta),
        in_table: in_table_cell(data.dim, data.epsilon, eta),
        b: data.b,
        c: data.c,
    })
}
