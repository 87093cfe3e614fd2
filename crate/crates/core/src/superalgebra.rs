//! Supercommutative coefficient algebra: anticommuting odd generators and
//! commuting even generators over Gaussian rationals, plus spinors and
//! matrices with such entries.
//!
//! Exterior vectors `v_a` are realized as odd generators, so form-valued
//! bilinears pick up Koszul signs from the same multiplication rule.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::conjugation::ConjugationData;
use crate::error::{Error, Result};
use crate::exactnum::{ExactMatrix, GaussianRational, SparseReducer, SparseRow};
use crate::gamma::GammaRep;

pub const MAX_ODD: usize = 64;

/// Ordered product of odd generators (ascending index) times a commuting
/// monomial in even generators (sorted multiset).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    odd: u64,
    even: Vec<u16>,
}

impl Monomial {
    pub fn odd_mask(&self) -> u64 {
        self.odd
    }

    pub fn even_factors(&self) -> &[u16] {
        &self.even
    }

    pub fn parity(&self) -> u8 {
        (self.odd.count_ones() % 2) as u8
    }

    pub fn is_unit(&self) -> bool {
        self.odd == 0 && self.even.is_empty()
    }
}

/// Sign of moving the odd factors of `b` past those of `a` into ascending order.
fn odd_sign(a: u64, b: u64) -> i64 {
    let mut swaps = 0u32;
    let mut rest = a;
    while rest != 0 {
        let i = rest.trailing_zeros();
        rest &= rest - 1;
        swaps += (b & ((1u64 << i) - 1)).count_ones();
    }
    if swaps % 2 == 0 { 1 } else { -1 }
}

fn merge_even(a: &[u16], b: &[u16]) -> Vec<u16> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct SuperElement {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl SuperElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(c: GaussianRational) -> Self {
        let mut x = Self::zero();
        x.add_term(Monomial::default(), c);
        x
    }

    pub fn one() -> Self {
        Self::scalar(GaussianRational::one())
    }

    pub fn odd(i: usize) -> Self {
        assert!(i < MAX_ODD, "odd generator index {} exceeds {}", i, MAX_ODD);
        let mut x = Self::zero();
        x.add_term(Monomial { odd: 1u64 << i, even: vec![] }, GaussianRational::one());
        x
    }

    pub fn even(i: usize) -> Self {
        let i = u16::try_from(i).expect("even generator index fits u16");
        let mut x = Self::zero();
        x.add_term(Monomial { odd: 0, even: vec![i] }, GaussianRational::one());
        x
    }

    pub fn add_term(&mut self, m: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_scalar(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.iter().next().filter(|(m, _)| m.is_unit()).map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    /// Parity if homogeneous; zero counts as even.
    pub fn parity(&self) -> Option<u8> {
        let mut it = self.terms.keys().map(Monomial::parity);
        let first = it.next().unwrap_or(0);
        if it.all(|p| p == first) { Some(first) } else { None }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SuperElement { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn super_mul(&self, o: &SuperElement) -> SuperElement {
        let mut out = SuperElement::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                if ma.odd & mb.odd != 0 {
                    continue;
                }
                let c = ca * cb;
                let c = if odd_sign(ma.odd, mb.odd) < 0 { -c } else { c };
                out.add_term(Monomial { odd: ma.odd | mb.odd, even: merge_even(&ma.even, &mb.even) }, c);
            }
        }
        out
    }

    /// Conjugates coefficients and reverses the order of odd factors.
    pub fn super_star(&self) -> SuperElement {
        SuperElement {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let k = m.odd.count_ones();
                    let c = c.conj();
                    (m.clone(), if (k * k.saturating_sub(1) / 2) % 2 == 1 { -c } else { c })
                })
                .collect(),
        }
    }

    /// Left derivative with respect to odd generator `i`.
    pub fn odd_derivative(&self, i: usize) -> SuperElement {
        let bit = 1u64 << i;
        let mut out = SuperElement::zero();
        for (m, c) in &self.terms {
            if m.odd & bit == 0 {
                continue;
            }
            let below = (m.odd & (bit - 1)).count_ones();
            let c = if below % 2 == 1 { -c } else { c.clone() };
            out.add_term(Monomial { odd: m.odd & !bit, even: m.even.clone() }, c);
        }
        out
    }

    /// Keeps the terms whose odd part restricted to `mask` has `count` factors.
    pub fn filter_odd_count(&self, mask: u64, count: u32) -> SuperElement {
        SuperElement {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| (m.odd & mask).count_ones() == count)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut gens: Vec<String> = (0..MAX_ODD).filter(|i| m.odd >> i & 1 == 1).map(|i| format!("θ{}", i)).collect();
                gens.extend(m.even.iter().map(|e| format!("x{}", e)));
                if gens.is_empty() { format!("{}", c) } else { format!("({})·{}", c, gens.join("·")) }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for SuperElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for SuperElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<'a> Add<&'a SuperElement> for &'a SuperElement {
    type Output = SuperElement;
    fn add(self, o: &SuperElement) -> SuperElement {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a SuperElement> for &'a SuperElement {
    type Output = SuperElement;
    fn sub(self, o: &SuperElement) -> SuperElement {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a SuperElement> for &'a SuperElement {
    type Output = SuperElement;
    fn mul(self, o: &SuperElement) -> SuperElement {
        self.super_mul(o)
    }
}

impl Neg for &SuperElement {
    type Output = SuperElement;
    fn neg(self) -> SuperElement {
        self.scale(&GaussianRational::int(-1))
    }
}

/// Hands out fresh generators. The first `frame` odd generators are reserved
/// for the exterior vectors `v_0 … v_{frame−1}`.
#[derive(Clone, Debug, Default)]
pub struct GeneratorPool {
    frame: usize,
    next_odd: usize,
    next_even: usize,
    labels: Vec<(String, u8, usize)>,
}

impl GeneratorPool {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_frame(dim: usize) -> Self {
        GeneratorPool { frame: dim, next_odd: dim, ..Self::default() }
    }

    pub fn frame(&self) -> usize {
        self.frame
    }

    /// Odd-generator mask of the reserved exterior vectors.
    pub fn frame_mask(&self) -> u64 {
        if self.frame == 0 { 0 } else { (1u64 << self.frame) - 1 }
    }

    /// The exterior vector `v_a`.
    pub fn v(&self, a: usize) -> SuperElement {
        assert!(a < self.frame, "v_{} outside the reserved frame", a);
        SuperElement::odd(a)
    }

    pub fn fresh(&mut self, label: &str, parity: u8) -> Result<SuperElement> {
        if parity == 1 {
            if self.next_odd >= MAX_ODD {
                return Err(Error::InvalidArgument(format!("more than {} odd generators", MAX_ODD)));
            }
            let i = self.next_odd;
            self.next_odd += 1;
            self.labels.push((label.to_string(), 1, i));
            Ok(SuperElement::odd(i))
        } else {
            let i = self.next_even;
            self.next_even += 1;
            self.labels.push((label.to_string(), 0, i));
            Ok(SuperElement::even(i))
        }
    }

    pub fn odd_used(&self) -> usize {
        self.next_odd
    }

    pub fn even_used(&self) -> usize {
        self.next_even
    }

    pub fn labels(&self) -> &[(String, u8, usize)] {
        &self.labels
    }
}

/// Square matrix with superalgebra entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SuperMatrix {
    n: usize,
    data: Vec<SuperElement>,
}

impl SuperMatrix {
    pub fn zeros(n: usize) -> Self {
        SuperMatrix { n, data: vec![SuperElement::zero(); n * n] }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &SuperElement {
        &self.data[i * self.n + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut SuperElement {
        &mut self.data[i * self.n + j]
    }

    /// `M ⊗ x`.
    pub fn from_exact(m: &ExactMatrix, x: &SuperElement) -> Self {
        let n = m.rows();
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let c = &m[(i, j)];
                if !c.is_zero() {
                    out.data[i * n + j] = x.scale(c);
                }
            }
        }
        out
    }

    pub fn identity_times(n: usize, x: &SuperElement) -> Self {
        Self::from_exact(&ExactMatrix::identity(n), x)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(SuperElement::is_zero)
    }

    pub fn map(&self, f: impl Fn(&SuperElement) -> SuperElement) -> Self {
        SuperMatrix { n: self.n, data: self.data.iter().map(f).collect() }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        self.map(|x| x.scale(c))
    }

    pub fn mul(&self, o: &SuperMatrix) -> SuperMatrix {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &o.data[k * n + j];
                    if b.is_zero() {
                        continue;
                    }
                    let p = a * b;
                    let e = &mut out.data[i * n + j];
                    *e = &*e + &p;
                }
            }
        }
        out
    }

    /// Exact matrix acting from the left.
    pub fn left_exact(&self, m: &ExactMatrix) -> SuperMatrix {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let c = &m[(i, k)];
                if c.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &self.data[k * n + j];
                    if !b.is_zero() {
                        let e = &mut out.data[i * n + j];
                        *e = &*e + &b.scale(c);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, o: &SuperMatrix) -> SuperMatrix {
        SuperMatrix { n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &SuperMatrix) -> SuperMatrix {
        SuperMatrix { n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }

    /// Entrywise `[v_a, ·]`: `η_aa` times the left derivative in `v_a`.
    pub fn contract(&self, a: usize, eta_aa: i64) -> SuperMatrix {
        let c = GaussianRational::int(eta_aa);
        self.map(|x| x.odd_derivative(a).scale(&c))
    }

    pub fn apply(&self, psi: &[SuperElement]) -> Vec<SuperElement> {
        let n = self.n;
        (0..n)
            .map(|i| {
                let mut acc = SuperElement::zero();
                for j in 0..n {
                    let a = &self.data[i * n + j];
                    if !a.is_zero() && !psi[j].is_zero() {
                        acc = &acc + &(a * &psi[j]);
                    }
                }
                acc
            })
            .collect()
    }
}

/// `Γ = Γ^a v_a` with `v_a` the reserved odd generators.
pub fn gamma_form(rep: &GammaRep, pool: &GeneratorPool) -> SuperMatrix {
    let n = rep.size();
    (0..rep.dim()).fold(SuperMatrix::zeros(n), |acc, a| acc.add(&SuperMatrix::from_exact(&rep.gamma_up(a), &pool.v(a))))
}

/// `Γ^N`.
pub fn gamma_form_power(rep: &GammaRep, pool: &GeneratorPool, n: usize) -> SuperMatrix {
    let g = gamma_form(rep, pool);
    (0..n).fold(SuperMatrix::identity_times(rep.size(), &SuperElement::one()), |acc, _| acc.mul(&g))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperSpinor {
    pub components: Vec<SuperElement>,
    pub parity: u8,
}

impl SuperSpinor {
    pub fn new(components: Vec<SuperElement>, parity: u8) -> Result<Self> {
        if components.iter().any(|c| !c.is_zero() && c.parity() != Some(parity)) {
            return Err(Error::InvalidArgument(format!("components are not homogeneous of parity {}", parity)));
        }
        Ok(SuperSpinor { components, parity })
    }

    /// Independent fresh generator per component.
    pub fn generic_dirac(pool: &mut GeneratorPool, label: &str, parity: u8, size: usize) -> Result<Self> {
        let comps = (0..size).map(|i| pool.fresh(&format!("{}{}", label, i), parity)).collect::<Result<Vec<_>>>()?;
        Self::new(comps, parity)
    }

    pub fn size(&self) -> usize {
        self.components.len()
    }

    pub fn star(&self) -> Vec<SuperElement> {
        self.components.iter().map(SuperElement::super_star).collect()
    }

    pub fn apply(&self, m: &ExactMatrix) -> SuperSpinor {
        let n = self.size();
        let comps = (0..n)
            .map(|i| {
                (0..n).fold(SuperElement::zero(), |acc, j| {
                    let c = &m[(i, j)];
                    if c.is_zero() { acc } else { &acc + &self.components[j].scale(c) }
                })
            })
            .collect();
        SuperSpinor { components: comps, parity: self.parity }
    }

    /// Dirac adjoint `ψ̄ = ψ†Γ_0` as a row of components.
    pub fn dirac_adjoint(&self, rep: &GammaRep) -> Vec<SuperElement> {
        let star = self.star();
        let g0 = rep.gamma(0);
        let n = self.size();
        (0..n)
            .map(|j| {
                (0..n).fold(SuperElement::zero(), |acc, i| {
                    let c = &g0[(i, j)];
                    if c.is_zero() { acc } else { &acc + &star[i].scale(c) }
                })
            })
            .collect()
    }
}

/// Real basis of the fixed space `{x : B x̄ = x}` of the real structure.
pub fn majorana_basis(b: &ExactMatrix) -> Vec<Vec<GaussianRational>> {
    let n = b.rows();
    let mut red = SparseReducer::new(2 * n);
    let mut out = Vec::new();
    for j in 0..n {
        let bj = b.col_vec(j);
        let plus: Vec<GaussianRational> = (0..n).map(|r| if r == j { &bj[r] + &GaussianRational::one() } else { bj[r].clone() }).collect();
        let minus: Vec<GaussianRational> = (0..n)
            .map(|r| {
                let e = if r == j { GaussianRational::one() } else { GaussianRational::zero() };
                &(&e - &bj[r]) * &GaussianRational::i()
            })
            .collect();
        for cand in [plus, minus] {
            let row: SparseRow = cand
                .iter()
                .enumerate()
                .flat_map(|(r, x)| {
                    [(r, GaussianRational::real(x.re.clone())), (n + r, GaussianRational::real(x.im.clone()))]
                })
                .filter(|(_, v)| !v.is_zero())
                .collect();
            if red.push(row) {
                out.push(cand);
            }
        }
    }
    out
}

/// Spinor `ψ = Σ_k u_k θ_k` over a real basis `u_k` of Majorana-fixed vectors,
/// with fresh generators `θ_k` of the requested parity.
pub fn generic_majorana(
    pool: &mut GeneratorPool,
    label: &str,
    parity: u8,
    conj: &ConjugationData,
    rep: &GammaRep,
) -> Result<SuperSpinor> {
    if conj.epsilon != 1 {
        return Err(Error::Quaternionic(format!("no Majorana spinors at D = {}, η = {}", rep.dim(), conj.eta)));
    }
    let basis = majorana_basis(&conj.b);
    let n = rep.size();
    let mut comps = vec![SuperElement::zero(); n];
    for (k, u) in basis.iter().enumerate() {
        let theta = pool.fresh(&format!("{}{}", label, k), parity)?;
        for (c, x) in comps.iter_mut().zip(u) {
            if !x.is_zero() {
                *c = &*c + &theta.scale(x);
            }
        }
    }
    SuperSpinor::new(comps, parity)
}

/// `Σ_{αβ} χ_α (C X)_{αβ} ψ_β` for a matrix `X` with superalgebra entries;
/// the entries sit between the two spinor components.
pub fn sandwich(chi: &SuperSpinor, c: &ExactMatrix, x: &SuperMatrix, psi: &SuperSpinor) -> SuperElement {
    let cx = x.left_exact(c);
    let n = chi.size();
    let mut acc = SuperElement::zero();
    for a in 0..n {
        if chi.components[a].is_zero() {
            continue;
        }
        for b in 0..n {
            let m = cx.get(a, b);
            if m.is_zero() || psi.components[b].is_zero() {
                continue;
            }
            acc = &acc + &(&(&chi.components[a] * m) * &psi.components[b]);
        }
    }
    acc
}

/// `χ̄Γ^{a_1⋯a_N}ψ = χ^t C Γ^{a_1⋯a_N} ψ` with upper indices.
pub fn bilinear(chi: &SuperSpinor, indices: &[usize], psi: &SuperSpinor, conj: &ConjugationData, rep: &GammaRep) -> Result<SuperElement> {
    let m = rep.gamma_anti_up(indices)?;
    Ok(sandwich(chi, &conj.c, &SuperMatrix::from_exact(&m, &SuperElement::one()), psi))
}

/// Form-valued `χ̄Γ^Nψ` with `Γ = Γ^a v_a`.
pub fn form_bilinear(
    chi: &SuperSpinor,
    n: usize,
    psi: &SuperSpinor,
    conj: &ConjugationData,
    rep: &GammaRep,
    pool: &GeneratorPool,
) -> SuperElement {
    sandwich(chi, &conj.c, &gamma_form_power(rep, pool, n), psi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_generators_anticommute() {
        let (a, b) = (SuperElement::odd(1), SuperElement::odd(2));
        assert_eq!(&a * &b, -&(&b * &a));
        assert!((&a * &a).is_zero());
        let x = SuperElement::even(0);
        assert_eq!(&x * &a, &a * &x);
    }

    #[test]
    fn star_reverses_odd_order() {
        let (a, b) = (SuperElement::odd(1), SuperElement::odd(2));
        let ab = &a * &b;
        assert_eq!(ab.super_star(), -&ab);
        let ia = a.scale(&GaussianRational::i());
        assert_eq!(ia.super_star(), a.scale(&GaussianRational::complex_int(0, -1)));
        assert_eq!(ab.super_star().super_star(), ab);
    }

    #[test]
    fn derivative_is_odd() {
        let (a, b, c) = (SuperElement::odd(0), SuperElement::odd(3), SuperElement::odd(5));
        let x = &(&a * &b) * &c;
        assert_eq!(x.odd_derivative(3), -&(&a * &c));
        assert_eq!(x.odd_derivative(0), &b * &c);
        assert!(x.odd_derivative(1).is_zero());
    }

    #[test]
    fn pool_freshness() {
        let mut pool = GeneratorPool::with_frame(4);
        let x = pool.fresh("a", 1).unwrap();
        let y = pool.fresh("b", 1).unwrap();
        assert_ne!(x, y);
        assert!(!(&x * &y).is_zero());
        assert_eq!(pool.odd_used(), 6);
        assert!((&x * &pool.v(0)).parity() == Some(0));
    }
}
