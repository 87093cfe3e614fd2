//! Real Clifford algebras on bitmask blades.
//!
//! Generators satisfy `v_a v_a = -η_aa`. In signature `(r, s)` the first `s`
//! generators are timelike (`η = -1`, square `+1`) and the remaining `r` are
//! spacelike (`η = +1`, square `-1`), so Lorentzian `(d, 1)` has index 0 timelike.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::{ExactMatrix, GaussianRational};

pub const MAX_DIM: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Signature {
    pub r: usize,
    pub s: usize,
}

impl Signature {
    pub fn new(r: usize, s: usize) -> Result<Self> {
        if r + s > MAX_DIM {
            return Err(Error::InvalidSignature(format!("D = {} exceeds {}", r + s, MAX_DIM)));
        }
        Ok(Signature { r, s })
    }

    /// Mostly-plus Lorentzian signature `(D-1, 1)`.
    pub fn lorentzian(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidSignature("Lorentzian needs D >= 1".into()));
        }
        Self::new(d - 1, 1)
    }

    pub fn dim(&self) -> usize {
        self.r + self.s
    }

    /// Diagonal metric entry `η_aa`.
    pub fn eta(&self, a: usize) -> i64 {
        if a < self.s { -1 } else { 1 }
    }

    /// `η_ab` for basis indices.
    pub fn eta_ab(&self, a: usize, b: usize) -> i64 {
        if a == b { self.eta(a) } else { 0 }
    }

    /// The scalar `v_a v_a = -η_aa`.
    pub fn square(&self, a: usize) -> i64 {
        -self.eta(a)
    }

    pub fn full_mask(&self) -> u32 {
        if self.dim() == 32 { u32::MAX } else { (1u32 << self.dim()) - 1 }
    }

    pub fn metric(&self) -> ExactMatrix {
        let d = self.dim();
        let mut m = ExactMatrix::zeros(d, d);
        for a in 0..d {
            m[(a, a)] = GaussianRational::int(self.eta(a));
        }
        m
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.r, self.s)
    }
}

/// Basis blade identified by its generator bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Blade(pub u32);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    pub fn from_indices(idx: &[usize]) -> Option<Blade> {
        let mut m = 0u32;
        for &i in idx {
            let bit = 1u32 << i;
            if m & bit != 0 {
                return None;
            }
            m |= bit;
        }
        Some(Blade(m))
    }

    pub fn grade(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..32).filter(|i| self.0 & (1 << i) != 0).collect()
    }
}

/// Number of transpositions needed to sort the concatenation `x ++ y`.
pub fn reorder_sign(x: u32, y: u32) -> i64 {
    let mut swaps = 0u32;
    let mut a = x >> 1;
    while a != 0 {
        swaps += (a & y).count_ones();
        a >>= 1;
    }
    if swaps % 2 == 0 { 1 } else { -1 }
}

/// Sign of the Clifford product of two blades.
pub fn blade_sign(x: Blade, y: Blade, sig: Signature) -> i64 {
    let mut sign = reorder_sign(x.0, y.0);
    let mut common = x.0 & y.0;
    while common != 0 {
        let a = common.trailing_zeros() as usize;
        sign *= sig.square(a);
        common &= common - 1;
    }
    sign
}

/// Clifford product of two blades: `(±1, x Δ y)`.
pub fn blade_mul(x: Blade, y: Blade, sig: Signature) -> (GaussianRational, Blade) {
    (GaussianRational::int(blade_sign(x, y, sig)), Blade(x.0 ^ y.0))
}

/// Exterior product of two blades, zero when they share a generator.
pub fn blade_wedge(x: Blade, y: Blade) -> Option<(i64, Blade)> {
    if x.0 & y.0 != 0 {
        return None;
    }
    Some((reorder_sign(x.0, y.0), Blade(x.0 | y.0)))
}

/// Sparse element of `C(r,s)`; with [`Multivector::wedge`] the same container
/// holds exterior-algebra elements.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Multivector {
    pub sig: Signature,
    terms: BTreeMap<Blade, GaussianRational>,
}

impl Multivector {
    pub fn zero(sig: Signature) -> Self {
        Multivector { sig, terms: BTreeMap::new() }
    }

    pub fn scalar(sig: Signature, c: GaussianRational) -> Self {
        Self::blade(sig, Blade::SCALAR, c)
    }

    pub fn one(sig: Signature) -> Self {
        Self::scalar(sig, GaussianRational::one())
    }

    pub fn blade(sig: Signature, b: Blade, c: GaussianRational) -> Self {
        let mut m = Self::zero(sig);
        m.add_term(b, c);
        m
    }

    /// Basis vector `v_a`.
    pub fn gen(sig: Signature, a: usize) -> Self {
        assert!(a < sig.dim(), "generator index out of range");
        Self::blade(sig, Blade(1 << a), GaussianRational::one())
    }

    /// Vector `Σ c_a v_a`.
    pub fn vector(sig: Signature, coeffs: &[GaussianRational]) -> Self {
        let mut m = Self::zero(sig);
        for (a, c) in coeffs.iter().enumerate() {
            m.add_term(Blade(1 << a), c.clone());
        }
        m
    }

    /// Volume element `v_* = v_0 v_1 ⋯ v_{D-1}`.
    pub fn volume(sig: Signature) -> Self {
        Self::blade(sig, Blade(sig.full_mask()), GaussianRational::one())
    }

    pub fn add_term(&mut self, b: Blade, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(b).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&b);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, b: Blade) -> GaussianRational {
        self.terms.get(&b).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` when the element is the scalar `c` (including zero).
    pub fn as_scalar(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.get(&Blade::SCALAR).cloned(),
            _ => None,
        }
    }

    fn check_sig(&self, o: &Multivector) -> Result<()> {
        if self.sig != o.sig {
            return Err(Error::SignatureMismatch(format!("{} vs {}", self.sig, o.sig)));
        }
        Ok(())
    }

    pub fn try_mul(&self, o: &Multivector) -> Result<Multivector> {
        self.check_sig(o)?;
        let mut out = Self::zero(self.sig);
        for (bx, cx) in &self.terms {
            for (by, cy) in &o.terms {
                let (s, b) = blade_mul(*bx, *by, self.sig);
                out.add_term(b, &(cx * cy) * &s);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, o: &Multivector) -> Multivector {
        self.try_mul(o).expect("signature mismatch")
    }

    pub fn wedge(&self, o: &Multivector) -> Multivector {
        assert_eq!(self.sig, o.sig, "signature mismatch");
        let mut out = Self::zero(self.sig);
        for (bx, cx) in &self.terms {
            for (by, cy) in &o.terms {
                if let Some((s, b)) = blade_wedge(*bx, *by) {
                    out.add_term(b, (cx * cy).scale(&crate::exactnum::rat(s)));
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Multivector) -> Multivector {
        assert_eq!(self.sig, o.sig, "signature mismatch");
        let mut out = self.clone();
        for (b, c) in &o.terms {
            out.add_term(*b, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Multivector) -> Multivector {
        self.add(&o.scale(&GaussianRational::int(-1)))
    }

    pub fn scale(&self, c: &GaussianRational) -> Multivector {
        let mut out = Self::zero(self.sig);
        for (b, x) in &self.terms {
            out.add_term(*b, x * c);
        }
        out
    }

    pub fn commutator(&self, o: &Multivector) -> Multivector {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn anticommutator(&self, o: &Multivector) -> Multivector {
        self.mul(o).add(&o.mul(self))
    }

    fn map_grades(&self, f: impl Fn(usize) -> i64) -> Multivector {
        let mut out = Self::zero(self.sig);
        for (b, c) in &self.terms {
            out.add_term(*b, c * &GaussianRational::int(f(b.grade())));
        }
        out
    }

    /// Grade projection.
    pub fn grade_part(&self, k: usize) -> Multivector {
        let mut out = Self::zero(self.sig);
        for (b, c) in &self.terms {
            if b.grade() == k {
                out.add_term(*b, c.clone());
            }
        }
        out
    }

    /// `Some(k)` when every term has grade `k`.
    pub fn homogeneous_grade(&self) -> Option<usize> {
        let mut g = None;
        for b in self.terms.keys() {
            match g {
                None => g = Some(b.grade()),
                Some(k) if k != b.grade() => return None,
                _ => {}
            }
        }
        g
    }

    /// Parity of a pure element: `Some(0)` even, `Some(1)` odd, `None` mixed or zero.
    pub fn parity(&self) -> Option<usize> {
        let mut p = None;
        for b in self.terms.keys() {
            let q = b.grade() % 2;
            match p {
                None => p = Some(q),
                Some(x) if x != q => return None,
                _ => {}
            }
        }
        p
    }

    /// Coefficient-wise complex conjugation.
    pub fn conj(&self) -> Multivector {
        let mut out = Self::zero(self.sig);
        for (b, c) in &self.terms {
            out.add_term(*b, c.conj());
        }
        out
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(b, c)| {
                let idx: Vec<String> = b.indices().iter().map(|i| i.to_string()).collect();
                format!("{} * e{{{}}}", c, idx.join(","))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Grading automorphism: negates odd-grade terms.
pub fn grading(x: &Multivector) -> Multivector {
    x.map_grades(|k| if k % 2 == 0 { 1 } else { -1 })
}

/// Reversal anti-automorphism: grade `k` picks up `(-1)^{k(k-1)/2}`.
pub fn reversal(x: &Multivector) -> Multivector {
    x.map_grades(|k| if (k * k.saturating_sub(1) / 2) % 2 == 0 { 1 } else { -1 })
}

/// Canonical linear isomorphism to the exterior algebra, sending the blade
/// `v_{a1}⋯v_{ak}` (ascending indices) to `v_{a1}∧⋯∧v_{ak}`.
pub fn sigma_iso(x: &Multivector) -> Multivector {
    x.clone()
}

/// Inverse of [`sigma_iso`].
pub fn sigma_inv(x: &Multivector) -> Multivector {
    x.clone()
}

/// Interior contraction `[v_a, ·]` on the exterior algebra.
pub fn contract(a: usize, x: &Multivector) -> Multivector {
    let bit = 1u32 << a;
    let eta = GaussianRational::int(x.sig.eta(a));
    let mut out = Multivector::zero(x.sig);
    for (b, c) in x.terms() {
        if b.0 & bit == 0 {
            continue;
        }
        let before = (b.0 & (bit - 1)).count_ones();
        let s = if before % 2 == 0 { eta.clone() } else { -&eta };
        out.add_term(Blade(b.0 ^ bit), c * &s);
    }
    out
}

/// Inverse of a versor `S = u_1⋯u_k` via `S^{-1} = t(S) / (S t(S))`.
pub fn versor_inverse(s: &Multivector) -> Result<Multivector> {
    let rev = reversal(s);
    let n = s.mul(&rev);
    match n.as_scalar() {
        Some(c) if !c.is_zero() => Ok(rev.scale(&c.inv().expect("nonzero"))),
        _ => Err(Error::NotInvertible(format!("S t(S) = {} is not a nonzero scalar", n))),
    }
}

/// Twisted adjoint action `α(S) u S^{-1}`.
pub fn twisted_adjoint(s: &Multivector, u: &Multivector) -> Result<Multivector> {
    if !(u.is_zero() || u.homogeneous_grade() == Some(1)) {
        return Err(Error::InvalidArgument("u must be a vector".into()));
    }
    let inv = versor_inverse(s)?;
    let out = grading(s).try_mul(u)?.try_mul(&inv)?;
    if !(out.is_zero() || out.homogeneous_grade() == Some(1)) {
        return Err(Error::NotInvertible(format!("S is not in the Clifford group: image {}", out)));
    }
    Ok(out)
}

/// Symmetric bilinear form `η(u, w)` on vectors.
pub fn eta_form(u: &Multivector, w: &Multivector) -> GaussianRational {
    let mut acc = GaussianRational::zero();
    for (b, c) in u.terms() {
        if b.grade() != 1 {
            continue;
        }
        let a = b.0.trailing_zeros() as usize;
        acc += &(&(c * &w.coeff(*b)) * &GaussianRational::int(u.sig.eta(a)));
    }
    acc
}

/// Spin generator `v_ab = (1/4)[v_a, v_b]`.
pub fn spin_generator(sig: Signature, a: usize, b: usize) -> Multivector {
    let va = Multivector::gen(sig, a);
    let vb = Multivector::gen(sig, b);
    va.commutator(&vb).scale(&GaussianRational::frac(1, 4))
}

/// Matrix of `u ↦ [v_ab, u]` on `V`: entry `(d, c)` is `δ^d_b η_ac − δ^d_a η_bc`.
pub fn spin_generator_matrix(a: usize, b: usize, sig: Signature) -> Result<ExactMatrix> {
    let d = sig.dim();
    if a >= d || b >= d {
        return Err(Error::Index(format!("generator index out of range for D={}", d)));
    }
    if a == b {
        return Err(Error::InvalidArgument("spin generator needs a != b".into()));
    }
    let mut m = ExactMatrix::zeros(d, d);
    for row in 0..d {
        for col in 0..d {
            let mut v = 0;
            if row == b {
                v += sig.eta_ab(a, col);
            }
            if row == a {
                v -= sig.eta_ab(b, col);
            }
            m[(row, col)] = GaussianRational::int(v);
        }
    }
    Ok(m)
}

/// Coordinates of a grade-1 element.
pub fn vector_coords(x: &Multivector) -> Vec<GaussianRational> {
    (0..x.sig.dim()).map(|a| x.coeff(Blade(1 << a))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;

    fn sig(r: usize, s: usize) -> Signature {
        Signature::new(r, s).unwrap()
    }

    fn g(n: i64) -> GaussianRational {
        GaussianRational::int(n)
    }

    #[test]
    fn generator_square_in_one_zero() {
        let (c, b) = blade_mul(Blade(1), Blade(1), sig(1, 0));
        assert_eq!(c, g(-1));
        assert_eq!(b, Blade::SCALAR);
    }

    #[test]
    fn anticommuting_generators() {
        let s = sig(2, 1);
        assert_eq!(blade_mul(Blade(0b001), Blade(0b010), s), (g(1), Blade(0b011)));
        assert_eq!(blade_mul(Blade(0b010), Blade(0b001), s), (g(-1), Blade(0b011)));
        assert_eq!(blade_mul(Blade::SCALAR, Blade(0b110), s), (g(1), Blade(0b110)));
    }

    #[test]
    fn volume_square_lorentz_four() {
        let s = sig(3, 1);
        let v = Multivector::volume(s);
        assert_eq!(v.mul(&v), Multivector::scalar(s, g(-1)));
    }

    #[test]
    fn sum_of_vectors_squares_to_minus_eta() {
        let s = sig(1, 1);
        let u = Multivector::gen(s, 0).add(&Multivector::gen(s, 1));
        let expect = -(GaussianRational::int(-1) + GaussianRational::int(1));
        assert_eq!(u.mul(&u), Multivector::scalar(s, expect));
    }

    #[test]
    fn grading_and_reversal_examples() {
        let s = sig(3, 0);
        let v = Multivector::gen(s, 1);
        assert_eq!(grading(&v), v.scale(&g(-1)));
        let v123 = Multivector::gen(s, 0).mul(&Multivector::gen(s, 1)).mul(&Multivector::gen(s, 2));
        let rev_manual = Multivector::gen(s, 2).mul(&Multivector::gen(s, 1)).mul(&Multivector::gen(s, 0));
        assert_eq!(reversal(&v123), rev_manual);
        assert_eq!(rev_manual, v123.scale(&g(-1)));
    }

    #[test]
    fn sigma_sends_products_of_orthogonal_vectors_to_wedges() {
        let s = sig(2, 2);
        let (a, b) = (Multivector::gen(s, 0), Multivector::gen(s, 3));
        assert_eq!(sigma_iso(&a.mul(&b)), a.wedge(&b));
        let sq = sigma_iso(&a.mul(&a));
        assert_eq!(sq, Multivector::scalar(s, g(-s.eta(0))));
        assert_eq!(sigma_inv(&sigma_iso(&Multivector::one(s))), Multivector::one(s));
    }

    #[test]
    fn contraction_examples() {
        let s = sig(3, 1);
        let v01 = Multivector::gen(s, 0).wedge(&Multivector::gen(s, 1));
        assert_eq!(contract(0, &v01), Multivector::gen(s, 1).scale(&g(-1)));
        assert!(contract(2, &v01).is_zero());
        assert!(contract(1, &Multivector::one(s)).is_zero());
    }

    #[test]
    fn reflections() {
        let s = sig(3, 0);
        let v1 = Multivector::gen(s, 1);
        let v2 = Multivector::gen(s, 2);
        assert_eq!(twisted_adjoint(&v1, &v1).unwrap(), v1.scale(&g(-1)));
        assert_eq!(twisted_adjoint(&v1, &v2).unwrap(), v2);
        assert_eq!(twisted_adjoint(&Multivector::one(s), &v2).unwrap(), v2);
    }

    #[test]
    fn rational_unit_vector_reflection_preserves_eta() {
        let s = sig(3, 1);
        let n = Multivector::vector(
            s,
            &[g(0), GaussianRational::real(ratio(3, 5)), GaussianRational::real(ratio(4, 5)), g(0)],
        );
        for a in 0..4 {
            for b in 0..4 {
                let (u, w) = (Multivector::gen(s, a), Multivector::gen(s, b));
                let lu = twisted_adjoint(&n, &u).unwrap();
                let lw = twisted_adjoint(&n, &w).unwrap();
                assert_eq!(eta_form(&lu, &lw), eta_form(&u, &w));
            }
        }
    }

    #[test]
    fn zero_is_not_invertible() {
        let s = sig(2, 0);
        assert!(twisted_adjoint(&Multivector::zero(s), &Multivector::gen(s, 0)).is_err());
    }

    #[test]
    fn spin_matrix_example_and_antisymmetry() {
        let s = sig(3, 1);
        let m = spin_generator_matrix(0, 1, s).unwrap();
        for r in 0..4 {
            for c in 0..4 {
                let expect = match (r, c) {
                    (1, 0) | (0, 1) => -1,
                    _ => 0,
                };
                assert_eq!(m[(r, c)], g(expect));
            }
        }
        let n = spin_generator_matrix(1, 0, s).unwrap();
        assert_eq!(m, -&n);
        assert!(spin_generator_matrix(2, 2, s).is_err());
    }

    #[test]
    fn spin_matrix_is_adjoint_action() {
        let s = sig(2, 2);
        for a in 0..4 {
            for b in 0..4 {
                if a == b {
                    continue;
                }
                let vab = spin_generator(s, a, b);
                let m = spin_generator_matrix(a, b, s).unwrap();
                for c in 0..4 {
                    let img = vab.commutator(&Multivector::gen(s, c));
                    let col = m.col_vec(c);
                    assert_eq!(vector_coords(&img), col);
                    assert!(img.is_zero() || img.homogeneous_grade() == Some(1));
                }
            }
        }
    }

    #[test]
    fn render_is_ordered_by_mask() {
        let s = sig(3, 0);
        let x = Multivector::gen(s, 2).add(&Multivector::scalar(s, g(2))).add(&Multivector::gen(s, 0).wedge(&Multivector::gen(s, 1)).scale(&g(-3)));
        assert_eq!(x.render(), "2 * e{} + -3 * e{0,1} + 1 * e{2}");
    }
}
