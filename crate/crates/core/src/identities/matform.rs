//! Matrix-valued exterior forms `Σ_A M_A ⊗ v_A`, with `v_A` an increasing
//! wedge of basis vectors.

use std::collections::BTreeMap;

use crate::clifford::reorder_sign;
use crate::error::{Error, Result};
use crate::exactnum::{ExactMatrix, GaussianRational};
use crate::gamma::GammaRep;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatForm {
    n: usize,
    dim: usize,
    terms: BTreeMap<u32, ExactMatrix>,
}

impl MatForm {
    pub fn zero(n: usize, dim: usize) -> Self {
        MatForm { n, dim, terms: BTreeMap::new() }
    }

    /// `M ⊗ 1`.
    pub fn scalar_form(m: ExactMatrix, dim: usize) -> Self {
        Self::term(m, 0, dim)
    }

    /// `M ⊗ v_A` for a blade mask `A`.
    pub fn term(m: ExactMatrix, mask: u32, dim: usize) -> Self {
        let mut x = Self::zero(m.rows(), dim);
        x.add_term(mask, m);
        x
    }

    /// `Id ⊗ v_a`.
    pub fn v(n: usize, dim: usize, a: usize) -> Self {
        Self::term(ExactMatrix::identity(n), 1 << a, dim)
    }

    /// `Γ = Γ^a v_a`.
    pub fn gamma(rep: &GammaRep) -> Self {
        let mut x = Self::zero(rep.size(), rep.dim());
        for a in 0..rep.dim() {
            x.add_term(1 << a, rep.gamma_up(a));
        }
        x
    }

    /// `Γ^N`.
    pub fn gamma_power(rep: &GammaRep, n: usize) -> Self {
        let g = Self::gamma(rep);
        (0..n).fold(Self::scalar_form(rep.identity(), rep.dim()), |acc, _| acc.mul(&g))
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn add_term(&mut self, mask: u32, m: ExactMatrix) {
        if m.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&mask) {
            Some(old) => &old + &m,
            None => m,
        };
        if !merged.is_zero() {
            self.terms.insert(mask, merged);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &ExactMatrix)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mask: u32) -> ExactMatrix {
        self.terms.get(&mask).cloned().unwrap_or_else(|| ExactMatrix::zeros(self.n, self.n))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Form degree if homogeneous (zero has none).
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|m| m.count_ones() as usize);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    fn check(&self, o: &MatForm) -> Result<()> {
        if self.n != o.n || self.dim != o.dim {
            return Err(Error::Shape(format!("MatForm {}×{}/D={} vs {}×{}/D={}", self.n, self.n, self.dim, o.n, o.n, o.dim)));
        }
        Ok(())
    }

    /// `(A⊗α)(B⊗β) = AB ⊗ α∧β`.
    pub fn try_mul(&self, o: &MatForm) -> Result<MatForm> {
        self.check(o)?;
        let mut out = MatForm::zero(self.n, self.dim);
        for (&a, ma) in &self.terms {
            for (&b, mb) in &o.terms {
                if a & b != 0 {
                    continue;
                }
                let p = ma * mb;
                out.add_term(a | b, if reorder_sign(a, b) < 0 { -&p } else { p });
            }
        }
        Ok(out)
    }

    pub fn mul(&self, o: &MatForm) -> MatForm {
        self.try_mul(o).expect("matching MatForm shapes")
    }

    pub fn try_add(&self, o: &MatForm) -> Result<MatForm> {
        self.check(o)?;
        let mut out = self.clone();
        for (&m, x) in &o.terms {
            out.add_term(m, x.clone());
        }
        Ok(out)
    }

    pub fn add(&self, o: &MatForm) -> MatForm {
        self.try_add(o).expect("matching MatForm shapes")
    }

    pub fn sub(&self, o: &MatForm) -> MatForm {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> MatForm {
        self.scale(&GaussianRational::int(-1))
    }

    pub fn scale(&self, c: &GaussianRational) -> MatForm {
        let mut out = MatForm::zero(self.n, self.dim);
        for (&m, x) in &self.terms {
            out.add_term(m, x.scale(c));
        }
        out
    }

    pub fn scale_int(&self, k: i64) -> MatForm {
        self.scale(&GaussianRational::int(k))
    }

    /// Matrix acting from the left on every coefficient.
    pub fn left_matrix(&self, m: &ExactMatrix) -> MatForm {
        let mut out = MatForm::zero(self.n, self.dim);
        for (&k, x) in &self.terms {
            out.add_term(k, m * x);
        }
        out
    }

    /// `[v_a, X]` on the exterior part, `η_aa = eta_aa`.
    pub fn contract(&self, a: usize, eta_aa: i64) -> MatForm {
        let bit = 1u32 << a;
        let mut out = MatForm::zero(self.n, self.dim);
        for (&m, x) in &self.terms {
            if m & bit == 0 {
                continue;
            }
            let below = (m & (bit - 1)).count_ones() as i64;
            let s = if below % 2 == 0 { eta_aa } else { -eta_aa };
            out.add_term(m ^ bit, if s < 0 { -x } else { x.clone() });
        }
        out
    }

    /// `[Γ, X] = Γ^c [v_c, X]`.
    pub fn gamma_bracket(&self, rep: &GammaRep) -> MatForm {
        (0..self.dim).fold(MatForm::zero(self.n, self.dim), |acc, c| {
            acc.add(&self.contract(c, rep.eta(c)).left_matrix(&rep.gamma_up(c)))
        })
    }

    /// `[α, X]_V = α^{ac} v_a [v_c, X]` for `α = ½ α^{ac} v_a v_c` given by
    /// its antisymmetric coefficient matrix.
    pub fn so_action(&self, alpha: &[Vec<GaussianRational>], rep: &GammaRep) -> MatForm {
        let mut out = MatForm::zero(self.n, self.dim);
        for a in 0..self.dim {
            for c in 0..self.dim {
                if alpha[a][c].is_zero() {
                    continue;
                }
                let term = MatForm::v(self.n, self.dim, a).mul(&self.contract(c, rep.eta(c)));
                out = out.add(&term.scale(&alpha[a][c]));
            }
        }
        out
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(&m, x)| {
                let idx: Vec<String> = (0..self.dim).filter(|a| m >> a & 1 == 1).map(|a| a.to_string()).collect();
                let blade = if idx.is_empty() { "1".to_string() } else { format!("v{{{}}}", idx.join(",")) };
                match x.as_scalar() {
                    Some(c) => format!("({})·Id ⊗ {}", c, blade),
                    None => format!("{} ⊗ {}", x, blade),
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_squared_is_antisymmetrized() {
        let rep = GammaRep::build(4).unwrap();
        let g2 = MatForm::gamma_power(&rep, 2);
        let mut expect = MatForm::zero(4, 4);
        for a in 0..4 {
            for b in 0..4 {
                if a != b {
                    let sign = if a < b { 1 } else { -1 };
                    let m = rep.gamma_anti_up(&[a, b]).unwrap();
                    expect.add_term((1 << a) | (1 << b), m.scale(&GaussianRational::int(sign)));
                }
            }
        }
        assert_eq!(g2, expect);
    }

    #[test]
    fn contraction_of_gamma_lowers_index() {
        let rep = GammaRep::build(4).unwrap();
        let g = MatForm::gamma(&rep);
        for a in 0..4 {
            assert_eq!(g.contract(a, rep.eta(a)), MatForm::scalar_form(rep.gamma(a).clone(), 4));
        }
        assert!(MatForm::scalar_form(rep.identity(), 4).contract(0, -1).is_zero());
    }
}
