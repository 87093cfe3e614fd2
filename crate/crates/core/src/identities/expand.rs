//! Expansion of a spinor-space matrix in the antisymmetrized gamma basis.

use std::collections::BTreeMap;

use crate::conjugation::subsets;
use crate::error::{Error, Result};
use crate::exactnum::{ExactMatrix, GaussianRational};
use crate::gamma::GammaRep;

/// Coefficients `m_A` with `M = Σ_A m_A Γ^A`, over increasing index sets,
/// from `m_A = ((−1)^{|A|}/2^k) Tr(M Γ_{[A]})` with lower indices reversed.
/// Requires even `D`, where the basis spans all matrices.
pub fn expand_in_gamma_basis(m: &ExactMatrix, rep: &GammaRep) -> Result<BTreeMap<Vec<usize>, GaussianRational>> {
    if rep.dim() % 2 != 0 {
        return Err(Error::Dimension(format!("the gamma basis spans all matrices only for even D, got {}", rep.dim())));
    }
    if m.rows() != rep.size() || m.cols() != rep.size() {
        return Err(Error::Shape(format!("expected {}×{}, got {}×{}", rep.size(), rep.size(), m.rows(), m.cols())));
    }
    let mut out = BTreeMap::new();
    for r in 0..=rep.dim() {
        for set in subsets(rep.dim(), r) {
            let rev: Vec<usize> = set.iter().rev().copied().collect();
            let tr = (m * &rep.gamma_anti(&rev)?).trace();
            if tr.is_zero() {
                continue;
            }
            let sign = if r % 2 == 0 { 1 } else { -1 };
            out.insert(set, &tr * &GaussianRational::frac(sign, rep.size() as i64));
        }
    }
    Ok(out)
}

/// `Σ_A m_A Γ^A`.
pub fn reconstruct(coeffs: &BTreeMap<Vec<usize>, GaussianRational>, rep: &GammaRep) -> Result<ExactMatrix> {
    coeffs.iter().try_fold(ExactMatrix::zeros(rep.size(), rep.size()), |acc, (set, c)| Ok(&acc + &rep.gamma_anti_up(set)?.scale(c)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_elements_expand_to_themselves() {
        let rep = GammaRep::build(4).unwrap();
        let m = rep.gamma_anti_up(&[0, 2]).unwrap();
        let c = expand_in_gamma_basis(&m, &rep).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[&vec![0, 2]], GaussianRational::one());
    }

    #[test]
    fn odd_dimension_is_rejected() {
        let rep = GammaRep::build(5).unwrap();
        assert!(expand_in_gamma_basis(&rep.identity(), &rep).is_err());
    }
}
