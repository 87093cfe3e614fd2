//! Real and complex Clifford algebra classification, irrep counts and Weyl labels.

use std::fmt;

use serde::Serialize;

use crate::clifford::{blade_sign, Blade, Multivector, Signature};
use crate::error::{Error, Result};
use crate::exactnum::GaussianRational;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum Field {
    R,
    C,
    H,
}

impl Field {
    /// Real dimension of the field.
    pub fn real_dim(&self) -> u64 {
        match self {
            Field::R => 1,
            Field::C => 2,
            Field::H => 4,
        }
    }
}

/// `K(2^{N/2})` or `K(2^{N/2}) ⊕ K(2^{N/2})`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct AlgebraKind {
    pub field: Field,
    /// Matrix size is `2^{n/2}`; `n` is always even.
    pub n: u32,
    pub double: bool,
}

impl AlgebraKind {
    fn new(field: Field, n: usize, double: bool) -> Self {
        debug_assert!(n % 2 == 0);
        AlgebraKind { field, n: n as u32, double }
    }

    pub fn matrix_size(&self) -> u64 {
        1u64 << (self.n / 2)
    }

    pub fn blocks(&self) -> u64 {
        if self.double { 2 } else { 1 }
    }

    /// Dimension over the reals.
    pub fn real_dim(&self) -> u64 {
        self.blocks() * self.field.real_dim() * self.matrix_size() * self.matrix_size()
    }

    /// Dimension over `C` of a complex algebra.
    pub fn complex_dim(&self) -> u64 {
        self.blocks() * self.matrix_size() * self.matrix_size()
    }

    /// Real dimension of the center.
    pub fn center_dim(&self) -> u64 {
        let per_block = if self.field == Field::C { 2 } else { 1 };
        per_block * self.blocks()
    }

    /// Signature of the real quadratic form `x ↦ τ(x²)`, `τ` the normalized trace.
    pub fn trace_form_signature(&self) -> i64 {
        let m = self.matrix_size() as i64;
        let per_block = match self.field {
            Field::R => m,
            Field::C => 0,
            Field::H => -2 * m,
        };
        per_block * self.blocks() as i64
    }

    pub fn label(&self) -> String {
        let f = match self.field {
            Field::R => "R",
            Field::C => "C",
            Field::H => "H",
        };
        let one = format!("{}({})", f, self.matrix_size());
        if self.double { format!("{one}+{one}") } else { one }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Classification {
    pub full: AlgebraKind,
    pub even: AlgebraKind,
}

fn residue(sig: Signature) -> usize {
    (sig.r as i64 - sig.s as i64).rem_euclid(8) as usize
}

/// Table lookup of `C(r,s)` and `C_0(r,s)` keyed by `(r−s) mod 8`.
pub fn classify_real(sig: Signature) -> Result<Classification> {
    let d = sig.dim();
    if d == 0 {
        return Err(Error::InvalidSignature("need r + s >= 1".into()));
    }
    let full = match residue(sig) {
        0 | 6 => AlgebraKind::new(Field::R, d, false),
        2 | 4 => AlgebraKind::new(Field::H, d - 2, false),
        1 | 5 => AlgebraKind::new(Field::C, d - 1, false),
        3 => AlgebraKind::new(Field::H, d - 3, true),
        _ => AlgebraKind::new(Field::R, d - 1, true),
    };
    let even = match residue(sig) {
        1 | 7 => AlgebraKind::new(Field::R, d - 1, false),
        3 | 5 => AlgebraKind::new(Field::H, d - 3, false),
        2 | 6 => AlgebraKind::new(Field::C, d - 2, false),
        4 => AlgebraKind::new(Field::H, d - 4, true),
        _ => AlgebraKind::new(Field::R, d - 2, true),
    };
    Ok(Classification { full, even })
}

/// Complex Clifford algebra `C(D)` and its even part.
pub fn classify_complex(d: usize) -> Result<Classification> {
    if d == 0 {
        return Err(Error::Dimension("need D >= 1".into()));
    }
    Ok(if d % 2 == 0 {
        Classification {
            full: AlgebraKind::new(Field::C, d, false),
            even: AlgebraKind::new(Field::C, d - 2, true),
        }
    } else {
        Classification {
            full: AlgebraKind::new(Field::C, d - 1, true),
            even: AlgebraKind::new(Field::C, d - 1, false),
        }
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Structure {
    Real,
    Complex,
    Quaternionic,
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Structure::Real => "real",
            Structure::Complex => "complex",
            Structure::Quaternionic => "quaternionic",
        })
    }
}

/// Eigenvalue of `v_*` labelling a Weyl representation.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum WeylLabel {
    PlusOne,
    MinusOne,
    PlusI,
    MinusI,
}

impl WeylLabel {
    pub fn value(&self) -> GaussianRational {
        match self {
            WeylLabel::PlusOne => GaussianRational::int(1),
            WeylLabel::MinusOne => GaussianRational::int(-1),
            WeylLabel::PlusI => GaussianRational::i(),
            WeylLabel::MinusI => -GaussianRational::i(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RepCensus {
    pub pinors: u8,
    pub spinors: u8,
    pub structure: Structure,
    /// Dimension of an irreducible spinor module over its structure field.
    pub spinor_dim: u64,
    pub weyl: Option<[WeylLabel; 2]>,
}

pub fn rep_census(sig: Signature) -> Result<RepCensus> {
    let cls = classify_real(sig)?;
    let diff = sig.r as i64 - sig.s as i64;
    let pinors = if diff.rem_euclid(2) == 1 { 2 } else { 1 };
    let spinors = if diff.rem_euclid(2) == 0 { 2 } else { 1 };
    let structure = match residue(sig) {
        0 | 1 | 7 => Structure::Real,
        2 | 6 => Structure::Complex,
        _ => Structure::Quaternionic,
    };
    let weyl = if sig.dim() % 2 == 0 {
        Some(if diff.rem_euclid(4) == 0 {
            [WeylLabel::PlusOne, WeylLabel::MinusOne]
        } else {
            [WeylLabel::PlusI, WeylLabel::MinusI]
        })
    } else {
        None
    };
    Ok(RepCensus { pinors, spinors, structure, spinor_dim: cls.even.matrix_size(), weyl })
}

/// `v_*²` predicted for even `D`: `(-1)^{(r-s)/2}`.
pub fn volume_square_formula(sig: Signature) -> Option<i64> {
    if sig.dim() % 2 != 0 {
        return None;
    }
    let half = (sig.r as i64 - sig.s as i64) / 2;
    Some(if half.rem_euclid(2) == 0 { 1 } else { -1 })
}

/// Structural data computed from the blade basis, independent of the tables.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct StructuralData {
    pub dim: u64,
    pub center_dim: u64,
    pub trace_signature: i64,
}

fn blade_square(b: Blade, sig: Signature) -> i64 {
    blade_sign(b, b, sig)
}

/// Center dimension of the span of `basis` by solving `[x, g] = 0` for each `g`.
///
/// `[e_B, g] = (c_Bg − c_gB) e_{BΔg}` and `B ↦ BΔg` is injective, so every
/// equation of the system has at most one unknown; a nonzero coefficient pins
/// that unknown to zero.
fn center_dim(sig: Signature, basis: &[Blade], gens: &[Blade]) -> u64 {
    let mut pinned = vec![false; basis.len()];
    for &g in gens {
        for (i, &b) in basis.iter().enumerate() {
            if blade_sign(b, g, sig) != blade_sign(g, b, sig) {
                pinned[i] = true;
            }
        }
    }
    pinned.iter().filter(|p| !**p).count() as u64
}

/// Dimension, center dimension and trace-form signature of `C(r,s)`.
pub fn structural_full(sig: Signature) -> StructuralData {
    let basis: Vec<Blade> = (0..=sig.full_mask()).map(Blade).collect();
    let gens: Vec<Blade> = (0..sig.dim()).map(|a| Blade(1 << a)).collect();
    let trace_signature = basis.iter().map(|&b| blade_square(b, sig)).sum();
    StructuralData { dim: basis.len() as u64, center_dim: center_dim(sig, &basis, &gens), trace_signature }
}

/// Same data for the even subalgebra, generated by `v_0 v_a`.
pub fn structural_even(sig: Signature) -> StructuralData {
    let basis: Vec<Blade> = (0..=sig.full_mask()).filter(|m| m.count_ones() % 2 == 0).map(Blade).collect();
    let gens: Vec<Blade> = (1..sig.dim()).map(|a| Blade(1 | (1 << a))).collect();
    let trace_signature = basis.iter().map(|&b| blade_square(b, sig)).sum();
    StructuralData { dim: basis.len() as u64, center_dim: center_dim(sig, &basis, &gens), trace_signature }
}

/// Complex algebra: only dimension and complex center dimension are meaningful.
pub fn structural_complex(d: usize) -> (u64, u64) {
    let sig = Signature::new(d, 0).expect("D within range");
    let s = structural_full(sig);
    (s.dim, s.center_dim)
}

fn expected(kind: &AlgebraKind) -> StructuralData {
    StructuralData { dim: kind.real_dim(), center_dim: kind.center_dim(), trace_signature: kind.trace_form_signature() }
}

/// Outcome of validating one signature's table entries.
#[derive(Clone, Debug, Serialize)]
pub struct Validation {
    pub r: usize,
    pub s: usize,
    pub full: AlgebraKind,
    pub even: AlgebraKind,
    pub full_ok: bool,
    pub even_ok: bool,
    pub volume_ok: bool,
}

impl Validation {
    pub fn ok(&self) -> bool {
        self.full_ok && self.even_ok && self.volume_ok
    }
}

/// Checks the encoded table entries against structure computed from blades.
pub fn validate(sig: Signature) -> Result<Validation> {
    let cls = classify_real(sig)?;
    let full_ok = structural_full(sig) == expected(&cls.full);
    let even_ok = structural_even(sig) == expected(&cls.even);
    let volume_ok = match volume_square_formula(sig) {
        None => true,
        Some(e) => {
            let v = Multivector::volume(sig);
            v.mul(&v) == Multivector::scalar(sig, GaussianRational::int(e))
        }
    };
    Ok(Validation { r: sig.r, s: sig.s, full: cls.full, even: cls.even, full_ok, even_ok, volume_ok })
}

/// Record for one row of the rendered tables.
#[derive(Clone, Debug, Serialize)]
pub struct ClassRecord {
    pub r: usize,
    pub s: usize,
    pub full: String,
    pub even: String,
    pub pinors: u8,
    pub spinors: u8,
    pub structure: Structure,
}

pub fn record(sig: Signature) -> Result<ClassRecord> {
    let c = classify_real(sig)?;
    let rc = rep_census(sig)?;
    Ok(ClassRecord {
        r: sig.r,
        s: sig.s,
        full: c.full.label(),
        even: c.even.label(),
        pinors: rc.pinors,
        spinors: rc.spinors,
        structure: rc.structure,
    })
}
