//! Characteristic 2 with H = k[Z_2]: modules are complexes with d = g + 1.

use std::sync::Arc;

use super::algebra::DerivationAlgebra;
use super::homotopy::is_homotopy_trivial;
use super::module::SmashModule;
use crate::error::{Error, Result};
use crate::field::Matrix;
use crate::grmod::FamilyKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DgReport {
    pub rank: usize,
    pub kernel_dim: usize,
    pub image_dim: usize,
    pub homotopy_trivial: bool,
    /// ker d = im d.
    pub derived_trivial: bool,
}

impl DgReport {
    /// Homotopy-trivial modules must be acyclic.
    pub fn consistent(&self) -> bool {
        !self.homotopy_trivial || self.derived_trivial
    }
}

pub fn dg_p2_checks(m: &SmashModule) -> Result<DgReport> {
    let algebra = m.algebra();
    if algebra.family().kind() != FamilyKind::GroupRingZ2 {
        return Err(Error::FamilyMismatch(
            algebra.family().to_string(),
            "group-ring-z2".into(),
        ));
    }
    if !algebra.is_derivation_zero() {
        return Err(Error::InvalidParameter("Z_2 must act trivially on the algebra".into()));
    }
    let d = m.base().x();
    let rank = d.rank();
    let kernel_dim = m.dim() - rank;
    Ok(DgReport {
        rank,
        kernel_dim,
        image_dim: rank,
        homotopy_trivial: is_homotopy_trivial(m)?,
        derived_trivial: kernel_dim == rank,
    })
}

/// Whether the operators X^i·b_j span all of End(B) on the regular module,
/// certifying H#B ≅ End(B) and hence semisimplicity.
pub fn certify_semisimple(algebra: &Arc<DerivationAlgebra>) -> Result<bool> {
    let reg = SmashModule::regular_b(algebra)?;
    let n = algebra.family().order();
    let d = algebra.dim();
    if n * d != d * d {
        return Ok(false);
    }
    let f = algebra.field();
    let mut rows = Vec::with_capacity(n * d);
    let mut xi = Matrix::identity(f, d);
    for _ in 0..n {
        for a in reg.action() {
            rows.push(xi.mul(a).entries_flat());
        }
        xi = xi.mul(reg.base().x());
    }
    let span = Matrix::from_rows(f, rows)?;
    Ok(span.rank() == d * d)
}
