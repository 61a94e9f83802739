//! Null-homotopy, cones and quasi-isomorphisms for smash modules.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::algebra::DerivationAlgebra;
use super::module::{h_tensor, restrict_to_h, SmashHom, SmashModule};
use crate::error::{Error, Result};
use crate::field::Matrix;
use crate::grmod::opmod::{add_commutation_equations, allowed_positions, place, EquationBuilder};
use crate::grmod::{slash_homology, Degree, GradedModule};
use crate::stable::{cone, Triangle};

/// h : H⊗M₁ → M₂ with h(Λ⊗m) = f(m).
#[derive(Clone, Debug)]
pub struct AHomotopy {
    pub h: SmashHom,
    pub embedding: SmashHom,
}

/// Solve for an A-linear h on H⊗M₁ extending f along Λ⊗Id.
pub fn a_null_homotopy(f: &SmashHom) -> Result<Option<AHomotopy>> {
    let (m1, m2) = (f.source(), f.target());
    let field = m1.base().field();
    let (hm, iota) = h_tensor(m1)?;
    let positions = allowed_positions(hm.base().degrees(), m2.base().degrees(), |a, b| a == b);
    if positions.is_empty() {
        return Ok(f.is_zero().then(|| AHomotopy {
            h: SmashHom::zero(&hm, m2),
            embedding: iota,
        }));
    }
    let mut eq = EquationBuilder::new(field, positions.len());
    let src_ops = hm.operators();
    let tgt_ops = m2.operators();
    add_commutation_equations(&mut eq, field, &positions, &src_ops, &tgt_ops);
    // h∘ι = f, keyed past the operator indices
    let key = src_ops.len();
    let emb = iota.matrix();
    let mut emb_rows: Vec<Vec<(usize, crate::field::Scalar)>> = vec![Vec::new(); emb.rows()];
    for (r, c, v) in emb.entries() {
        emb_rows[r].push((c, v));
    }
    for r in 0..m2.dim() {
        for c in 0..m1.dim() {
            eq.row((key, r, c));
        }
    }
    for (u, &(r, j)) in positions.iter().enumerate() {
        for (c, v) in &emb_rows[j] {
            let row = eq.row((key, r, *c));
            eq.add(row, u, v);
        }
    }
    let mut rhs = Matrix::zeros(field, eq.row_count(), 1);
    for (r, c, v) in f.matrix().entries() {
        let row = eq.key_index(&(key, r, c)).expect("constraint rows were created");
        rhs.set(row, 0, v);
    }
    let sol = eq.matrix().solve(&rhs)?;
    let Some(particular) = sol.particular else {
        return Ok(None);
    };
    let h = place(field, m2.dim(), hm.dim(), &positions, &particular.column(0));
    let h = SmashHom::new(&hm, m2, h).map_err(|e| Error::Internal(format!("homotopy is not A-linear: {e}")))?;
    if h.compose(&iota)? != *f {
        return Err(Error::Internal("homotopy does not extend the map".into()));
    }
    Ok(Some(AHomotopy { h, embedding: iota }))
}

pub fn is_a_null_homotopic(f: &SmashHom) -> Result<bool> {
    Ok(a_null_homotopy(f)?.is_some())
}

/// Whether M vanishes in the homotopy category (Id_M factors through H⊗M).
pub fn is_homotopy_trivial(m: &SmashModule) -> Result<bool> {
    is_a_null_homotopic(&SmashHom::identity(m))
}

/// The A-module cone of u with its triangle maps.
#[derive(Clone, Debug)]
pub struct ACone {
    pub cone: SmashModule,
    pub v: SmashHom,
    pub shifted_source: SmashModule,
    pub w: SmashHom,
    /// The same construction on underlying H-modules.
    pub triangle: Triangle,
}

fn induced_action(
    algebra: &Arc<DerivationAlgebra>,
    base: GradedModule,
    proj: &Matrix,
    section: &Matrix,
    actions: &[Matrix],
) -> Result<SmashModule> {
    let action = actions.iter().map(|a| proj.mul(a).mul(section)).collect();
    SmashModule::new(algebra, base, action)
}

pub fn a_cone(u: &SmashHom) -> Result<ACone> {
    let (x, y) = (u.source(), u.target());
    let algebra = x.algebra();
    let field = x.base().field();
    let triangle = cone(&u.restrict())?;
    let (hx, _) = h_tensor(x)?;
    let big: Vec<Matrix> = hx
        .action()
        .iter()
        .zip(y.action())
        .map(|(a, b)| Matrix::block_diag(field, &[a, b]))
        .collect();
    let c = induced_action(
        algebra,
        triangle.cone().clone(),
        &triangle.proj,
        &triangle.section,
        &big,
    )?;
    let v = SmashHom::new(y, &c, triangle.v.matrix().clone())?;
    let tx = induced_action(
        algebra,
        triangle.tx().clone(),
        &triangle.shift.proj,
        &triangle.shift.section,
        hx.action(),
    )?;
    let w = SmashHom::new(&c, &tx, triangle.w.matrix().clone())?;
    Ok(ACone {
        cone: c,
        v,
        shifted_source: tx,
        w,
        triangle,
    })
}

/// Slash homology of the restricted cone, and the verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiIsoReport {
    pub verdict: bool,
    /// a ↦ (degree ↦ dimension) for 1 ≤ a ≤ n-1.
    pub slash: BTreeMap<usize, BTreeMap<Degree, usize>>,
}

pub fn is_quasi_iso(f: &SmashHom) -> Result<QuasiIsoReport> {
    let c = a_cone(f)?;
    let base = restrict_to_h(&c.cone);
    let n = base.family().order();
    let mut slash = BTreeMap::new();
    let mut verdict = true;
    for a in 1..n {
        let hom = slash_homology(&base, a)?;
        verdict &= hom.values().all(|&d| d == 0);
        slash.insert(a, hom);
    }
    Ok(QuasiIsoReport { verdict, slash })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grmod::{decompose, HopfFamily};

    fn ground(p: u32) -> Arc<DerivationAlgebra> {
        let fam = HopfFamily::truncated(p, 1, false).unwrap();
        Arc::new(DerivationAlgebra::ground(&fam).unwrap())
    }

    #[test]
    fn free_modules_are_trivial() {
        let b = ground(3);
        let v = GradedModule::indecomposable(b.family(), 1, Degree::ZERO).unwrap();
        let m = SmashModule::over_ground(&b, v).unwrap();
        let (hm, _) = h_tensor(&m).unwrap();
        assert!(is_homotopy_trivial(&hm).unwrap());
        assert!(!is_homotopy_trivial(&m).unwrap());
        let two = hm.direct_sum(&hm).unwrap();
        assert!(is_homotopy_trivial(&two).unwrap());
    }

    #[test]
    fn unit_is_not_trivial_in_char_two() {
        let b = ground(2);
        let v0 = GradedModule::indecomposable(b.family(), 0, Degree::ZERO).unwrap();
        let m = SmashModule::over_ground(&b, v0).unwrap();
        assert!(a_null_homotopy(&SmashHom::identity(&m)).unwrap().is_none());
        let z = a_null_homotopy(&SmashHom::zero(&m, &m)).unwrap().unwrap();
        assert!(z.h.is_zero());
    }

    #[test]
    fn weyl_algebra_modules_are_trivial() {
        let fam = HopfFamily::truncated(2, 1, false).unwrap();
        let b = Arc::new(DerivationAlgebra::truncated_polynomial(&fam, 2, 1).unwrap());
        let m = SmashModule::regular_b(&b).unwrap();
        assert!(is_homotopy_trivial(&m).unwrap());
    }

    #[test]
    fn cones_match_restrictions() {
        let fam = HopfFamily::truncated(2, 1, false).unwrap();
        let b = Arc::new(DerivationAlgebra::truncated_polynomial(&fam, 2, 1).unwrap());
        let m = SmashModule::regular_b(&b).unwrap();
        let free = SmashModule::free(&b).unwrap();
        let c = a_cone(&SmashHom::identity(&m)).unwrap();
        assert!(is_homotopy_trivial(&c.cone).unwrap());
        assert!(is_quasi_iso(&SmashHom::identity(&free)).unwrap().verdict);
        assert_eq!(decompose(&restrict_to_h(&c.cone)), decompose(c.triangle.cone()));
    }

    #[test]
    fn zero_map_is_not_quasi_iso() {
        let b = ground(3);
        let v = GradedModule::indecomposable(b.family(), 0, Degree::ZERO).unwrap();
        let m = SmashModule::over_ground(&b, v).unwrap();
        let rep = is_quasi_iso(&SmashHom::zero(&m, &m)).unwrap();
        assert!(!rep.verdict);
        assert!(is_quasi_iso(&SmashHom::identity(&m)).unwrap().verdict);
    }
}
