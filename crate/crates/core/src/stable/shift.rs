//! The shift T(M) = (H/kΛ)⊗M and its inverse T′(M) = ker(ε)⊗M.

use super::homotopy::{h_tensor, regular_tensor};
use crate::error::Result;
use crate::field::Matrix;
use crate::grmod::opmod::quotient;
use crate::grmod::{Anchor, GradedModule, HopfFamily, ModuleHom};

/// T(M) presented as the quotient of H⊗M by Λ⊗M.
#[derive(Clone, Debug)]
pub struct ShiftPresentation {
    pub module: GradedModule,
    /// H⊗M → T(M).
    pub proj: Matrix,
    /// A linear section T(M) → H⊗M.
    pub section: Matrix,
}

pub fn shift_t_presentation(m: &GradedModule) -> Result<ShiftPresentation> {
    let ht = h_tensor(m)?;
    let q = quotient(m.field(), ht.module.degrees(), ht.embedding.matrix())?;
    let x = q.proj.mul(ht.module.x()).mul(&q.section);
    let module = GradedModule::from_parts(m.family(), q.degrees, x);
    Ok(ShiftPresentation {
        module,
        proj: q.proj,
        section: q.section,
    })
}

pub fn shift_t(m: &GradedModule) -> Result<GradedModule> {
    Ok(shift_t_presentation(m)?.module)
}

/// T(f) induced by Id⊗f.
pub fn shift_t_map(f: &ModuleHom) -> Result<ModuleHom> {
    let src = shift_t_presentation(f.source())?;
    let tgt = shift_t_presentation(f.target())?;
    Ok(induced_shift_map(f, &src, &tgt))
}

pub(crate) fn induced_shift_map(f: &ModuleHom, src: &ShiftPresentation, tgt: &ShiftPresentation) -> ModuleHom {
    let field = f.source().field();
    let dim_h = f
        .source()
        .family()
        .regular_module(Anchor::Integral)
        .expect("regular module")
        .module
        .dim();
    let lift = Matrix::identity(field, dim_h).kron(f.matrix());
    let mat = tgt.proj.mul(&lift).mul(&src.section);
    ModuleHom::from_parts(&src.module, &tgt.module, mat)
}

/// The augmentation ideal ker(ε) with 1 in degree 0.
pub fn augmentation_ideal(family: &HopfFamily) -> Result<GradedModule> {
    let reg = family.regular_module(Anchor::Counit)?;
    let keep: Vec<usize> = (0..reg.module.dim()).filter(|&i| i != reg.counit).collect();
    let degrees = keep.iter().map(|&i| reg.module.degrees()[i]).collect();
    let x = reg.module.x().select(&keep, &keep);
    Ok(GradedModule::from_parts(family, degrees, x))
}

pub fn shift_tprime(m: &GradedModule) -> Result<GradedModule> {
    augmentation_ideal(m.family())?.tensor(m)
}

pub fn shift_tprime_map(f: &ModuleHom) -> Result<ModuleHom> {
    let ideal = augmentation_ideal(f.source().family())?;
    let src = ideal.tensor(f.source())?;
    let tgt = ideal.tensor(f.target())?;
    let mat = Matrix::identity(f.source().field(), ideal.dim()).kron(f.matrix());
    Ok(ModuleHom::from_parts(&src, &tgt, mat))
}

/// H⊗M with 1 in degree 0, the middle term of 0 → T′M → H⊗M → M → 0.
pub fn counit_tensor(m: &GradedModule) -> Result<GradedModule> {
    regular_tensor(m, Anchor::Counit)
}
