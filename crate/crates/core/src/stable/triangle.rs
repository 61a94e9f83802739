//! Cones, standard triangles and morphism completion.

use super::homotopy::{h_tensor, null_homotopy, HomotopyWitness};
use super::shift::{induced_shift_map, shift_t_presentation, ShiftPresentation};
use crate::error::{Error, Result};
use crate::field::Matrix;
use crate::grmod::opmod::quotient;
use crate::grmod::{GradedModule, ModuleHom};

/// The standard triangle X → Y → C_u → TX of a map u, with C_u presented as
/// the pushout ((H⊗X) ⊕ Y) / {(Λ⊗a, −u(a))}.
#[derive(Clone, Debug)]
pub struct Triangle {
    pub u: ModuleHom,
    pub v: ModuleHom,
    pub w: ModuleHom,
    pub(crate) shift: ShiftPresentation,
    /// (H⊗X) ⊕ Y → C_u and a linear section back.
    pub(crate) proj: Matrix,
    pub(crate) section: Matrix,
    pub(crate) hx_dim: usize,
}

impl Triangle {
    pub fn x(&self) -> &GradedModule {
        self.u.source()
    }
    pub fn y(&self) -> &GradedModule {
        self.u.target()
    }
    pub fn cone(&self) -> &GradedModule {
        self.v.target()
    }
    pub fn tx(&self) -> &GradedModule {
        &self.shift.module
    }
}

pub fn cone(u: &ModuleHom) -> Result<Triangle> {
    let (x, y) = (u.source(), u.target());
    let field = x.field();
    let ht = h_tensor(x)?;
    let big = ht.module.direct_sum(y)?;
    let anti = Matrix::vstack(field, x.dim(), &[ht.embedding.matrix(), &u.matrix().neg()]);
    let q = quotient(field, big.degrees(), &anti)?;
    let cx = q.proj.mul(big.x()).mul(&q.section);
    let c = GradedModule::from_parts(x.family(), q.degrees.clone(), cx);
    let hx_dim = ht.module.dim();
    let into_y = Matrix::vstack(
        field,
        y.dim(),
        &[
            &Matrix::zeros(field, hx_dim, y.dim()),
            &Matrix::identity(field, y.dim()),
        ],
    );
    let v = ModuleHom::from_parts(y, &c, q.proj.mul(&into_y));
    let shift = shift_t_presentation(x)?;
    let onto_hx = Matrix::hstack(
        field,
        hx_dim,
        &[&Matrix::identity(field, hx_dim), &Matrix::zeros(field, hx_dim, y.dim())],
    );
    let w = ModuleHom::from_parts(&c, &shift.module, shift.proj.mul(&onto_hx).mul(&q.section));
    Ok(Triangle {
        u: u.clone(),
        v,
        w,
        shift,
        proj: q.proj,
        section: q.section,
        hx_dim,
    })
}

/// Third map of a morphism of standard triangles, with the homotopy used.
#[derive(Clone, Debug)]
pub struct TriangleMorphism {
    pub h: ModuleHom,
    /// α: H⊗X → Y′ with α(Λ⊗a) = g(u(a)) − u′(f(a)).
    pub homotopy: HomotopyWitness,
}

/// Complete (f, g) to (f, g, h) between the standard triangles of u and u′.
pub fn complete_triangle_morphism(
    t1: &Triangle,
    t2: &Triangle,
    f: &ModuleHom,
    g: &ModuleHom,
) -> Result<TriangleMorphism> {
    if f.source() != t1.x() || f.target() != t2.x() || g.source() != t1.y() || g.target() != t2.y() {
        return Err(Error::DimensionMismatch("maps do not connect the two triangles".into()));
    }
    let defect = g.compose(&t1.u)?.sub(&t2.u.compose(f)?)?;
    let homotopy =
        null_homotopy(&defect)?.ok_or_else(|| Error::NotMorphismPair("u′∘f − g∘u is not null-homotopic".into()))?;
    let field = f.source().field();
    let dim_h = f.source().family().hopf_algebra()?.dim();
    let lift_f = Matrix::identity(field, dim_h).kron(f.matrix());
    let mut big = Matrix::zeros(field, t2.hx_dim + t2.y().dim(), t1.hx_dim + t1.y().dim());
    big.paste(0, 0, &lift_f);
    big.paste(t2.hx_dim, 0, homotopy.h.matrix());
    big.paste(t2.hx_dim, t1.hx_dim, g.matrix());
    let mat = t2.proj.mul(&big).mul(&t1.section);
    let h = ModuleHom::new(t1.cone(), t2.cone(), mat)
        .map_err(|e| Error::Internal(format!("completed map is not a module map: {e}")))?;
    Ok(TriangleMorphism { h, homotopy })
}

/// Outcome of checking the two squares of a triangle morphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MorphismCheck {
    /// h∘v = v′∘g exactly.
    pub left_square: bool,
    /// w′∘h = T(f)∘w exactly.
    pub right_square_strict: bool,
    /// w′∘h − T(f)∘w is null-homotopic.
    pub right_square_stable: bool,
}

pub fn check_triangle_morphism(
    t1: &Triangle,
    t2: &Triangle,
    f: &ModuleHom,
    g: &ModuleHom,
    h: &ModuleHom,
) -> Result<MorphismCheck> {
    let left_square = h.compose(&t1.v)? == t2.v.compose(g)?;
    let tf = induced_shift_map(f, &t1.shift, &t2.shift);
    let diff = t2.w.compose(h)?.sub(&tf.compose(&t1.w)?)?;
    Ok(MorphismCheck {
        left_square,
        right_square_strict: diff.is_zero(),
        right_square_stable: null_homotopy(&diff)?.is_some(),
    })
}
