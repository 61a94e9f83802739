//! The two Ore-type constructions for quasi-isomorphisms.

use super::homotopy::{a_null_homotopy, is_quasi_iso, AHomotopy};
use super::module::{counit_tensor, h_tensor, kernel, SmashHom, SmashModule};
use crate::error::{Error, Result};
use crate::field::Matrix;

/// C with maps h_X, h_Z such that s∘h_X and f∘h_Z agree up to null-homotopy.
#[derive(Clone, Debug)]
pub struct OrePullback {
    pub c: SmashModule,
    pub h_x: SmashHom,
    pub h_z: SmashHom,
    /// Witness that s∘h_X − f∘h_Z factors through H⊗C.
    pub homotopy: AHomotopy,
}

fn require_quasi_iso(s: &SmashHom) -> Result<()> {
    if !is_quasi_iso(s)?.verdict {
        return Err(Error::NotQuasiIso);
    }
    Ok(())
}

/// Row block [A B C] of a map out of a direct sum.
fn hstack(parts: &[&Matrix]) -> Matrix {
    let f = parts[0].field();
    Matrix::hstack(f, parts[0].rows(), parts)
}

/// C = {(x, z, a) : s(x) + f(z) = (ε⊗Id)(a)} ⊂ X ⊕ Z ⊕ H⊗Y, h_X = -pr_X, h_Z = pr_Z.
pub fn ore_pullback(s: &SmashHom, f: &SmashHom) -> Result<OrePullback> {
    if s.target() != f.target() {
        return Err(Error::DimensionMismatch("s and f must share a target".into()));
    }
    if s.source() == s.target() && *s == SmashHom::identity(s.source()) {
        // C = Z, and the square commutes on the nose
        let h_z = SmashHom::identity(f.source());
        let homotopy = a_null_homotopy(&SmashHom::zero(f.source(), s.target()))?
            .ok_or_else(|| Error::Internal("zero map without a witness".into()))?;
        return Ok(OrePullback {
            c: f.source().clone(),
            h_x: f.clone(),
            h_z,
            homotopy,
        });
    }
    require_quasi_iso(s)?;
    let (x, z, y) = (s.source(), f.source(), s.target());
    let (hy, eps) = counit_tensor(y)?;
    let total = SmashModule::direct_sum_all(x.algebra(), &[x, z, &hy])?;
    let phi = SmashHom::new(&total, y, hstack(&[s.matrix(), f.matrix(), &eps.matrix().neg()]))?;
    let (c, incl) = kernel(&phi)?;
    let field = x.base().field();
    let (dx, dz) = (x.dim(), z.dim());
    let rows_x: Vec<usize> = (0..dx).collect();
    let rows_z: Vec<usize> = (dx..dx + dz).collect();
    let all: Vec<usize> = (0..c.dim()).collect();
    let h_x = SmashHom::new(&c, x, incl.matrix().select(&rows_x, &all).neg())?;
    let h_z = SmashHom::new(&c, z, incl.matrix().select(&rows_z, &all))?;
    let defect = s.compose(&h_x)?.sub(&f.compose(&h_z)?)?;
    let homotopy = a_null_homotopy(&defect)?
        .ok_or_else(|| Error::Internal("pullback square does not commute up to homotopy".into()))?;
    debug_assert_eq!(field, c.base().field());
    Ok(OrePullback { c, h_x, h_z, homotopy })
}

/// A quasi-isomorphism t : W → X with f∘t null-homotopic.
#[derive(Clone, Debug)]
pub struct OreKill {
    pub w: SmashModule,
    pub t: SmashHom,
    pub homotopy: AHomotopy,
}

/// For f : X → Y and a quasi-isomorphism s : Y → Z with s∘f null-homotopic.
///
/// Y is first enlarged to Y′ = Y ⊕ H⊗X so that s′∘f′ = 0 on the nose; K is
/// the kernel of Y′ ⊕ H⊗Z → Z and W the kernel of X ⊕ H⊗K → K.
pub fn ore_kill(f: &SmashHom, s: &SmashHom) -> Result<OreKill> {
    if f.target() != s.source() {
        return Err(Error::DimensionMismatch("f must land in the source of s".into()));
    }
    require_quasi_iso(s)?;
    let (x, y, z) = (f.source(), f.target(), s.target());
    let field = x.base().field();
    let alpha = a_null_homotopy(&s.compose(f)?)?.ok_or_else(|| Error::NoWitness("s∘f is not null-homotopic".into()))?;
    let (hx, iota) = h_tensor(x)?;
    let y1 = y.direct_sum(&hx)?;
    let f1 = Matrix::vstack(field, x.dim(), &[f.matrix(), &iota.matrix().neg()]);
    let s1 = hstack(&[s.matrix(), alpha.h.matrix()]);
    let (hz, eps_z) = counit_tensor(z)?;
    let k_total = y1.direct_sum(&hz)?;
    let to_z = SmashHom::new(&k_total, z, hstack(&[&s1, &eps_z.matrix().neg()]))?;
    let (k, k_incl) = kernel(&to_z)?;
    // f̃ = (f′, 0) lands in K; express it in K's basis through the retraction
    let f_big = Matrix::vstack(field, x.dim(), &[&f1, &Matrix::zeros(field, hz.dim(), x.dim())]);
    let f_tilde = k_incl
        .matrix()
        .solve(&f_big)?
        .particular
        .ok_or_else(|| Error::Internal("f′ does not land in K".into()))?;
    let (hk, eps_k) = counit_tensor(&k)?;
    let w_total = x.direct_sum(&hk)?;
    let to_k = SmashHom::new(&w_total, &k, hstack(&[&f_tilde, &eps_k.matrix().neg()]))?;
    let (w, w_incl) = kernel(&to_k)?;
    let rows_x: Vec<usize> = (0..x.dim()).collect();
    let all: Vec<usize> = (0..w.dim()).collect();
    let t = SmashHom::new(&w, x, w_incl.matrix().select(&rows_x, &all))?;
    let homotopy =
        a_null_homotopy(&f.compose(&t)?)?.ok_or_else(|| Error::Internal("f∘t is not null-homotopic".into()))?;
    Ok(OreKill { w, t, homotopy })
}
