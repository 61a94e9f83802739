//! Distinguished grouplike element, the swap V⊗H ≅ H⊗V, and the explicit
//! section of Λ⊗Id : H → H⊗H.

use crate::error::{Error, Result};
use crate::field::{Matrix, Scalar};
use crate::grmod::{Anchor, Elem, GradedModule, HopfFamily, ModuleHom};

#[derive(Clone, Debug)]
pub struct Grouplike {
    pub element: Elem,
    /// Multiplicative order.
    pub order: usize,
    /// α with Λg = αΛ.
    pub integral_character: Scalar,
}

pub fn distinguished_grouplike(family: &HopfFamily) -> Result<Grouplike> {
    let h = family.hopf_algebra()?;
    let element = h.distinguished_grouplike()?;
    let order = h
        .multiplicative_order(&element, h.dim())
        .ok_or_else(|| Error::Internal("grouplike element of infinite order".into()))?;
    let integral_character = h.integral_character(&element)?;
    Ok(Grouplike {
        element,
        order,
        integral_character,
    })
}

/// ΣΛ₁⊗Λ₂ = ΣS²(Λ₂)g⊗Λ₁ in H⊗H.
pub fn radford_identity_holds(family: &HopfFamily) -> Result<bool> {
    let h = family.hopf_algebra()?;
    let g = distinguished_grouplike(family)?.element;
    let (lhs, rhs) = h.radford_sides(&g);
    Ok(lhs == rhs)
}

/// Basis change from the graded regular basis to monomials, and back.
fn regular_basis_change(family: &HopfFamily) -> Result<(Matrix, Matrix)> {
    let reg = family.regular_module(Anchor::Integral)?;
    let d = reg.elems.len();
    let to_mono = Matrix::from_columns(family.field(), d, &reg.elems);
    let to_graded = to_mono.inverse()?;
    Ok((to_mono, to_graded))
}

/// The isomorphism r = r₃r₂r₁ : V⊗H → H⊗V, scaled by α(g)⁻¹ so that
/// r(v⊗Λ) = Λ⊗v.
pub fn swap_iso(v: &GradedModule) -> Result<ModuleHom> {
    let family = v.family();
    let field = v.field();
    let h = family.hopf_algebra()?;
    let reg = family.regular_module(Anchor::Integral)?;
    let act = v.action()?;
    let gl = distinguished_grouplike(family)?;
    let (d, dv) = (h.dim(), v.dim());
    let mut r1 = Matrix::zeros(field, dv * d, dv * d);
    let mut r2 = Matrix::zeros(field, d * dv, dv * d);
    let mut r3 = Matrix::zeros(field, d * dv, d * dv);
    let sinv_act: Vec<Matrix> = (0..d).map(|p| act.element(&h.antipode_inv(&h.basis(p)))).collect();
    for j in 0..d {
        let delta = h.coproduct_of_basis(j);
        let hg = h.mul(&h.basis(j), &gl.element);
        for b in 0..dv {
            // r₁(v⊗h) = Σ S⁻¹(h₁)v ⊗ h₂
            for (p, q, c) in delta {
                for a in 0..dv {
                    let s = sinv_act[*p].get(a, b);
                    if !field.is_zero(&s) {
                        let row = a * d + q;
                        let cur = r1.get(row, b * d + j);
                        r1.set(row, b * d + j, field.add(&cur, &field.mul(c, &s)));
                    }
                }
            }
            // r₂(v⊗h) = hg ⊗ v
            for (k, c) in hg.iter().enumerate() {
                if !field.is_zero(c) {
                    r2.set(k * dv + b, b * d + j, c.clone());
                }
            }
            // r₃(h⊗v) = Σ h₁ ⊗ h₂v
            for (p, q, c) in delta {
                let m = act.monomial(*q);
                for a in 0..dv {
                    let s = m.get(a, b);
                    if !field.is_zero(&s) {
                        let row = p * dv + a;
                        let cur = r3.get(row, j * dv + b);
                        r3.set(row, j * dv + b, field.add(&cur, &field.mul(c, &s)));
                    }
                }
            }
        }
    }
    let (to_mono, to_graded) = regular_basis_change(family)?;
    let id_v = Matrix::identity(field, dv);
    let scale = field.inv(&gl.integral_character)?;
    let mono = r3.mul(&r2).mul(&r1);
    let mat = to_graded.kron(&id_v).mul(&mono).mul(&id_v.kron(&to_mono)).scale(&scale);
    let src = v.tensor(&reg.module)?;
    let tgt = reg.module.tensor(v)?;
    ModuleHom::new(&src, &tgt, mat).map_err(|e| Error::Internal(format!("swap is not a module map: {e}")))
}

/// r(v⊗Λ) = Λ⊗v for every basis vector v.
pub fn swap_intertwines_integral(r: &ModuleHom) -> Result<bool> {
    let family = r.source().family();
    let reg = family.regular_module(Anchor::Integral)?;
    let d = reg.module.dim();
    let dv = r.source().dim() / d;
    let f = family.field();
    for b in 0..dv {
        let col = r.matrix().column(b * d + reg.integral);
        for (row, x) in col.iter().enumerate() {
            let want = if row == reg.integral * dv + b {
                f.one()
            } else {
                f.zero()
            };
            if *x != want {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The section a⊗b ↦ Σ b₂ t(S⁻¹(b₁)a) and its defects.
#[derive(Clone, Debug)]
pub struct RadfordSection {
    /// Monomial index carrying the chosen functional t.
    pub lead: usize,
    pub t: Vec<Scalar>,
    pub matrix: Matrix,
    pub violations: Vec<String>,
}

pub fn radford_section(family: &HopfFamily) -> Result<RadfordSection> {
    let h = family.hopf_algebra()?;
    let f = family.field();
    let d = h.dim();
    let (lead, t) = h.integral_dual_functional();
    let matrix = h.radford_section(&t);
    let lambda = h.left_integral();
    let mut violations = Vec::new();
    for b in 0..d {
        let mut col = vec![f.zero(); d * d];
        for (a, c) in lambda.iter().enumerate() {
            col[a * d + b] = c.clone();
        }
        let x = Matrix::from_columns(f, d * d, &[col]);
        if matrix.mul(&x).column(0) != h.basis(b) {
            violations.push(format!("section(Λ⊗e_{b}) ≠ e_{b}"));
        }
    }
    for &g in h.generators() {
        let x = h.basis(g);
        if matrix.mul(&h.diagonal_action(&x)) != h.left_mult_matrix(&x).mul(&matrix) {
            violations.push(format!("section does not commute with {}", h.label(g)));
        }
    }
    Ok(RadfordSection {
        lead,
        t,
        matrix,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grmod::Degree;

    #[test]
    fn grouplike_of_truncated_is_one() {
        let fam = HopfFamily::truncated(3, 1, false).unwrap();
        let g = distinguished_grouplike(&fam).unwrap();
        assert_eq!(g.element, fam.hopf_algebra().unwrap().one());
        assert_eq!(g.order, 1);
    }

    #[test]
    fn grouplike_of_taft_is_power_of_k() {
        let fam = HopfFamily::taft(3, false).unwrap();
        let h = fam.hopf_algebra().unwrap();
        let g = distinguished_grouplike(&fam).unwrap();
        let support: Vec<usize> = (0..h.dim()).filter(|&i| !fam.field().is_zero(&g.element[i])).collect();
        assert_eq!(support.len(), 1);
        assert!(support[0] < 3, "g is a power of K");
        assert!(h.is_grouplike(&g.element));
        assert_eq!(3 % g.order, 0);
    }

    #[test]
    fn radford_identity_and_section() {
        for fam in [
            HopfFamily::truncated(2, 1, false).unwrap(),
            HopfFamily::truncated(3, 1, false).unwrap(),
            HopfFamily::taft(3, false).unwrap(),
            HopfFamily::taft(4, false).unwrap(),
        ] {
            assert!(radford_identity_holds(&fam).unwrap(), "{fam}");
            assert!(radford_section(&fam).unwrap().violations.is_empty(), "{fam}");
        }
    }

    #[test]
    fn swap_intertwines() {
        for fam in [
            HopfFamily::truncated(3, 1, false).unwrap(),
            HopfFamily::taft(3, false).unwrap(),
            HopfFamily::taft(4, false).unwrap(),
        ] {
            for i in 0..2 {
                let v = GradedModule::indecomposable(&fam, i, Degree::new(1)).unwrap();
                let r = swap_iso(&v).unwrap();
                assert!(swap_intertwines_integral(&r).unwrap(), "{fam} V_{i}");
                assert!(r.matrix().inverse().is_ok());
            }
        }
    }
}
