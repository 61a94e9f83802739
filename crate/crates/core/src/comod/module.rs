use std::sync::Arc;

use super::algebra::{combine, DerivationAlgebra};
use crate::error::{Error, Result};
use crate::field::{Matrix, Scalar};
use crate::grmod::module::{hom_violations, violations_to_error};
use crate::grmod::opmod::{equivariant_maps, kernel_span, subspace};
use crate::grmod::{Anchor, Degree, GradedModule, ModuleHom, Violation, ViolationKind};

/// A module over H#B: an H-module with a compatible B-action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmashModule {
    algebra: Arc<DerivationAlgebra>,
    base: GradedModule,
    /// `action[i]` is the action of the basis element e_i.
    action: Vec<Matrix>,
}

fn action_violations(algebra: &DerivationAlgebra, base: &GradedModule, action: &[Matrix]) -> Vec<Violation> {
    let mut out = base.validate();
    if !out.is_empty() {
        return out;
    }
    let f = base.field();
    let (d, dm) = (algebra.dim(), base.dim());
    if base.family() != algebra.family() {
        out.push(Violation::new(
            ViolationKind::Field,
            "module and algebra live over different families",
        ));
        return out;
    }
    if action.len() != d || action.iter().any(|a| a.rows() != dm || a.cols() != dm) {
        out.push(Violation::new(
            ViolationKind::Shape,
            format!("need {d} action matrices of size {dm}x{dm}"),
        ));
        return out;
    }
    let family = algebra.family();
    for (i, a) in action.iter().enumerate() {
        for (r, c, _) in a.entries() {
            if family.normalize(base.degrees()[c] - algebra.degrees()[i]) != base.degrees()[r] {
                out.push(Violation::new(
                    ViolationKind::Homogeneity,
                    format!("e_{i} does not act with degree -deg(e_{i}) at ({r}, {c})"),
                ));
            }
        }
    }
    if combine(f, dm, action, algebra.unit()) != Matrix::identity(f, dm) {
        out.push(Violation::new(
            ViolationKind::Representation,
            "1 does not act as the identity",
        ));
    }
    for i in 0..d {
        for j in 0..d {
            let lhs = action[i].mul(&action[j]);
            let rhs = combine(f, dm, action, &algebra.left_mult(i).column(j));
            if lhs != rhs {
                out.push(Violation::new(
                    ViolationKind::Representation,
                    format!("action of e_{i}e_{j} is not the product of the actions"),
                ));
            }
        }
    }
    let x = base.x();
    for (i, a) in action.iter().enumerate() {
        // X(e_i·m) = ∂(e_i)·m + e_i·X(m)
        let lhs = x.mul(a);
        let rhs = combine(f, dm, action, &algebra.derivation().column(i)).add(&a.mul(x));
        if lhs != rhs {
            out.push(Violation::new(
                ViolationKind::Leibniz,
                format!("X(e_{i}·m) ≠ ∂(e_{i})·m + e_{i}·X(m)"),
            ));
        }
    }
    out
}

impl SmashModule {
    pub fn new(algebra: &Arc<DerivationAlgebra>, base: GradedModule, action: Vec<Matrix>) -> Result<SmashModule> {
        violations_to_error(action_violations(algebra, &base, &action))?;
        Ok(SmashModule {
            algebra: algebra.clone(),
            base,
            action,
        })
    }

    pub(crate) fn from_parts(algebra: &Arc<DerivationAlgebra>, base: GradedModule, action: Vec<Matrix>) -> SmashModule {
        debug_assert!(
            action_violations(algebra, &base, &action).is_empty(),
            "internal smash module is invalid"
        );
        SmashModule {
            algebra: algebra.clone(),
            base,
            action,
        }
    }

    /// An H-module with B = k acting by scalars.
    pub fn over_ground(algebra: &Arc<DerivationAlgebra>, base: GradedModule) -> Result<SmashModule> {
        if algebra.dim() != 1 {
            return Err(Error::InvalidParameter(format!(
                "B has dimension {}, not 1",
                algebra.dim()
            )));
        }
        let id = Matrix::identity(base.field(), base.dim()).scale(&algebra.field().inv(&algebra.unit()[0])?);
        Self::new(algebra, base, vec![id])
    }

    /// B itself: X acts as ∂, B by left multiplication, e_i in degree -deg(e_i).
    pub fn regular_b(algebra: &Arc<DerivationAlgebra>) -> Result<SmashModule> {
        let degrees = algebra
            .degrees()
            .iter()
            .map(|&d| algebra.family().normalize(-d))
            .collect();
        let base = GradedModule::new(algebra.family(), degrees, algebra.derivation().clone())?;
        let action = (0..algebra.dim()).map(|i| algebra.left_mult(i).clone()).collect();
        Self::new(algebra, base, action)
    }

    /// The rank-one free module H⊗B.
    pub fn free(algebra: &Arc<DerivationAlgebra>) -> Result<SmashModule> {
        Ok(h_tensor(&Self::regular_b(algebra)?)?.0)
    }

    pub fn zero(algebra: &Arc<DerivationAlgebra>) -> SmashModule {
        let base = GradedModule::zero(algebra.family());
        let f = algebra.field();
        SmashModule {
            algebra: algebra.clone(),
            base,
            action: vec![Matrix::zeros(f, 0, 0); algebra.dim()],
        }
    }

    pub fn algebra(&self) -> &Arc<DerivationAlgebra> {
        &self.algebra
    }
    pub fn base(&self) -> &GradedModule {
        &self.base
    }
    pub fn action(&self) -> &[Matrix] {
        &self.action
    }
    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn action_of(&self, b: &[Scalar]) -> Matrix {
        combine(self.base.field(), self.dim(), &self.action, b)
    }

    /// X followed by the B-actions.
    pub(crate) fn operators(&self) -> Vec<Matrix> {
        let mut ops = vec![self.base.x().clone()];
        ops.extend(self.action.iter().cloned());
        ops
    }

    pub fn validate(&self) -> Vec<Violation> {
        action_violations(&self.algebra, &self.base, &self.action)
    }

    fn same_algebra(&self, other: &SmashModule) -> Result<()> {
        if self.algebra != other.algebra {
            return Err(Error::FamilyMismatch(
                "smash module".into(),
                "smash module over another algebra".into(),
            ));
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &SmashModule) -> Result<SmashModule> {
        self.same_algebra(other)?;
        let base = self.base.direct_sum(&other.base)?;
        let f = self.base.field();
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| Matrix::block_diag(f, &[a, b]))
            .collect();
        Ok(SmashModule::from_parts(&self.algebra, base, action))
    }

    pub fn direct_sum_all(algebra: &Arc<DerivationAlgebra>, parts: &[&SmashModule]) -> Result<SmashModule> {
        let mut acc = SmashModule::zero(algebra);
        for p in parts {
            acc = acc.direct_sum(p)?;
        }
        Ok(acc)
    }

    pub fn shift(&self, j: Degree) -> Result<SmashModule> {
        Ok(SmashModule {
            base: self.base.shift(j)?,
            ..self.clone()
        })
    }

    /// V⊗M for an H-module V, with B acting on the right factor.
    pub fn tensor_left(v: &GradedModule, m: &SmashModule) -> Result<SmashModule> {
        let base = v.tensor(&m.base)?;
        let id = Matrix::identity(v.field(), v.dim());
        let action = m.action.iter().map(|a| id.kron(a)).collect();
        SmashModule::new(&m.algebra, base, action)
    }

    /// Restriction of a B-stable graded subspace spanned by homogeneous columns.
    pub(crate) fn submodule(&self, span: &Matrix) -> Result<(SmashModule, Matrix)> {
        let f = self.base.field();
        let sub = subspace(f, self.base.degrees(), span)?;
        let restrict = |op: &Matrix| sub.retract.mul(op).mul(&sub.incl);
        let base = GradedModule::new(self.base.family(), sub.degrees, restrict(self.base.x()))?;
        let action = self.action.iter().map(restrict).collect();
        let module = SmashModule::new(&self.algebra, base, action)?;
        Ok((module, sub.incl))
    }
}

/// The forgetful functor to H-modules.
pub fn restrict_to_h(m: &SmashModule) -> GradedModule {
    m.base.clone()
}

/// H⊗M with Λ in degree 0 and the embedding m ↦ Λ⊗m.
pub fn h_tensor(m: &SmashModule) -> Result<(SmashModule, SmashHom)> {
    let family = m.algebra.family();
    let reg = family.regular_module(Anchor::Integral)?;
    let hm = SmashModule::tensor_left(&reg.module, m)?;
    let f = m.base.field();
    let d = m.dim();
    let mut emb = Matrix::zeros(f, hm.dim(), d);
    for j in 0..d {
        emb.set(reg.integral * d + j, j, f.one());
    }
    let iota = SmashHom::new(m, &hm, emb)?;
    Ok((hm, iota))
}

/// H⊗M with 1 in degree 0 and the augmentation ε⊗Id onto M.
pub fn counit_tensor(m: &SmashModule) -> Result<(SmashModule, SmashHom)> {
    let family = m.algebra.family();
    let reg = family.regular_module(Anchor::Counit)?;
    let hm = SmashModule::tensor_left(&reg.module, m)?;
    let f = m.base.field();
    let d = m.dim();
    let mut eps = Matrix::zeros(f, d, hm.dim());
    for j in 0..d {
        eps.set(j, reg.counit * d + j, f.one());
    }
    let aug = SmashHom::new(&hm, m, eps)?;
    Ok((hm, aug))
}

/// A degree-0 map commuting with X and the B-action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmashHom {
    source: SmashModule,
    target: SmashModule,
    mat: Matrix,
}

fn smash_hom_violations(source: &SmashModule, target: &SmashModule, mat: &Matrix) -> Vec<Violation> {
    let mut out = hom_violations(&source.base, &target.base, mat);
    if !out.is_empty() {
        return out;
    }
    for (i, (a, b)) in source.action.iter().zip(&target.action).enumerate() {
        if b.mul(mat) != mat.mul(a) {
            out.push(Violation::new(
                ViolationKind::Equivariance,
                format!("map does not commute with e_{i}"),
            ));
        }
    }
    out
}

impl SmashHom {
    pub fn new(source: &SmashModule, target: &SmashModule, mat: Matrix) -> Result<SmashHom> {
        source.same_algebra(target)?;
        violations_to_error(smash_hom_violations(source, target, &mat))?;
        Ok(SmashHom {
            source: source.clone(),
            target: target.clone(),
            mat,
        })
    }

    pub(crate) fn from_parts(source: &SmashModule, target: &SmashModule, mat: Matrix) -> SmashHom {
        debug_assert!(
            smash_hom_violations(source, target, &mat).is_empty(),
            "internal smash map is invalid"
        );
        SmashHom {
            source: source.clone(),
            target: target.clone(),
            mat,
        }
    }

    pub fn identity(m: &SmashModule) -> SmashHom {
        SmashHom {
            source: m.clone(),
            target: m.clone(),
            mat: Matrix::identity(m.base.field(), m.dim()),
        }
    }

    pub fn zero(source: &SmashModule, target: &SmashModule) -> SmashHom {
        let mat = Matrix::zeros(source.base.field(), target.dim(), source.dim());
        SmashHom {
            source: source.clone(),
            target: target.clone(),
            mat,
        }
    }

    pub fn source(&self) -> &SmashModule {
        &self.source
    }
    pub fn target(&self) -> &SmashModule {
        &self.target
    }
    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }
    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    pub fn validate(&self) -> Vec<Violation> {
        smash_hom_violations(&self.source, &self.target, &self.mat)
    }

    /// The underlying H-module map.
    pub fn restrict(&self) -> ModuleHom {
        ModuleHom::from_parts(&self.source.base, &self.target.base, self.mat.clone())
    }

    /// self ∘ other.
    pub fn compose(&self, other: &SmashHom) -> Result<SmashHom> {
        if other.target != self.source {
            return Err(Error::DimensionMismatch("composition of non-matching maps".into()));
        }
        Ok(SmashHom {
            source: other.source.clone(),
            target: self.target.clone(),
            mat: self.mat.mul(&other.mat),
        })
    }

    fn check_parallel(&self, other: &SmashHom) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::DimensionMismatch("maps are not parallel".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &SmashHom) -> Result<SmashHom> {
        self.check_parallel(other)?;
        Ok(SmashHom {
            mat: self.mat.add(&other.mat),
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &SmashHom) -> Result<SmashHom> {
        self.check_parallel(other)?;
        Ok(SmashHom {
            mat: self.mat.sub(&other.mat),
            ..self.clone()
        })
    }

    pub fn neg(&self) -> SmashHom {
        SmashHom {
            mat: self.mat.neg(),
            ..self.clone()
        }
    }
}

/// Basis of Hom_A(M, N) in degree 0.
pub fn smash_hom_basis(m: &SmashModule, n: &SmashModule) -> Result<Vec<SmashHom>> {
    m.same_algebra(n)?;
    let maps = equivariant_maps(
        m.base.field(),
        m.base.degrees(),
        &m.operators(),
        n.base.degrees(),
        &n.operators(),
        |a, b| a == b,
    );
    Ok(maps.into_iter().map(|h| SmashHom::from_parts(m, n, h)).collect())
}

/// ker(g) as a submodule of the source of g, with its inclusion.
pub fn kernel(g: &SmashHom) -> Result<(SmashModule, SmashHom)> {
    let span = kernel_span(g.matrix(), g.source().base.degrees());
    let (k, incl) = g.source().submodule(&span)?;
    let incl = SmashHom::new(&k, g.source(), incl)?;
    Ok((k, incl))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grmod::{decompose, HopfFamily};

    fn weyl(p: u32) -> Arc<DerivationAlgebra> {
        let fam = HopfFamily::truncated(p, 1, false).unwrap();
        Arc::new(DerivationAlgebra::truncated_polynomial(&fam, p as usize, 1).unwrap())
    }

    #[test]
    fn regular_b_is_a_module() {
        for p in [2, 3] {
            let b = weyl(p);
            let m = SmashModule::regular_b(&b).unwrap();
            assert!(m.validate().is_empty());
        }
    }

    #[test]
    fn free_module_restricts_to_free() {
        let b = weyl(3);
        let a = SmashModule::free(&b).unwrap();
        let dec = decompose(&restrict_to_h(&a));
        assert!(dec.is_projective());
        assert_eq!(dec.summand_count(), b.dim());
    }

    #[test]
    fn bad_leibniz_is_reported() {
        let b = weyl(2);
        let m = SmashModule::regular_b(&b).unwrap();
        // same B-action with X = 0 breaks X(t·m) = m + t·X(m)
        let base = GradedModule::new(
            m.base().family(),
            m.base().degrees().to_vec(),
            Matrix::zeros(m.base().field(), 2, 2),
        )
        .unwrap();
        let err = SmashModule::new(&b, base, m.action().to_vec()).unwrap_err();
        assert!(err.to_string().contains("X(e_1"));
    }

    #[test]
    fn kernel_of_augmentation() {
        let b = weyl(2);
        let m = SmashModule::regular_b(&b).unwrap();
        let (hm, eps) = counit_tensor(&m).unwrap();
        let (k, incl) = kernel(&eps).unwrap();
        assert_eq!(k.dim(), hm.dim() - m.dim());
        assert!(eps.compose(&incl).unwrap().is_zero());
    }
}
