use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::decompose::rank_table;
use super::degree::Degree;
use super::family::{max_module_dim, FamilyKind, HopfFamily};
use super::hopf::HopfAlgebra;
use super::opmod;
use super::poly::HalfLaurent;
use crate::error::{Error, Result};
use crate::field::{Field, Matrix, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    Shape,
    Field,
    Degree,
    Bound,
    Homogeneity,
    Nilpotency,
    Equivariance,
    Representation,
    Leibniz,
    Associativity,
    Unit,
    Coaction,
}

/// A failed module invariant, with the offending indices in the message.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub message: String,
}

impl Violation {
    pub fn new(kind: ViolationKind, message: impl Into<String>) -> Self {
        Violation {
            kind,
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

pub(crate) fn violations_to_error(v: Vec<Violation>) -> Result<()> {
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::Validation(v.into_iter().map(|x| x.message).collect()))
    }
}

pub(crate) fn check_dim(dim: usize) -> Result<()> {
    let max = max_module_dim();
    if dim > max {
        return Err(Error::BoundExceeded(format!("module dimension {dim} > {max}")));
    }
    Ok(())
}

/// Finite-dimensional graded module with a homogeneous nilpotent operator X of degree 1.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedModule {
    family: HopfFamily,
    degrees: Vec<Degree>,
    x: Matrix,
}

impl fmt::Debug for GradedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let degs: Vec<String> = self.degrees.iter().map(|d| d.to_string()).collect();
        write!(
            f,
            "GradedModule over {} degrees [{}] X = {:?}",
            self.family,
            degs.join(", "),
            self.x
        )
    }
}

/// Check degree admissibility, homogeneity and nilpotency of raw module data.
pub fn validate_parts(family: &HopfFamily, degrees: &[Degree], x: &Matrix) -> Vec<Violation> {
    let mut out = Vec::new();
    let d = degrees.len();
    if x.rows() != d || x.cols() != d {
        out.push(Violation::new(
            ViolationKind::Shape,
            format!("X is {}x{} but the basis has {d} elements", x.rows(), x.cols()),
        ));
        return out;
    }
    if x.field() != family.field() {
        out.push(Violation::new(
            ViolationKind::Field,
            format!("X is over {} but the family needs {}", x.field(), family.field()),
        ));
        return out;
    }
    if d > max_module_dim() {
        out.push(Violation::new(
            ViolationKind::Bound,
            format!("dimension {d} exceeds {}", max_module_dim()),
        ));
        return out;
    }
    for (i, deg) in degrees.iter().enumerate() {
        if family.check_degree(*deg).is_err() {
            out.push(Violation::new(
                ViolationKind::Degree,
                format!("basis {i}: degree {deg} not available in {family}"),
            ));
        }
    }
    if !out.is_empty() {
        return out;
    }
    let norm: Vec<Degree> = degrees.iter().map(|&g| family.normalize(g)).collect();
    for (r, c, _) in x.entries() {
        if norm[r] != family.normalize(norm[c] + Degree::new(1)) {
            out.push(Violation::new(
                ViolationKind::Homogeneity,
                format!("X not homogeneous at ({r}, {c}): degree {} -> {}", norm[c], norm[r]),
            ));
        }
    }
    if !out.is_empty() {
        return out;
    }
    let m = GradedModule {
        family: family.clone(),
        degrees: norm,
        x: x.clone(),
    };
    let ranks = rank_table(&m);
    let n = family.order();
    for (e, idx) in opmod::degree_classes(&m.degrees) {
        if ranks.get(n, e) > 0 {
            out.push(Violation::new(
                ViolationKind::Nilpotency,
                format!("nilpotency: X^{n} is nonzero on degree {e} (basis {})", idx[0]),
            ));
        }
    }
    out
}

impl GradedModule {
    /// Build and validate a module; degrees are normalised for the family's grading.
    pub fn new(family: &HopfFamily, degrees: Vec<Degree>, x: Matrix) -> Result<GradedModule> {
        violations_to_error(validate_parts(family, &degrees, &x))?;
        let degrees = degrees.into_iter().map(|g| family.normalize(g)).collect();
        Ok(GradedModule {
            family: family.clone(),
            degrees,
            x,
        })
    }

    /// Trusted construction from normalised, valid data.
    pub(crate) fn from_parts(family: &HopfFamily, degrees: Vec<Degree>, x: Matrix) -> GradedModule {
        debug_assert!(
            validate_parts(family, &degrees, &x).is_empty(),
            "internal construction produced an invalid module"
        );
        GradedModule {
            family: family.clone(),
            degrees,
            x,
        }
    }

    pub fn zero(family: &HopfFamily) -> GradedModule {
        GradedModule {
            family: family.clone(),
            degrees: Vec::new(),
            x: Matrix::zeros(family.field(), 0, 0),
        }
    }

    /// The string module V_i{j}: basis b_j..b_{j+i}, X b_r = b_{r+1}.
    pub fn indecomposable(family: &HopfFamily, i: usize, j: Degree) -> Result<GradedModule> {
        let n = family.order();
        if i >= n {
            return Err(Error::OutOfRange(format!("V_{i} needs i <= {}", n - 1)));
        }
        let j = family.check_degree(j)?;
        let f = family.field();
        let degrees = (0..=i).map(|r| family.normalize(j + Degree::new(r as i64))).collect();
        let x = Matrix::from_fn(f, i + 1, i + 1, |r, c| if r == c + 1 { f.one() } else { f.zero() });
        Ok(GradedModule {
            family: family.clone(),
            degrees,
            x,
        })
    }

    pub fn family(&self) -> &HopfFamily {
        &self.family
    }
    pub fn field(&self) -> &Field {
        self.family.field()
    }
    pub fn dim(&self) -> usize {
        self.degrees.len()
    }
    pub fn degrees(&self) -> &[Degree] {
        &self.degrees
    }
    pub fn x(&self) -> &Matrix {
        &self.x
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate_parts(&self.family, &self.degrees, &self.x)
    }

    pub(crate) fn same_family(&self, other: &GradedModule) -> Result<()> {
        if self.family != other.family {
            return Err(Error::FamilyMismatch(self.family.to_string(), other.family.to_string()));
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &GradedModule) -> Result<GradedModule> {
        self.same_family(other)?;
        check_dim(self.dim() + other.dim())?;
        let mut degrees = self.degrees.clone();
        degrees.extend_from_slice(&other.degrees);
        let x = Matrix::block_diag(self.field(), &[&self.x, &other.x]);
        Ok(GradedModule {
            family: self.family.clone(),
            degrees,
            x,
        })
    }

    pub fn direct_sum_all(family: &HopfFamily, parts: &[&GradedModule]) -> Result<GradedModule> {
        let mut acc = GradedModule::zero(family);
        for p in parts {
            acc = acc.direct_sum(p)?;
        }
        Ok(acc)
    }

    /// Grading shift M{j}: every degree raised by j.
    pub fn shift(&self, j: Degree) -> Result<GradedModule> {
        if !j.is_integral() && !self.family.allows_half_degrees() {
            return Err(Error::FractionalShift(format!("shift by {j} in {}", self.family)));
        }
        let degrees = self.degrees.iter().map(|&d| self.family.normalize(d + j)).collect();
        Ok(GradedModule {
            family: self.family.clone(),
            degrees,
            x: self.x.clone(),
        })
    }

    /// Diagonal matrix of the K-action (identity outside the Taft family).
    pub fn k_matrix(&self) -> Matrix {
        let f = self.field();
        let mut k = Matrix::zeros(f, self.dim(), self.dim());
        for (i, d) in self.degrees.iter().enumerate() {
            k.set(i, i, self.family.k_eigenvalue(*d));
        }
        k
    }

    /// X on M⊗N via the coproduct of X; basis index a*dim(N) + b.
    pub(crate) fn tensor_x(&self, other: &GradedModule) -> Matrix {
        let f = self.field();
        let (im, inn) = (Matrix::identity(f, self.dim()), Matrix::identity(f, other.dim()));
        let base = self.x.kron(&inn);
        match self.family.kind() {
            FamilyKind::Truncated { .. } => base.add(&im.kron(&other.x)),
            FamilyKind::Taft { .. } => base.add(&self.k_matrix().kron(&other.x)),
            FamilyKind::GroupRingZ2 => base.add(&im.kron(&other.x)).add(&self.x.kron(&other.x)),
        }
    }

    pub(crate) fn tensor_degrees(&self, other: &GradedModule) -> Vec<Degree> {
        let mut degrees = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.degrees {
            for b in &other.degrees {
                degrees.push(self.family.normalize(*a + *b));
            }
        }
        degrees
    }

    pub fn tensor(&self, other: &GradedModule) -> Result<GradedModule> {
        self.same_family(other)?;
        check_dim(self.dim() * other.dim())?;
        let degrees = self.tensor_degrees(other);
        let x = self.tensor_x(other);
        Ok(GradedModule::from_parts(&self.family, degrees, x))
    }

    /// Hom_k(M, k) with (X·f)(m) = f(S(X)m).
    pub fn dual(&self) -> Result<GradedModule> {
        let degrees = self.degrees.iter().map(|&d| self.family.normalize(-d)).collect();
        let xt = self.x.transpose();
        let x = match self.family.kind() {
            FamilyKind::Truncated { .. } => xt.neg(),
            // S(X) = -K^{-1}X
            FamilyKind::Taft { .. } => {
                let kinv = self.k_matrix().inverse()?;
                kinv.mul(&self.x).transpose().neg()
            }
            // S(g + 1) = g + 1
            FamilyKind::GroupRingZ2 => xt,
        };
        Ok(GradedModule::from_parts(&self.family, degrees, x))
    }

    /// Σ_d dim(M_d) q^d.
    pub fn poincare_polynomial(&self) -> HalfLaurent {
        let mut p = HalfLaurent::zero();
        for d in &self.degrees {
            p = p.add(&HalfLaurent::monomial(*d, 1));
        }
        p
    }

    /// The action of the family's Hopf algebra on this module.
    pub fn action(&self) -> Result<Action<'_>> {
        if self.family.is_taft() {
            if let Some(d) = self.degrees.iter().find(|d| !d.is_integral()) {
                return Err(Error::FractionalShift(format!(
                    "K^n acts as -1 in degree {d}; the Hopf action needs integral degrees"
                )));
            }
        }
        Ok(Action {
            module: self,
            algebra: self.family.hopf_algebra()?,
            cache: RefCell::new(HashMap::new()),
        })
    }
}

/// Matrices of algebra elements acting on a module, cached per monomial.
pub struct Action<'a> {
    module: &'a GradedModule,
    algebra: Arc<HopfAlgebra>,
    cache: RefCell<HashMap<usize, Matrix>>,
}

impl Action<'_> {
    pub fn algebra(&self) -> &HopfAlgebra {
        &self.algebra
    }

    pub fn monomial(&self, i: usize) -> Matrix {
        if let Some(m) = self.cache.borrow().get(&i) {
            return m.clone();
        }
        let md = self.module;
        let f = md.field();
        let id = Matrix::identity(f, md.dim());
        let m = match md.family.kind() {
            FamilyKind::Truncated { .. } => md.x.pow(i),
            FamilyKind::Taft { n, .. } => {
                let n = n as usize;
                md.x.pow(i / n).mul(&md.k_matrix().pow(i % n))
            }
            FamilyKind::GroupRingZ2 => {
                if i == 0 {
                    id
                } else {
                    id.add(&md.x)
                }
            }
        };
        self.cache.borrow_mut().insert(i, m.clone());
        m
    }

    pub fn element(&self, a: &[Scalar]) -> Matrix {
        let md = self.module;
        let f = md.field();
        let mut acc = Matrix::zeros(f, md.dim(), md.dim());
        for (i, c) in a.iter().enumerate() {
            if !f.is_zero(c) {
                acc = acc.add(&self.monomial(i).scale(c));
            }
        }
        acc
    }
}

/// Degree-preserving X-equivariant linear map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleHom {
    source: GradedModule,
    target: GradedModule,
    mat: Matrix,
}

pub(crate) fn hom_violations(source: &GradedModule, target: &GradedModule, mat: &Matrix) -> Vec<Violation> {
    let mut out = Vec::new();
    if mat.rows() != target.dim() || mat.cols() != source.dim() {
        out.push(Violation::new(
            ViolationKind::Shape,
            format!(
                "map is {}x{}, expected {}x{}",
                mat.rows(),
                mat.cols(),
                target.dim(),
                source.dim()
            ),
        ));
        return out;
    }
    if mat.field() != source.field() {
        out.push(Violation::new(ViolationKind::Field, "map over the wrong field"));
        return out;
    }
    for (r, c, _) in mat.entries() {
        if target.degrees[r] != source.degrees[c] {
            out.push(Violation::new(
                ViolationKind::Homogeneity,
                format!("map not degree-preserving at ({r}, {c})"),
            ));
        }
    }
    if target.x.mul(mat) != mat.mul(&source.x) {
        out.push(Violation::new(
            ViolationKind::Equivariance,
            "map does not commute with X",
        ));
    }
    out
}

impl ModuleHom {
    pub fn new(source: &GradedModule, target: &GradedModule, mat: Matrix) -> Result<ModuleHom> {
        source.same_family(target)?;
        violations_to_error(hom_violations(source, target, &mat))?;
        Ok(ModuleHom {
            source: source.clone(),
            target: target.clone(),
            mat,
        })
    }

    pub(crate) fn from_parts(source: &GradedModule, target: &GradedModule, mat: Matrix) -> ModuleHom {
        debug_assert!(
            hom_violations(source, target, &mat).is_empty(),
            "internal map is not a module map"
        );
        ModuleHom {
            source: source.clone(),
            target: target.clone(),
            mat,
        }
    }

    pub fn identity(m: &GradedModule) -> ModuleHom {
        ModuleHom {
            source: m.clone(),
            target: m.clone(),
            mat: Matrix::identity(m.field(), m.dim()),
        }
    }

    pub fn zero(source: &GradedModule, target: &GradedModule) -> ModuleHom {
        ModuleHom {
            source: source.clone(),
            target: target.clone(),
            mat: Matrix::zeros(source.field(), target.dim(), source.dim()),
        }
    }

    pub fn source(&self) -> &GradedModule {
        &self.source
    }
    pub fn target(&self) -> &GradedModule {
        &self.target
    }
    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    pub fn validate(&self) -> Vec<Violation> {
        hom_violations(&self.source, &self.target, &self.mat)
    }

    /// self ∘ other.
    pub fn compose(&self, other: &ModuleHom) -> Result<ModuleHom> {
        if other.target != self.source {
            return Err(Error::DimensionMismatch("composition of non-matching maps".into()));
        }
        Ok(ModuleHom {
            source: other.source.clone(),
            target: self.target.clone(),
            mat: self.mat.mul(&other.mat),
        })
    }

    fn check_parallel(&self, other: &ModuleHom) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::DimensionMismatch("maps are not parallel".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &ModuleHom) -> Result<ModuleHom> {
        self.check_parallel(other)?;
        Ok(ModuleHom {
            mat: self.mat.add(&other.mat),
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &ModuleHom) -> Result<ModuleHom> {
        self.check_parallel(other)?;
        Ok(ModuleHom {
            mat: self.mat.sub(&other.mat),
            ..self.clone()
        })
    }

    pub fn scale(&self, s: &Scalar) -> ModuleHom {
        ModuleHom {
            mat: self.mat.scale(s),
            ..self.clone()
        }
    }
}

/// Basis of the degree-0 module maps M → N.
pub fn hom_basis(m: &GradedModule, n: &GradedModule) -> Result<Vec<ModuleHom>> {
    m.same_family(n)?;
    let maps = opmod::equivariant_maps(
        m.field(),
        m.degrees(),
        std::slice::from_ref(m.x()),
        n.degrees(),
        std::slice::from_ref(n.x()),
        |a, b| a == b,
    );
    Ok(maps.into_iter().map(|h| ModuleHom::from_parts(m, n, h)).collect())
}
