use std::fmt;
use std::sync::{Arc, OnceLock};

use super::degree::{Degree, Grading};
use super::hopf::{Elem, HopfAlgebra, Presentation};
use super::module::GradedModule;
use crate::error::{Error, Result};
use crate::field::{is_prime, Field, Matrix, Scalar};

/// Largest nilpotency order of X accepted at desk scale.
pub const MAX_ORDER: u32 = 64;
/// Default bound on module dimension; `HOPFOLOG_MAX_DIM` overrides it.
pub const DEFAULT_MAX_DIM: usize = 4096;

pub fn max_module_dim() -> usize {
    std::env::var("HOPFOLOG_MAX_DIM")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_DIM)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// k[X]/(X^{p^m}) over F_p, X primitive.
    Truncated { p: u32, m: u32 },
    /// Taft algebra H_n over Q(ζ_n), or over Q(ζ_{2n}) when `balanced`.
    Taft { n: u32, balanced: bool },
    /// k[Z_2] over F_2 with X = g + 1.
    GroupRingZ2,
}

/// Which homogeneous basis vector of the graded regular module sits in degree 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Anchor {
    /// The integral Λ has degree 0 (used for M → H⊗M and TM).
    Integral,
    /// The unit 1 has degree 0, so ε is degree-preserving (used for T′M).
    Counit,
}

/// The regular module H as a graded module, with each basis vector's algebra
/// coordinates.
#[derive(Debug)]
pub struct RegularModule {
    pub module: GradedModule,
    pub elems: Vec<Elem>,
    /// Basis index spanning kΛ.
    pub integral: usize,
    /// Basis index dual to ε (ε is the coordinate functional of this vector).
    pub counit: usize,
}

struct Inner {
    kind: FamilyKind,
    grading: Grading,
    field: Field,
    order: u32,
    algebra: OnceLock<std::result::Result<Arc<HopfAlgebra>, Error>>,
    regular: [OnceLock<std::result::Result<Arc<RegularModule>, Error>>; 2],
}

/// One of the three Hopf algebra families together with its grading mode.
#[derive(Clone)]
pub struct HopfFamily(Arc<Inner>);

impl PartialEq for HopfFamily {
    fn eq(&self, other: &Self) -> bool {
        self.0.kind == other.0.kind && self.0.grading == other.0.grading
    }
}
impl Eq for HopfFamily {}

impl fmt::Debug for HopfFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for HopfFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.kind {
            FamilyKind::Truncated { p, m } => write!(f, "truncated(p={p}, m={m}")?,
            FamilyKind::Taft { n, balanced } => {
                write!(f, "taft(n={n}")?;
                if balanced {
                    write!(f, ", balanced")?;
                }
            }
            FamilyKind::GroupRingZ2 => write!(f, "group-ring-z2(")?,
        }
        match self.0.grading {
            Grading::Trivial => write!(f, ")"),
            g => write!(f, ", {g})"),
        }
    }
}

impl HopfFamily {
    fn build(kind: FamilyKind, grading: Grading, field: Field, order: u32) -> HopfFamily {
        HopfFamily(Arc::new(Inner {
            kind,
            grading,
            field,
            order,
            algebra: OnceLock::new(),
            regular: [OnceLock::new(), OnceLock::new()],
        }))
    }

    /// k[X]/(X^{p^m}); `cyclic` selects Z/p^m grading instead of Z.
    pub fn truncated(p: u32, m: u32, cyclic: bool) -> Result<HopfFamily> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(Error::InvalidParameter("m must be at least 1".into()));
        }
        let order = (p as u64)
            .checked_pow(m)
            .filter(|&n| n <= MAX_ORDER as u64)
            .ok_or_else(|| Error::BoundExceeded(format!("p^m = {p}^{m} exceeds {MAX_ORDER}")))?
            as u32;
        let grading = if cyclic {
            Grading::Cyclic(order)
        } else {
            Grading::Integer
        };
        Ok(Self::build(
            FamilyKind::Truncated { p, m },
            grading,
            Field::prime(p)?,
            order,
        ))
    }

    /// Taft algebra over Q(ζ_n).
    pub fn taft(n: u32, cyclic: bool) -> Result<HopfFamily> {
        Self::taft_with(n, cyclic, false)
    }

    /// Taft algebra over Q(ζ_{2n}), admitting half-integer degrees.
    pub fn taft_balanced(n: u32, cyclic: bool) -> Result<HopfFamily> {
        Self::taft_with(n, cyclic, true)
    }

    fn taft_with(n: u32, cyclic: bool, balanced: bool) -> Result<HopfFamily> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("Taft order {n} < 2")));
        }
        if n > MAX_ORDER {
            return Err(Error::BoundExceeded(format!("Taft order {n} > {MAX_ORDER}")));
        }
        let field = Field::cyclotomic(if balanced { 2 * n } else { n })?;
        let grading = if cyclic { Grading::Cyclic(n) } else { Grading::Integer };
        Ok(Self::build(FamilyKind::Taft { n, balanced }, grading, field, n))
    }

    /// k[Z_2] in characteristic 2 (ungraded).
    pub fn group_ring_z2() -> HopfFamily {
        Self::build(
            FamilyKind::GroupRingZ2,
            Grading::Trivial,
            Field::prime(2).expect("2 is prime"),
            2,
        )
    }

    /// Same family with the other grading mode (no-op for the group ring).
    pub fn with_cyclic(&self, cyclic: bool) -> Result<HopfFamily> {
        match self.0.kind {
            FamilyKind::Truncated { p, m } => Self::truncated(p, m, cyclic),
            FamilyKind::Taft { n, balanced } => Self::taft_with(n, cyclic, balanced),
            FamilyKind::GroupRingZ2 => Ok(self.clone()),
        }
    }

    pub fn kind(&self) -> FamilyKind {
        self.0.kind
    }

    pub fn grading(&self) -> Grading {
        self.0.grading
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }

    /// Nilpotency order n of X; V_{n-1}{j} are the projective indecomposables.
    pub fn order(&self) -> usize {
        self.0.order as usize
    }

    pub fn is_taft(&self) -> bool {
        matches!(self.0.kind, FamilyKind::Taft { .. })
    }

    /// Whether half-integer degrees are representable.
    pub fn allows_half_degrees(&self) -> bool {
        match self.0.kind {
            FamilyKind::Truncated { .. } => true,
            FamilyKind::Taft { balanced, .. } => balanced,
            FamilyKind::GroupRingZ2 => true,
        }
    }

    pub fn normalize(&self, d: Degree) -> Degree {
        self.0.grading.normalize(d)
    }

    /// Normalise a degree, rejecting half-integers the field cannot support.
    pub fn check_degree(&self, d: Degree) -> Result<Degree> {
        if !d.is_integral() && !self.allows_half_degrees() {
            return Err(Error::FractionalShift(format!(
                "degree {d} needs a square root of the root of unity; use the balanced {self}"
            )));
        }
        Ok(self.normalize(d))
    }

    /// ζ^k for the Taft root ζ (1 outside the Taft family).
    pub fn zeta_pow(&self, k: i64) -> Scalar {
        match self.0.kind {
            FamilyKind::Taft { balanced: true, .. } => self.0.field.zeta_pow(2 * k),
            FamilyKind::Taft { balanced: false, .. } => self.0.field.zeta_pow(k),
            _ => self.0.field.one(),
        }
    }

    /// Scalar by which K acts in degree `d` (ζ^d; ζ^{1/2} is a fixed square root).
    pub fn k_eigenvalue(&self, d: Degree) -> Scalar {
        match self.0.kind {
            FamilyKind::Taft { balanced: true, .. } => self.0.field.zeta_pow(d.halves()),
            FamilyKind::Taft { balanced: false, .. } => {
                let j = d.as_integer().expect("Taft degrees over Q(ζ_n) are integral");
                self.0.field.zeta_pow(j)
            }
            _ => self.0.field.one(),
        }
    }

    /// The explicit Hopf algebra, built and checked on first use.
    pub fn hopf_algebra(&self) -> Result<Arc<HopfAlgebra>> {
        self.0
            .algebra
            .get_or_init(|| HopfAlgebra::from_presentation(self.presentation()).map(Arc::new))
            .clone()
    }

    /// Algebra element acting on modules as the structure operator X.
    pub fn x_element(&self) -> Result<Elem> {
        let h = self.hopf_algebra()?;
        let f = self.field();
        Ok(match self.0.kind {
            FamilyKind::Truncated { .. } => h.basis(1),
            FamilyKind::Taft { n, .. } => h.basis(n as usize),
            FamilyKind::GroupRingZ2 => vec![f.one(), f.one()],
        })
    }

    fn presentation(&self) -> Presentation {
        let field = self.0.field.clone();
        let n = self.0.order as usize;
        match self.0.kind {
            FamilyKind::Truncated { .. } => {
                let one = field.one();
                Presentation {
                    labels: (0..n).map(|a| format!("X^{a}")).collect(),
                    unit: 0,
                    mul: Box::new(move |a, b| (a + b < n).then(|| (a + b, one.clone()))),
                    generators: vec![1],
                    words: (0..n).map(|a| vec![0; a]).collect(),
                    gen_coproduct: vec![vec![(1, 0, field.one()), (0, 1, field.one())]],
                    gen_antipode: vec![vec![(1, field.from_i64(-1))]],
                    gen_counit: vec![field.zero()],
                    field,
                }
            }
            FamilyKind::Taft { .. } => {
                // monomial X^a K^b has index a*n + b
                let zeta: Vec<Scalar> = (0..n as i64).map(|k| self.zeta_pow(k)).collect();
                let z2 = zeta.clone();
                let mul = move |i: usize, j: usize| {
                    let (a, b) = (i / n, i % n);
                    let (c, d) = (j / n, j % n);
                    // K^b X^c = ζ^{bc} X^c K^b
                    (a + c < n).then(|| ((a + c) * n + (b + d) % n, z2[(b * c) % n].clone()))
                };
                let x = n;
                let k = 1;
                let kinv = n - 1;
                Presentation {
                    labels: (0..n * n).map(|i| format!("X^{}K^{}", i / n, i % n)).collect(),
                    unit: 0,
                    mul: Box::new(mul),
                    generators: vec![x, k],
                    words: (0..n * n)
                        .map(|i| {
                            let mut w = vec![0; i / n];
                            w.extend(std::iter::repeat_n(1, i % n));
                            w
                        })
                        .collect(),
                    gen_coproduct: vec![
                        vec![(x, 0, field.one()), (k, x, field.one())],
                        vec![(k, k, field.one())],
                    ],
                    // S(X) = -K^{-1}X = -ζ^{-1} X K^{-1}
                    gen_antipode: vec![vec![(n + kinv, field.neg(&zeta[kinv]))], vec![(kinv, field.one())]],
                    gen_counit: vec![field.zero(), field.one()],
                    field,
                }
            }
            FamilyKind::GroupRingZ2 => {
                let one = field.one();
                Presentation {
                    labels: vec!["1".into(), "g".into()],
                    unit: 0,
                    mul: Box::new(move |a, b| Some(((a + b) % 2, one.clone()))),
                    generators: vec![1],
                    words: vec![vec![], vec![0]],
                    gen_coproduct: vec![vec![(1, 1, field.one())]],
                    gen_antipode: vec![vec![(1, field.one())]],
                    gen_counit: vec![field.one()],
                    field,
                }
            }
        }
    }

    /// The free module of rank one as a graded module.
    pub fn regular_module(&self, anchor: Anchor) -> Result<Arc<RegularModule>> {
        let slot = match anchor {
            Anchor::Integral => 0,
            Anchor::Counit => 1,
        };
        self.0.regular[slot]
            .get_or_init(|| self.build_regular(anchor).map(Arc::new))
            .clone()
    }

    fn build_regular(&self, anchor: Anchor) -> Result<RegularModule> {
        let h = self.hopf_algebra()?;
        let f = self.field().clone();
        let n = self.order();
        match self.0.kind {
            FamilyKind::Truncated { .. } => {
                let base = match anchor {
                    Anchor::Integral => 1 - n as i64,
                    Anchor::Counit => 0,
                };
                let module = GradedModule::indecomposable(self, n - 1, Degree::new(base))?;
                Ok(RegularModule {
                    module,
                    elems: (0..n).map(|a| h.basis(a)).collect(),
                    integral: n - 1,
                    counit: 0,
                })
            }
            FamilyKind::Taft { .. } => {
                // basis X^a e_b with e_b = (1/n) Σ_c ζ^{-bc} K^c, index a*n + b
                let inv_n = f.inv(&f.from_i64(n as i64))?;
                let lift = |b: usize| if b == 0 { 0 } else { b as i64 - n as i64 };
                let mut elems = Vec::with_capacity(n * n);
                let mut degrees = Vec::with_capacity(n * n);
                for a in 0..n {
                    for b in 0..n {
                        let mut e = h.zero_elem();
                        for c in 0..n {
                            let coeff = self.zeta_pow(-((b * c) as i64));
                            e[a * n + c] = f.mul(&coeff, &inv_n);
                        }
                        elems.push(e);
                        degrees.push(Degree::new(a as i64 + lift(b)));
                    }
                }
                let x = Matrix::from_fn(&f, n * n, n * n, |r, c| {
                    let (a, b) = (c / n, c % n);
                    if a + 1 < n && r == (a + 1) * n + b {
                        f.one()
                    } else {
                        f.zero()
                    }
                });
                let module = GradedModule::new(self, degrees, x)?;
                Ok(RegularModule {
                    module,
                    elems,
                    integral: (n - 1) * n + 1,
                    counit: 0,
                })
            }
            FamilyKind::GroupRingZ2 => {
                let module = GradedModule::indecomposable(self, 1, Degree::ZERO)?;
                Ok(RegularModule {
                    module,
                    elems: vec![vec![f.one(), f.zero()], vec![f.one(), f.one()]],
                    integral: 1,
                    counit: 0,
                })
            }
        }
    }

    /// Degrees carried by the homogeneous components of 1 in the integral-anchored
    /// regular module.
    pub fn unit_component_degrees(&self) -> Result<Vec<Degree>> {
        let reg = self.regular_module(Anchor::Integral)?;
        let h = self.hopf_algebra()?;
        let coords = reg.coordinates(&h.one())?;
        let mut out: Vec<Degree> = coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.field().is_zero(c))
            .map(|(i, _)| reg.module.degrees()[i])
            .collect();
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl RegularModule {
    /// Coordinates of an algebra element in the graded basis.
    pub fn coordinates(&self, a: &[Scalar]) -> Result<Vec<Scalar>> {
        let field = self.module.field();
        let basis = Matrix::from_columns(field, a.len(), &self.elems);
        let rhs = Matrix::from_columns(field, a.len(), &[a.to_vec()]);
        let sol = basis.solve(&rhs)?;
        sol.particular
            .map(|x| x.column(0))
            .ok_or_else(|| Error::Internal("graded basis does not span the algebra".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn families() -> Vec<HopfFamily> {
        vec![
            HopfFamily::truncated(2, 1, false).unwrap(),
            HopfFamily::truncated(3, 1, false).unwrap(),
            HopfFamily::truncated(2, 2, true).unwrap(),
            HopfFamily::taft(2, false).unwrap(),
            HopfFamily::taft(3, false).unwrap(),
            HopfFamily::taft(4, true).unwrap(),
            HopfFamily::taft_balanced(3, false).unwrap(),
            HopfFamily::group_ring_z2(),
        ]
    }

    #[test]
    fn hopf_axioms_hold() {
        for fam in families() {
            let h = fam.hopf_algebra().unwrap();
            assert!(h.axiom_violations().is_empty(), "{fam}: {:?}", h.axiom_violations());
        }
    }

    #[test]
    fn truncated_integral_is_top_power() {
        let fam = HopfFamily::truncated(5, 1, false).unwrap();
        let h = fam.hopf_algebra().unwrap();
        let lam = h.left_integral();
        let f = fam.field();
        for (i, c) in lam.iter().enumerate() {
            assert_eq!(f.is_zero(c), i != 4);
        }
    }

    #[test]
    fn regular_module_matches_left_multiplication() {
        for fam in families() {
            for anchor in [Anchor::Integral, Anchor::Counit] {
                let reg = fam.regular_module(anchor).unwrap();
                let h = fam.hopf_algebra().unwrap();
                let x = fam.x_element().unwrap();
                let f = fam.field();
                for (i, e) in reg.elems.iter().enumerate() {
                    let image = reg.coordinates(&h.mul(&x, e)).unwrap();
                    assert_eq!(image, reg.module.x().column(i), "{fam} basis {i}");
                    let eps = h.counit(e);
                    assert_eq!(f.is_zero(&eps), i != reg.counit, "{fam} counit at {i}");
                }
                let lam = reg.coordinates(h.left_integral()).unwrap();
                for (i, c) in lam.iter().enumerate() {
                    assert_eq!(f.is_zero(c), i != reg.integral, "{fam} integral at {i}");
                }
                if fam.is_taft() {
                    let k = h.basis(1);
                    for (i, e) in reg.elems.iter().enumerate() {
                        let image = reg.coordinates(&h.mul(&k, e)).unwrap();
                        assert_eq!(image, reg.module.k_matrix().column(i));
                    }
                }
            }
        }
    }

    #[test]
    fn integral_sits_in_degree_zero() {
        for fam in families() {
            let reg = fam.regular_module(Anchor::Integral).unwrap();
            assert_eq!(reg.module.degrees()[reg.integral], Degree::ZERO, "{fam}");
            let reg = fam.regular_module(Anchor::Counit).unwrap();
            assert_eq!(reg.module.degrees()[reg.counit], Degree::ZERO, "{fam}");
        }
    }

    #[test]
    fn parameter_validation() {
        assert!(HopfFamily::truncated(4, 1, false).is_err());
        assert!(HopfFamily::truncated(2, 7, false).is_err());
        assert!(HopfFamily::taft(1, false).is_err());
        assert!(HopfFamily::taft(65, false).is_err());
    }
}
