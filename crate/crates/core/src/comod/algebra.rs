//! Graded algebras B with a nilpotent derivation ∂ of degree -1.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Matrix, Scalar};
use crate::grmod::module::violations_to_error;
use crate::grmod::{Degree, FamilyKind, HopfFamily, Violation, ViolationKind};

/// B with basis e_0..e_{d-1}; `mult[i]` is left multiplication by e_i.
#[derive(Clone, PartialEq, Eq)]
pub struct DerivationAlgebra {
    family: HopfFamily,
    degrees: Vec<Degree>,
    mult: Vec<Matrix>,
    unit: Vec<Scalar>,
    derivation: Matrix,
}

impl fmt::Debug for DerivationAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DerivationAlgebra")
            .field("family", &self.family)
            .field("degrees", &self.degrees)
            .field("derivation", &self.derivation)
            .finish()
    }
}

/// Structure constant e_i e_j = Σ c e_k, listed as (i, j, k, c).
pub type StructureConstant = (usize, usize, usize, Scalar);

impl DerivationAlgebra {
    /// Assemble without validation; see [`DerivationAlgebra::validate`].
    pub fn new_unchecked(
        family: &HopfFamily,
        degrees: Vec<Degree>,
        constants: &[StructureConstant],
        unit: Vec<Scalar>,
        derivation: Matrix,
    ) -> Result<DerivationAlgebra> {
        let f = family.field();
        let d = degrees.len();
        if unit.len() != d || derivation.rows() != d || derivation.cols() != d {
            return Err(Error::DimensionMismatch(format!(
                "algebra of dimension {d} has mismatched unit or derivation"
            )));
        }
        if derivation.field() != f {
            return Err(Error::FieldMismatch(derivation.field().to_string(), f.to_string()));
        }
        let mut mult = vec![Matrix::zeros(f, d, d); d];
        for (i, j, k, c) in constants {
            if *i >= d || *j >= d || *k >= d {
                return Err(Error::OutOfRange(format!(
                    "structure constant ({i}, {j}, {k}) in dimension {d}"
                )));
            }
            let cur = mult[*i].get(*k, *j);
            mult[*i].set(*k, *j, f.add(&cur, c));
        }
        let degrees = degrees.into_iter().map(|g| family.normalize(g)).collect();
        Ok(DerivationAlgebra {
            family: family.clone(),
            degrees,
            mult,
            unit,
            derivation,
        })
    }

    pub fn new(
        family: &HopfFamily,
        degrees: Vec<Degree>,
        constants: &[StructureConstant],
        unit: Vec<Scalar>,
        derivation: Matrix,
    ) -> Result<DerivationAlgebra> {
        let b = Self::new_unchecked(family, degrees, constants, unit, derivation)?;
        violations_to_error(b.validate())?;
        Ok(b)
    }

    /// B = k with ∂ = 0.
    pub fn ground(family: &HopfFamily) -> Result<DerivationAlgebra> {
        let f = family.field();
        Self::new(
            family,
            vec![Degree::ZERO],
            &[(0, 0, 0, f.one())],
            vec![f.one()],
            Matrix::zeros(f, 1, 1),
        )
    }

    /// k[t]/(t^r), t in degree 1, with ∂ = c·d/dt.
    pub fn truncated_polynomial(family: &HopfFamily, r: usize, c: i64) -> Result<DerivationAlgebra> {
        if r == 0 {
            return Err(Error::InvalidParameter("k[t]/(t^0) is the zero ring".into()));
        }
        let f = family.field();
        let mut constants = Vec::new();
        for i in 0..r {
            for j in 0..r - i {
                constants.push((i, j, i + j, f.one()));
            }
        }
        let mut unit = vec![f.zero(); r];
        unit[0] = f.one();
        let derivation = Matrix::from_fn(f, r, r, |row, col| {
            if col == row + 1 {
                f.from_i64(c * col as i64)
            } else {
                f.zero()
            }
        });
        let degrees = (0..r).map(|k| Degree::new(k as i64)).collect();
        Self::new(family, degrees, &constants, unit, derivation)
    }

    /// k × k (orthogonal idempotents), concentrated in degree 0.
    pub fn split_semisimple(family: &HopfFamily) -> Result<DerivationAlgebra> {
        let f = family.field();
        Self::new(
            family,
            vec![Degree::ZERO; 2],
            &[(0, 0, 0, f.one()), (1, 1, 1, f.one())],
            vec![f.one(), f.one()],
            Matrix::zeros(f, 2, 2),
        )
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
    pub fn left_mult(&self, i: usize) -> &Matrix {
        &self.mult[i]
    }
    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }
    pub fn derivation(&self) -> &Matrix {
        &self.derivation
    }

    pub fn is_derivation_zero(&self) -> bool {
        self.derivation.is_zero()
    }

    /// Left multiplication by an arbitrary element.
    pub fn left_mult_of(&self, b: &[Scalar]) -> Matrix {
        combine(self.field(), self.dim(), &self.mult, b)
    }

    /// All (i, j, k, c) with c ≠ 0.
    pub fn structure_constants(&self) -> Vec<StructureConstant> {
        let mut out = Vec::new();
        for (i, m) in self.mult.iter().enumerate() {
            for (k, j, c) in m.entries() {
                out.push((i, j, k, c));
            }
        }
        out
    }

    pub fn validate(&self) -> Vec<Violation> {
        let f = self.field();
        let d = self.dim();
        let mut out = Vec::new();
        let p = f.characteristic();
        match self.family.kind() {
            FamilyKind::Truncated { m: 1, .. } => {}
            FamilyKind::Taft { .. } => out.push(Violation::new(
                ViolationKind::Coaction,
                "smash products are supported over the truncated and group-ring families only",
            )),
            _ if !self.derivation.is_zero() => out.push(Violation::new(
                ViolationKind::Coaction,
                format!("X is not primitive in {}; the derivation must vanish", self.family),
            )),
            _ => {}
        }
        let unit_mult = self.left_mult_of(&self.unit);
        if unit_mult != Matrix::identity(f, d) {
            out.push(Violation::new(
                ViolationKind::Unit,
                "the unit does not act as identity on the left",
            ));
        }
        for j in 0..d {
            if self.mult[j]
                .mul(&Matrix::from_columns(f, d, std::slice::from_ref(&self.unit)))
                .column(0)
                != basis(f, d, j)
            {
                out.push(Violation::new(ViolationKind::Unit, format!("e_{j}·1 ≠ e_{j}")));
            }
        }
        for i in 0..d {
            for j in 0..d {
                // (e_i e_j) e_k = e_i (e_j e_k) for all k
                let lhs = self.left_mult_of(&self.mult[i].column(j));
                let rhs = self.mult[i].mul(&self.mult[j]);
                if lhs != rhs {
                    out.push(Violation::new(
                        ViolationKind::Associativity,
                        format!("(e_{i}e_{j})e_k ≠ e_{i}(e_{j}e_k)"),
                    ));
                }
            }
        }
        for (i, m) in self.mult.iter().enumerate() {
            for (k, j, _) in m.entries() {
                if self.family.normalize(self.degrees[i] + self.degrees[j]) != self.degrees[k] {
                    out.push(Violation::new(
                        ViolationKind::Homogeneity,
                        format!("e_{i}e_{j} has a component on e_{k} of the wrong degree"),
                    ));
                }
            }
        }
        for (k, i, _) in self.derivation.entries() {
            if self.family.normalize(self.degrees[i] - Degree::new(1)) != self.degrees[k] {
                out.push(Violation::new(
                    ViolationKind::Homogeneity,
                    format!("∂e_{i} has a component on e_{k} not in degree deg(e_{i}) - 1"),
                ));
            }
        }
        for i in 0..d {
            for j in 0..d {
                // ∂(e_i e_j) = ∂(e_i)e_j + e_i∂(e_j)
                let prod = self.mult[i].column(j);
                let lhs = self.derivation.mul(&Matrix::from_columns(f, d, &[prod])).column(0);
                let a = self.left_mult_of(&self.derivation.column(i)).column(j);
                let b = self.mult[i].mul(&self.derivation).column(j);
                let rhs: Vec<Scalar> = a.iter().zip(&b).map(|(x, y)| f.add(x, y)).collect();
                if lhs != rhs {
                    out.push(Violation::new(
                        ViolationKind::Leibniz,
                        format!("Leibniz fails on (e_{i}, e_{j})"),
                    ));
                }
            }
        }
        let del1 = self
            .derivation
            .mul(&Matrix::from_columns(f, d, std::slice::from_ref(&self.unit)));
        if !del1.is_zero() {
            out.push(Violation::new(ViolationKind::Leibniz, "∂(1) ≠ 0"));
        }
        if p > 0 && !self.derivation.pow(p as usize).is_zero() {
            out.push(Violation::new(ViolationKind::Nilpotency, format!("∂^{p} ≠ 0")));
        }
        out
    }
}

pub(crate) fn basis(f: &Field, d: usize, j: usize) -> Vec<Scalar> {
    (0..d).map(|k| if k == j { f.one() } else { f.zero() }).collect()
}

pub(crate) fn combine(f: &Field, d: usize, mats: &[Matrix], coeffs: &[Scalar]) -> Matrix {
    let mut acc = Matrix::zeros(f, d, d);
    for (m, c) in mats.iter().zip(coeffs) {
        if !f.is_zero(c) {
            acc = acc.add(&m.scale(c));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_algebras_validate() {
        let f2 = HopfFamily::truncated(2, 1, false).unwrap();
        let f3 = HopfFamily::truncated(3, 1, false).unwrap();
        DerivationAlgebra::ground(&f2).unwrap();
        DerivationAlgebra::truncated_polynomial(&f2, 2, 1).unwrap();
        DerivationAlgebra::truncated_polynomial(&f3, 3, 1).unwrap();
        DerivationAlgebra::split_semisimple(&f3).unwrap();
        DerivationAlgebra::truncated_polynomial(&HopfFamily::group_ring_z2(), 2, 0).unwrap();
    }

    #[test]
    fn leibniz_failure_is_located() {
        // ∂t = 1 on k[t]/(t^2) in characteristic 3: ∂(t·t) = 0 but 2t ≠ 0
        let fam = HopfFamily::truncated(3, 1, false).unwrap();
        let f = fam.field().clone();
        let der = Matrix::from_fn(&f, 2, 2, |r, c| if (r, c) == (0, 1) { f.one() } else { f.zero() });
        let consts = [(0, 0, 0, f.one()), (0, 1, 1, f.one()), (1, 0, 1, f.one())];
        let b = DerivationAlgebra::new_unchecked(
            &fam,
            vec![Degree::ZERO, Degree::new(1)],
            &consts,
            vec![f.one(), f.zero()],
            der,
        )
        .unwrap();
        let v = b.validate();
        assert!(v
            .iter()
            .any(|x| x.kind == ViolationKind::Leibniz && x.message.contains("(e_1, e_1)")));
    }

    #[test]
    fn group_ring_needs_trivial_derivation() {
        let fam = HopfFamily::group_ring_z2();
        assert!(DerivationAlgebra::truncated_polynomial(&fam, 2, 1).is_err());
    }
}
