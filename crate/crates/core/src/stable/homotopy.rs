//! Projective stripping, null-homotopy and stable Hom.
//!
//! A map f: M → N is null-homotopic iff f = Σ Λ₁·φ·S(Λ₂) for a linear φ whose
//! homogeneous components shift degree by the degrees of the components of 1
//! in the graded regular module. The map h(a⊗m) = Σ a₁·φ(S(a₂)m) is then a
//! module map H⊗M → N with h(Λ⊗m) = f(m).

use crate::error::{Error, Result};
use crate::field::{Matrix, Scalar};
use crate::grmod::opmod::{allowed_positions, place, EquationBuilder, SparseView};
use crate::grmod::{decompose, Anchor, Decomposition, Degree, GradedModule, ModuleHom};

/// H⊗M for the integral-anchored H, with the embedding m ↦ Λ⊗m.
#[derive(Clone, Debug)]
pub struct HTensor {
    pub module: GradedModule,
    pub embedding: ModuleHom,
}

/// H⊗M with H anchored as requested; basis index a*dim(M) + b.
pub(crate) fn regular_tensor(m: &GradedModule, anchor: Anchor) -> Result<GradedModule> {
    let reg = m.family().regular_module(anchor)?;
    reg.module.tensor(m)
}

pub fn h_tensor(m: &GradedModule) -> Result<HTensor> {
    let family = m.family();
    let reg = family.regular_module(Anchor::Integral)?;
    let module = reg.module.tensor(m)?;
    let f = m.field();
    let d = m.dim();
    let mut emb = Matrix::zeros(f, module.dim(), d);
    for j in 0..d {
        emb.set(reg.integral * d + j, j, f.one());
    }
    let embedding = ModuleHom::from_parts(m, &module, emb);
    Ok(HTensor { module, embedding })
}

/// (stable part, projective part) of the decomposition.
pub fn stable_decompose(m: &GradedModule) -> (Decomposition, Decomposition) {
    let dec = decompose(m);
    (dec.stable_part(), dec.projective_part())
}

pub fn stable_class(m: &GradedModule) -> Decomposition {
    decompose(m).stable_part()
}

/// The module rebuilt from its non-projective summands.
pub fn stable_core(m: &GradedModule) -> Result<GradedModule> {
    stable_class(m).reassemble(m.family())
}

pub fn is_stably_trivial(m: &GradedModule) -> bool {
    stable_class(m).is_empty()
}

pub fn stably_isomorphic(a: &GradedModule, b: &GradedModule) -> Result<bool> {
    a.same_family(b)?;
    Ok(stable_class(a) == stable_class(b))
}

/// Factorisation of a null-homotopic map through Λ⊗Id.
#[derive(Clone, Debug)]
pub struct HomotopyWitness {
    /// The module map H⊗M₁ → M₂.
    pub h: ModuleHom,
    /// Its restriction to 1⊗M₁.
    pub phi: Matrix,
}

impl HomotopyWitness {
    /// h∘(Λ⊗Id) reproduces f.
    pub fn reproduces(&self, f: &ModuleHom) -> Result<bool> {
        let emb = h_tensor(f.source())?.embedding;
        Ok(self.h.matrix().mul(emb.matrix()) == *f.matrix())
    }
}

/// Trace terms c·p_N and S(q)_M over Δ(Λ), plus the permitted degree shifts of φ.
pub(crate) struct Trace {
    terms: Vec<(Matrix, Matrix)>,
    shifts: Vec<Degree>,
}

impl Trace {
    pub(crate) fn new(m: &GradedModule, n: &GradedModule) -> Result<Trace> {
        m.same_family(n)?;
        let family = m.family();
        let h = family.hopf_algebra()?;
        let reg = family.regular_module(Anchor::Integral)?;
        let (am, an) = (m.action()?, n.action()?);
        let lambda = &reg.elems[reg.integral];
        let terms = h
            .coproduct(lambda)
            .into_iter()
            .map(|(p, q, c)| (an.monomial(p).scale(&c), am.element(&h.antipode(&h.basis(q)))))
            .collect();
        let shifts = family.unit_component_degrees()?;
        Ok(Trace { terms, shifts })
    }

    /// Σ c·p·φ·S(q).
    pub(crate) fn apply(&self, phi: &Matrix) -> Matrix {
        let mut acc: Option<Matrix> = None;
        for (p, q) in &self.terms {
            let t = p.mul(phi).mul(q);
            acc = Some(match acc {
                None => t,
                Some(a) => a.add(&t),
            });
        }
        acc.expect("coproduct of a nonzero integral")
    }
}

/// Linear system whose columns are Tr of the elementary admissible φ, restricted
/// to degree-0 entries of the output.
struct TraceSystem {
    positions: Vec<(usize, usize)>,
    eq: EquationBuilder,
}

fn trace_system(trace: &Trace, m: &GradedModule, n: &GradedModule) -> TraceSystem {
    let family = m.family();
    let f = m.field();
    let shifts: Vec<Degree> = trace.shifts.iter().map(|&s| family.normalize(s)).collect();
    let positions = allowed_positions(m.degrees(), n.degrees(), |ds, dt| {
        shifts.contains(&family.normalize(dt - ds))
    });
    let mut eq = EquationBuilder::new(f, positions.len());
    let views: Vec<(SparseView, SparseView)> = trace
        .terms
        .iter()
        .map(|(p, q)| (SparseView::new(p), SparseView::new(q)))
        .collect();
    for (u, &(r, c)) in positions.iter().enumerate() {
        for (pv, qv) in &views {
            for (i, x) in &pv.by_col[r] {
                for (j, y) in &qv.by_row[c] {
                    if n.degrees()[*i] != m.degrees()[*j] {
                        continue;
                    }
                    let row = eq.row((*i, *j, 0));
                    eq.add(row, u, &f.mul(x, y));
                }
            }
        }
    }
    TraceSystem { positions, eq }
}

/// Build h: H⊗M → N from φ.
fn witness_map(m: &GradedModule, n: &GradedModule, phi: &Matrix) -> Result<HomotopyWitness> {
    let family = m.family();
    let h = family.hopf_algebra()?;
    let reg = family.regular_module(Anchor::Integral)?;
    let hm = reg.module.tensor(m)?;
    let (am, an) = (m.action()?, n.action()?);
    let f = m.field();
    let blocks: Vec<Matrix> = reg
        .elems
        .iter()
        .map(|e| {
            let mut acc = Matrix::zeros(f, n.dim(), m.dim());
            for (p, q, c) in h.coproduct(e) {
                let s = am.element(&h.antipode(&h.basis(q)));
                acc = acc.add(&an.monomial(p).mul(phi).mul(&s).scale(&c));
            }
            acc
        })
        .collect();
    let refs: Vec<&Matrix> = blocks.iter().collect();
    let mat = Matrix::hstack(f, n.dim(), &refs);
    let hmap = ModuleHom::new(&hm, n, mat)
        .map_err(|e| Error::Internal(format!("homotopy witness is not a module map: {e}")))?;
    Ok(HomotopyWitness {
        h: hmap,
        phi: phi.clone(),
    })
}

/// A witness h with h∘(Λ⊗Id) = f, or None when f is nonzero stably.
pub fn null_homotopy(f: &ModuleHom) -> Result<Option<HomotopyWitness>> {
    let (m, n) = (f.source(), f.target());
    let field = m.field();
    if f.is_zero() {
        let phi = Matrix::zeros(field, n.dim(), m.dim());
        return witness_map(m, n, &phi).map(Some);
    }
    let trace = Trace::new(m, n)?;
    let sys = trace_system(&trace, m, n);
    let mut rhs = vec![field.zero(); sys.eq.row_count()];
    for (i, j, v) in f.matrix().entries() {
        match sys.eq.key_index(&(i, j, 0)) {
            Some(r) => rhs[r] = v,
            None => return Ok(None),
        }
    }
    let a = sys.eq.matrix();
    let b = Matrix::from_columns(field, a.rows(), &[rhs]);
    let Some(x) = a.solve(&b)?.particular else {
        return Ok(None);
    };
    let phi = place(field, n.dim(), m.dim(), &sys.positions, &x.column(0));
    debug_assert_eq!(&trace.apply(&phi), f.matrix());
    let w = witness_map(m, n, &phi)?;
    if !w.reproduces(f)? {
        return Err(Error::Internal("homotopy witness does not reproduce the map".into()));
    }
    Ok(Some(w))
}

pub fn is_null_homotopic(f: &ModuleHom) -> Result<bool> {
    Ok(null_homotopy(f)?.is_some())
}

/// Dimensions of Hom, its null-homotopic subspace, and their quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StableHom {
    pub hom: usize,
    pub null_homotopic: usize,
}

impl StableHom {
    pub fn stable(&self) -> usize {
        self.hom - self.null_homotopic
    }
}

pub fn stable_hom(m: &GradedModule, n: &GradedModule) -> Result<StableHom> {
    let hom = crate::grmod::hom_basis(m, n)?.len();
    let trace = Trace::new(m, n)?;
    let sys = trace_system(&trace, m, n);
    let null_homotopic = if sys.eq.row_count() == 0 {
        0
    } else {
        sys.eq.matrix().rank()
    };
    if null_homotopic > hom {
        return Err(Error::Internal("null-homotopic maps exceed Hom".into()));
    }
    Ok(StableHom { hom, null_homotopic })
}

pub fn stable_hom_dim(m: &GradedModule, n: &GradedModule) -> Result<usize> {
    Ok(stable_hom(m, n)?.stable())
}

/// Basis of the null-homotopic maps M → N (images of the trace).
pub fn null_homotopic_basis(m: &GradedModule, n: &GradedModule) -> Result<Vec<Matrix>> {
    let trace = Trace::new(m, n)?;
    let field = m.field();
    let sys = trace_system(&trace, m, n);
    let cols: Vec<Vec<Scalar>> = (0..sys.positions.len())
        .map(|u| {
            let mut e = vec![field.zero(); sys.positions.len()];
            e[u] = field.one();
            let phi = place(field, n.dim(), m.dim(), &sys.positions, &e);
            trace.apply(&phi).entries_flat()
        })
        .collect();
    let span = Matrix::from_columns(field, n.dim() * m.dim(), &cols)
        .transpose()
        .row_basis();
    Ok((0..span.rows())
        .map(|r| Matrix::from_fn(field, n.dim(), m.dim(), |i, j| span.get(r, i * m.dim() + j)))
        .collect())
}
