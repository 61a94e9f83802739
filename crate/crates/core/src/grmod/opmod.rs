//! Linear algebra on graded spaces carrying a list of operators.
//!
//! H-modules carry one operator (X); smash modules carry X followed by the
//! action of each algebra basis element. Quotients, submodules and Hom spaces
//! are computed here once for both.

use std::collections::{BTreeMap, HashMap};

use super::degree::Degree;
use crate::error::{Error, Result};
use crate::field::{Field, Matrix, Scalar};

pub(crate) fn degree_classes(degrees: &[Degree]) -> BTreeMap<Degree, Vec<usize>> {
    let mut out: BTreeMap<Degree, Vec<usize>> = BTreeMap::new();
    for (i, d) in degrees.iter().enumerate() {
        out.entry(*d).or_default().push(i);
    }
    out
}

fn column_degree(m: &Matrix, c: usize, degrees: &[Degree]) -> Result<Option<Degree>> {
    let mut found: Option<Degree> = None;
    for (r, &deg) in degrees.iter().enumerate().take(m.rows()) {
        if m.is_zero_at(r, c) {
            continue;
        }
        match found {
            None => found = Some(deg),
            Some(d) if d != deg => return Err(Error::Internal(format!("column {c} is not homogeneous"))),
            _ => {}
        }
    }
    Ok(found)
}

/// Group the nonzero columns of `span` by degree.
fn columns_by_degree(span: &Matrix, degrees: &[Degree]) -> Result<BTreeMap<Degree, Vec<usize>>> {
    let mut out: BTreeMap<Degree, Vec<usize>> = BTreeMap::new();
    for c in 0..span.cols() {
        if let Some(d) = column_degree(span, c, degrees)? {
            out.entry(d).or_default().push(c);
        }
    }
    Ok(out)
}

/// Echelon basis (as rows over the coordinates `coords`) of the given columns.
fn echelon_rows(span: &Matrix, cols: &[usize], coords: &[usize]) -> (Matrix, Vec<usize>) {
    let block = span.select(coords, cols).transpose();
    let (r, pivots) = block.rref();
    let keep: Vec<usize> = (0..pivots.len()).collect();
    (r.select_rows(&keep), pivots)
}

/// A quotient V/S with its projection and a section spanned by basis vectors.
pub(crate) struct Quotient {
    pub degrees: Vec<Degree>,
    pub proj: Matrix,
    pub section: Matrix,
}

/// Quotient of the graded space by the span of homogeneous columns.
pub(crate) fn quotient(field: &Field, degrees: &[Degree], span: &Matrix) -> Result<Quotient> {
    let dim = degrees.len();
    let by_deg = columns_by_degree(span, degrees)?;
    let classes = degree_classes(degrees);
    // pivot coordinate -> its echelon row (over full coordinates)
    let mut relations: Vec<(usize, Vec<(usize, Scalar)>)> = Vec::new();
    let mut is_pivot = vec![false; dim];
    for (d, cols) in &by_deg {
        let coords = &classes[d];
        let (rows, pivots) = echelon_rows(span, cols, coords);
        for (k, &p) in pivots.iter().enumerate() {
            is_pivot[coords[p]] = true;
            let row: Vec<(usize, Scalar)> = (0..coords.len())
                .filter(|&j| j != p && !rows.is_zero_at(k, j))
                .map(|j| (coords[j], rows.get(k, j)))
                .collect();
            relations.push((coords[p], row));
        }
    }
    let kept: Vec<usize> = (0..dim).filter(|&i| !is_pivot[i]).collect();
    let mut index = vec![usize::MAX; dim];
    for (q, &i) in kept.iter().enumerate() {
        index[i] = q;
    }
    let mut proj = Matrix::zeros(field, kept.len(), dim);
    let mut section = Matrix::zeros(field, dim, kept.len());
    for (q, &i) in kept.iter().enumerate() {
        proj.set(q, i, field.one());
        section.set(i, q, field.one());
    }
    for (p, row) in relations {
        // e_p ≡ -Σ row_j e_j, all j non-pivot
        for (j, v) in row {
            proj.set(index[j], p, field.neg(&v));
        }
    }
    Ok(Quotient {
        degrees: kept.iter().map(|&i| degrees[i]).collect(),
        proj,
        section,
    })
}

/// A graded subspace with inclusion and a retraction (retract ∘ incl = id).
pub(crate) struct Subspace {
    pub degrees: Vec<Degree>,
    pub incl: Matrix,
    pub retract: Matrix,
}

pub(crate) fn subspace(field: &Field, degrees: &[Degree], span: &Matrix) -> Result<Subspace> {
    let dim = degrees.len();
    let by_deg = columns_by_degree(span, degrees)?;
    let classes = degree_classes(degrees);
    let mut cols: Vec<Vec<Scalar>> = Vec::new();
    let mut pivot_coords: Vec<usize> = Vec::new();
    let mut out_degrees = Vec::new();
    for (d, cs) in &by_deg {
        let coords = &classes[d];
        let (rows, pivots) = echelon_rows(span, cs, coords);
        for (k, &p) in pivots.iter().enumerate() {
            let mut v = vec![field.zero(); dim];
            for (j, &c) in coords.iter().enumerate() {
                v[c] = rows.get(k, j);
            }
            cols.push(v);
            pivot_coords.push(coords[p]);
            out_degrees.push(*d);
        }
    }
    let incl = Matrix::from_columns(field, dim, &cols);
    let mut retract = Matrix::zeros(field, cols.len(), dim);
    for (k, &p) in pivot_coords.iter().enumerate() {
        retract.set(k, p, field.one());
    }
    Ok(Subspace {
        degrees: out_degrees,
        incl,
        retract,
    })
}

/// Homogeneous basis of the kernel of a degree-preserving map.
pub(crate) fn kernel_span(map: &Matrix, src_degrees: &[Degree]) -> Matrix {
    let field = map.field();
    let dim = src_degrees.len();
    let mut cols: Vec<Vec<Scalar>> = Vec::new();
    for coords in degree_classes(src_degrees).values() {
        let ns = map.select_cols(coords).nullspace();
        for k in 0..ns.cols() {
            let mut v = vec![field.zero(); dim];
            for (j, &c) in coords.iter().enumerate() {
                v[c] = ns.get(j, k);
            }
            cols.push(v);
        }
    }
    Matrix::from_columns(field, dim, &cols)
}

/// Nonzero entries of each column / row of a matrix.
pub(crate) struct SparseView {
    pub by_col: Vec<Vec<(usize, Scalar)>>,
    pub by_row: Vec<Vec<(usize, Scalar)>>,
}

impl SparseView {
    pub fn new(m: &Matrix) -> SparseView {
        let mut by_col = vec![Vec::new(); m.cols()];
        let mut by_row = vec![Vec::new(); m.rows()];
        for (r, c, s) in m.entries() {
            by_col[c].push((r, s.clone()));
            by_row[r].push((c, s));
        }
        SparseView { by_col, by_row }
    }
}

/// Accumulates sparse linear equations keyed by an arbitrary label.
pub(crate) struct EquationBuilder {
    field: Field,
    unknowns: usize,
    rows: HashMap<(usize, usize, usize), usize>,
    entries: Vec<BTreeMap<usize, Scalar>>,
}

impl EquationBuilder {
    pub fn new(field: &Field, unknowns: usize) -> Self {
        EquationBuilder {
            field: field.clone(),
            unknowns,
            rows: HashMap::new(),
            entries: Vec::new(),
        }
    }

    pub fn row(&mut self, key: (usize, usize, usize)) -> usize {
        if let Some(&r) = self.rows.get(&key) {
            return r;
        }
        let r = self.entries.len();
        self.rows.insert(key, r);
        self.entries.push(BTreeMap::new());
        r
    }

    pub fn add(&mut self, row: usize, unknown: usize, v: &Scalar) {
        let f = &self.field;
        let e = self.entries[row].entry(unknown).or_insert_with(|| f.zero());
        *e = f.add(e, v);
    }

    pub fn row_count(&self) -> usize {
        self.entries.len()
    }

    pub fn matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(&self.field, self.entries.len(), self.unknowns);
        for (r, row) in self.entries.iter().enumerate() {
            for (c, v) in row {
                if !self.field.is_zero(v) {
                    m.set(r, *c, v.clone());
                }
            }
        }
        m
    }

    pub fn key_index(&self, key: &(usize, usize, usize)) -> Option<usize> {
        self.rows.get(key).copied()
    }
}

/// Positions (row, col) of a target×source matrix permitted by a degree rule.
pub(crate) fn allowed_positions(
    src_degrees: &[Degree],
    tgt_degrees: &[Degree],
    allowed: impl Fn(Degree, Degree) -> bool,
) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (r, &dt) in tgt_degrees.iter().enumerate() {
        for (c, &ds) in src_degrees.iter().enumerate() {
            if allowed(ds, dt) {
                out.push((r, c));
            }
        }
    }
    out
}

/// Add the equations T_k h - h S_k = 0 for every operator pair to `eq`.
pub(crate) fn add_commutation_equations(
    eq: &mut EquationBuilder,
    field: &Field,
    positions: &[(usize, usize)],
    src_ops: &[Matrix],
    tgt_ops: &[Matrix],
) {
    for (k, (s, t)) in src_ops.iter().zip(tgt_ops).enumerate() {
        let sv = SparseView::new(s);
        let tv = SparseView::new(t);
        for (u, &(r0, c0)) in positions.iter().enumerate() {
            // (T h)[r, c0] gets T[r, r0] h[r0, c0]
            for (r, v) in &tv.by_col[r0] {
                let row = eq.row((k, *r, c0));
                eq.add(row, u, v);
            }
            // (h S)[r0, c] gets h[r0, c0] S[c0, c]
            for (c, v) in &sv.by_row[c0] {
                let row = eq.row((k, r0, *c));
                eq.add(row, u, &field.neg(v));
            }
        }
    }
}

/// Assemble a target×source matrix from values at the given positions.
pub(crate) fn place(
    field: &Field,
    rows: usize,
    cols: usize,
    positions: &[(usize, usize)],
    values: &[Scalar],
) -> Matrix {
    let mut m = Matrix::zeros(field, rows, cols);
    for (&(r, c), v) in positions.iter().zip(values) {
        if !field.is_zero(v) {
            m.set(r, c, v.clone());
        }
    }
    m
}

/// Basis of the maps h (target×source) supported on `allowed` degree pairs with
/// h S_k = T_k h for all k.
pub(crate) fn equivariant_maps(
    field: &Field,
    src_degrees: &[Degree],
    src_ops: &[Matrix],
    tgt_degrees: &[Degree],
    tgt_ops: &[Matrix],
    allowed: impl Fn(Degree, Degree) -> bool,
) -> Vec<Matrix> {
    let positions = allowed_positions(src_degrees, tgt_degrees, allowed);
    if positions.is_empty() {
        return Vec::new();
    }
    let mut eq = EquationBuilder::new(field, positions.len());
    add_commutation_equations(&mut eq, field, &positions, src_ops, tgt_ops);
    let ns = eq.matrix().nullspace();
    (0..ns.cols())
        .map(|k| place(field, tgt_degrees.len(), src_degrees.len(), &positions, &ns.column(k)))
        .collect()
}
