//! Finite-dimensional Hopf algebras given on a monomial basis.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{Field, Matrix, Scalar};

/// Element of the algebra in monomial coordinates.
pub type Elem = Vec<Scalar>;

/// Sparse element of H⊗H: `(left, right, coefficient)` with distinct index pairs.
pub type Tensor2 = Vec<(usize, usize, Scalar)>;

pub(crate) type MonomialProduct = Box<dyn Fn(usize, usize) -> Option<(usize, Scalar)>>;

pub(crate) struct Presentation {
    pub field: Field,
    pub labels: Vec<String>,
    pub unit: usize,
    /// Product of two monomials, as a scaled monomial or zero.
    pub mul: MonomialProduct,
    /// Monomial indices of the generators.
    pub generators: Vec<usize>,
    /// Each monomial as a word in generator positions.
    pub words: Vec<Vec<usize>>,
    pub gen_coproduct: Vec<Tensor2>,
    pub gen_antipode: Vec<Vec<(usize, Scalar)>>,
    pub gen_counit: Vec<Scalar>,
}

pub struct HopfAlgebra {
    field: Field,
    labels: Vec<String>,
    products: Vec<Vec<Option<(usize, Scalar)>>>,
    unit: usize,
    generators: Vec<usize>,
    counit: Vec<Scalar>,
    coproducts: Vec<Tensor2>,
    antipode: Matrix,
    antipode_inv: Matrix,
    integral: Elem,
}

impl std::fmt::Debug for HopfAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "HopfAlgebra(dim {} over {})", self.dim(), self.field)
    }
}

fn accumulate(field: &Field, map: &mut BTreeMap<(usize, usize), Scalar>, key: (usize, usize), v: Scalar) {
    let e = map.entry(key).or_insert_with(|| field.zero());
    *e = field.add(e, &v);
}

fn collect(field: &Field, map: BTreeMap<(usize, usize), Scalar>) -> Tensor2 {
    map.into_iter()
        .filter(|(_, v)| !field.is_zero(v))
        .map(|((a, b), v)| (a, b, v))
        .collect()
}

impl HopfAlgebra {
    pub(crate) fn from_presentation(p: Presentation) -> Result<HopfAlgebra> {
        let dim = p.labels.len();
        let field = p.field.clone();
        let products: Vec<Vec<Option<(usize, Scalar)>>> =
            (0..dim).map(|a| (0..dim).map(|b| (p.mul)(a, b)).collect()).collect();
        let mut alg = HopfAlgebra {
            field: field.clone(),
            labels: p.labels.clone(),
            products,
            unit: p.unit,
            generators: p.generators.clone(),
            counit: Vec::new(),
            coproducts: Vec::new(),
            antipode: Matrix::zeros(&field, dim, dim),
            antipode_inv: Matrix::zeros(&field, dim, dim),
            integral: Vec::new(),
        };
        // every monomial must be the ordered product of its word
        for (m, word) in p.words.iter().enumerate() {
            let mut acc = alg.basis(p.unit);
            for &g in word {
                acc = alg.mul(&acc, &alg.basis(p.generators[g]));
            }
            if acc != alg.basis(m) {
                return Err(Error::Internal(format!(
                    "monomial {} is not the product of its word",
                    p.labels[m]
                )));
            }
        }
        let unit_tensor: Tensor2 = vec![(p.unit, p.unit, field.one())];
        let mut counit = Vec::with_capacity(dim);
        let mut coproducts = Vec::with_capacity(dim);
        let mut antipode_cols = Vec::with_capacity(dim);
        for word in &p.words {
            let mut eps = field.one();
            let mut delta = unit_tensor.clone();
            let mut s = alg.basis(p.unit);
            for &g in word {
                eps = field.mul(&eps, &p.gen_counit[g]);
                delta = alg.tensor_mul(&delta, &p.gen_coproduct[g]);
                let mut sg = vec![field.zero(); dim];
                for (i, c) in &p.gen_antipode[g] {
                    sg[*i] = c.clone();
                }
                // S is an anti-homomorphism
                s = alg.mul(&sg, &s);
            }
            counit.push(eps);
            coproducts.push(delta);
            antipode_cols.push(s);
        }
        alg.counit = counit;
        alg.coproducts = coproducts;
        alg.antipode = Matrix::from_columns(&field, dim, &antipode_cols);
        alg.antipode_inv = alg
            .antipode
            .inverse()
            .map_err(|_| Error::Internal("antipode is not invertible".into()))?;
        alg.integral = alg.solve_left_integral()?;
        Ok(alg)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn basis(&self, i: usize) -> Elem {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    pub fn one(&self) -> Elem {
        self.basis(self.unit)
    }

    pub fn zero_elem(&self) -> Elem {
        vec![self.field.zero(); self.dim()]
    }

    pub fn add(&self, a: &[Scalar], b: &[Scalar]) -> Elem {
        a.iter().zip(b).map(|(x, y)| self.field.add(x, y)).collect()
    }

    pub fn scale(&self, s: &Scalar, a: &[Scalar]) -> Elem {
        a.iter().map(|x| self.field.mul(s, x)).collect()
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Elem {
        let f = &self.field;
        let mut out = self.zero_elem();
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if f.is_zero(y) {
                    continue;
                }
                if let Some((k, c)) = &self.products[i][j] {
                    out[*k] = f.add(&out[*k], &f.mul(&f.mul(x, y), c));
                }
            }
        }
        out
    }

    /// Product in H⊗H with componentwise multiplication.
    pub fn tensor_mul(&self, a: &Tensor2, b: &Tensor2) -> Tensor2 {
        let f = &self.field;
        let mut acc = BTreeMap::new();
        for (a1, a2, x) in a {
            for (b1, b2, y) in b {
                let (Some((l, cl)), Some((r, cr))) = (&self.products[*a1][*b1], &self.products[*a2][*b2]) else {
                    continue;
                };
                let v = f.mul(&f.mul(x, y), &f.mul(cl, cr));
                accumulate(f, &mut acc, (*l, *r), v);
            }
        }
        collect(f, acc)
    }

    pub fn counit(&self, a: &[Scalar]) -> Scalar {
        let f = &self.field;
        a.iter()
            .zip(&self.counit)
            .fold(f.zero(), |acc, (x, e)| f.add(&acc, &f.mul(x, e)))
    }

    pub fn coproduct(&self, a: &[Scalar]) -> Tensor2 {
        let f = &self.field;
        let mut acc = BTreeMap::new();
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (l, r, c) in &self.coproducts[i] {
                accumulate(f, &mut acc, (*l, *r), f.mul(x, c));
            }
        }
        collect(f, acc)
    }

    pub fn coproduct_of_basis(&self, i: usize) -> &Tensor2 {
        &self.coproducts[i]
    }

    fn apply(&self, m: &Matrix, a: &[Scalar]) -> Elem {
        let col = Matrix::from_columns(&self.field, self.dim(), &[a.to_vec()]);
        m.mul(&col).column(0)
    }

    pub fn antipode(&self, a: &[Scalar]) -> Elem {
        self.apply(&self.antipode, a)
    }

    pub fn antipode_inv(&self, a: &[Scalar]) -> Elem {
        self.apply(&self.antipode_inv, a)
    }

    pub fn antipode_matrix(&self) -> &Matrix {
        &self.antipode
    }

    /// Matrix of left multiplication by `a` (column b holds a·e_b).
    pub fn left_mult_matrix(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Elem> = (0..self.dim()).map(|b| self.mul(a, &self.basis(b))).collect();
        Matrix::from_columns(&self.field, self.dim(), &cols)
    }

    fn solve_left_integral(&self) -> Result<Elem> {
        let f = &self.field;
        let d = self.dim();
        let blocks: Vec<Matrix> = self
            .generators
            .iter()
            .map(|&g| {
                let l = self.left_mult_matrix(&self.basis(g));
                l.sub(&Matrix::identity(f, d).scale(&self.counit[g]))
            })
            .collect();
        let refs: Vec<&Matrix> = blocks.iter().collect();
        let system = Matrix::vstack(f, d, &refs);
        let ns = system.nullspace();
        if ns.cols() != 1 {
            return Err(Error::Internal(format!(
                "left integral space has dimension {}",
                ns.cols()
            )));
        }
        Ok(ns.column(0))
    }

    /// A nonzero left integral Λ (hΛ = ε(h)Λ), normalised by the solver.
    pub fn left_integral(&self) -> &Elem {
        &self.integral
    }

    /// Right integral λ of the dual algebra: λx = x(1)λ for all x in H*.
    /// Returns λ as its values on the monomial basis.
    pub fn dual_right_integral(&self) -> Result<Vec<Scalar>> {
        let f = &self.field;
        let d = self.dim();
        // (λ e^a)(h) = Σ_{p⊗q in Δ(h)} λ(p) [q = a] must equal [a = 1] λ(h)
        let mut system = Matrix::zeros(f, d * d, d);
        for a in 0..d {
            for h in 0..d {
                let row = a * d + h;
                for (p, q, c) in &self.coproducts[h] {
                    if *q == a {
                        let cur = system.get(row, *p);
                        system.set(row, *p, f.add(&cur, c));
                    }
                }
                if a == self.unit {
                    let cur = system.get(row, h);
                    system.set(row, h, f.sub(&cur, &f.one()));
                }
            }
        }
        let ns = system.nullspace();
        if ns.cols() != 1 {
            return Err(Error::Internal(format!(
                "dual right integral space has dimension {}",
                ns.cols()
            )));
        }
        Ok(ns.column(0))
    }

    /// The grouplike g with xλ = x(g)λ for all x in H*.
    pub fn distinguished_grouplike(&self) -> Result<Elem> {
        let f = &self.field;
        let d = self.dim();
        let lambda = self.dual_right_integral()?;
        // (e^a λ)(h) = Σ_{p⊗q in Δ(h)} [p = a] λ(q)
        let left_translate = |a: usize, h: usize| -> Scalar {
            self.coproducts[h]
                .iter()
                .filter(|(p, _, _)| *p == a)
                .fold(f.zero(), |acc, (_, q, c)| f.add(&acc, &f.mul(c, &lambda[*q])))
        };
        let h0 = (0..d)
            .find(|&h| !f.is_zero(&lambda[h]))
            .ok_or_else(|| Error::Internal("zero integral".into()))?;
        let inv = f.inv(&lambda[h0])?;
        let g: Elem = (0..d).map(|a| f.mul(&left_translate(a, h0), &inv)).collect();
        for (a, ga) in g.iter().enumerate() {
            for (h, lh) in lambda.iter().enumerate() {
                if left_translate(a, h) != f.mul(ga, lh) {
                    return Err(Error::Internal("grouplike equations inconsistent".into()));
                }
            }
        }
        if !self.is_grouplike(&g) {
            return Err(Error::Internal("solved element is not grouplike".into()));
        }
        Ok(g)
    }

    pub fn is_grouplike(&self, g: &[Scalar]) -> bool {
        let f = &self.field;
        let mut outer = BTreeMap::new();
        for (i, x) in g.iter().enumerate() {
            for (j, y) in g.iter().enumerate() {
                if !f.is_zero(x) && !f.is_zero(y) {
                    accumulate(f, &mut outer, (i, j), f.mul(x, y));
                }
            }
        }
        self.coproduct(g) == collect(f, outer) && !g.iter().all(|x| f.is_zero(x))
    }

    /// Smallest k ≥ 1 with g^k = 1, if at most `bound`.
    pub fn multiplicative_order(&self, g: &[Scalar], bound: usize) -> Option<usize> {
        let one = self.one();
        let mut acc = g.to_vec();
        for k in 1..=bound {
            if acc == one {
                return Some(k);
            }
            acc = self.mul(&acc, g);
        }
        None
    }

    /// The scalar α with Λg = αΛ.
    pub fn integral_character(&self, g: &[Scalar]) -> Result<Scalar> {
        let f = &self.field;
        let lg = self.mul(&self.integral, g);
        let i = (0..self.dim())
            .find(|&i| !f.is_zero(&self.integral[i]))
            .ok_or_else(|| Error::Internal("zero integral".into()))?;
        let alpha = f.mul(&lg[i], &f.inv(&self.integral[i])?);
        if lg != self.scale(&alpha, &self.integral) {
            return Err(Error::Internal("Λg is not proportional to Λ".into()));
        }
        Ok(alpha)
    }

    /// Both sides of Σ Λ(1)⊗Λ(2) = Σ S²(Λ(2)) g ⊗ Λ(1), as sparse tensors.
    pub fn radford_sides(&self, g: &[Scalar]) -> (Tensor2, Tensor2) {
        let f = &self.field;
        let lhs = self.coproduct(&self.integral);
        let mut acc = BTreeMap::new();
        for (l, r, c) in &lhs {
            let s2 = self.antipode(&self.antipode(&self.basis(*r)));
            let left = self.mul(&s2, g);
            for (i, x) in left.iter().enumerate() {
                if !f.is_zero(x) {
                    accumulate(f, &mut acc, (i, *l), f.mul(x, c));
                }
            }
        }
        (lhs, collect(f, acc))
    }

    /// Index of the last nonzero monomial of Λ and the functional t with t(Λ) = 1
    /// supported on it.
    pub fn integral_dual_functional(&self) -> (usize, Vec<Scalar>) {
        let f = &self.field;
        let lead = (0..self.dim())
            .rev()
            .find(|&i| !f.is_zero(&self.integral[i]))
            .expect("nonzero integral");
        let mut t = vec![f.zero(); self.dim()];
        t[lead] = f.inv(&self.integral[lead]).expect("nonzero");
        (lead, t)
    }

    /// The map H⊗H → H, a⊗b ↦ Σ b(2) t(S⁻¹(b(1)) a), as a dim × dim² matrix
    /// with column index a*dim + b.
    pub fn radford_section(&self, t: &[Scalar]) -> Matrix {
        let f = &self.field;
        let d = self.dim();
        let mut out = Matrix::zeros(f, d, d * d);
        for a in 0..d {
            for b in 0..d {
                for (p, q, c) in &self.coproducts[b] {
                    let x = self.mul(&self.antipode_inv(&self.basis(*p)), &self.basis(a));
                    let tv = x.iter().zip(t).fold(f.zero(), |acc, (u, v)| f.add(&acc, &f.mul(u, v)));
                    if f.is_zero(&tv) {
                        continue;
                    }
                    let col = a * d + b;
                    let cur = out.get(*q, col);
                    out.set(*q, col, f.add(&cur, &f.mul(c, &tv)));
                }
            }
        }
        out
    }

    /// Matrix of h acting on H⊗H through the coproduct (index a*dim + b).
    pub fn diagonal_action(&self, h: &[Scalar]) -> Matrix {
        let f = &self.field;
        let d = self.dim();
        let mut out = Matrix::zeros(f, d * d, d * d);
        let delta = self.coproduct(h);
        for a in 0..d {
            for b in 0..d {
                for (l, r, c) in &delta {
                    let (Some((x, cx)), Some((y, cy))) = (&self.products[*l][a], &self.products[*r][b]) else {
                        continue;
                    };
                    let row = x * d + y;
                    let cur = out.get(row, a * d + b);
                    out.set(row, a * d + b, f.add(&cur, &f.mul(c, &f.mul(cx, cy))));
                }
            }
        }
        out
    }

    /// Failures of the Hopf algebra axioms, checked on the basis.
    pub fn axiom_violations(&self) -> Vec<String> {
        let f = &self.field;
        let d = self.dim();
        let mut out = Vec::new();
        for a in 0..d {
            for b in 0..d {
                let ab = self.mul(&self.basis(a), &self.basis(b));
                for c in 0..d {
                    let left = self.mul(&ab, &self.basis(c));
                    let bc = self.mul(&self.basis(b), &self.basis(c));
                    if left != self.mul(&self.basis(a), &bc) {
                        out.push(format!("associativity fails at ({a},{b},{c})"));
                    }
                }
                let lhs = self.coproduct(&ab);
                let rhs = self.tensor_mul(&self.coproducts[a], &self.coproducts[b]);
                if lhs != rhs {
                    out.push(format!("coproduct not multiplicative at ({a},{b})"));
                }
            }
        }
        for a in 0..d {
            let delta = &self.coproducts[a];
            // (ε⊗id)Δ = id and (id⊗ε)Δ = id
            let mut left = self.zero_elem();
            let mut right = self.zero_elem();
            let mut conv = self.zero_elem();
            for (l, r, c) in delta {
                left[*r] = f.add(&left[*r], &f.mul(c, &self.counit[*l]));
                right[*l] = f.add(&right[*l], &f.mul(c, &self.counit[*r]));
                let term = self.mul(&self.antipode(&self.basis(*l)), &self.basis(*r));
                conv = self.add(&conv, &self.scale(c, &term));
            }
            if left != self.basis(a) || right != self.basis(a) {
                out.push(format!("counit axiom fails at {}", self.labels[a]));
            }
            if conv != self.scale(&self.counit[a], &self.one()) {
                out.push(format!("antipode axiom fails at {}", self.labels[a]));
            }
            // coassociativity
            let mut lhs = BTreeMap::new();
            let mut rhs = BTreeMap::new();
            for (l, r, c) in delta {
                for (l2, r2, c2) in &self.coproducts[*l] {
                    let key = (*l2, *r2 * d + *r);
                    let e = lhs.entry(key).or_insert_with(|| f.zero());
                    *e = f.add(e, &f.mul(c, c2));
                }
                for (l2, r2, c2) in &self.coproducts[*r] {
                    let key = (*l, *l2 * d + *r2);
                    let e = rhs.entry(key).or_insert_with(|| f.zero());
                    *e = f.add(e, &f.mul(c, c2));
                }
            }
            lhs.retain(|_, v| !f.is_zero(v));
            rhs.retain(|_, v| !f.is_zero(v));
            if lhs != rhs {
                out.push(format!("coassociativity fails at {}", self.labels[a]));
            }
        }
        out
    }
}
