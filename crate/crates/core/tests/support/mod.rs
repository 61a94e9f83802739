//! Independent oracles and seeded generators shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use hopfolog::comod::{h_tensor as a_h_tensor, smash_hom_basis, DerivationAlgebra, SmashHom, SmashModule};
use hopfolog::field::{Field, Matrix, Scalar};
use hopfolog::grmod::{hom_basis, Decomposition, Degree, GradedModule, HopfFamily, ModuleHom};
use hopfolog::stable::h_tensor;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Decomposition by repeatedly splitting off the X-string of a homogeneous
/// basis vector of maximal height and passing to the quotient.
pub fn string_decomposition(m: &GradedModule) -> Decomposition {
    let fam = m.family();
    let f = m.field().clone();
    let mut out = Decomposition::new(fam.order());
    let mut degrees = m.degrees().to_vec();
    let mut x = m.x().clone();
    while !degrees.is_empty() {
        let d = degrees.len();
        let mut best = (0, 0);
        let mut pw = Matrix::identity(&f, d);
        for k in 0..d {
            let hit = (0..d).find(|&c| pw.column(c).iter().any(|s| !f.is_zero(s)));
            match hit {
                Some(c) => best = (k, c),
                None => break,
            }
            pw = x.mul(&pw);
        }
        let (k, c) = best;
        out.insert(k, degrees[c], 1);
        let mut cols = Vec::new();
        let mut v: Vec<Scalar> = (0..d).map(|r| if r == c { f.one() } else { f.zero() }).collect();
        for _ in 0..=k {
            cols.push(v.clone());
            v = x.mul(&Matrix::from_columns(&f, d, &[v])).column(0);
        }
        let mut comp = Vec::new();
        for r in 0..d {
            let e: Vec<Scalar> = (0..d).map(|s| if s == r { f.one() } else { f.zero() }).collect();
            let mut trial = cols.clone();
            trial.push(e.clone());
            if Matrix::from_columns(&f, d, &trial).rank() == trial.len() {
                cols = trial;
                comp.push(r);
            }
        }
        let p = Matrix::from_columns(&f, d, &cols);
        let conj = p.inverse().expect("basis change").mul(&x).mul(&p);
        let keep: Vec<usize> = (k + 1..d).collect();
        x = conj.select(&keep, &keep);
        degrees = comp.iter().map(|&r| degrees[r]).collect();
    }
    out
}

/// Basis of degree-0 maps A with A·X_M = X_N·A, by a dense solve over all
/// admissible entries.
pub fn brute_hom(m: &GradedModule, n: &GradedModule) -> Vec<Matrix> {
    let f = m.field().clone();
    let (dm, dn) = (m.dim(), n.dim());
    let mut slots = Vec::new();
    for r in 0..dn {
        for c in 0..dm {
            if n.degrees()[r] == m.degrees()[c] {
                slots.push((r, c));
            }
        }
    }
    if slots.is_empty() {
        return Vec::new();
    }
    let mut sys = Matrix::zeros(&f, (dn * dm).max(1), slots.len());
    for (u, &(r, k)) in slots.iter().enumerate() {
        // A[r][k] contributes to (A X_M)[r][c] with X_M[k][c] and to (X_N A)[s][k] with X_N[s][r]
        for c in 0..dm {
            let a = m.x().get(k, c);
            if !f.is_zero(&a) {
                let row = r * dm + c;
                let cur = sys.get(row, u);
                sys.set(row, u, f.add(&cur, &a));
            }
        }
        for s in 0..dn {
            let b = n.x().get(s, r);
            if !f.is_zero(&b) {
                let row = s * dm + k;
                let cur = sys.get(row, u);
                sys.set(row, u, f.sub(&cur, &b));
            }
        }
    }
    let ns = sys.nullspace();
    (0..ns.cols())
        .map(|j| {
            let mut a = Matrix::zeros(&f, dn, dm);
            for (u, &(r, c)) in slots.iter().enumerate() {
                a.set(r, c, ns.get(u, j));
            }
            a
        })
        .collect()
}

/// Rows spanning {h∘(Λ⊗Id) : h ∈ Hom(H⊗M, N)}, flattened.
pub fn null_homotopic_span(m: &GradedModule, n: &GradedModule) -> Matrix {
    let f = m.field().clone();
    let ht = h_tensor(m).unwrap();
    let rows: Vec<Vec<Scalar>> = brute_hom(&ht.module, n)
        .iter()
        .map(|h| h.mul(ht.embedding.matrix()).entries_flat())
        .collect();
    if rows.is_empty() {
        return Matrix::zeros(&f, 0, m.dim() * n.dim());
    }
    Matrix::from_rows(&f, rows).unwrap()
}

pub fn null_homotopic_dim(m: &GradedModule, n: &GradedModule) -> usize {
    null_homotopic_span(m, n).rank()
}

pub fn in_span(span: &Matrix, v: &Matrix) -> bool {
    let f = v.field().clone();
    let mut rows: Vec<Vec<Scalar>> = (0..span.rows()).map(|r| span.row(r)).collect();
    let before = span.rank();
    rows.push(v.entries_flat());
    Matrix::from_rows(&f, rows).unwrap().rank() == before
}

pub fn small_scalar(rng: &mut ChaCha8Rng, f: &Field) -> Scalar {
    match f {
        Field::Prime(_) => f.from_i64(rng.gen_range(-3..=3)),
        Field::Cyclotomic(_) => {
            let mut acc = f.zero();
            for k in 0..2 {
                let c = f.from_i64(rng.gen_range(-2..=2));
                acc = f.add(&acc, &f.mul(&c, &f.zeta_pow(k)));
            }
            acc
        }
    }
}

pub fn nonzero_scalar(rng: &mut ChaCha8Rng, f: &Field) -> Scalar {
    loop {
        let s = small_scalar(rng, f);
        if !f.is_zero(&s) {
            return s;
        }
    }
}

pub fn summands(rng: &mut ChaCha8Rng, fam: &HopfFamily, count: usize, spread: i64) -> Vec<(usize, Degree)> {
    (0..count)
        .map(|_| {
            (
                rng.gen_range(0..fam.order()),
                fam.normalize(Degree::new(rng.gen_range(-spread..=spread))),
            )
        })
        .collect()
}

pub fn assemble(fam: &HopfFamily, parts: &[(usize, Degree)]) -> GradedModule {
    let mods: Vec<GradedModule> = parts
        .iter()
        .map(|&(i, j)| GradedModule::indecomposable(fam, i, j).unwrap())
        .collect();
    let refs: Vec<&GradedModule> = mods.iter().collect();
    GradedModule::direct_sum_all(fam, &refs).unwrap()
}

pub fn expected(fam: &HopfFamily, parts: &[(usize, Degree)]) -> Decomposition {
    let mut d = Decomposition::new(fam.order());
    for &(i, j) in parts {
        d.insert(i, j, 1);
    }
    d
}

/// Conjugate by a random unit lower-triangular matrix that preserves degrees.
pub fn scramble(rng: &mut ChaCha8Rng, m: &GradedModule) -> GradedModule {
    let f = m.field().clone();
    let d = m.dim();
    let deg = m.degrees();
    let p = Matrix::from_fn(&f, d, d, |r, c| {
        if r == c {
            f.one()
        } else if r > c && deg[r] == deg[c] {
            small_scalar(rng, &f)
        } else {
            f.zero()
        }
    });
    let x = p.mul(m.x()).mul(&p.inverse().unwrap());
    GradedModule::new(m.family(), deg.to_vec(), x).unwrap()
}

/// A scrambled direct sum of `1..=max` random indecomposables, with its summands.
pub fn random_module(rng: &mut ChaCha8Rng, fam: &HopfFamily, max: usize) -> (GradedModule, Vec<(usize, Degree)>) {
    let count = rng.gen_range(1..=max);
    let parts = summands(rng, fam, count, 2);
    let m = assemble(fam, &parts);
    (scramble(rng, &m), parts)
}

pub fn combine(rng: &mut ChaCha8Rng, f: &Field, rows: usize, cols: usize, basis: &[Matrix]) -> Matrix {
    let mut acc = Matrix::zeros(f, rows, cols);
    for b in basis {
        acc = acc.add(&b.scale(&small_scalar(rng, f)));
    }
    acc
}

pub fn random_hom(rng: &mut ChaCha8Rng, m: &GradedModule, n: &GradedModule) -> ModuleHom {
    let basis: Vec<Matrix> = hom_basis(m, n).unwrap().iter().map(|h| h.matrix().clone()).collect();
    let mat = combine(rng, m.field(), n.dim(), m.dim(), &basis);
    ModuleHom::new(m, n, mat).unwrap()
}

/// A random map M → N that factors through Λ⊗Id.
pub fn random_null_homotopic(rng: &mut ChaCha8Rng, m: &GradedModule, n: &GradedModule) -> ModuleHom {
    let ht = h_tensor(m).unwrap();
    let h = random_hom(rng, &ht.module, n);
    h.compose(&ht.embedding).unwrap()
}

/// The algebras B used for smash-product tests in characteristic p.
pub fn algebras(p: u32) -> Vec<Arc<DerivationAlgebra>> {
    let fam = HopfFamily::truncated(p, 1, false).unwrap();
    let mut out = vec![
        DerivationAlgebra::ground(&fam).unwrap(),
        DerivationAlgebra::truncated_polynomial(&fam, 2, 0).unwrap(),
        DerivationAlgebra::split_semisimple(&fam).unwrap(),
    ];
    if p == 2 {
        out.push(DerivationAlgebra::truncated_polynomial(&fam, 2, 1).unwrap());
    }
    if p == 3 {
        out.push(DerivationAlgebra::truncated_polynomial(&fam, 3, 1).unwrap());
    }
    out.into_iter().map(Arc::new).collect()
}

/// Sum of V⊗B pieces for random indecomposables V.
pub fn random_smash(rng: &mut ChaCha8Rng, b: &Arc<DerivationAlgebra>, max: usize) -> SmashModule {
    let fam = b.family().clone();
    let reg = SmashModule::regular_b(b).unwrap();
    let count = rng.gen_range(1..=max);
    let parts: Vec<SmashModule> = summands(rng, &fam, count, 1)
        .into_iter()
        .map(|(i, j)| {
            let v = GradedModule::indecomposable(&fam, i, j).unwrap();
            SmashModule::tensor_left(&v, &reg).unwrap()
        })
        .collect();
    let refs: Vec<&SmashModule> = parts.iter().collect();
    SmashModule::direct_sum_all(b, &refs).unwrap()
}

pub fn random_smash_hom(rng: &mut ChaCha8Rng, m: &SmashModule, n: &SmashModule) -> SmashHom {
    let basis: Vec<Matrix> = smash_hom_basis(m, n)
        .unwrap()
        .iter()
        .map(|h| h.matrix().clone())
        .collect();
    let mat = combine(rng, m.base().field(), n.dim(), m.dim(), &basis);
    SmashHom::new(m, n, mat).unwrap()
}

/// A random A-map M → N factoring through M → H⊗M.
pub fn random_smash_null(rng: &mut ChaCha8Rng, m: &SmashModule, n: &SmashModule) -> SmashHom {
    let (hm, iota) = a_h_tensor(m).unwrap();
    random_smash_hom(rng, &hm, n).compose(&iota).unwrap()
}

/// A quasi-isomorphism X ⊕ P → X ⊕ Q with P, Q free: the identity on X plus
/// random cross terms through the free parts.
pub fn random_quasi_iso(rng: &mut ChaCha8Rng, b: &Arc<DerivationAlgebra>, x: &SmashModule) -> SmashHom {
    let free = SmashModule::free(b).unwrap();
    let src = if rng.gen_bool(0.5) {
        x.direct_sum(&free).unwrap()
    } else {
        x.clone()
    };
    let tgt = if rng.gen_bool(0.5) {
        x.direct_sum(&free).unwrap()
    } else {
        x.clone()
    };
    let f = x.base().field().clone();
    let mut mat = Matrix::zeros(&f, tgt.dim(), src.dim());
    mat.paste(0, 0, &Matrix::identity(&f, x.dim()));
    let extra = random_smash_hom(rng, &src, &tgt);
    // keep only blocks touching a free summand
    let mut keep = extra.matrix().clone();
    keep.paste(0, 0, &Matrix::zeros(&f, x.dim(), x.dim()));
    SmashHom::new(&src, &tgt, mat.add(&keep)).unwrap()
}
