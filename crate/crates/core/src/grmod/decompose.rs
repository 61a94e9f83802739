//! Krull-Schmidt decomposition from rank data.
//!
//! Every module is a direct sum of strings V_i{j}. With
//! r_k(e) = rank(X^k : M_e → M_{e+k}), the number of strings starting in
//! degree e of length at least k+1 is r_k(e) - r_{k+1}(e-1), and the
//! multiplicities follow by differencing in k.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::degree::Degree;
use super::family::HopfFamily;
use super::module::GradedModule;
use super::opmod::degree_classes;
use crate::error::{Error, Result};
use crate::field::Matrix;

/// Ranks r_k(e) for 0 ≤ k ≤ n; absent entries are zero.
#[derive(Clone, Debug, Default)]
pub struct RankTable {
    ranks: HashMap<(usize, Degree), usize>,
}

impl RankTable {
    pub fn get(&self, k: usize, e: Degree) -> usize {
        self.ranks.get(&(k, e)).copied().unwrap_or(0)
    }

    fn add(&mut self, k: usize, e: Degree, r: usize) {
        if r > 0 {
            *self.ranks.entry((k, e)).or_insert(0) += r;
        }
    }
}

/// Connected components of the support graph of X.
fn components(m: &GradedModule) -> Vec<Vec<usize>> {
    let dim = m.dim();
    let mut parent: Vec<usize> = (0..dim).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (r, c, _) in m.x().entries() {
        let (a, b) = (find(&mut parent, r), find(&mut parent, c));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..dim {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(i);
    }
    groups.into_values().collect()
}

/// Rank table of X, computed independently on each connected component.
pub fn rank_table(m: &GradedModule) -> RankTable {
    let family = m.family();
    let n = family.order();
    let one = Degree::new(1);
    let mut table = RankTable::default();
    for comp in components(m) {
        let x = m.x().select(&comp, &comp);
        let degrees: Vec<Degree> = comp.iter().map(|&i| m.degrees()[i]).collect();
        let classes = degree_classes(&degrees);
        for (&e, start) in &classes {
            table.add(0, e, start.len());
            // rows of `span` are the images X^k(M_e) in coordinates of `prev`
            let mut span = Matrix::identity(m.field(), start.len());
            let mut prev: &Vec<usize> = start;
            let mut deg = e;
            for k in 1..=n {
                deg = family.normalize(deg + one);
                let Some(next) = classes.get(&deg) else { break };
                let block = x.select(next, prev).transpose();
                span = span.mul(&block).row_basis();
                if span.rows() == 0 {
                    break;
                }
                table.add(k, e, span.rows());
                prev = next;
            }
        }
    }
    table
}

/// Multiset of indecomposables V_i{j}, keyed by (i, j).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Decomposition {
    order: usize,
    parts: BTreeMap<(usize, Degree), usize>,
}

impl Decomposition {
    pub fn new(order: usize) -> Self {
        Decomposition {
            order,
            parts: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, i: usize, j: Degree, mult: usize) {
        if mult > 0 {
            *self.parts.entry((i, j)).or_insert(0) += mult;
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn multiplicity(&self, i: usize, j: Degree) -> usize {
        self.parts.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Summands ((i, j), multiplicity) in lexicographic order of (i, j).
    pub fn iter(&self) -> impl Iterator<Item = (usize, Degree, usize)> + '_ {
        self.parts.iter().map(|(&(i, j), &m)| (i, j, m))
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Total dimension Σ mult·(i+1).
    pub fn dim(&self) -> usize {
        self.iter().map(|(i, _, m)| (i + 1) * m).sum()
    }

    pub fn summand_count(&self) -> usize {
        self.parts.values().sum()
    }

    fn filtered(&self, keep: impl Fn(usize) -> bool) -> Decomposition {
        Decomposition {
            order: self.order,
            parts: self
                .parts
                .iter()
                .filter(|(k, _)| keep(k.0))
                .map(|(k, v)| (*k, *v))
                .collect(),
        }
    }

    /// Summands with i < n - 1.
    pub fn stable_part(&self) -> Decomposition {
        let top = self.order - 1;
        self.filtered(|i| i < top)
    }

    /// The projective summands V_{n-1}{j}.
    pub fn projective_part(&self) -> Decomposition {
        let top = self.order - 1;
        self.filtered(|i| i == top)
    }

    pub fn is_projective(&self) -> bool {
        self.stable_part().is_empty()
    }

    pub fn union(&self, other: &Decomposition) -> Decomposition {
        let mut out = self.clone();
        for (i, j, m) in other.iter() {
            out.insert(i, j, m);
        }
        out
    }

    /// The module ⊕ V_i{j}^mult with summands in key order.
    pub fn reassemble(&self, family: &HopfFamily) -> Result<GradedModule> {
        let mut parts = Vec::new();
        for (i, j, m) in self.iter() {
            let v = GradedModule::indecomposable(family, i, j)?;
            parts.extend(std::iter::repeat_n(v, m));
        }
        let refs: Vec<&GradedModule> = parts.iter().collect();
        GradedModule::direct_sum_all(family, &refs)
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .iter()
            .map(|(i, j, m)| {
                if m == 1 {
                    format!("V_{i}{{{j}}}")
                } else {
                    format!("{m}*V_{i}{{{j}}}")
                }
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// Decompose a module into indecomposables.
pub fn decompose(m: &GradedModule) -> Decomposition {
    let family = m.family();
    let n = family.order();
    let ranks = rank_table(m);
    let mut out = Decomposition::new(n);
    let one = Degree::new(1);
    for &e in degree_classes(m.degrees()).keys() {
        let before = family.normalize(e - one);
        // strings starting at e of length at least k+1
        let starting = |k: usize| ranks.get(k, e) as i64 - ranks.get(k + 1, before) as i64;
        for i in 0..n {
            let mult = starting(i) - starting(i + 1);
            assert!(mult >= 0, "negative multiplicity for V_{i}{{{e}}}");
            out.insert(i, e, mult as usize);
        }
    }
    out
}

/// Decomposition and module agree up to isomorphism.
pub fn is_isomorphic(a: &GradedModule, b: &GradedModule) -> Result<bool> {
    a.same_family(b)?;
    Ok(a.dim() == b.dim() && decompose(a) == decompose(b))
}

/// dim of ker X^a / im X^{n-a} in each degree present in M, for 0 < a < n.
pub fn slash_homology(m: &GradedModule, a: usize) -> Result<BTreeMap<Degree, usize>> {
    let family = m.family();
    let n = family.order();
    if a == 0 || a >= n {
        return Err(Error::OutOfRange(format!("slash index {a} must lie in 1..{n}")));
    }
    let ranks = rank_table(m);
    let mut out = BTreeMap::new();
    for (d, idx) in degree_classes(m.degrees()) {
        let back = family.normalize(d - Degree::new((n - a) as i64));
        let h = idx.len() - ranks.get(a, d) - ranks.get(n - a, back);
        out.insert(d, h);
    }
    Ok(out)
}
