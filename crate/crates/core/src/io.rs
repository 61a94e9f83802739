//! JSON module and map files with exact, string-encoded scalars.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::comod::{DerivationAlgebra, SmashHom, SmashModule};
use crate::error::{Error, Result};
use crate::field::{Field, Matrix};
use crate::grmod::{Degree, FamilyKind, GradedModule, Grading, HopfFamily, ModuleHom};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub balanced: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<String>,
}

/// Integers as JSON numbers, half-integers as "k/2".
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DegreeLit {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisEntry {
    pub name: String,
    pub degree: DegreeLit,
}

/// Sparse (row, col, scalar literal) entries.
pub type Triples = Vec<(usize, usize, String)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub dim: usize,
    pub degrees: Vec<DegreeLit>,
    /// (i, j, k, c): e_i e_j has coefficient c on e_k.
    pub structure_constants: Vec<(usize, usize, usize, String)>,
    pub unit: Vec<String>,
    pub derivation: Triples,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub family: FamilySpec,
    pub basis: Vec<BasisEntry>,
    #[serde(rename = "X")]
    pub x: Triples,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<Triples>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub source: ModuleFile,
    pub target: ModuleFile,
    pub matrix: Triples,
}

impl FamilySpec {
    pub fn build(&self) -> Result<HopfFamily> {
        let cyclic = match self.grading.as_deref() {
            None | Some("Z") => false,
            Some("Zn") => true,
            Some(g) => return Err(Error::Parse(format!("unknown grading {g:?}; use \"Z\" or \"Zn\""))),
        };
        let need =
            |v: Option<u32>, name: &str| v.ok_or_else(|| Error::Parse(format!("family {} needs {name}", self.kind)));
        match self.kind.as_str() {
            "truncated" => HopfFamily::truncated(need(self.p, "p")?, self.m.unwrap_or(1), cyclic),
            "taft" if self.balanced => HopfFamily::taft_balanced(need(self.n, "n")?, cyclic),
            "taft" => HopfFamily::taft(need(self.n, "n")?, cyclic),
            "group-ring-z2" => Ok(HopfFamily::group_ring_z2()),
            k => Err(Error::Parse(format!("unknown family kind {k:?}"))),
        }
    }

    pub fn of(family: &HopfFamily) -> FamilySpec {
        let grading = match family.grading() {
            Grading::Integer => Some("Z".to_string()),
            Grading::Cyclic(_) => Some("Zn".to_string()),
            Grading::Trivial => None,
        };
        let blank = FamilySpec {
            kind: String::new(),
            p: None,
            m: None,
            n: None,
            balanced: false,
            grading,
        };
        match family.kind() {
            FamilyKind::Truncated { p, m } => FamilySpec {
                kind: "truncated".into(),
                p: Some(p),
                m: Some(m),
                ..blank
            },
            FamilyKind::Taft { n, balanced } => FamilySpec {
                kind: "taft".into(),
                n: Some(n),
                balanced,
                ..blank
            },
            FamilyKind::GroupRingZ2 => FamilySpec {
                kind: "group-ring-z2".into(),
                ..blank
            },
        }
    }
}

impl DegreeLit {
    pub fn parse(&self) -> Result<Degree> {
        match self {
            DegreeLit::Int(j) => Ok(Degree::new(*j)),
            DegreeLit::Text(t) => Degree::parse(t),
        }
    }

    pub fn of(d: Degree) -> DegreeLit {
        match d.as_integer() {
            Some(j) => DegreeLit::Int(j),
            None => DegreeLit::Text(d.to_string()),
        }
    }
}

fn matrix_from_triples(field: &Field, rows: usize, cols: usize, t: &Triples) -> Result<Matrix> {
    let mut m = Matrix::zeros(field, rows, cols);
    for (r, c, v) in t {
        if *r >= rows || *c >= cols {
            return Err(Error::Parse(format!("entry ({r}, {c}) outside a {rows}x{cols} matrix")));
        }
        let s = field.parse_scalar(v)?;
        let cur = m.get(*r, *c);
        m.set(*r, *c, field.add(&cur, &s));
    }
    Ok(m)
}

fn triples_of(m: &Matrix) -> Triples {
    let f = m.field();
    let mut t: Triples = m
        .entries()
        .into_iter()
        .map(|(r, c, v)| (r, c, f.format_scalar(&v)))
        .collect();
    t.sort_by_key(|e| (e.0, e.1));
    t
}

fn degrees_of(lits: &[DegreeLit]) -> Result<Vec<Degree>> {
    lits.iter().map(DegreeLit::parse).collect()
}

/// A module file resolved into its mathematical content.
#[derive(Clone, Debug)]
pub enum LoadedModule {
    Plain(GradedModule),
    Smash(SmashModule),
}

impl LoadedModule {
    pub fn base(&self) -> &GradedModule {
        match self {
            LoadedModule::Plain(m) => m,
            LoadedModule::Smash(m) => m.base(),
        }
    }
}

impl AlgebraSpec {
    pub fn build(&self, family: &HopfFamily) -> Result<DerivationAlgebra> {
        let f = family.field();
        let degrees = degrees_of(&self.degrees)?;
        if degrees.len() != self.dim {
            return Err(Error::Parse(format!(
                "algebra dim {} but {} degrees",
                self.dim,
                degrees.len()
            )));
        }
        let constants = self
            .structure_constants
            .iter()
            .map(|(i, j, k, c)| Ok((*i, *j, *k, f.parse_scalar(c)?)))
            .collect::<Result<Vec<_>>>()?;
        let unit = self
            .unit
            .iter()
            .map(|c| f.parse_scalar(c))
            .collect::<Result<Vec<_>>>()?;
        let derivation = matrix_from_triples(f, self.dim, self.dim, &self.derivation)?;
        DerivationAlgebra::new_unchecked(family, degrees, &constants, unit, derivation)
    }

    pub fn of(b: &DerivationAlgebra) -> AlgebraSpec {
        let f = b.field();
        AlgebraSpec {
            dim: b.dim(),
            degrees: b.degrees().iter().map(|&d| DegreeLit::of(d)).collect(),
            structure_constants: b
                .structure_constants()
                .into_iter()
                .map(|(i, j, k, c)| (i, j, k, f.format_scalar(&c)))
                .collect(),
            unit: b.unit().iter().map(|c| f.format_scalar(c)).collect(),
            derivation: triples_of(b.derivation()),
        }
    }
}

impl ModuleFile {
    pub fn parse(text: &str) -> Result<ModuleFile> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<ModuleFile> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("module files serialise")
    }

    /// The algebra only, for validation reports.
    pub fn algebra(&self) -> Result<Option<DerivationAlgebra>> {
        let family = self.family.build()?;
        self.algebra.as_ref().map(|a| a.build(&family)).transpose()
    }

    fn parts(&self) -> Result<(HopfFamily, Vec<Degree>, Matrix)> {
        let family = self.family.build()?;
        let degrees = self
            .basis
            .iter()
            .map(|b| b.degree.parse())
            .collect::<Result<Vec<_>>>()?;
        let d = degrees.len();
        let x = matrix_from_triples(family.field(), d, d, &self.x)?;
        Ok((family, degrees, x))
    }

    /// Violations of the module (and algebra) axioms, without failing on them.
    pub fn check(&self) -> Result<Vec<String>> {
        let (family, degrees, x) = self.parts()?;
        let mut out: Vec<String> = crate::grmod::module::validate_parts(&family, &degrees, &x)
            .into_iter()
            .map(|v| v.message)
            .collect();
        if let Some(spec) = &self.algebra {
            let b = spec.build(&family)?;
            let bv = b.validate();
            out.extend(bv.iter().map(|v| format!("algebra: {}", v.message)));
            if bv.is_empty() && out.is_empty() {
                if let Err(e) = self.load() {
                    out.push(e.to_string());
                }
            }
        }
        Ok(out)
    }

    pub fn load(&self) -> Result<LoadedModule> {
        let (family, degrees, x) = self.parts()?;
        let base = GradedModule::new(&family, degrees, x)?;
        match (&self.algebra, &self.action) {
            (None, None) => Ok(LoadedModule::Plain(base)),
            (Some(spec), action) => {
                let b = spec.build(&family)?;
                crate::grmod::module::violations_to_error(b.validate())?;
                let b = Arc::new(b);
                let d = base.dim();
                let action = match action {
                    Some(a) => {
                        if a.len() != b.dim() {
                            return Err(Error::Parse(format!(
                                "{} action matrices for an algebra of dimension {}",
                                a.len(),
                                b.dim()
                            )));
                        }
                        a.iter()
                            .map(|t| matrix_from_triples(family.field(), d, d, t))
                            .collect::<Result<Vec<_>>>()?
                    }
                    None if b.dim() == 1 => {
                        let s = family.field().inv(&b.unit()[0])?;
                        vec![Matrix::identity(family.field(), d).scale(&s)]
                    }
                    None => return Err(Error::Parse("action matrices are required when dim B > 1".into())),
                };
                Ok(LoadedModule::Smash(SmashModule::new(&b, base, action)?))
            }
            (None, Some(_)) => Err(Error::Parse("action given without an algebra".into())),
        }
    }

    pub fn plain(&self) -> Result<GradedModule> {
        Ok(self.load()?.base().clone())
    }

    pub fn smash(&self) -> Result<SmashModule> {
        match self.load()? {
            LoadedModule::Smash(m) => Ok(m),
            LoadedModule::Plain(m) => {
                let b = Arc::new(DerivationAlgebra::ground(m.family())?);
                SmashModule::over_ground(&b, m)
            }
        }
    }

    pub fn of_module(m: &GradedModule) -> ModuleFile {
        ModuleFile {
            family: FamilySpec::of(m.family()),
            basis: m
                .degrees()
                .iter()
                .enumerate()
                .map(|(i, &d)| BasisEntry {
                    name: format!("b{i}"),
                    degree: DegreeLit::of(d),
                })
                .collect(),
            x: triples_of(m.x()),
            algebra: None,
            action: None,
        }
    }

    pub fn of_smash(m: &SmashModule) -> ModuleFile {
        let mut file = Self::of_module(m.base());
        file.algebra = Some(AlgebraSpec::of(m.algebra()));
        file.action = Some(m.action().iter().map(triples_of).collect());
        file
    }
}

impl MapFile {
    pub fn parse(text: &str) -> Result<MapFile> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<MapFile> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("map files serialise")
    }

    fn matrix(&self, field: &Field, rows: usize, cols: usize) -> Result<Matrix> {
        matrix_from_triples(field, rows, cols, &self.matrix)
    }

    pub fn plain(&self) -> Result<ModuleHom> {
        let (s, t) = (self.source.plain()?, self.target.plain()?);
        let mat = self.matrix(s.field(), t.dim(), s.dim())?;
        ModuleHom::new(&s, &t, mat)
    }

    pub fn smash(&self) -> Result<SmashHom> {
        let (s, t) = (self.source.smash()?, self.target.smash()?);
        let mat = self.matrix(s.base().field(), t.dim(), s.dim())?;
        SmashHom::new(&s, &t, mat)
    }

    pub fn of_hom(f: &ModuleHom) -> MapFile {
        MapFile {
            source: ModuleFile::of_module(f.source()),
            target: ModuleFile::of_module(f.target()),
            matrix: triples_of(f.matrix()),
        }
    }

    pub fn of_smash(f: &SmashHom) -> MapFile {
        MapFile {
            source: ModuleFile::of_smash(f.source()),
            target: ModuleFile::of_smash(f.target()),
            matrix: triples_of(f.matrix()),
        }
    }
}
