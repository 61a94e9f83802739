//! Command-line front end. Commands write their report to any `io::Write`.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::comod::{self, SmashHom};
use crate::error::{Error, Result};
use crate::field::{Field, Matrix};
use crate::grmod::{decompose, slash_homology, Decomposition, FamilyKind, GradedModule, HopfFamily, ModuleHom};
use crate::groth::{self, FusionTable};
use crate::io::{LoadedModule, MapFile, ModuleFile};
use crate::stable;

#[derive(Debug, Parser)]
#[command(
    name = "hopfolog",
    version,
    about = "Stable module categories of finite-dimensional Hopf algebras"
)]
pub struct Cli {
    /// Deterministic output: no timing or version banner.
    #[arg(long, global = true)]
    pub golden: bool,
    /// Tab-separated tables.
    #[arg(long, global = true)]
    pub tsv: bool,
    /// Run the scalar self-tests first.
    #[arg(long)]
    pub field_check: bool,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    #[arg(long)]
    pub taft_n: Option<u32>,
    /// Z/n grading instead of Z.
    #[arg(long)]
    pub cyclic: bool,
}

impl FamilyArgs {
    fn build(&self) -> Result<HopfFamily> {
        let fam = match (self.p, self.taft_n) {
            (Some(p), None) => HopfFamily::truncated(p, self.m, self.cyclic),
            (None, Some(n)) => HopfFamily::taft(n, self.cyclic),
            _ => return Err(Error::Usage("give exactly one of --p or --taft-n".into())),
        };
        fam.map_err(|e| Error::Usage(e.to_string()))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Indecomposable summands of a module.
    Decompose { file: PathBuf },
    /// Tensor product of two modules, written as a module file.
    Tensor {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Products of the balanced indecomposables against the fusion rule.
    FusionTable {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        check: bool,
    },
    /// Class in the Grothendieck ring R_n.
    Groth { file: PathBuf },
    /// Class in the split Grothendieck ring, balanced basis.
    SplitClass { file: PathBuf },
    /// Dimensions of Hom, its null-homotopic part and the stable Hom.
    StableHom { m: PathBuf, n: PathBuf },
    /// Cone of a map.
    Cone {
        map: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Third map of a morphism between the standard triangles of u and u′.
    TriangleComplete {
        u1: PathBuf,
        u2: PathBuf,
        f: PathBuf,
        g: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// T(M), or T′(M) with --inverse.
    Shift {
        file: PathBuf,
        #[arg(long)]
        inverse: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Slash homology ker X^a / im X^{n-a}.
    Slash {
        file: PathBuf,
        #[arg(long)]
        a: Option<usize>,
    },
    /// Whether a map of smash modules is a quasi-isomorphism.
    QuasiIso { map: PathBuf },
    /// Complete s: X → Y (quasi-iso) and f: Z → Y to a homotopy square.
    OrePullback {
        s: PathBuf,
        f: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Find a quasi-iso t: W → X with f∘t null-homotopic.
    OreKill {
        f: PathBuf,
        s: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Homotopy and derived triviality over A_0 ⊗ k[Z_2].
    Dg2Check { file: PathBuf },
    /// Check module (and algebra) axioms.
    Validate { file: PathBuf },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Decompose { .. } => "decompose",
            Command::Tensor { .. } => "tensor",
            Command::FusionTable { .. } => "fusion-table",
            Command::Groth { .. } => "groth",
            Command::SplitClass { .. } => "split-class",
            Command::StableHom { .. } => "stable-hom",
            Command::Cone { .. } => "cone",
            Command::TriangleComplete { .. } => "triangle-complete",
            Command::Shift { .. } => "shift",
            Command::Slash { .. } => "slash",
            Command::QuasiIso { .. } => "quasi-iso",
            Command::OrePullback { .. } => "ore-pullback",
            Command::OreKill { .. } => "ore-kill",
            Command::Dg2Check { .. } => "dg2-check",
            Command::Validate { .. } => "validate",
        }
    }
}

/// Outcome of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    /// The input was read but failed validation.
    Invalid,
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Internal(format!("write failed: {e}"))
}

/// Write a constructed module to `out` if given, else to the report.
fn emit(w: &mut dyn Write, json: String, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, json + "\n").map_err(|e| Error::Parse(format!("{}: {e}", path.display()))),
        None => writeln!(w, "{json}").map_err(io_err),
    }
}

fn write_decomposition(w: &mut dyn Write, title: &str, d: &Decomposition) -> Result<()> {
    writeln!(w, "{title}:").map_err(io_err)?;
    if d.is_empty() {
        writeln!(w, "  (none)").map_err(io_err)?;
    }
    for (i, j, mult) in d.iter() {
        writeln!(w, "  V_{i}{{{j}}} x{mult}").map_err(io_err)?;
    }
    Ok(())
}

fn write_table(w: &mut dyn Write, table: &FusionTable, tsv: bool) -> Result<()> {
    let size = table.size();
    let mut rows: Vec<Vec<String>> = Vec::with_capacity(size + 1);
    let mut header = vec!["i\\j".to_string()];
    header.extend((0..size).map(|j| j.to_string()));
    rows.push(header);
    for i in 0..size {
        let mut row = vec![i.to_string()];
        row.extend((0..size).map(|j| table.cell(i, j).computed.cell()));
        rows.push(row);
    }
    if tsv {
        for row in rows {
            writeln!(w, "{}", row.join("\t")).map_err(io_err)?;
        }
        return Ok(());
    }
    let width = rows.iter().flatten().map(|c| c.chars().count()).max().unwrap_or(1);
    for row in rows {
        let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        writeln!(w, "{}", cells.join("  ").trim_end()).map_err(io_err)?;
    }
    Ok(())
}

fn read_plain(path: &Path) -> Result<GradedModule> {
    ModuleFile::read(path)?.plain()
}

/// Scalar self-test: field axioms on a grid of elements and a solved system.
pub fn field_check(w: &mut dyn Write) -> Result<()> {
    let fields = [
        Field::prime(2)?,
        Field::prime(7)?,
        Field::cyclotomic(5)?,
        Field::cyclotomic(8)?,
    ];
    for f in &fields {
        let sample: Vec<_> = (-3..=3).map(|v| f.add(&f.from_i64(v), &f.zeta_pow(v))).collect();
        for a in &sample {
            for b in &sample {
                if f.add(a, b) != f.add(b, a) || f.mul(a, b) != f.mul(b, a) {
                    return Err(Error::Internal(format!("commutativity fails in {f}")));
                }
                if !f.is_zero(b) && f.mul(&f.mul(a, &f.inv(b)?), b) != *a {
                    return Err(Error::Internal(format!("division fails in {f}")));
                }
            }
        }
        let m = Matrix::from_fn(f, 3, 3, |r, c| sample[(r * 3 + c + 1) % sample.len()].clone());
        let rhs = Matrix::from_fn(f, 3, 1, |r, _| sample[r].clone());
        if let Some(x) = m.solve(&rhs)?.particular {
            if m.mul(&x) != rhs {
                return Err(Error::Internal(format!("back-substitution fails in {f}")));
            }
        }
    }
    writeln!(w, "field check: OK").map_err(io_err)
}

pub fn run(cli: &Cli, w: &mut dyn Write) -> Result<Outcome> {
    if cli.field_check {
        field_check(w)?;
    }
    let Some(cmd) = &cli.command else {
        return Ok(Outcome::Ok);
    };
    run_command(cmd, cli.tsv, w)
}

fn run_command(cmd: &Command, tsv: bool, w: &mut dyn Write) -> Result<Outcome> {
    match cmd {
        Command::Decompose { file } => {
            let d = decompose(&read_plain(file)?);
            write_decomposition(w, "stable", &d.stable_part())?;
            write_decomposition(w, "projective", &d.projective_part())?;
        }
        Command::Tensor { a, b, out } => {
            let t = read_plain(a)?.tensor(&read_plain(b)?)?;
            emit(w, ModuleFile::of_module(&t).to_json(), out)?;
        }
        Command::FusionTable { family, check } => {
            let fam = family.build()?;
            let table = match fam.kind() {
                FamilyKind::Truncated { m, .. } if m > 1 => groth::product_table(&fam)?,
                _ => groth::fusion_table(&fam)?,
            };
            write_table(w, &table, tsv)?;
            if *check {
                write_mismatches(w, &table.mismatches())?;
            }
        }
        Command::Groth { file } => {
            writeln!(w, "{}", groth::class_of(&read_plain(file)?)?).map_err(io_err)?;
        }
        Command::SplitClass { file } => {
            writeln!(w, "{}", groth::split_class(&read_plain(file)?)).map_err(io_err)?;
        }
        Command::StableHom { m, n } => {
            let s = stable::stable_hom(&read_plain(m)?, &read_plain(n)?)?;
            writeln!(
                w,
                "hom: {}, null-homotopic: {}, stable: {}",
                s.hom,
                s.null_homotopic,
                s.stable()
            )
            .map_err(io_err)?;
        }
        Command::Cone { map, out } => {
            let file = MapFile::read(map)?;
            if file.source.algebra.is_some() {
                let c = comod::a_cone(&file.smash()?)?;
                writeln!(w, "homotopy trivial: {}", yes(comod::is_homotopy_trivial(&c.cone)?)).map_err(io_err)?;
                writeln!(w, "stably trivial: {}", yes(stable::is_stably_trivial(c.cone.base()))).map_err(io_err)?;
                emit(w, ModuleFile::of_smash(&c.cone).to_json(), out)?;
            } else {
                let t = stable::cone(&file.plain()?)?;
                writeln!(w, "stably trivial: {}", yes(stable::is_stably_trivial(t.cone()))).map_err(io_err)?;
                emit(w, ModuleFile::of_module(t.cone()).to_json(), out)?;
            }
        }
        Command::TriangleComplete { u1, u2, f, g, out } => {
            let load = |p: &PathBuf| -> Result<ModuleHom> { MapFile::read(p)?.plain() };
            let (u1, u2, f, g) = (load(u1)?, load(u2)?, load(f)?, load(g)?);
            let t1 = stable::cone(&u1)?;
            let t2 = stable::cone(&u2)?;
            let tm = stable::complete_triangle_morphism(&t1, &t2, &f, &g)?;
            let chk = stable::check_triangle_morphism(&t1, &t2, &f, &g, &tm.h)?;
            writeln!(w, "left square: {}", yes(chk.left_square)).map_err(io_err)?;
            writeln!(w, "right square (strict): {}", yes(chk.right_square_strict)).map_err(io_err)?;
            writeln!(w, "right square (up to homotopy): {}", yes(chk.right_square_stable)).map_err(io_err)?;
            emit(w, MapFile::of_hom(&tm.h).to_json(), out)?;
        }
        Command::Shift { file, inverse, out } => {
            let m = read_plain(file)?;
            let s = if *inverse {
                stable::shift_tprime(&m)?
            } else {
                stable::shift_t(&m)?
            };
            writeln!(w, "stable class: {}", stable::stable_class(&s)).map_err(io_err)?;
            emit(w, ModuleFile::of_module(&s).to_json(), out)?;
        }
        Command::Slash { file, a } => {
            let m = read_plain(file)?;
            let n = m.family().order();
            let range: Vec<usize> = match a {
                Some(a) if *a == 0 || *a >= n => return Err(Error::Usage(format!("--a must lie in 1..{n}"))),
                Some(a) => vec![*a],
                None => (1..n).collect(),
            };
            for a in range {
                let h = slash_homology(&m, a)?;
                let cells: Vec<String> = h.iter().map(|(d, k)| format!("{d}:{k}")).collect();
                writeln!(w, "a={a}: [{}]", cells.join(", ")).map_err(io_err)?;
            }
        }
        Command::QuasiIso { map } => {
            let f = MapFile::read(map)?.smash()?;
            let rep = comod::is_quasi_iso(&f)?;
            writeln!(w, "quasi-iso: {}", yes(rep.verdict)).map_err(io_err)?;
            for (a, h) in &rep.slash {
                let cells: Vec<String> = h.iter().map(|(d, k)| format!("{d}:{k}")).collect();
                writeln!(w, "a={a}: [{}]", cells.join(", ")).map_err(io_err)?;
            }
        }
        Command::OrePullback { s, f, out } => {
            let s = MapFile::read(s)?.smash()?;
            let f = MapFile::read(f)?.smash()?;
            let pb = comod::ore_pullback(&s, &f)?;
            writeln!(w, "h_Z quasi-iso: {}", yes(comod::is_quasi_iso(&pb.h_z)?.verdict)).map_err(io_err)?;
            let square = s.compose(&pb.h_x)?.sub(&f.compose(&pb.h_z)?)?;
            writeln!(
                w,
                "square commutes up to homotopy: {}",
                yes(comod::is_a_null_homotopic(&square)?)
            )
            .map_err(io_err)?;
            emit(w, ModuleFile::of_smash(&pb.c).to_json(), out)?;
        }
        Command::OreKill { f, s, out } => {
            let f: SmashHom = MapFile::read(f)?.smash()?;
            let s = MapFile::read(s)?.smash()?;
            let k = comod::ore_kill(&f, &s)?;
            writeln!(w, "t quasi-iso: {}", yes(comod::is_quasi_iso(&k.t)?.verdict)).map_err(io_err)?;
            writeln!(
                w,
                "f∘t null-homotopic: {}",
                yes(comod::is_a_null_homotopic(&f.compose(&k.t)?)?)
            )
            .map_err(io_err)?;
            emit(w, MapFile::of_smash(&k.t).to_json(), out)?;
        }
        Command::Dg2Check { file } => {
            let m = ModuleFile::read(file)?.smash()?;
            let r = comod::dg_p2_checks(&m)?;
            writeln!(w, "rank d: {}", r.rank).map_err(io_err)?;
            writeln!(w, "dim ker d: {}", r.kernel_dim).map_err(io_err)?;
            writeln!(w, "dim im d: {}", r.image_dim).map_err(io_err)?;
            writeln!(w, "homotopy trivial: {}", yes(r.homotopy_trivial)).map_err(io_err)?;
            writeln!(w, "derived trivial: {}", yes(r.derived_trivial)).map_err(io_err)?;
            if !r.consistent() {
                return Err(Error::Internal("homotopy-trivial module is not acyclic".into()));
            }
        }
        Command::Validate { file } => {
            let f = ModuleFile::read(file)?;
            let problems = f.check()?;
            if problems.is_empty() {
                let kind = match f.load()? {
                    LoadedModule::Plain(_) => "module",
                    LoadedModule::Smash(_) => "smash module",
                };
                writeln!(w, "valid {kind}").map_err(io_err)?;
            } else {
                for p in &problems {
                    writeln!(w, "invalid: {p}").map_err(io_err)?;
                }
                return Ok(Outcome::Invalid);
            }
        }
    }
    Ok(Outcome::Ok)
}

fn write_mismatches(w: &mut dyn Write, cells: &[&groth::FusionCell]) -> Result<()> {
    if cells.is_empty() {
        return writeln!(w, "OK").map_err(io_err);
    }
    writeln!(w, "mismatches: {}", cells.len()).map_err(io_err)?;
    for c in cells {
        writeln!(
            w,
            "  V~{} x V~{}: computed {}, predicted {}",
            c.i, c.j, c.computed, c.predicted
        )
        .map_err(io_err)?;
    }
    Ok(())
}

/// Exit code for an error: 1 for bad flags, 2 for bad input, 3 for broken invariants.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) => 1,
        Error::Internal(_) => 3,
        _ => 2,
    }
}
