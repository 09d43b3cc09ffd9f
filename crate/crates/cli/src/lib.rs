//! Command-line front end: argument parsing, dispatch, and report assembly.
//! Every command produces a JSON report, a one-paragraph human summary and
//! an exit status.

pub mod mesh;
pub mod workspace;

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use stratify::complex::{self, homology, validate_complex, SimplicialComplex};
use stratify::exitpath::{classifying_space_check, enter_category, is_groupoid, refinement_functor};
use stratify::linalg::Coefficients;
use stratify::poset::{self, validate_poset, Poset, PosetDoc};
use stratify::ran::{ran_poset, wreath_poset};
use stratify::sheaf::{cohomology, global_sections, is_locally_constant, validate_sheaf};
use stratify::strat::{self, depth_dim_report, StratDoc, StratifiedComplex};
use stratify::unzip::{unzip_once, unzip_tower, UnzipDecomposition, UnzipError};
use thiserror::Error;

use workspace::{Document, LoadError, Workspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FieldArg {
    /// Rational numbers.
    Q,
    /// Integers mod 2.
    F2,
}

impl From<FieldArg> for Coefficients {
    fn from(f: FieldArg) -> Self {
        match f {
            FieldArg::Q => Coefficients::Rational,
            FieldArg::F2 => Coefficients::Mod2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MeshPart {
    Unzip,
    Link,
    ConeLocus,
}

#[derive(Debug, Parser)]
#[command(name = "stratify", version, about = "Exact computations on stratified simplicial complexes")]
pub struct Cli {
    /// Coefficient field for homology.
    #[arg(long, global = true, value_enum)]
    pub field: Option<FieldArg>,
    /// Write the JSON report here (plus a `.log` sidecar) and print the summary on stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

/// Inputs are file paths or `corpus:<name>`.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a document of any kind.
    Validate { input: String },
    /// Betti numbers and Euler characteristic.
    Homology { input: String },
    /// Depth and dimension of every stratum, and the map to the depth/dimension poset.
    StrataReport { input: String },
    /// The enter-path relative poset and its checks.
    Exitpath { input: String },
    /// Cohomology and global sections of a sheaf (over ℚ).
    SheafCohomology { input: String },
    /// Unzip a downward-closed set of strata.
    Unzip {
        input: String,
        /// A deep stratum; repeat for several.
        #[arg(long)]
        deep: Vec<String>,
    },
    /// Unzip the deepest strata until every stratum has depth zero.
    UnzipTower { input: String },
    /// Point-count functions on a poset, with the poset-axiom verdict.
    RanPoset {
        input: String,
        #[arg(long)]
        bound: i64,
        /// Also build the partition and labelled-partition posets on this many indices.
        #[arg(long)]
        index_size: Option<usize>,
    },
    /// Cone on a poset, complex or stratified complex.
    Cone {
        input: String,
        #[arg(long, default_value = "*")]
        apex: String,
    },
    /// Join of two documents of the same kind.
    Join {
        left: String,
        right: String,
        /// Prefix identifiers with `L:` and `R:` so they cannot collide.
        #[arg(long)]
        disjoint: bool,
    },
    /// Product of two documents of the same kind.
    Product { left: String, right: String },
    /// Barycentric subdivision with its carrier table.
    Subdivide { input: String },
    /// Restriction to a consecutive set of strata.
    Restrict {
        input: String,
        /// A stratum to keep; repeat for several.
        #[arg(long)]
        strata: Vec<String>,
    },
    /// OFF mesh of one piece of an unzip (dimension at most 3).
    MeshExport {
        input: String,
        #[arg(long)]
        deep: Vec<String>,
        #[arg(long, value_enum, default_value = "unzip")]
        part: MeshPart,
        /// Where to write the OFF file.
        #[arg(long)]
        mesh: PathBuf,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Homology { .. } => "homology",
            Command::StrataReport { .. } => "strata-report",
            Command::Exitpath { .. } => "exitpath",
            Command::SheafCohomology { .. } => "sheaf-cohomology",
            Command::Unzip { .. } => "unzip",
            Command::UnzipTower { .. } => "unzip-tower",
            Command::RanPoset { .. } => "ran-poset",
            Command::Cone { .. } => "cone",
            Command::Join { .. } => "join",
            Command::Product { .. } => "product",
            Command::Subdivide { .. } => "subdivide",
            Command::Restrict { .. } => "restrict",
            Command::MeshExport { .. } => "mesh-export",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success,
    /// An input failed validation.
    Invalid,
    /// An internal mathematical invariant failed.
    Broken,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Success => 0,
            Status::Invalid => 1,
            Status::Broken => 2,
        }
    }
}

pub struct Outcome {
    pub report: Value,
    pub summary: String,
    pub status: Status,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Broken(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub const USAGE_CODE: i32 = 64;

    pub fn code(&self) -> i32 {
        match self {
            CliError::Load(e) if e.is_validation() => 1,
            CliError::Invalid(_) => 1,
            CliError::Broken(_) => 2,
            _ => Self::USAGE_CODE,
        }
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialise")
}

fn fmt_vec(v: &[usize]) -> String {
    format!("[{}]", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

fn field_of(cli: &Cli) -> Coefficients {
    cli.field.unwrap_or(FieldArg::Q).into()
}

fn ok(report: Value, summary: String) -> Result<Outcome, CliError> {
    Ok(Outcome { report, summary, status: Status::Success })
}

/// Runs one command against a fresh workspace. Construction commands
/// (`cone`, `join`, `product`) report the resulting document itself, so
/// their output can be fed back in.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    dispatch(cli, &mut Workspace::new())
}

fn dispatch(cli: &Cli, ws: &mut Workspace) -> Result<Outcome, CliError> {
    let field = field_of(cli);
    match &cli.command {
        Command::Validate { input } => validate(ws, input),
        Command::Homology { input } => {
            let k = ws.resolve(input)?.complex(input)?;
            let h = homology(&k, field);
            let summary = format!("{input}: betti {} euler {} over {}", fmt_vec(&h.betti), h.euler, field_name(field));
            ok(json!({ "field": h.field, "betti": h.betti, "euler": h.euler, "f_vector": k.f_vector() }), summary)
        }
        Command::StrataReport { input } => {
            let x = ws.resolve(input)?.stratified(input)?;
            let r = depth_dim_report(&x);
            let mut summary = format!("{input}: {} strata, max depth {}, monotone {}", r.rows.len(), r.max_depth(), r.monotone);
            for row in &r.rows {
                summary.push_str(&format!(
                    "\n  {:<16} depth {} dim {} -> {}{}",
                    row.stratum,
                    row.depth,
                    row.star_dim,
                    row.target,
                    if row.pure { "" } else { " (not pure)" }
                ));
            }
            ok(to_value(&r), summary)
        }
        Command::Exitpath { input } => exitpath(ws, input, field),
        Command::SheafCohomology { input } => {
            if cli.field == Some(FieldArg::F2) {
                return Err(CliError::Usage("sheaf cohomology is computed over q only".into()));
            }
            let (f, _) = match ws.resolve(input)? {
                Document::Sheaf(f, x) => (f, x),
                other => return Err(LoadError::WrongKind { name: input.clone(), expected: "sheaf", found: other.kind() }.into()),
            };
            let v = validate_sheaf(f.carrier(), f.dims(), f.maps()).map_err(|e| CliError::Invalid(e.to_string()))?;
            let h = cohomology(&f);
            let g = global_sections(&f);
            let summary = format!("{input}: cohomology {} euler {}, global sections {}", fmt_vec(&h.dims), h.euler, g.dim);
            ok(
                json!({
                    "field": Coefficients::Rational,
                    "cohomology": h,
                    "global_sections": { "dim": g.dim, "basis": g.basis_strings(f.base()) },
                    "locally_constant": is_locally_constant(&f),
                    "validation": v,
                }),
                summary,
            )
        }
        Command::Unzip { input, deep } => {
            let x = ws.resolve(input)?.stratified(input)?;
            let (dec, mask) = unzip_with(&x, deep, field)?;
            let strata: Vec<&str> = (0..mask.len()).filter(|&i| mask[i]).map(|i| x.poset().id(i)).collect();
            let status = if dec.check().is_ok() { Status::Success } else { Status::Broken };
            let summary = format!(
                "{input}: unzip of {:?} has {} simplices (betti {}), link {} simplices (betti {}), ledger {}",
                strata,
                dec.unzip.complex().len(),
                fmt_vec(&dec.ledger.betti_unzip),
                dec.link.len(),
                fmt_vec(&dec.ledger.betti_link),
                if dec.ledger.balanced { "balanced".to_string() } else { format!("unbalanced: {}", dec.ledger.failures.join("; ")) }
            );
            let mut report = bundle(&dec);
            report["deep_strata"] = json!(strata);
            Ok(Outcome { report, summary, status })
        }
        Command::UnzipTower { input } => {
            let x = ws.resolve(input)?.stratified(input)?;
            let stages = unzip_tower(&x, field).map_err(|e| match e {
                UnzipError::DepthNotDecreasing { .. } | UnzipError::Unbalanced(_) => CliError::Broken(e.to_string()),
                other => CliError::Invalid(other.to_string()),
            })?;
            let all_ok = stages.iter().all(|s| s.decomposition.check().is_ok());
            let rows: Vec<Value> = stages
                .iter()
                .map(|s| {
                    json!({
                        "deep_strata": s.deep_strata,
                        "depth_before": s.depth_before,
                        "depth_after": s.depth_after,
                        "unzip_simplices": s.decomposition.unzip.complex().len(),
                        "link_simplices": s.decomposition.link.len(),
                        "ledger": s.decomposition.ledger,
                    })
                })
                .collect();
            let last = stages.last().map_or_else(|| x.clone(), |s| s.decomposition.unzip.clone());
            let summary = format!(
                "{input}: {} stages, final unzip has {} simplices, ledgers {}",
                stages.len(),
                last.complex().len(),
                if all_ok { "balanced" } else { "unbalanced" }
            );
            Ok(Outcome { report: json!({ "stages": rows, "final": last.to_doc() }), summary, status: if all_ok { Status::Success } else { Status::Broken } })
        }
        Command::RanPoset { input, bound, index_size } => {
            let p = ws.resolve(input)?.poset(input)?;
            let r = ran_poset(&p, *bound).map_err(|e| CliError::Invalid(e.to_string()))?;
            let mut report = to_value(&r);
            report["is_poset"] = json!(r.verdict.is_valid());
            let mut summary = format!("{input}: {} count functions with at most {bound} points, partial order: {}", r.elements.len(), r.verdict.is_valid());
            if !r.verdict.is_valid() {
                summary.push_str(&format!(" ({})", r.verdict));
            }
            if let Some(n) = index_size {
                let names: Vec<String> = (0..*n).map(|i| format!("i{i}")).collect();
                let w = wreath_poset(&names, &p).map_err(|e| CliError::Invalid(e.to_string()))?;
                let table = |target: &Poset, map: &[usize]| -> BTreeMap<String, String> {
                    (0..w.poset.len()).map(|e| (w.poset.id(e).to_string(), target.id(map[e]).to_string())).collect()
                };
                report["partitions"] = to_value(&w.partitions.poset.to_doc());
                report["wreath"] = json!({
                    "poset": w.poset.to_doc(),
                    "to_partitions": table(&w.partitions.poset, &w.to_partitions),
                    "to_power": table(&w.power, &w.to_power),
                    "projections_monotone": w.projections_monotone(),
                });
                summary.push_str(&format!("; {} partitions, {} labelled partitions", w.partitions.poset.len(), w.poset.len()));
            }
            ok(report, summary)
        }
        Command::Cone { input, apex } => {
            let doc = ws.resolve(input)?;
            let (report, size) = match doc {
                Document::Poset(p) => {
                    let c = poset::cone(&p, apex).map_err(invalid)?;
                    (to_value(&c.to_doc()), c.len())
                }
                Document::Complex(k) => {
                    let c = complex::cone_complex(apex, &k).map_err(invalid)?;
                    (to_value(&c.to_doc()), c.len())
                }
                Document::Stratified(x) => {
                    let c = strat::cone_strat(apex, &x).map_err(invalid)?;
                    (to_value(&c.to_doc()), c.complex().len())
                }
                Document::Sheaf(..) => return Err(CliError::Usage("cannot cone a sheaf".into())),
            };
            ok(report, format!("cone on {input} with apex {apex}: {size} elements"))
        }
        Command::Join { left, right, disjoint } => {
            let (a, b) = (ws.resolve(left)?, ws.resolve(right)?);
            let (a, b) = if *disjoint { (prefixed(&a, "L:")?, prefixed(&b, "R:")?) } else { (a, b) };
            let (report, size) = match (&a, &b) {
                (Document::Poset(p), Document::Poset(q)) => {
                    let j = poset::join_poset(p, q).map_err(invalid)?;
                    (to_value(&j.to_doc()), j.len())
                }
                (Document::Complex(k), Document::Complex(l)) => {
                    let j = complex::join_complex(k, l).map_err(invalid)?;
                    (to_value(&j.to_doc()), j.len())
                }
                _ => {
                    let (x, y) = (a.stratified(left)?, b.stratified(right)?);
                    let j = strat::join_strat(&x, &y).map_err(invalid)?;
                    (to_value(&j.to_doc()), j.complex().len())
                }
            };
            ok(report, format!("join of {left} and {right}: {size} elements"))
        }
        Command::Product { left, right } => {
            let (a, b) = (ws.resolve(left)?, ws.resolve(right)?);
            let (report, size) = match (&a, &b) {
                (Document::Poset(p), Document::Poset(q)) => {
                    let j = poset::product(p, q);
                    (to_value(&j.to_doc()), j.len())
                }
                (Document::Complex(k), Document::Complex(l)) => {
                    let j = complex::product_complex(k, l);
                    (to_value(&j.to_doc()), j.len())
                }
                _ => {
                    let j = strat::product_strat(&a.stratified(left)?, &b.stratified(right)?);
                    (to_value(&j.to_doc()), j.complex().len())
                }
            };
            ok(report, format!("product of {left} and {right}: {size} elements"))
        }
        Command::Subdivide { input } => {
            let doc = ws.resolve(input)?;
            let k = doc.complex(input)?;
            let sd = complex::subdivide(&k);
            let carrier: BTreeMap<String, String> = (0..sd.complex.len()).map(|c| (sd.complex.label(c), k.label(sd.carrier[c]))).collect();
            let mut report = json!({ "complex": sd.complex.to_doc(), "carrier": carrier });
            if let Document::Stratified(x) = &doc {
                let assignment = sd.carrier.iter().map(|&c| x.assignment()[c]).collect();
                let fine = StratifiedComplex::new(sd.complex.clone(), x.poset().clone(), assignment).map_err(|e| CliError::Broken(e.to_string()))?;
                report["stratified"] = to_value(&fine.to_doc());
            }
            ok(report, format!("{input}: subdivision has f-vector {}", fmt_vec(&sd.complex.f_vector())))
        }
        Command::Restrict { input, strata } => {
            let x = ws.resolve(input)?.stratified(input)?;
            let r = strat::restrict(&x, strata).map_err(invalid)?;
            let h = homology(r.complex(), field);
            let summary = format!("{input} restricted to {strata:?}: {} simplices, betti {}", r.complex().len(), fmt_vec(&h.betti));
            ok(json!({ "stratified": r.to_doc(), "homology": h }), summary)
        }
        Command::MeshExport { input, deep, part, mesh } => {
            let x = ws.resolve(input)?.stratified(input)?;
            if x.complex().dim() > 3 {
                return Err(CliError::Invalid(format!("{input} has dimension {} > 3", x.complex().dim())));
            }
            let (dec, _) = unzip_with(&x, deep, field)?;
            let r = mesh::Realization::new(x.complex());
            let (piece, ambient, points) = match part {
                MeshPart::Unzip => (dec.unzip.complex(), &r.first.complex, &r.first_points),
                MeshPart::ConeLocus => (&dec.cone_locus, &r.first.complex, &r.first_points),
                MeshPart::Link => (&dec.link, &r.second.complex, &r.second_points),
            };
            let coords = mesh::place(piece, ambient, points).ok_or_else(|| CliError::Broken("piece is not a subcomplex of its subdivision".into()))?;
            let off = mesh::to_off(piece, &coords);
            std::fs::write(mesh, &off).map_err(|source| CliError::Io { path: mesh.display().to_string(), source })?;
            let faces = off.lines().nth(1).and_then(|l| l.split(' ').nth(1)).and_then(|f| f.parse::<usize>().ok()).unwrap_or(0);
            let summary = format!("{input}: wrote {} vertices and {faces} faces to {}", coords.len(), mesh.display());
            ok(json!({ "part": format!("{part:?}").to_lowercase(), "vertices": coords.len(), "faces": faces, "path": mesh.display().to_string() }), summary)
        }
    }
}

fn field_name(f: Coefficients) -> &'static str {
    match f {
        Coefficients::Rational => "q",
        Coefficients::Mod2 => "f2",
    }
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

fn unzip_with(x: &StratifiedComplex, deep: &[String], field: Coefficients) -> Result<(UnzipDecomposition, Vec<bool>), CliError> {
    let mask = x.poset().mask(deep).map_err(invalid)?;
    let dec = unzip_once(x, &mask, field).map_err(invalid)?;
    Ok((dec, mask))
}

/// The three pieces, the two projections as vertex tables, and the ledger.
fn bundle(dec: &UnzipDecomposition) -> Value {
    json!({
        "cone_locus": dec.cone_locus.to_doc(),
        "unzip": dec.unzip.to_doc(),
        "link": dec.link.to_doc(),
        "pi": dec.pi,
        "pi_simplicial": dec.pi_simplicial,
        "pi_fibers": dec.pi_fibers,
        "rho": dec.rho,
        "rho_simplicial": dec.rho_simplicial,
        "ledger": dec.ledger,
    })
}

fn prefix_poset_doc(d: &PosetDoc, pre: &str) -> PosetDoc {
    PosetDoc {
        elements: d.elements.iter().map(|e| format!("{pre}{e}")).collect(),
        leq: d.leq.iter().map(|(a, b)| (format!("{pre}{a}"), format!("{pre}{b}"))).collect(),
    }
}

/// Renames every vertex and stratum so two documents can be joined.
fn prefixed(doc: &Document, pre: &str) -> Result<Document, CliError> {
    Ok(match doc {
        Document::Poset(p) => Document::Poset(Poset::from_doc(&prefix_poset_doc(&p.to_doc(), pre)).map_err(|e| CliError::Broken(e.to_string()))?),
        Document::Complex(k) => Document::Complex(k.with_prefix(pre)),
        Document::Stratified(x) => {
            let d = x.to_doc();
            let pre_ids = |s: &[String]| s.iter().map(|v| format!("{pre}{v}")).collect::<Vec<_>>();
            let doc = StratDoc {
                complex: complex::ComplexDoc { vertices: pre_ids(&d.complex.vertices), simplices: d.complex.simplices.iter().map(|s| pre_ids(s)).collect() },
                poset: prefix_poset_doc(&d.poset, pre),
                assignment: d.assignment.iter().map(|(s, a)| (pre_ids(s), format!("{pre}{a}"))).collect(),
            };
            Document::Stratified(StratifiedComplex::from_doc(&doc).map_err(|e| CliError::Broken(e.to_string()))?)
        }
        Document::Sheaf(..) => return Err(CliError::Usage("cannot join sheaves".into())),
    })
}

fn validate(ws: &mut Workspace, input: &str) -> Result<Outcome, CliError> {
    let doc = match ws.resolve(input) {
        Ok(d) => d,
        Err(e) if e.is_validation() => {
            let summary = format!("{input}: invalid: {e}");
            return Ok(Outcome { report: json!({ "input": input, "valid": false, "error": e.to_string() }), summary, status: Status::Invalid });
        }
        Err(e) => return Err(e.into()),
    };
    let (report, valid, size) = match &doc {
        Document::Poset(p) => {
            let r = validate_poset(&p.relation());
            (to_value(&r), r.is_valid(), p.len())
        }
        Document::Complex(k) => {
            let all: Vec<Vec<String>> = (0..k.len()).map(|i| k.simplex_ids(i)).collect();
            let r = validate_complex(k.vertices(), &all);
            (to_value(&r), r.is_valid(), k.len())
        }
        Document::Stratified(x) => {
            let r = x.report();
            (to_value(&r), r.is_valid(), x.complex().len())
        }
        Document::Sheaf(f, _) => {
            let r = validate_sheaf(f.carrier(), f.dims(), f.maps()).map_err(invalid)?;
            (to_value(&r), r.is_valid(), f.base().len())
        }
    };
    let summary = format!("{input}: {} with {size} elements, {}", doc.kind(), if valid { "valid" } else { "invalid" });
    Ok(Outcome {
        report: json!({ "input": input, "kind": doc.kind(), "valid": valid, "report": report }),
        summary,
        status: if valid { Status::Success } else { Status::Invalid },
    })
}

fn exitpath(ws: &mut Workspace, input: &str, field: Coefficients) -> Result<Outcome, CliError> {
    let x = ws.resolve(input)?.stratified(input)?;
    let rc = enter_category(&x);
    let cs = classifying_space_check(&x, field);
    let g = is_groupoid(&x);
    let rf = refinement_functor(x.complex());
    let k: &SimplicialComplex = x.complex();
    let fibers: BTreeMap<String, usize> = (0..k.len()).map(|i| (k.label(i), rf.fibers[i])).collect();
    let witness = rc.two_out_of_three_witness().map(|(a, b, c)| [a, b, c].map(|i| rc.base().id(i).to_string()));
    let summary =
        format!("{input}: {} objects, {} weak arrows, classifying space agrees: {}, groupoid: {}", rc.base().len(), rc.weak().len(), cs.agree, g.groupoid);
    let status = if cs.agree && witness.is_none() && rf.monotone { Status::Success } else { Status::Broken };
    Ok(Outcome {
        report: json!({
            "category": rc.to_doc(),
            "two_out_of_three_witness": witness,
            "classifying_space": cs,
            "groupoid": g,
            "refinement": { "monotone": rf.monotone, "fibers": fibers },
        }),
        summary,
        status,
    })
}
