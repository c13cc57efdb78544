use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use clustercat::endo::endo_profile;
use clustercat::orbit::{CatalogEntry, TableEntry};
use clustercat::tilting::{build_tilting_graph, enumerate_cluster_tilting, lift, TiltingGraph};
use clustercat::verify::{default_battery, quiver_label, run_battery, Summary, DEFAULT_MODULI};
use clustercat::{
    parse_quiver, DynkinClass, Family, ModuleCategory, OrbitCategory, OrbitObject, Quiver,
    SCHEMA_VERSION,
};

#[derive(Parser)]
#[command(
    name = "clustercat",
    version,
    about = "Generalized cluster categories of Dynkin quivers"
)]
struct Cli {
    /// Quiver file (`vertices n` and `arrow i j` lines).
    #[arg(long, global = true)]
    quiver: Option<PathBuf>,
    /// Work in D^b(kQ)/F^m; defaults to 1 (and to 1, 2, 3 for `verify`).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    m: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Indecomposable modules, AR translates and irreducible maps.
    Ar,
    /// Indecomposables of the orbit category.
    Ind,
    /// Hom and Ext¹ dimensions, for one pair `m<k>[<shift>]` or the full tables.
    Hom {
        x: Option<String>,
        y: Option<String>,
    },
    /// Generalized cluster tilting objects.
    Tilting,
    /// The tilting graph and its connectivity.
    Graph,
    /// Block dimensions of the endomorphism algebra of one tilting object.
    Endo {
        /// Index of the tilting object, as listed by `tilting`.
        #[arg(long)]
        vertex: usize,
    },
    /// Run the invariant battery.
    Verify {
        /// Dynkin types such as `A2,D4`, each in every orientation.
        #[arg(long, value_delimiter = ',')]
        battery: Vec<String>,
    },
}

enum Failure {
    Usage(String),
    /// Output is still emitted; the process exits with status 1.
    Verification(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => match emit(cli.out.as_deref(), &text) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Err(Failure::Verification(text)) => {
            if let Err(e) = emit(cli.out.as_deref(), &text) {
                eprintln!("error: {e}");
            }
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> std::io::Result<()> {
    match out {
        Some(p) => fs::write(p, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    if cli.format == Format::Dot && !matches!(cli.command, Command::Graph) {
        return Err(Failure::Usage(
            "--format dot is only available for `graph`".into(),
        ));
    }
    if let Command::Verify { battery } = &cli.command {
        return verify(cli, battery);
    }
    let path = cli
        .quiver
        .as_ref()
        .ok_or_else(|| Failure::Usage("--quiver <path> is required".into()))?;
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let mc = ModuleCategory::new(parse_quiver(&text)?)?;
    let m = cli.m.unwrap_or(1);
    match &cli.command {
        Command::Ar => ar(cli.format, &mc),
        Command::Ind => ind(cli.format, &mc, m),
        Command::Hom { x, y } => hom(cli.format, &mc, m, x.as_deref(), y.as_deref()),
        Command::Tilting => tilting(cli.format, &mc, m),
        Command::Graph => graph(cli.format, &mc, m),
        Command::Endo { vertex } => endo(cli.format, &mc, m, *vertex),
        Command::Verify { .. } => unreachable!("handled above"),
    }
}

fn json<T: Serialize>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

#[derive(Serialize)]
struct ArModule {
    id: String,
    dim: Vec<i64>,
    projective_at: Option<usize>,
    injective_at: Option<usize>,
    tau: Option<String>,
    tau_inverse: Option<String>,
}

#[derive(Serialize)]
struct ArReport {
    schema_version: u32,
    quiver: String,
    modules: Vec<ArModule>,
    arrows: Vec<(String, String)>,
}

fn ar(format: Format, mc: &ModuleCategory) -> Result<String, Failure> {
    let ar = mc.ar();
    let modules: Vec<ArModule> = ar
        .modules()
        .iter()
        .map(|m| ArModule {
            id: m.id.to_string(),
            dim: m.dim.0.clone(),
            projective_at: m.projective_at.map(|v| v + 1),
            injective_at: m.injective_at.map(|v| v + 1),
            tau: ar.tau(m.id).map(|t| t.to_string()),
            tau_inverse: ar.tau_inverse(m.id).map(|t| t.to_string()),
        })
        .collect();
    if format == Format::Tsv {
        let cell = |o: &Option<String>| o.clone().unwrap_or_else(|| "-".into());
        let mut out = String::from("id\tdim\tprojective_at\tinjective_at\ttau\ttau_inverse\n");
        for (m, src) in modules.iter().zip(ar.modules()) {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                m.id,
                src.dim,
                cell(&m.projective_at.map(|v| v.to_string())),
                cell(&m.injective_at.map(|v| v.to_string())),
                cell(&m.tau),
                cell(&m.tau_inverse)
            ));
        }
        return Ok(out);
    }
    json(&ArReport {
        schema_version: SCHEMA_VERSION,
        quiver: quiver_label(mc.quiver()),
        modules,
        arrows: ar
            .arrows()
            .iter()
            .map(|a| (a.source.to_string(), a.target.to_string()))
            .collect(),
    })
}

#[derive(Serialize)]
struct Catalog {
    schema_version: u32,
    m: u32,
    objects: Vec<CatalogEntry>,
}

fn ind(format: Format, mc: &ModuleCategory, m: u32) -> Result<String, Failure> {
    let cat = OrbitCategory::new(mc, m)?;
    let objects = cat.catalog_entries();
    if format == Format::Tsv {
        let mut out = String::from("id\tobject\ttier\n");
        for e in &objects {
            out.push_str(&format!("{}\t{}\t{}\n", e.id, e.object, e.tier));
        }
        return Ok(out);
    }
    json(&Catalog {
        schema_version: SCHEMA_VERSION,
        m,
        objects,
    })
}

#[derive(Serialize)]
struct PairReport {
    schema_version: u32,
    m: u32,
    x: OrbitObject,
    y: OrbitObject,
    hom: u32,
    ext: u32,
}

#[derive(Serialize)]
struct Tables {
    schema_version: u32,
    m: u32,
    objects: Vec<CatalogEntry>,
    entries: Vec<TableEntry>,
}

fn hom(
    format: Format,
    mc: &ModuleCategory,
    m: u32,
    x: Option<&str>,
    y: Option<&str>,
) -> Result<String, Failure> {
    let cat = OrbitCategory::new(mc, m)?;
    match (x, y) {
        (Some(x), Some(y)) => {
            let d = cat.derived();
            let x = cat.canonicalize(d.parse_object(x)?)?;
            let y = cat.canonicalize(d.parse_object(y)?)?;
            let (h, e) = (cat.hom_orbit(&x, &y)?, cat.ext1_orbit(&x, &y)?);
            if format == Format::Tsv {
                return Ok(format!("x\ty\thom\text\n{x}\t{y}\t{h}\t{e}\n"));
            }
            json(&PairReport {
                schema_version: SCHEMA_VERSION,
                m,
                x,
                y,
                hom: h,
                ext: e,
            })
        }
        (None, None) if format == Format::Tsv => Ok(mc.table().to_tsv()),
        (None, None) => json(&Tables {
            schema_version: SCHEMA_VERSION,
            m,
            objects: cat.catalog_entries(),
            entries: cat.table_entries(),
        }),
        _ => Err(Failure::Usage(
            "`hom` takes either two objects or none".into(),
        )),
    }
}

#[derive(Serialize)]
struct TiltingReport {
    schema_version: u32,
    m: u32,
    count: usize,
    /// Sorted catalog ids of the summands, one list per object.
    objects: Vec<Vec<usize>>,
    generators: Vec<Vec<OrbitObject>>,
}

fn tilting(format: Format, mc: &ModuleCategory, m: u32) -> Result<String, Failure> {
    let base = OrbitCategory::new(mc, 1)?;
    let cat = OrbitCategory::new(mc, m)?;
    let mut objects = Vec::new();
    let mut generators = Vec::new();
    for t in enumerate_cluster_tilting(&base)? {
        let l = lift(&base, &cat, &t)?;
        let mut ids = l
            .summands()
            .iter()
            .map(|s| cat.id(s))
            .collect::<Result<Vec<_>, _>>()?;
        ids.sort_unstable();
        objects.push(ids);
        generators.push(l.generator().to_vec());
    }
    if format == Format::Tsv {
        let mut out = String::from("index\tgenerator\tmembers\n");
        for (i, (g, ids)) in generators.iter().zip(&objects).enumerate() {
            let g: Vec<String> = g.iter().map(ToString::to_string).collect();
            let ids: Vec<String> = ids.iter().map(ToString::to_string).collect();
            out.push_str(&format!("{i}\t{}\t{}\n", g.join(" "), ids.join(",")));
        }
        return Ok(out);
    }
    json(&TiltingReport {
        schema_version: SCHEMA_VERSION,
        m,
        count: objects.len(),
        objects,
        generators,
    })
}

fn tilting_graph<'a>(
    mc: &'a ModuleCategory,
    m: u32,
) -> Result<(OrbitCategory<'a>, TiltingGraph), Failure> {
    let base = OrbitCategory::new(mc, 1)?;
    let cat = OrbitCategory::new(mc, m)?;
    let ts = enumerate_cluster_tilting(&base)?;
    let g = build_tilting_graph(&base, &cat, &ts)?;
    Ok((cat, g))
}

fn graph(format: Format, mc: &ModuleCategory, m: u32) -> Result<String, Failure> {
    let (cat, g) = tilting_graph(mc, m)?;
    match format {
        Format::Dot => Ok(g.to_dot()),
        Format::Tsv => {
            let mut out = String::from("source\ttarget\n");
            for (a, b) in &g.edges {
                out.push_str(&format!("{a}\t{b}\n"));
            }
            Ok(out)
        }
        Format::Json => json(&g.report(&cat)?),
    }
}

fn endo(format: Format, mc: &ModuleCategory, m: u32, vertex: usize) -> Result<String, Failure> {
    let (cat, g) = tilting_graph(mc, m)?;
    let v = g.vertices.get(vertex).ok_or_else(|| {
        Failure::Usage(format!(
            "vertex {vertex} out of range: there are {} tilting objects",
            g.vertices.len()
        ))
    })?;
    let p = endo_profile(&cat, v)?;
    if format == Format::Tsv {
        let mut out = String::new();
        for row in &p.block_dims {
            let row: Vec<String> = row.iter().map(ToString::to_string).collect();
            out.push_str(&row.join("\t"));
            out.push('\n');
        }
        return Ok(out);
    }
    json(&p)
}

fn parse_class(s: &str) -> Result<DynkinClass, Failure> {
    let bad = || Failure::Usage(format!("unknown Dynkin type `{s}`"));
    let t = s.trim();
    let family = match t.chars().next() {
        Some('A' | 'a') => Family::A,
        Some('D' | 'd') => Family::D,
        Some('E' | 'e') => Family::E,
        _ => return Err(bad()),
    };
    let rank: usize = t[1..].parse().map_err(|_| bad())?;
    DynkinClass::new(family, rank).ok_or_else(bad)
}

fn verify(cli: &Cli, battery: &[String]) -> Result<String, Failure> {
    let quivers: Vec<Quiver> = if !battery.is_empty() {
        let mut qs = Vec::new();
        for name in battery {
            qs.extend(Quiver::standard(parse_class(name)?).all_orientations());
        }
        qs
    } else if let Some(path) = &cli.quiver {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        vec![parse_quiver(&text)?]
    } else {
        default_battery()
    };
    let moduli: Vec<u32> = cli.m.map_or(DEFAULT_MODULI.to_vec(), |m| vec![m]);
    let summary = run_battery(&quivers, &moduli);
    let text = match cli.format {
        Format::Tsv => verify_tsv(&summary),
        _ => json(&summary)?,
    };
    if summary.passed {
        Ok(text)
    } else {
        Err(Failure::Verification(text))
    }
}

fn verify_tsv(s: &Summary) -> String {
    let mut out = String::from("check\tquiver\tm\tstatus\tdetail\n");
    for c in &s.checks {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            c.check,
            c.quiver,
            c.m.map_or("-".into(), |m| m.to_string()),
            if c.passed { "pass" } else { "fail" },
            c.detail.as_deref().unwrap_or("")
        ));
    }
    out
}
