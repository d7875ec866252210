use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use satake::diagram::standard_diagram;
use satake::emit::{boundary_dot, hasse_dot, render_satake, set_label};
use satake::families::{family_b, family_f, family_ftilde, HasseDiagram};
use satake::gen::random_equal_rank;
use satake::report::cycle_notation;
use satake::{
    classify, parse, ClassifyError, ComponentType, DynkinDiagram, IndexDocument, Report, RootSet,
    Severity, TypeFamily,
};

#[derive(Parser)]
#[command(
    name = "satake",
    version,
    about = "Geometric rationality of Satake compactifications"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate an index file
    Validate { file: PathBuf },
    /// Full analysis: fibers, δ at each level, κ/ω/ζ, boundary, routes
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Include the F̃, F and B families of every component
        #[arg(long)]
        families: bool,
    },
    /// Casselman's criterion only
    Rationality {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Every route with its verdict and the route of record
    Classify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// The families F̃ and F of a simple type
    Families {
        #[arg(long = "type", value_name = "T")]
        ty: String,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        dot: bool,
    },
    /// Boundary components of the compactification
    Boundary {
        file: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// Check every bundled example against its expected verdict
    Corpus {
        #[arg(long)]
        json: bool,
        /// Also cross-check the theorem routes on generated equal-rank inputs
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 100, requires = "seed")]
        samples: usize,
    },
}

enum Failure {
    Parse(String),
    Invalid(String),
    Usage(String),
    CrossCheck(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Invalid(_) => 3,
            Failure::Usage(_) => 4,
            Failure::CrossCheck(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m)
            | Failure::Invalid(m)
            | Failure::Usage(m)
            | Failure::CrossCheck(m) => m,
        }
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::Index(e) => Failure::Invalid(e.to_string()),
            e @ ClassifyError::CrossCheckFailure { .. } => Failure::CrossCheck(e.to_string()),
        }
    }
}

fn load(path: &Path) -> Result<IndexDocument, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| {
        let msg = format!("{}:{e}", path.display());
        if e.is_syntax() {
            Failure::Parse(msg)
        } else {
            Failure::Invalid(msg)
        }
    })
}

fn load_valid(path: &Path) -> Result<IndexDocument, Failure> {
    let doc = load(path)?;
    let errors: Vec<String> = doc
        .index
        .validate()
        .into_iter()
        .filter(|d| d.severity == Severity::Error)
        .map(|d| d.to_string())
        .collect();
    if errors.is_empty() {
        Ok(doc)
    } else {
        Err(Failure::Invalid(format!(
            "{}: {}",
            path.display(),
            errors.join("; ")
        )))
    }
}

fn report(doc: &IndexDocument, families: bool) -> Result<Report, Failure> {
    Ok(classify(
        &doc.name,
        &doc.index,
        doc.delta,
        doc.delta_mu,
        families,
    )?)
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn mark(b: bool) -> &'static str {
    if b {
        "✓"
    } else {
        "✗"
    }
}

fn names(d: &DynkinDiagram, s: RootSet) -> String {
    format!("{{{}}}", d.set_names(s).join(", "))
}

fn list(d: &DynkinDiagram, sets: &[RootSet]) -> String {
    let parts: Vec<String> = sets.iter().map(|&s| names(d, s)).collect();
    parts.join(" ")
}

fn opt(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "true",
        Some(false) => "false",
        None => "-",
    }
}

fn rationality_line(r: &Report) -> String {
    let c = &r.casselman;
    let mut out = format!(
        "geometrically rational: {} (Casselman: cond1 {} cond2 {})\n",
        r.rational(),
        mark(c.cond1),
        mark(c.cond2)
    );
    if let Some(w) = &c.witness {
        let d = &r.index.diagram;
        writeln!(
            out,
            "witness: condition ({}) fails under {}, image {}",
            w.condition,
            cycle_notation(d, &w.element),
            names(d, w.image)
        )
        .unwrap();
    }
    out
}

fn routes_table(r: &Report) -> String {
    let mut out = String::new();
    for v in &r.verdicts {
        writeln!(
            out,
            "  {:<22} applicable={:<5} rational={:<5} cross_check={}",
            v.route.to_string(),
            v.applicable(),
            opt(v.geometrically_rational),
            opt(v.cross_check)
        )
        .unwrap();
    }
    out
}

fn families_text(d: &DynkinDiagram, r: &Report) -> String {
    let mut out = String::new();
    for s in d.component_shapes() {
        let ft = family_ftilde(d, s.nodes);
        let f = family_f(d, s.nodes);
        let b = family_b(&r.index, r.delta, s.nodes);
        writeln!(out, "  component {} {}", s.ty, names(d, s.nodes)).unwrap();
        writeln!(out, "    F̃: {}", list(d, &ft.members)).unwrap();
        writeln!(out, "    F:  {}", list(d, &f.members)).unwrap();
        writeln!(out, "    B:  {}", list(d, &b.members)).unwrap();
    }
    out
}

fn analyze_text(r: &Report) -> String {
    let d = &r.index.diagram;
    let closure = r
        .index
        .galois_closure()
        .expect("closure was computed once already");
    let mut out = String::new();
    writeln!(out, "index {}", r.name).unwrap();
    out.push_str(&render_satake(&r.index, &closure, r.delta));
    writeln!(out, "components:").unwrap();
    for s in d.component_shapes() {
        writeln!(
            out,
            "  {} {} ℝ-rank {}",
            s.ty,
            names(d, s.nodes),
            r.index.rrank_of_component(s.nodes)
        )
        .unwrap();
    }
    writeln!(out, "ℝ-rank {}, ℚ-rank {}", r.r_fibers.len(), r.q_rank()).unwrap();
    writeln!(out, "δ: {}", names(d, r.delta)).unwrap();
    writeln!(out, "ℝδ: {}", list(d, &r.r_delta)).unwrap();
    writeln!(out, "ℚδ: {}", list(d, &r.q_delta)).unwrap();
    let c = &r.casselman;
    writeln!(
        out,
        "κ₀: {}  ω₀: {}  ζ₀: {}",
        names(d, c.kappa0),
        names(d, c.omega0),
        names(d, c.zeta0)
    )
    .unwrap();
    writeln!(
        out,
        "equal rank: group {}, compactification {}",
        r.equal_rank_group, r.equal_rank_compactification
    )
    .unwrap();
    if !r.exceptional.is_empty() {
        writeln!(out, "exceptional factors: {}", list(d, &r.exceptional)).unwrap();
    }
    writeln!(out, "boundary components: {}", r.boundary.components.len()).unwrap();
    writeln!(out, "routes:").unwrap();
    out.push_str(&routes_table(r));
    writeln!(out, "route of record: {}", r.route()).unwrap();
    out.push_str(&rationality_line(r));
    if r.include_families {
        writeln!(out, "families:").unwrap();
        out.push_str(&families_text(d, r));
    }
    for diag in &r.diagnostics {
        writeln!(out, "{diag}").unwrap();
    }
    out
}

fn boundary_text(r: &Report) -> String {
    let d = &r.index.diagram;
    let mut out = String::new();
    for (i, c) in r.boundary.components.iter().enumerate() {
        let theta: Vec<RootSet> = c.theta.iter().map(|k| r.r_fibers[k]).collect();
        writeln!(
            out,
            "[{i}] θ = {}  hermitian {}  centralizer {}  normalizer {}",
            if theta.is_empty() {
                "∅".to_string()
            } else {
                list(d, &theta)
            },
            set_label(d, c.hermitian_c),
            set_label(d, c.centralizer_c),
            set_label(d, c.normalizer_type)
        )
        .unwrap();
    }
    for &(i, j) in &r.boundary.covers {
        writeln!(out, "[{i}] < [{j}]").unwrap();
    }
    out
}

fn hasse_text(d: &DynkinDiagram, title: &str, h: &HasseDiagram) -> String {
    let mut out = format!("{title}:\n");
    for &s in &h.nodes {
        writeln!(out, "  {}", set_label(d, s)).unwrap();
    }
    for (a, b) in h.cover_sets() {
        writeln!(out, "  {} < {}", set_label(d, a), set_label(d, b)).unwrap();
    }
    out
}

fn families(ty: &str, rank: usize, dot: bool) -> Result<String, Failure> {
    let family = TypeFamily::parse(ty, Some(rank))
        .ok_or_else(|| Failure::Usage(format!("unknown type `{ty}`")))?;
    let ct = ComponentType::canonical(family, rank)
        .ok_or_else(|| Failure::Usage(format!("no simple type {ty} of rank {rank}")))?;
    let prefix = ct
        .to_string()
        .chars()
        .next()
        .unwrap()
        .to_ascii_lowercase()
        .to_string();
    let d = standard_diagram(ct, &prefix);
    let ft = family_ftilde(&d, d.nodes());
    let f = family_f(&d, d.nodes());
    if dot {
        let hollow: Vec<RootSet> = ft
            .members
            .iter()
            .copied()
            .filter(|&s| !f.contains(s))
            .collect();
        return Ok(hasse_dot(&ct.to_string(), &d, &ft.hasse(), &hollow));
    }
    let mut out = format!("type {ct}\n");
    out.push_str(&hasse_text(&d, "F̃", &ft.hasse()));
    out.push_str(&hasse_text(&d, "F", &f.hasse()));
    Ok(out)
}

fn corpus(json_out: bool, seed: Option<u64>, samples: usize) -> Result<String, Failure> {
    let docs = satake::corpus::corpus();
    let mut rows = Vec::new();
    let mut matched = 0;
    let mut out = String::new();
    for doc in &docs {
        let r = report(doc, false)?;
        let expect = doc.expect.as_ref();
        let ok = expect.is_some_and(|e| {
            e.rational == r.rational()
                && e.route.as_ref().is_none_or(|x| *x == r.route().to_string())
        });
        if ok {
            matched += 1;
        }
        writeln!(
            out,
            "{:<12} rational={:<5} route={:<22} {}",
            doc.name,
            r.rational(),
            r.route().to_string(),
            if ok { "ok" } else { "MISMATCH" }
        )
        .unwrap();
        rows.push(json!({
            "name": doc.name,
            "rational": r.rational(),
            "route": r.route().to_string(),
            "expected": expect.map(|e| json!({"rational": e.rational, "route": e.route})),
            "match": ok,
        }));
    }
    writeln!(out, "{matched}/{} entries match", docs.len()).unwrap();
    let mut generated = None;
    if let Some(seed) = seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut applicable = 0usize;
        for k in 0..samples {
            let (index, delta) = random_equal_rank(&mut rng, 8);
            let r = classify(&format!("generated-{k}"), &index, delta, None, false)?;
            applicable += r
                .verdicts
                .iter()
                .filter(|v| v.applicable() && v.cross_check.is_some())
                .count();
        }
        writeln!(
            out,
            "seed {seed}: {samples} generated inputs, {applicable} theorem-route verdicts, all agree with Casselman"
        )
        .unwrap();
        generated = Some(json!({"seed": seed, "samples": samples, "route_verdicts": applicable}));
    }
    if matched != docs.len() {
        let msg = format!(
            "{matched}/{} corpus entries match their expectation",
            docs.len()
        );
        if json_out {
            print!(
                "{}",
                to_json(&json!({"entries": rows, "matched": matched, "total": docs.len()}))
            );
        } else {
            print!("{out}");
        }
        return Err(Failure::CrossCheck(msg));
    }
    if json_out {
        let mut v = json!({"entries": rows, "matched": matched, "total": docs.len()});
        if let Some(g) = generated {
            v["generated"] = g;
        }
        return Ok(to_json(&v));
    }
    Ok(out)
}

fn run(command: Command) -> Result<String, Failure> {
    match command {
        Command::Validate { file } => {
            let doc = load_valid(&file)?;
            let mut out = format!("{}: valid\n", doc.name);
            for d in doc.index.validate() {
                writeln!(out, "{d}").unwrap();
            }
            Ok(out)
        }
        Command::Analyze {
            file,
            json,
            families,
        } => {
            let r = report(&load_valid(&file)?, families)?;
            Ok(if json {
                to_json(&r.to_json())
            } else {
                analyze_text(&r)
            })
        }
        Command::Rationality { file, json } => {
            let r = report(&load_valid(&file)?, false)?;
            if json {
                let full = r.to_json();
                return Ok(to_json(&json!({
                    "name": full.name,
                    "kappa0": full.kappa0,
                    "omega0": full.omega0,
                    "zeta0": full.zeta0,
                    "casselman": full.casselman,
                })));
            }
            Ok(rationality_line(&r))
        }
        Command::Classify { file, json } => {
            let r = report(&load_valid(&file)?, false)?;
            if json {
                let full = r.to_json();
                return Ok(to_json(&json!({
                    "name": full.name,
                    "verdict": full.verdict,
                    "routes": full.routes,
                    "equal_rank": full.equal_rank,
                    "exceptional": full.exceptional,
                })));
            }
            let mut out = format!("index {}\n", r.name);
            out.push_str(&routes_table(&r));
            writeln!(out, "route of record: {}", r.route()).unwrap();
            out.push_str(&rationality_line(&r));
            Ok(out)
        }
        Command::Families { ty, rank, dot } => families(&ty, rank, dot),
        Command::Boundary { file, dot } => {
            let r = report(&load_valid(&file)?, false)?;
            Ok(if dot {
                boundary_dot(&r.name, &r.index.diagram, &r.boundary)
            } else {
                boundary_text(&r)
            })
        }
        Command::Corpus {
            json,
            seed,
            samples,
        } => corpus(json, seed, samples),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 4,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
