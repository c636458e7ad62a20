use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use modtop::analysis::{Caps, ModuleAnalysis};
use modtop::schema::{build_module, build_ring, parse_document, Document, ModuleSpec};
use modtop::spectrum::RingSpectrum;
use modtop::topology::{members, PointSet, Variant};
use modtop::verify::{self, module_checks, Catalog};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

/// Fully prime spectra of finite modules and their Zariski-like topologies.
#[derive(Parser, Debug)]
#[command(name = "modtop", version)]
struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    #[arg(long, default_value_t = modtop::ring::DEFAULT_RING_CAP, global = true)]
    cap_ring: usize,
    #[arg(long, default_value_t = modtop::module::DEFAULT_MODULE_CAP, global = true)]
    cap_module: usize,
    #[arg(long, default_value_t = modtop::hom::DEFAULT_END_CAP, global = true)]
    cap_end: usize,
    /// In text mode, also list passing entries.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structure summary of a ring or module.
    Inspect { file: PathBuf },
    /// Fully prime spectrum with per-point flags.
    Spectrum { file: PathBuf },
    /// Topology on the spectrum.
    Topology {
        file: PathBuf,
        #[arg(long, default_value = "full")]
        variant: Variant,
        /// Write the specialization order as Graphviz DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Run the theorem checks over a catalog.
    Verify {
        #[arg(long, env = "MODTOP_CATALOG")]
        catalog: Option<PathBuf>,
        /// Comma-separated check ids.
        #[arg(long)]
        filter: Option<String>,
    },
    /// Print the built-in catalog.
    Catalog,
}

fn label(elements: &[u32]) -> String {
    let inner: Vec<String> = elements.iter().map(u32::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

fn load(path: &Path) -> Result<Document> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_document(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_module(path: &Path, caps: &Caps) -> Result<ModuleAnalysis> {
    let spec = match load(path)? {
        Document::Module(m) => m,
        Document::Ring(r) => ModuleSpec::regular(r),
    };
    let module = build_module(&spec, caps).with_context(|| format!("building {}", path.display()))?;
    Ok(ModuleAnalysis::new(module, *caps)?)
}

fn sets(a: &ModuleAnalysis, ids: &[usize]) -> Vec<Vec<u32>> {
    ids.iter().map(|&i| a.elements_of(i)).collect()
}

fn point_sets(a: &ModuleAnalysis, s: PointSet) -> Vec<Vec<u32>> {
    members(s).map(|p| a.elements_of(a.points()[p])).collect()
}

fn flag_words(c: &modtop::classify::Classification) -> Vec<&'static str> {
    [
        (c.duo, "duo"),
        (c.spcd, "S-PCD"),
        (c.semisimple, "semisimple"),
        (c.local, "local"),
        (c.hollow, "hollow"),
        (c.uniserial, "uniserial"),
        (c.multiplication, "multiplication"),
        (c.comultiplication, "comultiplication"),
        (c.distributive, "distributive"),
        (c.self_projective, "self-projective"),
        (c.coatomic, "coatomic"),
        (c.fi_coatomic, "f.i.-coatomic"),
    ]
    .into_iter()
    .filter_map(|(b, w)| b.then_some(w))
    .collect()
}

fn inspect_module(a: &ModuleAnalysis) -> (Value, String) {
    let lat = a.lattice();
    let r = a.radicals();
    let v = json!({
        "kind": "module",
        "ring_order": a.module().ring().order(),
        "order": a.module().order(),
        "add_cyclic": a.module().add_cyclic(),
        "submodules": lat.len(),
        "fully_invariant": a.fi_ids().len(),
        "lattice": sets(a, &lat.ids().collect::<Vec<_>>()),
        "fully_invariant_submodules": sets(a, a.fi_ids()),
        "classification": a.classification(),
        "max": sets(a, &r.max_list),
        "rad": a.elements_of(r.rad),
        "soc": a.elements_of(r.soc),
        "end_order": a.end().group_order.to_string(),
    });
    let mut words = vec![format!("{} submodules", lat.len())];
    words.extend(flag_words(a.classification()).into_iter().map(String::from));
    let text = format!(
        "module of order {} over a ring of order {}\n{}\n{} fully invariant\nMax: {}\nRad: {}\nSoc: {}\n|End|: {}\n",
        a.module().order(),
        a.module().ring().order(),
        words.join(", "),
        a.fi_ids().len(),
        r.max_list.iter().map(|&m| label(&a.elements_of(m))).collect::<Vec<_>>().join(" "),
        label(&a.elements_of(r.rad)),
        label(&a.elements_of(r.soc)),
        a.end().group_order,
    );
    (v, text)
}

fn inspect_ring(rs: &RingSpectrum) -> (Value, String) {
    let ideals: Vec<Vec<u32>> = rs.ideals.iter().map(|i| i.members()).collect();
    let max: Vec<Vec<u32>> = rs.maximal.iter().map(|&i| ideals[i].clone()).collect();
    let v = json!({
        "kind": "ring",
        "order": rs.ring.order(),
        "add_cyclic": rs.ring.add_cyclic(),
        "one": rs.ring.one(),
        "left_ideals": rs.regular.lattice().len(),
        "ideals": ideals,
        "spec": rs.spec_sets(),
        "max": max,
        "predicates": rs.predicates,
    });
    let p = &rs.predicates;
    let words: Vec<&str> = [
        (p.commutative, "commutative"),
        (p.left_duo, "left duo"),
        (p.right_duo, "right duo"),
        (p.semisimple, "semisimple"),
        (p.von_neumann_regular, "von Neumann regular"),
        (p.pi_regular, "pi-regular"),
        (p.zero_dimensional, "zero-dimensional"),
        (p.prime_ring, "prime"),
    ]
    .into_iter()
    .filter_map(|(b, w)| b.then_some(w))
    .collect();
    let text = format!(
        "ring of order {}\n{} left ideals, {} two-sided ideals\n{}\nSpec: {}\n",
        rs.ring.order(),
        rs.regular.lattice().len(),
        ideals.len(),
        words.join(", "),
        rs.spec_sets().iter().map(|s| label(s)).collect::<Vec<_>>().join(" "),
    );
    (v, text)
}

fn cmd_inspect(file: &Path, caps: &Caps) -> Result<(Value, String)> {
    match load(file)? {
        Document::Module(spec) => {
            let m = build_module(&spec, caps).with_context(|| format!("building {}", file.display()))?;
            Ok(inspect_module(&ModuleAnalysis::new(m, *caps)?))
        }
        Document::Ring(spec) => {
            let r = build_ring(&spec, caps).with_context(|| format!("building {}", file.display()))?;
            Ok(inspect_ring(&RingSpectrum::new(Arc::new(r), *caps)?))
        }
    }
}

fn cmd_spectrum(file: &Path, caps: &Caps) -> Result<(Value, String)> {
    let a = load_module(file, caps)?;
    let s = a.spec_fp()?;
    let mut text = format!("{} points\n", s.points.len());
    for p in &s.points {
        let f = &p.flags;
        let words: Vec<&str> = [
            (f.fully_prime, "fully prime"),
            (f.prime, "prime"),
            (f.maximal, "maximal"),
            (f.maximal_fi, "maximal f.i."),
            (f.minimal_in_spec, "minimal"),
            (f.quotient_fully_prime, "quotient fully prime"),
        ]
        .into_iter()
        .filter_map(|(b, w)| b.then_some(w))
        .collect();
        text.push_str(&format!("  {}  {}\n", label(&p.elements), words.join(", ")));
    }
    text.push_str(&format!("rad_fp = {}\n", label(&s.rad_fp)));
    if !s.prime_not_fully_prime.is_empty() {
        let l: Vec<String> = s.prime_not_fully_prime.iter().map(|&k| label(&a.elements_of(k))).collect();
        text.push_str(&format!("prime but not fully prime: {}\n", l.join(" ")));
    }
    let mut v = serde_json::to_value(&s)?;
    v["prime_not_fully_prime"] = json!(sets(&a, &s.prime_not_fully_prime));
    Ok((v, text))
}

fn cmd_topology(file: &Path, variant: Variant, caps: &Caps) -> Result<(Value, String, String)> {
    let a = load_module(file, caps)?;
    let t = a.topology(variant);
    let labels: Vec<String> = a.points().iter().map(|&p| label(&a.elements_of(p))).collect();
    let closed: Vec<Vec<Vec<u32>>> = t.closed_sets.iter().map(|&c| point_sets(&a, c)).collect();
    let mut v = json!({
        "variant": variant,
        "points": sets(&a, a.points()),
        "closed_sets": closed,
        "is_topology": t.is_topology,
    });
    let mut text = format!("{} points, {} closed sets, variant {}\n", t.len(), t.closed_sets.len(), v["variant"].as_str().unwrap_or(""));
    if !t.is_topology {
        let (x, y) = t.witness.expect("non-topology carries a witness");
        v["witness"] = json!({"closed_a": point_sets(&a, x), "closed_b": point_sets(&a, y)});
        text.push_str(&format!(
            "not a topology: the union of {:?} and {:?} is not closed\n",
            point_sets(&a, x),
            point_sets(&a, y)
        ));
        return Ok((v, text, String::new()));
    }
    let mut props = t.properties()?;
    if variant == Variant::Full {
        props.basis_check = Some(module_checks::basis_check(&a).is_none());
    }
    let order = t.specialization()?;
    let maximal = &a.radicals().max_list;
    let boxed: Vec<bool> = a.points().iter().map(|p| maximal.contains(p)).collect();
    let dot = order.to_dot(&labels, &boxed);
    v["properties"] = serde_json::to_value(props)?;
    v["irreducible_closed_sets"] = json!(t.irreducible_closed_sets().iter().map(|s| point_sets(&a, s.set)).collect::<Vec<_>>());
    v["components"] = json!(t.components().iter().map(|&c| point_sets(&a, c)).collect::<Vec<_>>());
    v["specialization"] = json!(order.hasse.iter().map(|&(p, q)| (&labels[p], &labels[q])).collect::<Vec<_>>());
    if props.empty_space {
        v["notes"] = json!(["empty space: irreducibility and ultraconnectedness are undefined (EmptySpace)"]);
        text.push_str("empty space: irreducibility and ultraconnectedness are undefined (EmptySpace)\n");
    }
    let words: Vec<&str> = [
        (props.t0, "T0"),
        (props.t1, "T1"),
        (props.t2, "T2"),
        (props.discrete, "discrete"),
        (props.connected, "connected"),
        (props.irreducible == Some(true), "irreducible"),
        (props.ultraconnected == Some(true), "ultraconnected"),
        (props.sober, "sober"),
        (props.noetherian, "Noetherian"),
        (props.compact, "compact"),
    ]
    .into_iter()
    .filter_map(|(b, w)| b.then_some(w))
    .collect();
    text.push_str(&words.join(", "));
    text.push('\n');
    Ok((v, text, dot))
}

/// Writes to stdout; a closed pipe is not an error.
fn out(text: &str) -> Result<()> {
    let mut stdout = std::io::stdout().lock();
    match stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn emit(format: Format, value: &Value, text: &str) -> Result<()> {
    match format {
        Format::Json => out(&format!("{}\n", serde_json::to_string_pretty(value)?))?,
        Format::Text => out(text)?,
        Format::Dot => bail!("--format dot is only available for the topology command"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8> {
    let caps = Caps {
        ring: cli.cap_ring,
        module: cli.cap_module,
        end: cli.cap_end,
    };
    if caps.ring == 0 || caps.module == 0 || caps.end == 0 {
        bail!("caps must be positive");
    }
    match &cli.command {
        Command::Inspect { file } => {
            let (v, t) = cmd_inspect(file, &caps)?;
            emit(cli.format, &v, &t)?;
        }
        Command::Spectrum { file } => {
            let (v, t) = cmd_spectrum(file, &caps)?;
            emit(cli.format, &v, &t)?;
        }
        Command::Topology { file, variant, dot } => {
            let (v, t, graph) = cmd_topology(file, *variant, &caps)?;
            if let Some(path) = dot {
                std::fs::write(path, &graph).with_context(|| format!("writing {}", path.display()))?;
            }
            match cli.format {
                Format::Dot => out(&graph)?,
                f => emit(f, &v, &t)?,
            }
        }
        Command::Verify { catalog, filter } => {
            let catalog = match catalog {
                Some(path) => {
                    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                    Catalog::parse(&text).with_context(|| format!("parsing {}", path.display()))?
                }
                None => verify::default_catalog(),
            };
            let report = verify::run(&catalog, caps, filter.as_deref())?;
            match cli.format {
                Format::Json => out(&format!("{}\n", serde_json::to_string_pretty(&report)?))?,
                Format::Text => out(&report.to_text(cli.verbose))?,
                Format::Dot => bail!("--format dot is only available for the topology command"),
            }
            return Ok(report.exit_code() as u8);
        }
        Command::Catalog => {
            let c = verify::default_catalog();
            match cli.format {
                Format::Text => out(&c.entries.iter().map(|e| format!("{}\n", e.name)).collect::<String>())?,
                _ => out(&format!("{}\n", serde_json::to_string_pretty(&c)?))?,
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
