//! The `floer` command line: file ingestion, the checks of every module and
//! text or JSON reports.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails,
//! 2 on unreadable or malformed input.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::arnold::{collapse, tau, verify_bound_chain, ArnoldError, ArnoldInput};
use crate::equipoly::{check_dimension_formula, AbelianRep, RepPair, Subgroup, DIMENSION_TABLE};
use crate::fixtures;
use crate::flowcat::{
    build_complex, chain_map, check_chain_map, check_homotopy, check_unitriangular, BimoduleCounts, FlowCategoryData,
    FlowcatError, HomotopyFixture,
};
use crate::novikov::DEFAULT_PRECISION;
use crate::strata::{check_outer_product, delta_map, enumerate_word_poset, subset_poset, Poset, StratifiedSet};

pub const SCHEMA: &str = "1";

#[derive(Parser, Debug)]
#[command(
    name = "floer",
    version,
    about = "Novikov-ring algebra, flow-category complexes and the integral Arnold bound"
)]
struct Cli {
    /// Working precision K: series are tracked modulo T^K.
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION, value_parser = clap::value_parser!(i64).range(1..))]
    precision: i64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Regrade inputs mod this even number (0 keeps the Z-grading).
    #[arg(long = "two-n", global = true)]
    two_n: Option<i64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a flow category, bimodule or homotopy document.
    Check { input: String },
    /// Homology of the complex of a flow category over Λ.
    Homology { input: String },
    /// Invariant-factor table and Arnold bound of integral homology data.
    Arnold { input: String },
    /// Run the rank inequalities from a Floer complex to the Arnold bound.
    Verify { complex: String, reference: String },
    /// Equivariant polynomial maps and the local dimension of Z.
    #[command(subcommand)]
    Equipoly(EquipolyCommand),
    /// Word posets, energy partitions and outer collars.
    #[command(subcommand)]
    Strata(StrataCommand),
}

#[derive(Subcommand, Debug)]
enum EquipolyCommand {
    /// Dimension of Poly_d^G(V, W), and the rank test when --stabilizer is set.
    Dim(DimArgs),
    /// Rank test over the documented configuration table.
    Table {
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
}

#[derive(Args, Debug)]
struct DimArgs {
    /// Cyclic orders, e.g. `2,2`.
    #[arg(long)]
    group: String,
    /// One weight per coordinate, `;`-separated, e.g. `1,0;0,1`.
    #[arg(long = "v-weights", allow_hyphen_values = true)]
    v_weights: String,
    #[arg(long = "w-weights", allow_hyphen_values = true)]
    w_weights: String,
    #[arg(long)]
    degree: u32,
    /// Generators of H, `trivial` or `G`.
    #[arg(long)]
    stabilizer: Option<String>,
    #[arg(long, default_value_t = 50)]
    trials: usize,
}

#[derive(Subcommand, Debug)]
enum StrataCommand {
    /// Words of A_pq in a poset, with depths and optional energy partitions.
    Words {
        input: String,
        from: String,
        to: String,
        /// Integer action per element, in element order.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        actions: Option<Vec<i64>>,
    },
    /// Check the outer-collaring identities on cube models.
    Collar {
        /// Dimensions of the two cube factors.
        #[arg(long, default_value_t = 2)]
        left: usize,
        #[arg(long, default_value_t = 1)]
        right: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Collar width r as a rational, e.g. `1` or `3/2`.
        #[arg(long, default_value = "1")]
        width: String,
    },
}

struct Outcome {
    ok: bool,
    text: String,
    json: Value,
}

struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

/// A path on disk, or else the name of a bundled fixture.
fn read_input(name: &str) -> Result<String, InputError> {
    match std::fs::read_to_string(name) {
        Ok(text) => Ok(text),
        Err(e) => fixtures::fixture(name)
            .map(str::to_string)
            .ok_or_else(|| InputError(format!("{name}: {e}, and no bundled fixture has this name"))),
    }
}

fn regrade(fc: FlowCategoryData, two_n: Option<i64>) -> Result<FlowCategoryData, InputError> {
    match two_n {
        None => Ok(fc),
        Some(t) => fc
            .regraded(t)
            .ok_or_else(|| InputError(format!("cannot regrade a complex graded mod {} to mod {t}", fc.two_n))),
    }
}

fn lines<T: std::fmt::Display>(items: &[T]) -> String {
    items.iter().map(|v| format!("  {v}\n")).collect()
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, S>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    let (name, result) = dispatch(&cli);
    match result {
        Ok(out) => {
            let code = if out.ok { 0 } else { 1 };
            let rendered = match cli.format {
                Format::Text => out.text,
                Format::Json => {
                    let mut doc = json!({"schema": SCHEMA, "command": name, "ok": out.ok});
                    if let (Value::Object(d), Value::Object(extra)) = (&mut doc, out.json) {
                        d.extend(extra);
                    }
                    serde_json::to_string_pretty(&doc).expect("json") + "\n"
                }
            };
            (code, rendered)
        }
        Err(InputError(msg)) => {
            let rendered = match cli.format {
                Format::Text => format!("error: {msg}\n"),
                Format::Json => {
                    serde_json::to_string_pretty(&json!({"schema": SCHEMA, "command": name, "error": msg}))
                        .expect("json")
                        + "\n"
                }
            };
            (2, rendered)
        }
    }
}

fn dispatch(cli: &Cli) -> (&'static str, Result<Outcome, InputError>) {
    match &cli.command {
        Command::Check { input } => ("check", cmd_check(input, cli)),
        Command::Homology { input } => ("homology", cmd_homology(input, cli)),
        Command::Arnold { input } => ("arnold", cmd_arnold(input, cli)),
        Command::Verify { complex, reference } => ("verify", cmd_verify(complex, reference, cli)),
        Command::Equipoly(EquipolyCommand::Dim(a)) => ("equipoly", cmd_equipoly_dim(a, cli)),
        Command::Equipoly(EquipolyCommand::Table { trials }) => ("equipoly", cmd_equipoly_table(*trials, cli)),
        Command::Strata(StrataCommand::Words { input, from, to, actions }) => {
            ("strata", cmd_strata_words(input, from, to, actions.as_deref()))
        }
        Command::Strata(StrataCommand::Collar { left, right, samples, width }) => {
            ("strata", cmd_strata_collar(*left, *right, *samples, width, cli))
        }
    }
}

fn cmd_check(input: &str, cli: &Cli) -> Result<Outcome, InputError> {
    let text = read_input(input)?;
    let doc: Value = serde_json::from_str(&text)?;
    if doc.get("morse").is_some() {
        return check_homotopy_document(&text);
    }
    if doc.get("source").is_some() {
        let b: BimoduleCounts = serde_json::from_value(doc)?;
        return check_bimodule(&b);
    }
    let fc = regrade(FlowCategoryData::from_json(&text)?, cli.two_n)?;
    let violations = fc.validate();
    if !violations.is_empty() {
        return Ok(Outcome {
            ok: false,
            text: format!("{} violation(s):\n{}", violations.len(), lines(&violations)),
            json: json!({"kind": "flow_category", "violations": violations}),
        });
    }
    let c = build_complex(&fc).map_err(|e| InputError(e.to_string()))?;
    let broken = c.check_d_squared();
    let mut text = format!("{} generators in {} classes\n", c.layout.rank(), c.classes().count());
    if broken.is_empty() {
        text.push_str("d^2 = 0\n");
    } else {
        text.push_str("d^2 != 0:\n");
        for e in &broken {
            writeln!(
                text,
                "  class {}: entry ({}, {}) from {} to {}, lowest exponent {}",
                e.class,
                e.row_id,
                e.col_id,
                e.col_id,
                e.row_id,
                e.first_exponent.map_or("-".into(), |k| k.to_string())
            )
            .expect("string write");
        }
    }
    Ok(Outcome {
        ok: broken.is_empty(),
        text,
        json: json!({"kind": "flow_category", "generators": c.layout.rank(), "d_squared": broken}),
    })
}

fn check_bimodule(b: &BimoduleCounts) -> Result<Outcome, InputError> {
    let violations = b.validate();
    if !violations.is_empty() {
        return Ok(Outcome {
            ok: false,
            text: format!("{} violation(s):\n{}", violations.len(), lines(&violations)),
            json: json!({"kind": "bimodule", "violations": violations}),
        });
    }
    let src = build_complex(&b.source).map_err(|e| InputError(e.to_string()))?;
    let tgt = build_complex(&b.target).map_err(|e| InputError(e.to_string()))?;
    let psi = chain_map(b).map_err(|e| InputError(e.to_string()))?;
    let bad = if b.degree == 0 {
        check_chain_map(&psi, &src, &tgt).map_err(|e| InputError(e.to_string()))?
    } else {
        Vec::new()
    };
    let unitriangular = b.source == b.target && check_unitriangular(&psi);
    let mut text = format!("bimodule of degree {} with {} incidences\n", b.degree, b.incidences.len());
    if b.degree == 0 {
        text.push_str(if bad.is_empty() { "chain map\n" } else { "not a chain map:\n" });
        text.push_str(&lines(
            &bad.iter()
                .map(|e| {
                    format!("class {}: ({}, {}) lowest exponent {:?}", e.class, e.row_id, e.col_id, e.first_exponent)
                })
                .collect::<Vec<_>>(),
        ));
    }
    if unitriangular {
        text.push_str("unitriangular\n");
    }
    Ok(Outcome {
        ok: bad.is_empty(),
        text,
        json: json!({"kind": "bimodule", "degree": b.degree, "chain_map_violations": bad, "unitriangular": unitriangular}),
    })
}

fn go<T>(r: Result<T, FlowcatError>) -> Result<T, InputError> {
    r.map_err(|e| InputError(e.to_string()))
}

fn check_homotopy_document(text: &str) -> Result<Outcome, InputError> {
    let h = HomotopyFixture::from_json(text)?;
    let morse = go(build_complex(&h.morse))?;
    let floer = go(build_complex(&h.floer))?;
    let pss = go(chain_map(&h.pss.between(&h.morse, &h.floer)))?;
    let ssp = go(chain_map(&h.ssp.between(&h.floer, &h.morse)))?;
    let pearl = go(chain_map(&h.pearl.between(&h.morse, &h.morse)))?;
    let hom = go(chain_map(&h.homotopy.between(&h.morse, &h.morse)))?;
    let checks = [
        ("morse d^2 = 0", morse.check_d_squared().is_empty()),
        ("floer d^2 = 0", floer.check_d_squared().is_empty()),
        ("pss is a chain map", go(check_chain_map(&pss, &morse, &floer))?.is_empty()),
        ("ssp is a chain map", go(check_chain_map(&ssp, &floer, &morse))?.is_empty()),
        ("pearl is a chain map", go(check_chain_map(&pearl, &morse, &morse))?.is_empty()),
        ("pearl is unitriangular", check_unitriangular(&pearl)),
        ("pearl - ssp∘pss = dh - hd", go(check_homotopy(&pearl, &ssp, &pss, &hom, &morse))?.holds()),
    ];
    let ok = checks.iter().all(|(_, b)| *b);
    let text = checks.iter().map(|(name, b)| format!("{}: {name}\n", if *b { "pass" } else { "FAIL" })).collect();
    Ok(Outcome {
        ok,
        text,
        json: json!({
            "kind": "homotopy",
            "checks": checks.iter().map(|(n, b)| json!({"name": n, "holds": b})).collect::<Vec<_>>(),
        }),
    })
}

fn cmd_homology(input: &str, cli: &Cli) -> Result<Outcome, InputError> {
    let fc = regrade(FlowCategoryData::from_json(&read_input(input)?)?, cli.two_n)?;
    let c = build_complex(&fc).map_err(|e| InputError(e.to_string()))?;
    match c.homology(cli.precision) {
        Ok(h) => {
            let text = h.iter().map(|(i, s)| format!("H{i}: {s}\n")).collect::<String>()
                + &format!("precision: {}\n", cli.precision);
            let json = json!({
                "precision": cli.precision,
                "two_n": c.two_n(),
                "classes": h.iter().map(|(i, s)| (i.to_string(), s.to_json())).collect::<serde_json::Map<_, _>>(),
            });
            Ok(Outcome { ok: true, text, json })
        }
        Err(FlowcatError::DSquaredFailed(v)) => Ok(Outcome {
            ok: false,
            text: format!("d^2 != 0 at {} entries; homology undefined\n", v.len()),
            json: json!({"d_squared": v}),
        }),
        Err(e) => Err(InputError(e.to_string())),
    }
}

fn minimal_chern(input: &ArnoldInput, cli: &Cli) -> Result<i64, InputError> {
    match cli.two_n {
        None => Ok(input.minimal_chern),
        Some(t) if t >= 0 && t % 2 == 0 => Ok(t / 2),
        Some(t) => Err(InputError(format!("--two-n must be a nonnegative even number, got {t}"))),
    }
}

fn cmd_arnold(input: &str, cli: &Cli) -> Result<Outcome, InputError> {
    let doc = ArnoldInput::from_json(&read_input(input)?)?;
    let n = minimal_chern(&doc, cli)?;
    let groups = doc.groups()?;
    let classes = collapse(&groups, n);
    let bound = groups.betti_sum() + 2 * classes.iter().map(tau).sum::<usize>() as u64;
    let mut text = format!("N = {n}\nclass  rank  tau  structure\n");
    for c in &classes {
        writeln!(text, "{:>5}  {:>4}  {:>3}  {}", c.residue, c.structure.rank, tau(c), c.structure).expect("write");
    }
    writeln!(text, "betti sum: {}\nbound: {bound}", groups.betti_sum()).expect("write");
    let json = json!({
        "minimal_chern": n,
        "classes": classes.iter().map(|c| json!({
            "residue": c.residue, "tau": tau(c), "structure": c.structure.to_json(),
        })).collect::<Vec<_>>(),
        "betti_sum": groups.betti_sum(),
        "bound": bound,
    });
    Ok(Outcome { ok: true, text, json })
}

fn cmd_verify(complex: &str, reference: &str, cli: &Cli) -> Result<Outcome, InputError> {
    let doc = ArnoldInput::from_json(&read_input(reference)?)?;
    let n = minimal_chern(&doc, cli)?;
    let groups = doc.groups()?;
    let fc = FlowCategoryData::from_json(&read_input(complex)?)?;
    let fc = if fc.two_n == 2 * n { fc } else { regrade(fc, Some(2 * n))? };
    let c = build_complex(&fc).map_err(|e| InputError(e.to_string()))?;
    match verify_bound_chain(&c, &groups, n, cli.precision) {
        Ok(report) => {
            let mut text = String::new();
            for q in &report.inequalities {
                writeln!(text, "{q}  (slack {})", q.slack()).expect("write");
            }
            writeln!(
                text,
                "rank CF = {}, bound = {}, total slack {}",
                report.total_rank,
                report.bound,
                report.total_slack()
            )
            .expect("write");
            let json = json!({
                "bound": report.bound,
                "total_rank": report.total_rank,
                "total_slack": report.total_slack(),
                "inequalities": report.inequalities.iter().map(|q| {
                    let mut v = serde_json::to_value(q).expect("json");
                    v["slack"] = json!(q.slack());
                    v
                }).collect::<Vec<_>>(),
            });
            Ok(Outcome { ok: true, text, json })
        }
        Err(ArnoldError::ChainBroken(q)) => {
            Ok(Outcome { ok: false, text: format!("chain broken at {q}\n"), json: json!({"broken": q}) })
        }
        Err(ArnoldError::Flowcat(FlowcatError::DSquaredFailed(v))) => {
            Ok(Outcome { ok: false, text: format!("d^2 != 0 at {} entries\n", v.len()), json: json!({"d_squared": v}) })
        }
        Err(e) => Err(InputError(e.to_string())),
    }
}

fn cmd_equipoly_dim(a: &DimArgs, cli: &Cli) -> Result<Outcome, InputError> {
    let pair = RepPair::new(AbelianRep::parse(&a.group, &a.v_weights)?, AbelianRep::parse(&a.group, &a.w_weights)?)?;
    let dim = pair.basis(a.degree).len();
    let mut text = format!("dim Poly_{}^G(V, W) = {dim}\n", a.degree);
    let mut json = json!({"group": pair.group(), "degree": a.degree, "dim_poly": dim});
    let Some(h) = &a.stabilizer else {
        return Ok(Outcome { ok: true, text, json });
    };
    let h = Subgroup::parse(pair.group(), h)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let r = check_dimension_formula(&pair, a.degree, &h, a.trials, &mut rng)?;
    writeln!(
        text,
        "|H| = {}, dim V^H = {}, dim W^H = {}\nsurjective in {}/{} trials\nexpected dimension {}\nminimal surjective degree: {}",
        h.order(),
        r.dim_v_fixed,
        r.dim_w_fixed,
        r.surjective_trials,
        r.trials,
        r.expected_dimension,
        r.minimal_surjective_degree.map_or("none".into(), |d| d.to_string())
    )
    .expect("write");
    json["report"] = serde_json::to_value(&r).expect("json");
    Ok(Outcome { ok: r.holds(), text, json })
}

fn cmd_equipoly_table(trials: usize, cli: &Cli) -> Result<Outcome, InputError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut ok = true;
    for case in DIMENSION_TABLE {
        let r = case.run(trials, &mut rng)?;
        ok &= r.holds();
        writeln!(
            text,
            "{}: {} {}/{} surjective, dimension {}",
            case.name,
            if r.holds() { "pass" } else { "FAIL" },
            r.surjective_trials,
            r.trials,
            r.expected_dimension
        )
        .expect("write");
        rows.push(json!({"name": case.name, "report": r}));
    }
    Ok(Outcome { ok, text, json: json!({"cases": rows}) })
}

fn cmd_strata_words(input: &str, from: &str, to: &str, actions: Option<&[i64]>) -> Result<Outcome, InputError> {
    let poset = Poset::from_json(&read_input(input)?)?;
    let index = |name: &str| poset.index(name).ok_or_else(|| InputError(format!("unknown element {name:?}")));
    let (p, q) = (index(from)?, index(to)?);
    let w = enumerate_word_poset(&poset, p, q)?;
    let deltas = match actions {
        Some(a) if a.len() != poset.len() => {
            return Err(InputError(format!("{} actions for {} elements", a.len(), poset.len())))
        }
        Some(a) => Some(delta_map(&w, a)?),
        None => None,
    };
    let mut text = format!("{} words\n", w.words.len());
    let mut rows = Vec::new();
    for k in 0..w.words.len() {
        let name = w.poset.name(k);
        let depth = w.poset.depth(k);
        match &deltas {
            Some(d) => writeln!(text, "  {name}  depth {depth}  δ = {}", d[k]),
            None => writeln!(text, "  {name}  depth {depth}"),
        }
        .expect("write");
        let mut row = json!({"word": name, "depth": depth});
        if let Some(d) = &deltas {
            row["delta"] = json!(d[k].0);
        }
        rows.push(row);
    }
    Ok(Outcome { ok: true, text, json: json!({"words": rows}) })
}

fn cmd_strata_collar(left: usize, right: usize, samples: usize, width: &str, cli: &Cli) -> Result<Outcome, InputError> {
    if left > 4 || right > 4 {
        return Err(InputError("cube dimensions above 4 are not supported".into()));
    }
    let width: BigRational = width.parse().map_err(|_| InputError(format!("bad width {width:?}")))?;
    if width < BigRational::from_integer(0.into()) {
        return Err(InputError("width must be nonnegative".into()));
    }
    let x1 = StratifiedSet::of_poset(&subset_poset(left));
    let x2 = StratifiedSet::of_poset(&subset_poset(right));
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let r = check_outer_product(&x1, &x2, &width, samples, &mut rng)?;
    let text = format!(
        "boundary identity: {} points\nproduct identity: {} points\n{}",
        r.boundary_points,
        r.product_points,
        if r.holds() { "all identities hold\n".to_string() } else { lines(&r.failures) }
    );
    Ok(Outcome {
        ok: r.holds(),
        text,
        json: json!({
            "width": width.to_string(),
            "boundary_points": r.boundary_points,
            "product_points": r.product_points,
            "failures": r.failures,
        }),
    })
}
