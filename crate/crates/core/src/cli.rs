//! Command-line front end. Every command prints one JSON object
//! `{"elapsed_ms", "payload", "status"}` with sorted keys; the exit code is 0 for `ok` and
//! `unsolvable`, 2 for `invalid_input` and 3 for `cap_exceeded`.

use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::cohomology::{restriction_surjective, restriction_surjective_classes, Cocycle};
use crate::dep::{
    dominate_split, lift_via_fiber, semidirect_complement, solve_weak, solve_weak_prescribed,
    split_over_subgroup, sylow_obstruction_check, validate_dep, wreath_obstruction_dep, Splitting,
};
use crate::error::{Error, Result};
use crate::group::normal::{composition_factors, is_simple};
use crate::group::{
    enumerate_homs, formation_member, set_order_cap, sylow_subgroup, FiniteGroup, FinitePair,
    FormationSpec, GroupHom, HomConstraints, Subgroup,
};
use crate::io::{self, Loader};
use crate::sampler::run_experiment;

#[derive(Parser, Debug)]
#[command(
    name = "projpair",
    version,
    about = "Double embedding problems over finite groups"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Largest group order any construction may build.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Report elapsed_ms as 0 so that output is byte-identical across runs.
    #[arg(long, global = true)]
    pub no_timing: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide weak solvability of a problem file.
    Solve {
        dep: PathBuf,
        /// Return every solution.
        #[arg(long)]
        all: bool,
        /// Require the solution to restrict to this lower solution.
        #[arg(long, value_name = "ETA_FILE")]
        prescribe: Option<PathBuf>,
        /// With --prescribe, search sections of the fiber product instead.
        #[arg(long, requires = "prescribe")]
        via_fiber: bool,
    },
    /// Build a split problem dominating the given one.
    Dominate {
        dep: PathBuf,
        theta: PathBuf,
        eta: PathBuf,
    },
    /// Find M ⊴ L with N = Gm ∩ M and Gm·M = L.
    Split {
        pair: PathBuf,
        /// Generating words of N inside the ambient group, as JSON.
        #[arg(long, value_name = "JSON")]
        n_gens: String,
    },
    /// Find a normal complement of the distinguished subgroup.
    Complement { pair: PathBuf },
    /// Test surjectivity of restriction on 1-cocycles.
    H1 {
        action: PathBuf,
        /// Generating words of the subgroup of the actor, as JSON (default: the whole actor).
        #[arg(long, value_name = "JSON")]
        sub: Option<String>,
        /// Compare cohomology classes instead of cocycles.
        #[arg(long)]
        classes: bool,
    },
    /// Build the wreath obstruction problem for a normal pair and try to lift.
    WreathTest {
        pair: PathBuf,
        #[arg(long)]
        a: String,
        #[arg(long)]
        g: String,
        /// Also write the problem and the prescribed lower solution into this directory.
        #[arg(long, value_name = "DIR")]
        emit: Option<PathBuf>,
    },
    /// Check that no Sylow subgroup has a normal complement.
    SylowTest {
        #[arg(long)]
        group: String,
        #[arg(long)]
        p: usize,
        /// Nonabelian simple quotient (default: the group itself, which must be simple).
        #[arg(long)]
        simple: Option<String>,
    },
    /// Run a sampling experiment file.
    Sample { experiment: PathBuf },
    /// Formation membership: `all`, `solvable`, `p:<prime>` or `factors:<G>,<G>,...`.
    Formation {
        #[arg(long)]
        spec: String,
        #[arg(long = "group", required = true)]
        groups: Vec<String>,
    },
    /// Parse and validate any input file.
    Validate { file: PathBuf },
}

/// Status, payload and timing of one command.
#[derive(Clone, Debug, PartialEq)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub elapsed_ms: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Unsolvable,
    InvalidInput,
    CapExceeded,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Unsolvable => "unsolvable",
            Status::InvalidInput => "invalid_input",
            Status::CapExceeded => "cap_exceeded",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok | Status::Unsolvable => 0,
            Status::InvalidInput => 2,
            Status::CapExceeded => 3,
        }
    }
}

impl CommandResult {
    pub fn to_json(&self) -> Value {
        json!({
            "status": self.status.as_str(),
            "payload": self.payload,
            "elapsed_ms": self.elapsed_ms,
        })
    }
}

fn error_result(e: &Error) -> (Status, Value) {
    let status = match e {
        Error::OrderCap { .. } | Error::EnumerationLimit { .. } => Status::CapExceeded,
        _ => Status::InvalidInput,
    };
    (status, json!({ "error": e.to_string() }))
}

/// Parses arguments, runs the command, writes the result and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = execute(&cli);
    let text = format!(
        "{}\n",
        serde_json::to_string_pretty(&result.to_json()).expect("json")
    );
    match &cli.global.output {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                eprintln!("cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{text}"),
    }
    result.status.exit_code()
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> CommandResult {
    if let Some(n) = cli.global.threads {
        // fails only when a pool already exists, which is fine
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    if let Some(cap) = cli.global.cap {
        set_order_cap(cap);
    }
    let start = Instant::now();
    let (status, payload) = match dispatch(&cli.command) {
        Ok(r) => r,
        Err(e) => error_result(&e),
    };
    let elapsed_ms = if cli.global.no_timing {
        0
    } else {
        start.elapsed().as_millis() as u64
    };
    CommandResult {
        status,
        payload,
        elapsed_ms,
    }
}

fn dispatch(cmd: &Command) -> Result<(Status, Value)> {
    let loader = Loader::default();
    match cmd {
        Command::Solve {
            dep,
            all,
            prescribe,
            via_fiber,
        } => cmd_solve(&loader, dep, *all, prescribe.as_ref(), *via_fiber),
        Command::Dominate { dep, theta, eta } => cmd_dominate(&loader, dep, theta, eta),
        Command::Split { pair, n_gens } => {
            let (doc, l) = loader.read(pair)?;
            let pair = l.pair(&doc, "")?;
            let n = io::subgroup(pair.ambient(), &parse_json(n_gens, "--n-gens")?, "--n-gens")?;
            Ok(splitting_result(&pair, split_over_subgroup(&pair, &n)?))
        }
        Command::Complement { pair } => {
            let (doc, l) = loader.read(pair)?;
            let pair = l.pair(&doc, "")?;
            Ok(splitting_result(&pair, semidirect_complement(&pair)?))
        }
        Command::H1 {
            action,
            sub,
            classes,
        } => cmd_h1(&loader, action, sub.as_deref(), *classes),
        Command::WreathTest { pair, a, g, emit } => cmd_wreath(&loader, pair, a, g, emit.as_ref()),
        Command::SylowTest { group, p, simple } => cmd_sylow(&loader, group, *p, simple.as_deref()),
        Command::Sample { experiment } => {
            let (doc, l) = loader.read(experiment)?;
            let spec = l.experiment(&doc)?;
            let r = run_experiment(&spec)?;
            let to_f64 = |q: &num_rational::BigRational| {
                use num_traits::ToPrimitive;
                q.to_f64().unwrap_or(f64::NAN)
            };
            Ok((
                Status::Ok,
                json!({
                    "exact_fraction": r.exact_fraction.as_ref().map(|q| q.to_string()),
                    "exact_fraction_value": r.exact_fraction.as_ref().map(to_f64),
                    "estimate": r.estimate,
                    "std_error": r.std_error,
                    "lower_bound": r.lower_bound.to_string(),
                    "lower_bound_value": to_f64(&r.lower_bound),
                    "independence_verified": r.independence_verified,
                    "samples_in_c": r.samples_in_c,
                    "hits": r.hits,
                    "coset_size": r.coset_size.to_string(),
                    "model_order": r.model_order,
                    "seed": r.seed,
                    "trials": spec.trials,
                }),
            ))
        }
        Command::Formation { spec, groups } => cmd_formation(&loader, spec, groups),
        Command::Validate { file } => cmd_validate(&loader, file),
    }
}

fn parse_json(s: &str, what: &str) -> Result<Value> {
    serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("{what}: {e}")))
}

fn cmd_solve(
    loader: &Loader,
    path: &PathBuf,
    all: bool,
    prescribe: Option<&PathBuf>,
    via_fiber: bool,
) -> Result<(Status, Value)> {
    let (doc, l) = loader.read(path)?;
    let dep = l.dep(&doc)?;
    let sols = match prescribe {
        None => solve_weak(&dep, all)?,
        Some(eta_path) => {
            let (eta_doc, _) = loader.read(eta_path)?;
            let seeds = io::distinguished_seeds(&l, &doc)?;
            let eta = io::hom_on_subgroup(
                dep.distinguished(),
                &seeds,
                dep.g(),
                io::unwrap_key(&eta_doc, "eta"),
                "eta",
            )?;
            let found = if via_fiber {
                lift_via_fiber(&dep, &eta)?
            } else {
                solve_weak_prescribed(&dep, &eta)?
            };
            found.into_iter().collect()
        }
    };
    if sols.is_empty() {
        return Ok((Status::Unsolvable, json!("unsolvable")));
    }
    let list = sols
        .iter()
        .map(|s| io::solution_json(&dep, s))
        .collect::<Result<Vec<_>>>()?;
    Ok((Status::Ok, Value::Array(list)))
}

fn cmd_dominate(
    loader: &Loader,
    dep: &PathBuf,
    theta: &PathBuf,
    eta: &PathBuf,
) -> Result<(Status, Value)> {
    let (doc, l) = loader.read(dep)?;
    let dep = l.dep(&doc)?;
    let (theta_doc, _) = loader.read(theta)?;
    let theta = io::hom(
        dep.ambient(),
        dep.h(),
        io::unwrap_key(&theta_doc, "theta"),
        "theta",
    )?;
    let (eta_doc, _) = loader.read(eta)?;
    let seeds = io::distinguished_seeds(&l, &doc)?;
    let eta = io::hom_on_subgroup(
        dep.distinguished(),
        &seeds,
        dep.g(),
        io::unwrap_key(&eta_doc, "eta"),
        "eta",
    )?;
    let w = dominate_split(&dep, &theta, &eta)?;
    let hat = &w.dominating;
    Ok((
        Status::Ok,
        json!({
            "dominating": io::dep_json(hat, Value::Null),
            "alpha_hat_prime": io::subgroup_hom_json(hat.a(), hat.g(), &w.alpha_hat_prime),
            "beta_hat_prime": io::hom_json(&w.beta_hat_prime),
            "pi2": io::hom_json(&w.pi2),
            "pi4": io::hom_json(&w.pi4),
            "verified": true,
        }),
    ))
}

fn splitting_result(pair: &FinitePair, s: Option<Splitting>) -> (Status, Value) {
    match s {
        None => (Status::Unsolvable, json!("none")),
        Some(s) => (
            Status::Ok,
            json!({
                "m": io::subgroup_json(&s.m),
                "m_order": s.m.order(),
                "intersection_order": s.m.intersection(pair.distinguished()).order(),
            }),
        ),
    }
}

fn cocycle_json(c: &Cocycle, sub: Option<&Subgroup>) -> Value {
    let space = c.action().space();
    let rows: Vec<Value> = c
        .values()
        .iter()
        .enumerate()
        .map(|(q, &x)| {
            let q_word = match sub {
                Some(s) => io::word_json(s.parent(), s.global(q)),
                None => io::word_json(c.action().actor(), q),
            };
            json!([q_word, io::word_json(space, x)])
        })
        .collect();
    Value::Array(rows)
}

fn cmd_h1(
    loader: &Loader,
    path: &PathBuf,
    sub: Option<&str>,
    classes: bool,
) -> Result<(Status, Value)> {
    let (doc, l) = loader.read(path)?;
    let action = l.action(&doc)?;
    let sub = match sub {
        Some(s) => io::subgroup(action.actor(), &parse_json(s, "--sub")?, "--sub")?,
        None => Subgroup::whole(action.actor()),
    };
    let report = if classes {
        restriction_surjective_classes(&action, &sub)?
    } else {
        restriction_surjective(&action, &sub)?
    };
    let extensions: Vec<Value> = report
        .extensions
        .iter()
        .map(|e| e.as_ref().map_or(Value::Null, |c| cocycle_json(c, None)))
        .collect();
    Ok((
        Status::Ok,
        json!({
            "surjective": report.surjective,
            "level": if classes { "classes" } else { "cocycles" },
            "actor_cocycles": report.actor_cocycles,
            "subgroup_cocycles": report.subgroup_cocycles,
            "witness": report.witness.as_ref().map(|c| cocycle_json(c, Some(&sub))),
            "extensions": extensions,
        }),
    ))
}

fn first_epi(
    source: &std::sync::Arc<FiniteGroup>,
    target: &std::sync::Arc<FiniteGroup>,
    constraints: &HomConstraints,
) -> Result<Option<GroupHom>> {
    Ok(enumerate_homs(source, target, constraints, true)?.next())
}

fn cmd_wreath(
    loader: &Loader,
    path: &PathBuf,
    a: &str,
    g: &str,
    emit: Option<&PathBuf>,
) -> Result<(Status, Value)> {
    let (doc, l) = loader.read(path)?;
    let pair = l.pair(&doc, "")?;
    let a = loader.group_arg(a)?;
    let g = loader.group_arg(g)?;
    let gm = pair.distinguished();
    let eta = first_epi(&gm.to_group(), &a, &HomConstraints::new())?
        .ok_or_else(|| Error::InvalidInput(format!("no epimorphism from Gm onto {}", a.name())))?;
    let vanish = HomConstraints::new().maps_into(gm, &Subgroup::trivial(&g));
    let nu = first_epi(pair.ambient(), &g, &vanish)?.ok_or_else(|| {
        Error::InvalidInput(format!("no epimorphism L -> {} killing Gm", g.name()))
    })?;
    let (dep, prescribed) = wreath_obstruction_dep(&pair, &eta, &nu)?;
    let direct = solve_weak_prescribed(&dep, &prescribed)?;
    let fiber = lift_via_fiber(&dep, &prescribed)?;
    if let Some(dir) = emit {
        let write = |name: &str, v: &Value| -> Result<()> {
            fs::write(dir.join(name), serde_json::to_string_pretty(v)? + "\n")?;
            Ok(())
        };
        write("dep.json", &io::dep_json(&dep, Value::Null))?;
        let eta_doc = json!({
            "format_version": io::FORMAT_VERSION,
            "eta": io::subgroup_hom_json(gm, dep.g(), &prescribed),
        });
        write("eta.json", &eta_doc)?;
    }
    let sol = |s: &Option<crate::dep::WeakSolution>| -> Result<Value> {
        s.as_ref()
            .map_or(Ok(Value::Null), |s| io::solution_json(&dep, s))
    };
    Ok((
        Status::Ok,
        json!({
            "wreath_order": dep.h().order(),
            "obstructed": direct.is_none(),
            "methods_agree": direct.is_some() == fiber.is_some(),
            "prescribed_solution": sol(&direct)?,
            "via_fiber_solution": sol(&fiber)?,
        }),
    ))
}

fn cmd_sylow(
    loader: &Loader,
    group: &str,
    p: usize,
    simple: Option<&str>,
) -> Result<(Status, Value)> {
    let q = loader.group_arg(group)?;
    let psi = match simple {
        None => {
            if !is_simple(&q) {
                return Err(Error::InvalidInput(format!(
                    "{} is not simple; pass --simple",
                    q.name()
                )));
            }
            GroupHom::identity(&q)
        }
        Some(s) => {
            let s = loader.group_arg(s)?;
            first_epi(&q, &s, &HomConstraints::new())?
                .ok_or_else(|| Error::InvalidInput(format!("no epimorphism onto {}", s.name())))?
        }
    };
    let obstructed = sylow_obstruction_check(&q, p, &psi)?;
    let sylow = sylow_subgroup(&q, p)?;
    Ok((
        Status::Ok,
        json!({
            "group_order": q.order(),
            "p": p,
            "sylow_order": sylow.order(),
            "no_normal_complement": obstructed,
        }),
    ))
}

fn parse_formation(spec: &str, loader: &Loader) -> Result<FormationSpec> {
    match spec.split_once(':') {
        None if spec == "all" => Ok(FormationSpec::All),
        None if spec == "solvable" => Ok(FormationSpec::Solvable),
        Some(("p", p)) => {
            let p: usize = p
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad prime {p:?}")))?;
            FormationSpec::p_group(p).map_err(|e| Error::InvalidInput(e.to_string()))
        }
        Some(("factors", list)) => Ok(FormationSpec::CompositionFactorsIn(
            list.split(',')
                .map(|g| loader.group_arg(g.trim()))
                .collect::<Result<_>>()?,
        )),
        _ => Err(Error::InvalidInput(format!("unknown formation {spec:?}"))),
    }
}

fn cmd_formation(loader: &Loader, spec: &str, groups: &[String]) -> Result<(Status, Value)> {
    let f = parse_formation(spec, loader)?;
    let rows = groups
        .iter()
        .map(|name| {
            let g = loader.group_arg(name)?;
            let factors: Vec<usize> = composition_factors(&g).iter().map(|c| c.order()).collect();
            Ok(json!({
                "group": name,
                "order": g.order(),
                "member": formation_member(&g, &f),
                "composition_factor_orders": factors,
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((Status::Ok, Value::Array(rows)))
}

fn cmd_validate(loader: &Loader, path: &PathBuf) -> Result<(Status, Value)> {
    let (doc, l) = loader.read(path)?;
    let has = |k: &str| doc.get(k).is_some();
    if has("beta") && has("nu") {
        let dep = l.dep(&doc)?;
        let diags: Vec<Value> = validate_dep(&dep)
            .iter()
            .map(|d| json!({ "arrow": d.arrow, "witness": d.witness, "message": d.message }))
            .collect();
        let status = if diags.is_empty() {
            Status::Ok
        } else {
            Status::InvalidInput
        };
        return Ok((status, json!({ "kind": "dep", "diagnostics": diags })));
    }
    let summary = if has("actor") {
        let a = l.action(&doc)?;
        json!({ "kind": "action", "actor_order": a.actor().order(), "space_order": a.space().order() })
    } else if has("trials") {
        let s = l.experiment(&doc)?;
        s.validate()?;
        json!({ "kind": "experiment", "e": s.e, "n": s.n })
    } else if has("ambient") || has("pair") {
        let p = l.pair(&doc, "")?;
        json!({
            "kind": "pair",
            "ambient_order": p.ambient().order(),
            "distinguished_order": p.distinguished().order(),
            "normal": p.distinguished().is_normal(),
        })
    } else if has("kind") {
        let g = l.group(&doc, "")?;
        json!({ "kind": "group", "order": g.order(), "abelian": g.is_abelian() })
    } else {
        return Err(Error::InvalidInput(format!(
            "{}: unrecognized document",
            path.display()
        )));
    };
    Ok((Status::Ok, summary))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> CommandResult {
        let mut full = vec!["projpair", "--no-timing"];
        full.extend_from_slice(args);
        execute(&Cli::try_parse_from(full).unwrap())
    }

    #[test]
    fn sylow_in_a5() {
        let r = run(&["sylow-test", "--group", "A5", "--p", "2"]);
        assert_eq!(r.status, Status::Ok);
        assert_eq!(r.payload["no_normal_complement"], json!(true));
        assert_eq!(
            run(&["sylow-test", "--group", "S4", "--p", "2"]).status,
            Status::InvalidInput
        );
    }

    #[test]
    fn formation_membership() {
        let r = run(&[
            "formation",
            "--spec",
            "solvable",
            "--group",
            "S4",
            "--group",
            "A5",
        ]);
        assert_eq!(r.payload[0]["member"], json!(true));
        assert_eq!(r.payload[1]["member"], json!(false));
        assert_eq!(
            run(&["formation", "--spec", "p:4", "--group", "C2"]).status,
            Status::InvalidInput
        );
    }

    #[test]
    fn missing_file_is_invalid_input() {
        let r = run(&["solve", "/nonexistent/dep.json"]);
        assert_eq!(r.status.exit_code(), 2);
        assert_eq!(r.elapsed_ms, 0);
    }
}
