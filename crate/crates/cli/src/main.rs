//! Command-line surface: field configs, expression evaluation, domain
//! reports, Ore gcd/lcm, orbits, convex-function exploration, skew inversion
//! of function tables, and seeded verification suites.
//!
//! Exit codes: 0 success, 2 mathematically-undefined result (evaluation at an
//! excluded point, non-invertible table), 1 operational errors.

mod suites;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use skewring::{
    convex_functions, domain_report, evaluate_at, is_defined_at, lower, orbit, parse_expr, Config,
    ElementMap, FieldRef, FiniteInvariantSet, OrbitFunction, Scalar, SkewPolynomial,
    SkewRationalFunction,
};

#[derive(Parser)]
#[command(
    name = "skewring",
    version,
    about = "Exact arithmetic and evaluation in skew polynomial and skew rational function rings"
)]
struct Cli {
    /// Emit JSON instead of plain text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression at a point of the field
    Eval {
        /// Field configuration file
        #[arg(long)]
        config: PathBuf,
        /// Expression over T, braced element literals, + - * ^ and parens
        #[arg(long)]
        expr: String,
        /// Element literal to evaluate at
        #[arg(long)]
        at: String,
    },
    /// Conjugacy classes where an expression is undefined
    Domain {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        expr: String,
        /// Also decide definedness at this element
        #[arg(long)]
        at: Option<String>,
    },
    /// Greatest common right and left divisors of two polynomials
    Gcd {
        #[arg(long)]
        config: PathBuf,
        /// First polynomial expression
        #[arg(long)]
        p: String,
        /// Second polynomial expression
        #[arg(long)]
        q: String,
    },
    /// Least common left multiple of two polynomials, with cofactors
    Lcm {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
    /// The (σ,δ)-conjugacy orbit of a point, as a JSON array
    Orbit {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        at: String,
    },
    /// Count or list the skew-convex functions on an orbit
    Convex {
        #[arg(long)]
        config: PathBuf,
        /// Orbit representative (element literal)
        #[arg(long)]
        orbit: String,
        /// Print only how many convex functions the orbit carries
        #[arg(long)]
        count: bool,
        /// Print every convex function as a JSON value table
        #[arg(long)]
        list: bool,
    },
    /// Skew inverse of a function table on an orbit
    Invert {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        orbit: String,
        /// JSON file mapping element literals to element literals
        #[arg(long)]
        table: PathBuf,
    },
    /// Run a deterministic verification suite against the configured field
    Verify {
        #[arg(long)]
        config: PathBuf,
        /// nearring | convexring | productformula | metro | domains | orearith
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

const UNDEFINED_MSG: &str = "undefined: point conjugate to a denominator root class";

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
        Err(e) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn load_config(path: &Path, json_flag: bool) -> Result<Config, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let mut cfg = Config::parse(&text).map_err(|e| e.to_string())?;
    if json_flag {
        cfg.set_json(true);
    }
    Ok(cfg)
}

fn parse_function(field: &FieldRef, text: &str) -> Result<SkewRationalFunction, String> {
    let ast = parse_expr(field, text).map_err(|e| e.to_string())?;
    lower(field, &ast).map_err(|e| e.to_string())
}

fn parse_poly(field: &FieldRef, text: &str) -> Result<SkewPolynomial, String> {
    let f = parse_function(field, text)?;
    if !f.is_polynomial() {
        return Err(format!("{text:?} does not reduce to a polynomial"));
    }
    Ok(f.numerator().clone())
}

fn parse_point(field: &FieldRef, text: &str) -> Result<Scalar, String> {
    Scalar::parse(field, text).map_err(|e| e.to_string())
}

fn table_json(set: &FiniteInvariantSet, f: &OrbitFunction) -> serde_json::Value {
    let mut m = serde_json::Map::new();
    for (x, v) in set.points().iter().zip(f.values()) {
        m.insert(x.to_string(), v.to_string().into());
    }
    m.into()
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Eval { config, expr, at } => {
            let cfg = load_config(&config, cli.json)?;
            let f = parse_function(cfg.field(), &expr)?;
            let a = parse_point(cfg.field(), &at)?;
            if !is_defined_at(&f, &a).map_err(|e| e.to_string())? {
                if cfg.json() {
                    println!("{}", serde_json::json!({"defined": false, "value": null}));
                } else {
                    println!("{UNDEFINED_MSG}");
                }
                return Ok(2);
            }
            let v = evaluate_at(&f, &a).map_err(|e| e.to_string())?;
            if cfg.json() {
                println!(
                    "{}",
                    serde_json::json!({"defined": true, "value": v.to_string()})
                );
            } else {
                println!("{v}");
            }
            Ok(0)
        }
        Command::Domain { config, expr, at } => {
            let cfg = load_config(&config, cli.json)?;
            let f = parse_function(cfg.field(), &expr)?;
            let report = domain_report(&f).map_err(|e| e.to_string())?;
            let at_info = match &at {
                Some(lit) => {
                    let a = parse_point(cfg.field(), lit)?;
                    let defined = is_defined_at(&f, &a).map_err(|e| e.to_string())?;
                    let value = if defined {
                        Some(evaluate_at(&f, &a).map_err(|e| e.to_string())?)
                    } else {
                        None
                    };
                    Some((a, defined, value))
                }
                None => None,
            };
            if cfg.json() {
                let mut obj = serde_json::json!({
                    "excluded_classes": report
                        .undefined_classes
                        .iter()
                        .map(|c| c.representative.to_string())
                        .collect::<Vec<_>>(),
                    "complete": report.complete,
                });
                if !report.notes.is_empty() {
                    obj["notes"] = report.notes.clone().into();
                }
                if let Some((_, defined, value)) = &at_info {
                    obj["defined"] = (*defined).into();
                    obj["value"] = match value {
                        Some(v) => v.to_string().into(),
                        None => serde_json::Value::Null,
                    };
                }
                println!("{obj}");
            } else {
                for c in &report.undefined_classes {
                    println!("excluded class: {}", c.representative);
                }
                println!("complete: {}", report.complete);
                for n in &report.notes {
                    println!("note: {n}");
                }
                if let Some((a, defined, value)) = &at_info {
                    if *defined {
                        println!("value at {a}: {}", value.as_ref().expect("defined"));
                    } else {
                        println!("{UNDEFINED_MSG}");
                    }
                }
            }
            Ok(if matches!(at_info, Some((_, false, _))) {
                2
            } else {
                0
            })
        }
        Command::Gcd { config, p, q } => {
            let cfg = load_config(&config, cli.json)?;
            let p = parse_poly(cfg.field(), &p)?;
            let q = parse_poly(cfg.field(), &q)?;
            let gcrd = p.gcrd(&q);
            let gcld = p.gcld(&q);
            if cfg.json() {
                println!(
                    "{}",
                    serde_json::json!({"gcrd": gcrd.to_string(), "gcld": gcld.to_string()})
                );
            } else {
                println!("gcrd: {gcrd}");
                println!("gcld: {gcld}");
            }
            Ok(0)
        }
        Command::Lcm { config, p, q } => {
            let cfg = load_config(&config, cli.json)?;
            let p = parse_poly(cfg.field(), &p)?;
            let q = parse_poly(cfg.field(), &q)?;
            let (l, u, v) = p.llcm_with_cofactors(&q);
            if cfg.json() {
                println!(
                    "{}",
                    serde_json::json!({
                        "llcm": l.to_string(),
                        "u": u.to_string(),
                        "v": v.to_string(),
                    })
                );
            } else {
                println!("llcm: {l}");
                println!("u: {u}");
                println!("v: {v}");
            }
            Ok(0)
        }
        Command::Orbit { config, at } => {
            let cfg = load_config(&config, cli.json)?;
            let a = parse_point(cfg.field(), &at)?;
            let orb = orbit(&a).map_err(|e| e.to_string())?;
            let arr: Vec<String> = orb.iter().map(ToString::to_string).collect();
            println!("{}", serde_json::Value::from(arr));
            Ok(0)
        }
        Command::Convex {
            config,
            orbit,
            count,
            list,
        } => {
            let cfg = load_config(&config, cli.json)?;
            if count == list {
                return Err("pass exactly one of --count or --list".into());
            }
            let a = parse_point(cfg.field(), &orbit)?;
            let set = FiniteInvariantSet::orbit_of(&a).map_err(|e| e.to_string())?;
            let funcs = convex_functions(&set).map_err(|e| e.to_string())?;
            if count {
                if cfg.json() {
                    println!("{}", serde_json::json!({"count": funcs.len()}));
                } else {
                    println!("{}", funcs.len());
                }
            } else {
                let arr: Vec<serde_json::Value> =
                    funcs.iter().map(|f| table_json(&set, f)).collect();
                println!("{}", serde_json::Value::from(arr));
            }
            Ok(0)
        }
        Command::Invert {
            config,
            orbit,
            table,
        } => {
            let cfg = load_config(&config, cli.json)?;
            let a = parse_point(cfg.field(), &orbit)?;
            let set = FiniteInvariantSet::orbit_of(&a).map_err(|e| e.to_string())?;
            let text = fs::read_to_string(&table)
                .map_err(|e| format!("cannot read {}: {e}", table.display()))?;
            let raw: std::collections::BTreeMap<String, String> =
                serde_json::from_str(&text).map_err(|e| format!("bad table: {e}"))?;
            let mut map = ElementMap::new();
            for (k, v) in &raw {
                map.insert(parse_point(cfg.field(), k)?, parse_point(cfg.field(), v)?);
            }
            let f = OrbitFunction::from_map(&set, &map).map_err(|e| e.to_string())?;
            match f.skew_inverse() {
                Some(g) => {
                    println!("{}", table_json(&set, &g));
                    Ok(0)
                }
                None => {
                    if cfg.json() {
                        println!("{}", serde_json::json!({"invertible": false}));
                    } else {
                        println!("not skew invertible");
                    }
                    Ok(2)
                }
            }
        }
        Command::Verify {
            config,
            suite,
            seed,
        } => {
            let cfg = load_config(&config, cli.json)?;
            suites::run(cfg.field(), &suite, seed, cfg.json())
        }
    }
}
