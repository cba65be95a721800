use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use genuslab::catalog::{build, load_variety, CATALOG_KEYS};
use genuslab::cohom::Variety;
use genuslab::genus::{
    functional_equation_check, genus, orbifold_elliptic_genus, required_profile, specialize,
    Convention, GenusContext, GenusResult, Law, Specialization, TorsionJson, TorsionTable,
};
use genuslab::jacobi::membership;
use genuslab::{Error, Result};

#[derive(Parser)]
#[command(name = "genuslab", version, about = "Exact elliptic genera and their identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a genus and print its q,y-expansion.
    Compute(Common),
    /// Run functional-equation and Jacobi membership checks.
    Check {
        #[command(flatten)]
        common: Common,
        /// m1, m3, m4, lattice:K or membership; repeatable. Defaults to all but lattice.
        #[arg(long = "check")]
        checks: Vec<String>,
    },
    /// Evaluate a classical specialization: q0, euler, todd, signature or chiy.
    Specialize {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "q0")]
        kind: String,
    },
    /// Compare an orbifold genus with the genus of its crepant resolution.
    Mckay {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "k3-quartic")]
        target: String,
    },
    /// Compare the genus of a pair with the genus of a K-equivalent variety.
    Kequiv {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "p2")]
        target: String,
    },
    /// List the built-in varieties.
    Catalog,
}

#[derive(Args)]
struct Common {
    /// Catalog key or path to a variety JSON file.
    #[arg(long)]
    variety: Option<String>,
    #[arg(long, conflicts_with = "variety")]
    file: Option<PathBuf>,
    /// Truncation in eighths of a q-order.
    #[arg(long, default_value_t = 24)]
    qmax: i64,
    /// Pullback class to cup with; "none" for the ordinary genus.
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long, default_value = "eq2")]
    convention: String,
    /// Discrete torsion table (JSON).
    #[arg(long)]
    torsion: Option<PathBuf>,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
}

struct Outcome {
    text: String,
    json: serde_json::Value,
    passed: bool,
}

impl Common {
    fn variety(&self, default: &str) -> Result<Variety> {
        if let Some(f) = &self.file {
            return load_variety(f);
        }
        let key = self.variety.as_deref().unwrap_or(default);
        if CATALOG_KEYS.contains(&key) {
            build(key)
        } else if std::path::Path::new(key).exists() {
            load_variety(key)
        } else {
            Err(Error::Validation(format!(
                "{key:?} is neither a catalog key nor a file"
            )))
        }
    }

    fn alpha(&self) -> Option<&str> {
        self.alpha.as_deref().filter(|a| *a != "none")
    }

    fn convention(&self) -> Result<Convention> {
        self.convention.parse()
    }

    fn torsion(&self) -> Result<Option<TorsionTable>> {
        match &self.torsion {
            None => Ok(None),
            Some(p) => {
                let j: TorsionJson = serde_json::from_str(&std::fs::read_to_string(p)?)?;
                TorsionTable::from_json(&j).map(Some)
            }
        }
    }

    fn context(&self, xs: &[&Variety], torsion: Option<&TorsionTable>) -> Result<GenusContext> {
        if self.qmax < 0 {
            return Err(Error::Validation("qmax must be nonnegative".into()));
        }
        let extra: Vec<_> = torsion.map(|t| t.roots().cloned().collect()).unwrap_or_default();
        let profile = xs
            .iter()
            .map(|x| required_profile(x, &extra))
            .reduce(|a, b| a.join(&b))
            .expect("at least one variety");
        if (self.qmax * profile.nq as i64) % 8 != 0 {
            return Err(Error::Validation("qmax does not fit the exponent profile".into()));
        }
        let degree = xs.iter().map(|x| x.dimension).max().unwrap_or(0) as usize;
        Ok(GenusContext::new(profile, degree, self.qmax * profile.nq as i64 / 8))
    }
}

fn compute_genus(
    ctx: &GenusContext,
    x: &Variety,
    alpha: Option<&str>,
    torsion: Option<&TorsionTable>,
    conv: Convention,
) -> Result<GenusResult> {
    let mut r = if x.orbifold.is_some() {
        orbifold_elliptic_genus(ctx, x, alpha, torsion, conv)?
    } else {
        if torsion.is_some() {
            return Err(Error::Validation(format!(
                "{} has no sectors to twist",
                x.name
            )));
        }
        genus(ctx, x, alpha, conv)?
    };
    r.label = Some(x.name.clone());
    Ok(r)
}

fn header(out: &mut String, x: &Variety, r: &GenusResult) {
    let p = r.series.profile();
    let _ = writeln!(out, "variety: {}", x.name);
    let _ = writeln!(out, "convention: {}", r.convention);
    let _ = writeln!(out, "weight: {}", r.weight);
    let _ = writeln!(out, "index: {}", r.index);
    let _ = writeln!(out, "truncation: q^({})", p.q_exp(r.truncation()));
}

fn cmd_compute(c: &Common) -> Result<Outcome> {
    let x = c.variety("p2")?;
    let torsion = c.torsion()?;
    let ctx = c.context(&[&x], torsion.as_ref())?;
    let r = compute_genus(&ctx, &x, c.alpha(), torsion.as_ref(), c.convention()?)?;
    let mut text = String::new();
    header(&mut text, &x, &r);
    text.push_str(&r.series.canonical().coefficient_table());
    Ok(Outcome {
        text,
        json: serde_json::to_value(r.to_json())?,
        passed: true,
    })
}

fn standard(c: &Common, default: &str) -> Result<(Variety, GenusResult)> {
    let x = c.variety(default)?;
    let torsion = c.torsion()?;
    let ctx = c.context(&[&x], torsion.as_ref())?;
    let r = compute_genus(&ctx, &x, c.alpha(), torsion.as_ref(), c.convention()?)?;
    let r = r.to_standard(&ctx)?;
    Ok((x, r))
}

fn cmd_check(c: &Common, checks: &[String]) -> Result<Outcome> {
    let (x, r) = standard(c, "k3-quartic")?;
    let checks: Vec<String> = if checks.is_empty() {
        ["m1", "m3", "m4", "membership"].map(String::from).to_vec()
    } else {
        checks
            .iter()
            .flat_map(|s| s.split(','))
            .map(|s| s.trim().to_string())
            .collect()
    };
    let mut text = String::new();
    let _ = writeln!(text, "variety: {}", x.name);
    let mut reports = Vec::new();
    let mut passed = true;
    for name in &checks {
        if name == "membership" {
            let m = membership(&r)?;
            let _ = write!(text, "membership: {}", if m.success { "pass" } else { "FAIL" });
            if m.success {
                let coords: Vec<String> =
                    m.coordinates.iter().map(|(k, v)| format!("{v}·[{k}]")).collect();
                let _ = writeln!(text, " ({})", if coords.is_empty() { "0".into() } else { coords.join(" + ") });
            } else {
                let _ = writeln!(text, " first unexplained {}", m.residual.clone().unwrap_or_default());
            }
            passed &= m.success;
            reports.push(serde_json::json!({"check": "membership", "report": m}));
        } else {
            let law: Law = name.parse()?;
            let rep = functional_equation_check(&r, law)?;
            let _ = write!(text, "{law}: {}", if rep.passed { "pass" } else { "FAIL" });
            match &rep.discrepancy {
                Some(d) => {
                    let _ = writeln!(text, " {d}");
                }
                None => {
                    let _ = writeln!(text, " ({} coefficients)", rep.compared);
                }
            }
            passed &= rep.passed;
            reports.push(serde_json::json!({"check": law.to_string(), "report": rep}));
        }
    }
    Ok(Outcome {
        text,
        json: serde_json::json!({"variety": x.name, "passed": passed, "checks": reports}),
        passed,
    })
}

fn cmd_specialize(c: &Common, kind: &str) -> Result<Outcome> {
    let (x, r) = standard(c, "p2")?;
    let kind_v: Specialization = kind.parse()?;
    let v = specialize(&r, kind_v)?;
    Ok(Outcome {
        text: format!("{} {kind}: {v}\n", x.name),
        json: serde_json::json!({"variety": x.name, "kind": kind, "value": v.to_string()}),
        passed: true,
    })
}

fn compare(
    c: &Common,
    default: &str,
    target: &str,
    what: &str,
    todd: bool,
) -> Result<Outcome> {
    let x = c.variety(default)?;
    let y = if CATALOG_KEYS.contains(&target) {
        build(target)?
    } else {
        load_variety(target)?
    };
    let torsion = c.torsion()?;
    let ctx = c.context(&[&x, &y], torsion.as_ref())?;
    let conv = c.convention()?;
    let lhs = compute_genus(&ctx, &x, c.alpha(), torsion.as_ref(), conv)?;
    let rhs = compute_genus(&ctx, &y, c.alpha(), None, conv)?;
    let p = ctx.profile();
    let mut text = String::new();
    let mut passed = true;
    let _ = write!(text, "{what}: {} vs {}: ", x.name, y.name);
    let discrepancy = lhs.series.first_discrepancy(&rhs.series).map(|d| {
        format!(
            "q^({}): {} vs {}",
            p.q_exp(d.q_num),
            d.left.fmt_with(p.ly),
            d.right.fmt_with(p.ly)
        )
    });
    match &discrepancy {
        None => {
            let _ = writeln!(
                text,
                "equal through q^({})",
                p.q_exp(lhs.truncation().min(rhs.truncation()))
            );
        }
        Some(d) => {
            passed = false;
            let _ = writeln!(text, "FAIL first difference at {d}");
        }
    }
    let mut json = serde_json::json!({
        "identity": what,
        "lhs": x.name,
        "rhs": y.name,
        "passed": discrepancy.is_none(),
        "discrepancy": discrepancy,
        "truncation": lhs.truncation().min(rhs.truncation()),
    });
    if todd {
        let tl = specialize(&lhs.to_standard(&ctx)?, Specialization::Todd)?;
        let tr = specialize(&rhs.to_standard(&ctx)?, Specialization::Todd)?;
        let ok = tl == tr;
        passed &= ok;
        let _ = writeln!(text, "todd: {tl} vs {tr}: {}", if ok { "pass" } else { "FAIL" });
        json["todd"] = serde_json::json!([tl.to_string(), tr.to_string()]);
    }
    json["passed"] = serde_json::json!(passed);
    Ok(Outcome { text, json, passed })
}

fn run(cli: &Cli) -> Result<(Outcome, Option<&Common>)> {
    Ok(match &cli.command {
        Command::Compute(c) => (cmd_compute(c)?, Some(c)),
        Command::Check { common, checks } => (cmd_check(common, checks)?, Some(common)),
        Command::Specialize { common, kind } => (cmd_specialize(common, kind)?, Some(common)),
        Command::Mckay { common, target } => {
            (compare(common, "kummer", target, "mckay", false)?, Some(common))
        }
        Command::Kequiv { common, target } => {
            (compare(common, "blowup-p2", target, "kequiv", true)?, Some(common))
        }
        Command::Catalog => {
            let text = CATALOG_KEYS.iter().map(|k| format!("{k}\n")).collect();
            (
                Outcome {
                    text,
                    json: serde_json::json!(CATALOG_KEYS),
                    passed: true,
                },
                None,
            )
        }
    })
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ThetaPole { .. }
        | Error::TranscendentalResidue { .. }
        | Error::CharacterBookkeeping(_)
        | Error::DegenerateRootFunction
        | Error::NonInvertible(_) => 3,
        Error::InsufficientTruncation(_) => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("GENUSLAB_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|n| *n > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(&cli) {
        Ok((out, common)) => {
            let json_text = serde_json::to_string_pretty(&out.json).expect("serializable report");
            if let Some(path) = common.and_then(|c| c.out.as_ref()) {
                if let Err(e) = std::fs::write(path, format!("{json_text}\n")) {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            if common.map(|c| c.json).unwrap_or(false) {
                println!("{json_text}");
            } else {
                print!("{}", out.text);
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
