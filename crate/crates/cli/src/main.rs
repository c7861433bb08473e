mod batch;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use amalgam_core::classify::{qi_class_c, qi_class_w, qi_cross, qi_equivalent_c, qi_equivalent_w};
use amalgam_core::commensurability::commensurable_cw;
use amalgam_core::covers::{verify_cover, CoverMap};
use amalgam_core::geometry::{
    collapse_map_line, collapse_map_tree, interior_pairs, max_radius, measure_distortion, sampled_pairs,
    vertex_cap,
};
use amalgam_core::Spec;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use report::{pass_fail, table, Provenance};

#[derive(Parser, Debug)]
#[command(name = "amalgam", version, about = "Classify surface amalgams and Θ-graph Coxeter groups")]
struct Cli {
    /// Render tables instead of JSON
    #[arg(long, global = true)]
    human: bool,

    /// Seed recorded in the output and used for any sampling
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hyperbolicity, 3-manifold verdict, QI class and vectors of one spec
    Classify {
        /// Spec file, or inline JSON
        spec: String,
    },
    /// Whether two specs, of either family, are quasi-isometric
    Qi { first: String, second: String },
    /// Commensurability of an amalgam with a Θ-graph group
    Commensurate { amalgam: String, theta: String },
    /// Build the covering towers of an amalgam
    Tower {
        spec: String,
        /// Verify every link and compare the tops of the two towers
        #[arg(long)]
        verify: bool,
    },
    /// Check a serialized cover map
    VerifyCover { file: PathBuf },
    /// Measure the distortion of a collapse map
    Geometry {
        /// Valences of the domain tree: 2 2 for the line, 3 3 for the tree
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        /// Ball radius [default: 6s, capped by AMALGAM_MAX_VERTICES]
        #[arg(long)]
        radius: Option<u32>,
        #[arg(long, default_value_t = 1)]
        collapse_s: u32,
        /// Random pairs to measure instead of every interior pair
        #[arg(long)]
        sample_size: Option<usize>,
    },
    /// Classify every *.json spec in a directory
    Batch {
        dir: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Also build and verify towers for amalgams
        #[arg(long)]
        towers: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// What a command printed, and its exit code.
struct Outcome {
    text: String,
    code: u8,
}

fn code(pass: bool) -> u8 {
    if pass {
        0
    } else {
        1
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn emit<T: Serialize>(value: &T, human: Option<String>, pass: bool) -> Result<Outcome> {
    let text = match human {
        Some(h) => h,
        None => to_json(value)?,
    };
    Ok(Outcome { text, code: code(pass) })
}

fn qi(first: &str, second: &str, cli: &Cli) -> Result<Outcome> {
    let (a, b) = (input::load_spec(first)?, input::load_spec(second)?);
    let key = |s: &Spec| match s {
        Spec::Amalgam(c) => qi_class_c(c).key(),
        Spec::Theta(t) => qi_class_w(t).key(),
    };
    let (relation, equivalent) = match (&a, &b) {
        (Spec::Amalgam(x), Spec::Amalgam(y)) => ("C-C", qi_equivalent_c(x, y)),
        (Spec::Theta(x), Spec::Theta(y)) => ("W-W", qi_equivalent_w(x, y)),
        (Spec::Amalgam(x), Spec::Theta(y)) | (Spec::Theta(y), Spec::Amalgam(x)) => ("C-W", qi_cross(x, y)),
    };
    let value = json!({
        "first": a,
        "second": b,
        "relation": relation,
        "first_key": key(&a),
        "second_key": key(&b),
        "equivalent": equivalent,
        "provenance": Provenance::new(cli.seed),
    });
    let human = cli.human.then(|| {
        table(&[
            ("first".into(), report::spec_label(&a)),
            ("second".into(), report::spec_label(&b)),
            ("quasi-isometric".into(), equivalent.to_string()),
        ])
    });
    emit(&value, human, true)
}

fn commensurate(amalgam: &str, theta: &str, cli: &Cli) -> Result<Outcome> {
    let (s, t) = (input::load_amalgam(amalgam)?, input::load_theta(theta)?);
    let verdict = commensurable_cw(&s, &t);
    let value = json!({
        "amalgam": s,
        "theta": t,
        "result": verdict,
        "provenance": Provenance::new(cli.seed),
    });
    let human = cli.human.then(|| match &verdict {
        amalgam_core::commensurability::CommensurabilityVerdict::Commensurable {
            k,
            l,
            amalgam_theta,
            common_vector_amalgam,
            common_vector_theta,
            ..
        } => table(&[
            ("verdict".into(), "commensurable".into()),
            ("amalgam realized by".into(), amalgam_theta.to_string()),
            ("K, L".into(), format!("{k}, {l}")),
            ("amalgam side".into(), common_vector_amalgam.to_string()),
            ("theta side".into(), common_vector_theta.to_string()),
        ]),
        amalgam_core::commensurability::CommensurabilityVerdict::Unknown { reason } => {
            table(&[("verdict".into(), "unknown".into()), ("reason".into(), reason.clone())])
        }
    });
    emit(&value, human, true)
}

fn verify_cover_file(file: &PathBuf, cli: &Cli) -> Result<Outcome> {
    let text = std::fs::read_to_string(file).with_context(|| format!("cannot read {}", file.display()))?;
    let cm: CoverMap = input::parse_json(&text, "cover map")?;
    let report = verify_cover(&cm);
    let human = cli.human.then(|| {
        let mut out = format!("{}\n", pass_fail(report.pass));
        for v in &report.violations {
            out.push_str(&format!("  ({:?}) {}: {}\n", v.condition, v.location, v.detail));
        }
        out
    });
    let pass = report.pass;
    emit(
        &json!({ "report": report, "provenance": Provenance::new(cli.seed) }),
        human,
        pass,
    )
}

fn geometry(m: u32, n: u32, radius: Option<u32>, s: u32, sample: Option<usize>, cli: &Cli) -> Result<Outcome> {
    let f = match (m, n) {
        (2, 2) => collapse_map_line(s, radius.unwrap_or(6 * s))?,
        (3, 3) => {
            let r = radius.unwrap_or_else(|| (6 * s).min(max_radius(3, 3, vertex_cap(), 6 * s)));
            collapse_map_tree(s, r)?
        }
        _ => bail!("collapse maps are defined on T_{{2,2}} and T_{{3,3}}, not T_{{{m},{n}}}"),
    };
    let pairs = match sample {
        Some(count) => sampled_pairs(&f, s, count, cli.seed),
        None => interior_pairs(&f, s),
    };
    let d = measure_distortion(&pairs)?;
    let quotient = (m == 3).then(|| f.certificate());
    let bound = i64::from(s);
    let pass = d.within(bound, bound) && quotient.as_ref().is_none_or(|q| q.valence_ok && q.fiber_ok);
    let value = json!({
        "m": m,
        "n": n,
        "radius": f.domain.radius,
        "collapse_s": s,
        "distinct_pairs": pairs.len(),
        "measured_L": d.l.to_string(),
        "measured_C": d.c.to_string(),
        "bound_L": bound.to_string(),
        "bound_C": bound.to_string(),
        "quotient": quotient,
        "pass": pass,
        "provenance": Provenance::new(cli.seed),
    });
    let human = cli.human.then(|| {
        table(&[
            ("domain".into(), format!("T_{{{m},{n}}} ball of radius {}", f.domain.radius)),
            ("collapse size".into(), s.to_string()),
            ("measured L, C".into(), format!("{}, {}", d.l, d.c)),
            ("bound".into(), format!("{s}, {s}")),
            ("result".into(), pass_fail(pass).into()),
        ])
    });
    emit(&value, human, pass)
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Classify { spec } => {
            let r = report::classify(&input::load_spec(spec)?, cli.seed);
            emit(&r, cli.human.then(|| report::human_classify(&r)), true)
        }
        Command::Qi { first, second } => qi(first, second, cli),
        Command::Commensurate { amalgam, theta } => commensurate(amalgam, theta, cli),
        Command::Tower { spec, verify } => {
            let r = report::tower(&input::load_amalgam(spec)?, *verify, cli.seed)?;
            emit(&r, cli.human.then(|| report::human_tower(&r)), r.pass())
        }
        Command::VerifyCover { file } => verify_cover_file(file, cli),
        Command::Geometry {
            m,
            n,
            radius,
            collapse_s,
            sample_size,
        } => geometry(*m, *n, *radius, *collapse_s, *sample_size, cli),
        Command::Batch { dir, format, towers } => {
            let rows = batch::run(dir, *towers)?;
            // unreadable specs are input errors; failed towers are verdicts
            let status = if rows.iter().any(|r| r.status != "ok") {
                2
            } else {
                code(rows.iter().all(|r| r.tower_pass != Some(false)))
            };
            let text = match (format, cli.human) {
                (Format::Csv, _) => batch::to_csv(&rows)?,
                (Format::Json, true) => rows
                    .iter()
                    .map(|r| {
                        format!(
                            "{:<24} {:<3} {:<6} {}\n",
                            r.file,
                            r.family,
                            r.status,
                            r.qi_class.as_deref().or(r.error.as_deref()).unwrap_or("")
                        )
                    })
                    .collect(),
                (Format::Json, false) => to_json(&json!({
                    "rows": rows,
                    "provenance": Provenance::new(cli.seed),
                }))?,
            };
            Ok(Outcome { text, code: status })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
