//! Command-line front end. One thin binary dispatches here; all real work
//! happens in the library modules.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input errors.
//! JSON output is deterministic (sorted keys, canonical orderings) so that
//! identical invocations are byte-identical regardless of `--jobs`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{ArgAction, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::census;
use crate::csl;
use crate::quat::{self, Quaternion};
use crate::rot;
use crate::verify;

#[derive(Parser)]
#[command(
    name = "mcsl",
    version,
    about = "Exact CSLs and multiple CSLs of the bcc lattice"
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Directory for cached census payloads (created on demand)
    #[arg(long, global = true, env = "MCSL_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Worker threads for enumeration (0 = rayon default)
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Timing diagnostics on stderr
    #[arg(short, long, global = true, action = ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact rotation matrix and coincidence index of a quaternion
    Rot {
        /// Quaternion: "d0,d1,d2,d3" doubled components or "(a b c d)[/2]"
        #[arg(long)]
        quat: String,
        /// Read comma components as integer (half of doubled) values
        #[arg(long)]
        half: bool,
    },
    /// CSL of a primitive odd-norm quaternion: HNF, index, ideal key
    Csl {
        #[arg(long)]
        quat: String,
        #[arg(long)]
        half: bool,
    },
    /// Intersection of several CSLs with its prime-power decomposition
    Mcsl {
        /// Semicolon-separated quaternions, e.g. "2,2,2,0;2,2,-2,0"
        #[arg(long)]
        quats: String,
        #[arg(long)]
        half: bool,
    },
    /// Greatest common left divisor (canonical associate)
    Gcld {
        #[arg(long)]
        q1: String,
        #[arg(long)]
        q2: String,
        #[arg(long)]
        half: bool,
    },
    /// Least common right multiple (canonical associate)
    Lcrm {
        #[arg(long)]
        q1: String,
        #[arg(long)]
        q2: String,
        #[arg(long)]
        half: bool,
    },
    /// Exhaustive per-index counts compared against the closed forms
    Census {
        #[command(subcommand)]
        which: CensusCmd,
    },
    /// Run the verification suite
    Verify {
        /// Which suite to run (only "all" exists)
        target: String,
        #[arg(long, default_value = "desk")]
        level: String,
        /// Also write the JSON report to this path
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CensusCmd {
    /// Distinct CSL counts for every odd index up to --max
    F {
        #[arg(long)]
        max: i128,
    },
    /// Two-fold MCSL count at the prime power --prime ^ --power
    F2 {
        #[arg(long)]
        prime: i128,
        #[arg(long)]
        power: u32,
    },
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let started = Instant::now();
    let verbose = cli.verbose;
    let code = if cli.jobs > 0 {
        match rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build()
        {
            Ok(pool) => pool.install(|| execute(cli)),
            Err(e) => {
                eprintln!("mcsl: cannot build thread pool: {e}");
                2
            }
        }
    } else {
        execute(cli)
    };
    if verbose > 0 {
        eprintln!("mcsl: finished in {:.3}s", started.elapsed().as_secs_f64());
    }
    code
}

fn execute(cli: Cli) -> i32 {
    match run_command(&cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("mcsl: {msg}");
            2
        }
    }
}

fn parse(s: &str, half: bool) -> Result<Quaternion, String> {
    quat::parse_quaternion(s, half).map_err(|e| e.to_string())
}

fn run_command(cli: &Cli) -> Result<i32, String> {
    match &cli.cmd {
        Cmd::Rot { quat, half } => {
            let q = parse(quat, *half)?;
            if q.is_zero() {
                return Err("the zero quaternion has no rotation".into());
            }
            let p = q.primitive_part();
            let r = rot::rotation_matrix(&p).map_err(|e| e.to_string())?;
            let payload = json!({
                "quat": csl::quat_json(&p),
                "matrix": r.entry_strings(),
                "sigma": rot::sigma(&p).map_err(|e| e.to_string())? as i64,
            });
            emit_value(cli, &payload)?;
            Ok(0)
        }
        Cmd::Csl { quat, half } => {
            let q = parse(quat, *half)?;
            let record = csl::CslRecord::new(&q).map_err(|e| e.to_string())?;
            emit_value(cli, &record.to_json())?;
            Ok(0)
        }
        Cmd::Mcsl { quats, half } => {
            let qs: Vec<Quaternion> = quats
                .split(';')
                .map(|s| parse(s, *half))
                .collect::<Result<_, _>>()?;
            let record = csl::mcsl(&qs).map_err(|e| e.to_string())?;
            emit_value(cli, &record.to_json())?;
            Ok(0)
        }
        Cmd::Gcld { q1, q2, half } => {
            let a = parse(q1, *half)?;
            let b = parse(q2, *half)?;
            let g = quat::gcld(&a, &b).map_err(|e| e.to_string())?;
            emit_value(cli, &binary_op_json("gcld", &a, &b, &g))?;
            Ok(0)
        }
        Cmd::Lcrm { q1, q2, half } => {
            let a = parse(q1, *half)?;
            let b = parse(q2, *half)?;
            let m = quat::lcrm(&a, &b).map_err(|e| e.to_string())?;
            emit_value(cli, &binary_op_json("lcrm", &a, &b, &m))?;
            Ok(0)
        }
        Cmd::Census { which } => run_census(cli, which),
        Cmd::Verify { target, level, out } => run_verify(cli, target, level, out.as_deref()),
    }
}

fn binary_op_json(op: &str, a: &Quaternion, b: &Quaternion, r: &Quaternion) -> serde_json::Value {
    json!({
        "op": op,
        "q1": csl::quat_json(a),
        "q2": csl::quat_json(b),
        "result": csl::quat_json(r),
        "norm": r.norm() as i64,
        "text": r.to_string(),
    })
}

fn run_census(cli: &Cli, which: &CensusCmd) -> Result<i32, String> {
    let (cache_key, reports) = match which {
        CensusCmd::F { max } => {
            if *max < 1 {
                return Err("--max must be at least 1".into());
            }
            let key = format!("f_max{}_{}", max, format_name(cli.format));
            if let Some(hit) = cache_read(cli, &key) {
                print!("{hit}");
                return Ok(0);
            }
            use rayon::prelude::*;
            let sigmas: Vec<i128> = (1..=*max).step_by(2).collect();
            let reports: Vec<census::CountReport> = sigmas
                .par_iter()
                .map(|&s| census::csl_census(s).expect("odd sigma"))
                .collect();
            (key, reports)
        }
        CensusCmd::F2 { prime, power } => {
            if *prime < 3 || prime % 2 == 0 || !crate::arith::is_prime(*prime) {
                return Err(format!("{prime} is not an odd prime"));
            }
            if *power < 1 || *power > 12 || arith_pow_exceeds(*prime, *power, 1_000_000) {
                return Err(
                    "--power must be between 1 and 12 with prime^power at most 10^6".into(),
                );
            }
            let key = format!("f2_{}_{}_{}", prime, power, format_name(cli.format));
            if let Some(hit) = cache_read(cli, &key) {
                print!("{hit}");
                return Ok(0);
            }
            let sigma = crate::arith::pow(*prime, *power);
            let report = census::pair_census(sigma).map_err(|e| e.to_string())?;
            (key, vec![report])
        }
    };
    let payload = render_census(cli.format, &reports)?;
    cache_write(cli, &cache_key, &payload);
    print!("{payload}");
    Ok(0)
}

fn render_census(format: Format, reports: &[census::CountReport]) -> Result<String, String> {
    match format {
        Format::Json => {
            let arr: Vec<serde_json::Value> = reports.iter().map(|r| r.to_json()).collect();
            Ok(format!("{}\n", serde_json::Value::Array(arr)))
        }
        Format::Csv => {
            let mut out = String::from("sigma,count,formula,match\n");
            for r in reports {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    r.sigma,
                    r.count,
                    census::ratio_string(&r.formula),
                    r.matched
                ));
            }
            Ok(out)
        }
        Format::Table => {
            let mut out = format!(
                "{:>8} {:>8} {:>12} {:>6}\n",
                "sigma", "count", "formula", "match"
            );
            for r in reports {
                out.push_str(&format!(
                    "{:>8} {:>8} {:>12} {:>6}\n",
                    r.sigma,
                    r.count,
                    census::ratio_string(&r.formula),
                    r.matched
                ));
            }
            Ok(out)
        }
    }
}

fn run_verify(_cli: &Cli, target: &str, level: &str, out: Option<&Path>) -> Result<i32, String> {
    if target != "all" {
        return Err(format!("unknown verify target {target:?}; use \"all\""));
    }
    let level = verify::Level::parse(level)
        .ok_or_else(|| format!("unknown level {level:?}; use \"desk\" or \"deep\""))?;
    let results = verify::run_all(level);
    for r in &results {
        eprintln!("{}", r.summary_line());
    }
    let report = verify::report_json(level, &results);
    let payload = format!("{report}\n");
    if let Some(path) = out {
        fs::write(path, &payload).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    print!("{payload}");
    Ok(if results.iter().all(|r| r.passed) {
        0
    } else {
        1
    })
}

fn arith_pow_exceeds(base: i128, exp: u32, limit: i128) -> bool {
    let mut v = 1i128;
    for _ in 0..exp {
        v *= base;
        if v > limit {
            return true;
        }
    }
    false
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Table => "table",
    }
}

fn emit_value(cli: &Cli, value: &serde_json::Value) -> Result<(), String> {
    match cli.format {
        Format::Json => {
            println!("{value}");
            Ok(())
        }
        Format::Table => {
            println!(
                "{}",
                serde_json::to_string_pretty(value).expect("serializable")
            );
            Ok(())
        }
        Format::Csv => Err("csv output only applies to census commands".into()),
    }
}

fn cache_read(cli: &Cli, key: &str) -> Option<String> {
    let dir = cli.cache_dir.as_ref()?;
    fs::read_to_string(dir.join(key)).ok()
}

fn cache_write(cli: &Cli, key: &str, payload: &str) {
    let Some(dir) = cli.cache_dir.as_ref() else {
        return;
    };
    if let Err(e) = try_cache_write(dir, key, payload) {
        eprintln!("mcsl: cache write failed: {e}");
    }
}

fn try_cache_write(dir: &Path, key: &str, payload: &str) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!("{key}.tmp{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(payload.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, dir.join(key))
}
