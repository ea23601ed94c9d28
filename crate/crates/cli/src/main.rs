use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use homfly_core::lmv::{extract_g, g_tables, lmv_report, GTable, LmvReport};
use homfly_core::poly::Exp;
use homfly_core::selftest::{self, OracleCheck, Outcome};
use homfly_core::torus::{colored_homfly_torus, ColoredInvariant, TorusLinkSpec};
use homfly_core::{symchar, Bracket, Error, PartitionTuple};

const SCHEMA: u32 = 1;
const CACHE_ENV: &str = "HOMFLY_CACHE";
/// Total degree reachable without `--force`.
const KNOT_CAP: u32 = 6;
const LINK_CAP: u32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "homfly",
    version,
    about = "Colored HOMFLY invariants of torus links"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Directory for persisted character tables.
    #[arg(long, global = true, env = CACHE_ENV, value_name = "PATH")]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The colored invariant of T(rl, kl) in the s*-basis.
    Torus {
        #[command(flatten)]
        link: LinkArgs,
        /// One partition per component, e.g. "2,1|1".
        #[arg(long)]
        colors: String,
    },
    /// Plethystic logarithm, f-hat and BPS numbers up to a total degree.
    Lmv {
        #[command(flatten)]
        link: LinkArgs,
        /// Total degree cap; defaults to 6 for knots and 4 for links.
        #[arg(long)]
        caps: Option<u32>,
        /// Allow caps beyond the defaults.
        #[arg(long)]
        force: bool,
        /// Perturbs one f-hat entry to exercise the finding path.
        #[arg(long, hide = true)]
        corrupt: bool,
    },
    /// g-coefficients in u for one degree vector, or every degree up to a bound.
    #[command(name = "g-table")]
    GTable {
        #[command(flatten)]
        link: LinkArgs,
        /// "m" for all degrees with total at most m, or "n1,..,nl" for one vector.
        #[arg(long)]
        sizes: String,
        /// Allow totals beyond the defaults.
        #[arg(long)]
        force: bool,
    },
    /// Recomputes invariants from Hecke algebra braid matrices.
    Oracle {
        /// Largest number of cabled strands.
        #[arg(long, default_value_t = 6)]
        max_cells: u32,
        /// Allow more than 6 cabled strands.
        #[arg(long)]
        force: bool,
    },
    /// Runs the acceptance criteria.
    Selftest {
        /// Restrict to the given criterion ids.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
}

#[derive(Args, Debug)]
struct LinkArgs {
    #[arg(short = 'r', allow_negative_numbers = true)]
    r: u32,
    #[arg(short = 'k', allow_negative_numbers = true)]
    k: i64,
    #[arg(short = 'l', default_value_t = 1)]
    l: u32,
}

impl LinkArgs {
    fn spec(&self) -> Result<TorusLinkSpec, Error> {
        TorusLinkSpec::new(self.r, self.k, self.l)
    }
}

/// Exit status: 0 success, 1 usage or validation, 2 mathematical finding.
enum Status {
    Ok,
    Finding,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    symchar::set_cache_dir(cli.cache.clone().or_else(default_cache_dir));
    match run(&cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Finding) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn default_cache_dir() -> Option<PathBuf> {
    std::env::var_os("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))
        .map(|d| d.join("homfly"))
}

fn run(cli: &Cli) -> Result<Status, Error> {
    match &cli.command {
        Command::Torus { link, colors } => cmd_torus(cli.json, link, colors),
        Command::Lmv {
            link,
            caps,
            force,
            corrupt,
        } => cmd_lmv(cli.json, link, *caps, *force, *corrupt),
        Command::GTable { link, sizes, force } => cmd_gtable(cli.json, link, sizes, *force),
        Command::Oracle { max_cells, force } => cmd_oracle(cli.json, *max_cells, *force),
        Command::Selftest { only } => cmd_selftest(cli.json, only),
    }
}

fn emit(json: bool, value: Value, text: String) {
    if json {
        let mut value = value;
        value["schema"] = json!(SCHEMA);
        let text = serde_json::to_string_pretty(&value).expect("JSON values serialize");
        write_out(&format!("{text}\n"));
    } else {
        write_out(&text);
    }
}

/// A closed pipe downstream is not an error of ours.
fn write_out(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn default_cap(spec: &TorusLinkSpec) -> u32 {
    if spec.l == 1 {
        KNOT_CAP
    } else {
        LINK_CAP
    }
}

fn check_cap(total: u32, limit: u32, force: bool) -> Result<(), Error> {
    if total > limit && !force {
        return Err(Error::Parse(format!(
            "total degree {total} exceeds the default limit {limit}; pass --force"
        )));
    }
    Ok(())
}

fn link_json(spec: &TorusLinkSpec) -> Value {
    json!({ "r": spec.r, "k": spec.k, "l": spec.l, "name": spec.to_string() })
}

fn power(var: &str, e: &Exp) -> String {
    if *e == Exp::from_integer(1) {
        var.to_string()
    } else if e.is_integer() {
        format!("{var}^{e}")
    } else {
        format!("{var}^({e})")
    }
}

/// `nu^a [ c t^e s*_lambda + ... ]`, the layout of the closed formula.
fn sstar_layout(w: &ColoredInvariant) -> String {
    let mut body = String::new();
    for (i, term) in w.sstar_basis.iter().enumerate() {
        let (sign, c) = (if term.c < 0 { "-" } else { "+" }, term.c.unsigned_abs());
        if i == 0 {
            if term.c < 0 {
                body.push('-');
            }
        } else {
            body.push_str(&format!(" {sign} "));
        }
        if c != 1 {
            body.push_str(&format!("{c} "));
        }
        if !num_is_zero(&term.t_exp) {
            body.push_str(&power("t", &term.t_exp));
            body.push(' ');
        }
        body.push_str(&format!("s*({})", term.lambda));
    }
    if body.is_empty() {
        body.push('0');
    }
    if num_is_zero(&w.nu_exp) {
        body
    } else {
        format!("{} [ {body} ]", power("nu", &w.nu_exp))
    }
}

fn num_is_zero(e: &Exp) -> bool {
    *e.numer() == 0
}

fn cmd_torus(json: bool, link: &LinkArgs, colors: &str) -> Result<Status, Error> {
    let spec = link.spec()?;
    let colors: PartitionTuple = colors.parse()?;
    let w = colored_homfly_torus(&spec, &colors)?;
    let text = format!(
        "W_{{{}}}({}) = {}\n  = {}\n",
        w.colors,
        spec,
        sstar_layout(&w),
        w.value
    );
    let value = json!({
        "command": "torus",
        "link": link_json(&spec),
        "colors": w.colors,
        "nu_exp": w.nu_exp.to_string(),
        "sstar_basis": w.sstar_basis,
        "value": w.value,
        "value_text": w.value.to_string(),
    });
    emit(json, value, text);
    Ok(Status::Ok)
}

fn cmd_lmv(
    json: bool,
    link: &LinkArgs,
    caps: Option<u32>,
    force: bool,
    corrupt: bool,
) -> Result<Status, Error> {
    let spec = link.spec()?;
    let total = caps.unwrap_or_else(|| default_cap(&spec));
    check_cap(total, default_cap(&spec), force)?;
    let mut report = lmv_report(&spec, &vec![total; spec.l as usize], total)?;
    if corrupt {
        if let Some(entry) = report.fhat.entries.values_mut().next() {
            *entry = entry.div_bracket(Bracket::t(7));
        }
        report.bps = homfly_core::lmv::extract_n(&report.fhat, &spec);
    }
    emit(json, lmv_json(&report), lmv_text(&report));
    Ok(if report.bps.passes() {
        Status::Ok
    } else {
        Status::Finding
    })
}

fn lmv_json(report: &LmvReport) -> Value {
    json!({
        "command": "lmv",
        "link": link_json(&report.link),
        "caps": report.caps,
        "total_cap": report.total_cap,
        "f": report.f.entries,
        "fhat": report.fhat.entries,
        "bps": report.bps.entries,
        "flags": {
            "all_integer": report.bps.all_integer,
            "q_parity_uniform": report.bps.q_parity_uniform,
            "global_parity": report.bps.global_parity,
        },
        "findings": report.bps.findings,
    })
}

fn lmv_text(report: &LmvReport) -> String {
    let mut s = format!("{} total degree <= {}\n", report.link, report.total_cap);
    for (mu, v) in &report.fhat.entries {
        s.push_str(&format!("fhat[{mu}] = {v}\n"));
    }
    s.push_str("N[mu; g, Q]\n");
    for e in &report.bps.entries {
        s.push_str(&format!("  {}; {}, {}: {}\n", e.mu, e.g, e.q, e.n));
    }
    s.push_str(&format!(
        "integral: {}  uniform Q parity: {}  parity: {:?}\n",
        report.bps.all_integer, report.bps.q_parity_uniform, report.bps.global_parity
    ));
    for f in &report.bps.findings {
        s.push_str(&format!(
            "finding {} {} [{}]: {} ({})\n",
            f.link, f.tuple, f.stage, f.error, f.witness
        ));
    }
    s
}

fn cmd_gtable(json: bool, link: &LinkArgs, sizes: &str, force: bool) -> Result<Status, Error> {
    let spec = link.spec()?;
    let sizes: Vec<u32> = sizes
        .split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad size {x:?}")))
        })
        .collect::<Result<_, _>>()?;
    let tables: Vec<GTable> = match sizes.as_slice() {
        [m] => {
            check_cap(*m, default_cap(&spec), force)?;
            g_tables(&spec, *m)?
        }
        v if v.len() == spec.l as usize => {
            check_cap(v.iter().sum(), default_cap(&spec), force)?;
            vec![extract_g(&spec, v)?]
        }
        v => {
            return Err(Error::Parse(format!(
                "--sizes needs one bound or {} sizes, got {}",
                spec.l,
                v.len()
            )))
        }
    };
    let passes = tables.iter().all(GTable::passes);
    let mut text = String::new();
    for t in &tables {
        text.push_str(&format!("{} degrees {:?}\n", t.link, t.sizes));
        for (mu, row) in &t.entries {
            for (lambda, g) in row {
                text.push_str(&format!("  g[{mu}; {lambda}] = {g}\n"));
            }
        }
        text.push_str(&format!(
            "  integral: {}  palindromic: {}\n",
            t.integral, t.palindromic
        ));
        for f in &t.findings {
            text.push_str(&format!(
                "  finding {} [{}]: {} ({})\n",
                f.tuple, f.stage, f.error, f.witness
            ));
        }
    }
    let value = json!({
        "command": "g-table",
        "link": link_json(&spec),
        "variable": "u = t^-k",
        "tables": tables,
        "passes": passes,
    });
    emit(json, value, text);
    Ok(if passes { Status::Ok } else { Status::Finding })
}

fn cmd_oracle(json: bool, max_cells: u32, force: bool) -> Result<Status, Error> {
    check_cap(max_cells, 6, force)?;
    let checks: Vec<OracleCheck> = selftest::oracle_checks(max_cells);
    let passed = checks.iter().filter(|c| c.passed).count();
    let mut text = String::new();
    for c in &checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        text.push_str(&format!("{mark} {}\n", c.check));
        if let Some(w) = &c.witness {
            text.push_str(&format!("     {w}\n"));
        }
    }
    text.push_str(&format!("{passed}/{} checks passed\n", checks.len()));
    let ok = passed == checks.len();
    let value =
        json!({ "command": "oracle", "max_cells": max_cells, "checks": checks, "passed": ok });
    emit(json, value, text);
    Ok(if ok { Status::Ok } else { Status::Finding })
}

fn cmd_selftest(json: bool, only: &[u32]) -> Result<Status, Error> {
    let ids: Vec<u32> = selftest::CRITERIA
        .iter()
        .map(|c| c.0)
        .filter(|id| only.is_empty() || only.contains(id))
        .collect();
    if ids.is_empty() {
        return Err(Error::Parse(format!("no criterion among {only:?}")));
    }
    let outcomes: Vec<Outcome> = ids.into_iter().map(selftest::run).collect();
    let mut text = String::new();
    for o in &outcomes {
        let mark = if o.passed { "PASS" } else { "FAIL" };
        text.push_str(&format!(
            "criterion {}: {mark} {} ({} ms, budget {} ms)\n",
            o.id, o.title, o.elapsed_ms, o.budget_ms
        ));
        for f in &o.failures {
            text.push_str(&format!("    {f}\n"));
        }
    }
    let ok = outcomes.iter().all(|o| o.passed);
    emit(
        json,
        json!({ "command": "selftest", "criteria": outcomes, "passed": ok }),
        text,
    );
    Ok(if ok { Status::Ok } else { Status::Finding })
}
