//! The `qmds` command line.
//!
//! Every run ends with a `key=value` summary block. Exit codes: 0 success,
//! 1 a checked property fails, 2 usage or parse error, 3 cap exceeded.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use crate::code::{dually_k_bound, fraction, qmds_length_bound, AdditiveCode};
use crate::constructions::{
    construct, construct_bbar, BbarOptions, Construction, ConstructionParams, Family,
};
use crate::error::{Error, Result};
use crate::field::{BaseField, FieldTower};
use crate::format;
use crate::geometry::{dda_to_code, search_dho_with, DhoSearch, DhoSearchOptions};
use crate::limits::Limits;
use crate::packing::Packing;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "qmds", version, about = "Additive codes, subspace packings and dual hyperovals")]
pub struct Cli {
    /// Largest number of vectors or subsets enumerated by one computation.
    #[arg(long, global = true, default_value_t = 1 << 24)]
    cap: u64,
    /// Largest number of subspaces streamed by one search.
    #[arg(long = "subspace-cap", global = true, default_value_t = 1_000_000)]
    subspace_cap: u64,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build and verify a code from one of the families.
    Construct(ConstructArgs),
    /// Check properties of a `.aqc` code or a `.pkg` packing.
    Verify(VerifyArgs),
    /// Minimum distance by exhaustive enumeration.
    Distance { file: PathBuf },
    /// Trace dual.
    Dual {
        file: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Geometric quotient by a set of 1-based positions.
    Quotient {
        /// Comma separated positions, e.g. `1,3`.
        #[arg(long = "j", value_delimiter = ',', required = true)]
        j: Vec<usize>,
        file: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Length bound for QMDS codes and the dually-QMDS bound on k.
    Bounds {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r0: usize,
    },
    /// Exhaustive search for a dual hyperoval in `F_q^(2h+1)`.
    SearchDho {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        h: usize,
        /// Resumable search state.
        #[arg(long)]
        state: Option<PathBuf>,
        /// Output `.pkg`; the code goes to the sibling `.aqc`.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Construct and verify every valid tuple of a parameter grid.
    Table(TableArgs),
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(long)]
    family: Family,
    #[arg(long)]
    q: u64,
    #[arg(long)]
    h: usize,
    /// Defaults to 2 for spread codes and 3 for `Bbar`.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    r0: usize,
    #[arg(long)]
    r1: Option<usize>,
    #[arg(long)]
    r2: Option<usize>,
    /// `Bbar` only: number of `Omega_2` blocks used.
    #[arg(long)]
    g: Option<usize>,
    /// Output `.aqc`; the packing goes to the sibling `.pkg`.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    qmds: bool,
    #[arg(long)]
    dually: bool,
    #[arg(long)]
    faithful: bool,
    /// Check that `X(C)` is an `h-(n, r, d)_q` system.
    #[arg(long)]
    system: bool,
    /// Check the `lambda`-packing property of `T(C)` (or of the packing).
    #[arg(long, value_name = "LAMBDA")]
    packing: Option<usize>,
    file: PathBuf,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long)]
    family: Family,
    /// Values as a list and/or inclusive ranges, e.g. `2,3` or `2..4`.
    #[arg(long, default_value = "2")]
    q: String,
    #[arg(long, default_value = "2")]
    h: String,
    #[arg(long)]
    k: Option<String>,
    #[arg(long, default_value = "1")]
    r0: String,
}

/// Output collected during a run: free lines, then the summary block.
struct Report<'a> {
    out: &'a mut dyn Write,
    summary: Vec<(String, String)>,
}

impl<'a> Report<'a> {
    fn line(&mut self, s: impl AsRef<str>) {
        let _ = writeln!(self.out, "{}", s.as_ref());
    }

    fn kv(&mut self, k: &str, v: impl ToString) {
        self.summary.push((k.to_string(), v.to_string()));
    }

    fn finish(mut self, code: i32) -> i32 {
        let status = match code {
            EXIT_OK => "ok",
            EXIT_FAIL => "fail",
            EXIT_CAP => "cap-exceeded",
            _ => "error",
        };
        self.kv("status", status);
        self.kv("exit", code);
        let _ = writeln!(self.out);
        for (k, v) in &self.summary {
            let _ = writeln!(self.out, "{k}={v}");
        }
        let _ = self.out.flush();
        code
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => EXIT_CAP,
        Error::Verification(_) => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (including the program name) and runs the command,
/// writing to `out`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = write!(out, "{}", e.render());
            let mut report = Report { out, summary: Vec::new() };
            report.kv("command", "none");
            return report.finish(code);
        }
    };
    let mut limits = Limits {
        vector_cap: cli.cap,
        subspace_cap: cli.subspace_cap,
        ..Limits::default()
    };
    if let Some(w) = cli.workers {
        limits = limits.with_workers(w.max(1));
    }
    let mut report = Report { out, summary: Vec::new() };
    let result = dispatch(cli.command, &limits, &mut report);
    let code = match result {
        Ok(code) => code,
        Err(e) => {
            report.line(format!("error: {e}"));
            report.kv("error", e.to_string().replace('\n', " "));
            exit_code(&e)
        }
    };
    report.finish(code)
}

fn dispatch(cmd: Command, limits: &Limits, rep: &mut Report) -> Result<i32> {
    match cmd {
        Command::Construct(a) => cmd_construct(a, limits, rep),
        Command::Verify(a) => cmd_verify(a, limits, rep),
        Command::Distance { file } => {
            rep.kv("command", "distance");
            let code = format::load_code(&file)?;
            let (d, u) = code.min_weight_message(limits)?;
            rep.line(code.type_string(Some(d)));
            rep.kv("n", code.n());
            rep.kv("r", code.r());
            rep.kv("d", d);
            rep.kv("min_weight_message", join(&u));
            Ok(EXIT_OK)
        }
        Command::Dual { file, output } => {
            rep.kv("command", "dual");
            let code = format::load_code(&file)?;
            let dual = code.dual();
            format::save_code(&output, &dual)?;
            rep.line(dual.type_string(None));
            rep.kv("n", dual.n());
            rep.kv("r", dual.r());
            rep.kv("output", output.display());
            Ok(EXIT_OK)
        }
        Command::Quotient { j, file, output } => {
            rep.kv("command", "quotient");
            let code = format::load_code(&file)?;
            let quotient = code.geometric_quotient(&j)?;
            let qc = &quotient.code;
            rep.line(qc.type_string(None));
            rep.kv("j", join(&j));
            rep.kv("n", qc.n());
            rep.kv("r", qc.r());
            rep.kv("non_obliterating", qc.r() >= qc.h());
            if let Some(o) = output {
                format::save_code(&o, qc)?;
                rep.kv("output", o.display());
            }
            Ok(EXIT_OK)
        }
        Command::Bounds { q, h, k, r0 } => {
            rep.kv("command", "bounds");
            let n = qmds_length_bound(q, h, k, r0)?;
            let kb = dually_k_bound(q, h, r0)?;
            rep.line(format!("n ≤ {}, k ≤ {}", n.floor, kb.floor));
            rep.kv("n_bound", n.floor);
            rep.kv("n_bound_exact", fraction_u128(n.num, n.den));
            rep.kv("k_bound", kb.floor);
            rep.kv("k_bound_exact", fraction_u128(kb.num, kb.den));
            Ok(EXIT_OK)
        }
        Command::SearchDho { q, h, state, output } => cmd_search_dho(q, h, state, output, limits, rep),
        Command::Table(a) => cmd_table(a, limits, rep),
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn fraction_u128(num: u128, den: u128) -> String {
    match (usize::try_from(num), usize::try_from(den)) {
        (Ok(a), Ok(b)) => fraction(a, b),
        _ => format!("{num}/{den}"),
    }
}

fn params_of(family: Family, q: u64, h: usize, k: Option<usize>, r0: usize) -> Result<ConstructionParams> {
    let k = match (k, family) {
        (Some(k), _) => k,
        (None, Family::Spread) => 2,
        (None, Family::Bbar) => 3,
        (None, _) => return Err(Error::InvalidParams(format!("family {family} needs --k"))),
    };
    Ok(ConstructionParams::new(q, h, k, r0))
}

fn report_construction(c: &Construction, rep: &mut Report) {
    let mut headline = c.type_string();
    if c.is_qmds() == Some(true) {
        headline.push_str(" QMDS");
    }
    if c.is_long() == Some(true) {
        headline.push_str(" long");
    }
    rep.line(headline);
    rep.kv("family", c.family);
    rep.kv("q", c.params.q);
    rep.kv("h", c.params.h);
    rep.kv("k", c.params.k);
    rep.kv("r0", c.params.r0);
    rep.kv("n", c.code.n());
    rep.kv("r", c.code.r());
    rep.kv("d", c.distance.map_or("?".into(), |d| d.to_string()));
    rep.kv("lambda", c.lambda);
    rep.kv("length_bound", c.length_bound);
    for (k, v) in &c.details {
        rep.kv(k, v);
    }
}

fn cmd_construct(a: ConstructArgs, limits: &Limits, rep: &mut Report) -> Result<i32> {
    rep.kv("command", "construct");
    let mut params = params_of(a.family, a.q, a.h, a.k, a.r0)?;
    params.r1 = a.r1;
    params.r2 = a.r2;
    if a.g.is_some() && a.family != Family::Bbar {
        return Err(Error::InvalidParams("--g only applies to family Bbar".into()));
    }
    let c = if a.family == Family::Bbar {
        construct_bbar(params, BbarOptions { g: a.g, ..Default::default() }, limits)?
    } else {
        construct(a.family, params, limits)?
    };
    report_construction(&c, rep);
    if let Some(path) = a.output {
        let pkg = path.with_extension("pkg");
        format::save_code(&path, &c.code)?;
        format::save_packing(&pkg, &c.packing, Some(c.code.tower()))?;
        rep.kv("output", path.display());
        rep.kv("packing_output", pkg.display());
    }
    Ok(EXIT_OK)
}

/// A `.aqc` code, or a `.pkg` packing with the code it describes when its
/// header names a tower.
enum Input {
    Code(AdditiveCode),
    Packing(Packing, Option<AdditiveCode>),
}

fn load_input(path: &Path) -> Result<Input> {
    let text = std::fs::read_to_string(path)?;
    if text.trim_start().starts_with("pkg") {
        let (p, tower) = format::read_packing(&text)?;
        let code = match tower {
            Some(t) => Some(AdditiveCode::from_packing(Arc::new(t), &p)?),
            None => None,
        };
        Ok(Input::Packing(p, code))
    } else {
        Ok(Input::Code(format::read_code(&text)?))
    }
}

fn cmd_verify(a: VerifyArgs, limits: &Limits, rep: &mut Report) -> Result<i32> {
    rep.kv("command", "verify");
    let input = load_input(&a.file)?;
    let (packing, code) = match input {
        Input::Code(c) => (c.t_multiset(), Some(c)),
        Input::Packing(p, c) => (p, c),
    };
    let mut all = true;
    let need_code = a.qmds || a.dually || a.faithful || a.system;
    if need_code && code.is_none() {
        return Err(Error::InvalidParams(
            "code properties need a .aqc file or a .pkg header with h= and g=".into(),
        ));
    }
    if let Some(c) = &code {
        rep.kv("n", c.n());
        rep.kv("r", c.r());
        rep.kv("h", c.h());
        rep.kv("q", c.q());
    }
    if a.faithful {
        let c = code.as_ref().expect("checked");
        let ok = c.is_faithful();
        all &= ok;
        rep.line(format!("faithful: {ok}"));
        if !ok {
            let i = (1..=c.n())
                .find(|&i| c.column_space(i).map(|u| u.dim() < c.h()).unwrap_or(false))
                .unwrap_or(0);
            rep.line(format!("  witness: block {i} has column space of dimension below h"));
            rep.kv("faithful_witness", i);
        }
        rep.kv("faithful", ok);
    }
    if a.qmds {
        let c = code.as_ref().expect("checked");
        let (d, u) = c.min_weight_message(limits)?;
        let ok = d + c.k() == c.n() + 1;
        all &= ok;
        rep.line(format!("qmds: {ok} ({})", c.type_string(Some(d))));
        if !ok {
            rep.line(format!(
                "  witness: message {} has weight {d}, Singleton needs {}",
                join(&u),
                c.n() + 1 - c.k()
            ));
            rep.kv("qmds_witness", join(&u));
        }
        rep.kv("d", d);
        rep.kv("qmds", ok);
    }
    if a.dually {
        let c = code.as_ref().expect("checked");
        let ok = c.is_dually_qmds(limits)?;
        all &= ok;
        rep.line(format!("dually QMDS: {ok}"));
        if !ok {
            if let Some(j) = c.condition_b()? {
                let dim = c.geometric_quotient(&j)?.code.r();
                rep.line(format!(
                    "  witness: J = {{{}}} has dim ∩ W_j = {dim}, expected r - |J|h = {}",
                    join(&j),
                    c.r() as i64 - (j.len() * c.h()) as i64
                ));
                rep.kv("dually_witness", join(&j));
            } else if !c.is_qmds(limits)? {
                rep.line("  witness: the code itself is not QMDS");
            } else {
                let dp = c.dual_distance(limits)?;
                rep.line(format!("  witness: the dual has distance {dp}"));
                rep.kv("d_perp", dp);
            }
        }
        rep.kv("dually", ok);
    }
    if a.system {
        let c = code.as_ref().expect("checked");
        let s = c.verify_system(limits)?;
        let ok = s.holds();
        all &= ok;
        rep.line(format!(
            "system: {ok} (hyperplane {} contains {} blocks, n - d = {})",
            join(&s.hyperplane),
            s.max_count,
            s.n_minus_d
        ));
        rep.kv("system", ok);
        rep.kv("system_hyperplane", join(&s.hyperplane));
    }
    if let Some(lambda) = a.packing {
        let check = packing.verify_lambda_packing(lambda, limits)?;
        let ok = check.holds();
        all &= ok;
        rep.line(format!(
            "{lambda}-packing: {ok} (max multiplicity {})",
            check.max_multiplicity
        ));
        if let Some((p, m)) = &check.point_witness {
            rep.line(format!("  witness: point {} lies in {m} blocks", join(p)));
            rep.kv("packing_witness_point", join(p));
        }
        if let Some(s) = &check.subset_witness {
            let s: Vec<usize> = s.iter().map(|i| i + 1).collect();
            rep.line(format!("  witness: blocks {{{}}} meet nontrivially", join(&s)));
            rep.kv("packing_witness_blocks", join(&s));
        }
        rep.kv("packing", ok);
        rep.kv("max_multiplicity", check.max_multiplicity);
    }
    Ok(if all { EXIT_OK } else { EXIT_FAIL })
}

fn cmd_search_dho(
    q: u64,
    h: usize,
    state: Option<PathBuf>,
    output: Option<PathBuf>,
    limits: &Limits,
    rep: &mut Report,
) -> Result<i32> {
    rep.kv("command", "search-dho");
    rep.kv("q", q);
    rep.kv("h", h);
    let started = std::time::Instant::now();
    let options = DhoSearchOptions { seed: None, state_file: state };
    let result = search_dho_with(q, h, &options, limits)?;
    rep.kv("seconds", format!("{:.3}", started.elapsed().as_secs_f64()));
    match result {
        DhoSearch::Found(arc) => {
            let base = Arc::new(BaseField::with_order(q)?);
            let tower = Arc::new(FieldTower::over(base, h)?);
            let code = dda_to_code(&arc, tower.clone())?;
            let d = code.min_distance(limits)?;
            let dually = code.is_dually_qmds(limits)?;
            let mut line = code.type_string(Some(d));
            if dually {
                line.push_str(" dually QMDS");
            }
            rep.line(line);
            rep.kv("result", "found");
            rep.kv("blocks", arc.blocks.len());
            rep.kv("n", code.n());
            rep.kv("r", code.r());
            rep.kv("d", d);
            rep.kv("dually", dually);
            if let Some(path) = output {
                let aqc = path.with_extension("aqc");
                format::save_packing(&path, &arc.to_packing(), Some(&tower))?;
                format::save_code(&aqc, &code)?;
                rep.kv("output", path.display());
                rep.kv("code_output", aqc.display());
            }
            Ok(if dually { EXIT_OK } else { EXIT_FAIL })
        }
        DhoSearch::NoneExists { nodes } => {
            rep.line("none");
            rep.kv("result", "none");
            rep.kv("nodes", nodes);
            Ok(EXIT_OK)
        }
    }
}

/// Parses `2,3` / `2..4` / `2..4,7` into a sorted list (ranges inclusive).
pub fn parse_list(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::InvalidParams(format!("bad list {s:?}"));
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once("..") {
            Some((a, b)) => {
                let a: usize = a.parse().map_err(|_| bad())?;
                let b: usize = b.trim_start_matches('=').parse().map_err(|_| bad())?;
                out.extend(a..=b);
            }
            None => out.push(part.parse().map_err(|_| bad())?),
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn cmd_table(a: TableArgs, limits: &Limits, rep: &mut Report) -> Result<i32> {
    rep.kv("command", "table");
    let qs = parse_list(&a.q)?;
    let hs = parse_list(&a.h)?;
    let r0s = parse_list(&a.r0)?;
    let ks = match (&a.k, a.family) {
        (Some(k), _) => parse_list(k)?,
        (None, Family::Spread) => vec![2],
        (None, Family::Bbar) => vec![3],
        (None, Family::A) => vec![2, 3],
        (None, Family::B) => vec![3, 4],
    };
    rep.line("family q h k r0 n r d qmds dually");
    let (mut rows, mut failures) = (0usize, 0usize);
    for &q in &qs {
        for &h in &hs {
            for &k in &ks {
                for &r0 in &r0s {
                    let params = ConstructionParams::new(q as u64, h, k, r0);
                    let valid = match a.family {
                        Family::A => params.validate_a().is_ok(),
                        Family::B => params.validate_b().is_ok(),
                        Family::Bbar => params.resolve_split().is_ok() && k == 3,
                        Family::Spread => params.validate_spread().is_ok(),
                    };
                    if !valid {
                        continue;
                    }
                    rows += 1;
                    match construct(a.family, params, limits) {
                        Ok(c) => {
                            let dually = match c.code.is_dually_qmds(limits) {
                                Ok(v) => v.to_string(),
                                Err(Error::CapExceeded { .. }) => "?".into(),
                                Err(e) => return Err(e),
                            };
                            rep.line(format!(
                                "{} {q} {h} {k} {r0} {} {} {} {} {dually}",
                                a.family,
                                c.code.n(),
                                c.code.r(),
                                c.distance.map_or("?".into(), |d| d.to_string()),
                                c.is_qmds().map_or("?".into(), |v| v.to_string()),
                            ));
                        }
                        Err(e @ Error::CapExceeded { .. }) => {
                            rep.line(format!("{} {q} {h} {k} {r0} skipped: {e}", a.family));
                        }
                        Err(e) => {
                            failures += 1;
                            rep.line(format!("{} {q} {h} {k} {r0} failed: {e}", a.family));
                        }
                    }
                }
            }
        }
    }
    rep.kv("rows", rows);
    rep.kv("failures", failures);
    Ok(if failures == 0 { EXIT_OK } else { EXIT_FAIL })
}
