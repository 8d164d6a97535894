use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mcfrac::cache::{CacheError, CoefficientCache};
use mcfrac::correction::{derive_with, DerivationReport, DeriveOptions};
use mcfrac::exactmath::Rational;
use mcfrac::json::{coefficient_names, decimal, mc0_description, report_to_json, to_canonical_string, uncorroborated};
use mcfrac::numeric::constants::{const_c0, gamma_reference, harmonic, pi};
use mcfrac::numeric::lebesgue::lebesgue_log_part;
use mcfrac::numeric::{
    cf_enclosure, error_term, landau_g, lebesgue_quadrature, lebesgue_w_bracket, Enclosure, NumericError,
};
use mcfrac::seriesgen::Family;
use mcfrac::verify::{
    check_landau_monotone, check_lebesgue_monotone, check_theorem2, check_theorem4, rate_fit_report, CheckOptions,
    InequalityReport, Verdict, VerifyError, DEFAULT_SCHEDULE,
};

#[derive(Parser)]
#[command(
    name = "mcfrac",
    version,
    about = "Multiple-correction approximations of the Landau, Lebesgue and Euler-Mascheroni constants"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args)]
struct Global {
    /// Working precision in bits.
    #[arg(long, global = true, default_value_t = 192, value_parser = clap::value_parser!(u32).range(64..))]
    prec: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Coefficient cache directory (default: $MCFRAC_CACHE or ~/.cache/mcfrac).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Neither read nor write the coefficient cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Allow depths beyond the default limit of each family.
    #[arg(long, global = true)]
    uncertified: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Landau,
    Lebesgue,
    Euler,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Landau => Family::Landau,
            FamilyArg::Lebesgue => Family::Lebesgue,
            FamilyArg::Euler => Family::Euler,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    /// Two-sided bound on the Landau error with two corrections.
    LandauThm2,
    /// Two-sided bound on the Lebesgue error with one correction.
    LebesgueThm4,
    /// Landau error with two corrections is strictly decreasing.
    LandauMonotone,
    /// Lebesgue error with one correction is strictly decreasing.
    LebesgueMonotone,
}

#[derive(Args)]
struct Target {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    depth: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Derive the continued-fraction coefficients and the limit constant.
    Derive {
        #[command(flatten)]
        target: Target,
        /// Significant digits of the decimal renderings.
        #[arg(long, default_value_t = 30)]
        digits: usize,
    },
    /// Evaluate the approximation, the true value and the error at one n.
    Eval {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        n: u64,
    },
    /// Certify an inequality for every n in 0..=n-max.
    Verify {
        #[arg(long, value_enum)]
        theorem: Theorem,
        #[arg(long)]
        n_max: u64,
        /// How often an inconclusive point may have its precision doubled.
        #[arg(long, default_value_t = 4)]
        max_doublings: u32,
    },
    /// Fit the decay exponent and constant of the error.
    Rate {
        #[command(flatten)]
        target: Target,
        /// Geometric list of n values, comma separated.
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_SCHEDULE)]
        schedule: Vec<u64>,
    },
    /// Inspect or clear the coefficient cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand)]
enum CacheAction {
    /// List cached (family, depth) entries.
    List,
    /// Print a cached entry.
    Show {
        #[command(flatten)]
        target: Target,
    },
    /// Remove all cached entries.
    Clear,
    /// Print the cache directory.
    Path,
}

/// A failed command and its exit status.
struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn usage(msg: impl ToString) -> Self {
        Failure { code: 1, msg: msg.to_string() }
    }
    fn failed(msg: impl ToString) -> Self {
        Failure { code: 2, msg: msg.to_string() }
    }
    fn inconclusive(msg: impl ToString) -> Self {
        Failure { code: 3, msg: msg.to_string() }
    }
}

impl From<CacheError> for Failure {
    fn from(e: CacheError) -> Self {
        Failure::failed(e)
    }
}

impl From<NumericError> for Failure {
    fn from(e: NumericError) -> Self {
        match e {
            NumericError::InvalidInput(_) => Failure::usage(e),
            _ => Failure::inconclusive(e),
        }
    }
}

fn default_cache_dir() -> PathBuf {
    if let Some(p) = std::env::var_os("MCFRAC_CACHE") {
        return PathBuf::from(p);
    }
    if let Some(p) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(p).join("mcfrac");
    }
    match std::env::var_os("HOME") {
        Some(h) => PathBuf::from(h).join(".cache").join("mcfrac"),
        None => PathBuf::from(".mcfrac-cache"),
    }
}

struct Ctx<'a> {
    g: &'a Global,
}

impl Ctx<'_> {
    fn cache(&self) -> CoefficientCache {
        CoefficientCache::new(self.g.cache.clone().unwrap_or_else(default_cache_dir))
    }

    fn report(&self, t: &Target) -> Result<DerivationReport, Failure> {
        let family = Family::from(t.family);
        let opts = DeriveOptions { uncertified: self.g.uncertified };
        if self.g.no_cache {
            return derive_with(family, t.depth, opts).map_err(Failure::failed);
        }
        let cache = self.cache();
        let (r, hit) = cache.get_or_derive(family, t.depth, opts)?;
        let path = cache.path_for(family, t.depth);
        eprintln!("{} {}", if hit { "cache hit:" } else { "cached to" }, path.display());
        Ok(r)
    }

    fn digits(&self) -> usize {
        ((self.g.prec as f64 * std::f64::consts::LOG10_2) as usize).clamp(10, 80)
    }

    fn emit(&self, json: Value, table: String) -> String {
        match self.g.format {
            Format::Json => to_canonical_string(&json),
            Format::Table => table,
        }
    }
}

fn enclosure_json(e: &Enclosure, digits: usize) -> Value {
    let (lo, hi) = e.bounds_decimal(digits);
    json!({ "lo": lo, "hi": hi })
}

fn cmd_derive(ctx: &Ctx, target: &Target, digits: usize) -> Result<String, Failure> {
    let r = ctx.report(target)?;
    Ok(ctx.emit(report_to_json(&r, digits), derive_table(&r, digits)))
}

fn derive_table(r: &DerivationReport, digits: usize) -> String {
    let family = r.cf.family();
    let (a, b) = coefficient_names(family);
    let k = r.cf.depth();
    let mut s = String::new();
    let _ = writeln!(s, "{family} depth {k}");
    let _ = writeln!(s, "{}", mc0_description(family));
    if k == 0 {
        let _ = writeln!(s, "no correction terms");
    }
    for (j, (num, den)) in r.cf.terms().iter().enumerate() {
        for (name, v) in [(a, num), (b, den)] {
            let label = format!("{name}_{}", j + 1);
            let _ = writeln!(s, "{label:<10} = {v}");
            let _ = writeln!(s, "{:<10} ~ {}", "", decimal(v, digits));
        }
    }
    let e = r.limit_exponent;
    let _ = writeln!(s, "n^{e} E_{k}(n) -> C_{k} = {}", r.limit_constant);
    let _ = writeln!(s, "{:<10} ~ {}", "", decimal(&r.limit_constant, digits));
    let unchecked = uncorroborated(family, k);
    if !unchecked.is_empty() {
        let _ = writeln!(s, "derived, uncorroborated: {}", unchecked.join(", "));
    }
    if let Some(q) = r.brouncker_k {
        let _ = writeln!(s, "Brouncker truncation q_{q}");
    }
    if let Some(m) = r.lebesgue_terms {
        let _ = writeln!(s, "expansion terms M = {m}");
    }
    s
}

fn cmd_eval(ctx: &Ctx, target: &Target, n: u64) -> Result<String, Failure> {
    let r = ctx.report(target)?;
    let family = r.cf.family();
    let prec = ctx.g.prec;
    let digits = ctx.digits();
    let nq = Rational::from(n as i64);
    let k = r.cf.depth();
    let mc = cf_enclosure(&r.cf, n, prec)?;
    let err = error_term(family, &r.cf, n, prec)?;

    let mut rows: Vec<(String, String)> = Vec::new();
    let mut truth = serde_json::Map::new();
    let mc0 = match family {
        Family::Landau => {
            let g = landau_g(n);
            truth.insert("quantity".into(), json!("G(n)"));
            truth.insert("exact".into(), json!(g.to_string()));
            truth.insert("enclosure".into(), enclosure_json(&Enclosure::from_rational(&g, prec), digits));
            rows.push(("G(n)".into(), format!("{g} (exact)")));
            let l = Enclosure::ln_rational(&(nq + Rational::new(3, 4)), prec);
            l.div(&pi(prec))?.add(&const_c0(prec))
        }
        Family::Euler => {
            let h = harmonic(n);
            truth.insert("quantity".into(), json!("H_n"));
            truth.insert("exact".into(), json!(h.to_string()));
            truth.insert("enclosure".into(), enclosure_json(&Enclosure::from_rational(&h, prec), digits));
            rows.push(("H_n".into(), format!("{h} (exact)")));
            Enclosure::ln_rational(&nq, prec).add(&gamma_reference(prec))
        }
        Family::Lebesgue => {
            truth.insert("quantity".into(), json!("L_{n/2}"));
            let log_part = lebesgue_log_part(n, prec)?;
            if n == 0 {
                truth.insert("exact".into(), json!("1"));
                rows.push(("L_{n/2}".into(), "1 (exact)".into()));
            } else {
                let bracket = log_part.add(&lebesgue_w_bracket(n, prec));
                truth.insert("bracket".into(), enclosure_json(&bracket, digits));
                rows.push(("L_{n/2} bracket".into(), bracket.to_string()));
                match lebesgue_quadrature(n, 1e-13) {
                    Ok(q) => {
                        let meet = bracket.intersects(&q.with_prec(prec));
                        truth.insert("quadrature".into(), enclosure_json(&q, 17));
                        truth.insert("intersect".into(), json!(meet));
                        rows.push(("L_{n/2} quadrature".into(), q.to_string()));
                        rows.push(("oracles intersect".into(), meet.to_string()));
                    }
                    Err(e) => {
                        truth.insert("quadrature".into(), json!(e.to_string()));
                        rows.push(("L_{n/2} quadrature".into(), e.to_string()));
                    }
                }
            }
            log_part
        }
    };
    rows.push(("MC0(n)".into(), mc0.to_string()));
    rows.push((format!("MC_{k}(n)"), mc.to_string()));
    rows.push((format!("E_{k}(n)"), err.to_string()));

    let json = json!({
        "schema_version": mcfrac::json::SCHEMA_VERSION,
        "kind": "evaluation",
        "family": family.name(),
        "depth": k,
        "n": n,
        "precision": prec,
        "true_value": Value::Object(truth),
        "mc0": { "formula": mc0_description(family), "enclosure": enclosure_json(&mc0, digits) },
        "approximant": enclosure_json(&mc, digits),
        "error": enclosure_json(&err, digits),
    });
    let mut table = format!("{family} depth {k}, n = {n}, {prec} bits\n");
    for (name, v) in rows {
        let _ = writeln!(table, "{name:<20} {v}");
    }
    Ok(ctx.emit(json, table))
}

fn cmd_verify(ctx: &Ctx, theorem: Theorem, n_max: u64, max_doublings: u32) -> Result<String, Failure> {
    let opts = CheckOptions { precision: ctx.g.prec, max_doublings };
    let report: InequalityReport = match theorem {
        Theorem::LandauThm2 => check_theorem2(n_max, opts),
        Theorem::LebesgueThm4 => check_theorem4(n_max, opts),
        Theorem::LandauMonotone => check_landau_monotone(n_max, opts),
        Theorem::LebesgueMonotone => check_lebesgue_monotone(n_max, opts),
    }
    .map_err(Failure::failed)?;
    let out = ctx.emit(report.to_json(), report.to_table());
    match report.verdict() {
        Verdict::CertifiedTrue => Ok(out),
        Verdict::CertifiedFalse => {
            print!("{out}");
            Err(Failure::failed(format!("{}: certified-false points found", report.theorem)))
        }
        Verdict::Inconclusive => {
            print!("{out}");
            Err(Failure::inconclusive(format!("{}: some points remain inconclusive", report.theorem)))
        }
    }
}

fn cmd_rate(ctx: &Ctx, target: &Target, schedule: &[u64]) -> Result<String, Failure> {
    let r = ctx.report(target)?;
    let fit = rate_fit_report(&r, schedule, ctx.g.prec).map_err(|e| match e {
        VerifyError::Schedule(_) => Failure::usage(e),
        VerifyError::EnclosuresTooWide { .. } | VerifyError::Numeric(_) => Failure::inconclusive(e),
        VerifyError::Derive(_) => Failure::failed(e),
    })?;
    Ok(ctx.emit(fit.to_json(), fit.to_table()))
}

fn cmd_cache(ctx: &Ctx, action: &CacheAction) -> Result<String, Failure> {
    let cache = ctx.cache();
    match action {
        CacheAction::Path => Ok(format!("{}\n", cache.dir().display())),
        CacheAction::List => {
            let entries = cache.entries()?;
            let json = json!({
                "schema_version": mcfrac::json::SCHEMA_VERSION,
                "kind": "cache",
                "dir": cache.dir().display().to_string(),
                "entries": entries.iter().map(|(f, d)| json!({ "family": f.name(), "depth": d })).collect::<Vec<_>>(),
            });
            let mut table = String::new();
            for (f, d) in &entries {
                let _ = writeln!(table, "{f} {d}");
            }
            Ok(ctx.emit(json, table))
        }
        CacheAction::Show { target } => {
            let family = Family::from(target.family);
            match cache.load(family, target.depth)? {
                Some(r) => Ok(ctx.emit(report_to_json(&r, 30), derive_table(&r, 30))),
                None => Err(Failure::failed(format!("no cache entry for {family} depth {}", target.depth))),
            }
        }
        CacheAction::Clear => {
            let n = cache.clear()?;
            Ok(format!("removed {n} entries\n"))
        }
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let ctx = Ctx { g: &cli.global };
    match &cli.cmd {
        Command::Derive { target, digits } => cmd_derive(&ctx, target, *digits),
        Command::Eval { target, n } => cmd_eval(&ctx, target, *n),
        Command::Verify { theorem, n_max, max_doublings } => cmd_verify(&ctx, *theorem, *n_max, *max_doublings),
        Command::Rate { target, schedule } => cmd_rate(&ctx, target, schedule),
        Command::Cache { action } => cmd_cache(&ctx, action),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("mcfrac: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
