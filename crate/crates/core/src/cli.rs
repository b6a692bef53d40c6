//! Command-line front end. `execute` is pure (arguments in, output and exit
//! code out) so the binary stays a two-liner and the behaviour is testable.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cohomology::{default_cap, h2_bruteforce_with_cap, h2_fast, verify_h_bounds_with, BoundEntry, SweepPolicy};
use crate::error::Error;
use crate::fpg_module::{annihilator, augmentation_generators, free_rank, is_torsion, regular_module, stack};
use crate::pgroup::{catalog, PcGroup};
use crate::planner::{plan_with, Certificate, ChainSelector, FieldDescriptor, PlanMode};
use crate::quadratic::{fact24_instance, h1_check, reduced_forms, Discriminant, TameSetQ};
use crate::verify::{run_suites, VerifyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable overriding the brute-force group-order cap.
pub const CAP_ENV: &str = "TOWER_FORGE_CAP";
/// Largest cap accepted from flags or the environment.
pub const MAX_CAP: usize = 1024;

#[derive(Parser, Debug)]
#[command(name = "tower-forge", version, about = "p-group cohomology and class field tower planning")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a tower schedule and bound certificate for a p-group.
    Plan(PlanArgs),
    /// h1, h2 and the extension-class bound sweep.
    Cohomology(CohomologyArgs),
    /// Group-algebra checks: augmentation annihilator and free rank.
    Module(ModuleArgs),
    /// Imaginary quadratic fields: genus theory and h1 over Q.
    Quadratic(QuadraticArgs),
    /// Run the verification suites.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Table,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct GroupSpec {
    /// Catalog name, e.g. `c4`, `q8`, `heisenberg`, `c4xc2`.
    #[arg(long, conflicts_with = "file")]
    pub catalog: Option<String>,
    /// Presentation file in the pc text format.
    #[arg(long)]
    pub file: Option<PathBuf>,
    #[arg(long)]
    pub p: Option<u32>,
}

#[derive(Args, Debug)]
pub struct PlanArgs {
    #[command(flatten)]
    pub group: GroupSpec,
    #[arg(long, default_value_t = 1)]
    pub r1: u64,
    #[arg(long, default_value_t = 0)]
    pub r2: u64,
    /// The base field contains the p-th roots of unity.
    #[arg(long)]
    pub mu_p: bool,
    /// `paper_counting` or `refined`.
    #[arg(long, default_value = "paper_counting")]
    pub mode: String,
    /// Factor out the last (instead of first) central element of order p.
    #[arg(long)]
    pub last_chain: bool,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Args, Debug)]
pub struct CohomologyArgs {
    #[command(flatten)]
    pub group: GroupSpec,
    /// Brute-force group-order cap (overrides the environment).
    #[arg(long)]
    pub cap: Option<usize>,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Args, Debug)]
pub struct ModuleArgs {
    #[command(flatten)]
    pub group: GroupSpec,
    /// Number of free summands in `F_p[G]^λ ⊕ T`.
    #[arg(long, default_value_t = 1)]
    pub lambda: usize,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Args, Debug)]
pub struct QuadraticArgs {
    /// Compare the h1 formula with the Kummer count for `--s`.
    #[arg(long, requires = "s")]
    pub h1_check: bool,
    /// Comma-separated odd primes.
    #[arg(long, value_delimiter = ',')]
    pub s: Option<Vec<u64>>,
    /// Class number data for a negative fundamental discriminant.
    #[arg(long, allow_hyphen_values = true)]
    pub discriminant: Option<i64>,
    /// Uniqueness check for quadratic fields unramified outside `{q}`.
    #[arg(long)]
    pub unique: Option<u64>,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, conflicts_with = "suite")]
    pub all: bool,
    /// Suite number (1-9); repeatable.
    #[arg(long)]
    pub suite: Vec<u8>,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl std::fmt::Display) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

/// Whether a library error stems from bad input (exit 2) rather than a
/// failed check (exit 1).
fn is_input_error(e: &Error) -> bool {
    !matches!(e, Error::Infeasible(_) | Error::Inconsistent(_) | Error::Overflow(_))
}

fn from_error(e: Error) -> Outcome {
    let code = if is_input_error(&e) { EXIT_USAGE } else { EXIT_VIOLATION };
    Outcome {
        code,
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    }
}

fn load_group(spec: &GroupSpec) -> Result<(String, PcGroup), Outcome> {
    match (&spec.catalog, &spec.file) {
        (Some(name), None) => {
            let p = spec.p.ok_or_else(|| Outcome::usage("--catalog needs --p"))?;
            let g = catalog(name, p).map_err(Outcome::usage)?;
            Ok((name.clone(), g))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Outcome::usage(format!("cannot read {}: {e}", path.display())))?;
            let g = PcGroup::parse(&text).map_err(Outcome::usage)?;
            if let Some(p) = spec.p {
                if p != g.prime() {
                    return Err(Outcome::usage(format!("--p {p} disagrees with the file's prime {}", g.prime())));
                }
            }
            Ok((path.display().to_string(), g))
        }
        _ => Err(Outcome::usage("give exactly one of --catalog or --file")),
    }
}

fn resolve_cap(flag: Option<usize>, env: Option<&str>, p: u32) -> Result<usize, Outcome> {
    let cap = match (flag, env) {
        (Some(c), _) => c,
        (None, Some(s)) => s
            .trim()
            .parse()
            .map_err(|_| Outcome::usage(format!("{CAP_ENV} must be a positive integer, got '{s}'")))?,
        (None, None) => default_cap(p),
    };
    if cap == 0 || cap > MAX_CAP {
        return Err(Outcome::usage(format!("cap must lie in 1..={MAX_CAP}")));
    }
    Ok(cap)
}

/// Serializes `value` (JSON) or renders `table`, then routes to stdout or
/// the output file.
fn emit<T: Serialize>(out: &Output, value: &T, table: impl FnOnce() -> String, code: i32) -> Outcome {
    let text = match out.format {
        Format::Json => match serde_json::to_string_pretty(value) {
            Ok(s) => s + "\n",
            Err(e) => return Outcome::usage(e),
        },
        Format::Table => table(),
    };
    match &out.output {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome {
                code,
                ..Outcome::default()
            },
            Err(e) => Outcome::usage(format!("cannot write {}: {e}", path.display())),
        },
        None => Outcome {
            code,
            stdout: text,
            stderr: String::new(),
        },
    }
}

fn status(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    }
}

fn plan_table(c: &Certificate) -> String {
    let mut s = format!("p = {}, |Γ| = {}, mode = {}\n", c.p, c.gamma_order, c.mode);
    s += &format!("{:<22} {:>7} {:>8} {:>8}\n", "step", "primes", "degree", "f_after");
    for st in &c.steps {
        let kind = serde_json::to_value(st.kind).map(|v| v.as_str().unwrap_or("").to_string()).unwrap_or_default();
        s += &format!("{:<22} {:>7} {:>8} {:>8}\n", kind, st.primes_added, st.degree_factor, st.f_after);
    }
    s += &format!(
        "total degree {} (bound {}), primes {} (bound {}), ok = {}\n",
        c.total_degree, c.degree_bound, c.total_primes, c.prime_bound, c.ok
    );
    for v in &c.violations {
        s += &format!("violation: {v}\n");
    }
    s
}

pub fn cmd_plan(args: &PlanArgs) -> Outcome {
    let (_, g) = match load_group(&args.group) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let mode: PlanMode = match args.mode.parse() {
        Ok(m) => m,
        Err(e) => return Outcome::usage(e),
    };
    let k0 = FieldDescriptor::new(args.r1, args.r2, args.mu_p);
    let sel = if args.last_chain {
        ChainSelector::Last
    } else {
        ChainSelector::First
    };
    match plan_with(&g, k0, mode, sel) {
        Ok(c) => emit(&args.out, &c, || plan_table(&c), status(c.ok)),
        Err(e) => from_error(e),
    }
}

#[derive(Debug, Serialize)]
pub struct CohomologyReport {
    pub group: String,
    pub p: u32,
    pub order: u64,
    pub h1: usize,
    pub h2: usize,
    /// `h2` recomputed from the cocycle equations; absent above the cap.
    pub h2_bruteforce: Option<usize>,
    /// `p^h2`, the number of extension classes by `Z/p`.
    pub extension_classes: Option<u64>,
    pub classes_checked: usize,
    pub exhaustive: bool,
    pub bounds_ok: Option<bool>,
    pub classes: Vec<BoundEntry>,
}

impl CohomologyReport {
    pub fn ok(&self) -> bool {
        self.h2_bruteforce.is_none_or(|b| b == self.h2) && self.bounds_ok != Some(false)
    }

    fn table(&self) -> String {
        let opt = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
        let mut s = format!(
            "{} (p = {}, order {})\nh1 = {}\nh2 = {} (brute force {})\nextension classes = {}\n",
            self.group,
            self.p,
            self.order,
            self.h1,
            self.h2,
            opt(self.h2_bruteforce),
            self.extension_classes.map_or("-".to_string(), |v| v.to_string()),
        );
        if !self.classes.is_empty() {
            s += &format!("{:>6} {:>6} {:>4} {:>4} {:>6} {:>8}\n", "class", "split", "h1", "h2", "margin", "bound_ok");
            for e in &self.classes {
                s += &format!(
                    "{:>6} {:>6} {:>4} {:>4} {:>6} {:>8}\n",
                    e.class_index, e.split, e.h1, e.h2, e.margin, e.bound_ok
                );
            }
        }
        s
    }
}

pub fn cmd_cohomology(args: &CohomologyArgs, env_cap: Option<&str>) -> Outcome {
    let (name, g) = match load_group(&args.group) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let cap = match resolve_cap(args.cap, env_cap, g.prime()) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let h2 = h2_fast(&g);
    let mut rep = CohomologyReport {
        group: name,
        p: g.prime(),
        order: g.order(),
        h1: g.h1(),
        h2,
        h2_bruteforce: None,
        extension_classes: (g.prime() as u64).checked_pow(h2 as u32),
        classes_checked: 0,
        exhaustive: false,
        bounds_ok: None,
        classes: Vec::new(),
    };
    if g.size() <= cap {
        match h2_bruteforce_with_cap(&g, cap) {
            Ok(b) => rep.h2_bruteforce = Some(b),
            Err(e) => return from_error(e),
        }
        match verify_h_bounds_with(&g, cap, SweepPolicy::default()) {
            Ok(b) => {
                rep.classes_checked = b.classes_checked;
                rep.exhaustive = b.exhaustive;
                rep.bounds_ok = Some(b.passed());
                rep.classes = b.entries;
            }
            Err(e) => return from_error(e),
        }
    }
    emit(&args.out, &rep, || rep.table(), status(rep.ok()))
}

#[derive(Debug, Serialize)]
pub struct ModuleReport {
    pub group: String,
    pub p: u32,
    pub order: u64,
    pub h1: usize,
    pub lambda: usize,
    pub module_dim: usize,
    pub free_rank: usize,
    pub torsion: bool,
    /// Dimension of the annihilator of the augmentation tuple in `F_p[G]^{h1}`.
    pub annihilator_dim: usize,
    pub annihilator_is_trace_line: bool,
}

impl ModuleReport {
    pub fn ok(&self) -> bool {
        self.free_rank == self.lambda && self.annihilator_is_trace_line && self.torsion == (self.lambda == 0)
    }
}

pub fn cmd_module(args: &ModuleArgs) -> Outcome {
    let (name, g) = match load_group(&args.group) {
        Ok(x) => x,
        Err(o) => return o,
    };
    if args.lambda > 8 {
        return Outcome::usage("--lambda must be at most 8");
    }
    let h1 = g.h1();
    let x = stack(&g, &augmentation_generators(&g));
    let ann = match annihilator(&g, &regular_module(&g, h1), &x) {
        Ok(a) => a,
        Err(e) => return from_error(e),
    };
    let trace_line = crate::fpg_module::Submodule::from_vectors(
        g.prime(),
        g.size(),
        [crate::fpg_module::trace_element(&g).coeffs().clone()],
    );
    let m = regular_module(&g, args.lambda).direct_sum(&crate::verify::torsion_module(&g));
    let rep = ModuleReport {
        group: name,
        p: g.prime(),
        order: g.order(),
        h1,
        lambda: args.lambda,
        module_dim: m.dim(),
        free_rank: free_rank(&g, &m),
        torsion: is_torsion(&g, &m),
        annihilator_dim: ann.dim(),
        annihilator_is_trace_line: ann.same_space(&trace_line),
    };
    let table = || {
        format!(
            "{} (p = {}, order {}), h1 = {}\nM = F_p[G]^{} + T, dim {}\nfree rank {}, torsion {}\nannihilator dim {}, equals F_p T_G: {}\n",
            rep.group,
            rep.p,
            rep.order,
            rep.h1,
            rep.lambda,
            rep.module_dim,
            rep.free_rank,
            rep.torsion,
            rep.annihilator_dim,
            rep.annihilator_is_trace_line
        )
    };
    emit(&args.out, &rep, table, status(rep.ok()))
}

pub fn cmd_quadratic(args: &QuadraticArgs) -> Outcome {
    let chosen = [args.h1_check, args.discriminant.is_some(), args.unique.is_some()];
    if chosen.iter().filter(|&&b| b).count() != 1 {
        return Outcome::usage("give exactly one of --h1-check, --discriminant, --unique");
    }
    if args.h1_check {
        let s = match TameSetQ::new(args.s.clone().unwrap_or_default()) {
            Ok(s) => s,
            Err(e) => return from_error(e),
        };
        let rep = h1_check(&s);
        let table = || {
            format!(
                "S = {:?}\nh1 formula = {}\nkummer dim = {}\nfields = {:?}\nok = {}\n",
                rep.s,
                rep.h1_formula,
                rep.kummer_dim,
                rep.fields,
                rep.ok()
            )
        };
        return emit(&args.out, &rep, table, status(rep.ok()));
    }
    if let Some(d) = args.discriminant {
        let data = match Discriminant::new(d).and_then(|d| reduced_forms(&d)) {
            Ok(x) => x,
            Err(e) => return from_error(e),
        };
        let table = || {
            format!(
                "D = {}\nh = {}\n2-rank = {}\ngenus rank = {}\n",
                data.discriminant, data.h, data.two_rank, data.genus_rank
            )
        };
        return emit(&args.out, &data, table, status(data.two_rank == data.genus_rank));
    }
    let q = args.unique.unwrap_or_default();
    match fact24_instance(q) {
        Ok(r) => {
            let table = || format!("q = {}\nfield = {:?}\n2-rank = {:?}\nok = {}\n", r.q, r.field, r.two_rank, r.ok);
            emit(&args.out, &r, table, status(r.ok))
        }
        Err(e) => from_error(e),
    }
}

fn verify_table(r: &VerifyReport) -> String {
    let mut s = String::new();
    for suite in &r.suites {
        s += &format!(
            "[{}] {} {:<36} checked {}\n",
            suite.id,
            if suite.passed { "PASS" } else { "FAIL" },
            suite.name,
            suite.checked
        );
        for f in &suite.failures {
            s += &format!("    {f}\n");
        }
    }
    s
}

pub fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let ids: Vec<u8> = if args.all {
        (1..=9).collect()
    } else if args.suite.is_empty() {
        return Outcome::usage("give --all or at least one --suite");
    } else {
        if let Some(bad) = args.suite.iter().find(|&&i| !(1..=9).contains(&i)) {
            return Outcome::usage(format!("no suite {bad}; suites are 1-9"));
        }
        args.suite.clone()
    };
    let rep = run_suites(&ids);
    emit(&args.out, &rep, || verify_table(&rep), status(rep.passed))
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let env_cap = std::env::var(CAP_ENV).ok();
    match &cli.command {
        Command::Plan(a) => cmd_plan(a),
        Command::Cohomology(a) => cmd_cohomology(a, env_cap.as_deref()),
        Command::Module(a) => cmd_module(a),
        Command::Quadratic(a) => cmd_quadratic(a),
        Command::Verify(a) => cmd_verify(a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &str) -> Outcome {
        execute(std::iter::once("tower-forge").chain(args.split_whitespace()))
    }

    fn json(o: &Outcome) -> serde_json::Value {
        serde_json::from_str(&o.stdout).expect("json output")
    }

    #[test]
    fn plan_examples() {
        let o = run("plan --catalog c4 --p 2 --r1 1 --r2 0 --mu-p");
        assert_eq!(o.code, 0, "{}", o.stderr);
        let v = json(&o);
        assert_eq!(v["total_degree"], 32);
        assert_eq!(v["total_primes"], 7);
        assert_eq!(v["ok"], true);

        let v = json(&run("plan --catalog heisenberg --p 3 --r1 1 --r2 0"));
        assert_eq!((v["total_degree"].as_u64(), v["total_primes"].as_u64()), (Some(243), Some(8)));

        let v = json(&run("plan --catalog trivial --p 5"));
        assert_eq!((v["total_degree"].as_u64(), v["total_primes"].as_u64()), (Some(1), Some(0)));
    }

    #[test]
    fn cohomology_v4() {
        let o = run("cohomology --catalog v4 --p 2");
        assert_eq!(o.code, 0, "{}", o.stderr);
        let v = json(&o);
        assert_eq!(v["h1"], 2);
        assert_eq!(v["h2"], 3);
        assert_eq!(v["extension_classes"], 8);
        assert_eq!(v["classes"].as_array().map(Vec::len), Some(8));
    }

    #[test]
    fn quadratic_h1_check() {
        let v = json(&run("quadratic --h1-check --s 5,13"));
        assert_eq!(v["h1_formula"], 2);
        assert_eq!(v["kummer_dim"], 2);
        let d = json(&run("quadratic --discriminant -84"));
        assert_eq!(d["D"], -84);
        assert_eq!(d["two_rank"], 2);
    }

    #[test]
    fn usage_errors_exit_two() {
        for bad in [
            "",
            "plan",
            "plan --catalog c4",
            "plan --catalog nope --p 2",
            "plan --catalog c4 --p 4",
            "plan --catalog c4 --p 2 --mode fancy",
            "plan --catalog c4 --p 2 --r1 0 --r2 0",
            "cohomology --catalog c4 --p 2 --cap 0",
            "quadratic",
            "quadratic --h1-check --s 4",
            "quadratic --discriminant -3x",
            "quadratic --discriminant -8 --unique 5",
            "verify",
            "verify --suite 12",
            "module --file /nonexistent/group.pc",
        ] {
            assert_eq!(run(bad).code, EXIT_USAGE, "{bad}");
        }
    }

    #[test]
    fn cap_resolution() {
        assert_eq!(resolve_cap(None, None, 2).ok(), Some(default_cap(2)));
        assert_eq!(resolve_cap(None, Some("16"), 2).ok(), Some(16));
        assert_eq!(resolve_cap(Some(8), Some("16"), 2).ok(), Some(8));
        assert!(resolve_cap(None, Some("lots"), 2).is_err());
    }

    #[test]
    fn cap_skips_bruteforce() {
        let o = run("cohomology --catalog c4xc2 --p 2 --cap 4");
        assert_eq!(o.code, 0);
        let v = json(&o);
        assert!(v["h2_bruteforce"].is_null());
        assert_eq!(v["h2"], 3);
    }

    #[test]
    fn table_format() {
        let o = run("plan --catalog c4 --p 2 --mu-p --format table");
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("base_case_diag"));
        assert!(o.stdout.contains("ok = true"));
    }
}
