//! Command-line front end: `construct`, `table`, `decompose`, `oracle`.
//!
//! Exit codes: 0 success, 1 invalid input, 2 prediction/computation mismatch,
//! 3 oracle budget or size limit exceeded.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::cosets::{neg_q_image, CosetContext};
use crate::eaqecc::{decompose, ea_params, ea_singleton_check, EAParams};
use crate::family::{in_table4_grid, sweep, verify, Case, FamilyInput, FamilyReport, SweepEntry};
use crate::gf_oracle::{
    brute_force_distance, generator_polynomial, message_count, root_for, OracleError, Poly,
    DEFAULT_BUDGET,
};
use crate::negacyclic::{classical_params, make_defining_set};
use crate::numth::PrimePower;

pub const SCHEMA_VERSION: u32 = 1;

pub const CSV_HEADER: &str = "m,a,xi,alpha,case,branch,q,n,k,d,c,eaqmds,match";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Ok = 0,
    Invalid = 1,
    Mismatch = 2,
    Budget = 3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "negacode",
    version,
    about = "EAQECCs from negacyclic codes of length 2(q^2+1)/(m^2+1)"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "table")]
    pub format: ReportFormat,
    /// Maximum number of codewords the brute-force oracle may enumerate.
    #[arg(long, global = true, env = "NEGACODE_BUDGET")]
    pub budget: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build one code of the family and compare it with the closed form.
    Construct {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        xi: u64,
        #[arg(long)]
        alpha: u64,
        #[arg(long, value_parser = parse_case)]
        case: Case,
    },
    /// Verify every admissible code up to the given bounds.
    Table {
        #[arg(long, default_value_t = 7)]
        m_max: u64,
        #[arg(long, default_value_t = 6)]
        xi_max: u64,
        /// Restrict output to the (m, case, xi) grid of the reference table.
        #[arg(long)]
        paper_table4: bool,
    },
    /// Decompose the defining set generated by the given residues.
    Decompose {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        q: u64,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        reps: Vec<u64>,
    },
    /// Brute-force the minimum distance of the classical code.
    Oracle {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        q: u64,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        reps: Vec<u64>,
    },
}

fn parse_case(s: &str) -> Result<Case, String> {
    s.parse()
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::Ok,
                _ => ExitCode::Invalid,
            };
            let _ = write!(err, "{e}");
            return code as i32;
        }
    };
    let budget = cli.budget.unwrap_or(DEFAULT_BUDGET);
    let result = match cli.command {
        Command::Construct { m, xi, alpha, case } => {
            cmd_construct(FamilyInput::new(m, xi, alpha, case), cli.format)
        }
        Command::Table {
            m_max,
            xi_max,
            paper_table4,
        } => Ok(cmd_table(m_max, xi_max, paper_table4, cli.format)),
        Command::Decompose { n, q, reps } => cmd_decompose(n, q, &reps, cli.format),
        Command::Oracle { n, q, reps } => cmd_oracle(n, q, &reps, budget, cli.format),
    };
    match result {
        Ok(rendered) => {
            let _ = out.write_all(rendered.stdout.as_bytes());
            let _ = err.write_all(rendered.stderr.as_bytes());
            rendered.code as i32
        }
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            ExitCode::Invalid as i32
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rendered {
    pub stdout: String,
    pub stderr: String,
    pub code: ExitCode,
}

impl Rendered {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code: ExitCode::Ok,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quad {
    pub n: u64,
    pub k: u64,
    pub d: u64,
    pub c: u64,
}

impl From<&EAParams> for Quad {
    fn from(p: &EAParams) -> Self {
        Self {
            n: p.n,
            k: p.k,
            d: p.d,
            c: p.c,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDoc {
    pub m: u64,
    pub xi: u64,
    pub alpha: u64,
    pub case: Case,
    pub a: u64,
    pub q: u64,
    pub n: u64,
    pub s: u64,
    pub branch: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagsDoc {
    pub eaqmds: bool,
    pub mds: bool,
    #[serde(rename = "match")]
    pub matches: bool,
    pub d_exact: bool,
}

/// JSON form of a [`FamilyReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub schema: u32,
    pub input: InputDoc,
    pub predicted: Quad,
    pub computed: Quad,
    pub flags: FlagsDoc,
    #[serde(default)]
    pub warnings: Vec<String>,
}

impl From<&FamilyReport> for ReportDoc {
    fn from(r: &FamilyReport) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            input: InputDoc {
                m: r.input.m,
                xi: r.input.xi,
                alpha: r.input.alpha,
                case: r.input.case,
                a: r.a,
                q: r.q,
                n: r.n,
                s: r.s,
                branch: r.branch.to_string(),
            },
            predicted: Quad::from(&r.predicted),
            computed: Quad::from(&r.computed),
            flags: FlagsDoc {
                eaqmds: r.computed.is_eaqmds,
                mds: r.classical.is_mds,
                matches: r.matches,
                d_exact: r.computed.d_is_exact,
            },
            warnings: warnings(&r.computed),
        }
    }
}

fn warnings(p: &EAParams) -> Vec<String> {
    let mut out = Vec::new();
    if p.is_degenerate() {
        out.push(format!("degenerate code: k = 0 for {p}"));
    }
    out
}

fn classification(p: &EAParams) -> String {
    let check = ea_singleton_check(p);
    match (check.saturated, check.applicable) {
        (true, true) => format!("EAQMDS (d = {} <= (n+2)/2)", p.d),
        (true, false) => format!(
            "Singleton-saturating but outside EAQMDS applicability (d = {} > (n+2)/2)",
            p.d
        ),
        (false, _) => format!("not EAQMDS (slack {})", check.slack),
    }
}

fn bracket(q: &Quad, field: u64) -> String {
    format!("[[{},{},{};{}]]_{}", q.n, q.k, q.d, q.c, field)
}

fn csv_row(r: &FamilyReport) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{}",
        r.input.m,
        r.a,
        r.input.xi,
        r.input.alpha,
        r.input.case,
        r.branch,
        r.q,
        r.computed.n,
        r.computed.k,
        r.computed.d,
        r.computed.c,
        r.computed.is_eaqmds,
        r.matches
    )
}

fn exit_for(reports: &[&FamilyReport]) -> ExitCode {
    if reports.iter().all(|r| r.matches) {
        ExitCode::Ok
    } else {
        ExitCode::Mismatch
    }
}

pub fn cmd_construct(input: FamilyInput, format: ReportFormat) -> Result<Rendered, String> {
    let report = verify(&input).map_err(|e| e.to_string())?;
    let doc = ReportDoc::from(&report);
    let stdout = match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
            s.push('\n');
            s
        }
        ReportFormat::Csv => format!("{CSV_HEADER}\n{}\n", csv_row(&report)),
        ReportFormat::Table => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "m={} a={} xi={} alpha={} case={} branch={}",
                input.m, report.a, input.xi, input.alpha, input.case, report.branch
            );
            let _ = writeln!(s, "q={} n={} s={}", report.q, report.n, report.s);
            let _ = writeln!(s, "predicted  {}", bracket(&doc.predicted, report.q));
            let _ = writeln!(s, "computed   {}", bracket(&doc.computed, report.q));
            let _ = writeln!(
                s,
                "match      {}",
                if report.matches { "yes" } else { "NO" }
            );
            let _ = writeln!(s, "class      {}", classification(&report.computed));
            let _ = writeln!(
                s,
                "classical  [{},{},{}] {}",
                report.classical.n,
                report.classical.k_dim,
                report.classical.d_bch,
                if report.classical.is_mds {
                    "MDS"
                } else {
                    "not MDS"
                }
            );
            for w in &doc.warnings {
                let _ = writeln!(s, "warning: {w}");
            }
            s
        }
    };
    let mut rendered = Rendered::ok(stdout);
    if format != ReportFormat::Table {
        for w in &doc.warnings {
            rendered.stderr.push_str(&format!("warning: {w}\n"));
        }
    }
    rendered.code = exit_for(&[&report]);
    Ok(rendered)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDoc {
    pub schema: u32,
    pub rows: Vec<ReportDoc>,
}

/// Verified codes sorted by `(m, q, α)`, one per key.
pub fn table_rows(m_max: u64, xi_max: u64, paper_table4: bool) -> (Vec<FamilyReport>, Vec<String>) {
    let mut rows: BTreeMap<(u64, u64, u64), FamilyReport> = BTreeMap::new();
    let mut skipped = Vec::new();
    for entry in sweep(m_max, xi_max) {
        match entry {
            SweepEntry::Verified(r) => {
                if paper_table4 && !in_table4_grid(r.input.m, r.input.case, r.input.xi) {
                    continue;
                }
                rows.entry((r.input.m, r.q, r.input.alpha)).or_insert(*r);
            }
            SweepEntry::Rejected {
                m,
                xi,
                case,
                reason,
                ..
            } => {
                if paper_table4 && !in_table4_grid(m, case, xi) {
                    continue;
                }
                skipped.push(format!("skipped m={m} xi={xi} case {case}: {reason}"));
            }
        }
    }
    (rows.into_values().collect(), skipped)
}

pub fn cmd_table(m_max: u64, xi_max: u64, paper_table4: bool, format: ReportFormat) -> Rendered {
    let (rows, skipped) = table_rows(m_max, xi_max, paper_table4);
    let stdout = match format {
        ReportFormat::Csv => {
            let mut s = format!("{CSV_HEADER}\n");
            for r in &rows {
                s.push_str(&csv_row(r));
                s.push('\n');
            }
            s
        }
        ReportFormat::Json => {
            let doc = TableDoc {
                schema: SCHEMA_VERSION,
                rows: rows.iter().map(ReportDoc::from).collect(),
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("table serializes");
            s.push('\n');
            s
        }
        ReportFormat::Table => {
            let mut s = format!(
                "{:>2} {:>4} {:>2} {:>3} {:>2} {:>7} {:>4} {:<28} {:<6} {}\n",
                "m", "a", "xi", "al", "cs", "branch", "q", "[[n,k,d;c]]_q", "EAQMDS", "match"
            );
            for r in &rows {
                let code = bracket(&Quad::from(&r.computed), r.q);
                let _ = writeln!(
                    s,
                    "{:>2} {:>4} {:>2} {:>3} {:>2} {:>7} {:>4} {:<28} {:<6} {}",
                    r.input.m,
                    r.a,
                    r.input.xi,
                    r.input.alpha,
                    r.input.case.to_string(),
                    r.branch.to_string(),
                    r.q,
                    code,
                    if r.computed.is_eaqmds { "yes" } else { "no" },
                    if r.matches { "yes" } else { "NO" }
                );
            }
            s
        }
    };
    let refs: Vec<&FamilyReport> = rows.iter().collect();
    let mut stderr = String::new();
    for line in &skipped {
        stderr.push_str(line);
        stderr.push('\n');
    }
    Rendered {
        stdout,
        stderr,
        code: exit_for(&refs),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeDoc {
    pub schema: u32,
    pub n: u64,
    pub q: u64,
    pub z: Vec<u64>,
    pub neg_q_z: Vec<u64>,
    pub z1: Vec<u64>,
    pub z2: Vec<u64>,
    pub params: Quad,
    pub d_kind: String,
    pub eaqmds: bool,
    pub mds: bool,
}

fn context(n: u64, q: u64) -> Result<CosetContext, String> {
    let pp = PrimePower::new(q).map_err(|e| e.to_string())?;
    CosetContext::new(n, pp).map_err(|e| e.to_string())
}

pub fn cmd_decompose(
    n: u64,
    q: u64,
    reps: &[u64],
    format: ReportFormat,
) -> Result<Rendered, String> {
    let ctx = context(n, q)?;
    let z = make_defining_set(&ctx, reps).map_err(|e| e.to_string())?;
    let dec = decompose(&z);
    let params = ea_params(&z);
    let classical = classical_params(&z);
    let image = neg_q_image(&ctx, z.residues());
    let d_kind = if params.d_is_exact { "exact" } else { "bound" };
    let doc = DecomposeDoc {
        schema: SCHEMA_VERSION,
        n,
        q,
        z: z.residues().as_slice().to_vec(),
        neg_q_z: image.as_slice().to_vec(),
        z1: dec.z1.as_slice().to_vec(),
        z2: dec.z2.as_slice().to_vec(),
        params: Quad::from(&params),
        d_kind: d_kind.to_string(),
        eaqmds: params.is_eaqmds,
        mds: classical.is_mds,
    };
    let stdout = match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&doc).expect("decomposition serializes");
            s.push('\n');
            s
        }
        ReportFormat::Csv => format!(
            "n,q,z_size,z1_size,z2_size,k,d,d_kind,c,eaqmds\n{},{},{},{},{},{},{},{},{},{}\n",
            n,
            q,
            z.len(),
            dec.z1.len(),
            dec.z2.len(),
            params.k,
            params.d,
            d_kind,
            params.c,
            params.is_eaqmds
        ),
        ReportFormat::Table => {
            let mut s = String::new();
            let _ = writeln!(s, "Z      = {}", z.residues());
            let _ = writeln!(s, "-qZ    = {image}");
            let _ = writeln!(s, "Z1     = {}", dec.z1);
            let _ = writeln!(s, "Z2     = {}", dec.z2);
            let _ = writeln!(s, "|Z|    = {}", z.len());
            let _ = writeln!(s, "|Z1|   = {}", dec.z1.len());
            let _ = writeln!(s, "params = {} (d is {d_kind})", bracket(&doc.params, q));
            let _ = writeln!(s, "class  = {}", classification(&params));
            for w in warnings(&params) {
                let _ = writeln!(s, "warning: {w}");
            }
            s
        }
    };
    Ok(Rendered::ok(stdout))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleDoc {
    pub schema: u32,
    pub n: u64,
    pub q: u64,
    pub field_order: u64,
    pub generator: String,
    pub generator_degree: u64,
    pub divides_x_n_plus_1: bool,
    pub dimension: u64,
    pub d_bch: u64,
    pub d_exact: Option<u64>,
    pub mds: Option<bool>,
}

pub fn cmd_oracle(
    n: u64,
    q: u64,
    reps: &[u64],
    budget: u64,
    format: ReportFormat,
) -> Result<Rendered, String> {
    let ctx = context(n, q)?;
    let z = make_defining_set(&ctx, reps).map_err(|e| e.to_string())?;
    let classical = classical_params(&z);
    let needed = message_count(q, classical.k_dim);
    if !z.is_empty() && needed > budget as u128 {
        return Ok(Rendered {
            stdout: String::new(),
            stderr: format!(
                "error: {}\n",
                OracleError::BudgetExceeded { needed, budget }
            ),
            code: ExitCode::Budget,
        });
    }
    let oracle_failure = |e: OracleError| -> Result<Rendered, String> {
        match e {
            OracleError::BudgetExceeded { .. } | OracleError::FieldTooLarge { .. } => {
                Ok(Rendered {
                    stdout: String::new(),
                    stderr: format!("error: {e}\n"),
                    code: ExitCode::Budget,
                })
            }
            other => Err(other.to_string()),
        }
    };
    let root = match root_for(&ctx) {
        Ok(r) => r,
        Err(e) => return oracle_failure(e),
    };
    let g = match generator_polynomial(&z, &root) {
        Ok(g) => g,
        Err(e) => return oracle_failure(e),
    };
    let f = root.field();
    let (_, rem) = Poly::x_pow_plus_one(f, n as usize).divrem(&g, f);
    let d_exact = if classical.k_dim == 0 {
        None
    } else {
        match brute_force_distance(&g, &root, budget) {
            Ok(d) => Some(d),
            Err(e) => return oracle_failure(e),
        }
    };
    let doc = OracleDoc {
        schema: SCHEMA_VERSION,
        n,
        q,
        field_order: f.order(),
        generator: g.to_string(),
        generator_degree: g.degree().unwrap_or(0) as u64,
        divides_x_n_plus_1: rem.is_zero(),
        dimension: classical.k_dim,
        d_bch: classical.d_bch,
        d_exact,
        mds: d_exact.map(|d| d == n - classical.k_dim + 1),
    };
    let stdout = match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&doc).expect("oracle report serializes");
            s.push('\n');
            s
        }
        ReportFormat::Csv => format!(
            "n,q,dimension,d_bch,d_exact,mds\n{},{},{},{},{},{}\n",
            n,
            q,
            doc.dimension,
            doc.d_bch,
            d_exact.map_or("".to_string(), |d| d.to_string()),
            doc.mds.map_or("".to_string(), |m| m.to_string())
        ),
        ReportFormat::Table => {
            let mut s = String::new();
            let _ = writeln!(s, "field      GF({})", f.order());
            let _ = writeln!(s, "g(x)       {}", doc.generator);
            let _ = writeln!(s, "deg g      {}", doc.generator_degree);
            let _ = writeln!(
                s,
                "g | x^n+1  {}",
                if doc.divides_x_n_plus_1 { "yes" } else { "NO" }
            );
            let _ = writeln!(s, "dimension  {}", doc.dimension);
            let _ = writeln!(s, "BCH bound  {}", doc.d_bch);
            match d_exact {
                Some(d) => {
                    let _ = writeln!(s, "d (exact)  {d}");
                    let _ = writeln!(
                        s,
                        "MDS        {}",
                        if doc.mds == Some(true) { "yes" } else { "no" }
                    );
                }
                None => {
                    let _ = writeln!(s, "d (exact)  undefined (zero code)");
                }
            }
            s
        }
    };
    Ok(Rendered::ok(stdout))
}
