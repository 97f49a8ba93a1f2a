//! Command-line frontend. `main` only forwards to [`run`].
//!
//! Exit codes: 0 when every check passes, 1 when a counterexample was found,
//! 2 for usage, parse and hypothesis errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::arith::{Modulus, Prime};
use crate::congruence::{
    self, catalan_digit_formula, catalan_iterated, catalan_mod3, catalan_mod5, dwork_verify,
    glc_simple_verify, glc_verify, lucas_verify, never_divisible_primes, Source,
};
use crate::error::Error;
use crate::oracles::{catalan_window, NamedSequence};
use crate::parse::{parse_str, to_canonical_string_with, Variables};
use crate::polytope::{interior_integral_points, newton_polytope};
use crate::pscheme::{self, LinearPScheme};
use crate::report::{CongruenceReport, ReportKind};
use crate::sequences::{ct_residues, ct_sequence, CtSpec, Method};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "ctlucas", version, about = "Constant-term sequences and their congruences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct PolyArgs {
    /// Declared variables, e.g. `x,y`.
    #[arg(long)]
    pub vars: String,
    #[arg(long = "P")]
    pub p: String,
    /// Defaults to 1.
    #[arg(long = "Q")]
    pub q: Option<String>,
}

impl PolyArgs {
    fn spec(&self) -> Result<CtSpec, Error> {
        CtSpec::parse(&self.p, self.q.as_deref(), &self.vars)
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMethod {
    Auto,
    Powering,
    Digits,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatalanMethod {
    Direct,
    Digits,
    Step,
    Mod3,
    Mod5,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print `ct[P^n Q]` for n = 0..=n-max as TSV.
    Eval {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        n_max: u64,
        /// Reduce modulo this integer.
        #[arg(long, conflicts_with = "prime")]
        modulus: Option<u64>,
        /// Reduce modulo prime^r.
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, value_enum, default_value_t = EvalMethod::Auto)]
        method: EvalMethod,
        #[arg(long)]
        signed: bool,
    },
    /// Lucas congruences for each prime.
    Lucas {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long)]
        n_max: u64,
    },
    /// Dwork congruences modulo p^r.
    Dwork {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long)]
        m_max: u64,
        #[arg(long)]
        n_max: u64,
    },
    /// Generalized Lucas congruences with the computed Q̃.
    Glc {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long)]
        n_max: u64,
    },
    /// Simplified generalized Lucas congruences (hypotheses checked first).
    GlcSimple {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long)]
        n_max: u64,
    },
    /// Linear p-schemes.
    Scheme {
        #[command(subcommand)]
        action: SchemeCommand,
    },
    /// Newton polytope of P and its interior lattice points, as JSON.
    Polytope {
        #[arg(long)]
        vars: String,
        #[arg(long = "P")]
        p: String,
    },
    /// Catalan numbers modulo a prime, as TSV.
    Catalan {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        n_max: u64,
        #[arg(long, value_enum, default_value_t = CatalanMethod::Direct)]
        method: CatalanMethod,
        #[arg(long)]
        signed: bool,
    },
    /// Primes up to a bound that divide no term of a Lucas sequence.
    NeverDivides {
        #[arg(long, default_value = "s")]
        sequence: String,
        #[arg(long)]
        bound: u64,
    },
}

#[derive(Args, Debug, Clone)]
pub struct SourceArgs {
    #[arg(long, requires = "p")]
    pub vars: Option<String>,
    #[arg(long = "P", requires = "vars")]
    pub p: Option<String>,
    #[arg(long = "Q", requires = "p")]
    pub q: Option<String>,
    /// A named sequence instead of a constant term, e.g. `apery`.
    #[arg(long, conflicts_with = "p")]
    pub sequence: Option<String>,
}

enum Resolved {
    Spec(CtSpec),
    Named(NamedSequence),
}

impl SourceArgs {
    fn resolve(&self) -> Result<Resolved, Error> {
        match (&self.p, &self.sequence) {
            (Some(p), _) => Ok(Resolved::Spec(CtSpec::parse(
                p,
                self.q.as_deref(),
                self.vars.as_deref().unwrap_or(""),
            )?)),
            (None, Some(s)) => Ok(Resolved::Named(NamedSequence::from_name(s)?)),
            (None, None) => Err(Error::InvalidInput("give --vars/--P or --sequence".into())),
        }
    }
}

impl Resolved {
    fn source(&self) -> Source<'_> {
        match self {
            Resolved::Spec(s) => Source::Spec(s),
            Resolved::Named(n) => Source::Named(n),
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum SchemeCommand {
    /// Build a scheme for ct[P^n Q] mod p^r and print it as JSON.
    Synth {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, default_value_t = pscheme::DEFAULT_MAX_STATES)]
        max_states: usize,
        /// Write the scheme here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Evaluate a scheme file for n = 0..=n-max as TSV.
    Eval {
        #[arg(long)]
        scheme: PathBuf,
        #[arg(long)]
        n_max: u64,
        #[arg(long)]
        signed: bool,
    },
    /// Compare a scheme file with ct[P^n Q].
    Verify {
        #[arg(long)]
        scheme: PathBuf,
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        n_max: u64,
    },
}

fn prime(p: u64) -> Result<Prime, Error> {
    Prime::new(p)
}

fn fmt_residue(v: u64, m: Modulus, signed: bool) -> String {
    if signed {
        m.signed(v).to_string()
    } else {
        v.to_string()
    }
}

fn emit_reports(out: &mut dyn Write, reports: &[CongruenceReport]) -> std::io::Result<i32> {
    for r in reports {
        out.write_all(r.to_json().as_bytes())?;
    }
    Ok(if reports.iter().all(|r| r.passed()) {
        EXIT_PASS
    } else {
        EXIT_COUNTEREXAMPLE
    })
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(CliError::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

enum CliError {
    Domain(Error),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::Eval {
            poly,
            n_max,
            modulus,
            prime: pr,
            r,
            method,
            signed,
        } => {
            let spec = poly.spec()?;
            writeln!(out, "n\tvalue")?;
            if let Some(pv) = pr {
                let p = prime(pv)?;
                let m = p.power(r)?;
                let method = match method {
                    EvalMethod::Auto => Method::Auto,
                    EvalMethod::Powering => Method::Powering,
                    EvalMethod::Digits => Method::Digits,
                };
                for (n, v) in ct_residues(&spec, n_max, p, r, method)?.iter().enumerate() {
                    writeln!(out, "{n}\t{}", fmt_residue(*v, m, signed))?;
                }
            } else if let Some(mv) = modulus {
                let m = Modulus::new(mv)?;
                let w = ct_sequence(&spec, n_max, Some(m))?;
                for (n, v) in w.residues(m)?.iter().enumerate() {
                    writeln!(out, "{n}\t{}", fmt_residue(*v, m, signed))?;
                }
            } else {
                let w = ct_sequence(&spec, n_max, None)?;
                for (n, v) in w.values().iter().enumerate() {
                    writeln!(out, "{n}\t{v}")?;
                }
            }
            Ok(EXIT_PASS)
        }
        Command::Lucas { source, primes, n_max } => {
            let resolved = source.resolve()?;
            let mut reports = Vec::new();
            for p in primes {
                reports.push(lucas_verify(resolved.source(), prime(p)?, n_max)?);
            }
            Ok(emit_reports(out, &reports)?)
        }
        Command::Dwork {
            source,
            primes,
            r,
            m_max,
            n_max,
        } => {
            let resolved = source.resolve()?;
            let mut reports = Vec::new();
            for p in primes {
                reports.push(dwork_verify(resolved.source(), prime(p)?, r, m_max, n_max)?);
            }
            Ok(emit_reports(out, &reports)?)
        }
        Command::Glc { poly, primes, n_max } => {
            let spec = poly.spec()?;
            let mut reports = Vec::new();
            for p in primes {
                reports.push(glc_verify(spec.p(), spec.q(), prime(p)?, n_max)?);
            }
            Ok(emit_reports(out, &reports)?)
        }
        Command::GlcSimple { poly, primes, n_max } => {
            let spec = poly.spec()?;
            let mut reports = Vec::new();
            let mut inapplicable = false;
            for p in primes {
                match glc_simple_verify(spec.p(), spec.q(), prime(p)?, n_max) {
                    Ok(r) => reports.push(r),
                    Err(Error::HypothesisViolation(reason)) => {
                        inapplicable = true;
                        reports.push(
                            CongruenceReport::new(ReportKind::GlcSimple)
                                .param("P", spec.p().to_string())
                                .param("Q", spec.q().to_string())
                                .param("p", p)
                                .param("n_max", n_max)
                                .inapplicable(reason),
                        );
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            let code = emit_reports(out, &reports)?;
            Ok(if inapplicable { EXIT_ERROR } else { code })
        }
        Command::Scheme { action } => scheme(action, out),
        Command::Polytope { vars, p } => {
            let f = parse_str(&p, &vars)?;
            let np = newton_polytope(&f)?;
            let interior = interior_integral_points(&np);
            let origin = vec![0i64; f.dim()];
            let origin_only = interior == vec![origin];
            let facets: Vec<_> = np
                .facets
                .iter()
                .map(|f| json!({"normal": f.normal, "offset": f.offset}))
                .collect();
            let doc = json!({
                "P": to_canonical_string_with(&f, &Variables::parse_list(&vars)?),
                "dim": np.dim,
                "affine_dim": np.affine_dim,
                "vertices": np.vertices,
                "facets": facets,
                "interior_points": interior,
                "origin_only_interior": origin_only,
            });
            writeln!(out, "{doc}")?;
            Ok(EXIT_PASS)
        }
        Command::Catalan {
            prime: pv,
            n_max,
            method,
            signed,
        } => {
            let p = prime(pv)?;
            let m = p.modulus();
            if (method == CatalanMethod::Mod3 && pv != 3) || (method == CatalanMethod::Mod5 && pv != 5) {
                return Err(Error::InvalidInput(format!("method {method:?} needs the matching prime")).into());
            }
            writeln!(out, "n\tvalue")?;
            let direct = if method == CatalanMethod::Direct {
                catalan_window(n_max)
            } else {
                Vec::new()
            };
            for n in 0..=n_max {
                let v = match method {
                    CatalanMethod::Direct => m.reduce(&direct[n as usize]),
                    CatalanMethod::Digits => catalan_digit_formula(n, p),
                    CatalanMethod::Step => catalan_iterated(n, p),
                    CatalanMethod::Mod3 => catalan_mod3(n),
                    CatalanMethod::Mod5 => catalan_mod5(n),
                };
                writeln!(out, "{n}\t{}", fmt_residue(v, m, signed))?;
            }
            Ok(EXIT_PASS)
        }
        Command::NeverDivides { sequence, bound } => {
            let seq = NamedSequence::from_name(&sequence)?;
            let primes = never_divisible_primes(&seq, bound)?;
            writeln!(out, "{}", serde_json::to_string(&primes).expect("list serializes"))?;
            Ok(EXIT_PASS)
        }
    }
}

fn read_scheme(path: &PathBuf) -> Result<LinearPScheme, CliError> {
    let text = std::fs::read_to_string(path)?;
    Ok(LinearPScheme::from_json(&text)?)
}

fn scheme(action: SchemeCommand, out: &mut dyn Write) -> Result<i32, CliError> {
    match action {
        SchemeCommand::Synth {
            poly,
            prime: pv,
            r,
            max_states,
            output,
        } => {
            let spec = poly.spec()?;
            let sch = pscheme::synthesize(&spec, prime(pv)?, r, max_states)?;
            match output {
                Some(path) => std::fs::write(path, sch.to_json())?,
                None => out.write_all(sch.to_json().as_bytes())?,
            }
            Ok(EXIT_PASS)
        }
        SchemeCommand::Eval { scheme, n_max, signed } => {
            let sch = read_scheme(&scheme)?;
            let m = sch.modulus();
            writeln!(out, "n\tvalue")?;
            for n in 0..=n_max {
                writeln!(out, "{n}\t{}", fmt_residue(sch.evaluate(n), m, signed))?;
            }
            Ok(EXIT_PASS)
        }
        SchemeCommand::Verify { scheme, poly, n_max } => {
            let sch = read_scheme(&scheme)?;
            let spec = poly.spec()?;
            let report = pscheme::verify(&sch, &spec, n_max)?;
            Ok(emit_reports(out, &[report])?)
        }
    }
}

/// Re-exported for callers that only need the digit helpers.
pub use congruence::digits;

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["ctlucas"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn eval_catalan() {
        let (code, out, _) = run_capture(&["eval", "--vars", "x", "--P", "x^-1+2+x", "--Q", "1-x", "--n-max", "5"]);
        assert_eq!(code, 0);
        assert_eq!(out, "n\tvalue\n0\t1\n1\t1\n2\t2\n3\t5\n4\t14\n5\t42\n");
    }

    #[test]
    fn eval_signed_residues() {
        let (code, out, _) = run_capture(&[
            "eval", "--vars", "x", "--P", "x^-1+2+x", "--Q", "1-x", "--n-max", "3", "--prime", "3", "--signed",
        ]);
        assert_eq!(code, 0);
        assert_eq!(out, "n\tvalue\n0\t1\n1\t1\n2\t-1\n3\t-1\n");
    }

    #[test]
    fn lucas_pass_and_fail() {
        let (code, out, _) = run_capture(&["lucas", "--vars", "x", "--P", "x^-1+1+x", "--primes", "2,3,5,7", "--n-max", "500"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 4);
        let (code, out, _) = run_capture(&["lucas", "--vars", "x", "--P", "x^-1+2+x", "--Q", "1-x", "--primes", "3", "--n-max", "30"]);
        assert_eq!(code, 1);
        assert!(out.contains("\"counterexample\""));
        let (code, _, _) = run_capture(&["lucas", "--sequence", "apery", "--primes", "5", "--n-max", "60"]);
        assert_eq!(code, 0);
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_capture(&["lucas", "--primes", "4", "--sequence", "apery", "--n-max", "3"]).0, 2);
        assert_eq!(run_capture(&["eval", "--vars", "x", "--P", "x^", "--n-max", "3"]).0, 2);
        assert_eq!(run_capture(&["eval", "--vars", "x", "--P", "y", "--n-max", "3"]).0, 2);
        assert_eq!(run_capture(&["bogus"]).0, 2);
        assert_eq!(run_capture(&["--help"]).0, 0);
    }

    #[test]
    fn glc_simple_inapplicable() {
        let (code, out, _) = run_capture(&[
            "glc-simple", "--vars", "x,y", "--P", "x+y+x*y+2*x^-1*y", "--Q", "x", "--primes", "3", "--n-max", "10",
        ]);
        assert_eq!(code, 2);
        assert!(out.contains("\"verdict\":\"inapplicable\""));
    }

    #[test]
    fn catalan_methods_agree() {
        let (_, direct, _) = run_capture(&["catalan", "--prime", "3", "--n-max", "20", "--method", "direct"]);
        for method in ["digits", "step", "mod3"] {
            let (code, out, _) = run_capture(&["catalan", "--prime", "3", "--n-max", "20", "--method", method]);
            assert_eq!(code, 0);
            assert_eq!(out, direct);
        }
        assert_eq!(run_capture(&["catalan", "--prime", "7", "--n-max", "2", "--method", "mod5"]).0, 2);
    }

    #[test]
    fn polytope_json() {
        let (code, out, _) = run_capture(&["polytope", "--vars", "x,y", "--P", "(1+x)*(1+y+1/(x*y))"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["origin_only_interior"], true);
        assert_eq!(v["vertices"].as_array().unwrap().len(), 5);
    }

    #[test]
    fn never_divides_list() {
        let (code, out, _) = run_capture(&["never-divides", "--bound", "12"]);
        assert_eq!(code, 0);
        assert_eq!(out, "[2,3,7,11]\n");
    }
}
