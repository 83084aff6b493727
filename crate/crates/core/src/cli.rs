//! Command-line dispatch for the `pdesolve` binary.
//!
//! Commands read one JSON problem document (file argument or stdin), run the
//! requested computation, and write either JSON or pretty text to stdout.
//! Exit codes separate the three outcomes: 0 for success, 1 when the
//! mathematics raises a diagnostic (a reducible candidate ideal, a prime
//! that fails verification, a cap), 2 for malformed input.  The engine is
//! deterministic throughout, so equal inputs produce identical bytes; the
//! `--seed` option is accepted as a stable interface for reproducibility
//! control and does not influence any result.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::io::Read;
use std::sync::Arc;

use crate::duality::{membership_test, verify_solution};
use crate::field::Rationals;
use crate::frobenius::{distraction_system, TorusFixedGenerator};
use crate::groebner::Submodule;
use crate::json::{
    build_module, candidate_vector, ideal_strings, parse_primes, read_problem, solution_output,
    ProblemInput,
};
use crate::monomial::{Monomial, MonomialOrder};
use crate::net::{ideal_net, solution_text};
use crate::parse::parse_poly;
use crate::poly::Ring;
use crate::render::{render_solution, RenderMode};
use crate::solver::{
    characteristic_variety, polynomial_solutions, polynomial_solutions_up_to, solve_pde,
    PolySolutions, SolveOptions,
};
use crate::{Error, Result};

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum OrderArg {
    Grevlex,
    Lex,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum FormatArg {
    Json,
    Text,
}

#[derive(Args, Clone, Debug)]
pub struct Common {
    /// Problem JSON file; `-` or absent reads standard input.
    pub input: Option<String>,

    /// Term order for reported ideal bases.
    #[arg(long, value_enum)]
    pub order: Option<OrderArg>,

    /// Reproducibility control; all computations are deterministic, so the
    /// output never depends on it.
    #[arg(long)]
    pub seed: Option<u64>,

    /// JSON file with candidate support primes (a list of generator lists);
    /// each one must verify as associated.
    #[arg(long)]
    pub primes: Option<String>,

    /// Degree cap for the per-prime multiplier search.
    #[arg(long)]
    pub max_r: Option<u32>,

    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,

    /// Raise default search caps for slow inputs.
    #[arg(long)]
    pub extended: bool,
}

#[derive(Parser, Debug)]
#[command(
    name = "pdesolve",
    version,
    about = "Exact solver for linear PDE systems with constant coefficients"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Full differential primary decomposition of the system.
    Solve(Common),
    /// Arithmetic multiplicity: the total number of multipliers.
    Amult(Common),
    /// Decide membership of the `candidate` vector through the certificates.
    Membership(Common),
    /// Re-verify every multiplier against every generator.
    Verify(Common),
    /// Minimal primes of the annihilator: the support of the solutions.
    Charvariety(Common),
    /// Basis of the polynomial solutions.
    Polysols {
        #[command(flatten)]
        common: Common,
        /// Restrict to total degree <= DEGREE via plain linear algebra, an
        /// independent path that bypasses the decomposition.
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Euler-operator systems: solve the distraction, render with logs.
    /// Generators are polynomials in the reserved symbols t1..tn.
    Frobenius(Common),
}

/// Everything derived from the flags and the document's options block.
struct Effective {
    order: MonomialOrder,
    format: FormatArg,
    solve: SolveOptions,
}

fn read_input(common: &Common) -> Result<String> {
    match common.input.as_deref() {
        None | Some("-") => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Error::Input(format!("reading stdin: {}", e)))?;
            Ok(buf)
        }
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("reading {}: {}", path, e))),
    }
}

fn effective(
    common: &Common,
    problem: &ProblemInput,
    ring: &Arc<Ring<Rationals>>,
) -> Result<Effective> {
    let doc = problem.options.clone().unwrap_or_default();
    let order = match common.order {
        Some(OrderArg::Grevlex) => MonomialOrder::GrevLex,
        Some(OrderArg::Lex) => MonomialOrder::Lex,
        None => match doc.order.as_deref() {
            None | Some("grevlex") => MonomialOrder::GrevLex,
            Some("lex") => MonomialOrder::Lex,
            Some(other) => {
                return Err(Error::Input(format!("unknown order {:?}", other)));
            }
        },
    };
    let primes_path = common.primes.clone().or(doc.primes_file);
    let provided_primes = match primes_path {
        None => None,
        Some(path) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::Input(format!("reading {}: {}", path, e)))?;
            Some(
                parse_primes(ring, &text)?
                    .into_iter()
                    .collect(),
            )
        }
    };
    let default_r = if common.extended { 64 } else { 32 };
    let max_r = common.max_r.or(doc.max_r).unwrap_or(default_r);
    Ok(Effective {
        order,
        format: common.format,
        solve: SolveOptions { max_r, provided_primes },
    })
}

fn load(common: &Common) -> Result<(ProblemInput, Arc<Ring<Rationals>>, Submodule<Rationals>, Effective)> {
    let text = read_input(common)?;
    let problem = read_problem(&text)?;
    let (ring, module) = build_module(&problem)?;
    let eff = effective(common, &problem, &ring)?;
    Ok((problem, ring, module, eff))
}

fn json_line<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn run_command(cmd: &Command) -> Result<String> {
    match cmd {
        Command::Solve(common) => {
            let (_, _, module, eff) = load(common)?;
            let sol = solve_pde(&module, &eff.solve)?;
            let text = solution_text(&sol);
            match eff.format {
                FormatArg::Text => Ok(format!("{}\n", text)),
                FormatArg::Json => {
                    Ok(json_line(&solution_output(&sol, eff.order, text)))
                }
            }
        }
        Command::Amult(common) => {
            let (_, _, module, eff) = load(common)?;
            let sol = solve_pde(&module, &eff.solve)?;
            Ok(format!("{}\n", sol.amult()))
        }
        Command::Membership(common) => {
            let (problem, ring, module, eff) = load(common)?;
            let w = candidate_vector(&problem, &ring)?.ok_or_else(|| {
                Error::Input("membership needs a \"candidate\" vector".into())
            })?;
            let sol = solve_pde(&module, &eff.solve)?;
            Ok(format!("{}\n", membership_test(&sol, &w)?))
        }
        Command::Verify(common) => {
            let (_, _, module, eff) = load(common)?;
            let sol = solve_pde(&module, &eff.solve)?;
            Ok(format!("{}\n", verify_solution(&module, &sol)))
        }
        Command::Charvariety(common) => {
            let (_, _, module, eff) = load(common)?;
            let primes = characteristic_variety(&module)?;
            match eff.format {
                FormatArg::Text => {
                    let mut out = String::new();
                    for p in &primes {
                        out.push_str(&ideal_net(&p.ideal).render());
                        out.push('\n');
                    }
                    Ok(out)
                }
                FormatArg::Json => {
                    let doc: Vec<serde_json::Value> = primes
                        .iter()
                        .map(|p| {
                            serde_json::json!({
                                "prime": ideal_strings(&p.ideal, eff.order.clone()),
                                "certificate": format!("{:?}", p.certificate).to_lowercase(),
                            })
                        })
                        .collect();
                    Ok(json_line(&doc))
                }
            }
        }
        Command::Polysols { common, degree } => {
            let (_, _, module, eff) = load(common)?;
            let basis = match degree {
                Some(d) => Some(polynomial_solutions_up_to(&module, *d)?),
                None => match polynomial_solutions(&module, &eff.solve)? {
                    PolySolutions::Finite(b) => Some(b),
                    PolySolutions::Infinite { witness } => {
                        let doc = serde_json::json!({
                            "infinite": true,
                            "witness": ideal_strings(&witness, eff.order.clone()),
                        });
                        return Ok(match eff.format {
                            FormatArg::Json => json_line(&doc),
                            FormatArg::Text => format!(
                                "infinite-dimensional: supported on {}\n",
                                ideal_net(&witness).render()
                            ),
                        });
                    }
                },
            };
            let basis = basis.unwrap();
            match eff.format {
                FormatArg::Text => {
                    let mut out = String::new();
                    for v in &basis {
                        out.push_str(&format!("{}\n", v));
                    }
                    Ok(out)
                }
                FormatArg::Json => {
                    let doc = serde_json::json!({
                        "dimension": basis.len(),
                        "basis": basis
                            .iter()
                            .map(|v| {
                                v.entries.iter().map(|p| p.to_string()).collect::<Vec<_>>()
                            })
                            .collect::<Vec<_>>(),
                    });
                    Ok(json_line(&doc))
                }
            }
        }
        Command::Frobenius(common) => {
            let text = read_input(common)?;
            let problem = read_problem(&text)?;
            if problem.k != 1 {
                return Err(Error::Input("frobenius systems are scalar: k must be 1".into()));
            }
            let n = problem.ring.variables.len();
            if n == 0 {
                return Err(Error::Input("the ring needs at least one variable".into()));
            }
            let (ring, _) = {
                // Validate the declared ring names even though generators are
                // written in the reserved t-symbols.
                build_module(&ProblemInput { generators: vec![], ..problem.clone() })?
            };
            let tring = Ring::new(
                Rationals,
                (1..=n).map(|i| format!("t{}", i)).collect::<Vec<_>>(),
            );
            let idmap: Vec<usize> = (0..n).collect();
            let mut gens = Vec::new();
            for row in &problem.generators {
                if row.len() != 1 {
                    return Err(Error::Input("frobenius generators are single expressions".into()));
                }
                let p = parse_poly(&tring, &row[0])?.embed(&ring, &idmap);
                gens.push(TorusFixedGenerator {
                    a: Monomial::one(n),
                    p,
                    b: Monomial::one(n),
                });
            }
            let system = distraction_system(&gens);
            let eff = effective(common, &problem, &ring)?;
            let module = Submodule::new(
                &ring,
                1,
                system
                    .gens_poly()
                    .into_iter()
                    .map(|p| crate::poly::PolyVector::new(vec![p]))
                    .collect(),
            );
            let sol = solve_pde(&module, &eff.solve)?;
            let rendered = render_solution(&sol, RenderMode::Logarithmic);
            match eff.format {
                FormatArg::Text => Ok(format!("{}\n", rendered)),
                FormatArg::Json => {
                    Ok(json_line(&solution_output(&sol, eff.order, rendered)))
                }
            }
        }
    }
}

/// Parse the process arguments, run, and report the exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match run_command(&cli.command) {
        Ok(output) => {
            print!("{}", output);
            0
        }
        Err(e) => {
            eprintln!("error: {}", e);
            if e.is_math() {
                1
            } else {
                2
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn common_for(path: &str) -> Common {
        Common {
            input: Some(path.to_string()),
            order: None,
            seed: None,
            primes: None,
            max_r: None,
            format: FormatArg::Text,
            extended: false,
        }
    }

    fn write_temp(name: &str, contents: &str) -> String {
        let dir = std::env::temp_dir().join("pdesolve-cli-tests");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(name);
        std::fs::write(&path, contents).unwrap();
        path.to_string_lossy().into_owned()
    }

    #[test]
    fn solve_text_produces_the_classical_line() {
        let path = write_temp(
            "ode.json",
            r#"{"ring": {"variables": ["x"]}, "k": 1,
                "generators": [["x^3 + 3*x^2 - 9*x + 5"]]}"#,
        );
        let out = run_command(&Command::Solve(common_for(&path))).unwrap();
        assert_eq!(
            out,
            "{{ideal(x - 1), {| 1 |, | dx |}}, {ideal(x + 5), {| 1 |}}}\n"
        );
    }

    #[test]
    fn solve_json_documents_the_components() {
        let path = write_temp(
            "ode2.json",
            r#"{"ring": {"variables": ["x"]}, "k": 1,
                "generators": [["x^3 + 3*x^2 - 9*x + 5"]]}"#,
        );
        let mut c = common_for(&path);
        c.format = FormatArg::Json;
        let out = run_command(&Command::Solve(c)).unwrap();
        let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["amult"], 3);
        assert_eq!(doc["components"][0]["prime"][0], "x - 1");
        assert_eq!(doc["components"][0]["multipliers"][1][0], "dx");
    }

    #[test]
    fn membership_answers_true_and_false() {
        let path = write_temp(
            "member.json",
            r#"{"ring": {"variables": ["x1", "x2"]}, "k": 1,
                "generators": [["x1^2"], ["x1*x2"]],
                "candidate": ["x1^2*x2^3"]}"#,
        );
        let out = run_command(&Command::Membership(common_for(&path))).unwrap();
        assert_eq!(out, "true\n");
        let path = write_temp(
            "member2.json",
            r#"{"ring": {"variables": ["x1", "x2"]}, "k": 1,
                "generators": [["x1^2"], ["x1*x2"]],
                "candidate": ["x1"]}"#,
        );
        let out = run_command(&Command::Membership(common_for(&path))).unwrap();
        assert_eq!(out, "false\n");
    }

    #[test]
    fn frobenius_renders_the_log_formula() {
        let path = write_temp(
            "frob.json",
            r#"{"ring": {"variables": ["x1", "x2", "x3"]}, "k": 1,
                "generators": [["t2^2"], ["t3^2"], ["t2 - t1*t3"]]}"#,
        );
        let out = run_command(&Command::Frobenius(common_for(&path))).unwrap();
        assert_eq!(out, "A(z1) + z1*log(z2)*B'(z1) + log(z3)*B(z1)\n");
    }

    #[test]
    fn provided_primes_must_be_associated() {
        let primes = write_temp("primes.json", r#"[["x1 - 7"]]"#);
        let path = write_temp(
            "bad.json",
            r#"{"ring": {"variables": ["x1"]}, "k": 1, "generators": [["x1^2"]]}"#,
        );
        let mut c = common_for(&path);
        c.primes = Some(primes);
        let err = run_command(&Command::Solve(c)).unwrap_err();
        assert!(err.is_math());
    }

    #[test]
    fn polysols_degree_path_counts_dimensions() {
        let path = write_temp(
            "poly.json",
            r#"{"ring": {"variables": ["x1", "x2"]}, "k": 1,
                "generators": [["x1^2"], ["x1*x2"], ["x2^2"]]}"#,
        );
        let mut c = common_for(&path);
        c.format = FormatArg::Json;
        let out = run_command(&Command::Polysols { common: c, degree: Some(3) }).unwrap();
        let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["dimension"], 3);
        let c = common_for(&path);
        let out = run_command(&Command::Polysols { common: c, degree: None }).unwrap();
        assert_eq!(out.lines().count(), 3);
    }

    #[test]
    fn charvariety_lists_the_support() {
        let path = write_temp(
            "char.json",
            r#"{"ring": {"variables": ["x1", "x2"]}, "k": 1,
                "generators": [["x1^2 - x1"]]}"#,
        );
        let out = run_command(&Command::Charvariety(common_for(&path))).unwrap();
        assert_eq!(out, "ideal(x1)\nideal(x1 - 1)\n");
    }

    #[test]
    fn verify_confirms_a_solution() {
        let path = write_temp(
            "verify.json",
            r#"{"ring": {"variables": ["x1", "x2"]}, "k": 2,
                "generators": [["x1", "x2"], ["x1*x2", "x1"], ["x2", "x1*x2"]]}"#,
        );
        let out = run_command(&Command::Verify(common_for(&path))).unwrap();
        assert_eq!(out, "true\n");
    }
}
