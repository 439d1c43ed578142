use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hbraid::braid::{braid_eq, perm_of};
use hbraid::combing::{comb_horizontal, comb_pgn_horizontal, comb_vertical};
use hbraid::conjrules::{verify_all, verify_pure_relations, RuleReport};
use hbraid::handlebody::{decompose, presentation_check, r1n_rank_witness};
use hbraid::hecke::{conjecture_probe, sigma_reduce, Basis, ReduceConfig, Strategy};
use hbraid::syntax::{parse_braid, parse_handle, parse_hecke, parse_pure};
use hbraid::wreath::project;
use hbraid::Error;

const CONVENTIONS: &str = "\
Conventions:
  B_m has strands 1..m and generators s1..s(m-1); words are read left to right.
  a<i>.<j> (1 <= i < j <= m) is the pure braid s(j-1)..s(i+1) s(i)^2 s(i+1)^-1..s(j-1)^-1.
  In B_{g,n} the strands 1..g are the fixed handle strands; t<k> (1 <= k <= g) is the loop
  a<k>.<g+1> and the crossings are s(g+1)..s(g+n-1). Column c of a wreath normal form
  is strand g+c.
  In Hecke words t<k> means t<k>.<g+1>; t<a>.<b> is the loop from handle a at strand b.
  Powers are written x^k, inverses x^-1; x^y = y^-1 x y.
Exit codes: 0 success, 1 negative verdict, 2 usage or input error, 3 reduction did not finish.";

#[derive(Parser)]
#[command(name = "hbraid", version, about = "Braid groups of handlebodies: normal forms, checks, Hecke algebras", after_help = CONVENTIONS)]
struct Cli {
    /// Output format (default plain; `hecke probe` defaults to json)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Words in the Artin braid group B_m
    #[command(subcommand, after_help = CONVENTIONS)]
    Braid(BraidCmd),
    /// Pure braid words in P_m
    #[command(subcommand, after_help = CONVENTIONS)]
    Pure(PureCmd),
    /// Handlebody braid words in B_{g,n}
    #[command(subcommand, after_help = CONVENTIONS)]
    Hb(HbCmd),
    /// Exhaustive relation checks
    #[command(subcommand)]
    Check(CheckCmd),
    /// The quotient by s_i^2 = 1
    #[command(subcommand, after_help = CONVENTIONS)]
    Wreath(WreathCmd),
    /// Hecke-type algebras H_{g,n}(q)
    #[command(subcommand, after_help = CONVENTIONS)]
    Hecke(HeckeCmd),
}

#[derive(Args)]
struct Strands {
    /// Number of strands
    #[arg(short = 'm')]
    m: u32,
}

#[derive(Args)]
struct Gn {
    /// Number of handles
    #[arg(short = 'g')]
    g: u32,
    /// Number of moving strands
    #[arg(short = 'n')]
    n: u32,
}

#[derive(Subcommand)]
enum BraidCmd {
    /// Decide whether two words are equal in B_m
    Eq {
        #[command(flatten)]
        s: Strands,
        w1: String,
        w2: String,
    },
    /// The permutation of a word
    Perm {
        #[command(flatten)]
        s: Strands,
        w: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Vertical,
    Horizontal,
}

#[derive(Subcommand)]
enum PureCmd {
    /// Combed normal form
    Comb {
        #[command(flatten)]
        s: Strands,
        #[arg(long, value_enum, default_value = "vertical")]
        mode: Mode,
        /// With horizontal mode, treat the first G strands as fixed (P_{G,m-G})
        #[arg(short = 'g')]
        g: Option<u32>,
        w: String,
    },
}

#[derive(Subcommand)]
enum HbCmd {
    /// The word as a braid on g+n strands
    Embed {
        #[command(flatten)]
        gn: Gn,
        w: String,
    },
    /// Forget the loops
    Phi {
        #[command(flatten)]
        gn: Gn,
        w: String,
    },
    /// Permutation of the moving strands
    Psi {
        #[command(flatten)]
        gn: Gn,
        w: String,
    },
    /// Free components of the kernel part and the B_n tail
    Rdecomp {
        #[command(flatten)]
        gn: Gn,
        w: String,
    },
    /// Sample words of B_{1,n} and check their kernel parts stay in <a1.2, …, a1.(n+1)>
    RankWitness {
        #[arg(short = 'n')]
        n: u32,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 10)]
        max_len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Defining relations of B_{g,n} through the embedding
    Presentation {
        #[command(flatten)]
        gn: Gn,
    },
    /// Conjugation rule tables and pure braid relations up to m strands
    Rules {
        #[command(flatten)]
        s: Strands,
    },
}

#[derive(Subcommand)]
enum WreathCmd {
    /// Normal form (h_1, …, h_n; perm) of a handlebody word
    Nf {
        #[command(flatten)]
        gn: Gn,
        w: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    Positive,
    Prime,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Leftmost,
    Rightmost,
}

#[derive(Args)]
struct Engine {
    /// Maximum number of rewriting steps per word
    #[arg(long, default_value_t = 20_000)]
    budget: usize,
    /// Loop letter family
    #[arg(long, value_enum, default_value = "positive")]
    basis: BasisArg,
}

impl Engine {
    fn config(&self, strategy: StrategyArg) -> ReduceConfig {
        ReduceConfig {
            basis: match self.basis {
                BasisArg::Positive => Basis::Positive,
                BasisArg::Prime => Basis::Prime,
            },
            strategy: match strategy {
                StrategyArg::Leftmost => Strategy::Leftmost,
                StrategyArg::Rightmost => Strategy::Rightmost,
            },
            budget: self.budget,
            ..ReduceConfig::default()
        }
    }
}

#[derive(Subcommand)]
enum HeckeCmd {
    /// Rewrite an expression into ordered words
    Reduce {
        #[command(flatten)]
        gn: Gn,
        #[command(flatten)]
        engine: Engine,
        #[arg(long, value_enum, default_value = "leftmost")]
        strategy: StrategyArg,
        /// e.g. "(q-1)*[s3] + q*[]"
        expr: String,
    },
    /// Reduce every generator word up to a length and cross-check at q = 1
    Probe {
        #[command(flatten)]
        gn: Gn,
        #[arg(long)]
        max_len: usize,
        #[command(flatten)]
        engine: Engine,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of sample words in the report
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
}

struct Out {
    format: Format,
    code: u8,
}

impl Out {
    fn emit(&self, plain: impl AsRef<str>, value: Value) {
        use std::io::Write;
        let text = match self.format {
            Format::Plain => plain.as_ref().to_string(),
            Format::Json => serde_json::to_string_pretty(&value).expect("json"),
        };
        // a closed pipe (e.g. `| head`) is not an error worth reporting
        let _ = writeln!(std::io::stdout(), "{text}");
    }
}

fn report_lines(r: &RuleReport, what: &str) -> (String, u8) {
    let bad: Vec<String> = r
        .instances
        .iter()
        .filter(|i| !i.holds)
        .map(|i| format!("FAIL {} (m={}): {} != {}", i.rule, i.m, i.lhs, i.rhs))
        .collect();
    if bad.is_empty() {
        (format!("all {} {what} instances hold", r.instances.len()), 0)
    } else {
        (format!("{}\n{} of {} {what} instances fail", bad.join("\n"), bad.len(), r.instances.len()), 1)
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    let fmt = cli.format.unwrap_or(Format::Plain);
    let mut out = Out { format: fmt, code: 0 };
    match cli.cmd {
        Cmd::Braid(BraidCmd::Eq { s, w1, w2 }) => {
            let (a, b) = (parse_braid(&w1, s.m)?, parse_braid(&w2, s.m)?);
            let eq = braid_eq(&a, &b)?;
            out.emit(if eq { "equal" } else { "unequal" }, json!({ "equal": eq }));
            out.code = if eq { 0 } else { 1 };
        }
        Cmd::Braid(BraidCmd::Perm { s, w }) => {
            let p = perm_of(&parse_braid(&w, s.m)?);
            out.emit(p.to_string(), json!({ "cycles": p.to_string(), "images": p.images() }));
        }
        Cmd::Pure(PureCmd::Comb { s, mode, g, w }) => {
            let p = parse_pure(&w, s.m)?;
            match (mode, g) {
                (Mode::Vertical, None) => {
                    let f = comb_vertical(&p)?;
                    let cols: Vec<Value> =
                        (2..=s.m).rev().map(|j| json!({ "column": j, "word": f.column(j).to_string() })).collect();
                    out.emit(f.to_string(), json!({ "mode": "vertical", "m": s.m, "components": cols }));
                }
                (Mode::Horizontal, None) => {
                    let f = comb_horizontal(&p)?;
                    let rows: Vec<Value> =
                        (1..s.m).map(|i| json!({ "row": i, "word": f.row(i).to_string() })).collect();
                    out.emit(f.to_string(), json!({ "mode": "horizontal", "m": s.m, "components": rows }));
                }
                (Mode::Horizontal, Some(g)) => {
                    if g >= s.m {
                        return Err(Error::Index(format!("-g {g} needs fewer than m = {} fixed strands", s.m)));
                    }
                    let f = comb_pgn_horizontal(&p, g, s.m - g)?;
                    let c = f.certify();
                    let text = format!("{}certificate: {}", f, if c.ok() { "ok" } else { "failed" });
                    out.emit(
                        text.trim_end(),
                        json!({
                            "mode": "horizontal", "g": g, "n": s.m - g,
                            "vbar": f.rows.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                            "tail": (g + 1..s.m).map(|i| f.tail.row(i).to_string()).collect::<Vec<_>>(),
                            "certificate": c,
                        }),
                    );
                    out.code = if c.ok() { 0 } else { 1 };
                }
                (Mode::Vertical, Some(_)) => {
                    return Err(Error::ParamMismatch("-g is only used with --mode horizontal".into()))
                }
            }
        }
        Cmd::Hb(cmd) => hb(cmd, &mut out)?,
        Cmd::Check(CheckCmd::Presentation { gn }) => {
            let r = presentation_check(gn.g, gn.n)?;
            let (text, code) = report_lines(&r, "relation");
            out.emit(text, json!({ "instances": r.instances.len(), "failures": r.failures(), "report": r }));
            out.code = code;
        }
        Cmd::Check(CheckCmd::Rules { s }) => {
            let rules = verify_all(s.m)?;
            let (t1, c1) = report_lines(&rules, "conjugation rule");
            let mut rels = RuleReport { max_m: s.m, instances: Vec::new() };
            for m in 3..=s.m {
                rels.instances.extend(verify_pure_relations(m)?.instances);
            }
            let (t2, c2) = report_lines(&rels, "pure braid relation");
            out.emit(
                format!("{t1}\n{t2}"),
                json!({
                    "rules": { "instances": rules.instances.len(), "failures": rules.failures() },
                    "relations": { "instances": rels.instances.len(), "failures": rels.failures() },
                }),
            );
            out.code = c1.max(c2);
        }
        Cmd::Wreath(WreathCmd::Nf { gn, w }) => {
            let x = project(&parse_handle(&w, gn.g, gn.n)?);
            let cols: Vec<String> = x.columns.iter().map(|c| c.to_string()).collect();
            out.emit(x.to_string(), json!({ "columns": cols, "perm": x.perm.to_string(), "images": x.perm.images() }));
        }
        Cmd::Hecke(HeckeCmd::Reduce { gn, engine, strategy, expr }) => {
            let e = parse_hecke(&expr, gn.g)?;
            match sigma_reduce(&e, gn.g, gn.n, &engine.config(strategy))? {
                Ok(r) => out.emit(r.element.to_string(), json!({ "steps": r.steps, "result": r.element })),
                Err(f) => {
                    let text = format!(
                        "reduction did not finish: {} after {} steps, {} pending terms\n{}",
                        f.reason,
                        f.steps,
                        f.pending_terms,
                        f.stuck.join("\n")
                    );
                    out.emit(text, json!({ "failure": f }));
                    out.code = 3;
                }
            }
        }
        Cmd::Hecke(HeckeCmd::Probe { gn, max_len, engine, seed, samples }) => {
            out.format = cli.format.unwrap_or(Format::Json);
            let r = conjecture_probe(gn.g, gn.n, max_len, &engine.config(StrategyArg::Leftmost), seed, samples)?;
            let text = format!(
                "words: {}\nreduced: {}\nfailed: {} (budget {}, no rule {})\ncollisions: {}\nq=1 mismatches: {}\nsuccess rate: {:.4}",
                r.total, r.reduced, r.failed, r.budget_exhausted, r.no_rule, r.collisions, r.q1_mismatches, r.success_rate
            );
            out.emit(text, serde_json::to_value(&r).expect("json"));
            out.code = if r.q1_mismatches > 0 || r.collisions > 0 { 1 } else { 0 };
        }
    }
    Ok(out.code)
}

fn hb(cmd: HbCmd, out: &mut Out) -> Result<(), Error> {
    match cmd {
        HbCmd::Embed { gn, w } => {
            let b = parse_handle(&w, gn.g, gn.n)?.embed();
            out.emit(b.to_string(), json!({ "strands": b.strands(), "word": b.to_string() }));
        }
        HbCmd::Phi { gn, w } => {
            let h = parse_handle(&w, gn.g, gn.n)?.phi();
            out.emit(h.to_string(), json!({ "word": h.to_string() }));
        }
        HbCmd::Psi { gn, w } => {
            let p = parse_handle(&w, gn.g, gn.n)?.psi();
            out.emit(p.to_string(), json!({ "cycles": p.to_string(), "images": p.images() }));
        }
        HbCmd::Rdecomp { gn, w } => {
            let d = decompose(&parse_handle(&w, gn.g, gn.n)?)?;
            let ok = d.certify();
            let comps: Vec<Value> = (gn.g + 1..=gn.g + gn.n)
                .map(|k| json!({ "strand": k, "word": d.component(k).to_string() }))
                .collect();
            out.emit(
                format!("{d}\ncertificate: {}", if ok { "ok" } else { "failed" }),
                json!({ "components": comps, "tail": d.tail.to_string(), "certified": ok }),
            );
            out.code = if ok { 0 } else { 1 };
        }
        HbCmd::RankWitness { n, samples, max_len, seed } => {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let r = r1n_rank_witness(n, samples, max_len, &mut rng)?;
            out.emit(
                format!("{} samples, alphabet {}: {}", r.samples, r.alphabet.join(" "), if r.ok { "ok" } else { "failed" }),
                serde_json::to_value(&r).expect("json"),
            );
            out.code = if r.ok { 0 } else { 1 };
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
