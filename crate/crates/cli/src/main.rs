//! `trk`: command-line front end for the TR- and K-group calculators.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage error, 3 domain error,
//! 4 verification failure.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use trk::integral::is_stable_level;
use trk::verify::{run_suite, Suite, DEFAULT_SEED};
use trk::{
    dual_structure, find_stable_level, integral_odd_order, integral_rank, k_group, k_table,
    limr_left, limr_left_decomposition, limr_middle, limr_middle_decomposition, limr_vm_coker,
    modp_group, tr_group, AbelianGroupInfo, Parity, Prime, Rep,
};

use output::*;

#[derive(Parser)]
#[command(name = "trk", version, about = "Exact TR-groups of Z and K-groups of Z[x]/(x^m)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// K_q(Z[x]/(x^m), (x))
    K {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        json: bool,
    },
    /// TR^n_{q-λ}(Z; p)
    Tr {
        #[arg(long, value_parser = parse_prime)]
        p: Prime,
        #[arg(long)]
        n: u64,
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
        /// `0`, `d:<n>` for λ_n, or `w:<c1,c2,...>`
        #[arg(long, default_value = "0")]
        lambda: Rep,
        #[arg(long)]
        json: bool,
    },
    /// TR^n_{q-λ}(Z; p, Z/p)
    Modp {
        #[arg(long, value_parser = parse_prime)]
        p: Prime,
        #[arg(long)]
        n: u64,
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
        #[arg(long, default_value = "0")]
        lambda: Rep,
        #[arg(long)]
        json: bool,
    },
    /// TR^r_{q-λ}(Z), the integral group at level r
    Integral {
        #[arg(long)]
        r: u64,
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
        #[arg(long, default_value = "0")]
        lambda: Rep,
        #[arg(long)]
        json: bool,
    },
    /// Limit groups over r in degree 2i or 2i-1
    Limr {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        i: u64,
        #[arg(long, value_enum, default_value = "odd")]
        parity: ParityArg,
        #[arg(long, value_enum, default_value = "middle")]
        term: Term,
        /// Also print the p-primary decomposition (middle and left terms only)
        #[arg(long, value_parser = parse_prime)]
        p: Option<Prime>,
        #[arg(long)]
        json: bool,
    },
    /// K_{2i}(Z[x]/(x^2), (x)) prime by prime
    Dual {
        #[arg(long)]
        i: u64,
        #[arg(long)]
        json: bool,
    },
    /// Smallest level r at which the integral groups have stabilized
    Stable {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        q: i64,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite
    Verify {
        #[arg(long, value_enum, default_value = "identities")]
        suite: SuiteArg,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Table of K_q(Z[x]/(x^m), (x)) for m <= m-max, q <= 2 i-max + 1
    Table {
        #[arg(long)]
        m_max: u64,
        #[arg(long)]
        i_max: u64,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Report orders only, even where the structure is known
        #[arg(long)]
        order_only: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Term {
    Middle,
    Left,
    Coker,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Identities,
    Paper,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Md,
    Csv,
    Json,
}

fn parse_prime(s: &str) -> Result<Prime, String> {
    let n: u64 = s.parse().map_err(|e| format!("{e}"))?;
    Prime::new(n).map_err(|e| e.to_string())
}

enum Failure {
    Domain(trk::Error),
    Io(String),
    Verification,
}

impl From<trk::Error> for Failure {
    fn from(e: trk::Error) -> Self {
        Failure::Domain(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::try_parse().unwrap_or_else(|e| e.exit());
    match run(cli.command) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification) => ExitCode::from(4),
    }
}

fn run(command: Command) -> Result<String, Failure> {
    Ok(match command {
        Command::K { m, q, json } => {
            let g = k_group(m, q)?;
            group_document(json!({ "m": m, "q": q }), &format!("K_{q}(Z[x]/(x^{m}),(x))"), &g, json)
        }
        Command::Tr { p, n, q, lambda, json } => {
            let g = tr_group(p, n, q, &lambda)?;
            let query = json!({ "p": p.get(), "n": n, "q": q, "lambda": lambda.to_string() });
            group_document(query, &format!("TR^{n}_{{{q}-{lambda}}}(Z;{p})"), &g, json)
        }
        Command::Modp { p, n, q, lambda, json } => {
            let g = modp_group(p, n, q, &lambda)?;
            let query = json!({ "p": p.get(), "n": n, "q": q, "lambda": lambda.to_string() });
            group_document(query, &format!("TR^{n}_{{{q}-{lambda}}}(Z;{p},Z/{p})"), &g, json)
        }
        Command::Integral { r, q, lambda, json } => {
            let rank = integral_rank(r, q, &lambda)?;
            let g = if q.rem_euclid(2) == 1 {
                AbelianGroupInfo::order_only(rank, integral_odd_order(r, (q + 1) / 2, &lambda)?)
            } else {
                AbelianGroupInfo::free(rank)
            };
            let query = json!({ "r": r, "q": q, "lambda": lambda.to_string() });
            group_document(query, &format!("TR^{r}_{{{q}-{lambda}}}(Z)"), &g, json)
        }
        Command::Limr { m, i, parity, term, p, json } => limr(m, i, parity, term, p, json)?,
        Command::Dual { i, json } => {
            let d = dual_structure(i)?;
            if json {
                to_json(&dual_json(&d))
            } else {
                dual_text(&d)
            }
        }
        Command::Stable { m, q, json } => {
            let r = find_stable_level(m, q)?;
            let minimal = trk::integral::stable_level_is_minimal(m, q, r)?;
            let stable = is_stable_level(m, q, r)?;
            if json {
                to_json(&json!({ "query": { "m": m, "q": q }, "level": r, "stable": stable, "minimal": minimal }))
            } else {
                format!("stable level for m = {m}, q = {q}: r = {r} (stable: {stable}, minimal: {minimal})\n")
            }
        }
        Command::Verify { suite, seed, json } => {
            let suite = match suite {
                SuiteArg::Identities => Suite::Identities,
                SuiteArg::Paper => Suite::Paper,
            };
            let report = run_suite(suite, seed);
            let text = if json { to_json(&report_json(&report)) } else { report_text(&report) };
            if !report.passed() {
                print!("{text}");
                return Err(Failure::Verification);
            }
            text
        }
        Command::Table { m_max, i_max, format, out, order_only } => {
            let rows = k_table(m_max, i_max, !order_only)?;
            let text = match format {
                Format::Md => table_markdown(&rows),
                Format::Csv => table_csv(&rows).map_err(|e| Failure::Io(e.to_string()))?,
                Format::Json => table_json(&rows),
            };
            match out {
                Some(path) => {
                    std::fs::write(&path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
                    String::new()
                }
                None => text,
            }
        }
    })
}

fn limr(m: u64, i: u64, parity: ParityArg, term: Term, p: Option<Prime>, json: bool) -> Result<String, Failure> {
    let parity = match parity {
        ParityArg::Even => Parity::Even,
        ParityArg::Odd => Parity::Odd,
    };
    let (g, name) = match term {
        Term::Middle => (limr_middle(m, i, parity)?, "middle"),
        Term::Left => (limr_left(m, i, parity)?, "left"),
        Term::Coker => (limr_vm_coker(m, i, parity)?, "coker"),
    };
    let decomposition = match (p, term) {
        (Some(p), Term::Middle) => Some(limr_middle_decomposition(p, m, i)?),
        (Some(p), Term::Left) => Some(limr_left_decomposition(p, m, i)?),
        _ => None,
    };
    let degree = match parity {
        Parity::Odd => format!("{}", 2 * i as i64 - 1),
        Parity::Even => format!("{}", 2 * i),
    };
    let label = format!("lim_r {name} term, m = {m}, degree {degree}");
    let parity_name = if parity == Parity::Odd { "odd" } else { "even" };
    let query = json!({ "m": m, "i": i, "parity": parity_name, "term": name });
    if json {
        let mut doc = group_json(&g);
        doc["query"] = query;
        doc["label"] = json!(label);
        if let Some(d) = &decomposition {
            doc["decomposition"] = decomposition_json(d);
        }
        Ok(to_json(&doc))
    } else {
        let mut text = group_text(&label, &g);
        if let Some(d) = &decomposition {
            text += &decomposition_text(d);
        }
        Ok(text)
    }
}
