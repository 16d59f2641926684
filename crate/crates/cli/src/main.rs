use std::collections::BTreeSet;
use std::net::{IpAddr, Ipv4Addr, SocketAddr};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rampgen::batch::{run_batch, Manifest};
use rampgen::request::{Format, Prepared};
use rampgen::server::{self, AppState};
use rampgen_core::compliance::RuleSet;

/// Accessibility ramp generator.
#[derive(Debug, Parser)]
#[command(name = "rampgen", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate one ramp. Exits 0 on a compliant ramp, 2 when infeasible, 1 on bad input.
    Generate {
        /// Environment JSON file.
        #[arg(long)]
        env: PathBuf,
        /// Parameter overrides (JSON, any subset of the defaults).
        #[arg(long)]
        params: Option<PathBuf>,
        /// Output directory.
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Comma-separated list from obj, stl, report, mesh. The report is always written.
        #[arg(long, default_value = "obj,stl,report,mesh")]
        formats: String,
    },
    /// Run a manifest of cases and print a summary table.
    Batch {
        /// Manifest JSON; file references resolve against its directory
        #[arg(long)]
        manifest: PathBuf,
        /// Write each case to <OUT>/<id>/ and the summary to <OUT>/summary.json
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Serve the HTTP API (and optionally a static UI bundle).
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value_t = IpAddr::V4(Ipv4Addr::LOCALHOST))]
        host: IpAddr,
        /// Directory served for any path outside the API
        #[arg(long = "static")]
        static_dir: Option<PathBuf>,
    },
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let rules = match RuleSet::from_env() {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let materials = match rampgen::materials_from_env() {
        Ok(m) => m,
        Err(e) => return fail(e),
    };

    match cli.command {
        Command::Generate {
            env,
            params,
            out,
            formats,
        } => {
            let mut outputs: BTreeSet<Format> = match Format::parse_list(&formats) {
                Ok(f) => f,
                Err(e) => return fail(e),
            };
            outputs.insert(Format::Report);
            let prepared = match Prepared::from_files(&env, params.as_deref(), outputs) {
                Ok(p) => p,
                Err(e) => return fail(e),
            };
            let outcome = prepared.run(&rules, &materials);
            if let Err(e) = outcome.write(&out) {
                return fail(e);
            }
            println!("score {}: {}", outcome.score, outcome.message);
            ExitCode::from(outcome.exit_code() as u8)
        }
        Command::Batch { manifest, out } => {
            let summary = Manifest::load(&manifest).and_then(|m| run_batch(&m, &rules, &materials, out.as_deref()));
            match summary {
                Ok(s) => {
                    print!("{}", s.table());
                    ExitCode::from(if s.all_ok { 0 } else { 2 })
                }
                Err(e) => fail(e),
            }
        }
        Command::Serve { port, host, static_dir } => {
            let rt = match tokio::runtime::Builder::new_multi_thread().enable_all().build() {
                Ok(rt) => rt,
                Err(e) => return fail(e),
            };
            let state = AppState { rules, materials };
            match rt.block_on(server::serve(SocketAddr::new(host, port), state, static_dir)) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(e),
            }
        }
    }
}
