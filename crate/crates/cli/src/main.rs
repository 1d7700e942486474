use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};

use transit_anon::anonymity::Outputs;
use transit_anon::domain::parse_map;
use transit_anon::planners::Planner;
use transit_anon_cli::config::{expand, load_config};
use transit_anon_cli::gen::{gen_config, GenOptions};
use transit_anon_cli::render::Scene;
use transit_anon_cli::run::{execute, write_csv};

#[derive(Parser)]
#[command(
    name = "transit-anon",
    version,
    about = "Anonymized transit path planning"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every scenario in a config and write one CSV row per run.
    Run {
        config: PathBuf,
        /// CSV destination (standard output by default).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Directory for per-run partition and path dumps.
        #[arg(long)]
        audit: Option<PathBuf>,
    },
    /// Draw the outputs of a config's runs as ASCII, and optionally SVG.
    Render {
        config: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Which run (in CSV row order) to draw.
        #[arg(long, default_value_t = 0)]
        job: usize,
    },
    /// Emit a config with seeded random instances on a map.
    Gen {
        map: PathBuf,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
        /// Transit candidates per instance.
        #[arg(long, default_value_t = 8)]
        transit: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match dispatch(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Run {
            config,
            out,
            jobs,
            audit,
        } => {
            let (cfg, base) = load_config(&config)?;
            let (instances, planned) = expand(&cfg, &base)?;
            let results = execute(&instances, &planned, cfg.timing, jobs)?;
            let rows: Vec<_> = results.iter().map(|r| r.row.clone()).collect();
            match out {
                Some(path) => {
                    let file = fs::File::create(&path)
                        .with_context(|| format!("creating {}", path.display()))?;
                    write_csv(&rows, io::BufWriter::new(file))?;
                }
                None => write_csv(&rows, io::stdout().lock())?,
            }
            if let Some(dir) = audit {
                fs::create_dir_all(&dir)?;
                for (i, r) in results.iter().enumerate() {
                    fs::write(dir.join(format!("{i:04}.txt")), r.audit_text())?;
                }
            }
            let timed_out = results.iter().filter(|r| r.timed_out()).count();
            if timed_out > 0 {
                log::warn!("{timed_out} run(s) hit the time limit");
                return Ok(ExitCode::from(2));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Render { config, svg, job } => {
            let (cfg, base) = load_config(&config)?;
            let (instances, planned) = expand(&cfg, &base)?;
            let j = planned.get(job).with_context(|| {
                format!("run {job} out of range (config has {})", planned.len())
            })?;
            let built = instances[j.instance].build(j.r)?;
            let planner = Planner::new(&built.domain, built.s, built.g, j.planner)?;
            let outputs = Outputs::collect(&built.domain, |t| planner.plan(t));
            let scene = Scene::new(&built.domain, built.s, built.g, &outputs);
            let mut stdout = io::stdout().lock();
            writeln!(stdout, "{} {}", instances[j.instance].label, j.planner.kind)?;
            stdout.write_all(scene.ascii().as_bytes())?;
            if let Some(path) = svg {
                fs::write(&path, scene.svg())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen {
            map,
            count,
            seed,
            transit,
            k,
        } => {
            let text =
                fs::read_to_string(&map).with_context(|| format!("reading {}", map.display()))?;
            let grid = parse_map(&text)?;
            let opts = GenOptions {
                count,
                seed,
                transit,
                k,
            };
            let value = gen_config(&grid, &map, &opts)?;
            println!("{}", serde_json::to_string_pretty(&value)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}
