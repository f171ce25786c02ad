use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use mirror_guard::cover::Mode;
use mirror_guard::pipeline::{render_svg, solve, Instance, SvgOptions};
use mirror_guard::scr::LineLevel;
use mirror_guard::Error;

#[derive(Parser)]
#[command(name = "mirror-guard", version, about = "Guard placement in polygons with mirror edges")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Place guards for a JSON instance.
    Solve {
        file: PathBuf,
        /// Ignore mirrors: plain line of sight only.
        #[arg(long)]
        direct_only: bool,
        #[arg(long, value_name = "K")]
        line_cap: Option<usize>,
        /// Arrangement lines: full, pairs, visible or edges.
        #[arg(long, value_name = "LEVEL")]
        lines: Option<LineLevel>,
        /// Also solve the cover exactly (small instances).
        #[arg(long)]
        exact_cover: bool,
        #[arg(long, value_name = "N")]
        exact_cap: Option<usize>,
        /// Check coverage on N random interior points.
        #[arg(long, value_name = "N")]
        verify: Option<usize>,
        #[arg(long, value_name = "S")]
        seed: Option<u64>,
        #[arg(long, value_name = "FILE")]
        svg: Option<PathBuf>,
        /// Cell whose guarding-regions the SVG shows.
        #[arg(long, value_name = "ID")]
        svg_cell: Option<usize>,
        #[arg(long, value_name = "FILE")]
        report: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e.downcast_ref::<Error>() {
                Some(Error::LineBudgetExceeded(_)) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let Cmd::Solve { file, direct_only, line_cap, lines, exact_cover, exact_cap, verify, seed, svg, svg_cell, report } = cli.cmd;
    let text = std::fs::read_to_string(&file)?;
    let mut inst = Instance::from_json(&text)?;
    let o = &mut inst.options;
    if direct_only {
        o.mode = Mode::DirectOnly;
    }
    if let Some(k) = line_cap {
        o.line_cap = k;
    }
    if let Some(l) = lines {
        o.line_level = l;
    }
    if exact_cover {
        o.exact_cover = true;
    }
    if let Some(c) = exact_cap {
        o.exact_cap = c;
    }
    if let Some(n) = verify {
        o.samples = n;
    }
    if let Some(s) = seed {
        o.seed = s;
    }
    let run = solve(&inst)?;
    let r = &run.report;
    println!("cells {}  temp-sub-regions {}  guarding-regions {}", r.scr_count, r.tsr_count, r.gr_count);
    print!("greedy {}", r.greedy_size);
    if let Some(x) = r.exact_size {
        print!("  exact {x}");
    }
    if let Some(e) = &r.exact_error {
        print!("  exact failed: {e}");
    }
    println!();
    for g in &r.guards {
        println!("guard {} {}", g[0], g[1]);
    }
    if let Some(path) = report {
        std::fs::write(path, r.to_json(true))?;
    }
    if let Some(path) = svg {
        let opts = SvgOptions { selected_scr: svg_cell, reflected: None };
        std::fs::write(path, render_svg(&inst, &run, &opts))?;
    }
    if let Some(v) = &r.verify {
        if v.pass {
            println!("verify: pass ({} samples)", v.samples);
        } else {
            println!("verify: FAIL ({} of {} samples uncovered)", v.failures.len(), v.samples);
            return Ok(ExitCode::from(3));
        }
    }
    Ok(ExitCode::SUCCESS)
}
