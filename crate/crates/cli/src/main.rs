use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use persnerve::campaign::{run_campaign, run_campaign_on, run_cylinder_checks, CampaignConfig};
use persnerve::geometry::{
    alpha2d_filtration, cech_filtration, load_point_cloud, CloudFormat, GeometricFiltration, RealInterval,
};
use persnerve::io::{parse_cover, parse_filtered_complex, ComplexDoc, FilteredComplexDoc, FilteredCoverDoc, VerifyInputDoc};
use persnerve::order::nerve;
use persnerve::persistence::{nerve_filtration, persistence_barcode, Barcode, PersistentBettiTable};
use persnerve::Error;

#[derive(Parser)]
#[command(name = "persnerve", version, about = "Filtered complexes, nerves and persistent homology")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Čech filtration of a point cloud and its barcode
    Cech {
        cloud: PathBuf,
        /// top homological degree; simplices go one dimension higher
        #[arg(long, default_value_t = 1)]
        max_dim: usize,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long, default_value_t = 2)]
        field: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Alpha filtration of a planar point cloud and its barcode
    Alpha2d {
        cloud: PathBuf,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long, default_value_t = 2)]
        field: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Barcode of a filtered complex
    Persistence {
        filtration: PathBuf,
        #[arg(long, default_value_t = 2)]
        field: u32,
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
        /// include persistent Betti numbers for every (k, level, p)
        #[arg(long)]
        table: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Nerve of a cover, or nerve filtration of a filtered cover
    Nerve {
        cover: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification campaign
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        instances: usize,
        /// random cycles per instance and level pair
        #[arg(long, default_value_t = 5)]
        cycles: usize,
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
        #[arg(long, default_value_t = 2)]
        field: u32,
        /// uncertified intersections count as hypothesis violations
        #[arg(long)]
        strict: bool,
        #[arg(long, default_value_t = 200)]
        cylinder_pairs: usize,
        /// check one hand-built filtered cover instead of generated ones
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the mapping-cylinder boundary formula on random chains
    CylinderCheck {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        pairs: usize,
        #[arg(long, default_value_t = 5)]
        max_degree: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Input or hypothesis problems; exit code 2.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn write_json<T: Serialize>(out: Option<&Path>, value: &T) -> Result<(), Failure> {
    if let Some(path) = out {
        let mut text = serde_json::to_string_pretty(value).map_err(Error::from)?;
        text.push('\n');
        fs::write(path, text)?;
    }
    Ok(())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct GeometricOutput {
    filtration: FilteredComplexDoc,
    barcode: Barcode,
    intervals: Vec<RealInterval>,
}

fn print_intervals(intervals: &[RealInterval]) {
    println!("{:>3}  {:>14}  {:>14}", "dim", "birth", "death");
    for iv in intervals {
        let death = iv.death.map_or("inf".to_string(), |d| format!("{d:.9}"));
        println!("{:>3}  {:>14.9}  {:>14}", iv.dim, iv.birth, death);
    }
}

fn geometric(g: &GeometricFiltration, max_dim: usize, field: u32, out: Option<&Path>) -> Result<u8, Failure> {
    let barcode = persistence_barcode(&g.filtration, max_dim, field)?;
    let intervals = g.real_barcode(&barcode);
    println!(
        "{} simplices, {} critical values",
        g.filtration.len(),
        g.level_values.len()
    );
    print_intervals(&intervals);
    write_json(
        out,
        &GeometricOutput {
            filtration: FilteredComplexDoc::from_geometric(g),
            barcode,
            intervals,
        },
    )?;
    Ok(0)
}

fn cloud_format(f: Option<Format>) -> Option<CloudFormat> {
    f.map(|f| match f {
        Format::Csv => CloudFormat::Csv,
        Format::Json => CloudFormat::Json,
    })
}

#[derive(Serialize)]
struct PersistenceOutput {
    field: u32,
    max_dim: usize,
    barcode: Barcode,
    #[serde(skip_serializing_if = "Option::is_none")]
    table: Option<PersistentBettiTable>,
}

#[derive(Serialize)]
#[serde(untagged)]
enum NerveOutput {
    Complex(ComplexDoc),
    Filtration(FilteredComplexDoc),
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Cech {
            cloud,
            max_dim,
            format,
            field,
            out,
        } => {
            let c = load_point_cloud(&cloud, cloud_format(format))?;
            let g = cech_filtration(&c, max_dim + 1)?;
            geometric(&g, max_dim, field, out.as_deref())
        }
        Command::Alpha2d {
            cloud,
            format,
            field,
            out,
        } => {
            let c = load_point_cloud(&cloud, cloud_format(format))?;
            let g = alpha2d_filtration(&c)?;
            geometric(&g, 1, field, out.as_deref())
        }
        Command::Persistence {
            filtration,
            field,
            max_dim,
            table,
            out,
        } => {
            let (f, values) = parse_filtered_complex(&read(&filtration)?)?;
            let barcode = persistence_barcode(&f, max_dim, field)?;
            println!("{} simplices, {} levels, field Z/{field}", f.len(), f.levels().len());
            println!("{:>3}  {:>8}  {:>8}", "dim", "birth", "death");
            for iv in barcode.intervals() {
                let show = |l: u32| match &values {
                    Some(v) => format!("{:.9}", v[l as usize]),
                    None => l.to_string(),
                };
                println!("{:>3}  {:>8}  {:>8}", iv.dim, show(iv.birth), iv.death.map_or("inf".into(), show));
            }
            let table = table.then(|| PersistentBettiTable::from_barcode(&barcode, f.levels(), max_dim));
            write_json(
                out.as_deref(),
                &PersistenceOutput {
                    field,
                    max_dim,
                    barcode,
                    table,
                },
            )?;
            Ok(0)
        }
        Command::Nerve { cover, out } => {
            let text = read(&cover)?;
            let output = match serde_json::from_str::<FilteredCoverDoc>(&text) {
                Ok(doc) => {
                    let fc = doc.to_cover()?;
                    let nf = nerve_filtration(&fc);
                    println!(
                        "nerve filtration: {} simplices over {} levels, dimension {}",
                        nf.len(),
                        nf.levels().len(),
                        nf.complex().dim().map_or("empty".into(), |d| d.to_string())
                    );
                    NerveOutput::Filtration(FilteredComplexDoc::from_filtration(&nf))
                }
                Err(_) => {
                    let n = nerve(&parse_cover(&text)?);
                    println!(
                        "nerve: {} simplices, dimension {}",
                        n.len(),
                        n.dim().map_or("empty".into(), |d| d.to_string())
                    );
                    for s in n.maximal_simplices() {
                        println!("  {s}");
                    }
                    NerveOutput::Complex(ComplexDoc::from_complex(&n))
                }
            };
            write_json(out.as_deref(), &output)?;
            Ok(0)
        }
        Command::Verify {
            seed,
            instances,
            cycles,
            max_dim,
            field,
            strict,
            cylinder_pairs,
            input,
            out,
        } => {
            let config = CampaignConfig {
                seed,
                instances: if input.is_some() { 1 } else { instances },
                cycles,
                max_dim,
                field,
                strict,
                cylinder_pairs,
                ..Default::default()
            };
            let report = match input {
                Some(path) => {
                    let doc: VerifyInputDoc = serde_json::from_str(&read(&path)?).map_err(Error::from)?;
                    let (f, fc) = doc.load()?;
                    run_campaign_on(&config, &f, &fc)?
                }
                None => run_campaign(&config)?,
            };
            print!("{}", report.summary());
            for failure in &report.failures {
                println!("failure: {} (instance {:?}): {}", failure.check, failure.instance, failure.detail);
            }
            write_json(out.as_deref(), &report)?;
            Ok(report.exit_code as u8)
        }
        Command::CylinderCheck {
            seed,
            pairs,
            max_degree,
            out,
        } => {
            let report = run_cylinder_checks(seed, pairs, max_degree);
            print!("{}", report.summary());
            write_json(out.as_deref(), &report)?;
            Ok(if report.passed() { 0 } else { 1 })
        }
    }
}
