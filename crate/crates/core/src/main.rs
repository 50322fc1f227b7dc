use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use tilescale::coords::{
    cuboid_best_axis_pair, cuboid_hyperplane_cover, rect_coord_sets, tri_best_rotation,
    tri_line_cover,
};
use tilescale::generators::{
    random_parallelogram, random_ratio_tiling, random_trapezoid, GeneratorSpec, RandomKind,
};
use tilescale::integerize::{cuboid_cross_section, integerize};
use tilescale::json::{parse_tiling, tiling_to_string, tiling_to_value};
use tilescale::oracle::{
    bound_audit, min_squares_exhaustive, minimal_scale_oracle, normalized_scale_oracle,
    quilt_tiling, QuiltOutcome,
};
use tilescale::svg::{render_rect, render_svg};
use tilescale::tiling::{Tiling, TriRegion};
use tilescale::{Error, Rat};

/// Exact rescaling of square, box and triangle tilings to integer sides.
#[derive(Parser)]
#[command(name = "tilescale", version)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a tiling file partitions its region.
    Validate { file: PathBuf },
    /// Coordinate-set, hyperplane and line-cover reports.
    Analyze { file: PathBuf },
    /// Scale a tiling so every tile side is an integer.
    Scale {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Dirichlet)]
        method: Method,
    },
    /// Write a generated tiling as JSON.
    Generate {
        #[arg(value_enum)]
        family: Family,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cut depth, split count or leaf count for the random families.
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Largest ratio entry for random-ratio.
        #[arg(long, default_value_t = 5)]
        max_entry: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exhaustive searches.
    #[command(subcommand)]
    Search(Search),
    /// Draw a planar tiling, or a cross-section of a box tiling, as SVG.
    Render {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Axes i j (0-based) followed by one anchor per remaining axis.
        #[arg(long, num_args = 2.., value_name = "I J ANCHOR")]
        section: Option<Vec<String>>,
    },
}

#[derive(Subcommand)]
enum Search {
    /// Fewest integer squares tiling a width x height rectangle.
    MinSquares {
        #[arg(long)]
        width: u64,
        #[arg(long)]
        height: u64,
        #[arg(long, default_value_t = 32)]
        max_tiles: usize,
        #[arg(long)]
        emit_witness: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Dirichlet,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Fibonacci,
    DyadicSquare,
    DyadicCube,
    DyadicTriangle,
    DehnSharpness,
    RandomRect,
    RandomCuboid,
    RandomTriangle,
    RandomTrapezoid,
    RandomParallelogram,
    RandomRatio,
}

struct Failure {
    code: u8,
    error: Error,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Failure {
        let code = match error {
            Error::Parse(_) | Error::Io(_) => 2,
            _ => 1,
        };
        Failure { code, error }
    }
}

type Outcome = Result<u8, Failure>;

fn read_input(path: &Path) -> Result<String, Error> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path)
        .map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", path.display())).into())
}

fn load(path: &Path) -> Result<Tiling, Error> {
    parse_tiling(&read_input(path)?)
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn print_json(value: &impl Serialize) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable output")
    );
}

fn validate(file: &Path, as_json: bool) -> Outcome {
    let t = load(file)?;
    let report = t.validate();
    let ok = report.is_valid();
    if as_json {
        print_json(&report);
    } else if ok {
        println!("valid {} tiling with {} tiles", report.kind, report.tiles);
    } else {
        println!("invalid {} tiling with {} tiles", report.kind, report.tiles);
        let failures = report
            .structural
            .iter()
            .chain(&report.containment.failures)
            .chain(&report.disjoint_interiors.failures)
            .chain(&report.measure_balance.failures);
        for f in failures {
            println!("  {f}");
        }
    }
    Ok(if ok { 0 } else { 1 })
}

fn normalized_tri(t: &tilescale::tiling::TriTiling) -> Result<tilescale::tiling::TriTiling, Error> {
    let TriRegion::Triangle { a, b, c } = &t.region else {
        unreachable!("only triangle regions are normalized")
    };
    let f = c.recip();
    t.scale_translate(&f, &[-(&f * a), -(&f * b)])
}

fn analyze(file: &Path, as_json: bool) -> Outcome {
    let t = load(file)?;
    t.validate().into_result()?;
    let mut report = json!({ "kind": t.kind(), "tiles": t.len() });
    let mut lines = Vec::new();
    let mut pass = true;
    match &t {
        Tiling::Rect(r) => {
            let c = rect_coord_sets(r);
            lines.push(format!(
                "coordinates: {} <= {} ({})",
                c.count,
                c.bound,
                mark(c.pass)
            ));
            pass &= c.pass;
            report["coordinates"] = serde_json::to_value(c).expect("serializable");
        }
        Tiling::Cuboid(c) => {
            let cover = cuboid_hyperplane_cover(c);
            lines.push(format!(
                "hyperplane cover: {} <= {} ({})",
                cover.hyperplanes.len(),
                cover.bound,
                mark(cover.pass)
            ));
            pass &= cover.pass;
            report["hyperplane_cover"] = serde_json::to_value(&cover).expect("serializable");
            if c.dim() >= 2 {
                let pair = cuboid_best_axis_pair(c)?;
                lines.push(format!(
                    "best axis pair ({}, {}): {} <= {} ({})",
                    pair.i,
                    pair.j,
                    pair.count,
                    pair.bound,
                    mark(pair.pass)
                ));
                pass &= pair.pass;
                report["best_pair"] = serde_json::to_value(pair).expect("serializable");
            }
        }
        Tiling::Tri(tt) => {
            if !matches!(tt.region, TriRegion::Parallelogram { .. }) {
                let cover = tri_line_cover(tt)?;
                lines.push(format!(
                    "line cover: {} <= {} ({})",
                    cover.lines.len(),
                    cover.bound,
                    mark(cover.pass)
                ));
                pass &= cover.pass;
                report["line_cover"] = serde_json::to_value(&cover).expect("serializable");
            }
            if matches!(tt.region, TriRegion::Triangle { .. }) {
                let choice = tri_best_rotation(&normalized_tri(tt)?)?;
                lines.push(format!(
                    "best rotation {}: {} <= {} ({})",
                    choice.rotation,
                    choice.coords.len(),
                    choice.bound,
                    mark(choice.pass)
                ));
                pass &= choice.pass;
                report["rotation"] = serde_json::to_value(choice).expect("serializable");
            }
        }
    }
    report["pass"] = Value::Bool(pass);
    if as_json {
        print_json(&report);
    } else {
        println!("{} tiling with {} tiles", t.kind(), t.len());
        for l in lines {
            println!("  {l}");
        }
    }
    Ok(if pass { 0 } else { 1 })
}

fn mark(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "FAIL"
    }
}

fn scale(file: &Path, method: Method, as_json: bool) -> Outcome {
    let t = load(file)?;
    t.validate().into_result()?;
    match method {
        Method::Dirichlet => {
            let (pipeline, cert) = integerize(&t)?;
            if as_json {
                let mut v = serde_json::to_value(&cert).expect("serializable");
                v["pipeline"] = Value::from(pipeline);
                print_json(&v);
            } else {
                println!("pipeline: {pipeline}");
                println!("q = {} (bound {})", cert.q, cert.bound);
                println!("input scale: {}", cert.input_scale);
                println!("{}", tiling_to_string(&cert.tiling));
            }
        }
        Method::Oracle => {
            let lambda = minimal_scale_oracle(&t)?;
            let normalized = normalized_scale_oracle(&t)?;
            let scaled = t.scale_translate(&lambda, &vec![Rat::zero(); dim(&t)])?;
            scaled.validate().into_result().map_err(|e| {
                Error::TheoremViolation(format!("oracle-scaled tiling does not validate: {e}"))
            })?;
            if as_json {
                print_json(&json!({
                    "lambda": lambda,
                    "normalized_lambda": normalized,
                    "tiling": tiling_to_value(&scaled),
                }));
            } else {
                println!("lambda = {lambda}");
                println!("normalized lambda = {normalized}");
                println!("{}", tiling_to_string(&scaled));
            }
        }
    }
    Ok(0)
}

fn dim(t: &Tiling) -> usize {
    match t {
        Tiling::Cuboid(c) => c.dim(),
        _ => 2,
    }
}

#[allow(clippy::too_many_arguments)]
fn generate(
    family: Family,
    n: usize,
    k: usize,
    d: usize,
    seed: u64,
    depth: usize,
    max_entry: u64,
    output: Option<&Path>,
) -> Outcome {
    let random = |kind| GeneratorSpec::RandomGuillotine {
        kind,
        seed,
        depth,
        d,
    };
    let t = match family {
        Family::Fibonacci => GeneratorSpec::Fibonacci { n }.generate()?,
        Family::DyadicSquare => GeneratorSpec::DyadicSquare { k }.generate()?,
        Family::DyadicCube => GeneratorSpec::DyadicCube { d, k }.generate()?,
        Family::DyadicTriangle => GeneratorSpec::DyadicTriangle { k }.generate()?,
        Family::DehnSharpness => GeneratorSpec::DehnSharpness.generate()?,
        Family::RandomRect => random(RandomKind::Rect).generate()?,
        Family::RandomCuboid => random(RandomKind::Cuboid).generate()?,
        Family::RandomTriangle => random(RandomKind::Triangle).generate()?,
        Family::RandomTrapezoid => Tiling::Tri(random_trapezoid(seed, depth)),
        Family::RandomParallelogram => Tiling::Tri(random_parallelogram(seed, depth)),
        Family::RandomRatio => Tiling::Rect(random_ratio_tiling(seed, depth, max_entry)?),
    };
    write_output(output, &(tiling_to_string(&t) + "\n"))?;
    Ok(0)
}

fn search(cmd: Search, as_json: bool) -> Outcome {
    let Search::MinSquares {
        width,
        height,
        max_tiles,
        emit_witness,
    } = cmd;
    let outcome = match min_squares_exhaustive(width, height, max_tiles) {
        Err(Error::NodeLimit(limit)) => {
            if as_json {
                print_json(&json!({
                    "width": width, "height": height, "status": "node_limit", "nodes": limit,
                }));
            }
            return Err(Error::NodeLimit(limit).into());
        }
        other => other?,
    };
    match outcome {
        QuiltOutcome::ExceedsMaxTiles { nodes } => {
            if as_json {
                print_json(&json!({
                    "width": width, "height": height, "status": "exceeds_max_tiles",
                    "max_tiles": max_tiles, "nodes": nodes,
                }));
            } else {
                println!("{width} x {height} needs more than {max_tiles} squares");
            }
            Ok(1)
        }
        QuiltOutcome::Minimum {
            count,
            squares,
            nodes,
        } => {
            let witness = quilt_tiling(width, height, &squares);
            witness
                .validate()
                .into_result()
                .map_err(|e| Error::TheoremViolation(format!("witness does not validate: {e}")))?;
            let audit = if num_integer::gcd(width, height) == 1 {
                Some(bound_audit(width, height, count)?)
            } else {
                None
            };
            if let Some(path) = &emit_witness {
                fs::write(path, tiling_to_string(&Tiling::Rect(witness)) + "\n")
                    .map_err(Error::from)?;
            }
            if as_json {
                print_json(&json!({
                    "width": width, "height": height, "status": "minimum",
                    "count": count, "squares": squares, "nodes": nodes, "audit": audit,
                }));
            } else {
                println!("{width} x {height}: {count} squares ({nodes} nodes)");
                let sides: Vec<String> = squares.iter().map(|s| s.side.to_string()).collect();
                println!("  sides: {}", sides.join(" "));
                if let Some(a) = audit {
                    println!(
                        "  4^{} = {} >= {} ({})",
                        a.count,
                        a.four_pow,
                        a.longest,
                        mark(a.holds)
                    );
                }
            }
            Ok(0)
        }
    }
}

fn parse_section(t: &Tiling, args: &[String]) -> Result<(usize, usize, Vec<Rat>), Error> {
    let axis = |s: &String| {
        s.parse::<usize>()
            .map_err(|_| Error::Parse(format!("section axis {s:?} is not a non-negative integer")))
    };
    let (i, j) = (axis(&args[0])?, axis(&args[1])?);
    let anchors = args[2..]
        .iter()
        .map(|s| s.parse::<Rat>())
        .collect::<Result<Vec<_>, _>>()?;
    let d = dim(t);
    if anchors.len() + 2 != d {
        return Err(Error::Precondition(format!(
            "a {d}-dimensional section needs {} anchors, got {}",
            d.saturating_sub(2),
            anchors.len()
        )));
    }
    Ok((i, j, anchors))
}

fn render(file: &Path, output: Option<&Path>, section: Option<&[String]>) -> Outcome {
    let t = load(file)?;
    t.validate().into_result()?;
    let svg = match (&t, section) {
        (Tiling::Cuboid(c), Some(args)) => {
            let (i, j, anchors) = parse_section(&t, args)?;
            render_rect(&cuboid_cross_section(c, i, j, &anchors)?)
        }
        (_, Some(_)) => {
            return Err(Error::Precondition("--section applies to box tilings only".into()).into())
        }
        (_, None) => render_svg(&t)?,
    };
    write_output(output, &svg)?;
    Ok(0)
}

fn run(cli: Cli) -> Outcome {
    let as_json = cli.json;
    match cli.command {
        Command::Validate { file } => validate(&file, as_json),
        Command::Analyze { file } => analyze(&file, as_json),
        Command::Scale { file, method } => scale(&file, method, as_json),
        Command::Generate {
            family,
            n,
            k,
            d,
            seed,
            depth,
            max_entry,
            output,
        } => generate(family, n, k, d, seed, depth, max_entry, output.as_deref()),
        Command::Search(cmd) => search(cmd, as_json),
        Command::Render {
            file,
            output,
            section,
        } => render(&file, output.as_deref(), section.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let as_json = cli.json;
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure { code, error }) => {
            if as_json {
                print_json(
                    &json!({ "status": "error", "exit_code": code, "error": error.to_string() }),
                );
            }
            eprintln!("tilescale: {error}");
            ExitCode::from(code)
        }
    }
}
