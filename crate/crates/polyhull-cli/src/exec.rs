//! Subcommand execution: input sniffing, scalar dispatch, output plumbing.

use std::fs;
use std::io::Read;
use std::path::PathBuf;

use polyhull::arith::{PuiseuxFraction, Rational, Scalar};
use polyhull::gen;
use polyhull::hull::{self, Algorithm, InsertionOrder};
use polyhull::lattice::{self, Method};
use polyhull::lp::{solve_lp, LinearProgram, LpStatus, Sense};
use polyhull::poly::{uses_symbolic_t, PolyFile, Polytope};

use crate::args::{Cmd, GenFamily};
use crate::{bench, Failure};

/// Parses a .poly file with the scalar type its contents call for and runs
/// `body` on it; `body` must typecheck for both scalar types.
macro_rules! on_scalar {
    ($text:expr, |$file:ident| $body:expr) => {{
        let text = $text;
        if uses_symbolic_t(&text) {
            let $file: PolyFile<PuiseuxFraction> = parse_file(&text)?;
            $body
        } else {
            let $file: PolyFile<Rational> = parse_file(&text)?;
            $body
        }
    }};
}

pub fn dispatch(cmd: Cmd) -> Result<(), Failure> {
    match cmd {
        Cmd::Gen { family } => run_gen(family),
        Cmd::Hull {
            input,
            algo,
            order,
            out,
        } => {
            let algo: Algorithm = parse_flag(&algo, "--algo")?;
            let order: InsertionOrder = parse_flag(&order, "--order")?;
            let text = read_input(&input)?;
            let rendered = on_scalar!(text, |f| {
                let p = f.into_polytope();
                PolyFile::H(hull::facets_with(&p, algo, order)).to_text()
            });
            write_output(&out, &rendered)
        }
        Cmd::Vertices { input, algo, out } => {
            let algo: Algorithm = parse_flag(&algo, "--algo")?;
            let text = read_input(&input)?;
            let rendered = on_scalar!(text, |f| {
                let p = f.into_polytope();
                PolyFile::V(hull::vertices(&p, algo)).to_text()
            });
            write_output(&out, &rendered)
        }
        Cmd::Points {
            input,
            method,
            limit_points,
            out,
        } => {
            let method: Method = parse_flag(&method, "--method")?;
            let p = rational_input(&input)?;
            let cap = point_cap(p.ambient_dim(), limit_points)?;
            let set = lattice::enumerate(&p, method, cap).map_err(domain)?;
            write_output(&out, &PolyFile::V(set.to_vrep()).to_text())
        }
        Cmd::Count {
            input,
            method,
            limit_points,
        } => {
            let method: Method = parse_flag(&method, "--method")?;
            let p = rational_input(&input)?;
            let cap = point_cap(p.ambient_dim(), limit_points)?;
            let n = lattice::count(&p, method, cap).map_err(domain)?;
            println!("{n}");
            Ok(())
        }
        Cmd::IntegerHull {
            input,
            rep,
            limit_points,
            out,
        } => {
            let p = rational_input(&input)?;
            let cap = point_cap(p.ambient_dim(), limit_points)?;
            let ih = lattice::integer_hull(&p, cap).map_err(domain)?;
            let file = match rep.as_str() {
                "v" => PolyFile::V(ih.vrep().expect("integer hull carries both").clone()),
                "h" => PolyFile::H(ih.hrep().expect("integer hull carries both").clone()),
                other => {
                    return Err(Failure::Usage(format!(
                        "--rep must be v or h, got {other:?}"
                    )))
                }
            };
            write_output(&out, &file.to_text())
        }
        Cmd::Lp {
            input,
            objective,
            max,
            min,
        } => {
            let sense = match (max, min) {
                (true, true) => {
                    return Err(Failure::Usage("--max and --min exclude each other".into()))
                }
                (false, true) => Sense::Min,
                _ => Sense::Max,
            };
            let text = read_input(&input)?;
            let rendered = on_scalar!(text, |f| {
                let p = f.into_polytope();
                let region = match p.hrep() {
                    Some(h) => h.clone(),
                    None => hull::facets(&p, Algorithm::DoubleDescription),
                };
                let obj = parse_objective(&objective, p.ambient_dim())?;
                let r = solve_lp(&LinearProgram {
                    region: &region,
                    objective: obj,
                    sense,
                });
                match r.status {
                    LpStatus::Optimal => {
                        let mut s = format!("value {}\nvertex", r.optimal_value.unwrap());
                        for x in r.optimal_vertex.unwrap() {
                            s.push(' ');
                            s.push_str(&x.to_string());
                        }
                        s.push('\n');
                        s
                    }
                    LpStatus::Infeasible => "infeasible\n".to_string(),
                    LpStatus::Unbounded => "unbounded\n".to_string(),
                }
            });
            print!("{rendered}");
            Ok(())
        }
        Cmd::Volume { input } => {
            let text = read_input(&input)?;
            let rendered = on_scalar!(text, |f| {
                let p = f.into_polytope();
                hull::volume(&p).map_err(domain)?.to_string()
            });
            println!("{rendered}");
            Ok(())
        }
        Cmd::Bench {
            suite,
            reps,
            budget_seconds,
            seed,
            no_time,
            out,
        } => {
            let csv = bench::bench_suite(
                &suite,
                &bench::SuiteOptions {
                    reps,
                    budget_seconds,
                    seed,
                    no_time,
                },
            )?;
            write_output(&out, &csv)
        }
        Cmd::BenchOne {
            family,
            params,
            operation,
            algorithm,
            order,
            seed,
        } => bench::bench_one_main(&family, &params, &operation, &algorithm, &order, seed),
    }
}

fn run_gen(family: GenFamily) -> Result<(), Failure> {
    match family {
        GenFamily::KnapsackFib { d, b, out } => {
            emit(gen::fibonacci_knapsack(d, b).map_err(usage)?, &out)
        }
        GenFamily::Cut { graph, out } => {
            let g = gen::parse_graph(&graph).map_err(usage)?;
            emit(gen::cut_polytope(&g).map_err(usage)?, &out)
        }
        GenFamily::KleeMinty { d, t, out } => {
            if t == "sym" {
                emit(gen::klee_minty(d, PuiseuxFraction::t()).map_err(usage)?, &out)
            } else {
                let t: Rational = t
                    .parse()
                    .map_err(|e| Failure::Usage(format!("--t: {e}")))?;
                emit(gen::klee_minty(d, t).map_err(usage)?, &out)
            }
        }
        GenFamily::Voronoi { d, m, seed, out } => {
            let sites = gen::random_sites(d, m, seed).map_err(usage)?;
            emit(gen::voronoi_lift(&sites), &out)
        }
        GenFamily::Rbox { d, n, seed, out } => {
            emit(gen::random_box(d, n, seed).map_err(usage)?, &out)
        }
        GenFamily::Matching { n, out } => {
            let g = gen::Graph::complete(n).map_err(usage)?;
            emit(gen::matching_polytope(&g), &out)
        }
        GenFamily::HardSimplex { a, b, c, out } => {
            emit(gen::hard_simplex(a, b, c).map_err(usage)?, &out)
        }
    }
}

/// Writes whichever description the generator produced.
fn emit<S: Scalar>(p: Polytope<S>, out: &Option<PathBuf>) -> Result<(), Failure> {
    let file = match p.hrep() {
        Some(h) => PolyFile::H(h.clone()),
        None => PolyFile::V(p.vrep().expect("generators build one description").clone()),
    };
    write_output(out, &file.to_text())
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn domain(e: impl std::fmt::Display) -> Failure {
    Failure::Domain(e.to_string())
}

fn parse_flag<T>(value: &str, flag: &str) -> Result<T, Failure>
where
    T: std::str::FromStr,
    T::Err: std::fmt::Display,
{
    value
        .parse()
        .map_err(|e| Failure::Usage(format!("{flag}: {e}")))
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Failure> {
    match path.as_deref() {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p)
            .map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        _ => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
            Ok(text)
        }
    }
}

fn write_output(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => {
            fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_file<S: Scalar>(text: &str) -> Result<PolyFile<S>, Failure> {
    PolyFile::parse(text).map_err(|e| Failure::Usage(format!("input: {e}")))
}

fn rational_input(path: &Option<PathBuf>) -> Result<Polytope<Rational>, Failure> {
    let text = read_input(path)?;
    if uses_symbolic_t(&text) {
        return Err(Failure::Usage(
            "lattice operations need rational coordinates, not symbolic t".into(),
        ));
    }
    Ok(parse_file::<Rational>(&text)?.into_polytope())
}

/// Enumeration cap: an explicit `--limit-points` wins; otherwise the
/// `POLYHULL_MEM_LIMIT_BYTES` budget divided by a per-point estimate of
/// 48 bytes per stored coordinate.
pub(crate) fn point_cap(d: usize, flag: Option<usize>) -> Result<Option<usize>, Failure> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var("POLYHULL_MEM_LIMIT_BYTES") {
        Err(_) => Ok(None),
        Ok(v) => {
            let bytes: u64 = v.parse().map_err(|_| {
                Failure::Usage(format!("POLYHULL_MEM_LIMIT_BYTES: bad byte count {v:?}"))
            })?;
            Ok(Some((bytes / (48 * (d as u64 + 1))).max(1) as usize))
        }
    }
}

fn parse_objective<S: Scalar>(s: &str, d: usize) -> Result<Vec<S>, Failure> {
    let mut row = Vec::new();
    for tok in s.split(',') {
        let x: S = tok
            .trim()
            .parse()
            .map_err(|e| Failure::Usage(format!("--objective: bad scalar {tok:?}: {e}")))?;
        row.push(x);
    }
    if row.len() == d {
        row.insert(0, S::zero());
    }
    if row.len() != d + 1 {
        return Err(Failure::Usage(format!(
            "--objective has {} entries, the input dimension {d} needs {d} or {}",
            row.len(),
            d + 1
        )));
    }
    Ok(row)
}
