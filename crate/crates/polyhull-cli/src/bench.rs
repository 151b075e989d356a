//! Benchmark suites. Each suite runs a fixed instance grid with every
//! applicable algorithm or method and writes one CSV row per metric per
//! repetition, sorted, with the schema
//! `family,params,operation,algorithm,order,seed,metric,value,seconds`.
//!
//! Exact metrics (counts, facet numbers) must agree across algorithms and
//! orders; any disagreement aborts the run instead of becoming a data
//! point. Timings are wall-clock and informational only. With a
//! `--budget-seconds` cap every run happens in a child process so an
//! overrun can be killed and recorded as `timeout`; runs that hit the
//! enumeration cap are recorded as `memout`.

use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use num_traits::Zero;

use polyhull::arith::Rational;
use polyhull::gen;
use polyhull::hull::{self, Algorithm, InsertionOrder};
use polyhull::lattice::{self, EnumerateError, Method};

use crate::Failure;

pub const CSV_HEADER: &str = "family,params,operation,algorithm,order,seed,metric,value,seconds";

/// Families whose instances are seeded; repetition r uses seed base+r and
/// is a fresh instance, so their statistics range over instances.
const SEEDED: [&str; 2] = ["voronoi", "rbox"];

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub reps: u32,
    pub budget_seconds: Option<f64>,
    pub seed: u64,
    pub no_time: bool,
}

/// One CSV row.
#[derive(Debug, Clone)]
pub struct BenchRecord {
    pub family: String,
    pub params: String,
    pub operation: String,
    pub algorithm: String,
    pub order: String,
    pub seed: String,
    pub metric: String,
    pub value: String,
    pub seconds: Option<f64>,
}

impl BenchRecord {
    pub fn csv_line(&self, with_time: bool) -> String {
        let seconds = match (with_time, self.seconds) {
            (true, Some(s)) => format!("{s:.6}"),
            _ => String::new(),
        };
        let fields = [
            &self.family,
            &self.params,
            &self.operation,
            &self.algorithm,
            &self.order,
            &self.seed,
            &self.metric,
            &self.value,
            &seconds,
        ];
        debug_assert!(fields.iter().all(|f| !f.contains(',')));
        fields.map(String::as_str).join(",")
    }
}

#[derive(Debug, Clone)]
struct Job {
    family: String,
    params: String,
    operation: String,
    algorithm: String,
    order: String,
    seed: Option<u64>,
}

enum JobError {
    Memout,
    Other(String),
}

enum RunOutcome {
    Metrics(Vec<(String, String)>),
    Timeout,
    Memout,
    Error(String),
}

pub fn bench_suite(name: &str, opts: &SuiteOptions) -> Result<String, Failure> {
    if opts.reps == 0 {
        return Err(Failure::Usage("--reps must be at least 1".into()));
    }
    let jobs = grid(name)?;
    let seeded = SEEDED.contains(&name);
    let mut rows: Vec<BenchRecord> = Vec::new();
    for job in &jobs {
        for rep in 0..opts.reps {
            let mut job = job.clone();
            if seeded {
                job.seed = Some(opts.seed + u64::from(rep));
            }
            let started = Instant::now();
            let outcome = match opts.budget_seconds {
                Some(budget) => run_subprocess(&job, budget),
                None => match run_job(&job) {
                    Ok(metrics) => RunOutcome::Metrics(metrics),
                    Err(JobError::Memout) => RunOutcome::Memout,
                    Err(JobError::Other(m)) => RunOutcome::Error(m),
                },
            };
            let seconds = started.elapsed().as_secs_f64();
            let base = BenchRecord {
                family: job.family.clone(),
                params: job.params.clone(),
                operation: job.operation.clone(),
                algorithm: job.algorithm.clone(),
                order: job.order.clone(),
                seed: job.seed.map(|s| s.to_string()).unwrap_or_default(),
                metric: String::new(),
                value: String::new(),
                seconds: Some(seconds),
            };
            match outcome {
                RunOutcome::Metrics(metrics) => {
                    for (metric, value) in metrics {
                        rows.push(BenchRecord {
                            metric,
                            value,
                            ..base.clone()
                        });
                    }
                }
                RunOutcome::Timeout => rows.push(BenchRecord {
                    metric: "status".into(),
                    value: "timeout".into(),
                    ..base
                }),
                RunOutcome::Memout => rows.push(BenchRecord {
                    metric: "status".into(),
                    value: "memout".into(),
                    ..base
                }),
                RunOutcome::Error(msg) => {
                    eprintln!("bench: {}/{}: {msg}", job.family, job.params);
                    rows.push(BenchRecord {
                        metric: "status".into(),
                        value: "error".into(),
                        ..base
                    });
                }
            }
        }
    }
    check_exact_agreement(&rows)?;
    if name == "voronoi" {
        append_vertex_stats(&mut rows);
    }
    let mut lines: Vec<String> = rows
        .iter()
        .map(|r| r.csv_line(!opts.no_time))
        .collect();
    lines.sort();
    let mut out = String::with_capacity(lines.len() * 48 + 64);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for l in lines {
        out.push_str(&l);
        out.push('\n');
    }
    Ok(out)
}

fn grid(suite: &str) -> Result<Vec<Job>, Failure> {
    let job = |family: &str, params: String, operation: &str, algorithm: &str, order: &str| Job {
        family: family.into(),
        params,
        operation: operation.into(),
        algorithm: algorithm.into(),
        order: order.into(),
        seed: None,
    };
    let mut jobs = Vec::new();
    match suite {
        "cut" => {
            for k in 0..=3 {
                let graph = format!("Gk:{k}");
                jobs.push(job("cut", graph.clone(), "hull", "dd", "given"));
                for order in ["given", "random:1"] {
                    jobs.push(job("cut", graph.clone(), "hull", "bb", order));
                }
            }
        }
        "knapsack-hull" => {
            for d in [3, 4, 5] {
                jobs.push(job(
                    "knapsack-hull",
                    format!("d={d};b=40"),
                    "integer-hull",
                    "auto",
                    "",
                ));
            }
        }
        "knapsack-count" => {
            for b in [40, 50, 60, 70, 80, 90, 100] {
                for method in ["bbox", "projection", "hilbert"] {
                    jobs.push(job(
                        "knapsack-count",
                        format!("d=5;b={b}"),
                        "count",
                        method,
                        "",
                    ));
                }
            }
        }
        "voronoi" => {
            jobs.push(job("voronoi", "d=4;m=50".into(), "vertices", "dd", ""));
        }
        "rbox" => {
            for algo in ["dd", "bb"] {
                jobs.push(job("rbox", "d=4;n=20".into(), "hull", algo, "given"));
            }
        }
        "matching" => {
            for n in [4, 5, 6] {
                jobs.push(job("matching", format!("n={n}"), "count", "zero-one", ""));
            }
        }
        other => {
            return Err(Failure::Usage(format!(
                "unknown suite {other:?}; expected cut|knapsack-hull|knapsack-count|voronoi|rbox|matching"
            )))
        }
    }
    Ok(jobs)
}

/// Entry point of the hidden `bench-one` subcommand: compute one instance
/// and print tab-separated metric/value pairs.
pub fn bench_one_main(
    family: &str,
    params: &str,
    operation: &str,
    algorithm: &str,
    order: &str,
    seed: u64,
) -> Result<(), Failure> {
    let job = Job {
        family: family.into(),
        params: params.into(),
        operation: operation.into(),
        algorithm: algorithm.into(),
        order: order.into(),
        seed: Some(seed),
    };
    match run_job(&job) {
        Ok(metrics) => {
            for (metric, value) in metrics {
                println!("{metric}\t{value}");
            }
            Ok(())
        }
        Err(JobError::Memout) => Err(Failure::Domain("enumeration exceeded the cap".into())),
        Err(JobError::Other(m)) => Err(Failure::Domain(m)),
    }
}

fn other(e: impl std::fmt::Display) -> JobError {
    JobError::Other(e.to_string())
}

fn enum_err(e: EnumerateError) -> JobError {
    match e {
        EnumerateError::TooManyPoints { .. } => JobError::Memout,
        e => JobError::Other(e.to_string()),
    }
}

/// `key=value` lookup in a `;`-separated parameter string.
fn param<T: std::str::FromStr>(params: &str, key: &str) -> Result<T, JobError> {
    for kv in params.split(';') {
        if let Some(v) = kv.strip_prefix(key).and_then(|r| r.strip_prefix('=')) {
            return v
                .parse()
                .map_err(|_| JobError::Other(format!("bad value for {key} in {params:?}")));
        }
    }
    Err(JobError::Other(format!("missing {key} in {params:?}")))
}

fn env_cap(d: usize) -> Result<Option<usize>, JobError> {
    crate::exec::point_cap(d, None).map_err(|f| match f {
        Failure::Usage(m) | Failure::Domain(m) => JobError::Other(m),
    })
}

fn run_job(job: &Job) -> Result<Vec<(String, String)>, JobError> {
    match job.family.as_str() {
        "cut" => {
            let g = gen::parse_graph(&job.params).map_err(other)?;
            let p = gen::cut_polytope(&g).map_err(other)?;
            let algo: Algorithm = job.algorithm.parse().map_err(other)?;
            let order: InsertionOrder = job.order.parse().map_err(other)?;
            let h = hull::facets_with(&p, algo, order);
            Ok(vec![("facets".into(), h.inequalities.rows().to_string())])
        }
        "knapsack-hull" => {
            let d: usize = param(&job.params, "d")?;
            let b: i64 = param(&job.params, "b")?;
            let p = gen::fibonacci_knapsack(d, b).map_err(other)?;
            let ih = lattice::integer_hull(&p, env_cap(d)?).map_err(enum_err)?;
            Ok(vec![
                (
                    "ih_vertices".into(),
                    ih.vrep().expect("both reps").points.rows().to_string(),
                ),
                (
                    "ih_facets".into(),
                    ih.hrep().expect("both reps").inequalities.rows().to_string(),
                ),
            ])
        }
        "knapsack-count" => {
            let d: usize = param(&job.params, "d")?;
            let b: i64 = param(&job.params, "b")?;
            let p = gen::fibonacci_knapsack(d, b).map_err(other)?;
            let method: Method = job.algorithm.parse().map_err(other)?;
            let n = lattice::count(&p, method, env_cap(d)?).map_err(enum_err)?;
            Ok(vec![("points".into(), n.to_string())])
        }
        "voronoi" => {
            let d: usize = param(&job.params, "d")?;
            let m: usize = param(&job.params, "m")?;
            let seed = job.seed.ok_or_else(|| other("voronoi needs a seed"))?;
            let sites = gen::random_sites(d, m, seed).map_err(other)?;
            let p = gen::voronoi_lift(&sites);
            let v = hull::vertices(&p, Algorithm::DoubleDescription);
            Ok(vec![("n_vertices".into(), v.points.rows().to_string())])
        }
        "rbox" => {
            let d: usize = param(&job.params, "d")?;
            let n: usize = param(&job.params, "n")?;
            let seed = job.seed.ok_or_else(|| other("rbox needs a seed"))?;
            let p = gen::random_box(d, n, seed).map_err(other)?;
            let algo: Algorithm = job.algorithm.parse().map_err(other)?;
            let h = hull::facets_with(&p, algo, InsertionOrder::Given);
            Ok(vec![("facets".into(), h.inequalities.rows().to_string())])
        }
        "matching" => {
            let n: usize = param(&job.params, "n")?;
            let g = gen::Graph::complete(n).map_err(other)?;
            let p = gen::matching_polytope(&g);
            let count = lattice::count(&p, Method::ZeroOne, env_cap(p.ambient_dim())?)
                .map_err(enum_err)?;
            Ok(vec![("points".into(), count.to_string())])
        }
        otherwise => Err(other(format!("unknown family {otherwise:?}"))),
    }
}

fn run_subprocess(job: &Job, budget: f64) -> RunOutcome {
    let exe = match std::env::current_exe() {
        Ok(e) => e,
        Err(e) => return RunOutcome::Error(format!("current_exe: {e}")),
    };
    let child = Command::new(exe)
        .args([
            "bench-one",
            "--family",
            &job.family,
            "--params",
            &job.params,
            "--operation",
            &job.operation,
            "--algorithm",
            &job.algorithm,
            "--order",
            &job.order,
            "--seed",
            &job.seed.unwrap_or(0).to_string(),
        ])
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn();
    let mut child = match child {
        Ok(c) => c,
        Err(e) => return RunOutcome::Error(format!("spawn: {e}")),
    };
    let deadline = Instant::now() + Duration::from_secs_f64(budget);
    loop {
        match child.try_wait() {
            Ok(Some(_)) => break,
            Ok(None) => {
                if Instant::now() >= deadline {
                    let _ = child.kill();
                    let _ = child.wait();
                    return RunOutcome::Timeout;
                }
                std::thread::sleep(Duration::from_millis(5));
            }
            Err(e) => return RunOutcome::Error(format!("wait: {e}")),
        }
    }
    let out = match child.wait_with_output() {
        Ok(o) => o,
        Err(e) => return RunOutcome::Error(format!("output: {e}")),
    };
    if out.status.success() {
        let stdout = String::from_utf8_lossy(&out.stdout);
        let mut metrics = Vec::new();
        for line in stdout.lines() {
            match line.split_once('\t') {
                Some((m, v)) => metrics.push((m.to_string(), v.to_string())),
                None => return RunOutcome::Error(format!("bad metric line {line:?}")),
            }
        }
        RunOutcome::Metrics(metrics)
    } else {
        let stderr = String::from_utf8_lossy(&out.stderr);
        if stderr.contains("exceeded the cap") {
            RunOutcome::Memout
        } else {
            RunOutcome::Error(stderr.trim().to_string())
        }
    }
}

/// Exact metrics must not depend on algorithm or order: every row group
/// sharing (family, params, operation, seed, metric) must agree.
fn check_exact_agreement(rows: &[BenchRecord]) -> Result<(), Failure> {
    use std::collections::HashMap;
    let mut seen: HashMap<(String, String, String, String, String), &str> = HashMap::new();
    for r in rows {
        if r.metric == "status" {
            continue;
        }
        let key = (
            r.family.clone(),
            r.params.clone(),
            r.operation.clone(),
            r.seed.clone(),
            r.metric.clone(),
        );
        match seen.get(&key) {
            None => {
                seen.insert(key, &r.value);
            }
            Some(prev) if *prev == r.value => {}
            Some(prev) => {
                return Err(Failure::Domain(format!(
                    "bench disagreement on {}/{} {}: {} vs {}",
                    r.family, r.params, r.metric, prev, r.value
                )))
            }
        }
    }
    Ok(())
}

/// Summary rows over the per-seed vertex counts of the voronoi suite.
fn append_vertex_stats(rows: &mut Vec<BenchRecord>) {
    use std::collections::BTreeMap;
    let mut groups: BTreeMap<String, Vec<Rational>> = BTreeMap::new();
    for r in rows.iter() {
        if r.metric == "n_vertices" {
            if let Ok(v) = r.value.parse() {
                groups.entry(r.params.clone()).or_default().push(v);
            }
        }
    }
    for (params, values) in groups {
        let s = stats(&values);
        for (suffix, value) in [
            ("min", s.min.to_string()),
            ("max", s.max.to_string()),
            ("mean", s.mean.to_string()),
            ("median", s.median.to_string()),
            ("stddev", s.stddev.clone()),
        ] {
            rows.push(BenchRecord {
                family: "voronoi".into(),
                params: params.clone(),
                operation: "vertices".into(),
                algorithm: "dd".into(),
                order: String::new(),
                seed: String::new(),
                metric: format!("n_vertices_{suffix}"),
                value,
                seconds: None,
            });
        }
    }
}

/// Order statistics of a sample: exact min/max/mean/median, and the sample
/// (n-1 denominator) standard deviation as a 3-decimal string, truncated
/// toward zero. A single observation reports stddev 0.000.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatSummary {
    pub min: Rational,
    pub max: Rational,
    pub mean: Rational,
    pub median: Rational,
    pub stddev: String,
}

pub fn stats(values: &[Rational]) -> StatSummary {
    assert!(!values.is_empty(), "stats of an empty sample");
    let mut sorted = values.to_vec();
    sorted.sort();
    let n = sorted.len();
    let sum = sorted
        .iter()
        .fold(Rational::zero(), |a, b| a + b.clone());
    let mean = sum / Rational::from(n as i64);
    let median = if n % 2 == 1 {
        sorted[n / 2].clone()
    } else {
        (sorted[n / 2 - 1].clone() + sorted[n / 2].clone()) / Rational::from(2)
    };
    let stddev = if n == 1 {
        "0.000".to_string()
    } else {
        let var = sorted
            .iter()
            .map(|v| {
                let d = v.clone() - mean.clone();
                d.clone() * d
            })
            .fold(Rational::zero(), |a, b| a + b)
            / Rational::from((n - 1) as i64);
        decimal_sqrt_3(&var)
    };
    StatSummary {
        min: sorted[0].clone(),
        max: sorted[n - 1].clone(),
        mean,
        median,
        stddev,
    }
}

/// floor(1000 * sqrt(x)) rendered as `i.fff`.
fn decimal_sqrt_3(x: &Rational) -> String {
    let scaled = (x.clone() * Rational::from(1_000_000)).floor();
    let q = scaled.sqrt();
    let thousand = num_bigint::BigInt::from(1000);
    let int = &q / &thousand;
    let frac = (&q % &thousand).to_string();
    format!("{int}.{frac:0>3}")
}
