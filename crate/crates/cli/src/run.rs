//! Executing expanded jobs and emitting CSV rows.

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;

use transit_anon::anonymity::{metrics, Outputs};
use transit_anon::domain::{Domain, NodeId};
use transit_anon::planners::{PlanResult, Planner};
use transit_anon::Horizon;

use crate::config::{ConfigError, Instance, Job};

pub const HEADER: [&str; 19] = [
    "scenario",
    "map",
    "s",
    "g",
    "n_transit",
    "k",
    "l",
    "m",
    "r",
    "planner",
    "partitioner",
    "merge_order",
    "heuristic",
    "apr",
    "mac",
    "coverage_completed",
    "total_time_s",
    "wrpt_expansions",
    "evaluated_partitions",
];

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub scenario: String,
    pub map: String,
    pub s: String,
    pub g: String,
    pub n_transit: usize,
    pub k: usize,
    pub l: f64,
    pub m: Horizon,
    pub r: u32,
    pub planner: String,
    pub partitioner: Option<String>,
    pub merge_order: Option<String>,
    pub heuristic: String,
    pub apr: Option<f64>,
    pub mac: Option<f64>,
    pub coverage_completed: bool,
    pub total_time_s: Option<f64>,
    pub wrpt_expansions: u64,
    pub evaluated_partitions: Option<u64>,
}

impl ResultRow {
    pub fn record(&self) -> Vec<String> {
        let opt = |v: Option<f64>| v.map(|x| format_sig(x, 6)).unwrap_or_default();
        vec![
            self.scenario.clone(),
            self.map.clone(),
            self.s.clone(),
            self.g.clone(),
            self.n_transit.to_string(),
            self.k.to_string(),
            self.l.to_string(),
            self.m.to_string(),
            self.r.to_string(),
            self.planner.clone(),
            self.partitioner.clone().unwrap_or_default(),
            self.merge_order.clone().unwrap_or_default(),
            self.heuristic.clone(),
            opt(self.apr),
            opt(self.mac),
            self.coverage_completed.to_string(),
            opt(self.total_time_s),
            self.wrpt_expansions.to_string(),
            self.evaluated_partitions
                .map(|e| e.to_string())
                .unwrap_or_default(),
        ]
    }
}

/// `v` rounded to `digits` significant digits, printed like C's `%g`.
pub fn format_sig(v: f64, digits: usize) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.*e}", digits.saturating_sub(1), v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if exp < -4 || exp >= digits as i32 {
        format!(
            "{}e{}{:02}",
            trim(mantissa),
            if exp < 0 { '-' } else { '+' },
            exp.abs()
        )
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim(&format!("{v:.decimals$}"))
    }
}

/// Everything one job produced.
#[derive(Debug, Clone)]
pub struct JobResult {
    pub row: ResultRow,
    /// Partition text for partition-based planners.
    pub partition: Option<String>,
    /// `<candidate>: <path labels>` or `<candidate>: failure`, one per line.
    pub outputs: String,
}

impl JobResult {
    pub fn timed_out(&self) -> bool {
        !self.row.coverage_completed
    }

    pub fn audit_text(&self) -> String {
        let mut out = String::new();
        if let Some(p) = &self.partition {
            out.push_str("[partition]\n");
            out.push_str(p);
        }
        out.push_str("[outputs]\n");
        out.push_str(&self.outputs);
        out
    }
}

pub fn outputs_text(domain: &Domain<f64>, outputs: &Outputs<f64>) -> String {
    let mut out = String::new();
    for (t, r) in &outputs.results {
        out.push_str(domain.label(*t));
        out.push(':');
        match r.path() {
            Some(p) => {
                for n in p.nodes() {
                    out.push(' ');
                    out.push_str(domain.label(*n));
                }
            }
            None => out.push_str(" failure"),
        }
        out.push('\n');
    }
    out
}

/// Reads the `[outputs]` section of an audit file back into planner outputs.
pub fn parse_outputs(domain: &Domain<f64>, text: &str) -> Result<Outputs<f64>, String> {
    let section = text
        .split_once("[outputs]\n")
        .map(|(_, rest)| rest)
        .ok_or("missing [outputs] section")?;
    let mut results = Vec::new();
    for line in section.lines().filter(|l| !l.trim().is_empty()) {
        let (t, rest) = line.split_once(": ").ok_or("missing ': '")?;
        let t = domain
            .by_label(t)
            .ok_or_else(|| format!("unknown node {t}"))?;
        let words: Vec<&str> = rest.split_whitespace().collect();
        let r = if words == ["failure"] {
            PlanResult::Failure
        } else {
            let nodes = words
                .iter()
                .map(|w| {
                    domain
                        .by_label(w)
                        .ok_or_else(|| format!("unknown node {w}"))
                })
                .collect::<Result<Vec<NodeId>, _>>()?;
            let path = domain.path(nodes).map_err(|e| e.to_string())?;
            PlanResult::Planned {
                shared_prefix: path.len(),
                path,
                group: None,
            }
        };
        results.push((t, r));
    }
    Ok(Outputs { results })
}

pub fn run_job(inst: &Instance, job: &Job, timing: bool) -> Result<JobResult, ConfigError> {
    let built = inst.build(job.r)?;
    let (d, s, g) = (&built.domain, built.s, built.g);
    let cfg = job.planner;
    let planner = Planner::new(d, s, g, cfg).map_err(|e| ConfigError::Scenario {
        scenario: inst.scenario.clone(),
        message: e.to_string(),
    })?;

    let started = Instant::now();
    if job.uses_partition() {
        planner.partition();
    }
    let outputs = Outputs::collect(d, |t| planner.plan(t));
    let elapsed = started.elapsed();

    let m = metrics(d, s, g, &outputs, cfg.k, cfg.ell, cfg.m);
    let partition = job.uses_partition().then(|| planner.partition());
    let row = ResultRow {
        scenario: inst.label.clone(),
        map: inst.map_name.clone(),
        s: d.label(s).to_string(),
        g: d.label(g).to_string(),
        n_transit: d.transit().len(),
        k: cfg.k,
        l: cfg.ell,
        m: cfg.m,
        r: d.radius(),
        planner: cfg.kind.name().to_string(),
        partitioner: job
            .uses_partition()
            .then(|| cfg.partitioner.name().to_string()),
        merge_order: job.merge_order.map(|o| o.name().to_string()),
        heuristic: job.heuristic.name().to_string(),
        apr: m.apr,
        mac: m.mac,
        coverage_completed: partition.is_none_or(|p| p.stats.completed),
        total_time_s: timing.then_some(elapsed.as_secs_f64()),
        wrpt_expansions: planner.expansions(),
        evaluated_partitions: partition.map(|p| p.stats.evaluated_partitions),
    };
    Ok(JobResult {
        row,
        partition: partition.map(|p| p.to_text(d)),
        outputs: outputs_text(d, &outputs),
    })
}

/// Runs every job on `threads` workers; results keep job order.
pub fn execute(
    instances: &[Instance],
    jobs: &[Job],
    timing: bool,
    threads: usize,
) -> anyhow::Result<Vec<JobResult>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()?;
    let results: Vec<Result<JobResult, ConfigError>> = pool.install(|| {
        jobs.par_iter()
            .map(|job| run_job(&instances[job.instance], job, timing))
            .collect()
    });
    Ok(results.into_iter().collect::<Result<_, _>>()?)
}

pub fn write_csv<W: Write>(rows: &[ResultRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for r in rows {
        w.write_record(r.record())?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig(0.0, 6), "0");
        assert_eq!(format_sig(1.0, 6), "1");
        assert_eq!(format_sig(0.6, 6), "0.6");
        assert_eq!(format_sig(1.0 / 3.0, 6), "0.333333");
        assert_eq!(format_sig(123.456789, 6), "123.457");
        assert_eq!(format_sig(1234567.0, 6), "1.23457e+06");
        assert_eq!(format_sig(0.0000123456789, 6), "1.23457e-05");
        assert_eq!(format_sig(2.5e-4, 6), "0.00025");
    }
}
