//! Acceptance criteria 1-12. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::time::{Duration, Instant};

use serde_json::json;

use transit_anon::anonymity::{is_anonymizable_tuple, metrics, verify_outputs, Outputs};
use transit_anon::domain::{build_domain, parse_fixture, Domain, NodeId};
use transit_anon::partition::{df_bb, exhaustive_oracle, merge_bb, MergeOrder, SearchParams};
use transit_anon::planners::{PartitionerKind, Planner, PlannerConfig, PlannerKind};
use transit_anon::sample::{random_grid, sample_instances};
use transit_anon::seed::rng_for;
use transit_anon::wrpt::{oracle_cost_to_go, oracle_wrpt, Heuristic, Wrpt};
use transit_anon::Horizon;
use transit_anon_cli::config::{expand, ConfigFile};
use transit_anon_cli::run::{execute, write_csv};

use rand::Rng;

const GRID: usize = 12;
const OBSTACLES: f64 = 0.2;
const WRPT_INSTANCES: usize = 200;
const WRPT_SECONDS: f64 = 60.0;
const ADMISSIBILITY_STATES: usize = 10_000;
const STATES_PER_INSTANCE: usize = 100;
const TUNNEL_WIN_SHARE: f64 = 0.95;
const PARTITION_INSTANCES: usize = 50;
const PARTITION_SECONDS: f64 = 300.0;
const MAC_TOL: f64 = 1e-9;
const NAIVE_INSTANCES: usize = 25;
const NAIVE_RATIO: f64 = 0.8;
const RBP_RATIOS: [f64; 5] = [0.1, 0.5, 1.0, 5.0, 10.0];
const RBP_SEEDS: u64 = 20;
const RBP_INSTANCES: usize = 5;
const RELAXATIONS: usize = 1_000;
const FORK_APR: f64 = 0.6;

struct Case {
    d: Domain<f64>,
    s: NodeId,
    g: NodeId,
}

/// `index`-th random instance with `n` candidates; skips seeds whose map
/// has no connected start/goal pair.
fn case(index: u64, salt: u64, n: usize, r: u32) -> Case {
    for attempt in 0.. {
        let seed = index * 1_000 + attempt + salt * 1_000_000;
        let map = random_grid(GRID, GRID, OBSTACLES, seed);
        let Ok(mut inst) = sample_instances(&map, n, 1, seed) else {
            continue;
        };
        let inst = inst.pop().unwrap();
        let d = build_domain(&map, &inst.transit, r, true).unwrap();
        let s = d.node_at(inst.start.0, inst.start.1).unwrap();
        let g = d.node_at(inst.goal.0, inst.goal.1).unwrap();
        return Case { d, s, g };
    }
    unreachable!()
}

/// The criterion-1 suite: `|ψ|` cycles through 1..=4 and `r` through 0..=2.
fn wrpt_suite(n: Option<usize>) -> impl Iterator<Item = Case> {
    (0..WRPT_INSTANCES as u64).map(move |i| {
        let size = n.unwrap_or(1 + (i % 4) as usize);
        case(i, 1, size, ((i / 4) % 3) as u32)
    })
}

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

struct WrptRun {
    mismatches: usize,
    tunnel_wins: usize,
    states: usize,
    violations: usize,
    elapsed: Duration,
}

fn wrpt_runs() -> WrptRun {
    let mut run = WrptRun {
        mismatches: 0,
        tunnel_wins: 0,
        states: 0,
        violations: 0,
        elapsed: Duration::ZERO,
    };
    let mut search_time = Duration::ZERO;
    for c in wrpt_suite(None) {
        let targets = c.d.transit().to_vec();
        let t0 = Instant::now();
        let tunnel = Wrpt::new(&c.d, c.s, c.g, &targets)
            .unwrap()
            .heuristic(Heuristic::Tunnel)
            .trace(true)
            .solve_traced();
        let blind = Wrpt::new(&c.d, c.s, c.g, &targets)
            .unwrap()
            .heuristic(Heuristic::Blind)
            .solve();
        let oracle = oracle_wrpt(&c.d, c.s, c.g, &targets);
        search_time += t0.elapsed();
        let (a, b, o) = (tunnel.result.cost(), blind.cost(), oracle.cost());
        if a != o || b != o {
            run.mismatches += 1;
        }
        if tunnel.result.expansions <= blind.expansions {
            run.tunnel_wins += 1;
        }
        let stride = (tunnel.expanded.len() / STATES_PER_INSTANCE).max(1);
        for st in tunnel
            .expanded
            .iter()
            .step_by(stride)
            .take(STATES_PER_INSTANCE)
        {
            run.states += 1;
            let rest =
                oracle_cost_to_go(&c.d, st.node, &st.uncovered, c.g).unwrap_or(f64::INFINITY);
            if st.h > rest + MAC_TOL {
                run.violations += 1;
            }
        }
    }
    run.elapsed = search_time;
    run
}

fn criterion_1(w: &WrptRun) -> Verdict {
    let secs = w.elapsed.as_secs_f64();
    verdict(
        w.mismatches == 0 && secs < WRPT_SECONDS,
        format!(
            "{} mismatches over {WRPT_INSTANCES} instances, {secs:.1}s (limit {WRPT_SECONDS}s)",
            w.mismatches
        ),
    )
}

fn criterion_2(w: &WrptRun) -> Verdict {
    verdict(
        w.violations == 0 && w.states >= ADMISSIBILITY_STATES,
        format!(
            "{} violations over {} sampled states (need >= {ADMISSIBILITY_STATES})",
            w.violations, w.states
        ),
    )
}

fn criterion_3(w: &WrptRun) -> Verdict {
    let share = w.tunnel_wins as f64 / WRPT_INSTANCES as f64;
    verdict(
        share >= TUNNEL_WIN_SHARE,
        format!(
            "tunnel <= blind expansions on {:.1}% (need >= {:.0}%)",
            share * 100.0,
            TUNNEL_WIN_SHARE * 100.0
        ),
    )
}

fn criterion_4() -> Verdict {
    let started = Instant::now();
    let (mut bad, mut compared) = (0, 0);
    for i in 0..PARTITION_INSTANCES as u64 {
        let c = case(i, 4, 4 + (i % 3) as usize, 0);
        let oracle = exhaustive_oracle(&c.d, c.s, c.g, 2, 1.0);
        let params = SearchParams::new(2, 1.0);
        for p in [
            merge_bb(&c.d, c.s, c.g, params, MergeOrder::CostAsc),
            df_bb(&c.d, c.s, c.g, params),
        ] {
            if !p.stats.completed {
                continue;
            }
            compared += 1;
            if p.ap != oracle.ap || (p.mac - oracle.mac).abs() > MAC_TOL {
                bad += 1;
            }
        }
    }
    let secs = started.elapsed().as_secs_f64();
    verdict(
        bad == 0 && compared == 2 * PARTITION_INSTANCES && secs < PARTITION_SECONDS,
        format!("{bad} mismatches in {compared} completed runs, {secs:.1}s (limit {PARTITION_SECONDS}s)"),
    )
}

fn pbp(c: &Case, k: usize, ell: f64) -> (Outputs<f64>, bool) {
    let cfg = PlannerConfig::new(PlannerKind::Pbp, k, ell, Horizon::Unbounded);
    let planner = Planner::new(&c.d, c.s, c.g, cfg).unwrap();
    let completed = planner.partition().stats.completed;
    (Outputs::collect(&c.d, |t| planner.plan(t)), completed)
}

/// Instances where every coverable candidate is anonymizable but Pbp
/// leaves some unanonymized, over `count` instances with `|T| = 6`.
fn completeness(k: usize, ell: f64, count: u64) -> (usize, usize) {
    let (mut eligible, mut short) = (0, 0);
    for i in 0..count {
        let c = case(i, 5, 6, (i % 3) as u32);
        let cov = transit_anon::anonymity::coverable_candidates(&c.d, c.s, c.g);
        let all = !cov.is_empty()
            && cov
                .iter()
                .all(|&t| is_anonymizable_tuple(&c.d, c.s, c.g, t, k, ell).unwrap());
        if !all {
            continue;
        }
        let (out, completed) = pbp(&c, k, ell);
        if !completed {
            continue;
        }
        eligible += 1;
        let row = metrics(&c.d, c.s, c.g, &out, k, ell, Horizon::Unbounded);
        if row.apr != Some(1.0) {
            short += 1;
        }
    }
    (eligible, short)
}

fn criterion_5() -> Verdict {
    let (e2, s2) = completeness(2, 1.0, 40);
    let (e3, s3) = completeness(3, 1.0, 40);
    verdict(
        s2 == 0 && s3 == 0 && e2 > 0 && e3 > 0,
        format!("scope l=1 (see note 5): APR < 1 on {s2}/{e2} eligible instances at k=2, {s3}/{e3} at k=3"),
    )
}

fn criterion_5_wider_spread() -> String {
    let (e, s) = completeness(2, 2.0, 40);
    // candidates at 1, 2 and 4 on a corridor: each has a partner two steps
    // away, but 1 and 2 cannot share a subset, so one is left out
    let map = transit_anon::domain::GridMap::from_rows(&["......."]).unwrap();
    let d: Domain<f64> = build_domain(&map, &[(1, 0), (2, 0), (4, 0)], 0, true).unwrap();
    let c = Case {
        s: d.node_at(0, 0).unwrap(),
        g: d.node_at(6, 0).unwrap(),
        d,
    };
    let every =
        c.d.transit()
            .iter()
            .all(|&t| is_anonymizable_tuple(&c.d, c.s, c.g, t, 2, 2.0).unwrap());
    let (out, _) = pbp(&c, 2, 2.0);
    let apr = metrics(&c.d, c.s, c.g, &out, 2, 2.0, Horizon::Unbounded)
        .apr
        .unwrap_or(0.0);
    format!(
        "l=2, k=2: APR < 1 on {s}/{e} random eligible instances; corridor 1,2,4: all anonymizable = {every}, APR = {apr:.3}"
    )
}

fn criterion_6() -> Verdict {
    let (k, ell, m) = (2, 1.0, Horizon::Steps(5));
    let (mut checked, mut failures) = (0usize, 0usize);
    for c in wrpt_suite(Some(8)) {
        let runs = [
            (
                PlannerConfig::new(PlannerKind::Pbp, k, ell, Horizon::Unbounded),
                ell,
                Horizon::Unbounded,
            ),
            (
                PlannerConfig::new(PlannerKind::Rbp, k, ell, m).seed(3),
                ell,
                m,
            ),
            (
                PlannerConfig::new(PlannerKind::Cbp, k, ell, m).seed(3),
                0.0,
                m,
            ),
        ];
        for (cfg, check_ell, check_m) in runs {
            let planner = Planner::new(&c.d, c.s, c.g, cfg).unwrap();
            if cfg.kind == PlannerKind::Pbp && !planner.partition().stats.completed {
                continue;
            }
            let out = Outputs::collect(&c.d, |t| planner.plan(t));
            for (t, r) in &out.results {
                if r.is_failure() {
                    continue;
                }
                checked += 1;
                if !verify_outputs(&c.d, &out, *t, k, check_ell, check_m).anonymized {
                    failures += 1;
                }
            }
        }
    }
    verdict(
        failures == 0 && checked > 0,
        format!("{failures} failures over {checked} outputs (Pbp, Rbp, Cbp)"),
    )
}

fn criterion_7() -> Verdict {
    let (k, ell) = (2, 1.0);
    let (mut used, mut worse, mut ratios) = (0, 0, Vec::new());
    let mut i = 0u64;
    while used < NAIVE_INSTANCES && i < 500 {
        let c = case(i, 7, 8, 0);
        i += 1;
        let run = |part: PartitionerKind| {
            let cfg = PlannerConfig::new(PlannerKind::Pbp, k, ell, Horizon::Unbounded)
                .partitioner(part)
                .seed(i);
            let planner = Planner::new(&c.d, c.s, c.g, cfg).unwrap();
            let out = Outputs::collect(&c.d, |t| planner.plan(t));
            metrics(&c.d, c.s, c.g, &out, k, ell, Horizon::Unbounded)
        };
        let (bb, naive) = (run(PartitionerKind::MergeBb), run(PartitionerKind::Naive));
        if bb.apr != Some(1.0) || naive.apr != Some(1.0) {
            continue;
        }
        used += 1;
        let (a, b) = (bb.mac.unwrap(), naive.mac.unwrap());
        if a > b + MAC_TOL {
            worse += 1;
        }
        if b > 0.0 {
            ratios.push(a / b);
        }
    }
    let mean = ratios.iter().sum::<f64>() / ratios.len().max(1) as f64;
    verdict(
        used == NAIVE_INSTANCES && worse == 0 && !ratios.is_empty() && mean < NAIVE_RATIO,
        format!(
            "{worse}/{used} instances with mac(Merge-BB) > mac(Naive); mean ratio {mean:.3} over {} (need < {NAIVE_RATIO})",
            ratios.len()
        ),
    )
}

fn criterion_8() -> Verdict {
    let (k, ell) = (2, 1.0);
    let (mut checked, mut bad) = (0, 0);
    for i in 0..20 {
        let c = case(i, 8, 6, (i % 2) as u32);
        let cfg = PlannerConfig::new(PlannerKind::Pbp, k, ell, Horizon::Unbounded);
        let planner = Planner::new(&c.d, c.s, c.g, cfg).unwrap();
        let part = planner.partition();
        let Some(longest) = part
            .subsets
            .iter()
            .filter_map(|s| s.covering_path.as_ref().map(|p| p.len()))
            .max()
        else {
            continue;
        };
        let pbp = Outputs::collect(&c.d, |t| planner.plan(t));
        let full = metrics(&c.d, c.s, c.g, &pbp, k, ell, Horizon::Unbounded).mac;
        for extra in [0, 3] {
            let m = Horizon::Steps(longest + extra);
            let mp = Planner::new(
                &c.d,
                c.s,
                c.g,
                PlannerConfig::new(PlannerKind::MPbp, k, ell, m),
            )
            .unwrap();
            let out = Outputs::collect(&c.d, |t| mp.plan(t));
            checked += 1;
            if metrics(&c.d, c.s, c.g, &out, k, ell, m).mac != full {
                bad += 1;
            }
        }
    }
    verdict(
        bad == 0 && checked > 0,
        format!("{bad} differences over {checked} (instance, m) pairs"),
    )
}

fn criterion_9() -> Verdict {
    let (k, ell) = (2, 1.0);
    let mut increasing = 0;
    let mut curves = Vec::new();
    for i in 0..RBP_INSTANCES as u64 {
        let c = case(i, 9, 6, 0);
        let base = c.d.shortest_path(c.s, c.g).unwrap().len() as f64;
        let curve: Vec<f64> = RBP_RATIOS
            .iter()
            .map(|ratio| {
                let m = Horizon::Steps(((ratio * base).round() as usize).max(1));
                let total: f64 = (0..RBP_SEEDS)
                    .map(|seed| {
                        let cfg = PlannerConfig::new(PlannerKind::Rbp, k, ell, m).seed(seed);
                        let planner = Planner::new(&c.d, c.s, c.g, cfg).unwrap();
                        let out = Outputs::collect(&c.d, |t| planner.plan(t));
                        metrics(&c.d, c.s, c.g, &out, k, ell, m).mac.unwrap_or(0.0)
                    })
                    .sum();
                total / RBP_SEEDS as f64
            })
            .collect();
        if curve.windows(2).all(|w| w[0] < w[1]) {
            increasing += 1;
        }
        curves.push(curve);
    }
    let shown: Vec<String> = curves
        .iter()
        .map(|c| {
            c.iter()
                .map(|v| format!("{v:.2}"))
                .collect::<Vec<_>>()
                .join("<")
        })
        .collect();
    verdict(
        increasing == RBP_INSTANCES,
        format!(
            "strictly increasing on {increasing}/{RBP_INSTANCES} instances [{}]",
            shown.join("; ")
        ),
    )
}

fn criterion_10() -> Verdict {
    let mut rng = rng_for(&[10]);
    let (mut positives, mut violations, mut done) = (0, 0, 0);
    let mut i = 0u64;
    while done < RELAXATIONS {
        let c = case(i, 10, 6, (i % 3) as u32);
        i += 1;
        let kind = [
            PlannerKind::Pbp,
            PlannerKind::Rbp,
            PlannerKind::Cbp,
            PlannerKind::FullCover,
        ][i as usize % 4];
        let m = if kind.uses_partition() || kind == PlannerKind::FullCover {
            Horizon::Unbounded
        } else {
            Horizon::Steps(4)
        };
        let planner =
            Planner::new(&c.d, c.s, c.g, PlannerConfig::new(kind, 2, 1.0, m).seed(i)).unwrap();
        let out = Outputs::collect(&c.d, |t| planner.plan(t));
        for _ in 0..50 {
            let t = c.d.transit()[rng.gen_range(0..c.d.transit().len())];
            let k = rng.gen_range(1..=4);
            let ell = rng.gen_range(0..=4) as f64;
            let m = if rng.gen_bool(0.3) {
                Horizon::Unbounded
            } else {
                Horizon::Steps(rng.gen_range(1..=12))
            };
            let k2 = rng.gen_range(1..=k);
            let ell2 = rng.gen_range(0..=ell as u32) as f64;
            let m2 = match m {
                Horizon::Steps(s) => Horizon::Steps(rng.gen_range(1..=s)),
                Horizon::Unbounded if rng.gen_bool(0.5) => Horizon::Unbounded,
                Horizon::Unbounded => Horizon::Steps(rng.gen_range(1..=12)),
            };
            done += 1;
            if verify_outputs(&c.d, &out, t, k, ell, m).anonymized {
                positives += 1;
                if !verify_outputs(&c.d, &out, t, k2, ell2, m2).anonymized {
                    violations += 1;
                }
            }
        }
    }
    verdict(
        violations == 0 && positives > 0,
        format!("{violations} violations over {done} relaxations ({positives} with an anonymized original)"),
    )
}

fn criterion_11() -> Verdict {
    let f = parse_fixture::<f64>(include_str!("../../core/fixtures/directed_fork.graph")).unwrap();
    let cfg = PlannerConfig::new(PlannerKind::Pbp, 3, 1.0, Horizon::Unbounded);
    let planner = Planner::new(&f.domain, f.start, f.goal, cfg).unwrap();
    let out = Outputs::collect(&f.domain, |t| planner.plan(t));
    let row = metrics(&f.domain, f.start, f.goal, &out, 3, 1.0, Horizon::Unbounded);
    verdict(
        row.apr == Some(FORK_APR) && row.anonymized == 3,
        format!(
            "APR {:?}, {} of {} anonymized",
            row.apr, row.anonymized, row.coverable
        ),
    )
}

fn criterion_12() -> Verdict {
    let dir = tempfile::TempDir::new().unwrap();
    std::fs::write(
        dir.path().join("grid.map"),
        random_grid(GRID, GRID, OBSTACLES, 12).to_text(),
    )
    .unwrap();
    let cfg: ConfigFile = serde_json::from_value(json!({
        "timing": false,
        "scenarios": [{
            "name": "det",
            "map": "grid.map",
            "s": "random",
            "g": "random",
            "transit": {"count": 6, "seed": 4},
            "instances": 3,
            "instance_seed": 12,
            "k": [2, 3],
            "m": [4],
            "planner": ["pbp", "m_pbp", "rbp", "cbp", "full_cover"],
            "partitioner": ["merge_bb", "df_bb", "naive"],
            "merge_order": ["cost_asc", "random"],
            "seed": 99
        }]
    }))
    .unwrap();
    let csv = |threads: usize| {
        let (instances, jobs) = expand(&cfg, dir.path()).unwrap();
        let rows: Vec<_> = execute(&instances, &jobs, cfg.timing, threads)
            .unwrap()
            .into_iter()
            .map(|r| r.row)
            .collect();
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        buf
    };
    let (a, b) = (csv(1), csv(4));
    let lines = a.iter().filter(|&&c| c == b'\n').count();
    verdict(
        a == b,
        format!(
            "{} bytes, {} rows, identical: {}",
            a.len(),
            lines - 1,
            a == b
        ),
    )
}

fn main() {
    let started = Instant::now();
    let wrpt = wrpt_runs();
    let results: Vec<(u32, Verdict)> = vec![
        (1, criterion_1(&wrpt)),
        (2, criterion_2(&wrpt)),
        (3, criterion_3(&wrpt)),
        (4, criterion_4()),
        (5, criterion_5()),
        (6, criterion_6()),
        (7, criterion_7()),
        (8, criterion_8()),
        (9, criterion_9()),
        (10, criterion_10()),
        (11, criterion_11()),
        (12, criterion_12()),
    ];
    let mut failed = 0;
    for (n, v) in &results {
        println!(
            "criterion {n:>2}: {} {}",
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
        failed += usize::from(!v.pass);
    }
    println!("note 5: {}", criterion_5_wider_spread());
    println!(
        "{} passed, {failed} failed in {:.1}s",
        results.len() - failed,
        started.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
