use transit_anon::anonymity::{metrics, verify_outputs, Outputs};
use transit_anon::domain::{build_domain, parse_fixture, parse_map, Domain, NodeId};
use transit_anon::partition::{merge_bb, MergeOrder, SearchParams};
use transit_anon::planners::{Planner, PlannerConfig, PlannerKind};
use transit_anon::{Domain64, Fixture64, Horizon};

fn pockets() -> (Domain64, NodeId, NodeId) {
    let map = parse_map(include_str!("../fixtures/pockets.map")).unwrap();
    let transit = [(1, 0), (3, 0), (1, 2), (3, 2)];
    let d: Domain<f64> = build_domain(&map, &transit, 1, true).unwrap();
    let (s, g) = (d.node_at(0, 1).unwrap(), d.node_at(4, 1).unwrap());
    (d, s, g)
}

fn fork() -> Fixture64 {
    parse_fixture(include_str!("../fixtures/directed_fork.graph")).unwrap()
}

#[test]
fn pockets_any_route_covers_everything() {
    let (d, s, g) = pockets();
    let shortest = d.shortest_path(s, g).unwrap();
    for &t in d.transit() {
        assert!(d.covers(&shortest, t));
    }
    let p = merge_bb(&d, s, g, SearchParams::new(4, 1.0), MergeOrder::CostAsc);
    assert_eq!(p.subsets.len(), 1);
    assert_eq!(p.subsets[0].members.len(), 4);
    assert_eq!(p.mac, 0.0);
}

#[test]
fn pockets_full_cover_is_anonymized() {
    let (d, s, g) = pockets();
    let cfg = PlannerConfig::new(PlannerKind::FullCover, 4, 1.0, Horizon::Unbounded);
    let planner = Planner::new(&d, s, g, cfg).unwrap();
    let out = Outputs::collect(&d, |t| planner.plan(t));
    for &t in d.transit() {
        let r = verify_outputs(&d, &out, t, 4, 1.0, Horizon::Unbounded);
        assert!(r.anonymized, "{}", d.label(t));
        assert_eq!(r.equal_prefix.len(), 4);
    }
}

#[test]
fn fork_caps_anonymity_at_three_of_five() {
    let f = fork();
    let d = &f.domain;
    let cfg = PlannerConfig::new(PlannerKind::Pbp, 3, 1.0, Horizon::Unbounded);
    let planner = Planner::new(d, f.start, f.goal, cfg).unwrap();
    let part = planner.partition();
    assert_eq!(part.ap, 3);
    assert_eq!(part.bucket.len(), 2);
    assert!(!part.guaranteed);

    let out = Outputs::collect(d, |t| planner.plan(t));
    let row = metrics(d, f.start, f.goal, &out, 3, 1.0, Horizon::Unbounded);
    assert_eq!(row.coverable, 5);
    assert_eq!(row.anonymized, 3);
    assert_eq!(row.apr, Some(0.6));
    assert_eq!(row.delta, None);
}

#[test]
fn fork_no_planner_does_better() {
    // every s -> g route is one of the two branches, so any output covers
    // at most three candidates and at most three can share it
    let f = fork();
    let d = &f.domain;
    let a = d
        .path(
            ["s", "t1", "t2", "t3", "g"]
                .map(|n| d.by_label(n).unwrap())
                .to_vec(),
        )
        .unwrap();
    let b = d
        .path(
            ["s", "t1", "t4", "t5", "g"]
                .map(|n| d.by_label(n).unwrap())
                .to_vec(),
        )
        .unwrap();
    let mut best = 0;
    for mask in 0u32..32 {
        let out = Outputs::collect(d, |t| {
            let i = d.transit().iter().position(|&x| x == t).unwrap();
            let p = if mask & (1 << i) == 0 { &a } else { &b };
            if d.covers(p, t) {
                transit_anon::planners::PlanResult::Planned {
                    path: p.clone(),
                    group: None,
                    shared_prefix: p.len(),
                }
            } else {
                transit_anon::planners::PlanResult::Failure
            }
        });
        let row = metrics(d, f.start, f.goal, &out, 3, 1.0, Horizon::Unbounded);
        best = best.max(row.anonymized);
    }
    assert_eq!(best, 3);
}
