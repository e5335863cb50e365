use std::collections::BTreeSet;

use incscc::oracle::{scc_snapshots, CombiningTimes};
use incscc::synthetic::random_instance;
use incscc::{build_offline, EdgeSequence};

#[test]
fn queries_match_snapshots() {
    for seed in 0..60 {
        let (n, sigma) = random_instance(seed, 20, 80);
        let tree = build_offline(n, &sigma).unwrap();
        let snaps = scc_snapshots(n, &sigma);
        for t in 1..=sigma.len() {
            let truth = snaps.at(t);
            for u in 0..n {
                for v in 0..n {
                    assert_eq!(
                        tree.query(u, v, t).unwrap(),
                        truth.same(u, v),
                        "seed {seed} t={t} ({u},{v})"
                    );
                }
            }
        }
        assert_eq!(tree.final_component_count(), snaps.at(sigma.len()).len());
    }
}

#[test]
fn every_level_holds_each_edge_at_most_once() {
    for seed in 0..60 {
        let (n, sigma) = random_instance(seed, 30, 200);
        let m = sigma.len();
        let tree = build_offline(n, &sigma).unwrap();
        let mut seen: Vec<Vec<u32>> = vec![vec![0; m]; tree.depth()];
        for sp in tree.subproblems() {
            for id in sp.graph().edge_ids() {
                seen[sp.depth()][id] += 1;
            }
        }
        assert!(seen[0].iter().all(|&c| c == 1));
        for (depth, counts) in seen.iter().enumerate() {
            assert!(counts.iter().all(|&c| c <= 1), "seed {seed} depth {depth}");
        }
        for &total in tree.level_edge_counts() {
            assert!(total <= m);
        }
    }
}

#[test]
fn subproblem_edges_follow_combining_times() {
    for seed in 0..60 {
        let (n, sigma) = random_instance(seed, 25, 150);
        let m = sigma.len();
        let tree = build_offline(n, &sigma).unwrap();
        let times = CombiningTimes::compute(n, &sigma);
        for sp in tree.subproblems() {
            let iv = sp.interval();
            let want: BTreeSet<usize> = sigma
                .iter()
                .filter(|e| match times.get(e.src, e.dst) {
                    Some(c) => iv.lo < c && c <= iv.hi,
                    None => iv.hi == m + 1,
                })
                .map(|e| e.id)
                .collect();
            let got: BTreeSet<usize> = sp.graph().edge_ids().collect();
            assert_eq!(got, want, "seed {seed} node {iv}");
        }
    }
}

#[test]
fn every_time_is_one_midpoint() {
    let sigma = EdgeSequence::from_pairs((0..99).map(|i| (i, i + 1))).unwrap();
    let tree = build_offline(100, &sigma).unwrap();
    let mut mids: Vec<usize> = tree.subproblems().map(|sp| sp.interval().mid()).collect();
    mids.sort_unstable();
    assert_eq!(mids, (1..=99).collect::<Vec<_>>());
    // a path graph never closes a cycle
    assert!(tree.subproblems().all(|sp| sp.split_edge_ids().0.is_empty()));
    assert_eq!(tree.depth(), 7);
}
