//! Shared checks for the lemma and acceptance suites.

use std::collections::BTreeSet;

use incscc::oracle::{check_equivalence, CombiningTimes, EquivalenceReport};
use incscc::perturb::perturb;
use incscc::{edge_errors, EdgeSequence, Interval, LearnedIncScc};

fn predictions(sigma: &EdgeSequence, seed: u64) -> Vec<(String, EdgeSequence)> {
    let mut out = vec![("perfect".to_string(), sigma.clone())];
    for s in [2.0, 5.0, 20.0] {
        out.push((format!("S={s}"), perturb(sigma, s, seed)));
    }
    out.push(("reversed".into(), sigma.reversed()));
    out
}

/// Edge ids whose combining time in the given prediction places them in
/// `iv`: times are owned by the half-open range `(lo, hi]`, and pairs that
/// never combine belong to the right spine.
fn expected_edges(iv: Interval, m: usize, seq: &EdgeSequence, times: &CombiningTimes) -> BTreeSet<usize> {
    seq.iter()
        .filter(|e| match times.get(e.src, e.dst) {
            Some(c) => iv.lo < c && c <= iv.hi,
            None => iv.hi == m + 1,
        })
        .map(|e| e.id)
        .collect()
}

#[derive(Default)]
pub struct Tally {
    pub runs: usize,
    pub path_nodes: usize,
    pub rebuilds: usize,
}

/// Runs the learned structure under several predictions of `sigma`,
/// checking position error, subproblem edge sets, combining-time drift and
/// the trigger window of every repeat build. `slack` widens that window on
/// both sides.
pub fn check_instance(seed: u64, n: usize, sigma: &EdgeSequence, slack: usize, tally: &mut Tally) {
    let m = sigma.len();
    let truth_pos = sigma.positions();
    for (regime, sigma_hat) in predictions(sigma, seed) {
        let ctx = format!("seed {seed} {regime}");
        let eta = edge_errors(sigma, &sigma_hat).unwrap().eta_max;
        let initial_times = CombiningTimes::compute(n, &sigma_hat);
        let mut s = LearnedIncScc::traced(n, &sigma_hat).unwrap();
        tally.runs += 1;

        for e in sigma {
            s.insert(e).unwrap();
            let t = s.current_time();

            // positions never stray further than the initial error
            for (id, &truth) in truth_pos.iter().enumerate() {
                let p = s.prediction().position_of(id).unwrap();
                assert!(p.abs_diff(truth) <= eta, "{ctx} t={t}: edge {id} at {p}");
            }

            let ids: Vec<usize> = s.prediction().ids().collect();
            let current = sigma.reordered(&ids).unwrap();
            let times = CombiningTimes::compute(n, &current);

            // every kept node matches the tree the offline algorithm would
            // build on the current prediction
            for (depth, iv) in s.path().into_iter().enumerate() {
                let got: BTreeSet<usize> = s.path_graph(depth).edge_ids().collect();
                assert_eq!(got, expected_edges(iv, m, &current, &times), "{ctx} t={t} node {iv}");
                tally.path_nodes += 1;
            }

            // combining times drift by at most 2η
            for u in 0..n {
                for v in 0..n {
                    if u == v {
                        continue;
                    }
                    match (initial_times.get(u, v), times.get(u, v)) {
                        (Some(a), Some(b)) => {
                            assert!(a.abs_diff(b) <= 2 * eta, "{ctx} t={t}: C({u},{v}) {a} -> {b}")
                        }
                        (None, None) => {}
                        (a, b) => panic!("{ctx} t={t}: C({u},{v}) {a:?} -> {b:?}"),
                    }
                }
            }
        }

        // a repeat build of an interval is triggered by an edge predicted
        // within η after its midpoint or after its last midpoint time
        for ev in s.trace() {
            if ev.previous_build.is_none() {
                continue;
            }
            let x = ev.interval.mid();
            let last = ev.interval.hi - 1;
            let within = |a: usize| a.saturating_sub(slack) <= ev.t_hat && ev.t_hat <= a + eta + slack;
            let (near_mid, near_end) = (within(x), within(last));
            assert!(
                near_mid || near_end,
                "{ctx}: rebuild of {} at t={} with t_hat={} (eta {eta})",
                ev.interval,
                ev.t,
                ev.t_hat
            );
            tally.rebuilds += 1;
        }
        assert_eq!(
            check_equivalence(&mut LearnedIncScc::new(n, &sigma_hat).unwrap(), sigma),
            EquivalenceReport::Success { inserts: m }
        );
    }
}
