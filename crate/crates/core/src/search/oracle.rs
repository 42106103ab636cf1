use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet, VecDeque};

use super::SearchError;
use crate::model::PlaceTimedNet;
use crate::petri::TransitionId;
use crate::timing::{ScheduleState, StateKey, Time};

/// Order in which enabled transitions are tried.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Traversal {
    Forward,
    Reverse,
}

#[derive(Debug, Clone)]
pub struct OracleSolution {
    pub makespan: Time,
    pub schedule: ScheduleState,
    pub firings: Vec<TransitionId>,
    /// Distinct timed states settled before the goal.
    pub states: usize,
}

fn successors(
    net: &PlaceTimedNet,
    state: &ScheduleState,
    order: Traversal,
) -> Vec<(TransitionId, ScheduleState)> {
    let mut ts: Vec<TransitionId> = net.net().transition_ids().collect();
    if order == Traversal::Reverse {
        ts.reverse();
    }
    ts.into_iter()
        .filter(|&t| net.net().is_enabled(state.marking(), t))
        .map(|t| {
            (
                t,
                state.apply_events(net, &[t]).expect("enabled transition"),
            )
        })
        .collect()
}

/// Minimal makespan over every firing order of the full net, each operation
/// placed at its earliest feasible slot. Best-first on `g`, which never
/// decreases along a firing, so the first settled goal is optimal.
pub fn oracle_optimal(
    net: &PlaceTimedNet,
    cap: usize,
) -> Result<Option<OracleSolution>, SearchError> {
    oracle_optimal_with(net, cap, Traversal::Forward)
}

pub fn oracle_optimal_with(
    net: &PlaceTimedNet,
    cap: usize,
    order: Traversal,
) -> Result<Option<OracleSolution>, SearchError> {
    // Arena of (state, parent, transition into it).
    let mut arena: Vec<(ScheduleState, Option<usize>, Option<TransitionId>)> =
        vec![(ScheduleState::initial(net), None, None)];
    let mut heap = BinaryHeap::from([Reverse((0, 0usize))]);
    let mut settled: HashSet<StateKey> = HashSet::new();
    while let Some(Reverse((g, idx))) = heap.pop() {
        if !settled.insert(arena[idx].0.key()) {
            continue;
        }
        if settled.len() > cap {
            return Err(SearchError::StateCapExceeded { cap });
        }
        if arena[idx].0.marking() == net.mf() {
            let mut firings = Vec::new();
            let mut cur = idx;
            while let (_, Some(parent), Some(t)) = &arena[cur] {
                firings.push(*t);
                cur = *parent;
            }
            firings.reverse();
            return Ok(Some(OracleSolution {
                makespan: g,
                schedule: arena[idx].0.clone(),
                firings,
                states: settled.len(),
            }));
        }
        for (t, next) in successors(net, &arena[idx].0, order) {
            if settled.contains(&next.key()) {
                continue;
            }
            heap.push(Reverse((next.g(), arena.len())));
            arena.push((next, Some(idx), Some(t)));
        }
    }
    Ok(None)
}

/// Every timed state reachable from the initial one, with the best makespan
/// of any completion through it.
#[derive(Debug, Clone)]
pub struct Exploration {
    pub states: Vec<ScheduleState>,
    /// `None` for states from which the final marking is unreachable.
    pub best: Vec<Option<Time>>,
}

impl Exploration {
    pub fn optimum(&self) -> Option<Time> {
        self.best.first().copied().flatten()
    }
}

/// Breadth-first enumeration of all timed states. Each firing moves one part
/// one place along its route, so BFS layers are progress layers and a reverse
/// sweep sees every successor before its predecessors.
pub fn explore(net: &PlaceTimedNet, cap: usize) -> Result<Exploration, SearchError> {
    let root = ScheduleState::initial(net);
    let mut index: HashMap<StateKey, usize> = HashMap::from([(root.key(), 0)]);
    let mut states = vec![root];
    let mut succ: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let mut out = Vec::new();
        for (_, next) in successors(net, &states[i], Traversal::Forward) {
            let key = next.key();
            let j = match index.get(&key) {
                Some(&j) => j,
                None => {
                    if states.len() >= cap {
                        return Err(SearchError::StateCapExceeded { cap });
                    }
                    index.insert(key, states.len());
                    states.push(next);
                    queue.push_back(states.len() - 1);
                    states.len() - 1
                }
            };
            out.push(j);
        }
        if succ.len() <= i {
            succ.resize(i + 1, Vec::new());
        }
        succ[i] = out;
    }
    let mut best: Vec<Option<Time>> = vec![None; states.len()];
    for i in (0..states.len()).rev() {
        best[i] = if states[i].marking() == net.mf() {
            Some(states[i].g())
        } else {
            succ[i].iter().filter_map(|&j| best[j]).min()
        };
    }
    Ok(Exploration { states, best })
}
