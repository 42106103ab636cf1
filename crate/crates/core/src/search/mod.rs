//! Generation-filtered beam search over basis markings, an exhaustive
//! optimal oracle, and a schedule checker.

mod check;
mod oracle;

pub use check::{check_schedule, ScheduleCheck};
pub use oracle::{
    explore, oracle_optimal, oracle_optimal_with, Exploration, OracleSolution, Traversal,
};

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::brg::{BasisPartition, Explainer, ExplanationVector};
use crate::heuristic::{Heuristic, Rational};
use crate::model::PlaceTimedNet;
use crate::petri::{Marking, TransitionId};
use crate::timing::{ScheduleState, Time};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("state cap of {cap} exceeded")]
    StateCapExceeded { cap: usize },
    #[error("beam widths must be at least 1")]
    ZeroBeam,
}

/// One explicit firing with the implicit suffix that enabled it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Event {
    pub transition: TransitionId,
    pub explanation: ExplanationVector,
    pub suffix: Vec<TransitionId>,
}

impl Event {
    /// The full firing sequence: implicit suffix, then the explicit
    /// transition.
    pub fn firings(&self) -> impl Iterator<Item = TransitionId> + '_ {
        self.suffix
            .iter()
            .copied()
            .chain(std::iter::once(self.transition))
    }
}

#[derive(Debug, Clone)]
pub struct SearchNode {
    pub marking: Marking,
    pub events: Vec<Event>,
    pub schedule: ScheduleState,
    pub g: Rational,
    pub h: Rational,
    pub f: Rational,
}

/// Beam widths; `None` means unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BeamParams {
    pub global: Option<usize>,
    pub local: Option<usize>,
}

impl BeamParams {
    pub fn new(global: usize, local: usize) -> Result<Self, SearchError> {
        if global == 0 || local == 0 {
            return Err(SearchError::ZeroBeam);
        }
        Ok(BeamParams {
            global: Some(global),
            local: Some(local),
        })
    }

    pub fn unbounded() -> Self {
        BeamParams {
            global: None,
            local: None,
        }
    }
}

impl Default for BeamParams {
    fn default() -> Self {
        BeamParams {
            global: Some(50),
            local: Some(5),
        }
    }
}

impl fmt::Display for BeamParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = |v: Option<usize>| v.map_or("inf".to_string(), |n| n.to_string());
        write!(f, "beta_g={} beta_l={}", w(self.global), w(self.local))
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    /// Events of the returned schedule, empty when none was found.
    pub events: Vec<Event>,
    /// Makespan of the returned schedule; `None` stands for infinity.
    pub f_max: Option<Time>,
    pub schedule: Option<ScheduleState>,
    /// Nodes taken from OPEN and expanded.
    pub expanded: usize,
    /// Markings in OPEN at each generation, in OPEN order.
    pub generations: Vec<Vec<Marking>>,
}

/// Search context for one net and partition, owning the explanation memo.
pub struct Planner<'a> {
    net: &'a PlaceTimedNet,
    explainer: Explainer<'a>,
    heuristic: Heuristic,
}

impl<'a> Planner<'a> {
    pub fn new(net: &'a PlaceTimedNet, part: &'a BasisPartition) -> Self {
        Planner {
            net,
            explainer: Explainer::new(net, part),
            heuristic: Heuristic::new(net),
        }
    }

    pub fn heuristic(&self) -> &Heuristic {
        &self.heuristic
    }

    pub fn explainer(&self) -> &Explainer<'a> {
        &self.explainer
    }

    pub fn root(&self) -> SearchNode {
        let schedule = ScheduleState::initial(self.net);
        let h = self.heuristic.h(self.net.m0());
        SearchNode {
            marking: self.net.m0().clone(),
            events: Vec::new(),
            schedule,
            g: Rational::from_integer(0),
            h,
            f: h,
        }
    }

    /// Successors of `node`: explicit transitions in net order, explanations
    /// in vector order.
    pub fn expand(&self, node: &SearchNode) -> Vec<SearchNode> {
        self.explainer
            .successors(&node.marking)
            .into_iter()
            .map(|(transition, e, marking)| {
                let event = Event {
                    transition,
                    explanation: e.vector,
                    suffix: e.witness,
                };
                let firings: Vec<TransitionId> = event.firings().collect();
                let schedule = node
                    .schedule
                    .apply_events(self.net, &firings)
                    .expect("witness sequences are firable");
                debug_assert_eq!(schedule.marking(), &marking);
                let g = Rational::from_integer(schedule.g());
                let h = self.heuristic.h(&marking);
                let mut events = node.events.clone();
                events.push(event);
                SearchNode {
                    marking,
                    events,
                    schedule,
                    g,
                    h,
                    f: g + h,
                }
            })
            .collect()
    }

    pub fn gfbs(&self, params: BeamParams) -> SearchOutcome {
        let mf = self.net.mf();
        let mut open = vec![self.root()];
        let mut expanded = 0;
        let mut generations = Vec::new();
        loop {
            generations.push(open.iter().map(|n| n.marking.clone()).collect());
            if let Some(i) = open.iter().position(|n| &n.marking == mf) {
                expanded += i;
                let goal = open.swap_remove(i);
                return SearchOutcome {
                    f_max: Some(goal.schedule.g()),
                    events: goal.events,
                    schedule: Some(goal.schedule),
                    expanded,
                    generations,
                };
            }
            if open.is_empty() {
                return SearchOutcome {
                    events: Vec::new(),
                    f_max: None,
                    schedule: None,
                    expanded,
                    generations,
                };
            }
            expanded += open.len();

            let children: Vec<Vec<SearchNode>> = open
                .par_iter()
                .map(|parent| {
                    let mut kids = self.expand(parent);
                    sort_by_fitness(&mut kids);
                    if let Some(local) = params.local {
                        kids.truncate(local);
                    }
                    kids
                })
                .collect();

            let mut generation: Vec<SearchNode> = Vec::new();
            let mut index: HashMap<Marking, usize> = HashMap::new();
            for child in children.into_iter().flatten() {
                match index.get(&child.marking) {
                    Some(&i) => {
                        let kept = &generation[i];
                        if (child.g, child.f) < (kept.g, kept.f) {
                            generation[i] = child;
                        }
                    }
                    None => {
                        index.insert(child.marking.clone(), generation.len());
                        generation.push(child);
                    }
                }
            }
            sort_by_fitness(&mut generation);
            if let Some(global) = params.global {
                generation.truncate(global);
            }
            open = generation;
        }
    }
}

// Stable, so equal (f, g) keep insertion order.
fn sort_by_fitness(nodes: &mut [SearchNode]) {
    nodes.sort_by_key(|n| (n.f, n.g));
}

pub fn expand(node: &SearchNode, net: &PlaceTimedNet, part: &BasisPartition) -> Vec<SearchNode> {
    Planner::new(net, part).expand(node)
}

pub fn gfbs(net: &PlaceTimedNet, part: &BasisPartition, params: BeamParams) -> SearchOutcome {
    Planner::new(net, part).gfbs(params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brg::{basis_successor, minimal_explanations};
    use crate::fixtures;
    use crate::model::parse_instance;
    use crate::timing::ScheduleRow;

    fn setup(text: &str, explicit: &[&str]) -> (PlaceTimedNet, BasisPartition) {
        let net = PlaceTimedNet::build(&parse_instance(text).unwrap());
        let part = BasisPartition::from_explicit_names(&net, explicit).unwrap();
        (net, part)
    }

    fn int(v: i64) -> Rational {
        Rational::from_integer(v)
    }

    #[test]
    fn root_successors_of_example_one() {
        let (net, part) = setup(fixtures::EXAMPLE1, &fixtures::EXAMPLE1_EXPLICIT);
        let planner = Planner::new(&net, &part);
        let kids = planner.expand(&planner.root());
        let f: Vec<Rational> = kids.iter().map(|k| k.f).collect();
        assert_eq!(f, vec![int(101), int(98), int(96)]);
        let g: Vec<Rational> = kids.iter().map(|k| k.g).collect();
        assert_eq!(g, vec![int(48), int(45), int(47)]);
        let basis = |i: usize| Marking::new(fixtures::EXAMPLE1_BASIS[i].to_vec());
        assert_eq!(kids[0].marking, basis(1));
        assert_eq!(kids[1].marking, basis(2));
        assert_eq!(kids[2].marking, basis(3));
    }

    #[test]
    fn successor_count_matches_explanations() {
        let (net, part) = setup(fixtures::TABLE3, &fixtures::TABLE3_EXPLICIT);
        let planner = Planner::new(&net, &part);
        let mut frontier = vec![planner.root()];
        for _ in 0..4 {
            let mut next = Vec::new();
            for node in &frontier {
                let expected: usize = part
                    .explicit()
                    .iter()
                    .map(|&t| {
                        minimal_explanations(&net, &node.marking, t, &part)
                            .unwrap()
                            .len()
                    })
                    .sum();
                let kids = planner.expand(node);
                assert_eq!(kids.len(), expected);
                next.extend(kids);
            }
            frontier = next;
        }
    }

    #[test]
    fn greedy_chain_on_example_one() {
        let (net, part) = setup(fixtures::EXAMPLE1, &fixtures::EXAMPLE1_EXPLICIT);
        let out = gfbs(&net, &part, BeamParams::new(1, 1).unwrap());
        let basis: Vec<Marking> = fixtures::EXAMPLE1_BASIS
            .iter()
            .map(|m| Marking::new(m.to_vec()))
            .collect();
        let chain: Vec<usize> = out
            .generations
            .iter()
            .map(|g| basis.iter().position(|b| b == &g[0]).unwrap())
            .collect();
        // M8 rather than M9: from M5 the part b1 already sits in p121, and M9
        // has it in p122.
        assert_eq!(chain, vec![0, 3, 5, 8, 10]);
        assert_eq!(out.f_max, Some(75));
        assert_eq!(out.expanded, 4);
    }

    #[test]
    fn table_three_reaches_twenty_one() {
        let (net, part) = setup(fixtures::TABLE3, &fixtures::TABLE3_EXPLICIT);
        let out = gfbs(&net, &part, BeamParams::new(3, 2).unwrap());
        assert_eq!(out.f_max, Some(21));
        // Six explicit events expand to twelve firings, six per part.
        assert_eq!(out.events.len(), 6);
        assert_eq!(out.events.iter().flat_map(Event::firings).count(), 12);
        let schedule = out.schedule.unwrap();
        let rows: Vec<ScheduleRow> = schedule
            .records()
            .iter()
            .map(|r| ScheduleRow::from_record(&net, r))
            .collect();
        let report = check_schedule(net.instance(), &rows);
        assert!(report.feasible, "{:?}", report.violations);
        assert_eq!(report.makespan, 21);
    }

    #[test]
    fn events_replay_to_the_goal() {
        let (net, part) = setup(fixtures::TABLE3, &fixtures::TABLE3_EXPLICIT);
        let out = gfbs(&net, &part, BeamParams::default());
        let mut m = net.m0().clone();
        let mut state = ScheduleState::initial(&net);
        for e in &out.events {
            m = basis_successor(&net, &part, &m, e.transition, &e.explanation).unwrap();
            let firings: Vec<_> = e.firings().collect();
            state = state.apply_events(&net, &firings).unwrap();
        }
        assert_eq!(&m, net.mf());
        assert_eq!(Some(state.g()), out.f_max);
    }

    #[test]
    fn generation_lengths_match_depth() {
        let (net, part) = setup(fixtures::EXAMPLE3, &fixtures::EXAMPLE1_EXPLICIT);
        let planner = Planner::new(&net, &part);
        let out = planner.gfbs(BeamParams::new(4, 2).unwrap());
        assert!(out.f_max.is_some());
        assert_eq!(out.events.len() + 1, out.generations.len());
        for gen in &out.generations {
            assert!(gen.len() <= 4);
        }
    }

    #[test]
    fn deterministic_and_parallel_safe() {
        let (net, part) = setup(fixtures::EXAMPLE3, &fixtures::EXAMPLE1_EXPLICIT);
        let a = gfbs(&net, &part, BeamParams::default());
        let b = gfbs(&net, &part, BeamParams::default());
        assert_eq!(a.events, b.events);
        assert_eq!(a.f_max, b.f_max);
        assert_eq!(a.expanded, b.expanded);
        assert_eq!(a.generations, b.generations);
    }

    #[test]
    fn beam_params() {
        assert_eq!(BeamParams::new(0, 1).unwrap_err(), SearchError::ZeroBeam);
        assert_eq!(BeamParams::default(), BeamParams::new(50, 5).unwrap());
        assert_eq!(BeamParams::unbounded().to_string(), "beta_g=inf beta_l=inf");
    }
}
