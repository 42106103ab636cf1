use std::collections::{HashMap, HashSet, VecDeque};

use super::{BasisPartition, BrgError, Explainer, ExplanationVector};
use crate::model::PlaceTimedNet;
use crate::petri::{Marking, PetriError, TransitionId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrgEdge {
    pub source: usize,
    pub transition: TransitionId,
    pub explanation: ExplanationVector,
    pub target: usize,
}

/// Basis reachability graph. Node 0 is the initial marking; numbering follows
/// breadth-first discovery.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisGraph {
    pub nodes: Vec<Marking>,
    pub edges: Vec<BrgEdge>,
    pub root: usize,
}

impl BasisGraph {
    pub fn index_of(&self, m: &Marking) -> Option<usize> {
        self.nodes.iter().position(|n| n == m)
    }
}

pub fn build_brg(
    net: &PlaceTimedNet,
    part: &BasisPartition,
    cap: usize,
) -> Result<BasisGraph, BrgError> {
    let cap = cap.max(1);
    let explainer = Explainer::new(net, part);
    let mut index: HashMap<Marking, usize> = HashMap::from([(net.m0().clone(), 0)]);
    let mut nodes = vec![net.m0().clone()];
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(source) = queue.pop_front() {
        for (transition, e, next) in explainer.successors(&nodes[source]) {
            let target = match index.get(&next) {
                Some(&i) => i,
                None => {
                    if nodes.len() >= cap {
                        return Err(PetriError::StateCapExceeded { cap }.into());
                    }
                    index.insert(next.clone(), nodes.len());
                    nodes.push(next);
                    queue.push_back(nodes.len() - 1);
                    nodes.len() - 1
                }
            };
            edges.push(BrgEdge {
                source,
                transition,
                explanation: e.vector,
                target,
            });
        }
    }
    Ok(BasisGraph {
        nodes,
        edges,
        root: 0,
    })
}

/// Every marking reachable from `m` by implicit firings alone, `m` first.
pub fn implicit_reach(net: &PlaceTimedNet, m: &Marking, part: &BasisPartition) -> Vec<Marking> {
    let pn = net.net();
    let mut seen: HashSet<Marking> = HashSet::from([m.clone()]);
    let mut out = vec![m.clone()];
    let mut queue = VecDeque::from([m.clone()]);
    while let Some(cur) = queue.pop_front() {
        for &t in part.implicit() {
            if pn.is_enabled(&cur, t) {
                let next = pn.fire_unchecked(&cur, t);
                if seen.insert(next.clone()) {
                    out.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::parse_instance;
    use crate::petri::reachability_graph;

    fn example1_reference() -> (PlaceTimedNet, BasisPartition) {
        let net = PlaceTimedNet::build(&parse_instance(fixtures::EXAMPLE1).unwrap());
        let part = BasisPartition::from_explicit_names(&net, &fixtures::EXAMPLE1_EXPLICIT).unwrap();
        (net, part)
    }

    #[test]
    fn eleven_basis_markings() {
        let (net, part) = example1_reference();
        let brg = build_brg(&net, &part, 1000).unwrap();
        assert_eq!(brg.nodes.len(), 11);
        assert_eq!(brg.index_of(net.m0()), Some(0));
        assert!(brg.index_of(net.mf()).is_some());
        let rg = reachability_graph(net.net(), net.m0(), 1000).unwrap();
        assert_eq!(rg.nodes.len(), 26);
        for m in &brg.nodes {
            assert!(rg.index_of(m).is_some());
        }
        assert_eq!(
            build_brg(&net, &part, 5).unwrap_err(),
            BrgError::Petri(PetriError::StateCapExceeded { cap: 5 })
        );
    }

    #[test]
    fn brg_edges_satisfy_state_equation() {
        let (net, part) = example1_reference();
        let brg = build_brg(&net, &part, 1000).unwrap();
        for e in &brg.edges {
            let expected = super::super::explain::apply_vector(
                &net,
                &part,
                &brg.nodes[e.source],
                e.transition,
                &e.explanation,
            );
            assert_eq!(brg.nodes[e.target], expected);
        }
    }

    #[test]
    fn implicit_closure_recovers_reachable_set() {
        let (net, part) = example1_reference();
        let brg = build_brg(&net, &part, 1000).unwrap();
        let union: HashSet<Marking> = brg
            .nodes
            .iter()
            .flat_map(|m| implicit_reach(&net, m, &part))
            .collect();
        let rg = reachability_graph(net.net(), net.m0(), 1000).unwrap();
        let all: HashSet<Marking> = rg.nodes.into_iter().collect();
        assert_eq!(union, all);
        assert!(implicit_reach(&net, net.mf(), &part).contains(net.mf()));
    }

    #[test]
    fn empty_implicit_set_reaches_only_itself() {
        let net = PlaceTimedNet::build(&parse_instance(fixtures::EXAMPLE1).unwrap());
        let all: Vec<_> = net.net().transition_ids().collect();
        let part = BasisPartition::from_explicit(&net, &all).unwrap();
        assert_eq!(
            implicit_reach(&net, net.m0(), &part),
            vec![net.m0().clone()]
        );
    }

    #[test]
    fn construction_is_deterministic() {
        let (net, part) = example1_reference();
        assert_eq!(
            build_brg(&net, &part, 1000).unwrap(),
            build_brg(&net, &part, 1000).unwrap()
        );
    }
}
