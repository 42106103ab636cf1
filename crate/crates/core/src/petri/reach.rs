use std::collections::{HashMap, VecDeque};

use super::{Marking, PetriError, PetriNet, TransitionId};

pub const DEFAULT_STATE_CAP: usize = 1_000_000;

/// Breadth-first reachability graph. Node `0` is the initial marking and node
/// numbers follow discovery order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachabilityGraph {
    pub nodes: Vec<Marking>,
    pub edges: Vec<(usize, TransitionId, usize)>,
}

impl ReachabilityGraph {
    pub fn index_of(&self, m: &Marking) -> Option<usize> {
        self.nodes.iter().position(|n| n == m)
    }
}

pub fn reachability_graph(
    net: &PetriNet,
    m0: &Marking,
    cap: usize,
) -> Result<ReachabilityGraph, PetriError> {
    net.check_marking(m0)?;
    let cap = cap.max(1);
    let mut index: HashMap<Marking, usize> = HashMap::new();
    let mut nodes = vec![m0.clone()];
    let mut edges = Vec::new();
    index.insert(m0.clone(), 0);
    let mut queue = VecDeque::from([0usize]);

    while let Some(src) = queue.pop_front() {
        for t in net.transition_ids() {
            if !net.is_enabled(&nodes[src], t) {
                continue;
            }
            let next = net.fire_unchecked(&nodes[src], t);
            let dst = match index.get(&next) {
                Some(&i) => i,
                None => {
                    if nodes.len() >= cap {
                        return Err(PetriError::StateCapExceeded { cap });
                    }
                    let i = nodes.len();
                    index.insert(next.clone(), i);
                    nodes.push(next);
                    queue.push_back(i);
                    i
                }
            };
            edges.push((src, t, dst));
        }
    }
    Ok(ReachabilityGraph { nodes, edges })
}

/// True iff the subnet induced by `subset` has no directed cycle.
///
/// The graph is bipartite: a place points to every subset transition that
/// consumes from it, and a subset transition points to every place it
/// produces into. Uses an iterative three-colour DFS.
pub fn induced_subnet_acyclic(net: &PetriNet, subset: &[TransitionId]) -> Result<bool, PetriError> {
    let np = net.place_count();
    let mut in_subset = vec![false; net.transition_count()];
    for &t in subset {
        net.check_transition(t)?;
        in_subset[t.0] = true;
    }
    // Vertices 0..np are places, np.. are transitions.
    let nv = np + net.transition_count();
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for t in net.transition_ids().filter(|t| in_subset[t.0]) {
        for &(p, _) in net.inputs(t) {
            succ[p.0].push(np + t.0);
        }
        for &(p, _) in net.outputs(t) {
            succ[np + t.0].push(p.0);
        }
    }

    #[derive(Clone, Copy, PartialEq)]
    enum Color {
        White,
        Grey,
        Black,
    }
    let mut color = vec![Color::White; nv];
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for root in 0..nv {
        if color[root] != Color::White {
            continue;
        }
        color[root] = Color::Grey;
        stack.push((root, 0));
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if let Some(&w) = succ[v].get(*next) {
                *next += 1;
                match color[w] {
                    Color::Grey => return Ok(false),
                    Color::White => {
                        color[w] = Color::Grey;
                        stack.push((w, 0));
                    }
                    Color::Black => {}
                }
            } else {
                color[v] = Color::Black;
                stack.pop();
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain() -> PetriNet {
        // p0 -> t0 -> p1 -> t1 -> p2 -> t2 -> p0
        let places = vec!["p0".into(), "p1".into(), "p2".into()];
        let transitions = vec!["t0".into(), "t1".into(), "t2".into()];
        let pre = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let post = vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]];
        PetriNet::new(places, transitions, pre, post).unwrap()
    }

    #[test]
    fn dead_initial_marking_gives_single_node() {
        let net = chain();
        let rg = reachability_graph(&net, &Marking::zeros(3), 10).unwrap();
        assert_eq!(rg.nodes.len(), 1);
        assert!(rg.edges.is_empty());
    }

    #[test]
    fn cycle_of_three_markings() {
        let net = chain();
        let rg = reachability_graph(&net, &Marking::new(vec![1, 0, 0]), 10).unwrap();
        assert_eq!(rg.nodes.len(), 3);
        assert_eq!(rg.edges.len(), 3);
        assert_eq!(
            reachability_graph(&net, &Marking::new(vec![1, 0, 0]), 2),
            Err(PetriError::StateCapExceeded { cap: 2 })
        );
    }

    #[test]
    fn acyclicity() {
        let net = chain();
        let all: Vec<_> = net.transition_ids().collect();
        assert!(!induced_subnet_acyclic(&net, &all).unwrap());
        assert!(induced_subnet_acyclic(&net, &all[..2]).unwrap());
        assert!(induced_subnet_acyclic(&net, &[]).unwrap());
        assert!(induced_subnet_acyclic(&net, &[TransitionId(7)]).is_err());
    }
}
