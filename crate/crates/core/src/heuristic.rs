//! Weighted operation/resource time matrices and the remaining-work estimate
//! `h(M) = max_r sum_p M(p) * Gamma(p, r)`.
//!
//! All values are exact rationals since operation times are divided by
//! resource capacities.

use num_rational::Ratio;

use crate::model::{PlaceRole, PlaceTimedNet};
use crate::petri::{Marking, PlaceId};

pub type Rational = Ratio<i64>;

/// `Theta(p, r) = D(p) / U(r)` when operation place `p` occupies `r`, else 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WotMatrix {
    // [place][resource]; rows of non-operation places stay zero.
    values: Vec<Vec<Rational>>,
}

impl WotMatrix {
    pub fn get(&self, p: PlaceId, r: usize) -> Rational {
        self.values[p.0][r]
    }
}

/// `Gamma(p, r)`: least cumulative `Theta` on `r` a token at `p` still needs
/// to reach its end place, excluding `p`'s own operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WrtMatrix {
    // [place][resource]; resource-place rows are unused and zero.
    values: Vec<Vec<Rational>>,
}

impl WrtMatrix {
    pub fn get(&self, p: PlaceId, r: usize) -> Rational {
        self.values[p.0][r]
    }
}

pub fn wot(net: &PlaceTimedNet) -> WotMatrix {
    let nr = net.resource_count();
    let values = net
        .net()
        .place_ids()
        .map(|p| {
            let mut row = vec![Rational::from_integer(0); nr];
            if let Some(r) = net.resource_of(p) {
                row[r] = Rational::new(net.delay(p), i64::from(net.capacity(r)));
            }
            row
        })
        .collect();
    WotMatrix { values }
}

/// Backward dynamic program over each job's acyclic route graph, minimising
/// per resource independently.
pub fn wrt(net: &PlaceTimedNet, theta: &WotMatrix) -> WrtMatrix {
    let nr = net.resource_count();
    let zero = Rational::from_integer(0);
    let mut values = vec![vec![zero; nr]; net.net().place_count()];
    // Job places are laid out start, steps in order, end; walking them in
    // reverse visits every successor before its predecessors.
    for job in 0..net.job_count() {
        for &p in net.job_places(job).iter().rev() {
            if matches!(net.place_role(p), PlaceRole::End { .. }) {
                continue;
            }
            let succ = net.route_successors(p);
            values[p.0] = (0..nr)
                .map(|r| {
                    succ.iter()
                        .map(|&q| theta.get(q, r) + values[q.0][r])
                        .min()
                        .unwrap_or(zero)
                })
                .collect();
        }
    }
    WrtMatrix { values }
}

/// Heuristic state: both matrices for one net.
#[derive(Debug, Clone)]
pub struct Heuristic {
    pub theta: WotMatrix,
    pub gamma: WrtMatrix,
    job_places: Vec<PlaceId>,
    resources: usize,
}

impl Heuristic {
    pub fn new(net: &PlaceTimedNet) -> Self {
        let theta = wot(net);
        let gamma = wrt(net, &theta);
        let job_places = net
            .net()
            .place_ids()
            .filter(|&p| !matches!(net.place_role(p), PlaceRole::Resource { .. }))
            .collect();
        Heuristic {
            theta,
            gamma,
            job_places,
            resources: net.resource_count(),
        }
    }

    pub fn h(&self, m: &Marking) -> Rational {
        h(&self.gamma, &self.job_places, self.resources, m)
    }
}

fn h(gamma: &WrtMatrix, job_places: &[PlaceId], resources: usize, m: &Marking) -> Rational {
    (0..resources)
        .map(|r| {
            job_places
                .iter()
                .map(|&p| gamma.get(p, r) * i64::from(m.get(p)))
                .sum::<Rational>()
        })
        .max()
        .unwrap_or_else(|| Rational::from_integer(0))
}

/// `h(M)` evaluated from scratch; prefer [`Heuristic::h`] in loops.
pub fn estimate(net: &PlaceTimedNet, gamma: &WrtMatrix, m: &Marking) -> Rational {
    let job_places: Vec<PlaceId> = net
        .net()
        .place_ids()
        .filter(|&p| !matches!(net.place_role(p), PlaceRole::Resource { .. }))
        .collect();
    h(gamma, &job_places, net.resource_count(), m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::parse_instance;

    fn example1() -> PlaceTimedNet {
        PlaceTimedNet::build(&parse_instance(fixtures::EXAMPLE1).unwrap())
    }

    fn int(v: i64) -> Rational {
        Rational::from_integer(v)
    }

    #[test]
    fn theta_entries() {
        let net = example1();
        let theta = wot(&net);
        let p111 = net.net().place("p111").unwrap();
        assert_eq!(theta.get(p111, 0), int(25));
        assert_eq!(theta.get(p111, 1), int(0));

        let doubled = PlaceTimedNet::build(&net.instance().with_capacities(2).unwrap());
        assert_eq!(wot(&doubled).get(p111, 0), Rational::new(25, 2));
    }

    #[test]
    fn gamma_entries() {
        let net = example1();
        let h = Heuristic::new(&net);
        let p = |n: &str| net.net().place(n).unwrap();
        assert_eq!(h.gamma.get(p("pS2"), 0), int(24));
        for r in 0..4 {
            assert_eq!(h.gamma.get(p("pE1"), r), int(0));
        }
        assert_eq!(h.gamma.get(p("pS1"), 1), int(0));
        assert_eq!(h.gamma.get(p("pS1"), 0), int(25));
        assert_eq!(h.gamma.get(p("pS1"), 3), int(27));
        // Own operation time is excluded.
        assert_eq!(h.gamma.get(p("p111"), 0), int(0));
    }

    #[test]
    fn gamma_fixed_point() {
        for text in [fixtures::EXAMPLE1, fixtures::TABLE3, fixtures::EXAMPLE3] {
            let net = PlaceTimedNet::build(&parse_instance(text).unwrap());
            let heur = Heuristic::new(&net);
            for p in net.net().place_ids() {
                for q in net.route_successors(p) {
                    for r in 0..net.resource_count() {
                        assert!(
                            heur.gamma.get(p, r) >= heur.gamma.get(q, r) - heur.theta.get(q, r)
                        );
                        assert!(
                            heur.gamma.get(p, r) <= heur.gamma.get(q, r) + heur.theta.get(q, r)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn h_values() {
        let net = example1();
        let heur = Heuristic::new(&net);
        assert_eq!(heur.h(net.m0()), int(53));
        assert_eq!(heur.h(net.mf()), int(0));
        // b1 still raw, b2 waiting in p221.
        let m3 = Marking::new(vec![1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 1, 0, 1]);
        assert_eq!(heur.h(&m3), int(49));
        assert_eq!(estimate(&net, &heur.gamma, &m3), int(49));
    }
}
