//! Untimed place/transition nets: structure, markings and the firing rule.

mod reach;

pub use reach::{induced_subnet_acyclic, reachability_graph, ReachabilityGraph, DEFAULT_STATE_CAP};

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

/// Index of a place in its net's construction order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlaceId(pub usize);

/// Index of a transition in its net's construction order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TransitionId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PetriError {
    #[error("pre/post dimensions {pre:?} and {post:?} do not match {places} places x {transitions} transitions")]
    DimensionMismatch {
        pre: (usize, usize),
        post: (usize, usize),
        places: usize,
        transitions: usize,
    },
    #[error("duplicate {kind} identifier `{name}`")]
    DuplicateName { kind: &'static str, name: String },
    #[error("unknown transition {0}")]
    UnknownTransition(String),
    #[error("unknown place {0}")]
    UnknownPlace(String),
    #[error("marking has {got} entries but the net has {expected} places")]
    MarkingLength { expected: usize, got: usize },
    #[error("transition `{transition}` is not enabled (sequence position {position})")]
    NotEnabled { transition: String, position: usize },
    #[error("state cap of {cap} markings exceeded")]
    StateCapExceeded { cap: usize },
}

/// Token counts, one entry per place, aligned to the net's place order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Marking(Vec<u32>);

impl Marking {
    pub fn new(counts: Vec<u32>) -> Self {
        Marking(counts)
    }

    pub fn zeros(places: usize) -> Self {
        Marking(vec![0; places])
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, p: PlaceId) -> u32 {
        self.0[p.0]
    }

    pub fn set(&mut self, p: PlaceId, value: u32) {
        self.0[p.0] = value;
    }

    /// Componentwise `self >= other`.
    pub fn covers(&self, other: &[u32]) -> bool {
        self.0.iter().zip(other).all(|(a, b)| a >= b)
    }
}

impl fmt::Display for Marking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl From<Vec<u32>> for Marking {
    fn from(v: Vec<u32>) -> Self {
        Marking(v)
    }
}

/// A place/transition net `(P, T, Pre, Post)`.
///
/// Matrices are dense and indexed `[place][transition]`. Arc lists per
/// transition are derived once at construction so firing only touches the
/// places a transition is connected to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PetriNet {
    places: Vec<String>,
    transitions: Vec<String>,
    pre: Vec<Vec<u32>>,
    post: Vec<Vec<u32>>,
    inputs: Vec<Vec<(PlaceId, u32)>>,
    outputs: Vec<Vec<(PlaceId, u32)>>,
}

fn dims(m: &[Vec<u32>]) -> (usize, usize) {
    (m.len(), m.first().map_or(0, Vec::len))
}

impl PetriNet {
    pub fn new(
        places: Vec<String>,
        transitions: Vec<String>,
        pre: Vec<Vec<u32>>,
        post: Vec<Vec<u32>>,
    ) -> Result<Self, PetriError> {
        let (np, nt) = (places.len(), transitions.len());
        let shape_ok = |m: &[Vec<u32>]| m.len() == np && m.iter().all(|row| row.len() == nt);
        if !shape_ok(&pre) || !shape_ok(&post) {
            return Err(PetriError::DimensionMismatch {
                pre: dims(&pre),
                post: dims(&post),
                places: np,
                transitions: nt,
            });
        }
        check_unique("place", &places)?;
        check_unique("transition", &transitions)?;

        let arcs = |m: &[Vec<u32>], t: usize| {
            (0..np)
                .filter(|&p| m[p][t] > 0)
                .map(|p| (PlaceId(p), m[p][t]))
                .collect::<Vec<_>>()
        };
        let inputs = (0..nt).map(|t| arcs(&pre, t)).collect();
        let outputs = (0..nt).map(|t| arcs(&post, t)).collect();
        Ok(PetriNet {
            places,
            transitions,
            pre,
            post,
            inputs,
            outputs,
        })
    }

    pub fn place_count(&self) -> usize {
        self.places.len()
    }

    pub fn transition_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn place_name(&self, p: PlaceId) -> &str {
        &self.places[p.0]
    }

    pub fn transition_name(&self, t: TransitionId) -> &str {
        &self.transitions[t.0]
    }

    pub fn place_names(&self) -> &[String] {
        &self.places
    }

    pub fn transition_names(&self) -> &[String] {
        &self.transitions
    }

    pub fn place_ids(&self) -> impl Iterator<Item = PlaceId> {
        (0..self.places.len()).map(PlaceId)
    }

    pub fn transition_ids(&self) -> impl Iterator<Item = TransitionId> {
        (0..self.transitions.len()).map(TransitionId)
    }

    pub fn place(&self, name: &str) -> Result<PlaceId, PetriError> {
        self.places
            .iter()
            .position(|p| p == name)
            .map(PlaceId)
            .ok_or_else(|| PetriError::UnknownPlace(name.to_string()))
    }

    pub fn transition(&self, name: &str) -> Result<TransitionId, PetriError> {
        self.transitions
            .iter()
            .position(|t| t == name)
            .map(TransitionId)
            .ok_or_else(|| PetriError::UnknownTransition(name.to_string()))
    }

    pub fn pre(&self, p: PlaceId, t: TransitionId) -> u32 {
        self.pre[p.0][t.0]
    }

    pub fn post(&self, p: PlaceId, t: TransitionId) -> u32 {
        self.post[p.0][t.0]
    }

    /// `C(p, t) = Post(p, t) - Pre(p, t)`.
    pub fn incidence(&self, p: PlaceId, t: TransitionId) -> i64 {
        i64::from(self.post[p.0][t.0]) - i64::from(self.pre[p.0][t.0])
    }

    /// The column `Pre(., t)`.
    pub fn pre_column(&self, t: TransitionId) -> Vec<u32> {
        self.pre.iter().map(|row| row[t.0]).collect()
    }

    pub fn inputs(&self, t: TransitionId) -> &[(PlaceId, u32)] {
        &self.inputs[t.0]
    }

    pub fn outputs(&self, t: TransitionId) -> &[(PlaceId, u32)] {
        &self.outputs[t.0]
    }

    fn check_transition(&self, t: TransitionId) -> Result<(), PetriError> {
        if t.0 < self.transitions.len() {
            Ok(())
        } else {
            Err(PetriError::UnknownTransition(format!("#{}", t.0)))
        }
    }

    fn check_marking(&self, m: &Marking) -> Result<(), PetriError> {
        if m.len() == self.places.len() {
            Ok(())
        } else {
            Err(PetriError::MarkingLength {
                expected: self.places.len(),
                got: m.len(),
            })
        }
    }

    /// `M >= Pre(., t)`.
    pub fn enabled(&self, m: &Marking, t: TransitionId) -> Result<bool, PetriError> {
        self.check_transition(t)?;
        self.check_marking(m)?;
        Ok(self.is_enabled(m, t))
    }

    /// Unchecked variant of [`PetriNet::enabled`] for hot loops over valid ids.
    pub(crate) fn is_enabled(&self, m: &Marking, t: TransitionId) -> bool {
        self.inputs[t.0].iter().all(|&(p, w)| m.0[p.0] >= w)
    }

    /// Fires `t`, returning `M + C(., t)`.
    pub fn fire(&self, m: &Marking, t: TransitionId) -> Result<Marking, PetriError> {
        if !self.enabled(m, t)? {
            return Err(PetriError::NotEnabled {
                transition: self.transitions[t.0].clone(),
                position: 0,
            });
        }
        Ok(self.fire_unchecked(m, t))
    }

    pub(crate) fn fire_unchecked(&self, m: &Marking, t: TransitionId) -> Marking {
        let mut next = m.clone();
        self.fire_in_place(&mut next, t);
        next
    }

    pub(crate) fn fire_in_place(&self, m: &mut Marking, t: TransitionId) {
        for &(p, w) in &self.inputs[t.0] {
            m.0[p.0] -= w;
        }
        for &(p, w) in &self.outputs[t.0] {
            m.0[p.0] += w;
        }
    }

    /// Fires `seq` left to right. The error carries the first position whose
    /// transition was disabled.
    pub fn fire_sequence(&self, m: &Marking, seq: &[TransitionId]) -> Result<Marking, PetriError> {
        self.check_marking(m)?;
        let mut cur = m.clone();
        for (position, &t) in seq.iter().enumerate() {
            self.check_transition(t)?;
            if !self.is_enabled(&cur, t) {
                return Err(PetriError::NotEnabled {
                    transition: self.transitions[t.0].clone(),
                    position,
                });
            }
            self.fire_in_place(&mut cur, t);
        }
        Ok(cur)
    }

    /// The firing vector `y_sigma`: occurrence count of every transition.
    pub fn firing_vector(&self, seq: &[TransitionId]) -> Vec<u32> {
        let mut y = vec![0; self.transitions.len()];
        for t in seq {
            y[t.0] += 1;
        }
        y
    }
}

fn check_unique(kind: &'static str, names: &[String]) -> Result<(), PetriError> {
    let mut seen = HashSet::with_capacity(names.len());
    for n in names {
        if !seen.insert(n.as_str()) {
            return Err(PetriError::DuplicateName {
                kind,
                name: n.clone(),
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    // p0 -> t0 -> p1 -> t1 -> p0, with p2 consumed by t0 and returned by t1.
    pub(crate) fn ring() -> PetriNet {
        let places = vec!["p0".into(), "p1".into(), "p2".into()];
        let transitions = vec!["t0".into(), "t1".into()];
        let pre = vec![vec![1, 0], vec![0, 1], vec![1, 0]];
        let post = vec![vec![0, 1], vec![1, 0], vec![0, 1]];
        PetriNet::new(places, transitions, pre, post).unwrap()
    }

    #[test]
    fn rejects_bad_dimensions() {
        let err =
            PetriNet::new(vec!["p".into()], vec!["t".into()], vec![vec![1]], vec![]).unwrap_err();
        assert!(matches!(err, PetriError::DimensionMismatch { .. }));
    }

    #[test]
    fn rejects_duplicate_names() {
        let err = PetriNet::new(
            vec!["p".into(), "p".into()],
            vec![],
            vec![vec![], vec![]],
            vec![vec![], vec![]],
        )
        .unwrap_err();
        assert_eq!(
            err,
            PetriError::DuplicateName {
                kind: "place",
                name: "p".into()
            }
        );
    }

    #[test]
    fn zero_marking_enables_nothing() {
        let net = ring();
        let m = Marking::zeros(3);
        for t in net.transition_ids() {
            assert!(!net.enabled(&m, t).unwrap());
        }
    }

    #[test]
    fn unknown_transition_is_structural_error() {
        let net = ring();
        let m = Marking::zeros(3);
        assert!(matches!(
            net.enabled(&m, TransitionId(9)),
            Err(PetriError::UnknownTransition(_))
        ));
        assert!(net.transition("nope").is_err());
    }

    #[test]
    fn firing_disabled_transition_fails() {
        let net = ring();
        let m = Marking::new(vec![1, 0, 1]);
        assert!(matches!(
            net.fire(&m, TransitionId(1)),
            Err(PetriError::NotEnabled { .. })
        ));
        let after = net.fire(&m, TransitionId(0)).unwrap();
        assert_eq!(after.counts(), &[0, 1, 0]);
    }

    #[test]
    fn fire_sequence_reports_first_disabled_position() {
        let net = ring();
        let m = Marking::new(vec![1, 0, 1]);
        let err = net
            .fire_sequence(&m, &[TransitionId(0), TransitionId(1), TransitionId(1)])
            .unwrap_err();
        assert_eq!(
            err,
            PetriError::NotEnabled {
                transition: "t1".into(),
                position: 2
            }
        );
        assert_eq!(net.fire_sequence(&m, &[]).unwrap(), m);
    }

    #[test]
    fn incidence_is_post_minus_pre() {
        let net = ring();
        assert_eq!(net.incidence(PlaceId(0), TransitionId(0)), -1);
        assert_eq!(net.incidence(PlaceId(1), TransitionId(0)), 1);
        assert_eq!(
            net.firing_vector(&[TransitionId(1), TransitionId(1)]),
            vec![0, 2]
        );
    }
}
