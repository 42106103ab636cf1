//! Basis partitions, minimal explanations and basis reachability graphs.
//!
//! Transitions are split into explicit and implicit ones so that the implicit
//! subnet is acyclic. Only explicit firings are recorded as events; implicit
//! firings needed to enable them are summarised by minimal explanation
//! vectors. End transitions are always explicit, which makes the final
//! marking a basis marking.

mod explain;
mod graph;

pub use explain::{
    basis_successor, minimal_explanations, Explainer, Explanation, ExplanationVector,
};
pub use graph::{build_brg, implicit_reach, BasisGraph, BrgEdge};

use thiserror::Error;

use crate::model::PlaceTimedNet;
use crate::petri::{induced_subnet_acyclic, PetriError, TransitionId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BrgError {
    #[error(transparent)]
    Petri(#[from] PetriError),
    #[error("line {line}: unknown transition `{name}`")]
    UnknownName { line: usize, name: String },
    #[error("the implicit subnet contains a directed cycle")]
    CyclicImplicitSubnet,
    #[error("end transition `{0}` must be explicit")]
    ImplicitEndTransition(String),
    #[error("transition `{0}` is implicit; explanations are defined for explicit transitions")]
    NotExplicit(String),
    #[error("explanation is not a minimal explanation of `{0}` at this marking")]
    NotMinimal(String),
    #[error("partition file lists no transitions")]
    EmptyPartitionFile,
}

/// A basis partition `(T_E, T_I)` of a net's transitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisPartition {
    explicit: Vec<TransitionId>,
    implicit: Vec<TransitionId>,
    // Position of each transition within `implicit`.
    implicit_pos: Vec<Option<usize>>,
}

impl BasisPartition {
    fn from_mask(net: &PlaceTimedNet, is_implicit: &[bool]) -> Result<Self, BrgError> {
        let (implicit, explicit): (Vec<TransitionId>, Vec<TransitionId>) =
            net.net().transition_ids().partition(|t| is_implicit[t.0]);
        if let Some(&t) = implicit.iter().find(|&&t| net.is_end_transition(t)) {
            return Err(BrgError::ImplicitEndTransition(
                net.net().transition_name(t).to_string(),
            ));
        }
        if !induced_subnet_acyclic(net.net(), &implicit)? {
            return Err(BrgError::CyclicImplicitSubnet);
        }
        let mut implicit_pos = vec![None; is_implicit.len()];
        for (i, t) in implicit.iter().enumerate() {
            implicit_pos[t.0] = Some(i);
        }
        Ok(BasisPartition {
            explicit,
            implicit,
            implicit_pos,
        })
    }

    pub fn from_explicit(net: &PlaceTimedNet, explicit: &[TransitionId]) -> Result<Self, BrgError> {
        let mut mask = vec![true; net.net().transition_count()];
        for &t in explicit {
            *mask
                .get_mut(t.0)
                .ok_or(PetriError::UnknownTransition(format!("#{}", t.0)))? = false;
        }
        Self::from_mask(net, &mask)
    }

    pub fn from_implicit(net: &PlaceTimedNet, implicit: &[TransitionId]) -> Result<Self, BrgError> {
        let mut mask = vec![false; net.net().transition_count()];
        for &t in implicit {
            *mask
                .get_mut(t.0)
                .ok_or(PetriError::UnknownTransition(format!("#{}", t.0)))? = true;
        }
        Self::from_mask(net, &mask)
    }

    fn resolve(net: &PlaceTimedNet, names: &[&str]) -> Result<Vec<TransitionId>, BrgError> {
        names.iter().map(|n| Ok(net.net().transition(n)?)).collect()
    }

    pub fn from_explicit_names(net: &PlaceTimedNet, names: &[&str]) -> Result<Self, BrgError> {
        Self::from_explicit(net, &Self::resolve(net, names)?)
    }

    pub fn from_implicit_names(net: &PlaceTimedNet, names: &[&str]) -> Result<Self, BrgError> {
        Self::from_implicit(net, &Self::resolve(net, names)?)
    }

    /// Reads a partition file: the literal `auto`, or one explicit transition
    /// name per line. `#` comments and blank lines are ignored.
    pub fn parse(net: &PlaceTimedNet, text: &str) -> Result<Self, BrgError> {
        let mut explicit = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let name = raw.split('#').next().unwrap_or("").trim();
            if name.is_empty() {
                continue;
            }
            if name == "auto" && explicit.is_empty() {
                return Ok(default_partition(net));
            }
            let t = net
                .net()
                .transition(name)
                .map_err(|_| BrgError::UnknownName {
                    line: idx + 1,
                    name: name.to_string(),
                })?;
            explicit.push(t);
        }
        if explicit.is_empty() {
            return Err(BrgError::EmptyPartitionFile);
        }
        Self::from_explicit(net, &explicit)
    }

    pub fn explicit(&self) -> &[TransitionId] {
        &self.explicit
    }

    pub fn implicit(&self) -> &[TransitionId] {
        &self.implicit
    }

    pub fn is_explicit(&self, t: TransitionId) -> bool {
        self.implicit_pos.get(t.0).is_some_and(Option::is_none)
    }

    /// Position of `t` within the implicit set, if implicit.
    pub fn implicit_index(&self, t: TransitionId) -> Option<usize> {
        self.implicit_pos.get(t.0).copied().flatten()
    }
}

/// Greedy maximal implicit set: walk transitions in construction order and
/// keep each non-end transition whose addition leaves the implicit subnet
/// acyclic.
pub fn default_partition(net: &PlaceTimedNet) -> BasisPartition {
    let mut implicit: Vec<TransitionId> = Vec::new();
    for t in net.net().transition_ids() {
        if net.is_end_transition(t) {
            continue;
        }
        implicit.push(t);
        if !induced_subnet_acyclic(net.net(), &implicit).expect("ids come from the net") {
            implicit.pop();
        }
    }
    BasisPartition::from_implicit(net, &implicit)
        .expect("greedy construction keeps the partition valid")
}
