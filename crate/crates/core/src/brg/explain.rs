use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, RwLock};

use super::{BasisPartition, BrgError};
use crate::model::PlaceTimedNet;
use crate::petri::{Marking, TransitionId};

/// Firing counts of implicit transitions, indexed by implicit-set position.
/// Orders lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExplanationVector(Vec<u32>);

impl ExplanationVector {
    pub fn zeros(n: usize) -> Self {
        ExplanationVector(vec![0; n])
    }

    pub fn new(counts: Vec<u32>) -> Self {
        ExplanationVector(counts)
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &ExplanationVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Expands to a vector over all transitions of the net.
    pub fn padded(&self, part: &BasisPartition, transitions: usize) -> Vec<u32> {
        let mut out = vec![0; transitions];
        for (i, t) in part.implicit().iter().enumerate() {
            out[t.0] = self.0[i];
        }
        out
    }
}

impl fmt::Display for ExplanationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A minimal explanation together with one firable implicit sequence that
/// realises it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Explanation {
    pub vector: ExplanationVector,
    pub witness: Vec<TransitionId>,
}

/// Breadth-first search over implicit firings from `m`, level by level in
/// sequence length. Vectors at or above an accepted explanation are pruned,
/// so every accepted vector is minimal. Returns explanations sorted by vector.
fn compute(
    net: &PlaceTimedNet,
    part: &BasisPartition,
    m: &Marking,
    t: TransitionId,
) -> Vec<Explanation> {
    let pn = net.net();
    let n = part.implicit().len();
    if pn.is_enabled(m, t) {
        return vec![Explanation {
            vector: ExplanationVector::zeros(n),
            witness: Vec::new(),
        }];
    }
    let mut accepted: Vec<Explanation> = Vec::new();
    let mut seen: HashSet<ExplanationVector> = HashSet::new();
    let mut level = vec![(m.clone(), ExplanationVector::zeros(n), Vec::new())];
    while !level.is_empty() {
        let mut next = Vec::new();
        for (marking, y, witness) in &level {
            for (i, &ti) in part.implicit().iter().enumerate() {
                if !pn.is_enabled(marking, ti) {
                    continue;
                }
                let mut y2 = y.clone();
                y2.0[i] += 1;
                if !seen.insert(y2.clone()) || accepted.iter().any(|a| a.vector.le(&y2)) {
                    continue;
                }
                let m2 = pn.fire_unchecked(marking, ti);
                let mut w2 = witness.clone();
                w2.push(ti);
                if pn.is_enabled(&m2, t) {
                    accepted.push(Explanation {
                        vector: y2,
                        witness: w2,
                    });
                } else {
                    next.push((m2, y2, w2));
                }
            }
        }
        level = next;
    }
    accepted.sort_by(|a, b| a.vector.cmp(&b.vector));
    accepted
}

/// `Y_min(M, t)` for explicit `t`, without memoisation.
pub fn minimal_explanations(
    net: &PlaceTimedNet,
    m: &Marking,
    t: TransitionId,
    part: &BasisPartition,
) -> Result<Vec<Explanation>, BrgError> {
    net.net().enabled(m, t)?;
    if !part.is_explicit(t) {
        return Err(BrgError::NotExplicit(
            net.net().transition_name(t).to_string(),
        ));
    }
    Ok(compute(net, part, m, t))
}

/// `M + C_I * y + C(., t)`, after checking that `y` is a minimal explanation
/// of `t` at `m`.
pub fn basis_successor(
    net: &PlaceTimedNet,
    part: &BasisPartition,
    m: &Marking,
    t: TransitionId,
    y: &ExplanationVector,
) -> Result<Marking, BrgError> {
    let ys = minimal_explanations(net, m, t, part)?;
    if !ys.iter().any(|e| &e.vector == y) {
        return Err(BrgError::NotMinimal(
            net.net().transition_name(t).to_string(),
        ));
    }
    Ok(apply_vector(net, part, m, t, y))
}

pub(crate) fn apply_vector(
    net: &PlaceTimedNet,
    part: &BasisPartition,
    m: &Marking,
    t: TransitionId,
    y: &ExplanationVector,
) -> Marking {
    let pn = net.net();
    let counts = pn
        .place_ids()
        .map(|p| {
            let implicit: i64 = part
                .implicit()
                .iter()
                .zip(y.counts())
                .map(|(&ti, &c)| i64::from(c) * pn.incidence(p, ti))
                .sum();
            let v = i64::from(m.get(p)) + implicit + pn.incidence(p, t);
            u32::try_from(v).expect("minimal explanations keep markings nonnegative")
        })
        .collect();
    Marking::new(counts)
}

type Memo = HashMap<(Marking, TransitionId), Arc<Vec<Explanation>>>;

/// Memoised explanation oracle for one net and partition.
///
/// Readers share the table; a miss computes outside the lock and inserts.
/// Entries are deterministic, so a racing recomputation stores an identical
/// value.
pub struct Explainer<'a> {
    net: &'a PlaceTimedNet,
    part: &'a BasisPartition,
    cache: RwLock<Memo>,
}

impl<'a> Explainer<'a> {
    pub fn new(net: &'a PlaceTimedNet, part: &'a BasisPartition) -> Self {
        Explainer {
            net,
            part,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn net(&self) -> &'a PlaceTimedNet {
        self.net
    }

    pub fn partition(&self) -> &'a BasisPartition {
        self.part
    }

    /// `Y_min(m, t)`; `t` must be explicit.
    pub fn explanations(&self, m: &Marking, t: TransitionId) -> Arc<Vec<Explanation>> {
        debug_assert!(self.part.is_explicit(t));
        let key = (m.clone(), t);
        if let Some(hit) = self.cache.read().expect("cache lock").get(&key) {
            return Arc::clone(hit);
        }
        let value = Arc::new(compute(self.net, self.part, m, t));
        self.cache
            .write()
            .expect("cache lock")
            .entry(key)
            .or_insert(value)
            .clone()
    }

    /// Every BRG event out of `m`: explicit transitions in net order, then
    /// explanations in vector order.
    pub fn successors(&self, m: &Marking) -> Vec<(TransitionId, Explanation, Marking)> {
        let mut out = Vec::new();
        for &t in self.part.explicit() {
            for e in self.explanations(m, t).iter() {
                let next = apply_vector(self.net, self.part, m, t, &e.vector);
                out.push((t, e.clone(), next));
            }
        }
        out
    }

    pub fn cached_entries(&self) -> usize {
        self.cache.read().expect("cache lock").len()
    }
}
