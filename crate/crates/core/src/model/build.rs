use crate::petri::{Marking, PetriNet, PlaceId, TransitionId};
use crate::timing::Time;

use super::Instance;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlaceRole {
    /// `p_Si`: raw parts of job type `job`.
    Start { job: usize },
    /// `p_ijk`: operation `step`/`alt` (0-based) of job type `job` in progress.
    Operation {
        job: usize,
        step: usize,
        alt: usize,
        resource: usize,
    },
    /// `p_Ei`: finished parts.
    End { job: usize },
    /// Idle units of a resource.
    Resource { resource: usize },
}

impl PlaceRole {
    pub fn job(&self) -> Option<usize> {
        match *self {
            PlaceRole::Start { job }
            | PlaceRole::End { job }
            | PlaceRole::Operation { job, .. } => Some(job),
            PlaceRole::Resource { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransitionKind {
    /// Member of `T_S`: starts operation `step`/`alt` (0-based).
    Start { step: usize, alt: usize },
    /// Member of `T_En`: a part leaves its last operation.
    End,
}

/// How a transition moves one job token along its route.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransitionInfo {
    pub job: usize,
    pub kind: TransitionKind,
    /// Job place consumed from (start or operation place).
    pub from: PlaceId,
    /// Job place produced into (operation or end place).
    pub to: PlaceId,
    pub acquires: Option<usize>,
    pub releases: Option<usize>,
}

/// Place-timed Petri net system built from an [`Instance`].
#[derive(Debug, Clone)]
pub struct PlaceTimedNet {
    instance: Instance,
    net: PetriNet,
    place_roles: Vec<PlaceRole>,
    transitions: Vec<TransitionInfo>,
    delays: Vec<Time>,
    resource_places: Vec<PlaceId>,
    start_places: Vec<PlaceId>,
    end_places: Vec<PlaceId>,
    m0: Marking,
    mf: Marking,
}

/// `prefix` followed by the indices, concatenated while every index is a
/// single digit (`t121`) and underscore-separated otherwise (`t_12_1_3`).
fn indexed(prefix: &str, idx: &[usize]) -> String {
    if idx.iter().all(|&i| i < 10) {
        let digits: String = idx.iter().map(|i| i.to_string()).collect();
        format!("{prefix}{digits}")
    } else {
        let parts: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
        format!("{prefix}_{}", parts.join("_"))
    }
}

impl PlaceTimedNet {
    pub fn build(inst: &Instance) -> Self {
        let mut place_names = Vec::new();
        let mut place_roles = Vec::new();
        let mut delays = Vec::new();
        let mut start_places = Vec::new();
        let mut end_places = Vec::new();
        // op_places[job][step][alt]
        let mut op_places: Vec<Vec<Vec<PlaceId>>> = Vec::new();

        let mut add_place = |name: String, role: PlaceRole, delay: Time| {
            place_names.push(name);
            place_roles.push(role);
            delays.push(delay);
            PlaceId(place_names.len() - 1)
        };

        for (ji, job) in inst.jobs().iter().enumerate() {
            let i = ji + 1;
            start_places.push(add_place(
                indexed("pS", &[i]),
                PlaceRole::Start { job: ji },
                0,
            ));
            let mut steps = Vec::new();
            for (si, step) in job.steps.iter().enumerate() {
                let alts = step
                    .iter()
                    .enumerate()
                    .map(|(ai, alt)| {
                        add_place(
                            indexed("p", &[i, si + 1, ai + 1]),
                            PlaceRole::Operation {
                                job: ji,
                                step: si,
                                alt: ai,
                                resource: alt.resource,
                            },
                            alt.duration,
                        )
                    })
                    .collect();
                steps.push(alts);
            }
            op_places.push(steps);
            end_places.push(add_place(
                indexed("pE", &[i]),
                PlaceRole::End { job: ji },
                0,
            ));
        }
        let resource_places: Vec<PlaceId> = inst
            .resources()
            .iter()
            .enumerate()
            .map(|(ri, r)| {
                add_place(
                    format!("p_{}", r.name),
                    PlaceRole::Resource { resource: ri },
                    0,
                )
            })
            .collect();

        let mut names = Vec::new();
        let mut infos = Vec::new();
        for (ji, job) in inst.jobs().iter().enumerate() {
            let i = ji + 1;
            for (si, step) in job.steps.iter().enumerate() {
                if si == 0 {
                    for (ai, alt) in step.iter().enumerate() {
                        names.push(indexed("t", &[i, 1, ai + 1]));
                        infos.push(TransitionInfo {
                            job: ji,
                            kind: TransitionKind::Start { step: 0, alt: ai },
                            from: start_places[ji],
                            to: op_places[ji][0][ai],
                            acquires: Some(alt.resource),
                            releases: None,
                        });
                    }
                } else {
                    let mut k = 0;
                    for (pa, prev) in job.steps[si - 1].iter().enumerate() {
                        for (ai, alt) in step.iter().enumerate() {
                            k += 1;
                            names.push(indexed("t", &[i, si + 1, k]));
                            infos.push(TransitionInfo {
                                job: ji,
                                kind: TransitionKind::Start { step: si, alt: ai },
                                from: op_places[ji][si - 1][pa],
                                to: op_places[ji][si][ai],
                                acquires: Some(alt.resource),
                                releases: Some(prev.resource),
                            });
                        }
                    }
                }
            }
            let last = job.steps.len() - 1;
            let single = job.steps[last].len() == 1;
            for (ai, alt) in job.steps[last].iter().enumerate() {
                names.push(if single {
                    indexed("tE", &[i])
                } else {
                    indexed("tE", &[i, ai + 1])
                });
                infos.push(TransitionInfo {
                    job: ji,
                    kind: TransitionKind::End,
                    from: op_places[ji][last][ai],
                    to: end_places[ji],
                    acquires: None,
                    releases: Some(alt.resource),
                });
            }
        }

        let np = place_names.len();
        let nt = names.len();
        let mut pre = vec![vec![0u32; nt]; np];
        let mut post = vec![vec![0u32; nt]; np];
        for (t, info) in infos.iter().enumerate() {
            pre[info.from.0][t] = 1;
            post[info.to.0][t] = 1;
            if let Some(r) = info.acquires {
                pre[resource_places[r].0][t] = 1;
            }
            if let Some(r) = info.releases {
                post[resource_places[r].0][t] = 1;
            }
        }
        let net = PetriNet::new(place_names, names, pre, post)
            .expect("generated names are unique and matrices well-formed");

        let mut m0 = Marking::zeros(np);
        let mut mf = Marking::zeros(np);
        for (ji, job) in inst.jobs().iter().enumerate() {
            m0.set(start_places[ji], job.lot);
            mf.set(end_places[ji], job.lot);
        }
        for (ri, r) in inst.resources().iter().enumerate() {
            m0.set(resource_places[ri], r.capacity);
            mf.set(resource_places[ri], r.capacity);
        }

        PlaceTimedNet {
            instance: inst.clone(),
            net,
            place_roles,
            transitions: infos,
            delays,
            resource_places,
            start_places,
            end_places,
            m0,
            mf,
        }
    }

    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn net(&self) -> &PetriNet {
        &self.net
    }

    pub fn m0(&self) -> &Marking {
        &self.m0
    }

    pub fn mf(&self) -> &Marking {
        &self.mf
    }

    /// The initial and final markings.
    pub fn markings(&self) -> (&Marking, &Marking) {
        (&self.m0, &self.mf)
    }

    pub fn place_role(&self, p: PlaceId) -> PlaceRole {
        self.place_roles[p.0]
    }

    pub fn transition_info(&self, t: TransitionId) -> &TransitionInfo {
        &self.transitions[t.0]
    }

    /// `D(p)`: processing time of an operation place, zero elsewhere.
    pub fn delay(&self, p: PlaceId) -> Time {
        self.delays[p.0]
    }

    pub fn resource_count(&self) -> usize {
        self.resource_places.len()
    }

    pub fn resource_place(&self, r: usize) -> PlaceId {
        self.resource_places[r]
    }

    pub fn capacity(&self, r: usize) -> u32 {
        self.instance.resources()[r].capacity
    }

    pub fn resource_name(&self, r: usize) -> &str {
        &self.instance.resources()[r].name
    }

    pub fn job_count(&self) -> usize {
        self.start_places.len()
    }

    pub fn job_name(&self, job: usize) -> &str {
        &self.instance.jobs()[job].name
    }

    pub fn start_place(&self, job: usize) -> PlaceId {
        self.start_places[job]
    }

    pub fn end_place(&self, job: usize) -> PlaceId {
        self.end_places[job]
    }

    /// Resource occupied by an operation place.
    pub fn resource_of(&self, p: PlaceId) -> Option<usize> {
        match self.place_roles[p.0] {
            PlaceRole::Operation { resource, .. } => Some(resource),
            _ => None,
        }
    }

    pub fn job_of(&self, p: PlaceId) -> Option<usize> {
        self.place_roles[p.0].job()
    }

    /// 0-based `(step, alternative)` of an operation place.
    pub fn step_of(&self, p: PlaceId) -> Option<(usize, usize)> {
        match self.place_roles[p.0] {
            PlaceRole::Operation { step, alt, .. } => Some((step, alt)),
            _ => None,
        }
    }

    fn places_where(&self, f: impl Fn(&PlaceRole) -> bool) -> Vec<PlaceId> {
        self.net
            .place_ids()
            .filter(|p| f(&self.place_roles[p.0]))
            .collect()
    }

    pub fn start_places(&self) -> &[PlaceId] {
        &self.start_places
    }

    pub fn end_places(&self) -> &[PlaceId] {
        &self.end_places
    }

    pub fn resource_places(&self) -> &[PlaceId] {
        &self.resource_places
    }

    pub fn operation_places(&self) -> Vec<PlaceId> {
        self.places_where(|r| matches!(r, PlaceRole::Operation { .. }))
    }

    /// Start, operation and end places of one job type.
    pub fn job_places(&self, job: usize) -> Vec<PlaceId> {
        self.places_where(|r| r.job() == Some(job))
    }

    /// Operation places that occupy resource `r`.
    pub fn places_using(&self, r: usize) -> Vec<PlaceId> {
        self.places_where(
            |role| matches!(role, PlaceRole::Operation { resource, .. } if *resource == r),
        )
    }

    /// `T_S`.
    pub fn start_transitions(&self) -> Vec<TransitionId> {
        self.net
            .transition_ids()
            .filter(|t| matches!(self.transitions[t.0].kind, TransitionKind::Start { .. }))
            .collect()
    }

    /// `T_En`.
    pub fn end_transitions(&self) -> Vec<TransitionId> {
        self.net
            .transition_ids()
            .filter(|t| self.transitions[t.0].kind == TransitionKind::End)
            .collect()
    }

    pub fn is_end_transition(&self, t: TransitionId) -> bool {
        self.transitions[t.0].kind == TransitionKind::End
    }

    /// Job-place successors of a non-resource place along its routes.
    pub fn route_successors(&self, p: PlaceId) -> Vec<PlaceId> {
        let mut out: Vec<PlaceId> = self
            .transitions
            .iter()
            .filter(|info| info.from == p)
            .map(|info| info.to)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}
