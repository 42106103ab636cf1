//! Job-shop instances with routing flexibility and their place-timed Petri
//! net systems.

mod build;
mod parse;

pub use build::{PlaceRole, PlaceTimedNet, TransitionInfo, TransitionKind};
pub use parse::parse_instance;

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::timing::Time;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown resource `{0}`")]
    UnknownResource(String),
    #[error("job `{job}`: steps {first} and {second} both use resource `{resource}`")]
    ResourceClash {
        job: String,
        first: usize,
        second: usize,
        resource: String,
    },
    #[error("{0} must be a positive integer")]
    NonPositive(&'static str),
    #[error("duplicate {kind} `{name}`")]
    Duplicate { kind: &'static str, name: String },
    #[error("instance declares no resources")]
    NoResources,
    #[error("instance declares no jobs")]
    NoJobs,
    #[error("job `{0}` has no steps")]
    EmptyJob(String),
    #[error("step has no alternatives")]
    EmptyStep,
}

/// A modelling error, tagged with the input line when it came from a file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ModelError {
    pub line: Option<usize>,
    pub kind: ModelErrorKind,
}

impl ModelError {
    pub(crate) fn at(line: usize, kind: ModelErrorKind) -> Self {
        ModelError {
            line: Some(line),
            kind,
        }
    }

    pub(crate) fn bare(kind: ModelErrorKind) -> Self {
        ModelError { line: None, kind }
    }
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.kind),
            None => write!(f, "{}", self.kind),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resource {
    pub name: String,
    pub capacity: u32,
}

/// One way of performing a step: a resource (index into
/// [`Instance::resources`]) and a processing time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Alternative {
    pub resource: usize,
    pub duration: Time,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Job {
    pub name: String,
    pub lot: u32,
    pub steps: Vec<Vec<Alternative>>,
}

/// A validated scheduling instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    resources: Vec<Resource>,
    jobs: Vec<Job>,
}

impl Instance {
    pub fn new(resources: Vec<Resource>, jobs: Vec<Job>) -> Result<Self, ModelError> {
        let inst = Instance { resources, jobs };
        inst.validate(&|_| None)?;
        Ok(inst)
    }

    /// Validation with a callback mapping `(job, step)` back to an input line.
    pub(crate) fn validate(
        &self,
        line_of: &dyn Fn((usize, usize)) -> Option<usize>,
    ) -> Result<(), ModelError> {
        let err = |kind| ModelError::bare(kind);
        if self.resources.is_empty() {
            return Err(err(ModelErrorKind::NoResources));
        }
        if self.jobs.is_empty() {
            return Err(err(ModelErrorKind::NoJobs));
        }
        let mut names = HashSet::new();
        for r in &self.resources {
            if !names.insert(r.name.as_str()) {
                return Err(err(ModelErrorKind::Duplicate {
                    kind: "resource",
                    name: r.name.clone(),
                }));
            }
            if r.capacity == 0 {
                return Err(err(ModelErrorKind::NonPositive("capacity")));
            }
        }
        let mut job_names = HashSet::new();
        for (ji, job) in self.jobs.iter().enumerate() {
            if !job_names.insert(job.name.as_str()) {
                return Err(err(ModelErrorKind::Duplicate {
                    kind: "job",
                    name: job.name.clone(),
                }));
            }
            if job.lot == 0 {
                return Err(err(ModelErrorKind::NonPositive("lot size")));
            }
            if job.steps.is_empty() {
                return Err(err(ModelErrorKind::EmptyJob(job.name.clone())));
            }
            for (si, step) in job.steps.iter().enumerate() {
                let at = |kind| ModelError {
                    line: line_of((ji, si)),
                    kind,
                };
                if step.is_empty() {
                    return Err(at(ModelErrorKind::EmptyStep));
                }
                let mut used = HashSet::new();
                for alt in step {
                    let Some(res) = self.resources.get(alt.resource) else {
                        return Err(at(ModelErrorKind::UnknownResource(format!(
                            "#{}",
                            alt.resource
                        ))));
                    };
                    if alt.duration <= 0 {
                        return Err(at(ModelErrorKind::NonPositive("duration")));
                    }
                    if !used.insert(alt.resource) {
                        return Err(at(ModelErrorKind::Duplicate {
                            kind: "alternative resource",
                            name: res.name.clone(),
                        }));
                    }
                }
                if si > 0 {
                    let prev = &job.steps[si - 1];
                    if let Some(alt) = step
                        .iter()
                        .find(|a| prev.iter().any(|b| b.resource == a.resource))
                    {
                        return Err(at(ModelErrorKind::ResourceClash {
                            job: job.name.clone(),
                            first: si,
                            second: si + 1,
                            resource: self.resources[alt.resource].name.clone(),
                        }));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn resources(&self) -> &[Resource] {
        &self.resources
    }

    pub fn jobs(&self) -> &[Job] {
        &self.jobs
    }

    pub fn resource_index(&self, name: &str) -> Option<usize> {
        self.resources.iter().position(|r| r.name == name)
    }

    pub fn job_index(&self, name: &str) -> Option<usize> {
        self.jobs.iter().position(|j| j.name == name)
    }

    /// `N_b^r`: total resource capacity.
    pub fn total_capacity(&self) -> u32 {
        self.resources.iter().map(|r| r.capacity).sum()
    }

    /// `N_b^j`: total number of job instances.
    pub fn total_jobs(&self) -> u32 {
        self.jobs.iter().map(|j| j.lot).sum()
    }

    /// Copy of this instance with every lot size replaced.
    pub fn with_lots(&self, lot: u32) -> Result<Self, ModelError> {
        let jobs = self.jobs.iter().map(|j| Job { lot, ..j.clone() }).collect();
        Instance::new(self.resources.clone(), jobs)
    }

    /// Copy of this instance with every resource capacity replaced.
    pub fn with_capacities(&self, capacity: u32) -> Result<Self, ModelError> {
        let resources = self
            .resources
            .iter()
            .map(|r| Resource {
                capacity,
                ..r.clone()
            })
            .collect();
        Instance::new(resources, self.jobs.clone())
    }
}

/// Prints the instance in the text grammar accepted by [`parse_instance`].
impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.resources {
            writeln!(f, "resource {} {}", r.name, r.capacity)?;
        }
        for job in &self.jobs {
            writeln!(f, "job {} lot {}", job.name, job.lot)?;
            for step in &job.steps {
                let alts: Vec<String> = step
                    .iter()
                    .map(|a| format!("{}:{}", self.resources[a.resource].name, a.duration))
                    .collect();
                writeln!(f, "step {}", alts.join(" | "))?;
            }
        }
        Ok(())
    }
}
