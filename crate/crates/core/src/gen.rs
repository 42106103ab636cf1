//! Random small instances for property tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::model::{Alternative, Instance, Job, Resource};
use crate::timing::Time;

/// Size limits for [`random_instance`].
#[derive(Debug, Clone, Copy)]
pub struct GenLimits {
    pub max_parts: u32,
    pub max_resources: usize,
    pub max_capacity: u32,
    pub max_steps: usize,
    pub max_alternatives: usize,
    pub max_duration: Time,
}

impl Default for GenLimits {
    fn default() -> Self {
        GenLimits {
            max_parts: 3,
            max_resources: 4,
            max_capacity: 2,
            max_steps: 3,
            max_alternatives: 2,
            max_duration: 10,
        }
    }
}

/// A valid instance within `limits`. Consecutive steps of a job never share
/// a resource.
pub fn random_instance<R: Rng + ?Sized>(rng: &mut R, limits: &GenLimits) -> Instance {
    let nr = rng.gen_range(1..=limits.max_resources.max(1));
    let resources: Vec<Resource> = (0..nr)
        .map(|i| Resource {
            name: format!("r{}", i + 1),
            capacity: rng.gen_range(1..=limits.max_capacity.max(1)),
        })
        .collect();

    let parts = rng.gen_range(1..=limits.max_parts.max(1));
    let types = rng.gen_range(1..=parts.min(2));
    let mut lots = vec![1u32; types as usize];
    for _ in types..parts {
        let i = rng.gen_range(0..lots.len());
        lots[i] += 1;
    }

    let all: Vec<usize> = (0..nr).collect();
    let jobs = lots
        .iter()
        .enumerate()
        .map(|(ji, &lot)| {
            let mut steps: Vec<Vec<Alternative>> = Vec::new();
            let n_steps = if nr == 1 {
                1
            } else {
                rng.gen_range(1..=limits.max_steps.max(1))
            };
            for _ in 0..n_steps {
                let free: Vec<usize> = match steps.last() {
                    Some(prev) => all
                        .iter()
                        .copied()
                        .filter(|r| prev.iter().all(|a| a.resource != *r))
                        .collect(),
                    None => all.clone(),
                };
                if free.is_empty() {
                    break;
                }
                let k = rng.gen_range(1..=limits.max_alternatives.max(1).min(free.len()));
                let step = free
                    .choose_multiple(rng, k)
                    .map(|&resource| Alternative {
                        resource,
                        duration: rng.gen_range(1..=limits.max_duration.max(1)),
                    })
                    .collect();
                steps.push(step);
            }
            Job {
                name: format!("b{}", ji + 1),
                lot,
                steps,
            }
        })
        .collect();

    Instance::new(resources, jobs).expect("generator respects the instance rules")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn respects_limits() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let limits = GenLimits::default();
        for _ in 0..200 {
            let inst = random_instance(&mut rng, &limits);
            assert!(inst.total_jobs() <= 3);
            assert!(inst.resources().len() <= 4);
            for job in inst.jobs() {
                for step in &job.steps {
                    assert!(step.iter().all(|a| (1..=10).contains(&a.duration)));
                }
            }
        }
    }
}
