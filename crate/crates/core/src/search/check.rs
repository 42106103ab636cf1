use std::collections::HashMap;

use crate::model::Instance;
use crate::timing::{load_at, ScheduleRow, Span, Time};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleCheck {
    pub feasible: bool,
    pub makespan: Time,
    pub violations: Vec<String>,
}

/// Verifies a schedule against an instance: every step of every part runs
/// exactly once on a listed alternative with its duration, a part's steps run
/// in order without overlap, and no resource exceeds its capacity.
pub fn check_schedule(inst: &Instance, rows: &[ScheduleRow]) -> ScheduleCheck {
    let mut violations = Vec::new();
    let mut spans: Vec<Vec<Span>> = vec![Vec::new(); inst.resources().len()];
    // (job, instance, step) -> (start, end)
    let mut placed: HashMap<(usize, usize, usize), (Time, Time)> = HashMap::new();

    for (i, row) in rows.iter().enumerate() {
        let n = i + 1;
        let Some(ji) = inst.job_index(&row.job) else {
            violations.push(format!("row {n}: unknown job `{}`", row.job));
            continue;
        };
        let job = &inst.jobs()[ji];
        if row.instance == 0 || row.instance > job.lot as usize {
            violations.push(format!(
                "row {n}: instance {} outside 1..={}",
                row.instance, job.lot
            ));
            continue;
        }
        if row.step == 0 || row.step > job.steps.len() {
            violations.push(format!(
                "row {n}: step {} outside 1..={}",
                row.step,
                job.steps.len()
            ));
            continue;
        }
        let alts = &job.steps[row.step - 1];
        if row.alt == 0 || row.alt > alts.len() {
            violations.push(format!(
                "row {n}: alternative {} outside 1..={}",
                row.alt,
                alts.len()
            ));
            continue;
        }
        let alt = alts[row.alt - 1];
        let resource = &inst.resources()[alt.resource];
        if resource.name != row.resource {
            violations.push(format!(
                "row {n}: alternative {} uses `{}`, not `{}`",
                row.alt, resource.name, row.resource
            ));
        }
        if row.start < 0 || row.end - row.start != alt.duration {
            violations.push(format!(
                "row {n}: span [{}, {}) does not match duration {}",
                row.start, row.end, alt.duration
            ));
        }
        if placed
            .insert((ji, row.instance, row.step), (row.start, row.end))
            .is_some()
        {
            violations.push(format!(
                "row {n}: {} instance {} step {} scheduled twice",
                row.job, row.instance, row.step
            ));
        }
        spans[alt.resource].push((row.start, row.end));
    }

    for (ji, job) in inst.jobs().iter().enumerate() {
        for instance in 1..=job.lot as usize {
            let mut prev_end: Option<Time> = None;
            for step in 1..=job.steps.len() {
                match placed.get(&(ji, instance, step)) {
                    None => violations.push(format!(
                        "{} instance {instance} step {step} is missing",
                        job.name
                    )),
                    Some(&(start, end)) => {
                        if let Some(pe) = prev_end.filter(|&pe| start < pe) {
                            violations.push(format!(
                                "{} instance {instance} step {step} starts at {start} before step {} ends at {pe}",
                                job.name,
                                step - 1
                            ));
                        }
                        prev_end = Some(end);
                    }
                }
            }
        }
    }

    for (r, resource) in inst.resources().iter().enumerate() {
        let mut starts: Vec<Time> = spans[r].iter().map(|s| s.0).collect();
        starts.sort_unstable();
        starts.dedup();
        for t in starts {
            let load = load_at(&spans[r], t);
            if load > resource.capacity as usize {
                violations.push(format!(
                    "resource `{}` holds {load} operations at time {t}, capacity {}",
                    resource.name, resource.capacity
                ));
            }
        }
    }

    ScheduleCheck {
        feasible: violations.is_empty(),
        makespan: rows.iter().map(|r| r.end).max().unwrap_or(0),
        violations,
    }
}
