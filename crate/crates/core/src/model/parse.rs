use std::collections::HashMap;

use super::{Alternative, Instance, Job, ModelError, ModelErrorKind, Resource};
use crate::timing::Time;

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn name(line: usize, s: &str) -> Result<String, ModelError> {
    if is_name(s) {
        Ok(s.to_string())
    } else {
        Err(ModelError::at(
            line,
            ModelErrorKind::Syntax(format!("`{s}` is not a valid name")),
        ))
    }
}

fn positive(line: usize, s: &str, what: &'static str) -> Result<i64, ModelError> {
    let value: i64 = s.parse().map_err(|_| {
        ModelError::at(
            line,
            ModelErrorKind::Syntax(format!("expected an integer, found `{s}`")),
        )
    })?;
    if value <= 0 {
        return Err(ModelError::at(line, ModelErrorKind::NonPositive(what)));
    }
    Ok(value)
}

fn small_positive(line: usize, s: &str, what: &'static str) -> Result<u32, ModelError> {
    let v = positive(line, s, what)?;
    u32::try_from(v).map_err(|_| {
        ModelError::at(
            line,
            ModelErrorKind::Syntax(format!("{what} {v} is too large")),
        )
    })
}

/// Parses the line-oriented instance grammar:
///
/// ```text
/// resource <NAME> <INT>
/// job <NAME> lot <INT>
/// step <NAME>:<INT> ( | <NAME>:<INT> )*
/// ```
///
/// `#` starts a comment and blank lines are ignored. Steps attach to the most
/// recent job.
type PendingStep = (usize, usize, usize, Vec<(String, Time)>);

pub fn parse_instance(text: &str) -> Result<Instance, ModelError> {
    let mut resources: Vec<Resource> = Vec::new();
    let mut jobs: Vec<Job> = Vec::new();
    let mut resource_lines: HashMap<String, usize> = HashMap::new();
    let mut step_lines: HashMap<(usize, usize), usize> = HashMap::new();
    // Step references are resolved after the whole file is read so resources
    // may be declared anywhere. Entries: (line, job, step, alternatives).
    let mut pending: Vec<PendingStep> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = content
            .split_once(char::is_whitespace)
            .map(|(k, r)| (k, r.trim()))
            .unwrap_or((content, ""));
        match keyword {
            "resource" => {
                let fields: Vec<&str> = rest.split_whitespace().collect();
                let [n, cap] = fields[..] else {
                    return Err(ModelError::at(
                        line,
                        ModelErrorKind::Syntax("expected `resource <NAME> <INT>`".into()),
                    ));
                };
                let n = name(line, n)?;
                let capacity = small_positive(line, cap, "capacity")?;
                if resource_lines.insert(n.clone(), line).is_some() {
                    return Err(ModelError::at(
                        line,
                        ModelErrorKind::Duplicate {
                            kind: "resource",
                            name: n,
                        },
                    ));
                }
                resources.push(Resource { name: n, capacity });
            }
            "job" => {
                let fields: Vec<&str> = rest.split_whitespace().collect();
                let [n, "lot", lot] = fields[..] else {
                    return Err(ModelError::at(
                        line,
                        ModelErrorKind::Syntax("expected `job <NAME> lot <INT>`".into()),
                    ));
                };
                let n = name(line, n)?;
                if jobs.iter().any(|j| j.name == n) {
                    return Err(ModelError::at(
                        line,
                        ModelErrorKind::Duplicate {
                            kind: "job",
                            name: n,
                        },
                    ));
                }
                let lot = small_positive(line, lot, "lot size")?;
                jobs.push(Job {
                    name: n,
                    lot,
                    steps: Vec::new(),
                });
            }
            "step" => {
                let Some(ji) = jobs.len().checked_sub(1) else {
                    return Err(ModelError::at(
                        line,
                        ModelErrorKind::Syntax("`step` before any `job`".into()),
                    ));
                };
                if rest.is_empty() {
                    return Err(ModelError::at(line, ModelErrorKind::EmptyStep));
                }
                let mut alts = Vec::new();
                for part in rest.split('|') {
                    let Some((n, d)) = part.trim().split_once(':') else {
                        return Err(ModelError::at(
                            line,
                            ModelErrorKind::Syntax(format!(
                                "expected `<NAME>:<INT>`, found `{}`",
                                part.trim()
                            )),
                        ));
                    };
                    alts.push((name(line, n.trim())?, positive(line, d.trim(), "duration")?));
                }
                let si = jobs[ji].steps.len();
                jobs[ji].steps.push(Vec::new());
                step_lines.insert((ji, si), line);
                pending.push((line, ji, si, alts));
            }
            other => {
                return Err(ModelError::at(
                    line,
                    ModelErrorKind::Syntax(format!("unknown keyword `{other}`")),
                ));
            }
        }
    }

    for (line, ji, si, alts) in pending {
        for (n, duration) in alts {
            let resource = resources
                .iter()
                .position(|r| r.name == n)
                .ok_or_else(|| ModelError::at(line, ModelErrorKind::UnknownResource(n)))?;
            jobs[ji].steps[si].push(Alternative { resource, duration });
        }
    }

    let inst = Instance { resources, jobs };
    inst.validate(&|key| step_lines.get(&key).copied())?;
    Ok(inst)
}
