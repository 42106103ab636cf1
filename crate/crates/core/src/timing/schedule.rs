use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{earliest_start, find_idle_time, Span, Time};
use crate::model::PlaceTimedNet;
use crate::petri::{Marking, PlaceId, TransitionId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TimingError {
    #[error("transition `{transition}` is not firable at suffix position {position}")]
    NotFirable { transition: String, position: usize },
}

/// One scheduled operation. Indices are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OpRecord {
    pub job: usize,
    pub instance: usize,
    pub step: usize,
    pub alt: usize,
    pub place: PlaceId,
    pub resource: usize,
    pub start: Time,
    pub end: Time,
}

/// Where a job instance currently sits and when its last operation ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cursor {
    pub place: PlaceId,
    pub last_end: Time,
}

/// Timed view of a partial firing sequence: per-resource timelines,
/// per-instance progress and the realised cost `g`.
///
/// Operations are placed once and never moved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleState {
    marking: Marking,
    timelines: Vec<Vec<OpRecord>>,
    cursors: Vec<Vec<Cursor>>,
    g: Time,
}

/// Hashable identity of a timed state, blind to which instance of a job type
/// is which and to record labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StateKey {
    marking: Marking,
    cursors: Vec<Vec<(PlaceId, Time)>>,
    spans: Vec<Vec<Span>>,
}

impl ScheduleState {
    pub fn initial(net: &PlaceTimedNet) -> Self {
        let cursors = net
            .instance()
            .jobs()
            .iter()
            .enumerate()
            .map(|(ji, job)| {
                vec![
                    Cursor {
                        place: net.start_place(ji),
                        last_end: 0,
                    };
                    job.lot as usize
                ]
            })
            .collect();
        ScheduleState {
            marking: net.m0().clone(),
            timelines: vec![Vec::new(); net.resource_count()],
            cursors,
            g: 0,
        }
    }

    pub fn marking(&self) -> &Marking {
        &self.marking
    }

    /// Maximum end time over all records, 0 when nothing is scheduled.
    pub fn g(&self) -> Time {
        self.g
    }

    pub fn timeline(&self, resource: usize) -> &[OpRecord] {
        &self.timelines[resource]
    }

    pub fn spans(&self, resource: usize) -> Vec<Span> {
        self.timelines[resource]
            .iter()
            .map(|r| (r.start, r.end))
            .collect()
    }

    pub fn cursors(&self, job: usize) -> &[Cursor] {
        &self.cursors[job]
    }

    /// Every record, sorted by `(start, resource, job, instance)`.
    pub fn records(&self) -> Vec<OpRecord> {
        let mut all: Vec<OpRecord> = self.timelines.iter().flatten().copied().collect();
        all.sort_by_key(|r| (r.start, r.resource, r.job, r.instance));
        all
    }

    pub fn record_count(&self) -> usize {
        self.timelines.iter().map(Vec::len).sum()
    }

    /// Completion time of each finished instance, `None` for unfinished ones.
    pub fn completion_times(&self, net: &PlaceTimedNet) -> Vec<Vec<Option<Time>>> {
        self.cursors
            .iter()
            .enumerate()
            .map(|(ji, cs)| {
                cs.iter()
                    .map(|c| (c.place == net.end_place(ji)).then_some(c.last_end))
                    .collect()
            })
            .collect()
    }

    pub fn key(&self) -> StateKey {
        let cursors = self
            .cursors
            .iter()
            .map(|cs| {
                let mut v: Vec<(PlaceId, Time)> =
                    cs.iter().map(|c| (c.place, c.last_end)).collect();
                v.sort_unstable();
                v
            })
            .collect();
        let spans = (0..self.timelines.len())
            .map(|r| {
                let mut s = self.spans(r);
                s.sort_unstable();
                s
            })
            .collect();
        StateKey {
            marking: self.marking.clone(),
            cursors,
            spans,
        }
    }

    /// Fires `suffix` in order and schedules every operation it starts at the
    /// earliest idle slot of its resource after the moving instance's
    /// previous operation. Returns a new state; `self` is untouched.
    ///
    /// When several instances of a job type wait in the consumed place, the
    /// one with the smallest last end time moves (ties: lowest index).
    pub fn apply_events(
        &self,
        net: &PlaceTimedNet,
        suffix: &[TransitionId],
    ) -> Result<ScheduleState, TimingError> {
        let mut next = self.clone();
        for (position, &t) in suffix.iter().enumerate() {
            next.step(net, t).map_err(|()| TimingError::NotFirable {
                transition: net.net().transition_name(t).to_string(),
                position,
            })?;
        }
        Ok(next)
    }

    fn step(&mut self, net: &PlaceTimedNet, t: TransitionId) -> Result<(), ()> {
        if t.0 >= net.net().transition_count() || !net.net().is_enabled(&self.marking, t) {
            return Err(());
        }
        let info = *net.transition_info(t);
        let (instance, _) = self.cursors[info.job]
            .iter()
            .enumerate()
            .filter(|(_, c)| c.place == info.from)
            .min_by_key(|(i, c)| (c.last_end, *i))
            .ok_or(())?;
        net.net().fire_in_place(&mut self.marking, t);
        self.cursors[info.job][instance].place = info.to;
        if let (Some(resource), Some((step, alt))) =
            (net.resource_of(info.to), net.step_of(info.to))
        {
            let duration = net.delay(info.to);
            let idle = find_idle_time(&self.spans(resource), net.capacity(resource));
            let cursor = &mut self.cursors[info.job][instance];
            let start = earliest_start(&idle, cursor.last_end, duration);
            let end = start + duration;
            cursor.last_end = end;
            self.timelines[resource].push(OpRecord {
                job: info.job,
                instance,
                step,
                alt,
                place: info.to,
                resource,
                start,
                end,
            });
            self.g = self.g.max(end);
        }
        Ok(())
    }
}

/// One row of the schedule CSV. Instance, step and alternative are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleRow {
    pub job: String,
    pub instance: usize,
    pub step: usize,
    pub alt: usize,
    pub resource: String,
    pub start: Time,
    pub end: Time,
}

impl ScheduleRow {
    pub fn from_record(net: &PlaceTimedNet, r: &OpRecord) -> Self {
        ScheduleRow {
            job: net.job_name(r.job).to_string(),
            instance: r.instance + 1,
            step: r.step + 1,
            alt: r.alt + 1,
            resource: net.resource_name(r.resource).to_string(),
            start: r.start,
            end: r.end,
        }
    }
}

#[derive(Debug, Error)]
#[error("schedule row {row}: {message}")]
pub struct ScheduleCsvError {
    /// 1-based data row, 0 for the header.
    pub row: usize,
    pub message: String,
}

/// Renders `job,instance,step,alt,resource,start,end` rows sorted by
/// `(start, resource, job, instance)`.
pub fn write_schedule_csv(net: &PlaceTimedNet, records: &[OpRecord]) -> String {
    let mut sorted = records.to_vec();
    sorted.sort_by_key(|r| (r.start, r.resource, r.job, r.instance));
    let mut w = csv::Writer::from_writer(Vec::new());
    if sorted.is_empty() {
        w.write_record(["job", "instance", "step", "alt", "resource", "start", "end"])
            .expect("in-memory write");
    }
    for r in &sorted {
        w.serialize(ScheduleRow::from_record(net, r))
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

pub fn parse_schedule_csv(text: &str) -> Result<Vec<ScheduleRow>, ScheduleCsvError> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = rdr.headers().map_err(|e| ScheduleCsvError {
        row: 0,
        message: e.to_string(),
    })?;
    let expected = ["job", "instance", "step", "alt", "resource", "start", "end"];
    if !headers.iter().eq(expected) {
        return Err(ScheduleCsvError {
            row: 0,
            message: format!("expected header `{}`", expected.join(",")),
        });
    }
    rdr.deserialize()
        .enumerate()
        .map(|(i, row)| {
            row.map_err(|e| ScheduleCsvError {
                row: i + 1,
                message: e.to_string(),
            })
        })
        .collect()
}
