//! Resource timelines: load, idle intervals and earliest feasible insertion.

mod schedule;

pub use schedule::{
    parse_schedule_csv, write_schedule_csv, Cursor, OpRecord, ScheduleCsvError, ScheduleRow,
    ScheduleState, StateKey, TimingError,
};

use std::fmt;

/// Integral time units.
pub type Time = i64;

/// Half-open busy span `[start, end)`.
pub type Span = (Time, Time);

/// A time point or the `+inf` sentinel, which orders above every integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TimeBound {
    At(Time),
    Infinity,
}

impl fmt::Display for TimeBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TimeBound::At(t) => write!(f, "{t}"),
            TimeBound::Infinity => write!(f, "+inf"),
        }
    }
}

/// Half-open interval `[start, end)` with a possibly unbounded end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    pub start: Time,
    pub end: TimeBound,
}

impl Interval {
    pub fn new(start: Time, end: Time) -> Self {
        Interval {
            start,
            end: TimeBound::At(end),
        }
    }

    pub fn unbounded(start: Time) -> Self {
        Interval {
            start,
            end: TimeBound::Infinity,
        }
    }

    pub fn contains(&self, t: Time) -> bool {
        self.start <= t && TimeBound::At(t) < self.end
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.start, self.end)
    }
}

/// Number of spans containing `t`.
pub fn load_at(spans: &[Span], t: Time) -> usize {
    spans.iter().filter(|&&(s, e)| s <= t && t < e).count()
}

/// Maximal intervals of `[0, +inf)` during which fewer than `capacity` spans
/// are active, sorted and pairwise disjoint.
///
/// Start and end events are swept in time order with ends first on ties;
/// every stretch where the counter sits at `capacity` is saturated, and the
/// result is the complement of the saturated stretches.
pub fn find_idle_time(spans: &[Span], capacity: u32) -> Vec<Interval> {
    #[derive(PartialEq, Eq, PartialOrd, Ord)]
    enum Tag {
        End,
        Start,
    }
    let mut events: Vec<(Time, Tag)> = Vec::with_capacity(spans.len() * 2);
    for &(s, e) in spans {
        events.push((s, Tag::Start));
        events.push((e, Tag::End));
    }
    events.sort();

    let cap = capacity as usize;
    let mut saturated: Vec<Span> = Vec::new();
    let mut load = 0usize;
    let mut sat_start = 0;
    for (t, tag) in events {
        match tag {
            Tag::Start => {
                load += 1;
                if load == cap {
                    sat_start = t;
                }
            }
            Tag::End => {
                if load == cap && sat_start != t {
                    saturated.push((sat_start, t));
                }
                load = load.saturating_sub(1);
            }
        }
    }

    let mut idle = Vec::new();
    let mut cursor = 0;
    for (s, e) in saturated {
        if s > cursor {
            idle.push(Interval::new(cursor, s));
        }
        cursor = cursor.max(e);
    }
    idle.push(Interval::unbounded(cursor));
    idle
}

/// Least `t >= ready` such that `[t, t + duration)` lies inside a single idle
/// interval.
pub fn earliest_start(idle: &[Interval], ready: Time, duration: Time) -> Time {
    for iv in idle {
        let t = ready.max(iv.start);
        if TimeBound::At(t + duration) <= iv.end {
            return t;
        }
    }
    // Only reachable for a list without an unbounded tail.
    idle.iter()
        .filter_map(|iv| match iv.end {
            TimeBound::At(e) => Some(e),
            TimeBound::Infinity => None,
        })
        .max()
        .map_or(ready, |e| e.max(ready))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const X_R3: [Span; 2] = [(25, 45), (26, 47)];

    #[test]
    fn load_counts_half_open_spans() {
        assert_eq!(load_at(&X_R3, 30), 2);
        assert_eq!(load_at(&X_R3, 45), 1);
        assert_eq!(load_at(&X_R3, 47), 0);
        assert_eq!(load_at(&[], 3), 0);
    }

    #[test]
    fn idle_intervals_of_shared_machine() {
        assert_eq!(
            find_idle_time(&X_R3, 2),
            vec![Interval::new(0, 26), Interval::unbounded(45)]
        );
        // Overloaded at capacity 1: the whole union is saturated.
        assert_eq!(
            find_idle_time(&X_R3, 1),
            vec![Interval::new(0, 25), Interval::unbounded(47)]
        );
    }

    #[test]
    fn idle_of_empty_timeline() {
        assert_eq!(find_idle_time(&[], 1), vec![Interval::unbounded(0)]);
    }

    #[test]
    fn idle_after_single_span_matches_sampling() {
        let spans = [(0, 5)];
        let idle = find_idle_time(&spans, 1);
        assert_eq!(idle, vec![Interval::unbounded(5)]);
        for t in 0..=10 {
            let inside = idle.iter().any(|iv| iv.contains(t));
            assert_eq!(inside, load_at(&spans, t) < 1, "t = {t}");
        }
    }

    #[test]
    fn back_to_back_spans_merge() {
        assert_eq!(
            find_idle_time(&[(2, 5), (5, 8)], 1),
            vec![Interval::new(0, 2), Interval::unbounded(8)]
        );
    }

    #[test]
    fn earliest_start_cases() {
        assert_eq!(earliest_start(&[Interval::unbounded(0)], 45, 27), 45);
        assert_eq!(earliest_start(&[Interval::unbounded(0)], 0, 5), 0);
        let idle = [Interval::new(0, 10), Interval::unbounded(20)];
        assert_eq!(earliest_start(&idle, 0, 15), 20);
        assert_eq!(earliest_start(&idle, 0, 10), 0);
        assert_eq!(earliest_start(&idle, 1, 10), 20);
        // Linear scan over candidate starts.
        for ready in 0..25 {
            for d in 1..12 {
                let expected = (ready..)
                    .find(|&t| {
                        idle.iter()
                            .any(|iv| iv.contains(t) && (t..t + d).all(|x| iv.contains(x)))
                    })
                    .unwrap();
                assert_eq!(earliest_start(&idle, ready, d), expected);
            }
        }
    }

    fn spans_within_capacity() -> impl Strategy<Value = (Vec<Span>, u32)> {
        (1u32..4, prop::collection::vec((0i64..40, 1i64..12), 0..10)).prop_map(|(cap, raw)| {
            // Greedy insertion keeps every generated timeline within capacity.
            let mut spans: Vec<Span> = Vec::new();
            for (ready, d) in raw {
                let idle = find_idle_time(&spans, cap);
                let s = earliest_start(&idle, ready, d);
                spans.push((s, s + d));
            }
            (spans, cap)
        })
    }

    proptest! {
        #[test]
        fn idle_matches_pointwise_load((spans, cap) in spans_within_capacity()) {
            let idle = find_idle_time(&spans, cap);
            for w in idle.windows(2) {
                prop_assert!(TimeBound::At(w[1].start) > w[0].end);
            }
            prop_assert_eq!(idle.last().unwrap().end, TimeBound::Infinity);
            for t in 0..70 {
                let inside = idle.iter().any(|iv| iv.contains(t));
                prop_assert_eq!(inside, load_at(&spans, t) < cap as usize, "t = {}", t);
            }
        }

        #[test]
        fn insertion_respects_capacity((spans, cap) in spans_within_capacity()) {
            for &(s, _) in &spans {
                prop_assert!(load_at(&spans, s) <= cap as usize);
            }
        }
    }
}
