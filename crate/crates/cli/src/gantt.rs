use std::fmt::Write;

use fmsched::timing::{ScheduleRow, Time};
use fmsched::Instance;

const LEFT: i64 = 60;
const TOP: i64 = 20;
const LANE: i64 = 28;
const BAR: i64 = 20;
const TARGET_WIDTH: i64 = 800;

const PALETTE: [&str; 8] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7",
];

/// Gantt chart as SVG: one lane per resource unit, one `class="bar"` rect per
/// row. Time `t` maps to `x = 60 + t * scale` with an integral scale, so bar
/// coordinates are exact. Rows naming unknown resources are skipped.
pub fn emit_gantt(inst: &Instance, rows: &[ScheduleRow]) -> String {
    let horizon = rows.iter().map(|r| r.end).max().unwrap_or(0).max(1);
    let scale = (TARGET_WIDTH / horizon).max(1);

    // Lanes: resource order, then unit index.
    let mut lane_base = Vec::new();
    let mut lanes = 0i64;
    for r in inst.resources() {
        lane_base.push(lanes);
        lanes += i64::from(r.capacity);
    }

    // Assign each row to the lowest free unit of its resource.
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by_key(|&i| (rows[i].start, rows[i].end, i));
    let mut unit_free: Vec<Vec<Time>> = inst
        .resources()
        .iter()
        .map(|r| vec![Time::MIN; r.capacity as usize])
        .collect();
    let mut bars = Vec::new();
    for i in order {
        let row = &rows[i];
        let Some(r) = inst.resource_index(&row.resource) else {
            continue;
        };
        let units = &mut unit_free[r];
        let unit = units.iter().position(|&f| f <= row.start).unwrap_or(0);
        units[unit] = row.end;
        bars.push((lane_base[r] + unit as i64, row));
    }

    let width = LEFT + horizon * scale + 20;
    let axis_y = TOP + lanes * LANE;
    let height = axis_y + 30;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="10">"#
    );
    for (r, res) in inst.resources().iter().enumerate() {
        for u in 0..i64::from(res.capacity) {
            let y = TOP + (lane_base[r] + u) * LANE;
            let label = if res.capacity > 1 {
                format!("{}.{}", res.name, u + 1)
            } else {
                res.name.clone()
            };
            let _ = writeln!(
                s,
                r#"  <text class="lane" x="4" y="{}">{label}</text>"#,
                y + BAR / 2 + 4
            );
        }
    }
    let _ = writeln!(
        s,
        r#"  <line class="axis" x1="{LEFT}" y1="{axis_y}" x2="{}" y2="{axis_y}" stroke="black"/>"#,
        LEFT + horizon * scale
    );
    let _ = writeln!(
        s,
        r#"  <line class="axis" x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{axis_y}" stroke="black"/>"#
    );
    let step = ((horizon + 9) / 10).max(1);
    let mut t = 0;
    while t <= horizon {
        let x = LEFT + t * scale;
        let _ = writeln!(
            s,
            r#"  <text class="tick" x="{x}" y="{}" text-anchor="middle">{t}</text>"#,
            axis_y + 14
        );
        t += step;
    }
    for (lane, row) in &bars {
        let job = inst.job_index(&row.job).unwrap_or(0);
        let x = LEFT + row.start * scale;
        let y = TOP + lane * LANE;
        let w = (row.end - row.start) * scale;
        let _ = writeln!(
            s,
            r#"  <rect class="bar" x="{x}" y="{y}" width="{w}" height="{BAR}" fill="{}" stroke="black" data-start="{}" data-end="{}"/>"#,
            PALETTE[job % PALETTE.len()],
            row.start,
            row.end
        );
        let _ = writeln!(
            s,
            r#"  <text class="label" x="{}" y="{}" text-anchor="middle">{}.{}/{}</text>"#,
            x + w / 2,
            y + BAR / 2 + 4,
            row.job,
            row.instance,
            row.step
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use fmsched::{fixtures, parse_instance};

    fn row(job: &str, step: usize, resource: &str, start: Time, end: Time) -> ScheduleRow {
        ScheduleRow {
            job: job.into(),
            instance: 1,
            step,
            alt: 1,
            resource: resource.into(),
            start,
            end,
        }
    }

    #[test]
    fn empty_schedule_has_axes_only() {
        let inst = parse_instance(fixtures::TABLE3).unwrap();
        let svg = emit_gantt(&inst, &[]);
        assert_eq!(svg.matches(r#"class="bar""#).count(), 0);
        assert_eq!(svg.matches(r#"class="axis""#).count(), 2);
        assert!(svg.starts_with("<svg"));
    }

    #[test]
    fn bar_geometry() {
        let inst = parse_instance(fixtures::TABLE3).unwrap();
        let rows = vec![
            row("b1", 1, "r1", 0, 3),
            row("b2", 1, "r2", 0, 2),
            row("b1", 2, "r4", 3, 5),
        ];
        let svg = emit_gantt(&inst, &rows);
        assert_eq!(svg.matches(r#"class="bar""#).count(), 3);
        // scale = 800 / 5 = 160; r4 is the fourth lane.
        assert!(svg.contains(r#"x="540" y="104" width="320""#), "{svg}");
    }

    #[test]
    fn parallel_units_get_separate_lanes() {
        let inst = parse_instance(fixtures::EXAMPLE3).unwrap();
        let rows = vec![
            row("b1", 1, "r1", 0, 25),
            ScheduleRow {
                instance: 2,
                ..row("b1", 1, "r1", 0, 25)
            },
        ];
        let svg = emit_gantt(&inst, &rows);
        assert!(svg.contains(r#"x="60" y="20""#));
        assert!(svg.contains(r#"x="60" y="48""#));
    }
}
