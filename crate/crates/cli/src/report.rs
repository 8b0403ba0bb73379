//! CSV and SVG report emission.
//!
//! CSV values are written in full double precision scientific notation so
//! re-runs are byte-identical and nothing is lost to rounding. The SVG
//! emitter draws static line charts with labeled axes, one series per scheme
//! (per link for beam patterns), without any external plotting dependency.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::preset::{Preset, PresetKind};
use crate::sweep::{BeamSweep, SweepResult};
use crate::CliError;

/// Header of sweep CSV files.
pub const SWEEP_CSV_HEADER: &str = "scheme,design_ss,eval_ss,phi_itu,p_u_norm,p_d_norm,r_u,r_d,residual,sigma_trace";

/// Header of beam-pattern CSV files.
pub const BEAM_CSV_HEADER: &str = "scheme,design_ss,eval_ss,phi_itu,phi,p_d_imp,p_d_ref,p_u_imp,p_u_ref";

fn num(v: f64) -> String {
    format!("{v:.17e}")
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents)
        .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })
}

/// Writes sweep results as CSV, one row per grid point per scheme.
pub fn emit_csv(results: &[SweepResult], path: &Path) -> Result<(), CliError> {
    assert!(!results.is_empty(), "nothing to emit");
    let mut out = String::new();
    out.push_str(SWEEP_CSV_HEADER);
    out.push('\n');
    for r in results {
        for row in &r.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                r.scheme.label(),
                r.design_with_ss,
                r.eval_with_ss,
                num(row.phi_itu),
                num(row.p_u_norm),
                num(row.p_d_norm),
                num(row.r_u),
                num(row.r_d),
                num(row.residual),
                num(row.sigma_trace),
            );
        }
    }
    write_file(path, &out)
}

/// Writes beam patterns as CSV, one row per probe angle per scheme and panel.
pub fn emit_beam_csv(beams: &[BeamSweep], path: &Path) -> Result<(), CliError> {
    assert!(!beams.is_empty(), "nothing to emit");
    let mut out = String::new();
    out.push_str(BEAM_CSV_HEADER);
    out.push('\n');
    for b in beams {
        let p = &b.patterns;
        for (k, &phi) in p.grid.iter().enumerate() {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                b.scheme.label(),
                b.design_with_ss,
                b.eval_with_ss,
                num(b.phi_itu),
                num(phi),
                num(p.p_d_imp[k]),
                num(p.p_d_ref[k]),
                num(p.p_u_imp[k]),
                num(p.p_u_ref[k]),
            );
        }
    }
    write_file(path, &out)
}

// ── SVG line charts ─────────────────────────────────────────────────────────

const PANEL_W: f64 = 480.0;
const PANEL_H: f64 = 300.0;
const MARGIN_L: f64 = 72.0;
const MARGIN_R: f64 = 16.0;
const MARGIN_T: f64 = 36.0;
const MARGIN_B: f64 = 46.0;

const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

struct Series {
    label: String,
    color: &'static str,
    points: Vec<(f64, f64)>,
}

struct Panel {
    title: String,
    y_label: String,
    series: Vec<Series>,
}

fn axis_ticks_x() -> [(f64, &'static str); 5] {
    use std::f64::consts::PI;
    [
        (0.0, "0"),
        (PI / 4.0, "π/4"),
        (PI / 2.0, "π/2"),
        (3.0 * PI / 4.0, "3π/4"),
        (PI, "π"),
    ]
}

fn fmt_tick(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else if v.abs() >= 0.01 && v.abs() < 10000.0 {
        format!("{v:.2}")
    } else {
        format!("{v:.1e}")
    }
}

fn render_panel(out: &mut String, panel: &Panel, x0: f64, y0: f64) {
    use std::f64::consts::PI;
    let plot_w = PANEL_W - MARGIN_L - MARGIN_R;
    let plot_h = PANEL_H - MARGIN_T - MARGIN_B;
    let left = x0 + MARGIN_L;
    let top = y0 + MARGIN_T;

    let y_max = panel
        .series
        .iter()
        .flat_map(|s| s.points.iter().map(|p| p.1))
        .filter(|v| v.is_finite())
        .fold(0.0_f64, f64::max)
        .max(1e-12)
        * 1.05;

    let sx = |phi: f64| left + phi / PI * plot_w;
    let sy = |v: f64| top + plot_h - (v.clamp(0.0, y_max) / y_max) * plot_h;

    // frame
    let _ = writeln!(
        out,
        "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{plot_w:.2}\" height=\"{plot_h:.2}\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>",
        left, top
    );
    let _ = writeln!(
        out,
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"14\" text-anchor=\"middle\" font-family=\"sans-serif\">{}</text>",
        x0 + PANEL_W / 2.0,
        y0 + 20.0,
        panel.title
    );

    // x ticks
    for (v, label) in axis_ticks_x() {
        let x = sx(v);
        let _ = writeln!(
            out,
            "<line x1=\"{x:.2}\" y1=\"{:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"#333\" stroke-width=\"1\"/>",
            top + plot_h,
            top + plot_h + 4.0
        );
        let _ = writeln!(
            out,
            "<text x=\"{x:.2}\" y=\"{:.2}\" font-size=\"11\" text-anchor=\"middle\" font-family=\"sans-serif\">{label}</text>",
            top + plot_h + 17.0
        );
    }
    let _ = writeln!(
        out,
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"middle\" font-family=\"sans-serif\">uplink user angle [rad]</text>",
        left + plot_w / 2.0,
        y0 + PANEL_H - 10.0
    );

    // y ticks
    for k in 0..=4 {
        let v = y_max * k as f64 / 4.0;
        let y = sy(v);
        let _ = writeln!(
            out,
            "<line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"#333\" stroke-width=\"1\"/>",
            left - 4.0,
            left
        );
        let _ = writeln!(
            out,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\" text-anchor=\"end\" font-family=\"sans-serif\">{}</text>",
            left - 7.0,
            y + 4.0,
            fmt_tick(v)
        );
    }
    let _ = writeln!(
        out,
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"middle\" font-family=\"sans-serif\" transform=\"rotate(-90 {:.2} {:.2})\">{}</text>",
        x0 + 16.0,
        top + plot_h / 2.0,
        x0 + 16.0,
        top + plot_h / 2.0,
        panel.y_label
    );

    // series
    for s in &panel.series {
        let mut d = String::new();
        for (i, &(phi, v)) in s.points.iter().enumerate() {
            let v = if v.is_finite() { v } else { 0.0 };
            let _ = write!(d, "{}{:.2},{:.2} ", if i == 0 { "M" } else { "L" }, sx(phi), sy(v));
        }
        let _ = writeln!(
            out,
            "<path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>",
            d.trim_end(),
            s.color
        );
    }

    // legend
    for (i, s) in panel.series.iter().enumerate() {
        let ly = top + 14.0 + 14.0 * i as f64;
        let _ = writeln!(
            out,
            "<line x1=\"{:.2}\" y1=\"{ly:.2}\" x2=\"{:.2}\" y2=\"{ly:.2}\" stroke=\"{}\" stroke-width=\"2\"/>",
            left + 8.0,
            left + 28.0,
            s.color
        );
        let _ = writeln!(
            out,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\" font-family=\"sans-serif\">{}</text>",
            left + 33.0,
            ly + 4.0,
            s.label
        );
    }
}

fn render_svg(panels: &[Panel], cols: usize, path: &Path) -> Result<(), CliError> {
    let rows = panels.len().div_ceil(cols);
    let width = PANEL_W * cols as f64;
    let height = PANEL_H * rows as f64;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" viewBox=\"0 0 {width:.0} {height:.0}\">"
    );
    let _ = writeln!(out, "<rect width=\"{width:.0}\" height=\"{height:.0}\" fill=\"white\"/>");
    for (i, panel) in panels.iter().enumerate() {
        let x0 = (i % cols) as f64 * PANEL_W;
        let y0 = (i / cols) as f64 * PANEL_H;
        render_panel(&mut out, panel, x0, y0);
    }
    out.push_str("</svg>\n");
    write_file(path, &out)
}

/// Renders a sweep as a two-panel SVG (uplink above downlink). Strength
/// presets plot normalized strengths; rate presets plot rates.
pub fn emit_svg(results: &[SweepResult], preset: Preset, path: &Path) -> Result<(), CliError> {
    assert!(!results.is_empty(), "nothing to emit");
    let rates = matches!(preset.kind(), PresetKind::Rates);
    let (u_title, d_title, y_label): (&str, &str, &str) = if rates {
        ("Uplink rate", "Downlink rate", "rate [bits/s/Hz]")
    } else {
        ("Uplink normalized strength", "Downlink normalized strength", "normalized strength")
    };
    let pick = |r: &SweepResult, uplink: bool| -> Vec<(f64, f64)> {
        r.rows
            .iter()
            .map(|row| {
                let v = match (rates, uplink) {
                    (true, true) => row.r_u,
                    (true, false) => row.r_d,
                    (false, true) => row.p_u_norm,
                    (false, false) => row.p_d_norm,
                };
                (row.phi_itu, v)
            })
            .collect()
    };
    let panel = |uplink: bool, title: &str| Panel {
        title: format!("{title} — {}", preset.name()),
        y_label: y_label.to_string(),
        series: results
            .iter()
            .enumerate()
            .map(|(i, r)| Series {
                label: r.scheme.label().to_string(),
                color: COLORS[i % COLORS.len()],
                points: pick(r, uplink),
            })
            .collect(),
    };
    render_svg(&[panel(true, u_title), panel(false, d_title)], 1, path)
}

/// Renders beam patterns as a four-panel SVG: one row per uplink-user
/// placement, impinging on the left, reflected on the right.
pub fn emit_beam_svg(beams: &[BeamSweep], path: &Path) -> Result<(), CliError> {
    assert!(!beams.is_empty(), "nothing to emit");
    let mut placements: Vec<f64> = Vec::new();
    for b in beams {
        if !placements.iter().any(|&p| p == b.phi_itu) {
            placements.push(b.phi_itu);
        }
    }
    let mut panels = Vec::new();
    for &phi_itu in &placements {
        for (impinging, side) in [(true, "impinging"), (false, "reflected")] {
            let mut series = Vec::new();
            for b in beams.iter().filter(|b| b.phi_itu == phi_itu) {
                let p = &b.patterns;
                for (uplink, link) in [(false, "downlink"), (true, "uplink")] {
                    let values = match (impinging, uplink) {
                        (true, false) => &p.p_d_imp,
                        (false, false) => &p.p_d_ref,
                        (true, true) => &p.p_u_imp,
                        (false, true) => &p.p_u_ref,
                    };
                    series.push(Series {
                        label: format!("{} {link}", b.scheme.label()),
                        color: COLORS[series.len() % COLORS.len()],
                        points: p.grid.iter().copied().zip(values.iter().copied()).collect(),
                    });
                }
            }
            panels.push(Panel {
                title: format!("{side} beams, uplink user at {phi_itu:.3} rad"),
                y_label: "normalized power".to_string(),
                series,
            });
        }
    }
    render_svg(&panels, 2, path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweep::{Scheme, SweepRow};

    fn tiny_results() -> Vec<SweepResult> {
        let rows: Vec<SweepRow> = (0..3)
            .map(|k| SweepRow {
                phi_itu: k as f64,
                p_u_norm: 0.5,
                p_d_norm: 0.25,
                r_u: 1.0,
                r_d: 2.0,
                residual: f64::NAN,
                sigma_trace: f64::NAN,
            })
            .collect();
        vec![SweepResult { scheme: Scheme::Reciprocal, design_with_ss: true, eval_with_ss: true, rows }]
    }

    #[test]
    fn csv_has_header_plus_one_line_per_row() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        emit_csv(&tiny_results(), &path).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], SWEEP_CSV_HEADER);
        assert!(lines[1].starts_with("reciprocal,true,true,"));
        assert!(lines[1].contains("NaN"));
    }

    #[test]
    fn csv_emission_is_byte_identical() {
        let dir = tempfile::tempdir().unwrap();
        let a = dir.path().join("a.csv");
        let b = dir.path().join("b.csv");
        emit_csv(&tiny_results(), &a).unwrap();
        emit_csv(&tiny_results(), &b).unwrap();
        assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    }

    #[test]
    fn sweep_svg_is_wellformed_with_two_panels() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.svg");
        emit_svg(&tiny_results(), Preset::RatesSs, &path).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("<svg"));
        assert!(text.trim_end().ends_with("</svg>"));
        assert_eq!(text.matches("<rect x=").count(), 2);
        assert!(text.contains("Uplink rate"));
    }
}
