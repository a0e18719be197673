//! Minimal line charts: one panel per problem, one polyline per series.

use std::fmt::Write;

const PANEL_W: f64 = 420.0;
const PANEL_H: f64 = 300.0;
const MARGIN_L: f64 = 64.0;
const MARGIN_R: f64 = 16.0;
const MARGIN_T: f64 = 48.0;
const MARGIN_B: f64 = 88.0;
const COLORS: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

#[derive(Clone, Debug)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Clone, Debug)]
pub struct Panel {
    pub title: String,
    pub series: Vec<Series>,
}

#[derive(Clone, Debug)]
pub struct Chart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub log_y: bool,
    pub panels: Vec<Panel>,
}

fn nice_ticks(lo: f64, hi: f64) -> Vec<f64> {
    let span = (hi - lo).max(1e-12);
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|s| span / s <= 6.0)
        .unwrap_or(mag * 10.0);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

fn fmt_tick(v: f64) -> String {
    if v != 0.0 && (v.abs() >= 1e5 || v.abs() < 1e-3) {
        format!("{v:.0e}")
    } else {
        let s = format!("{v:.4}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

impl Chart {
    pub fn render(&self) -> String {
        let tr = |y: f64| if self.log_y { y.log10() } else { y };
        let usable = |y: f64| y.is_finite() && (!self.log_y || y > 0.0);
        let width = PANEL_W * self.panels.len().max(1) as f64;
        let height = PANEL_H;
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">"#
        );
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{}" y="18" text-anchor="middle" font-size="14">{}</text>"#,
            width / 2.0,
            escape(&self.title)
        );
        for (k, panel) in self.panels.iter().enumerate() {
            let ox = k as f64 * PANEL_W;
            let (x0, x1) = (ox + MARGIN_L, ox + PANEL_W - MARGIN_R);
            let (y0, y1) = (PANEL_H - MARGIN_B, MARGIN_T);
            let pts: Vec<(f64, f64)> = panel
                .series
                .iter()
                .flat_map(|se| se.points.iter().copied())
                .filter(|&(_, y)| usable(y))
                .map(|(x, y)| (x, tr(y)))
                .collect();
            let (mut xmin, mut xmax, mut ymin, mut ymax) = pts.iter().fold(
                (
                    f64::INFINITY,
                    f64::NEG_INFINITY,
                    f64::INFINITY,
                    f64::NEG_INFINITY,
                ),
                |(a, b, c, d), &(x, y)| (a.min(x), b.max(x), c.min(y), d.max(y)),
            );
            if pts.is_empty() {
                (xmin, xmax, ymin, ymax) = (0.0, 1.0, 0.0, 1.0);
            }
            if xmax == xmin {
                xmax = xmin + 1.0;
            }
            if ymax == ymin {
                ymax = ymin + 1.0;
            }
            let pad = (ymax - ymin) * 0.05;
            let (ymin, ymax) = (ymin - pad, ymax + pad);
            let px = |x: f64| x0 + (x - xmin) / (xmax - xmin) * (x1 - x0);
            let py = |y: f64| y0 - (y - ymin) / (ymax - ymin) * (y0 - y1);

            let _ = writeln!(
                s,
                r#"<text x="{}" y="{}" text-anchor="middle" font-size="12">{}</text>"#,
                (x0 + x1) / 2.0,
                MARGIN_T - 10.0,
                escape(&panel.title)
            );
            let _ = writeln!(
                s,
                r#"<rect x="{x0}" y="{y1}" width="{}" height="{}" fill="none" stroke="black"/>"#,
                x1 - x0,
                y0 - y1
            );
            for t in nice_ticks(xmin, xmax) {
                let x = px(t);
                let _ = writeln!(
                    s,
                    r#"<line x1="{x:.2}" y1="{y0}" x2="{x:.2}" y2="{}" stroke="black"/>"#,
                    y0 + 4.0
                );
                let _ = writeln!(
                    s,
                    r#"<text x="{x:.2}" y="{}" text-anchor="middle">{}</text>"#,
                    y0 + 16.0,
                    fmt_tick(t)
                );
            }
            let yticks: Vec<f64> = if self.log_y {
                (ymin.ceil() as i64..=ymax.floor() as i64)
                    .map(|e| e as f64)
                    .collect()
            } else {
                nice_ticks(ymin, ymax)
            };
            for t in yticks {
                let y = py(t);
                let label = if self.log_y {
                    fmt_tick(10f64.powf(t))
                } else {
                    fmt_tick(t)
                };
                let _ = writeln!(
                    s,
                    r##"<line x1="{x0}" y1="{y:.2}" x2="{x1}" y2="{y:.2}" stroke="#dddddd"/>"##
                );
                let _ = writeln!(
                    s,
                    r#"<text x="{}" y="{:.2}" text-anchor="end">{label}</text>"#,
                    x0 - 6.0,
                    y + 4.0
                );
            }
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
                (x0 + x1) / 2.0,
                y0 + 32.0,
                escape(&self.x_label)
            );
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{}" text-anchor="middle" transform="rotate(-90 {} {})">{}</text>"#,
                ox + 14.0,
                (y0 + y1) / 2.0,
                ox + 14.0,
                (y0 + y1) / 2.0,
                escape(&self.y_label)
            );
            for (j, se) in panel.series.iter().enumerate() {
                let color = COLORS[j % COLORS.len()];
                let path: Vec<String> = se
                    .points
                    .iter()
                    .filter(|&&(_, y)| usable(y))
                    .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(tr(y))))
                    .collect();
                let _ = writeln!(
                    s,
                    r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
                    path.join(" ")
                );
                let lx = x0 + (j % 4) as f64 * (x1 - x0) / 4.0;
                let ly = y0 + 50.0 + (j / 4) as f64 * 14.0;
                let _ = writeln!(
                    s,
                    r#"<line x1="{lx:.2}" y1="{ly}" x2="{:.2}" y2="{ly}" stroke="{color}" stroke-width="2"/><text x="{:.2}" y="{}">{}</text>"#,
                    lx + 14.0,
                    lx + 18.0,
                    ly + 4.0,
                    escape(&se.label)
                );
            }
        }
        s.push_str("</svg>\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chart(log_y: bool) -> Chart {
        Chart {
            title: "EFHT <test>".into(),
            x_label: "n".into(),
            y_label: "value".into(),
            log_y,
            panels: vec![
                Panel {
                    title: "a".into(),
                    series: vec![Series {
                        label: "p=0".into(),
                        points: vec![(1.0, 1.0), (2.0, 100.0)],
                    }],
                },
                Panel {
                    title: "b".into(),
                    series: vec![],
                },
            ],
        }
    }

    #[test]
    fn renders_panels_and_escapes() {
        let s = chart(true).render();
        assert!(s.starts_with("<svg") && s.ends_with("</svg>\n"));
        assert_eq!(s.matches("<polyline").count(), 1);
        assert!(s.contains("EFHT &lt;test&gt;"));
        assert!(s.contains(">100<"));
        assert!(!chart(false).render().contains("NaN"));
    }

    #[test]
    fn ticks() {
        assert_eq!(nice_ticks(0.0, 10.0), vec![0.0, 2.0, 4.0, 6.0, 8.0, 10.0]);
        assert_eq!(fmt_tick(0.5), "0.5");
        assert_eq!(fmt_tick(1e6), "1e6");
    }
}
