//! Minimal self-contained SVG line plots.
//!
//! Hand-rolled on purpose: the crate only ever needs polylines over linear or
//! log10 axes, and emitting the markup directly keeps the output byte-stable.

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 520.0;
const MARGIN_LEFT: f64 = 78.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 44.0;
const MARGIN_BOTTOM: f64 = 58.0;

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

pub(crate) struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

pub(crate) struct LinePlot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    /// Plot y on a log10 axis; values are clamped to a tiny positive floor.
    pub log_y: bool,
    pub series: Vec<Series>,
}

fn tick_label(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let a = v.abs();
    if !(1e-3..1e4).contains(&a) {
        return format!("{v:.1e}");
    }
    let s = format!("{v:.3}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

impl LinePlot {
    pub fn render(&self) -> String {
        let y_of = |v: f64| if self.log_y { v.max(1e-300).log10() } else { v };

        let mut x_min = f64::INFINITY;
        let mut x_max = f64::NEG_INFINITY;
        let mut y_min = f64::INFINITY;
        let mut y_max = f64::NEG_INFINITY;
        for s in &self.series {
            for &(x, y) in &s.points {
                x_min = x_min.min(x);
                x_max = x_max.max(x);
                y_min = y_min.min(y_of(y));
                y_max = y_max.max(y_of(y));
            }
        }
        if !x_min.is_finite() {
            x_min = 0.0;
            x_max = 1.0;
            y_min = 0.0;
            y_max = 1.0;
        }
        if x_max == x_min {
            x_max += 1.0;
        }
        if y_max == y_min {
            y_max += 1.0;
            y_min -= 1.0;
        }
        let y_pad = 0.05 * (y_max - y_min);
        y_min -= y_pad;
        y_max += y_pad;

        let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
        let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
        let px = |x: f64| MARGIN_LEFT + (x - x_min) / (x_max - x_min) * plot_w;
        let py = |y: f64| MARGIN_TOP + (y_max - y) / (y_max - y_min) * plot_h;

        let mut svg = String::new();
        svg.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
             viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\">\n"
        ));
        svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">{}</text>\n",
            WIDTH / 2.0,
            self.title
        ));

        // Axes.
        let (x0, y0) = (MARGIN_LEFT, MARGIN_TOP + plot_h);
        svg.push_str(&format!(
            "<line x1=\"{x0:.1}\" y1=\"{y0:.1}\" x2=\"{:.1}\" y2=\"{y0:.1}\" stroke=\"black\"/>\n",
            MARGIN_LEFT + plot_w
        ));
        svg.push_str(&format!(
            "<line x1=\"{x0:.1}\" y1=\"{y0:.1}\" x2=\"{x0:.1}\" y2=\"{MARGIN_TOP:.1}\" stroke=\"black\"/>\n"
        ));

        // X ticks.
        for i in 0..5 {
            let x = x_min + (x_max - x_min) * i as f64 / 4.0;
            let sx = px(x);
            svg.push_str(&format!(
                "<line x1=\"{sx:.1}\" y1=\"{y0:.1}\" x2=\"{sx:.1}\" y2=\"{:.1}\" stroke=\"black\"/>\n",
                y0 + 5.0
            ));
            svg.push_str(&format!(
                "<text x=\"{sx:.1}\" y=\"{:.1}\" text-anchor=\"middle\" font-size=\"12\">{}</text>\n",
                y0 + 20.0,
                tick_label(x)
            ));
        }
        // Y ticks: integer decades on a log axis, evenly spaced otherwise.
        if self.log_y {
            let lo = y_min.floor() as i64;
            let hi = y_max.ceil() as i64;
            let step = (((hi - lo) as f64 / 8.0).ceil() as i64).max(1);
            let mut e = lo;
            while e <= hi {
                let sy = py(e as f64);
                if sy >= MARGIN_TOP - 1.0 && sy <= y0 + 1.0 {
                    svg.push_str(&format!(
                        "<line x1=\"{:.1}\" y1=\"{sy:.1}\" x2=\"{x0:.1}\" y2=\"{sy:.1}\" stroke=\"black\"/>\n",
                        x0 - 5.0
                    ));
                    svg.push_str(&format!(
                        "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"end\" font-size=\"12\">1e{e}</text>\n",
                        x0 - 8.0,
                        sy + 4.0
                    ));
                }
                e += step;
            }
        } else {
            for i in 0..5 {
                let y = y_min + (y_max - y_min) * i as f64 / 4.0;
                let sy = py(y);
                svg.push_str(&format!(
                    "<line x1=\"{:.1}\" y1=\"{sy:.1}\" x2=\"{x0:.1}\" y2=\"{sy:.1}\" stroke=\"black\"/>\n",
                    x0 - 5.0
                ));
                svg.push_str(&format!(
                    "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"end\" font-size=\"12\">{}</text>\n",
                    x0 - 8.0,
                    sy + 4.0,
                    tick_label(y)
                ));
            }
        }

        // Axis labels.
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\" font-size=\"13\">{}</text>\n",
            MARGIN_LEFT + plot_w / 2.0,
            HEIGHT - 14.0,
            self.x_label
        ));
        svg.push_str(&format!(
            "<text x=\"20\" y=\"{:.1}\" text-anchor=\"middle\" font-size=\"13\" \
             transform=\"rotate(-90 20 {:.1})\">{}</text>\n",
            MARGIN_TOP + plot_h / 2.0,
            MARGIN_TOP + plot_h / 2.0,
            self.y_label
        ));

        // Series.
        for (idx, s) in self.series.iter().enumerate() {
            let color = PALETTE[idx % PALETTE.len()];
            let mut pts = String::new();
            for &(x, y) in &s.points {
                pts.push_str(&format!("{:.2},{:.2} ", px(x), py(y_of(y))));
            }
            svg.push_str(&format!(
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>\n",
                pts.trim_end()
            ));
        }

        // Legend, top right of the plot area.
        let lx = MARGIN_LEFT + plot_w - 170.0;
        for (idx, s) in self.series.iter().enumerate() {
            let color = PALETTE[idx % PALETTE.len()];
            let ly = MARGIN_TOP + 14.0 + 18.0 * idx as f64;
            svg.push_str(&format!(
                "<line x1=\"{lx:.1}\" y1=\"{ly:.1}\" x2=\"{:.1}\" y2=\"{ly:.1}\" \
                 stroke=\"{color}\" stroke-width=\"2\"/>\n",
                lx + 24.0
            ));
            svg.push_str(&format!(
                "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"12\">{}</text>\n",
                lx + 30.0,
                ly + 4.0,
                s.label
            ));
        }

        svg.push_str("</svg>\n");
        svg
    }
}
