//! Figure-like SVG plots of rate regions: fixed 800x600 viewport, linear
//! axes auto-scaled to the region extents, one closed polygon per region,
//! deterministic styling and float formatting.

use mimoic_core::RateRegion2D;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 30.0;
const MARGIN_TOP: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 60.0;

const PALETTE: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

fn fmt(x: f64) -> String {
    format!("{x:.3}")
}

/// Round up to a pleasant axis bound.
fn nice_ceil(x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    let mag = 10f64.powf(x.log10().floor());
    for mult in [1.0, 2.0, 2.5, 5.0, 10.0] {
        if mag * mult >= x {
            return mag * mult;
        }
    }
    mag * 10.0
}

pub fn render(regions: &[(&str, &RateRegion2D)]) -> String {
    let max_x = regions
        .iter()
        .flat_map(|(_, r)| r.vertices.iter())
        .fold(0.0f64, |m, v| m.max(v.0));
    let max_y = regions
        .iter()
        .flat_map(|(_, r)| r.vertices.iter())
        .fold(0.0f64, |m, v| m.max(v.1));
    let span_x = nice_ceil(max_x * 1.05);
    let span_y = nice_ceil(max_y * 1.05);

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let to_px = |x: f64, y: f64| {
        (
            MARGIN_LEFT + x / span_x * plot_w,
            HEIGHT - MARGIN_BOTTOM - y / span_y * plot_h,
        )
    };

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    // Axes.
    let (ox, oy) = to_px(0.0, 0.0);
    let (xe, _) = to_px(span_x, 0.0);
    let (_, ye) = to_px(0.0, span_y);
    out.push_str(&format!(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        fmt(ox),
        fmt(oy),
        fmt(xe),
        fmt(oy)
    ));
    out.push_str(&format!(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        fmt(ox),
        fmt(oy),
        fmt(ox),
        fmt(ye)
    ));
    for i in 0..=5 {
        let xv = span_x * i as f64 / 5.0;
        let yv = span_y * i as f64 / 5.0;
        let (px, _) = to_px(xv, 0.0);
        let (_, py) = to_px(0.0, yv);
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
            fmt(px),
            fmt(oy),
            fmt(px),
            fmt(oy + 5.0)
        ));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n",
            fmt(px),
            fmt(oy + 20.0),
            fmt(xv)
        ));
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
            fmt(ox - 5.0),
            fmt(py),
            fmt(ox),
            fmt(py)
        ));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"end\">{}</text>\n",
            fmt(ox - 8.0),
            fmt(py + 4.0),
            fmt(yv)
        ));
    }
    out.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-size=\"14\" text-anchor=\"middle\">R1 (bits/use)</text>\n",
        fmt(MARGIN_LEFT + plot_w / 2.0),
        fmt(HEIGHT - 15.0)
    ));
    out.push_str(&format!(
        "<text x=\"18\" y=\"{}\" font-size=\"14\" text-anchor=\"middle\" \
         transform=\"rotate(-90 18 {})\">R2 (bits/use)</text>\n",
        fmt(MARGIN_TOP + plot_h / 2.0),
        fmt(MARGIN_TOP + plot_h / 2.0)
    ));

    for (idx, (name, region)) in regions.iter().enumerate() {
        let color = PALETTE[idx % PALETTE.len()];
        let mut path = String::new();
        for (k, &(x, y)) in region.vertices.iter().enumerate() {
            let (px, py) = to_px(x, y);
            path.push_str(if k == 0 { "M" } else { "L" });
            path.push_str(&format!("{},{} ", fmt(px), fmt(py)));
        }
        path.push('Z');
        out.push_str(&format!(
            "<path d=\"{path}\" fill=\"{color}\" fill-opacity=\"0.15\" stroke=\"{color}\" \
             stroke-width=\"2\"/>\n"
        ));
        let ly = MARGIN_TOP + 18.0 * idx as f64 + 12.0;
        out.push_str(&format!(
            "<rect x=\"{}\" y=\"{}\" width=\"12\" height=\"12\" fill=\"{color}\"/>\n",
            fmt(MARGIN_LEFT + 10.0),
            fmt(ly - 10.0)
        ));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-size=\"13\">{name}</text>\n",
            fmt(MARGIN_LEFT + 28.0),
            fmt(ly)
        ));
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use mimoic_core::region::{region_from_constraints, RateConstraint};

    #[test]
    fn renders_one_polygon_per_region() {
        let a =
            region_from_constraints(&[RateConstraint::r1(2.0), RateConstraint::r2(1.0)]).unwrap();
        let b = region_from_constraints(&[
            RateConstraint::r1(1.5),
            RateConstraint::r2(1.5),
            RateConstraint::sum(2.0),
        ])
        .unwrap();
        let svg = render(&[("outer", &a), ("inner", &b)]);
        assert_eq!(svg.matches("<path").count(), 2);
        assert!(svg.contains("R1 (bits/use)"));
        assert_eq!(render(&[("outer", &a), ("inner", &b)]), svg);
    }
}
