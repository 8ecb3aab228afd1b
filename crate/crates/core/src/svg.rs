//! SVG pictures of packings. Display only; coordinates are rounded.

use std::fmt::Write as _;
use std::path::Path;

use crate::geometry::{Family, Point};
use crate::io::{IoError, PackingFile};

/// Rounds to 12 significant digits and prints the shortest form.
pub fn display_number(v: f64) -> String {
    let rounded: f64 = format!("{v:.11e}").parse().expect("valid float");
    if rounded == 0.0 {
        "0".into()
    } else {
        rounded.to_string()
    }
}

/// SVG user coordinates: `x` unchanged, `y` negated so the picture is
/// upright.
fn svg_point(p: &Point) -> String {
    let (x, y) = p.to_f64();
    format!("{},{}", display_number(x), display_number(-y))
}

fn points_attr<'a>(pts: impl IntoIterator<Item = &'a Point>) -> String {
    pts.into_iter().map(svg_point).collect::<Vec<_>>().join(" ")
}

pub fn render_svg(packing: &PackingFile) -> String {
    let container = packing.certificate.container.vertices();
    let (mut min_x, mut max_x, mut min_y, mut max_y) = (0.0f64, 1.0f64, 0.0f64, 1.0f64);
    for v in &container {
        let (x, y) = v.to_f64();
        min_x = min_x.min(x);
        max_x = max_x.max(x);
        min_y = min_y.min(y);
        max_y = max_y.max(y);
    }
    let pad = 0.08 * (max_x - min_x).max(max_y - min_y);
    let (w, h) = (max_x - min_x + 2.0 * pad, max_y - min_y + 2.0 * pad);
    let font = 0.025 * w.max(h);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="640" height="{}">"#,
        display_number(min_x - pad),
        display_number(-max_y - pad),
        display_number(w),
        display_number(h),
        (640.0 * h / w).round()
    );
    let _ = writeln!(
        out,
        r#"  <polygon class="container" points="{}" fill="none" stroke="black" stroke-width="{}"/>"#,
        points_attr(&container),
        display_number(font / 6.0)
    );
    for p in &packing.placements {
        let fill = match p.kind.family {
            Family::IsoRight => "#9ecae1",
            Family::Equilateral => "#fdd0a2",
        };
        let _ = writeln!(
            out,
            r#"  <polygon class="triangle" data-index="{}" points="{}" fill="{fill}" stroke="dimgray" stroke-width="{}"/>"#,
            p.index,
            points_attr(&p.vertices),
            display_number(font / 12.0)
        );
        let (cx, cy) = p.vertices.iter().fold((0.0, 0.0), |(sx, sy), v| {
            let (x, y) = v.to_f64();
            (sx + x / 3.0, sy + y / 3.0)
        });
        let _ = writeln!(
            out,
            r#"  <text x="{}" y="{}" font-size="{}" text-anchor="middle" dominant-baseline="middle">{}</text>"#,
            display_number(cx),
            display_number(-cy),
            display_number(font * 0.8),
            p.index
        );
    }
    let _ = writeln!(
        out,
        r#"  <text class="case" x="{}" y="{}" font-size="{}">{} {}</text>"#,
        display_number(min_x),
        display_number(-max_y - pad / 3.0),
        display_number(font),
        packing.instance.family.name(),
        packing.trace.case_path
    );
    out.push_str("</svg>\n");
    out
}

pub fn write_svg(packing: &PackingFile, path: &Path) -> Result<(), IoError> {
    std::fs::write(path, render_svg(packing))
        .map_err(|source| IoError::Write { path: path.display().to_string(), source })
}
