//! Text and SVG pictures of a Newton diagram.

use std::fmt::Write;

use crate::bivar::{BivarPoly, Face};
use crate::newton::NewtonDiagram;

/// Character grid with `y` growing upwards: `O` vertex, `*` other support
/// point, `+` lattice point on an edge, `.` anything else.
pub fn ascii_diagram(f: &BivarPoly, d: &NewtonDiagram) -> String {
    let w = f.degree_x().max(d.last().0) + 1;
    let h = f.degree_y().max(d.first().1) + 1;
    let on_edge = |p| d.edges.iter().any(|e| e.face().contains(p));
    let mut out = String::new();
    for j in (0..h).rev() {
        let _ = write!(out, "{j:>3} |");
        for i in 0..w {
            let c = if d.vertices.contains(&(i, j)) {
                'O'
            } else if f.has_term(i, j) {
                '*'
            } else if on_edge((i, j)) {
                '+'
            } else {
                '.'
            };
            let _ = write!(out, " {c}");
        }
        out.push('\n');
    }
    let _ = writeln!(out, "    +{}", "--".repeat(w as usize));
    let _ = write!(out, "     ");
    for i in 0..w {
        let _ = write!(out, "{:>2}", i % 100);
    }
    out.push('\n');
    out
}

/// Vertex and edge listing printed above the grid.
pub fn describe_diagram(d: &NewtonDiagram) -> String {
    let mut out = String::new();
    let vs: Vec<String> = d.vertices.iter().map(|v| format!("({},{})", v.0, v.1)).collect();
    let _ = writeln!(out, "vertices: {}", vs.join(" "));
    for e in &d.edges {
        let _ = writeln!(
            out,
            "edge ({},{})-({},{}): weights (m0,n0)=({},{}) length {} degree {}",
            e.start.0, e.start.1, e.end.0, e.end.1, e.m0, e.n0, e.length, e.degree
        );
    }
    let _ = writeln!(out, "convenient: {}", d.convenient);
    out
}

/// SVG 1.1 plot: support as dots, the diagram as thick segments, the region
/// below it shaded, and the cone over its part in `x, y >= 1` hatched.
pub fn svg_diagram(f: &BivarPoly, d: &NewtonDiagram) -> String {
    let w = f.degree_x().max(d.last().0) + 1;
    let h = f.degree_y().max(d.first().1) + 1;
    let unit = 40.0;
    let margin = 30.0;
    let width = w as f64 * unit + 2.0 * margin;
    let height = h as f64 * unit + 2.0 * margin;
    let px = |x: f64| margin + x * unit;
    let py = |y: f64| height - margin - y * unit;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        s,
        r##"<defs><pattern id="hatch" width="6" height="6" patternUnits="userSpaceOnUse" patternTransform="rotate(45)"><line x1="0" y1="0" x2="0" y2="6" stroke="#555" stroke-width="1.5"/></pattern></defs>"##
    );
    // axes
    let _ = writeln!(
        s,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/><line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
        px(0.0),
        py(0.0),
        px(w as f64),
        py(0.0),
        px(0.0),
        py(0.0),
        px(0.0),
        py(h as f64)
    );
    // region under the diagram, closed along the axes
    if d.convenient {
        let mut pts = vec![format!("{},{}", px(0.0), py(0.0))];
        pts.extend(d.vertices.iter().rev().map(|v| format!("{},{}", px(v.0 as f64), py(v.1 as f64))));
        let _ = writeln!(s, r##"<polygon points="{}" fill="#cde" stroke="none"/>"##, pts.join(" "));
    }
    let clipped = d.clip_to_positive();
    if clipped.len() >= 2 {
        let to_f = |r: num_rational::Ratio<i64>| *r.numer() as f64 / *r.denom() as f64;
        let mut pts = vec![format!("{},{}", px(0.0), py(0.0))];
        pts.extend(clipped.iter().map(|(x, y)| format!("{},{}", px(to_f(*x)), py(to_f(*y)))));
        let _ = writeln!(s, r#"<polygon points="{}" fill="url(#hatch)" stroke="none"/>"#, pts.join(" "));
    }
    for e in &d.edges {
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="4"/>"#,
            px(e.start.0 as f64),
            py(e.start.1 as f64),
            px(e.end.0 as f64),
            py(e.end.1 as f64)
        );
    }
    for ((i, j), _) in f.terms() {
        let on_diagram = d.vertices.contains(&(i, j)) || d.edges.iter().any(|e| Face::Segment(e.start, e.end).contains((i, j)));
        let fill = if on_diagram { "black" } else { "gray" };
        let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="4" fill="{fill}"/>"#, px(i as f64), py(j as f64));
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldTower;

    #[test]
    fn grid_marks_vertices() {
        let t = FieldTower::prime(3).unwrap();
        let f = BivarPoly::from_i64s(&t, &[((3, 0), 1), ((1, 1), 1), ((0, 3), 1)]);
        let d = NewtonDiagram::of(&f).unwrap();
        let g = ascii_diagram(&f, &d);
        let rows: Vec<&str> = g.lines().collect();
        assert_eq!(rows[0], "  3 | O . . .");
        assert_eq!(rows[2], "  1 | . O . .");
        assert_eq!(rows[3], "  0 | . . . O");
        let svg = svg_diagram(&f, &d);
        assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<circle").count(), 3);
    }
}
