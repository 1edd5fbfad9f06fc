//! Byte-deterministic DOT and CSV exports; vertices appear in
//! lexicographic order and edges as `(i, j)` with `i < j`.

use std::io::Write;

use super::GraphSnapshot;
use crate::error::Result;

pub fn write_dot<W: Write>(g: &GraphSnapshot, mut w: W) -> Result<()> {
    writeln!(w, "graph phi_n{} {{", g.modulus().exponent())?;
    for v in g.vertices() {
        writeln!(w, "  \"{v}\";")?;
    }
    for i in 0..g.len() {
        for j in g.neighbors(i).filter(|&j| j > i) {
            writeln!(w, "  \"{}\" -- \"{}\";", g.vertex(i), g.vertex(j))?;
        }
    }
    writeln!(w, "}}")?;
    Ok(())
}

/// Edge list `a1,a2,a3,a4,b1,b2,b3,b4` after a comment line with the sizes.
pub fn write_edge_csv<W: Write>(g: &GraphSnapshot, mut w: W) -> Result<()> {
    writeln!(
        w,
        "# n={} vertices={} edges={}",
        g.modulus().exponent(),
        g.len(),
        g.edge_count()
    )?;
    writeln!(w, "a1,a2,a3,a4,b1,b2,b3,b4")?;
    for i in 0..g.len() {
        for j in g.neighbors(i).filter(|&j| j > i) {
            writeln!(w, "{},{}", g.vertex(i), g.vertex(j))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::ring::Modulus;

    #[test]
    fn dot_shape() {
        let g = build_graph(Modulus::new(1).unwrap()).unwrap();
        let mut buf = Vec::new();
        write_dot(&g, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("graph phi_n1 {\n  \"0,0,0,1\";\n"));
        assert_eq!(
            text.lines().filter(|l| l.ends_with("\";") && !l.contains("--")).count(),
            14
        );
        assert_eq!(text.lines().filter(|l| l.contains(" -- ")).count(), g.edge_count());
        assert!(text.ends_with("}\n"));
    }

    #[test]
    fn csv_shape() {
        let g = build_graph(Modulus::new(2).unwrap()).unwrap();
        let mut buf = Vec::new();
        write_edge_csv(&g, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert!(lines.next().unwrap().starts_with("# n=2 vertices=253 edges="));
        assert_eq!(lines.next(), Some("a1,a2,a3,a4,b1,b2,b3,b4"));
        assert_eq!(lines.count(), g.edge_count());
    }
}
