//! Plain-text mesh format:
//!
//! ```text
//! mesh <kind> <n_nodes> <n_elems>
//! <x> [<y> [<z>]]        one line per node
//! <n0> <n1> ...          one line per element
//! set <name> <count>
//! <i0> <i1> ...          node indices, any line breaks
//! ```

use super::{ElementKind, Mesh};
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Serializes a mesh. Coordinates are written in shortest round-trip form.
pub fn write_mesh(mesh: &Mesh) -> String {
    let dim = mesh.dim();
    let mut s = String::new();
    let _ = writeln!(s, "mesh {} {} {}", mesh.kind, mesh.n_nodes(), mesh.n_elements());
    for p in &mesh.nodes {
        let line: Vec<String> = p[..dim].iter().map(|v| format!("{v:?}")).collect();
        let _ = writeln!(s, "{}", line.join(" "));
    }
    for el in &mesh.elements {
        let line: Vec<String> = el.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(s, "{}", line.join(" "));
    }
    for (name, set) in &mesh.node_sets {
        let _ = writeln!(s, "set {} {}", name, set.len());
        let line: Vec<String> = set.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(s, "{}", line.join(" "));
    }
    s
}

fn perr<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, msg: msg.into() })
}

/// Parses the text format produced by [`write_mesh`].
pub fn read_mesh(text: &str) -> Result<Mesh> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let (ln, header) = lines.next().ok_or(Error::Parse { line: 0, msg: "empty input".into() })?;
    let h: Vec<&str> = header.split_whitespace().collect();
    if h.len() != 4 || h[0] != "mesh" {
        return perr(ln, "expected `mesh <kind> <n_nodes> <n_elems>`");
    }
    let kind: ElementKind = h[1].parse().or_else(|_| perr(ln, format!("unknown kind {}", h[1])))?;
    let nn: usize = h[2].parse().or_else(|_| perr(ln, "bad node count"))?;
    let ne: usize = h[3].parse().or_else(|_| perr(ln, "bad element count"))?;
    let dim = kind.dim();

    let mut nodes = Vec::with_capacity(nn);
    for _ in 0..nn {
        let (ln, l) = lines.next().ok_or(Error::Parse { line: ln, msg: "missing node lines".into() })?;
        let v: Vec<f64> = l
            .split_whitespace()
            .map(|t| t.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .or_else(|_| perr(ln, "bad coordinate"))?;
        if v.len() != dim {
            return perr(ln, format!("expected {dim} coordinates"));
        }
        let mut p = [0.0; 3];
        p[..dim].copy_from_slice(&v);
        nodes.push(p);
    }
    let npe = kind.nodes_per_element();
    let mut elements = Vec::with_capacity(ne);
    for _ in 0..ne {
        let (ln, l) = lines.next().ok_or(Error::Parse { line: ln, msg: "missing element lines".into() })?;
        let v: Vec<usize> = l
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .or_else(|_| perr(ln, "bad node index"))?;
        if v.len() != npe || v.iter().any(|&i| i >= nn) {
            return perr(ln, "bad element connectivity");
        }
        elements.push(v);
    }

    let mut node_sets = BTreeMap::new();
    let rest: Vec<(usize, &str)> = lines.collect();
    let mut tokens = rest.iter().flat_map(|(ln, l)| l.split_whitespace().map(move |t| (*ln, t))).peekable();
    while let Some((ln, t)) = tokens.next() {
        if t != "set" {
            return perr(ln, format!("expected `set`, found {t:?}"));
        }
        let name = tokens.next().ok_or(Error::Parse { line: ln, msg: "missing set name".into() })?.1;
        let count: usize = tokens
            .next()
            .and_then(|(_, c)| c.parse().ok())
            .ok_or(Error::Parse { line: ln, msg: "bad set count".into() })?;
        let mut ids = Vec::with_capacity(count);
        for _ in 0..count {
            let (l2, t) = tokens.next().ok_or(Error::Parse { line: ln, msg: "set truncated".into() })?;
            let id: usize = t.parse().or_else(|_| perr(l2, "bad set index"))?;
            if id >= nn {
                return perr(l2, "set index out of range");
            }
            ids.push(id);
        }
        node_sets.insert(name.to_string(), ids);
    }
    Ok(Mesh { kind, nodes, elements, node_sets })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{cylinder_tet_3d, structured_quad_2d, uniform_1d};

    #[test]
    fn round_trip() {
        for m in [uniform_1d(7, 0.3).unwrap(), structured_quad_2d(3, 4, 1.7).unwrap(), cylinder_tet_3d(0.1, 1.0, 2, 2).unwrap()] {
            let back = read_mesh(&write_mesh(&m)).unwrap();
            assert_eq!(back, m);
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "mesh line2 2 1\n0.0\nzero\n0 1\n";
        assert!(matches!(read_mesh(bad), Err(Error::Parse { line: 3, .. })));
        assert!(read_mesh("mesh hex8 1 0\n0 0 0\n").is_err());
        assert!(read_mesh("mesh line2 2 1\n0\n1\n0 5\n").is_err());
    }
}
