//! Graphviz output for SA lattices.

use std::fmt::Write;

use crate::lattice::SaLattice;

/// One node per member, labelled by its sorted elements; edges are Hasse covers
/// drawn from the smaller member up.
pub fn lattice_to_dot(lattice: &SaLattice) -> String {
    let mut out = String::from("digraph sa_lattice {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, w) in lattice.members.iter().enumerate() {
        let label: Vec<String> = w.as_subset().iter().map(|x| x.to_string()).collect();
        writeln!(out, "  n{i} [label=\"{{{}}}\"];", label.join(",")).unwrap();
    }
    for &(a, b) in &lattice.hasse_edges {
        writeln!(out, "  n{a} -> n{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::enumerate_sa_bruteforce;
    use crate::zoo::instance;

    #[test]
    fn boolean_plane_diamond() {
        let inst = instance("boolean-free-2").unwrap();
        let lat = enumerate_sa_bruteforce(&inst.module).unwrap();
        let dot = lattice_to_dot(&lat);
        assert!(dot.contains("n0 [label=\"{0}\"];"));
        assert!(dot.contains("n3 [label=\"{0,1,2,3}\"];"));
        assert_eq!(dot.matches("->").count(), 4);
    }
}
