use std::fmt::Write as _;

use crate::compactify::RoundIdealFrame;
use crate::lattice::{Basis, PcdLattice};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Hasse diagram, bottom to top, nodes in element order; elements of
/// `highlight` are filled.
pub fn export_dot(name: &str, l: &PcdLattice, highlight: Option<&Basis>) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=ellipse];").unwrap();
    for x in l.elements() {
        let fill = highlight.is_some_and(|b| b.contains(x));
        let style = if fill { ", style=filled, fillcolor=lightblue" } else { "" };
        writeln!(out, "  n{x} [label={}{style}];", quote(l.name(x))).unwrap();
    }
    for (x, y) in l.covers() {
        writeln!(out, "  n{x} -> n{y};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// The frame of round ideals with the basis `B_d` highlighted.
pub fn export_frame_dot(name: &str, fr: &RoundIdealFrame) -> String {
    export_dot(name, fr.lattice(), Some(fr.basis()))
}
