//! Graphviz export.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::automaton::Nfa;

/// DOT source for `m`. Parallel edges are merged into one labeled edge;
/// output depends only on the automaton.
pub fn to_dot(m: &Nfa, name: &str) -> String {
    let mut out = String::new();
    let ident: String = name.chars().filter(|c| !matches!(c, '"' | '\\')).collect();
    let _ = writeln!(out, "digraph \"{}\" {{", if ident.is_empty() { "nfa" } else { &ident });
    out.push_str("  rankdir=LR;\n");
    out.push_str("  start [shape=point];\n");
    for q in 0..m.state_count() {
        let shape = if q == m.accept() { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  q{q} [shape={shape}, label=\"q{q}\"];");
    }
    out.push_str("  start -> q0;\n");
    let mut labels: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    for t in m.transitions() {
        labels.entry((t.from, t.to)).or_default().push(t.symbol.to_string());
    }
    for ((from, to), symbols) in labels {
        let _ = writeln!(out, "  q{from} -> q{to} [label=\"{}\"];", symbols.join(","));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::fixture;

    #[test]
    fn fig8_dot() {
        let dot = to_dot(&fixture("fig8").unwrap(), "fig8");
        assert_eq!(
            dot,
            "digraph \"fig8\" {\n  rankdir=LR;\n  start [shape=point];\n  q0 [shape=doublecircle, label=\"q0\"];\n  q1 [shape=circle, label=\"q1\"];\n  start -> q0;\n  q0 -> q0 [label=\"0\"];\n  q0 -> q1 [label=\"0\"];\n  q1 -> q0 [label=\"0\"];\n  q1 -> q1 [label=\"1\"];\n}\n"
        );
        assert!(!dot.contains('\r'));
    }
}
