//! Graphviz export of reaction graphs.

use std::fmt::Write;

use crn_realize_core::ReactionNetwork;

/// DOT digraph with one node per complex, isolated ones included. Edge
/// labels carry the rate when `show_rates` is set and the rate is not 1.
pub fn export_dot(net: &ReactionNetwork, show_rates: bool) -> String {
    let mut out = String::from("digraph crn {\n    rankdir=LR;\n");
    for i in 0..net.complex_count() {
        let _ = writeln!(out, "    c{} [label=\"{}\"];", i + 1, escape(&net.complex_label(i)));
    }
    for (s, t, rate) in net.kirchhoff().reactions() {
        let label = rate_label(rate);
        if show_rates && label != "1" {
            let _ = writeln!(out, "    c{} -> c{} [label=\"{label}\"];", s + 1, t + 1);
        } else {
            let _ = writeln!(out, "    c{} -> c{};", s + 1, t + 1);
        }
    }
    out.push_str("}\n");
    out
}

/// Rate rounded to six decimals, trailing zeros dropped.
fn rate_label(rate: f64) -> String {
    let text = format!("{rate:.6}");
    let text = text.trim_end_matches('0').trim_end_matches('.');
    text.to_string()
}

fn escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crn_realize_core::{ComplexVector, KirchhoffMatrix, StoichMatrix};

    fn net(rates: &[(usize, usize, f64)]) -> ReactionNetwork {
        let y = StoichMatrix::new(
            2,
            vec![
                ComplexVector::new(vec![1, 2]),
                ComplexVector::new(vec![0, 0]),
                ComplexVector::new(vec![1, 0]),
            ],
        )
        .unwrap();
        let a = KirchhoffMatrix::from_rates(3, rates.iter().copied()).unwrap();
        ReactionNetwork::with_default_names(y, a).unwrap()
    }

    #[test]
    fn labels_and_rates() {
        let dot = export_dot(&net(&[(0, 1, 1.0), (1, 2, 0.5)]), true);
        assert!(dot.contains("c1 [label=\"X1+2X2\"];"));
        assert!(dot.contains("c2 [label=\"0\"];"));
        assert!(dot.contains("c1 -> c2;"));
        assert!(dot.contains("c2 -> c3 [label=\"0.5\"];"));
        assert_eq!(dot.matches("->").count(), 2);
        assert!(dot.starts_with("digraph crn {") && dot.trim_end().ends_with('}'));
    }

    #[test]
    fn empty_network_has_nodes_only() {
        let dot = export_dot(&net(&[]), true);
        assert_eq!(dot.matches("[label=").count(), 3);
        assert!(!dot.contains("->"));
    }

    #[test]
    fn rate_labels_are_rounded() {
        assert_eq!(rate_label(1.7999999999999996), "1.8");
        assert_eq!(rate_label(2.0), "2");
        assert_eq!(rate_label(0.43333333), "0.433333");
        let dot = export_dot(&net(&[(0, 1, 1.0000000000000002)]), true);
        assert!(dot.contains("c1 -> c2;"));
    }

    #[test]
    fn rates_hidden_when_disabled() {
        let dot = export_dot(&net(&[(1, 2, 0.5)]), false);
        assert!(dot.contains("c2 -> c3;"));
    }
}
