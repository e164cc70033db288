//! Graphviz rendering of a ball in the Cayley tree.
//!
//! Attribute conventions, kept stable so golden files stay byte-identical:
//!
//! * nodes are `n0, n1, …` in shortlex order of their words, labelled by the
//!   word (`ε` for the identity);
//! * vertices of `A_k(τ)` carry `style=filled, fillcolor="#9ecae1"`;
//! * each tree edge joins a word to the word with its last letter removed,
//!   labelled by that letter;
//! * edges along the ray carry `weight=10, penwidth=3`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use sigma_tree::horoball::{in_horoball, HoroballQuery};
use sigma_tree::Word;

pub const HOROBALL_FILL: &str = "#9ecae1";

/// `ball` must be closed under taking prefixes; the radius-r ball is.
pub fn render_dot(ball: &[Word], q: &HoroballQuery, verdict: Option<&str>) -> String {
    let mut words: Vec<&Word> = ball.iter().collect();
    words.sort();
    words.dedup();
    let ids: BTreeMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (*w, i)).collect();

    let mut out = String::from("graph ball {\n");
    let mut title = escape(&format!("A_{}({})", q.k, q.ray));
    if let Some(v) = verdict {
        title = format!("{title}\\n{}", escape(v));
    }
    let _ = writeln!(out, "  graph [label=\"{title}\"];");
    out.push_str("  node [shape=circle, fontsize=10];\n");
    for (i, w) in words.iter().enumerate() {
        let label = if w.is_identity() {
            "ε".to_string()
        } else {
            w.to_string()
        };
        if in_horoball(w, q) {
            let _ = writeln!(
                out,
                "  n{i} [label=\"{}\", style=filled, fillcolor=\"{HOROBALL_FILL}\"];",
                escape(&label)
            );
        } else {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", escape(&label));
        }
    }
    for (i, w) in words.iter().enumerate() {
        if w.is_identity() {
            continue;
        }
        let parent = w.prefix(w.len() - 1);
        let Some(p) = ids.get(&parent) else {
            continue;
        };
        let last = w.last().unwrap();
        let on_ray = q.ray.lcp(w) == w.len();
        let style = if on_ray {
            ", weight=10, penwidth=3"
        } else {
            ""
        };
        let _ = writeln!(out, "  n{p} -- n{i} [label=\"{last}\"{style}];");
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
