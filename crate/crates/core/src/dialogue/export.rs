use alloc::format;
use alloc::string::String;

use super::session::{NodeId, Session};
use crate::dung::Label;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn color(label: Label) -> &'static str {
    match label {
        Label::In => "palegreen",
        Label::Out => "lightcoral",
        Label::Undec => "lightgoldenrod",
    }
}

/// Graphviz rendering of the session framework. Arguments are boxes,
/// questions ellipses; fill colours show the grounded labels.
pub fn to_dot(session: &Session) -> String {
    let gr = session.grounded();
    let mut out = String::from("digraph af {\n  rankdir=BT;\n  node [style=filled];\n");
    for id in session.nodes() {
        let (shape, caption) = match id {
            NodeId::Arg(a) => {
                let node = &session.arguments()[a.0];
                let title = node.explanation.scheme().map(|k| k.title()).unwrap_or("Given fact");
                ("box", format!("{title} for {}", node.explanation.subject()))
            }
            NodeId::Cq(q) => {
                let node = &session.questions()[q.0];
                ("ellipse", format!("{}: {}", node.kind, node.subject.question()))
            }
        };
        let label = session.label(&gr, *id);
        out.push_str(&format!(
            "  \"{id}\" [shape={shape}, fillcolor={}, label=\"{id}\\n{}\"];\n",
            color(label),
            escape(&caption)
        ));
    }
    for (from, to) in session.attacks() {
        out.push_str(&format!("  \"{from}\" -> \"{to}\";\n"));
    }
    out.push_str("}\n");
    out
}
