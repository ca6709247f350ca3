use super::{AttrKind, GraphBuilder, TemporalGraph, TimeDomain};
use crate::value::Value;

const PRESENCE: [(&str, [u8; 3]); 5] = [
    ("u1", [1, 1, 0]),
    ("u2", [1, 1, 1]),
    ("u3", [1, 0, 0]),
    ("u4", [1, 1, 1]),
    ("u5", [0, 1, 1]),
];

const GENDER: [&str; 5] = ["m", "f", "f", "f", "f"];

const PUBLICATIONS: [[&str; 3]; 5] = [
    ["3", "1", "-"],
    ["1", "1", "1"],
    ["1", "-", "-"],
    ["2", "1", "1"],
    ["-", "2", "2"],
];

const EDGES: [&[(&str, &str)]; 3] = [
    &[("u1", "u2"), ("u1", "u3"), ("u1", "u4"), ("u2", "u4"), ("u3", "u4")],
    &[("u1", "u2"), ("u1", "u4"), ("u2", "u4"), ("u2", "u5"), ("u4", "u5")],
    &[("u2", "u4"), ("u4", "u5")],
];

/// The five-author example graph over `t0..t2`: static `gender`, varying
/// `publications`, undirected collaboration edges.
pub fn build_fixture_fig1() -> TemporalGraph {
    let time = TimeDomain::new(["t0", "t1", "t2"]).expect("valid labels");
    let mut b = GraphBuilder::new(time, false);
    b.declare_attr("gender", AttrKind::Static).expect("fresh attribute");
    b.declare_attr("publications", AttrKind::Varying).expect("fresh attribute");
    for (i, (id, bits)) in PRESENCE.iter().enumerate() {
        b.node(id);
        for (t, &bit) in bits.iter().enumerate() {
            if bit == 1 {
                b.set_node_present(id, t);
            }
        }
        b.set_static("gender", id, Some(Value::atom(GENDER[i]))).expect("static");
        for (t, p) in PUBLICATIONS[i].iter().enumerate() {
            if *p != "-" {
                b.set_varying("publications", id, t, Some(Value::atom(p))).expect("varying");
            }
        }
    }
    for (t, edges) in EDGES.iter().enumerate() {
        for (u, v) in edges.iter() {
            b.edge(u, v, t);
        }
    }
    b.build(false).expect("fixture is consistent")
}
