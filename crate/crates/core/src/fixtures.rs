//! Small reference graphs used by tests, the CLI and the demo.

use crate::grade::{Grade, Poset};
use crate::graph::FilteredGraph;

/// Two vertices at (0,0) joined by edges at (0,1) and (1,0).
///
/// Minimal, with one relation between the two relations: its H0 has
/// β0 = {(0,0),(0,0)}, β1 = {(0,1),(1,0)}, β2 = {(1,1)}.
pub fn two_edge_bigon() -> FilteredGraph {
    let mut g = FilteredGraph::new(Poset::r2());
    let x = g.add_vertex("x", Grade::xy(0, 0));
    let y = g.add_vertex("y", Grade::xy(0, 0));
    g.add_edge("a", x, y, Grade::xy(0, 1));
    g.add_edge("b", x, y, Grade::xy(1, 0));
    g
}

/// A non-minimal bifiltered graph on vertices u, v, w, x1, x2, x3 in which
/// h1, h2, d1, d2, d3 are collapsible and e3 is deletable.
pub fn figure_graph() -> FilteredGraph {
    let mut g = FilteredGraph::new(Poset::r2());
    let u = g.add_vertex("u", Grade::xy(0, 0));
    let v = g.add_vertex("v", Grade::xy(2, 0));
    let w = g.add_vertex("w", Grade::xy(0, 2));
    let x1 = g.add_vertex("x1", Grade::xy(1, 1));
    let x2 = g.add_vertex("x2", Grade::xy(0, 3));
    let x3 = g.add_vertex("x3", Grade::xy(3, 3));
    g.add_edge("e1", u, v, Grade::xy(2, 1));
    g.add_edge("e2", u, w, Grade::xy(1, 2));
    g.add_edge("e3", v, w, Grade::xy(2, 2));
    g.add_edge("h1", u, x1, Grade::xy(1, 1));
    g.add_edge("h2", w, x2, Grade::xy(0, 3));
    g.add_edge("d1", x3, v, Grade::xy(3, 3));
    g.add_edge("d2", x3, w, Grade::xy(3, 3));
    g.add_edge("d3", x3, x1, Grade::xy(3, 3));
    g
}
