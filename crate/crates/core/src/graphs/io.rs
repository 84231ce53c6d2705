use serde::{Deserialize, Serialize};

use super::graph::Graph;
use crate::error::Result;

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: usize,
    edges: Vec<[usize; 2]>,
}

impl Graph {
    /// `{"vertices": n, "edges": [[u, v], ...]}`; labels are the list order.
    pub fn to_json(&self) -> String {
        let j = GraphJson {
            vertices: self.vertex_count(),
            edges: self.edges().iter().map(|e| [e.u, e.v]).collect(),
        };
        serde_json::to_string(&j).expect("graph serializes")
    }

    pub fn from_json(s: &str) -> Result<Graph> {
        let j: GraphJson = serde_json::from_str(s)?;
        let pairs: Vec<(usize, usize)> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::new(j.vertices, &pairs)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n");
        for x in 0..self.vertex_count() {
            s.push_str(&format!("  {x};\n"));
        }
        for e in self.edges() {
            s.push_str(&format!("  {} -- {} [label=\"{}\"];\n", e.u, e.v, e.label));
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::complete_graph;

    #[test]
    fn json_round_trip() {
        let g = complete_graph(4);
        let s = g.to_json();
        assert_eq!(s, r#"{"vertices":4,"edges":[[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]}"#);
        assert_eq!(Graph::from_json(&s).unwrap(), g);
        assert!(Graph::from_json(r#"{"vertices":2,"edges":[[0,5]]}"#).is_err());
    }

    #[test]
    fn dot_lists_edges() {
        let d = complete_graph(3).to_dot();
        assert!(d.contains("0 -- 1 [label=\"1\"]"));
    }
}
