//! Graphs, the graph-state circuit recipe, named AME graphs and local
//! complementation.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, GateKind};
use crate::error::{Error, Result};
use crate::linalg::SiteDims;

/// Undirected graph without self-loops.
///
/// Edges carry an integer multiplicity (one generalized CZ per unit) and are
/// kept in an explicit sequence, which fixes the gate order of the circuit.
/// Equality compares the adjacency only.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "GraphRecord", into = "GraphRecord")]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<u32>>,
    edges: Vec<(usize, usize)>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { n, adj: vec![vec![0; n]; n], edges: Vec::new() }
    }

    /// Graph whose edge sequence is exactly `edges`; repeats raise multiplicity.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    /// Graph from a symmetric multiplicity matrix; edges in lexicographic order.
    pub fn from_adjacency(adj: Vec<Vec<u32>>) -> Result<Self> {
        let n = adj.len();
        if adj.iter().any(|row| row.len() != n) {
            return Err(Error::input("adjacency matrix is not square"));
        }
        for i in 0..n {
            if adj[i][i] != 0 {
                return Err(Error::input(format!("self-loop at vertex {i}")));
            }
            for j in 0..n {
                if adj[i][j] != adj[j][i] {
                    return Err(Error::input(format!("adjacency not symmetric at ({i},{j})")));
                }
            }
        }
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.extend(std::iter::repeat((i, j)).take(adj[i][j] as usize));
            }
        }
        Ok(Graph { n, adj, edges })
    }

    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<()> {
        if i >= self.n || j >= self.n {
            return Err(Error::input(format!("edge ({i},{j}) out of range for {} vertices", self.n)));
        }
        if i == j {
            return Err(Error::input(format!("self-loop at vertex {i}")));
        }
        let (a, b) = (i.min(j), i.max(j));
        self.adj[a][b] += 1;
        self.adj[b][a] += 1;
        self.edges.push((a, b));
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adjacency(&self) -> &[Vec<u32>] {
        &self.adj
    }

    /// Edge sequence, each pair stored as `(low, high)`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i][j] > 0
    }

    /// All multiplicities are 0 or 1.
    pub fn is_simple(&self) -> bool {
        self.adj.iter().flatten().all(|&m| m <= 1)
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&u| self.adj[v][u] > 0).collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for u in self.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Same adjacency, edges re-sequenced lexicographically.
    pub fn lexicographic(&self) -> Graph {
        Graph::from_adjacency(self.adj.clone()).expect("adjacency already validated")
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Graph> {
        serde_json::from_str(text).map_err(|e| Error::input(format!("graph JSON: {e}")))
    }

    pub fn load(path: &Path) -> Result<Graph> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRecord {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphRecord> for Graph {
    type Error = Error;

    fn try_from(r: GraphRecord) -> Result<Graph> {
        let edges: Vec<(usize, usize)> = r.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edges(r.n, &edges)
    }
}

impl From<Graph> for GraphRecord {
    fn from(g: Graph) -> Self {
        GraphRecord { n: g.n, edges: g.edges.iter().map(|&(a, b)| [a, b]).collect() }
    }
}

/// Graph-state circuit: `F_d` (`H` for qubits) on every site, then one
/// generalized CZ per edge in sequence order.
pub fn graph_to_circuit(g: &Graph, d: usize) -> Result<Circuit> {
    if d < 2 {
        return Err(Error::input(format!("local dimension {d} is below 2")));
    }
    let (local, cz) = if d == 2 { (GateKind::H, GateKind::Cz) } else { (GateKind::Fd(d), GateKind::CzD(d)) };
    let mut c = Circuit::new(SiteDims::uniform(g.n, d)?);
    for s in 0..g.n {
        c.push(local, &[s])?;
    }
    for &(a, b) in &g.edges {
        c.push(cz, &[a, b])?;
    }
    Ok(c)
}

/// Names accepted by [`known_graph`]; `ghz_<k>` takes any `k ≥ 2`.
pub const KNOWN_GRAPHS: &[&str] =
    &["ame5_cycle", "ame6", "ame4_prime", "ame44_qubits", "ghz_<k>", "bell", "ibmqx4_topology"];

/// Named graphs, with edges in the order the gates are drawn.
pub fn known_graph(name: &str) -> Result<Graph> {
    let edges: &[(usize, usize)] = match name {
        "ame5_cycle" => return Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]),
        "ame6" => &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (0, 4), (1, 3), (2, 5)],
        // the doubled 1-3 edge is a CZ_d squared
        "ame4_prime" => return Graph::from_edges(4, &[(0, 1), (1, 3), (1, 3), (2, 3), (0, 2)]),
        "ame44_qubits" => return Graph::from_edges(8, &[(1, 2), (2, 5), (5, 7), (3, 7), (0, 3), (0, 4), (4, 6), (1, 6)]),
        "bell" => return Graph::from_edges(2, &[(0, 1)]),
        "ibmqx4_topology" => return Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]),
        _ => return ghz_star(name),
    };
    Graph::from_edges(6, edges)
}

fn ghz_star(name: &str) -> Result<Graph> {
    let k = name
        .strip_prefix("ghz_n(")
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| name.strip_prefix("ghz_"))
        .and_then(|k| k.parse::<usize>().ok())
        .ok_or_else(|| Error::input(format!("unknown graph '{name}' (known: {})", KNOWN_GRAPHS.join(", "))))?;
    if k < 2 {
        return Err(Error::input("ghz star needs at least 2 vertices"));
    }
    let edges: Vec<(usize, usize)> = (1..k).map(|i| (0, i)).collect();
    Graph::from_edges(k, &edges)
}

/// Local complementation at `v`: toggles every edge between neighbours of `v`.
pub fn lc_transform(g: &Graph, v: usize) -> Result<Graph> {
    if v >= g.n {
        return Err(Error::input(format!("vertex {v} out of range for {} vertices", g.n)));
    }
    if !g.is_simple() {
        return Err(Error::input("local complementation needs a simple graph"));
    }
    let nb = g.neighbors(v);
    let mut adj = g.adj.clone();
    for (k, &a) in nb.iter().enumerate() {
        for &b in &nb[k + 1..] {
            adj[a][b] ^= 1;
            adj[b][a] ^= 1;
        }
    }
    Graph::from_adjacency(adj)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_circuit_shape() {
        let g = known_graph("ame5_cycle").unwrap();
        let c = graph_to_circuit(&g, 2).unwrap();
        assert_eq!(c.len(), 10);
        assert_eq!(c.entangling_count(), 5);
        assert!(c.gates()[..5].iter().all(|g| g.kind == GateKind::H));
        let c3 = graph_to_circuit(&g, 3).unwrap();
        assert_eq!(c3.gates()[0].kind, GateKind::Fd(3));
        assert_eq!(c3.gates()[5].kind, GateKind::CzD(3));
    }

    #[test]
    fn named_graphs() {
        assert_eq!(known_graph("bell").unwrap().edges(), &[(0, 1)]);
        assert_eq!(known_graph("ghz_4").unwrap().edge_count(), 3);
        assert_eq!(known_graph("ghz_n(3)").unwrap().neighbors(0), vec![1, 2]);
        assert_eq!(known_graph("ame6").unwrap().edge_count(), 9);
        assert_eq!(known_graph("ame4_prime").unwrap().adjacency()[1][3], 2);
        assert!(known_graph("nope").is_err());
        assert!(known_graph("ghz_1").is_err());
    }

    #[test]
    fn triangle_becomes_path() {
        let tri = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        for v in 0..3 {
            let out = lc_transform(&tri, v).unwrap();
            assert_eq!(out.edge_count(), 2);
            assert!(out.neighbors(v).len() == 2);
        }
    }

    #[test]
    fn star_center_completes_leaves() {
        let star = known_graph("ghz_4").unwrap();
        let out = lc_transform(&star, 0).unwrap();
        let complete = Graph::from_adjacency(
            (0..4).map(|i| (0..4).map(|j| u32::from(i != j)).collect()).collect(),
        )
        .unwrap();
        assert_eq!(out, complete);
        assert_eq!(lc_transform(&out, 0).unwrap(), star);
    }

    #[test]
    fn lc_rejects_bad_input() {
        let g = known_graph("bell").unwrap();
        assert!(lc_transform(&g, 2).is_err());
        assert!(lc_transform(&known_graph("ame4_prime").unwrap(), 0).is_err());
    }

    #[test]
    fn ibmqx4_reduces_to_path() {
        let g = known_graph("ibmqx4_topology").unwrap();
        let path = lc_transform(&lc_transform(&g, 0).unwrap(), 4).unwrap();
        let want = Graph::from_edges(5, &[(1, 0), (0, 2), (2, 4), (4, 3)]).unwrap();
        assert_eq!(path, want);
    }

    #[test]
    fn validation_and_json() {
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
        assert!(Graph::from_adjacency(vec![vec![0, 1], vec![0, 0]]).is_err());
        let g = known_graph("ame4_prime").unwrap();
        let back = Graph::from_json(&g.to_json().unwrap()).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.edges(), g.edges());
        assert!(Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap().is_connected() == false);
        assert!(g.is_connected());
    }
}
