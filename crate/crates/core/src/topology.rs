// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Device connectivity graphs.
//!
//! Built-in device maps (heavy-hex, degree ≤ 3) ship as JSON under `data/`:
//! a 16-qubit and a 27-qubit Falcon layout and the 127-qubit Eagle layout.
//! The honeycomb generator follows the usual column/row node layout; a 3×3
//! cell lattice has 30 nodes.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const GUADALUPE: &str = include_str!("../data/guadalupe.json");
const TORONTO: &str = include_str!("../data/toronto.json");
const WASHINGTON: &str = include_str!("../data/washington.json");

/// Names accepted by [`CouplingGraph::device`].
pub const DEVICES: [&str; 3] = ["guadalupe", "toronto", "washington"];

/// On-disk coupling map: edges listed once per unordered pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CouplingMapFile {
    pub name: String,
    pub num_qubits: usize,
    pub edges: Vec<[usize; 2]>,
}

/// Undirected, connected device graph with all-pairs hop distances.
#[derive(Debug, Clone)]
pub struct CouplingGraph {
    name: String,
    num_qubits: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    distances: Vec<u32>,
}

impl PartialEq for CouplingGraph {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.num_qubits == other.num_qubits && self.edges == other.edges
    }
}

impl CouplingGraph {
    /// Validates and builds a graph; rejects self-loops, duplicate edges,
    /// out-of-range indices and disconnected inputs.
    pub fn new(name: impl Into<String>, num_qubits: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let name = name.into();
        if num_qubits < 2 {
            return Err(Error::Topology(format!("{name}: needs at least 2 qubits")));
        }
        let mut seen = BTreeSet::new();
        let mut adjacency = vec![Vec::new(); num_qubits];
        for &(a, b) in edges {
            if a >= num_qubits || b >= num_qubits {
                return Err(Error::Topology(format!(
                    "{name}: edge ({a}, {b}) out of range for {num_qubits} qubits"
                )));
            }
            if a == b {
                return Err(Error::Topology(format!("{name}: self-loop on {a}")));
            }
            let key = (a.min(b), a.max(b));
            if !seen.insert(key) {
                return Err(Error::Topology(format!("{name}: duplicate edge ({a}, {b})")));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        adjacency.iter_mut().for_each(|n| n.sort_unstable());
        let mut graph = CouplingGraph {
            name,
            num_qubits,
            edges: seen.into_iter().collect(),
            adjacency,
            distances: Vec::new(),
        };
        graph.distances = graph.all_pairs_bfs()?;
        Ok(graph)
    }

    fn all_pairs_bfs(&self) -> Result<Vec<u32>> {
        let n = self.num_qubits;
        let mut dist = vec![u32::MAX; n * n];
        for src in 0..n {
            let row = &mut dist[src * n..(src + 1) * n];
            row[src] = 0;
            let mut queue = VecDeque::from([src]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adjacency[v] {
                    if row[w] == u32::MAX {
                        row[w] = row[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
            if row.contains(&u32::MAX) {
                return Err(Error::Topology(format!("{} is disconnected", self.name)));
            }
        }
        Ok(dist)
    }

    pub fn fully_connected(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Topology(format!(
                "fully connected graph needs n >= 2, got {n}"
            )));
        }
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        Self::new(format!("full-{n}"), n, &edges)
    }

    /// `rows × cols` lattice; node `(r, c)` has index `r * cols + c`.
    pub fn grid(rows: usize, cols: usize) -> Result<Self> {
        if rows * cols < 2 {
            return Err(Error::Topology(format!("grid {rows}x{cols} is degenerate")));
        }
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    edges.push((v, v + 1));
                }
                if r + 1 < rows {
                    edges.push((v, v + cols));
                }
            }
        }
        Self::new(format!("grid-{rows}x{cols}"), rows * cols, &edges)
    }

    /// Honeycomb of `rows × cols` hexagonal cells.
    ///
    /// Nodes sit on `cols + 1` columns of `2·rows + 2` nodes each. Column
    /// edges join vertical neighbors; row edges join `(i, j)-(i+1, j)` when
    /// `i` and `j` have equal parity. The two dangling corner nodes are
    /// dropped, leaving `(cols + 1)(2·rows + 2) − 2` nodes.
    pub fn hex_lattice(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Topology(format!(
                "hex lattice {rows}x{cols} is degenerate"
            )));
        }
        let height = 2 * rows + 2;
        let removed = [(0, height - 1), (cols, (height - 1) * (cols % 2))];
        let mut index = vec![vec![usize::MAX; height]; cols + 1];
        let mut count = 0;
        for (i, column) in index.iter_mut().enumerate() {
            for (j, slot) in column.iter_mut().enumerate() {
                if !removed.contains(&(i, j)) {
                    *slot = count;
                    count += 1;
                }
            }
        }
        let mut edges = Vec::new();
        let mut link = |a: (usize, usize), b: (usize, usize)| {
            let (x, y) = (index[a.0][a.1], index[b.0][b.1]);
            if x != usize::MAX && y != usize::MAX {
                edges.push((x, y));
            }
        };
        for i in 0..=cols {
            for j in 0..height - 1 {
                link((i, j), (i, j + 1));
            }
        }
        for i in 0..cols {
            for j in 0..height {
                if i % 2 == j % 2 {
                    link((i, j), (i + 1, j));
                }
            }
        }
        Self::new(format!("hex-{rows}x{cols}"), count, &edges)
    }

    pub fn from_map(map: &CouplingMapFile) -> Result<Self> {
        let edges: Vec<(usize, usize)> = map.edges.iter().map(|e| (e[0], e[1])).collect();
        Self::new(map.name.clone(), map.num_qubits, &edges)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let map: CouplingMapFile = serde_json::from_str(text)?;
        Self::from_map(&map)
    }

    pub fn load_coupling_map(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// One of the bundled device maps, see [`DEVICES`].
    pub fn device(name: &str) -> Result<Self> {
        let text = match name {
            "guadalupe" => GUADALUPE,
            "toronto" => TORONTO,
            "washington" => WASHINGTON,
            _ => {
                return Err(Error::Unknown {
                    what: "device",
                    value: name.to_string(),
                })
            }
        };
        Self::from_json(text)
    }

    pub fn to_map(&self) -> CouplingMapFile {
        CouplingMapFile {
            name: self.name.clone(),
            num_qubits: self.num_qubits,
            edges: self.edges.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// Edges as `(min, max)` pairs in ascending order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, q: usize) -> &[usize] {
        &self.adjacency[q]
    }

    pub fn degree(&self, q: usize) -> usize {
        self.adjacency[q].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.num_qubits * (self.num_qubits - 1) / 2
    }

    pub fn is_edge(&self, a: usize, b: usize) -> bool {
        a < self.num_qubits && self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Shortest-path hop count.
    pub fn distance(&self, a: usize, b: usize) -> Result<u32> {
        for q in [a, b] {
            if q >= self.num_qubits {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    num_qubits: self.num_qubits,
                });
            }
        }
        Ok(self.dist(a, b))
    }

    #[inline]
    pub(crate) fn dist(&self, a: usize, b: usize) -> u32 {
        self.distances[a * self.num_qubits + b]
    }

    pub fn diameter(&self) -> u32 {
        self.distances.iter().copied().max().unwrap_or(0)
    }

    /// Breadth-first order from `start`, visiting neighbors by index.
    pub fn bfs_order(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.num_qubits];
        let mut order = Vec::with_capacity(self.num_qubits);
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        order
    }

    /// One shortest path from `a` to `b`, inclusive, preferring low indices.
    pub fn shortest_path(&self, a: usize, b: usize) -> Vec<usize> {
        let mut path = vec![a];
        let mut v = a;
        while v != b {
            let d = self.dist(v, b);
            v = *self.adjacency[v]
                .iter()
                .find(|&&w| self.dist(w, b) + 1 == d)
                .expect("connected graph");
            path.push(v);
        }
        path
    }
}

/// A topology as named on the command line or in an experiment config.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum TopologySpec {
    /// Complete graph sized to each circuit.
    FullyConnected,
    Full(usize),
    Grid(usize, usize),
    Hex(usize, usize),
    Device(String),
    File(String),
}

impl TopologySpec {
    /// The six layouts of the depth experiment.
    pub fn benchmark_set() -> Vec<TopologySpec> {
        vec![
            TopologySpec::FullyConnected,
            TopologySpec::Grid(6, 6),
            TopologySpec::Hex(3, 3),
            TopologySpec::Device("guadalupe".into()),
            TopologySpec::Device("toronto".into()),
            TopologySpec::Device("washington".into()),
        ]
    }

    /// Builds the graph; `needed` sizes the variable fully connected case.
    pub fn build(&self, needed: usize) -> Result<CouplingGraph> {
        match self {
            TopologySpec::FullyConnected => CouplingGraph::fully_connected(needed.max(2)),
            TopologySpec::Full(n) => CouplingGraph::fully_connected(*n),
            TopologySpec::Grid(r, c) => CouplingGraph::grid(*r, *c),
            TopologySpec::Hex(r, c) => CouplingGraph::hex_lattice(*r, *c),
            TopologySpec::Device(name) => CouplingGraph::device(name),
            TopologySpec::File(path) => CouplingGraph::load_coupling_map(path),
        }
    }

    /// Physical qubit budget, or `None` when the graph grows with the circuit.
    pub fn capacity(&self) -> Result<Option<usize>> {
        match self {
            TopologySpec::FullyConnected => Ok(None),
            other => Ok(Some(other.build(2)?.num_qubits())),
        }
    }

    /// Row label used in emitted tables.
    pub fn label(&self) -> String {
        match self {
            TopologySpec::FullyConnected => "fully-connected".into(),
            TopologySpec::Full(n) => format!("full-{n}"),
            TopologySpec::Grid(r, c) => format!("grid-{r}x{c}"),
            TopologySpec::Hex(r, c) => format!("hex-{r}x{c}"),
            TopologySpec::Device(name) => name.clone(),
            TopologySpec::File(path) => Path::new(path)
                .file_stem()
                .map_or_else(|| path.clone(), |s| s.to_string_lossy().into_owned()),
        }
    }
}

fn parse_dims(s: &str) -> Option<(usize, usize)> {
    let (r, c) = s.split_once(['x', 'X'])?;
    Some((r.parse().ok()?, c.parse().ok()?))
}

impl FromStr for TopologySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Unknown {
            what: "topology",
            value: s.to_string(),
        };
        let (kind, arg) = match s.split_once(':') {
            Some((k, a)) => (k, Some(a)),
            None => (s, None),
        };
        match (kind, arg) {
            ("full" | "fully-connected", None) => Ok(TopologySpec::FullyConnected),
            ("full", Some(n)) => n.parse().map(TopologySpec::Full).map_err(|_| bad()),
            ("grid", Some(d)) => parse_dims(d)
                .map(|(r, c)| TopologySpec::Grid(r, c))
                .ok_or_else(bad),
            ("hex", Some(d)) => parse_dims(d)
                .map(|(r, c)| TopologySpec::Hex(r, c))
                .ok_or_else(bad),
            ("file", Some(p)) => Ok(TopologySpec::File(p.to_string())),
            ("device", Some(name)) | (name, None) if DEVICES.contains(&name) => {
                Ok(TopologySpec::Device(name.to_string()))
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for TopologySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TopologySpec::FullyConnected => write!(f, "full"),
            TopologySpec::Full(n) => write!(f, "full:{n}"),
            TopologySpec::Grid(r, c) => write!(f, "grid:{r}x{c}"),
            TopologySpec::Hex(r, c) => write!(f, "hex:{r}x{c}"),
            TopologySpec::Device(name) => write!(f, "{name}"),
            TopologySpec::File(p) => write!(f, "file:{p}"),
        }
    }
}

impl TryFrom<String> for TopologySpec {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<TopologySpec> for String {
    fn from(t: TopologySpec) -> String {
        t.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_sizes() {
        assert_eq!(CouplingGraph::fully_connected(3).unwrap().edges().len(), 3);
        let k19 = CouplingGraph::fully_connected(19).unwrap();
        assert_eq!(k19.edges().len(), 171);
        assert_eq!(k19.distance(3, 17).unwrap(), 1);
        assert!(k19.is_complete());
        assert!(CouplingGraph::fully_connected(1).is_err());
    }

    #[test]
    fn grid_examples() {
        let g = CouplingGraph::grid(6, 6).unwrap();
        assert_eq!(g.num_qubits(), 36);
        assert_eq!(g.edges().len(), 60);
        assert_eq!(g.max_degree(), 4);
        assert_eq!(g.distance(0, 35).unwrap(), 10);
        assert_eq!(g.distance(7, 7).unwrap(), 0);
        assert_eq!(CouplingGraph::grid(1, 2).unwrap().edges(), &[(0, 1)]);
        assert!(CouplingGraph::grid(1, 1).is_err());
    }

    #[test]
    fn hex_has_thirty_nodes() {
        let h = CouplingGraph::hex_lattice(3, 3).unwrap();
        assert_eq!(h.num_qubits(), 30);
        assert_eq!(h.max_degree(), 3);
        assert!(h.neighbors(0).len() >= 2);
        assert!(CouplingGraph::hex_lattice(0, 3).is_err());
    }

    #[test]
    fn rejects_bad_graphs() {
        assert!(CouplingGraph::new("loop", 3, &[(0, 0), (1, 2)]).is_err());
        assert!(CouplingGraph::new("dup", 3, &[(0, 1), (1, 0), (1, 2)]).is_err());
        assert!(CouplingGraph::new("split", 4, &[(0, 1), (2, 3)]).is_err());
        assert!(CouplingGraph::new("range", 2, &[(0, 2)]).is_err());
        assert!(CouplingGraph::from_json("{\"name\": 3}").is_err());
    }

    #[test]
    fn bundled_devices() {
        for (name, n) in [("guadalupe", 16), ("toronto", 27), ("washington", 127)] {
            let g = CouplingGraph::device(name).unwrap();
            assert_eq!(g.num_qubits(), n);
            assert!(g.max_degree() <= 3);
        }
        assert!(CouplingGraph::device("nope").is_err());
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(
            "full".parse::<TopologySpec>().unwrap(),
            TopologySpec::FullyConnected
        );
        assert_eq!("full:5".parse::<TopologySpec>().unwrap(), TopologySpec::Full(5));
        assert_eq!(
            "grid:6x6".parse::<TopologySpec>().unwrap(),
            TopologySpec::Grid(6, 6)
        );
        assert_eq!(
            "hex:3x3".parse::<TopologySpec>().unwrap(),
            TopologySpec::Hex(3, 3)
        );
        assert_eq!(
            "toronto".parse::<TopologySpec>().unwrap(),
            TopologySpec::Device("toronto".into())
        );
        assert_eq!(
            "device:washington".parse::<TopologySpec>().unwrap(),
            TopologySpec::Device("washington".into())
        );
        assert!("grid:6".parse::<TopologySpec>().is_err());
        assert!("ring".parse::<TopologySpec>().is_err());
        for t in TopologySpec::benchmark_set() {
            assert_eq!(t.to_string().parse::<TopologySpec>().unwrap(), t);
        }
    }

    #[test]
    fn shortest_path_walks_edges() {
        let g = CouplingGraph::grid(3, 3).unwrap();
        let p = g.shortest_path(0, 8);
        assert_eq!(p.len(), 5);
        assert!(p.windows(2).all(|w| g.is_edge(w[0], w[1])));
    }
}
