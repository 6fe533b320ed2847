//! Simple undirected graphs, text formats, and distance statistics.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("requires connected graph")]
    Disconnected,
    #[error("edge {0}-{1} is not present")]
    MissingEdge(usize, usize),
}

fn parse_err(offset: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        offset,
        message: message.into(),
    }
}

/// A finite simple undirected graph on vertices `0..n`.
///
/// Immutable once built. Edges are stored with `u < v` in lexicographic
/// order, and every adjacency list is sorted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}, {:?})", self.order, self.edges)
    }
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and
    /// out-of-range endpoints.
    pub fn new(order: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        if order == 0 {
            return Err(GraphError::Empty);
        }
        let mut adj = vec![Vec::new(); order];
        let mut list = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= order {
                    return Err(GraphError::VertexOutOfRange { vertex: w, order });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            list.push((a, b));
            adj[a].push(b);
            adj[b].push(a);
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        Ok(Graph {
            order,
            edges: list,
            adj,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order && self.adj[u].binary_search(&v).is_ok()
    }

    /// True when every pair of distinct vertices is adjacent.
    pub fn is_complete(&self) -> bool {
        self.size() == self.order * (self.order - 1) / 2
    }

    /// The graph with edge `u-v` removed.
    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::MissingEdge(u, v));
        }
        let key = if u < v { (u, v) } else { (v, u) };
        Graph::new(self.order, self.edges.iter().copied().filter(|&e| e != key))
    }

    pub fn complement(&self) -> Graph {
        let mut edges = Vec::new();
        for u in 0..self.order {
            for v in u + 1..self.order {
                if !self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(self.order, edges).expect("complement of a valid graph is valid")
    }

    /// BFS distances from `source`; `None` marks unreachable vertices.
    pub fn bfs(&self, source: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.order];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// True iff a single BFS from vertex 0 reaches every vertex.
    pub fn is_connected(&self) -> bool {
        self.bfs(0).iter().all(Option::is_some)
    }

    /// A proper 2-colouring `(V1, V2)` with vertex 0 in `V1`, or `None`
    /// when the graph has an odd cycle. Disconnected graphs are coloured
    /// component by component.
    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut colour: Vec<Option<bool>> = vec![None; self.order];
        for start in 0..self.order {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = colour[u].unwrap();
                for &w in &self.adj[u] {
                    match colour[w] {
                        None => {
                            colour[w] = Some(!cu);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for (v, c) in colour.into_iter().enumerate() {
            if c == Some(false) {
                left.push(v);
            } else {
                right.push(v);
            }
        }
        Some((left, right))
    }

    /// Parses one graph6 line. An optional `>>graph6<<` header is skipped.
    pub fn from_graph6(text: &str) -> Result<Graph, GraphError> {
        parse_graph6(text)
    }

    pub fn to_graph6(&self) -> String {
        encode_graph6(self)
    }
}

const GRAPH6_HEADER: &str = ">>graph6<<";

/// Decodes a graph6 string.
///
/// Both the short (n ≤ 62) and the 4-byte long (n ≤ 258047) size headers
/// are accepted. Errors carry the byte offset of the offending character.
pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let line = text.trim_end_matches(['\n', '\r']);
    let (skip, body) = match line.strip_prefix(GRAPH6_HEADER) {
        Some(rest) => (GRAPH6_HEADER.len(), rest.as_bytes()),
        None => (0, line.as_bytes()),
    };
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(parse_err(skip + i, format!("byte {b:#04x} outside graph6 range 63..=126")));
        }
    }
    let (order, header_len) = match body {
        [] => return Err(parse_err(skip, "empty graph6 string")),
        [126, 126, ..] => return Err(parse_err(skip, "8-byte size header (n > 258047) not supported")),
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(parse_err(skip + body.len(), "truncated long-form size header"));
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, 4)
        }
        [b, ..] => ((b - 63) as usize, 1),
    };
    if order == 0 {
        return Err(parse_err(skip, "graph of order 0"));
    }
    let bits = order * (order - 1) / 2;
    let expected = bits.div_ceil(6);
    let data = &body[header_len..];
    if data.len() < expected {
        return Err(parse_err(
            skip + body.len(),
            format!("truncated bit string: expected {expected} data bytes, found {}", data.len()),
        ));
    }
    if data.len() > expected {
        return Err(parse_err(
            skip + header_len + expected,
            format!("trailing data: expected {expected} data bytes, found {}", data.len()),
        ));
    }

    let bit = |k: usize| -> bool {
        let byte = data[k / 6] - 63;
        (byte >> (5 - k % 6)) & 1 == 1
    };
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..order {
        for u in 0..v {
            if bit(k) {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    for pad in bits..expected * 6 {
        if bit(pad) {
            return Err(parse_err(skip + header_len + pad / 6, "nonzero padding bits"));
        }
    }
    Graph::new(order, edges)
}

/// Encodes a graph as graph6 (column-major upper triangle, 6 bits per byte).
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Parses `n` followed by whitespace-separated 0-indexed `u v` pairs.
/// Lines starting with `#` are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut tokens = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        if !line.trim_start().starts_with('#') {
            let mut pos = 0;
            for tok in line.split_whitespace() {
                let at = pos + line[pos..].find(tok).unwrap();
                tokens.push((offset + at, tok));
                pos = at + tok.len();
            }
        }
        offset += line.len();
    }
    let mut it = tokens.into_iter();
    let (at, first) = it.next().ok_or_else(|| parse_err(0, "missing vertex count"))?;
    let order: usize = first
        .parse()
        .map_err(|_| parse_err(at, format!("invalid vertex count {first:?}")))?;
    let mut nums = Vec::new();
    for (at, tok) in it {
        let x: usize = tok
            .parse()
            .map_err(|_| parse_err(at, format!("invalid vertex index {tok:?}")))?;
        nums.push((at, x));
    }
    if nums.len() % 2 == 1 {
        return Err(parse_err(offset, "dangling vertex without a partner"));
    }
    Graph::new(order, nums.chunks(2).map(|p| (p[0].1, p[1].1)))
}

/// All-pairs distances of a connected graph and the scalars derived from them.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceProfile {
    order: usize,
    dist: Vec<u32>,
    /// `Tr_i`: row sums of the distance matrix.
    pub transmissions: Vec<u64>,
    /// `T_i = Σ_j d_ij Tr_j`.
    pub second_transmissions: Vec<u64>,
    pub wiener: u64,
    pub diameter: u32,
    /// Mean transmission over the neighbours of each vertex. Zero for the
    /// isolated vertex of the one-vertex graph.
    pub avg_distance_degree: Vec<f64>,
}

impl DistanceProfile {
    /// Runs one BFS per vertex.
    pub fn new(g: &Graph) -> Result<Self, GraphError> {
        let n = g.order();
        let mut dist = Vec::with_capacity(n * n);
        for s in 0..n {
            for d in g.bfs(s) {
                dist.push(d.ok_or(GraphError::Disconnected)?);
            }
        }
        let transmissions: Vec<u64> = dist
            .chunks(n)
            .map(|row| row.iter().map(|&d| d as u64).sum())
            .collect();
        let second_transmissions = dist
            .chunks(n)
            .map(|row| row.iter().zip(&transmissions).map(|(&d, &t)| d as u64 * t).sum())
            .collect();
        let wiener = transmissions.iter().sum::<u64>() / 2;
        let diameter = dist.iter().copied().max().unwrap_or(0);
        let avg_distance_degree = (0..n)
            .map(|v| {
                let nb = g.neighbors(v);
                if nb.is_empty() {
                    0.0
                } else {
                    nb.iter().map(|&u| transmissions[u] as f64).sum::<f64>() / nb.len() as f64
                }
            })
            .collect();
        Ok(DistanceProfile {
            order: n,
            dist,
            transmissions,
            second_transmissions,
            wiener,
            diameter,
            avg_distance_degree,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dist(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.order + v]
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.dist[u * self.order..(u + 1) * self.order]
    }

    pub fn tr_min(&self) -> u64 {
        self.transmissions.iter().copied().min().unwrap_or(0)
    }

    pub fn tr_max(&self) -> u64 {
        self.transmissions.iter().copied().max().unwrap_or(0)
    }

    /// `Σ_{i≠j} d_ij²`, i.e. twice the sum over unordered pairs.
    pub fn sum_sq_distances(&self) -> u64 {
        self.dist.iter().map(|&d| (d as u64).pow(2)).sum()
    }

    /// `Σ_i Tr_i²`.
    pub fn sum_sq_transmissions(&self) -> u64 {
        self.transmissions.iter().map(|&t| t * t).sum()
    }

    /// The common transmission `k` if the graph is `k`-transmission regular.
    pub fn transmission_regular(&self) -> Option<u64> {
        let first = *self.transmissions.first()?;
        self.transmissions.iter().all(|&t| t == first).then_some(first)
    }
}

/// Convenience wrapper over [`DistanceProfile::new`].
pub fn distance_profile(g: &Graph) -> Result<DistanceProfile, GraphError> {
    DistanceProfile::new(g)
}
