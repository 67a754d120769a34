//! Simple graphs, rotation-system plane embeddings, near-triangulation
//! validation, clique-sum composition and the coloring number.

use crate::algebra::{Field, FieldSpec};
use crate::polys::{Decoration, EdgeLabeling};
use serde::Deserialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("unknown vertex {0} (n = {1})")]
    UnknownVertex(usize, usize),
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("inner face {0:?} is not a triangle")]
    NonTriangularInnerFace(Vec<usize>),
    #[error("designated outer face is not a face cycle of the embedding")]
    OuterFaceNotCycle,
    #[error("embedding invalid: {0}")]
    BadEmbedding(String),
    #[error("identified vertices do not form a clique in {0}")]
    NotAClique(&'static str),
    #[error("identification map has {0} vertices; at most 3 allowed")]
    MapTooLarge(usize),
    #[error("dropped edge ({0}, {1}) is not a clique edge")]
    DropOutsideClique(usize, usize),
    #[error(transparent)]
    Algebra(#[from] crate::algebra::AlgebraError),
    #[error(transparent)]
    Poly(#[from] crate::polys::PolyError),
}

/// A simple graph on vertices 0..n-1 with a canonically sorted edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut canon = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::UnknownVertex(u, n));
            }
            if v >= n {
                return Err(GraphError::UnknownVertex(v, n));
            }
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        for w in canon.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
            }
        }
        Ok(Graph { n, edges: canon })
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let e = (u.min(v), u.max(v));
        self.edges.binary_search(&e).is_ok()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Graph with an edge subset removed (vertex set unchanged).
    pub fn without_edges(&self, remove: &[(usize, usize)]) -> Graph {
        let gone: Vec<(usize, usize)> = remove.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .copied()
            .filter(|e| !gone.contains(e))
            .collect();
        Graph { n: self.n, edges }
    }

    fn is_connected_on(&self, keep: &[bool]) -> bool {
        let adj = self.adjacency();
        let start = match (0..self.n).find(|&v| keep[v]) {
            Some(s) => s,
            None => return true,
        };
        let mut seen = vec![false; self.n];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if keep[w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        (0..self.n).all(|v| !keep[v] || seen[v])
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_on(&vec![true; self.n])
    }

    pub fn is_two_connected(&self) -> bool {
        if self.n < 3 || !self.is_connected() {
            return false;
        }
        for cut in 0..self.n {
            let mut keep = vec![true; self.n];
            keep[cut] = false;
            if !self.is_connected_on(&keep) {
                return false;
            }
        }
        true
    }
}

/// Rotation-system embedding: per-vertex cyclic neighbor order plus a
/// designated outer face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneEmbedding {
    pub rotations: Vec<Vec<usize>>,
    pub outer_face: Vec<usize>,
}

impl PlaneEmbedding {
    /// Traces all faces of the rotation system. A face is returned as
    /// the cyclic vertex sequence of its directed boundary walk, using
    /// the rule: after arriving at v from u, leave along the successor
    /// of u in v's rotation.
    pub fn trace_faces(&self, g: &Graph) -> Result<Vec<Vec<usize>>, GraphError> {
        let n = g.n;
        if self.rotations.len() != n {
            return Err(GraphError::BadEmbedding(format!(
                "rotation list has length {}, expected {}",
                self.rotations.len(),
                n
            )));
        }
        let mut pos: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); n];
        for (v, rot) in self.rotations.iter().enumerate() {
            for (i, &w) in rot.iter().enumerate() {
                if w >= n {
                    return Err(GraphError::UnknownVertex(w, n));
                }
                if !g.has_edge(v, w) {
                    return Err(GraphError::BadEmbedding(format!(
                        "rotation of {v} mentions non-edge ({v}, {w})"
                    )));
                }
                if pos[v].insert(w, i).is_some() {
                    return Err(GraphError::BadEmbedding(format!(
                        "vertex {w} appears twice in rotation of {v}"
                    )));
                }
            }
        }
        for &(u, v) in &g.edges {
            if !pos[u].contains_key(&v) || !pos[v].contains_key(&u) {
                return Err(GraphError::BadEmbedding(format!(
                    "edge ({u}, {v}) missing from a rotation"
                )));
            }
        }
        let mut visited: BTreeMap<(usize, usize), bool> = BTreeMap::new();
        for &(u, v) in &g.edges {
            visited.insert((u, v), false);
            visited.insert((v, u), false);
        }
        let mut faces = Vec::new();
        let darts: Vec<(usize, usize)> = visited.keys().copied().collect();
        for start in darts {
            if visited[&start] {
                continue;
            }
            let mut face = Vec::new();
            let (mut u, mut v) = start;
            loop {
                visited.insert((u, v), true);
                face.push(u);
                let rot = &self.rotations[v];
                let i = pos[v][&u];
                let w = rot[(i + 1) % rot.len()];
                u = v;
                v = w;
                if (u, v) == start {
                    break;
                }
            }
            faces.push(face);
        }
        Ok(faces)
    }

    /// Validates the rotation system against the graph and checks
    /// Euler's formula (connected case).
    pub fn validate(&self, g: &Graph) -> Result<Vec<Vec<usize>>, GraphError> {
        let faces = self.trace_faces(g)?;
        if g.is_connected() && g.n >= 1 {
            let euler = g.n as i64 - g.m() as i64 + faces.len() as i64;
            if euler != 2 {
                return Err(GraphError::BadEmbedding(format!(
                    "Euler check failed: n - m + f = {euler}, expected 2"
                )));
            }
        }
        Ok(faces)
    }
}

fn cyclic_eq(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() || a.is_empty() {
        return a.len() == b.len();
    }
    let n = a.len();
    (0..n).any(|s| (0..n).all(|i| a[(s + i) % n] == b[i]))
}

fn cyclic_eq_either_direction(a: &[usize], b: &[usize]) -> bool {
    let mut rev: Vec<usize> = b.to_vec();
    rev.reverse();
    cyclic_eq(a, b) || cyclic_eq(a, &rev)
}

/// A validated 2-connected plane graph whose inner faces are all
/// triangles. `boundary` is the outer cycle in face-traversal order.
#[derive(Debug, Clone)]
pub struct NearTriangulation {
    pub graph: Graph,
    pub embedding: PlaneEmbedding,
    pub boundary: Vec<usize>,
    pub interior: Vec<usize>,
}

pub fn validate_near_triangulation(
    g: &Graph,
    emb: &PlaneEmbedding,
) -> Result<NearTriangulation, GraphError> {
    let faces = emb.validate(g)?;
    if !g.is_two_connected() {
        return Err(GraphError::NotTwoConnected);
    }
    // the designated outer face must be one of the traced faces and a
    // simple cycle; its traced orientation becomes the boundary order
    let of = &emb.outer_face;
    {
        let mut sorted = of.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != of.len() || of.len() < 3 {
            return Err(GraphError::OuterFaceNotCycle);
        }
        for i in 0..of.len() {
            if !g.has_edge(of[i], of[(i + 1) % of.len()]) {
                return Err(GraphError::OuterFaceNotCycle);
            }
        }
    }
    let outer_idx = faces
        .iter()
        .position(|f| cyclic_eq_either_direction(f, of))
        .ok_or(GraphError::OuterFaceNotCycle)?;
    let boundary = faces[outer_idx].clone();
    for (i, f) in faces.iter().enumerate() {
        if i != outer_idx && f.len() != 3 {
            return Err(GraphError::NonTriangularInnerFace(f.clone()));
        }
    }
    let interior: Vec<usize> = (0..g.n).filter(|v| !boundary.contains(v)).collect();
    Ok(NearTriangulation {
        graph: g.clone(),
        embedding: emb.clone(),
        boundary,
        interior,
    })
}

/// True when every face of the embedding, including the outer one, is a
/// triangle.
pub fn is_full_triangulation(nt: &NearTriangulation) -> bool {
    nt.boundary.len() == 3
}

/// Glues g2 onto g1 along an identification map of size 1..=3 whose
/// image is a clique in both graphs, optionally dropping clique edges.
/// Left vertices keep their indices; unidentified right vertices get
/// fresh indices in ascending order. Returns the glued graph together
/// with the right-vertex renumbering.
pub fn clique_sum(
    g1: &Graph,
    g2: &Graph,
    ident: &[(usize, usize)],
    drop: &[(usize, usize)],
) -> Result<(Graph, Vec<usize>), GraphError> {
    if ident.is_empty() || ident.len() > 3 {
        return Err(GraphError::MapTooLarge(ident.len()));
    }
    for &(l, r) in ident {
        if l >= g1.n {
            return Err(GraphError::UnknownVertex(l, g1.n));
        }
        if r >= g2.n {
            return Err(GraphError::UnknownVertex(r, g2.n));
        }
    }
    for i in 0..ident.len() {
        for j in i + 1..ident.len() {
            if !g1.has_edge(ident[i].0, ident[j].0) {
                return Err(GraphError::NotAClique("left graph"));
            }
            if !g2.has_edge(ident[i].1, ident[j].1) {
                return Err(GraphError::NotAClique("right graph"));
            }
        }
    }
    let clique: Vec<usize> = ident.iter().map(|&(l, _)| l).collect();
    for &(u, v) in drop {
        if !(clique.contains(&u) && clique.contains(&v) && g1.has_edge(u, v)) {
            return Err(GraphError::DropOutsideClique(u, v));
        }
    }
    let mut map = vec![usize::MAX; g2.n];
    for &(l, r) in ident {
        map[r] = l;
    }
    let mut next = g1.n;
    for r in 0..g2.n {
        if map[r] == usize::MAX {
            map[r] = next;
            next += 1;
        }
    }
    let mut edges: Vec<(usize, usize)> = g1.edges.clone();
    for &(u, v) in &g2.edges {
        let (a, b) = (map[u].min(map[v]), map[u].max(map[v]));
        if !edges.contains(&(a, b)) {
            edges.push((a, b));
        }
    }
    let dropped: Vec<(usize, usize)> = drop.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    edges.retain(|e| !dropped.contains(e));
    let glued = Graph::new(next, &edges)?;
    Ok((glued, map))
}

/// The Wagner graph: C_8 plus the four antipodal chords.
pub fn wagner_v8() -> Graph {
    let mut edges: Vec<(usize, usize)> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
    for i in 0..4 {
        edges.push((i, i + 4));
    }
    Graph::new(8, &edges).expect("V8 is a valid simple graph")
}

/// Degeneracy ordering by repeated minimum-degree removal (smallest
/// index breaks ties); returns the order reversed together with the
/// coloring number col(G) = degeneracy + 1.
pub fn degeneracy_order(g: &Graph) -> (Vec<usize>, usize) {
    let adj = g.adjacency();
    let mut deg: Vec<usize> = (0..g.n).map(|v| adj[v].len()).collect();
    let mut removed = vec![false; g.n];
    let mut peel = Vec::with_capacity(g.n);
    let mut degeneracy = 0;
    for _ in 0..g.n {
        let v = (0..g.n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (deg[v], v))
            .unwrap();
        degeneracy = degeneracy.max(deg[v]);
        removed[v] = true;
        peel.push(v);
        for &w in &adj[v] {
            if !removed[w] {
                deg[w] -= 1;
            }
        }
    }
    peel.reverse();
    let col = if g.n == 0 { 0 } else { degeneracy + 1 };
    (peel, col)
}

/// Result of parsing a graph JSON document.
#[derive(Debug, Clone)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub embedding: Option<PlaneEmbedding>,
    pub field: Field,
    pub decoration: Option<Decoration>,
    pub labeling: Option<EdgeLabeling>,
}

#[derive(Deserialize)]
struct EmbeddingDoc {
    rotations: Vec<Vec<usize>>,
    outer_face: Vec<usize>,
}

#[derive(Deserialize)]
struct GraphDoc {
    n: usize,
    edges: Vec<serde_json::Value>,
    #[serde(default)]
    field: Option<FieldSpec>,
    #[serde(default)]
    embedding: Option<EmbeddingDoc>,
}

/// Parses the graph JSON grammar. Edge entries are either `[u, v]`
/// pairs or objects `{"u":.., "v":.., "a":.., "b":.., "label":..}`
/// with defaults a=1, b=-1, label=0. The field defaults to Q.
pub fn parse_graph(text: &str) -> Result<ParsedGraph, GraphError> {
    let doc: GraphDoc =
        serde_json::from_str(text).map_err(|e| GraphError::MalformedInput(e.to_string()))?;
    let field = match &doc.field {
        Some(spec) => Field::make(spec)?,
        None => Field::Rationals,
    };
    let mut edges = Vec::with_capacity(doc.edges.len());
    let mut dec_entries = Vec::new();
    let mut lab_entries = Vec::new();
    let mut any_dec = false;
    let mut any_lab = false;
    for item in &doc.edges {
        match item {
            serde_json::Value::Array(pair) if pair.len() == 2 => {
                let u = pair[0]
                    .as_u64()
                    .ok_or_else(|| GraphError::MalformedInput(item.to_string()))?
                    as usize;
                let v = pair[1]
                    .as_u64()
                    .ok_or_else(|| GraphError::MalformedInput(item.to_string()))?
                    as usize;
                edges.push((u, v));
                dec_entries.push((u, v, field.from_int(1), field.from_int(-1)));
                lab_entries.push((u, v, field.zero()));
            }
            serde_json::Value::Object(obj) => {
                let u = obj
                    .get("u")
                    .and_then(|x| x.as_u64())
                    .ok_or_else(|| GraphError::MalformedInput(item.to_string()))?
                    as usize;
                let v = obj
                    .get("v")
                    .and_then(|x| x.as_u64())
                    .ok_or_else(|| GraphError::MalformedInput(item.to_string()))?
                    as usize;
                edges.push((u, v));
                let a = match obj.get("a") {
                    Some(x) => {
                        any_dec = true;
                        field.element_from_json(x)?
                    }
                    None => field.from_int(1),
                };
                let b = match obj.get("b") {
                    Some(x) => {
                        any_dec = true;
                        field.element_from_json(x)?
                    }
                    None => field.from_int(-1),
                };
                let label = match obj.get("label") {
                    Some(x) => {
                        any_lab = true;
                        field.element_from_json(x)?
                    }
                    None => field.zero(),
                };
                dec_entries.push((u, v, a, b));
                lab_entries.push((u, v, label));
            }
            _ => return Err(GraphError::MalformedInput(item.to_string())),
        }
    }
    let graph = Graph::new(doc.n, &edges)?;
    let decoration = if any_dec {
        Some(Decoration::from_entries(&field, &graph, &dec_entries)?)
    } else {
        None
    };
    let labeling = if any_lab {
        Some(EdgeLabeling::from_entries(&graph, &lab_entries)?)
    } else {
        None
    };
    let embedding = doc.embedding.map(|e| PlaneEmbedding {
        rotations: e.rotations,
        outer_face: e.outer_face,
    });
    Ok(ParsedGraph {
        graph,
        embedding,
        field,
        decoration,
        labeling,
    })
}

/// K4 drawn with outer triangle (0, 1, 2) and interior vertex 3.
pub fn k4_embedded() -> (Graph, PlaneEmbedding) {
    let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    let emb = PlaneEmbedding {
        rotations: vec![vec![1, 3, 2], vec![2, 3, 0], vec![0, 3, 1], vec![0, 1, 2]],
        outer_face: vec![0, 1, 2],
    };
    (g, emb)
}

/// K3 with outer face (0, 1, 2).
pub fn k3_embedded() -> (Graph, PlaneEmbedding) {
    let g = Graph::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
    let emb = PlaneEmbedding {
        rotations: vec![vec![1, 2], vec![2, 0], vec![0, 1]],
        outer_face: vec![0, 1, 2],
    };
    (g, emb)
}
