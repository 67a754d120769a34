//! Constructive non-vanishing monomial certificates: the
//! near-triangulation recursion, triangle deletion, the Wagner graph,
//! clique-sum assembly, and the planar matching search. Every
//! certificate's coefficient is re-verified by the independent
//! coefficient oracle before it is returned.

use crate::algebra::{Field, FieldElement};
use crate::graphs::{wagner_v8, Graph, GraphError, NearTriangulation};
use crate::polys::{
    coeff_of_monomial, expand_capped, Cap, Decoration, FactorList, PolyError,
};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertifyError {
    #[error("edge ({0}, {1}) is not on the boundary cycle")]
    NotBoundaryEdge(usize, usize),
    #[error("vertices {0:?} do not form a triangle")]
    NotATriangle(Vec<usize>),
    #[error("triangle is not facial and no sub-triangulation split was supplied")]
    MissingSplit,
    #[error("supplied split is inconsistent: {0}")]
    InvalidSplit(String),
    #[error("({0}, {1}) is not an edge of V8")]
    NotV8Edge(usize, usize),
    #[error("clique-sum certificate bookkeeping failed: {0}")]
    GlueMismatch(String),
    #[error("no matching within limits certifies the degree bound")]
    SearchExhausted,
    #[error("constructed monomial has zero coefficient; this signals a bug")]
    VerificationFailed,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TraceCase {
    Chord,
    BoundaryTriangle,
    SpecialMonomial,
    NoSpecial,
    TriangleDeletion,
    V8,
    CliqueGlue,
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceStep {
    pub case: TraceCase,
    pub vertices: Vec<usize>,
}

/// A non-vanishing monomial with its verified coefficient and the
/// derivation steps that produced it.
#[derive(Debug, Clone)]
pub struct MonomialCertificate {
    pub monomial: Vec<u32>,
    pub coefficient: FieldElement,
    pub trace: Vec<TraceStep>,
}

impl MonomialCertificate {
    pub fn to_json(&self, field: &Field) -> serde_json::Value {
        serde_json::json!({
            "monomial": self.monomial,
            "coefficient": field.format_element(&self.coefficient),
            "trace": self.trace,
        })
    }

    pub fn max_exponent(&self) -> u32 {
        self.monomial.iter().copied().max().unwrap_or(0)
    }
}

/// Working form of a triangulated disk: rotations keyed by (global)
/// vertex id plus the outer cycle in face-traversal order.
#[derive(Debug, Clone)]
struct Disk {
    rot: BTreeMap<usize, Vec<usize>>,
    boundary: Vec<usize>,
}

impl Disk {
    fn from_near_triangulation(nt: &NearTriangulation) -> Disk {
        let rot = nt
            .embedding
            .rotations
            .iter()
            .enumerate()
            .map(|(v, r)| (v, r.clone()))
            .collect();
        Disk { rot, boundary: nt.boundary.clone() }
    }

    fn remapped(nt: &NearTriangulation, map: &[usize]) -> Disk {
        let rot = nt
            .embedding
            .rotations
            .iter()
            .enumerate()
            .map(|(v, r)| (map[v], r.iter().map(|&w| map[w]).collect()))
            .collect();
        Disk {
            rot,
            boundary: nt.boundary.iter().map(|&v| map[v]).collect(),
        }
    }

    fn vertex_count(&self) -> usize {
        self.rot.len()
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rot.get(&u).is_some_and(|r| r.contains(&v))
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (&u, r) in &self.rot {
            for &w in r {
                if u < w {
                    out.push((u, w));
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn interior(&self) -> Vec<usize> {
        self.rot
            .keys()
            .copied()
            .filter(|v| !self.boundary.contains(v))
            .collect()
    }

    /// Directed-face orbits under the successor rule.
    fn trace_faces(&self) -> Vec<Vec<usize>> {
        let mut visited: BTreeMap<(usize, usize), bool> = BTreeMap::new();
        for (&u, r) in &self.rot {
            for &w in r {
                visited.insert((u, w), false);
            }
        }
        let darts: Vec<(usize, usize)> = visited.keys().copied().collect();
        let mut faces = Vec::new();
        for start in darts {
            if visited[&start] {
                continue;
            }
            let mut face = Vec::new();
            let (mut u, mut v) = start;
            loop {
                visited.insert((u, v), true);
                face.push(u);
                let r = &self.rot[&v];
                let i = r.iter().position(|&w| w == u).expect("dart endpoint in rotation");
                let w = r[(i + 1) % r.len()];
                u = v;
                v = w;
                if (u, v) == start {
                    break;
                }
            }
            faces.push(face);
        }
        faces
    }

    /// Lexicographically first chord of the boundary cycle, if any.
    fn find_chord(&self) -> Option<(usize, usize)> {
        let b = &self.boundary;
        let len = b.len();
        let mut best: Option<(usize, usize)> = None;
        for i in 0..len {
            for j in i + 1..len {
                let consecutive = j == i + 1 || (i == 0 && j == len - 1);
                if consecutive {
                    continue;
                }
                if self.adjacent(b[i], b[j]) {
                    let pair = (b[i].min(b[j]), b[i].max(b[j]));
                    if best.is_none() || pair < best.unwrap() {
                        best = Some(pair);
                    }
                }
            }
        }
        best
    }

    /// Removes a vertex from the disk, dropping it from every rotation.
    fn remove_vertex(&mut self, v: usize) {
        self.rot.remove(&v);
        for r in self.rot.values_mut() {
            r.retain(|&w| w != v);
        }
    }

    /// Restriction to a vertex subset; cyclic orders are preserved.
    fn induced(&self, keep: &[usize], boundary: Vec<usize>) -> Disk {
        let rot = self
            .rot
            .iter()
            .filter(|(v, _)| keep.contains(v))
            .map(|(&v, r)| (v, r.iter().copied().filter(|w| keep.contains(w)).collect()))
            .collect();
        Disk { rot, boundary }
    }
}

fn factors_for_edges(
    field: &Field,
    dec: &Decoration,
    nvars: usize,
    edges: &[(usize, usize)],
) -> Result<FactorList, CertifyError> {
    let mut factors = Vec::with_capacity(edges.len());
    for &(u, v) in edges {
        let (a, b) = dec
            .get(u, v)
            .ok_or(PolyError::MissingEdge(u, v))?
            .clone();
        factors.push(crate::polys::Factor {
            u,
            a,
            v,
            b,
            c: field.zero(),
        });
    }
    Ok(FactorList {
        field: field.clone(),
        nvars,
        factors,
    })
}

/// The near-triangulation recursion. `(x, y)` is a boundary edge with
/// x immediately preceding y in boundary orientation. Returns the
/// exponent vector of a nice monomial for D_{G-e}.
fn nice_rec(
    disk: &Disk,
    x: usize,
    y: usize,
    nvars: usize,
    field: &Field,
    dec: &Decoration,
    budget: usize,
    trace: &mut Vec<TraceStep>,
) -> Result<Vec<u32>, CertifyError> {
    if disk.vertex_count() == 3 {
        let w = *disk
            .rot
            .keys()
            .find(|&&v| v != x && v != y)
            .expect("K3 has a third vertex");
        let mut exps = vec![0u32; nvars];
        exps[w] = 2;
        return Ok(exps);
    }

    if let Some((w, z)) = disk.find_chord() {
        // Case 1: split along the chord; the part containing e recurses
        // on e, the other part on the chord itself.
        trace.push(TraceStep { case: TraceCase::Chord, vertices: vec![w, z] });
        let b = &disk.boundary;
        let pi = b.iter().position(|&v| v == w).unwrap();
        let pj = b.iter().position(|&v| v == z).unwrap();
        let (pi, pj) = (pi.min(pj), pi.max(pj));
        let arc1: Vec<usize> = b[pi..=pj].to_vec();
        let mut arc2: Vec<usize> = b[pj..].to_vec();
        arc2.extend_from_slice(&b[..=pi]);
        let contains_edge = |arc: &[usize]| {
            arc.windows(2).any(|p| p[0] == x && p[1] == y)
        };
        let (arc_e, arc_f) = if contains_edge(&arc1) {
            (arc1, arc2)
        } else if contains_edge(&arc2) {
            (arc2, arc1)
        } else {
            return Err(CertifyError::NotBoundaryEdge(x, y));
        };
        // components of the disk minus the chord endpoints determine
        // which interior vertices go with which arc
        let side_of = component_sides(disk, b[pi], b[pj]);
        let collect = |arc: &[usize]| -> Vec<usize> {
            let probe = arc[1..arc.len() - 1][0];
            let side = side_of[&probe];
            let mut verts: Vec<usize> = disk
                .rot
                .keys()
                .copied()
                .filter(|v| side_of.get(v) == Some(&side))
                .collect();
            verts.push(arc[0]);
            verts.push(arc[arc.len() - 1]);
            verts
        };
        let verts_e = collect(&arc_e);
        let verts_f = collect(&arc_f);
        let disk_e = disk.induced(&verts_e, arc_e);
        let disk_f = disk.induced(&verts_f, arc_f);
        let m1 = nice_rec(&disk_e, x, y, nvars, field, dec, budget, trace)?;
        // the second part is rooted at the chord itself, which closes
        // its boundary cycle (last -> first)
        let (fx, fy) = (*disk_f.boundary.last().unwrap(), disk_f.boundary[0]);
        let m2 = nice_rec(&disk_f, fx, fy, nvars, field, dec, budget, trace)?;
        let exps: Vec<u32> = m1.iter().zip(&m2).map(|(a, b)| a + b).collect();
        return Ok(exps);
    }

    // Case 2: no chord. v is the boundary neighbor of y other than x,
    // t the next boundary vertex after v.
    let b = &disk.boundary;
    let len = b.len();
    let py = b.iter().position(|&u| u == y).unwrap();
    let v = b[(py + 1) % len];
    let t = b[(py + 2) % len];
    // interior neighbors of v, ordered from y's side
    let rv = &disk.rot[&v];
    let deg = rv.len();
    let pos_y = rv.iter().position(|&u| u == y).unwrap();
    debug_assert_eq!(rv[(pos_y + 1) % deg], t, "boundary orientation mismatch");
    let mut xs = Vec::new();
    let mut p = (pos_y + deg - 1) % deg;
    while rv[p] != t {
        xs.push(rv[p]);
        p = (p + deg - 1) % deg;
    }

    let mut reduced = disk.clone();
    reduced.remove_vertex(v);
    let mut new_boundary = Vec::with_capacity(len - 1 + xs.len());
    for &u in b {
        if u == v {
            new_boundary.extend_from_slice(&xs);
        } else {
            new_boundary.push(u);
        }
    }
    reduced.boundary = new_boundary;

    if t == x {
        // Subcase 2.1: the boundary face is a triangle.
        trace.push(TraceStep { case: TraceCase::BoundaryTriangle, vertices: vec![v] });
        let m1 = nice_rec(&reduced, x, y, nvars, field, dec, budget, trace)?;
        let mut exps = m1;
        exps[v] += 2;
        for &xi in &xs {
            exps[xi] += 1;
        }
        return Ok(exps);
    }

    // Subcase 2.2: look for a special monomial in D_{G'-e} by capped
    // expansion; the cap tightens t to 1 and loosens at most one
    // interior neighbor of v to 3.
    if let Some((special, designated)) =
        find_special_monomial(&reduced, x, y, t, &xs, nvars, field, dec, budget)?
    {
        let mut vertices = vec![v, t];
        if let Some(d) = designated {
            vertices.push(d);
        }
        trace.push(TraceStep { case: TraceCase::SpecialMonomial, vertices });
        let mut exps = special;
        exps[v] += 1;
        exps[t] += 1;
        for &xi in &xs {
            exps[xi] += 1;
        }
        return Ok(exps);
    }

    // Subcase 2.3: no special monomial; reuse the nice monomial of the
    // reduced graph.
    trace.push(TraceStep { case: TraceCase::NoSpecial, vertices: vec![v] });
    let m1 = nice_rec(&reduced, x, y, nvars, field, dec, budget, trace)?;
    let mut exps = m1;
    exps[v] += 2;
    for &xi in &xs {
        exps[xi] += 1;
    }
    Ok(exps)
}

/// Labels every vertex other than w, z with its connected component of
/// the disk minus {w, z}.
fn component_sides(disk: &Disk, w: usize, z: usize) -> BTreeMap<usize, usize> {
    let mut side: BTreeMap<usize, usize> = BTreeMap::new();
    let mut next_label = 0;
    for &start in disk.rot.keys() {
        if start == w || start == z || side.contains_key(&start) {
            continue;
        }
        let label = next_label;
        next_label += 1;
        let mut stack = vec![start];
        side.insert(start, label);
        while let Some(u) = stack.pop() {
            for &nb in &disk.rot[&u] {
                if nb == w || nb == z || side.contains_key(&nb) {
                    continue;
                }
                side.insert(nb, label);
                stack.push(nb);
            }
        }
    }
    side
}

/// Capped expansion of D_{G'-e} filtered to the special-monomial shape:
/// degree 0 at x, y; at most 1 at t; at most 2 on other boundary
/// vertices except at most one interior neighbor of v allowed degree 3;
/// at most 4 in the interior. Returns the lexicographically smallest
/// qualifying monomial and the loosened index, if any attains 3.
#[allow(clippy::too_many_arguments)]
fn find_special_monomial(
    reduced: &Disk,
    x: usize,
    y: usize,
    t: usize,
    xs: &[usize],
    nvars: usize,
    field: &Field,
    dec: &Decoration,
    budget: usize,
) -> Result<Option<(Vec<u32>, Option<usize>)>, CertifyError> {
    let mut edges = reduced.edges();
    edges.retain(|&(a, b)| (a, b) != (x.min(y), x.max(y)));
    let factors = factors_for_edges(field, dec, nvars, &edges)?;
    let mut caps = vec![0u32; nvars];
    for &u in reduced.rot.keys() {
        caps[u] = 2;
    }
    for &u in &reduced.interior() {
        caps[u] = 4;
    }
    for &xi in xs {
        caps[xi] = 3;
    }
    caps[t] = 1;
    caps[x] = 0;
    caps[y] = 0;
    let expanded = expand_capped(&factors, &Cap::PerVar(caps), budget)?;
    for (exps, _) in &expanded.terms {
        let loose: Vec<usize> = xs.iter().copied().filter(|&xi| exps[xi] == 3).collect();
        if loose.len() <= 1 {
            return Ok(Some((exps.clone(), loose.first().copied())));
        }
    }
    Ok(None)
}

fn verify_certificate(
    factors: &FactorList,
    monomial: Vec<u32>,
    trace: Vec<TraceStep>,
) -> Result<MonomialCertificate, CertifyError> {
    let coefficient = coeff_of_monomial(factors, &monomial);
    if factors.field.is_zero(&coefficient) {
        return Err(CertifyError::VerificationFailed);
    }
    Ok(MonomialCertificate { monomial, coefficient, trace })
}

fn locate_boundary_edge(
    boundary: &[usize],
    e: (usize, usize),
) -> Result<(usize, usize), CertifyError> {
    let len = boundary.len();
    for i in 0..len {
        let (a, b) = (boundary[i], boundary[(i + 1) % len]);
        if (a, b) == e || (b, a) == e {
            return Ok((a, b));
        }
    }
    Err(CertifyError::NotBoundaryEdge(e.0, e.1))
}

/// A nice monomial for (G, e): non-vanishing in D_{G-e} with degree 0
/// at the endpoints of e, at most 2 on the boundary, at most 4 inside.
pub fn nice_monomial(
    nt: &NearTriangulation,
    e: (usize, usize),
    field: &Field,
    dec: &Decoration,
    budget: usize,
) -> Result<MonomialCertificate, CertifyError> {
    let disk = Disk::from_near_triangulation(nt);
    let (x, y) = locate_boundary_edge(&disk.boundary, e)?;
    let mut trace = Vec::new();
    let exps = nice_rec(&disk, x, y, nt.graph.n, field, dec, budget, &mut trace)?;
    let mut edges = disk.edges();
    edges.retain(|&(a, b)| (a, b) != (x.min(y), x.max(y)));
    let factors = factors_for_edges(field, dec, nt.graph.n, &edges)?;
    verify_certificate(&factors, exps, trace)
}

/// A sub-triangulation of a split along a non-facial triangle, with the
/// local-to-global vertex map.
#[derive(Debug, Clone)]
pub struct SubTriangulation {
    pub nt: NearTriangulation,
    pub to_global: Vec<usize>,
}

/// Nice monomial of a triangulated disk whose outer face is the given
/// triangle, divided by the squared third vertex: a monomial of
/// D_{G-E(T)} with degree 0 on T and at most 4 elsewhere.
fn facial_triangle_exponents(
    disk: &Disk,
    face: &[usize],
    nvars: usize,
    field: &Field,
    dec: &Decoration,
    budget: usize,
    trace: &mut Vec<TraceStep>,
) -> Result<Vec<u32>, CertifyError> {
    let rooted = Disk { rot: disk.rot.clone(), boundary: face.to_vec() };
    let (x, y, v) = (face[0], face[1], face[2]);
    let mut exps = nice_rec(&rooted, x, y, nvars, field, dec, budget, trace)?;
    if exps[v] != 2 {
        // the nice monomial must pick v from both factors at v
        return Err(CertifyError::VerificationFailed);
    }
    exps[v] = 0;
    Ok(exps)
}

/// Certificate for D_{G-E(T)} where G is a full plane triangulation and
/// T any of its triangles. Non-facial triangles require the two
/// sub-triangulation embeddings.
pub fn triangle_deleted_monomial(
    tri: &NearTriangulation,
    t: [usize; 3],
    field: &Field,
    dec: &Decoration,
    splits: Option<(&SubTriangulation, &SubTriangulation)>,
    budget: usize,
) -> Result<MonomialCertificate, CertifyError> {
    let g = &tri.graph;
    for i in 0..3 {
        for j in i + 1..3 {
            if !g.has_edge(t[i], t[j]) {
                return Err(CertifyError::NotATriangle(t.to_vec()));
            }
        }
    }
    let disk = Disk::from_near_triangulation(tri);
    let mut tset = t.to_vec();
    tset.sort_unstable();
    let facial = disk
        .trace_faces()
        .into_iter()
        .find(|f| {
            let mut s = f.clone();
            s.sort_unstable();
            s == tset
        });
    let mut trace = vec![TraceStep { case: TraceCase::TriangleDeletion, vertices: t.to_vec() }];
    let exps = match facial {
        Some(face) => {
            facial_triangle_exponents(&disk, &face, g.n, field, dec, budget, &mut trace)?
        }
        None => {
            let (s1, s2) = splits.ok_or(CertifyError::MissingSplit)?;
            let mut total = vec![0u32; g.n];
            let mut seen_edges: Vec<(usize, usize)> = Vec::new();
            for sub in [s1, s2] {
                if sub.to_global.len() != sub.nt.graph.n {
                    return Err(CertifyError::InvalidSplit(
                        "vertex map length differs from sub-triangulation order".into(),
                    ));
                }
                let sub_disk = Disk::remapped(&sub.nt, &sub.to_global);
                let face = sub_disk
                    .trace_faces()
                    .into_iter()
                    .find(|f| {
                        let mut s = f.clone();
                        s.sort_unstable();
                        s == tset
                    })
                    .ok_or_else(|| {
                        CertifyError::InvalidSplit(
                            "triangle is not a face of a supplied split".into(),
                        )
                    })?;
                let local_dec = dec.clone();
                let part = facial_triangle_exponents(
                    &sub_disk,
                    &face,
                    g.n,
                    field,
                    &local_dec,
                    budget,
                    &mut trace,
                )?;
                for (tot, p) in total.iter_mut().zip(&part) {
                    *tot += p;
                }
                seen_edges.extend(sub_disk.edges());
            }
            seen_edges.sort_unstable();
            seen_edges.dedup();
            if seen_edges != g.edges {
                return Err(CertifyError::InvalidSplit(
                    "split edge sets do not cover the triangulation".into(),
                ));
            }
            total
        }
    };
    let tedges = [
        (t[0].min(t[1]), t[0].max(t[1])),
        (t[0].min(t[2]), t[0].max(t[2])),
        (t[1].min(t[2]), t[1].max(t[2])),
    ];
    let mut edges = g.edges.clone();
    edges.retain(|e| !tedges.contains(e));
    let factors = factors_for_edges(field, dec, g.n, &edges)?;
    verify_certificate(&factors, exps, trace)
}

/// First acyclic orientation (in bitmask order) of the given edge set
/// on 8 vertices with in-degree 0 on `zero_verts` and at most
/// `max_deg` elsewhere.
fn v8_orientation_search(
    edges: &[(usize, usize)],
    zero_verts: &[usize],
    max_deg: u32,
) -> Option<Vec<u32>> {
    let m = edges.len();
    'outer: for bits in 0..1u32 << m {
        let mut indeg = vec![0u32; 8];
        for (i, &(u, v)) in edges.iter().enumerate() {
            let head = if bits >> i & 1 == 1 { v } else { u };
            indeg[head] += 1;
        }
        for &z in zero_verts {
            if indeg[z] != 0 {
                continue 'outer;
            }
        }
        if indeg.iter().enumerate().any(|(v, &d)| !zero_verts.contains(&v) && d > max_deg) {
            continue;
        }
        // acyclicity by repeated source removal
        let mut deg = indeg.clone();
        let arcs: Vec<(usize, usize)> = edges
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| if bits >> i & 1 == 1 { (u, v) } else { (v, u) })
            .collect();
        let mut queue: Vec<usize> = (0..8).filter(|&v| deg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for &(tail, head) in &arcs {
                if tail == v {
                    deg[head] -= 1;
                    if deg[head] == 0 {
                        queue.push(head);
                    }
                }
            }
        }
        if seen == 8 {
            return Some(indeg);
        }
    }
    None
}

/// Certificate for D_{V8 - e}: degree 0 at both endpoints of e, at
/// most 3 elsewhere; the witnessing orientation is acyclic, so the
/// coefficient is a single product.
pub fn v8_rooted_monomial(
    e: (usize, usize),
    field: &Field,
    dec: &Decoration,
) -> Result<MonomialCertificate, CertifyError> {
    let v8 = wagner_v8();
    if !v8.has_edge(e.0, e.1) {
        return Err(CertifyError::NotV8Edge(e.0, e.1));
    }
    let mut edges = v8.edges.clone();
    edges.retain(|&(a, b)| (a, b) != (e.0.min(e.1), e.0.max(e.1)));
    let exps = v8_orientation_search(&edges, &[e.0, e.1], 3)
        .expect("V8 minus any edge admits such an acyclic orientation");
    let factors = factors_for_edges(field, dec, 8, &edges)?;
    let trace = vec![TraceStep { case: TraceCase::V8, vertices: vec![e.0, e.1] }];
    verify_certificate(&factors, exps, trace)
}

/// The one-vertex variant: degree 0 at x only, over all of E(V8).
pub fn v8_vertex_rooted_monomial(
    x: usize,
    field: &Field,
    dec: &Decoration,
) -> Result<MonomialCertificate, CertifyError> {
    let v8 = wagner_v8();
    let exps = v8_orientation_search(&v8.edges, &[x], 3)
        .expect("V8 admits an acyclic orientation with any fixed source");
    let factors = factors_for_edges(field, dec, 8, &v8.edges)?;
    let trace = vec![TraceStep { case: TraceCase::V8, vertices: vec![x] }];
    verify_certificate(&factors, exps, trace)
}

/// One leaf of a clique-sum composition.
#[derive(Debug, Clone)]
pub enum CliqueSumLeaf {
    Triangulation(NearTriangulation),
    V8,
}

impl CliqueSumLeaf {
    fn graph(&self) -> Graph {
        match self {
            CliqueSumLeaf::Triangulation(nt) => nt.graph.clone(),
            CliqueSumLeaf::V8 => wagner_v8(),
        }
    }
}

/// Glue step: identification pairs (running-graph vertex, new-leaf
/// vertex) and clique edges to drop, given in running-graph ids.
#[derive(Debug, Clone)]
pub struct GlueStep {
    pub ident: Vec<(usize, usize)>,
    pub drop: Vec<(usize, usize)>,
}

/// Left-to-right clique-sum composition: leaf 0 first, each further
/// leaf glued onto the running graph.
#[derive(Debug, Clone)]
pub struct CliqueSumTree {
    pub leaves: Vec<CliqueSumLeaf>,
    pub glues: Vec<GlueStep>,
}

impl CliqueSumTree {
    /// Composes the tree, returning the glued graph and each leaf's
    /// local-to-global vertex map.
    pub fn compose(&self) -> Result<(Graph, Vec<Vec<usize>>), GraphError> {
        assert_eq!(self.glues.len() + 1, self.leaves.len());
        let first = self.leaves[0].graph();
        let mut maps = vec![(0..first.n).collect::<Vec<usize>>()];
        let mut running = first;
        for (leaf, glue) in self.leaves[1..].iter().zip(&self.glues) {
            let (next, map) =
                crate::graphs::clique_sum(&running, &leaf.graph(), &glue.ident, &glue.drop)?;
            maps.push(map);
            running = next;
        }
        Ok((running, maps))
    }
}

/// Exhaustive capped-expansion fallback for one part: the smallest
/// monomial with degree 0 on the glue vertices and at most 4 elsewhere.
fn part_search(
    edges: &[(usize, usize)],
    zero_verts: &[usize],
    nvars: usize,
    field: &Field,
    dec: &Decoration,
    budget: usize,
) -> Result<Vec<u32>, CertifyError> {
    let factors = factors_for_edges(field, dec, nvars, edges)?;
    let mut caps = vec![4u32; nvars];
    for &z in zero_verts {
        caps[z] = 0;
    }
    let expanded = expand_capped(&factors, &Cap::PerVar(caps), budget)?;
    expanded
        .terms
        .keys()
        .next()
        .cloned()
        .ok_or_else(|| {
            CertifyError::GlueMismatch(
                "no part monomial avoids the glue vertices within degree 4".into(),
            )
        })
}

/// Certificate for D_G of the composed graph with every exponent at
/// most 4, built part by part: a rooted monomial of the first leaf,
/// then for each glued leaf a monomial avoiding the glue vertices.
pub fn clique_sum_monomial(
    tree: &CliqueSumTree,
    field: &Field,
    dec: &Decoration,
    budget: usize,
) -> Result<(Graph, MonomialCertificate), CertifyError> {
    let (composed, maps) = tree.compose()?;
    let n = composed.n;

    // contributed edge sets: each leaf's edges minus its glue clique
    // copy, with every dropped edge removed from the earliest part
    // containing it
    let mut contributed: Vec<Vec<(usize, usize)>> = Vec::with_capacity(tree.leaves.len());
    for (i, leaf) in tree.leaves.iter().enumerate() {
        let g = leaf.graph();
        let map = &maps[i];
        let glue_verts: Vec<usize> = if i == 0 {
            Vec::new()
        } else {
            tree.glues[i - 1].ident.iter().map(|&(l, _)| l).collect()
        };
        let mut edges: Vec<(usize, usize)> = g
            .edges
            .iter()
            .map(|&(u, v)| (map[u].min(map[v]), map[u].max(map[v])))
            .filter(|&(u, v)| !(glue_verts.contains(&u) && glue_verts.contains(&v)))
            .collect();
        edges.sort_unstable();
        contributed.push(edges);
    }
    for glue in &tree.glues {
        for &(u, v) in &glue.drop {
            let e = (u.min(v), u.max(v));
            let owner = contributed
                .iter()
                .position(|part| part.contains(&e))
                .ok_or_else(|| {
                    CertifyError::GlueMismatch(format!(
                        "dropped edge ({u}, {v}) owned by no part"
                    ))
                })?;
            contributed[owner].retain(|&x| x != e);
        }
    }
    {
        let mut union: Vec<(usize, usize)> =
            contributed.iter().flatten().copied().collect();
        union.sort_unstable();
        if union != composed.edges {
            return Err(CertifyError::GlueMismatch(
                "contributed edge sets do not partition the composed graph".into(),
            ));
        }
    }

    let mut total = vec![0u32; n];
    let mut trace = Vec::new();
    for (i, leaf) in tree.leaves.iter().enumerate() {
        let map = &maps[i];
        let glue_verts: Vec<usize> = if i == 0 {
            Vec::new()
        } else {
            tree.glues[i - 1].ident.iter().map(|&(l, _)| l).collect()
        };
        if i > 0 {
            trace.push(TraceStep { case: TraceCase::CliqueGlue, vertices: glue_verts.clone() });
        }
        let exps = match leaf {
            CliqueSumLeaf::V8 => {
                // search over local orientations, then remap
                let local_edges: Vec<(usize, usize)> = {
                    let inv: BTreeMap<usize, usize> =
                        map.iter().enumerate().map(|(l, &g)| (g, l)).collect();
                    contributed[i]
                        .iter()
                        .map(|&(u, v)| {
                            let (a, b) = (inv[&u], inv[&v]);
                            (a.min(b), a.max(b))
                        })
                        .collect()
                };
                let local_zero: Vec<usize> = {
                    let inv: BTreeMap<usize, usize> =
                        map.iter().enumerate().map(|(l, &g)| (g, l)).collect();
                    glue_verts.iter().map(|&g| inv[&g]).collect()
                };
                trace.push(TraceStep {
                    case: TraceCase::V8,
                    vertices: glue_verts.clone(),
                });
                let local = v8_orientation_search(&local_edges, &local_zero, 3)
                    .ok_or_else(|| {
                        CertifyError::GlueMismatch(
                            "no acyclic V8 orientation fits the glue constraints".into(),
                        )
                    })?;
                let mut exps = vec![0u32; n];
                for (l, &d) in local.iter().enumerate() {
                    exps[map[l]] = d;
                }
                exps
            }
            CliqueSumLeaf::Triangulation(nt) => triangulation_part_exponents(
                nt,
                map,
                &glue_verts,
                &contributed[i],
                n,
                field,
                dec,
                budget,
                &mut trace,
            )?,
        };
        // per-part verification: nonzero on the part's own factors
        let part_factors = factors_for_edges(field, dec, n, &contributed[i])?;
        if field.is_zero(&coeff_of_monomial(&part_factors, &exps)) {
            return Err(CertifyError::VerificationFailed);
        }
        for (tot, e) in total.iter_mut().zip(&exps) {
            *tot += e;
        }
    }
    if total.iter().any(|&d| d > 4) {
        return Err(CertifyError::VerificationFailed);
    }
    let factors = factors_for_edges(field, dec, n, &composed.edges)?;
    let cert = verify_certificate(&factors, total, trace)?;
    Ok((composed, cert))
}

/// Part exponents for a triangulation leaf. The constructive routes
/// (rooted nice monomial, edge-rooted nice monomial, facial triangle
/// deletion) cover the standard glue shapes; anything else falls back
/// to an exhaustive capped search over the part's factors.
#[allow(clippy::too_many_arguments)]
fn triangulation_part_exponents(
    nt: &NearTriangulation,
    map: &[usize],
    glue_verts: &[usize],
    contributed: &[(usize, usize)],
    nvars: usize,
    field: &Field,
    dec: &Decoration,
    budget: usize,
    trace: &mut Vec<TraceStep>,
) -> Result<Vec<u32>, CertifyError> {
    let disk = Disk::remapped(nt, map);
    let mapped_edges: Vec<(usize, usize)> = {
        let mut e = disk.edges();
        e.sort_unstable();
        e
    };
    let expected: Vec<(usize, usize)> = mapped_edges
        .iter()
        .copied()
        .filter(|&(u, v)| !(glue_verts.contains(&u) && glue_verts.contains(&v)))
        .collect();
    let canonical = expected == contributed;

    if canonical {
        match glue_verts.len() {
            0 => {
                // rooted leaf: nice monomial for the outer edge times
                // the rooted endpoint
                let (x, y) = (disk.boundary[0], disk.boundary[1]);
                let mut exps = nice_rec(&disk, x, y, nvars, field, dec, budget, trace)?;
                exps[x] += 1;
                return Ok(exps);
            }
            1 => {
                // pick a face at the glue vertex; the nice monomial for
                // that face edge times the co-endpoint avoids x
                let x = glue_verts[0];
                let face = disk
                    .trace_faces()
                    .into_iter()
                    .filter(|f| f.len() == 3)
                    .find(|f| f[0] == x || f[1] == x || f[2] == x)
                    .ok_or_else(|| {
                        CertifyError::GlueMismatch("glue vertex not on any face".into())
                    })?;
                let k = face.iter().position(|&v| v == x).unwrap();
                let rooted: Vec<usize> =
                    (0..3).map(|i| face[(k + i) % 3]).collect();
                let y = rooted[1];
                let rdisk = Disk { rot: disk.rot.clone(), boundary: rooted };
                let mut exps = nice_rec(&rdisk, x, y, nvars, field, dec, budget, trace)?;
                exps[y] += 1;
                return Ok(exps);
            }
            2 => {
                // nice monomial rooted at the glue edge
                let (x, y) = (glue_verts[0], glue_verts[1]);
                let face = disk
                    .trace_faces()
                    .into_iter()
                    .filter(|f| f.len() == 3)
                    .find(|f| f.contains(&x) && f.contains(&y))
                    .ok_or_else(|| {
                        CertifyError::GlueMismatch("glue edge not on any face".into())
                    })?;
                let rdisk = Disk { rot: disk.rot.clone(), boundary: face.clone() };
                let (fx, fy) = locate_boundary_edge(&face, (x, y))?;
                return nice_rec(&rdisk, fx, fy, nvars, field, dec, budget, trace);
            }
            3 => {
                let tset = {
                    let mut s = glue_verts.to_vec();
                    s.sort_unstable();
                    s
                };
                if let Some(face) = disk.trace_faces().into_iter().find(|f| {
                    let mut s = f.clone();
                    s.sort_unstable();
                    s == tset
                }) {
                    trace.push(TraceStep {
                        case: TraceCase::TriangleDeletion,
                        vertices: glue_verts.to_vec(),
                    });
                    return facial_triangle_exponents(
                        &disk, &face, nvars, field, dec, budget, trace,
                    );
                }
            }
            _ => unreachable!("clique size checked during composition"),
        }
    } else if glue_verts.is_empty() && expected.len() == contributed.len() + 1 {
        // a single dropped edge: root the nice monomial at it
        let dropped = expected
            .iter()
            .find(|e| !contributed.contains(e))
            .copied()
            .unwrap();
        if let Some(face) = disk
            .trace_faces()
            .into_iter()
            .filter(|f| f.len() == 3)
            .find(|f| f.contains(&dropped.0) && f.contains(&dropped.1))
        {
            let rdisk = Disk { rot: disk.rot.clone(), boundary: face.clone() };
            let (fx, fy) = locate_boundary_edge(&face, dropped)?;
            return nice_rec(&rdisk, fx, fy, nvars, field, dec, budget, trace);
        }
    }

    // non-facial glue triangle, or drops beyond the constructive
    // routes: exhaustive search over this part alone
    part_search(contributed, glue_verts, nvars, field, dec, budget)
}

/// Brute-force search over matchings in increasing size order for a
/// matching S with a top-degree monomial of D_{G-S} of max degree at
/// most 3.
pub fn find_matching_at3(
    g: &Graph,
    field: &Field,
    dec: &Decoration,
    limit: usize,
    budget: usize,
) -> Result<(Vec<(usize, usize)>, MonomialCertificate), CertifyError> {
    if g.n > limit {
        return Err(CertifyError::GlueMismatch(format!(
            "graph order {} exceeds the search limit {limit}",
            g.n
        )));
    }
    let m = g.m();
    for size in 0..=g.n / 2 {
        let mut indices: Vec<usize> = (0..size).collect();
        loop {
            if size == 0 || is_matching(g, &indices) {
                let s: Vec<(usize, usize)> = indices.iter().map(|&i| g.edges[i]).collect();
                let remaining: Vec<(usize, usize)> = g
                    .edges
                    .iter()
                    .copied()
                    .filter(|e| !s.contains(e))
                    .collect();
                let factors = factors_for_edges(field, dec, g.n, &remaining)?;
                let expanded = expand_capped(&factors, &Cap::Uniform(3), budget)?;
                if let Some(exps) = expanded.terms.keys().next().cloned() {
                    let cert = verify_certificate(&factors, exps, Vec::new())?;
                    return Ok((s, cert));
                }
            }
            if size == 0 || !next_combination(&mut indices, m) {
                break;
            }
        }
    }
    Err(CertifyError::SearchExhausted)
}

fn is_matching(g: &Graph, indices: &[usize]) -> bool {
    let mut used = vec![false; g.n];
    for &i in indices {
        let (u, v) = g.edges[i];
        if used[u] || used[v] {
            return false;
        }
        used[u] = true;
        used[v] = true;
    }
    true
}

fn next_combination(indices: &mut [usize], m: usize) -> bool {
    let k = indices.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if indices[i] < m - (k - i) {
            indices[i] += 1;
            for j in i + 1..k {
                indices[j] = indices[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{k3_embedded, k4_embedded, validate_near_triangulation};
    use crate::polys::Decoration;

    fn nt(g: &Graph, emb: &crate::graphs::PlaneEmbedding) -> NearTriangulation {
        validate_near_triangulation(g, emb).unwrap()
    }

    #[test]
    fn k3_nice_monomial_is_v_squared() {
        let f = Field::prime(7);
        let (g, emb) = k3_embedded();
        let t = nt(&g, &emb);
        let dec = Decoration::from_entries(
            &f,
            &g,
            &[
                (0, 1, f.from_int(1), f.from_int(6)),
                (0, 2, f.from_int(2), f.from_int(3)),
                (1, 2, f.from_int(4), f.from_int(5)),
            ],
        )
        .unwrap();
        let cert = nice_monomial(&t, (0, 1), &f, &dec, 100_000).unwrap();
        assert_eq!(cert.monomial, vec![0, 0, 2]);
        // b1 b2 = 3 * 5 = 15 = 1 mod 7
        assert_eq!(cert.coefficient, f.from_int(15));
    }

    #[test]
    fn k4_nice_monomial() {
        let f = Field::prime(5);
        let (g, emb) = k4_embedded();
        let t = nt(&g, &emb);
        let dec = Decoration::default_for(&f, &g);
        let cert = nice_monomial(&t, (0, 1), &f, &dec, 100_000).unwrap();
        // outer face (x, y, w) = (0, 1, 2), interior z = 3
        assert_eq!(cert.monomial, vec![0, 0, 2, 3]);
        assert!(!f.is_zero(&cert.coefficient));
        // cross-oracle: the capped expansion of D_{K4 - e} contains it
        let mut edges = g.edges.clone();
        edges.retain(|&e| e != (0, 1));
        let factors = factors_for_edges(&f, &dec, 4, &edges).unwrap();
        let all = expand_capped(&factors, &Cap::Uniform(4), 100_000).unwrap();
        let nice: Vec<&Vec<u32>> = all
            .terms
            .keys()
            .filter(|e| e[0] == 0 && e[1] == 0 && e[2] <= 2)
            .collect();
        assert!(nice.contains(&&cert.monomial));
    }

    #[test]
    fn non_boundary_edge_rejected() {
        let f = Field::prime(5);
        let (g, emb) = k4_embedded();
        let t = nt(&g, &emb);
        let dec = Decoration::default_for(&f, &g);
        let err = nice_monomial(&t, (0, 3), &f, &dec, 100_000).unwrap_err();
        assert_eq!(err, CertifyError::NotBoundaryEdge(0, 3));
    }

    #[test]
    fn k4_triangle_deletion() {
        let f = Field::prime(5);
        let (g, emb) = k4_embedded();
        let t = nt(&g, &emb);
        let dec = Decoration::default_for(&f, &g);
        let cert = triangle_deleted_monomial(&t, [0, 1, 2], &f, &dec, None, 100_000).unwrap();
        // only edges (0,3), (1,3), (2,3) remain; each must feed z = 3
        assert_eq!(cert.monomial, vec![0, 0, 0, 3]);
        assert!(!f.is_zero(&cert.coefficient));
    }

    #[test]
    fn non_triangle_rejected() {
        let f = Field::prime(5);
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let emb = crate::graphs::PlaneEmbedding {
            rotations: vec![vec![1, 3], vec![2, 0], vec![3, 1], vec![0, 2]],
            outer_face: vec![0, 1, 2, 3],
        };
        // bypass near-triangulation validation; triangle check fires first
        let fake = NearTriangulation {
            graph: g.clone(),
            embedding: emb,
            boundary: vec![0, 1, 2, 3],
            interior: vec![],
        };
        let dec = Decoration::default_for(&f, &g);
        let err = triangle_deleted_monomial(&fake, [0, 1, 2], &f, &dec, None, 100_000).unwrap_err();
        assert_eq!(err, CertifyError::NotATriangle(vec![0, 1, 2]));
    }

    #[test]
    fn v8_rooted_cycle_edge() {
        let f = Field::prime(5);
        let dec = Decoration::default_for(&f, &wagner_v8());
        let cert = v8_rooted_monomial((0, 1), &f, &dec).unwrap();
        assert_eq!(cert.monomial.iter().sum::<u32>(), 11);
        assert_eq!(cert.monomial[0], 0);
        assert_eq!(cert.monomial[1], 0);
        assert!(cert.max_exponent() <= 3);
        // acyclic orientation: multiplicity one, so the coefficient is
        // a unit under the default decoration
        assert!(cert.coefficient == f.one() || cert.coefficient == f.from_int(-1));
    }

    #[test]
    fn v8_rooted_diagonal() {
        let f = Field::Rationals;
        let dec = Decoration::default_for(&f, &wagner_v8());
        let cert = v8_rooted_monomial((0, 4), &f, &dec).unwrap();
        assert_eq!(cert.monomial[0], 0);
        assert_eq!(cert.monomial[4], 0);
        assert!(cert.max_exponent() <= 3);
    }

    #[test]
    fn v8_non_edge_rejected() {
        let f = Field::prime(5);
        let dec = Decoration::default_for(&f, &wagner_v8());
        assert_eq!(
            v8_rooted_monomial((0, 2), &f, &dec).unwrap_err(),
            CertifyError::NotV8Edge(0, 2)
        );
    }

    #[test]
    fn single_leaf_clique_sum() {
        let f = Field::prime(5);
        let (g, emb) = k4_embedded();
        let t = nt(&g, &emb);
        let tree = CliqueSumTree {
            leaves: vec![CliqueSumLeaf::Triangulation(t)],
            glues: vec![],
        };
        let dec = Decoration::default_for(&f, &g);
        let (composed, cert) = clique_sum_monomial(&tree, &f, &dec, 1_000_000).unwrap();
        assert_eq!(composed, g);
        assert!(cert.max_exponent() <= 4);
    }

    #[test]
    fn k4_glued_with_v8_on_edge() {
        let f = Field::prime(7);
        let (g, emb) = k4_embedded();
        let t = nt(&g, &emb);
        let tree = CliqueSumTree {
            leaves: vec![
                CliqueSumLeaf::Triangulation(t),
                CliqueSumLeaf::V8,
            ],
            glues: vec![GlueStep { ident: vec![(0, 0), (1, 1)], drop: vec![] }],
        };
        let (composed, _) = tree.compose().unwrap();
        let dec = Decoration::default_for(&f, &composed);
        let (composed, cert) = clique_sum_monomial(&tree, &f, &dec, 1_000_000).unwrap();
        assert_eq!(composed.n, 4 + 8 - 2);
        assert!(cert.max_exponent() <= 4);
        // glued vertices carry degree only from the K4 side
        assert!(cert.monomial[0] <= 2 && cert.monomial[1] <= 2);
        assert!(!f.is_zero(&cert.coefficient));
    }

    #[test]
    fn oversized_glue_rejected() {
        let (g, emb) = k4_embedded();
        let t = nt(&g, &emb);
        let tree = CliqueSumTree {
            leaves: vec![
                CliqueSumLeaf::Triangulation(t.clone()),
                CliqueSumLeaf::Triangulation(t),
            ],
            glues: vec![GlueStep {
                ident: vec![(0, 0), (1, 1), (2, 2), (3, 3)],
                drop: vec![],
            }],
        };
        assert!(matches!(tree.compose(), Err(GraphError::MapTooLarge(4))));
    }

    #[test]
    fn matching_search_examples() {
        let f = Field::Rationals;
        let (k4, _) = k4_embedded();
        let dec = Decoration::default_for(&f, &k4);
        let (s, cert) = find_matching_at3(&k4, &f, &dec, 10, 1_000_000).unwrap();
        assert!(s.is_empty()); // an_number(P_K4) = 3 already
        assert!(cert.max_exponent() <= 3);

        let empty = Graph::new(3, &[]).unwrap();
        let dec = Decoration::default_for(&f, &empty);
        let (s, _) = find_matching_at3(&empty, &f, &dec, 10, 1_000_000).unwrap();
        assert!(s.is_empty());

        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let dec = Decoration::default_for(&f, &c4);
        let (s, cert) = find_matching_at3(&c4, &f, &dec, 10, 1_000_000).unwrap();
        assert!(s.is_empty());
        assert!(cert.max_exponent() <= 3);
    }
}
