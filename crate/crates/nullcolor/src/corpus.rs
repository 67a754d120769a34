//! Seeded random instance generators: plane triangulations by iterated
//! vertex insertion, near-triangulations from triangulated polygons,
//! and random decorations, labelings, and lists. Every generator is a
//! pure function of its RNG, so a seed pins the whole corpus.

use crate::algebra::{Field, FieldElement};
use crate::coloring::ListAssignment;
use crate::graphs::{
    k3_embedded, validate_near_triangulation, Graph, NearTriangulation, PlaneEmbedding,
};
use crate::polys::{Decoration, EdgeLabeling, Orientation};
use rand::Rng;

/// Splits the directed face [p, q, r] into three by a new vertex c.
fn insert_into_face(rotations: &mut Vec<Vec<usize>>, face: &[usize]) -> usize {
    let (p, q, r) = (face[0], face[1], face[2]);
    let c = rotations.len();
    // new orbits (p q c), (q r c), (r p c): c goes right after the
    // incoming neighbor in each old rotation
    for (u, v) in [(p, q), (q, r), (r, p)] {
        let pos = rotations[v].iter().position(|&w| w == u).unwrap();
        rotations[v].insert(pos + 1, c);
    }
    rotations.push(vec![p, r, q]);
    c
}

fn faces_of(rotations: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = rotations.len();
    let mut visited: std::collections::BTreeSet<(usize, usize)> =
        std::collections::BTreeSet::new();
    let mut faces = Vec::new();
    for u in 0..n {
        for &v in &rotations[u] {
            if visited.contains(&(u, v)) {
                continue;
            }
            let mut face = Vec::new();
            let (mut a, mut b) = (u, v);
            loop {
                visited.insert((a, b));
                face.push(a);
                let r = &rotations[b];
                let i = r.iter().position(|&w| w == a).unwrap();
                let w = r[(i + 1) % r.len()];
                a = b;
                b = w;
                if (a, b) == (u, v) {
                    break;
                }
            }
            faces.push(face);
        }
    }
    faces
}

fn graph_of(rotations: &[Vec<usize>]) -> Graph {
    let mut edges = Vec::new();
    for (u, r) in rotations.iter().enumerate() {
        for &v in r {
            if u < v {
                edges.push((u, v));
            }
        }
    }
    Graph::new(rotations.len(), &edges).expect("rotation system yields a simple graph")
}

/// Random plane triangulation on n >= 3 vertices: start from a
/// triangle and insert each new vertex into a uniformly random inner
/// face. The outer face stays (0, 1, 2).
pub fn random_triangulation(n: usize, rng: &mut impl Rng) -> NearTriangulation {
    assert!(n >= 3);
    let (_, emb) = k3_embedded();
    let mut rotations = emb.rotations.clone();
    let outer = emb.outer_face.clone();
    while rotations.len() < n {
        let inner: Vec<Vec<usize>> = faces_of(&rotations)
            .into_iter()
            .filter(|f| {
                let mut s = f.clone();
                s.sort_unstable();
                let mut o = outer.clone();
                o.sort_unstable();
                !(s == o && is_outer_orbit(f, &rotations, &outer))
            })
            .collect();
        let face = &inner[rng.gen_range(0..inner.len())];
        insert_into_face(&mut rotations, face);
    }
    let g = graph_of(&rotations);
    let embedding = PlaneEmbedding {
        rotations,
        outer_face: outer,
    };
    validate_near_triangulation(&g, &embedding).expect("generated triangulation is valid")
}

/// The outer orbit is the one traced from the outer face's first dart.
fn is_outer_orbit(face: &[usize], rotations: &[Vec<usize>], outer: &[usize]) -> bool {
    // trace the orbit containing the dart (outer[0], outer[1]) once
    let start = (outer[0], outer[1]);
    let mut orbit = Vec::new();
    let (mut a, mut b) = start;
    loop {
        orbit.push(a);
        let r = &rotations[b];
        let i = r.iter().position(|&w| w == a).unwrap();
        let w = r[(i + 1) % r.len()];
        a = b;
        b = w;
        if (a, b) == start {
            break;
        }
    }
    // same orbit up to rotation?
    face.len() == orbit.len()
        && (0..orbit.len()).any(|s| (0..orbit.len()).all(|i| face[i] == orbit[(s + i) % orbit.len()]))
}

/// Recursive random triangulation of the polygon vs[0..len], where
/// consecutive entries (and the pair (first, last)) are edges.
fn triangulate_polygon(vs: &[usize], chords: &mut Vec<(usize, usize)>, rng: &mut impl Rng) {
    if vs.len() < 3 {
        return;
    }
    let last = vs.len() - 1;
    let m = rng.gen_range(1..last);
    if m > 1 {
        chords.push((vs[0], vs[m]));
    }
    if m < last - 1 {
        chords.push((vs[m], vs[last]));
    }
    triangulate_polygon(&vs[..=m], chords, rng);
    triangulate_polygon(&vs[m..], chords, rng);
}

/// Random near-triangulation: a triangulated convex polygon with
/// `boundary` vertices and n - boundary vertices inserted into random
/// inner faces.
pub fn random_near_triangulation(
    n: usize,
    boundary: usize,
    rng: &mut impl Rng,
) -> NearTriangulation {
    assert!((3..=n).contains(&boundary));
    let b = boundary;
    let cycle: Vec<usize> = (0..b).collect();
    let mut edges: Vec<(usize, usize)> = (0..b).map(|i| (i, (i + 1) % b)).collect();
    let mut chords = Vec::new();
    triangulate_polygon(&cycle, &mut chords, rng);
    edges.extend(chords);
    // convex position: the rotation at i is the neighbors in cyclic
    // order starting just after i
    let mut rotations: Vec<Vec<usize>> = (0..b)
        .map(|i| {
            let mut nbrs: Vec<usize> = edges
                .iter()
                .filter_map(|&(u, v)| {
                    if u == i {
                        Some(v)
                    } else if v == i {
                        Some(u)
                    } else {
                        None
                    }
                })
                .collect();
            nbrs.sort_by_key(|&j| (j + b - i) % b);
            nbrs
        })
        .collect();
    // the outer face is the polygon orbit of length b; for b = 3 any
    // orbit works
    let outer = faces_of(&rotations)
        .into_iter()
        .find(|f| f.len() == b && {
            let mut s = f.clone();
            s.sort_unstable();
            s == cycle
        })
        .expect("polygon orbit exists");
    while rotations.len() < n {
        let inner: Vec<Vec<usize>> = faces_of(&rotations)
            .into_iter()
            .filter(|f| f.len() == 3 && !is_outer_orbit(f, &rotations, &outer))
            .collect();
        let face = &inner[rng.gen_range(0..inner.len())];
        insert_into_face(&mut rotations, face);
    }
    let g = graph_of(&rotations);
    let embedding = PlaneEmbedding {
        rotations,
        outer_face: outer,
    };
    validate_near_triangulation(&g, &embedding).expect("generated near-triangulation is valid")
}

/// A random element; uniform for finite fields, a small integer for
/// the rationals.
pub fn random_element(field: &Field, rng: &mut impl Rng) -> FieldElement {
    match field.elements() {
        Ok(elems) => elems[rng.gen_range(0..elems.len())].clone(),
        Err(_) => field.from_int(rng.gen_range(-20..=20)),
    }
}

fn random_nonzero(field: &Field, rng: &mut impl Rng) -> FieldElement {
    loop {
        let x = random_element(field, rng);
        if !field.is_zero(&x) {
            return x;
        }
    }
}

pub fn random_decoration(field: &Field, g: &Graph, rng: &mut impl Rng) -> Decoration {
    let entries: Vec<(usize, usize, FieldElement, FieldElement)> = g
        .edges
        .iter()
        .map(|&(u, v)| (u, v, random_nonzero(field, rng), random_nonzero(field, rng)))
        .collect();
    Decoration::from_entries(field, g, &entries).expect("random entries are nonzero")
}

pub fn random_labeling(field: &Field, g: &Graph, rng: &mut impl Rng) -> EdgeLabeling {
    let entries: Vec<(usize, usize, FieldElement)> = g
        .edges
        .iter()
        .map(|&(u, v)| (u, v, random_element(field, rng)))
        .collect();
    EdgeLabeling::from_entries(g, &entries).expect("entries cover the graph")
}

/// Random lists of the given size drawn without replacement from a
/// finite field.
pub fn random_lists(
    field: &Field,
    n: usize,
    size: usize,
    rng: &mut impl Rng,
) -> ListAssignment {
    let elems = field.elements().expect("random lists need a finite field");
    assert!(size >= 1 && size <= elems.len());
    let lists = (0..n)
        .map(|_| {
            let mut pool = elems.clone();
            let mut list = Vec::with_capacity(size);
            for _ in 0..size {
                list.push(pool.swap_remove(rng.gen_range(0..pool.len())));
            }
            list
        })
        .collect();
    ListAssignment { lists }
}

pub fn random_orientation(g: &Graph, rng: &mut impl Rng) -> Orientation {
    Orientation {
        toward_max: (0..g.m()).map(|_| rng.gen()).collect(),
    }
}
