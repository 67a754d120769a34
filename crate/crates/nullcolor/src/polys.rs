//! Products of affine edge factors: the implicit form of graph
//! polynomials, their capped sparse expansion, and coefficient queries
//! via a depth-first search over factor choices.

use crate::algebra::{Field, FieldElement};
use crate::graphs::Graph;
use std::collections::{BTreeMap, HashMap};

pub const DEFAULT_EXPANSION_BUDGET: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("decoration entry for edge ({0}, {1}) is zero")]
    ZeroDecoration(usize, usize),
    #[error("edge ({0}, {1}) has no decoration or label entry")]
    MissingEdge(usize, usize),
    #[error("monomial budget of {0} exceeded during expansion")]
    BudgetExceeded(usize),
}

/// Per-edge pair (a_e, b_e) of nonzero field elements; a_e multiplies
/// the smaller-indexed endpoint by default.
#[derive(Debug, Clone)]
pub struct Decoration {
    pairs: BTreeMap<(usize, usize), (FieldElement, FieldElement)>,
}

impl Decoration {
    pub fn from_entries(
        field: &Field,
        graph: &Graph,
        entries: &[(usize, usize, FieldElement, FieldElement)],
    ) -> Result<Decoration, PolyError> {
        let mut pairs = BTreeMap::new();
        for (u, v, a, b) in entries {
            if field.is_zero(a) || field.is_zero(b) {
                return Err(PolyError::ZeroDecoration(*u, *v));
            }
            // a stays attached to u even if the pair is stored flipped
            if u < v {
                pairs.insert((*u, *v), (a.clone(), b.clone()));
            } else {
                pairs.insert((*v, *u), (b.clone(), a.clone()));
            }
        }
        for &(u, v) in &graph.edges {
            if !pairs.contains_key(&(u, v)) {
                return Err(PolyError::MissingEdge(u, v));
            }
        }
        Ok(Decoration { pairs })
    }

    /// The default decoration a=1, b=-1 realizing the plain graph
    /// polynomial.
    pub fn default_for(field: &Field, graph: &Graph) -> Decoration {
        let pairs = graph
            .edges
            .iter()
            .map(|&(u, v)| ((u, v), (field.from_int(1), field.from_int(-1))))
            .collect();
        Decoration { pairs }
    }

    pub fn get(&self, u: usize, v: usize) -> Option<&(FieldElement, FieldElement)> {
        self.pairs.get(&(u.min(v), u.max(v)))
    }

    pub fn covers(&self, graph: &Graph) -> bool {
        graph.edges.iter().all(|&(u, v)| self.pairs.contains_key(&(u, v)))
    }

    /// Decoration restricted and renamed through a vertex map
    /// (local index -> global index), for subgraph certificates.
    pub fn remap(&self, map: &[usize]) -> Decoration {
        let mut pairs = BTreeMap::new();
        for (&(u, v), (a, b)) in &self.pairs {
            let (gu, gv) = (map[u], map[v]);
            if gu < gv {
                pairs.insert((gu, gv), (a.clone(), b.clone()));
            } else {
                pairs.insert((gv, gu), (b.clone(), a.clone()));
            }
        }
        Decoration { pairs }
    }
}

/// Per-edge constant term of the labeled polynomial.
#[derive(Debug, Clone)]
pub struct EdgeLabeling {
    labels: BTreeMap<(usize, usize), FieldElement>,
}

impl EdgeLabeling {
    pub fn from_entries(
        graph: &Graph,
        entries: &[(usize, usize, FieldElement)],
    ) -> Result<EdgeLabeling, PolyError> {
        let mut labels = BTreeMap::new();
        for (u, v, l) in entries {
            labels.insert((*u.min(v), *u.max(v)), l.clone());
        }
        for &(u, v) in &graph.edges {
            if !labels.contains_key(&(u, v)) {
                return Err(PolyError::MissingEdge(u, v));
            }
        }
        Ok(EdgeLabeling { labels })
    }

    pub fn zero_for(field: &Field, graph: &Graph) -> EdgeLabeling {
        let labels = graph
            .edges
            .iter()
            .map(|&(u, v)| ((u, v), field.zero()))
            .collect();
        EdgeLabeling { labels }
    }

    pub fn get(&self, u: usize, v: usize) -> Option<&FieldElement> {
        self.labels.get(&(u.min(v), u.max(v)))
    }
}

/// One affine factor a x_u + b x_v + c.
#[derive(Debug, Clone)]
pub struct Factor {
    pub u: usize,
    pub a: FieldElement,
    pub v: usize,
    pub b: FieldElement,
    pub c: FieldElement,
}

/// An ordered product of affine factors over a fixed field.
#[derive(Debug, Clone)]
pub struct FactorList {
    pub field: Field,
    pub nvars: usize,
    pub factors: Vec<Factor>,
}

impl FactorList {
    pub fn homogeneous(&self) -> bool {
        self.factors.iter().all(|f| self.field.is_zero(&f.c))
    }

    /// Same factors with constants removed: the top-degree part of the
    /// expansion (the labeled polynomial splits as D_G plus lower-order
    /// terms).
    pub fn top_degree_part(&self) -> FactorList {
        let zero = self.field.zero();
        FactorList {
            field: self.field.clone(),
            nvars: self.nvars,
            factors: self
                .factors
                .iter()
                .map(|f| Factor { c: zero.clone(), ..f.clone() })
                .collect(),
        }
    }

    pub fn evaluate(&self, point: &[FieldElement]) -> FieldElement {
        let f = &self.field;
        let mut acc = f.one();
        for fac in &self.factors {
            let mut t = f.mul(&fac.a, &point[fac.u]);
            t = f.add(&t, &f.mul(&fac.b, &point[fac.v]));
            t = f.add(&t, &fac.c);
            if f.is_zero(&t) {
                return f.zero();
            }
            acc = f.mul(&acc, &t);
        }
        acc
    }
}

/// One factor per edge in canonical edge order; the labeling, when
/// given, supplies the constant term of each factor.
pub fn decorated_factors(
    g: &Graph,
    field: &Field,
    dec: &Decoration,
    lab: Option<&EdgeLabeling>,
) -> Result<FactorList, PolyError> {
    let mut factors = Vec::with_capacity(g.m());
    for &(u, v) in &g.edges {
        let (a, b) = dec.get(u, v).ok_or(PolyError::MissingEdge(u, v))?.clone();
        if field.is_zero(&a) || field.is_zero(&b) {
            return Err(PolyError::ZeroDecoration(u, v));
        }
        let c = match lab {
            Some(l) => l.get(u, v).ok_or(PolyError::MissingEdge(u, v))?.clone(),
            None => field.zero(),
        };
        factors.push(Factor { u, a, v, b, c });
    }
    Ok(FactorList {
        field: field.clone(),
        nvars: g.n,
        factors,
    })
}

/// Per-variable degree cap applied during expansion.
#[derive(Debug, Clone)]
pub enum Cap {
    Unbounded,
    Uniform(u32),
    PerVar(Vec<u32>),
}

impl Cap {
    fn limit(&self, var: usize) -> u32 {
        match self {
            Cap::Unbounded => u32::MAX,
            Cap::Uniform(k) => *k,
            Cap::PerVar(caps) => caps[var],
        }
    }
}

/// Explicit sparse polynomial; keys iterate in lexicographic order and
/// no stored coefficient is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePoly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, FieldElement>,
}

impl SparsePoly {
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_exponent(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|e| e.iter().copied())
            .max()
            .unwrap_or(0)
    }

    /// Terms of exactly the given total degree.
    pub fn homogeneous_part(&self, degree: u32) -> SparsePoly {
        SparsePoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms with every exponent at most the cap.
    pub fn filtered(&self, cap: &Cap) -> SparsePoly {
        SparsePoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().enumerate().all(|(i, &d)| d <= cap.limit(i)))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn evaluate(&self, field: &Field, point: &[FieldElement]) -> FieldElement {
        let mut acc = field.zero();
        for (exps, coeff) in &self.terms {
            let mut t = coeff.clone();
            for (i, &d) in exps.iter().enumerate() {
                if d > 0 {
                    t = field.mul(&t, &field.pow(&point[i], d as u64));
                }
            }
            acc = field.add(&acc, &t);
        }
        acc
    }

    pub fn to_json(&self, field: &Field) -> serde_json::Value {
        let items: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(e, c)| {
                serde_json::json!({
                    "exponents": e,
                    "coeff": field.format_element(c),
                })
            })
            .collect();
        serde_json::Value::Array(items)
    }
}

/// Expands the factor product, keeping exactly the monomials whose
/// per-variable degrees respect the cap. Degrees never decrease as
/// factors multiply in, so pruning after each factor is sound.
pub fn expand_capped(f: &FactorList, cap: &Cap, budget: usize) -> Result<SparsePoly, PolyError> {
    let field = &f.field;
    let mut terms: BTreeMap<Vec<u32>, FieldElement> = BTreeMap::new();
    terms.insert(vec![0; f.nvars], field.one());
    for fac in &f.factors {
        let mut next: BTreeMap<Vec<u32>, FieldElement> = BTreeMap::new();
        let add = |key: Vec<u32>, val: FieldElement, next: &mut BTreeMap<Vec<u32>, FieldElement>| {
            if field.is_zero(&val) {
                return;
            }
            match next.entry(key) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(val);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = field.add(e.get(), &val);
                    if field.is_zero(&sum) {
                        e.remove();
                    } else {
                        e.insert(sum);
                    }
                }
            }
        };
        for (exps, coeff) in &terms {
            if exps[fac.u] < cap.limit(fac.u) {
                let mut e = exps.clone();
                e[fac.u] += 1;
                add(e, field.mul(coeff, &fac.a), &mut next);
            }
            if exps[fac.v] < cap.limit(fac.v) {
                let mut e = exps.clone();
                e[fac.v] += 1;
                add(e, field.mul(coeff, &fac.b), &mut next);
            }
            if !field.is_zero(&fac.c) {
                add(exps.clone(), field.mul(coeff, &fac.c), &mut next);
            }
        }
        if next.len() > budget {
            return Err(PolyError::BudgetExceeded(budget));
        }
        terms = next;
    }
    Ok(SparsePoly { nvars: f.nvars, terms })
}

/// Exact coefficient of a single monomial, computed by depth-first
/// search over factor choices with residual-degree pruning and
/// memoization. Independent of the expansion path.
pub fn coeff_of_monomial(f: &FactorList, monomial: &[u32]) -> FieldElement {
    assert_eq!(monomial.len(), f.nvars);
    let field = &f.field;
    let homogeneous = f.homogeneous();
    let total: u32 = monomial.iter().sum();
    if homogeneous && total != f.factors.len() as u32 {
        return field.zero();
    }
    // suffix incidence counts: how many factors from index i on touch
    // each variable
    let m = f.factors.len();
    let mut suffix = vec![vec![0u32; f.nvars]; m + 1];
    for i in (0..m).rev() {
        suffix[i] = suffix[i + 1].clone();
        suffix[i][f.factors[i].u] += 1;
        suffix[i][f.factors[i].v] += 1;
    }
    let mut memo: HashMap<(usize, Vec<u32>), FieldElement> = HashMap::new();
    let mut residual = monomial.to_vec();
    dfs(f, field, homogeneous, &suffix, 0, &mut residual, &mut memo)
}

fn dfs(
    f: &FactorList,
    field: &Field,
    homogeneous: bool,
    suffix: &[Vec<u32>],
    i: usize,
    residual: &mut Vec<u32>,
    memo: &mut HashMap<(usize, Vec<u32>), FieldElement>,
) -> FieldElement {
    let m = f.factors.len();
    if i == m {
        return if residual.iter().all(|&d| d == 0) {
            field.one()
        } else {
            field.zero()
        };
    }
    let remaining: u32 = residual.iter().sum();
    if remaining > (m - i) as u32 {
        return field.zero();
    }
    if homogeneous && remaining != (m - i) as u32 {
        return field.zero();
    }
    // no variable may demand more than the factors still able to feed it
    for (v, &need) in residual.iter().enumerate() {
        if need > suffix[i][v] {
            return field.zero();
        }
    }
    let key = (i, residual.clone());
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let fac = &f.factors[i];
    let mut acc = field.zero();
    if residual[fac.u] > 0 {
        residual[fac.u] -= 1;
        let sub = dfs(f, field, homogeneous, suffix, i + 1, residual, memo);
        residual[fac.u] += 1;
        acc = field.add(&acc, &field.mul(&fac.a, &sub));
    }
    if residual[fac.v] > 0 {
        residual[fac.v] -= 1;
        let sub = dfs(f, field, homogeneous, suffix, i + 1, residual, memo);
        residual[fac.v] += 1;
        acc = field.add(&acc, &field.mul(&fac.b, &sub));
    }
    if !field.is_zero(&fac.c) {
        let sub = dfs(f, field, homogeneous, suffix, i + 1, residual, memo);
        acc = field.add(&acc, &field.mul(&fac.c, &sub));
    }
    memo.insert(key, acc.clone());
    acc
}

/// Least k such that the top-degree part has a surviving monomial with
/// every variable degree at most k.
pub fn an_number(f: &FactorList, budget: usize) -> Result<u32, PolyError> {
    let top = f.top_degree_part();
    let m = top.factors.len() as u32;
    for k in 0..=m.max(1) {
        let p = expand_capped(&top, &Cap::Uniform(k), budget)?;
        if !p.is_empty() {
            return Ok(k);
        }
    }
    unreachable!("a nonzero product of affine forms has some monomial")
}

/// An edge orientation given as one direction bit per canonical edge:
/// true means the edge points toward its larger endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    pub toward_max: Vec<bool>,
}

impl Orientation {
    pub fn in_degrees(&self, g: &Graph) -> Vec<u32> {
        let mut d = vec![0u32; g.n];
        for (bit, &(u, v)) in self.toward_max.iter().zip(&g.edges) {
            if *bit {
                d[v] += 1;
            } else {
                d[u] += 1;
            }
        }
        d
    }

    /// Directed edges (tail, head).
    pub fn directed_edges(&self, g: &Graph) -> Vec<(usize, usize)> {
        self.toward_max
            .iter()
            .zip(&g.edges)
            .map(|(bit, &(u, v))| if *bit { (u, v) } else { (v, u) })
            .collect()
    }

    pub fn is_acyclic(&self, g: &Graph) -> bool {
        let mut indeg = self.in_degrees(g);
        let arcs = self.directed_edges(g);
        let mut queue: Vec<usize> = (0..g.n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for &(t, h) in &arcs {
                if t == v {
                    indeg[h] -= 1;
                    if indeg[h] == 0 {
                        queue.push(h);
                    }
                }
            }
        }
        seen == g.n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldSpec;
    use crate::graphs;

    fn k3() -> Graph {
        Graph::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap()
    }

    #[test]
    fn single_edge_factor() {
        let f = Field::Rationals;
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let dec = Decoration::from_entries(
            &f,
            &g,
            &[(0, 1, f.from_int(2), f.from_int(3))],
        )
        .unwrap();
        let fl = decorated_factors(&g, &f, &dec, None).unwrap();
        let p = expand_capped(&fl, &Cap::Uniform(1), 1000).unwrap();
        assert_eq!(p.terms.len(), 2);
        assert_eq!(p.terms[&vec![1, 0]], f.from_int(2));
        assert_eq!(p.terms[&vec![0, 1]], f.from_int(3));
    }

    #[test]
    fn zero_decoration_rejected() {
        let f = Field::Rationals;
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let err =
            Decoration::from_entries(&f, &g, &[(0, 1, f.zero(), f.from_int(3))]).unwrap_err();
        assert_eq!(err, PolyError::ZeroDecoration(0, 1));
    }

    #[test]
    fn k3_cyclic_orientations_cancel() {
        // hand expansion of (x0-x1)(x0-x2)(x1-x2): the all-ones monomial
        // gets one +1 and one -1
        let f = Field::Rationals;
        let g = k3();
        let dec = Decoration::default_for(&f, &g);
        let fl = decorated_factors(&g, &f, &dec, None).unwrap();
        let p = expand_capped(&fl, &Cap::Unbounded, 1000).unwrap();
        assert!(!p.terms.contains_key(&vec![1, 1, 1]));
        assert_eq!(coeff_of_monomial(&fl, &[1, 1, 1]), f.zero());
    }

    #[test]
    fn pruning_matches_filtered_full_expansion() {
        let f = Field::prime(5);
        let g = k3();
        let dec = Decoration::default_for(&f, &g);
        let fl = decorated_factors(&g, &f, &dec, None).unwrap();
        let full = expand_capped(&fl, &Cap::Unbounded, 10_000).unwrap();
        let capped = expand_capped(&fl, &Cap::Uniform(1), 10_000).unwrap();
        assert_eq!(capped, full.filtered(&Cap::Uniform(1)));
    }

    #[test]
    fn near_triangulation_base_coefficient() {
        // K3 minus edge xy: factors (a1 x + b1 v)(a2 y + b2 v), the
        // coefficient of v^2 is b1 b2
        let f = Field::prime(7);
        let g = Graph::new(3, &[(0, 2), (1, 2)]).unwrap();
        let dec = Decoration::from_entries(
            &f,
            &g,
            &[
                (0, 2, f.from_int(2), f.from_int(3)),
                (1, 2, f.from_int(4), f.from_int(5)),
            ],
        )
        .unwrap();
        let fl = decorated_factors(&g, &f, &dec, None).unwrap();
        assert_eq!(coeff_of_monomial(&fl, &[0, 0, 2]), f.from_int(15));
    }

    #[test]
    fn acyclic_orientation_monomial_is_unit() {
        let f = Field::Rationals;
        let (g, _) = graphs::k4_embedded();
        let dec = Decoration::default_for(&f, &g);
        let fl = decorated_factors(&g, &f, &dec, None).unwrap();
        // orient every edge toward the larger endpoint: acyclic
        let o = Orientation { toward_max: vec![true; g.m()] };
        assert!(o.is_acyclic(&g));
        let m = o.in_degrees(&g);
        let c = coeff_of_monomial(&fl, &m);
        assert!(c == f.one() || c == f.from_int(-1));
    }

    #[test]
    fn homogeneity_mismatch_gives_zero() {
        let f = Field::prime(5);
        let g = k3();
        let dec = Decoration::default_for(&f, &g);
        let fl = decorated_factors(&g, &f, &dec, None).unwrap();
        assert_eq!(coeff_of_monomial(&fl, &[1, 1, 0]), f.zero());
    }

    #[test]
    fn an_number_examples() {
        let f = Field::Rationals;
        let empty = Graph::new(3, &[]).unwrap();
        let dec = Decoration::default_for(&f, &empty);
        let fl = decorated_factors(&empty, &f, &dec, None).unwrap();
        assert_eq!(an_number(&fl, 10_000).unwrap(), 0);

        let (k4, _) = graphs::k4_embedded();
        let dec = Decoration::default_for(&f, &k4);
        let fl = decorated_factors(&k4, &f, &dec, None).unwrap();
        assert_eq!(an_number(&fl, 100_000).unwrap(), 3);
    }

    #[test]
    fn labeled_an_number_matches_homogeneous() {
        let f = Field::prime(5);
        let g = k3();
        let dec = Decoration::default_for(&f, &g);
        let lab = EdgeLabeling::from_entries(
            &g,
            &[
                (0, 1, f.from_int(2)),
                (0, 2, f.from_int(4)),
                (1, 2, f.from_int(1)),
            ],
        )
        .unwrap();
        let labeled = decorated_factors(&g, &f, &dec, Some(&lab)).unwrap();
        let plain = decorated_factors(&g, &f, &dec, None).unwrap();
        assert_eq!(
            an_number(&labeled, 10_000).unwrap(),
            an_number(&plain, 10_000).unwrap()
        );
        // the top homogeneous part of the labeled expansion is exactly
        // the unlabeled expansion
        let full = expand_capped(&labeled, &Cap::Unbounded, 10_000).unwrap();
        let plain_full = expand_capped(&plain, &Cap::Unbounded, 10_000).unwrap();
        assert_eq!(full.homogeneous_part(g.m() as u32), plain_full);
    }

    #[test]
    fn coeff_matches_expansion_on_all_monomials() {
        let f = Field::prime(5);
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let dec = Decoration::from_entries(
            &f,
            &g,
            &g.edges
                .iter()
                .enumerate()
                .map(|(i, &(u, v))| (u, v, f.from_int(1 + i as i64 % 4), f.from_int(2 + i as i64 % 3)))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let fl = decorated_factors(&g, &f, &dec, None).unwrap();
        let full = expand_capped(&fl, &Cap::Unbounded, 100_000).unwrap();
        for (e, c) in &full.terms {
            assert_eq!(&coeff_of_monomial(&fl, e), c);
        }
    }

    #[test]
    fn signed_orientation_count_matches_coefficient() {
        // default decoration: the coefficient of a monomial is the
        // signed number of orientations with that in-degree vector
        let f = Field::Rationals;
        let g = k3();
        let dec = Decoration::default_for(&f, &g);
        let fl = decorated_factors(&g, &f, &dec, None).unwrap();
        for bits in 0..1u32 << g.m() {
            let o = Orientation {
                toward_max: (0..g.m()).map(|i| bits >> i & 1 == 1).collect(),
            };
            let target = o.in_degrees(&g);
            let mut signed = 0i64;
            for other_bits in 0..1u32 << g.m() {
                let other = Orientation {
                    toward_max: (0..g.m()).map(|i| other_bits >> i & 1 == 1).collect(),
                };
                if other.in_degrees(&g) == target {
                    // sign: product over edges of +1 if toward smaller
                    // endpoint (variable x_u picked with coefficient 1),
                    // -1 otherwise
                    let neg = other.toward_max.iter().filter(|&&b| b).count();
                    signed += if neg % 2 == 0 { 1 } else { -1 };
                }
            }
            assert_eq!(coeff_of_monomial(&fl, &target), f.from_int(signed));
        }
    }

    #[test]
    fn an_chain_bounded_by_coloring_number() {
        use crate::graphs::degeneracy_order;
        let f = Field::prime(7);
        for g in [
            k3(),
            graphs::k4_embedded().0,
            Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap(),
        ] {
            let (_, col) = degeneracy_order(&g);
            let plain = decorated_factors(&g, &f, &Decoration::default_for(&f, &g), None).unwrap();
            let a_p = an_number(&plain, 100_000).unwrap();
            // a haphazard nonzero decoration
            let dec = Decoration::from_entries(
                &f,
                &g,
                &g.edges
                    .iter()
                    .enumerate()
                    .map(|(i, &(u, v))| {
                        (u, v, f.from_int(1 + (i as i64 * 3) % 6), f.from_int(1 + (i as i64 * 5) % 6))
                    })
                    .collect::<Vec<_>>(),
            )
            .unwrap();
            let fl = decorated_factors(&g, &f, &dec, None).unwrap();
            let a_d = an_number(&fl, 100_000).unwrap();
            assert!(a_p <= col as u32 - 1);
            assert!(a_d <= col as u32 - 1);
        }
    }

    #[test]
    fn field_spec_round_trip_via_parse() {
        let spec = FieldSpec::extension(2, 4);
        let f = Field::make(&spec).unwrap();
        assert_eq!(f.size(), Some(16));
    }
}
