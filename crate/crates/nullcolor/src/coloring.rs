//! Coloring extraction through the effective Combinatorial
//! Nullstellensatz, brute-force field/group coloring counters, the
//! adversarial labeling search, and the multiplicative embedding of
//! cyclic groups into small finite fields.

use crate::algebra::{AlgebraError, Field, FieldElement, FieldSpec};
use crate::graphs::Graph;
use crate::polys::{
    coeff_of_monomial, expand_capped, Cap, Decoration, EdgeLabeling, Factor, FactorList,
    Orientation, PolyError,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ColoringError {
    #[error("no non-vanishing top-degree monomial fits the hypothesis")]
    NoWitnessMonomial,
    #[error("every candidate monomial needs a larger list somewhere")]
    ListTooSmall,
    #[error("label {0} is out of range for group order {1}")]
    LabelOutOfRange(u64, u64),
    #[error("search space of size {0} exceeds the budget {1}")]
    BudgetExceeded(u128, u128),
    #[error("list for vertex {0} is empty or has repeated elements")]
    BadList(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Per-vertex lists of distinct field elements.
#[derive(Debug, Clone)]
pub struct ListAssignment {
    pub lists: Vec<Vec<FieldElement>>,
}

impl ListAssignment {
    pub fn full(field: &Field, n: usize) -> Result<ListAssignment, ColoringError> {
        let elems = field.elements()?;
        Ok(ListAssignment {
            lists: vec![elems; n],
        })
    }

    pub fn validate(&self, field: &Field) -> Result<(), ColoringError> {
        for (i, list) in self.lists.iter().enumerate() {
            if list.is_empty() {
                return Err(ColoringError::BadList(i));
            }
            for a in 0..list.len() {
                for b in a + 1..list.len() {
                    if field.is_zero(&field.sub(&list[a], &list[b])) {
                        return Err(ColoringError::BadList(i));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn grid_size(&self) -> u128 {
        self.lists.iter().map(|l| l.len() as u128).product()
    }

    pub fn to_json(&self, field: &Field) -> serde_json::Value {
        serde_json::json!({
            "lists": self
                .lists
                .iter()
                .map(|l| l.iter().map(|e| field.format_element(e)).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

/// Iterates a callback over every point of the list grid.
fn for_each_grid_point(
    lists: &[Vec<FieldElement>],
    mut f: impl FnMut(&[FieldElement]),
) {
    let n = lists.len();
    let mut idx = vec![0usize; n];
    let mut point: Vec<FieldElement> = lists.iter().map(|l| l[0].clone()).collect();
    loop {
        f(&point);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            idx[i] += 1;
            if idx[i] < lists[i].len() {
                point[i] = lists[i][idx[i]].clone();
                break;
            }
            idx[i] = 0;
            point[i] = lists[i][0].clone();
            i += 1;
        }
    }
}

/// Interpolation weights over one list: w(a) = 1 / prod_{b != a} (a - b).
fn lagrange_weights(
    field: &Field,
    list: &[FieldElement],
) -> Result<Vec<FieldElement>, ColoringError> {
    let mut out = Vec::with_capacity(list.len());
    for (i, a) in list.iter().enumerate() {
        let mut prod = field.one();
        for (j, b) in list.iter().enumerate() {
            if i != j {
                prod = field.mul(&prod, &field.sub(a, b));
            }
        }
        out.push(field.inv(&prod)?);
    }
    Ok(out)
}

/// Effective Combinatorial Nullstellensatz: finds a grid point where
/// every factor is nonzero, provided a top-degree monomial below the
/// list sizes has nonzero coefficient.
///
/// Variables are fixed one at a time; each candidate value is accepted
/// when the interpolation functional restricted to the remaining grid
/// stays nonzero. When the functional degenerates, exhaustive grid
/// search over the full lists takes over.
pub fn cn_solve(
    f: &FactorList,
    lists: &ListAssignment,
    witness: Option<&[u32]>,
    budget: usize,
) -> Result<Vec<FieldElement>, ColoringError> {
    let field = &f.field;
    assert_eq!(lists.lists.len(), f.nvars);
    lists.validate(field)?;

    let top = f.top_degree_part();
    let monomial: Vec<u32> = match witness {
        Some(w) => {
            assert_eq!(w.len(), f.nvars);
            if w.iter()
                .zip(&lists.lists)
                .any(|(&d, l)| d as usize >= l.len())
            {
                return Err(ColoringError::ListTooSmall);
            }
            if field.is_zero(&coeff_of_monomial(&top, w)) {
                return Err(ColoringError::NoWitnessMonomial);
            }
            w.to_vec()
        }
        None => {
            let caps: Vec<u32> = lists.lists.iter().map(|l| l.len() as u32 - 1).collect();
            let capped = expand_capped(&top, &Cap::PerVar(caps), budget)?;
            match capped.terms.keys().next() {
                Some(k) => k.clone(),
                None => {
                    // distinguish: does any top monomial exist at all?
                    let all = expand_capped(&top, &Cap::Unbounded, budget)?;
                    return Err(if all.is_empty() {
                        ColoringError::NoWitnessMonomial
                    } else {
                        ColoringError::ListTooSmall
                    });
                }
            }
        }
    };

    // truncate each list to degree + 1 elements
    let trunc: Vec<Vec<FieldElement>> = lists
        .lists
        .iter()
        .zip(&monomial)
        .map(|(l, &d)| l[..=d as usize].to_vec())
        .collect();
    let grid: u128 = trunc.iter().map(|l| l.len() as u128).product();
    if grid > budget as u128 {
        return Err(ColoringError::BudgetExceeded(grid, budget as u128));
    }
    let weights: Vec<Vec<FieldElement>> = trunc
        .iter()
        .map(|l| lagrange_weights(field, l))
        .collect::<Result<_, _>>()?;

    // functional over a sub-grid with a prefix of variables pinned
    let functional = |fixed: &[FieldElement]| -> FieldElement {
        let k = fixed.len();
        let mut acc = field.zero();
        if k == f.nvars {
            return f.evaluate(fixed);
        }
        for_each_grid_point(&trunc[k..], |rest| {
            let mut point = fixed.to_vec();
            point.extend_from_slice(rest);
            let mut term = f.evaluate(&point);
            if field.is_zero(&term) {
                return;
            }
            for (j, r) in rest.iter().enumerate() {
                let pos = trunc[k + j]
                    .iter()
                    .position(|x| field.is_zero(&field.sub(x, r)))
                    .unwrap();
                term = field.mul(&term, &weights[k + j][pos]);
            }
            acc = field.add(&acc, &term);
        });
        acc
    };

    let mut fixed: Vec<FieldElement> = Vec::with_capacity(f.nvars);
    let mut degenerate = false;
    for i in 0..f.nvars {
        let mut chosen = None;
        for (pos, c) in trunc[i].iter().enumerate() {
            fixed.push(c.clone());
            let partial = functional(&fixed);
            fixed.pop();
            if !field.is_zero(&field.mul(&partial, &weights[i][pos])) {
                chosen = Some(c.clone());
                break;
            }
        }
        match chosen {
            Some(c) => fixed.push(c),
            None => {
                degenerate = true;
                break;
            }
        }
    }
    if !degenerate && !field.is_zero(&f.evaluate(&fixed)) {
        return Ok(fixed);
    }

    // exhaustive fallback over the full lists
    let full_grid = lists.grid_size();
    if full_grid > budget as u128 {
        return Err(ColoringError::BudgetExceeded(full_grid, budget as u128));
    }
    let mut found = None;
    for_each_grid_point(&lists.lists, |pt| {
        if found.is_none() && !field.is_zero(&f.evaluate(pt)) {
            found = Some(pt.to_vec());
        }
    });
    found.ok_or(ColoringError::NoWitnessMonomial)
}

/// Exact number of list-grid points satisfying every edge constraint
/// a_e x_u + b_e x_v + c_e != 0.
pub fn count_colorings(
    g: &Graph,
    field: &Field,
    dec: &Decoration,
    lab: &EdgeLabeling,
    lists: &ListAssignment,
    budget: u128,
) -> Result<u64, ColoringError> {
    assert_eq!(lists.lists.len(), g.n);
    lists.validate(field)?;
    let grid = lists.grid_size();
    if grid > budget {
        return Err(ColoringError::BudgetExceeded(grid, budget));
    }
    let f = crate::polys::decorated_factors(g, field, dec, Some(lab))?;
    let mut count = 0u64;
    for_each_grid_point(&lists.lists, |pt| {
        if !field.is_zero(&f.evaluate(pt)) {
            count += 1;
        }
    });
    Ok(count)
}

/// A finite abelian group as a product of cyclic factors; elements are
/// residue vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    pub orders: Vec<u64>,
}

impl AbelianGroup {
    pub fn cyclic(m: u64) -> AbelianGroup {
        assert!(m >= 2);
        AbelianGroup { orders: vec![m] }
    }

    pub fn size(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.orders.len()]
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.orders
            .iter()
            .zip(a.iter().zip(b))
            .map(|(&m, (&x, &y))| (x + m - y) % m)
            .collect()
    }

    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![vec![]];
        for &m in &self.orders {
            let mut next = Vec::with_capacity(out.len() * m as usize);
            for prefix in &out {
                for r in 0..m {
                    let mut e = prefix.clone();
                    e.push(r);
                    next.push(e);
                }
            }
            out = next;
        }
        out
    }
}

/// Number of list colorings c with c(head) - c(tail) != label on every
/// oriented edge, by grid enumeration.
pub fn count_group_colorings(
    g: &Graph,
    orient: &Orientation,
    group: &AbelianGroup,
    labeling: &[Vec<u64>],
    lists: &[Vec<Vec<u64>>],
) -> u64 {
    assert_eq!(labeling.len(), g.m());
    assert_eq!(lists.len(), g.n);
    let arcs = orient.directed_edges(g);
    let n = g.n;
    let mut idx = vec![0usize; n];
    let mut count = 0u64;
    loop {
        let ok = arcs.iter().zip(labeling).all(|(&(tail, head), lab)| {
            group.sub(&lists[head][idx[head]], &lists[tail][idx[tail]]) != *lab
        });
        if ok {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return count;
            }
            idx[i] += 1;
            if idx[i] < lists[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// Exhaustive search over all |group|^m labelings for the one
/// minimizing the number of group colorings.
pub fn adversarial_min(
    g: &Graph,
    orient: &Orientation,
    group: &AbelianGroup,
    lists: &[Vec<Vec<u64>>],
    budget: u128,
) -> Result<(Vec<Vec<u64>>, u64), ColoringError> {
    let m = g.m();
    let total = (group.size() as u128).pow(m as u32);
    if total > budget {
        return Err(ColoringError::BudgetExceeded(total, budget));
    }
    let elems = group.elements();
    let mut labeling: Vec<usize> = vec![0; m];
    let mut best: Option<(Vec<Vec<u64>>, u64)> = None;
    loop {
        let labels: Vec<Vec<u64>> = labeling.iter().map(|&i| elems[i].clone()).collect();
        let count = count_group_colorings(g, orient, group, &labels, lists);
        if best.as_ref().is_none_or(|(_, c)| count < *c) {
            best = Some((labels, count));
        }
        let mut i = 0;
        loop {
            if i == m {
                return Ok(best.unwrap());
            }
            labeling[i] += 1;
            if labeling[i] < elems.len() {
                break;
            }
            labeling[i] = 0;
            i += 1;
        }
    }
}

/// Exponent choice for the multiplicative embedding field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbedExponent {
    /// The multiplicative order of p modulo m (smallest valid field).
    MultiplicativeOrder,
    /// Euler's totient of m.
    Totient,
}

/// A cyclic group of order m realized inside the multiplicative group
/// of a small finite field.
#[derive(Debug, Clone)]
pub struct CyclicEmbedding {
    pub m: u64,
    pub p: u64,
    pub exponent: usize,
    pub totient: u64,
    pub field: Field,
    pub generator: FieldElement,
}

fn totient(m: u64) -> u64 {
    (1..=m).filter(|&a| gcd(a, m) == 1).count() as u64
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Smallest prime coprime to m, field F_{p^k} with m | p^k - 1, and a
/// generator of multiplicative order exactly m.
pub fn cyclic_embed_with(
    m: u64,
    choice: EmbedExponent,
) -> Result<CyclicEmbedding, ColoringError> {
    assert!(m >= 2);
    let p = (2..).find(|&p| is_prime(p) && m % p != 0).unwrap();
    let phi = totient(m);
    let k = match choice {
        EmbedExponent::Totient => phi,
        EmbedExponent::MultiplicativeOrder => {
            let mut ord = 1u64;
            let mut pw = p % m;
            while pw != 1 {
                pw = pw * p % m;
                ord += 1;
            }
            ord
        }
    } as usize;
    let field = Field::make(&if k == 1 {
        FieldSpec::prime(p)
    } else {
        FieldSpec::extension(p, k)
    })?;
    let generator = field.find_element_of_order(m)?;
    Ok(CyclicEmbedding {
        m,
        p,
        exponent: k,
        totient: phi,
        field,
        generator,
    })
}

pub fn cyclic_embed(m: u64) -> Result<CyclicEmbedding, ColoringError> {
    cyclic_embed_with(m, EmbedExponent::MultiplicativeOrder)
}

impl CyclicEmbedding {
    /// The embedded subgroup g^0, g^1, ..., g^{m-1} in power order.
    pub fn subgroup(&self) -> Vec<FieldElement> {
        let mut out = Vec::with_capacity(self.m as usize);
        let mut x = self.field.one();
        for _ in 0..self.m {
            out.push(x.clone());
            x = self.field.mul(&x, &self.generator);
        }
        out
    }

    /// Inverse of the embedding on subgroup elements.
    pub fn discrete_log(&self, x: &FieldElement) -> Option<u64> {
        self.subgroup()
            .iter()
            .position(|y| self.field.is_zero(&self.field.sub(x, y)))
            .map(|i| i as u64)
    }
}

/// Field form of a cyclic-group labeling: per oriented edge (x -> y)
/// with label l, the factor x_y - g^l x_x, which vanishes exactly when
/// log(y) - log(x) = l. Solutions in the subgroup grid are exactly the
/// additive Z_m-colorings under discrete log.
pub fn multiplicative_instance(
    g: &Graph,
    orient: &Orientation,
    labels: &[u64],
    emb: &CyclicEmbedding,
) -> Result<(FactorList, ListAssignment), ColoringError> {
    assert_eq!(labels.len(), g.m());
    let field = &emb.field;
    let mut factors = Vec::with_capacity(g.m());
    for (&(tail, head), &l) in orient.directed_edges(g).iter().zip(labels) {
        if l >= emb.m {
            return Err(ColoringError::LabelOutOfRange(l, emb.m));
        }
        factors.push(Factor {
            u: head,
            a: field.one(),
            v: tail,
            b: field.neg(&field.pow(&emb.generator, l)),
            c: field.zero(),
        });
    }
    let lists = ListAssignment {
        lists: vec![emb.subgroup(); g.n],
    };
    Ok((
        FactorList {
            field: field.clone(),
            nvars: g.n,
            factors,
        },
        lists,
    ))
}
