//! End-to-end acceptance suite. Each test covers one numbered
//! criterion and prints a single pass/fail line; all numeric
//! comparisons are exact, with corpus sizes and budgets pinned below.

use nullcolor::algebra::Field;
use nullcolor::bounds;
use nullcolor::certify::{self, CliqueSumLeaf, CliqueSumTree, GlueStep};
use nullcolor::coloring::{self, AbelianGroup, ListAssignment};
use nullcolor::corpus;
use nullcolor::graphs::{degeneracy_order, Graph, NearTriangulation};
use nullcolor::polys::{
    an_number, coeff_of_monomial, decorated_factors, expand_capped, Cap, Decoration,
    Factor, FactorList, Orientation,
};
use num::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

const BUDGET: usize = 10_000_000;
const GRID_BUDGET: u128 = 100_000_000;

const NEAR_TRIANGULATION_CORPUS: usize = 200;
const NEAR_TRIANGULATION_TIME: Duration = Duration::from_secs(300);
const CLIQUE_SUM_CORPUS: usize = 100;
const LABELINGS_PER_TRIANGULATION: usize = 50;
const CN_INSTANCES: usize = 500;
const AF_INSTANCES: usize = 200;
const CONVEXITY_T_MAX: u64 = 64;
const LABEL_INVARIANCE_TRIPLES: usize = 100;
const K4_EMBED_LABELINGS: usize = 200;

fn criterion(n: u32, name: &str, body: impl FnOnce() + std::panic::UnwindSafe) {
    match std::panic::catch_unwind(body) {
        Ok(()) => println!("criterion {n} ({name}): PASS"),
        Err(e) => {
            println!("criterion {n} ({name}): FAIL");
            std::panic::resume_unwind(e);
        }
    }
}

fn fields() -> Vec<Field> {
    vec![Field::prime(5), Field::prime(7), Field::Rationals]
}

/// Factors of the decorated polynomial with one edge left out.
fn factors_without_edge(
    g: &Graph,
    field: &Field,
    dec: &Decoration,
    e: (usize, usize),
) -> FactorList {
    let reduced = g.without_edges(&[e]);
    decorated_factors(&reduced, field, dec, None).unwrap()
}

#[test]
fn criterion_1_near_triangulation_suite() {
    criterion(1, "near-triangulation certificates", || {
        let start = Instant::now();
        let fields = fields();
        for seed in 0..NEAR_TRIANGULATION_CORPUS as u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let field = &fields[seed as usize % fields.len()];
            let b = 3 + rng.gen_range(0..5usize);
            let n = (b + rng.gen_range(0..4usize)).min(9);
            let nt = corpus::random_near_triangulation(n, b, &mut rng);
            let dec = corpus::random_decoration(field, &nt.graph, &mut rng);
            let i = rng.gen_range(0..nt.boundary.len());
            let e = (nt.boundary[i], nt.boundary[(i + 1) % nt.boundary.len()]);
            let cert = certify::nice_monomial(&nt, e, field, &dec, BUDGET)
                .unwrap_or_else(|err| panic!("seed {seed}: {err}"));
            let m = &cert.monomial;
            assert_eq!(m[e.0], 0, "seed {seed}: endpoint degree");
            assert_eq!(m[e.1], 0, "seed {seed}: endpoint degree");
            for &v in &nt.boundary {
                assert!(m[v] <= 2, "seed {seed}: boundary degree at {v}");
            }
            for &v in &nt.interior {
                assert!(m[v] <= 4, "seed {seed}: interior degree at {v}");
            }
            assert_eq!(
                m.iter().sum::<u32>() as usize,
                nt.graph.m() - 1,
                "seed {seed}: top degree"
            );
            // independent re-verification by the orientation DP
            let f = factors_without_edge(&nt.graph, field, &dec, e);
            let c = coeff_of_monomial(&f, m);
            assert!(!field.is_zero(&c), "seed {seed}: zero coefficient");
            assert!(
                field.is_zero(&field.sub(&c, &cert.coefficient)),
                "seed {seed}: coefficient mismatch"
            );
        }
        assert!(
            start.elapsed() < NEAR_TRIANGULATION_TIME,
            "suite exceeded the runtime bound: {:?}",
            start.elapsed()
        );
    });
}

/// Random clique-sum composition: a base triangulation, 1-2 further
/// leaves glued onto subsets of the base outer triangle, and at most
/// one dropped clique edge on the final step.
fn random_tree(rng: &mut ChaCha8Rng) -> CliqueSumTree {
    let base = corpus::random_triangulation(4 + rng.gen_range(0..4), rng);
    let anchor = base.boundary.clone();
    let extra = 1 + rng.gen_range(0..2);
    let mut leaves = vec![CliqueSumLeaf::Triangulation(base)];
    let mut glues = Vec::new();
    for step in 0..extra {
        let v8 = rng.gen_bool(0.3);
        let (leaf, right): (CliqueSumLeaf, Vec<usize>) = if v8 {
            let s = 1 + rng.gen_range(0..2usize);
            (CliqueSumLeaf::V8, (0..s).collect())
        } else {
            let t = corpus::random_triangulation(4 + rng.gen_range(0..3), rng);
            let s = 1 + rng.gen_range(0..3usize);
            let right = t.boundary[..s].to_vec();
            (CliqueSumLeaf::Triangulation(t), right)
        };
        let left = anchor[..right.len()].to_vec();
        let drop = if step + 1 == extra && right.len() >= 2 && rng.gen_bool(0.3) {
            vec![(left[0], left[1])]
        } else {
            vec![]
        };
        glues.push(GlueStep {
            ident: left.iter().copied().zip(right).collect(),
            drop,
        });
        leaves.push(leaf);
    }
    CliqueSumTree { leaves, glues }
}

#[test]
fn criterion_2_clique_sum_bound() {
    criterion(2, "K5-minor-free degree bound", || {
        let fields = fields();
        for seed in 0..CLIQUE_SUM_CORPUS as u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(1_000 + seed);
            let field = &fields[seed as usize % fields.len()];
            let tree = random_tree(&mut rng);
            let (composed, _) = tree.compose().unwrap();
            let dec = corpus::random_decoration(field, &composed, &mut rng);
            let (composed, cert) =
                certify::clique_sum_monomial(&tree, field, &dec, BUDGET)
                    .unwrap_or_else(|err| panic!("seed {seed}: {err}"));
            assert!(cert.max_exponent() <= 4, "seed {seed}: exponent > 4");
            let f = decorated_factors(&composed, field, &dec, None).unwrap();
            let c = coeff_of_monomial(&f, &cert.monomial);
            assert!(!field.is_zero(&c), "seed {seed}: zero coefficient");
            assert!(
                field.is_zero(&field.sub(&c, &cert.coefficient)),
                "seed {seed}: coefficient mismatch"
            );
        }
    });
}

fn small_triangulations() -> Vec<NearTriangulation> {
    let mut out = Vec::new();
    for (seed, n) in [(11u64, 4), (12, 5), (13, 6), (14, 5), (15, 6), (16, 6)] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        out.push(corpus::random_triangulation(n, &mut rng));
    }
    out
}

#[test]
fn criterion_3_coloring_count_corollary() {
    criterion(3, "triangulation coloring counts", || {
        let f5 = Field::prime(5);
        for nt in small_triangulations() {
            let g = &nt.graph;
            let dec = Decoration::default_for(&f5, g);
            let lists = ListAssignment::full(&f5, g.n).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(2_000 + g.n as u64);
            for _ in 0..LABELINGS_PER_TRIANGULATION {
                let lab = corpus::random_labeling(&f5, g, &mut rng);
                let count =
                    coloring::count_colorings(g, &f5, &dec, &lab, &lists, GRID_BUDGET)
                        .unwrap();
                // count >= 5^{(n+6)/4}, exactly: count^4 >= 5^{n+6}
                let lhs = BigUint::from(count).pow(4);
                let rhs = BigUint::from(5u32).pow(g.n as u32 + 6);
                assert!(lhs >= rhs, "n = {}: count {count} below the bound", g.n);
            }
        }
    });
}

#[test]
fn criterion_4_cn_extraction_soundness() {
    criterion(4, "Nullstellensatz extraction", || {
        let f7 = Field::prime(7);
        for seed in 0..CN_INSTANCES as u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(3_000 + seed);
            let b = 3 + rng.gen_range(0..3usize);
            let n = (b + rng.gen_range(0..3usize)).min(6);
            let nt = corpus::random_near_triangulation(n, b, &mut rng);
            let g = &nt.graph;
            let dec = Decoration::default_for(&f7, g);
            let lab = corpus::random_labeling(&f7, g, &mut rng);
            let lists = corpus::random_lists(&f7, g.n, 5, &mut rng);
            let f = decorated_factors(g, &f7, &dec, Some(&lab)).unwrap();
            let point = coloring::cn_solve(&f, &lists, None, BUDGET)
                .unwrap_or_else(|err| panic!("seed {seed}: {err}"));
            for (i, x) in point.iter().enumerate() {
                assert!(
                    lists.lists[i].iter().any(|y| f7.is_zero(&f7.sub(x, y))),
                    "seed {seed}: value off-list at {i}"
                );
            }
            assert!(
                !f7.is_zero(&f.evaluate(&point)),
                "seed {seed}: constraint violated"
            );
            let count =
                coloring::count_colorings(g, &f7, &dec, &lab, &lists, GRID_BUDGET).unwrap();
            assert!(count > 0, "seed {seed}: zero count despite a solution");
        }
    });
}

#[test]
fn criterion_5_alon_furedi_chain() {
    criterion(5, "counting bound chain", || {
        let f5 = Field::prime(5);
        let mut checked = 0;
        let mut seed = 0u64;
        while checked < AF_INSTANCES {
            seed += 1;
            let mut rng = ChaCha8Rng::seed_from_u64(4_000 + seed);
            let n = 2 + rng.gen_range(0..3usize);
            let nfac = 1 + rng.gen_range(0..6usize);
            let factors: Vec<Factor> = (0..nfac)
                .map(|_| {
                    let u = rng.gen_range(0..n);
                    let mut v = rng.gen_range(0..n);
                    while v == u {
                        v = rng.gen_range(0..n);
                    }
                    Factor {
                        u,
                        a: f5.from_int(rng.gen_range(1..5)),
                        v,
                        b: f5.from_int(rng.gen_range(0..5)),
                        c: f5.from_int(rng.gen_range(0..5)),
                    }
                })
                .collect();
            let f = FactorList { field: f5.clone(), nvars: n, factors };
            let lists = corpus::random_lists(&f5, n, 2 + rng.gen_range(0..4usize), &mut rng);
            let report = bounds::bound_report(&f, &lists, GRID_BUDGET).unwrap();
            if report.count == 0 {
                continue; // the polynomial vanishes on the whole grid
            }
            checked += 1;
            assert!(report.chain_holds, "seed {seed}: chain failed: {report:?}");
        }
        for t in 2..=CONVEXITY_T_MAX {
            for x in 1..=t {
                assert!(bounds::convexity_holds(x, t), "convexity x={x} t={t}");
            }
        }
        // exhaustive technical lemma: n <= 5, entries 1..=6, max >= 2
        for n in 1..=5usize {
            let mut a = vec![1u64; n];
            loop {
                if *a.iter().max().unwrap() >= 2 {
                    let (holds, _, _) = bounds::lemma_product_check(&a).unwrap();
                    assert!(holds, "lemma failed for {a:?}");
                }
                let mut i = 0;
                loop {
                    if i == n {
                        break;
                    }
                    a[i] += 1;
                    if a[i] <= 6 {
                        break;
                    }
                    a[i] = 1;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
        }
    });
}

#[test]
fn criterion_6_cyclic_embedding() {
    criterion(6, "cyclic multiplicative embedding", || {
        for m in 5..=12u64 {
            let emb = coloring::cyclic_embed(m).unwrap();
            assert_eq!(emb.field.element_order(&emb.generator).unwrap(), m);
        }
        let emb = coloring::cyclic_embed(5).unwrap();
        let z5 = AbelianGroup::cyclic(5);

        let check = |g: &Graph, labels: &[u64]| {
            let orient = Orientation { toward_max: vec![true; g.m()] };
            let (f, lists) =
                coloring::multiplicative_instance(g, &orient, labels, &emb).unwrap();
            // every multiplicative solution maps to a valid additive
            // coloring through the discrete log, and the counts agree
            let mut mult_solutions = Vec::new();
            let mut idx = vec![0usize; g.n];
            loop {
                let pt: Vec<_> = (0..g.n).map(|i| lists.lists[i][idx[i]].clone()).collect();
                if !emb.field.is_zero(&f.evaluate(&pt)) {
                    mult_solutions.push(
                        pt.iter()
                            .map(|x| emb.discrete_log(x).unwrap())
                            .collect::<Vec<u64>>(),
                    );
                }
                let mut i = 0;
                loop {
                    if i == g.n {
                        break;
                    }
                    idx[i] += 1;
                    if idx[i] < lists.lists[i].len() {
                        break;
                    }
                    idx[i] = 0;
                    i += 1;
                }
                if i == g.n {
                    break;
                }
            }
            let arcs = orient.directed_edges(g);
            for sol in &mult_solutions {
                for (&(tail, head), &l) in arcs.iter().zip(labels) {
                    assert_ne!((sol[head] + 5 - sol[tail]) % 5, l, "invalid mapped coloring");
                }
            }
            let group_labels: Vec<Vec<u64>> = labels.iter().map(|&l| vec![l]).collect();
            let additive = coloring::count_group_colorings(
                g,
                &orient,
                &z5,
                &group_labels,
                &vec![z5.elements(); g.n],
            );
            // distinct points have distinct logs, so agreement in count
            // plus validity of every image gives a bijection
            mult_solutions.sort_unstable();
            mult_solutions.dedup();
            assert_eq!(mult_solutions.len() as u64, additive);
        };

        let k3 = Graph::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        for code in 0..125u64 {
            let labels = vec![code % 5, code / 5 % 5, code / 25 % 5];
            check(&k3, &labels);
        }
        let k4 = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5_000);
        for _ in 0..K4_EMBED_LABELINGS {
            let labels: Vec<u64> = (0..6).map(|_| rng.gen_range(0..5)).collect();
            check(&k4, &labels);
        }
    });
}

fn small_corpus() -> Vec<(Graph, Option<NearTriangulation>)> {
    let mut out: Vec<(Graph, Option<NearTriangulation>)> = vec![
        (Graph::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap(), None),
        (Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap(), None),
        (
            Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]).unwrap(),
            None,
        ),
        (Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap(), None),
    ];
    for (seed, n, b) in [(21u64, 5, 4), (22, 5, 3), (23, 6, 5), (24, 6, 4), (25, 4, 3)] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nt = corpus::random_near_triangulation(n, b, &mut rng);
        out.push((nt.graph.clone(), Some(nt)));
    }
    out
}

#[test]
fn criterion_7_oracle_equivalence() {
    criterion(7, "pruned expansion and coefficient oracles", || {
        let fields = fields();
        for (idx, (g, _)) in small_corpus().into_iter().enumerate() {
            if g.m() > 9 {
                continue;
            }
            let field = &fields[idx % fields.len()];
            let mut rng = ChaCha8Rng::seed_from_u64(6_000 + idx as u64);
            let dec = corpus::random_decoration(field, &g, &mut rng);
            let lab = corpus::random_labeling(field, &g, &mut rng);
            let f = decorated_factors(&g, field, &dec, Some(&lab)).unwrap();
            let full = expand_capped(&f, &Cap::Unbounded, BUDGET).unwrap();
            let caps = [
                Cap::Uniform(1),
                Cap::Uniform(2),
                Cap::Uniform(3),
                Cap::PerVar((0..g.n as u32).map(|i| i % 3 + 1).collect()),
            ];
            for cap in &caps {
                let pruned = expand_capped(&f, cap, BUDGET).unwrap();
                assert_eq!(pruned, full.filtered(cap), "graph {idx}: cap mismatch");
            }
            for (monomial, coeff) in &full.terms {
                let c = coeff_of_monomial(&f, monomial);
                assert!(
                    field.is_zero(&field.sub(&c, coeff)),
                    "graph {idx}: coefficient mismatch at {monomial:?}"
                );
            }
            // a few monomials absent from the expansion must yield zero
            for k in 0..5u32 {
                let mut probe = vec![0u32; g.n];
                probe[(k as usize) % g.n] = g.m() as u32 + k;
                if !full.terms.contains_key(&probe) {
                    assert!(field.is_zero(&coeff_of_monomial(&f, &probe)));
                }
            }
        }
    });
}

#[test]
fn criterion_8_label_invariance() {
    criterion(8, "labeled polynomial top part", || {
        let fields = fields();
        for seed in 0..LABEL_INVARIANCE_TRIPLES as u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(7_000 + seed);
            let field = &fields[seed as usize % fields.len()];
            let b = 3 + rng.gen_range(0..2usize);
            let n = (b + rng.gen_range(0..2usize)).min(5);
            let nt = corpus::random_near_triangulation(n, b, &mut rng);
            let g = nt.graph;
            if g.m() > 9 {
                continue;
            }
            let dec = corpus::random_decoration(field, &g, &mut rng);
            let lab = corpus::random_labeling(field, &g, &mut rng);
            let labeled = decorated_factors(&g, field, &dec, Some(&lab)).unwrap();
            let unlabeled = decorated_factors(&g, field, &dec, None).unwrap();
            // the top-degree homogeneous part of the labeled expansion
            // must equal the unlabeled polynomial exactly
            let full = expand_capped(&labeled, &Cap::Unbounded, BUDGET).unwrap();
            let top = full.homogeneous_part(g.m() as u32);
            let plain = expand_capped(&unlabeled, &Cap::Unbounded, BUDGET).unwrap();
            assert_eq!(top, plain, "seed {seed}: top part differs");
            // hence the least max-exponent over top monomials agrees
            let an_labeled = top
                .terms
                .keys()
                .map(|m| m.iter().copied().max().unwrap_or(0))
                .min()
                .unwrap();
            let an_plain = an_number(&unlabeled, BUDGET).unwrap();
            assert_eq!(an_labeled, an_plain, "seed {seed}: an number differs");
        }
    });
}

#[test]
fn criterion_9_planar_matching() {
    criterion(9, "planar matching search", || {
        let f5 = Field::prime(5);
        let mut graphs: Vec<Graph> = small_corpus().into_iter().map(|(g, _)| g).collect();
        for (seed, n) in [(31u64, 7), (32, 8), (33, 8)] {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            graphs.push(corpus::random_triangulation(n, &mut rng).graph);
        }
        for (idx, g) in graphs.iter().enumerate() {
            assert!(g.n <= 8);
            let dec = Decoration::default_for(&f5, g);
            let (s, cert) = certify::find_matching_at3(g, &f5, &dec, 10, BUDGET)
                .unwrap_or_else(|err| panic!("graph {idx}: {err}"));
            // s is a matching
            let mut used = vec![false; g.n];
            for &(u, v) in &s {
                assert!(g.has_edge(u, v) && !used[u] && !used[v], "graph {idx}");
                used[u] = true;
                used[v] = true;
            }
            assert!(cert.max_exponent() <= 3, "graph {idx}");
            let remaining = g.without_edges(&s);
            assert_eq!(
                cert.monomial.iter().sum::<u32>() as usize,
                remaining.m(),
                "graph {idx}: not top degree"
            );
            let f = decorated_factors(&remaining, &f5, &dec, None).unwrap();
            assert!(!f5.is_zero(&coeff_of_monomial(&f, &cert.monomial)), "graph {idx}");
            // sanity anchor: the bound follows the degeneracy chain
            let (_, col) = degeneracy_order(g);
            assert!(col >= 1);
        }
    });
}
