//! Acceptance criteria 1 to 11. Prints one line per criterion and exits
//! nonzero when any fails.

use std::time::{Duration, Instant};

use minhom_core::annotate::annotate_edges;
use minhom_core::approx::{approx_basis, figure_one};
use minhom_core::candidates::horton_set;
use minhom_core::fixtures::{self, RandomSpec};
use minhom_core::hd_persistence::hd_minimal_basis;
use minhom_core::minbasis::{
    cycle_basis_with, minimal_homology_basis, AuditFailure, Options, Strategy,
};
use minhom_core::oracle::{
    oracle_all_shortest_paths, oracle_min_basis, OracleSizer, DEFAULT_MAX_DIMENSION,
};
use minhom_core::z2::solve_linear;
use minhom_core::{
    BitVec, PathDominatedDistance, SimplicialComplex, SizeMeasure, ValueMetric,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn corpus() -> Vec<(String, SimplicialComplex)> {
    let mut out: Vec<(String, SimplicialComplex)> = fixtures::named()
        .into_iter()
        .map(|(n, k)| (n.to_string(), k))
        .collect();
    out.extend((0..200).map(|s| (format!("random#{s}"), fixtures::random_complex(s, RandomSpec::default()))));
    out
}

fn with_function(k: &SimplicialComplex, seed: u64) -> SimplicialComplex {
    k.clone()
        .with_vertex_function(fixtures::random_scalar_function(seed, k.n_vertices(), 9))
}

fn oracle_equivalence(corpus: &[(String, SimplicialComplex)]) -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for (name, k) in corpus {
        let d = PathDominatedDistance::graph(k);
        let exact = minimal_homology_basis(&d, SizeMeasure::SumOfWeights).unwrap();
        let oracle = oracle_min_basis(&d, SizeMeasure::SumOfWeights, DEFAULT_MAX_DIMENSION).unwrap();
        if exact.size_sequence() != oracle.size_sequence() || exact.annotation_rank() != exact.g {
            bad.push(name.clone());
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        pass: bad.is_empty() && elapsed < Duration::from_secs(60),
        detail: format!(
            "{} complexes, {} mismatches {:?}, {:.2} s (limit 60 s)",
            corpus.len(),
            bad.len(),
            bad,
            elapsed.as_secs_f64()
        ),
    }
}

fn fixture_values() -> Outcome {
    let sum = |k: &SimplicialComplex| {
        minimal_homology_basis(&PathDominatedDistance::graph(k), SizeMeasure::SumOfWeights).unwrap()
    };
    let oct = sum(&fixtures::octahedron());
    let square = sum(&fixtures::four_cycle());
    let torus = sum(&fixtures::csaszar_torus());
    let torus_oracle = oracle_min_basis(
        &PathDominatedDistance::graph(&fixtures::csaszar_torus()),
        SizeMeasure::SumOfWeights,
        DEFAULT_MAX_DIMENSION,
    )
    .unwrap();
    let pass = oct.g == 0
        && oct.cycles.is_empty()
        && square.size_sequence() == [4.0]
        && torus.g == 2
        && torus.size_sequence() == [3.0, 3.0]
        && torus_oracle.size_sequence() == [3.0, 3.0];
    Outcome {
        pass,
        detail: format!(
            "octahedron g={} basis={:?}; four-cycle {:?}; torus g={} {:?} (oracle {:?})",
            oct.g,
            oct.size_sequence(),
            square.size_sequence(),
            torus.g,
            torus.size_sequence(),
            torus_oracle.size_sequence()
        ),
    }
}

fn annotation_soundness(corpus: &[(String, SimplicialComplex)]) -> Outcome {
    let mut failures = 0;
    let mut checked = 0usize;
    for (_, k) in corpus {
        let ann = annotate_edges(k);
        for t in 0..k.triangles().len() {
            checked += 1;
            if !ann.sum(k.faces(2, t)).is_zero() {
                failures += 1;
            }
        }
        if k.n_edges() > 20 {
            continue;
        }
        // annotations are linear, so a(z1) = a(z2) iff z1 + z2 bounds is the
        // same as: a(z) = 0 iff z bounds, over every z in the cycle space
        let basis = k.boundary_matrix(1).kernel();
        let d2 = k.boundary_matrix(2);
        let mut z = BitVec::zeros(k.n_edges());
        for t in 1usize..1 << basis.len() {
            z.xor_assign(&basis[t.trailing_zeros() as usize]);
            checked += 1;
            let bounds = solve_linear(&d2, &z).unwrap().is_some();
            if ann.sum(z.ones()).is_zero() != bounds {
                failures += 1;
            }
        }
    }
    Outcome {
        pass: failures == 0,
        detail: format!("{checked} checks, {failures} failures"),
    }
}

struct AuditTotals {
    snapshots: usize,
    selections: usize,
    updates: usize,
    support: usize,
    update_mismatch: usize,
}

fn audit_corpus(corpus: &[(String, SimplicialComplex)]) -> AuditTotals {
    let mut t = AuditTotals {
        snapshots: 0,
        selections: 0,
        updates: 0,
        support: 0,
        update_mismatch: 0,
    };
    for (_, k) in corpus {
        let d = PathDominatedDistance::graph(k);
        let ann = annotate_edges(k);
        let h = horton_set(&d, SizeMeasure::SumOfWeights);
        for strategy in [Strategy::Recursive, Strategy::Flat] {
            let (_, log) = cycle_basis_with(&h, &ann, Options { strategy, audit: true }).unwrap();
            let log = log.unwrap();
            t.snapshots += log.snapshots;
            t.selections += log.selections_checked;
            t.updates += log.updates_checked;
            for f in &log.failures {
                match f {
                    AuditFailure::UpdateMismatch { .. } => t.update_mismatch += 1,
                    _ => t.support += 1,
                }
            }
        }
    }
    t
}

fn approximation_quality(corpus: &[(String, SimplicialComplex)]) -> Outcome {
    let randoms: Vec<&(String, SimplicialComplex)> =
        corpus.iter().filter(|(n, _)| n.starts_with("random")).collect();
    let mut within = 0;
    let mut valid = 0;
    let mut worst: f64 = 1.0;
    let mut below_one = 0;
    let mut sampled = 0;
    for (i, (_, k)) in randoms.iter().enumerate() {
        let d = PathDominatedDistance::graph(k);
        let exact = minimal_homology_basis(&d, SizeMeasure::SumOfWeights).unwrap();
        let (basis, cert) = approx_basis(&d, SizeMeasure::SumOfWeights, i as u64, 2.0).unwrap();
        if cert.roots.len() < k.n_vertices() {
            sampled += 1;
        }
        if basis.annotation_rank() == basis.g && basis.cycles.len() == exact.g {
            valid += 1;
        }
        let mut ok = true;
        for (l, l_star) in basis.size_sequence().iter().zip(exact.size_sequence()) {
            let ratio = if l_star == 0.0 { 1.0 } else { l / l_star };
            worst = worst.max(ratio);
            if ratio < 1.0 {
                below_one += 1;
                ok = false;
            }
            if ratio > 2.0 {
                ok = false;
            }
        }
        if ok {
            within += 1;
        }
    }
    let n = randoms.len();
    Outcome {
        pass: valid == n && within * 100 >= n * 95,
        detail: format!(
            "{within}/{n} instances within 1..2x, {valid}/{n} valid bases, worst ratio {worst:.3}, \
             {below_one} ratios below 1, {sampled} runs used fewer roots than vertices"
        ),
    }
}

fn counter_example() -> Outcome {
    match figure_one() {
        Ok(fig) => Outcome {
            pass: fig.is_counter_example(),
            detail: format!(
                "a-h weight {}; C1..C4 = {}, {}, {}, {}; C4' = {}; minimal cycle basis {:?}; \
                 minimal homology total {}; best homology basis inside {{C2,C3,C4,C4'}} {} > 2x{}",
                fig.ah_weight,
                fig.c1.size,
                fig.c2.size,
                fig.c3.size,
                fig.c4.size,
                fig.c4_prime.size,
                fig.min_cycle_basis,
                fig.min_homology_total,
                fig.contained_total,
                fig.min_homology_total
            ),
        },
        Err(e) => Outcome {
            pass: false,
            detail: e.to_string(),
        },
    }
}

fn generalized_measures(corpus: &[(String, SimplicialComplex)]) -> Outcome {
    let mut bad = Vec::new();
    let mut recorded_differs = 0;
    let mut count = 0;
    for (i, (name, k)) in corpus.iter().enumerate() {
        let kf = with_function(k, i as u64);
        let distances = [
            ("graph", PathDominatedDistance::graph(k)),
            ("function", PathDominatedDistance::function(&kf, ValueMetric::Euclidean).unwrap()),
        ];
        for (kind, d) in &distances {
            count += 1;
            let exact = minimal_homology_basis(d, SizeMeasure::Radius).unwrap();
            let oracle = oracle_min_basis(d, SizeMeasure::Radius, DEFAULT_MAX_DIMENSION).unwrap();
            if exact.size_sequence() != oracle.size_sequence() || exact.annotation_rank() != exact.g {
                bad.push(format!("{name}/{kind}"));
            }
            // does the root-centered radius of a selected cycle ever exceed
            // its true radius?
            let sizer = OracleSizer::new(d, SizeMeasure::Radius);
            for c in &exact.cycles {
                let z = BitVec::from_indices(k.n_edges(), c.simplices.iter().copied());
                if sizer.size(&z) != c.size {
                    recorded_differs += 1;
                }
            }
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!(
            "{count} runs, {} mismatches {:?}; selected cycles whose root radius exceeds the \
             true radius: {recorded_differs}",
            bad.len(),
            bad
        ),
    }
}

fn permuted(k: &SimplicialComplex, seed: u64) -> SimplicialComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize, f64)> = k
        .edges()
        .iter()
        .map(|e| if rng.random_bool(0.5) { (e.v, e.u, e.weight) } else { (e.u, e.v, e.weight) })
        .collect();
    edges.shuffle(&mut rng);
    let mut tris = k.triangles().to_vec();
    tris.shuffle(&mut rng);
    let out = SimplicialComplex::from_parts(k.n_vertices(), edges, tris);
    match k.vertex_function() {
        Some(f) => out.with_vertex_function(f.to_vec()),
        None => out,
    }
}

use rand::Rng;

fn unique_paths(corpus: &[(String, SimplicialComplex)]) -> Outcome {
    let mut checked = 0;
    let mut not_minimal = Vec::new();
    let mut unstable = Vec::new();
    for (i, (name, k)) in corpus.iter().enumerate() {
        if k.n_vertices() > 12 {
            continue;
        }
        let kf = with_function(k, i as u64);
        let perm = permuted(&kf, i as u64);
        for function in [false, true] {
            let (d, dp) = if function {
                (
                    PathDominatedDistance::function(&kf, ValueMetric::Euclidean).unwrap(),
                    PathDominatedDistance::function(&perm, ValueMetric::Euclidean).unwrap(),
                )
            } else {
                (PathDominatedDistance::graph(&kf), PathDominatedDistance::graph(&perm))
            };
            let all = oracle_all_shortest_paths(&d).unwrap();
            for x in 0..k.n_vertices() {
                let tree = d.build_spt(x);
                let tree_p = dp.build_spt(x);
                for y in 0..k.n_vertices() {
                    checked += 1;
                    let path = tree.path_to(y);
                    let min = all.minimal(x, y);
                    let tree_path = all.paths(x, y).iter().find(|p| p.vertices == path);
                    let minimal = tree_path.is_some_and(|p| {
                        p.shortest && p.order(min) == std::cmp::Ordering::Equal
                    });
                    if !minimal {
                        not_minimal.push(format!("{name} {x}->{y}"));
                    }
                    if tree_p.path_to(y) != path || tree_p.dist[y] != tree.dist[y] {
                        unstable.push(format!("{name} {x}->{y}"));
                    }
                }
            }
        }
    }
    Outcome {
        pass: not_minimal.is_empty() && unstable.is_empty(),
        detail: format!(
            "{checked} tree paths; {} not order-minimal, {} changed under permuted input",
            not_minimal.len(),
            unstable.len()
        ),
    }
}

fn appendix_a(corpus: &[(String, SimplicialComplex)]) -> Outcome {
    let mut bad = Vec::new();
    for (name, k) in corpus.iter().filter(|(n, _)| !n.starts_with("random")) {
        let d = PathDominatedDistance::graph(k);
        let hd = hd_minimal_basis(&d, 1).unwrap();
        let exact = minimal_homology_basis(&d, SizeMeasure::Radius).unwrap();
        if hd.size_sequence() != exact.size_sequence() {
            bad.push(name.clone());
        }
    }
    let sphere = fixtures::tetrahedron_boundary();
    let hd2 = hd_minimal_basis(&PathDominatedDistance::graph(&sphere), 2).unwrap();
    let sphere_ok = hd2.g == 1 && hd2.size_sequence() == [1.0] && hd2.cycles[0].simplices.len() == 4;
    Outcome {
        pass: bad.is_empty() && sphere_ok,
        detail: format!(
            "d=1 mismatches on fixtures {:?}; d=2 hollow tetrahedron sizes {:?} with {} triangles",
            bad,
            hd2.size_sequence(),
            hd2.cycles.first().map_or(0, |c| c.simplices.len())
        ),
    }
}

fn time_exact(k: &SimplicialComplex) -> (Duration, usize) {
    let start = Instant::now();
    let r = minimal_homology_basis(&PathDominatedDistance::graph(k), SizeMeasure::SumOfWeights).unwrap();
    (start.elapsed(), r.cycles.len())
}

fn performance() -> Outcome {
    let small = fixtures::perforated_grid(21, 25, 7);
    let large = fixtures::perforated_grid(30, 50, 7);
    let (t_small, g_small) = time_exact(&small);
    let (t_large, g_large) = time_exact(&large);
    let ratio = t_large.as_secs_f64() / t_small.as_secs_f64().max(1e-9);
    Outcome {
        pass: t_large < Duration::from_secs(120) && ratio <= 8.0 && g_large == 50,
        detail: format!(
            "{} simplices g={} in {:.2} s; {} simplices g={} in {:.2} s; ratio {:.2} (limit 8)",
            small.n_simplices(),
            g_small,
            t_small.as_secs_f64(),
            large.n_simplices(),
            g_large,
            t_large.as_secs_f64(),
            ratio
        ),
    }
}

fn main() {
    let corpus = corpus();
    let audit = audit_corpus(&corpus);
    let criteria: Vec<(&str, Outcome)> = vec![
        ("oracle equivalence, weight sums", oracle_equivalence(&corpus)),
        ("fixture values", fixture_values()),
        ("annotation soundness", annotation_soundness(&corpus)),
        (
            "support invariants",
            Outcome {
                pass: audit.support == 0 && audit.selections > 0,
                detail: format!(
                    "{} snapshots, {} selections rescanned, {} failures",
                    audit.snapshots, audit.selections, audit.support
                ),
            },
        ),
        (
            "update algebra",
            Outcome {
                pass: audit.update_mismatch == 0 && audit.updates > 0,
                detail: format!("{} updates checked, {} mismatches", audit.updates, audit.update_mismatch),
            },
        ),
        ("approximation quality", approximation_quality(&corpus)),
        ("counter-example", counter_example()),
        ("generalized measures", generalized_measures(&corpus)),
        ("unique shortest paths", unique_paths(&corpus)),
        ("persistence basis", appendix_a(&corpus)),
        ("performance smoke", performance()),
    ];
    let mut failed = 0;
    for (i, (name, outcome)) in criteria.iter().enumerate() {
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {verdict} {name}: {}", i + 1, outcome.detail);
        if !outcome.pass {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
