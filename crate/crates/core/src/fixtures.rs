//! Named test complexes and seeded random generators.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::SimplicialComplex;

fn unit(edges: &[(usize, usize)]) -> Vec<(usize, usize, f64)> {
    edges.iter().map(|&(u, v)| (u, v, 1.0)).collect()
}

/// A single filled triangle.
#[must_use]
pub fn filled_triangle() -> SimplicialComplex {
    SimplicialComplex::from_parts(3, unit(&[(0, 1), (1, 2), (0, 2)]), [[0, 1, 2]])
}

/// The square 0–1–2–3–0 with no triangles.
#[must_use]
pub fn four_cycle() -> SimplicialComplex {
    SimplicialComplex::from_parts(4, unit(&[(0, 1), (1, 2), (2, 3), (0, 3)]), [])
}

/// Square 0–1–2–3 with the chord 0–2 and no triangles.
#[must_use]
pub fn theta() -> SimplicialComplex {
    SimplicialComplex::from_parts(4, unit(&[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]), [])
}

/// Boundary of the octahedron: poles 0 and 5, equator 1–2–3–4.
#[must_use]
pub fn octahedron() -> SimplicialComplex {
    let mut edges = Vec::new();
    let mut triangles = Vec::new();
    for i in 1..=4 {
        let j = if i == 4 { 1 } else { i + 1 };
        edges.push((0, i));
        edges.push((5, i));
        edges.push((i, j));
        triangles.push([0, i, j]);
        triangles.push([5, i, j]);
    }
    SimplicialComplex::from_parts(6, unit(&edges), triangles)
}

/// The seven-vertex Császár/Möbius torus: the complete graph K₇ with the
/// fourteen triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` (mod 7).
#[must_use]
pub fn csaszar_torus() -> SimplicialComplex {
    let mut edges = Vec::new();
    for u in 0..7 {
        for v in u + 1..7 {
            edges.push((u, v));
        }
    }
    let mut triangles = Vec::new();
    for i in 0..7 {
        triangles.push([i, (i + 1) % 7, (i + 3) % 7]);
        triangles.push([i, (i + 2) % 7, (i + 3) % 7]);
    }
    SimplicialComplex::from_parts(7, unit(&edges), triangles)
}

/// Hollow tetrahedron: all four triangles, no 3-cell.
#[must_use]
pub fn tetrahedron_boundary() -> SimplicialComplex {
    let edges = unit(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    SimplicialComplex::from_parts(4, edges, [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]])
}

#[must_use]
pub fn solid_tetrahedron() -> SimplicialComplex {
    tetrahedron_boundary().with_simplices(3, [vec![0, 1, 2, 3]])
}

/// Outer octagon `a..h` (vertices 0..7) with chords `b–h`, `d–h`, `e–g`
/// and the filled triangle `e–f–g`. `ah_weight` is the one edge weight the
/// picture leaves open; see [`crate::approx::figure_one`] for how it is
/// chosen.
#[must_use]
pub fn figure_one_pattern(ah_weight: f64) -> SimplicialComplex {
    const A: usize = 0;
    const B: usize = 1;
    const C: usize = 2;
    const D: usize = 3;
    const E: usize = 4;
    const F: usize = 5;
    const G: usize = 6;
    const H: usize = 7;
    let edges = [
        (A, B, 1.0),
        (B, C, 1.0),
        (C, D, 2.0),
        (D, E, 1.0),
        (E, F, 8.0),
        (F, G, 5.0),
        (G, H, 3.0),
        (A, H, ah_weight),
        (B, H, 1.0),
        (D, H, 2.0),
        (E, G, 3.0),
    ];
    SimplicialComplex::from_parts(8, edges, [[E, F, G]])
}

/// Every named fixture with a short name.
#[must_use]
pub fn named() -> Vec<(&'static str, SimplicialComplex)> {
    vec![
        ("triangle", filled_triangle()),
        ("four_cycle", four_cycle()),
        ("theta", theta()),
        ("octahedron", octahedron()),
        ("csaszar_torus", csaszar_torus()),
        ("tetrahedron_boundary", tetrahedron_boundary()),
        ("solid_tetrahedron", solid_tetrahedron()),
        ("figure_one", figure_one_pattern(1.0)),
    ]
}

/// Shape parameters for [`random_complex`].
#[derive(Debug, Clone, Copy)]
pub struct RandomSpec {
    pub min_vertices: usize,
    pub max_vertices: usize,
    pub max_edges: usize,
    /// Probability that each 3-clique of the 1-skeleton is filled.
    pub fill: f64,
    pub max_weight: u32,
}

impl Default for RandomSpec {
    fn default() -> Self {
        Self {
            min_vertices: 3,
            max_vertices: 12,
            max_edges: 20,
            fill: 0.35,
            max_weight: 9,
        }
    }
}

/// A connected random 2-complex with integer weights in `1..=max_weight`.
#[must_use]
pub fn random_complex(seed: u64, spec: RandomSpec) -> SimplicialComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(spec.min_vertices..=spec.max_vertices);
    let max_edges = spec.max_edges.min(n * (n - 1) / 2).max(n - 1);
    let target = rng.random_range(n - 1..=max_edges);
    let mut present = vec![vec![false; n]; n];
    let mut pairs = Vec::new();
    #[allow(clippy::needless_range_loop)]
    for v in 1..n {
        let u = rng.random_range(0..v);
        present[u][v] = true;
        pairs.push((u, v));
    }
    let mut missing: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !present[u][v])
        .collect();
    missing.shuffle(&mut rng);
    for &(u, v) in missing.iter().take(target - pairs.len()) {
        present[u][v] = true;
        pairs.push((u, v));
    }
    let edges: Vec<(usize, usize, f64)> = pairs
        .iter()
        .map(|&(u, v)| (u, v, f64::from(rng.random_range(1..=spec.max_weight))))
        .collect();
    let mut triangles = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if present[a][b] && present[b][c] && present[a][c] && rng.random_bool(spec.fill) {
                    triangles.push([a, b, c]);
                }
            }
        }
    }
    SimplicialComplex::from_parts(n, edges, triangles)
}

/// Scalar vertex function with values in `0..=max`, for function-induced
/// distances.
#[must_use]
pub fn random_scalar_function(seed: u64, n_vertices: usize, max: u32) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_f00d);
    (0..n_vertices)
        .map(|_| vec![f64::from(rng.random_range(0..=max))])
        .collect()
}

/// Triangulated `side × side` grid with `holes` interior triangles removed.
/// The removed triangles share no vertex with each other or the border, so
/// the first Betti number equals `holes`.
#[must_use]
pub fn perforated_grid(side: usize, holes: usize, seed: u64) -> SimplicialComplex {
    assert!(side >= 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = |r: usize, c: usize| r * side + c;
    let mut edges = Vec::new();
    for r in 0..side {
        for c in 0..side {
            if c + 1 < side {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < side {
                edges.push((id(r, c), id(r + 1, c)));
            }
            if r + 1 < side && c + 1 < side {
                edges.push((id(r, c), id(r + 1, c + 1)));
            }
        }
    }
    let mut triangles = Vec::new();
    for r in 0..side - 1 {
        for c in 0..side - 1 {
            triangles.push([id(r, c), id(r, c + 1), id(r + 1, c + 1)]);
            triangles.push([id(r, c), id(r + 1, c), id(r + 1, c + 1)]);
        }
    }
    let interior = |v: usize| {
        let (r, c) = (v / side, v % side);
        r > 0 && c > 0 && r + 1 < side && c + 1 < side
    };
    let mut order: Vec<usize> = (0..triangles.len()).collect();
    order.shuffle(&mut rng);
    let mut used = vec![false; side * side];
    let mut removed = vec![false; triangles.len()];
    let mut count = 0;
    for t in order {
        if count == holes {
            break;
        }
        let tri = triangles[t];
        if tri.iter().all(|&v| interior(v) && !used[v]) {
            for &v in &tri {
                used[v] = true;
            }
            removed[t] = true;
            count += 1;
        }
    }
    assert_eq!(count, holes, "grid too small for {holes} holes");
    let weighted: Vec<(usize, usize, f64)> = edges
        .into_iter()
        .map(|(u, v)| (u, v, f64::from(rng.random_range(1..=9u32))))
        .collect();
    let kept = triangles
        .into_iter()
        .zip(removed)
        .filter(|(_, r)| !r)
        .map(|(t, _)| t);
    SimplicialComplex::from_parts(side * side, weighted, kept)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_complexes_are_valid_and_bounded() {
        let spec = RandomSpec::default();
        for seed in 0..50 {
            let k = random_complex(seed, spec);
            assert!(k.validate().is_empty(), "seed {seed}");
            assert!(k.n_vertices() <= 12 && k.n_edges() <= 20);
        }
    }

    #[test]
    fn random_complex_is_deterministic() {
        let a = random_complex(7, RandomSpec::default());
        let b = random_complex(7, RandomSpec::default());
        assert_eq!(a.edges(), b.edges());
        assert_eq!(a.triangles(), b.triangles());
    }

    #[test]
    fn perforated_grid_betti() {
        let k = perforated_grid(8, 4, 1);
        assert!(k.validate().is_empty());
        assert_eq!(k.betti_1(), 4);
    }
}
