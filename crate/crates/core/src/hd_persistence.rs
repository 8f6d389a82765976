//! Minimal basis of H_d under the radius measure from ball filtrations.
//!
//! For each root `p` the simplices enter in order of `d_p(σ)`, the largest
//! distance from `p` to a vertex of `σ`. Reducing the boundary columns of
//! that order leaves exactly `g` essential `d`-creators; each gives a cycle
//! that lives in the ball of radius equal to its birth. Pooled over roots
//! and sorted by birth, the earliest basis of their annotations is a
//! minimal basis.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::annotate::annotate_simplices;
use crate::complex::{ChainVector, SimplicialComplex};
use crate::error::Error;
use crate::metric::PathDominatedDistance;
use crate::minbasis::{BasisCycle, BasisResult};
use crate::z2::{BitMatrix, BitVec, EchelonBasis};

/// All simplices of a complex ordered for one root.
#[derive(Debug, Clone, PartialEq)]
pub struct Filtration {
    pub root: usize,
    /// `d(root, v)` per vertex.
    pub dist: Vec<f64>,
    /// `(dim, index)` in filtration order.
    pub order: Vec<(usize, usize)>,
    /// `d_p` of each entry of `order`.
    pub values: Vec<f64>,
}

impl Filtration {
    /// Number of entries with value at most `r`.
    #[must_use]
    pub fn prefix_len(&self, r: f64) -> usize {
        self.values.partition_point(|&v| v <= r)
    }

    /// Positions of `dim`-simplices in the order, by simplex index.
    fn local_ranks(&self, k: &SimplicialComplex, dim: usize) -> (Vec<usize>, Vec<usize>) {
        let mut rank = vec![usize::MAX; k.count(dim)];
        let mut at = Vec::new();
        for &(d, i) in &self.order {
            if d == dim {
                rank[i] = at.len();
                at.push(i);
            }
        }
        (rank, at)
    }
}

/// Simplices sorted by `(d_p, dimension, index)`.
#[must_use]
pub fn build_filtration(d: &PathDominatedDistance<'_>, p: usize) -> Filtration {
    let k = d.complex();
    let dist = d.distances_from(p);
    let mut entries: Vec<(f64, usize, usize)> = Vec::with_capacity(k.n_simplices());
    for dim in 0..=k.dimension() {
        for i in 0..k.count(dim) {
            let value = k
                .simplex(dim, i)
                .iter()
                .map(|&x| dist[x])
                .fold(0.0, f64::max);
            entries.push((value, dim, i));
        }
    }
    entries.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    Filtration {
        root: p,
        dist,
        order: entries.iter().map(|&(_, d, i)| (d, i)).collect(),
        values: entries.iter().map(|&(v, _, _)| v).collect(),
    }
}

/// Reduced columns of one dimension.
struct Reduction {
    /// Per column (in local order): reduced boundary is zero.
    zero: Vec<bool>,
    /// Per column: the accumulated chain, over local column indices.
    chains: Vec<BitVec>,
    /// Per column: pivot row in local row order, if nonzero.
    low: Vec<Option<usize>>,
}

/// Standard column reduction of `∂_dim` with rows and columns in filtration
/// order, keeping the chain of original columns behind each reduced one.
fn reduce(k: &SimplicialComplex, f: &Filtration, dim: usize) -> Reduction {
    let (_, columns) = f.local_ranks(k, dim);
    let n_cols = columns.len();
    let (row_rank, n_rows) = if dim == 0 {
        (Vec::new(), 0)
    } else {
        let (r, at) = f.local_ranks(k, dim - 1);
        (r, at.len())
    };
    let mut reduced: Vec<BitVec> = Vec::with_capacity(n_cols);
    let mut chains = Vec::with_capacity(n_cols);
    let mut low = Vec::with_capacity(n_cols);
    let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
    for (j, &s) in columns.iter().enumerate() {
        let mut col = if dim == 0 {
            BitVec::zeros(0)
        } else {
            BitVec::from_indices(n_rows, k.faces(dim, s).into_iter().map(|x| row_rank[x]))
        };
        let mut chain = BitVec::unit(n_cols, j);
        while let Some(l) = col.last_one() {
            match owner.get(&l) {
                Some(&o) => {
                    col.xor_assign(&reduced[o]);
                    chain.xor_assign(&chains[o]);
                }
                None => break,
            }
        }
        let l = col.last_one();
        if let Some(l) = l {
            owner.insert(l, j);
        }
        low.push(l);
        reduced.push(col);
        chains.push(chain);
    }
    Reduction {
        zero: low.iter().map(Option::is_none).collect(),
        chains,
        low,
    }
}

/// A cycle born at a creator that is never killed.
#[derive(Debug, Clone, PartialEq)]
pub struct EssentialCycle {
    pub chain: ChainVector,
    /// Birth radius `r_p`.
    pub birth: f64,
    /// The creator's position among `dim`-simplices of the filtration.
    pub creator: usize,
}

/// Persistence pairs in dimension `dim`: `(creator, killer)` by local
/// positions among `dim`- and `(dim+1)`-simplices, `None` for essential
/// creators.
#[must_use]
pub fn persistence_pairs(k: &SimplicialComplex, f: &Filtration, dim: usize) -> Vec<(usize, Option<usize>)> {
    let down = reduce(k, f, dim);
    let up = reduce(k, f, dim + 1);
    let mut killer = vec![None; down.zero.len()];
    for (j, l) in up.low.iter().enumerate() {
        if let Some(l) = *l {
            killer[l] = Some(j);
        }
    }
    (0..down.zero.len())
        .filter(|&j| down.zero[j])
        .map(|j| (j, killer[j]))
        .collect()
}

/// Essential `dim`-cycles of a filtration with their births.
#[must_use]
pub fn essential_cycles(k: &SimplicialComplex, f: &Filtration, dim: usize) -> Vec<EssentialCycle> {
    let (_, columns) = f.local_ranks(k, dim);
    let down = reduce(k, f, dim);
    let pairs = persistence_pairs(k, f, dim);
    let position: BTreeMap<(usize, usize), usize> =
        f.order.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    pairs
        .into_iter()
        .filter(|(_, killer)| killer.is_none())
        .map(|(j, _)| EssentialCycle {
            chain: ChainVector::from_simplices(k, dim, down.chains[j].ones().map(|c| columns[c])),
            birth: f.values[position[&(dim, columns[j])]],
            creator: j,
        })
        .collect()
}

/// Minimal basis of H_dim under the radius measure of `d`.
pub fn hd_minimal_basis(d: &PathDominatedDistance<'_>, dim: usize) -> Result<BasisResult, Error> {
    if dim == 0 {
        return Err(Error::Unsupported("dimension must be at least 1".into()));
    }
    let k = d.complex();
    let ann = annotate_simplices(k, dim);
    let g = ann.g();
    if g == 0 {
        return Ok(BasisResult::empty(0));
    }
    let mut pool: Vec<(f64, usize, usize, ChainVector)> = Vec::with_capacity(g * k.n_vertices());
    for p in 0..k.n_vertices() {
        let cycles = essential_cycles(k, &build_filtration(d, p), dim);
        if cycles.len() != g {
            return Err(Error::Invariant(format!(
                "root {p} has {} essential {dim}-cycles, expected {g}",
                cycles.len()
            )));
        }
        pool.extend(cycles.into_iter().map(|c| (c.birth, p, c.creator, c.chain)));
    }
    pool.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    // X = ΓY: candidate chains times the annotation table
    let gamma = BitMatrix::from_rows(k.count(dim), &pool.iter().map(|c| c.3.bits.clone()).collect::<Vec<_>>());
    let x = gamma.mul(ann.as_rows())?;
    let mut span = EchelonBasis::new(g);
    let mut cycles = Vec::new();
    for (r, (birth, root, _, chain)) in pool.iter().enumerate() {
        if cycles.len() == g {
            break;
        }
        let row = x.row(r);
        if span.insert(&row) {
            cycles.push(BasisCycle {
                dim,
                simplices: chain.simplices().collect(),
                size: *birth,
                annotation: row,
                root: Some(*root),
            });
        }
    }
    if cycles.len() < g {
        return Err(Error::SpanFailure {
            dim,
            rank: cycles.len(),
            expected: g,
        });
    }
    Ok(BasisResult { g, cycles })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::candidates::SizeMeasure;
    use crate::fixtures;
    use crate::minbasis::minimal_homology_basis;

    #[test]
    fn faces_come_first() {
        let k = fixtures::csaszar_torus();
        let d = PathDominatedDistance::graph(&k);
        for p in 0..k.n_vertices() {
            let f = build_filtration(&d, p);
            let pos: BTreeMap<(usize, usize), usize> =
                f.order.iter().enumerate().map(|(i, &s)| (s, i)).collect();
            for (i, &(dim, s)) in f.order.iter().enumerate() {
                if dim > 0 {
                    for face in k.faces(dim, s) {
                        assert!(pos[&(dim - 1, face)] < i);
                    }
                }
            }
            assert!(f.values.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn prefixes_are_balls() {
        let k = fixtures::csaszar_torus();
        let d = PathDominatedDistance::graph(&k);
        let f = build_filtration(&d, 2);
        for r in [0.0, 1.0] {
            let ball = d.ball(2, r);
            let prefix = &f.order[..f.prefix_len(r)];
            let total: usize = ball.simplices.iter().map(Vec::len).sum();
            assert_eq!(prefix.len(), total);
            assert!(prefix.iter().all(|&(dim, i)| ball.contains(dim, i)));
        }
        assert_eq!(f.prefix_len(0.0), 1);
    }

    #[test]
    fn octahedron_has_no_essential_loops() {
        let k = fixtures::octahedron();
        let f = build_filtration(&PathDominatedDistance::graph(&k), 0);
        assert!(essential_cycles(&k, &f, 1).is_empty());
    }

    #[test]
    fn square_loop_born_at_two() {
        let k = fixtures::four_cycle();
        let d = PathDominatedDistance::graph(&k);
        for p in 0..4 {
            let cycles = essential_cycles(&k, &build_filtration(&d, p), 1);
            assert_eq!(cycles.len(), 1);
            assert_eq!(cycles[0].birth, 2.0);
            assert!(cycles[0].chain.is_cycle(&k));
        }
    }

    #[test]
    fn torus_two_cycles_per_root() {
        let k = fixtures::csaszar_torus();
        let d = PathDominatedDistance::graph(&k);
        for p in 0..7 {
            let cycles = essential_cycles(&k, &build_filtration(&d, p), 1);
            assert_eq!(cycles.len(), 2);
            assert!(cycles.iter().all(|c| c.chain.is_cycle(&k)));
        }
    }

    #[test]
    fn sphere_in_dimension_two() {
        let k = fixtures::tetrahedron_boundary();
        let r = hd_minimal_basis(&PathDominatedDistance::graph(&k), 2).unwrap();
        assert_eq!(r.size_sequence(), vec![1.0]);
        assert_eq!(r.cycles[0].simplices, vec![0, 1, 2, 3]);
        let solid = fixtures::solid_tetrahedron();
        assert!(hd_minimal_basis(&PathDominatedDistance::graph(&solid), 2).unwrap().cycles.is_empty());
    }

    #[test]
    fn dimension_one_matches_exact_radius() {
        for (name, k) in fixtures::named() {
            let d = PathDominatedDistance::graph(&k);
            let hd = hd_minimal_basis(&d, 1).unwrap();
            let exact = minimal_homology_basis(&d, SizeMeasure::Radius).unwrap();
            assert_eq!(hd.size_sequence(), exact.size_sequence(), "{name}");
        }
    }

    #[test]
    fn pairs_match_prefix_betti_numbers() {
        let spec = fixtures::RandomSpec {
            max_vertices: 8,
            max_edges: 14,
            ..fixtures::RandomSpec::default()
        };
        for seed in 0..20 {
            let k = fixtures::random_complex(seed, spec);
            let d = PathDominatedDistance::graph(&k);
            let f = build_filtration(&d, 0);
            let pairs = persistence_pairs(&k, &f, 1);
            let (edge_rank, _) = f.local_ranks(&k, 1);
            let (tri_rank, _) = f.local_ranks(&k, 2);
            let d1 = k.boundary_matrix(1);
            let d2 = k.boundary_matrix(2);
            for t in 0..=f.order.len() {
                let prefix = &f.order[..t];
                let edges: Vec<usize> = prefix.iter().filter(|s| s.0 == 1).map(|s| s.1).collect();
                let tris: Vec<usize> = prefix.iter().filter(|s| s.0 == 2).map(|s| s.1).collect();
                let cols = |m: &BitMatrix, c: &[usize]| {
                    BitMatrix::from_columns(m.rows(), &c.iter().map(|&j| m.column(j)).collect::<Vec<_>>())
                };
                let betti = edges.len() - cols(&d1, &edges).rank() - cols(&d2, &tris).rank();
                let alive = pairs
                    .iter()
                    .filter(|(c, killer)| {
                        edges.iter().any(|&e| edge_rank[e] == *c)
                            && killer.is_none_or(|kk| !tris.iter().any(|&x| tri_rank[x] == kk))
                    })
                    .count();
                assert_eq!(alive, betti, "seed {seed} prefix {t}");
            }
        }
    }
}
