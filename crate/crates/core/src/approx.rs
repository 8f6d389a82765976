//! Approximate minimal homology basis by earliest-basis extraction.
//!
//! Candidates are sorted by size and their annotations become the columns of
//! `M = Aᵀ·Bᵀ`: `A` holds candidate edge sets, `B` the edge annotations. The
//! earliest column basis of `M` has the lexicographically smallest size
//! sequence among bases drawn from the candidates.
//!
//! The sampled candidate set takes Horton cycles from
//! `⌈c₀·√(n₀ ln n₀)⌉` random roots, doubling the root count until the
//! candidates span H₁.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::annotate::{annotate_edges, AnnotationTable};
use crate::candidates::{horton_set, horton_set_for_roots, CandidateCycle, HortonSet, SizeMeasure};
use crate::complex::SimplicialComplex;
use crate::error::Error;
use crate::metric::PathDominatedDistance;
use crate::minbasis::{BasisCycle, BasisResult};
use crate::oracle;
use crate::z2::{BitMatrix, BitVec, EchelonBasis};

/// Candidates per block when assembling `M`.
const BLOCK: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generation {
    FullHorton,
    SampledHorton { sample_size: usize, seed: u64 },
    Explicit,
}

#[derive(Debug, Clone)]
enum Source {
    Horton(HortonSet),
    Explicit(Vec<CandidateCycle>),
}

/// Candidate cycles in nondecreasing size order.
#[derive(Debug, Clone)]
pub struct ApproxCandidateSet {
    source: Source,
    generation: Generation,
}

impl ApproxCandidateSet {
    #[must_use]
    pub fn full(d: &PathDominatedDistance<'_>) -> Self {
        Self {
            source: Source::Horton(horton_set(d, SizeMeasure::SumOfWeights)),
            generation: Generation::FullHorton,
        }
    }

    #[must_use]
    pub fn sampled(d: &PathDominatedDistance<'_>, roots: &[usize], seed: u64) -> Self {
        Self {
            source: Source::Horton(horton_set_for_roots(d, SizeMeasure::SumOfWeights, roots)),
            generation: Generation::SampledHorton {
                sample_size: roots.len(),
                seed,
            },
        }
    }

    /// Any list of cycles; sorted by size, keeping the given order on ties.
    #[must_use]
    pub fn explicit(mut cycles: Vec<CandidateCycle>) -> Self {
        cycles.sort_by(|a, b| a.size.total_cmp(&b.size));
        Self {
            source: Source::Explicit(cycles),
            generation: Generation::Explicit,
        }
    }

    #[must_use]
    pub fn len(&self) -> usize {
        match &self.source {
            Source::Horton(h) => h.len(),
            Source::Explicit(c) => c.len(),
        }
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[must_use]
    pub const fn generation(&self) -> &Generation {
        &self.generation
    }

    #[must_use]
    pub fn cycle(&self, i: usize) -> CandidateCycle {
        match &self.source {
            Source::Horton(h) => h.cycle(i),
            Source::Explicit(c) => c[i].clone(),
        }
    }

    #[must_use]
    pub fn edges(&self, i: usize) -> Vec<usize> {
        match &self.source {
            Source::Horton(h) => h.edges(i),
            Source::Explicit(c) => c[i].edges.clone(),
        }
    }

    #[must_use]
    pub fn size(&self, i: usize) -> f64 {
        match &self.source {
            Source::Horton(h) => h.keys()[i].size,
            Source::Explicit(c) => c[i].size,
        }
    }
}

/// Ceiling of `c₀·√(n₀ ln n₀)`, clamped to `1..=n₀`.
#[must_use]
pub fn sample_size(n0: usize, c0: f64) -> usize {
    let n = n0 as f64;
    let m = libm::ceil(c0 * libm::sqrt(n * libm::log(n)));
    (m as usize).clamp(1, n0.max(1))
}

/// `g × m` matrix whose column `i` is the annotation of candidate `i`,
/// assembled as `Aᵀ·Bᵀ` one block of candidates at a time.
pub fn build_m(cands: &ApproxCandidateSet, ann: &AnnotationTable) -> Result<BitMatrix, Error> {
    let n1 = ann.as_rows().rows();
    let mut mt = BitMatrix::zeros(0, ann.g());
    let mut start = 0;
    while start < cands.len() {
        let end = (start + BLOCK).min(cands.len());
        let rows: Vec<BitVec> = (start..end)
            .map(|i| BitVec::from_indices(n1, cands.edges(i)))
            .collect();
        let at = BitMatrix::from_rows(n1, &rows);
        mt = mt.vstack(&at.mul(ann.as_rows())?)?;
        start = end;
    }
    Ok(mt.transpose())
}

/// Candidates at the earliest column basis of `m`.
pub fn extract_basis(
    m: &BitMatrix,
    cands: &ApproxCandidateSet,
    g: usize,
) -> Result<BasisResult, Error> {
    let mut span = EchelonBasis::new(g);
    let mut cycles = Vec::new();
    for i in 0..m.cols() {
        if cycles.len() == g {
            break;
        }
        let column = m.column(i);
        if span.insert(&column) {
            let c = cands.cycle(i);
            cycles.push(BasisCycle {
                dim: 1,
                simplices: c.edges,
                size: c.size,
                annotation: column,
                root: Some(c.root),
            });
        }
    }
    if cycles.len() < g {
        return Err(Error::SpanFailure {
            dim: 1,
            rank: cycles.len(),
            expected: g,
        });
    }
    Ok(BasisResult { g, cycles })
}

/// What the sampled run did.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub seed: u64,
    pub c0: f64,
    /// Initial number of sampled roots.
    pub sample_size: usize,
    /// Number of candidate sets built; more than one means the sample was
    /// doubled.
    pub rounds: usize,
    /// Roots of the final candidate set, ascending.
    pub roots: Vec<usize>,
    pub candidates: usize,
    pub size_sequence: Vec<f64>,
}

/// Approximate basis from sampled roots. Only weight sums are supported.
pub fn approx_basis(
    d: &PathDominatedDistance<'_>,
    measure: SizeMeasure,
    seed: u64,
    c0: f64,
) -> Result<(BasisResult, Certificate), Error> {
    if measure != SizeMeasure::SumOfWeights {
        return Err(Error::Unsupported(
            "approximate bases are defined for weight sums only".into(),
        ));
    }
    if !(c0 > 0.0 && c0.is_finite()) {
        return Err(Error::Unsupported("c0 must be positive and finite".into()));
    }
    let k = d.complex();
    let ann = annotate_edges(k);
    let n0 = k.n_vertices();
    let first = sample_size(n0, c0);
    let mut certificate = Certificate {
        seed,
        c0,
        sample_size: first,
        rounds: 0,
        roots: Vec::new(),
        candidates: 0,
        size_sequence: Vec::new(),
    };
    if ann.g() == 0 {
        return Ok((BasisResult::empty(0), certificate));
    }
    let mut order: Vec<usize> = (0..n0).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut take = first;
    loop {
        certificate.rounds += 1;
        let mut roots = order[..take].to_vec();
        roots.sort_unstable();
        let cands = ApproxCandidateSet::sampled(d, &roots, seed);
        match extract_basis(&build_m(&cands, &ann)?, &cands, ann.g()) {
            Ok(basis) => {
                certificate.roots = roots;
                certificate.candidates = cands.len();
                certificate.size_sequence = basis.size_sequence();
                return Ok((basis, certificate));
            }
            Err(Error::SpanFailure { .. }) if take < n0 => take = (take * 2).min(n0),
            Err(e) => return Err(e),
        }
    }
}

/// The eight-vertex counter-example with its named cycles and the oracle
/// figures that make it one.
#[derive(Debug, Clone)]
pub struct FigureOne {
    pub complex: SimplicialComplex,
    pub ah_weight: f64,
    /// `a–b–h`.
    pub c1: CandidateCycle,
    /// `b–c–d–h`.
    pub c2: CandidateCycle,
    /// `d–e–g–h`.
    pub c3: CandidateCycle,
    /// The filled triangle `e–f–g`.
    pub c4: CandidateCycle,
    /// The outer octagon through `f`, homologous to `c1 + c2 + c3`.
    pub c4_prime: CandidateCycle,
    /// Oracle minimal cycle basis sizes, sorted.
    pub min_cycle_basis: Vec<f64>,
    /// Oracle minimal homology basis total.
    pub min_homology_total: f64,
    /// Best homology basis inside `{c2, c3, c4, c4′}`, total size.
    pub contained_total: f64,
}

impl FigureOne {
    /// The 2-approximate cycle basis `{c2, c3, c4, c4′}`.
    #[must_use]
    pub fn approximate_cycle_basis(&self) -> Vec<CandidateCycle> {
        alloc::vec![
            self.c2.clone(),
            self.c3.clone(),
            self.c4.clone(),
            self.c4_prime.clone(),
        ]
    }

    fn build(ah_weight: f64) -> Result<Self, Error> {
        let k = crate::fixtures::figure_one_pattern(ah_weight);
        let cycle = |path: &[usize]| {
            let z = k.chain_from_path(path);
            let edges: Vec<usize> = z.simplices().collect();
            let size = edges.iter().map(|&e| k.edge(e).weight).sum();
            CandidateCycle {
                root: path[0],
                nontree_edge: edges[0],
                edges,
                size,
            }
        };
        let (a, b, c, dd, e, f, g, h) = (0, 1, 2, 3, 4, 5, 6, 7);
        let c1 = cycle(&[a, b, h, a]);
        let c2 = cycle(&[b, c, dd, h, b]);
        let c3 = cycle(&[dd, e, g, h, dd]);
        let c4 = cycle(&[e, f, g, e]);
        let c4_prime = cycle(&[a, b, c, dd, e, f, g, h, a]);
        let d = PathDominatedDistance::graph(&k);
        let limit = oracle::DEFAULT_MAX_DIMENSION;
        let min_cycle_basis: Vec<f64> = oracle::oracle_min_cycle_basis(&d, SizeMeasure::SumOfWeights, limit)?
            .into_iter()
            .map(|(_, s)| s)
            .collect();
        let min_homology_total =
            oracle::oracle_min_basis(&d, SizeMeasure::SumOfWeights, limit)?.total_size();
        let set: Vec<(Vec<usize>, f64)> = [&c2, &c3, &c4, &c4_prime]
            .iter()
            .map(|c| (c.edges.clone(), c.size))
            .collect();
        let contained_total = oracle::best_contained_homology_basis(&k, &set)
            .map_or(f64::INFINITY, |(_, t)| t);
        Ok(Self {
            complex: k,
            ah_weight,
            c1,
            c2,
            c3,
            c4,
            c4_prime,
            min_cycle_basis,
            min_homology_total,
            contained_total,
        })
    }

    /// Whether this weighting reproduces the counter-example: the size order
    /// `c1 < c2 < c3 < c4`, `c4′` beyond twice `c3`, `{c2, c3, c4, c4′}` a
    /// 2-approximate minimal cycle basis, and no homology basis inside it
    /// within twice the minimal total.
    #[must_use]
    pub fn is_counter_example(&self) -> bool {
        let k = &self.complex;
        let l = k.n_edges() + 1 - k.n_vertices();
        let mut sizes: Vec<f64> = self.approximate_cycle_basis().iter().map(|c| c.size).collect();
        sizes.sort_by(f64::total_cmp);
        let zs: Vec<BitVec> = self
            .approximate_cycle_basis()
            .iter()
            .map(|c| BitVec::from_indices(k.n_edges(), c.edges.iter().copied()))
            .collect();
        let spans_cycle_space = BitMatrix::from_rows(k.n_edges(), &zs).rank() == l;
        self.c1.size < self.c2.size
            && self.c2.size < self.c3.size
            && self.c3.size < self.c4.size
            && self.c4_prime.size > 2.0 * self.c3.size
            && spans_cycle_space
            && self.min_cycle_basis.len() == l
            && sizes
                .iter()
                .zip(&self.min_cycle_basis)
                .all(|(s, m)| *m <= *s && *s <= 2.0 * m)
            && self.contained_total > 2.0 * self.min_homology_total
    }
}

/// Searches integer weights for the edge `a–h` and returns the first one
/// that the oracle confirms as a counter-example.
pub fn figure_one() -> Result<FigureOne, Error> {
    for w in 1..=9 {
        let fig = FigureOne::build(f64::from(w))?;
        if fig.is_counter_example() {
            return Ok(fig);
        }
    }
    Err(Error::Invariant("no weight for a-h reproduces the counter-example".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn sample_sizes() {
        assert_eq!(sample_size(1, 2.0), 1);
        assert_eq!(sample_size(7, 2.0), 7);
        // ⌈2·√(900·ln 900)⌉ = ⌈2·78.23⌉
        assert_eq!(sample_size(900, 2.0), 157);
    }

    #[test]
    fn null_candidates_give_zero_matrix() {
        let k = fixtures::filled_triangle();
        let d = PathDominatedDistance::graph(&k);
        let ann = annotate_edges(&k);
        let m = build_m(&ApproxCandidateSet::full(&d), &ann).unwrap();
        assert_eq!((m.rows(), m.cols()), (0, 3));
        assert_eq!(m.rank(), 0);
    }

    #[test]
    fn torus_full_set() {
        let k = fixtures::csaszar_torus();
        let d = PathDominatedDistance::graph(&k);
        let ann = annotate_edges(&k);
        let cands = ApproxCandidateSet::full(&d);
        let m = build_m(&cands, &ann).unwrap();
        assert_eq!(m.rank(), 2);
        for i in (0..cands.len()).step_by(7) {
            assert_eq!(m.column(i), ann.sum(cands.edges(i)));
        }
        let basis = extract_basis(&m, &cands, 2).unwrap();
        assert_eq!(basis.size_sequence(), alloc::vec![3.0, 3.0]);
    }

    #[test]
    fn sampled_saturates_on_small_complex() {
        let k = fixtures::csaszar_torus();
        let d = PathDominatedDistance::graph(&k);
        let (basis, cert) = approx_basis(&d, SizeMeasure::SumOfWeights, 0, 2.0).unwrap();
        assert_eq!(cert.roots.len(), 7);
        assert_eq!(basis.size_sequence(), alloc::vec![3.0, 3.0]);
    }

    #[test]
    fn radius_is_unsupported() {
        let k = fixtures::four_cycle();
        let d = PathDominatedDistance::graph(&k);
        assert!(matches!(
            approx_basis(&d, SizeMeasure::Radius, 0, 2.0),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn figure_one_extraction() {
        let fig = figure_one().unwrap();
        assert_eq!(fig.ah_weight, 1.0);
        let cands = ApproxCandidateSet::explicit(fig.approximate_cycle_basis());
        let ann = annotate_edges(&fig.complex);
        let basis = extract_basis(&build_m(&cands, &ann).unwrap(), &cands, ann.g()).unwrap();
        assert_eq!(basis.size_sequence(), alloc::vec![6.0, 9.0, 22.0]);
        assert!(basis.cycles[2].size > 2.0 * fig.c3.size);
    }
}
