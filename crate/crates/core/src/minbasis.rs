//! Exact minimal homology basis of H₁ with support vectors.
//!
//! Support vectors `S_1..S_g` start as the unit vectors. The `i`-th pick is
//! the smallest candidate `C` with `m(S_i, C) = ⟨S_i, a(C)⟩ = 1`; afterwards
//! the remaining supports are made orthogonal to it. The recursive driver
//! delays that orthogonalization and applies it to half a block at a time
//! with one matrix product. The table `edge_m[i][e] = ⟨S_i, a(e)⟩` lets a
//! base case evaluate `m` for every candidate of a root from tree labels.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::annotate::{annotate_edges, AnnotationTable};
use crate::candidates::{horton_set, HortonSet, SizeMeasure};
use crate::error::Error;
use crate::metric::PathDominatedDistance;
use crate::z2::{BitMatrix, BitVec};

/// One basis element.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisCycle {
    pub dim: usize,
    /// Simplex indices of dimension `dim`, sorted.
    pub simplices: Vec<usize>,
    pub size: f64,
    pub annotation: BitVec,
    /// Generating root, when the cycle came from a root-based candidate set.
    pub root: Option<usize>,
}

/// A homology basis, ordered by nondecreasing size.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisResult {
    pub g: usize,
    pub cycles: Vec<BasisCycle>,
}

impl BasisResult {
    #[must_use]
    pub const fn empty(g: usize) -> Self {
        Self {
            g,
            cycles: Vec::new(),
        }
    }

    #[must_use]
    pub fn size_sequence(&self) -> Vec<f64> {
        self.cycles.iter().map(|c| c.size).collect()
    }

    #[must_use]
    pub fn total_size(&self) -> f64 {
        self.cycles.iter().map(|c| c.size).sum()
    }

    /// Rank of the stacked annotations.
    #[must_use]
    pub fn annotation_rank(&self) -> usize {
        let rows: Vec<BitVec> = self.cycles.iter().map(|c| c.annotation.clone()).collect();
        BitMatrix::from_rows(self.g, &rows).rank()
    }
}

/// How the picks are orthogonalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Divide and conquer with block updates.
    #[default]
    Recursive,
    /// One pick at a time, updating every later support immediately.
    Flat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Options {
    pub strategy: Strategy,
    /// Record the call tree and re-check every invariant at each step.
    pub audit: bool,
}

/// A step of the recursive driver, 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Call {
    Extend { i: usize, k: usize },
    Update { i: usize, k: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AuditFailure {
    /// The supports stopped being a basis of `{0,1}^g`.
    SupportRank { step: usize, rank: usize },
    /// `m(S_i, C_j) = 1` for a pick `j < i`.
    NotOrthogonal { i: usize, j: usize },
    /// A full rescan found a different first non-orthogonal candidate.
    Selection { i: usize, picked: usize, rescan: usize },
    /// The block product disagrees with direct recomputation of `edge_m`.
    UpdateMismatch { i: usize, k: usize },
}

/// Everything audit mode recorded.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AuditLog {
    pub calls: Vec<Call>,
    pub snapshots: usize,
    pub selections_checked: usize,
    pub updates_checked: usize,
    pub failures: Vec<AuditFailure>,
}

/// Supports, the `m` table, and the picks so far.
#[derive(Debug, Clone)]
pub struct SupportState {
    g: usize,
    supports: BitMatrix,
    edge_m: BitMatrix,
    /// Positions in the candidate list.
    chosen: Vec<usize>,
    chosen_annotations: Vec<BitVec>,
}

impl SupportState {
    #[must_use]
    pub fn new(ann: &AnnotationTable) -> Self {
        let g = ann.g();
        Self {
            g,
            supports: BitMatrix::identity(g),
            edge_m: ann.as_rows().transpose(),
            chosen: Vec::new(),
            chosen_annotations: Vec::new(),
        }
    }

    /// State with the given `g × g` supports and a matching `m` table.
    pub fn with_supports(ann: &AnnotationTable, supports: BitMatrix) -> Result<Self, Error> {
        let edge_m = supports.mul(&ann.as_rows().transpose())?;
        Ok(Self {
            g: ann.g(),
            supports,
            edge_m,
            chosen: Vec::new(),
            chosen_annotations: Vec::new(),
        })
    }

    #[must_use]
    pub fn supports(&self) -> &BitMatrix {
        &self.supports
    }

    #[must_use]
    pub fn edge_m(&self) -> &BitMatrix {
        &self.edge_m
    }

    #[must_use]
    pub fn chosen(&self) -> &[usize] {
        &self.chosen
    }

    /// `m(S_i, C)` from the explicit edges of `C`.
    #[must_use]
    pub fn m_from_edges(&self, i: usize, edges: &[usize]) -> bool {
        edges.iter().fold(false, |acc, &e| acc ^ self.edge_m.get(i, e))
    }
}

struct Driver<'a> {
    cands: &'a HortonSet,
    ann: &'a AnnotationTable,
    state: SupportState,
    audit: Option<AuditLog>,
}

/// Minimal homology basis from a sorted candidate set.
pub fn cycle_basis(cands: &HortonSet, ann: &AnnotationTable) -> Result<BasisResult, Error> {
    cycle_basis_with(cands, ann, Options::default()).map(|(r, _)| r)
}

/// [`cycle_basis`] with a choice of strategy and optional auditing.
pub fn cycle_basis_with(
    cands: &HortonSet,
    ann: &AnnotationTable,
    options: Options,
) -> Result<(BasisResult, Option<AuditLog>), Error> {
    let g = ann.g();
    let mut driver = Driver {
        cands,
        ann,
        state: SupportState::new(ann),
        audit: options.audit.then(AuditLog::default),
    };
    if g > 0 {
        match options.strategy {
            Strategy::Recursive => driver.extend_basis(0, g)?,
            Strategy::Flat => driver.flat()?,
        }
        driver.final_audit();
    }
    let mut cycles: Vec<BasisCycle> = driver
        .state
        .chosen
        .iter()
        .zip(&driver.state.chosen_annotations)
        .map(|(&c, a)| {
            let cycle = cands.cycle(c);
            BasisCycle {
                dim: 1,
                simplices: cycle.edges,
                size: cycle.size,
                annotation: a.clone(),
                root: Some(cycle.root),
            }
        })
        .collect();
    // picks come in support order, which need not be size order
    cycles.sort_by(|a, b| a.size.total_cmp(&b.size));
    Ok((BasisResult { g, cycles }, driver.audit))
}

/// Minimal homology basis of H₁ under `measure` and the distance `d`.
pub fn minimal_homology_basis(
    d: &PathDominatedDistance<'_>,
    measure: SizeMeasure,
) -> Result<BasisResult, Error> {
    let ann = annotate_edges(d.complex());
    if ann.g() == 0 {
        return Ok(BasisResult::empty(0));
    }
    cycle_basis(&horton_set(d, measure), &ann)
}

impl Driver<'_> {
    fn extend_basis(&mut self, i: usize, k: usize) -> Result<(), Error> {
        if let Some(log) = &mut self.audit {
            log.calls.push(Call::Extend { i, k });
        }
        if k == 1 {
            return self.select(i);
        }
        let h = k / 2;
        self.extend_basis(i, h)?;
        self.update_supports(i, k)?;
        self.extend_basis(i + h, k - h)
    }

    /// Makes supports `i+h..i+k` orthogonal to the picks `i..i+h`.
    fn update_supports(&mut self, i: usize, k: usize) -> Result<(), Error> {
        if let Some(log) = &mut self.audit {
            log.calls.push(Call::Update { i, k });
        }
        let h = k / 2;
        let st = &mut self.state;
        let picked = BitMatrix::from_columns(st.g, &st.chosen_annotations[i..i + h]);
        let x = st.supports.row_block(i..i + h).mul(&picked)?;
        let y = st.supports.row_block(i + h..i + k).mul(&picked)?;
        let a = y.mul(&x.inverse().map_err(Error::SupportInvariant)?)?;
        let w = a.hstack(&BitMatrix::identity(k - h))?;
        let s_new = w.mul(&st.supports.row_block(i..i + k))?;
        let m_new = w.mul(&st.edge_m.row_block(i..i + k))?;
        st.supports.set_row_block(i + h, &s_new);
        st.edge_m.set_row_block(i + h, &m_new);
        if self.audit.is_some() {
            let direct = self.direct_edge_m(i + h..i + k);
            let log = self.audit.as_mut().expect("audit on");
            log.updates_checked += 1;
            if direct != m_new {
                log.failures.push(AuditFailure::UpdateMismatch { i, k });
            }
            self.snapshot();
        }
        Ok(())
    }

    /// `⟨S_j, a(e)⟩` recomputed from the supports and the annotation table.
    fn direct_edge_m(&self, rows: core::ops::Range<usize>) -> BitMatrix {
        let n1 = self.ann.as_rows().rows();
        let mut out = BitMatrix::zeros(rows.len(), n1);
        for (r, j) in rows.enumerate() {
            let s = self.state.supports.row(j);
            for e in 0..n1 {
                if s.dot(&self.ann.simplex(e)) {
                    out.set(r, e, true);
                }
            }
        }
        out
    }

    fn flat(&mut self) -> Result<(), Error> {
        for i in 0..self.state.g {
            self.select(i)?;
            let a = self.state.chosen_annotations[i].clone();
            for j in i + 1..self.state.g {
                if self.state.supports.row(j).dot(&a) {
                    self.state.supports.xor_row(j, i);
                    self.state.edge_m.xor_row(j, i);
                }
            }
            if self.audit.is_some() {
                self.snapshot();
            }
        }
        Ok(())
    }

    fn select(&mut self, i: usize) -> Result<(), Error> {
        if self.audit.is_some() {
            self.check_orthogonal(i);
        }
        let c = shortest_nonorthogonal_cycle(&self.state, i, self.cands)?;
        if let Some(rescan) = self.audit.as_ref().map(|_| self.rescan(i)) {
            let log = self.audit.as_mut().expect("audit on");
            log.selections_checked += 1;
            if rescan != Some(c) {
                log.failures.push(AuditFailure::Selection {
                    i,
                    picked: c,
                    rescan: rescan.unwrap_or(usize::MAX),
                });
            }
        }
        let annotation = self.ann.sum(self.cands.edges(c));
        self.state.chosen.push(c);
        self.state.chosen_annotations.push(annotation);
        if self.audit.is_some() {
            self.snapshot();
        }
        Ok(())
    }

    /// First candidate with `m = 1`, evaluated from explicit edge sets.
    fn rescan(&self, i: usize) -> Option<usize> {
        let s = self.state.supports.row(i);
        (0..self.cands.len()).find(|&c| s.dot(&self.ann.sum(self.cands.edges(c))))
    }

    fn check_orthogonal(&mut self, i: usize) {
        let s = self.state.supports.row(i);
        let bad: Vec<usize> = (0..i.min(self.state.chosen.len()))
            .filter(|&j| s.dot(&self.state.chosen_annotations[j]))
            .collect();
        let log = self.audit.as_mut().expect("audit on");
        for j in bad {
            log.failures.push(AuditFailure::NotOrthogonal { i, j });
        }
    }

    fn snapshot(&mut self) {
        let rank = self.state.supports.rank();
        let log = self.audit.as_mut().expect("audit on");
        log.snapshots += 1;
        if rank != self.state.g {
            let step = log.snapshots;
            log.failures.push(AuditFailure::SupportRank { step, rank });
        }
    }

    fn final_audit(&mut self) {
        if self.audit.is_none() {
            return;
        }
        for i in 0..self.state.chosen.len() {
            self.check_orthogonal(i);
        }
        let n = self.state.chosen.len();
        let picked = BitMatrix::from_rows(self.state.g, &self.state.chosen_annotations);
        if picked.rank() != n {
            let log = self.audit.as_mut().expect("audit on");
            log.failures.push(AuditFailure::SupportRank {
                step: log.snapshots,
                rank: picked.rank(),
            });
        }
    }
}

/// Tree labels `l_p(v) = ⊕ edge_m[i][e]` over the tree path to `v`, for
/// every root of the candidate set. Indexed `[root][vertex]`.
fn labels(state: &SupportState, i: usize, cands: &HortonSet) -> Vec<Vec<bool>> {
    let mut out = vec![Vec::new(); cands.trees_len()];
    for &p in cands.roots() {
        let tree = cands.tree(p);
        let mut l = vec![false; tree.parent.len()];
        for &v in &tree.order {
            if let Some((q, e)) = tree.parent[v] {
                l[v] = l[q] ^ state.edge_m.get(i, e);
            }
        }
        out[p] = l;
    }
    out
}

/// Position in `cands` of the smallest candidate `C` with `m(S_i, C) = 1`.
pub fn shortest_nonorthogonal_cycle(
    state: &SupportState,
    i: usize,
    cands: &HortonSet,
) -> Result<usize, Error> {
    let l = labels(state, i, cands);
    cands
        .keys()
        .iter()
        .position(|key| {
            let (u, v) = cands.endpoints(key.edge as usize);
            let lp = &l[key.root as usize];
            lp[u] ^ lp[v] ^ state.edge_m.get(i, key.edge as usize)
        })
        .ok_or_else(|| Error::Invariant(format!("no candidate is non-orthogonal to support {i}")))
}

/// `m(S_i, C)` for every candidate from tree labels, for cross-checking.
#[must_use]
pub fn label_m(state: &SupportState, i: usize, cands: &HortonSet) -> Vec<bool> {
    let l = labels(state, i, cands);
    cands
        .keys()
        .iter()
        .map(|key| {
            let (u, v) = cands.endpoints(key.edge as usize);
            let lp = &l[key.root as usize];
            lp[u] ^ lp[v] ^ state.edge_m.get(i, key.edge as usize)
        })
        .collect()
}
