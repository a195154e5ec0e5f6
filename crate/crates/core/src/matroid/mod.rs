//! Matroids on small ground sets with explicit bases.
//!
//! Subsets are `u32` bitmasks and the rank of every subset is tabulated once
//! at construction, so memory and time are `O(2^n)`; `n` is capped at
//! [`sets::MAX_N`].

mod classpoly;
mod graph;
mod lattice;
pub mod sets;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::Matrix;

pub use classpoly::ClassPoly;
pub use graph::Graph;
pub use lattice::FlatLattice;
pub use sets::Subset;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatroidError {
    #[error("matrix has row rank {rank} but {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
    #[error("degenerate configuration: need 0 < r < n, got r = {r}, n = {n}")]
    Degenerate { r: usize, n: usize },
    #[error("graph is not connected")]
    DisconnectedGraph,
    #[error("matroid has loops")]
    HasLoops,
    #[error("characteristic polynomial is not divisible by t - 1")]
    NonDivisible,
    #[error("minor would be empty or of rank zero")]
    EmptyResult,
    #[error("invalid basis list: {0}")]
    InvalidBases(String),
    #[error("ground set size {0} outside the supported range 1..=16")]
    TooLarge(usize),
    #[error("{0}")]
    Parse(String),
}

/// A matroid on `{1, ..., n}` given by its bases.
#[derive(Clone, Debug)]
pub struct Matroid {
    n: usize,
    rank: usize,
    bases: Vec<Subset>,
    rank_table: Vec<u8>,
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.bases == other.bases
    }
}

impl Eq for Matroid {}

/// Serialized form of an explicit basis list (1-based elements).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisList {
    pub n: usize,
    pub bases: Vec<Vec<usize>>,
}

impl Matroid {
    /// Validates a basis list, including the exchange axiom when `n <= 10`.
    pub fn from_bases(n: usize, bases: &[Subset]) -> Result<Self, MatroidError> {
        if n == 0 || n > sets::MAX_N {
            return Err(MatroidError::TooLarge(n));
        }
        let Some(&first) = bases.first() else {
            return Err(MatroidError::InvalidBases("no bases".into()));
        };
        let r = sets::size(first);
        let mut seen = HashSet::new();
        for &b in bases {
            if !sets::is_subset(b, sets::full(n)) {
                return Err(MatroidError::InvalidBases(format!(
                    "basis {} has elements outside 1..{n}",
                    sets::label(b, 32)
                )));
            }
            if sets::size(b) != r {
                return Err(MatroidError::InvalidBases("bases of different sizes".into()));
            }
            if !seen.insert(b) {
                return Err(MatroidError::InvalidBases(format!("duplicate basis {}", sets::label(b, n))));
            }
        }
        if n <= 10 {
            if let Some((b1, b2)) = exchange_violation(bases, &seen) {
                return Err(MatroidError::InvalidBases(format!(
                    "exchange axiom fails for {} and {}",
                    sets::label(b1, n),
                    sets::label(b2, n)
                )));
            }
        }
        Ok(Self::from_bases_unchecked(n, bases.to_vec()))
    }

    /// Same as [`from_bases`](Self::from_bases) with 1-based element lists.
    pub fn from_basis_list(list: &BasisList) -> Result<Self, MatroidError> {
        let mut masks = Vec::with_capacity(list.bases.len());
        for b in &list.bases {
            if b.iter().any(|&i| i == 0 || i > list.n) {
                return Err(MatroidError::InvalidBases(format!("element out of range in {b:?}")));
            }
            masks.push(sets::from_elements(b.iter().map(|i| i - 1)));
        }
        Self::from_bases(list.n, &masks)
    }

    pub fn to_basis_list(&self) -> BasisList {
        BasisList {
            n: self.n,
            bases: self
                .bases
                .iter()
                .map(|&b| sets::elements(b).into_iter().map(|i| i + 1).collect())
                .collect(),
        }
    }

    pub(crate) fn from_bases_unchecked(n: usize, mut bases: Vec<Subset>) -> Self {
        bases.sort_unstable();
        bases.dedup();
        let rank = bases.first().map_or(0, |&b| sets::size(b));
        let rank_table = build_rank_table(n, &bases);
        Matroid { n, rank, bases, rank_table }
    }

    /// Column matroid of a full-row-rank matrix with `0 < r < n`.
    pub fn from_matrix(a: &Matrix) -> Result<Self, MatroidError> {
        let n = a.cols();
        let r = a.rows();
        let rank = a.rank();
        if rank < r {
            return Err(MatroidError::RankDeficient { rank, rows: r });
        }
        if r == 0 || r >= n {
            return Err(MatroidError::Degenerate { r, n });
        }
        Self::column_matroid(a)
    }

    /// Column matroid of an arbitrary matrix (rank may be anything).
    pub fn column_matroid(a: &Matrix) -> Result<Self, MatroidError> {
        let n = a.cols();
        if n == 0 || n > sets::MAX_N {
            return Err(MatroidError::TooLarge(n));
        }
        let ech = a.rref();
        let r = ech.pivots.len();
        let reduced = ech.matrix.select_rows(&(0..r).collect::<Vec<_>>());
        let bases: Vec<Subset> = sets::k_subsets(n, r)
            .filter(|&b| {
                let cols = sets::elements(b);
                !reduced.select_columns(&cols).det().expect("square").is_zero()
            })
            .collect();
        Ok(Self::from_bases_unchecked(n, bases))
    }

    /// Cycle matroid of a connected graph: bases are spanning trees.
    pub fn from_graph(g: &Graph) -> Result<Self, MatroidError> {
        let n = g.num_edges();
        if n == 0 || n > sets::MAX_N {
            return Err(MatroidError::TooLarge(n));
        }
        if !g.is_connected() {
            return Err(MatroidError::DisconnectedGraph);
        }
        let r = g.num_vertices() - 1;
        let bases = sets::k_subsets(n, r).filter(|&b| g.is_forest(&sets::elements(b))).collect();
        Ok(Self::from_bases_unchecked(n, bases))
    }

    /// Uniform matroid `U_{r,n}`.
    pub fn uniform(r: usize, n: usize) -> Result<Self, MatroidError> {
        if n == 0 || n > sets::MAX_N || r > n {
            return Err(MatroidError::TooLarge(n));
        }
        Ok(Self::from_bases_unchecked(n, sets::k_subsets(n, r).collect()))
    }

    /// Direct sum; the elements of `other` are shifted after those of `self`.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Self, MatroidError> {
        let n = self.n + other.n;
        if n > sets::MAX_N {
            return Err(MatroidError::TooLarge(n));
        }
        let bases =
            self.bases.iter().flat_map(|&a| other.bases.iter().map(move |&b| a | (b << self.n))).collect();
        Ok(Self::from_bases_unchecked(n, bases))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ground(&self) -> Subset {
        sets::full(self.n)
    }

    pub fn bases(&self) -> &[Subset] {
        &self.bases
    }

    pub fn is_basis(&self, s: Subset) -> bool {
        self.bases.binary_search(&s).is_ok()
    }

    pub fn rank_of(&self, s: Subset) -> usize {
        self.rank_table[(s & self.ground()) as usize] as usize
    }

    pub fn is_independent(&self, s: Subset) -> bool {
        self.rank_of(s) == sets::size(s)
    }

    pub fn closure(&self, s: Subset) -> Subset {
        let rs = self.rank_of(s);
        (0..self.n).filter(|&i| self.rank_of(s | (1 << i)) == rs).fold(s, |acc, i| acc | (1 << i))
    }

    pub fn is_flat(&self, s: Subset) -> bool {
        self.closure(s) == s
    }

    pub fn flats(&self) -> FlatLattice {
        FlatLattice::of(self)
    }

    pub fn loops(&self) -> Subset {
        self.closure(0)
    }

    pub fn coloops(&self) -> Subset {
        (0..self.n)
            .filter(|&i| self.bases.iter().all(|&b| sets::contains(b, i)))
            .fold(0, |acc, i| acc | (1 << i))
    }

    pub fn dual(&self) -> Matroid {
        let e = self.ground();
        Self::from_bases_unchecked(self.n, self.bases.iter().map(|&b| e & !b).collect())
    }

    /// Deletion `M \ f` on the ground set `E \ f`, relabelled in order.
    pub fn delete(&self, f: Subset) -> Result<Matroid, MatroidError> {
        let keep = self.ground() & !f;
        let rk = self.rank_of(keep);
        if keep == 0 || rk == 0 {
            return Err(MatroidError::EmptyResult);
        }
        let bases = self
            .bases
            .iter()
            .filter(|&&b| sets::size(b & keep) == rk)
            .map(|&b| compress(b & keep, keep))
            .collect();
        Ok(Self::from_bases_unchecked(sets::size(keep), bases))
    }

    /// Contraction `M / f` on the ground set `E \ f`, relabelled in order.
    pub fn contract(&self, f: Subset) -> Result<Matroid, MatroidError> {
        let keep = self.ground() & !f;
        if keep == 0 {
            return Err(MatroidError::EmptyResult);
        }
        let rf = self.rank_of(f);
        let bases = self
            .bases
            .iter()
            .filter(|&&b| sets::size(b & f) == rf)
            .map(|&b| compress(b & keep, keep))
            .collect();
        Ok(Self::from_bases_unchecked(sets::size(keep), bases))
    }

    /// Restriction `M | s`, i.e. deletion of the complement.
    pub fn restrict(&self, s: Subset) -> Result<Matroid, MatroidError> {
        self.delete(self.ground() & !s)
    }

    /// A separator is a nonempty proper `s` with `rank(s) + rank(E \ s) = r`.
    pub fn is_connected(&self) -> bool {
        let e = self.ground();
        // Subsets containing element 1 cover every unordered partition.
        (1..e).filter(|&s| s & 1 == 1).all(|s| self.rank_of(s) + self.rank_of(e & !s) != self.rank)
    }

    /// No proper flat `F` has `rank(E \ F) < r`.
    pub fn is_round(&self) -> bool {
        self.nonround_flats().is_empty()
    }

    /// Proper flats `F` whose complement does not span.
    pub fn nonround_flats(&self) -> Vec<Subset> {
        let e = self.ground();
        self.flats().flats().iter().copied().filter(|&f| f != e && self.rank_of(e & !f) < self.rank).collect()
    }

    /// `χ_M(t) = Σ_F μ(∅, F) t^{r - rank F}` over the lattice of flats.
    pub fn char_poly(&self) -> Result<ClassPoly, MatroidError> {
        if self.loops() != 0 {
            return Err(MatroidError::HasLoops);
        }
        let lattice = self.flats();
        let mu = lattice.mobius_from_bottom();
        let mut coeffs = vec![0i64; self.rank + 1];
        for (i, &f) in lattice.flats().iter().enumerate() {
            coeffs[self.rank - self.rank_of(f)] += mu[i];
        }
        Ok(ClassPoly::new(coeffs, 't'))
    }

    /// `χ̄_M(t) = χ_M(t) / (t - 1)`.
    pub fn reduced_char_poly(&self) -> Result<ClassPoly, MatroidError> {
        let chi = self.char_poly()?;
        chi.div_exact(&ClassPoly::new(vec![-1, 1], 't')).ok_or(MatroidError::NonDivisible)
    }

    pub fn label(&self, s: Subset) -> String {
        sets::label(s, self.n)
    }
}

/// Packs the bits of `s` (a subset of `within`) into consecutive positions.
pub(crate) fn compress(s: Subset, within: Subset) -> Subset {
    sets::elements(within)
        .iter()
        .enumerate()
        .filter(|(_, &i)| sets::contains(s, i))
        .fold(0, |acc, (k, _)| acc | (1 << k))
}

fn exchange_violation(bases: &[Subset], set: &HashSet<Subset>) -> Option<(Subset, Subset)> {
    for &b1 in bases {
        for &b2 in bases {
            for x in sets::elements(b1 & !b2) {
                let ok = sets::elements(b2 & !b1)
                    .into_iter()
                    .any(|y| set.contains(&((b1 & !(1 << x)) | (1 << y))));
                if !ok {
                    return Some((b1, b2));
                }
            }
        }
    }
    None
}

fn build_rank_table(n: usize, bases: &[Subset]) -> Vec<u8> {
    let size = 1usize << n;
    let mut indep = vec![false; size];
    for &b in bases {
        indep[b as usize] = true;
    }
    for s in (0..size).rev() {
        if indep[s] {
            for i in 0..n {
                if s & (1 << i) != 0 {
                    indep[s & !(1 << i)] = true;
                }
            }
        }
    }
    let mut rank = vec![0u8; size];
    for s in 1..size {
        rank[s] = if indep[s] {
            s.count_ones() as u8
        } else {
            (0..n).filter(|&i| s & (1 << i) != 0).map(|i| rank[s & !(1 << i)]).max().unwrap_or(0)
        };
    }
    rank
}

#[cfg(test)]
mod tests;
