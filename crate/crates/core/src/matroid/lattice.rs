use super::{sets, Matroid, Subset};

/// The flats of a matroid, sorted by rank and then by bitmask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatLattice {
    n: usize,
    flats: Vec<Subset>,
    ranks: Vec<usize>,
    covers: Vec<(usize, usize)>,
}

impl FlatLattice {
    pub(crate) fn of(m: &Matroid) -> Self {
        let mut flats: Vec<Subset> = (0..=m.ground()).map(|s| m.closure(s)).collect();
        flats.sort_unstable_by_key(|&f| (m.rank_of(f), f));
        flats.dedup();
        let ranks: Vec<usize> = flats.iter().map(|&f| m.rank_of(f)).collect();
        let mut covers = Vec::new();
        for (i, &f) in flats.iter().enumerate() {
            for (j, &g) in flats.iter().enumerate() {
                if ranks[j] == ranks[i] + 1 && sets::is_subset(f, g) {
                    covers.push((i, j));
                }
            }
        }
        FlatLattice { n: m.n(), flats, ranks, covers }
    }

    pub fn flats(&self) -> &[Subset] {
        &self.flats
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn rank(&self, idx: usize) -> usize {
        self.ranks[idx]
    }

    /// Pairs `(i, j)` where flat `j` covers flat `i`.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn index_of(&self, f: Subset) -> Option<usize> {
        self.flats.iter().position(|&g| g == f)
    }

    pub fn contains(&self, f: Subset) -> bool {
        self.index_of(f).is_some()
    }

    /// Flats of a given rank.
    pub fn of_rank(&self, k: usize) -> Vec<Subset> {
        self.flats.iter().zip(&self.ranks).filter(|(_, &r)| r == k).map(|(&f, _)| f).collect()
    }

    /// Flats other than the top element `E`.
    pub fn proper(&self) -> Vec<Subset> {
        let e = sets::full(self.n);
        self.flats.iter().copied().filter(|&f| f != e).collect()
    }

    /// Flats other than `E` and `∅`.
    pub fn proper_nonempty(&self) -> Vec<Subset> {
        self.proper().into_iter().filter(|&f| f != 0).collect()
    }

    /// `μ(bottom, F)` for every flat `F`, in lattice order.
    pub fn mobius_from_bottom(&self) -> Vec<i64> {
        let mut mu = vec![0i64; self.flats.len()];
        for j in 0..self.flats.len() {
            if j == 0 {
                mu[0] = 1;
                continue;
            }
            let g = self.flats[j];
            mu[j] = -(0..j)
                .filter(|&i| self.flats[i] != g && sets::is_subset(self.flats[i], g))
                .map(|i| mu[i])
                .sum::<i64>();
        }
        mu
    }

    pub fn labels(&self) -> Vec<String> {
        self.flats.iter().map(|&f| sets::label(f, self.n)).collect()
    }
}
