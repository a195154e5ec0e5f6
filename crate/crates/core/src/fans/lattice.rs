//! The lattices `N_E = Z^E / Z e_E` and `N_{E,E} = N_E ⊕ N_E`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::matroid::{sets, Subset};

/// A vector of `N_E` (one block) or `N_{E,E}` (two blocks), stored in the
/// canonical representative whose entries in each block have minimum zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeVector {
    blocks: Vec<Vec<i64>>,
}

/// Direction of the lattice automorphism `μ(x, y) = (x, x + y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MuDirection {
    /// `(x, y) ↦ (x, x + y)`.
    Forward,
    /// `(x, y) ↦ (-x, -x - y)`.
    Minus,
    /// `(x, y) ↦ (x, y - x)`.
    Inverse,
}

fn canonical_block(mut b: Vec<i64>) -> Vec<i64> {
    if let Some(&m) = b.iter().min() {
        b.iter_mut().for_each(|x| *x -= m);
    }
    b
}

fn indicator(s: Subset, n: usize) -> Vec<i64> {
    (0..n).map(|i| i64::from(sets::contains(s, i))).collect()
}

impl LatticeVector {
    pub fn from_blocks(blocks: Vec<Vec<i64>>) -> Self {
        assert!(!blocks.is_empty(), "at least one block");
        let n = blocks[0].len();
        assert!(blocks.iter().all(|b| b.len() == n), "blocks of equal length");
        LatticeVector { blocks: blocks.into_iter().map(canonical_block).collect() }
    }

    pub fn single(e: Vec<i64>) -> Self {
        Self::from_blocks(vec![e])
    }

    pub fn pair(e: Vec<i64>, f: Vec<i64>) -> Self {
        Self::from_blocks(vec![e, f])
    }

    pub fn zero(n: usize, nblocks: usize) -> Self {
        Self::from_blocks(vec![vec![0; n]; nblocks])
    }

    /// `e_S` in `N_E`.
    pub fn e_set(s: Subset, n: usize) -> Self {
        Self::single(indicator(s, n))
    }

    /// `a·e_S + b·f_T` in `N_{E,E}`.
    pub fn biset(a: i64, s: Subset, b: i64, t: Subset, n: usize) -> Self {
        let e = indicator(s, n).into_iter().map(|x| a * x).collect();
        let f = indicator(t, n).into_iter().map(|x| b * x).collect();
        Self::pair(e, f)
    }

    pub fn n(&self) -> usize {
        self.blocks[0].len()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<i64>] {
        &self.blocks
    }

    pub fn block(&self, k: usize) -> &[i64] {
        &self.blocks[k]
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.iter().all(|&x| x == 0))
    }

    pub fn neg(&self) -> Self {
        Self::from_blocks(self.blocks.iter().map(|b| b.iter().map(|x| -x).collect()).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_blocks(
            self.blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        )
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_blocks(self.blocks.iter().map(|b| b.iter().map(|x| k * x).collect()).collect())
    }

    /// Negates a single block, leaving the others unchanged.
    pub fn negate_block(&self, k: usize) -> Self {
        let mut blocks = self.blocks.clone();
        blocks[k] = blocks[k].iter().map(|x| -x).collect();
        Self::from_blocks(blocks)
    }

    /// Coordinates in `Z^{(n-1)·blocks}`: `x_i - x_n` for `i < n`, per block.
    /// This identifies each `N_E` with `Z^{n-1}`.
    pub fn coords(&self) -> Vec<i64> {
        self.blocks
            .iter()
            .flat_map(|b| {
                let last = *b.last().expect("nonempty block");
                b[..b.len() - 1].iter().map(move |x| x - last)
            })
            .collect()
    }

    /// The greatest common divisor of the coordinates; 1 means primitive.
    pub fn content(&self) -> i64 {
        self.coords().iter().fold(0i64, |g, &x| g.gcd(&x))
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    /// `μ` and its variants on a two-block vector.
    pub fn mu(&self, dir: MuDirection) -> Self {
        assert_eq!(self.num_blocks(), 2, "μ acts on N_{{E,E}}");
        let (x, y) = (&self.blocks[0], &self.blocks[1]);
        let sum: Vec<i64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        match dir {
            MuDirection::Forward => Self::pair(x.clone(), sum),
            MuDirection::Minus => {
                Self::pair(x.iter().map(|a| -a).collect(), sum.iter().map(|a| -a).collect())
            }
            MuDirection::Inverse => Self::pair(x.clone(), y.iter().zip(x).map(|(b, a)| b - a).collect()),
        }
    }

    /// Indices attaining the minimum in block `k` after multiplying by `sign`.
    pub fn argmin_set(&self, k: usize, sign: i64) -> Subset {
        let b: Vec<i64> = self.blocks[k].iter().map(|x| sign * x).collect();
        let m = *b.iter().min().expect("nonempty block");
        sets::from_elements(b.iter().enumerate().filter(|(_, &x)| x == m).map(|(i, _)| i))
    }
}

/// Invariant factors of an integer matrix (Smith normal form diagonal),
/// omitting zeros. Their product is the gcd of the maximal nonzero minors.
#[allow(clippy::needless_range_loop)]
pub fn smith_invariants(rows: &[Vec<i64>]) -> Vec<BigInt> {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        // Pivot: smallest nonzero absolute value in the remaining block.
        let Some((pi, pj)) = (t..nrows)
            .flat_map(|i| (t..ncols).map(move |j| (i, j)))
            .filter(|&(i, j)| !m[i][j].is_zero())
            .min_by_key(|&(i, j)| m[i][j].abs())
        else {
            break;
        };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut done = true;
            for i in t + 1..nrows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                for j in t..ncols {
                    let v = &m[i][j] - &q * &m[t][j];
                    m[i][j] = v;
                }
                if !m[i][t].is_zero() {
                    done = false;
                }
            }
            for j in t + 1..ncols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                for i in t..nrows {
                    let v = &m[i][j] - &q * &m[i][t];
                    m[i][j] = v;
                }
                if !m[t][j].is_zero() {
                    done = false;
                }
            }
            if done {
                // Divisibility of the remaining block by the pivot.
                let bad = (t + 1..nrows)
                    .flat_map(|i| (t + 1..ncols).map(move |j| (i, j)))
                    .find(|&(i, j)| !(&m[i][j] % &m[t][t]).is_zero());
                match bad {
                    Some((i, _)) => {
                        for j in t..ncols {
                            let v = &m[t][j] + &m[i][j];
                            m[t][j] = v;
                        }
                        continue;
                    }
                    None => break,
                }
            }
            // Move the smallest nonzero entry of row/column t to the pivot.
            let (bi, bj) = (t..nrows)
                .map(|i| (i, t))
                .chain((t..ncols).map(|j| (t, j)))
                .filter(|&(i, j)| !m[i][j].is_zero())
                .min_by_key(|&(i, j)| m[i][j].abs())
                .expect("nonzero entry");
            m.swap(t, bi);
            for row in m.iter_mut() {
                row.swap(t, bj);
            }
        }
        out.push(m[t][t].abs());
        t += 1;
    }
    out
}
