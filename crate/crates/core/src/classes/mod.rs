//! Numerical invariants of the incidence variety `Λ_W ⊆ P W × P V*`: its
//! class in the Grothendieck ring, its Chow class, the cohomology ring in the
//! round case, and the graded minimal free resolution of `K[u,x]/I_{W,0}`.


use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{Field, Matrix};
use crate::matroid::{ClassPoly, Matroid, MatroidError};

#[derive(Debug, Error)]
pub enum ClassesError {
    #[error("matroid is not connected")]
    NotConnected,
    #[error("matroid has loops")]
    HasLoops,
    #[error("matroid is not round")]
    NotRound,
    #[error("rank must satisfy 1 < r < n for this invariant (r = {r}, n = {n})")]
    Degenerate { r: usize, n: usize },
    #[error("rank must satisfy 0 < r < n (r = {r}, n = {n})")]
    InvalidRank { r: usize, n: usize },
    #[error("class is not divisible by L - 1")]
    DivisionFailure,
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

/// `[P^k] = 1 + L + … + L^k`.
fn projective(k: usize) -> ClassPoly {
    ClassPoly::projective_space(k, 'L')
}

/// The class of `Λ_W` in the Grothendieck ring: the sum over flats `F ≠ E`
/// of `χ̄_{M/F}(L) · [P^{n - rank(E∖F) - 1}]`, the stratum of points of
/// `P W` whose vanishing flat is `F` times the fibre over it.
pub fn motivic_class(m: &Matroid) -> Result<ClassPoly, ClassesError> {
    if m.loops() != 0 {
        return Err(ClassesError::HasLoops);
    }
    if !m.is_connected() {
        return Err(ClassesError::NotConnected);
    }
    let e = m.ground();
    let mut total = ClassPoly::zero('L');
    for &f in m.flats().flats() {
        if f == e {
            continue;
        }
        let chi = m.contract(f)?.char_poly()?.with_symbol('L');
        let reduced =
            chi.div_exact(&ClassPoly::new(vec![-1, 1], 'L')).ok_or(ClassesError::DivisionFailure)?;
        let fibre = m.n() - m.rank_of(e & !f) - 1;
        total = total.add(&reduced.mul(&projective(fibre)));
    }
    Ok(total)
}

/// The worked hypersurface class for the graph configuration with columns
/// `e₁, e₂, e₃, e₁+e₂, e₁+e₃`. Its non-smooth locus is the union of two
/// projective lines meeting in a point (one line per non-round flat), and
/// `p₂` has fibre `P¹` over it and a point elsewhere, so
/// `[X] = [X^{ns}] + [Λ] - [P¹]·[X^{ns}]`.
pub fn x_motivic_example() -> ClassPoly {
    let a =
        Matrix::from_i64(Field::Rational, &[vec![1, 0, 0, 1, 1], vec![0, 1, 0, 1, 0], vec![0, 0, 1, 0, 1]])
            .expect("rectangular");
    let m = Matroid::from_matrix(&a).expect("rank 3");
    let lines = m.nonround_flats().len() as i64;
    debug_assert_eq!(lines, 2);
    let nonsmooth = projective(1).scale(lines).sub(&ClassPoly::constant(lines - 1, 'L'));
    let lambda = motivic_class(&m).expect("connected and loopless");
    nonsmooth.add(&lambda).sub(&projective(1).mul(&nonsmooth))
}

/// A class in the Chow ring of `P V × P V*`: coefficients of `H^i H*^j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiDegree {
    pub coeffs: BTreeMap<(usize, usize), i64>,
}

impl fmt::Display for BiDegree {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let power = |sym: &str, k: usize| match k {
            0 => String::new(),
            1 => sym.to_string(),
            _ => format!("{sym}^{k}"),
        };
        let mut first = true;
        for (&(i, j), &c) in self.coeffs.iter().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(out, "{}", if c < 0 { "-" } else { "+" })?;
            } else if c < 0 {
                write!(out, "-")?;
            }
            first = false;
            let mono = format!("{}{}", power("H", i), power("H*", j));
            match (c.abs(), mono.is_empty()) {
                (a, true) => write!(out, "{a}")?,
                (1, false) => write!(out, "{mono}")?,
                (a, false) => write!(out, "{a}{mono}")?,
            }
        }
        if first {
            write!(out, "0")?;
        }
        Ok(())
    }
}

fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// `[Λ_W] = [H]^{n-r}([H] + [H*])^r`.
pub fn chow_bidegree(n: usize, r: usize) -> Result<BiDegree, ClassesError> {
    if r == 0 || r >= n {
        return Err(ClassesError::InvalidRank { r, n });
    }
    let coeffs = (0..=r).map(|k| ((n - k, k), binomial(r, k))).collect();
    Ok(BiDegree { coeffs })
}

/// Graded ranks of `Z[a,b] / (a^r, g)` with
/// `g = Σ_{k<r} C(n,k) (-a)^k b^{n-r-k}`, the Chow ring of `Λ_W` for round
/// `W`, computed degree by degree as the corank of the ideal's graded piece.
pub fn cohomology_basis(m: &Matroid) -> Result<Vec<usize>, ClassesError> {
    let (n, r) = (m.n(), m.rank());
    if r <= 1 || r >= n {
        return Err(ClassesError::Degenerate { r, n });
    }
    if !m.is_round() {
        return Err(ClassesError::NotRound);
    }
    Ok(cohomology_ranks(n, r))
}

/// The relation `g` as a map from `a`-exponent to coefficient, in degree `n-r`.
pub fn cohomology_relation(n: usize, r: usize) -> Vec<(usize, i64)> {
    (0..r.min(n - r + 1)).map(|k| (k, if k % 2 == 0 { 1 } else { -1 } * binomial(n, k))).collect()
}

pub(crate) fn cohomology_ranks(n: usize, r: usize) -> Vec<usize> {
    let g = cohomology_relation(n, r);
    let gdeg = n - r;
    let mut ranks = Vec::new();
    for d in 0.. {
        // Monomials a^i b^{d-i} are indexed by i = 0..=d.
        let mut rows: Vec<Vec<i64>> = Vec::new();
        if d >= r {
            for i in r..=d {
                let mut row = vec![0; d + 1];
                row[i] = 1;
                rows.push(row);
            }
        }
        if d >= gdeg {
            for s in 0..=d - gdeg {
                let mut row = vec![0; d + 1];
                for &(k, c) in &g {
                    row[k + s] += c;
                }
                rows.push(row);
            }
        }
        let ideal_rank = if rows.is_empty() {
            0
        } else {
            Matrix::from_i64(Field::Rational, &rows).expect("rectangular").rank()
        };
        let rank = d + 1 - ideal_rank;
        if rank == 0 {
            break;
        }
        ranks.push(rank);
    }
    ranks
}

/// One free module `⊕ R(twist)^{multiplicity}` of a graded resolution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub modules: Vec<Vec<(i64, u64)>>,
}

impl BettiTable {
    pub fn rank(&self, i: usize) -> u64 {
        self.modules[i].iter().map(|&(_, m)| m).sum()
    }

    pub fn projective_dimension(&self) -> usize {
        self.modules.len() - 1
    }

    /// The last Betti number.
    pub fn cm_type(&self) -> u64 {
        self.rank(self.projective_dimension())
    }

    /// `max_i (shift_i - i)` over all summands.
    pub fn regularity(&self) -> i64 {
        self.modules
            .iter()
            .enumerate()
            .flat_map(|(i, m)| m.iter().map(move |&(t, _)| -t - i as i64))
            .max()
            .unwrap_or(0)
    }

    /// `Σ_i (-1)^i Σ m t^{-twist}` as coefficients indexed by degree.
    pub fn k_polynomial(&self) -> Vec<i64> {
        let top = self.modules.iter().flatten().map(|&(t, _)| (-t) as usize).max().unwrap_or(0);
        let mut out = vec![0; top + 1];
        for (i, m) in self.modules.iter().enumerate() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for &(t, mult) in m {
                out[(-t) as usize] += sign * mult as i64;
            }
        }
        out
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.modules.iter().enumerate() {
            let parts: Vec<String> = m.iter().map(|&(t, k)| format!("R({t})^{k}")).collect();
            writeln!(out, "F{i:<3} {}", parts.join(" ⊕ "))?;
        }
        Ok(())
    }
}

/// The graded minimal free resolution of `K[u,x]/I_{W,0}` (all variables in
/// degree one): `F_i = R(-2i)^{C(r,i)} ⊕ R(-r-i+1)^{C(r,i-1)}` for
/// `0 < i < r` and `F_r = R(1-2r)^r`.
pub fn resolution_betti(n: usize, r: usize) -> Result<BettiTable, ClassesError> {
    if r == 0 || r >= n {
        return Err(ClassesError::InvalidRank { r, n });
    }
    let mut modules = vec![vec![(0i64, 1u64)]];
    for i in 1..r {
        let mut m: BTreeMap<i64, u64> = BTreeMap::new();
        *m.entry(-2 * i as i64).or_default() += binomial(r, i) as u64;
        *m.entry(-(r as i64) - i as i64 + 1).or_default() += binomial(r, i - 1) as u64;
        modules.push(m.into_iter().rev().collect());
    }
    modules.push(vec![(1 - 2 * r as i64, binomial(r, r - 1) as u64)]);
    Ok(BettiTable { modules })
}

/// The largest shift in the resolution minus `r + n`, the degree of the
/// canonical module of `K[u,x]`.
pub fn a_invariant(n: usize, r: usize) -> Result<i64, ClassesError> {
    let table = resolution_betti(n, r)?;
    let largest = table.modules.iter().flatten().map(|&(t, _)| -t).max().unwrap_or(0);
    Ok(largest - (r + n) as i64)
}
