//! Fans in `N_E` and `N_{E,E}`: the Bergman fan of a matroid, the square
//! conormal fan indexed by biflags of square biflats, and their images
//! `Δ_M` and `Δ̃_M` under `-μ`, together with the combinatorial checks
//! (smoothness, maps to the coordinate fan, refinement, boundary incidence).

mod fan;
mod lattice;


pub use fan::{is_unimodular, maps_into_coordinate_fan, refines, Block, Cone, Fan, Ray, Sign};
pub use lattice::{smith_invariants, LatticeVector, MuDirection};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::ArithError;
use crate::matroid::{sets, Matroid, Subset};

#[derive(Debug, Error)]
pub enum FanError {
    #[error("matroid has loops")]
    HasLoops,
    #[error("matroid has loops or coloops")]
    LoopOrColoop,
    #[error("{0} is not a flat")]
    NotAFlat(String),
    #[error("fan is not pure")]
    NotPure,
    #[error("fan is not simplicial")]
    NotSimplicial,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Applies `μ` (or `-μ`, or `μ⁻¹`) to a vector of `N_{E,E}`.
pub fn mu_apply(v: &LatticeVector, direction: MuDirection) -> LatticeVector {
    v.mu(direction)
}

/// A pair `F ⊆ G` with `F` a flat of `M` and `G` a flat of `M⊥` such that
/// `(E∖F)|G` is a bisubset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SquareBiflat {
    pub n: usize,
    pub f: Subset,
    pub g: Subset,
}

impl SquareBiflat {
    /// Checks the bisubset conditions only (not flatness).
    pub fn new(n: usize, f: Subset, g: Subset) -> Option<Self> {
        let e = sets::full(n);
        let ok = sets::is_subset(f, g) && f != e && g != 0 && !(f == 0 && g == e);
        ok.then_some(SquareBiflat { n, f, g })
    }

    pub fn label(&self) -> String {
        format!("{}⊆{}", sets::label(self.f, self.n), sets::label(self.g, self.n))
    }

    /// Parses `"F⊆G"` (or `"F<=G"`) with subsets written as in [`sets::parse_label`].
    pub fn parse(text: &str, n: usize) -> Result<Self, FanError> {
        let (a, b) = text
            .split_once('⊆')
            .or_else(|| text.split_once("<="))
            .ok_or_else(|| FanError::Parse(format!("expected F⊆G, got {text:?}")))?;
        let parse = |s: &str| {
            sets::parse_label(s.trim(), n).ok_or_else(|| FanError::Parse(format!("bad subset {s:?}")))
        };
        let (f, g) = (parse(a)?, parse(b)?);
        Self::new(n, f, g).ok_or_else(|| FanError::Parse(format!("{text} is not a bisubset")))
    }

    /// `G ∖ F`, the intersection of the two parts of the bisubset.
    pub fn difference(&self) -> Subset {
        self.g & !self.f
    }

    /// The ray `-e_F + f_G` of the square conormal fan.
    pub fn conormal_ray(&self) -> LatticeVector {
        LatticeVector::biset(-1, self.f, 1, self.g, self.n)
    }

    /// Product order: `(F, G) ≤ (F', G')` iff `F ⊆ F'` and `G ⊆ G'`.
    pub fn le(&self, other: &Self) -> bool {
        sets::is_subset(self.f, other.f) && sets::is_subset(self.g, other.g)
    }

    pub fn comparable(&self, other: &Self) -> bool {
        self.le(other) || other.le(self)
    }
}

fn require_loopless(m: &Matroid) -> Result<(), FanError> {
    if m.loops() != 0 {
        Err(FanError::HasLoops)
    } else {
        Ok(())
    }
}

fn require_no_loops_or_coloops(m: &Matroid) -> Result<(), FanError> {
    if m.loops() != 0 || m.coloops() != 0 {
        Err(FanError::LoopOrColoop)
    } else {
        Ok(())
    }
}

/// Maximal chains of nonempty proper flats, as lists of indices into `flats`.
fn maximal_flags(m: &Matroid, flats: &[Subset]) -> Vec<Vec<usize>> {
    let lattice = m.flats();
    let all = lattice.flats();
    let top = all.len() - 1;
    let mut up: Vec<Vec<usize>> = vec![Vec::new(); all.len()];
    for &(i, j) in lattice.covers() {
        up[i].push(j);
    }
    let pos = |idx: usize| flats.iter().position(|&f| f == all[idx]).expect("proper flat");
    let mut out = Vec::new();
    let mut stack = vec![(0usize, Vec::new())];
    while let Some((node, chain)) = stack.pop() {
        if node == top {
            out.push(chain);
            continue;
        }
        for &next in &up[node] {
            let mut c = chain.clone();
            if next != top {
                c.push(pos(next));
            }
            stack.push((next, c));
        }
    }
    out
}

/// The Bergman fan `Σ_M` in `N_E`: rays `e_F` for nonempty proper flats and
/// cones indexed by flags of such flats.
pub fn bergman_fan(m: &Matroid) -> Result<Fan, FanError> {
    require_loopless(m)?;
    let n = m.n();
    let flats = m.flats().proper_nonempty();
    let rays =
        flats.iter().map(|&f| Ray { label: sets::label(f, n), vector: LatticeVector::e_set(f, n) }).collect();
    Ok(Fan::new(n, rays, maximal_flags(m, &flats)))
}

/// All square biflats of `m`, sorted by `|F| + |G|` and then by masks.
pub fn square_biflats(m: &Matroid) -> Result<Vec<SquareBiflat>, FanError> {
    require_no_loops_or_coloops(m)?;
    let n = m.n();
    let dual_flats = m.dual().flats();
    let mut out: Vec<SquareBiflat> = m
        .flats()
        .flats()
        .iter()
        .flat_map(|&f| dual_flats.flats().iter().filter_map(move |&g| SquareBiflat::new(n, f, g)))
        .collect();
    out.sort_by_key(|b| (sets::size(b.f) + sets::size(b.g), b.f, b.g));
    Ok(out)
}

/// Whether the biflats, as bisubsets `(E∖F)|G`, form a biflag: pairwise
/// comparable in the product order with `⋃ (G∖F) ≠ E`.
pub fn divisor_incidence(biflats: &[SquareBiflat]) -> bool {
    let Some(first) = biflats.first() else {
        return true;
    };
    let union = biflats.iter().fold(0, |u, b| u | b.difference());
    union != sets::full(first.n)
        && biflats.iter().enumerate().all(|(i, a)| biflats[i + 1..].iter().all(|b| a.comparable(b)))
}

/// Maximal biflags over `biflats` (sorted so that the product order refines
/// the list order), found by depth-first chain extension with the union
/// condition as a pruning rule.
fn maximal_biflags(biflats: &[SquareBiflat], n: usize) -> Vec<Vec<usize>> {
    let e = sets::full(n);
    let mut out = Vec::new();
    let mut chain: Vec<usize> = Vec::new();

    fn extendable(biflats: &[SquareBiflat], chain: &[usize], union: Subset, e: Subset) -> bool {
        (0..biflats.len()).any(|b| {
            !chain.contains(&b)
                && union | biflats[b].difference() != e
                && chain.iter().all(|&c| biflats[c].comparable(&biflats[b]))
        })
    }

    fn dfs(
        biflats: &[SquareBiflat],
        e: Subset,
        start: usize,
        union: Subset,
        chain: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if !extendable(biflats, chain, union, e) {
            out.push(chain.clone());
            return;
        }
        for b in start..biflats.len() {
            let bf = &biflats[b];
            let u = union | bf.difference();
            if u == e {
                continue;
            }
            if let Some(&last) = chain.last() {
                if !biflats[last].le(bf) {
                    continue;
                }
            }
            chain.push(b);
            dfs(biflats, e, b + 1, u, chain, out);
            chain.pop();
        }
    }

    dfs(biflats, e, 0, 0, &mut chain, &mut out);
    out
}

/// The square conormal fan `Σ_{-M,M⊥}` with rays `-e_F + f_G` labelled
/// `F⊆G`, in the order of [`square_biflats`].
pub fn square_conormal_fan(m: &Matroid) -> Result<Fan, FanError> {
    let biflats = square_biflats(m)?;
    let rays = biflats.iter().map(|b| Ray { label: b.label(), vector: b.conormal_ray() }).collect();
    let cones = maximal_biflags(&biflats, m.n());
    Ok(Fan::new(m.n(), rays, cones))
}

/// `Δ̃_M = -μ(Σ_{-M,M⊥})`; the ray of `F⊆G` is `e_F - f_{G∖F}`.
pub fn delta_tilde_fan(m: &Matroid) -> Result<Fan, FanError> {
    Ok(square_conormal_fan(m)?.map_rays(|v| v.mu(MuDirection::Minus)))
}

/// `Δ_M = -μ((-Σ_M) × Σ_{M⊥})`, with rays `(e_F, e_F)` labelled `e:F` for
/// flats of `M` and `(0, -f_G)` labelled `f:G` for flats of `M⊥`.
pub fn delta_fan(m: &Matroid) -> Result<Fan, FanError> {
    require_no_loops_or_coloops(m)?;
    let n = m.n();
    let left = bergman_fan(m)?;
    let right = bergman_fan(&m.dual())?;
    let zero = vec![0; n];
    let mut rays: Vec<Ray> = left
        .rays()
        .iter()
        .map(|r| Ray {
            label: format!("e:{}", r.label),
            vector: LatticeVector::pair(r.vector.neg().block(0).to_vec(), zero.clone()),
        })
        .collect();
    let offset = rays.len();
    rays.extend(right.rays().iter().map(|r| Ray {
        label: format!("f:{}", r.label),
        vector: LatticeVector::pair(zero.clone(), r.vector.block(0).to_vec()),
    }));
    let mut cones = Vec::new();
    for a in left.maximal_cones() {
        for b in right.maximal_cones() {
            cones.push(a.iter().copied().chain(b.iter().map(|i| i + offset)).collect());
        }
    }
    Ok(Fan::new(n, rays, cones).map_rays(|v| v.mu(MuDirection::Minus)))
}

/// The fibre fan over the cone `σ_{F,S}`: the subfan of `Δ̃_M` induced on
/// the square biflats `F'⊆G'` with `F' ⊆ F` and `G'∖F' ⊆ S`.
pub fn fibre_fan(m: &Matroid, flat: Subset, s: Subset) -> Result<Fan, FanError> {
    if !m.is_flat(flat) {
        return Err(FanError::NotAFlat(m.label(flat)));
    }
    let biflats = square_biflats(m)?;
    let fan = delta_tilde_fan(m)?;
    Ok(fan.induced(|i| {
        let b = &biflats[i];
        sets::is_subset(b.f, flat) && sets::is_subset(b.difference(), s)
    }))
}
