//! Simplicial fans stored by their rays and maximal cones.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{Field, Matrix, Scalar};

use super::lattice::{smith_invariants, LatticeVector};
use super::FanError;

/// A ray of a fan: a primitive lattice vector with a combinatorial label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ray {
    pub label: String,
    pub vector: LatticeVector,
}

/// A cone given by its ray generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub generators: Vec<LatticeVector>,
    pub label: Option<String>,
}

/// Which block of `N_{E,E}` a projection reads.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Block {
    First,
    Second,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// A simplicial fan. Cones are the faces of the stored maximal cones, each
/// given as a sorted list of ray indices; the trivial fan has one empty cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    n: usize,
    rays: Vec<Ray>,
    maximal: Vec<Vec<usize>>,
}

fn generator_rows(gens: &[LatticeVector]) -> Vec<Vec<i64>> {
    gens.iter().map(LatticeVector::coords).collect()
}

fn rational_matrix(rows: &[Vec<i64>]) -> Matrix {
    Matrix::from_i64(Field::Rational, rows).expect("rectangular")
}

impl Cone {
    pub fn new(generators: Vec<LatticeVector>) -> Self {
        Cone { generators, label: None }
    }

    /// Rank of the generator matrix.
    pub fn dim(&self) -> usize {
        if self.generators.is_empty() {
            return 0;
        }
        rational_matrix(&generator_rows(&self.generators)).rank()
    }

    pub fn is_simplicial(&self) -> bool {
        self.dim() == self.generators.len()
    }
}

/// True when the generators are linearly independent and extend to a basis
/// of the lattice.
pub fn is_unimodular(c: &Cone) -> bool {
    if c.generators.is_empty() {
        return true;
    }
    let rows = generator_rows(&c.generators);
    let inv = smith_invariants(&rows);
    inv.len() == rows.len() && inv.iter().all(BigInt::is_one)
}

/// Whether the image of `c` under the chosen (signed) block projection lies
/// in a single cone of the coordinate fan `Γ_E`, i.e. some index attains the
/// minimum on every generator.
pub fn maps_into_coordinate_fan(c: &Cone, block: Block, sign: Sign) -> bool {
    let k = match block {
        Block::First => 0,
        Block::Second => 1,
    };
    let s = match sign {
        Sign::Plus => 1,
        Sign::Minus => -1,
    };
    let Some(first) = c.generators.first() else {
        return true;
    };
    let all = crate::matroid::sets::full(first.n());
    let common = c.generators.iter().fold(all, |acc, g| acc & g.argmin_set(k, s));
    common != 0
}

#[derive(Serialize, Deserialize)]
struct RayJson {
    label: String,
    e: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    f: Option<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct FanJson {
    n: usize,
    rays: Vec<RayJson>,
    cones: Vec<Vec<usize>>,
}

impl Fan {
    /// Builds a fan from rays and a list of cones; only the inclusion-maximal
    /// cones are kept, sorted by decreasing dimension.
    pub fn new(n: usize, rays: Vec<Ray>, cones: Vec<Vec<usize>>) -> Self {
        let mut sets: Vec<Vec<usize>> = cones
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c.dedup();
                c
            })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if sets.is_empty() {
            sets.push(Vec::new());
        }
        let is_sub =
            |a: &[usize], b: &[usize]| a.len() < b.len() && a.iter().all(|x| b.binary_search(x).is_ok());
        let mut maximal: Vec<Vec<usize>> =
            sets.iter().filter(|c| !sets.iter().any(|d| is_sub(c, d))).cloned().collect();
        maximal.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        Fan { n, rays, maximal }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn ray_labels(&self) -> Vec<String> {
        self.rays.iter().map(|r| r.label.clone()).collect()
    }

    pub fn ray_index(&self, label: &str) -> Option<usize> {
        self.rays.iter().position(|r| r.label == label)
    }

    /// Maximal cones as sorted ray-index lists, largest first.
    pub fn maximal_cones(&self) -> &[Vec<usize>] {
        &self.maximal
    }

    pub fn count_maximal_cones(&self) -> usize {
        self.maximal.len()
    }

    pub fn cone(&self, rays: &[usize]) -> Cone {
        let label = rays.iter().map(|&i| self.rays[i].label.as_str()).collect::<Vec<_>>().join(", ");
        Cone {
            generators: rays.iter().map(|&i| self.rays[i].vector.clone()).collect(),
            label: Some(format!("{{{label}}}")),
        }
    }

    /// Every cone of the fan (all faces of the maximal cones), sorted by
    /// dimension and then lexicographically.
    pub fn all_cones(&self) -> Vec<Vec<usize>> {
        let mut out = BTreeSet::new();
        for m in &self.maximal {
            for mask in 0u64..(1 << m.len()) {
                let face: Vec<usize> =
                    m.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &r)| r).collect();
                out.insert(face);
            }
        }
        let mut v: Vec<_> = out.into_iter().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        v
    }

    /// Cones with exactly `k` rays.
    pub fn cones_of_size(&self, k: usize) -> Vec<Vec<usize>> {
        self.all_cones().into_iter().filter(|c| c.len() == k).collect()
    }

    pub fn contains_cone(&self, rays: &[usize]) -> bool {
        let mut c = rays.to_vec();
        c.sort_unstable();
        self.maximal.iter().any(|m| c.iter().all(|x| m.binary_search(x).is_ok()))
    }

    pub fn dim(&self) -> usize {
        self.maximal.iter().map(|c| self.cone(c).dim()).max().unwrap_or(0)
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.maximal.iter().all(|c| self.cone(c).dim() == d)
    }

    pub fn is_simplicial(&self) -> bool {
        self.maximal.iter().all(|c| self.cone(c).is_simplicial())
    }

    /// Whether every maximal cone (hence every cone) is unimodular.
    pub fn is_smooth(&self) -> bool {
        self.maximal.iter().all(|c| is_unimodular(&self.cone(c)))
    }

    /// Maximal cones whose image under the projection is not contained in a
    /// cone of `Γ_E`.
    pub fn coordinate_map_violations(&self, block: Block, sign: Sign) -> Vec<Vec<usize>> {
        self.maximal
            .iter()
            .filter(|c| !maps_into_coordinate_fan(&self.cone(c), block, sign))
            .cloned()
            .collect()
    }

    /// Applies a lattice map to every ray; cones are carried over.
    pub fn map_rays(&self, f: impl Fn(&LatticeVector) -> LatticeVector) -> Fan {
        Fan {
            n: self.n,
            rays: self.rays.iter().map(|r| Ray { label: r.label.clone(), vector: f(&r.vector) }).collect(),
            maximal: self.maximal.clone(),
        }
    }

    /// The subfan of cones all of whose ray indices satisfy `keep`.
    pub fn induced(&self, keep: impl Fn(usize) -> bool) -> Fan {
        let kept: Vec<usize> = (0..self.rays.len()).filter(|&i| keep(i)).collect();
        let new_index: HashMap<usize, usize> = kept.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let cones = self
            .maximal
            .iter()
            .map(|c| c.iter().filter_map(|i| new_index.get(i).copied()).collect())
            .collect();
        Fan::new(self.n, kept.iter().map(|&i| self.rays[i].clone()).collect(), cones)
    }

    pub fn to_json(&self) -> String {
        let j = FanJson {
            n: self.n,
            rays: self
                .rays
                .iter()
                .map(|r| RayJson {
                    label: r.label.clone(),
                    e: r.vector.block(0).to_vec(),
                    f: (r.vector.num_blocks() > 1).then(|| r.vector.block(1).to_vec()),
                })
                .collect(),
            cones: self.maximal.clone(),
        };
        serde_json::to_string_pretty(&j).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Fan, FanError> {
        let j: FanJson = serde_json::from_str(text).map_err(|e| FanError::Parse(e.to_string()))?;
        let mut rays = Vec::with_capacity(j.rays.len());
        for r in j.rays {
            let ok = r.e.len() == j.n && r.f.as_ref().is_none_or(|f| f.len() == j.n);
            if !ok {
                return Err(FanError::Parse(format!("ray {} has wrong length", r.label)));
            }
            let vector = match r.f {
                Some(f) => LatticeVector::pair(r.e, f),
                None => LatticeVector::single(r.e),
            };
            rays.push(Ray { label: r.label, vector });
        }
        if j.cones.iter().flatten().any(|&i| i >= rays.len()) {
            return Err(FanError::Parse("cone refers to a missing ray".into()));
        }
        Ok(Fan::new(j.n, rays, j.cones))
    }
}

/// A simplicial cone prepared for exact membership tests: `c = B⁻¹ v_P` on
/// a set `P` of independent coordinates, confirmed on all coordinates.
struct PreparedCone {
    gens: Vec<Vec<i64>>,
    pivot_rows: Vec<usize>,
    inv: Matrix,
}

impl PreparedCone {
    fn new(gens: Vec<Vec<i64>>) -> Option<Self> {
        let d = gens.len();
        if d == 0 {
            return Some(PreparedCone {
                gens,
                pivot_rows: Vec::new(),
                inv: Matrix::zeros(Field::Rational, 0, 0),
            });
        }
        let gt = rational_matrix(&gens);
        let pivots = gt.rref().pivots;
        if pivots.len() < d {
            return None;
        }
        let square = gt.select_columns(&pivots).transpose();
        let inv = square.inverse().ok()?;
        Some(PreparedCone { gens, pivot_rows: pivots, inv })
    }

    /// Coefficients of `v` in the generators, if `v` lies in their span.
    fn coefficients(&self, v: &[i64]) -> Option<Vec<Scalar>> {
        let f = Field::Rational;
        let d = self.gens.len();
        if d == 0 {
            return v.iter().all(|&x| x == 0).then(Vec::new);
        }
        let rhs: Vec<Scalar> = self.pivot_rows.iter().map(|&i| f.from_i64(v[i])).collect();
        let c = self.inv.mul_vec(&rhs).expect("shape");
        for (i, &x) in v.iter().enumerate() {
            let mut s = f.zero();
            for (k, g) in self.gens.iter().enumerate() {
                s = &s + &(&c[k] * &f.from_i64(g[i]));
            }
            if s != f.from_i64(x) {
                return None;
            }
        }
        Some(c)
    }

    fn contains(&self, v: &[i64]) -> Option<Vec<Scalar>> {
        self.coefficients(v).filter(|c| c.iter().all(|x| x.signum().is_some_and(|s| s >= 0)))
    }
}

fn sign_of(normal: &[Scalar], point: &[Scalar]) -> i32 {
    let f = Field::Rational;
    let s = normal.iter().zip(point).fold(f.zero(), |acc, (a, b)| &acc + &(a * b));
    s.signum().unwrap_or(0)
}

/// Whether `fine` is a subdivision of `coarse`: every maximal cone of `fine`
/// lies in a maximal cone of `coarse`, and inside each coarse cone the fine
/// cones fit together along interior facets (two cones, opposite sides) while
/// all remaining facets lie on the boundary.
pub fn refines(fine: &Fan, coarse: &Fan) -> Result<bool, FanError> {
    for fan in [fine, coarse] {
        if !fan.is_simplicial() {
            return Err(FanError::NotSimplicial);
        }
        if !fan.is_pure() {
            return Err(FanError::NotPure);
        }
    }
    if fine.dim() != coarse.dim() {
        return Err(FanError::NotPure);
    }
    let prepared: Vec<PreparedCone> = coarse
        .maximal
        .iter()
        .map(|c| {
            PreparedCone::new(c.iter().map(|&i| coarse.rays[i].vector.coords()).collect())
                .ok_or(FanError::NotSimplicial)
        })
        .collect::<Result<_, _>>()?;
    let fine_coords: Vec<Vec<i64>> = fine.rays.iter().map(|r| r.vector.coords()).collect();

    // Assign every fine maximal cone to a coarse maximal cone containing it,
    // recording the coefficient vectors of its rays.
    let mut inside: Vec<Vec<usize>> = vec![Vec::new(); prepared.len()];
    let mut coeffs: Vec<HashMap<usize, Vec<Scalar>>> = vec![HashMap::new(); prepared.len()];
    for (t, cone) in fine.maximal.iter().enumerate() {
        let mut placed = false;
        for (s, p) in prepared.iter().enumerate() {
            let cs: Option<Vec<Vec<Scalar>>> = cone.iter().map(|&i| p.contains(&fine_coords[i])).collect();
            if let Some(cs) = cs {
                for (&i, c) in cone.iter().zip(cs) {
                    coeffs[s].insert(i, c);
                }
                inside[s].push(t);
                placed = true;
                break;
            }
        }
        if !placed {
            return Ok(false);
        }
    }

    let f = Field::Rational;
    for s in 0..prepared.len() {
        if inside[s].is_empty() {
            return Ok(false);
        }
        let d = prepared[s].gens.len();
        // facet (sorted ray list) -> dropped rays of the fine cones having it
        let mut facets: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        for &t in &inside[s] {
            let cone = &fine.maximal[t];
            for (k, &dropped) in cone.iter().enumerate() {
                let mut facet = cone.clone();
                facet.remove(k);
                facets.entry(facet).or_default().push(dropped);
            }
        }
        for (facet, dropped) in &facets {
            let on_boundary = (0..d).any(|k| facet.iter().all(|i| coeffs[s][i][k].is_zero()));
            if on_boundary {
                if dropped.len() != 1 {
                    return Ok(false);
                }
                continue;
            }
            if dropped.len() != 2 {
                return Ok(false);
            }
            let rows: Vec<Vec<Scalar>> = facet.iter().map(|i| coeffs[s][i].clone()).collect();
            let normal = if rows.is_empty() {
                vec![f.one()]
            } else {
                let k = Matrix::from_rows(f, rows)?.kernel_basis();
                if k.rows() != 1 {
                    return Ok(false);
                }
                k.row(0).to_vec()
            };
            let a = sign_of(&normal, &coeffs[s][&dropped[0]]);
            let b = sign_of(&normal, &coeffs[s][&dropped[1]]);
            if a == 0 || b == 0 || a == b {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
