//! Seeded random points used to probe genericity statements.
//!
//! All samplers draw from a `ChaCha8Rng` seeded with the caller's seed, so a
//! seed fully determines the output. Over `Q` coordinates are small integers;
//! over `F_p` they are uniform residues.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{Field, Matrix, Scalar};
use crate::matroid::{sets, Subset};

use super::{ConfigError, Configuration};

/// A point `(α, β)` of the incidence variety, as coordinate vectors.
pub type LambdaPoint = (Vec<Scalar>, Vec<Scalar>);

/// Smallest prime above `2^20`, used when sampling over a prime field.
pub const SAMPLING_PRIME: u64 = 1_048_583;

const MAX_ATTEMPTS: usize = 500;
const INT_RANGE: i64 = 30;

fn random_scalar(rng: &mut ChaCha8Rng, f: Field) -> Scalar {
    match f {
        Field::Rational => f.from_i64(rng.gen_range(-INT_RANGE..=INT_RANGE)),
        Field::Prime(p) => f.from_i64(rng.gen_range(0..p) as i64),
    }
}

fn random_nonzero(rng: &mut ChaCha8Rng, f: Field) -> Scalar {
    loop {
        let s = random_scalar(rng, f);
        if !s.is_zero() {
            return s;
        }
    }
}

fn random_combination(rng: &mut ChaCha8Rng, basis: &Matrix) -> Vec<Scalar> {
    let f = basis.field();
    let coeffs: Vec<Scalar> = (0..basis.rows()).map(|_| random_scalar(rng, f)).collect();
    basis.left_mul_vec(&coeffs).expect("shape")
}

impl Configuration {
    /// A vector `β` with all coordinates nonzero.
    pub fn sample_torus_beta(&self, seed: u64) -> Vec<Scalar> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..self.n()).map(|_| random_nonzero(&mut rng, self.field())).collect()
    }

    /// A coordinate vector `w` with `F(w) = flat`, i.e. `ℓ_i(w) = 0` exactly
    /// for `i` in `flat`.
    pub fn sample_stratum_point(&self, flat: Subset, seed: u64) -> Result<Vec<Scalar>, ConfigError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.stratum_point_with(flat, &mut rng)
    }

    fn stratum_point_with(&self, flat: Subset, rng: &mut ChaCha8Rng) -> Result<Vec<Scalar>, ConfigError> {
        let r = self.rank();
        let cols = sets::elements(flat);
        // Coordinates annihilated by the columns in `flat`.
        let basis = if cols.is_empty() {
            Matrix::identity(self.field(), r)
        } else {
            self.a.select_columns(&cols).transpose().kernel_basis()
        };
        if basis.rows() == 0 {
            return Err(ConfigError::SamplingFailed(0));
        }
        for _ in 0..MAX_ATTEMPTS {
            let w = random_combination(rng, &basis);
            if self.flat_of(&w)? == flat && w.iter().any(|x| !x.is_zero()) {
                return Ok(w);
            }
        }
        Err(ConfigError::SamplingFailed(MAX_ATTEMPTS))
    }

    /// A point `(w, β)` of `Λ_W` over the stratum of `flat` with `β ≠ 0`.
    /// On `flat` the coordinates of `β` are random; off it `β = γ / ℓ(w)`
    /// for a random `γ` in the kernel of the columns outside `flat`.
    pub fn sample_lambda_point(&self, flat: Subset, seed: u64) -> Result<LambdaPoint, ConfigError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = self.stratum_point_with(flat, &mut rng)?;
        let v = self.to_ambient(&w)?;
        let f = self.field();
        let rest: Vec<usize> = (0..self.n()).filter(|&j| !sets::contains(flat, j)).collect();
        let kernel = self.a.select_columns(&rest).kernel_basis();
        for _ in 0..MAX_ATTEMPTS {
            let mut beta: Vec<Scalar> = (0..self.n())
                .map(|j| if sets::contains(flat, j) { random_scalar(&mut rng, f) } else { f.zero() })
                .collect();
            if kernel.rows() > 0 {
                let gamma = random_combination(&mut rng, &kernel);
                for (g, &j) in gamma.iter().zip(&rest) {
                    beta[j] = g.div(&v[j])?;
                }
            }
            if beta.iter().any(|b| !b.is_zero()) {
                return Ok((w, beta));
            }
        }
        Err(ConfigError::SamplingFailed(MAX_ATTEMPTS))
    }

    /// A smooth point `(w, β)` of `Λ_W` over the stratum of `flat` with
    /// `F(w) = flat`. When `flat` has a nonzero column, `β` is supported on
    /// `flat` and `A_F D_β A_Fᵀ` has maximal rank `rank(F)`, which forces the
    /// Jacobian to have full rank. Otherwise `rank(E ∖ flat) = r`, every point
    /// of the stratum is smooth, and the point comes from
    /// [`Configuration::sample_lambda_point`].
    pub fn sample_smooth_witness(&self, flat: Subset, seed: u64) -> Result<LambdaPoint, ConfigError> {
        let f = self.field();
        let cols: Vec<usize> = sets::elements(flat)
            .into_iter()
            .filter(|&j| (0..self.rank()).any(|i| !self.a.get(i, j).is_zero()))
            .collect();
        if cols.is_empty() {
            return self.sample_lambda_point(flat, seed);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = self.stratum_point_with(flat, &mut rng)?;
        let af = self.a.select_columns(&cols);
        let target = af.rank();
        for _ in 0..MAX_ATTEMPTS {
            let mut beta = vec![f.zero(); self.n()];
            let mut local = Vec::with_capacity(cols.len());
            for &c in &cols {
                let b = random_nonzero(&mut rng, f);
                beta[c] = b.clone();
                local.push(b);
            }
            let restricted = af.scale_columns(&local).mul(&af.transpose())?;
            if restricted.rank() == target {
                return Ok((w, beta));
            }
        }
        Err(ConfigError::SamplingFailed(MAX_ATTEMPTS))
    }

    /// A singular point `(w, e_j)` of `Λ_W` over the stratum of `flat`, where
    /// `j ∈ flat` lies in the closure of `E \ flat`. Such `j` exists exactly
    /// when the matroid is connected and `rank(E \ flat) < r`; otherwise the
    /// result is `None`.
    pub fn sample_singular_witness(
        &self,
        flat: Subset,
        seed: u64,
    ) -> Result<Option<LambdaPoint>, ConfigError> {
        let m = self.matroid();
        let rest = m.ground() & !flat;
        if m.rank_of(rest) == self.rank() {
            return Ok(None);
        }
        let Some(j) = sets::elements(flat & m.closure(rest)).first().copied() else {
            return Ok(None);
        };
        let w = self.sample_stratum_point(flat, seed)?;
        let f = self.field();
        let mut beta = vec![f.zero(); self.n()];
        beta[j] = f.one();
        Ok(Some((w, beta)))
    }

    /// A point `(v, β)` of `Λ_W` with every coordinate of `v` and `β` nonzero:
    /// `v ∈ W` and `γ ∈ W⊥` are drawn with full support and `β = γ / v`.
    pub fn sample_torus_point(&self, seed: u64) -> Result<LambdaPoint, ConfigError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let kernel = self.a.kernel_basis();
        for _ in 0..MAX_ATTEMPTS {
            let w: Vec<Scalar> = (0..self.rank()).map(|_| random_scalar(&mut rng, self.field())).collect();
            let v = self.to_ambient(&w)?;
            let gamma = random_combination(&mut rng, &kernel);
            if v.iter().chain(&gamma).any(Scalar::is_zero) {
                continue;
            }
            let beta = gamma.iter().zip(&v).map(|(g, x)| g.div(x)).collect::<Result<Vec<_>, _>>()?;
            return Ok((v, beta));
        }
        Err(ConfigError::SamplingFailed(MAX_ATTEMPTS))
    }

    /// A nonzero `β` with `ψ_W(β) = 0`. Since `ψ_W` has degree at most one in
    /// each variable, fixing all coordinates but one leaves a linear equation.
    pub fn sample_point_on_x(&self, seed: u64) -> Result<Vec<Scalar>, ConfigError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let psi = self.psi_basis_expansion();
        let n = self.n();
        let f = self.field();
        let candidates: Vec<usize> = (0..n).filter(|&i| psi.involves(i)).collect();
        for _ in 0..MAX_ATTEMPTS {
            let i = candidates[rng.gen_range(0..candidates.len())];
            let mut beta: Vec<Scalar> = (0..n).map(|_| random_nonzero(&mut rng, f)).collect();
            beta[i] = f.zero();
            let constant = psi.eval(&beta);
            beta[i] = f.one();
            let slope = &psi.eval(&beta) - &constant;
            if slope.is_zero() {
                continue;
            }
            beta[i] = (-constant).div(&slope)?;
            debug_assert!(psi.eval(&beta).is_zero());
            return Ok(beta);
        }
        Err(ConfigError::SamplingFailed(MAX_ATTEMPTS))
    }
}
