//! Pointwise computations on `W × V*`: membership in `Λ_W`, Jacobian ranks,
//! the rank stratification of `X_W`, the torus duality and the differential
//! identity of the Hadamard square map.

use serde::Serialize;

use crate::arith::{var_list, Matrix, Monomial, MultiPoly, Scalar};

use super::{ConfigError, Configuration};

/// Where a nonzero `β ∈ V*` sits relative to the hypersurface `X_W`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum XRankClass {
    /// `A D_β Aᵀ` is invertible, so `ψ_W(β) ≠ 0`.
    OffX,
    /// Corank one: a smooth point of `X_W`.
    Smooth,
    /// Corank at least two: a singular point of `X_W`.
    SingularOnX,
}

/// Result of comparing `ψ_W(β)` with `ψ_{W⊥}(1/β) Π β_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityConstant {
    /// `λ` with `ψ_W = λ · ψ_{W⊥}(1/β) Π β_i`.
    pub constant: Scalar,
}

impl Configuration {
    /// `A D_β Aᵀ`.
    pub fn q_at(&self, beta: &[Scalar]) -> Result<Matrix, ConfigError> {
        self.check_len(beta, self.n())?;
        let ad = self.a.scale_columns(beta);
        Ok(ad.mul(&self.a.transpose())?)
    }

    /// Whether `A D_β Aᵀ w = 0`.
    pub fn on_lambda(&self, w: &[Scalar], beta: &[Scalar]) -> Result<bool, ConfigError> {
        self.check_len(w, self.rank())?;
        Ok(self.q_at(beta)?.mul_vec(w)?.iter().all(Scalar::is_zero))
    }

    /// Membership in `Λ_W` for a point given by `v ∈ V`: `v ∈ W` and
    /// `β ∘ v ∈ W⊥`.
    pub fn on_lambda_ambient(&self, v: &[Scalar], beta: &[Scalar]) -> Result<bool, ConfigError> {
        self.check_len(beta, self.n())?;
        match self.coordinates_of(v)? {
            Some(w) => self.on_lambda(&w, beta),
            None => Ok(false),
        }
    }

    /// The `r × 2n` matrix `(A D_β Aᵀ | A D_{Aᵀw})` whose rank governs
    /// smoothness of `Λ_W` at `(w, β)`.
    pub fn jacobian(&self, w: &[Scalar], beta: &[Scalar]) -> Result<Matrix, ConfigError> {
        let v = self.to_ambient(w)?;
        let left = self.q_at(beta)?;
        let right = self.a.scale_columns(&v);
        Ok(left.hstack(&right)?)
    }

    pub fn jacobian_rank(&self, w: &[Scalar], beta: &[Scalar]) -> Result<usize, ConfigError> {
        Ok(self.jacobian(w, beta)?.rank())
    }

    pub fn x_rank_class(&self, beta: &[Scalar]) -> Result<XRankClass, ConfigError> {
        if beta.iter().all(Scalar::is_zero) {
            return Err(ConfigError::ZeroVector);
        }
        let rk = self.q_at(beta)?.rank();
        let r = self.rank();
        Ok(if rk == r {
            XRankClass::OffX
        } else if rk + 1 == r {
            XRankClass::Smooth
        } else {
            XRankClass::SingularOnX
        })
    }

    /// `𝔻(v, β) = (β ∘ v, 1/β)`, sending torus points of `Λ_W` to torus
    /// points of `Λ_{W⊥}`.
    pub fn duality_map(
        &self,
        v: &[Scalar],
        beta: &[Scalar],
    ) -> Result<(Vec<Scalar>, Vec<Scalar>), ConfigError> {
        self.check_len(v, self.n())?;
        self.check_len(beta, self.n())?;
        if let Some(i) = beta.iter().position(Scalar::is_zero) {
            return Err(ConfigError::ZeroCoordinate(i + 1));
        }
        if !self.on_lambda_ambient(v, beta)? {
            return Err(ConfigError::NotOnLambda);
        }
        Ok(apply_duality(v, beta))
    }

    /// Inverse of [`duality_map`](Self::duality_map): takes a torus point
    /// `(v', β')` of `Λ_{W⊥}` (checked against `dual`) back to `Λ_W`.
    pub fn duality_inverse(
        &self,
        dual: &Configuration,
        v: &[Scalar],
        beta: &[Scalar],
    ) -> Result<(Vec<Scalar>, Vec<Scalar>), ConfigError> {
        let (v0, b0) = dual.duality_map(v, beta)?;
        debug_assert!(self.on_lambda_ambient(&v0, &b0).unwrap_or(false));
        Ok((v0, b0))
    }

    /// `ψ_{W⊥}(1/x) Π x_i`, computed as a Laurent substitution: each term
    /// `x^e` becomes `x^{1-e}`, which is a polynomial because `ψ_{W⊥}` is
    /// squarefree.
    pub fn dual_psi_transform(dual: &Configuration) -> MultiPoly {
        let psi = dual.psi_basis_expansion();
        let n = dual.n();
        let terms = psi.terms().map(|(m, c)| {
            let e = m.0.iter().map(|&k| 1 - k).collect();
            (Monomial(e), c.clone())
        });
        MultiPoly::from_terms(psi.field(), super::x_vars(n), terms)
    }

    /// Finds `λ` with `ψ_W(β) = λ · ψ_{W⊥}(1/β) Π β_i` as polynomials, where
    /// `dual` is any configuration whose row span is `ker A`. The constant is
    /// `1` for the pair returned by [`standard_pair`](Self::standard_pair).
    pub fn psi_duality_constant(&self, dual: &Configuration) -> Result<DualityConstant, ConfigError> {
        let lhs = self.psi_basis_expansion();
        let rhs = Self::dual_psi_transform(dual);
        let (m, c) = rhs.terms().next().ok_or(ConfigError::Mismatch)?;
        let lambda = lhs.coeff(m).div(c)?;
        if lambda.is_zero() || *lhs != rhs.scale(&lambda) {
            return Err(ConfigError::Mismatch);
        }
        Ok(DualityConstant { constant: lambda })
    }

    /// Checks `β(∂Q_W(w,w)/∂z_i) = 2 (A D_β Aᵀ w)_i` for every `i`, where the
    /// left side differentiates `Σ_j x_j ℓ_j(z)²` symbolically in `z`.
    pub fn iota_differential_check(&self, w: &[Scalar], beta: &[Scalar]) -> Result<bool, ConfigError> {
        self.check_len(w, self.rank())?;
        self.check_len(beta, self.n())?;
        let f = self.field();
        if f.characteristic() == 2 {
            return Err(ConfigError::CharacteristicTwo);
        }
        let (r, n) = (self.rank(), self.n());
        let names: Vec<String> =
            (1..=r).map(|i| format!("z{i}")).chain((1..=n).map(|j| format!("x{j}"))).collect();
        let vars = var_list(&names);
        let mut quad = MultiPoly::zero(f, vars.clone());
        for j in 0..n {
            let ell = MultiPoly::from_terms(
                f,
                vars.clone(),
                (0..r).map(|i| (Monomial::var(r + n, i), self.a.get(i, j).clone())),
            );
            quad = quad.add(&ell.mul(&ell).mul(&MultiPoly::var(f, vars.clone(), r + j)));
        }
        let point: Vec<Scalar> = w.iter().chain(beta).cloned().collect();
        let rhs = self.q_at(beta)?.mul_vec(w)?;
        let two = f.from_i64(2);
        Ok((0..r).all(|i| quad.derivative(i).eval(&point) == &two * &rhs[i]))
    }
}

fn apply_duality(v: &[Scalar], beta: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
    let v2 = v.iter().zip(beta).map(|(a, b)| a * b).collect();
    let b2 = beta.iter().map(|b| b.inv().expect("nonzero")).collect();
    (v2, b2)
}
