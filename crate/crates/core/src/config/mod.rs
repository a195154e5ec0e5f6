//! Linear configurations `W ⊆ K^E` given by a full-row-rank matrix `A`:
//! the configuration polynomial, the symmetric matrix `Q_W`, the bilinear
//! equations of the incidence variety `Λ_W`, and pointwise analysis on it.

mod io;
mod points;
mod sample;

use thiserror::Error;

use crate::arith::{var_list, ArithError, Field, Matrix, Monomial, MultiPoly, Scalar, VarList};
use crate::matroid::{sets, Matroid, MatroidError, Subset};

pub use io::{matrix_from_json, matrix_to_json, MatrixJson};
pub use points::{DualityConstant, XRankClass};
pub use sample::{LambdaPoint, SAMPLING_PRIME};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("determinant and basis expansion of the configuration polynomial disagree")]
    Mismatch,
    #[error("matroid is not connected")]
    NotConnected,
    #[error("vector is zero")]
    ZeroVector,
    #[error("coordinate {0} is zero")]
    ZeroCoordinate(usize),
    #[error("point does not lie on the incidence variety")]
    NotOnLambda,
    #[error("expected a vector of length {expected}, got {got}")]
    Length { expected: usize, got: usize },
    #[error("identity requires characteristic different from 2")]
    CharacteristicTwo,
    #[error("sampling found no suitable point after {0} attempts")]
    SamplingFailed(usize),
    #[error("{0}")]
    Parse(String),
}

/// A configuration: the row span of an `r × n` matrix of rank `r`, `0 < r < n`.
#[derive(Clone, Debug)]
pub struct Configuration {
    a: Matrix,
    matroid: Matroid,
    psi: MultiPoly,
}

/// The `r` bilinear forms `q_i = (A diag(x) Aᵀ u)_i` in `K[x_1..x_n, u_1..u_r]`.
#[derive(Clone, Debug)]
pub struct LambdaSystem {
    pub vars: VarList,
    pub n: usize,
    pub r: usize,
    pub forms: Vec<MultiPoly>,
}

impl Configuration {
    pub fn new(a: Matrix) -> Result<Self, ConfigError> {
        let matroid = Matroid::from_matrix(&a)?;
        let psi = basis_expansion(&a, &matroid);
        Ok(Configuration { a, matroid, psi })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.a
    }

    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    pub fn rank(&self) -> usize {
        self.a.rows()
    }

    pub fn n(&self) -> usize {
        self.a.cols()
    }

    /// Variable names `x1..xn`.
    pub fn x_vars(&self) -> VarList {
        x_vars(self.n())
    }

    /// The configuration whose rows span `ker A`, i.e. `W⊥`.
    pub fn dual_config(&self) -> Result<Configuration, ConfigError> {
        Configuration::new(self.a.kernel_basis())
    }

    /// `A` replaced by its reduced row echelon form (same `W`), together with
    /// the dual spanned by the unscaled kernel vectors read off that form.
    /// For this pair the duality identity for `ψ` holds with constant 1.
    pub fn standard_pair(&self) -> Result<(Configuration, Configuration), ConfigError> {
        let ech = self.a.rref();
        let f = self.field();
        let n = self.n();
        let free: Vec<usize> = (0..n).filter(|c| !ech.pivots.contains(c)).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![f.zero(); n];
            v[fc] = f.one();
            for (r, &pc) in ech.pivots.iter().enumerate() {
                v[pc] = -ech.matrix.get(r, fc);
            }
            rows.push(v);
        }
        let primal = Configuration::new(ech.matrix)?;
        let dual = Configuration::new(Matrix::from_rows(f, rows)?)?;
        Ok((primal, dual))
    }

    /// `ψ_W = Σ_B det(A_B)² Π_{i∈B} x_i`, cached at construction.
    pub fn psi_basis_expansion(&self) -> &MultiPoly {
        &self.psi
    }

    /// The matrix `A diag(x) Aᵀ` with linear entries.
    pub fn qw_matrix(&self) -> Vec<Vec<MultiPoly>> {
        let (r, n, f) = (self.rank(), self.n(), self.field());
        let vars = self.x_vars();
        (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        MultiPoly::from_terms(
                            f,
                            vars.clone(),
                            (0..n).map(|k| (Monomial::var(n, k), self.a.get(i, k) * self.a.get(j, k))),
                        )
                    })
                    .collect()
            })
            .collect()
    }

    /// `det(A diag(x) Aᵀ)` computed symbolically and checked against the
    /// basis expansion.
    pub fn psi_det(&self) -> Result<MultiPoly, ConfigError> {
        let det = MultiPoly::determinant(&self.qw_matrix())?;
        if det != self.psi {
            return Err(ConfigError::Mismatch);
        }
        Ok(det)
    }

    pub fn lambda_system(&self) -> LambdaSystem {
        let (r, n, f) = (self.rank(), self.n(), self.field());
        let names: Vec<String> =
            (1..=n).map(|i| format!("x{i}")).chain((1..=r).map(|j| format!("u{j}"))).collect();
        let vars = var_list(&names);
        let forms = (0..r)
            .map(|i| {
                let mut q = MultiPoly::zero(f, vars.clone());
                for j in 0..r {
                    for k in 0..n {
                        let c = self.a.get(i, k) * self.a.get(j, k);
                        let mut e = vec![0u32; n + r];
                        e[k] = 1;
                        e[n + j] = 1;
                        q.add_term(Monomial(e), c);
                    }
                }
                q
            })
            .collect();
        LambdaSystem { vars, n, r, forms }
    }

    /// `Aᵀ w`, the vector `(ℓ_1(w), ..., ℓ_n(w))` in `V`.
    pub fn to_ambient(&self, w: &[Scalar]) -> Result<Vec<Scalar>, ConfigError> {
        self.check_len(w, self.rank())?;
        Ok(self.a.left_mul_vec(w)?)
    }

    /// Coordinates `w` with `Aᵀ w = v`, if `v` lies in `W`.
    pub fn coordinates_of(&self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>, ConfigError> {
        self.check_len(v, self.n())?;
        Ok(self.a.transpose().solve(v))
    }

    /// `F(w) = {i : ℓ_i(w) = 0}`, always a flat.
    pub fn flat_of(&self, w: &[Scalar]) -> Result<Subset, ConfigError> {
        let v = self.to_ambient(w)?;
        Ok(sets::from_elements(v.iter().enumerate().filter(|(_, x)| x.is_zero()).map(|(i, _)| i)))
    }

    /// Proper flats `F` with `rank(E \ F) < r`; these index the non-smooth
    /// part of `Λ_W`.
    pub fn nonround_flats(&self) -> Result<Vec<Subset>, ConfigError> {
        if !self.matroid.is_connected() {
            return Err(ConfigError::NotConnected);
        }
        Ok(self.matroid.nonround_flats())
    }

    /// Coordinatewise square of `Aᵀ w`.
    pub fn hadamard_square(&self, w: &[Scalar]) -> Result<Vec<Scalar>, ConfigError> {
        self.check_len(w, self.rank())?;
        if w.iter().all(Scalar::is_zero) {
            return Err(ConfigError::ZeroVector);
        }
        Ok(self.to_ambient(w)?.iter().map(|x| x * x).collect())
    }

    fn check_len(&self, v: &[Scalar], expected: usize) -> Result<(), ConfigError> {
        if v.len() != expected {
            return Err(ConfigError::Length { expected, got: v.len() });
        }
        Ok(())
    }
}

pub(crate) fn x_vars(n: usize) -> VarList {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    var_list(&names)
}

fn basis_expansion(a: &Matrix, m: &Matroid) -> MultiPoly {
    let n = a.cols();
    let terms = m.bases().iter().map(|&b| {
        let cols = sets::elements(b);
        let d = a.select_columns(&cols).det().expect("square minor");
        let mut e = vec![0u32; n];
        for &c in &cols {
            e[c] = 1;
        }
        (Monomial(e), &d * &d)
    });
    MultiPoly::from_terms(a.field(), x_vars(n), terms)
}
