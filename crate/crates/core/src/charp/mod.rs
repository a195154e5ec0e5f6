//! Certificates valid over every field: the standard form `(I | B)`, the lead
//! terms `x_i u_i` of the bilinear forms `q_i` (hence their initial ideal),
//! the generators of `I_{W,0} = I_W + (ψ_W)`, and the monomial witness for
//! Fedder's F-purity criterion.


use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{is_prime, Monomial, MultiPoly, TermOrder};
use crate::config::{ConfigError, Configuration};

/// Label of the term order used throughout: lex on `x₁ > … > x_n`, ties
/// broken by lex on `u₁ > … > u_r`.
pub const ORDER_LABEL: &str = "x-lex,u-lex";

#[derive(Debug, Error)]
pub enum CharpError {
    #[error("matrix does not have full row rank")]
    RankDeficient,
    #[error("lead term of q{index} is {found}, expected x{index}*u{index}")]
    OrderViolation { index: usize, found: String },
    #[error("lead-term certificate failed: {0}")]
    LeadTermFailure(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("determinant of the Q_W matrix differs from the configuration polynomial")]
    Mismatch,
    #[error(transparent)]
    Config(#[from] ConfigError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    InitialIdeal,
    FPurity,
    Linkage,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// A re-checkable record of a certificate computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub order: String,
    /// Column permutation (1-based) taking the input to standard form.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub permutation: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub leads: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<String>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// Consequences that follow from cited theorems; never computed here.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cited: Vec<String>,
}

impl Certificate {
    fn new(kind: CertificateKind) -> Self {
        Certificate {
            kind,
            order: ORDER_LABEL.to_string(),
            permutation: Vec::new(),
            leads: Vec::new(),
            witness: None,
            p: None,
            generators: Vec::new(),
            verdict: Verdict::Pass,
            reason: None,
            cited: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Recomputes the certificate from `c` (already in standard form) and
    /// compares every recorded field except the permutation.
    pub fn recheck(&self, c: &Configuration) -> bool {
        let fresh = match self.kind {
            CertificateKind::InitialIdeal => lead_term_certificate(c),
            CertificateKind::FPurity => match self.p {
                Some(p) => fedder_witness(c, p),
                None => return false,
            },
            CertificateKind::Linkage => linkage_certificate(c),
        };
        match fresh {
            Ok(mut f) => {
                f.permutation = self.permutation.clone();
                &f == self
            }
            Err(_) => false,
        }
    }
}

/// Row-reduces `A` and moves the pivot columns to the front, giving
/// `(I_r | B)`. Returns the new configuration and the permutation `perm`
/// with new column `k` equal to old column `perm[k]` (0-based).
pub fn row_reduce_to_standard(c: &Configuration) -> Result<(Configuration, Vec<usize>), CharpError> {
    let echelon = c.matrix().rref();
    let r = c.matrix().rows();
    if echelon.pivots.len() < r {
        return Err(CharpError::RankDeficient);
    }
    let mut perm = echelon.pivots.clone();
    perm.extend((0..c.n()).filter(|j| !echelon.pivots.contains(j)));
    let a = echelon.matrix.select_columns(&perm);
    Ok((Configuration::new(a)?, perm))
}

/// The term order of [`ORDER_LABEL`] on the variables `x₁..x_n, u₁..u_r`.
pub fn block_order(n: usize, r: usize) -> TermOrder {
    let xs: Vec<usize> = (0..n).collect();
    let us: Vec<usize> = (n..n + r).collect();
    TermOrder::block_lex(&xs, &us, ORDER_LABEL)
}

fn expected_lead(n: usize, r: usize, i: usize) -> Monomial {
    let mut e = vec![0u32; n + r];
    e[i] = 1;
    e[n + i] = 1;
    Monomial(e)
}

/// Checks `lead(q_i) = x_i u_i` for every `i`, together with squarefreeness
/// and pairwise coprimality of the leads. Such leads make `{q_i}` a Gröbner
/// basis with initial ideal `(x₁u₁, …, x_r u_r)`.
pub fn lead_term_certificate(c: &Configuration) -> Result<Certificate, CharpError> {
    let sys = c.lambda_system();
    let (n, r) = (sys.n, sys.r);
    let ord = block_order(n, r);
    let mut leads = Vec::with_capacity(r);
    for (i, q) in sys.forms.iter().enumerate() {
        let (m, _) =
            q.lead_term(&ord).map_err(|_| CharpError::OrderViolation { index: i + 1, found: "0".into() })?;
        if m != expected_lead(n, r, i) {
            return Err(CharpError::OrderViolation { index: i + 1, found: m.render(&sys.vars) });
        }
        leads.push(m);
    }
    let mut cert = Certificate::new(CertificateKind::InitialIdeal);
    cert.leads = leads.iter().map(|m| m.render(&sys.vars)).collect();
    let squarefree = leads.iter().all(Monomial::is_squarefree);
    let coprime = leads.iter().enumerate().all(|(i, a)| leads[i + 1..].iter().all(|b| a.is_coprime_to(b)));
    if !(squarefree && coprime) {
        cert.verdict = Verdict::Fail;
        cert.reason = Some("lead terms are not squarefree and pairwise coprime".into());
    }
    Ok(cert)
}

/// Reduces every S-polynomial of `forms` by `forms` under `ord` and reports
/// whether all remainders vanish.
pub fn s_pairs_reduce_to_zero(forms: &[MultiPoly], ord: &TermOrder) -> bool {
    let leads: Vec<_> = forms.iter().map(|f| f.lead_term(ord)).collect();
    for i in 0..forms.len() {
        for j in i + 1..forms.len() {
            let (Ok((mi, ci)), Ok((mj, cj))) = (&leads[i], &leads[j]) else {
                return false;
            };
            let l = mi.lcm(mj);
            let a = mi.quotient_of(&l).expect("divides lcm");
            let b = mj.quotient_of(&l).expect("divides lcm");
            let s = forms[i]
                .mul_term(&a, &ci.inv().expect("nonzero"))
                .sub(&forms[j].mul_term(&b, &cj.inv().expect("nonzero")));
            if !s.reduce(forms, ord).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Lead-term certificate plus exhaustive S-pair reduction.
pub fn strict_lead_term_certificate(c: &Configuration) -> Result<Certificate, CharpError> {
    let mut cert = lead_term_certificate(c)?;
    let sys = c.lambda_system();
    if !s_pairs_reduce_to_zero(&sys.forms, &block_order(sys.n, sys.r)) {
        cert.verdict = Verdict::Fail;
        cert.reason = Some("an S-pair has nonzero remainder".into());
    }
    Ok(cert)
}

/// The Fedder witness `lead(Q^{p-1}) = Π x_i^{p-1} u_i^{p-1}` for
/// `Q = q₁⋯q_r`. It lies outside `m^{[p]}` because every exponent is below
/// `p`; the certificate records that comparison.
pub fn fedder_witness(c: &Configuration, p: u64) -> Result<Certificate, CharpError> {
    if !is_prime(p) {
        return Err(CharpError::NotPrime(p));
    }
    let lead = lead_term_certificate(c).map_err(|e| CharpError::LeadTermFailure(e.to_string()))?;
    if !lead.passed() {
        return Err(CharpError::LeadTermFailure(lead.reason.unwrap_or_default()));
    }
    let sys = c.lambda_system();
    let (n, r) = (sys.n, sys.r);
    let e = u32::try_from(p - 1).map_err(|_| CharpError::NotPrime(p))?;
    let witness =
        (0..r).map(|i| expected_lead(n, r, i)).fold(Monomial::one(n + r), |acc, m| acc.mul(&m)).pow(e);
    let mut cert = Certificate::new(CertificateKind::FPurity);
    cert.leads = lead.leads;
    cert.witness = Some(witness.render(&sys.vars));
    cert.p = Some(p);
    if let Some(bad) = witness.0.iter().position(|&k| u64::from(k) >= p) {
        cert.verdict = Verdict::Fail;
        cert.reason = Some(format!("exponent of {} is at least p", sys.vars[bad]));
    } else {
        cert.cited = vec![
            format!("K[u,x]/I_W is F-pure in characteristic {p} (Fedder's criterion)"),
            format!("K[u,x]/I_W0 is F-pure in characteristic {p} (containment of Frobenius colon ideals)"),
        ];
    }
    Ok(cert)
}

/// `q₁, …, q_r` followed by `ψ_W`, all in the variables `x₁..x_n, u₁..u_r`,
/// after checking `det(A diag(x) Aᵀ) = ψ_W` symbolically.
pub fn linkage_generators(c: &Configuration) -> Result<Vec<MultiPoly>, CharpError> {
    c.psi_det().map_err(|e| match e {
        ConfigError::Mismatch => CharpError::Mismatch,
        other => CharpError::Config(other),
    })?;
    let sys = c.lambda_system();
    let target: Vec<usize> = (0..sys.n).collect();
    let psi = c.psi_basis_expansion().relabel(sys.vars.clone(), &target);
    let mut gens = sys.forms;
    gens.push(psi);
    Ok(gens)
}

pub fn linkage_certificate(c: &Configuration) -> Result<Certificate, CharpError> {
    let gens = linkage_generators(c)?;
    let mut cert = Certificate::new(CertificateKind::Linkage);
    cert.generators = gens.iter().map(ToString::to_string).collect();
    Ok(cert)
}

/// Brings `c` to standard form and certifies the initial ideal there,
/// recording the column permutation (1-based) in the certificate.
pub fn certify_initial_ideal(c: &Configuration) -> Result<(Configuration, Certificate), CharpError> {
    let (std, perm) = row_reduce_to_standard(c)?;
    let mut cert = lead_term_certificate(&std)?;
    cert.permutation = perm.iter().map(|j| j + 1).collect();
    Ok((std, cert))
}
