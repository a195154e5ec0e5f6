//! Sparse multivariate polynomials over a [`Field`] with dense exponent vectors.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::{ArithError, Field, Scalar};

/// Exponent vector indexed by the ambient variable list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|a| a * k).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other).then(|| Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&a| a <= 1)
    }

    pub fn is_coprime_to(&self, other: &Monomial) -> bool {
        self.gcd(other).degree() == 0
    }

    /// Renders as `x1^2*u1`, or `1` for the unit monomial.
    pub fn render(&self, vars: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { vars[i].clone() } else { format!("{}^{e}", vars[i]) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// Lexicographic order over a variable priority list.
///
/// A block order (compare the first block lexicographically, then the next)
/// is the lex order over the concatenated blocks, so both are represented by
/// a single priority list. The order is total and multiplicative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermOrder {
    priority: Vec<usize>,
    label: String,
}

impl TermOrder {
    /// Plain lex with `x_0 > x_1 > ...`.
    pub fn lex(nvars: usize) -> Self {
        TermOrder { priority: (0..nvars).collect(), label: "lex".into() }
    }

    pub fn with_priority(priority: Vec<usize>, label: impl Into<String>) -> Self {
        TermOrder { priority, label: label.into() }
    }

    /// Compare `first` lexicographically, break ties by `second`.
    pub fn block_lex(first: &[usize], second: &[usize], label: impl Into<String>) -> Self {
        let mut priority = first.to_vec();
        priority.extend_from_slice(second);
        TermOrder { priority, label: label.into() }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for &i in &self.priority {
            match a.0[i].cmp(&b.0[i]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

/// Shared ordered variable names.
pub type VarList = Arc<Vec<String>>;

pub fn var_list<S: AsRef<str>>(names: &[S]) -> VarList {
    Arc::new(names.iter().map(|s| s.as_ref().to_string()).collect())
}

/// A polynomial: map from monomial to nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    field: Field,
    vars: VarList,
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultiPoly {
    pub fn zero(field: Field, vars: VarList) -> Self {
        MultiPoly { field, vars, terms: BTreeMap::new() }
    }

    pub fn constant(field: Field, vars: VarList, c: Scalar) -> Self {
        let mut p = Self::zero(field, vars);
        let n = p.nvars();
        p.add_term(Monomial::one(n), c);
        p
    }

    pub fn var(field: Field, vars: VarList, i: usize) -> Self {
        let n = vars.len();
        let mut p = Self::zero(field, vars);
        p.add_term(Monomial::var(n, i), field.one());
        p
    }

    pub fn from_terms(
        field: Field,
        vars: VarList,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Self {
        let mut p = Self::zero(field, vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        debug_assert_eq!(m.0.len(), self.nvars());
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = &*existing + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_compatible(&self, other: &MultiPoly) {
        assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars,
            "polynomials over different variable lists"
        );
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.check_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        self.scale(&-&self.field.one())
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        let mut out = Self::zero(self.field, self.vars.clone());
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect();
        out
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> MultiPoly {
        let mut out = Self::zero(self.field, self.vars.clone());
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect();
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.check_compatible(other);
        let mut out = Self::zero(self.field, self.vars.clone());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = Self::constant(self.field, self.vars.clone(), self.field.one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Every exponent is at most one.
    pub fn is_squarefree(&self) -> bool {
        self.terms.keys().all(Monomial::is_squarefree)
    }

    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] > 0)
    }

    /// Maximal monomial under `ord` with its coefficient.
    pub fn lead_term(&self, ord: &TermOrder) -> Result<(Monomial, Scalar), ArithError> {
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp(a.0, b.0))
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or(ArithError::ZeroPolynomial)
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars());
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &x.pow(e as u64);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Substitutes `values[i]` for every variable `i` that has `Some` entry.
    pub fn partial_eval(&self, values: &[Option<Scalar>]) -> MultiPoly {
        let mut out = Self::zero(self.field, self.vars.clone());
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = m.clone();
            for (i, v) in values.iter().enumerate() {
                if let Some(v) = v {
                    if m.0[i] > 0 {
                        coeff = &coeff * &v.pow(m.0[i] as u64);
                        rest.0[i] = 0;
                    }
                }
            }
            out.add_term(rest, coeff);
        }
        out
    }

    pub fn derivative(&self, i: usize) -> MultiPoly {
        let mut out = Self::zero(self.field, self.vars.clone());
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut d = m.clone();
            d.0[i] -= 1;
            out.add_term(d, c * &self.field.from_i64(e as i64));
        }
        out
    }

    /// Re-expresses the polynomial over a different variable list, mapping
    /// variable `i` to `target[i]` in the new list.
    pub fn relabel(&self, vars: VarList, target: &[usize]) -> MultiPoly {
        let n = vars.len();
        let mut out = Self::zero(self.field, vars);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; n];
            for (i, &k) in m.0.iter().enumerate() {
                e[target[i]] += k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Remainder of multivariate division by `divisors` under `ord`.
    pub fn reduce(&self, divisors: &[MultiPoly], ord: &TermOrder) -> MultiPoly {
        let leads: Vec<(Monomial, Scalar)> =
            divisors.iter().map(|g| g.lead_term(ord).expect("nonzero divisor")).collect();
        let mut p = self.clone();
        let mut rem = Self::zero(self.field, self.vars.clone());
        while let Ok((m, c)) = p.lead_term(ord) {
            let hit =
                leads.iter().enumerate().find_map(|(j, (lm, lc))| lm.quotient_of(&m).map(|q| (j, q, lc)));
            match hit {
                Some((j, q, lc)) => {
                    let factor = c.div(lc).expect("nonzero lead coefficient");
                    p = p.sub(&divisors[j].mul_term(&q, &factor));
                }
                None => {
                    p.terms.remove(&m);
                    rem.add_term(m, c);
                }
            }
        }
        rem
    }

    /// Symbolic determinant of a square matrix of polynomials by Laplace
    /// expansion along rows, memoised over the remaining column set.
    pub fn determinant(entries: &[Vec<MultiPoly>]) -> Result<MultiPoly, ArithError> {
        let n = entries.len();
        if entries.iter().any(|row| row.len() != n) {
            return Err(ArithError::NonSquare);
        }
        if n == 0 {
            return Err(ArithError::NonSquare);
        }
        assert!(n <= 20, "symbolic determinant limited to 20x20");
        let field = entries[0][0].field;
        let vars = entries[0][0].vars.clone();
        let mut memo: HashMap<u32, MultiPoly> = HashMap::new();
        let full = (1u32 << n) - 1;
        fn go(
            row: usize,
            cols: u32,
            entries: &[Vec<MultiPoly>],
            memo: &mut HashMap<u32, MultiPoly>,
            field: Field,
            vars: &VarList,
        ) -> MultiPoly {
            if cols == 0 {
                return MultiPoly::constant(field, vars.clone(), field.one());
            }
            if let Some(p) = memo.get(&cols) {
                return p.clone();
            }
            let mut acc = MultiPoly::zero(field, vars.clone());
            let mut position = 0;
            for j in 0..entries.len() {
                if cols & (1 << j) == 0 {
                    continue;
                }
                let a = &entries[row][j];
                if !a.is_zero() {
                    let minor = go(row + 1, cols & !(1 << j), entries, memo, field, vars);
                    let term = a.mul(&minor);
                    acc = if position % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
                }
                position += 1;
            }
            memo.insert(cols, acc.clone());
            acc
        }
        Ok(go(0, full, entries, &mut memo, field, &vars))
    }

    /// Parses the textual form produced by `Display` (`2*x1^2*u1-x3+1/2`).
    pub fn parse(field: Field, vars: VarList, s: &str) -> Result<MultiPoly, ArithError> {
        let err = || ArithError::Parse(s.to_string());
        let index: HashMap<&str, usize> = vars.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let n = vars.len();
        let mut out = Self::zero(field, vars.clone());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "0" {
            return Ok(out);
        }
        if compact.is_empty() {
            return Err(err());
        }
        // Split into signed terms.
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        for (k, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && k > 0 {
                pieces.push((negative, std::mem::take(&mut current)));
                negative = ch == '-';
            } else if (ch == '+' || ch == '-') && k == 0 {
                negative = ch == '-';
            } else {
                current.push(ch);
            }
        }
        pieces.push((negative, current));
        for (neg, body) in pieces {
            if body.is_empty() {
                return Err(err());
            }
            let mut coeff = field.one();
            let mut mono = Monomial::one(n);
            for factor in body.split('*') {
                if factor.is_empty() {
                    return Err(err());
                }
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (b, e.parse::<u32>().map_err(|_| err())?),
                    None => (factor, 1),
                };
                if let Some(&i) = index.get(base) {
                    mono.0[i] += exp;
                } else {
                    let c = field.parse_scalar(base).map_err(|_| err())?;
                    coeff = &coeff * &c.pow(exp as u64);
                }
            }
            if neg {
                coeff = -coeff;
            }
            out.add_term(mono, coeff);
        }
        Ok(out)
    }
}

impl MultiPoly {
    /// Renders terms by increasing degree, then in colex order: monomials are
    /// compared on their exponents read from the last variable backwards.
    pub fn to_colex_string(&self) -> String {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            a.degree().cmp(&b.degree()).then_with(|| a.0.iter().rev().cmp(b.0.iter().rev()))
        });
        let mut out = String::new();
        self.write_terms(&mut out, terms.into_iter()).expect("writing to a String");
        out
    }

    fn write_terms<'a>(
        &self,
        f: &mut impl fmt::Write,
        terms: impl Iterator<Item = (&'a Monomial, &'a Scalar)>,
    ) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let one = self.field.one();
        let minus_one = -&one;
        for (k, (m, c)) in terms.enumerate() {
            let is_unit = m.degree() == 0;
            let body = m.render(&self.vars);
            let (sign, mag) = match c.signum() {
                Some(-1) => ("-", -c),
                _ => ("+", c.clone()),
            };
            if k > 0 || sign == "-" {
                write!(f, "{sign}")?;
            }
            if is_unit {
                write!(f, "{mag}")?;
            } else if mag == one {
                write!(f, "{body}")?;
            } else if mag == minus_one {
                write!(f, "-{body}")?;
            } else {
                write!(f, "{mag}*{body}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for MultiPoly {
    /// Terms in descending lex order of the variable list.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_terms(f, self.terms.iter().rev())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> VarList {
        var_list(&["x1", "x2", "u1"])
    }

    #[test]
    fn display_and_parse_agree() {
        let f = Field::Rational;
        let p = MultiPoly::parse(f, xy(), "2*x1^2*u1 - x2 + 1/2").unwrap();
        assert_eq!(p.num_terms(), 3);
        let again = MultiPoly::parse(f, xy(), &p.to_string()).unwrap();
        assert_eq!(p, again);
        assert_eq!(MultiPoly::parse(f, xy(), "0").unwrap().to_string(), "0");
        assert!(MultiPoly::parse(f, xy(), "x1**x2").is_err());
    }

    #[test]
    fn colex_rendering() {
        let f = Field::Rational;
        let p = MultiPoly::parse(f, xy(), "x2*u1 + x1*u1 - 3 + x1*x2 + x2").unwrap();
        assert_eq!(p.to_colex_string(), "-3+x2+x1*x2+x1*u1+x2*u1");
        assert_eq!(MultiPoly::parse(f, xy(), &p.to_colex_string()).unwrap(), p);
        assert_eq!(MultiPoly::zero(f, xy()).to_colex_string(), "0");
    }

    #[test]
    fn constant_lead_term() {
        let f = Field::Rational;
        let c = MultiPoly::constant(f, xy(), f.from_i64(5));
        let (m, k) = c.lead_term(&TermOrder::lex(3)).unwrap();
        assert_eq!(m, Monomial::one(3));
        assert_eq!(k, f.from_i64(5));
        assert!(MultiPoly::zero(f, xy()).lead_term(&TermOrder::lex(3)).is_err());
    }

    #[test]
    fn priority_changes_lead() {
        let f = Field::Rational;
        let p = MultiPoly::parse(f, xy(), "x1 + x2^3").unwrap();
        let (m, _) = p.lead_term(&TermOrder::lex(3)).unwrap();
        assert_eq!(m.0, vec![1, 0, 0]);
        let (m, _) = p.lead_term(&TermOrder::with_priority(vec![1, 0, 2], "x2>x1")).unwrap();
        assert_eq!(m.0, vec![0, 3, 0]);
    }

    #[test]
    fn derivative_and_eval() {
        let f = Field::Rational;
        let p = MultiPoly::parse(f, xy(), "x1^3*x2 + 4*x2").unwrap();
        let d = p.derivative(0);
        assert_eq!(d.to_string(), "3*x1^2*x2");
        let v = p.eval(&[f.from_i64(2), f.from_i64(3), f.zero()]);
        assert_eq!(v, f.from_i64(36));
    }

    #[test]
    fn division_remainder() {
        let f = Field::Rational;
        let vars = xy();
        let p = MultiPoly::parse(f, vars.clone(), "x1^2*x2 + x2").unwrap();
        let g = MultiPoly::parse(f, vars, "x1*x2 - 1").unwrap();
        let r = p.reduce(&[g], &TermOrder::lex(3));
        assert_eq!(r.to_string(), "x1+x2");
    }

    #[test]
    fn symbolic_determinant_2x2() {
        let f = Field::Rational;
        let vars = xy();
        let e = |s: &str| MultiPoly::parse(f, vars.clone(), s).unwrap();
        let m = vec![vec![e("x1"), e("x2")], vec![e("u1"), e("x1")]];
        let d = MultiPoly::determinant(&m).unwrap();
        assert_eq!(d, e("x1^2 - x2*u1"));
    }
}
