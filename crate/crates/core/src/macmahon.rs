//! Permanent as a polynomial coefficient.
//!
//! `perm(U[..n, ..n])` is the coefficient of `α_1 α_2 ... α_n` in
//! `Π_j Σ_k U[k, j] α_k`. Only multilinear monomials can reach that
//! coefficient, so the expansion drops any monomial with a squared variable
//! as soon as it appears. Multilinear monomials are bitmasks over the `n`
//! variables and each multiplication by a linear form is a masked shift.

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::UnitaryMatrix;

/// Coefficients at or below this modulus are dropped.
pub const PRUNE_TOL: f64 = 1e-15;
/// Largest number of forms [`expand_multilinear`] accepts.
pub const MAX_FORMS: usize = 12;

/// Exponent multi-index, one entry per variable.
pub type Monomial = Vec<u8>;

/// Sparse polynomial in `n_vars` commuting variables with complex coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct SparsePolynomial {
    n_vars: usize,
    terms: BTreeMap<Monomial, Complex64>,
}

impl SparsePolynomial {
    pub fn zero(n_vars: usize) -> Self {
        SparsePolynomial {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n_vars: usize) -> Self {
        let mut p = SparsePolynomial::zero(n_vars);
        p.add_term(vec![0; n_vars], Complex64::new(1.0, 0.0));
        p
    }

    /// `Σ_k coeffs[k] α_k`.
    pub fn linear(coeffs: &[Complex64]) -> Self {
        let n_vars = coeffs.len();
        let mut p = SparsePolynomial::zero(n_vars);
        for (k, &c) in coeffs.iter().enumerate() {
            let mut mono = vec![0; n_vars];
            mono[k] = 1;
            p.add_term(mono, c);
        }
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Complex64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &[u8]) -> Complex64 {
        self.terms.get(mono).copied().unwrap_or_default()
    }

    /// Coefficient of `α_1 α_2 ... α_n`.
    pub fn multilinear_top(&self) -> Complex64 {
        self.coefficient(&vec![1; self.n_vars])
    }

    pub fn is_multilinear(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e <= 1))
    }

    fn add_term(&mut self, mono: Monomial, c: Complex64) {
        let entry = self.terms.entry(mono).or_default();
        *entry += c;
        self.prune();
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| c.norm() > PRUNE_TOL);
    }

    /// Full product, no pruning of higher powers.
    pub fn mul(&self, other: &SparsePolynomial) -> Result<SparsePolynomial> {
        if self.n_vars != other.n_vars {
            return Err(Error::Shape(format!("{} vs {} variables", self.n_vars, other.n_vars)));
        }
        let mut out = SparsePolynomial::zero(self.n_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mono: Monomial = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                *out.terms.entry(mono).or_default() += ca * cb;
            }
        }
        out.prune();
        Ok(out)
    }

    fn from_masks(n_vars: usize, masks: HashMap<u32, Complex64>) -> Self {
        let terms = masks
            .into_iter()
            .filter(|(_, c)| c.norm() > PRUNE_TOL)
            .map(|(mask, c)| ((0..n_vars).map(|k| ((mask >> k) & 1) as u8).collect(), c))
            .collect();
        SparsePolynomial { n_vars, terms }
    }
}

/// Form `j` is `Σ_{k<n} U[k, j] α_k`: column `j` of the leading block.
pub fn build_linear_forms(u: &UnitaryMatrix, n: usize) -> Result<Vec<SparsePolynomial>> {
    if n > u.dim() {
        return Err(Error::InvalidArgument(format!("{n} photons exceed {} modes", u.dim())));
    }
    Ok((0..n)
        .map(|j| {
            let column: Vec<Complex64> = (0..n).map(|k| u[(k, j)]).collect();
            SparsePolynomial::linear(&column)
        })
        .collect())
}

/// Product of the forms keeping only monomials with every exponent at most 1.
pub fn expand_multilinear(forms: &[SparsePolynomial]) -> Result<SparsePolynomial> {
    if forms.len() > MAX_FORMS {
        return Err(Error::SizeGuard(format!(
            "at most {MAX_FORMS} forms, got {}",
            forms.len()
        )));
    }
    let n_vars = forms.first().map_or(0, SparsePolynomial::n_vars);
    if n_vars > 32 {
        return Err(Error::SizeGuard(format!("{n_vars} variables do not fit a 32-bit mask")));
    }
    if forms.iter().any(|f| f.n_vars() != n_vars) {
        return Err(Error::Shape("forms disagree on variable count".into()));
    }
    let mut acc: HashMap<u32, Complex64> = HashMap::from([(0, Complex64::new(1.0, 0.0))]);
    for form in forms {
        if !form.is_multilinear() {
            return Err(Error::InvalidArgument("expansion factors must be multilinear".into()));
        }
        let factor: Vec<(u32, Complex64)> = form
            .terms()
            .map(|(mono, &c)| {
                let mask = mono.iter().enumerate().fold(0u32, |m, (k, &e)| m | (u32::from(e) << k));
                (mask, c)
            })
            .collect();
        let mut next: HashMap<u32, Complex64> = HashMap::with_capacity(acc.len() * 2);
        for (&mask, &c) in &acc {
            for &(fmask, fc) in &factor {
                if mask & fmask == 0 {
                    *next.entry(mask | fmask).or_default() += c * fc;
                }
            }
        }
        next.retain(|_, c| c.norm() > PRUNE_TOL);
        acc = next;
    }
    Ok(SparsePolynomial::from_masks(n_vars, acc))
}

/// Coefficient of `α_1 ... α_n` in `Π_j Σ_k U[k, j] α_k`, which is `perm(U[..n, ..n])`.
pub fn permanent_via_macmahon(u: &UnitaryMatrix, n: usize) -> Result<Complex64> {
    if n > MAX_FORMS {
        return Err(Error::SizeGuard(format!("at most {MAX_FORMS} photons, got {n}")));
    }
    let forms = build_linear_forms(u, n)?;
    if n == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    Ok(expand_multilinear(&forms)?.multilinear_top())
}
