use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use super::{same_dim, ExteriorError, MultiIndex, VectorField};
use crate::algebra::{Polynomial, Rational};

/// A degree-`k` differential form on an `n`-dimensional polynomial chart,
/// stored as a sparse map from basis multi-indices to nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DifferentialForm {
    dim: usize,
    degree: usize,
    terms: BTreeMap<MultiIndex, Polynomial>,
}

impl DifferentialForm {
    pub fn zero(dim: usize, degree: usize) -> Result<Self, ExteriorError> {
        Polynomial::try_zero(dim)?;
        if degree > dim {
            return Err(ExteriorError::DegreeOverflow { degree, dim });
        }
        Ok(DifferentialForm {
            dim,
            degree,
            terms: BTreeMap::new(),
        })
    }

    /// A polynomial viewed as a 0-form.
    pub fn function(p: Polynomial) -> Self {
        let mut f = DifferentialForm {
            dim: p.dim(),
            degree: 0,
            terms: BTreeMap::new(),
        };
        if !p.is_zero() {
            f.terms.insert(MultiIndex::empty(), p);
        }
        f
    }

    /// `coefficient · dx^{indices}` for an arbitrary index tuple; the tuple
    /// is sorted with its permutation sign and repeated indices give zero.
    pub fn term(coefficient: Polynomial, indices: &[usize]) -> Result<Self, ExteriorError> {
        let dim = coefficient.dim();
        if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i > dim) {
            return Err(ExteriorError::IndexOutOfRange { index: bad, dim });
        }
        let mut form = Self::zero(dim, indices.len())?;
        if let Some((sign, idx)) = MultiIndex::canonicalize(indices) {
            let c = if sign < 0 { -coefficient } else { coefficient };
            form.insert(idx, c);
        }
        Ok(form)
    }

    /// Constant basis form `dx^{indices}`.
    pub fn basis(dim: usize, indices: &[usize]) -> Result<Self, ExteriorError> {
        Self::term(
            Polynomial::try_zero(dim).map(|_| Polynomial::one(dim))?,
            indices,
        )
    }

    /// Constant-coefficient form from `(coefficient, sorted indices)` pairs.
    pub fn from_constants(
        dim: usize,
        degree: usize,
        terms: &[(Rational, &[usize])],
    ) -> Result<Self, ExteriorError> {
        let mut form = Self::zero(dim, degree)?;
        for (c, idx) in terms {
            let t = Self::term(Polynomial::constant(dim, c.clone()), idx)?;
            form = form.checked_add(&t)?;
        }
        Ok(form)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_top_degree(&self) -> bool {
        self.degree >= self.dim
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Polynomial)> {
        self.terms.iter()
    }

    /// Coefficient of the (sorted) basis form `dx^{indices}`; zero if absent.
    pub fn coefficient(&self, indices: &[usize]) -> Polynomial {
        MultiIndex::new(indices)
            .ok()
            .and_then(|i| self.terms.get(&i).cloned())
            .unwrap_or_else(|| Polynomial::zero(self.dim))
    }

    pub fn coefficient_at(&self, index: &MultiIndex) -> Option<&Polynomial> {
        self.terms.get(index)
    }

    pub fn has_constant_coefficients(&self) -> bool {
        self.terms.values().all(Polynomial::is_constant)
    }

    /// As a polynomial, when this is a 0-form.
    pub fn as_function(&self) -> Option<Polynomial> {
        (self.degree == 0).then(|| self.coefficient(&[]))
    }

    pub(crate) fn insert(&mut self, index: MultiIndex, c: Polynomial) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&index) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&index);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(index, c);
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), ExteriorError> {
        same_dim(self.dim, other.dim)?;
        if self.degree != other.degree {
            return Err(ExteriorError::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ExteriorError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (i, c) in &other.terms {
            out.insert(i.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ExteriorError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (i, c) in &other.terms {
            out.insert(i.clone(), -c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self {
            dim: self.dim,
            degree: self.degree,
            terms: BTreeMap::new(),
        };
        if !c.is_zero() {
            for (i, p) in &self.terms {
                out.terms.insert(i.clone(), p.scale(c));
            }
        }
        out
    }

    /// Multiplies every coefficient by a function.
    pub fn mul_function(&self, f: &Polynomial) -> Result<Self, ExteriorError> {
        same_dim(self.dim, f.dim())?;
        let mut out = Self::zero(self.dim, self.degree)?;
        for (i, p) in &self.terms {
            out.insert(i.clone(), p.checked_mul(f)?);
        }
        Ok(out)
    }

    /// Graded-commutative exterior product. When the degrees sum past the
    /// chart dimension the result is the (empty) zero form of that degree.
    pub fn wedge(&self, other: &Self) -> Result<Self, ExteriorError> {
        same_dim(self.dim, other.dim)?;
        let mut out = DifferentialForm {
            dim: self.dim,
            degree: self.degree + other.degree,
            terms: BTreeMap::new(),
        };
        for (ia, pa) in &self.terms {
            for (ib, pb) in &other.terms {
                if let Some((sign, idx)) = ia.merge(ib) {
                    let c = pa.checked_mul(pb)?;
                    out.insert(idx, if sign < 0 { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Exterior derivative. Top-degree input is an error: no
    /// `(n+1)`-forms exist on an `n`-dimensional chart.
    pub fn exterior_derivative(&self) -> Result<Self, ExteriorError> {
        if self.is_top_degree() {
            return Err(ExteriorError::DegreeOverflow {
                degree: self.degree + 1,
                dim: self.dim,
            });
        }
        let mut out = Self::zero(self.dim, self.degree + 1)?;
        for (idx, p) in &self.terms {
            for j in 1..=self.dim {
                let Some((sign, new_idx)) = idx.prepend(j) else {
                    continue;
                };
                let dp = p.partial(j)?;
                if dp.is_zero() {
                    continue;
                }
                out.insert(new_idx, if sign < 0 { -dp } else { dp });
            }
        }
        Ok(out)
    }

    /// `d a = 0`; top-degree forms are closed.
    pub fn is_closed(&self) -> Result<bool, ExteriorError> {
        if self.is_top_degree() {
            return Ok(true);
        }
        Ok(self.exterior_derivative()?.is_zero())
    }

    /// `X ⌟ a`, contracting into the first slot.
    pub fn interior(&self, field: &VectorField) -> Result<Self, ExteriorError> {
        same_dim(self.dim, field.dim())?;
        if self.degree == 0 {
            return Err(ExteriorError::ContractionOfFunction);
        }
        let mut out = Self::zero(self.dim, self.degree - 1)?;
        for (idx, p) in &self.terms {
            for (pos, i) in idx.indices().enumerate() {
                let xi = field.component(i);
                if xi.is_zero() {
                    continue;
                }
                let c = xi.checked_mul(p)?;
                out.insert(idx.without_position(pos), if pos % 2 == 1 { -c } else { c });
            }
        }
        Ok(out)
    }

    /// Substitutes a rational point into every coefficient.
    pub fn at_point(&self, point: &[Rational]) -> Result<Self, ExteriorError> {
        let mut out = Self::zero(self.dim, self.degree)?;
        for (idx, p) in &self.terms {
            out.insert(
                idx.clone(),
                Polynomial::constant(self.dim, p.eval_exact(point)?),
            );
        }
        Ok(out)
    }

    /// Coefficients evaluated in floating point at `point`.
    pub fn coefficients_f64(
        &self,
        point: &[f64],
    ) -> Result<BTreeMap<MultiIndex, f64>, ExteriorError> {
        self.terms
            .iter()
            .map(|(i, p)| Ok((i.clone(), p.eval_f64(point)?)))
            .collect()
    }

    /// Value of a constant-coefficient form on basis vectors, i.e. the
    /// signed coefficient of the sorted index tuple. Coefficients are
    /// taken at the constant term.
    pub fn constant_value(&self, indices: &[usize]) -> Rational {
        match MultiIndex::canonicalize(indices) {
            Some((sign, idx)) => {
                let v = self
                    .terms
                    .get(&idx)
                    .map(Polynomial::constant_term)
                    .unwrap_or_else(Rational::zero);
                if sign < 0 {
                    -v
                } else {
                    v
                }
            }
            None => Rational::zero(),
        }
    }
}

/// Canonical text: `+ (1) dx[1,2,3] + (-1/3) dx[4,5]`, terms in
/// lexicographic multi-index order; the zero form prints as `0`.
impl fmt::Display for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (idx, p)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "+ ({p}) {idx}")?;
        }
        Ok(())
    }
}

impl Add<&DifferentialForm> for &DifferentialForm {
    type Output = DifferentialForm;
    fn add(self, rhs: &DifferentialForm) -> DifferentialForm {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub<&DifferentialForm> for &DifferentialForm {
    type Output = DifferentialForm;
    fn sub(self, rhs: &DifferentialForm) -> DifferentialForm {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add for DifferentialForm {
    type Output = DifferentialForm;
    fn add(self, rhs: DifferentialForm) -> DifferentialForm {
        &self + &rhs
    }
}

impl Sub for DifferentialForm {
    type Output = DifferentialForm;
    fn sub(self, rhs: DifferentialForm) -> DifferentialForm {
        &self - &rhs
    }
}

impl Neg for &DifferentialForm {
    type Output = DifferentialForm;
    fn neg(self) -> DifferentialForm {
        DifferentialForm {
            dim: self.dim,
            degree: self.degree,
            terms: self.terms.iter().map(|(i, p)| (i.clone(), -p)).collect(),
        }
    }
}

impl Neg for DifferentialForm {
    type Output = DifferentialForm;
    fn neg(self) -> DifferentialForm {
        -&self
    }
}
