use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{
    format_rational, is_negative, is_one, AlgebraError, Rational, MAX_DEGREE, MAX_VARIABLES,
};

/// Exponent vector of a monomial. Ordered graded-lexicographically, with
/// `x1 > x2 > ... > xn` among monomials of equal total degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u8>);

impl Monomial {
    pub fn one(dim: usize) -> Self {
        Monomial(vec![0; dim])
    }

    /// Exponent vector; panics if an exponent exceeds the degree limit.
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(
            exponents
                .into_iter()
                .map(|e| u8::try_from(e).expect("exponent too large"))
                .collect(),
        )
    }

    pub fn exponents(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().map(|&e| e as u32)
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0[var] as u32
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with exact rational coefficients in `dim` variables
/// `x1..xn`. Zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<Monomial, Rational>,
}

fn check_dim(dim: usize) -> Result<(), AlgebraError> {
    if dim == 0 {
        Err(AlgebraError::EmptyChart)
    } else if dim > MAX_VARIABLES {
        Err(AlgebraError::TooManyVariables { n: dim })
    } else {
        Ok(())
    }
}

fn same_dim(a: usize, b: usize) -> Result<(), AlgebraError> {
    if a == b {
        Ok(())
    } else {
        Err(AlgebraError::DimensionMismatch { left: a, right: b })
    }
}

impl Polynomial {
    pub fn try_zero(dim: usize) -> Result<Self, AlgebraError> {
        check_dim(dim)?;
        Ok(Polynomial {
            dim,
            terms: BTreeMap::new(),
        })
    }

    /// Zero polynomial. Panics on an unsupported dimension; see [`Polynomial::try_zero`].
    pub fn zero(dim: usize) -> Self {
        Self::try_zero(dim).expect("invalid chart dimension")
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        let mut p = Self::zero(dim);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(dim), c);
        }
        p
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Rational::one())
    }

    /// The coordinate function `x_index` (1-based).
    pub fn var(dim: usize, index: usize) -> Result<Self, AlgebraError> {
        check_dim(dim)?;
        if index == 0 || index > dim {
            return Err(AlgebraError::IndexOutOfRange { index, dim });
        }
        let mut exps = vec![0u32; dim];
        exps[index - 1] = 1;
        Ok(Self::monomial(Monomial::new(exps), Rational::one()))
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(m.dim());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated monomials.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::try_zero(dim)?;
        for (exps, c) in terms {
            same_dim(dim, exps.len())?;
            let degree: u32 = exps.iter().sum();
            if degree > MAX_DEGREE {
                return Err(AlgebraError::DegreeLimit { degree });
            }
            p.add_term(Monomial::new(exps), c);
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one(self.dim))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        same_dim(self.dim, other.dim)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        same_dim(self.dim, other.dim)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        same_dim(self.dim, other.dim)?;
        if let (Some(a), Some(b)) = (self.degree(), other.degree()) {
            if a + b > MAX_DEGREE {
                return Err(AlgebraError::DegreeLimit { degree: a + b });
            }
        }
        let mut out = Polynomial::zero(self.dim);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.dim);
        }
        Polynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Result<Polynomial, AlgebraError> {
        let mut acc = Polynomial::one(self.dim);
        for _ in 0..k {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Partial derivative with respect to `x_index` (1-based).
    pub fn partial(&self, index: usize) -> Result<Polynomial, AlgebraError> {
        if index == 0 || index > self.dim {
            return Err(AlgebraError::IndexOutOfRange {
                index,
                dim: self.dim,
            });
        }
        let var = index - 1;
        let mut out = Polynomial::zero(self.dim);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] = e - 1;
            out.add_term(Monomial(exps), c * Rational::from_integer(e.into()));
        }
        Ok(out)
    }

    pub fn eval_exact(&self, point: &[Rational]) -> Result<Rational, AlgebraError> {
        same_dim(self.dim, point.len())?;
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += v;
        }
        Ok(total)
    }

    pub fn eval_f64(&self, point: &[f64]) -> Result<f64, AlgebraError> {
        same_dim(self.dim, point.len())?;
        let mut total = 0.0;
        for (m, c) in &self.terms {
            let mut v = super::rational_to_f64(c);
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    v *= x.powi(e as i32);
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Substitutes `x_i := subs[i-1]`; the result lives in the variables of
    /// the substituted polynomials.
    pub fn compose(&self, subs: &[Polynomial]) -> Result<Polynomial, AlgebraError> {
        same_dim(self.dim, subs.len())?;
        let target = match subs.first() {
            Some(p) => p.dim,
            None => return Err(AlgebraError::EmptyChart),
        };
        for s in subs {
            same_dim(target, s.dim)?;
        }
        // powers[i][e] = subs[i]^e, grown on demand
        let mut powers: Vec<Vec<Polynomial>> =
            subs.iter().map(|_| vec![Polynomial::one(target)]).collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                let e = e as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().checked_mul(&subs[i])?;
                    powers[i].push(next);
                }
                term = term.checked_mul(&powers[i][e])?;
            }
            for (tm, tc) in term.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// Splits into homogeneous components keyed by total degree.
    pub fn homogeneous_parts(&self) -> BTreeMap<u32, Polynomial> {
        let mut parts: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts
                .entry(m.degree())
                .or_insert_with(|| Polynomial::zero(self.dim))
                .terms
                .insert(m.clone(), c.clone());
        }
        parts
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.0.iter().enumerate() {
        for _ in 0..e {
            if !first {
                f.write_str("*")?;
            }
            write!(f, "x{}", i + 1)?;
            first = false;
        }
    }
    Ok(())
}

/// Terms in descending graded-lex order, e.g. `x1*x1*x3 - 2*x2 + 1/3`.
/// Powers are written as repeated products so the output re-parses in the
/// form language, where `^` is the wedge product.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = is_negative(c);
            let abs = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(&format_rational(&abs))?;
            } else {
                if !is_one(&abs) {
                    write!(f, "{}*", format_rational(&abs))?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}

// Operator forms panic on dimension or degree-limit violations; the
// `checked_*` methods report them as errors.
forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
