use std::fmt;

use num_traits::Zero;

use crate::algebra::{format_rational, Polynomial, Rational};
use crate::exterior::{DifferentialForm, ExteriorError, VectorField};
use crate::registry::{self, RegistryError};

/// Parse tree of the form language. Parentheses leave no node behind, so
/// `parse(print(e)) == e` holds structurally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormExpression {
    /// Non-negative literal; negation is a separate node.
    Number(Rational),
    Var(usize),
    /// `dx[i, j, ...]` exactly as written; canonicalized on evaluation.
    Basis(Vec<usize>),
    Preset(String),
    Field(Vec<FormExpression>),
    Neg(Box<FormExpression>),
    Add(Box<FormExpression>, Box<FormExpression>),
    Sub(Box<FormExpression>, Box<FormExpression>),
    Mul(Box<FormExpression>, Box<FormExpression>),
    Wedge(Box<FormExpression>, Box<FormExpression>),
    D(Box<FormExpression>),
    Interior(Vec<FormExpression>, Box<FormExpression>),
    Lie(Vec<FormExpression>, Box<FormExpression>),
}

/// Evaluated expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Form(DifferentialForm),
    Field(VectorField),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Registry(#[from] RegistryError),
    #[error("expected a differential form, found a vector field")]
    ExpectedForm,
    #[error("expected a vector field, found a differential form")]
    ExpectedField,
}

impl Value {
    pub fn into_form(self) -> Result<DifferentialForm, EvalError> {
        match self {
            Value::Form(f) => Ok(f),
            Value::Field(_) => Err(EvalError::ExpectedForm),
        }
    }

    pub fn into_field(self) -> Result<VectorField, EvalError> {
        match self {
            Value::Field(f) => Ok(f),
            Value::Form(_) => Err(EvalError::ExpectedField),
        }
    }
}

impl FormExpression {
    pub fn evaluate(&self, dim: usize) -> Result<Value, EvalError> {
        use FormExpression::*;
        let form = |e: &FormExpression| e.evaluate(dim)?.into_form();
        Ok(match self {
            Number(q) => Value::Form(DifferentialForm::function(Polynomial::constant(
                dim,
                q.clone(),
            ))),
            Var(i) => Value::Form(DifferentialForm::function(
                Polynomial::var(dim, *i).map_err(ExteriorError::from)?,
            )),
            Basis(indices) => Value::Form(if indices.len() > dim {
                return Err(ExteriorError::DegreeOverflow {
                    degree: indices.len(),
                    dim,
                }
                .into());
            } else {
                DifferentialForm::term(Polynomial::one(dim), indices)?
            }),
            Preset(name) => Value::Form(registry::form(name)?),
            Field(components) => Value::Field(field(components, dim)?),
            Neg(e) => Value::Form(-&form(e)?),
            Add(a, b) => Value::Form(form(a)?.checked_add(&form(b)?)?),
            Sub(a, b) => Value::Form(form(a)?.checked_sub(&form(b)?)?),
            Mul(a, b) => {
                let (a, b) = (form(a)?, form(b)?);
                Value::Form(match (a.as_function(), b.as_function()) {
                    (Some(f), _) => b.mul_function(&f)?,
                    (None, Some(g)) => a.mul_function(&g)?,
                    (None, None) => {
                        return Err(ExteriorError::DegreeMismatch {
                            left: a.degree(),
                            right: b.degree(),
                        }
                        .into())
                    }
                })
            }
            Wedge(a, b) => Value::Form(form(a)?.wedge(&form(b)?)?),
            D(e) => Value::Form(form(e)?.exterior_derivative()?),
            Interior(x, e) => Value::Form(form(e)?.interior(&field(x, dim)?)?),
            Lie(x, e) => Value::Form(form(e)?.lie_derivative(&field(x, dim)?)?),
        })
    }

    fn precedence(&self) -> u8 {
        use FormExpression::*;
        match self {
            Add(..) | Sub(..) => 1,
            Wedge(..) => 2,
            Neg(_) => 3,
            Mul(..) => 4,
            _ => 5,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        use FormExpression::*;
        let wrap = self.precedence() < min;
        if wrap {
            f.write_str("(")?;
        }
        match self {
            Number(q) => f.write_str(&format_rational(q))?,
            Var(i) => write!(f, "x{i}")?,
            Basis(indices) => write!(f, "dx[{}]", join(indices))?,
            Preset(name) => write!(f, "@{name}")?,
            Field(c) => write_components(f, c)?,
            Neg(e) => {
                f.write_str("-")?;
                e.write(f, 3)?;
            }
            Add(a, b) | Sub(a, b) => {
                a.write(f, 1)?;
                f.write_str(if matches!(self, Add(..)) {
                    " + "
                } else {
                    " - "
                })?;
                b.write(f, 2)?;
            }
            Wedge(a, b) => {
                a.write(f, 2)?;
                f.write_str("^")?;
                b.write(f, 3)?;
            }
            Mul(a, b) => {
                a.write(f, 4)?;
                f.write_str("*")?;
                b.write(f, 5)?;
            }
            D(e) => {
                f.write_str("d(")?;
                e.write(f, 0)?;
                f.write_str(")")?;
            }
            Interior(x, e) | Lie(x, e) => {
                f.write_str(if matches!(self, Interior(..)) {
                    "i_"
                } else {
                    "L_"
                })?;
                write_components(f, x)?;
                f.write_str("(")?;
                e.write(f, 0)?;
                f.write_str(")")?;
            }
        }
        if wrap {
            f.write_str(")")?;
        }
        Ok(())
    }
}

fn join(indices: &[usize]) -> String {
    indices
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn write_components(f: &mut fmt::Formatter<'_>, components: &[FormExpression]) -> fmt::Result {
    f.write_str("[")?;
    for (i, c) in components.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        c.write(f, 0)?;
    }
    f.write_str("]")
}

fn field(components: &[FormExpression], dim: usize) -> Result<VectorField, EvalError> {
    let polys = components
        .iter()
        .map(|c| {
            let form = c.evaluate(dim)?.into_form()?;
            form.as_function()
                .ok_or(EvalError::Exterior(ExteriorError::DegreeMismatch {
                    left: 0,
                    right: form.degree(),
                }))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(VectorField::new(polys)?)
}

impl fmt::Display for FormExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

/// Builds the literal for a rational, wrapping negatives in `Neg`.
pub fn literal(q: &Rational) -> FormExpression {
    if q < &Rational::zero() {
        FormExpression::Neg(Box::new(FormExpression::Number(-q.clone())))
    } else {
        FormExpression::Number(q.clone())
    }
}
