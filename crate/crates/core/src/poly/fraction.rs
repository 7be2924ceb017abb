use std::fmt;

use super::{Bindings, SparsePoly};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

/// A rational function numerator/denominator, used only on the unit circle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalPoly {
    pub numerator: SparsePoly,
    pub denominator: SparsePoly,
}

impl FractionalPoly {
    pub fn new(numerator: SparsePoly, denominator: SparsePoly) -> Self {
        FractionalPoly {
            numerator,
            denominator,
        }
    }

    pub fn parse(numerator: &str, denominator: &str) -> Result<Self> {
        Ok(FractionalPoly {
            numerator: SparsePoly::parse(numerator)?,
            denominator: SparsePoly::parse(denominator)?,
        })
    }

    /// Binds for evaluation on U: since u^(q+1) = 1 there, exponents are
    /// reduced mod q+1 and may be negative before reduction.
    pub fn bind_on_circle(&self, field: &Field, b: &Bindings) -> Result<BoundFraction> {
        let k = b.k.ok_or(Error::UnboundSymbol('k'))?;
        let quad = field.quadratic(k)?;
        let modulus = quad.q() as i128 + 1;
        let bind = |poly: &SparsePoly| -> Result<Vec<(FieldElement, u64)>> {
            poly.terms
                .iter()
                .map(|t| {
                    Ok((
                        field.from_int(t.coeff),
                        t.exp.eval(b)?.rem_euclid(modulus) as u64,
                    ))
                })
                .collect()
        };
        Ok(BoundFraction {
            field: field.clone(),
            numerator: bind(&self.numerator)?,
            denominator: bind(&self.denominator)?,
        })
    }
}

impl fmt::Display for FractionalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.numerator, self.denominator)
    }
}

/// A fraction with concrete exponents in [0, q].
#[derive(Debug, Clone)]
pub struct BoundFraction {
    field: Field,
    numerator: Vec<(FieldElement, u64)>,
    denominator: Vec<(FieldElement, u64)>,
}

impl BoundFraction {
    fn eval_side(&self, side: &[(FieldElement, u64)], u: &FieldElement) -> FieldElement {
        let f = &self.field;
        side.iter().fold(f.zero(), |acc, (c, e)| {
            f.add(&acc, &f.mul(c, &f.pow(u, *e)))
        })
    }

    /// numerator(u) / denominator(u).
    pub fn eval(&self, u: &FieldElement) -> Result<FieldElement> {
        let den = self.eval_side(&self.denominator, u);
        if den.is_zero() {
            return Err(Error::DenominatorZero);
        }
        let num = self.eval_side(&self.numerator, u);
        self.field.div(&num, &den)
    }
}
