//! Sparse polynomials whose exponents are symbolic expressions in p, q, k, l
//! and t, plus their bound (numeric) form over a concrete field.

pub mod expr;
mod fraction;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, Quadratic};

pub use expr::{Bindings, ExponentExpr, Symbol};
pub use fraction::{BoundFraction, FractionalPoly};

/// One symbolic term `coeff * x^(exp)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: i64,
    pub exp: ExponentExpr,
}

/// A polynomial template with symbolic exponents and integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparsePoly {
    pub terms: Vec<Term>,
}

impl SparsePoly {
    pub fn new(terms: Vec<Term>) -> Self {
        SparsePoly { terms }
    }

    /// Parses `±c*x^(EXPR)` terms; the `c*` and `^(EXPR)` parts are optional
    /// and a bare integer is a constant term.
    pub fn parse(s: &str) -> Result<Self> {
        let mut parser = expr::Parser::new(s);
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let sign = if parser.eat(b'-') {
                -1
            } else if parser.eat(b'+') || first {
                1
            } else if parser.peek().is_none() {
                break;
            } else {
                return Err(parser.error("expected '+' or '-' between terms"));
            };
            first = false;
            terms.push(parse_term(&mut parser, sign)?);
            if parser.peek().is_none() {
                break;
            }
        }
        if terms.is_empty() {
            return Err(parser.error("empty polynomial"));
        }
        Ok(SparsePoly { terms })
    }

    /// Evaluates exponents and reduces coefficients into `field`.
    pub fn bind(&self, field: &Field, b: &Bindings) -> Result<BoundPoly> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((field.from_int(t.coeff), t.exp.eval_exponent(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(BoundPoly::from_terms(field, terms))
    }
}

fn parse_term(parser: &mut expr::Parser<'_>, sign: i64) -> Result<Term> {
    let mut coeff = 1i64;
    let mut has_coeff = false;
    if matches!(parser.peek(), Some(c) if c.is_ascii_digit()) {
        let c = parser.integer()?;
        coeff = i64::try_from(c).map_err(|_| parser.error("coefficient too large"))?;
        has_coeff = true;
        parser.eat(b'*');
    }
    if parser.eat(b'x') {
        let exp = if parser.eat(b'^') {
            parser.atom()?
        } else {
            ExponentExpr::Int(1)
        };
        Ok(Term {
            coeff: sign * coeff,
            exp,
        })
    } else if has_coeff {
        Ok(Term {
            coeff: sign * coeff,
            exp: ExponentExpr::Int(0),
        })
    } else {
        Err(parser.error("expected a coefficient or 'x'"))
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            let sign = if t.coeff < 0 { "-" } else { "+" };
            if i == 0 {
                if t.coeff < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let c = t.coeff.unsigned_abs();
            if c != 1 {
                write!(f, "{c}*")?;
            }
            write!(f, "x^({})", t.exp)?;
        }
        Ok(())
    }
}

/// A term with a concrete exponent and a coefficient in the field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundTerm {
    pub coeff: FieldElement,
    pub exp: u64,
}

/// A polynomial over a concrete field: distinct ascending exponents and no
/// zero coefficients.
#[derive(Debug, Clone)]
pub struct BoundPoly {
    field: Field,
    terms: Vec<BoundTerm>,
    warnings: Vec<String>,
}

impl PartialEq for BoundPoly {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.terms == other.terms
    }
}

impl BoundPoly {
    /// Sorts by exponent and merges equal exponents. A merge is recorded as
    /// a warning; terms that cancel are dropped.
    pub fn from_terms(field: &Field, terms: Vec<(FieldElement, u64)>) -> Self {
        let mut merged: BTreeMap<u64, FieldElement> = BTreeMap::new();
        let mut warnings = Vec::new();
        for (c, e) in terms {
            if let Some(prev) = merged.get_mut(&e) {
                warnings.push(format!("terms with exponent {e} merged"));
                *prev = field.add(prev, &c);
            } else {
                merged.insert(e, c);
            }
        }
        let terms = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exp, coeff)| BoundTerm { coeff, exp })
            .collect();
        BoundPoly {
            field: field.clone(),
            terms,
            warnings,
        }
    }

    pub fn monomial(field: &Field, exp: u64) -> Self {
        Self::from_terms(field, vec![(field.one(), exp)])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> &[BoundTerm] {
        &self.terms
    }

    pub fn exponents(&self) -> Vec<u64> {
        self.terms.iter().map(|t| t.exp).collect()
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Sum of coeff * x^exp, with 0^0 = 1.
    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let f = &self.field;
        self.terms.iter().fold(f.zero(), |acc, t| {
            f.add(&acc, &f.mul(&t.coeff, &f.pow(x, t.exp)))
        })
    }

    pub fn scale(&self, a: &FieldElement) -> BoundPoly {
        let terms = self
            .terms
            .iter()
            .map(|t| (self.field.mul(a, &t.coeff), t.exp))
            .collect();
        BoundPoly::from_terms(&self.field, terms)
    }

    /// The polynomial P(x^d), with positive exponents reduced into
    /// [1, p^m - 1]. Agrees with the unreduced composition everywhere.
    pub fn compose_power(&self, d: u64) -> BoundPoly {
        let n = self.field.mult_order() as u128;
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let e = if t.exp == 0 {
                    0
                } else {
                    ((t.exp as u128 * d as u128 - 1) % n + 1) as u64
                };
                (t.coeff, e)
            })
            .collect();
        BoundPoly::from_terms(&self.field, terms)
    }

    /// Reduces positive exponents into [1, p^m - 1].
    pub fn reduce_exponents(&self) -> BoundPoly {
        self.compose_power(1)
    }

    pub fn coefficients_in_subfield(&self, quad: &Quadratic<'_>) -> bool {
        self.terms.iter().all(|t| quad.in_subfield(&t.coeff))
    }

    /// Writes the polynomial as x^r h(x^(q-1)) with r the common residue of
    /// the exponents mod q-1, taken in [1, q-1].
    pub fn niho_decompose(&self, q: u64) -> Result<(u64, BoundPoly)> {
        if q < 2 {
            return Err(Error::InvalidInput(format!("q = {q} is too small")));
        }
        let step = q - 1;
        let first = self
            .terms
            .first()
            .ok_or_else(|| Error::NotNihoShaped("zero polynomial".into()))?;
        let residue = first.exp % step;
        if let Some(t) = self.terms.iter().find(|t| t.exp % step != residue) {
            return Err(Error::NotNihoShaped(format!(
                "exponents {} and {} differ mod {step}",
                first.exp, t.exp
            )));
        }
        let r = if residue == 0 { step } else { residue };
        if let Some(t) = self.terms.iter().find(|t| t.exp < r) {
            return Err(Error::NotNihoShaped(format!(
                "exponent {} is below r = {r}",
                t.exp
            )));
        }
        let h = self
            .terms
            .iter()
            .map(|t| (t.coeff, (t.exp - r) / step))
            .collect();
        Ok((r, BoundPoly::from_terms(&self.field, h)))
    }

    /// Text form with literal exponents. Prime-field coefficients print as
    /// balanced integers, others as coefficient vectors.
    pub fn render(&self) -> String {
        let p = self.field.characteristic() as i64;
        let mut out = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            let cs = t.coeff.coeffs();
            let prime = cs[1..].iter().all(|&c| c == 0);
            let (neg, body) = if prime {
                let c = cs[0] as i64;
                let signed = if p > 2 && c > p / 2 { c - p } else { c };
                let mag = signed.unsigned_abs();
                (
                    signed < 0,
                    if mag == 1 {
                        String::new()
                    } else {
                        format!("{mag}*")
                    },
                )
            } else {
                (false, format!("{:?}*", cs))
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
            out.push_str(&format!("x^({})", t.exp));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for BoundPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub mod templates {
    //! The trinomials studied here, as symbolic templates.
    use super::SparsePoly;

    pub const F: &str = "x^((p-1)*q+1) + x^(p*q) - x^(q+p-1)";
    pub const G: &str = "x^((q+1)*l+(p-1)*q+1) + x^((q+1)*l+p*q) - x^((q+1)*l+q+p-1)";
    /// Numerator and denominator of the unit-circle fraction of f.
    pub const CIRCLE_FRACTION: (&str, &str) = ("x + 1 - x^(p-1)", "x^p + x^(p-1) - x");

    pub fn f() -> SparsePoly {
        SparsePoly::parse(F).expect("template parses")
    }

    pub fn g() -> SparsePoly {
        SparsePoly::parse(G).expect("template parses")
    }
}

/// f(x) = x^((p-1)q+1) + x^(pq) - x^(q+p-1) over F_{p^{2k}}.
pub fn build_f(field: &Field, k: u32) -> Result<BoundPoly> {
    field.quadratic(k)?;
    templates::f().bind(field, &Bindings::new(field.characteristic(), k))
}

/// g(x): the exponents of f shifted by (q+1)l.
pub fn build_g(field: &Field, k: u32, l: u64) -> Result<BoundPoly> {
    field.quadratic(k)?;
    templates::g().bind(field, &Bindings::new(field.characteristic(), k).with_l(l))
}

/// x + λ1 x^(s(q-1)+1) + λ2 x^(t(q-1)+1), exponents reduced into
/// [1, q^2-1]. Negative s and t are allowed.
pub fn build_family(
    field: &Field,
    k: u32,
    lambda1: i64,
    s: i64,
    lambda2: i64,
    t: i64,
) -> Result<BoundPoly> {
    let quad = field.quadratic(k)?;
    let q = quad.q() as i128;
    let n = field.mult_order() as i128;
    // s(q-1)+1 mod n, taken in [1, n]
    let exp = |j: i64| -> u64 { (j as i128 * (q - 1)).rem_euclid(n) as u64 + 1 };
    Ok(BoundPoly::from_terms(
        field,
        vec![
            (field.one(), 1),
            (field.from_int(lambda1), exp(s)),
            (field.from_int(lambda2), exp(t)),
        ],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u64, k: u32) -> Field {
        Field::new(p, 2 * k as usize).unwrap()
    }

    #[test]
    fn f_exponents() {
        let f = build_f(&field(3, 2), 2).unwrap();
        assert_eq!(f.exponents(), vec![11, 19, 27]);
        let f = build_f(&field(5, 1), 1).unwrap();
        assert_eq!(f.exponents(), vec![9, 21, 25]);
        let fld = field(5, 1);
        let f = build_f(&fld, 1).unwrap();
        assert_eq!(f.eval(&fld.one()), fld.one());
        assert_eq!(f.eval(&fld.zero()), fld.zero());
    }

    #[test]
    fn f_degenerates_in_characteristic_two() {
        let fld = field(2, 3);
        let f = build_f(&fld, 3).unwrap();
        // x^(q+1) + x^(2q) - x^(q+1) = x^(2q)
        assert_eq!(f.exponents(), vec![16]);
        assert!(!f.warnings().is_empty());
    }

    #[test]
    fn g_shifts_f() {
        let fld = field(3, 2);
        assert_eq!(build_g(&fld, 2, 0).unwrap(), build_f(&fld, 2).unwrap());
        let g = build_g(&field(5, 2), 2, 1).unwrap();
        assert_eq!(g.exponents(), vec![55, 127, 151]);
    }

    #[test]
    fn family_exponents() {
        let fld = field(3, 2);
        let h = build_family(&fld, 2, -1, 1, -1, 2).unwrap();
        assert_eq!(h.exponents(), vec![1, 9, 17]);
        assert_eq!(h.render(), "x^(1) - x^(9) - x^(17)");
        let fld = field(5, 2);
        let h = build_family(&fld, 2, 1, 2, 1, -2).unwrap();
        assert_eq!(h.exponents(), vec![1, 49, 577]);
        // s = t = 0: three copies of x merge into 3x
        let h = build_family(&fld, 2, 1, 0, 1, 0).unwrap();
        assert_eq!(h.exponents(), vec![1]);
        assert_eq!(h.terms()[0].coeff, fld.from_int(3));
        assert_eq!(h.warnings().len(), 2);
    }

    #[test]
    fn family_reduction_preserves_function() {
        let fld = field(5, 2);
        let n = fld.mult_order() as i128;
        let h = build_family(&fld, 2, 1, -2, -1, 7).unwrap();
        // unreduced exponents, made positive by adding a multiple of n
        let raw: Vec<u64> = [1i128, -2 * 24 + 1, 7 * 24 + 1]
            .iter()
            .map(|&e| (e + 2 * n) as u64)
            .collect();
        for x in fld.elements() {
            let direct = fld.sub(
                &fld.add(&fld.pow(&x, raw[0]), &fld.pow(&x, raw[1])),
                &fld.pow(&x, raw[2]),
            );
            assert_eq!(h.eval(&x), direct);
        }
    }

    #[test]
    fn f_on_subfield_is_frobenius_p() {
        let fld = field(5, 1);
        let quad = fld.quadratic(1).unwrap();
        let f = build_f(&fld, 1).unwrap();
        for x in quad.subfield_elements() {
            assert_eq!(f.eval(&x), fld.pow(&x, 5));
        }
    }

    #[test]
    fn parse_poly_text() {
        let p = SparsePoly::parse("x^((p-1)*q+1) + x^(p*q) - x^(q+p-1)").unwrap();
        assert_eq!(p, templates::f());
        let p = SparsePoly::parse("x^(q) + x^(2)").unwrap();
        assert_eq!(p.terms.len(), 2);
        let p = SparsePoly::parse("-2*x + 3x^p - 1").unwrap();
        assert_eq!(p.terms[0].coeff, -2);
        assert_eq!(p.terms[1].coeff, 3);
        assert_eq!(p.terms[2].exp, ExponentExpr::Int(0));
        assert!(SparsePoly::parse("x^").is_err());
        assert!(SparsePoly::parse("").is_err());
        assert!(SparsePoly::parse("x x").is_err());
        // rendering parses back to the same template
        let g = templates::g();
        assert_eq!(SparsePoly::parse(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn negative_bound_exponent_is_rejected() {
        let p = SparsePoly::parse("x^(q-10)").unwrap();
        assert_eq!(
            p.bind(&field(3, 2), &Bindings::new(3, 2)),
            Err(Error::NegativeExponent(-1))
        );
    }

    #[test]
    fn niho_decomposition() {
        let fld = field(3, 2);
        let f = build_f(&fld, 2).unwrap();
        let (r, h) = f.niho_decompose(9).unwrap();
        assert_eq!(r, 3);
        assert_eq!(h.exponents(), vec![1, 2, 3]);
        assert_eq!(h.terms()[0].coeff, fld.from_int(-1));

        let fld = field(5, 2);
        let g = build_g(&fld, 2, 1).unwrap();
        let (r, h) = g.niho_decompose(25).unwrap();
        assert_eq!(r, 7);
        assert_eq!(h.exponents(), vec![2, 5, 6]);
        // the shifted form x^31 (y^4 + y^5 - y) is the same polynomial
        let shifted = SparsePoly::parse("x^4 + x^5 - x")
            .unwrap()
            .bind(&fld, &Bindings::new(5, 2))
            .unwrap();
        for x in fld.elements().skip(1) {
            let rebuilt = fld.mul(&fld.pow(&x, 31), &shifted.eval(&fld.pow(&x, 24)));
            assert_eq!(g.eval(&x), rebuilt);
        }

        let two = SparsePoly::parse("x + x^2")
            .unwrap()
            .bind(&field(5, 1), &Bindings::new(5, 1))
            .unwrap();
        assert!(matches!(
            two.niho_decompose(5),
            Err(Error::NotNihoShaped(_))
        ));
    }

    #[test]
    fn niho_decomposition_reconstructs() {
        for (p, k) in [(3u64, 1u32), (3, 2), (5, 1), (5, 2)] {
            let fld = field(p, k);
            let q = p.pow(k);
            for l in 0..3 {
                let g = build_g(&fld, k, l).unwrap();
                let (r, h) = g.niho_decompose(q).unwrap();
                for x in fld.elements().skip(1) {
                    let rebuilt = fld.mul(&fld.pow(&x, r), &h.eval(&fld.pow(&x, q - 1)));
                    assert_eq!(g.eval(&x), rebuilt);
                }
            }
        }
    }

    #[test]
    fn compose_power_matches_substitution() {
        let fld = field(5, 2);
        let f = build_f(&fld, 2).unwrap();
        for d in [1u64, 5, 7, 409, 623] {
            let composed = f.compose_power(d);
            for x in fld.elements().step_by(11) {
                assert_eq!(composed.eval(&x), f.eval(&fld.pow(&x, d)));
            }
        }
    }
}
