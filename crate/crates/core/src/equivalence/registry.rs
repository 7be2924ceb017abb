//! Previously known permutation trinomials x + λ1 x^(s(q-1)+1) + λ2 x^(t(q-1)+1)
//! of F_{3^{2k}} and F_{5^{2k}}, each with its unit-circle fraction.

use std::collections::HashSet;
use std::ops::RangeInclusive;

use serde::Serialize;

use super::{equivalent_bruteforce, EquivalenceWitness};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::ntheory::valuation;
use crate::perm::zieve_check_poly;
use crate::poly::{build_family, Bindings, BoundPoly, ExponentExpr, FractionalPoly};
use crate::Caps;

/// Values of k for which a row is asserted to permute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KCondition {
    All,
    Even,
    Odd,
    NotZeroMod4,
    NotTwoMod4,
    /// k odd and the 3-adic valuation of t is at least that of q+1.
    OddExp3,
}

impl KCondition {
    pub fn admits(self, p: u64, k: u32, t: Option<i64>) -> bool {
        match self {
            KCondition::All => true,
            KCondition::Even => k.is_multiple_of(2),
            KCondition::Odd => k % 2 == 1,
            KCondition::NotZeroMod4 => !k.is_multiple_of(4),
            KCondition::NotTwoMod4 => k % 4 != 2,
            KCondition::OddExp3 => {
                let Some(t) = t else { return false };
                let q1 = p.pow(k) + 1;
                k % 2 == 1 && t != 0 && valuation(t.unsigned_abs(), 3) >= valuation(q1, 3)
            }
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            KCondition::All => "all k",
            KCondition::Even => "even k",
            KCondition::Odd => "odd k",
            KCondition::NotZeroMod4 => "k != 0 mod 4",
            KCondition::NotTwoMod4 => "k != 2 mod 4",
            KCondition::OddExp3 => "odd k, exp3(t) >= exp3(q+1)",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyEntry {
    pub characteristic: u64,
    /// Allowed values of λ1; two for a "±1" row.
    pub lambda1: &'static [i64],
    pub s: &'static str,
    pub lambda2: i64,
    pub t: &'static str,
    pub condition: KCondition,
    /// Numerator and denominator on U, exponents in p, q, k and t.
    pub fraction: (&'static str, &'static str),
    /// When set, the fraction is written in the variable x^e for this
    /// exponent e rather than in x.
    pub argument: Option<&'static str>,
    pub source: &'static str,
    /// Free parameter in s and t, if any.
    pub parameter: Option<char>,
}

impl FamilyEntry {
    pub fn tuple(&self) -> String {
        let l1 = match self.lambda1 {
            [a] => a.to_string(),
            _ => "±1".to_string(),
        };
        format!("({l1}, {}, {}, {})", self.s, self.lambda2, self.t)
    }

    fn bindings(&self, k: u32, param: Option<i64>) -> Bindings {
        let b = Bindings::new(self.characteristic, k);
        match param {
            Some(t) => b.with_t(t),
            None => b,
        }
    }

    /// Concrete (s, t) at k; `Divisibility` when a formula is not integral.
    pub fn exponents(&self, k: u32, param: Option<i64>) -> Result<(i64, i64)> {
        let b = self.bindings(k, param);
        let s = ExponentExpr::parse(self.s)?.eval(&b)?;
        let t = ExponentExpr::parse(self.t)?.eval(&b)?;
        Ok((s as i64, t as i64))
    }

    /// The trinomials of this row over `field` (one per allowed λ1).
    pub fn instantiate(
        &self,
        field: &Field,
        k: u32,
        param: Option<i64>,
    ) -> Result<Vec<RowInstance>> {
        let (s, t) = self.exponents(k, param)?;
        self.lambda1
            .iter()
            .map(|&lambda1| {
                Ok(RowInstance {
                    lambda1,
                    s,
                    lambda2: self.lambda2,
                    t,
                    param,
                    poly: build_family(field, k, lambda1, s, self.lambda2, t)?,
                })
            })
            .collect()
    }

    /// Parameter values to try at k: t in [1, q] for parametrized rows.
    pub fn parameters(&self, k: u32) -> Vec<Option<i64>> {
        match self.parameter {
            None => vec![None],
            Some(_) => (1..=self.characteristic.pow(k) as i64).map(Some).collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RowInstance {
    pub lambda1: i64,
    pub s: i64,
    pub lambda2: i64,
    pub t: i64,
    pub param: Option<i64>,
    pub poly: BoundPoly,
}

const KZ_E: &str = "Kyureghyan-Zieve2016, Theorem 1.1 (e)";
const KZ_F: &str = "Kyureghyan-Zieve2016, Theorem 1.1 (f)";

#[allow(clippy::too_many_arguments)]
fn row(
    characteristic: u64,
    lambda1: &'static [i64],
    s: &'static str,
    lambda2: i64,
    t: &'static str,
    condition: KCondition,
    fraction: (&'static str, &'static str),
    source: &'static str,
) -> FamilyEntry {
    FamilyEntry {
        characteristic,
        lambda1,
        s,
        lambda2,
        t,
        condition,
        fraction,
        argument: None,
        source,
        parameter: None,
    }
}

fn sqrt_q_rows(p: u64) -> [FamilyEntry; 2] {
    use KCondition::Even;
    [
        row(
            p,
            &[-1],
            "p^(k/2)",
            -1,
            "1-p^(k/2)",
            Even,
            (
                "x^(p^(k/2)) - x^(2*p^(k/2)-1) - 1",
                "x^(p^(k/2)-1) - x^(2*p^(k/2)-1) - 1",
            ),
            KZ_E,
        ),
        row(
            p,
            &[-1],
            "p^(k/2)+1",
            -1,
            "-p^(k/2)",
            Even,
            (
                "x^(p^(k/2)+1) - x^(2*p^(k/2)+1) - 1",
                "x^(p^(k/2)) - x^(2*p^(k/2)+1) - 1",
            ),
            KZ_F,
        ),
    ]
}

/// All rows for characteristic 3 or 5.
pub fn registry(p: u64) -> Result<Vec<FamilyEntry>> {
    use KCondition::*;
    let mut rows = match p {
        3 => vec![
            row(
                3,
                &[-1],
                "2",
                1,
                "-2",
                NotZeroMod4,
                ("x^5 + x^3 - x", "-x^4 + x^2 + 1"),
                "Likangquan2016arxiv, Theorem 3.2",
            ),
            row(
                3,
                &[1],
                "3",
                -1,
                "-1",
                Odd,
                ("-x^4 + x^3 + 1", "x^5 + x^2 - x"),
                "Likangquan2016arxiv, Theorem 3.4",
            ),
            row(
                3,
                &[-1],
                "4",
                1,
                "-2",
                All,
                ("x^6 + x^4 - 1", "-x^7 + x^3 + x"),
                "Likangquan2016arxiv, Conjecture 5.1 (2); Linian2016conjecture",
            ),
            row(
                3,
                &[-1],
                "-2",
                1,
                "2",
                NotTwoMod4,
                ("-x^5 + x^3 + x", "x^4 + x^2 - 1"),
                "Likangquan2016arxiv, Conjecture 5.1 (3); Linian2016conjecture",
            ),
            row(
                3,
                &[-1],
                "(q+3)/4",
                -1,
                "(3*q+5)/4",
                Even,
                (
                    "x^((3*q+5)/4+1) - x^((q+1)/2+1) - x",
                    "x^((3*q+5)/4) - x - x^((q+3)/2)",
                ),
                "Kyureghyan-Zieve2016, Theorem 1.1 (d)",
            ),
        ],
        5 => vec![
            row(
                5,
                &[1],
                "(q+3)/4",
                -1,
                "(q+3)/2",
                All,
                (
                    "-x^((q+1)/2+(q+3)/2) + 4*x^((q+1)/2+(q+3)/4) - 4*x^((q+1)/2)",
                    "x^((q+3)/2) + 4*x^((q+3)/4) + 4",
                ),
                "Wu-Li2017, Theorem 1",
            ),
            row(
                5,
                &[1],
                "(q-1)/2",
                -1,
                "(q+3)/2",
                Odd,
                (
                    "-x^((q+3)/2+1) + x^((q-1)/2+1) - x",
                    "x^((q+3)/2) - x^((q-1)/2) - 1",
                ),
                "Wu-Li2017, Theorem 2",
            ),
            row(
                5,
                &[1],
                "-1",
                -1,
                "(q+3)/2",
                Odd,
                ("x^((q-1)/2+2) - x^3 - x^2", "x^((q+5)/2) - x - 1"),
                "Wu-Li2017, Theorem 3",
            ),
            row(
                5,
                &[-1],
                "(q+3)/2",
                1,
                "(q+5)/2",
                Odd,
                (
                    "-x^((q-1)/2+1) + x^((q-3)/2+1) + x",
                    "x^((q+5)/2) - x^((q+3)/2) + 1",
                ),
                "Wu-Li2017, Theorem 4",
            ),
            row(
                5,
                &[-1],
                "2",
                1,
                "(q+3)/2",
                Even,
                ("x^((q+3)/2) + x^2 - 1", "x^((q+3)/2+1) - x^3 + x"),
                "Wu-Li2017, Theorem 5",
            ),
            row(
                5,
                &[1],
                "1",
                -1,
                "(q-1)/2",
                Even,
                ("x^((q+5)/2) - x - 1", "x^((q-1)/2) - x - 1"),
                "Wu-Li2017, Theorem 6",
            ),
            row(
                5,
                &[-1],
                "1",
                1,
                "(q+5)/2",
                Even,
                ("x^((q-1)/2) + x - 1", "x^((q+5)/2) - x + 1"),
                "Wu-Li2017, Theorem 7 (i)",
            ),
            row(
                5,
                &[1],
                "(q+3)/2",
                1,
                "(q+5)/2",
                Even,
                (
                    "x^((q+1)/2) + x^((q-1)/2) + x",
                    "x^((q+5)/2) + x^((q+3)/2) + 1",
                ),
                "Wu-Li2017, Theorem 7 (ii)",
            ),
            row(
                5,
                &[1],
                "(q+3)/2",
                -1,
                "-1",
                Even,
                ("x^((q-1)/2+2) - x^3 + x^2", "x^((q+5)/2) + x - 1"),
                "Wu-Li2017, Theorem 7 (iii)",
            ),
            row(
                5,
                &[1],
                "2",
                -1,
                "-2",
                Odd,
                ("-x^5 - 4*x^3 - 4*x", "x^4 - 4*x^2 + 4"),
                "Wu-Li2017, Proposition 1; mage2017, Theorem 4.1",
            ),
            FamilyEntry {
                argument: Some("(2*q+1)/3"),
                ..row(
                    5,
                    &[-1],
                    "(q+5)/3",
                    -1,
                    "2*(q+2)/3",
                    Even,
                    ("-x^5 + 4*x^3 - 4*x", "x^4 + 4*x^2 + 4"),
                    "Wu-Li2017, Proposition 2; mage2017, Theorem 3.1",
                )
            },
            row(
                5,
                &[1],
                "(q+2)/3",
                1,
                "(2*q+4)/3",
                Even,
                (
                    "x^((2*q+4)/3) + x^((q+2)/3) + 1",
                    "x^((2*q+1)/3) + x^((q+2)/3) + 1",
                ),
                "Kyureghyan-Zieve2016, Theorem 1.1 (c)",
            ),
        ],
        _ => return Err(Error::UnsupportedCharacteristic(p)),
    };
    rows.extend(sqrt_q_rows(p));
    match p {
        3 => rows.push(row(
            3,
            &[-1],
            "1",
            -1,
            "2",
            Even,
            ("x + 1 - x^2", "x^3 + x^2 - x"),
            "X.Hou-2014arxiv, Theorem A (iv)",
        )),
        _ => {
            let param = |condition, source| FamilyEntry {
                characteristic: 5,
                lambda1: &[1],
                s: "t",
                lambda2: 1,
                t: "-t",
                condition,
                fraction: ("x", "1"),
                argument: None,
                source,
                parameter: Some('t'),
            };
            rows.push(param(Even, "Ding-siam, Theorem 3.4 (i)"));
            rows.push(param(OddExp3, "Ding-siam, Theorem 3.4 (iii)"));
            rows.push(row(
                5,
                &[1, -1],
                "1",
                1,
                "2",
                Even,
                ("1", "x"),
                "X.Hou-2014method, Theorem A (ii)",
            ));
        }
    }
    Ok(rows)
}

/// Checks of one registry row at one k (and parameter value).
#[derive(Debug, Clone, Serialize)]
pub struct RowVerification {
    pub row: usize,
    pub tuple: String,
    pub source: &'static str,
    pub k: u32,
    pub lambda1: i64,
    pub param: Option<i64>,
    /// The trinomial permutes F_{q^2}.
    pub permutes: Option<bool>,
    /// The listed fraction permutes U.
    pub fraction_permutes_u: Option<bool>,
    /// The listed fraction equals x(1 + λ1 x^s + λ2 x^t)^(q-1) on U.
    pub fraction_matches: Option<bool>,
    pub note: Option<String>,
}

impl RowVerification {
    pub fn passed(&self) -> bool {
        self.permutes == Some(true)
            && self.fraction_permutes_u == Some(true)
            && self.fraction_matches == Some(true)
    }
}

/// (permutes U, agrees with the direct form) for a row's fraction.
fn check_fraction(
    entry: &FamilyEntry,
    inst: &RowInstance,
    field: &Field,
    k: u32,
) -> Result<(bool, bool)> {
    let quad = field.quadratic(k)?;
    let q = quad.q();
    let b = entry.bindings(k, inst.param);
    let frac =
        FractionalPoly::parse(entry.fraction.0, entry.fraction.1)?.bind_on_circle(field, &b)?;
    let circle = quad.unit_circle();
    let n = field.mult_order();
    let e = |j: i64| (j as i128).rem_euclid(n as i128) as u64;
    let (l1, l2) = (field.from_int(inst.lambda1), field.from_int(inst.lambda2));
    let arg = match entry.argument {
        Some(a) => e(ExponentExpr::parse(a)?.eval(&b)? as i64),
        None => 1,
    };
    let mut images: HashSet<FieldElement> = HashSet::new();
    let (mut permutes, mut matches) = (true, true);
    for u in circle.iter() {
        let inner = field.add(
            &field.add(&field.one(), &field.mul(&l1, &field.pow(&u, e(inst.s)))),
            &field.mul(&l2, &field.pow(&u, e(inst.t))),
        );
        let direct = field.mul(&u, &field.pow(&inner, q - 1));
        match frac.eval(&field.pow(&u, arg)) {
            Ok(v) => {
                if !circle.contains(&v) || !images.insert(v) {
                    permutes = false;
                }
                if v != direct || inner.is_zero() {
                    matches = false;
                }
            }
            Err(Error::DenominatorZero) => {
                permutes = false;
                matches = false;
            }
            Err(e) => return Err(e),
        }
    }
    Ok((permutes, matches))
}

/// The parameter values tried when verifying a parametrized row.
const VERIFY_PARAMS: RangeInclusive<i64> = 1..=6;

/// Instantiates every row at its smallest admissible k (field within the
/// exhaustive cap) and checks the trinomial and its fraction.
pub fn registry_verify(p: u64, caps: &Caps) -> Result<Vec<RowVerification>> {
    registry_verify_with(p, caps, None)
}

/// [`registry_verify`] with an explicit parameter range for parametrized rows.
pub fn registry_verify_with(
    p: u64,
    caps: &Caps,
    t_range: Option<RangeInclusive<i64>>,
) -> Result<Vec<RowVerification>> {
    let rows = registry(p)?;
    let t_range = t_range.unwrap_or(VERIFY_PARAMS);
    let mut out = Vec::new();
    for (index, entry) in rows.iter().enumerate() {
        let params: Vec<Option<i64>> = match entry.parameter {
            None => vec![None],
            Some(_) => t_range.clone().map(Some).collect(),
        };
        for param in params {
            let k = (1..=8u32).find(|&k| {
                entry.condition.admits(p, k, param)
                    && p.checked_pow(2 * k).is_some_and(|o| o <= caps.exhaustive)
                    && entry.exponents(k, param).is_ok()
            });
            let Some(k) = k else {
                if param.is_none() || entry.condition != KCondition::OddExp3 {
                    out.push(RowVerification {
                        row: index,
                        tuple: entry.tuple(),
                        source: entry.source,
                        k: 0,
                        lambda1: entry.lambda1[0],
                        param,
                        permutes: None,
                        fraction_permutes_u: None,
                        fraction_matches: None,
                        note: Some("no admissible k within caps".into()),
                    });
                }
                continue;
            };
            let field = Field::with_cap(p, 2 * k as usize, caps.field_order)?;
            let quad = field.quadratic(k)?;
            for inst in entry.instantiate(&field, k, param)? {
                let permutes =
                    zieve_check_poly(&inst.poly, &quad, caps.unit_circle)?.is_permutation;
                let (fp, fm) = check_fraction(entry, &inst, &field, k)?;
                out.push(RowVerification {
                    row: index,
                    tuple: entry.tuple(),
                    source: entry.source,
                    k,
                    lambda1: inst.lambda1,
                    param,
                    permutes: Some(permutes),
                    fraction_permutes_u: Some(fp),
                    fraction_matches: Some(fm),
                    note: None,
                });
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct Match {
    pub row: usize,
    pub tuple: String,
    pub source: &'static str,
    pub lambda1: i64,
    pub param: Option<i64>,
    pub witness: EquivalenceWitness,
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub field: String,
    pub candidate: String,
    pub rows_tested: usize,
    pub instances_tested: usize,
    pub matches: Vec<Match>,
    /// Rows not tested at this k, with the reason.
    pub skipped: Vec<(usize, String)>,
}

/// Tests the candidate against every registry row admissible at k.
pub fn classify(candidate: &BoundPoly, k: u32, caps: &Caps) -> Result<Classification> {
    classify_with(candidate, k, caps, None)
}

/// [`classify`] with an explicit parameter range in place of t in [1, q].
pub fn classify_with(
    candidate: &BoundPoly,
    k: u32,
    caps: &Caps,
    t_range: Option<RangeInclusive<i64>>,
) -> Result<Classification> {
    let field = candidate.field();
    let p = field.characteristic();
    let quad = field.quadratic(k)?;
    if !zieve_check_poly(candidate, &quad, caps.unit_circle)?.is_permutation {
        return Err(Error::NotPermutation(candidate.render()));
    }
    let mut report = Classification {
        field: field.describe(),
        candidate: candidate.render(),
        rows_tested: 0,
        instances_tested: 0,
        matches: Vec::new(),
        skipped: Vec::new(),
    };
    for (index, entry) in registry(p)?.iter().enumerate() {
        let candidates = match (&t_range, entry.parameter) {
            (Some(r), Some(_)) => r.clone().map(Some).collect(),
            _ => entry.parameters(k),
        };
        let params: Vec<Option<i64>> = candidates
            .into_iter()
            .filter(|&t| entry.condition.admits(p, k, t))
            .collect();
        if params.is_empty() {
            report.skipped.push((
                index,
                format!("not asserted for k = {k} ({})", entry.condition.label()),
            ));
            continue;
        }
        let mut tested = false;
        for param in params {
            let instances = match entry.instantiate(field, k, param) {
                Ok(v) => v,
                Err(e @ Error::Divisibility { .. }) => {
                    report.skipped.push((index, e.to_string()));
                    continue;
                }
                Err(e) => return Err(e),
            };
            for inst in instances {
                if !zieve_check_poly(&inst.poly, &quad, caps.unit_circle)?.is_permutation {
                    continue;
                }
                tested = true;
                report.instances_tested += 1;
                if let Some(witness) =
                    equivalent_bruteforce(candidate, &inst.poly, caps.equivalence)?
                {
                    report.matches.push(Match {
                        row: index,
                        tuple: entry.tuple(),
                        source: entry.source,
                        lambda1: inst.lambda1,
                        param,
                        witness,
                    });
                }
            }
        }
        if tested {
            report.rows_tested += 1;
        }
    }
    Ok(report)
}
