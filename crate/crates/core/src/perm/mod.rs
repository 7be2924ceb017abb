//! Deciding whether a polynomial permutes F_{q^2}, three ways:
//!
//! - exhaustive: evaluate everywhere and mark images in an occupancy bitset;
//! - zieve: for x^r h(x^(q-1)), check gcd(r, q-1) = 1 and that
//!   u -> u^r h(u)^(q-1) is injective on the unit circle (cost ~q instead of q^2);
//! - subfield split: bijective on F_q, no element outside F_q lands in F_q,
//!   and injective on the complement.

mod sweep;

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, Quadratic};
use crate::poly::BoundPoly;
use crate::Caps;

pub(crate) use sweep::Sweep;
use sweep::{par_ranges, AtomicBitSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exhaustive,
    Zieve,
    SubfieldSplit,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Exhaustive => "exhaustive",
            Method::Zieve => "zieve",
            Method::SubfieldSplit => "subfield_split",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// Two distinct points with the same image.
    Collision {
        x1: FieldElement,
        x2: FieldElement,
    },
    Note(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PermutationVerdict {
    pub is_permutation: bool,
    pub method: Method,
    pub witness: Option<Witness>,
}

impl PermutationVerdict {
    fn yes(method: Method) -> Self {
        PermutationVerdict {
            is_permutation: true,
            method,
            witness: None,
        }
    }

    fn no(method: Method, witness: Witness) -> Self {
        PermutationVerdict {
            is_permutation: false,
            method,
            witness: Some(witness),
        }
    }
}

fn check_cap(what: &'static str, size: u64, cap: u64) -> Result<()> {
    if size > cap {
        return Err(Error::SizeCapExceeded {
            what,
            size: size as u128,
            cap: cap as u128,
        });
    }
    Ok(())
}

/// Evaluates at every element; a permutation iff no image repeats.
pub fn is_permutation_exhaustive(poly: &BoundPoly, cap: u64) -> Result<PermutationVerdict> {
    let field = poly.field();
    check_cap("field order", field.order(), cap)?;
    let g = field.primitive_element();
    let seen = AtomicBitSet::new(field.order());
    seen.test_and_set(field.code(&poly.eval(&field.zero())));
    let collided = AtomicBool::new(false);
    par_ranges(field.mult_order(), |start, end| {
        if collided.load(Ordering::Relaxed) {
            return;
        }
        let mut sweep = Sweep::new(poly, &g, start);
        for _ in start..end {
            if seen.test_and_set(field.code(&sweep.value())) {
                collided.store(true, Ordering::Relaxed);
                return;
            }
            sweep.advance();
        }
    });
    if !collided.load(Ordering::Relaxed) {
        return Ok(PermutationVerdict::yes(Method::Exhaustive));
    }
    let (x1, x2) = first_collision(poly);
    Ok(PermutationVerdict::no(
        Method::Exhaustive,
        Witness::Collision { x1, x2 },
    ))
}

/// The first repeated image in the order 0, g^0, g^1, ..., with the earlier
/// preimage first.
fn first_collision(poly: &BoundPoly) -> (FieldElement, FieldElement) {
    let field = poly.field();
    let g = field.primitive_element();
    let points = || {
        let mut sweep = Sweep::new(poly, &g, 0);
        let mut x = field.one();
        let zero = (field.zero(), poly.eval(&field.zero()));
        std::iter::once(zero).chain((0..field.mult_order()).map(move |_| {
            let out = (x, sweep.value());
            sweep.advance();
            x = field.mul(&x, &g);
            out
        }))
    };
    let mut seen = vec![0u64; field.order().div_ceil(64) as usize];
    let (x2, image) = points()
        .find(|(_, y)| {
            let c = field.code(y);
            let mask = 1u64 << (c % 64);
            let hit = seen[(c / 64) as usize] & mask != 0;
            seen[(c / 64) as usize] |= mask;
            hit
        })
        .expect("caller saw a collision");
    let (x1, _) = points()
        .find(|(_, y)| *y == image)
        .expect("image has a first preimage");
    (x1, x2)
}

/// Unit-circle criterion for x^r h(x^(q-1)).
pub fn zieve_check(
    r: u64,
    h: &BoundPoly,
    quad: &Quadratic<'_>,
    cap: u64,
) -> Result<PermutationVerdict> {
    let q = quad.q();
    check_cap("unit circle", q + 1, cap)?;
    let d = crate::ntheory::gcd(r, q - 1);
    if d != 1 {
        return Ok(PermutationVerdict::no(
            Method::Zieve,
            Witness::Note(format!("gcd(r, q-1) = gcd({r}, {}) = {d}", q - 1)),
        ));
    }
    let field = quad.field();
    let w = quad.unit_circle().generator();
    let r_power = BoundPoly::monomial(field, r);
    let vanishing = AtomicU64::new(u64::MAX);
    let chunks = par_ranges(q + 1, |start, end| {
        let mut hs = Sweep::new(h, &w, start);
        let mut us = Sweep::new(&r_power, &w, start);
        let mut codes = Vec::with_capacity((end - start) as usize);
        for i in start..end {
            let hu = hs.value();
            if hu.is_zero() {
                vanishing.fetch_min(i, Ordering::Relaxed);
                break;
            }
            // u^r h(u)^(q-1) = u^r h(u)^q / h(u)
            let inv = field.inv(&hu).expect("nonzero");
            let v = field.mul(&field.mul(&us.value(), &quad.frobenius(&hu)), &inv);
            codes.push((field.code(&v), i));
            hs.advance();
            us.advance();
        }
        codes
    });
    let at = vanishing.load(Ordering::Relaxed);
    if at != u64::MAX {
        let u = field.pow(&w, at);
        return Ok(PermutationVerdict::no(
            Method::Zieve,
            Witness::Note(format!("h vanishes at u = {u} in U")),
        ));
    }
    let mut codes: Vec<(u64, u64)> = chunks.into_iter().flatten().collect();
    codes.sort_unstable();
    if let Some(pair) = codes.windows(2).find(|w| w[0].0 == w[1].0) {
        let x1 = field.pow(&w, pair[0].1);
        let x2 = field.pow(&w, pair[1].1);
        return Ok(PermutationVerdict::no(
            Method::Zieve,
            Witness::Collision { x1, x2 },
        ));
    }
    Ok(PermutationVerdict::yes(Method::Zieve))
}

/// Decomposes `poly` and applies [`zieve_check`].
pub fn zieve_check_poly(
    poly: &BoundPoly,
    quad: &Quadratic<'_>,
    cap: u64,
) -> Result<PermutationVerdict> {
    let (r, h) = poly.niho_decompose(quad.q())?;
    zieve_check(r, &h, quad, cap)
}

/// Result of one pass that classifies every point by subfield membership.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubfieldScan {
    /// The restriction to F_q is a bijection of F_q.
    pub subfield_bijective: bool,
    /// Points outside F_q whose image lies in F_q.
    pub leaks: u64,
    /// The restriction to F_{q^2} \ F_q is injective.
    pub complement_injective: bool,
}

pub fn subfield_scan(poly: &BoundPoly, quad: &Quadratic<'_>, cap: u64) -> Result<SubfieldScan> {
    scan_subfield(poly, quad, cap, false)
}

/// Fields up to this order get exact leak counts in [`subfield_split_check`];
/// larger ones stop at the first failure.
const EXACT_SCAN_LIMIT: u64 = 1 << 22;

fn scan_subfield(
    poly: &BoundPoly,
    quad: &Quadratic<'_>,
    cap: u64,
    stop_early: bool,
) -> Result<SubfieldScan> {
    let field = poly.field();
    check_cap("field order", field.order(), cap)?;
    if !poly.coefficients_in_subfield(quad) {
        return Err(Error::InvalidInput(
            "coefficients are not fixed by x -> x^q".into(),
        ));
    }
    let q = quad.q();
    let g = field.primitive_element();
    let sub_seen = AtomicBitSet::new(field.order());
    let comp_seen = AtomicBitSet::new(field.order());
    let sub_ok = AtomicBool::new(true);
    let comp_ok = AtomicBool::new(true);
    let y0 = poly.eval(&field.zero());
    if !quad.in_subfield(&y0) {
        sub_ok.store(false, Ordering::Relaxed);
    }
    sub_seen.test_and_set(field.code(&y0));
    let leaked = AtomicBool::new(false);
    let failed = || {
        stop_early
            && (leaked.load(Ordering::Relaxed)
                || !sub_ok.load(Ordering::Relaxed)
                || !comp_ok.load(Ordering::Relaxed))
    };
    let leaks: u64 = par_ranges(field.mult_order(), |start, end| {
        let mut leaks = 0u64;
        if failed() {
            return leaks;
        }
        let mut sweep = Sweep::new(poly, &g, start);
        for i in start..end {
            let y = sweep.value();
            let c = field.code(&y);
            let y_in_fq = quad.in_subfield(&y);
            if i % (q + 1) == 0 {
                if !y_in_fq || sub_seen.test_and_set(c) {
                    sub_ok.store(false, Ordering::Relaxed);
                    if stop_early {
                        return leaks;
                    }
                }
            } else {
                if y_in_fq {
                    leaks += 1;
                    if stop_early {
                        leaked.store(true, Ordering::Relaxed);
                        return leaks;
                    }
                }
                if comp_seen.test_and_set(c) {
                    comp_ok.store(false, Ordering::Relaxed);
                    if stop_early {
                        return leaks;
                    }
                }
            }
            sweep.advance();
        }
        leaks
    })
    .into_iter()
    .sum();
    Ok(SubfieldScan {
        subfield_bijective: sub_ok.load(Ordering::Relaxed),
        leaks,
        complement_injective: comp_ok.load(Ordering::Relaxed),
    })
}

/// |{x outside F_q : poly(x) in F_q}|
pub fn count_image_in_subfield(poly: &BoundPoly, quad: &Quadratic<'_>, cap: u64) -> Result<u64> {
    Ok(subfield_scan(poly, quad, cap)?.leaks)
}

/// Leak counts are exact up to 2^22 elements; above that the scan stops at
/// the first failure and the note gives a lower bound.
pub fn subfield_split_check(
    poly: &BoundPoly,
    quad: &Quadratic<'_>,
    cap: u64,
) -> Result<PermutationVerdict> {
    let stop_early = poly.field().order() > EXACT_SCAN_LIMIT;
    let scan = scan_subfield(poly, quad, cap, stop_early)?;
    let note = if !scan.subfield_bijective {
        Some("restriction to F_q is not a bijection of F_q".to_string())
    } else if scan.leaks > 0 {
        let bound = if stop_early { "at least " } else { "" };
        Some(format!("subfield leak count {bound}{}", scan.leaks))
    } else if !scan.complement_injective {
        Some("restriction to the complement of F_q is not injective".to_string())
    } else {
        None
    };
    Ok(match note {
        None => PermutationVerdict::yes(Method::SubfieldSplit),
        Some(n) => PermutationVerdict::no(Method::SubfieldSplit, Witness::Note(n)),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct MethodOutcome {
    pub method: Method,
    pub verdict: Option<PermutationVerdict>,
    /// Why the method did not run.
    pub skipped: Option<String>,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossReport {
    pub field: String,
    pub poly: String,
    /// Always in the order exhaustive, zieve, subfield_split.
    pub outcomes: Vec<MethodOutcome>,
    pub warnings: Vec<String>,
}

impl CrossReport {
    /// The common verdict, or `MethodDisagreement` when the methods that ran
    /// do not agree.
    pub fn verdict(&self) -> Result<bool> {
        let ran: Vec<(Method, bool)> = self
            .outcomes
            .iter()
            .filter_map(|o| o.verdict.as_ref().map(|v| (o.method, v.is_permutation)))
            .collect();
        let (_, first) = *ran
            .first()
            .ok_or_else(|| Error::InvalidInput("no method was applicable".into()))?;
        if ran.iter().any(|&(_, b)| b != first) {
            let parts: Vec<String> = ran
                .iter()
                .map(|(m, b)| format!("{}={b}", m.name()))
                .collect();
            return Err(Error::MethodDisagreement(format!(
                "{} on {}",
                parts.join(", "),
                self.poly
            )));
        }
        Ok(first)
    }

    pub fn outcome(&self, method: Method) -> Option<&MethodOutcome> {
        self.outcomes.iter().find(|o| o.method == method)
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_secs_f64() * 1e3)
}

/// Runs every applicable method. Methods over their cap, or whose
/// preconditions fail, are reported as skipped with the reason.
pub fn cross_validate(poly: &BoundPoly, k: u32, caps: &Caps) -> Result<CrossReport> {
    let field: &Field = poly.field();
    let quad = field.quadratic(k)?;
    let mut outcomes = Vec::with_capacity(3);

    let skipped = |method, why: String| MethodOutcome {
        method,
        verdict: None,
        skipped: Some(why),
        elapsed_ms: 0.0,
    };

    if field.order() <= caps.exhaustive {
        let (v, ms) = timed(|| is_permutation_exhaustive(poly, caps.exhaustive));
        outcomes.push(MethodOutcome {
            method: Method::Exhaustive,
            verdict: Some(v?),
            skipped: None,
            elapsed_ms: ms,
        });
    } else {
        outcomes.push(skipped(
            Method::Exhaustive,
            format!("over cap: {} > {}", field.order(), caps.exhaustive),
        ));
    }

    match poly.niho_decompose(quad.q()) {
        Ok((r, h)) if quad.q() < caps.unit_circle => {
            let (v, ms) = timed(|| zieve_check(r, &h, &quad, caps.unit_circle));
            outcomes.push(MethodOutcome {
                method: Method::Zieve,
                verdict: Some(v?),
                skipped: None,
                elapsed_ms: ms,
            });
        }
        Ok(_) => outcomes.push(skipped(
            Method::Zieve,
            format!("over cap: q+1 > {}", caps.unit_circle),
        )),
        Err(e) => outcomes.push(skipped(Method::Zieve, e.to_string())),
    }

    if !poly.coefficients_in_subfield(&quad) {
        outcomes.push(skipped(
            Method::SubfieldSplit,
            "coefficients not in F_q".into(),
        ));
    } else if field.order() > caps.exhaustive {
        outcomes.push(skipped(
            Method::SubfieldSplit,
            format!("over cap: {} > {}", field.order(), caps.exhaustive),
        ));
    } else {
        let (v, ms) = timed(|| subfield_split_check(poly, &quad, caps.exhaustive));
        outcomes.push(MethodOutcome {
            method: Method::SubfieldSplit,
            verdict: Some(v?),
            skipped: None,
            elapsed_ms: ms,
        });
    }

    Ok(CrossReport {
        field: field.describe(),
        poly: poly.render(),
        outcomes,
        warnings: poly.warnings().to_vec(),
    })
}
