use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::field::{Field, FieldElement, LinearMap, MAX_DEGREE};
use crate::poly::BoundPoly;

/// Evaluates a polynomial at base^start, base^(start+1), ... keeping one
/// running product c_j * base^(e_j i) per term, so each step costs one
/// constant multiplication per term.
pub(crate) struct Sweep {
    steps: Vec<LinearMap>,
    state: Vec<FieldElement>,
    constant: FieldElement,
    field: Field,
}

impl Sweep {
    pub(crate) fn new(poly: &BoundPoly, base: &FieldElement, start: u64) -> Self {
        let field = poly.field().clone();
        let n = field.mult_order() as u128;
        let mut steps = Vec::new();
        let mut state = Vec::new();
        let mut constant = field.zero();
        for t in poly.terms() {
            if t.exp == 0 {
                constant = field.add(&constant, &t.coeff);
                continue;
            }
            let e = (t.exp as u128 % n) as u64;
            let step = field.pow(base, e);
            let offset = (e as u128 * start as u128 % n) as u64;
            steps.push(LinearMap::multiplication_by(&field, &step));
            state.push(field.mul(&t.coeff, &field.pow(base, offset)));
        }
        Sweep {
            steps,
            state,
            constant,
            field,
        }
    }

    #[inline]
    pub(crate) fn value(&self) -> FieldElement {
        self.state
            .iter()
            .fold(self.constant, |acc, s| self.field.add(&acc, s))
    }

    #[inline]
    pub(crate) fn advance(&mut self) {
        for (map, s) in self.steps.iter().zip(self.state.iter_mut()) {
            let input: [u32; MAX_DEGREE] = *s.raw();
            map.apply_in_place(&input, s.raw_mut());
        }
    }
}

/// One bit per field element, settable from several workers.
pub(crate) struct AtomicBitSet {
    words: Vec<AtomicU64>,
}

impl AtomicBitSet {
    pub(crate) fn new(bits: u64) -> Self {
        let n = bits.div_ceil(64) as usize;
        AtomicBitSet {
            words: (0..n).map(|_| AtomicU64::new(0)).collect(),
        }
    }

    /// Sets the bit and reports whether it was already set.
    #[inline]
    pub(crate) fn test_and_set(&self, i: u64) -> bool {
        let mask = 1u64 << (i % 64);
        self.words[(i / 64) as usize].fetch_or(mask, Ordering::Relaxed) & mask != 0
    }
}

/// Splits [0, n) into contiguous ranges and runs `work` on each in
/// parallel, returning results in range order.
pub(crate) fn par_ranges<T, F>(n: u64, work: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, u64) -> T + Sync,
{
    let threads = rayon::current_num_threads() as u64;
    let chunk = (n / (threads * 8)).max(1 << 14);
    let starts: Vec<u64> = (0..n).step_by(chunk as usize).collect();
    starts
        .into_par_iter()
        .map(|s| work(s, (s + chunk).min(n)))
        .collect()
}
