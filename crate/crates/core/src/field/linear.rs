use super::{Field, FieldElement, MAX_DEGREE};

/// An F_p-linear map of the field, stored as an m x m matrix. Multiplication
/// by a fixed element and the Frobenius map are both of this kind, and applying
/// a matrix is cheaper than a general multiply followed by reduction.
#[derive(Clone, Debug)]
pub struct LinearMap {
    p: u32,
    m: usize,
    rows: Vec<u32>,
}

impl LinearMap {
    /// Builds the map from the images of the basis 1, a, ..., a^(m-1).
    pub(crate) fn from_basis_images(field: &Field, images: &[FieldElement]) -> Self {
        let m = field.degree();
        let mut rows = vec![0u32; m * m];
        for (j, img) in images.iter().enumerate() {
            for i in 0..m {
                rows[i * m + j] = img.coeffs[i];
            }
        }
        LinearMap {
            p: field.characteristic() as u32,
            m,
            rows,
        }
    }

    pub fn multiplication_by(field: &Field, c: &FieldElement) -> Self {
        let images: Vec<FieldElement> = (0..field.degree())
            .map(|j| field.mul(c, &field.basis(j)))
            .collect();
        Self::from_basis_images(field, &images)
    }

    #[inline]
    pub fn apply(&self, x: &FieldElement) -> FieldElement {
        let mut out = *x;
        self.apply_in_place(&x.coeffs, &mut out.coeffs);
        out
    }

    #[inline]
    pub(crate) fn apply_in_place(&self, input: &[u32; MAX_DEGREE], out: &mut [u32; MAX_DEGREE]) {
        let m = self.m;
        let p = self.p as u64;
        for (i, row) in self.rows.chunks_exact(m).enumerate() {
            let mut acc = 0u64;
            for (a, b) in row.iter().zip(&input[..m]) {
                acc += *a as u64 * *b as u64;
            }
            out[i] = (acc % p) as u32;
        }
    }
}
