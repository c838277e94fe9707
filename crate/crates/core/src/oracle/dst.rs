//! Type-I discrete sine transform via a complex FFT of the odd extension.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

/// X_k = Σₙ xₙ sin(πnk/(N+1)), n, k = 1..N. Applying it twice multiplies by (N+1)/2.
pub(crate) struct Dst1 {
    n: usize,
    fft: Arc<dyn Fft<f64>>,
    buffer: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

impl Dst1 {
    pub fn new(n: usize) -> Self {
        let fft = FftPlanner::new().plan_fft_forward(2 * (n + 1));
        let scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
        Self { n, fft, buffer: vec![Complex64::new(0.0, 0.0); 2 * (n + 1)], scratch }
    }

    /// In-place forward transform of `data` (length N).
    pub fn apply(&mut self, data: &mut [Complex64]) {
        let n = self.n;
        assert_eq!(data.len(), n, "DST length mismatch");
        let zero = Complex64::new(0.0, 0.0);
        self.buffer[0] = zero;
        self.buffer[n + 1] = zero;
        for (j, &v) in data.iter().enumerate() {
            self.buffer[j + 1] = v;
            self.buffer[2 * n + 1 - j] = -v;
        }
        self.fft.process_with_scratch(&mut self.buffer, &mut self.scratch);
        // F_k = −2i X_k
        for (k, out) in data.iter_mut().enumerate() {
            let f = self.buffer[k + 1];
            *out = Complex64::new(-0.5 * f.im, 0.5 * f.re);
        }
    }

    /// Inverse transform: `apply` followed by the 2/(N+1) normalisation.
    pub fn apply_inverse(&mut self, data: &mut [Complex64]) {
        self.apply(data);
        let scale = 2.0 / (self.n as f64 + 1.0);
        data.iter_mut().for_each(|v| *v *= scale);
    }
}
