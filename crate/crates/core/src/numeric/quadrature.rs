use super::field::ScalarField;

/// Integral of the local cubic interpolant over `[s_j, s_{j+1}]`.
fn cubic_interval(f: &[f64], j: usize, h: f64) -> f64 {
    let n = f.len();
    let w = h / 24.0;
    if j >= 1 && j + 2 < n {
        w * (-f[j - 1] + 13.0 * f[j] + 13.0 * f[j + 1] - f[j + 2])
    } else if j == 0 {
        w * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3])
    } else {
        w * (f[j - 2] - 5.0 * f[j - 1] + 19.0 * f[j] + 9.0 * f[j + 1])
    }
}

impl ScalarField {
    /// Running integral from the grid origin.
    ///
    /// Each interval contributes the exact integral of the cubic through its
    /// four nearest samples (centred where possible, one-sided at the ends).
    /// The interior rule is the same everywhere, so the accumulated error is
    /// a smooth `O(h^4)` function and survives differentiation.
    pub fn cumint(&self) -> ScalarField {
        let f = self.values();
        let h = self.grid().h();
        let mut out = vec![0.0; f.len()];
        for i in 1..f.len() {
            out[i] = out[i - 1] + cubic_interval(f, i - 1, h);
        }
        ScalarField::from_parts(*self.grid(), out)
    }
}
