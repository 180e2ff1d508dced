//! Shape features of sampled spectra: extrema, mirror asymmetry, widths.

/// Indices of interior local maxima (`y[i-1] < y[i] >= y[i+1]`).
pub fn local_maxima(ys: &[f64]) -> Vec<usize> {
    (1..ys.len().saturating_sub(1))
        .filter(|&i| ys[i] > ys[i - 1] && ys[i] >= ys[i + 1])
        .collect()
}

/// Indices of interior local minima (`y[i-1] > y[i] <= y[i+1]`).
pub fn local_minima(ys: &[f64]) -> Vec<usize> {
    (1..ys.len().saturating_sub(1))
        .filter(|&i| ys[i] < ys[i - 1] && ys[i] <= ys[i + 1])
        .collect()
}

/// Local maxima restricted to `lo <= x <= hi`.
pub fn maxima_in(xs: &[f64], ys: &[f64], lo: f64, hi: f64) -> Vec<usize> {
    local_maxima(ys)
        .into_iter()
        .filter(|&i| xs[i] >= lo && xs[i] <= hi)
        .collect()
}

pub fn minima_in(xs: &[f64], ys: &[f64], lo: f64, hi: f64) -> Vec<usize> {
    local_minima(ys)
        .into_iter()
        .filter(|&i| xs[i] >= lo && xs[i] <= hi)
        .collect()
}

/// True if the grid is mirror-symmetric about zero, `x[i] = -x[n-1-i]`.
pub fn is_mirror_grid(xs: &[f64]) -> bool {
    let scale = xs.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let n = xs.len();
    (0..n).all(|i| (xs[i] + xs[n - 1 - i]).abs() <= 1e-9 * scale)
}

/// Sideband asymmetry `max_nu |S(nu) - S(-nu)| / max_{|nu| >= cutoff} S`.
///
/// The numerator runs over the whole grid, the normalization over the
/// sideband region only, so that a strong central peak does not mask the
/// sideband imbalance. Returns `None` when the grid is not mirror-symmetric
/// or has no sideband points.
pub fn sideband_asymmetry(nus: &[f64], values: &[f64], cutoff: f64) -> Option<f64> {
    if nus.len() != values.len() || !is_mirror_grid(nus) {
        return None;
    }
    let n = nus.len();
    let diff = (0..n)
        .map(|i| (values[i] - values[n - 1 - i]).abs())
        .fold(0.0, f64::max);
    let peak = nus
        .iter()
        .zip(values)
        .filter(|(nu, _)| nu.abs() >= cutoff)
        .map(|(_, &s)| s)
        .fold(f64::NEG_INFINITY, f64::max);
    (peak > 0.0).then(|| diff / peak)
}

/// Half widths at half maximum on the left and right of the peak at `peak`,
/// with linear interpolation between samples. A side is `None` when the
/// curve does not drop to half the peak before the grid ends.
pub fn half_widths(xs: &[f64], ys: &[f64], peak: usize) -> (Option<f64>, Option<f64>) {
    let half = ys[peak] / 2.0;
    let crossing = |a: usize, b: usize| {
        let t = (ys[a] - half) / (ys[a] - ys[b]);
        xs[a] + t * (xs[b] - xs[a])
    };
    let left = (0..peak)
        .rev()
        .find(|&i| ys[i] <= half)
        .map(|i| xs[peak] - crossing(i + 1, i));
    let right = (peak + 1..ys.len())
        .find(|&i| ys[i] <= half)
        .map(|i| crossing(i - 1, i) - xs[peak]);
    (left, right)
}
