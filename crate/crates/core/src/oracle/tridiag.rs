//! Symmetric tridiagonal eigenvalues by Sturm bisection, eigenvectors by
//! inverse iteration.

/// Number of eigenvalues strictly below x.
pub fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..diag.len() {
        let e2 = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        q = diag[i] - x - if i == 0 { 0.0 } else { e2 / q };
        if q == 0.0 {
            q = -f64::EPSILON * (diag[i].abs() + x.abs()).max(f64::MIN_POSITIVE);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Gershgorin interval containing the spectrum.
pub fn gershgorin(diag: &[f64], off: &[f64]) -> (f64, f64) {
    let n = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = if i > 0 { off[i - 1].abs() } else { 0.0 } + if i + 1 < n { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    (lo, hi)
}

/// The k-th eigenvalue (0-based) inside [lo, hi].
pub fn bisect(diag: &[f64], off: &[f64], k: usize, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= 4.0 * f64::EPSILON * mid.abs().max(1e-300) {
            break;
        }
        if sturm_count(diag, off, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Solves (T − σI) x = b by Gaussian elimination with partial pivoting.
fn solve_shifted(diag: &[f64], off: &[f64], sigma: f64, b: &[f64]) -> Vec<f64> {
    let n = diag.len();
    if n == 1 {
        let d = diag[0] - sigma;
        return vec![b[0] / if d == 0.0 { f64::EPSILON } else { d }];
    }
    // rows as (sub, main, super, super2) after pivoting
    let mut dl: Vec<f64> = off.to_vec();
    let mut d: Vec<f64> = diag.iter().map(|x| x - sigma).collect();
    let mut du: Vec<f64> = off.to_vec();
    let mut du2 = vec![0.0; n.saturating_sub(2)];
    let mut x = b.to_vec();
    let tiny = f64::EPSILON * diag.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
    for i in 0..n - 1 {
        if d[i].abs() >= dl[i].abs() {
            if d[i] == 0.0 {
                d[i] = tiny;
            }
            let f = dl[i] / d[i];
            d[i + 1] -= f * du[i];
            x[i + 1] -= f * x[i];
            dl[i] = 0.0;
        } else {
            let f = d[i] / dl[i];
            d[i] = dl[i];
            let tmp = d[i + 1];
            d[i + 1] = du[i] - f * tmp;
            du[i] = tmp;
            if i + 2 < n {
                du2[i] = du[i + 1];
                du[i + 1] *= -f;
            }
            x.swap(i, i + 1);
            x[i + 1] -= f * x[i];
        }
    }
    if d[n - 1] == 0.0 {
        d[n - 1] = tiny;
    }
    x[n - 1] /= d[n - 1];
    x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
    for i in (0..n.saturating_sub(2)).rev() {
        x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
    }
    x
}

/// Eigenvector for an eigenvalue accurate to rounding, unit Euclidean norm.
pub fn inverse_iteration(diag: &[f64], off: &[f64], lambda: f64) -> Vec<f64> {
    let n = diag.len();
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * ((i * 7919) % 13) as f64 / 13.0).collect();
    for _ in 0..3 {
        let w = solve_shifted(diag, off, lambda, &v);
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        v = w.into_iter().map(|x| x / norm).collect();
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    // tridiag(−1, 2, −1) has eigenvalues 2 − 2cos(jπ/(n+1))
    fn laplacian(n: usize) -> (Vec<f64>, Vec<f64>) {
        (vec![2.0; n], vec![-1.0; n - 1])
    }

    #[test]
    fn bisection_finds_known_spectrum() {
        let n = 50;
        let (d, e) = laplacian(n);
        let (lo, hi) = gershgorin(&d, &e);
        for k in 0..n {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * PI / (n + 1) as f64).cos();
            assert!((bisect(&d, &e, k, lo, hi) - exact).abs() < 1e-13);
        }
        assert_eq!(sturm_count(&d, &e, 10.0), n);
        assert_eq!(sturm_count(&d, &e, 0.0), 0);
    }

    #[test]
    fn inverse_iteration_gives_sine_modes() {
        let n = 40;
        let (d, e) = laplacian(n);
        let (lo, hi) = gershgorin(&d, &e);
        let lambda = bisect(&d, &e, 2, lo, hi);
        let v = inverse_iteration(&d, &e, lambda);
        let exact: Vec<f64> = (1..=n).map(|i| (3.0 * PI * i as f64 / (n + 1) as f64).sin()).collect();
        let norm = exact.iter().map(|x| x * x).sum::<f64>().sqrt();
        let dot: f64 = v.iter().zip(&exact).map(|(a, b)| a * b / norm).sum();
        assert!((dot.abs() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn shifted_solve_matches_product() {
        let d = vec![4.0, -1.0, 3.0, 0.5, 2.0];
        let e = vec![1.0, 2.0, -3.0, 0.7];
        let b = vec![1.0, 2.0, 3.0, 4.0, 5.0];
        let x = solve_shifted(&d, &e, 0.3, &b);
        for i in 0..5 {
            let mut r = (d[i] - 0.3) * x[i];
            if i > 0 {
                r += e[i - 1] * x[i - 1];
            }
            if i < 4 {
                r += e[i] * x[i + 1];
            }
            assert!((r - b[i]).abs() < 1e-12);
        }
    }
}
