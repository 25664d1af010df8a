//! Low-level 1D quadrature rules and sphere-area constants.

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre polynomial. Standard construction; accurate to machine precision
/// for the orders used here (n <= a few hundred).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-based initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // evaluate P_n(x) and P_n'(x) by the three-term recurrence
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 1 { x } else { p1 };
            let pm1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * p - pm1) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// Gauss-Legendre rule mapped to [a, b].
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (xs, ws) = gauss_legendre(n);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    (
        xs.iter().map(|x| mid + half * x).collect(),
        ws.iter().map(|w| w * half).collect(),
    )
}

/// Composite midpoint nodes and weights on [a, b].
pub fn midpoint_on(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let h = (b - a) / n as f64;
    let nodes = (0..n).map(|i| a + (i as f64 + 0.5) * h).collect();
    let weights = vec![h; n];
    (nodes, weights)
}

/// Gamma at integer or half-integer arguments (given in half units, so
/// `half_units = 1` means Γ(1/2)), exact by recurrence.
fn gamma_half(half_units: usize) -> f64 {
    match half_units {
        1 => std::f64::consts::PI.sqrt(), // Γ(1/2)
        2 => 1.0,                         // Γ(1)
        _ => (half_units as f64 / 2.0 - 1.0) * gamma_half(half_units - 2),
    }
}

/// Surface area ω_k of the unit k-sphere S^k ⊂ R^{k+1}:
/// ω_k = 2 π^{(k+1)/2} / Γ((k+1)/2).
pub fn sphere_area(k: usize) -> f64 {
    2.0 * std::f64::consts::PI.powf((k as f64 + 1.0) / 2.0) / gamma_half(k + 1)
}
