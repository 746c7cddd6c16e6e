//! Orthogonal polynomials and quadrature rules.
//!
//! Hermite polynomials use the physicists' convention, `H_n(x)` orthogonal
//! under `e^{-x²}`. Laguerre polynomials are the plain (`k = 0`) family,
//! orthonormal under `e^{-x}` on `[0, ∞)`. Both are evaluated by their
//! three-term recurrences; combinatorial factors live in log-space.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest polynomial degree accepted by the evaluators.
pub const MAX_DEGREE: usize = 512;
/// Largest quadrature order accepted by [`make_quadrature`].
pub const MAX_ORDER: usize = 512;

fn check_degree(n: usize) -> Result<()> {
    if n > MAX_DEGREE {
        Err(Error::DegreeOverflow { degree: n, max: MAX_DEGREE })
    } else {
        Ok(())
    }
}

/// Physicists' Hermite polynomial `H_n(x)`.
pub fn hermite_poly(n: usize, x: f64) -> Result<f64> {
    check_degree(n)?;
    let (mut prev, mut cur) = (0.0, 1.0);
    for k in 0..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `H_n(z)` for complex argument; same recurrence as [`hermite_poly`].
pub fn hermite_poly_complex(n: usize, z: Complex64) -> Result<Complex64> {
    check_degree(n)?;
    let (mut prev, mut cur) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    for k in 0..n {
        let next = 2.0 * z * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Laguerre polynomial `L_n(x)`.
pub fn laguerre_poly(n: usize, x: f64) -> Result<f64> {
    check_degree(n)?;
    let (mut prev, mut cur) = (0.0, 1.0);
    for k in 0..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

const LOG_FACTORIAL_TABLE: usize = 1025;

fn log_factorial_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = Vec::with_capacity(LOG_FACTORIAL_TABLE);
        // Kahan-compensated running sum of ln k
        let (mut sum, mut carry) = (0.0f64, 0.0f64);
        table.push(0.0);
        for k in 1..LOG_FACTORIAL_TABLE {
            let y = (k as f64).ln() - carry;
            let t = sum + y;
            carry = (t - sum) - y;
            sum = t;
            table.push(sum);
        }
        table
    })
}

/// `ln(n!)`, memoized for `n ≤ 1024` and summed beyond that.
pub fn log_factorial(n: usize) -> f64 {
    let table = log_factorial_table();
    if n < table.len() {
        return table[n];
    }
    let mut sum = table[table.len() - 1];
    for k in table.len()..=n {
        sum += (k as f64).ln();
    }
    sum
}

/// Orthonormal Hermite functions `φ_k(x) = (2^k k! √π)^{-1/2} H_k(x) e^{-x²/2}`
/// for `k = 0..=nmax`.
///
/// Uses the normalized recurrence, which stays finite well past the degrees
/// where `H_k` itself overflows.
pub fn hermite_functions(nmax: usize, x: f64) -> Result<Vec<f64>> {
    check_degree(nmax)?;
    let mut out = Vec::with_capacity(nmax + 1);
    out.push(PI.powf(-0.25) * (-0.5 * x * x).exp());
    if nmax >= 1 {
        out.push(std::f64::consts::SQRT_2 * x * out[0]);
    }
    for k in 1..nmax {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
        out.push(next);
    }
    Ok(out)
}

/// Complex-argument continuation of [`hermite_functions`].
pub fn hermite_functions_complex(nmax: usize, z: Complex64) -> Result<Vec<Complex64>> {
    check_degree(nmax)?;
    let mut out = Vec::with_capacity(nmax + 1);
    out.push(PI.powf(-0.25) * (-0.5 * z * z).exp());
    if nmax >= 1 {
        out.push(std::f64::consts::SQRT_2 * z * out[0]);
    }
    for k in 1..nmax {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * z * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
        out.push(next);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadratureKind {
    /// `∫_{-∞}^{∞} e^{-x²} f(x) dx`
    GaussHermite,
    /// `∫_0^{∞} e^{-x} f(x) dx`
    GaussLaguerre,
    /// `∫_0^{2π} f(θ) dθ` for periodic `f`
    TrapezoidPeriodic,
}

/// Immutable set of nodes and weights.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    kind: QuadratureKind,
}

impl QuadratureRule {
    pub fn kind(&self) -> QuadratureKind {
        self.kind
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    /// `Σ w_k f(x_k)`; the weight function is implicit in the rule.
    pub fn sum<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.iter().map(|(x, w)| w * f(x)).sum()
    }

    pub fn sum_complex<F: FnMut(f64) -> Complex64>(&self, mut f: F) -> Complex64 {
        self.iter().map(|(x, w)| w * f(x)).sum()
    }

    /// Nodes and effective weights for `∫ g(x) dx` over the real line when
    /// `g` is roughly a Gaussian of the given centre and `scale` times a
    /// smooth factor: `x_k = centre + scale·u_k`, `W_k = scale·w_k·e^{u_k²}`.
    ///
    /// Only meaningful for Gauss-Hermite rules.
    pub fn unweighted_line(&self, centre: f64, scale: f64) -> Vec<(f64, f64)> {
        debug_assert_eq!(self.kind, QuadratureKind::GaussHermite);
        self.iter().map(|(u, w)| (centre + scale * u, scale * (w.ln() + u * u).exp())).collect()
    }
}

/// Build a quadrature rule of the given kind and order.
///
/// Gauss nodes are bracketed by Sturm-sequence bisection on the Jacobi
/// matrix and polished with Newton steps on the orthonormal recurrence;
/// weights come from the Christoffel formula evaluated in log-space.
pub fn make_quadrature(kind: QuadratureKind, order: usize) -> Result<QuadratureRule> {
    if order == 0 || order > MAX_ORDER {
        return Err(Error::UnsupportedOrder { order, max: MAX_ORDER });
    }
    let (nodes, weights) = match kind {
        QuadratureKind::GaussHermite => gauss_hermite(order),
        QuadratureKind::GaussLaguerre => gauss_laguerre(order),
        QuadratureKind::TrapezoidPeriodic => {
            let h = 2.0 * PI / order as f64;
            ((0..order).map(|k| k as f64 * h).collect(), vec![h; order])
        }
    };
    Ok(QuadratureRule { nodes, weights, kind })
}

/// Shared cache of Gauss-Hermite rules, one per order.
pub fn gauss_hermite_rule(order: usize) -> Result<&'static QuadratureRule> {
    static CACHE: OnceLock<Vec<OnceLock<QuadratureRule>>> = OnceLock::new();
    if order == 0 || order > MAX_ORDER {
        return Err(Error::UnsupportedOrder { order, max: MAX_ORDER });
    }
    let cache = CACHE.get_or_init(|| (0..=MAX_ORDER).map(|_| OnceLock::new()).collect());
    Ok(cache[order]
        .get_or_init(|| make_quadrature(QuadratureKind::GaussHermite, order).expect("order already validated")))
}

/// Eigenvalues of the symmetric tridiagonal matrix (`diag`, `off`), ascending.
fn tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Vec<f64> {
    let n = diag.len();
    // Gershgorin bounds
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for i in 0..n {
        let radius = if i > 0 { off[i - 1].abs() } else { 0.0 } + if i + 1 < n { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - radius);
        hi = hi.max(diag[i] + radius);
    }
    let count_below = |x: f64| -> usize {
        let mut count = 0;
        let mut q = diag[0] - x;
        for i in 0..n {
            if i > 0 {
                q = diag[i] - x - off[i - 1] * off[i - 1] / q;
            }
            if q == 0.0 {
                q = -f64::EPSILON * (hi - lo).abs().max(1.0);
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    };
    let tol = 4.0 * f64::EPSILON * lo.abs().max(hi.abs()).max(1.0);
    (0..n)
        .map(|k| {
            let (mut a, mut b) = (lo, hi);
            while b - a > tol {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break;
                }
                if count_below(mid) > k {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            0.5 * (a + b)
        })
        .collect()
}

/// Runs a three-term recurrence with rescaling so that large arguments do not
/// overflow. Returns `(p_n, p_{n-1}, ln_scale)` where the true values are the
/// returned ones times `e^{ln_scale}`.
fn scaled_recurrence<F>(n: usize, p0: f64, p1: f64, mut step: F) -> (f64, f64, f64)
where
    F: FnMut(usize, f64, f64) -> f64,
{
    if n == 0 {
        return (p0, 0.0, 0.0);
    }
    let (mut prev, mut cur, mut ln_scale) = (p0, p1, 0.0);
    for k in 1..n {
        let next = step(k, cur, prev);
        prev = cur;
        cur = next;
        let mag = cur.abs();
        if mag > 1e150 {
            prev /= mag;
            cur /= mag;
            ln_scale += mag.ln();
        }
    }
    (cur, prev, ln_scale)
}

/// Orthonormal Hermite polynomials (weight `e^{-x²}`) at degree `n` and `n-1`.
fn hermite_orthonormal(n: usize, x: f64) -> (f64, f64, f64) {
    let p0 = PI.powf(-0.25);
    scaled_recurrence(n, p0, std::f64::consts::SQRT_2 * x * p0, |k, cur, prev| {
        let kf = k as f64;
        (2.0 / (kf + 1.0)).sqrt() * x * cur - (kf / (kf + 1.0)).sqrt() * prev
    })
}

fn laguerre_scaled(n: usize, x: f64) -> (f64, f64, f64) {
    scaled_recurrence(n, 1.0, 1.0 - x, |k, cur, prev| {
        let kf = k as f64;
        ((2.0 * kf + 1.0 - x) * cur - kf * prev) / (kf + 1.0)
    })
}

fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    let diag = vec![0.0; n];
    let off: Vec<f64> = (1..n).map(|k| (k as f64 / 2.0).sqrt()).collect();
    let mut nodes = tridiagonal_eigenvalues(&diag, &off);
    let nf = n as f64;
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let (pn, pn1, _) = hermite_orthonormal(n, *x);
            let dp = (2.0 * nf).sqrt() * pn1;
            if dp == 0.0 {
                break;
            }
            *x -= pn / dp;
        }
    }
    // exact symmetry about the origin
    for i in 0..n / 2 {
        let m = 0.5 * (nodes[n - 1 - i] - nodes[i]);
        nodes[i] = -m;
        nodes[n - 1 - i] = m;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    let weights = nodes
        .iter()
        .map(|&x| {
            let (_, pn1, ln_scale) = hermite_orthonormal(n, x);
            (-nf.ln() - 2.0 * (pn1.abs().ln() + ln_scale)).exp()
        })
        .collect();
    (nodes, weights)
}

fn gauss_laguerre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let diag: Vec<f64> = (0..n).map(|k| 2.0 * k as f64 + 1.0).collect();
    let off: Vec<f64> = (1..n).map(|k| k as f64).collect();
    let mut nodes = tridiagonal_eigenvalues(&diag, &off);
    let nf = n as f64;
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let (ln, ln1, _) = laguerre_scaled(n, *x);
            let dp = nf * (ln - ln1) / *x;
            if dp == 0.0 {
                break;
            }
            *x -= ln / dp;
        }
    }
    let weights = nodes
        .iter()
        .map(|&x| {
            // w = 1/(x L_n'(x)²) with x L_n' = n (L_n - L_{n-1})
            let (ln, ln1, ln_scale) = laguerre_scaled(n, x);
            (x.ln() - 2.0 * nf.ln() - 2.0 * ((ln - ln1).abs().ln() + ln_scale)).exp()
        })
        .collect();
    (nodes, weights)
}
