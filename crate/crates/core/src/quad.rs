//! Quadrature rules: Gauss–Legendre, Gauss–Lobatto and adaptive
//! Gauss–Kronrod (7/15) with breakpoints.

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[−1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, q) = legendre_pair(n, z);
            dp = n as f64 * (z * p - q) / (z * z - 1.0);
            let dz = p / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (p, q) = legendre_pair(n, z);
        dp = if (z * z - 1.0).abs() > 0.0 {
            n as f64 * (z * p - q) / (z * z - 1.0)
        } else {
            dp
        };
        x[i] = -z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    (x, w)
}

/// `(P_n(x), P_{n−1}(x))` by the three-term recurrence.
fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    if n == 0 {
        return (p0, 0.0);
    }
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    (p1, p0)
}

/// Nodes of the `n`-point Gauss–Lobatto rule on `[−1, 1]`, ascending.
pub fn gauss_lobatto_nodes(n: usize) -> Vec<f64> {
    assert!(n >= 2);
    let big_n = n - 1;
    let mut x: Vec<f64> = (0..n)
        .map(|i| (std::f64::consts::PI * i as f64 / big_n as f64).cos())
        .collect();
    for _ in 0..200 {
        let mut delta: f64 = 0.0;
        for xi in x.iter_mut() {
            let (pn, pm) = legendre_pair(big_n, *xi);
            let step = (*xi * pn - pm) / ((big_n + 1) as f64 * pn);
            *xi -= step;
            delta = delta.max(step.abs());
        }
        if delta < 1e-16 {
            break;
        }
    }
    x[0] = 1.0;
    x[big_n] = -1.0;
    x.reverse();
    x
}

/// Lagrange basis polynomial `ℓ_j` of `nodes` evaluated at `x`.
pub fn lagrange_basis(nodes: &[f64], j: usize, x: f64) -> f64 {
    nodes
        .iter()
        .enumerate()
        .filter(|&(m, _)| m != j)
        .map(|(_, &xm)| (x - xm) / (nodes[j] - xm))
        .product()
}

/// Spectral integration matrix `S[q][r] = ∫_{−1}^{x_q} ℓ_r(x) dx`.
pub fn integration_matrix(nodes: &[f64]) -> Vec<Vec<f64>> {
    let n = nodes.len();
    let (gx, gw) = gauss_legendre(n);
    nodes
        .iter()
        .map(|&xq| {
            let half = 0.5 * (xq + 1.0);
            (0..n)
                .map(|r| {
                    gx.iter()
                        .zip(&gw)
                        .map(|(&y, &w)| w * lagrange_basis(nodes, r, -1.0 + half * (y + 1.0)))
                        .sum::<f64>()
                        * half
                })
                .collect()
        })
        .collect()
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Kronrod estimate and Gauss–Kronrod error on `[a, b]`.
pub fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let d = h * XGK[i];
        let s = f(c - d) + f(c + d);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub converged: bool,
}

/// Adaptive GK15 over `[a, b]` split first at the given breakpoints.
pub fn integrate(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    breaks: &[f64],
    rel_tol: f64,
    abs_tol: f64,
    max_panels: usize,
) -> QuadResult {
    if !(b > a) {
        return QuadResult {
            value: 0.0,
            error: 0.0,
            converged: true,
        };
    }
    let mut pts: Vec<f64> = std::iter::once(a)
        .chain(breaks.iter().copied().filter(|&p| p > a && p < b))
        .chain(std::iter::once(b))
        .collect();
    pts.sort_by(|x, y| x.total_cmp(y));
    pts.dedup();
    let mut panels: Vec<(f64, f64, f64, f64)> = pts
        .windows(2)
        .map(|w| {
            let (v, e) = gk15(&f, w[0], w[1]);
            (w[0], w[1], v, e)
        })
        .collect();
    loop {
        let value: f64 = panels.iter().map(|p| p.2).sum();
        let error: f64 = panels.iter().map(|p| p.3).sum();
        if error <= abs_tol.max(rel_tol * value.abs()) {
            return QuadResult {
                value,
                error,
                converged: true,
            };
        }
        if panels.len() >= max_panels {
            return QuadResult {
                value,
                error,
                converged: false,
            };
        }
        let (idx, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .expect("nonempty");
        let (lo, hi, _, _) = panels.swap_remove(idx);
        let mid = 0.5 * (lo + hi);
        if !(mid > lo && mid < hi) {
            return QuadResult {
                value,
                error,
                converged: false,
            };
        }
        let (v1, e1) = gk15(&f, lo, mid);
        let (v2, e2) = gk15(&f, mid, hi);
        panels.push((lo, mid, v1, e1));
        panels.push((mid, hi, v2, e2));
    }
}

/// Points `c ± 2^k` for `k = kmin, …` inside `(lo, hi)`, plus `c` itself.
pub fn geometric_breaks(c: f64, lo: f64, hi: f64, kmin: i32) -> Vec<f64> {
    let mut out = Vec::new();
    if c > lo && c < hi {
        out.push(c);
    }
    let span = (hi - lo).abs().max(1.0);
    let mut k = kmin;
    loop {
        let d = 2f64.powi(k);
        if d > span {
            break;
        }
        for p in [c - d, c + d] {
            if p > lo && p < hi {
                out.push(p);
            }
        }
        k += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_exact_for_polynomials() {
        let (x, w) = gauss_legendre(8);
        let s: f64 = w.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
        let m14: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(14)).sum();
        assert!((m14 - 2.0 / 15.0).abs() < 1e-14);
    }

    #[test]
    fn lobatto_nodes_are_extrema() {
        let x = gauss_lobatto_nodes(8);
        assert_eq!(x[0], -1.0);
        assert_eq!(x[7], 1.0);
        for &xi in &x[1..7] {
            // interior nodes are roots of P_7'
            let (p, q) = legendre_pair(7, xi);
            let dp = 7.0 * (xi * p - q) / (xi * xi - 1.0);
            assert!(dp.abs() < 1e-12, "{xi}");
        }
        for k in 1..8 {
            assert!(x[k] > x[k - 1]);
        }
    }

    #[test]
    fn integration_matrix_integrates_polynomials() {
        let x = gauss_lobatto_nodes(8);
        let s = integration_matrix(&x);
        for q in 0..8 {
            let v: f64 = (0..8).map(|r| s[q][r] * x[r].powi(6)).sum();
            let want = (x[q].powi(7) + 1.0) / 7.0;
            assert!((v - want).abs() < 1e-14);
        }
    }

    #[test]
    fn adaptive_handles_peaks() {
        let f = |x: f64| 1.0 / (1e-4 + x * x);
        let r = integrate(f, -1.0, 1.0, &[0.0], 1e-10, 0.0, 2000);
        let want = 2.0 * (1.0 / 1e-2) * (1.0f64 / 1e-2).atan();
        assert!(r.converged);
        assert!((r.value - want).abs() < 1e-8 * want);
        assert_eq!(integrate(f, 1.0, 1.0, &[], 1e-10, 0.0, 10).value, 0.0);
    }

    #[test]
    fn geometric_breaks_inside() {
        let b = geometric_breaks(0.0, -5.0, 3.0, -1);
        assert!(b.iter().all(|&p| p > -5.0 && p < 3.0));
        assert!(b.contains(&0.0) && b.contains(&2.0) && b.contains(&-4.0));
    }
}
