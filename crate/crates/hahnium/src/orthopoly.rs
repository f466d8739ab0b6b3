//! Classical and discrete orthogonal polynomials.

use crate::error::{domain, Result};
use crate::specfun::{pochhammer, HypSeriesSpec, Scalar};

/// Degree and parameter of `L_n^α`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaguerreSpec<T = f64> {
    pub degree: u64,
    pub alpha: T,
}

impl<T: Scalar> LaguerreSpec<T> {
    pub fn new(degree: u64, alpha: T) -> Self {
        Self { degree, alpha }
    }
}

/// `L_n^α(x)` by the three-term recurrence
/// `(k+1) L_{k+1} = (2k+1+α-x) L_k - (k+α) L_{k-1}`.
pub fn laguerre<T: Scalar>(spec: &LaguerreSpec<T>, x: &T) -> T {
    let alpha = &spec.alpha;
    let mut prev = T::one();
    if spec.degree == 0 {
        return prev;
    }
    let mut cur = T::one() + alpha.clone() - x.clone();
    for k in 1..spec.degree {
        let kk = T::from_i64(k as i64);
        let next = ((T::from_i64(2 * k as i64 + 1) + alpha.clone() - x.clone()) * cur.clone()
            - (kk.clone() + alpha.clone()) * prev)
            / (kk + T::one());
        prev = cur;
        cur = next;
    }
    cur
}

/// `L_n^α(x)` from the `1F1` sum, `(α+1)_n/n! · 1F1(-n; α+1; x)`.
pub fn laguerre_series<T: Scalar>(spec: &LaguerreSpec<T>, x: &T) -> Result<T> {
    let n = spec.degree;
    let a1 = spec.alpha.clone() + T::one();
    let series = HypSeriesSpec::new(vec![-T::from_i64(n as i64)], vec![a1.clone()], x.clone());
    Ok(pochhammer(&a1, n) / pochhammer(&T::one(), n) * series.sum()?)
}

pub fn laguerre_derivative<T: Scalar>(spec: &LaguerreSpec<T>, x: &T) -> T {
    if spec.degree == 0 {
        return T::zero();
    }
    let lower = LaguerreSpec::new(spec.degree - 1, spec.alpha.clone() + T::one());
    -laguerre(&lower, x)
}

/// Degree and parameters of `h_k^{(α,β)}(x, N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HahnParams<T = f64> {
    pub degree: u64,
    pub alpha: T,
    pub beta: T,
    pub n: T,
}

impl<T: Scalar> HahnParams<T> {
    pub fn new(degree: u64, alpha: T, beta: T, n: T) -> Self {
        Self {
            degree,
            alpha,
            beta,
            n,
        }
    }

    pub fn chebyshev(degree: u64, n: T) -> Self {
        Self::new(degree, T::zero(), T::zero(), n)
    }
}

/// `h_k^{(α,β)}(x,N) = (-1)^k (N-k)_k (β+1)_k / k! · 3F2(-k, α+β+k+1, -x; β+1, 1-N; 1)`.
pub fn hahn<T: Scalar>(params: &HahnParams<T>, x: &T) -> Result<T> {
    let k = params.degree;
    let kk = T::from_i64(k as i64);
    let one = T::one();
    let b1 = params.beta.clone() + one.clone();
    let series = HypSeriesSpec::unit(
        vec![
            -kk.clone(),
            params.alpha.clone() + params.beta.clone() + kk.clone() + one.clone(),
            -x.clone(),
        ],
        vec![b1.clone(), one - params.n.clone()],
    );
    let mut pref = pochhammer(&(params.n.clone() - kk), k) * pochhammer(&b1, k)
        / pochhammer(&T::one(), k);
    if k % 2 == 1 {
        pref = -pref;
    }
    Ok(pref * series.sum()?)
}

/// Discrete Chebyshev polynomial `t_k(x, N) = h_k^{(0,0)}(x, N)`.
pub fn chebyshev_discrete<T: Scalar>(k: u64, x: &T, n: &T) -> Result<T> {
    hahn(&HahnParams::chebyshev(k, n.clone()), x)
}

/// Coefficients `(α_k, β_k, γ_k)` of `x h_k = α_k h_{k+1} + β_k h_k + γ_k h_{k-1}`.
pub fn hahn_recurrence_coeffs<T: Scalar>(k: u64, alpha: &T, beta: &T, n: &T) -> (T, T, T) {
    let c = |v: i64| T::from_i64(v);
    let kk = c(k as i64);
    let ab = alpha.clone() + beta.clone();
    let a_k = (kk.clone() + c(1)) * (ab.clone() + kk.clone() + c(1))
        / ((ab.clone() + c(2) * kk.clone() + c(1)) * (ab.clone() + c(2) * kk.clone() + c(2)));
    let shift = (alpha.clone() - beta.clone() + c(2) * n.clone() - c(2)) / c(4);
    // (β²-α²)/(α+β+2k) written so that α+β = 0 at k = 0 stays finite
    let tail_num = (beta.clone() - alpha.clone()) * (ab.clone() + c(2) * n.clone());
    let tail = if k == 0 {
        tail_num / (c(4) * (ab.clone() + c(2)))
    } else {
        tail_num * ab.clone()
            / (c(4) * (ab.clone() + c(2) * kk.clone()) * (ab.clone() + c(2) * kk.clone() + c(2)))
    };
    let b_k = shift + tail;
    let g_k = if k == 0 {
        T::zero()
    } else {
        (alpha.clone() + kk.clone())
            * (beta.clone() + kk.clone())
            * (ab.clone() + n.clone() + kk.clone())
            * (n.clone() - kk.clone())
            / ((ab.clone() + c(2) * kk.clone()) * (ab + c(2) * kk + c(1)))
    };
    (a_k, b_k, g_k)
}

/// Solve the Hahn three-term recurrence for `h_{k+1}`.
pub fn hahn_recurrence_rhs<T: Scalar>(
    k: u64,
    alpha: &T,
    beta: &T,
    n: &T,
    x: &T,
    h_prev: &T,
    h_k: &T,
) -> Result<T> {
    let (a_k, b_k, g_k) = hahn_recurrence_coeffs(k, alpha, beta, n);
    if a_k.is_zero() {
        return domain(format!("Hahn recurrence coefficient alpha_{k} vanishes"));
    }
    Ok((x.clone() * h_k.clone() - b_k * h_k.clone() - g_k * h_prev.clone()) / a_k)
}

/// `P_n(x)` by Bonnet's recurrence.
pub fn legendre(n: u64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = x;
    for k in 1..n {
        let k = k as f64;
        let next = ((2.0 * k + 1.0) * x * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Jacobi polynomial `P_n^{(α,β)}(s)` by its three-term recurrence.
pub fn jacobi(n: u64, alpha: f64, beta: f64, s: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 0.5 * (alpha - beta + (alpha + beta + 2.0) * s);
    for k in 1..n {
        let k = k as f64;
        let c = 2.0 * k + alpha + beta;
        let a1 = 2.0 * (k + 1.0) * (k + alpha + beta + 1.0) * c;
        let a2 = (c + 1.0) * (alpha * alpha - beta * beta);
        let a3 = c * (c + 1.0) * (c + 2.0);
        let a4 = 2.0 * (k + alpha) * (k + beta) * (c + 2.0);
        let next = ((a2 + a3 * s) * cur - a4 * prev) / a1;
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{gamma, rational};
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        rational(n, d)
    }

    #[test]
    fn laguerre_low_orders() {
        assert_eq!(laguerre(&LaguerreSpec::new(0, 2.5), &1.7), 1.0);
        assert_eq!(laguerre(&LaguerreSpec::new(1, 2.5), &1.5), 2.0);
        for n in 0..12u64 {
            let a = 1.5;
            let v = laguerre(&LaguerreSpec::new(n, a), &0.0);
            let w = gamma(a + n as f64 + 1.0) / (gamma(n as f64 + 1.0) * gamma(a + 1.0));
            assert!((v - w).abs() <= 1e-13 * w);
        }
    }

    #[test]
    fn laguerre_recurrence_equals_series_exactly() {
        for n in 0..=10u64 {
            for a in [q(0, 1), q(1, 2), q(7, 3)] {
                for x in [q(0, 1), q(1, 2), q(3, 1), q(-5, 4)] {
                    let s = LaguerreSpec::new(n, a.clone());
                    assert_eq!(laguerre(&s, &x), laguerre_series(&s, &x).unwrap());
                }
            }
        }
    }

    #[test]
    fn laguerre_derivative_examples() {
        assert_eq!(laguerre_derivative(&LaguerreSpec::new(0, 1.0), &3.0), 0.0);
        assert_eq!(laguerre_derivative(&LaguerreSpec::new(1, 0.4), &2.0), -1.0);
        let s = LaguerreSpec::new(5, 2.0);
        let h = 1e-5;
        let fd = (laguerre(&s, &(1.3 + h)) - laguerre(&s, &(1.3 - h))) / (2.0 * h);
        assert!((laguerre_derivative(&s, &1.3) - fd).abs() < 1e-8);
    }

    #[test]
    fn hahn_examples() {
        assert_eq!(hahn(&HahnParams::new(0, 0.3, 0.7, -4.0), &2.0).unwrap(), 1.0);
        for (x, n) in [(0.0, -1.0), (3.0, -7.0), (2.5, 4.5)] {
            assert_eq!(chebyshev_discrete(1, &x, &n).unwrap(), 2.0 * x + 1.0 - n);
        }
        for n in 1..8i64 {
            for l in 0..n {
                let t = chebyshev_discrete(1, &q(n - l - 1, 1), &q(-2 * l - 1, 1)).unwrap();
                assert_eq!(t, q(2 * n, 1));
            }
        }
    }

    #[test]
    fn hahn_recurrence_reproduces_definition() {
        for (a, b, n) in [
            (q(0, 1), q(0, 1), q(-5, 1)),
            (q(1, 1), q(1, 1), q(-7, 2)),
            (q(1, 2), q(3, 1), q(6, 1)),
            (q(2, 1), q(0, 1), q(-9, 1)),
        ] {
            for x in 0..5 {
                let x = q(x, 1);
                let p = |k| HahnParams::new(k, a.clone(), b.clone(), n.clone());
                let mut prev = q(0, 1);
                let mut cur = hahn(&p(0), &x).unwrap();
                for k in 0..5u64 {
                    let next = hahn_recurrence_rhs(k, &a, &b, &n, &x, &prev, &cur).unwrap();
                    assert_eq!(next, hahn(&p(k + 1), &x).unwrap(), "k={k} a={a} b={b}");
                    prev = cur;
                    cur = next;
                }
            }
        }
    }

    #[test]
    fn hahn_recurrence_floating() {
        let (a, b, n, x) = (0.3, 1.2, -6.5, 1.7);
        let p = |k| HahnParams::new(k, a, b, n);
        for k in 1..6u64 {
            let prev = hahn(&p(k - 1), &x).unwrap();
            let cur = hahn(&p(k), &x).unwrap();
            let next = hahn_recurrence_rhs(k, &a, &b, &n, &x, &prev, &cur).unwrap();
            let direct = hahn(&p(k + 1), &x).unwrap();
            assert!((next - direct).abs() <= 1e-11 * direct.abs().max(1.0));
        }
    }

    #[test]
    fn legendre_and_jacobi() {
        assert_eq!(legendre(0, 0.3), 1.0);
        assert_eq!(legendre(1, 0.3), 0.3);
        assert!((legendre(2, 1.0) - 1.0).abs() < 1e-15);
        assert!((legendre(2, 0.5) + 0.125).abs() < 1e-15);
        assert_eq!(jacobi(0, 0.2, 0.4, 0.1), 1.0);
        assert_eq!(jacobi(1, 0.0, 0.0, 0.37), 0.37);
        for n in 0..8u64 {
            for x in [-0.9, -0.2, 0.4, 1.0] {
                assert!((jacobi(n, 0.0, 0.0, x) - legendre(n, x)).abs() < 1e-14);
            }
            let (a, b) = (1.5, 0.5);
            let at_one = pochhammer(&(a + 1.0), n) / pochhammer(&1.0, n);
            assert!((jacobi(n, a, b, 1.0) - at_one).abs() < 1e-12 * at_one);
        }
    }

    #[test]
    fn hahn_tends_to_jacobi() {
        // deviation from the Jacobi limit falls like 1/Ñ²
        let (a, b) = (0.5, 1.5);
        for n_deg in 1..=4u64 {
            for s in [-0.5, 0.0, 0.5] {
                let dev = |big: f64| {
                    let nt = big + (a + b) / 2.0;
                    let x = nt * (1.0 + s) / 2.0 - (b + 1.0) / 2.0;
                    let h = hahn(&HahnParams::new(n_deg, a, b, big), &x).unwrap();
                    (h / nt.powi(n_deg as i32) - jacobi(n_deg, a, b, s)).abs()
                };
                if n_deg == 1 {
                    // exact at degree one with this centring
                    assert!(dev(400.0) < 1e-12);
                    continue;
                }
                let r = dev(400.0) / dev(800.0);
                assert!(r > 4.0 / 1.5 && r < 4.0 * 1.5, "n={n_deg} s={s} ratio={r}");
            }
        }
    }

    proptest! {
        #[test]
        fn connection_and_mixed_recurrence(n in 1u64..=20, alpha in -0.9f64..6.0, x in 0.0f64..25.0) {
            let l = |k, a| laguerre(&LaguerreSpec::new(k, a), &x);
            let scale = 1.0 + l(n, alpha).abs() + l(n, alpha + 1.0).abs() + l(n - 1, alpha + 1.0).abs();
            let c = l(n, alpha) - (l(n, alpha + 1.0) - l(n - 1, alpha + 1.0));
            prop_assert!(c.abs() <= 1e-12 * scale);
            let lhs = x * l(n - 1, alpha + 1.0);
            let rhs = (alpha + n as f64) * l(n - 1, alpha) - n as f64 * l(n, alpha);
            let scale = 1.0 + lhs.abs() + (alpha + n as f64).abs() * l(n - 1, alpha).abs() + n as f64 * l(n, alpha).abs();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * scale);
        }

        #[test]
        fn discrete_chebyshev_positive(k in 0u64..8, extra in 0.01f64..20.0, x in 0u32..30) {
            let alpha = k as f64 + extra;
            let t = chebyshev_discrete(k, &(x as f64), &-alpha).unwrap();
            prop_assert!(t > 0.0);
        }
    }
}
