use super::{Result, SpecFunError};
use std::f64::consts::PI;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SERIES_LIMIT: f64 = 2.0;
const MAX_ITER: usize = 10_000;

/// Modified Bessel function of the second kind, order one.
///
/// Ascending series for `mu <= 2`, Steed's continued fraction (CF2) above.
/// Both converge to full double precision; the result underflows to zero
/// beyond `mu ≈ 745`.
pub fn bessel_k1(mu: f64) -> Result<f64> {
    if !(mu > 0.0) || mu.is_nan() {
        return Err(SpecFunError::Domain {
            function: "bessel_k1",
            arg: mu,
        });
    }
    if mu.is_infinite() {
        return Ok(0.0);
    }
    if mu <= SERIES_LIMIT {
        Ok(k1_series(mu))
    } else {
        Ok(k1_continued_fraction(mu))
    }
}

// K1(x) = 1/x + ln(x/2) I1(x) - (x/4) Σ_k [ψ(k+1) + ψ(k+2)] (x²/4)^k / (k! (k+1)!)
fn k1_series(x: f64) -> f64 {
    let q = 0.25 * x * x;

    let mut i1: f64 = 0.0;
    let mut term = 0.5 * x;
    let mut k = 0.0;
    while term > 1e-18 * i1.max(f64::MIN_POSITIVE) {
        i1 += term;
        k += 1.0;
        term *= q / (k * (k + 1.0));
    }

    let mut sum = 0.0;
    let mut term = 1.0;
    let mut harmonic = 0.0;
    let mut k = 0.0;
    loop {
        let psi_sum = 2.0 * (harmonic - EULER_GAMMA) + 1.0 / (k + 1.0);
        let contrib = psi_sum * term;
        sum += contrib;
        if contrib.abs() <= 1e-18 * sum.abs() {
            break;
        }
        k += 1.0;
        harmonic += 1.0 / k;
        term *= q / (k * (k + 1.0));
    }

    1.0 / x + (0.5 * x).ln() * i1 - 0.25 * x * sum
}

// Steed's algorithm for K_0 and K_1 (Temme's normalization), order offset 0.
fn k1_continued_fraction(x: f64) -> f64 {
    let a1 = 0.25;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..MAX_ITER {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < f64::EPSILON * 0.5 {
            break;
        }
    }
    h *= a1;
    let k0 = (PI / (2.0 * x)).sqrt() * (-x).exp() / s;
    k0 * (x + 0.5 - h) / x
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn small_argument_limit() {
        let mu = 1e-6;
        assert!((mu * bessel_k1(mu).unwrap() - 1.0).abs() < 1e-4);
    }

    #[test]
    fn branches_agree_at_switch() {
        let below = k1_series(SERIES_LIMIT);
        let above = k1_continued_fraction(SERIES_LIMIT);
        assert_relative_eq!(below, above, max_relative = 1e-14);
    }

    #[test]
    fn domain_and_underflow() {
        assert!(bessel_k1(0.0).is_err());
        assert!(bessel_k1(-2.0).is_err());
        assert_eq!(bessel_k1(800.0).unwrap(), 0.0);
        assert_eq!(bessel_k1(f64::INFINITY).unwrap(), 0.0);
    }

    #[test]
    fn strictly_decreasing() {
        let xs: Vec<f64> = (0..200)
            .map(|i| 10f64.powf(-8.0 + 0.05 * i as f64))
            .collect();
        let ys: Vec<f64> = xs.iter().map(|&x| bessel_k1(x).unwrap()).collect();
        assert!(ys.windows(2).all(|w| w[1] < w[0]));
    }
}
