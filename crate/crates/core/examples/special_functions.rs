//! Bessel K1, the gamma function, the interference integral varrho and the
//! adaptive quadrature they are built on.

use mmwave_mplp::specfun::{bessel_k1, gamma_fn, integrate, sinc, varrho, QuadratureSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for mu in [1e-6, 0.1, 1.0, 10.0] {
        println!("K1({mu:e}) = {:.15e}", bessel_k1(mu)?);
    }
    for x in [0.5, 1.0 / 7.0, 1.0 - 2.5 / 7.0] {
        println!("Gamma({x:.6}) = {:.15}", gamma_fn(x)?);
    }
    println!("sinc(2.5/7) = {:.15}", sinc(2.5 / 7.0));

    let spec = QuadratureSpec::default();
    for t_db in [-10.0, 0.0, 10.0] {
        let t = 10f64.powf(t_db / 10.0);
        println!(
            "varrho({t_db} dB, alpha_l = 2.5) = {:.12}",
            varrho(t, 2.5, &spec)?
        );
    }

    // ∫_0^∞ e^{-x} x^{-1/2} dx = sqrt(pi); the endpoint singularity is fine.
    let i = integrate(|x: f64| (-x).exp() / x.sqrt(), 0.0, f64::INFINITY, &spec)?;
    println!(
        "∫ e^-x / sqrt(x) = {:.15} (error bound {:.1e}, {} subdivisions, sqrt(pi) = {:.15})",
        i.value,
        i.error_bound,
        i.subdivisions,
        std::f64::consts::PI.sqrt()
    );
    Ok(())
}
