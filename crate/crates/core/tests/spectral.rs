use tripent::quadrature;
use tripent::spectral::fourier_correlation;
use tripent::*;

#[test]
fn fourier_integral_reproduces_kernel() {
    for rabi in [0.1, 1.0, 10.0] {
        for tau in [0.0, 0.1, 1.0, 5.0] {
            let est = fourier_correlation(tau, rabi, 1.0).unwrap();
            let exact = correlation_function(tau, rabi, 1.0).unwrap();
            let err = (est.value - exact).norm();
            assert!(err < 1e-6, "ℜ={rabi} τ={tau}: {err:e}");
            assert!(est.tail_bound <= 1.000_001e-10 * rabi * rabi);
        }
    }
}

#[test]
fn lorentzian_mass_is_the_weight() {
    // ∫ J over [−W, W] is (2ℜ²/π) atan(W/λ).
    for (rabi, lambda) in [(0.1, 1.0), (1.0, 0.5), (10.0, 3.0)] {
        let w = 50.0 * lambda;
        let f = |x: f64| C64::new(lorentzian_density(x, rabi, lambda).unwrap(), 0.0);
        let (mass, _) = quadrature::integrate(&f, -w, w, 1e-14);
        let expected = 2.0 * rabi * rabi / std::f64::consts::PI * (w / lambda).atan();
        assert!((mass.re - expected).abs() < 1e-10 * rabi * rabi, "ℜ={rabi} λ={lambda}");
    }
    for rabi in [0.1, 1.0, 10.0] {
        let total = fourier_correlation(0.0, rabi, 1.0).unwrap().value.re;
        assert!((total - rabi * rabi).abs() < 1e-6);
    }
}

#[test]
fn figure_regimes() {
    assert_eq!(coupling_regime(10.0, 1.0).unwrap(), CouplingRegime::Strong);
    assert_eq!(coupling_regime(0.1, 1.0).unwrap(), CouplingRegime::Weak);
}
