mod common;

use common::{lj_numerov, Numerov};

#[test]
fn oscillator_levels() {
    let n = Numerov::new(|r| r * r, 1.0, 0.0, 8.0, 20_000);
    let e = n.levels(4, 0.0, 20.0);
    for (got, want) in e.iter().zip([3.0, 7.0, 11.0, 15.0]) {
        assert!((got - want).abs() < 1e-8, "{got} vs {want}");
    }
}

#[test]
fn node_count_is_monotone() {
    let n = Numerov::new(|r| r * r, 1.0, 0.0, 8.0, 4_000);
    let counts: Vec<usize> = (0..40).map(|i| n.nodes(0.5 * i as f64).0).collect();
    assert!(counts.windows(2).all(|w| w[1] >= w[0]));
    assert_eq!(n.nodes(8.0).0, 2);
}

#[test]
fn lj_oracle_is_converged() {
    // Numerov is fourth order: halving the grid changes levels by 15x the
    // remaining error
    let fine = lj_numerov(20, 200_000);
    let coarse = lj_numerov(20, 100_000);
    for (k, (f, c)) in fine.iter().zip(&coarse).enumerate() {
        let richardson = f + (f - c) / 15.0;
        let err = ((f - richardson) / richardson).abs();
        assert!(err < 1e-7, "level {}: {f} vs extrapolated {richardson}", k + 1);
    }
    assert!((fine[0] + 0.941046).abs() < 1e-5, "{}", fine[0]);
}
