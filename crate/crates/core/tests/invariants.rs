//! Structural invariants of the channel model and the samplers.

use dipole_fade::model::{
    channel_coefficient, channel_matrix, field_vector, optimal_pte, LinkGeometry, UnitVector3,
};
use dipole_fade::montecarlo::{sample_channel, sphere_point, ChannelMode};
use dipole_fade::stats::{cdf_beta_ff, cdf_beta_nf, cdf_j_ff, cdf_j_nf};
use dipole_fade::Complex64;
use proptest::prelude::*;

fn unit() -> impl Strategy<Value = UnitVector3> {
    (0.0f64..1.0, 0.0f64..1.0).prop_map(|(a, b)| sphere_point(a, b))
}

fn alpha() -> impl Strategy<Value = Complex64> {
    (0.01f64..10.0, -3.2f64..3.2).prop_map(|(m, ph)| Complex64::from_polar(m, ph))
}

proptest! {
    #[test]
    fn pte_never_exceeds_optimum(
        kr in 1e-3f64..1e3, a in alpha(), o_tx in unit(), o_rx in unit(), d in unit(),
    ) {
        let g = LinkGeometry::new(kr, o_tx, o_rx, d, a).unwrap();
        let h = channel_coefficient(&g).value;
        prop_assert!(h.norm_sqr() <= optimal_pte(kr, a) * (1.0 + 1e-12));
    }

    #[test]
    fn link_is_reciprocal(kr in 1e-2f64..1e2, a in alpha(), o_tx in unit(), o_rx in unit(), d in unit()) {
        let m = channel_matrix(kr, a, &d);
        let h = channel_coefficient(&LinkGeometry::new(kr, o_tx, o_rx, d, a).unwrap()).value;
        let fwd = m.bilinear(&o_rx, &o_tx);
        let rev = m.bilinear(&o_tx, &o_rx);
        let scale = optimal_pte(kr, a).sqrt();
        prop_assert!((fwd - rev).norm() <= 1e-12 * scale);
        prop_assert!((fwd - h).norm() <= 1e-12 * scale);
        // Reversing the link direction leaves the channel unchanged.
        let flipped = UnitVector3::new(-d.x(), -d.y(), -d.z()).unwrap();
        prop_assert!((channel_matrix(kr, a, &flipped).bilinear(&o_rx, &o_tx) - h).norm() <= 1e-12 * scale);
    }

    #[test]
    fn projection_of_field_vector_is_the_channel(kr in 1e-2f64..1e2, a in alpha(), o_tx in unit(), o_rx in unit()) {
        let v = field_vector(kr, a, &UnitVector3::Z, &o_tx);
        let g = LinkGeometry::new(kr, o_tx, o_rx, UnitVector3::Z, a).unwrap();
        let h = channel_coefficient(&g).value;
        prop_assert!((v.project(&o_rx) - h).norm() <= 1e-12 * optimal_pte(kr, a).sqrt());
    }

    #[test]
    fn marginal_cdfs_are_valid(x in -1.0f64..1.0, y in -1.0f64..1.0) {
        let (lo, hi) = (x.min(y), x.max(y));
        for cdf in [cdf_j_nf as fn(f64) -> f64, cdf_j_ff] {
            prop_assert!(cdf(lo) <= cdf(hi) + 1e-15);
            prop_assert!((cdf(-x) - (1.0 - cdf(x))).abs() < 1e-12);
        }
        for cdf in [cdf_beta_nf as fn(f64) -> f64, cdf_beta_ff] {
            let (a, b) = (lo.abs().min(hi.abs()), lo.abs().max(hi.abs()));
            prop_assert!((0.0..=1.0).contains(&cdf(a)) && cdf(a) <= cdf(b) + 1e-15);
        }
    }

    #[test]
    fn samples_are_prefix_stable(seed in any::<u64>(), n in 1usize..200, extra in 0usize..200) {
        let a = Complex64::new(1.0, 0.0);
        let short = sample_channel(n, 2.0, a, ChannelMode::BothRandom, seed).unwrap();
        let long = sample_channel(n + extra, 2.0, a, ChannelMode::BothRandom, seed).unwrap();
        prop_assert_eq!(short.complex().unwrap(), &long.complex().unwrap()[..n]);
    }
}

#[test]
fn draws_do_not_depend_on_thread_count() {
    let a = Complex64::new(0.3, 0.4);
    let draw = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| sample_channel(100_003, 0.7, a, ChannelMode::BothRandom, 99).unwrap())
    };
    let one = draw(1);
    assert_eq!(one, draw(3));
    assert_eq!(one, draw(8));
}
