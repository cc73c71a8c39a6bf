//! Large-scale channel state via radio maps, Shannon link rates, and
//! small-scale fading.
//!
//! Optimizers consume large-scale gains only; the Monte Carlo evaluator
//! multiplies in a unit-mean fading power factor on top. A radio map is a
//! gridded snapshot of the large-scale gain over the ground plane for one
//! link class, as would be served from a pre-established database.

use alloc::vec::Vec;
use core::fmt;

use rand_core::RngCore;

use crate::geometry::Position;
use crate::math;
use crate::model::{Link, LinkKind};
use crate::rng::next_f64;

/// Log-distance path loss: `g0_db` at reference distance `d0_m`, decaying
/// `10 * exponent` dB per distance decade. Distances below `d0_m` clamp to
/// `d0_m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathLossParams {
    pub g0_db: f64,
    pub d0_m: f64,
    pub exponent: f64,
}

impl PathLossParams {
    pub fn gain_db(&self, distance_m: f64) -> f64 {
        let d = distance_m.max(self.d0_m);
        self.g0_db - 10.0 * self.exponent * math::log10(d / self.d0_m)
    }

    pub fn gain_linear(&self, distance_m: f64) -> f64 {
        math::db_to_linear(self.gain_db(distance_m))
    }
}

/// Rectangular lattice over the ground plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub origin_x: f64,
    pub origin_y: f64,
    /// Lattice spacing in meters, identical in x and y.
    pub spacing: f64,
    pub nx: usize,
    pub ny: usize,
}

/// Large-scale channel gains (dB) sampled on a ground lattice for one link
/// class. `epoch` records the scenario time the snapshot applies to.
#[derive(Debug, Clone, PartialEq)]
pub struct RadioMap {
    pub link_class: LinkKind,
    pub grid: GridSpec,
    /// Row-major, `ny` rows of `nx` values.
    pub values_db: Vec<f64>,
    pub epoch: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChannelError {
    DegenerateGrid,
}

impl fmt::Display for ChannelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChannelError::DegenerateGrid => {
                f.write_str("radio map grid needs spacing > 0 and at least 2x2 points")
            }
        }
    }
}

impl core::error::Error for ChannelError {}

impl RadioMap {
    pub fn is_valid(&self) -> bool {
        self.grid.spacing > 0.0
            && self.grid.nx >= 2
            && self.grid.ny >= 2
            && self.values_db.len() == self.grid.nx * self.grid.ny
            && self.values_db.iter().all(|v| v.is_finite())
    }

    fn value_at(&self, ix: usize, iy: usize) -> f64 {
        self.values_db[iy * self.grid.nx + ix]
    }
}

/// Evaluates a log-distance model on a grid around `grid.origin`, measured
/// to `transmitter`, producing one radio map layer. Grid points sit at
/// ground level (z = 0).
pub fn build_radio_map(
    params: &PathLossParams,
    grid: GridSpec,
    transmitter: &Position,
    link_class: LinkKind,
    epoch: f64,
) -> Result<RadioMap, ChannelError> {
    if !(grid.spacing > 0.0) || grid.nx < 2 || grid.ny < 2 {
        return Err(ChannelError::DegenerateGrid);
    }
    let mut values_db = Vec::with_capacity(grid.nx * grid.ny);
    for iy in 0..grid.ny {
        for ix in 0..grid.nx {
            let p = Position::ground(
                grid.origin_x + ix as f64 * grid.spacing,
                grid.origin_y + iy as f64 * grid.spacing,
            );
            values_db.push(params.gain_db(p.distance(transmitter)));
        }
    }
    Ok(RadioMap {
        link_class,
        grid,
        values_db,
        epoch,
    })
}

/// Bilinear interpolation of the map's dB values at the ground projection of
/// `p`, converted to a linear power gain. Points outside the grid hull clamp
/// to the nearest edge.
pub fn lookup_gain(map: &RadioMap, p: &Position) -> f64 {
    let g = &map.grid;
    let fx = ((p.x - g.origin_x) / g.spacing).clamp(0.0, (g.nx - 1) as f64);
    let fy = ((p.y - g.origin_y) / g.spacing).clamp(0.0, (g.ny - 1) as f64);
    let ix = (fx as usize).min(g.nx - 2);
    let iy = (fy as usize).min(g.ny - 2);
    let tx = fx - ix as f64;
    let ty = fy - iy as f64;
    let v00 = map.value_at(ix, iy);
    let v10 = map.value_at(ix + 1, iy);
    let v01 = map.value_at(ix, iy + 1);
    let v11 = map.value_at(ix + 1, iy + 1);
    let db = v00 * (1.0 - tx) * (1.0 - ty)
        + v10 * tx * (1.0 - ty)
        + v01 * (1.0 - tx) * ty
        + v11 * tx * ty;
    math::db_to_linear(db)
}

/// Shannon rate of a link: `B * log2(1 + p*g / (N0*B))` bits per second.
pub fn link_rate(p_tx: f64, gain: f64, link: &Link) -> f64 {
    debug_assert!(p_tx >= 0.0);
    let snr = p_tx * gain / (link.noise_psd * link.bandwidth);
    link.bandwidth * math::log2(1.0 + snr)
}

/// Small-scale fading distribution of the per-hop power factor. All
/// variants have unit mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FadingSpec {
    /// Deterministic channel: factor is exactly 1 and consumes no draws.
    None,
    /// Exponential power factor (Rayleigh amplitude).
    RayleighPower,
    /// Rician power factor with the given K-factor (line-of-sight to
    /// scattered power ratio).
    RicianPower { k_factor: f64 },
}

/// Draws one unit-mean power factor. [`FadingSpec::None`] consumes no
/// randomness so deterministic runs stay aligned regardless of trial count.
pub fn sample_fading(spec: &FadingSpec, rng: &mut impl RngCore) -> f64 {
    match *spec {
        FadingSpec::None => 1.0,
        FadingSpec::RayleighPower => {
            let u = next_f64(rng);
            -math::ln(1.0 - u)
        }
        FadingSpec::RicianPower { k_factor } => {
            if k_factor.is_infinite() {
                return 1.0;
            }
            debug_assert!(k_factor >= 0.0);
            // LOS amplitude m plus complex scatter with per-component
            // variance sigma^2; E[(m + s*z1)^2 + (s*z2)^2] = 1.
            let m = math::sqrt(k_factor / (k_factor + 1.0));
            let sigma = math::sqrt(1.0 / (2.0 * (k_factor + 1.0)));
            let u1 = 1.0 - next_f64(rng);
            let u2 = next_f64(rng);
            let r = math::sqrt(-2.0 * math::ln(u1));
            let z1 = r * math::cos(2.0 * core::f64::consts::PI * u2);
            let z2 = r * math::sin(2.0 * core::f64::consts::PI * u2);
            let re = m + sigma * z1;
            let im = sigma * z2;
            re * re + im * im
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::substream;
    use proptest::prelude::*;

    fn grid_3x3(spacing: f64) -> GridSpec {
        GridSpec {
            origin_x: 0.0,
            origin_y: 0.0,
            spacing,
            nx: 3,
            ny: 3,
        }
    }

    #[test]
    fn gain_at_reference_distance_is_g0() {
        let params = PathLossParams {
            g0_db: -40.0,
            d0_m: 100.0,
            exponent: 2.5,
        };
        // Transmitter 100 m above the grid origin, so the origin lattice
        // point sits exactly at the reference distance.
        let map = build_radio_map(
            &params,
            grid_3x3(1_000.0),
            &Position::new(0.0, 0.0, 100.0),
            LinkKind::UserAccess,
            0.0,
        )
        .unwrap();
        assert!((map.value_at(0, 0) - -40.0).abs() < 1e-12);
    }

    #[test]
    fn zero_exponent_gives_uniform_map() {
        let params = PathLossParams {
            g0_db: -55.0,
            d0_m: 1.0,
            exponent: 0.0,
        };
        let map = build_radio_map(
            &params,
            grid_3x3(500.0),
            &Position::new(123.0, -77.0, 900.0),
            LinkKind::UserSatellite,
            0.0,
        )
        .unwrap();
        assert!(map.values_db.iter().all(|v| (v - -55.0).abs() < 1e-12));
    }

    #[test]
    fn log_distance_value_at_ten_km() {
        let params = PathLossParams {
            g0_db: -60.0,
            d0_m: 1_000.0,
            exponent: 2.0,
        };
        assert!((params.gain_db(10_000.0) - -80.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_grid_is_rejected() {
        let params = PathLossParams {
            g0_db: -60.0,
            d0_m: 1.0,
            exponent: 2.0,
        };
        let bad = GridSpec {
            origin_x: 0.0,
            origin_y: 0.0,
            spacing: 10.0,
            nx: 1,
            ny: 3,
        };
        assert_eq!(
            build_radio_map(&params, bad, &Position::ground(0.0, 0.0), LinkKind::Feeder, 0.0),
            Err(ChannelError::DegenerateGrid)
        );
    }

    fn hand_map(values: [f64; 4]) -> RadioMap {
        RadioMap {
            link_class: LinkKind::UserAccess,
            grid: GridSpec {
                origin_x: 0.0,
                origin_y: 0.0,
                spacing: 100.0,
                nx: 2,
                ny: 2,
            },
            values_db: values.into(),
            epoch: 0.0,
        }
    }

    #[test]
    fn lookup_on_lattice_node_is_exact() {
        let map = hand_map([-60.0, -70.0, -65.0, -75.0]);
        let g = lookup_gain(&map, &Position::ground(100.0, 0.0));
        assert!((g - math::db_to_linear(-70.0)).abs() < 1e-18);
    }

    #[test]
    fn lookup_midpoint_averages_db() {
        let map = hand_map([-60.0, -80.0, -60.0, -80.0]);
        let g = lookup_gain(&map, &Position::ground(50.0, 0.0));
        assert!((g - 1.0e-7).abs() < 1e-16);
    }

    #[test]
    fn lookup_matches_independent_bilinear_formula() {
        let map = hand_map([-61.0, -72.5, -66.25, -79.0]);
        let (x, y) = (37.0, 81.5);
        let (tx, ty) = (x / 100.0, y / 100.0);
        let expected_db = -61.0 * (1.0 - tx) * (1.0 - ty)
            + -72.5 * tx * (1.0 - ty)
            + -66.25 * (1.0 - tx) * ty
            + -79.0 * tx * ty;
        let g = lookup_gain(&map, &Position::ground(x, y));
        assert!((g - math::db_to_linear(expected_db)).abs() / g < 1e-12);
    }

    #[test]
    fn out_of_grid_lookup_clamps_to_edge() {
        let map = hand_map([-60.0, -70.0, -65.0, -75.0]);
        let inside = lookup_gain(&map, &Position::ground(0.0, 0.0));
        let outside = lookup_gain(&map, &Position::ground(-500.0, -500.0));
        assert_eq!(inside, outside);
    }

    fn test_link(bandwidth: f64) -> Link {
        Link::new("a", "b", LinkKind::UserAccess)
            .with_bandwidth(bandwidth)
            .with_noise_psd(4.0e-21)
    }

    #[test]
    fn zero_power_gives_zero_rate() {
        assert_eq!(link_rate(0.0, 1e-8, &test_link(1e7)), 0.0);
    }

    #[test]
    fn rate_at_15_db_snr() {
        let link = test_link(1.0e7);
        // Pick gain so p*g/(N0*B) is exactly 10^1.5.
        let snr = math::db_to_linear(15.0);
        let gain = snr * link.noise_psd * link.bandwidth;
        let rate = link_rate(1.0, gain, &link);
        let expected = 1.0e7 * math::log2(1.0 + snr);
        assert!((rate - expected).abs() / expected < 1e-12);
        assert!((rate - 50.278e6).abs() / 50.278e6 < 1e-3);
    }

    #[test]
    fn doubling_power_at_high_snr_adds_one_bit_per_hz() {
        let link = test_link(1.0e7);
        let snr = math::db_to_linear(30.0);
        let gain = snr * link.noise_psd * link.bandwidth;
        let delta = link_rate(2.0, gain, &link) - link_rate(1.0, gain, &link);
        assert!((delta - 1.0e7).abs() / 1.0e7 < 0.05);
    }

    #[test]
    fn no_fading_is_exactly_one() {
        let mut rng = substream(1, 0);
        assert_eq!(sample_fading(&FadingSpec::None, &mut rng), 1.0);
    }

    #[test]
    fn rayleigh_power_mean_is_one() {
        let mut rng = substream(2024, 0);
        let n = 100_000;
        let mean: f64 = (0..n)
            .map(|_| sample_fading(&FadingSpec::RayleighPower, &mut rng))
            .sum::<f64>()
            / n as f64;
        assert!((mean - 1.0).abs() < 0.01, "mean {mean}");
    }

    #[test]
    fn rician_power_mean_is_one() {
        let mut rng = substream(2024, 1);
        let spec = FadingSpec::RicianPower { k_factor: 4.0 };
        let n = 100_000;
        let mean: f64 = (0..n).map(|_| sample_fading(&spec, &mut rng)).sum::<f64>() / n as f64;
        assert!((mean - 1.0).abs() < 0.015, "mean {mean}");
    }

    #[test]
    fn rician_large_k_degenerates_to_one() {
        let mut rng = substream(2024, 2);
        let spec = FadingSpec::RicianPower { k_factor: 1.0e12 };
        for _ in 0..100 {
            let f = sample_fading(&spec, &mut rng);
            assert!((f - 1.0).abs() < 1e-4, "factor {f}");
        }
        assert_eq!(
            sample_fading(
                &FadingSpec::RicianPower {
                    k_factor: f64::INFINITY
                },
                &mut rng
            ),
            1.0
        );
    }

    proptest! {
        #[test]
        fn rate_is_increasing_and_concave_in_power(
            gain_db in -120.0f64..-40.0,
            bandwidth in 1e5f64..1e8,
            p in 0.01f64..10.0,
        ) {
            let link = test_link(bandwidth);
            let gain = math::db_to_linear(gain_db);
            let h = p * 1e-4;
            let r0 = link_rate(p - h, gain, &link);
            let r1 = link_rate(p, gain, &link);
            let r2 = link_rate(p + h, gain, &link);
            prop_assert!(r1 > r0);
            prop_assert!(r2 > r1);
            // Concavity: the second difference is nonpositive.
            prop_assert!(r2 - 2.0 * r1 + r0 <= 1e-9 * r1.max(1.0));
        }

        #[test]
        fn lookup_is_continuous_across_cell_boundaries(
            x in 0.0f64..200.0,
            y in 0.0f64..200.0,
        ) {
            let map = RadioMap {
                link_class: LinkKind::UserAccess,
                grid: GridSpec { origin_x: 0.0, origin_y: 0.0, spacing: 100.0, nx: 3, ny: 3 },
                values_db: alloc::vec![-60.0, -70.0, -65.0, -62.0, -71.0, -64.0, -66.0, -68.0, -73.0],
                epoch: 0.0,
            };
            let eps = 1e-7;
            let a = lookup_gain(&map, &Position::ground(x - eps, y));
            let b = lookup_gain(&map, &Position::ground(x + eps, y));
            let c = lookup_gain(&map, &Position::ground(x, y - eps));
            let d = lookup_gain(&map, &Position::ground(x, y + eps));
            prop_assert!((a - b).abs() / a < 1e-6);
            prop_assert!((c - d).abs() / c < 1e-6);
        }

        #[test]
        fn fading_factors_are_nonnegative(seed in 0u64..1000) {
            let mut rng = substream(seed, 0);
            let specs = [
                FadingSpec::RayleighPower,
                FadingSpec::RicianPower { k_factor: 0.0 },
                FadingSpec::RicianPower { k_factor: 7.5 },
            ];
            for spec in &specs {
                for _ in 0..64 {
                    prop_assert!(sample_fading(spec, &mut rng) >= 0.0);
                }
            }
        }
    }
}
