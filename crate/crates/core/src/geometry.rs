//! Positions, satellite motion, visibility windows, UAV placement and
//! propagation delays.
//!
//! Satellite motion is deliberately simple: a GEO satellite hovers above a
//! configured ground point, a LEO satellite repeats a straight ground track
//! at constant speed with period `pass_period`. Coverage is a ground
//! footprint disk of radius `coverage_radius` around the sub-satellite
//! point. This keeps every quantity closed-form while still producing the
//! limited-coverage-time behavior that matters for orchestration.

use alloc::vec::Vec;

use rand_core::{RngCore, SeedableRng};

use crate::math;
use crate::SPEED_OF_LIGHT;

/// A point in a fixed Cartesian ground frame, meters. `z` is altitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Position {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Position {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    /// Ground-level point (z = 0).
    pub const fn ground(x: f64, y: f64) -> Self {
        Self { x, y, z: 0.0 }
    }

    pub fn is_valid(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite() && self.z >= 0.0
    }

    /// 3-D Euclidean distance in meters.
    pub fn distance(&self, other: &Position) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        let dz = self.z - other.z;
        math::sqrt(dx * dx + dy * dy + dz * dz)
    }

    /// Distance between the ground projections, ignoring altitude.
    pub fn ground_distance(&self, other: &Position) -> f64 {
        math::hypot(self.x - other.x, self.y - other.y)
    }
}

/// Satellite orbit abstraction: either geostationary above a ground point or
/// a straight, periodically repeated LEO ground track.
#[derive(Debug, Clone, PartialEq)]
pub enum OrbitDescriptor {
    Geo {
        /// Ground point the satellite hovers above.
        ground_x: f64,
        ground_y: f64,
        /// Orbit altitude in meters.
        altitude: f64,
        /// Ground footprint radius in meters.
        coverage_radius: f64,
    },
    LeoTrack {
        /// Start of the ground track at t = 0 (and every `pass_period`).
        origin_x: f64,
        origin_y: f64,
        /// Track direction; normalized internally.
        dir_x: f64,
        dir_y: f64,
        /// Sub-satellite point speed along the track, m/s.
        ground_speed: f64,
        /// Seconds between successive passes over the same track point.
        pass_period: f64,
        /// Orbit altitude in meters.
        altitude: f64,
        /// Ground footprint radius in meters.
        coverage_radius: f64,
    },
}

impl OrbitDescriptor {
    pub fn altitude(&self) -> f64 {
        match *self {
            OrbitDescriptor::Geo { altitude, .. } => altitude,
            OrbitDescriptor::LeoTrack { altitude, .. } => altitude,
        }
    }

    pub fn coverage_radius(&self) -> f64 {
        match *self {
            OrbitDescriptor::Geo {
                coverage_radius, ..
            } => coverage_radius,
            OrbitDescriptor::LeoTrack {
                coverage_radius, ..
            } => coverage_radius,
        }
    }

    pub fn is_valid(&self) -> bool {
        match *self {
            OrbitDescriptor::Geo {
                ground_x,
                ground_y,
                altitude,
                coverage_radius,
            } => {
                ground_x.is_finite()
                    && ground_y.is_finite()
                    && altitude > 0.0
                    && coverage_radius > 0.0
            }
            OrbitDescriptor::LeoTrack {
                origin_x,
                origin_y,
                dir_x,
                dir_y,
                ground_speed,
                pass_period,
                altitude,
                coverage_radius,
            } => {
                origin_x.is_finite()
                    && origin_y.is_finite()
                    && math::hypot(dir_x, dir_y) > 0.0
                    && ground_speed >= 0.0
                    && pass_period > 0.0
                    && altitude > 0.0
                    && coverage_radius > 0.0
            }
        }
    }
}

/// A closed interval of time, seconds from the scenario epoch, during which
/// the satellite footprint covers a ground point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VisibilityWindow {
    pub start: f64,
    pub end: f64,
}

/// Straight-line propagation delay between two positions.
pub fn propagation_delay(a: &Position, b: &Position) -> f64 {
    a.distance(b) / SPEED_OF_LIGHT
}

/// Satellite position at time `t` seconds.
///
/// GEO satellites are fixed above their ground point. LEO satellites advance
/// along the track by `ground_speed * (t mod pass_period)`, restarting at the
/// origin every pass.
pub fn satellite_position(orbit: &OrbitDescriptor, t: f64) -> Position {
    debug_assert!(t >= 0.0);
    match *orbit {
        OrbitDescriptor::Geo {
            ground_x,
            ground_y,
            altitude,
            ..
        } => Position::new(ground_x, ground_y, altitude),
        OrbitDescriptor::LeoTrack {
            origin_x,
            origin_y,
            dir_x,
            dir_y,
            ground_speed,
            pass_period,
            altitude,
            ..
        } => {
            let norm = math::hypot(dir_x, dir_y);
            let (ux, uy) = (dir_x / norm, dir_y / norm);
            let tau = t.rem_euclid(pass_period);
            let s = ground_speed * tau;
            Position::new(origin_x + ux * s, origin_y + uy * s, altitude)
        }
    }
}

/// Time intervals within `[0, t_end]` during which `ground` lies inside the
/// satellite's footprint (ground-projected distance <= coverage radius).
///
/// Windows are disjoint, sorted and clipped to the horizon.
pub fn visibility_windows(
    orbit: &OrbitDescriptor,
    ground: &Position,
    t_end: f64,
) -> Vec<VisibilityWindow> {
    assert!(t_end > 0.0, "horizon must be positive");
    let full = |covered: bool| -> Vec<VisibilityWindow> {
        if covered {
            alloc::vec![VisibilityWindow {
                start: 0.0,
                end: t_end,
            }]
        } else {
            Vec::new()
        }
    };

    match *orbit {
        OrbitDescriptor::Geo {
            ground_x,
            ground_y,
            coverage_radius,
            ..
        } => full(math::hypot(ground_x - ground.x, ground_y - ground.y) <= coverage_radius),
        OrbitDescriptor::LeoTrack {
            origin_x,
            origin_y,
            dir_x,
            dir_y,
            ground_speed,
            pass_period,
            coverage_radius,
            ..
        } => {
            let norm = math::hypot(dir_x, dir_y);
            let (ux, uy) = (dir_x / norm, dir_y / norm);
            let (rx, ry) = (origin_x - ground.x, origin_y - ground.y);
            if ground_speed == 0.0 {
                return full(math::hypot(rx, ry) <= coverage_radius);
            }
            // |rel + u*v*tau|^2 <= r^2, quadratic in local pass time tau.
            let a = ground_speed * ground_speed;
            let b = 2.0 * ground_speed * (ux * rx + uy * ry);
            let c = rx * rx + ry * ry - coverage_radius * coverage_radius;
            let disc = b * b - 4.0 * a * c;
            if disc < 0.0 {
                return Vec::new();
            }
            let sqrt_disc = math::sqrt(disc);
            let t1 = (-b - sqrt_disc) / (2.0 * a);
            let t2 = (-b + sqrt_disc) / (2.0 * a);
            if t1 <= 0.0 && t2 >= pass_period {
                return full(true);
            }
            let lo = t1.max(0.0);
            let hi = t2.min(pass_period);
            if lo >= hi {
                return Vec::new();
            }
            let mut windows = Vec::new();
            let mut k = 0.0;
            loop {
                let start = k * pass_period + lo;
                if start >= t_end {
                    break;
                }
                let end = (k * pass_period + hi).min(t_end);
                if end > start {
                    windows.push(VisibilityWindow { start, end });
                }
                k += 1.0;
            }
            windows
        }
    }
}

/// Fixed seed for the deterministic UAV placement clustering.
const PLACEMENT_SEED: u64 = 0x5a74_ec01;

/// Number of deterministic clustering restarts tried by [`place_uavs`].
const PLACEMENT_RESTARTS: usize = 8;

/// Places `n` UAVs at `altitude` above cluster centers of the MTD ground
/// positions.
///
/// Clustering is Lloyd iteration over ground coordinates. Restart 0 is
/// seeded by farthest-point traversal from a fixed master seed; the
/// remaining restarts use distance-weighted seeding from the same stream.
/// The best objective wins, so the whole procedure is deterministic. When
/// `n` exceeds the MTD count, each MTD gets a dedicated overhead UAV and the
/// extras hover at the global centroid. Returned positions are sorted by
/// `(x, y)`.
pub fn place_uavs(mtd_positions: &[Position], n: usize, altitude: f64) -> Vec<Position> {
    assert!(n >= 1, "at least one UAV required");
    assert!(!mtd_positions.is_empty(), "at least one MTD required");

    let points: Vec<(f64, f64)> = mtd_positions.iter().map(|p| (p.x, p.y)).collect();

    let mut centers = if n >= points.len() {
        let mut c = points.clone();
        let cx = points.iter().map(|p| p.0).sum::<f64>() / points.len() as f64;
        let cy = points.iter().map(|p| p.1).sum::<f64>() / points.len() as f64;
        c.resize(n, (cx, cy));
        c
    } else {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(PLACEMENT_SEED);
        let mut best: Option<(f64, Vec<(f64, f64)>)> = None;
        for restart in 0..PLACEMENT_RESTARTS {
            let init = if restart == 0 {
                seed_farthest_point(&points, n, &mut rng)
            } else {
                seed_distance_weighted(&points, n, &mut rng)
            };
            let (centers, objective, _) = lloyd(&points, init);
            let better = match &best {
                None => true,
                Some((obj, _)) => objective < *obj,
            };
            if better {
                best = Some((objective, centers));
            }
        }
        best.expect("at least one restart ran").1
    };

    centers.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    centers
        .into_iter()
        .map(|(x, y)| Position::new(x, y, altitude))
        .collect()
}

/// Maps each MTD to the UAV minimizing 3-D Euclidean distance; ties go to
/// the lowest UAV index. Returns one UAV index per MTD, in input order.
pub fn nearest_association(mtd_positions: &[Position], uav_positions: &[Position]) -> Vec<usize> {
    assert!(!uav_positions.is_empty(), "at least one UAV required");
    mtd_positions
        .iter()
        .map(|m| {
            let mut best = 0usize;
            let mut best_d = f64::INFINITY;
            for (j, u) in uav_positions.iter().enumerate() {
                let d = m.distance(u);
                if d < best_d {
                    best_d = d;
                    best = j;
                }
            }
            best
        })
        .collect()
}

fn squared_ground_dist(a: (f64, f64), b: (f64, f64)) -> f64 {
    let dx = a.0 - b.0;
    let dy = a.1 - b.1;
    dx * dx + dy * dy
}

/// Farthest-point traversal: first center drawn from `rng`, each subsequent
/// center is the point farthest from the chosen set (ties: lowest index).
fn seed_farthest_point(
    points: &[(f64, f64)],
    k: usize,
    rng: &mut impl RngCore,
) -> Vec<(f64, f64)> {
    let first = (rng.next_u64() % points.len() as u64) as usize;
    let mut centers = alloc::vec![points[first]];
    while centers.len() < k {
        let mut best_idx = 0usize;
        let mut best_d = -1.0f64;
        for (i, p) in points.iter().enumerate() {
            let d = centers
                .iter()
                .map(|c| squared_ground_dist(*p, *c))
                .fold(f64::INFINITY, f64::min);
            if d > best_d {
                best_d = d;
                best_idx = i;
            }
        }
        centers.push(points[best_idx]);
    }
    centers
}

/// Distance-weighted seeding: each next center drawn with probability
/// proportional to squared distance from the chosen set.
fn seed_distance_weighted(
    points: &[(f64, f64)],
    k: usize,
    rng: &mut impl RngCore,
) -> Vec<(f64, f64)> {
    let first = (rng.next_u64() % points.len() as u64) as usize;
    let mut centers = alloc::vec![points[first]];
    while centers.len() < k {
        let weights: Vec<f64> = points
            .iter()
            .map(|p| {
                centers
                    .iter()
                    .map(|c| squared_ground_dist(*p, *c))
                    .fold(f64::INFINITY, f64::min)
            })
            .collect();
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            // All points already chosen as centers; duplicate the first.
            centers.push(points[0]);
            continue;
        }
        let u = (rng.next_u64() as f64 / u64::MAX as f64) * total;
        let mut acc = 0.0;
        let mut chosen = points.len() - 1;
        for (i, w) in weights.iter().enumerate() {
            acc += w;
            if u <= acc {
                chosen = i;
                break;
            }
        }
        centers.push(points[chosen]);
    }
    centers
}

/// Lloyd iteration. Returns final centers, the final objective (sum of
/// squared ground distances to assigned centers) and the objective after
/// each assignment step.
fn lloyd(
    points: &[(f64, f64)],
    mut centers: Vec<(f64, f64)>,
) -> (Vec<(f64, f64)>, f64, Vec<f64>) {
    let k = centers.len();
    let mut assignment = alloc::vec![usize::MAX; points.len()];
    let mut history = Vec::new();
    for _ in 0..100 {
        // Assignment step; ties break to the lowest center index.
        let mut changed = false;
        let mut objective = 0.0;
        for (i, p) in points.iter().enumerate() {
            let mut best = 0usize;
            let mut best_d = f64::INFINITY;
            for (j, c) in centers.iter().enumerate() {
                let d = squared_ground_dist(*p, *c);
                if d < best_d {
                    best_d = d;
                    best = j;
                }
            }
            if assignment[i] != best {
                assignment[i] = best;
                changed = true;
            }
            objective += best_d;
        }
        history.push(objective);
        if !changed {
            break;
        }
        // Update step: move each center to its cluster centroid. Empty
        // clusters are reseeded at the point farthest from all centers.
        for j in 0..k {
            let members: Vec<usize> = (0..points.len())
                .filter(|&i| assignment[i] == j)
                .collect();
            if members.is_empty() {
                let mut far_idx = 0usize;
                let mut far_d = -1.0;
                for (i, p) in points.iter().enumerate() {
                    let d = centers
                        .iter()
                        .map(|c| squared_ground_dist(*p, *c))
                        .fold(f64::INFINITY, f64::min);
                    if d > far_d {
                        far_d = d;
                        far_idx = i;
                    }
                }
                centers[j] = points[far_idx];
            } else {
                let sx: f64 = members.iter().map(|&i| points[i].0).sum();
                let sy: f64 = members.iter().map(|&i| points[i].1).sum();
                centers[j] = (sx / members.len() as f64, sy / members.len() as f64);
            }
        }
    }
    let objective = *history.last().expect("at least one iteration");
    (centers, objective, history)
}
