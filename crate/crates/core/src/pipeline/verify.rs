use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::kernel::Point;
use crate::mirror::sees_any;
use crate::polygon::SimplePolygon;

/// Sampling grid: 2^20 steps per bounding-box side.
const GRID_BITS: u32 = 20;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub samples: usize,
    pub seed: u64,
    pub reflection: bool,
    pub pass: bool,
    pub failures: Vec<[String; 2]>,
}

/// Seeded interior samples, each of which must be seen by some guard
/// directly or (with `reflection`) through one mirror bounce.
pub fn verify(p: &SimplePolygon, guards: &[Point], samples: usize, seed: u64, reflection: bool) -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..samples {
        let z = p.sample_interior(&mut rng, GRID_BITS);
        if !guards.iter().any(|g| sees_any(p, g, &z, reflection)) {
            failures.push([z.x.to_string(), z.y.to_string()]);
        }
    }
    VerifyReport { samples, seed, reflection, pass: failures.is_empty(), failures }
}
