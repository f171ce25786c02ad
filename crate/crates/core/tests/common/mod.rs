#![allow(dead_code)]

use std::path::PathBuf;

use rand::Rng;

use mirror_guard::cover::Mode;
use mirror_guard::kernel::{ConvexCell, Point, Scalar};
use mirror_guard::pipeline::Instance;

pub const CORPUS: [&str; 9] = ["triangle", "square", "hexagon", "octagon", "ell", "comb3", "comb4", "comb5", "spiral"];

pub fn instances_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../instances")
}

pub fn load(name: &str) -> Instance {
    let path = instances_dir().join(format!("{name}.json"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    Instance::from_json(&text).unwrap()
}

pub fn load_mode(name: &str, mode: Mode) -> Instance {
    let mut inst = load(name);
    inst.options.mode = mode;
    inst
}

/// A closed-cell point on a dyadic grid, by rejection over the bounding
/// box; falls back to a dyadic convex combination of the vertices.
pub fn sample_in_cell<R: Rng>(cell: &ConvexCell, rng: &mut R) -> Point {
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for v in &cell.boundary {
        let (x, y) = v.to_f64();
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    const BITS: i64 = 1 << 24;
    for _ in 0..200 {
        let x = x0 + (x1 - x0) * rng.gen::<f64>();
        let y = y0 + (y1 - y0) * rng.gen::<f64>();
        let p = Point::new(Scalar::ratio((x * BITS as f64).round() as i64, BITS), Scalar::ratio((y * BITS as f64).round() as i64, BITS));
        if cell.contains(&p) {
            return p;
        }
    }
    let w: Vec<i64> = cell.boundary.iter().map(|_| rng.gen_range(1..=64)).collect();
    let total: i64 = w.iter().sum();
    let (mut x, mut y) = (Scalar::zero(), Scalar::zero());
    for (v, &k) in cell.boundary.iter().zip(&w) {
        let t = Scalar::ratio(k, total);
        x = &x + &(&v.x * &t);
        y = &y + &(&v.y * &t);
    }
    Point::new(x, y)
}
