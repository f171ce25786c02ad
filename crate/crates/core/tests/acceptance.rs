//! Acceptance run over the instance corpus. Prints one PASS/FAIL line per
//! criterion and fails if any criterion fails.

mod common;

use std::io::Write;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{load_mode, sample_in_cell, CORPUS};
use mirror_guard::cover::Mode;
use mirror_guard::decompose::vl_of_point;
use mirror_guard::kernel::{reflect_point, Line, Point, Scalar, Segment};
use mirror_guard::mirror::{dmvm_solve, reflected_region, reflects, sees_any};
use mirror_guard::pipeline::{harmonic, render_svg, solve, Instance, Run, SvgOptions};
use mirror_guard::polygon::SimplePolygon;

struct Solved {
    name: &'static str,
    mode: Mode,
    inst: Instance,
    run: Run,
    secs: f64,
}

struct Board {
    results: Vec<bool>,
}

impl Board {
    fn report(&mut self, n: usize, title: &str, pass: bool, detail: String) {
        // straight to the handle so the line shows without --nocapture
        let line = format!("criterion {n} {title}: {} ({detail})\n", if pass { "PASS" } else { "FAIL" });
        let _ = std::io::stdout().write_all(line.as_bytes());
        self.results.push(pass);
    }
}

fn solve_corpus() -> Vec<Solved> {
    let mut out = Vec::new();
    for name in CORPUS {
        for mode in [Mode::Reflection, Mode::DirectOnly] {
            let mut inst = load_mode(name, mode);
            inst.options.exact_cover = true;
            inst.options.exact_cap = 200;
            if name.starts_with("comb") {
                inst.options.samples = 10_000;
                inst.options.seed = 7;
            }
            let t = Instant::now();
            let run = solve(&inst).unwrap_or_else(|e| panic!("{name} {mode:?}: {e}"));
            let secs = t.elapsed().as_secs_f64();
            eprintln!("solved {name} {mode:?}: {} cells, {} regions, {secs:.1}s", run.scrs.len(), run.grs.len());
            out.push(Solved { name, mode, inst, run, secs });
        }
    }
    out
}

fn c1_combs(all: &[Solved], b: &mut Board) {
    let mut ok = true;
    let mut parts = Vec::new();
    for k in 3..=5 {
        let name = format!("comb{k}");
        for s in all.iter().filter(|s| s.name == name) {
            let r = &s.run.report;
            let want = if s.mode == Mode::Reflection { 1 } else { k };
            let verified = r.verify.as_ref().is_some_and(|v| v.pass && v.samples == 10_000);
            let good = r.exact_size == Some(want) && verified && s.secs < 60.0;
            ok &= good;
            parts.push(format!("{name}/{:?} exact={:?} want={want} verify={verified} {:.1}s", s.mode, r.exact_size, s.secs));
        }
    }
    b.report(1, "comb guard counts", ok, parts.join("; "));
}

fn c2_partition(all: &[Solved], b: &mut Board) {
    let mut bad = Vec::new();
    for s in all {
        let p = &s.inst.polygon;
        let total = s.run.scrs.cells.iter().fold(Scalar::zero(), |a, c| &a + &c.area());
        if total != p.area() {
            bad.push(format!("{} cells", s.name));
        }
        for c in &s.run.scrs.cells {
            let sum = s.run.grs.iter().filter(|g| g.scr == c.id).fold(Scalar::zero(), |a, g| &a + &g.region.area());
            if sum != c.area() {
                bad.push(format!("{}/{:?} cell {}", s.name, s.mode, c.id));
            }
        }
    }
    let detail = if bad.is_empty() { format!("{} runs exact", all.len()) } else { bad.join(", ") };
    b.report(2, "partition exactness", bad.is_empty(), detail);
}

// f64 oracle for one-bounce visibility.

type F = (f64, f64);

fn sub(a: F, b: F) -> F {
    (a.0 - b.0, a.1 - b.1)
}

fn dot(a: F, b: F) -> f64 {
    a.0 * b.0 + a.1 * b.1
}

fn cross(a: F, b: F) -> f64 {
    a.0 * b.1 - a.1 * b.0
}

fn norm(a: F) -> f64 {
    dot(a, a).sqrt()
}

fn seg_point_dist(p: F, a: F, b: F) -> f64 {
    let d = sub(b, a);
    let t = (dot(sub(p, a), d) / dot(d, d)).clamp(0.0, 1.0);
    norm(sub(p, (a.0 + t * d.0, a.1 + t * d.1)))
}

/// `(blocked, robustness)` of segment `ab` against boundary segment `uw`.
fn seg_vs_edge(a: F, b: F, u: F, w: F) -> (bool, f64) {
    let lab = norm(sub(b, a));
    let luw = norm(sub(w, u));
    let d1 = cross(sub(b, a), sub(u, a)) / lab;
    let d2 = cross(sub(b, a), sub(w, a)) / lab;
    let d3 = cross(sub(w, u), sub(a, u)) / luw;
    let d4 = cross(sub(w, u), sub(b, u)) / luw;
    if d1 * d2 < 0.0 && d3 * d4 < 0.0 {
        return (true, d1.abs().min(d2.abs()).min(d3.abs()).min(d4.abs()));
    }
    let dist = seg_point_dist(u, a, b).min(seg_point_dist(w, a, b)).min(seg_point_dist(a, u, w)).min(seg_point_dist(b, u, w));
    (false, dist)
}

/// `(visible, margin)` of segment `ab` with `a` inside, ignoring edge `skip`.
fn seg_clear(vs: &[F], a: F, b: F, skip: usize) -> (bool, f64) {
    let n = vs.len();
    let mut clear = f64::INFINITY;
    let mut block = 0.0f64;
    for j in (0..n).filter(|&j| j != skip) {
        let (blocked, r) = seg_vs_edge(a, b, vs[j], vs[(j + 1) % n]);
        if blocked {
            block = block.max(r);
        } else {
            clear = clear.min(r);
        }
    }
    if block > 0.0 {
        (false, block)
    } else {
        (true, clear)
    }
}

/// Dense-sampling oracle: mirror samples, reflection-law root by
/// bisection, then clearance of both legs.
fn bounce_oracle(vs: &[F], x: F, y: F, e: usize) -> (bool, f64) {
    const SAMPLES: usize = 10_000;
    let a = vs[e];
    let b = vs[(e + 1) % vs.len()];
    let len = norm(sub(b, a));
    let u = ((b.0 - a.0) / len, (b.1 - a.1) / len);
    let nrm = (-u.1, u.0);
    let hx = dot(sub(x, a), nrm);
    let hy = dot(sub(y, a), nrm);
    if hx < 0.0 || hy < 0.0 {
        return (false, (-hx).max(-hy));
    }
    let at = |t: f64| (a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1));
    let f = |t: f64| {
        let m = at(t);
        let (dx, dy) = (sub(x, m), sub(y, m));
        dot(dx, nrm).atan2(dot(dx, u)) + dot(dy, nrm).atan2(dot(dy, u)) - std::f64::consts::PI
    };
    let mut bracket = None;
    let mut prev = f(0.0);
    let mut fmin = prev.abs();
    for i in 1..=SAMPLES {
        let t = i as f64 / SAMPLES as f64;
        let cur = f(t);
        fmin = fmin.min(cur.abs());
        if prev <= 0.0 && cur >= 0.0 || prev >= 0.0 && cur <= 0.0 {
            bracket = Some(((i - 1) as f64 / SAMPLES as f64, t));
            break;
        }
        prev = cur;
    }
    let Some((mut lo, mut hi)) = bracket else {
        return (false, fmin);
    };
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm.abs() < 1e-9 && hi - lo < 1e-14 {
            break;
        }
        if (f(lo) <= 0.0) == (fm <= 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = 0.5 * (lo + hi);
    let m = at(t);
    let end_margin = t.min(1.0 - t) * len;
    let (v1, m1) = seg_clear(vs, x, m, e);
    let (v2, m2) = seg_clear(vs, y, m, e);
    match (v1, v2) {
        (true, true) => (true, end_margin.min(m1).min(m2).min(hx).min(hy)),
        (false, false) => (false, m1.max(m2)),
        (false, true) => (false, m1),
        (true, false) => (false, m2),
    }
}

fn c3_reflected_oracle(b: &mut Board) {
    const TRIPLES: usize = 1000;
    const MARGIN: f64 = 1e-6;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut checked, mut seen, mut skipped, mut disagree, mut recheck_bad) = (0, 0, 0, 0, 0);
    for name in CORPUS {
        let p: SimplePolygon = load_mode(name, Mode::Reflection).polygon;
        let vs: Vec<F> = p.vertices().iter().map(|v| v.to_f64()).collect();
        for _ in 0..TRIPLES {
            let x = p.sample_interior(&mut rng, 20);
            let y = p.sample_interior(&mut rng, 20);
            let e = rng.gen_range(0..p.len());
            let exact = reflects(&p, &x, &y, e);
            seen += exact as usize;
            let (want, margin) = bounce_oracle(&vs, x.to_f64(), y.to_f64(), e);
            if margin > MARGIN {
                checked += 1;
                if exact != want {
                    disagree += 1;
                    eprintln!("criterion 3 disagreement: {name} x={x:?} y={y:?} e={e}");
                }
            } else {
                skipped += 1;
                // below the oracle's resolution: re-check against the region construction
                let region = reflected_region(&p, &x, e).unwrap_or_default();
                if region.iter().any(|r| r.contains(&y)) != exact {
                    recheck_bad += 1;
                    eprintln!("criterion 3 low-margin mismatch: {name} x={x:?} y={y:?} e={e}");
                }
            }
        }
    }
    b.report(
        3,
        "reflected-visibility oracle",
        disagree == 0 && recheck_bad == 0,
        format!("{checked} compared ({seen} visible), {disagree} disagreements, {skipped} below margin, {recheck_bad} after exact re-check"),
    );
}

fn c4_vl_soundness(all: &[Solved], b: &mut Board) {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut pairs, mut bad) = (0usize, 0usize);
    for s in all {
        let p = &s.inst.polygon;
        let refl = s.mode == Mode::Reflection;
        let t = Instant::now();
        for g in &s.run.grs {
            let src: Vec<Point> = (0..20).map(|_| sample_in_cell(&g.region, &mut rng)).collect();
            for &c in &g.vl {
                let cell = s.run.scrs.cell(c);
                let dst: Vec<Point> = (0..20).map(|_| sample_in_cell(cell, &mut rng)).collect();
                for a in &src {
                    for z in &dst {
                        pairs += 1;
                        if !sees_any(p, a, z, refl) {
                            bad += 1;
                            if bad <= 10 {
                                eprintln!("criterion 4 violation: {}/{:?} region {} cell {c} {a:?} -> {z:?}", s.name, s.mode, g.id);
                            }
                        }
                    }
                }
            }
        }
        eprintln!("vl soundness {}/{:?}: {:.1}s", s.name, s.mode, t.elapsed().as_secs_f64());
    }
    b.report(4, "visible-list soundness", bad == 0, format!("{pairs} pairs, {bad} violations"));
}

fn c5_vl_oracle(all: &[Solved], b: &mut Board) {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut points, mut bad) = (0usize, 0usize);
    for s in all {
        for cell in &s.run.scrs.cells {
            let grs: Vec<_> = s.run.grs.iter().filter(|g| g.scr == cell.id).collect();
            let mut taken = 0;
            let mut tries = 0;
            while taken < 100 && tries < 10_000 {
                tries += 1;
                let z = sample_in_cell(cell, &mut rng);
                let inside: Vec<_> = grs.iter().filter(|g| g.region.contains_strictly(&z)).collect();
                if inside.len() != 1 {
                    continue;
                }
                taken += 1;
                points += 1;
                let vl = vl_of_point(cell, &s.run.tsrs[cell.id], &z).unwrap();
                if vl != inside[0].vl {
                    bad += 1;
                }
            }
            if taken < 100 {
                bad += 1;
                eprintln!("criterion 5: {}/{:?} cell {} gave only {taken} interior samples", s.name, s.mode, cell.id);
            }
        }
    }
    b.report(5, "guarding-region oracle", bad == 0, format!("{points} points, {bad} mismatches"));
}

// dmvm: algebraic roots against bisection of the merge condition.

fn line_hit(p: F, pivot: F, u: F, w: F) -> f64 {
    // parameter on uw of the line through p and pivot
    let d = sub(pivot, p);
    let e = sub(w, u);
    cross(d, sub(p, u)) / cross(d, e)
}

fn reflect_f(p: F, m1: F, m2: F) -> F {
    let d = sub(m2, m1);
    let t = dot(sub(p, m1), d) / dot(d, d);
    let foot = (m1.0 + t * d.0, m1.1 + t * d.1);
    (2.0 * foot.0 - p.0, 2.0 * foot.1 - p.1)
}

fn between_f(a: F, m: F, q: F) -> f64 {
    let d = sub(q, a);
    dot(sub(m, a), d) / dot(d, d)
}

struct DmvmCase {
    ed: (F, F),
    uw: (F, F),
    mirror: (F, F),
    rf: F,
    v: F,
}

/// Filtered roots in `s` of the merge condition, with the smallest filter
/// margin of each.
fn dmvm_oracle(c: &DmvmCase) -> Vec<(f64, f64)> {
    const STEPS: usize = 10_000;
    let at = |s: f64| (c.ed.0 .0 + s * (c.ed.1 .0 - c.ed.0 .0), c.ed.0 .1 + s * (c.ed.1 .1 - c.ed.0 .1));
    let g = |s: f64| {
        let p = at(s);
        let pi = reflect_f(p, c.mirror.0, c.mirror.1);
        line_hit(p, c.rf, c.uw.0, c.uw.1) - line_hit(pi, c.v, c.uw.0, c.uw.1)
    };
    let mut out = Vec::new();
    let mut prev = g(0.0);
    for i in 1..=STEPS {
        let (lo0, hi0) = ((i - 1) as f64 / STEPS as f64, i as f64 / STEPS as f64);
        let cur = g(hi0);
        if prev.is_finite() && cur.is_finite() && (prev < 0.0) != (cur < 0.0) || prev == 0.0 {
            let (mut lo, mut hi) = (lo0, hi0);
            let glo = g(lo);
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if (g(mid) < 0.0) == (glo < 0.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let s = 0.5 * (lo + hi);
            // a sign change across a pole is not a root
            if g(s).abs() < 1e-6 {
                let p = at(s);
                let u = line_hit(p, c.rf, c.uw.0, c.uw.1);
                let q = (c.uw.0 .0 + u * (c.uw.1 .0 - c.uw.0 .0), c.uw.0 .1 + u * (c.uw.1 .1 - c.uw.0 .1));
                let pi = reflect_f(p, c.mirror.0, c.mirror.1);
                let l1 = between_f(p, c.rf, q);
                let l2 = between_f(pi, c.v, q);
                let margin = [s, 1.0 - s, u, 1.0 - u, l1, 1.0 - l1, l2, 1.0 - l2].into_iter().fold(f64::INFINITY, f64::min);
                out.push((s, margin));
            }
        }
        prev = cur;
    }
    out.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-12);
    out
}

fn c6_dmvm(b: &mut Board) {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let pt = |rng: &mut ChaCha8Rng, lo: i64, hi: i64| Point::int(rng.gen_range(lo..=hi), rng.gen_range(lo..=hi));
    let (mut configs, mut roots, mut bad, mut worst) = (0, 0, 0, 0.0f64);
    let mut attempts = 0;
    while configs < 25 && attempts < 200_000 {
        attempts += 1;
        // source below, mirror above, target on the right, blocker in between
        let (e0, e1) = (pt(&mut rng, -12, -4), pt(&mut rng, -12, -4));
        let y = rng.gen_range(6..=14);
        let mirror_pts = (Point::int(-10, y), Point::int(rng.gen_range(-5..=5), y + rng.gen_range(-2..=2)));
        let (u0, u1) = (pt(&mut rng, 4, 12), pt(&mut rng, 4, 12));
        if e0 == e1 || u0 == u1 {
            continue;
        }
        let (ed, uw) = (Segment::new(e0, e1), Segment::new(u0, u1));
        let rf = pt(&mut rng, -4, 4);
        let v = Point::int(rng.gen_range(-8..=8), y);
        let Some(mline) = Line::through(&mirror_pts.0, &mirror_pts.1) else { continue };
        let v = if mline.contains(&v) { v } else { mirror_pts.0.clone() };
        let alg = dmvm_solve(&ed, &uw, &mline, &rf, &v);
        if alg.is_empty() {
            continue;
        }
        let case = DmvmCase {
            ed: (ed.a.to_f64(), ed.b.to_f64()),
            uw: (uw.a.to_f64(), uw.b.to_f64()),
            mirror: (mirror_pts.0.to_f64(), mirror_pts.1.to_f64()),
            rf: rf.to_f64(),
            v: v.to_f64(),
        };
        // the exact image must agree with the oracle's own reflection
        let img = reflect_point(&ed.a, &mline).to_f64();
        let img_f = reflect_f(case.ed.0, case.mirror.0, case.mirror.1);
        if (img.0 - img_f.0).abs() > 1e-9 || (img.1 - img_f.1).abs() > 1e-9 {
            bad += 1;
        }
        let oracle = dmvm_oracle(&case);
        configs += 1;
        for (s, _) in &alg {
            roots += 1;
            let s = s.to_f64();
            let d = oracle.iter().map(|(o, _)| (o - s).abs()).fold(f64::INFINITY, f64::min);
            worst = worst.max(d);
            if d > 1e-9 {
                bad += 1;
                eprintln!("criterion 6: root {s} has no oracle match (nearest {d:e})");
            }
        }
        for (o, margin) in &oracle {
            if *margin > 1e-6 && !alg.iter().any(|(s, _)| (s.to_f64() - o).abs() <= 1e-9) {
                bad += 1;
                eprintln!("criterion 6: oracle root {o} missing from the exact solve");
            }
        }
    }
    let ok = configs == 25 && bad == 0;
    b.report(6, "merge-point accuracy", ok, format!("{configs} configurations, {roots} roots, max error {worst:.1e}, {bad} failures"));
}

fn c7_cover(all: &[Solved], b: &mut Board) {
    let mut bad = Vec::new();
    let mut compared = 0;
    for s in all {
        let r = &s.run.report;
        if let Some(x) = r.exact_size {
            compared += 1;
            if r.greedy_size as f64 > harmonic(r.scr_count) * x as f64 {
                bad.push(format!("{}/{:?} greedy {} exact {x}", s.name, s.mode, r.greedy_size));
            }
        }
    }
    for name in CORPUS {
        let get = |m: Mode| all.iter().find(|s| s.name == name && s.mode == m).and_then(|s| s.run.report.exact_size);
        if let (Some(r), Some(d)) = (get(Mode::Reflection), get(Mode::DirectOnly)) {
            if r > d {
                bad.push(format!("{name}: reflection {r} > direct {d}"));
            }
        }
    }
    let detail = if bad.is_empty() { format!("{compared} runs with exact covers") } else { bad.join(", ") };
    b.report(7, "set-cover guarantees", bad.is_empty(), detail);
}

fn c8_determinism(all: &[Solved], b: &mut Board) {
    let mut bad = Vec::new();
    for s in all {
        let e = s.inst.polygon.mirror_edges().first().copied().unwrap_or(0);
        let opts = SvgOptions { selected_scr: Some(0), reflected: Some((0, e)) };
        let again = solve(&s.inst).unwrap();
        if s.run.report.to_json(false) != again.report.to_json(false) {
            bad.push(format!("{}/{:?} report", s.name, s.mode));
        }
        if render_svg(&s.inst, &s.run, &opts) != render_svg(&s.inst, &again, &opts) {
            bad.push(format!("{}/{:?} svg", s.name, s.mode));
        }
    }
    let detail = if bad.is_empty() { format!("{} runs repeated byte-identical", all.len()) } else { bad.join(", ") };
    b.report(8, "determinism", bad.is_empty(), detail);
}

#[test]
fn acceptance() {
    let all = solve_corpus();
    let mut b = Board { results: Vec::new() };
    c1_combs(&all, &mut b);
    c2_partition(&all, &mut b);
    c3_reflected_oracle(&mut b);
    c4_vl_soundness(&all, &mut b);
    c5_vl_oracle(&all, &mut b);
    c6_dmvm(&mut b);
    c7_cover(&all, &mut b);
    c8_determinism(&all, &mut b);
    let failed = b.results.iter().filter(|&&r| !r).count();
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
