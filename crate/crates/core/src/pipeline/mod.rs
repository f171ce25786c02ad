//! End-to-end guard placement: cells, temp-sub-regions, guarding-regions,
//! set cover.

mod svg;
mod verify;

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::cover::{exact_cover, greedy_cover, pick_guard, CoverInstance, Mode, Solution, DEFAULT_EXACT_CAP};
use crate::decompose::{decompose, GuardingRegion};
use crate::error::{Error, Result};
use crate::find::{find_all, FindOptions, TempSubRegion};
use crate::kernel::Point;
use crate::polygon::SimplePolygon;
use crate::scr::{build_scr, LineLevel, ScrSet, DEFAULT_LINE_CAP};

pub use svg::{render_svg, SvgOptions};
pub use verify::{verify, VerifyReport};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Options {
    pub mode: Mode,
    pub line_cap: usize,
    pub line_level: LineLevel,
    pub exact_cover: bool,
    pub exact_cap: usize,
    /// Verifier samples; 0 skips verification.
    pub samples: usize,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            mode: Mode::Reflection,
            line_cap: DEFAULT_LINE_CAP,
            line_level: LineLevel::Full,
            exact_cover: false,
            exact_cap: DEFAULT_EXACT_CAP,
            samples: 0,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    vertices: Vec<[i64; 2]>,
    #[serde(default)]
    mirrors: Option<Vec<usize>>,
    #[serde(default)]
    options: Option<Options>,
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub polygon: SimplePolygon,
    pub options: Options,
}

impl Instance {
    pub fn new(polygon: SimplePolygon, options: Options) -> Self {
        Instance { polygon, options }
    }

    /// Parses `{"vertices": [[x, y], ...], "mirrors": [...], "options": {...}}`.
    pub fn from_json(s: &str) -> Result<Instance> {
        let f: InstanceFile = serde_json::from_str(s).map_err(|e| Error::InvalidInstance(e.to_string()))?;
        if let Some(m) = &f.mirrors {
            if let Some(&bad) = m.iter().find(|&&e| e >= f.vertices.len()) {
                return Err(Error::InvalidInstance(format!("mirror edge {bad} out of range")));
            }
        }
        let polygon = SimplePolygon::from_coords(&f.vertices, f.mirrors.as_deref())?;
        Ok(Instance { polygon, options: f.options.unwrap_or_default() })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub mode: Mode,
    pub line_level: LineLevel,
    pub line_count: usize,
    pub scr_count: usize,
    pub tsr_count: usize,
    pub gr_count: usize,
    pub greedy_size: usize,
    pub exact_size: Option<usize>,
    pub exact_error: Option<String>,
    pub chosen: Vec<usize>,
    pub guards: Vec<[String; 2]>,
    pub verify: Option<VerifyReport>,
    pub timings_ms: BTreeMap<String, f64>,
}

impl RunReport {
    /// Pretty JSON; `timings = false` leaves out the only nondeterministic part.
    pub fn to_json(&self, timings: bool) -> String {
        let mut r = self.clone();
        if !timings {
            r.timings_ms.clear();
        }
        serde_json::to_string_pretty(&r).expect("report serializes")
    }
}

/// Everything a run produced.
#[derive(Clone, Debug)]
pub struct Run {
    pub scrs: ScrSet,
    /// Temp-sub-regions per source cell.
    pub tsrs: Vec<Vec<TempSubRegion>>,
    pub grs: Vec<GuardingRegion>,
    pub solution: Solution,
    pub report: RunReport,
}

fn point_strings(p: &Point) -> [String; 2] {
    [p.x.to_string(), p.y.to_string()]
}

/// Runs the whole pipeline on `inst`.
pub fn solve(inst: &Instance) -> Result<Run> {
    let o = &inst.options;
    let p = &inst.polygon;
    let reflection = o.mode == Mode::Reflection;
    let mut timings = BTreeMap::new();
    let mut clock = Instant::now();
    let mut lap = |name: &str, timings: &mut BTreeMap<String, f64>| {
        timings.insert(name.to_string(), clock.elapsed().as_secs_f64() * 1e3);
        clock = Instant::now();
    };

    let scrs = build_scr(p, o.line_level, o.line_cap)?;
    lap("cells", &mut timings);
    log::info!("{} lines, {} cells", scrs.generating_lines.len(), scrs.len());

    let fo = FindOptions { reflection, validate: true };
    let mut tsrs: Vec<Vec<TempSubRegion>> = Vec::with_capacity(scrs.len());
    for s in 0..scrs.len() {
        let mut here = Vec::new();
        for t in 0..scrs.len() {
            if s != t {
                here.extend(find_all(p, &scrs, s, t, &fo));
            }
        }
        tsrs.push(here);
    }
    lap("find", &mut timings);

    let mut grs: Vec<GuardingRegion> = Vec::new();
    for (s, ts) in tsrs.iter().enumerate() {
        for mut g in decompose(scrs.cell(s), ts)? {
            g.id = grs.len();
            grs.push(g);
        }
    }
    lap("decompose", &mut timings);

    let universe: BTreeSet<usize> = (0..scrs.len()).collect();
    let inst_cover = CoverInstance::new(universe, grs.iter().map(|g| (g.id, g.vl.clone())).collect());
    let greedy = greedy_cover(&inst_cover)?;
    let (exact, exact_error) = if o.exact_cover {
        match exact_cover(&inst_cover, o.exact_cap) {
            Ok(c) => (Some(c), None),
            Err(e) => (None, Some(e.to_string())),
        }
    } else {
        (None, None)
    };
    let chosen = exact.clone().unwrap_or_else(|| greedy.clone());
    let guards = chosen.iter().map(|&g| pick_guard(&grs[g])).collect::<Result<Vec<_>>>()?;
    lap("cover", &mut timings);

    let verify = if o.samples > 0 {
        let v = verify(p, &guards, o.samples, o.seed, reflection);
        lap("verify", &mut timings);
        Some(v)
    } else {
        None
    };

    let report = RunReport {
        mode: o.mode,
        line_level: o.line_level,
        line_count: scrs.generating_lines.len(),
        scr_count: scrs.len(),
        tsr_count: tsrs.iter().map(|v| v.len()).sum(),
        gr_count: grs.len(),
        greedy_size: greedy.len(),
        exact_size: exact.as_ref().map(|c| c.len()),
        exact_error,
        chosen: chosen.clone(),
        guards: guards.iter().map(point_strings).collect(),
        verify,
        timings_ms: timings,
    };
    let solution = Solution { chosen, guards, mode: o.mode };
    Ok(Run { scrs, tsrs, grs, solution, report })
}

/// The n-th harmonic number.
pub fn harmonic(n: usize) -> f64 {
    (1..=n).map(|k| 1.0 / k as f64).sum()
}
