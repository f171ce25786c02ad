//! Guarding-regions: the overlay of a cell with its temp-sub-regions.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::find::TempSubRegion;
use crate::kernel::{convex_intersection, ConvexCell, EdgeTag, Point};

#[derive(Clone, Debug, Serialize)]
pub struct GuardingRegion {
    pub id: usize,
    pub scr: usize,
    pub region: ConvexCell,
    pub vl: BTreeSet<usize>,
}

/// `{scr} ∪ {targets of regions containing p}`.
pub fn vl_of_point(scr: &ConvexCell, tsrs: &[TempSubRegion], p: &Point) -> Result<BTreeSet<usize>> {
    if !scr.contains(p) {
        return Err(Error::PointOutsideCell);
    }
    let mut vl: BTreeSet<usize> = [scr.id].into_iter().collect();
    for t in tsrs {
        if t.region.contains(p) {
            vl.extend(t.sees.iter().copied());
        }
    }
    Ok(vl)
}

fn inside(outer: &ConvexCell, inner: &ConvexCell) -> bool {
    inner.boundary.iter().all(|q| outer.contains(q))
}

/// Splits `scr` into faces on which membership in every temp-sub-region is
/// constant. A face is only cut by a region it partly overlaps.
pub fn decompose(scr: &ConvexCell, tsrs: &[TempSubRegion]) -> Result<Vec<GuardingRegion>> {
    for t in tsrs {
        if !inside(scr, &t.region) {
            return Err(Error::TsrOutsideCell);
        }
    }
    // (face, incremental visible list)
    let mut faces: Vec<(ConvexCell, BTreeSet<usize>)> = vec![(scr.clone(), [scr.id].into_iter().collect())];
    for t in tsrs {
        let mut next = Vec::with_capacity(faces.len() + 4);
        for (f, vl) in faces {
            let common = match convex_intersection(&f, &t.region) {
                Some(c) => c,
                None => {
                    next.push((f, vl));
                    continue;
                }
            };
            if common.area() == f.area() {
                let mut vl = vl;
                vl.extend(t.sees.iter().copied());
                next.push((f, vl));
                continue;
            }
            // peel the outside pieces off along each region edge
            let mut rest = f;
            for i in 0..t.region.len() {
                let (l, pos) = t.region.edge_halfplane(i);
                if !rest.crossed_by(&l) {
                    continue;
                }
                let (a, b) = rest.split(&l, EdgeTag::Cut);
                let (keep, out) = if pos { (b, a) } else { (a, b) };
                if let Some(o) = out {
                    next.push((o, vl.clone()));
                }
                rest = keep.expect("overlapping face keeps a piece");
            }
            let mut vl = vl;
            vl.extend(t.sees.iter().copied());
            next.push((rest, vl));
        }
        faces = next;
    }
    let mut out = Vec::with_capacity(faces.len());
    for (mut f, vl) in faces {
        let oracle = vl_of_point(scr, tsrs, &f.area_centroid())?;
        if oracle != vl {
            log::error!("visible list mismatch in cell {}: {:?} vs {:?}", scr.id, vl, oracle);
        }
        f.canonicalize();
        f.id = scr.id;
        out.push(GuardingRegion { id: 0, scr: scr.id, region: f, vl: oracle });
    }
    out.sort_by(|a, b| a.region.boundary.cmp(&b.region.boundary));
    for (i, g) in out.iter_mut().enumerate() {
        g.id = i;
    }
    Ok(out)
}
