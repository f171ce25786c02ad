//! Set cover over cell ids and guard placement.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::decompose::GuardingRegion;
use crate::error::{Error, Result};
use crate::kernel::{CellLocation, Point};

pub const DEFAULT_EXACT_CAP: usize = 25;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    Reflection,
    DirectOnly,
}

#[derive(Clone, Debug)]
pub struct CoverInstance {
    pub universe: BTreeSet<usize>,
    /// `(gr id, visible list)`.
    pub subsets: Vec<(usize, BTreeSet<usize>)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Solution {
    pub chosen: Vec<usize>,
    pub guards: Vec<Point>,
    pub mode: Mode,
}

impl CoverInstance {
    pub fn new(universe: BTreeSet<usize>, mut subsets: Vec<(usize, BTreeSet<usize>)>) -> Self {
        subsets.sort_by_key(|s| s.0);
        CoverInstance { universe, subsets }
    }

    fn check(&self) -> Result<()> {
        let all: BTreeSet<usize> = self.subsets.iter().flat_map(|s| s.1.iter().copied()).collect();
        match self.universe.iter().find(|u| !all.contains(u)) {
            Some(&u) => Err(Error::Uncoverable(u)),
            None => Ok(()),
        }
    }
}

/// Most newly covered elements first, smallest id on ties.
pub fn greedy_cover(inst: &CoverInstance) -> Result<Vec<usize>> {
    inst.check()?;
    let mut left = inst.universe.clone();
    let mut chosen = Vec::new();
    while !left.is_empty() {
        let mut best: Option<(usize, usize)> = None;
        for (id, s) in &inst.subsets {
            let gain = s.iter().filter(|u| left.contains(u)).count();
            if gain > 0 && best.is_none_or(|(_, g)| gain > g) {
                best = Some((*id, gain));
            }
        }
        let (id, _) = best.expect("coverable");
        let s = &inst.subsets.iter().find(|s| s.0 == id).unwrap().1;
        left.retain(|u| !s.contains(u));
        chosen.push(id);
    }
    Ok(chosen)
}

/// Subsets not strictly contained in another; of equal ones the smallest id.
fn undominated(inst: &CoverInstance) -> Vec<(usize, BTreeSet<usize>)> {
    let subs: Vec<(usize, BTreeSet<usize>)> =
        inst.subsets.iter().map(|(i, s)| (*i, s.intersection(&inst.universe).copied().collect())).collect();
    let mut keep = Vec::new();
    for (i, (id, s)) in subs.iter().enumerate() {
        let dominated = subs.iter().enumerate().any(|(j, (_, t))| {
            j != i && s.is_subset(t) && (s.len() < t.len() || j < i)
        });
        if !dominated && !s.is_empty() {
            keep.push((*id, s.clone()));
        }
    }
    keep
}

/// A minimum cover, lexicographically smallest among minimum covers of the
/// undominated subsets. Fails when more than `cap` subsets survive pruning.
pub fn exact_cover(inst: &CoverInstance, cap: usize) -> Result<Vec<usize>> {
    inst.check()?;
    let subs = undominated(inst);
    if subs.len() > cap {
        return Err(Error::CapExceeded(cap));
    }
    let elems: Vec<usize> = inst.universe.iter().copied().collect();
    let index = |u: usize| elems.binary_search(&u).unwrap();
    let words = elems.len().div_ceil(64).max(1);
    let masks: Vec<Vec<u64>> = subs
        .iter()
        .map(|(_, s)| {
            let mut m = vec![0u64; words];
            for &u in s {
                let k = index(u);
                m[k / 64] |= 1 << (k % 64);
            }
            m
        })
        .collect();
    let sizes: Vec<u32> = masks.iter().map(|m| m.iter().map(|w| w.count_ones()).sum()).collect();
    // suffix unions for the reachability bound
    let mut suffix = vec![vec![0u64; words]; subs.len() + 1];
    for i in (0..subs.len()).rev() {
        for w in 0..words {
            suffix[i][w] = suffix[i + 1][w] | masks[i][w];
        }
    }
    let mut full = vec![0u64; words];
    for k in 0..elems.len() {
        full[k / 64] |= 1 << (k % 64);
    }
    let upper = greedy_cover(inst)?.len();
    for k in 1..=upper {
        let mut pick = Vec::new();
        if dfs(&masks, &sizes, &suffix, &full, 0, k, &mut vec![0u64; words], &mut pick) {
            return Ok(pick.into_iter().map(|i| subs[i].0).collect());
        }
    }
    unreachable!("greedy gives a cover of size {upper}")
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    masks: &[Vec<u64>],
    sizes: &[u32],
    suffix: &[Vec<u64>],
    full: &[u64],
    from: usize,
    left: usize,
    covered: &mut Vec<u64>,
    pick: &mut Vec<usize>,
) -> bool {
    let missing: u32 = full.iter().zip(covered.iter()).map(|(f, c)| (f & !c).count_ones()).sum();
    if missing == 0 {
        return true;
    }
    if left == 0 {
        return false;
    }
    // every missing element must still be reachable
    if full.iter().zip(covered.iter()).zip(&suffix[from]).any(|((f, c), s)| f & !c & !s != 0) {
        return false;
    }
    let best = sizes[from..].iter().copied().max().unwrap_or(0);
    if (best as usize) * left < missing as usize {
        return false;
    }
    for i in from..masks.len() {
        let saved = covered.clone();
        for (c, m) in covered.iter_mut().zip(&masks[i]) {
            *c |= m;
        }
        if *covered != saved {
            pick.push(i);
            if dfs(masks, sizes, suffix, full, i + 1, left - 1, covered, pick) {
                return true;
            }
            pick.pop();
        }
        *covered = saved;
    }
    false
}

/// A rational point strictly inside the region.
pub fn pick_guard(gr: &GuardingRegion) -> Result<Point> {
    if gr.region.area().signum() <= 0 {
        return Err(Error::DegenerateRegion);
    }
    let c = gr.region.vertex_centroid();
    if gr.region.locate(&c) == CellLocation::Inside {
        return Ok(c);
    }
    let c = gr.region.area_centroid();
    if gr.region.locate(&c) == CellLocation::Inside {
        return Ok(c);
    }
    Err(Error::DegenerateRegion)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{ConvexCell, Scalar};

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    /// Smallest cover by trying every family.
    fn brute(inst: &CoverInstance) -> usize {
        let n = inst.subsets.len();
        let mut best = usize::MAX;
        for mask in 1u32..(1 << n) {
            let mut u = BTreeSet::new();
            for i in 0..n {
                if mask & (1 << i) != 0 {
                    u.extend(inst.subsets[i].1.iter().copied());
                }
            }
            if inst.universe.is_subset(&u) {
                best = best.min(mask.count_ones() as usize);
            }
        }
        best
    }

    #[test]
    fn small_greedy() {
        let inst = CoverInstance::new(set(&[1, 2, 3]), vec![(0, set(&[1, 2])), (1, set(&[2, 3])), (2, set(&[3]))]);
        assert_eq!(greedy_cover(&inst).unwrap(), vec![0, 1]);
        assert_eq!(exact_cover(&inst, 25).unwrap(), vec![0, 1]);
        assert_eq!(brute(&inst), 2);
        let one = CoverInstance::new(set(&[1, 2]), vec![(4, set(&[1, 2]))]);
        assert_eq!(greedy_cover(&one).unwrap(), vec![4]);
        assert_eq!(exact_cover(&one, 25).unwrap(), vec![4]);
        let single = CoverInstance::new(set(&[1, 2, 3]), vec![(0, set(&[1])), (1, set(&[2])), (2, set(&[3]))]);
        assert_eq!(greedy_cover(&single).unwrap().len(), 3);
        let bad = CoverInstance::new(set(&[1, 9]), vec![(0, set(&[1]))]);
        assert_eq!(greedy_cover(&bad), Err(Error::Uncoverable(9)));
    }

    #[test]
    fn greedy_gap() {
        // two rows cover everything; columns of sizes 2, 4, 8 lure greedy
        let rows = [set(&(0..7).collect::<Vec<_>>()), set(&(7..14).collect::<Vec<_>>())];
        let cols = [set(&[0, 7]), set(&[1, 2, 8, 9]), set(&[3, 4, 5, 6, 10, 11, 12, 13])];
        let mut subsets = vec![(0, rows[0].clone()), (1, rows[1].clone())];
        for (i, c) in cols.iter().enumerate() {
            subsets.push((2 + i, c.clone()));
        }
        let inst = CoverInstance::new((0..14).collect(), subsets);
        let g = greedy_cover(&inst).unwrap();
        let e = exact_cover(&inst, 25).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(brute(&inst), 2);
        assert!(g.len() > e.len());
    }

    #[test]
    fn cap() {
        let subsets: Vec<_> = (0..30).map(|i| (i, set(&[i]))).collect();
        let inst = CoverInstance::new((0..30).collect(), subsets);
        assert_eq!(exact_cover(&inst, 25), Err(Error::CapExceeded(25)));
    }

    #[test]
    fn guards() {
        let sq = ConvexCell::from_points(0, vec![Point::int(0, 0), Point::int(1, 0), Point::int(1, 1), Point::int(0, 1)]).unwrap();
        let g = GuardingRegion { id: 0, scr: 0, region: sq, vl: set(&[0]) };
        assert_eq!(pick_guard(&g).unwrap(), Point::new(Scalar::ratio(1, 2), Scalar::ratio(1, 2)));
        let tri = ConvexCell::from_points(0, vec![Point::int(0, 0), Point::int(1, 0), Point::int(0, 1)]).unwrap();
        let g = GuardingRegion { id: 0, scr: 0, region: tri, vl: set(&[0]) };
        assert_eq!(pick_guard(&g).unwrap(), Point::new(Scalar::ratio(1, 3), Scalar::ratio(1, 3)));
    }
}
