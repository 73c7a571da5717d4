use crate::loops::EdgeIdeal;
use crate::moves::{four_four, three_two, two_one, two_three, two_three_sites, two_zero};
use crate::shorten::{insert_snapped_ball, merge_vertices, redirect_loop};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
pub struct SimplifyConfig {
    /// Cap on the total number of applied moves.
    pub budget: usize,
    /// Whether to spend snapped-ball insertions to force the loop to length 1.
    pub force_loop_one: bool,
    /// Rounds of 4-4 / reheat exploration after the greedy phases stall.
    pub explore_rounds: usize,
}

impl Default for SimplifyConfig {
    fn default() -> Self {
        SimplifyConfig { budget: 4000, force_loop_one: true, explore_rounds: 12 }
    }
}

/// Observation hook invoked after every accepted operation; returning false
/// aborts the schedule (used by diagnostics and tests).
pub type Hook<'h> = &'h mut dyn FnMut(&str, &EdgeIdeal) -> bool;

fn no_hook() -> impl FnMut(&str, &EdgeIdeal) -> bool {
    |_, _| true
}

/// One pass of greedy monotone simplification: 3-2, 2-0 and 2-1 moves shrink
/// the triangulation; loop redirections shorten the loop for free. Returns
/// whether anything was applied.
fn downhill(e: &mut EdgeIdeal, budget: &mut usize, hook: Hook) -> bool {
    let mut progress = false;
    'outer: loop {
        if *budget == 0 {
            return progress;
        }
        let skel = e.tri.skeleton();
        for ec in skel.edges.iter() {
            let deg = ec.degree();
            if !(1..=3).contains(&deg) {
                continue;
            }
            let emb = ec.embeddings[0];
            let (result, label) = match deg {
                3 => (three_two(e, emb.tet, emb.edge), "3-2"),
                2 => (two_zero(e, emb.tet, emb.edge), "2-0"),
                _ => (two_one(e, emb.tet, emb.edge), "2-1"),
            };
            if let Ok(next) = result {
                *e = next;
                *budget -= 1;
                progress = true;
                if !hook(label, e) {
                    return progress;
                }
                continue 'outer;
            }
        }
        for tc in 0..skel.triangles.len() {
            if let Ok(next) = redirect_loop(e, tc) {
                *e = next;
                *budget = budget.saturating_sub(1);
                progress = true;
                if !hook("redirect", e) {
                    return progress;
                }
                continue 'outer;
            }
        }
        return progress;
    }
}

/// Best-effort simplification: greedy shrinking passes, loop shortening via
/// snapped balls, vertex merging, and bounded 4-4 / reheat exploration.
/// Deterministic for a fixed seed; the underlying knot never changes.
pub fn simplify(e: &EdgeIdeal, seed: u64, config: &SimplifyConfig) -> EdgeIdeal {
    let mut hook = no_hook();
    simplify_traced(e, seed, config, &mut hook)
}

#[doc(hidden)]
pub fn simplify_traced(
    e: &EdgeIdeal,
    seed: u64,
    config: &SimplifyConfig,
    hook: Hook,
) -> EdgeIdeal {
    let mut cur = e.clone();
    let mut budget = config.budget;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x51a9_11f1);
    downhill(&mut cur, &mut budget, hook);
    if config.force_loop_one {
        let mut guard = cur.knot.len() + 2;
        while cur.knot.len() > 1 && budget > 0 && guard > 0 {
            guard -= 1;
            let edge = cur.knot.steps[0].edge;
            match insert_snapped_ball(&cur, edge, 0) {
                Ok(next) => {
                    cur = next;
                    budget = budget.saturating_sub(1);
                    if !hook("snapped-ball", &cur) {
                        return cur;
                    }
                    downhill(&mut cur, &mut budget, hook);
                }
                Err(_) => break,
            }
        }
    }
    // One-vertex triangulations expose far more shrinking moves.
    let merged = merge_vertices(&cur, 64);
    if !hook("merge-vertices", &merged) {
        return merged;
    }
    let mut m = merged;
    downhill(&mut m, &mut budget, hook);
    if m.tet_count() <= cur.tet_count() && m.knot.len() <= cur.knot.len() {
        cur = m;
    }
    // Exploration: 4-4 moves and short reheats, keeping strict improvements.
    for _ in 0..config.explore_rounds {
        if budget == 0 {
            break;
        }
        let mut best = cur.clone();
        let mut improved = false;
        // 4-4 candidates.
        let skel = cur.tri.skeleton();
        let mut sites: Vec<(usize, usize)> = skel
            .edges
            .iter()
            .enumerate()
            .filter(|(_, ec)| ec.degree() == 4)
            .map(|(i, _ec)| (i, 0))
            .map(|(i, _)| (i, 0usize))
            .collect();
        sites.shuffle(&mut rng);
        for (ei, _) in sites.into_iter().take(8) {
            let emb = skel.edges[ei].embeddings[0];
            for axis in 0..2u8 {
                if let Ok(mut next) = four_four(&cur, emb.tet, emb.edge, axis) {
                    budget = budget.saturating_sub(1);
                    if !hook("4-4", &next) {
                        return next;
                    }
                    downhill(&mut next, &mut budget, hook);
                    if next.tet_count() < best.tet_count()
                        || (next.tet_count() == best.tet_count()
                            && next.knot.len() < best.knot.len())
                    {
                        best = next;
                        improved = true;
                    }
                }
            }
        }
        if !improved {
            // Reheat: a few random 2-3 moves then shrink again.
            let mut trial = cur.clone();
            for _ in 0..3 {
                let sites = two_three_sites(&trial.tri);
                if sites.is_empty() {
                    break;
                }
                let (t, f) = sites[rng.gen_range(0..sites.len())];
                if let Ok(next) = two_three(&trial, t, f) {
                    trial = next;
                    budget = budget.saturating_sub(1);
                    if !hook("2-3", &trial) {
                        return trial;
                    }
                }
            }
            downhill(&mut trial, &mut budget, hook);
            if trial.tet_count() < cur.tet_count()
                || (trial.tet_count() == cur.tet_count() && trial.knot.len() < cur.knot.len())
            {
                best = trial;
                improved = true;
            }
        }
        if improved {
            cur = best;
        } else {
            break;
        }
    }
    debug_assert!(cur.validate().is_ok());
    cur
}

/// Applies `heat` random legal 2-3 moves, then simplifies. Deterministic for
/// a fixed seed; the knot type is preserved by every step.
pub fn randomize(e: &EdgeIdeal, heat: usize, seed: u64, config: &SimplifyConfig) -> EdgeIdeal {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    let mut cur = e.clone();
    let mut applied = 0;
    let mut attempts = 0;
    while applied < heat && attempts < 8 * heat + 16 {
        attempts += 1;
        let sites = two_three_sites(&cur.tri);
        if sites.is_empty() {
            break;
        }
        let (t, f) = sites[rng.gen_range(0..sites.len())];
        if let Ok(next) = two_three(&cur, t, f) {
            cur = next;
            applied += 1;
        }
    }
    if heat == 0 {
        return simplify(e, seed, config);
    }
    simplify(&cur, seed.wrapping_add(1), config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{build_edge_ideal, unknot_edge_ideal};
    use crate::diagram::parse_pd;

    #[test]
    fn minimal_unknot_unchanged() {
        let e = unknot_edge_ideal();
        let s = simplify(&e, 0, &SimplifyConfig::default());
        assert_eq!(s.tet_count(), 1);
        assert_eq!(s.loop_len(), 1);
        assert_eq!(s.marked_signature(), e.marked_signature());
    }

    #[test]
    fn one_crossing_unknot_simplifies_small() {
        let d = parse_pd("X[1,2,2,1]").unwrap();
        let e = build_edge_ideal(&d).unwrap();
        let s = simplify(&e, 0, &SimplifyConfig::default());
        assert_eq!(s.loop_len(), 1);
        assert!(s.tet_count() <= e.tet_count());
        s.validate().unwrap();
    }

    #[test]
    fn determinism_under_seed() {
        let d = parse_pd("X[1,2,2,1]").unwrap();
        let e = build_edge_ideal(&d).unwrap();
        let a = simplify(&e, 7, &SimplifyConfig::default());
        let b = simplify(&e, 7, &SimplifyConfig::default());
        assert_eq!(a.marked_signature(), b.marked_signature());
    }

    #[test]
    fn heat_zero_randomize_equals_simplify() {
        let d = parse_pd("X[1,2,2,1]").unwrap();
        let e = build_edge_ideal(&d).unwrap();
        let a = randomize(&e, 0, 3, &SimplifyConfig::default());
        let b = simplify(&e, 3, &SimplifyConfig::default());
        assert_eq!(a.marked_signature(), b.marked_signature());
    }
}
