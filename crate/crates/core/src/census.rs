//! Exhaustive generation of small closed triangulations, used by the
//! acceptance suite as the ground set for enumeration oracles.

use crate::perm::Perm4;
use crate::tri::Triangulation;
use std::collections::BTreeSet;

/// All connected closed valid triangulations with exactly `n` tetrahedra, up
/// to combinatorial isomorphism (deduplicated by signature, sorted by
/// signature). Generated by backtracking over gluing tables: the lowest
/// unglued face is glued either to a fresh tetrahedron (with the identity
/// permutation, which is no loss up to relabeling) or to an existing unglued
/// face in every possible way.
pub fn closed_census(n: usize) -> Vec<Triangulation> {
    let mut out: Vec<(String, Triangulation)> = Vec::new();
    let mut tri = Triangulation::with_tets(1);
    let mut seen = BTreeSet::new();
    search(&mut tri, n, &mut out, &mut seen);
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.into_iter().map(|(_, t)| t).collect()
}

fn search(
    tri: &mut Triangulation,
    target: usize,
    out: &mut Vec<(String, Triangulation)>,
    seen: &mut BTreeSet<String>,
) {
    // Find the lowest unglued face.
    let mut open = None;
    'scan: for t in 0..tri.tet_count() {
        for f in 0..4u8 {
            if tri.gluing(t, f).is_none() {
                open = Some((t, f));
                break 'scan;
            }
        }
    }
    let Some((t, f)) = open else {
        if tri.tet_count() == target {
            let report = tri.validate();
            if report.is_closed_3_manifold {
                let sig = crate::isosig::plain_signature(tri);
                if seen.insert(sig.clone()) {
                    out.push((sig, tri.clone()));
                }
            }
        }
        return;
    };
    // Quick prune: a partial complex with a reversed edge can never become
    // valid.
    if !partial_reversal_free(tri) {
        return;
    }
    // Option 1: fresh tetrahedron, identity gluing.
    if tri.tet_count() < target {
        let fresh = tri.add_tet();
        tri.glue(t, f, fresh, Perm4::IDENTITY);
        search(tri, target, out, seen);
        tri.unglue(t, f);
        // remove the fresh tet (it is the last and now unglued everywhere)
        pop_last_tet(tri);
    }
    // Option 2: existing unglued face.
    let slots: Vec<(usize, u8)> = (0..tri.tet_count())
        .flat_map(|tt| (0..4u8).map(move |ff| (tt, ff)))
        .filter(|&(tt, ff)| tri.gluing(tt, ff).is_none() && (tt, ff) != (t, f))
        .collect();
    for (t2, f2) in slots {
        for p in face_gluings(f, f2) {
            tri.glue(t, f, t2, p);
            search(tri, target, out, seen);
            tri.unglue(t, f);
        }
    }
}

fn pop_last_tet(tri: &mut Triangulation) {
    let last = tri.tet_count() - 1;
    for f in 0..4u8 {
        assert!(tri.gluing(last, f).is_none());
    }
    let table = tri.raw_table();
    let mut smaller = Triangulation::with_tets(last);
    for (t, row) in table.iter().take(last).enumerate() {
        for (f, g) in row.iter().enumerate() {
            if let Some((tt, p)) = g {
                if smaller.gluing(t, f as u8).is_none() {
                    smaller.glue(t, f as u8, *tt, *p);
                }
            }
        }
    }
    *tri = smaller;
}

/// The six permutations gluing face `f` to face `f2`.
fn face_gluings(f: u8, f2: u8) -> Vec<Perm4> {
    Perm4::all().into_iter().filter(|p| p.apply(f) == f2).collect()
}

fn partial_reversal_free(tri: &Triangulation) -> bool {
    // Reuse the skeleton's reversal detection; cheap at census scale.
    let skel = tri.skeleton();
    skel.edges.iter().all(|e| !e.reversed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_tet_census() {
        let census = closed_census(1);
        assert_eq!(census.len(), 4);
        let spheres: Vec<_> = census
            .iter()
            .filter(|t| crate::homology::homology_h1(t).unwrap().is_empty())
            .collect();
        assert_eq!(spheres.len(), 2);
    }

    #[test]
    fn two_tet_census_nonempty_and_valid() {
        let census = closed_census(2);
        assert!(!census.is_empty());
        for t in &census {
            assert!(t.validate().is_closed_3_manifold);
        }
    }
}
