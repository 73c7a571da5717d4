use crate::diagram::{Diagram, DiagramError};
use crate::loops::{EdgeIdeal, IdealLoop};
use crate::perm::Perm4;
use crate::tri::Triangulation;
use std::collections::BTreeSet;
use std::sync::OnceLock;

/// The two closed one-tetrahedron triangulations of the 3-sphere, found by
/// exhausting all one-tetrahedron gluing tables and keeping the valid closed
/// ones with trivial first homology, deduplicated by signature. Ordered by
/// signature.
fn one_tet_spheres() -> &'static (Triangulation, Triangulation) {
    static CACHE: OnceLock<(Triangulation, Triangulation)> = OnceLock::new();
    CACHE.get_or_init(|| {
        let mut found: Vec<(String, Triangulation)> = Vec::new();
        let perms = Perm4::all();
        // Pairings of the 4 faces into two glued pairs.
        let pairings = [[(0u8, 1u8), (2u8, 3u8)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]];
        for pairing in pairings {
            for p0 in &perms {
                if p0.apply(pairing[0].0) != pairing[0].1 {
                    continue;
                }
                for p1 in &perms {
                    if p1.apply(pairing[1].0) != pairing[1].1 {
                        continue;
                    }
                    let table = vec![[
                        face_slot(pairing, 0, *p0, *p1),
                        face_slot(pairing, 1, *p0, *p1),
                        face_slot(pairing, 2, *p0, *p1),
                        face_slot(pairing, 3, *p0, *p1),
                    ]];
                    let Ok(tri) = Triangulation::from_gluings(table) else { continue };
                    let report = tri.validate();
                    if !report.is_closed_3_manifold {
                        continue;
                    }
                    if !crate::homology::homology_h1(&tri).unwrap().is_empty() {
                        continue;
                    }
                    let sig = crate::isosig::plain_signature(&tri);
                    if !found.iter().any(|(s, _)| *s == sig) {
                        found.push((sig, tri));
                    }
                }
            }
        }
        found.sort_by(|a, b| a.0.cmp(&b.0));
        assert_eq!(found.len(), 2, "exactly two one-tetrahedron 3-sphere triangulations");
        let mut it = found.into_iter();
        (it.next().unwrap().1, it.next().unwrap().1)
    })
}

fn face_slot(
    pairing: [(u8, u8); 2],
    face: u8,
    p0: Perm4,
    p1: Perm4,
) -> Option<(usize, Perm4)> {
    let [(a0, b0), (a1, b1)] = pairing;
    if face == a0 {
        Some((0, p0))
    } else if face == b0 {
        Some((0, p0.inverse()))
    } else if face == a1 {
        Some((0, p1))
    } else if face == b1 {
        Some((0, p1.inverse()))
    } else {
        None
    }
}

pub fn one_tet_sphere() -> Triangulation {
    one_tet_spheres().0.clone()
}

pub fn one_tet_sphere_other() -> Triangulation {
    one_tet_spheres().1.clone()
}

/// A fixed one-tetrahedron edge-ideal triangulation of the unknot: the first
/// one-tetrahedron sphere with an unknotted edge as a length-1 loop. The edge
/// choice is pinned by a test that Tietze-reduces its complement group.
pub fn unknot_edge_ideal() -> EdgeIdeal {
    static CACHE: OnceLock<EdgeIdeal> = OnceLock::new();
    CACHE
        .get_or_init(|| {
            let tri = one_tet_sphere();
            let skel = tri.skeleton();
            for e in 0..skel.edges.len() {
                let steps = vec![crate::loops::LoopStep { edge: e, forward: true }];
                let knot = IdealLoop { steps };
                if knot.validate(&tri).is_err() {
                    continue;
                }
                let cand = EdgeIdeal { tri: tri.clone(), knot };
                if cand.validate().is_err() {
                    continue;
                }
                let pres = crate::pi1::complement_presentation(&cand);
                let (reduced, _) = crate::pi1::tietze_simplify(&pres, 10_000);
                if reduced.generator_count == 1 && reduced.relators.is_empty() {
                    return cand;
                }
            }
            panic!("one-tetrahedron sphere must contain an unknotted edge");
        })
        .clone()
}

/// Roles of the nine tetrahedra of a crossing gadget. `Q(i)` is the midpoint
/// vertex of the arc at PD slot `i`; `N`/`S` are the suspension poles. The
/// over-strand edge joins Q1 and Q3 (and is pushed to the N side), the
/// under-strand edge joins Q0 and Q2.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    N,
    S,
    Q(u8),
}

/// Tetrahedra of one gadget, as corner-role lists:
/// 0: central (Q0,Q1,Q2,Q3); 1-2: N-side cones; 3-4: S-side cones;
/// 5-8: gap tetrahedra between consecutive slots.
const fn gadget_roles() -> [[Role; 4]; 9] {
    use Role::*;
    [
        [Q(0), Q(1), Q(2), Q(3)],
        [N, Q(1), Q(2), Q(3)],
        [N, Q(0), Q(1), Q(3)],
        [S, Q(0), Q(2), Q(3)],
        [S, Q(0), Q(1), Q(2)],
        [N, S, Q(0), Q(1)],
        [N, S, Q(1), Q(2)],
        [N, S, Q(2), Q(3)],
        [N, S, Q(3), Q(0)],
    ]
}

fn role_eq(a: Role, b: Role) -> bool {
    matches!(
        (a, b),
        (Role::N, Role::N) | (Role::S, Role::S) | (Role::Q(_), Role::Q(_))
    ) && match (a, b) {
        (Role::Q(x), Role::Q(y)) => x == y,
        _ => true,
    }
}

/// Gluing permutation between two role-labelled tetrahedra along their shared
/// three roles; the leftover corners map to each other.
fn role_perm(a: [Role; 4], b: [Role; 4]) -> Perm4 {
    let mut images = [4u8; 4];
    let mut used = [false; 4];
    for i in 0..4 {
        for j in 0..4 {
            if !used[j] && role_eq(a[i], b[j]) {
                images[i] = j as u8;
                used[j] = true;
                break;
            }
        }
    }
    let free_i = (0..4).find(|&i| images[i] == 4).expect("exactly one unshared corner");
    let free_j = (0..4).find(|&j| !used[j]).unwrap();
    images[free_i] = free_j as u8;
    Perm4::new(images).unwrap()
}

/// Builds an edge-ideal triangulation from a planar diagram: nine tetrahedra
/// per crossing, with one loop edge per crossing strand (2n in total). The
/// 0-crossing unknot gets the fixed one-tetrahedron triangulation.
pub fn build_edge_ideal(diagram: &Diagram) -> Result<EdgeIdeal, DiagramError> {
    diagram.validate()?;
    let n = diagram.crossing_count();
    if n == 0 {
        return Ok(unknot_edge_ideal());
    }

    let roles = gadget_roles();
    let mut tri = Triangulation::with_tets(9 * n);
    let base = |x: usize| 9 * x;

    // Internal gluings, identical in every gadget: (tetA, faceA, tetB).
    let internal: [(usize, u8, usize); 14] = [
        (0, 0, 1), // central {Q1,Q2,Q3} <-> N-cone
        (0, 2, 2), // central {Q0,Q1,Q3} <-> N-cone
        (0, 1, 3), // central {Q0,Q2,Q3} <-> S-cone
        (0, 3, 4), // central {Q0,Q1,Q2} <-> S-cone
        (1, 2, 2), // N-cones share {N,Q1,Q3}
        (3, 3, 4), // S-cones share {S,Q0,Q2}
        (1, 3, 6), // {N,Q1,Q2}
        (1, 1, 7), // {N,Q2,Q3}
        (2, 3, 5), // {N,Q0,Q1}
        (2, 2, 8), // {N,Q3,Q0}
        (3, 1, 7), // {S,Q2,Q3}
        (3, 2, 8), // {S,Q0,Q3}
        (4, 3, 5), // {S,Q0,Q1}
        (4, 1, 6), // {S,Q1,Q2}
    ];
    for x in 0..n {
        for &(ta, fa, tb) in &internal {
            let p = role_perm(roles[ta], roles[tb]);
            tri.glue(base(x) + ta, fa, base(x) + tb, p);
        }
    }

    // Interface gluings along each arc: the gap tetrahedron after slot i in
    // gadget x meets the gap tetrahedron before slot j in gadget y, and vice
    // versa. Gap tet for slots (k,k+1) is 5+k with corners (N,S,Qk,Qk+1).
    let ends = diagram.arc_ends();
    for a in 1..=diagram.arc_count {
        let [(x, i), (y, j)] = [ends[a][0], ends[a][1]];
        // x's counterclockwise side of the arc <-> y's clockwise side.
        let gx_left = 5 + i as usize; // gap (i, i+1), free face index 3 (opposite Q_{i+1})
        let gy_right = 5 + ((j + 3) % 4) as usize; // gap (j-1, j), free face 2 (opposite Q_{j-1})
        let p = Perm4::new([0, 1, 3, 2]).unwrap();
        tri.glue(base(x) + gx_left, 3, base(y) + gy_right, p);
        let gx_right = 5 + ((i + 3) % 4) as usize;
        let gy_left = 5 + j as usize;
        tri.glue(base(x) + gx_right, 2, base(y) + gy_left, p);
    }

    debug_assert!(tri.is_closed());
    let skel = tri.skeleton();
    let mut loop_edges = BTreeSet::new();
    for x in 0..n {
        loop_edges.insert(skel.edge_class(base(x), crate::tri::edge_index(0, 2)));
        loop_edges.insert(skel.edge_class(base(x), crate::tri::edge_index(1, 3)));
    }
    let knot = IdealLoop::from_edge_classes(&skel, &loop_edges)
        .expect("gadget strand edges chain into an embedded loop");
    Ok(EdgeIdeal { tri, knot })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    pub const TREFOIL_PD: &str = "X[1,4,2,3] X[3,6,4,5] X[5,2,6,1]";

    #[test]
    fn one_tet_spheres_valid_and_distinct() {
        let a = one_tet_sphere();
        let b = one_tet_sphere_other();
        assert!(a.validate().is_closed_3_manifold);
        assert!(b.validate().is_closed_3_manifold);
        assert_ne!(
            crate::isosig::plain_signature(&a),
            crate::isosig::plain_signature(&b)
        );
    }

    #[test]
    fn trefoil_build_has_size_9n_and_loop_2n() {
        let d = parse_pd(TREFOIL_PD).unwrap();
        let e = build_edge_ideal(&d).unwrap();
        assert_eq!(e.tet_count(), 27);
        assert_eq!(e.loop_len(), 6);
        e.validate().unwrap();
        assert!(crate::homology::homology_h1(&e.tri).unwrap().is_empty());
    }

    #[test]
    fn one_crossing_build_is_valid() {
        let d = parse_pd("X[1,2,2,1]").unwrap();
        let e = build_edge_ideal(&d).unwrap();
        assert_eq!(e.tet_count(), 9);
        assert_eq!(e.loop_len(), 2);
        e.validate().unwrap();
    }

    #[test]
    fn mirrored_build_matches_size() {
        let d = parse_pd(TREFOIL_PD).unwrap();
        let m = d.mirror();
        let e = build_edge_ideal(&d).unwrap();
        let em = build_edge_ideal(&m).unwrap();
        assert_eq!(e.tet_count(), em.tet_count());
        assert_eq!(e.loop_len(), em.loop_len());
    }
}
