use crate::loops::{EdgeIdeal, IdealLoop};
use crate::perm::Perm4;
use crate::tri::{edge_index, Triangulation, EDGE_VERTS};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveKind {
    TwoThree,
    ThreeTwo,
    TwoZeroEdge,
    TwoOneEdge,
    FourFour,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Refusal {
    #[error("location out of range")]
    OutOfRange,
    #[error("move not legal at this location: {0}")]
    NotLegal(&'static str),
    #[error("move would destroy or ambiguate an ideal edge")]
    WouldBreakLoop,
    #[error("result fails validation")]
    InvalidResult,
}

/// One corner of the cyclic walk around an edge: the edge appears as (a,b)
/// and the remaining vertices are u (entry side) and v (exit side); the walk
/// leaves through face index v.
#[derive(Clone, Copy, Debug)]
pub struct Corner {
    pub tet: usize,
    pub a: u8,
    pub b: u8,
    pub u: u8,
    pub v: u8,
}

/// Walks around an internal edge, returning its corners in cyclic order.
/// Returns None if the walk runs into an unglued face.
pub fn edge_walk(tri: &Triangulation, tet: usize, edge: usize) -> Option<Vec<Corner>> {
    let (a, b) = EDGE_VERTS[edge];
    let rest: Vec<u8> = (0..4u8).filter(|x| *x != a && *x != b).collect();
    let mut cur = Corner { tet, a, b, u: rest[0], v: rest[1] };
    let mut out = Vec::new();
    loop {
        out.push(cur);
        let g = tri.gluing(cur.tet, cur.v)?;
        let p = g.perm;
        let next = Corner {
            tet: g.tet,
            a: p.apply(cur.a),
            b: p.apply(cur.b),
            u: p.apply(cur.v),
            v: p.apply(cur.u),
        };
        if next.tet == out[0].tet && next.a == out[0].a && next.b == out[0].b && next.u == out[0].u
        {
            return Some(out);
        }
        cur = next;
        if out.len() > 6 * tri.tet_count() + 2 {
            return None;
        }
    }
}

/// How an outward face of the removed region is reconnected.
enum Outlet {
    /// Reglue onto new tetrahedron `new`, with `perm` sending old labels to
    /// new labels (the receiving face is the image of the old face).
    ToNew { new: usize, perm: Perm4 },
    /// The region flattens this face straight onto another removed-tet face;
    /// `perm` sends this tet's labels to the other tet's labels.
    Through { other: (usize, u8), perm: Perm4 },
}

struct Rewrite {
    removed: Vec<usize>,
    new_count: usize,
    /// Internal gluings among new tets: (tetA, faceA, tetB, perm A->B).
    internal: Vec<(usize, u8, usize, Perm4)>,
    /// For each boundary face slot (old tet, face) of the region.
    boundary: HashMap<(usize, u8), Outlet>,
}

impl Rewrite {
    /// Applies the rewrite: removed tets are deleted, new tets appended (in
    /// place of the removed ones, renumbered after the kept tets), external
    /// gluings rerouted, and the loop re-expressed. Refuses if a loop edge has
    /// no surviving anchor or the result fails validation.
    fn apply(&self, e: &EdgeIdeal) -> Result<EdgeIdeal, Refusal> {
        let tri = &e.tri;
        let n = tri.tet_count();
        let removed: BTreeSet<usize> = self.removed.iter().copied().collect();
        let mut keep_index = vec![usize::MAX; n];
        let mut kept = 0usize;
        for t in 0..n {
            if !removed.contains(&t) {
                keep_index[t] = kept;
                kept += 1;
            }
        }
        let new_base = kept;
        let mut out = Triangulation::with_tets(kept + self.new_count);

        // Resolves an old slot that lies on the region boundary to its final
        // destination: the returned perm carries the slot tet's labels to the
        // destination tet's labels, chaining through flattenings. The
        // destination is either a new tet or a kept tet reached through one.
        let resolve = |slot: (usize, u8)| -> Result<(usize, Perm4), Refusal> {
            let mut slot = slot;
            let mut acc = Perm4::IDENTITY;
            for _ in 0..4 * self.boundary.len() + 2 {
                match self.boundary.get(&slot) {
                    None => return Err(Refusal::NotLegal("unmapped region boundary face")),
                    Some(Outlet::ToNew { new, perm }) => {
                        return Ok((new_base + new, perm.compose(&acc)));
                    }
                    Some(Outlet::Through { other, perm }) => {
                        // Cross the flattening, then leave through the other
                        // face's external gluing.
                        let acc2 = perm.compose(&acc);
                        let g = tri.gluing(other.0, other.1).ok_or(Refusal::OutOfRange)?;
                        if !removed.contains(&g.tet) {
                            return Ok((keep_index[g.tet], g.perm.compose(&acc2)));
                        }
                        slot = (g.tet, g.perm.apply(other.1));
                        acc = g.perm.compose(&acc2);
                    }
                }
            }
            Err(Refusal::NotLegal("flattening does not terminate"))
        };

        // External gluings of kept tets.
        for t in 0..n {
            if removed.contains(&t) {
                continue;
            }
            for f in 0..4u8 {
                let Some(g) = tri.gluing(t, f) else { continue };
                if !removed.contains(&g.tet) {
                    let (j, pf) = (keep_index[g.tet], g.perm.apply(f));
                    if (j, pf as usize) > (keep_index[t], f as usize) {
                        out.glue(keep_index[t], f, j, g.perm);
                    }
                    continue;
                }
                // Enters the region through slot (g.tet, perm(f)).
                let (nt, q) = resolve((g.tet, g.perm.apply(f)))?;
                let total = q.compose(&g.perm);
                let src = (keep_index[t], f);
                if out.gluing(src.0, src.1).is_none() {
                    if nt == src.0 && total.apply(f) == f {
                        return Err(Refusal::NotLegal("would glue a face to itself"));
                    }
                    if out.gluing(nt, total.apply(f)).is_some() {
                        return Err(Refusal::NotLegal("conflicting reroute"));
                    }
                    out.glue(src.0, src.1, nt, total);
                }
            }
        }
        // Internal gluings among new tets.
        for &(ta, fa, tb, p) in &self.internal {
            if out.gluing(new_base + ta, fa).is_none() {
                out.glue(new_base + ta, fa, new_base + tb, p);
            }
        }
        // Boundary slots whose external partner is itself inside the region
        // (the region touches itself): resolve both ends and join them.
        let mut self_slots: Vec<(usize, u8)> = self
            .boundary
            .keys()
            .copied()
            .filter(|slot| {
                tri.gluing(slot.0, slot.1).map(|g| removed.contains(&g.tet)).unwrap_or(false)
            })
            .collect();
        self_slots.sort();
        for slot in self_slots {
            let g = tri.gluing(slot.0, slot.1).unwrap();
            let (nt1, q1) = resolve(slot)?;
            let nf1 = q1.apply(slot.1);
            let back = (g.tet, g.perm.apply(slot.1));
            let (nt2, q2) = resolve(back)?;
            if out.gluing(nt1, nf1).is_some() {
                continue;
            }
            let p = q2.compose(&g.perm).compose(&q1.inverse());
            if nt2 == nt1 && p.apply(nf1) == nf1 {
                return Err(Refusal::NotLegal("would glue a face to itself"));
            }
            if out.gluing(nt2, p.apply(nf1)).is_some() {
                return Err(Refusal::NotLegal("conflicting reroute"));
            }
            out.glue(nt1, nf1, nt2, p);
        }

        if !out.is_closed() {
            if std::env::var("MOVE_DEBUG").is_ok() {
                eprintln!("rewrite left unglued faces: {:?}", out.raw_table());
            }
            return Err(Refusal::NotLegal("rewrite left unglued faces"));
        }

        // Transfer loop marks.
        let old_skel = tri.skeleton();
        let new_skel = out.skeleton();
        let mut mark_candidates: Vec<BTreeSet<usize>> = Vec::new();
        for step in &e.knot.steps {
            let class = &old_skel.edges[step.edge];
            let mut cands = BTreeSet::new();
            for emb in &class.embeddings {
                if !removed.contains(&emb.tet) {
                    cands.insert(new_skel.edge_class(keep_index[emb.tet], emb.edge));
                    continue;
                }
                // Edge of a removed tet: usable if it lies on a mapped
                // boundary face.
                let (a, b) = EDGE_VERTS[emb.edge];
                for f in 0..4u8 {
                    if f == a || f == b {
                        continue;
                    }
                    if self.boundary.contains_key(&(emb.tet, f)) {
                        if let Ok((nt, q)) = resolve((emb.tet, f)) {
                            let ne = edge_index(q.apply(a), q.apply(b));
                            cands.insert(new_skel.edge_class(nt, ne));
                        }
                    }
                }
            }
            if cands.is_empty() {
                if std::env::var("MOVE_DEBUG").is_ok() {
                    eprintln!("mark transfer: no candidates for loop edge {}", step.edge);
                }
                return Err(Refusal::WouldBreakLoop);
            }
            mark_candidates.push(cands);
        }
        // Most marks resolve uniquely; branch over the rare ambiguous ones.
        let knot = match choose_marks(&new_skel, &mark_candidates) {
            Some(k) => k,
            None => {
                if std::env::var("MOVE_DEBUG").is_ok() {
                    eprintln!("mark transfer: no valid chain from {mark_candidates:?}");
                }
                return Err(Refusal::WouldBreakLoop);
            }
        };

        // A flattening can split off a closed summand (necessarily a sphere
        // summand of the sphere ambient): keep the component carrying the
        // loop and discard the rest.
        let (out, knot) = {
            let comps = crate::tri::split_components(&out);
            if comps.len() <= 1 {
                (out, knot)
            } else {
                let loop_tets: BTreeSet<usize> = knot
                    .steps
                    .iter()
                    .map(|s| new_skel.edges[s.edge].embeddings[0].tet)
                    .collect();
                let Some((sub, tets)) = comps
                    .into_iter()
                    .find(|(_, tets)| loop_tets.iter().all(|t| tets.contains(t)))
                else {
                    return Err(Refusal::WouldBreakLoop);
                };
                let sub_skel = sub.skeleton();
                let mut marks = BTreeSet::new();
                for s in &knot.steps {
                    let emb = new_skel.edges[s.edge].embeddings[0];
                    let local = tets.iter().position(|&t| t == emb.tet).unwrap();
                    marks.insert(sub_skel.edge_class(local, emb.edge));
                }
                let Some(knot2) = IdealLoop::from_edge_classes(&sub_skel, &marks) else {
                    return Err(Refusal::WouldBreakLoop);
                };
                (sub, knot2)
            }
        };

        let result = EdgeIdeal { tri: out, knot };
        if let Err(err) = result.validate() {
            if std::env::var("MOVE_DEBUG").is_ok() {
                eprintln!("rewrite validation failed: {err:?}");
                eprintln!("  report: {:?}", result.tri.validate());
            }
            return Err(Refusal::InvalidResult);
        }
        Ok(result)
    }
}

fn choose_marks(
    skel: &crate::tri::Skeleton,
    cands: &[BTreeSet<usize>],
) -> Option<IdealLoop> {
    fn rec(
        skel: &crate::tri::Skeleton,
        cands: &[BTreeSet<usize>],
        i: usize,
        chosen: &mut BTreeSet<usize>,
        budget: &mut usize,
    ) -> Option<IdealLoop> {
        if *budget == 0 {
            return None;
        }
        if i == cands.len() {
            *budget -= 1;
            return IdealLoop::from_edge_classes(skel, chosen);
        }
        for &c in &cands[i] {
            if chosen.contains(&c) {
                continue;
            }
            chosen.insert(c);
            if let Some(lp) = rec(skel, cands, i + 1, chosen, budget) {
                return Some(lp);
            }
            chosen.remove(&c);
        }
        None
    }
    let mut budget = 64usize;
    rec(skel, cands, 0, &mut BTreeSet::new(), &mut budget)
}

/// Role-matching permutation: maps each corner of `a` to the corner of `b`
/// with the same role; when exactly one pair is unmatched the leftovers map
/// to each other.
fn role_perm(a: [u8; 4], b: [u8; 4]) -> Perm4 {
    let mut images = [255u8; 4];
    let mut used = [false; 4];
    for i in 0..4 {
        for j in 0..4 {
            if !used[j] && a[i] == b[j] {
                images[i] = j as u8;
                used[j] = true;
                break;
            }
        }
    }
    if let Some(free_i) = (0..4).find(|&i| images[i] == 255) {
        let free_j = (0..4).find(|&j| !used[j]).unwrap();
        images[free_i] = free_j as u8;
    }
    Perm4::new(images).unwrap()
}

/// 2-3 move across the internal face (tet, face).
pub fn two_three(e: &EdgeIdeal, tet: usize, face: u8) -> Result<EdgeIdeal, Refusal> {
    if tet >= e.tri.tet_count() || face > 3 {
        return Err(Refusal::OutOfRange);
    }
    let g = e.tri.gluing(tet, face).ok_or(Refusal::NotLegal("unglued face"))?;
    let (t0, t1, p01) = (tet, g.tet, g.perm);
    if t0 == t1 {
        return Err(Refusal::NotLegal("face glued to the same tetrahedron"));
    }
    let eq = crate::tri::face_verts(face);
    // Roles: 0 apex of t0, 1 apex of t1, 2/3/4 the equator.
    let mut roles0 = [0u8; 4];
    roles0[face as usize] = 0;
    for (k, &v) in eq.iter().enumerate() {
        roles0[v as usize] = 2 + k as u8;
    }
    let mut roles1 = [0u8; 4];
    roles1[p01.apply(face) as usize] = 1;
    for (k, &v) in eq.iter().enumerate() {
        roles1[p01.apply(v) as usize] = 2 + k as u8;
    }
    // New tets: N_k has corners (apex0, apex1, eq_{k+1}, eq_{k+2}).
    let mut rw = Rewrite {
        removed: vec![t0, t1],
        new_count: 3,
        internal: vec![
            (0, 2, 1, Perm4::new([0, 1, 3, 2]).unwrap()),
            (1, 2, 2, Perm4::new([0, 1, 3, 2]).unwrap()),
            (2, 2, 0, Perm4::new([0, 1, 3, 2]).unwrap()),
        ],
        boundary: HashMap::new(),
    };
    // Old boundary faces: each face of t0/t1 other than the glued one.
    for k in 0..3usize {
        // t0's face opposite eq[k] carries roles {0, eq_{k+1}, eq_{k+2}} and
        // lands on N_k's face 1 (opposite apex 1).
        let old_face = eq[k];
        let q = role_perm(roles0, [0, 1, 2 + ((k + 1) % 3) as u8, 2 + ((k + 2) % 3) as u8]);
        rw.boundary.insert((t0, old_face), Outlet::ToNew { new: k, perm: q });
        let old_face1 = p01.apply(eq[k]);
        let q1 = role_perm(roles1, [0, 1, 2 + ((k + 1) % 3) as u8, 2 + ((k + 2) % 3) as u8]);
        rw.boundary.insert((t1, old_face1), Outlet::ToNew { new: k, perm: q1 });
    }
    rw.apply(e)
}

/// 3-2 move about an internal degree-3 edge.
pub fn three_two(e: &EdgeIdeal, tet: usize, edge: usize) -> Result<EdgeIdeal, Refusal> {
    if tet >= e.tri.tet_count() || edge > 5 {
        return Err(Refusal::OutOfRange);
    }
    let skel = e.tri.skeleton();
    if e.knot.contains_edge(skel.edge_class(tet, edge)) {
        return Err(Refusal::WouldBreakLoop);
    }
    let corners = edge_walk(&e.tri, tet, edge).ok_or(Refusal::NotLegal("boundary edge"))?;
    if corners.len() != 3 {
        return Err(Refusal::NotLegal("edge degree is not 3"));
    }
    let tets: BTreeSet<usize> = corners.iter().map(|c| c.tet).collect();
    if tets.len() != 3 {
        return Err(Refusal::NotLegal("tetrahedra around the edge are not distinct"));
    }
    // Roles: 0 = a (edge tail), 1 = b, 2+i = equator x_i; the equator vertex
    // shared by corners i-1 and i is x_i, so corner i carries v ~ x_i and
    // u ~ x_{i+1}.
    let mut rw = Rewrite {
        removed: corners.iter().map(|c| c.tet).collect(),
        new_count: 2,
        internal: vec![(0, 0, 1, Perm4::IDENTITY)],
        boundary: HashMap::new(),
    };
    // New tet 0 = (a, x0, x1, x2); new tet 1 = (b, x0, x1, x2).
    for (i, c) in corners.iter().enumerate() {
        let mut roles = [0u8; 4];
        roles[c.a as usize] = 0;
        roles[c.b as usize] = 1;
        roles[c.u as usize] = 2 + ((i + 1) % 3) as u8;
        roles[c.v as usize] = 2 + i as u8;
        // Face opposite a (contains b and both flanks) -> new tet 1.
        let q_b = role_perm(roles, [1, 2, 3, 4]);
        rw.boundary.insert((c.tet, c.a), Outlet::ToNew { new: 1, perm: q_b });
        let q_a = role_perm(roles, [0, 2, 3, 4]);
        rw.boundary.insert((c.tet, c.b), Outlet::ToNew { new: 0, perm: q_a });
    }
    rw.apply(e)
}

/// 2-0 move about an internal degree-2 edge: flattens the two-tetrahedron
/// pillow around it.
pub fn two_zero(e: &EdgeIdeal, tet: usize, edge: usize) -> Result<EdgeIdeal, Refusal> {
    if tet >= e.tri.tet_count() || edge > 5 {
        return Err(Refusal::OutOfRange);
    }
    let skel = e.tri.skeleton();
    if e.knot.contains_edge(skel.edge_class(tet, edge)) {
        return Err(Refusal::WouldBreakLoop);
    }
    let corners = edge_walk(&e.tri, tet, edge).ok_or(Refusal::NotLegal("boundary edge"))?;
    if corners.len() != 2 {
        return Err(Refusal::NotLegal("edge degree is not 2"));
    }
    let (c0, c1) = (corners[0], corners[1]);
    if c0.tet == c1.tet {
        return Err(Refusal::NotLegal("pillow tetrahedra are not distinct"));
    }
    // Roles: a=0, b=1, X=2, Y=3 with u0~X, v0~Y, u1~Y, v1~X.
    let roles0 = role_assign(c0, 2, 3);
    let roles1 = role_assign(c1, 3, 2);
    let mut rw = Rewrite { removed: vec![c0.tet, c1.tet], new_count: 0, internal: vec![], boundary: HashMap::new() };
    let m_a = role_perm(roles0, roles1); // through-map; same both sides here
    rw.boundary.insert((c0.tet, c0.a), Outlet::Through { other: (c1.tet, c1.a), perm: m_a });
    rw.boundary.insert((c1.tet, c1.a), Outlet::Through { other: (c0.tet, c0.a), perm: m_a.inverse() });
    rw.boundary.insert((c0.tet, c0.b), Outlet::Through { other: (c1.tet, c1.b), perm: m_a });
    rw.boundary.insert((c1.tet, c1.b), Outlet::Through { other: (c0.tet, c0.b), perm: m_a.inverse() });
    rw.apply(e)
}

fn role_assign(c: Corner, ur: u8, vr: u8) -> [u8; 4] {
    let mut roles = [0u8; 4];
    roles[c.a as usize] = 0;
    roles[c.b as usize] = 1;
    roles[c.u as usize] = ur;
    roles[c.v as usize] = vr;
    roles
}

/// 2-1 move: absorbs the snapped ball containing an internal degree-1 edge,
/// regluing its two outer neighbours directly.
pub fn two_one(e: &EdgeIdeal, tet: usize, edge: usize) -> Result<EdgeIdeal, Refusal> {
    if tet >= e.tri.tet_count() || edge > 5 {
        return Err(Refusal::OutOfRange);
    }
    let skel = e.tri.skeleton();
    if e.knot.contains_edge(skel.edge_class(tet, edge)) {
        return Err(Refusal::WouldBreakLoop);
    }
    let corners = edge_walk(&e.tri, tet, edge).ok_or(Refusal::NotLegal("boundary edge"))?;
    if corners.len() != 1 {
        return Err(Refusal::NotLegal("edge degree is not 1"));
    }
    let c = corners[0];
    // Faces u and v of the ball are glued to each other; its free faces are
    // opposite a and b. The absorption maps face-opp-a onto face-opp-b by
    // swapping a and b.
    let ga = e.tri.gluing(c.tet, c.a).ok_or(Refusal::NotLegal("unglued face"))?;
    let gb = e.tri.gluing(c.tet, c.b).ok_or(Refusal::NotLegal("unglued face"))?;
    if ga.tet == c.tet || gb.tet == c.tet {
        return Err(Refusal::NotLegal("snapped ball glued to itself"));
    }
    let m = Perm4::transposition(c.a, c.b);
    let mut rw = Rewrite { removed: vec![c.tet], new_count: 0, internal: vec![], boundary: HashMap::new() };
    rw.boundary.insert((c.tet, c.a), Outlet::Through { other: (c.tet, c.b), perm: m });
    rw.boundary.insert((c.tet, c.b), Outlet::Through { other: (c.tet, c.a), perm: m });
    rw.apply(e)
}

/// 4-4 move about an internal degree-4 edge; `axis` picks which equatorial
/// diagonal becomes the new central edge.
pub fn four_four(e: &EdgeIdeal, tet: usize, edge: usize, axis: u8) -> Result<EdgeIdeal, Refusal> {
    if tet >= e.tri.tet_count() || edge > 5 || axis > 1 {
        return Err(Refusal::OutOfRange);
    }
    let skel = e.tri.skeleton();
    if e.knot.contains_edge(skel.edge_class(tet, edge)) {
        return Err(Refusal::WouldBreakLoop);
    }
    let corners = edge_walk(&e.tri, tet, edge).ok_or(Refusal::NotLegal("boundary edge"))?;
    if corners.len() != 4 {
        return Err(Refusal::NotLegal("edge degree is not 4"));
    }
    let tets: BTreeSet<usize> = corners.iter().map(|c| c.tet).collect();
    if tets.len() != 4 {
        return Err(Refusal::NotLegal("tetrahedra around the edge are not distinct"));
    }
    // Roles: a=0, b=1, x_i = 2+i (i mod 4); corner i has v ~ x_i, u ~ x_{i+1}.
    // New axis joins x_s and x_{s+2} where s = axis. New equatorial cycle is
    // (a, x_{s+1}, b, x_{s+3}).
    let s = axis as usize;
    let ax0 = 2 + (s as u8);
    let ax1 = 2 + (((s + 2) % 4) as u8);
    let ring = [0u8, 2 + (((s + 1) % 4) as u8), 1, 2 + (((s + 3) % 4) as u8)];
    // New tets K_j = (ax0, ax1, ring_j, ring_{j+1}).
    let new_roles: Vec<[u8; 4]> =
        (0..4).map(|j| [ax0, ax1, ring[j], ring[(j + 1) % 4]]).collect();
    let mut internal = Vec::new();
    for j in 0..4usize {
        internal.push((j, 2u8, (j + 1) % 4, Perm4::new([0, 1, 3, 2]).unwrap()));
    }
    let mut rw = Rewrite { removed: corners.iter().map(|c| c.tet).collect(), new_count: 4, internal, boundary: HashMap::new() };
    for (i, c) in corners.iter().enumerate() {
        let mut roles = [0u8; 4];
        roles[c.a as usize] = 0;
        roles[c.b as usize] = 1;
        roles[c.u as usize] = 2 + ((i + 1) % 4) as u8;
        roles[c.v as usize] = 2 + i as u8;
        for &old_face in &[c.a, c.b] {
            let face_roles: BTreeSet<u8> = (0..4u8)
                .filter(|x| *x != old_face)
                .map(|x| roles[x as usize])
                .collect();
            // Find the unique new tet containing these three roles.
            let mut dest = None;
            for (j, nr) in new_roles.iter().enumerate() {
                let set: BTreeSet<u8> = nr.iter().copied().collect();
                if face_roles.iter().all(|r| set.contains(r)) {
                    dest = Some(j);
                    break;
                }
            }
            let j = dest.ok_or(Refusal::NotLegal("no receiving tetrahedron"))?;
            let q = role_perm(roles, new_roles[j]);
            rw.boundary.insert((c.tet, old_face), Outlet::ToNew { new: j, perm: q });
        }
    }
    rw.apply(e)
}

/// Dispatch for the spec-level move interface.
pub fn apply_move(
    e: &EdgeIdeal,
    kind: MoveKind,
    tet: usize,
    index: u8,
    option: u8,
) -> Result<EdgeIdeal, Refusal> {
    match kind {
        MoveKind::TwoThree => two_three(e, tet, index),
        MoveKind::ThreeTwo => three_two(e, tet, index as usize),
        MoveKind::TwoZeroEdge => two_zero(e, tet, index as usize),
        MoveKind::TwoOneEdge => two_one(e, tet, index as usize),
        MoveKind::FourFour => four_four(e, tet, index as usize, option),
    }
}

/// Locations of all legal 2-3 moves (internal faces between distinct tets).
pub fn two_three_sites(tri: &Triangulation) -> Vec<(usize, u8)> {
    let mut out = Vec::new();
    let skel = tri.skeleton();
    for tc in &skel.triangles {
        if tc.embeddings.len() == 2 {
            let (t, f) = tc.embeddings[0];
            if tri.gluing(t, f).map(|g| g.tet != t).unwrap_or(false) {
                out.push((t, f));
            }
        }
    }
    out
}

/// A serializable description of a performed move, for certificate replay.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct MoveRecord {
    pub kind: String,
    pub tet: usize,
    pub index: u8,
    pub option: u8,
}

impl MoveRecord {
    pub fn kind_enum(&self) -> Option<MoveKind> {
        Some(match self.kind.as_str() {
            "2-3" => MoveKind::TwoThree,
            "3-2" => MoveKind::ThreeTwo,
            "2-0" => MoveKind::TwoZeroEdge,
            "2-1" => MoveKind::TwoOneEdge,
            "4-4" => MoveKind::FourFour,
            _ => return None,
        })
    }

    pub fn of(kind: MoveKind, tet: usize, index: u8, option: u8) -> MoveRecord {
        let kind = match kind {
            MoveKind::TwoThree => "2-3",
            MoveKind::ThreeTwo => "3-2",
            MoveKind::TwoZeroEdge => "2-0",
            MoveKind::TwoOneEdge => "2-1",
            MoveKind::FourFour => "4-4",
        };
        MoveRecord { kind: kind.to_string(), tet, index, option }
    }
}

/// Replays a recorded move sequence, refusing on the first illegal step.
pub fn replay_moves(e: &EdgeIdeal, moves: &[MoveRecord]) -> Result<EdgeIdeal, Refusal> {
    let mut cur = e.clone();
    for m in moves {
        let kind = m.kind_enum().ok_or(Refusal::NotLegal("unknown move kind"))?;
        cur = apply_move(&cur, kind, m.tet, m.index, m.option)?;
    }
    Ok(cur)
}

#[allow(unused)]
fn unused_type_check(_: &BTreeMap<u8, u8>) {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{build_edge_ideal, unknot_edge_ideal};
    use crate::diagram::parse_pd;

    #[test]
    fn two_three_then_three_two_is_identity() {
        let d = parse_pd("X[1,2,2,1]").unwrap();
        let e = build_edge_ideal(&d).unwrap();
        let sites = two_three_sites(&e.tri);
        assert!(!sites.is_empty());
        let before = e.marked_signature();
        for (t, f) in sites {
            let moved = match two_three(&e, t, f) {
                Ok(m) => m,
                Err(Refusal::InvalidResult) => continue,
                Err(other) => panic!("unexpected refusal: {other:?}"),
            };
            assert_eq!(moved.tet_count(), e.tet_count() + 1);
            // The created central edge joins the two apexes of the three new
            // tets, which sit at the end of the table.
            let nbase = moved.tet_count() - 3;
            let back = three_two(&moved, nbase, crate::tri::edge_index(0, 1)).unwrap();
            assert_eq!(back.marked_signature(), before);
        }
    }

    #[test]
    fn three_two_refused_on_loop_edge() {
        // Build a small edge-ideal triangulation and 2-3 it so a degree-3
        // edge exists; the loop edges themselves must be protected.
        let e = unknot_edge_ideal();
        let skel = e.tri.skeleton();
        let loop_edge = e.knot.steps[0].edge;
        let emb = skel.edges[loop_edge].embeddings[0];
        let r = three_two(&e, emb.tet, emb.edge);
        assert_eq!(r.unwrap_err(), Refusal::WouldBreakLoop);
    }

    #[test]
    fn random_two_three_walk_stays_valid() {
        use rand::prelude::*;
        let d = parse_pd("X[1,2,2,1]").unwrap();
        let mut e = build_edge_ideal(&d).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..12 {
            let sites = two_three_sites(&e.tri);
            let (t, f) = sites[rng.gen_range(0..sites.len())];
            match two_three(&e, t, f) {
                Ok(next) => {
                    next.validate().unwrap();
                    e = next;
                }
                Err(Refusal::InvalidResult) | Err(Refusal::WouldBreakLoop) => {}
                Err(other) => panic!("unexpected refusal: {other:?}"),
            }
        }
    }
}
