use crate::perm::Perm4;
use thiserror::Error;

/// A face gluing: face `f` of some tetrahedron is glued to face
/// `perm(f)` of tetrahedron `tet`, with vertex correspondence `perm`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gluing {
    pub tet: usize,
    pub perm: Perm4,
}

/// Local edges of a tetrahedron in the fixed order 01,02,03,12,13,23.
pub const EDGE_VERTS: [(u8, u8); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub fn edge_index(a: u8, b: u8) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("not an edge: ({a},{b})"),
    }
}

/// The two vertices of face `f` other than `a`; face `f` is the face opposite
/// vertex `f`.
pub fn face_verts(f: u8) -> [u8; 3] {
    let mut out = [0u8; 3];
    let mut k = 0;
    for v in 0..4u8 {
        if v != f {
            out[k] = v;
            k += 1;
        }
    }
    out
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("tetrahedron index {0} out of range (tetCount {1})")]
    TetOutOfRange(usize, usize),
    #[error("face ({tet},{face}) glued to itself")]
    FaceGluedToSelf { tet: usize, face: u8 },
    #[error("gluing of face ({tet},{face}) is not involutive")]
    NotInvolutive { tet: usize, face: u8 },
}

/// A generalized triangulation: a gluing table of tetrahedra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    gluings: Vec<[Option<Gluing>; 4]>,
}

impl Triangulation {
    pub fn empty() -> Triangulation {
        Triangulation { gluings: Vec::new() }
    }

    /// Builds a triangulation from a raw gluing table, checking only the
    /// table-level invariants (range, involutivity, no face glued to itself).
    pub fn from_gluings(table: Vec<[Option<(usize, Perm4)>; 4]>) -> Result<Triangulation, TableError> {
        let n = table.len();
        let gluings: Vec<[Option<Gluing>; 4]> = table
            .iter()
            .map(|faces| {
                let mut row = [None; 4];
                for (f, g) in faces.iter().enumerate() {
                    if let Some((tet, perm)) = g {
                        row[f] = Some(Gluing { tet: *tet, perm: *perm });
                    }
                }
                row
            })
            .collect();
        let tri = Triangulation { gluings };
        for t in 0..n {
            for f in 0..4u8 {
                if let Some(g) = tri.gluing(t, f) {
                    if g.tet >= n {
                        return Err(TableError::TetOutOfRange(g.tet, n));
                    }
                    let pf = g.perm.apply(f);
                    if g.tet == t && pf == f {
                        return Err(TableError::FaceGluedToSelf { tet: t, face: f });
                    }
                    match tri.gluing(g.tet, pf) {
                        Some(back) if back.tet == t && back.perm == g.perm.inverse() => {}
                        _ => return Err(TableError::NotInvolutive { tet: t, face: f }),
                    }
                }
            }
        }
        Ok(tri)
    }

    /// Builder used internally: pushes unglued tetrahedra, then `glue`.
    pub fn with_tets(n: usize) -> Triangulation {
        Triangulation { gluings: vec![[None; 4]; n] }
    }

    pub fn add_tet(&mut self) -> usize {
        self.gluings.push([None; 4]);
        self.gluings.len() - 1
    }

    /// Glues face `f0` of `t0` to face `perm(f0)` of `t1`. Panics if either
    /// slot is already occupied or the gluing would attach a face to itself.
    pub fn glue(&mut self, t0: usize, f0: u8, t1: usize, perm: Perm4) {
        let f1 = perm.apply(f0);
        assert!(!(t0 == t1 && f0 == f1), "face glued to itself");
        assert!(self.gluings[t0][f0 as usize].is_none(), "slot ({t0},{f0}) already glued");
        assert!(self.gluings[t1][f1 as usize].is_none(), "slot ({t1},{f1}) already glued");
        self.gluings[t0][f0 as usize] = Some(Gluing { tet: t1, perm });
        self.gluings[t1][f1 as usize] = Some(Gluing { tet: t0, perm: perm.inverse() });
    }

    pub fn unglue(&mut self, t: usize, f: u8) -> Option<Gluing> {
        let g = self.gluings[t][f as usize].take()?;
        let back = g.perm.apply(f);
        self.gluings[g.tet][back as usize] = None;
        Some(g)
    }

    pub fn tet_count(&self) -> usize {
        self.gluings.len()
    }

    pub fn gluing(&self, tet: usize, face: u8) -> Option<&Gluing> {
        self.gluings[tet][face as usize].as_ref()
    }

    pub fn is_closed(&self) -> bool {
        self.gluings.iter().all(|row| row.iter().all(|g| g.is_some()))
    }

    pub fn raw_table(&self) -> Vec<[Option<(usize, Perm4)>; 4]> {
        self.gluings
            .iter()
            .map(|row| {
                let mut out = [None; 4];
                for (f, g) in row.iter().enumerate() {
                    if let Some(g) = g {
                        out[f] = Some((g.tet, g.perm));
                    }
                }
                out
            })
            .collect()
    }

    pub fn disjoint_union(&self, other: &Triangulation) -> Triangulation {
        let shift = self.tet_count();
        let mut gluings = self.gluings.clone();
        for row in &other.gluings {
            let mut shifted = [None; 4];
            for (f, g) in row.iter().enumerate() {
                if let Some(g) = g {
                    shifted[f] = Some(Gluing { tet: g.tet + shift, perm: g.perm });
                }
            }
            gluings.push(shifted);
        }
        Triangulation { gluings }
    }

    /// Relabels tetrahedra by `tet_map` (new index of old tet `t` is
    /// `tet_map[t]`) and vertices of each tet by `vert_maps[t]`.
    pub fn relabel(&self, tet_map: &[usize], vert_maps: &[Perm4]) -> Triangulation {
        let n = self.tet_count();
        let mut gluings = vec![[None; 4]; n];
        for t in 0..n {
            for f in 0..4u8 {
                if let Some(g) = self.gluing(t, f) {
                    // New gluing for face vert_maps[t](f) of tet_map[t]:
                    // labels travel new->old (inverse), across, then old->new.
                    let perm = vert_maps[g.tet].compose(&g.perm).compose(&vert_maps[t].inverse());
                    gluings[tet_map[t]][vert_maps[t].apply(f) as usize] =
                        Some(Gluing { tet: tet_map[g.tet], perm });
                }
            }
        }
        Triangulation { gluings }
    }

    pub fn skeleton(&self) -> Skeleton {
        Skeleton::build(self)
    }

    pub fn validate(&self) -> ValidityReport {
        let skel = self.skeleton();
        let is_closed = self.is_closed();
        let reversed_edges: Vec<usize> =
            (0..skel.edges.len()).filter(|&e| skel.edges[e].reversed).collect();
        let vertex_link_checks = skel.vertex_link_checks(self);
        let is_closed_3_manifold = is_closed
            && reversed_edges.is_empty()
            && vertex_link_checks.iter().all(|c| c.euler == 2 && c.connected);
        ValidityReport { is_closed, reversed_edges, vertex_link_checks, is_closed_3_manifold }
    }

    /// Whether the triangulation admits a consistent orientation of all
    /// tetrahedra (every gluing permutation odd after sign adjustment).
    pub fn is_orientable(&self) -> bool {
        let n = self.tet_count();
        if n == 0 {
            return true;
        }
        let mut sign = vec![0i8; n];
        for start in 0..n {
            if sign[start] != 0 {
                continue;
            }
            sign[start] = 1;
            let mut stack = vec![start];
            while let Some(t) = stack.pop() {
                for f in 0..4u8 {
                    if let Some(g) = self.gluing(t, f) {
                        let want = if g.perm.is_even() { -sign[t] } else { sign[t] };
                        if sign[g.tet] == 0 {
                            sign[g.tet] = want;
                            stack.push(g.tet);
                        } else if sign[g.tet] != want {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// One embedding of an edge class: local edge `edge` of tetrahedron `tet`;
/// `forward` records whether the embedding's (lo,hi) vertex order agrees with
/// the class orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeEmbedding {
    pub tet: usize,
    pub edge: usize,
    pub forward: bool,
}

#[derive(Clone, Debug)]
pub struct EdgeClass {
    pub embeddings: Vec<EdgeEmbedding>,
    pub reversed: bool,
    /// Endpoint vertex classes (tail, head) under the class orientation.
    pub endpoints: (usize, usize),
}

impl EdgeClass {
    pub fn degree(&self) -> usize {
        self.embeddings.len()
    }
}

#[derive(Clone, Debug)]
pub struct TriangleClass {
    /// (tet, face) embeddings; one for a boundary face, two for an internal one.
    pub embeddings: Vec<(usize, u8)>,
}

#[derive(Clone, Debug)]
pub struct VertexClass {
    pub embeddings: Vec<(usize, u8)>,
}

#[derive(Clone, Debug)]
pub struct Skeleton {
    pub vertices: Vec<VertexClass>,
    pub edges: Vec<EdgeClass>,
    pub triangles: Vec<TriangleClass>,
    vertex_of: Vec<[usize; 4]>,
    edge_of: Vec<[usize; 6]>,
    edge_forward: Vec<[bool; 6]>,
    triangle_of: Vec<[usize; 4]>,
}

impl Skeleton {
    pub fn vertex_class(&self, tet: usize, v: u8) -> usize {
        self.vertex_of[tet][v as usize]
    }

    pub fn edge_class(&self, tet: usize, edge: usize) -> usize {
        self.edge_of[tet][edge]
    }

    /// Whether local edge `edge` of `tet`, read lo->hi, agrees with the class
    /// orientation.
    pub fn edge_is_forward(&self, tet: usize, edge: usize) -> bool {
        self.edge_forward[tet][edge]
    }

    pub fn triangle_class(&self, tet: usize, face: u8) -> usize {
        self.triangle_of[tet][face as usize]
    }

    fn build(tri: &Triangulation) -> Skeleton {
        let n = tri.tet_count();

        // Vertices: union-find over (tet, vertex).
        let mut vuf = UnionFind::new(4 * n);
        for t in 0..n {
            for f in 0..4u8 {
                if let Some(g) = tri.gluing(t, f) {
                    for v in face_verts(f) {
                        vuf.union(4 * t + v as usize, 4 * g.tet + g.perm.apply(v) as usize);
                    }
                }
            }
        }
        let (vertex_ids, vertex_count) = vuf.stable_ids();
        let mut vertices = vec![VertexClass { embeddings: Vec::new() }; vertex_count];
        let mut vertex_of = vec![[0usize; 4]; n];
        for t in 0..n {
            for v in 0..4u8 {
                let id = vertex_ids[4 * t + v as usize];
                vertex_of[t][v as usize] = id;
                vertices[id].embeddings.push((t, v));
            }
        }

        // Edges: union-find with orientation parity over (tet, local edge).
        let mut euf = SignedUnionFind::new(6 * n);
        for t in 0..n {
            for f in 0..4u8 {
                if let Some(g) = tri.gluing(t, f) {
                    let vs = face_verts(f);
                    for i in 0..3 {
                        for j in i + 1..3 {
                            let (a, b) = (vs[i], vs[j]);
                            let (pa, pb) = (g.perm.apply(a), g.perm.apply(b));
                            let same = (a < b) == (pa < pb);
                            euf.union(
                                6 * t + edge_index(a, b),
                                6 * g.tet + edge_index(pa, pb),
                                same,
                            );
                        }
                    }
                }
            }
        }
        let (edge_ids, edge_signs, edge_count, edge_reversed) = euf.stable_ids();
        let mut edges: Vec<EdgeClass> = Vec::with_capacity(edge_count);
        for _ in 0..edge_count {
            edges.push(EdgeClass { embeddings: Vec::new(), reversed: false, endpoints: (0, 0) });
        }
        let mut edge_of = vec![[0usize; 6]; n];
        let mut edge_forward = vec![[true; 6]; n];
        for t in 0..n {
            for e in 0..6 {
                let id = edge_ids[6 * t + e];
                edge_of[t][e] = id;
                edge_forward[t][e] = edge_signs[6 * t + e];
                edges[id].embeddings.push(EdgeEmbedding {
                    tet: t,
                    edge: e,
                    forward: edge_signs[6 * t + e],
                });
                edges[id].reversed = edge_reversed[id];
            }
        }
        for ec in edges.iter_mut() {
            let rep = ec.embeddings[0];
            let (lo, hi) = EDGE_VERTS[rep.edge];
            let (tail, head) = if rep.forward { (lo, hi) } else { (hi, lo) };
            ec.endpoints = (
                vertex_of[rep.tet][tail as usize],
                vertex_of[rep.tet][head as usize],
            );
        }

        // Triangles.
        let mut tuf = UnionFind::new(4 * n);
        for t in 0..n {
            for f in 0..4u8 {
                if let Some(g) = tri.gluing(t, f) {
                    tuf.union(4 * t + f as usize, 4 * g.tet + g.perm.apply(f) as usize);
                }
            }
        }
        let (tri_ids, tri_count) = tuf.stable_ids();
        let mut triangles = vec![TriangleClass { embeddings: Vec::new() }; tri_count];
        let mut triangle_of = vec![[0usize; 4]; n];
        for t in 0..n {
            for f in 0..4u8 {
                let id = tri_ids[4 * t + f as usize];
                triangle_of[t][f as usize] = id;
                triangles[id].embeddings.push((t, f));
            }
        }

        Skeleton { vertices, edges, triangles, vertex_of, edge_of, edge_forward, triangle_of }
    }

    /// Euler characteristic and connectivity of each vertex link, assembled
    /// from one corner triangle per (tet, vertex) incidence.
    fn vertex_link_checks(&self, tri: &Triangulation) -> Vec<LinkCheck> {
        let n = tri.tet_count();
        // Link triangle for corner (t,v): sides indexed by the face of t at v
        // through which the link continues. Side (t,v,f) is glued to side
        // (g.tet, perm(v), perm(f)).
        let mut side_ids: std::collections::HashMap<(usize, u8, u8), usize> =
            std::collections::HashMap::new();
        let mut next = 0usize;
        for t in 0..n {
            for v in 0..4u8 {
                for f in 0..4u8 {
                    if f != v {
                        side_ids.insert((t, v, f), next);
                        next += 1;
                    }
                }
            }
        }
        let mut uf = UnionFind::new(next);
        let mut corner_uf = UnionFind::new(4 * n);
        let mut boundary_sides = vec![true; next];
        for t in 0..n {
            for v in 0..4u8 {
                for f in 0..4u8 {
                    if f == v {
                        continue;
                    }
                    if let Some(g) = tri.gluing(t, f) {
                        let a = side_ids[&(t, v, f)];
                        let b = side_ids[&(g.tet, g.perm.apply(v), g.perm.apply(f))];
                        uf.union(a, b);
                        boundary_sides[a] = false;
                        corner_uf.union(4 * t + v as usize, 4 * g.tet + g.perm.apply(v) as usize);
                    }
                }
            }
        }
        // Count link cells per vertex class: faces = corners, edges = side
        // classes, vertices = link-vertex classes. A link vertex of corner
        // (t,v) sits on edge (v,w) of t; two sides of a corner triangle meet
        // at the link vertex towards w.
        let mut lv_ids: std::collections::HashMap<(usize, u8, u8), usize> =
            std::collections::HashMap::new();
        let mut lvn = 0usize;
        for t in 0..n {
            for v in 0..4u8 {
                for w in 0..4u8 {
                    if w != v {
                        lv_ids.insert((t, v, w), lvn);
                        lvn += 1;
                    }
                }
            }
        }
        let mut lv_uf = UnionFind::new(lvn);
        for t in 0..n {
            for v in 0..4u8 {
                for f in 0..4u8 {
                    if f == v {
                        continue;
                    }
                    if let Some(g) = tri.gluing(t, f) {
                        // Link vertices on the two edges of face f at v.
                        for w in face_verts(f) {
                            if w != v {
                                lv_uf.union(
                                    lv_ids[&(t, v, w)],
                                    lv_ids[&(g.tet, g.perm.apply(v), g.perm.apply(w))],
                                );
                            }
                        }
                    }
                }
            }
        }

        let vcount = self.vertices.len();
        let mut faces = vec![0i64; vcount];
        let mut closed = vec![true; vcount];
        for t in 0..n {
            for v in 0..4u8 {
                faces[self.vertex_of[t][v as usize]] += 1;
            }
        }
        let mut edge_seen = std::collections::HashSet::new();
        let mut edge_count = vec![0i64; vcount];
        for t in 0..n {
            for v in 0..4u8 {
                let vc = self.vertex_of[t][v as usize];
                for f in 0..4u8 {
                    if f == v {
                        continue;
                    }
                    let sid = side_ids[&(t, v, f)];
                    if edge_seen.insert(uf.find(sid)) {
                        edge_count[vc] += 1;
                    }
                    if boundary_sides[sid] && tri.gluing(t, f).is_none() {
                        closed[vc] = false;
                    }
                }
            }
        }
        let mut lv_seen = std::collections::HashSet::new();
        let mut lv_count = vec![0i64; vcount];
        for t in 0..n {
            for v in 0..4u8 {
                let vc = self.vertex_of[t][v as usize];
                for w in 0..4u8 {
                    if w == v {
                        continue;
                    }
                    if lv_seen.insert(lv_uf.find(lv_ids[&(t, v, w)])) {
                        lv_count[vc] += 1;
                    }
                }
            }
        }
        // Connectivity of each link: corner classes per vertex class.
        let mut comp_seen = std::collections::HashSet::new();
        let mut comp_count = vec![0i64; vcount];
        for t in 0..n {
            for v in 0..4u8 {
                let vc = self.vertex_of[t][v as usize];
                if comp_seen.insert(corner_uf.find(4 * t + v as usize)) {
                    comp_count[vc] += 1;
                }
            }
        }

        (0..vcount)
            .map(|vc| LinkCheck {
                euler: lv_count[vc] - edge_count[vc] + faces[vc],
                connected: comp_count[vc] <= 1,
                closed: closed[vc],
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkCheck {
    pub euler: i64,
    pub connected: bool,
    pub closed: bool,
}

/// Splits a triangulation into connected components; each component comes
/// with the list of original tetrahedron indices, in index order.
pub fn split_components(tri: &Triangulation) -> Vec<(Triangulation, Vec<usize>)> {
    let n = tri.tet_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = Vec::new();
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(t) = stack.pop() {
            comp.push(t);
            for f in 0..4u8 {
                if let Some(g) = tri.gluing(t, f) {
                    if !seen[g.tet] {
                        seen[g.tet] = true;
                        stack.push(g.tet);
                    }
                }
            }
        }
        comp.sort();
        let mut sub = Triangulation::with_tets(comp.len());
        for (i, &t) in comp.iter().enumerate() {
            for f in 0..4u8 {
                if let Some(g) = tri.gluing(t, f) {
                    let j = comp.iter().position(|&x| x == g.tet).unwrap();
                    let pf = g.perm.apply(f);
                    if (j, pf as usize) > (i, f as usize) {
                        sub.glue(i, f, j, g.perm);
                    }
                }
            }
        }
        out.push((sub, comp));
    }
    out
}

impl Triangulation {
    pub fn is_connected(&self) -> bool {
        self.tet_count() <= 1 || split_components(self).len() == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidityReport {
    pub is_closed: bool,
    pub reversed_edges: Vec<usize>,
    pub vertex_link_checks: Vec<LinkCheck>,
    pub is_closed_3_manifold: bool,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    /// Class ids numbered by first appearance in element order.
    fn stable_ids(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut ids = vec![usize::MAX; n];
        let mut next = 0;
        let mut out = vec![0usize; n];
        for x in 0..n {
            let r = self.find(x);
            if ids[r] == usize::MAX {
                ids[r] = next;
                next += 1;
            }
            out[x] = ids[r];
        }
        (out, next)
    }
}

/// Union-find over elements carrying a sign relative to their root; detects
/// classes forced to contain an orientation-reversing identification.
struct SignedUnionFind {
    parent: Vec<usize>,
    // sign[x]: whether x has the same orientation as its parent.
    sign: Vec<bool>,
    reversed_root: Vec<bool>,
}

impl SignedUnionFind {
    fn new(n: usize) -> SignedUnionFind {
        SignedUnionFind {
            parent: (0..n).collect(),
            sign: vec![true; n],
            reversed_root: vec![false; n],
        }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        if self.parent[x] == x {
            return (x, true);
        }
        let (root, psign) = self.find(self.parent[x]);
        self.parent[x] = root;
        self.sign[x] = self.sign[x] == psign;
        (root, self.sign[x])
    }

    fn union(&mut self, a: usize, b: usize, same: bool) {
        let (ra, sa) = self.find(a);
        let (rb, sb) = self.find(b);
        if ra == rb {
            if (sa == sb) != same {
                self.reversed_root[ra] = true;
            }
            return;
        }
        let (keep, drop) = (ra.min(rb), ra.max(rb));
        let rel = (sa == sb) == same;
        self.parent[drop] = keep;
        self.sign[drop] = rel;
        if self.reversed_root[drop] {
            self.reversed_root[keep] = true;
        }
    }

    fn stable_ids(&mut self) -> (Vec<usize>, Vec<bool>, usize, Vec<bool>) {
        let n = self.parent.len();
        let mut ids = vec![usize::MAX; n];
        let mut first_sign = vec![true; n];
        let mut next = 0;
        let mut out = vec![0usize; n];
        let mut signs = vec![true; n];
        let mut reversed = Vec::new();
        for x in 0..n {
            let (r, s) = self.find(x);
            if ids[r] == usize::MAX {
                ids[r] = next;
                first_sign[r] = s;
                reversed.push(self.reversed_root[r]);
                next += 1;
            }
            out[x] = ids[r];
            signs[x] = s == first_sign[r];
        }
        (out, signs, next, reversed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_table() {
        let tri = Triangulation::from_gluings(vec![]).unwrap();
        assert_eq!(tri.tet_count(), 0);
        let skel = tri.skeleton();
        assert!(skel.vertices.is_empty() && skel.edges.is_empty() && skel.triangles.is_empty());
    }

    #[test]
    fn face_glued_to_itself_rejected() {
        let p = Perm4::IDENTITY;
        let err = Triangulation::from_gluings(vec![[Some((0, p)), None, None, None]]).unwrap_err();
        assert!(matches!(err, TableError::FaceGluedToSelf { .. }));
    }

    #[test]
    fn non_involutive_rejected() {
        let p = Perm4::transposition(0, 1);
        let table = vec![
            [Some((1, p)), None, None, None],
            [None, None, None, None],
        ];
        let err = Triangulation::from_gluings(table).unwrap_err();
        assert!(matches!(err, TableError::NotInvolutive { .. }));
    }

    #[test]
    fn one_unglued_face_not_closed() {
        let mut tri = Triangulation::with_tets(2);
        tri.glue(0, 0, 1, Perm4::IDENTITY);
        assert!(!tri.validate().is_closed);
    }

    #[test]
    fn disjoint_union_doubles_counts() {
        let tri = crate::build::one_tet_sphere();
        let skel = tri.skeleton();
        let both = tri.disjoint_union(&tri);
        let skel2 = both.skeleton();
        assert_eq!(skel2.vertices.len(), 2 * skel.vertices.len());
        assert_eq!(skel2.edges.len(), 2 * skel.edges.len());
        assert_eq!(skel2.triangles.len(), 2 * skel.triangles.len());
    }
}
