use crate::perm::Perm4;
use crate::tri::Triangulation;
use std::collections::BTreeSet;

/// Canonical signature of a triangulation, optionally with a set of marked
/// edge classes. Two inputs get equal signatures iff they are related by a
/// relabeling of tetrahedra and vertices carrying marked edges to marked
/// edges. Computed as the lexicographic minimum, over every (start
/// tetrahedron, start labeling) root, of a canonical breadth-first encoding;
/// disconnected inputs are canonicalized per component and the component
/// strings sorted.
pub fn iso_signature(tri: &Triangulation, marks: Option<&BTreeSet<usize>>) -> String {
    let n = tri.tet_count();
    if n == 0 {
        return "tri0".to_string();
    }
    let mark_set: BTreeSet<usize> = marks.cloned().unwrap_or_default();
    let skel = tri.skeleton();

    let mut remaining: BTreeSet<usize> = (0..n).collect();
    let mut comp_sigs = Vec::new();
    while let Some(&seed) = remaining.iter().next() {
        let comp: Vec<usize> = component_of(tri, seed).into_iter().collect();
        let (sub, sub_marks) = extract(tri, &skel, &mark_set, &comp);
        comp_sigs.push(connected_signature(&sub, &sub_marks));
        for t in &comp {
            remaining.remove(t);
        }
    }
    comp_sigs.sort();
    comp_sigs.join("+")
}

fn connected_signature(tri: &Triangulation, marks: &BTreeSet<usize>) -> String {
    let skel = tri.skeleton();
    let mut best: Option<String> = None;
    for start in 0..tri.tet_count() {
        for perm in Perm4::all() {
            let enc = encode_from(tri, &skel, marks, start, perm);
            if best.as_ref().map_or(true, |b| enc < *b) {
                best = Some(enc);
            }
        }
    }
    best.unwrap()
}

fn encode_from(
    tri: &Triangulation,
    skel: &crate::tri::Skeleton,
    marks: &BTreeSet<usize>,
    start: usize,
    start_perm: Perm4,
) -> String {
    let n = tri.tet_count();
    let mut new_of = vec![usize::MAX; n];
    let mut old_of = Vec::with_capacity(n);
    let mut relabel = vec![Perm4::IDENTITY; n];
    new_of[start] = 0;
    old_of.push(start);
    relabel[start] = start_perm;

    let mut out = String::with_capacity(16 * n + 8);
    out.push_str(&format!("tri{n};"));
    let mut next_free = 1usize;
    let mut i = 0usize;
    while i < old_of.len() {
        let t = old_of[i];
        let inv = relabel[t].inverse();
        for nf in 0..4u8 {
            let of = inv.apply(nf);
            match tri.gluing(t, of) {
                None => out.push('-'),
                Some(g) => {
                    if new_of[g.tet] == usize::MAX {
                        // First discovery: label the partner so this gluing
                        // becomes the identity permutation.
                        new_of[g.tet] = next_free;
                        old_of.push(g.tet);
                        relabel[g.tet] = relabel[t].compose(&g.perm.inverse());
                        next_free += 1;
                    }
                    let p = relabel[g.tet].compose(&g.perm).compose(&relabel[t].inverse());
                    out.push_str(&format!("{}:{}", new_of[g.tet], p.digits()));
                }
            }
            out.push(' ');
        }
        out.push('|');
        i += 1;
    }
    debug_assert_eq!(old_of.len(), n, "encode_from requires a connected triangulation");
    out.push_str(&encode_marks(skel, marks, &new_of, &relabel));
    out
}

fn component_of(tri: &Triangulation, start: usize) -> BTreeSet<usize> {
    let mut seen = BTreeSet::new();
    let mut stack = vec![start];
    seen.insert(start);
    while let Some(t) = stack.pop() {
        for f in 0..4u8 {
            if let Some(g) = tri.gluing(t, f) {
                if seen.insert(g.tet) {
                    stack.push(g.tet);
                }
            }
        }
    }
    seen
}

/// Restricts the triangulation to the listed tetrahedra, re-expressing the
/// marked edge classes in the subcomplex.
fn extract(
    tri: &Triangulation,
    skel: &crate::tri::Skeleton,
    marks: &BTreeSet<usize>,
    tets: &[usize],
) -> (Triangulation, BTreeSet<usize>) {
    let mut index = std::collections::HashMap::new();
    for (i, &t) in tets.iter().enumerate() {
        index.insert(t, i);
    }
    let mut out = Triangulation::with_tets(tets.len());
    for (i, &t) in tets.iter().enumerate() {
        for f in 0..4u8 {
            if let Some(g) = tri.gluing(t, f) {
                let j = index[&g.tet];
                let pf = g.perm.apply(f);
                if (j, pf as usize) > (i, f as usize) {
                    out.glue(i, f, j, g.perm);
                }
            }
        }
    }
    let sub_skel = out.skeleton();
    let mut sub_marks = BTreeSet::new();
    for (new_t, &old_t) in tets.iter().enumerate() {
        for e in 0..6 {
            if marks.contains(&skel.edge_class(old_t, e)) {
                sub_marks.insert(sub_skel.edge_class(new_t, e));
            }
        }
    }
    (out, sub_marks)
}

fn encode_marks(
    skel: &crate::tri::Skeleton,
    marks: &BTreeSet<usize>,
    new_of: &[usize],
    relabel: &[Perm4],
) -> String {
    if marks.is_empty() {
        return String::new();
    }
    let mut reps: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &m in marks {
        let mut best: Option<(usize, usize)> = None;
        for emb in &skel.edges[m].embeddings {
            let (a, b) = crate::tri::EDGE_VERTS[emb.edge];
            let p = &relabel[emb.tet];
            let ne = crate::tri::edge_index(p.apply(a), p.apply(b));
            let cand = (new_of[emb.tet], ne);
            if best.map_or(true, |b0| cand < b0) {
                best = Some(cand);
            }
        }
        reps.insert(best.unwrap());
    }
    let parts: Vec<String> = reps.iter().map(|(t, e)| format!("{t}.{e}")).collect();
    format!("m[{}]", parts.join(","))
}

pub fn plain_signature(tri: &Triangulation) -> String {
    iso_signature(tri, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{one_tet_sphere, one_tet_sphere_other};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn relabeling_invariance() {
        let tri = one_tet_sphere().disjoint_union(&one_tet_sphere_other());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let sig = iso_signature(&tri, None);
        for _ in 0..10 {
            let n = tri.tet_count();
            let mut tet_map: Vec<usize> = (0..n).collect();
            tet_map.shuffle(&mut rng);
            let perms = Perm4::all();
            let vert_maps: Vec<Perm4> =
                (0..n).map(|_| *perms.choose(&mut rng).unwrap()).collect();
            let relabeled = tri.relabel(&tet_map, &vert_maps);
            assert_eq!(iso_signature(&relabeled, None), sig);
        }
    }

    #[test]
    fn distinct_one_tet_spheres() {
        assert_ne!(
            iso_signature(&one_tet_sphere(), None),
            iso_signature(&one_tet_sphere_other(), None)
        );
    }

    #[test]
    fn marks_change_signature() {
        let tri = one_tet_sphere();
        let skel = tri.skeleton();
        let all_edges: Vec<usize> = (0..skel.edges.len()).collect();
        let empty = iso_signature(&tri, Some(&BTreeSet::new()));
        for &e in &all_edges {
            let marked: BTreeSet<usize> = [e].into_iter().collect();
            let sig = iso_signature(&tri, Some(&marked));
            assert_ne!(sig, empty);
        }
    }
}
