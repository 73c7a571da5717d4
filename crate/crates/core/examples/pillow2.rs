// Staged pillow search with diagnostics, over all 2-tet gadgets with two
// free faces (free on distinct tets or both on P1), all matchings and perms.
use knotfactor::perm::Perm4;
use knotfactor::tri::Triangulation;
use std::collections::BTreeSet;

fn main() {
    let perms = Perm4::all();
    let tri = knotfactor::build::one_tet_sphere_other();
    let edge = 0usize; // unknotted loop edge
    let mut stage = [0usize; 6];
    let mut passes: Vec<String> = Vec::new();

    // Family A: free faces P0.f3 and P1.f3; internal matchings between the
    // remaining six faces.
    let faces: Vec<(usize, u8)> = vec![(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)];
    let matchings = perfect_matchings(&faces);
    for m in &matchings {
        // skip matchings pairing a face with itself is impossible; allow
        // same-tet pairs (self-gluings).
        try_matching(m, &perms, &tri, edge, &mut stage, &mut passes, "A");
    }
    // Family B: free faces P1.f2 and P1.f3.
    let faces_b: Vec<(usize, u8)> = vec![(0, 0), (0, 1), (0, 2), (0, 3), (1, 0), (1, 1)];
    for m in &perfect_matchings(&faces_b) {
        try_matching(m, &perms, &tri, edge, &mut stage, &mut passes, "B");
    }
    println!("stages: {stage:?}");
    for p in passes.iter().take(20) {
        println!("{p}");
    }
}

fn perfect_matchings(items: &[(usize, u8)]) -> Vec<Vec<((usize, u8), (usize, u8))>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut used = vec![false; items.len()];
    rec(items, &mut used, &mut cur, &mut out);
    return out;
    fn rec(
        items: &[(usize, u8)],
        used: &mut Vec<bool>,
        cur: &mut Vec<((usize, u8), (usize, u8))>,
        out: &mut Vec<Vec<((usize, u8), (usize, u8))>>,
    ) {
        let Some(first) = (0..items.len()).find(|&i| !used[i]) else {
            out.push(cur.clone());
            return;
        };
        used[first] = true;
        for j in first + 1..items.len() {
            if used[j] {
                continue;
            }
            used[j] = true;
            cur.push((items[first], items[j]));
            rec(items, used, cur, out);
            cur.pop();
            used[j] = false;
        }
        used[first] = false;
    }
}

fn try_matching(
    m: &[((usize, u8), (usize, u8))],
    perms: &[Perm4],
    tri0: &Triangulation,
    edge: usize,
    stage: &mut [usize; 6],
    passes: &mut Vec<String>,
    fam: &str,
) {
    // free faces: family A: (0,3),(1,3); family B: (1,2),(1,3)
    let frees: Vec<(usize, u8)> = if fam == "A" { vec![(0, 3), (1, 3)] } else { vec![(1, 2), (1, 3)] };
    // iterate perm choices per matched pair
    let k = m.len();
    let mut choice = vec![0usize; k];
    loop {
        // build gadget
        let mut ok = true;
        let mut gadget = Triangulation::with_tets(2);
        for (i, &((t0, f0), (t1, f1))) in m.iter().enumerate() {
            let p = perms[choice[i]];
            if p.apply(f0) != f1 || (t0 == t1 && f0 == f1) {
                ok = false;
                break;
            }
            if gadget.gluing(t0, f0).is_some() || gadget.gluing(t1, f1).is_some() {
                ok = false;
                break;
            }
            gadget.glue(t0, f0, t1, p);
        }
        if ok {
            stage[0] += 1;
            for aal in 0..6 {
                for bal in 0..6 {
                    if test(tri0, edge, &gadget, &frees, aal, bal, stage).is_some()
                        && full_test(&gadget, &frees, aal, bal)
                    {
                        passes.push(format!("{fam} m={m:?} perms={:?} aal={aal} bal={bal}",
                            (0..k).map(|i| perms[choice[i]].digits()).collect::<Vec<_>>()));
                        println!("FULL PASS: {}", passes.last().unwrap());
                        println!("gadget table: {:?}", gadget.raw_table());
                        std::process::exit(0);
                    }
                }
            }
        }
        // increment
        let mut i = 0;
        while i < k {
            choice[i] += 1;
            if choice[i] < 24 {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
    }
}

fn align_map(x: u8) -> [u8; 3] {
    [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]][x as usize]
}

fn test(
    tri0: &Triangulation,
    edge: usize,
    gadget: &Triangulation,
    frees: &[(usize, u8)],
    aal: u8,
    bal: u8,
    stage: &mut [usize; 6],
) -> Option<String> {
    use knotfactor::tri::EDGE_VERTS;
    let skel = tri0.skeleton();
    let emb = skel.edges[edge].embeddings[0];
    let (a, b) = EDGE_VERTS[emb.edge];
    let t = emb.tet;
    let f = (0..4u8).find(|&x| x != a && x != b).unwrap();
    let w = (0..4u8).find(|&x| x != a && x != b && x != f).unwrap();
    let g = *tri0.gluing(t, f)?;
    let mut tri = tri0.clone();
    tri.unglue(t, f);
    let base = tri.tet_count();
    for _gt in 0..2 {
        tri.add_tet();
    }
    let _ = gt_silence();
    for t0 in 0..2usize {
        for f0 in 0..4u8 {
            if let Some(gg) = gadget.gluing(t0, f0) {
                if tri.gluing(base + t0, f0).is_none() {
                    tri.glue(base + t0, f0, base + gg.tet, gg.perm);
                }
            }
        }
    }
    let (ft0, ff0) = frees[0];
    let (ft1, ff1) = frees[1];
    // amap: maps (a,b,w) to the free face's three vertices by alignment aal
    let fv0 = knotfactor::tri::face_verts(ff0);
    let am = align_map(aal);
    let amap = Perm4::mapping([a, b, w, f], [fv0[am[0] as usize], fv0[am[1] as usize], fv0[am[2] as usize], ff0]);
    tri.glue(t, f, base + ft0, amap);
    let fv1 = knotfactor::tri::face_verts(ff1);
    let bm = align_map(bal);
    let bmap = Perm4::mapping(
        [g.perm.apply(a), g.perm.apply(b), g.perm.apply(w), g.perm.apply(f)],
        [fv1[bm[0] as usize], fv1[bm[1] as usize], fv1[bm[2] as usize], ff1],
    );
    tri.glue(g.tet, g.perm.apply(f), base + ft1, bmap);
    if !tri.is_closed() {
        return None;
    }
    stage[1] += 1;
    let report = tri.validate();
    if !report.reversed_edges.is_empty() {
        return None;
    }
    stage[2] += 1;
    let mut torus = 0;
    let mut bad = 0;
    for c in &report.vertex_link_checks {
        if c.euler == 0 && c.connected && c.closed {
            torus += 1;
        } else if !(c.euler == 2 && c.connected && c.closed) {
            bad += 1;
        }
    }
    if torus != 1 || bad != 0 {
        return None;
    }
    stage[3] += 1;
    let pres = knotfactor::pi1::spine_presentation(&tri, &BTreeSet::new());
    if pres.abelianization() != vec![num_bigint::BigInt::from(0)] {
        return None;
    }
    stage[4] += 1;
    let (red, _) = knotfactor::pi1::tietze_simplify(&pres, 2000);
    if !red.is_rank_one_free() {
        return None;
    }
    stage[5] += 1;
    Some(format!("gens={}", red.generator_count))
}

fn gt_silence() {}

fn full_test(gadget: &Triangulation, frees: &[(usize, u8)], aal: u8, bal: u8) -> bool {
    let mut stage = [0usize; 6];
    let mut saw_unknot = false;
    let mut saw_nontrivial = false;
    for tri in [knotfactor::build::one_tet_sphere(), knotfactor::build::one_tet_sphere_other()] {
        let skel = tri.skeleton();
        for e in 0..skel.edges.len() {
            let (t0, h0) = skel.edges[e].endpoints;
            if t0 != h0 { continue; }
            let knot = knotfactor::loops::IdealLoop { steps: vec![knotfactor::loops::LoopStep { edge: e, forward: true }] };
            let ei = knotfactor::loops::EdgeIdeal { tri: tri.clone(), knot: knot.clone() };
            if ei.validate().is_err() { continue; }
            // pinch with this gadget
            let Some(pinched) = pinch_with(&tri, e, gadget, frees, aal, bal) else { return false; };
            let pres = knotfactor::pi1::spine_presentation(&pinched, &BTreeSet::new());
            if pres.abelianization() != vec![num_bigint::BigInt::from(0)] { return false; }
            let direct = knotfactor::pi1::direct_complement_presentation(&ei);
            for k in 2..=5 {
                if knotfactor::pi1::count_transitive_reps(&pres, k)
                    != knotfactor::pi1::count_transitive_reps(&direct, k) { return false; }
            }
            let (red, _) = knotfactor::pi1::tietze_simplify(&pres, 2000);
            let (dred, _) = knotfactor::pi1::tietze_simplify(&direct, 2000);
            if red.is_rank_one_free() != dred.is_rank_one_free() { return false; }
            if red.is_rank_one_free() { saw_unknot = true; } else { saw_nontrivial = true; }
        }
    }
    let _ = &mut stage;
    saw_unknot && saw_nontrivial
}

fn pinch_with(tri0: &Triangulation, edge: usize, gadget: &Triangulation, frees: &[(usize, u8)], aal: u8, bal: u8) -> Option<Triangulation> {
    use knotfactor::tri::EDGE_VERTS;
    let skel = tri0.skeleton();
    let emb = skel.edges[edge].embeddings[0];
    let (a, b) = EDGE_VERTS[emb.edge];
    let t = emb.tet;
    let f = (0..4u8).find(|&x| x != a && x != b).unwrap();
    let w = (0..4u8).find(|&x| x != a && x != b && x != f).unwrap();
    let g = *tri0.gluing(t, f)?;
    let mut tri = tri0.clone();
    tri.unglue(t, f);
    let base = tri.tet_count();
    tri.add_tet();
    tri.add_tet();
    for t0 in 0..2usize {
        for f0 in 0..4u8 {
            if let Some(gg) = gadget.gluing(t0, f0) {
                if tri.gluing(base + t0, f0).is_none() {
                    tri.glue(base + t0, f0, base + gg.tet, gg.perm);
                }
            }
        }
    }
    let (ft0, ff0) = frees[0];
    let (ft1, ff1) = frees[1];
    let fv0 = knotfactor::tri::face_verts(ff0);
    let am = align_map(aal);
    let amap = Perm4::mapping([a, b, w, f], [fv0[am[0] as usize], fv0[am[1] as usize], fv0[am[2] as usize], ff0]);
    tri.glue(t, f, base + ft0, amap);
    let fv1 = knotfactor::tri::face_verts(ff1);
    let bm = align_map(bal);
    let bmap = Perm4::mapping(
        [g.perm.apply(a), g.perm.apply(b), g.perm.apply(w), g.perm.apply(f)],
        [fv1[bm[0] as usize], fv1[bm[1] as usize], fv1[bm[2] as usize], ff1],
    );
    tri.glue(g.tet, g.perm.apply(f), base + ft1, bmap);
    if !tri.is_closed() { return None; }
    let report = tri.validate();
    if !report.reversed_edges.is_empty() { return None; }
    let mut torus = 0;
    for c in &report.vertex_link_checks {
        if c.euler == 0 && c.connected && c.closed { torus += 1; }
        else if !(c.euler == 2 && c.connected && c.closed) { return None; }
    }
    if torus != 1 { return None; }
    Some(tri)
}
