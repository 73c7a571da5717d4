// Development helper: inspects the one-tet spheres, debugs the snapped ball,
// and searches for the pillow-with-tunnel gluings.
use knotfactor::diagram::parse_pd;
use knotfactor::perm::Perm4;
use knotfactor::tri::Triangulation;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    match args.get(1).map(|s| s.as_str()) {
        Some("spheres") => spheres(),
        Some("ball") => ball(),
        Some("pillow") => pillow_search(),
        _ => eprintln!("usage: dev_search spheres|ball|pillow"),
    }
}

fn spheres() {
    for (name, tri) in [
        ("first", knotfactor::build::one_tet_sphere()),
        ("other", knotfactor::build::one_tet_sphere_other()),
    ] {
        let skel = tri.skeleton();
        println!(
            "{name}: V={} E={} F={} sig={}",
            skel.vertices.len(),
            skel.edges.len(),
            skel.triangles.len(),
            knotfactor::isosig::plain_signature(&tri)
        );
        println!("  table: {:?}", tri.raw_table());
        for (i, e) in skel.edges.iter().enumerate() {
            println!("  edge {i}: deg {} endpoints {:?}", e.degree(), e.endpoints);
        }
    }
}

fn ball() {
    let d = parse_pd("X[1,2,2,1]").unwrap();
    let e = knotfactor::build::build_edge_ideal(&d).unwrap();
    let skel = e.tri.skeleton();
    println!("build: V={} E={}", skel.vertices.len(), skel.edges.len());
    for i in 0..skel.edges.len() {
        let (t, h) = skel.edges[i].endpoints;
        if t != h && !e.knot.contains_edge(i) {
            println!("inserting at edge {i} ({t},{h})");
            match knotfactor::shorten::insert_snapped_ball(&e, i, 0) {
                Ok(out) => println!("  ok: tets {}", out.tet_count()),
                Err(err) => {
                    println!("  err: {err:?}");
                    // repeat with diagnostics
                    diagnose(&e, i);
                }
            }
            break;
        }
    }
}

fn diagnose(e: &knotfactor::loops::EdgeIdeal, edge: usize) {
    // Re-run the internals manually to see what the validation reports.
    use knotfactor::tri::EDGE_VERTS;
    let skel = e.tri.skeleton();
    let class = &skel.edges[edge];
    let emb = class.embeddings[0];
    let (a, b) = EDGE_VERTS[emb.edge];
    let t = emb.tet;
    let f = (0..4u8).find(|&x| x != a && x != b).unwrap();
    let w = (0..4u8).find(|&x| x != a && x != b && x != f).unwrap();
    let g = *e.tri.gluing(t, f).unwrap();
    let mut tri = e.tri.clone();
    tri.unglue(t, f);
    let ball = tri.add_tet();
    tri.glue(ball, 2, ball, Perm4::transposition(2, 3));
    let amap = Perm4::mapping([a, b, w, f], [2, 3, 1, 0]);
    tri.glue(t, f, ball, amap);
    let bmap = Perm4::mapping(
        [g.perm.apply(a), g.perm.apply(b), g.perm.apply(w), g.perm.apply(f)],
        [2, 3, 0, 1],
    );
    tri.glue(g.tet, g.perm.apply(f), ball, bmap);
    let rep = tri.validate();
    println!(
        "  closed={} reversed={:?} links={:?}",
        rep.is_closed,
        rep.reversed_edges,
        rep.vertex_link_checks
            .iter()
            .map(|c| (c.euler, c.connected, c.closed))
            .collect::<Vec<_>>()
    );
    println!("  orientable={}", tri.is_orientable());
    println!("  h1={:?}", knotfactor::homology::homology_h1(&tri));
    // Re-express the loop as insert_snapped_ball does.
    let new_skel = tri.skeleton();
    let mut steps = Vec::new();
    for step in &e.knot.steps {
        let emb = skel.edges[step.edge].embeddings[0];
        let new_class = new_skel.edge_class(emb.tet, emb.edge);
        let fwd = new_skel.edge_is_forward(emb.tet, emb.edge) == (emb.forward == step.forward);
        steps.push(knotfactor::loops::LoopStep { edge: new_class, forward: fwd });
    }
    let knot = knotfactor::loops::IdealLoop { steps };
    println!("  loop validate: {:?}", knot.validate(&tri));
    let result = knotfactor::loops::EdgeIdeal { tri, knot };
    println!("  edge-ideal validate: {:?}", result.validate());
}

fn pillow_search() {
    // Find internal gluing perms for the 2-tet pillow-with-tunnel: faces
    // 0,1,2 of P0 glue to faces sigma(0..2) of P1; free faces are the two
    // face-3s; the receiving alignment on the second slit side runs over all
    // bijections. Criteria, tested by pinching the length-1 unknot loop in
    // both one-tet spheres at every loop edge: result closed, exactly one
    // torus-link vertex, all other links spheres, spine presentation
    // abelianization = Z, group matches the direct complement route, and at
    // least one unknotted edge Tietze-reduces to rank-1 free.
    let perms = Perm4::all();
    let sigmas: Vec<[u8; 3]> =
        vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut found = 0;
    for sigma in &sigmas {
        for q0 in &perms {
            if q0.apply(0) != sigma[0] {
                continue;
            }
            for q1 in &perms {
                if q1.apply(1) != sigma[1] {
                    continue;
                }
                for q2 in &perms {
                    if q2.apply(2) != sigma[2] {
                        continue;
                    }
                    for balign in 0..6u8 {
                        if test_pillow([*q0, *q1, *q2], balign) {
                            found += 1;
                            println!(
                                "PASS: q0={:?} q1={:?} q2={:?} balign={}",
                                q0.images(),
                                q1.images(),
                                q2.images(),
                                balign
                            );
                        }
                    }
                }
            }
        }
    }
    println!("total candidates: {found}");
}

fn balign_map(balign: u8) -> [u8; 3] {
    [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]][balign as usize]
}

fn test_pillow(perms: [Perm4; 3], balign: u8) -> bool {
    use knotfactor::loops::{IdealLoop, LoopStep};
    use std::collections::BTreeSet;
    let mut any_unknot = false;
    for tri in [
        knotfactor::build::one_tet_sphere(),
        knotfactor::build::one_tet_sphere_other(),
    ] {
        let skel = tri.skeleton();
        for e in 0..skel.edges.len() {
            let (t0, h0) = skel.edges[e].endpoints;
            if t0 != h0 {
                continue;
            }
            let knot = IdealLoop { steps: vec![LoopStep { edge: e, forward: true }] };
            if knot.validate(&tri).is_err() {
                continue;
            }
            let Some((pinched, _marked)) = try_pinch(&tri, e, perms, balign) else {
                return false;
            };
            let pres = knotfactor::pi1::spine_presentation(&pinched, &BTreeSet::new());
            let ab = pres.abelianization();
            if ab != vec![num_bigint::BigInt::from(0)] {
                return false;
            }
            // Cross-check against the direct route.
            let ei = knotfactor::loops::EdgeIdeal { tri: tri.clone(), knot: knot.clone() };
            let direct = knotfactor::pi1::direct_complement_presentation(&ei);
            if direct.abelianization() != ab {
                return false;
            }
            for k in 2..=5 {
                if knotfactor::pi1::count_transitive_reps(&pres, k)
                    != knotfactor::pi1::count_transitive_reps(&direct, k)
                {
                    return false;
                }
            }
            let (red, _) = knotfactor::pi1::tietze_simplify(&pres, 2000);
            let (dred, _) = knotfactor::pi1::tietze_simplify(&direct, 2000);
            if red.is_rank_one_free() != dred.is_rank_one_free() {
                return false;
            }
            if red.is_rank_one_free() {
                any_unknot = true;
            }
        }
    }
    any_unknot
}

fn try_pinch(tri0: &Triangulation, edge: usize, perms: [Perm4; 3], balign: u8) -> Option<(Triangulation, usize)> {
    use knotfactor::tri::EDGE_VERTS;
    let skel = tri0.skeleton();
    let class = &skel.edges[edge];
    let emb = class.embeddings[0];
    let (a, b) = EDGE_VERTS[emb.edge];
    let t = emb.tet;
    let f = (0..4u8).find(|&x| x != a && x != b).unwrap();
    let w = (0..4u8).find(|&x| x != a && x != b && x != f).unwrap();
    let g = *tri0.gluing(t, f)?;
    let mut tri = tri0.clone();
    tri.unglue(t, f);
    let p0 = tri.add_tet();
    let p1 = tri.add_tet();
    for (i, q) in perms.iter().enumerate() {
        tri.glue(p0, i as u8, p1, *q);
    }
    let amap = Perm4::mapping([a, b, w, f], [0, 1, 2, 3]);
    tri.glue(t, f, p0, amap);
    let bm = balign_map(balign);
    let bmap = Perm4::mapping(
        [g.perm.apply(a), g.perm.apply(b), g.perm.apply(w), g.perm.apply(f)],
        [bm[0], bm[1], bm[2], 3],
    );
    tri.glue(g.tet, g.perm.apply(f), p1, bmap);
    if !tri.is_closed() {
        return None;
    }
    let report = tri.validate();
    if !report.is_closed || !report.reversed_edges.is_empty() {
        return None;
    }
    let mut marked = None;
    for (v, check) in report.vertex_link_checks.iter().enumerate() {
        if check.euler == 0 && check.connected && check.closed {
            if marked.is_some() {
                return None;
            }
            marked = Some(v);
        } else if !(check.euler == 2 && check.connected && check.closed) {
            return None;
        }
    }
    Some((tri, marked?))
}
