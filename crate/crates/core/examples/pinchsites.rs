use knotfactor::tri::EDGE_VERTS;
use std::collections::BTreeSet;
fn main() {
    let d = knotfactor::diagram::parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
    let e0 = knotfactor::build::build_edge_ideal(&d).unwrap();
    let e = knotfactor::simplify::simplify(&e0, 0, &Default::default());
    println!("simplified: tets={} loop={}", e.tet_count(), e.loop_len());
    let direct = knotfactor::pi1::direct_complement_presentation(&e);
    let dsig: Vec<usize> = (2..=4).map(|k| knotfactor::pi1::count_transitive_reps(&direct, k)).collect();
    println!("direct sig {dsig:?} ab={:?}", direct.abelianization());
    let skel = e.tri.skeleton();
    let class = &skel.edges[e.knot.steps[0].edge];
    let mut sites = Vec::new();
    for emb in &class.embeddings {
        let (a, b) = EDGE_VERTS[emb.edge];
        for f in 0..4u8 {
            if f != a && f != b {
                sites.push((emb.tet, a, b, f));
            }
        }
    }
    sites.sort();
    sites.dedup();
    for (t, a, b, f) in sites {
        match knotfactor::shorten::pinch_at_public(&e.tri, t, a, b, f) {
            Err(err) => println!("site ({t},{a},{b},{f}): {err:?}"),
            Ok((tri, marked)) => {
                let pres = knotfactor::pi1::spine_presentation(&tri, &BTreeSet::new());
                let ab = pres.abelianization();
                let psig: Vec<usize> = (2..=4).map(|k| knotfactor::pi1::count_transitive_reps(&pres, k)).collect();
                println!("site ({t},{a},{b},{f}): marked={marked} ab={ab:?} sig={psig:?}{}",
                    if psig == dsig { "  MATCH" } else { "  wrong" });
            }
        }
    }
}
