use std::collections::BTreeSet;
fn main() {
    for (name, tri) in [("first", knotfactor::build::one_tet_sphere()), ("other", knotfactor::build::one_tet_sphere_other())] {
        let p = knotfactor::pi1::spine_presentation(&tri, &BTreeSet::new());
        println!("{name}: S3 spine pres: gens={} relators={:?} ab={:?}", p.generator_count, p.relators, p.abelianization());
        let skel = tri.skeleton();
        for e in 0..skel.edges.len() {
            let (t, h) = skel.edges[e].endpoints;
            if t != h { continue; }
            let knot = knotfactor::loops::IdealLoop { steps: vec![knotfactor::loops::LoopStep { edge: e, forward: true }] };
            let ei = knotfactor::loops::EdgeIdeal { tri: tri.clone(), knot };
            if ei.validate().is_err() { continue; }
            let d = knotfactor::pi1::direct_complement_presentation(&ei);
            let (red, _) = knotfactor::pi1::tietze_simplify(&d, 2000);
            println!("  edge {e}: gens={} rel={:?} ab={:?} reduced: gens={} rel={:?}",
                d.generator_count, d.relators, d.abelianization(), red.generator_count, red.relators);
            for k in 2..=5 {
                print!("    k={k}: reps={} ", knotfactor::pi1::count_transitive_reps(&d, k));
            }
            println!();
        }
    }
}
