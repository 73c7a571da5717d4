use std::collections::BTreeSet;
fn main() {
    let d = knotfactor::diagram::parse_dt("4 6 8 2").unwrap();
    let e0 = knotfactor::build::build_edge_ideal(&d).unwrap();
    println!("build tets={} loop={}", e0.tet_count(), e0.loop_len());
    let e = knotfactor::simplify::simplify(&e0, 0, &Default::default());
    println!("simplified tets={} loop={}", e.tet_count(), e.loop_len());
    let one = knotfactor::shorten::shorten_loop_to_one(&e).unwrap();
    let direct = knotfactor::pi1::direct_complement_presentation(&one);
    let (dred, _) = knotfactor::pi1::tietze_simplify(&direct, 4000);
    let dsig: Vec<usize> = (2..=4).map(|k| knotfactor::pi1::count_transitive_reps(&dred, k)).collect();
    println!("direct ab={:?} sig={:?} gens={}", direct.abelianization(), dsig, dred.generator_count);
    // raw build direct for reference
    let rd = knotfactor::pi1::direct_complement_presentation(&e0);
    let (rdr, _) = knotfactor::pi1::tietze_simplify(&rd, 4000);
    let rsig: Vec<usize> = (2..=4).map(|k| knotfactor::pi1::count_transitive_reps(&rdr, k)).collect();
    println!("raw-build direct sig={rsig:?}");
    for (t, a, b, f) in knotfactor::shorten::pinch_sites(&one) {
        for align in 0..6u8 {
            match knotfactor::shorten::pinch_at(&one.tri, t, a, b, f, align) {
                Err(err) => {
                    println!("site ({t},{a},{b},{f}) align={align}: {err:?}");
                    // detailed report
                    let det = knotfactor::shorten::pinch_at_raw(&one.tri, t, a, b, f, align);
                    if let Some(tri) = det {
                        let rep = tri.validate();
                        println!("   closed={} reversed={:?} links={:?}", rep.is_closed, rep.reversed_edges,
                            rep.vertex_link_checks.iter().map(|c| (c.euler, c.connected, c.closed)).collect::<Vec<_>>());
                    }
                }
                Ok((tri, _)) => {
                    let pres = knotfactor::pi1::spine_presentation(&tri, &BTreeSet::new());
                    let ab = pres.abelianization();
                    let (red, _) = knotfactor::pi1::tietze_simplify(&pres, 4000);
                    let sig: Vec<usize> = (2..=4).map(|k| knotfactor::pi1::count_transitive_reps(&red, k)).collect();
                    println!("site ({t},{a},{b},{f}) align={align}: ab={ab:?} sig={sig:?}");
                }
            }
        }
    }
}
