use knotfactor::diagram::parse_pd;
fn main() {
    for (name, pd) in [
        ("unknot-1", "X[1,2,2,1]"),
        ("trefoil", "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"),
        ("fig8", "X[4,2,5,1] X[8,6,1,5] X[6,3,7,2] X[2,7,3,8]"),
    ] {
        let d = parse_pd(pd).unwrap();
        let e = knotfactor::build::build_edge_ideal(&d).unwrap();
        // Direct route on the raw build: no pinch, no simplify.
        let direct = knotfactor::pi1::direct_complement_presentation(&e);
        let (red, _) = knotfactor::pi1::tietze_simplify(&direct, 4000);
        print!("{name}: build tets={} loop={} ab={:?} gens={} ", e.tet_count(), e.loop_len(),
            direct.abelianization(), red.generator_count);
        for k in 2..=5 {
            print!("k{k}={} ", knotfactor::pi1::count_transitive_reps(&red, k));
        }
        println!("rank1free={}", red.is_rank_one_free());
        // Also the pinch route after simplify.
        let s = knotfactor::simplify::simplify(&e, 0, &Default::default());
        let p2 = knotfactor::pi1::complement_presentation(&s);
        let (red2, _) = knotfactor::pi1::tietze_simplify(&p2, 4000);
        print!("  simplified tets={} loop={}: ", s.tet_count(), s.loop_len());
        for k in 2..=5 {
            print!("k{k}={} ", knotfactor::pi1::count_transitive_reps(&red2, k));
        }
        println!("rank1free={}", red2.is_rank_one_free());
    }
}
