use knotfactor::loops::EdgeIdeal;
fn sig(e: &EdgeIdeal) -> Vec<usize> {
    let p = knotfactor::pi1::direct_complement_presentation(e);
    let (red, _) = knotfactor::pi1::tietze_simplify(&p, 4000);
    (2..=4).map(|k| knotfactor::pi1::count_transitive_reps(&red, k)).collect()
}
fn main() {
    let d = knotfactor::diagram::parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
    let e = knotfactor::build::build_edge_ideal(&d).unwrap();
    let want = sig(&e);
    println!("want {want:?}");
    let mut n = 0;
    let mut hook = |label: &str, cur: &EdgeIdeal| -> bool {
        n += 1;
        let s = sig(cur);
        let ok = s == want;
        if !ok {
            println!("step {n} [{label}]: tets={} loop={} sig={s:?}  <-- KNOT CHANGED", cur.tet_count(), cur.knot.len());
            println!("  state: {}", knotfactor::serialize::write_text(&knotfactor::serialize::Record::from_edge_ideal(cur)));
            return false;
        }
        true
    };
    let out = knotfactor::simplify::simplify_traced(&e, 0, &Default::default(), &mut hook);
    println!("done after {n} steps: tets={} loop={} sig={:?}", out.tet_count(), out.loop_len(), sig(&out));
}
