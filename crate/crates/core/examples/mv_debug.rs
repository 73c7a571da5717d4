use knotfactor::moves::*;
fn main() {
    let d = knotfactor::diagram::parse_pd("X[1,2,2,1]").unwrap();
    let e = knotfactor::build::build_edge_ideal(&d).unwrap();
    let sites = two_three_sites(&e.tri);
    println!("loop edges: {:?}", e.knot.steps);
    for (t, f) in sites {
        match two_three(&e, t, f) {
            Err(err) => println!("site ({t},{f}): 2-3 refused: {err:?}"),
            Ok(moved) => {
                let nbase = moved.tet_count() - 3;
                let skel = moved.tri.skeleton();
                let central = skel.edge_class(nbase, knotfactor::tri::edge_index(0, 1));
                let deg = skel.edges[central].degree();
                let on_loop = moved.knot.contains_edge(central);
                match three_two(&moved, nbase, knotfactor::tri::edge_index(0, 1)) {
                    Ok(back) => {
                        let same = back.marked_signature() == e.marked_signature();
                        println!("site ({t},{f}): ok, round-trip same={same}");
                    }
                    Err(err) => println!(
                        "site ({t},{f}): 3-2 back refused: {err:?} (central deg {deg}, on_loop {on_loop}, loop now {:?})",
                        moved.knot.steps
                    ),
                }
            }
        }
    }
}
