use knotfactor::loops::EdgeIdeal;
use knotfactor::moves::*;
use knotfactor::shorten::{insert_snapped_ball, redirect_loop};

fn sig(e: &EdgeIdeal) -> Vec<usize> {
    let p = knotfactor::pi1::direct_complement_presentation(e);
    let (red, _) = knotfactor::pi1::tietze_simplify(&p, 4000);
    (2..=4).map(|k| knotfactor::pi1::count_transitive_reps(&red, k)).collect()
}

fn main() {
    let d = knotfactor::diagram::parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
    let mut e = knotfactor::build::build_edge_ideal(&d).unwrap();
    let want = sig(&e);
    println!("start: tets={} loop={} sig={:?}", e.tet_count(), e.loop_len(), want);
    // Mimic the downhill pass, checking the signature after every single move.
    let mut steps = 0;
    'outer: loop {
        steps += 1;
        if steps > 300 { break; }
        let skel = e.tri.skeleton();
        for ec in skel.edges.iter() {
            let deg = ec.degree();
            if !(1..=3).contains(&deg) { continue; }
            let emb = ec.embeddings[0];
            let (result, label) = match deg {
                3 => (three_two(&e, emb.tet, emb.edge), "3-2"),
                2 => (two_zero(&e, emb.tet, emb.edge), "2-0"),
                _ => (two_one(&e, emb.tet, emb.edge), "2-1"),
            };
            if let Ok(next) = result {
                let s = sig(&next);
                println!("{label} at tet {} edge {}: tets={} loop={} sig={:?}{}",
                    emb.tet, emb.edge, next.tet_count(), next.knot.len(), s,
                    if s != want { "  <-- KNOT CHANGED" } else { "" });
                if s != want { return; }
                e = next;
                continue 'outer;
            }
        }
        for tc in 0..skel.triangles.len() {
            if let Ok(next) = redirect_loop(&e, tc) {
                let s = sig(&next);
                println!("redirect at triangle {tc}: loop={} sig={:?}{}",
                    next.knot.len(), s, if s != want { "  <-- KNOT CHANGED" } else { "" });
                if s != want { return; }
                e = next;
                continue 'outer;
            }
        }
        // loop shortening
        if e.knot.len() > 1 {
            let edge = e.knot.steps[0].edge;
            if let Ok(next) = insert_snapped_ball(&e, edge, 0) {
                let s = sig(&next);
                println!("snapped-ball at loop edge {edge}: tets={} loop={} sig={:?}{}",
                    next.tet_count(), next.knot.len(), s,
                    if s != want { "  <-- KNOT CHANGED" } else { "" });
                if s != want { return; }
                e = next;
                continue 'outer;
            }
        }
        break;
    }
    println!("final: tets={} loop={} sig={:?}", e.tet_count(), e.loop_len(), sig(&e));

    // Phase 2: vertex merging, one insertion at a time.
    let mut cur = e.clone();
    loop {
        let skel = cur.tri.skeleton();
        if skel.vertices.len() <= 1 { break; }
        let mut progressed = false;
        for (ei, ec) in skel.edges.iter().enumerate() {
            if ec.endpoints.0 != ec.endpoints.1 && !cur.knot.contains_edge(ei) {
                if let Ok(next) = insert_snapped_ball(&cur, ei, 0) {
                    let s = sig(&next);
                    println!("merge ball at edge {ei}: V={} sig={:?}{}",
                        next.tri.skeleton().vertices.len(), s,
                        if s != want { "  <-- KNOT CHANGED" } else { "" });
                    if s != want { return; }
                    cur = next;
                    progressed = true;
                    break;
                }
            }
        }
        if !progressed { break; }
    }
    // Downhill again with checks.
    let mut steps2 = 0;
    'outer2: loop {
        steps2 += 1;
        if steps2 > 300 { break; }
        let skel = cur.tri.skeleton();
        for ec in skel.edges.iter() {
            let deg = ec.degree();
            if !(1..=3).contains(&deg) { continue; }
            let emb = ec.embeddings[0];
            let (result, label) = match deg {
                3 => (three_two(&cur, emb.tet, emb.edge), "3-2"),
                2 => (two_zero(&cur, emb.tet, emb.edge), "2-0"),
                _ => (two_one(&cur, emb.tet, emb.edge), "2-1"),
            };
            if let Ok(next) = result {
                let s = sig(&next);
                println!("{label}: tets={} sig={:?}{}", next.tet_count(), s,
                    if s != want { "  <-- KNOT CHANGED" } else { "" });
                if s != want { return; }
                cur = next;
                continue 'outer2;
            }
        }
        break;
    }
    println!("after merge+downhill: tets={} loop={} V={} sig={:?}",
        cur.tet_count(), cur.knot.len(), cur.tri.skeleton().vertices.len(), sig(&cur));
    // Explore phase: 4-4 and 2-3 with checks.
    let skel = cur.tri.skeleton();
    for (ei, ec) in skel.edges.iter().enumerate() {
        if ec.degree() == 4 {
            let emb = ec.embeddings[0];
            for axis in 0..2u8 {
                if let Ok(next) = four_four(&cur, emb.tet, emb.edge, axis) {
                    let s = sig(&next);
                    println!("4-4 at edge {ei} axis {axis}: sig={:?}{}", s,
                        if s != want { "  <-- KNOT CHANGED" } else { "" });
                }
            }
        }
    }
    for (t, f) in two_three_sites(&cur.tri) {
        if let Ok(next) = two_three(&cur, t, f) {
            let s = sig(&next);
            if s != want {
                println!("2-3 at ({t},{f}): sig={s:?}  <-- KNOT CHANGED");
            }
        }
    }
    println!("explore checks done");
}

// Phase 2 checks appended via a second entry point: run with arg "phase2".
