use knotfactor::crush::*;
use knotfactor::factorize::*;
use knotfactor::normal::*;
use knotfactor::simplify::simplify;
fn main() {
    let d = knotfactor::diagram::parse_dt("6 8 10 2 4").unwrap();
    let e0 = knotfactor::build::build_edge_ideal(&d).unwrap();
    let config = Config::default();
    let (_res, cert) = factorize(&e0, &config).unwrap();
    // replay to the first step
    let mut state = vec![e0.clone()];
    let step = &cert.chain[0];
    for p in &step.preps {
        if let PrepOp::Simplify { seed } = p.op {
            state[p.component] = simplify(&state[p.component], seed, &config.simplify);
        }
    }
    let e = &state[step.crushed_component];
    println!("state tets={} loop={}", e.tet_count(), e.loop_len());
    let quad: Vec<num_bigint::BigInt> = step.sphere.iter().map(|s| s.parse().unwrap()).collect();
    let s = NormalSurface::from_quad(quad, &e.tri, 1 << 24).unwrap();
    println!("sphere quad={:?} chi={:?} comps={}", s.quad.iter().map(|x| x.to_string()).collect::<Vec<_>>(), s.geometry.euler, s.geometry.component_count);
    let table = classify_segments(e, &s.standard);
    println!("weights: {:?}", table.weights);
    println!("surviving: {:?}", table.surviving.keys().collect::<Vec<_>>());
    let mut done = std::collections::BTreeSet::new();
    for (ec, &w) in table.weights.iter().enumerate() {
        if w == 0 { continue; }
        for idx in [0, w] {
            let seg = (ec, idx);
            if done.contains(&seg) { continue; }
            match trace_orbit(e, &s, &table, seg) {
                Err(err) => println!("orbit({ec},{idx}): ERR {err:?}"),
                Ok(o) => {
                    done.extend(o.segments.iter().copied());
                    println!("orbit({ec},{idx}): kind={:?} segs={:?} regions={} cells={} trivial={}",
                        o.kind, o.segments, o.regions.len(), o.cells.len(), o.trivial);
                }
            }
        }
    }
    println!("guts components: {:?}", guts_component_count(e, &s.standard));
    println!("certify: {:?}", certify_quad_vertex(e, &s));
    // Dump the cell structure: which cells exist.
    use knotfactor::normal::{std_tri_index, std_quad_index};
    for t in 0..e.tet_count() {
        let quads: Vec<String> = (1..=3u8).map(|k| s.standard[std_quad_index(t, k)].to_string()).collect();
        let tris: Vec<String> = (0..4u8).map(|v| s.standard[std_tri_index(t, v)].to_string()).collect();
        println!("tet {t}: tris={tris:?} quads={quads:?}");
    }
    println!("table: {:?}", e.tri.raw_table());
}
