use knotfactor::diagram::parse_pd;
use knotfactor::factorize::{factorize, verify_certificate, Config};

fn main() {
    let cases = [
        ("unknot-0", "".to_string()),
        ("unknot-1", "X[1,2,2,1]".to_string()),
        ("trefoil", "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]".to_string()),
        ("spec-trefoil", "X[1,4,2,3] X[3,6,4,5] X[5,2,6,1]".to_string()),
    ];
    for (name, pd) in cases {
        let t0 = std::time::Instant::now();
        let d = parse_pd(&pd).unwrap();
        let e = knotfactor::build::build_edge_ideal(&d).unwrap();
        println!("{name}: n={} tets={} loop={}", d.crossing_count(), e.tet_count(), e.loop_len());
        match factorize(&e, &Config::default()) {
            Err(err) => println!("  ERROR: {err}"),
            Ok((result, cert)) => {
                println!(
                    "  summands={} crushes={} enums={} elapsed={:?}",
                    result.summands.len(),
                    result.stats.crushes,
                    result.stats.enumerations,
                    t0.elapsed()
                );
                for s in &result.summands {
                    println!(
                        "    summand: tets={} loop={} verdict={:?}",
                        s.edge_ideal.tet_count(),
                        s.edge_ideal.loop_len(),
                        s.nontriviality.verdict
                    );
                }
                let v0 = std::time::Instant::now();
                match verify_certificate(&e, &cert, &Config::default()) {
                    Ok(()) => println!("  certificate verifies ({:?})", v0.elapsed()),
                    Err(f) => println!("  CERT FAIL at {}", f.at),
                }
            }
        }
    }
}
