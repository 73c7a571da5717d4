use knotfactor::diagram::{parse_dt, parse_pd, Diagram};
use knotfactor::factorize::{factorize, summand_rep_signature, verify_certificate, Config};

fn run(name: &str, d: &Diagram) {
    let t0 = std::time::Instant::now();
    let e = knotfactor::build::build_edge_ideal(d).unwrap();
    match factorize(&e, &Config::default()) {
        Err(err) => println!("{name}: ERROR {err}"),
        Ok((result, cert)) => {
            let sigs: Vec<Vec<usize>> = result
                .summands
                .iter()
                .map(|s| summand_rep_signature(&s.edge_ideal, 5))
                .collect();
            let ver = verify_certificate(&e, &cert, &Config::default());
            println!(
                "{name}: n={} summands={} repsigs={:?} crushes={} verify={} elapsed={:?}",
                d.crossing_count(),
                result.summands.len(),
                sigs,
                result.stats.crushes,
                ver.is_ok(),
                t0.elapsed()
            );
            if let Err(f) = ver {
                println!("  verify failed at: {}", f.at);
            }
        }
    }
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let which = args.get(1).map(|s| s.as_str()).unwrap_or("basic");
    let tre = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
    match which {
        "basic" => {
            run("4_1", &parse_dt("4 6 8 2").unwrap());
            run("5_1", &parse_dt("6 8 10 2 4").unwrap());
            run("5_2", &parse_dt("4 8 10 2 6").unwrap());
            run("6_1", &parse_dt("4 8 12 10 2 6").unwrap());
            run("unknot-hard4", &parse_dt("-4 6 8 2").unwrap());
        }
        "granny" => {
            run("granny", &tre.connected_sum(&tre));
        }
        "square" => {
            run("square", &tre.connected_sum(&tre.mirror()));
        }
        "t+f" => {
            run("3_1#4_1", &tre.connected_sum(&parse_dt("4 6 8 2").unwrap()));
        }
        "t51" => {
            run("3_1#5_1", &tre.connected_sum(&parse_dt("6 8 10 2 4").unwrap()));
        }
        "triple" => {
            run("3_1#3_1#3_1", &tre.connected_sum(&tre).connected_sum(&tre));
        }
        other => {
            let d = parse_pd(other).or_else(|_| parse_dt(other)).unwrap();
            run(other, &d);
        }
    }
}
