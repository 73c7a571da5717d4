fn main() {
    for n in 1..=3 {
        let t0 = std::time::Instant::now();
        let c = knotfactor::census::closed_census(n);
        println!("census({n}): {} triangulations in {:?}", c.len(), t0.elapsed());
    }
}
