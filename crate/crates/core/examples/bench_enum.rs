use pentalat::hermitian::HermLattice;
use std::time::Instant;

fn main() {
    let lat = HermLattice::reference();
    let t0 = Instant::now();
    let roots = lat.enumerate_short_roots(1);
    println!("bound 1: {} roots in {:?}", roots.len(), t0.elapsed());
    let t0 = Instant::now();
    let roots = lat.enumerate_short_roots(2);
    println!("bound 2: {} roots in {:?}", roots.len(), t0.elapsed());
}
