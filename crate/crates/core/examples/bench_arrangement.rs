use pentalat::hermitian::{verify_orthogonal_arrangement, HermLattice};
use std::time::Instant;

fn main() {
    let lat = HermLattice::reference();
    for bound in [1i64, 2] {
        let t0 = Instant::now();
        let roots = lat.enumerate_short_roots(bound);
        let t_enum = t0.elapsed();
        let t1 = Instant::now();
        let report = verify_orthogonal_arrangement(&lat, &roots).unwrap();
        println!(
            "bound {}: {} roots (enum {:?}), pairs {} / nonorth {} / violations {} (scan {:?})",
            bound,
            roots.len(),
            t_enum,
            report.pairs_scanned,
            report.pairs_nonorthogonal,
            report.violations.len(),
            t1.elapsed()
        );
    }
}
