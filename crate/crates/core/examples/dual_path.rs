fn main() {
use hilbgw_core::Ring;
    use hilbgw_core::cohft::{degree0_oracle, reconstruct_invariant, PsiTable};
    use hilbgw_core::partitions::enumerate_partitions;
    use hilbgw_core::rmatrix::hilb_rmatrix;
    use std::time::Instant;

    let mut table = PsiTable::new();
    for n in 1..=3u32 {
        let t0 = Instant::now();
        let (eigen, r) = hilb_rmatrix(n, 5, 0).unwrap();
        for mu in enumerate_partitions(n) {
            let rec = reconstruct_invariant(1, &[mu.clone()], &eigen, &r, n, &mut table).unwrap();
            let oracle = degree0_oracle(1, Some(&mu), n).unwrap();
            let ok = rec.coeff(0) == oracle;
            println!("n={} g=1 mu={}: {}", n, mu, if ok {"OK"} else {"MISMATCH"});
            if !ok { println!("  rec {}\n  orc {}", rec.coeff(0), oracle); }
        }
        let rec = reconstruct_invariant(2, &[], &eigen, &r, n, &mut table).unwrap();
        let oracle = degree0_oracle(2, None, n).unwrap();
        let ok = rec.coeff(0) == oracle;
        println!("n={} g=2 vacuum: {}  ({:?})", n, if ok {"OK"} else {"MISMATCH"}, t0.elapsed());
        if !ok { println!("  rec {}\n  orc {}", rec.coeff(0), oracle); }
        // vanishing: two-insertion genus-1 and one-insertion genus-2 at q=0
        for mu in enumerate_partitions(n) {
            let rec2 = reconstruct_invariant(1, &[mu.clone(), mu.clone()], &eigen, &r, n, &mut table).unwrap();
            println!("n={} g=1 two insertions {} at q=0 zero: {}", n, mu, rec2.coeff(0).is_zero());
            let rec3 = reconstruct_invariant(2, &[mu.clone()], &eigen, &r, n, &mut table).unwrap();
            println!("n={} g=2 one insertion {} at q=0 zero: {}", n, mu, rec3.coeff(0).is_zero());
        }
    }
}
