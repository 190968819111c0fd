fn main() {
    use hilbgw_core::algebra::{frac, rational_reconstruct, QSeries, Ring, Scalar};
    use hilbgw_core::cohft::{reconstruct_invariant, PsiTable};
    use hilbgw_core::rmatrix::hilb_rmatrix;
    use hilbgw_core::Partition;
    use std::time::Instant;

    let t0 = Instant::now();
    let (eigen, r) = hilb_rmatrix(2, 5, 8).unwrap();
    println!("pipeline: {:?}", t0.elapsed());
    let mut table = PsiTable::new();
    let t0 = Instant::now();
    let got = reconstruct_invariant(1, &[Partition::new(vec![2])], &eigen, &r, 2, &mut table).unwrap();
    println!("reconstruct: {:?}", t0.elapsed());

    // -(1/24) (t1+t2)^2/(t1 t2) (1+q)/(1-q)
    let t1 = Scalar::t1();
    let t2 = Scalar::t2();
    let tsum = Ring::add(&t1, &t2);
    let pref = Ring::mul(
        &frac(-1, 24),
        &Ring::mul(&Ring::mul(&tsum, &tsum), &Ring::mul(&t1, &t2).inv().unwrap()),
    );
    let order = 8;
    let one_plus = QSeries::one(order).add(&QSeries::x(order));
    let one_minus = QSeries::one(order).sub(&QSeries::x(order));
    let want = one_plus.div(&one_minus).unwrap().scale(&pref);
    for k in 0..=order {
        let ok = got.coeff(k) == want.coeff(k);
        println!("q^{}: {} {}", k, if ok { "OK " } else { "MISMATCH" },
                 if ok { String::new() } else { format!("got {} want {}", got.coeff(k), want.coeff(k)) });
    }
    let rf = rational_reconstruct(&got, 2).unwrap();
    println!("rational form recovered: num deg {:?}", rf.degrees());
}
