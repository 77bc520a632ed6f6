//! Exact arithmetic in the tower F_2 < F_4 < F_16: Frobenius orbits,
//! embeddings, discrete logs and multiplicative orders.

use shintani::fq::FqElem;

fn main() {
    let g4 = FqElem::generator(2, 2);
    println!("generator of F_4*: {:?}, order {}", g4.coeffs(), g4.mult_order());

    for x in FqElem::enumerate(2, 2) {
        let fx = x.frobenius(1);
        println!(
            "{:?} -> F -> {:?}   embed(F_16) = {:?}",
            x.coeffs(),
            fx.coeffs(),
            x.embed(4).coeffs()
        );
    }

    let g16 = FqElem::generator(2, 4);
    println!("\ngenerator of F_16*: dlog table");
    let mut x = FqElem::one(2, 4);
    for k in 0..15 {
        assert_eq!(x.dlog(), Some(k));
        x = x.mul(&g16);
    }
    println!("dlog consistent for all 15 units");

    // norm down to F_4: x -> x * x^4 lands in the subfield
    let n = g16.mul(&g16.frobenius(2));
    println!("norm of the generator to F_4: {:?}", n.descend(2).unwrap().coeffs());
}
