//! Primes where y^2 = x^3 - 1555200 is supersingular with ell | p + 1.

use abelian_points::global;

pub fn main() {
    for ell in [4u64, 5, 7, 11, 13] {
        let w = global::torsor_prime_search(ell).unwrap();
        println!("ell = {ell:>2}: p = {:>3}, E(F_p) = {}", w.prime, w.structure);
    }
    let w = global::torsor_prime_search(5).unwrap();
    w.verify().unwrap();
}
