//! Factoring, CRT searches and the 2^s - 3^t = +-1 census.

use abelian_points::arith;
use num_bigint::BigUint;

pub fn main() {
    let n: BigUint = "1555200".parse().unwrap();
    let f = arith::factorize(&n).unwrap();
    println!("1555200 = {:?}", f.to_u64_pairs().unwrap());

    // smallest prime p = 2 mod 3 and p = -1 mod 7
    let p = arith::crt_search(&[(2, 3), (6, 7)], arith::is_prime_u64, 1000).unwrap();
    println!("p = 2 mod 3, p = 6 mod 7: {p}");
    assert_eq!(p, 41);

    println!("ord_11(127) = {}", arith::multiplicative_order(127 % 11, 11).unwrap());
    println!("phi(7^3) = {}", arith::euler_phi_u64(343));

    let sols = arith::catalan_solutions(60, 40);
    println!("|2^s - 3^t| = 1: {sols:?}");
    assert_eq!(sols.len(), 4);
}
