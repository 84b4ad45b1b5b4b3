//! Split primes and (ell, p) pairs attached to a number field.

use abelian_points::global::{self, TorsionPairBounds};
use abelian_points::poly::IntPoly;

pub fn main() {
    for f in ["x^2 - 2", "x^3 - x - 1", "x"] {
        let f: IntPoly = f.parse().unwrap();
        let p = global::first_split_prime(&f, 100_000).unwrap();
        let w = global::torsion_pair_search(&f, TorsionPairBounds::default()).unwrap();
        println!(
            "{f}: split prime {p}; ell = {}, p = {}, {} has {} points",
            w.ell, w.prime, w.curve, w.curve_order
        );
    }
    // both Galois closures contain Q(sqrt(-3))
    for f in ["x^2 + x + 1", "x^3 - 2"] {
        let f: IntPoly = f.parse().unwrap();
        println!("{f}: {}", global::first_split_prime(&f, 10_000).unwrap_err());
    }
}
