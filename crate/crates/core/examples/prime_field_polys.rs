//! Frobenius cycle types and finite-field arithmetic.

use abelian_points::field::{self, FiniteField};
use abelian_points::poly::IntPoly;

pub fn main() {
    let f: IntPoly = "x^5 - x - 1".parse().unwrap();
    for p in [2u64, 3, 5, 7, 11, 13] {
        match field::cycle_type(&f, p) {
            Ok(c) => println!("{f} mod {p}: {c}"),
            Err(e) => println!("{f} mod {p}: {e}"),
        }
    }

    let gf = FiniteField::new(3, 2).unwrap();
    let a = gf.from_int(2);
    println!("F_9 modulus {}", gf.modulus());
    println!("sqrt(2) in F_9: {:?}", gf.sqrt(a).map(|s| gf.format_element(s)));

    let gf8 = FiniteField::of_order(8).unwrap();
    let c = gf8.elements().nth(3).unwrap();
    println!(
        "z^2 + z = {} over F_8: {:?}",
        gf8.format_element(c),
        gf8.solve_artin_schreier(c).unwrap()
    );
}
