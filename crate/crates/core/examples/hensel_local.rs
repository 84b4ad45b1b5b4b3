//! Hensel-liftable local points of Selmer's cubic, and exhaustive checks
//! that staircase cubics have no primitive zeros mod p^3.

use abelian_points::local::{self, DiagonalForm, SearchConfig, SearchMode};

pub fn main() {
    let cfg = SearchConfig::default();
    let selmer: DiagonalForm = "3x^3 + 4y^3 + 5z^3".parse().unwrap();
    for p in [2u64, 3, 5, 7, 31] {
        let w = local::local_solve_escalating(&selmer, p, 5, &cfg).unwrap().unwrap();
        w.verify().unwrap();
        println!("p = {p}: point {:?} mod {p}^{}", w.point, w.precision);
    }

    let form = local::staircase_cubic_form(1, 2, 3, 17).unwrap();
    let cascade = SearchConfig {
        mode: SearchMode::Cascade,
        ..cfg
    };
    let soluble = local::brute_force_primitive_with(&form, 17, 3, &cascade).unwrap();
    println!("{form}: primitive zero mod 17^3 = {soluble}");
}
