//! Norm forms and the norm-equation certificate over Q((t))^ab.

use abelian_points::appendix::{self, MPoly};
use abelian_points::poly::IntPoly;

pub fn main() {
    let f: IntPoly = "x^3 - 2".parse().unwrap();
    let vars: Vec<MPoly> = (0..3).map(|i| MPoly::var(i, 3)).collect();
    println!("N = {}", appendix::norm_form_eval(&f, &vars).unwrap());

    for (f, m) in [("x^3 - x - 1", 2), ("x^4 - x - 1", 2), ("x^3 - x - 1", 3)] {
        let f: IntPoly = f.parse().unwrap();
        match appendix::norm_equation_certificate(&f, m, 500).unwrap() {
            Some(c) => {
                c.verify().unwrap();
                println!("{f}, m = {m}: certified");
            }
            None => println!("{f}, m = {m}: no certificate by this method"),
        }
    }
}
