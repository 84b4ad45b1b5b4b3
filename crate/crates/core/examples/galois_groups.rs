//! Symmetric-group certificates from cycle types and quartic classification.

use abelian_points::appendix::{self, galois};
use abelian_points::poly::IntPoly;

pub fn main() {
    for f in ["x^3 - x - 1", "x^4 - x - 1", "x^5 - x - 1", "x^4 + 1", "x^3 - 3*x - 1"] {
        let f: IntPoly = f.parse().unwrap();
        let v = appendix::sn_certificate(&f, 1000).unwrap();
        println!("{f}: {:?} from {} cycle types", v.verdict, v.evidence.len());
    }
    for f in ["x^4 - 2", "x^4 + 1", "x^4 + x^3 + x^2 + x + 1", "x^4 + 8*x + 12", "x^4 - x - 1"] {
        let f: IntPoly = f.parse().unwrap();
        println!("{f}: {}", galois::quartic_galois_group(&f).unwrap());
    }
}
