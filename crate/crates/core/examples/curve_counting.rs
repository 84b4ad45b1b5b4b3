//! Point counts, group structures and admissible orders over F_q.

use abelian_points::elliptic::{self, CurveModel};
use abelian_points::field::FiniteField;

pub fn main() {
    let e: CurveModel = "y^2 = x^3 - 1555200 over F_11".parse().unwrap();
    let g = e.group_structure().unwrap();
    println!("{e}: {} points, {g}", g.order);
    assert_eq!(g.to_string(), "Z/12");

    for q in [2u64, 3, 4, 8, 9, 25, 49] {
        let c = elliptic::find_ell(q).unwrap();
        let field = FiniteField::of_order(q).unwrap();
        let (curve, n) = elliptic::search_curve_with_order(&field, |n| n == c.n).unwrap();
        println!("q = {q}: N = {}, ell = {}, realized by {curve} ({n} points)", c.n, c.ell);
    }
}
