//! Tame symbols and the nonsplit quaternion algebra (sqrt 2, t^(1/2)).

use abelian_points::appendix::{self, norm, LaurentSeries, ResidueField};

pub fn main() {
    let r = norm::sqrt2_quaternion_example().unwrap();
    println!(
        "(sqrt 2, t^(1/2)): representative {}, square root field {:?} with group {:?}, nontrivial = {}",
        r.representative, r.square_root_polynomial, r.square_root_group, r.nontrivial
    );

    let t: LaurentSeries = "t".parse().unwrap();
    let four: LaurentSeries = "4".parse().unwrap();
    for (a, b) in [(&four, &t), (&t, &t)] {
        let s = appendix::tame_symbol(a, b, ResidueField::Rationals).unwrap();
        println!("({a}, {b}) over Q((t)): {} nontrivial = {}", s.representative, s.nontrivial);
    }
}
