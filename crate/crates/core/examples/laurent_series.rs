//! Truncated Laurent series and their valuations.

use abelian_points::appendix::LaurentSeries;

pub fn main() {
    let a: LaurentSeries = "t^-1 + 2 + 3*t + O(t^10)".parse().unwrap();
    let b: LaurentSeries = "1 + t".parse().unwrap();
    println!("a = {a}, v(a) = {}", a.valuation().unwrap());
    println!("1/(1+t) = {}", b.inv().unwrap());
    println!("a*b = {}", a.mul(&b));
    println!("a^-2 = {}", a.pow(-2).unwrap());
}
