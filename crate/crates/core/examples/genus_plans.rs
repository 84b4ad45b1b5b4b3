//! Double covers of index-ell genus one curves for g >= 4.

use abelian_points::global;

pub fn main() {
    for g in [4u64, 5, 8, 9, 22] {
        let plan = global::genus_construction_plan(g).unwrap();
        println!(
            "g = {g:>2}: k = {}, ell = {}, {} branch points",
            plan.k, plan.ell, plan.branch_points
        );
    }
    println!("g = 3: {}", global::genus_construction_plan(3).unwrap_err());
}
