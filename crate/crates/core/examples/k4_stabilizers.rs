//! S4 acting on the vertices and edges of K4.

use abelian_points::appendix::k4;

pub fn main() {
    let r = k4::k4_s4_report();
    for s in r.vertex_stabilizers.iter().chain(&r.edge_stabilizers) {
        println!("stab({}): order {}, normal {}", s.target, s.order, s.normal);
    }
    for o in &r.overgroups_of_commutator {
        println!("overgroup of order {}: fixed vertices {:?}, fixed edges {:?}", o.order, o.fixed_vertices, o.fixed_edges);
    }
    println!("all checks pass: {}", r.passed);
}
