//! `S_4` acting on the vertices and edges of the complete graph `K_4`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

/// A permutation of `{0, 1, 2, 3}`: `i -> p[i]`.
pub type Perm = [u8; 4];

pub type Subgroup = BTreeSet<Perm>;

pub const IDENTITY: Perm = [0, 1, 2, 3];

/// The six edges `{i, j}`, `i < j`, in lexicographic order.
pub const EDGES: [(u8, u8); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// All 24 permutations in lexicographic order.
pub fn s4() -> Vec<Perm> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4u8 {
        for b in 0..4u8 {
            for c in 0..4u8 {
                for d in 0..4u8 {
                    let p = [a, b, c, d];
                    let distinct: BTreeSet<u8> = p.iter().copied().collect();
                    if distinct.len() == 4 {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// `(p * q)(i) = p(q(i))`.
pub fn compose(p: &Perm, q: &Perm) -> Perm {
    [p[q[0] as usize], p[q[1] as usize], p[q[2] as usize], p[q[3] as usize]]
}

pub fn inverse(p: &Perm) -> Perm {
    let mut out = [0u8; 4];
    for (i, &x) in p.iter().enumerate() {
        out[x as usize] = i as u8;
    }
    out
}

pub fn is_even(p: &Perm) -> bool {
    let mut inversions = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

pub fn act_on_edge(p: &Perm, e: (u8, u8)) -> (u8, u8) {
    let (a, b) = (p[e.0 as usize], p[e.1 as usize]);
    (a.min(b), a.max(b))
}

/// Smallest subgroup containing `gens`.
pub fn closure(gens: &[Perm]) -> Subgroup {
    let mut group: Subgroup = BTreeSet::from([IDENTITY]);
    let mut frontier = vec![IDENTITY];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = compose(g, &x);
            if group.insert(y) {
                frontier.push(y);
            }
        }
    }
    group
}

/// Every subgroup of `S_4`; each is generated by at most two elements.
pub fn all_subgroups() -> Vec<Subgroup> {
    let g = s4();
    let mut found = BTreeSet::new();
    for a in &g {
        for b in &g {
            found.insert(closure(&[*a, *b]));
        }
    }
    found.into_iter().collect()
}

pub fn conjugate(h: &Subgroup, g: &Perm) -> Subgroup {
    let gi = inverse(g);
    h.iter().map(|x| compose(&compose(g, x), &gi)).collect()
}

pub fn is_normal(h: &Subgroup) -> bool {
    s4().iter().all(|g| &conjugate(h, g) == h)
}

pub fn commutator_subgroup() -> Subgroup {
    let g = s4();
    let mut gens = Vec::new();
    for a in &g {
        for b in &g {
            gens.push(compose(&compose(a, b), &compose(&inverse(a), &inverse(b))));
        }
    }
    closure(&gens)
}

pub fn vertex_stabilizer(v: u8) -> Subgroup {
    s4().into_iter().filter(|p| p[v as usize] == v).collect()
}

pub fn edge_stabilizer(e: (u8, u8)) -> Subgroup {
    s4().into_iter().filter(|p| act_on_edge(p, e) == e).collect()
}

pub fn fixed_vertices(h: &Subgroup) -> Vec<u8> {
    (0..4).filter(|&v| h.iter().all(|p| p[v as usize] == v)).collect()
}

pub fn fixed_edges(h: &Subgroup) -> Vec<(u8, u8)> {
    EDGES
        .iter()
        .copied()
        .filter(|&e| h.iter().all(|p| act_on_edge(p, e) == e))
        .collect()
}

/// Orbits of `h` on the vertices.
pub fn vertex_orbits(h: &Subgroup) -> Vec<Vec<u8>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for v in 0..4u8 {
        if seen.contains(&v) {
            continue;
        }
        let orbit: BTreeSet<u8> = h.iter().map(|p| p[v as usize]).collect();
        seen.extend(orbit.iter().copied());
        out.push(orbit.into_iter().collect());
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerEntry {
    /// Vertices are `1..4`; edges are written `"12"` and so on.
    pub target: String,
    pub order: usize,
    pub normal: bool,
    pub distinct_conjugates: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OvergroupEntry {
    pub order: usize,
    pub is_alternating: bool,
    pub fixed_vertices: Vec<u8>,
    pub fixed_edges: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct K4Report {
    pub group_order: usize,
    pub subgroup_count: usize,
    pub vertex_stabilizers: Vec<StabilizerEntry>,
    pub edge_stabilizers: Vec<StabilizerEntry>,
    pub commutator_order: usize,
    pub overgroups_of_commutator: Vec<OvergroupEntry>,
    pub vertex_stabilizers_ok: bool,
    pub edge_stabilizers_ok: bool,
    pub overgroups_ok: bool,
    pub passed: bool,
}

fn edge_name(e: (u8, u8)) -> String {
    format!("{}{}", e.0 + 1, e.1 + 1)
}

fn stabilizer_entry(target: String, h: &Subgroup) -> StabilizerEntry {
    let conjugates: BTreeSet<Subgroup> = s4().iter().map(|g| conjugate(h, g)).collect();
    StabilizerEntry {
        target,
        order: h.len(),
        normal: is_normal(h),
        distinct_conjugates: conjugates.len(),
    }
}

/// Exhaustive check that vertex and edge stabilizers are non-normal of
/// orders 6 and 4, and that the only subgroups containing the commutator
/// subgroup are `A_4` and `S_4`, neither fixing a vertex or an edge.
pub fn k4_s4_report() -> K4Report {
    let group = s4();
    let subgroups = all_subgroups();
    let vertex_stabilizers: Vec<StabilizerEntry> = (0..4u8)
        .map(|v| stabilizer_entry((v + 1).to_string(), &vertex_stabilizer(v)))
        .collect();
    let edge_stabilizers: Vec<StabilizerEntry> = EDGES
        .iter()
        .map(|&e| stabilizer_entry(edge_name(e), &edge_stabilizer(e)))
        .collect();
    let commutator = commutator_subgroup();
    let overgroups: Vec<OvergroupEntry> = subgroups
        .iter()
        .filter(|h| commutator.is_subset(h))
        .map(|h| OvergroupEntry {
            order: h.len(),
            is_alternating: h.len() == 12 && h.iter().all(is_even),
            fixed_vertices: fixed_vertices(h).into_iter().map(|v| v + 1).collect(),
            fixed_edges: fixed_edges(h).into_iter().map(edge_name).collect(),
        })
        .collect();
    let vertex_ok = vertex_stabilizers.iter().all(|s| s.order == 6 && !s.normal);
    let edge_ok = edge_stabilizers.iter().all(|s| s.order == 4 && !s.normal);
    let mut orders: Vec<usize> = overgroups.iter().map(|o| o.order).collect();
    orders.sort_unstable();
    let overgroups_ok = commutator.len() == 12
        && commutator.iter().all(is_even)
        && orders == [12, 24]
        && overgroups
            .iter()
            .all(|o| o.fixed_vertices.is_empty() && o.fixed_edges.is_empty());
    K4Report {
        group_order: group.len(),
        subgroup_count: subgroups.len(),
        vertex_stabilizers,
        edge_stabilizers,
        commutator_order: commutator.len(),
        overgroups_of_commutator: overgroups,
        vertex_stabilizers_ok: vertex_ok,
        edge_stabilizers_ok: edge_ok,
        overgroups_ok,
        passed: vertex_ok && edge_ok && overgroups_ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_passes() {
        let r = k4_s4_report();
        assert_eq!(r.group_order, 24);
        assert_eq!(r.subgroup_count, 30);
        assert!(r.passed);
        assert_eq!(r.vertex_stabilizers[0].distinct_conjugates, 4);
        assert_eq!(r.edge_stabilizers[0].distinct_conjugates, 3);
    }

    #[test]
    fn controls() {
        let a4 = commutator_subgroup();
        assert_eq!(vertex_orbits(&a4), vec![vec![0, 1, 2, 3]]);
        let trivial = closure(&[]);
        assert_eq!(fixed_vertices(&trivial), vec![0, 1, 2, 3]);
        assert_eq!(fixed_edges(&trivial).len(), 6);
        let stab = vertex_stabilizer(0);
        assert!(stab.iter().all(|p| p[0] == 0));
    }

    #[test]
    fn subgroup_order_census() {
        let mut census = std::collections::BTreeMap::new();
        for h in all_subgroups() {
            *census.entry(h.len()).or_insert(0) += 1;
        }
        // 1, 2 (9), 3 (4), 4 (7), 6 (4), 8 (3), 12, 24
        let want = [(1, 1), (2, 9), (3, 4), (4, 7), (6, 4), (8, 3), (12, 1), (24, 1)];
        assert_eq!(census.into_iter().collect::<Vec<_>>(), want.to_vec());
    }
}
