//! No-abelian-points certificates for staircase diagonal forms, with a
//! JSON round trip and re-verification.

use abelian_points::certificate::Certificate;
use abelian_points::local::{self, DiagonalForm};

pub fn main() {
    let form: DiagonalForm = "2x^3 + 4y^3 + 5z^3".parse().unwrap();
    let cert = local::certify_no_abelian_points(&form, 2).unwrap().unwrap();
    for line in &cert.lemma_chain {
        println!("  {line}");
    }
    let back = Certificate::from_json(&cert.to_json()).unwrap();
    back.verify().unwrap();
    println!("{form}: certificate verified");

    let staircase = local::staircase_cubic_form(1, 1, 60, 11).unwrap();
    println!("{staircase}: {}", local::certify_no_abelian_points(&staircase, 11).unwrap().is_some());

    let selmer: DiagonalForm = "3x^3 + 4y^3 + 5z^3".parse().unwrap();
    let found = local::scan_primes_for_certificate(&selmer, 1000).unwrap();
    println!("{selmer}: {} certificates (none expected)", found.len());

    let cy = local::build_cy_form(5, 2).unwrap();
    println!("{cy}: {}", local::certify_no_abelian_points(&cy, 2).unwrap().is_some());
}
