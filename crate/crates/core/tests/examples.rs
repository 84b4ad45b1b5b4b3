//! Runs every example's `main` so the examples stay in sync with the library.

#[allow(dead_code)]
#[path = "../examples/cli_roundtrip.rs"]
mod cli_roundtrip;
#[allow(dead_code)]
#[path = "../examples/curve_counting.rs"]
mod curve_counting;
#[allow(dead_code)]
#[path = "../examples/galois_groups.rs"]
mod galois_groups;
#[allow(dead_code)]
#[path = "../examples/genus_plans.rs"]
mod genus_plans;
#[allow(dead_code)]
#[path = "../examples/hensel_local.rs"]
mod hensel_local;
#[allow(dead_code)]
#[path = "../examples/k4_stabilizers.rs"]
mod k4_stabilizers;
#[allow(dead_code)]
#[path = "../examples/laurent_series.rs"]
mod laurent_series;
#[allow(dead_code)]
#[path = "../examples/modular_toolkit.rs"]
mod modular_toolkit;
#[allow(dead_code)]
#[path = "../examples/norm_equation.rs"]
mod norm_equation;
#[allow(dead_code)]
#[path = "../examples/number_field_primes.rs"]
mod number_field_primes;
#[allow(dead_code)]
#[path = "../examples/prime_field_polys.rs"]
mod prime_field_polys;
#[allow(dead_code)]
#[path = "../examples/staircase_certificate.rs"]
mod staircase_certificate;
#[allow(dead_code)]
#[path = "../examples/supersingular_primes.rs"]
mod supersingular_primes;
#[allow(dead_code)]
#[path = "../examples/tame_symbol.rs"]
mod tame_symbol;

#[test]
fn runs_cli_roundtrip() {
    cli_roundtrip::main();
}

#[test]
fn runs_curve_counting() {
    curve_counting::main();
}

#[test]
fn runs_galois_groups() {
    galois_groups::main();
}

#[test]
fn runs_genus_plans() {
    genus_plans::main();
}

#[test]
fn runs_hensel_local() {
    hensel_local::main();
}

#[test]
fn runs_k4_stabilizers() {
    k4_stabilizers::main();
}

#[test]
fn runs_laurent_series() {
    laurent_series::main();
}

#[test]
fn runs_modular_toolkit() {
    modular_toolkit::main();
}

#[test]
fn runs_norm_equation() {
    norm_equation::main();
}

#[test]
fn runs_number_field_primes() {
    number_field_primes::main();
}

#[test]
fn runs_prime_field_polys() {
    prime_field_polys::main();
}

#[test]
fn runs_staircase_certificate() {
    staircase_certificate::main();
}

#[test]
fn runs_supersingular_primes() {
    supersingular_primes::main();
}

#[test]
fn runs_tame_symbol() {
    tame_symbol::main();
}
