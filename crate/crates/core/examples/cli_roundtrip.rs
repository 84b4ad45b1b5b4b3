//! Drives the command-line interface in-process and re-verifies its output.

use abelian_points::cli;

pub fn main() {
    let out = cli::run(["abelian-points", "certify-cubic", "--a", "2", "--b", "4", "--c", "5", "--p", "2"]);
    println!("exit {}", out.code);
    println!("{}", cli::verify_json(&out.output).unwrap());

    let none = cli::run(["abelian-points", "certify-cubic", "--a", "3", "--b", "4", "--c", "5"]);
    println!("Selmer cubic: exit {}", none.code);

    let plan = cli::run(["abelian-points", "--format", "human", "genus-plan", "--g", "10"]);
    println!("{}", plan.output);
}
