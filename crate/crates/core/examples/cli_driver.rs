//! The command layer behind `c2tool`, driven in-process.
//!
//! cargo run --release --example cli_driver

use c2core::cli::{run, Command, GraphSource, Method, RunConfig};

fn main() {
    let cfg = RunConfig {
        source: Some(GraphSource::Gen("zigzag:3:completed".into())),
        qs: vec![7],
        method: Method::FourValent,
        ..RunConfig::default()
    };
    let out = run(&cfg);
    print!("{}", out.output);
    println!("exit code {}", out.code);

    let out = run(&RunConfig {
        method: Method::Slr,
        json: true,
        qs: vec![2, 3, 5, 7],
        ..cfg
    });
    print!("{}", out.output);

    let out = run(&RunConfig {
        command: Command::Verify("bogus".into()),
        ..RunConfig::default()
    });
    println!("{}exit code {}", out.output, out.code);
}
