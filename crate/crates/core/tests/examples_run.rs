mod hello_library_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/hello_library.rs"));
}

#[test]
fn hello_library_example_runs() {
    hello_library_example::run_example().expect("hello_library example should run");
}

mod butterfly_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/butterfly.rs"));
}

#[test]
fn butterfly_example_runs() {
    butterfly_example::run_example().expect("butterfly example should run");
}

mod bands_and_gaps_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/bands_and_gaps.rs"));
}

#[test]
fn bands_and_gaps_example_runs() {
    bands_and_gaps_example::run_example().expect("bands_and_gaps example should run");
}

mod lyapunov_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/lyapunov.rs"));
}

#[test]
fn lyapunov_example_runs() {
    lyapunov_example::run_example().expect("lyapunov example should run");
}

mod rotation_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/rotation.rs"));
}

#[test]
fn rotation_example_runs() {
    rotation_example::run_example().expect("rotation example should run");
}

mod duality_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/duality.rs"));
}

#[test]
fn duality_example_runs() {
    duality_example::run_example().expect("duality example should run");
}

mod walk_vs_cmv_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/walk_vs_cmv.rs"));
}

#[test]
fn walk_vs_cmv_example_runs() {
    walk_vs_cmv_example::run_example().expect("walk_vs_cmv example should run");
}

mod cocycle_identities_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/cocycle_identities.rs"));
}

#[test]
fn cocycle_identities_example_runs() {
    cocycle_identities_example::run_example().expect("cocycle_identities example should run");
}

mod arithmetic_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/arithmetic.rs"));
}

#[test]
fn arithmetic_example_runs() {
    arithmetic_example::run_example().expect("arithmetic example should run");
}

mod command_line_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/command_line.rs"));
}

#[test]
fn command_line_example_runs() {
    command_line_example::run_example().expect("command_line example should run");
}
