//! Helpers for driving the compiled binary. Each test binary compiles
//! its own copy and uses a different subset.
#![allow(dead_code)]

use std::process::{Command, Output};

pub fn arcposet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arcposet"))
        .args(args)
        .output()
        .expect("the binary runs")
}

pub fn stdout_text(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

pub fn stderr_text(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is UTF-8")
}

pub fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("the binary exits normally")
}
