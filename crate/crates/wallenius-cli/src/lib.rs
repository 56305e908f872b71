//! Library half of the `wallenius` command-line tool: argument types,
//! subcommand implementations and the SVG renderers. The binary in
//! `main.rs` is a thin wrapper so integration tests can drive everything
//! directly.

pub mod args;
pub mod commands;
pub mod render;
