//! Command-line front end for the quaternion linear-systems library:
//! quaternion literal grammar, the TOML problem/matrix file format, and
//! the subcommand implementations behind the `lqds` binary.

pub mod exec;
pub mod literal;
pub mod problem;
