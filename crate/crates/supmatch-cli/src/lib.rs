//! Experiment harness behind the `supmatch` command line: instance
//! generation, solve runs, mutation grids, operator benchmarks and
//! oracle comparisons, all reading and writing plain-text files.

pub mod bench;
pub mod compare;
pub mod files;
pub mod generate;
pub mod grid;
pub mod oracle_cmd;
pub mod solve;
