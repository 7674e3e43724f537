//! Library side of the `stonedual` command line tool: the named table
//! corpus and the randomized self-test suites.

pub mod corpus;
pub mod selftest;
