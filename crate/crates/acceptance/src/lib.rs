//! Holds the `acceptance` test target; run it with
//! `cargo test -p mstc-validation --test acceptance`.
