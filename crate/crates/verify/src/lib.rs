//! Holds the `acceptance` test target. Run it with
//! `cargo test -p spinwreath-verify --test acceptance`.
