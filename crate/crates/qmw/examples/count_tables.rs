//! Count medial quandles of small orders, split by structural properties.
//!
//! Columns: total, 2-reductive, involutory, both, then the classes that
//! are not 2-reductive (split into reductive and non-reductive), the
//! quandles whose orbits are all latin, and the latin ones.
//!
//! Run with: cargo run --release --example count_tables

use qmw::enumerate::{count_row, CSV_HEADER};

fn main() {
    println!("{CSV_HEADER}");
    for n in 1..=9 {
        let row = count_row(n, 13).expect("orders up to 13 are supported");
        println!("{}", row.csv());
    }
}
