//! Symbolic B~ on distinct letters, one indeterminate per position pair.
//!
//! cargo run --example closed_forms

use insertion_kit::buildings::{b_tilde_closed_form, b_tilde_symbolic};

fn main() -> insertion_kit::Result<()> {
    for n in 2..=5 {
        let p = b_tilde_symbolic(n, true)?;
        let table = match b_tilde_closed_form(n) {
            Some(c) if c == p => "matches table",
            Some(_) => "DIFFERS from table",
            None => "no table entry",
        };
        println!("n={n} ({} terms, constant {}, {table})", p.term_count(), p.constant_term());
        if n <= 4 {
            println!("  {p}");
        }
    }
    // alternating word 1212...
    for n in 2..=5 {
        println!("alternating n={n}: {}", b_tilde_symbolic(n, false)?);
    }
    Ok(())
}
