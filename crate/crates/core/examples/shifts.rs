//! Shifts of finite type through their de Bruijn graphs.
//!
//! cargo run --example shifts

use insertion_kit::consistency::check_property_c;
use insertion_kit::sft::{all_loopless, check_lr, de_bruijn, not_finitely_dependent_certificate, sample_sft, ShiftOfFiniteType};

fn main() -> insertion_kit::Result<()> {
    let colorings = ShiftOfFiniteType::proper_colorings(3)?;
    let lr = check_lr(&colorings);
    let c = check_property_c(&de_bruijn(&colorings), 4)?;
    println!("proper 3-colorings: K = {:?}, C_n = {:?}", lr.k, c.constants.map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()));
    for word in sample_sft(&colorings, 6, 3, 3)?.words {
        println!("  {word:?}");
    }

    let bad = ShiftOfFiniteType::new(3, 2, [vec![0, 1], vec![0, 2], vec![1, 0]])?;
    println!("{:?}: {:?}", bad.allowed(), check_lr(&bad).violation);

    let cert = not_finitely_dependent_certificate(&colorings);
    println!("certificate issued: {}", cert.issued);
    for line in &cert.argument {
        println!("  {line}");
    }

    let shifts = all_loopless(2, 3);
    let lr_count = shifts.iter().filter(|s| check_lr(s).is_constant).count();
    let certified = shifts.iter().filter(|s| not_finitely_dependent_certificate(s).issued).count();
    println!("binary window-3 shifts: {} total, {lr_count} pass LR, {certified} certified", shifts.len());
    Ok(())
}
