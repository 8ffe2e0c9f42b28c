//! Density estimates and structure of a residue-class set and a sparse block set.
//!
//! Run with `cargo run --example densities`.

use diffembed::density::{self, AsymptoticProxy};
use diffembed::gen::{self, GenSpec};
use diffembed::ratio::fmt_rat;
use diffembed::Window;
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let window = Window::new(1, 100_000)?;
    let residues = gen::generate(&GenSpec::residues(5, &[0, 1], window))?.into_single()?;

    let up = density::upper_banach_est(&residues, 1000)?;
    let lo = density::lower_banach_est(&residues, 1000)?;
    let asym = density::upper_asymptotic_est(&residues, window.len(), AsymptoticProxy::default())?;
    let schn = density::schnirelmann_est(&residues, window.len())?;
    println!("residues {{0,1}} mod 5 on {window}");
    println!("  upper Banach (n=1000)  {}", fmt_rat(&up.value));
    println!("  lower Banach (n=1000)  {}", fmt_rat(&lo.value));
    println!("  upper asymptotic       {}", fmt_rat(&asym.value));
    println!("  Schnirelmann           {}", fmt_rat(&schn.value));
    assert_eq!(up.value, lo.value);

    // Blocks [k^3, k^3 + k]: thick but of zero density.
    let blocks = gen::generate(&GenSpec::blocks(Window::new(0, 1_000_000)?))?.into_single()?;
    let s = density::classify(&blocks, 50, 10);
    println!("blocks on [0, 10^6]");
    println!("  longest run            {:?}", s.longest_run);
    println!("  thick at length 50     {:?}", s.thick_at);
    println!("  upper Banach (n=50)    {}", fmt_rat(&density::upper_banach_est(&blocks, 50)?.value));
    println!("  upper Banach (n=10^5)  {}", fmt_rat(&density::upper_banach_est(&blocks, 100_000)?.value));
    Ok(())
}

fn main() {
    run_example().unwrap();
}
