//! ε-Delta sets: which shifts `t` keep `A ∩ (A - t)` dense.
//!
//! For residues {0, 1} mod 5 every multiple of 5 keeps the full density 2/5,
//! shifts `≡ ±1` keep 1/5 and the others keep nothing.

use diffembed::delta;
use diffembed::density::AsymptoticProxy;
use diffembed::gen::{self, GenSpec};
use diffembed::ratio::{fmt_rat, rat};
use diffembed::Window;
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let a = gen::generate(&GenSpec::residues(5, &[0, 1], Window::new(1, 5000)?))?.into_single()?;
    let trange = Window::new(-10, 10)?;

    let banach = delta::eps_delta_banach(&a, rat(1, 4), 500, trange)?;
    for t in trange.iter() {
        println!("t={t:>3}  estimate {:>4}  member {}", fmt_rat(banach.estimate(t).unwrap()), banach.contains(t));
    }
    assert!(banach.members.iter().all(|t| t % 5 == 0));

    let loose = delta::eps_delta_upper(&a, rat(1, 10), 4000, trange, AsymptoticProxy::default())?;
    println!("eps=1/10, upper asymptotic: {:?}", loose.members.to_vec());
    Ok(())
}

fn main() {
    run_example().unwrap();
}
