//! Bohr sets inside a difference set.
//!
//! D = A - A for A = residues {0, 1} mod 5 is {0, ±1} mod 5. The frequency
//! 1/5 with radius 1/4 keeps t with ‖t/5‖ < 1/4, which is D again.

use diffembed::bohr::{self, BohrSpec};
use diffembed::gen::{self, GenSpec};
use diffembed::ratio::{fmt_rat, rat};
use diffembed::Window;
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let a = gen::generate(&GenSpec::residues(5, &[0, 1], Window::new(0, 999)?))?.into_single()?;
    let d = a.difference_set(&a).restrict(Window::new(-500, 500)?);

    let spec = BohrSpec::new(vec![rat(1, 5)], rat(1, 4), 0)?;
    let s = bohr::bohr_generate(&spec, d.window());
    let c = bohr::bohr_contained(&s, &d, d.window())?;
    println!("Bohr(1/5, 1/4) has {} points, |D| = {}, contained in D: {}", s.len(), d.len(), c.ok);
    assert!(c.ok);

    for score in bohr::freq_spectrum(&d, 12).iter().take(4) {
        println!("  frequency {:>5}  magnitude {:.1}", fmt_rat(&score.freq), score.magnitude);
    }

    if let Some(w) = bohr::piecewise_bohr_search(&d, 2, &bohr::default_eps_grid(), 100)? {
        println!(
            "witness: freqs {:?}, eps {}, shift {}, clean on {}",
            w.spec.freqs.iter().map(fmt_rat).collect::<Vec<_>>(),
            fmt_rat(&w.spec.eps),
            w.spec.shift,
            w.interval
        );
    }
    Ok(())
}

fn main() {
    run_example().unwrap();
}
