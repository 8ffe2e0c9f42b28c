//! Finite embeddability of one set into another, and a dense variant that
//! counts how often a fixed pattern fits.

use diffembed::embed::{self, Pattern};
use diffembed::gen::{self, GenSpec};
use diffembed::ratio::fmt_rat;
use diffembed::{IntSet, Window};
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let y = gen::generate(&GenSpec::residues(5, &[0, 1], Window::new(0, 9999)?))?.into_single()?;

    // Multiples of 10 sit inside Y after any shift by a multiple of 5.
    let x = IntSet::from_fn(Window::new(0, 200)?, |v| v % 10 == 0);
    let srange = Window::new(-200, 9999)?;
    let rep = embed::window_embeddable(&x, &y, 50, srange)?;
    println!("X = 10Z ∩ [0,200] into Y: ok={} traces={}", rep.ok, rep.traces_checked);

    // {0, 2} never fits: its two points differ by 2, which no pair of Y does.
    let bad = IntSet::from_members([0, 2], Window::new(0, 2)?)?;
    let rep = embed::window_embeddable(&bad, &y, 3, srange)?;
    println!("{{0,2}} into Y: ok={} failing={:?}", rep.ok, rep.failing_config);

    let f = Pattern::new(vec![0, 5])?;
    let dense = embed::dense_embed_est(&f, &y, Window::new(0, 9990)?, 500)?;
    println!("shifts t with t + {{0,5}} ⊆ Y: lower density {}", fmt_rat(&dense.value));

    if let Some((start, step)) = embed::find_ap(&y, 6)? {
        println!("a 6-term progression in Y: start {start}, step {step}");
    }
    Ok(())
}

fn main() {
    run_example().unwrap();
}
