//! Two dense sets A and B: finitely many translates of A - B cover a long
//! interval, and the common pattern sits inside both.

use diffembed::extract::{self, ExtractOptions, DifferenceCoverParams, PipelineParams};
use diffembed::gen::{self, GenSpec};
use diffembed::ratio::{fmt_rat, rat};
use diffembed::Window;
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let window = Window::new(0, 400_000)?;
    let a = gen::generate(&GenSpec::residues(3, &[0], window))?.into_single()?;
    let b = gen::generate(&GenSpec::bernoulli(rat(3, 10), window, 21))?.into_single()?;

    let mut pipeline = PipelineParams::new(198_000, 2000);
    pipeline.nu = 3000;
    pipeline.extract = ExtractOptions::long();

    let pair = extract::common_pattern(&a, &b, &pipeline)?;
    println!(
        "pattern of {} points, density {} in the pattern window; A-shift {}, B-shift {}",
        pair.cert.e_prefix.len(),
        fmt_rat(&pair.cert.prefix_sigma),
        pair.shift_a,
        pair.shift_b
    );
    assert!(pair.embeds_a && pair.embeds_b);

    let params = DifferenceCoverParams {
        pipeline,
        x: Window::new(-1000, 1000)?,
        baseline_radius: 3,
    };
    let rep = extract::difference_cover(&a, &b, &params)?;
    println!(
        "F = {:?} (bound {}), target {} covered: {}",
        rep.cover.shifts, rep.k_bound, rep.target, rep.target_covered
    );
    println!("baseline shifts taken straight from A - B: {:?}", rep.baseline_shifts);
    assert!(rep.violations.is_empty());
    Ok(())
}

fn main() {
    run_example().unwrap();
}
