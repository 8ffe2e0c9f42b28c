//! Pattern extraction: pick a dense window, group its length-n traces, and
//! return a pattern E together with the shifts placing E inside the set.

use diffembed::extract::{self, ExtractOptions, Selection};
use diffembed::gen::{self, GenSpec};
use diffembed::ratio::{fmt_rat, rat};
use diffembed::Window;
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let window = Window::new(1, 20_000)?;
    let a = gen::generate(&GenSpec::bernoulli(rat(1, 2), window, 7))?.into_single()?;

    for selection in [Selection::MostFrequent, Selection::LeastOffset] {
        let opts = ExtractOptions {
            selection,
            ..ExtractOptions::default()
        };
        let rep = extract::extract_pattern(&a, 10_000, 12, rat(1, 50), &opts)?;
        let cert = &rep.cert;
        println!(
            "{selection:?}: E = {:?}, prefix density {}, {} of {} offsets share the trace, shift {}",
            cert.e_prefix.elems(),
            fmt_rat(&cert.prefix_sigma),
            cert.theta_count(),
            cert.gamma_size,
            rep.shift
        );
        let c = a.restrict(Window::with_len(rep.window.at + 1, 10_000)?).rebase(1);
        assert!(extract::verify_extraction(&c, cert).is_empty());
        assert!(rep.violations.is_empty());
    }

    // Some shift of a short piece of B meets A in at least the product of densities.
    let b = gen::generate(&GenSpec::bernoulli(rat(1, 3), Window::new(1, 200)?, 8))?.into_single()?;
    let w = extract::pigeonhole_shift(&a, &b)?;
    println!(
        "pigeonhole: shift {} meets {} points, ratio {} against bound {}",
        w.xbar,
        w.count,
        fmt_rat(&w.ratio),
        fmt_rat(&w.bound)
    );
    assert!(w.holds);
    Ok(())
}

fn main() {
    run_example().unwrap();
}
