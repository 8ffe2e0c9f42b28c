//! Covering candidate shifts by a few translates of a Delta set.

use diffembed::cover;
use diffembed::gen::{self, GenSpec};
use diffembed::ratio::{fmt_rat, rat};
use diffembed::Window;
use std::error::Error;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let a = gen::generate(&GenSpec::residues(5, &[0, 1], Window::new(1, 100_000)?))?.into_single()?;
    let xs: Vec<i64> = (-500..=500).collect();

    let rep = cover::delta_shift_cover(&a, &xs, rat(0, 1), 1000, 0)?;
    println!(
        "shifts {:?}  (at most {})  covered {}  recounted in the Delta set {}",
        rep.cover.shifts, rep.cover.k_bound, rep.cover.covered, rep.delta_verified
    );
    assert!(rep.violations.is_empty());

    // Re-check the certificate against the window it was computed on.
    let c = a.restrict(Window::with_len(rep.window.at + 1, 1000)?).rebase(1);
    assert!(cover::check_certificate(&c, &xs, &rep.cover).is_empty());

    // The same question modulo 2.
    let q = cover::quotient_cover(&a, 2, rat(0, 1), 1000, Window::new(-100, 100)?)?;
    println!("quotient by 2: shifts {:?} covered {}", q.shifts, q.covered);

    // Any six subsets of [1, 1000] of density 2/5 must overlap somewhere.
    let unit = Window::new(1, 1000)?;
    let family = (0..6)
        .map(|seed| gen::generate(&GenSpec::bernoulli(rat(2, 5), unit, seed))?.into_single())
        .collect::<Result<Vec<_>, _>>()?;
    let cs = cover::cs_family_inequality(&family, 1000)?;
    println!(
        "six random sets: guaranteed overlap {}, largest actual {}, integer form holds {}",
        fmt_rat(&cover::guaranteed_overlap(&family, 1000)?),
        fmt_rat(&cover::max_pair_overlap(&family, 1000)),
        cs.holds
    );
    Ok(())
}

fn main() {
    run_example().unwrap();
}
