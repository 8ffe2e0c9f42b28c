//! Seeded generators. The same spec always yields the same set, across runs
//! and thread counts.

use diffembed::gen::{self, GenSpec, Generated};
use diffembed::setfile::{self, Format};
use std::error::Error;

const SPECS: &[&str] = &[
    r#"{"window": [0, 99], "seed": 3, "kind": "bernoulli", "p": "1/3"}"#,
    r#"{"window": [0, 29], "kind": "residues", "modulus": 7, "classes": [0, 3]}"#,
    r#"{"window": [0, 60], "kind": "ap_union", "progressions": [{"start": 1, "step": 10, "len": 4}, {"start": 50, "step": 1}]}"#,
    r#"{"window": [0, 1000], "kind": "blocks", "power": 2, "coef": 10}"#,
    r#"{"window": [0, 100000], "kind": "chain_in_thick", "count": 5}"#,
];

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for text in SPECS {
        let spec = GenSpec::from_json(text)?;
        let set = gen::generate(&spec)?.into_single()?;
        let again = gen::generate(&spec)?.into_single()?;
        assert_eq!(set, again);
        let preview: Vec<i64> = set.iter().take(12).collect();
        println!("{:<15} |S| = {:>4}  first {:?}", kind_name(text), set.len(), preview);
    }

    let triple = gen::generate(&GenSpec::from_json(r#"{"window": [0, 100000], "kind": "thick_triple", "scale": 40}"#)?)?;
    if let Generated::Triple { a, b, c } = &triple {
        let d = a.difference_set(b);
        let escaped = d.iter().filter(|&t| !c.contains(t)).count();
        println!("thick triple: |A| = {}, |B| = {}, |C| = {}, points of A - B outside C: {escaped}", a.len(), b.len(), c.len());
    }

    let small = gen::generate(&GenSpec::from_json(SPECS[1])?)?.into_single()?;
    print!("{}", setfile::render(&small, Format::Bits));
    Ok(())
}

fn kind_name(text: &str) -> &str {
    let start = text.find("\"kind\": \"").map(|i| i + 9).unwrap_or(0);
    let rest = &text[start..];
    &rest[..rest.find('"').unwrap_or(rest.len())]
}

fn main() {
    run_example().unwrap();
}
