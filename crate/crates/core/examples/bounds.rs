//! Interval bounds on cat, TC and sec with derivation trees.

use confsec::bounds::presets::preset;
use confsec::bounds::Knowledge;

fn main() -> confsec::Result<()> {
    let facts = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/rp2.json"))?;
    let k = Knowledge::from_json_str(&facts)?;
    let q = k.parse_quantity("TC(pi(3,1,RP2))")?;
    print!("{}", k.query(&q)?.explain());
    println!();

    for (space, query) in [
        ("S2", "TC(pi(2,1,S2))"),
        ("S3", "TC(pi(2,1,S3))"),
        ("S2", "sec(pi(4,2,S2))"),
        ("S2", "TC(pi(3,2,S2))"),
        ("T2", "TC(pi(3,1,T2))"),
        ("D2", "TC(pi(3,1,D2))"),
    ] {
        let k = preset(space)?;
        let fact = k.query(&k.parse_quantity(query)?)?;
        println!("{query:<18} {}", fact.interval);
    }

    let bad = Knowledge::from_json_str(&std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/contradiction.json"))?)?;
    match bad.propagate() {
        Ok(_) => println!("no contradiction"),
        Err(e) => println!("\n{e}"),
    }
    Ok(())
}
