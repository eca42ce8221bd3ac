//! Build the k-piece and binomial section covers and verify them by sampling.

use confsec::geometry::Space;
use confsec::sections::{self, binomial_cover, default_basepoints, key_lemma_cover};

fn main() -> confsec::Result<()> {
    let samples = 10_000;
    for (space, k) in [(Space::Sphere(1), 2), (Space::Sphere(2), 3), (Space::Torus(2), 3)] {
        let cover = key_lemma_cover(space, k, &default_basepoints(space, k)?)?;
        report(&format!("F({space},{k}) -> {space}"), &sections::verify_cover(&cover, 0, samples)?);
    }
    for (k, r) in [(3, 2), (4, 2)] {
        let space = Space::Sphere(2);
        let cover = binomial_cover(space, k, r, &default_basepoints(space, k)?)?;
        report(&format!("F(S2,{k}) -> F(S2,{r})"), &sections::verify_cover(&cover, 0, samples)?);
    }

    // dropping a piece must be caught
    let cover = key_lemma_cover(Space::Sphere(2), 3, &default_basepoints(Space::Sphere(2), 3)?)?;
    report("S2 cover minus one piece", &sections::verify_cover(&cover.without_piece(0), 0, samples)?);
    Ok(())
}

fn report(name: &str, r: &sections::VerificationReport) {
    println!(
        "{name:<26} {} pieces  coverage {:.4}  identity {:e}  separation {:.3e}  continuity {:.2}  {}",
        r.pieces,
        r.coverage,
        r.identity_error,
        r.min_separation,
        r.continuity_ratio,
        if r.passed { "PASS" } else { "FAIL" }
    );
}
