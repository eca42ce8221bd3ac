//! Sample configurations, project them, and round-trip them through JSON.

use confsec::geometry::{sample_configuration, Space};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> confsec::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for space in [Space::Sphere(2), Space::RealProjective(3), Space::Torus(2), Space::WedgeS2S1] {
        let x = sample_configuration(space, 3, &mut rng)?;
        let y = x.project(1)?;
        println!("{space}: F({space},3) point with min separation {:.4}", x.min_separation());
        println!("  projects to {}", serde_json::to_string(&y)?);
    }

    let x = sample_configuration(Space::Sphere(2), 2, &mut rng)?;
    let text = serde_json::to_string_pretty(&x)?;
    let back: confsec::geometry::Configuration = serde_json::from_str(&text)?;
    println!("round trip distance: {:e}", x.distance(&back));
    Ok(())
}
