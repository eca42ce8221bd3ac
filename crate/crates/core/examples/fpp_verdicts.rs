//! Fixed point property and sec(F(X,2) -> X) for each model space.

use confsec::geometry::Space;
use confsec::sections::fpp_verdict;

fn main() -> confsec::Result<()> {
    let spaces = [
        Space::Sphere(1),
        Space::Sphere(2),
        Space::Sphere(5),
        Space::RealProjective(2),
        Space::RealProjective(3),
        Space::Torus(3),
        Space::Disc(2),
        Space::WedgeS2S1,
        Space::Discrete(1),
        Space::Discrete(4),
    ];
    for space in spaces {
        let v = fpp_verdict(space, 0)?;
        println!("{:<10} FPP {:<8} sec {:<8} {}", space.to_string(), format!("{:?}", v.fpp), v.sec21.to_string(), v.reason);
    }
    Ok(())
}
