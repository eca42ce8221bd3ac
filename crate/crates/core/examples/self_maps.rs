//! Fixed-point-free self-maps: how far each moves points, and sphere degrees.

use confsec::geometry::Space;
use confsec::selfmaps::{self, SelfMap};

fn main() -> confsec::Result<()> {
    for entry in selfmaps::catalog() {
        println!("{:<18} {}", entry.recipe, entry.spaces);
    }
    println!();

    let maps = [
        SelfMap::antipodal(1),
        SelfMap::antipodal(2),
        SelfMap::antipodal(3),
        SelfMap::rp_odd_rotation(3)?,
        SelfMap::wedge_shift(),
        SelfMap::circle_rotation(1.0)?,
    ];
    for f in &maps {
        let gap = selfmaps::fixed_point_gap(f, 0, 10_000)?;
        println!("{:<18} on {:<6} min d(x, f(x)) = {gap:.6}", f.recipe().name(), f.space().to_string());
    }

    println!();
    for f in [SelfMap::antipodal(1), SelfMap::antipodal(2), SelfMap::identity(Space::Sphere(2))] {
        println!("degree of {} on {} = {}", f.recipe().name(), f.space(), selfmaps::degree(&f)?);
    }
    Ok(())
}
