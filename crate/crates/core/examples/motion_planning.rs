//! Plans for moving k robots so that the first reaches a goal, with the
//! minimal number of continuous rules on S1 and S2.

use confsec::geometry::Space;
use confsec::planner::{self, PlanQuery};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> confsec::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (space, k) in [(Space::Sphere(1), 3), (Space::Sphere(2), 2), (Space::Torus(2), 2)] {
        let o = planner::optimality(space, k)?;
        println!("{space} with {k} robots: {} regions, TC(pi({k},1,{space})) in {}", o.regions, o.complexity);
        let mut used = vec![0; o.regions];
        for i in 0..200 {
            let q = PlanQuery::random(space, k, 1, &mut rng)?;
            let plan = planner::plan(&q)?;
            let report = planner::verify_plan(&plan, &q, i)?;
            assert!(report.passed, "{report:?}");
            used[plan.region_id - 1] += 1;
        }
        println!("  200 random queries verified, region usage {used:?}");
    }

    let q = PlanQuery::random(Space::Sphere(2), 2, 1, &mut rng)?;
    let plan = planner::plan(&q)?;
    let broken = planner::inject_teleport(&plan, 0.5)?;
    println!("teleport fault caught: {}", !planner::verify_plan(&broken, &q, 0)?.passed);
    let csv = plan.to_csv();
    println!("trajectory CSV, first rows:");
    csv.lines().take(4).for_each(|l| println!("  {l}"));
    Ok(())
}
