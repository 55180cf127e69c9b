// Finite and affine root systems, the base alcove, and the sign of an
// affine root on it.
//
// ```bash
// cargo run --example root_systems
// ```

use iwahori::linalg::{fmt_vector, q};
use iwahori::root_data::{build_affine_system, build_finite_product, AffineRoot, CartanSpec};

pub fn run_example() -> iwahori::Result<()> {
    for name in ["A2", "C2", "G2", "A1xA2"] {
        let spec: CartanSpec = name.parse()?;
        let finite = build_finite_product(&spec)?;
        let affine = build_affine_system(finite.clone())?;
        println!("{name}: {} roots, Cartan matrix {:?}", finite.roots().len(), finite.cartan_matrix());
        for wall in affine.walls() {
            println!("  {} : {}", wall.name, wall.root);
        }
        println!("  barycenter of the base alcove: {}", fmt_vector(&affine.base_alcove().interior_point));
    }

    let a2 = build_affine_system(build_finite_product(&"A2".parse()?)?)?;
    let alpha = AffineRoot::new(vec![q(1), q(1)], q(-1))?;
    println!("{alpha} is {} on the base alcove", if a2.is_positive(&alpha)? { "positive" } else { "negative" });
    println!("{alpha} divisible: {}", a2.is_divisible(&alpha)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> iwahori::Result<()> {
    run_example()
}
