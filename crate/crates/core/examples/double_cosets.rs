// Parabolic double cosets, Bruhat cell sizes and the Poincaré polynomial
// of a ball in the affine flag variety.
//
// ```bash
// cargo run --example double_cosets
// ```

use iwahori::cells::{
    ball_poincare, cell_size, demazure_product_count, enumerate_double_cosets, ParabolicSubset,
};
use iwahori::group::IwahoriWeyl;

pub fn run_example() -> iwahori::Result<()> {
    let g: IwahoriWeyl = "A2".parse()?;
    let j = ParabolicSubset::parse(&g, "s1")?;
    let reps = enumerate_double_cosets(&g, &j, &j, 3);
    println!("W_s1 \\ W / W_s1 up to length 3 in A2 ({} cosets):", reps.len());
    for w in &reps {
        println!("  {:<12} class {} cell {}", g.format_element(w), w.class, cell_size(&g, w));
    }

    let u: IwahoriWeyl = "2A2".parse()?;
    let w = u.parse_element("s_fix*s_orb")?;
    println!("2A2: |B w B/B| for w = s_fix*s_orb is {}", cell_size(&u, &w));
    println!("     through the word: {}", demazure_product_count(&u, &[0, 1])?);
    if let Err(e) = demazure_product_count(&u, &[0, 0]) {
        println!("     s_fix*s_fix: {e}");
    }

    let none = ParabolicSubset::empty();
    for l in 0..4 {
        let p = ball_poincare(&u, l, &none);
        println!("2A2 ball of radius {l}: {p}  (q = 2: {})", p.eval(2));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> iwahori::Result<()> {
    run_example()
}
