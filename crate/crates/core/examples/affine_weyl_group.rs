// Elements of the affine Weyl group: inversion sets, length, reduced
// words, Bruhat order and the Coxeter matrix.
//
// ```bash
// cargo run --example affine_weyl_group
// ```

use iwahori::root_data::{build_affine_system, build_finite_product};

pub fn run_example() -> iwahori::Result<()> {
    let sys = build_affine_system(build_finite_product(&"A2".parse()?)?)?;
    let w = sys.word_element(&[0, 1, 0, 2])?;
    println!("w = s0 s1 s0 s2 acts as {w}");
    println!("inversion set:");
    for alpha in sys.inversion_set(&w) {
        println!("  {alpha}");
    }
    println!("length {}, reduced word {:?}", sys.length(&w), sys.reduced_word(&w)?);
    println!("right descents {:?}, left descents {:?}", sys.right_descents(&w), sys.left_descents(&w));

    let v = sys.word_element(&[0, 2])?;
    println!("s0 s2 <= w: {}", sys.bruhat_leq(&v, &w));
    println!("w <= s0 s2: {}", sys.bruhat_leq(&w, &v));

    for row in sys.coxeter_matrix() {
        let row: Vec<String> = row.iter().map(ToString::to_string).collect();
        println!("  {}", row.join(" "));
    }
    let sizes: Vec<usize> = sys.ball(5).iter().map(Vec::len).collect();
    println!("elements by length: {sizes:?}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> iwahori::Result<()> {
    run_example()
}
