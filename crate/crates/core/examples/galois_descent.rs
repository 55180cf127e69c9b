// Unramified descent: the quasi-split unitary group in three variables and
// its two length functions.
//
// ```bash
// cargo run --example galois_descent
// ```

use iwahori::group::IwahoriWeyl;

pub fn run_example() -> iwahori::Result<()> {
    let g: IwahoriWeyl = "2A2".parse()?;
    let d = g.descent();
    println!("twist of order {} permuting walls as {:?}", d.action().order(), d.action().permutation());
    for ((wall, orbit), dv) in g.system().walls().iter().zip(d.orbits()).zip(d.d_values()) {
        println!("  {} = orbit {orbit:?}, root {}, d = {dv}", wall.name, wall.root);
    }
    for text in ["s_fix", "s_orb", "s_fix*s_orb", "s_orb*s_fix*s_orb", "t[1,1]"] {
        let w = g.parse_element(text)?;
        println!("{text}: l = {}, l^nr = {}", g.length(&w), g.length_nr(&w));
    }
    match g.parse_element("s1") {
        Err(e) => println!("s1 is rejected: {e}"),
        Ok(_) => unreachable!("s1 is not a wall of the fixed group"),
    }

    for label in ["2A3", "2A4", "2D4", "3D4", "2E6"] {
        let g: IwahoriWeyl = label.parse()?;
        println!("{label}: walls {:?}, d-values {:?}", g.wall_names(), g.descent().d_values());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> iwahori::Result<()> {
    run_example()
}
