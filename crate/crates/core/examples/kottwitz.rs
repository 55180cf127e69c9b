// The alcove stabilizer `Omega ≅ Λ/Q∨` and the Kottwitz map for the three
// kinds of translation lattice.
//
// ```bash
// cargo run --example kottwitz
// ```

use iwahori::group::IwahoriWeyl;

pub fn run_example() -> iwahori::Result<()> {
    for spec in ["A2", "A3", "D4", "G2", "A2--lattice=sc", "A3--lattice=basis:[[1/2,0,1/2],[0,1,0],[0,0,1]]"] {
        let g: IwahoriWeyl = spec.parse()?;
        println!("{spec}: |Omega| = {}, divisors {:?}", g.omega().order(), g.omega().divisors());
        for (class, tau) in g.omega().transversal() {
            println!("  {class} -> {tau}");
        }
    }

    let g: IwahoriWeyl = "A2".parse()?;
    let t = g.parse_element("t[2/3,1/3]")?;
    println!("t[2/3,1/3] = {} with class {}", g.format_element(&t), g.kottwitz(&t));
    let t2 = g.multiply(&t, &t)?;
    println!("its square has class {}", g.kottwitz(&t2));
    let t3 = g.multiply(&t2, &t)?;
    println!("its cube {} lies in W_aff", g.format_element(&t3));
    Ok(())
}

#[allow(dead_code)]
fn main() -> iwahori::Result<()> {
    run_example()
}
