//! Exact arithmetic in Q(zeta_n): the ratio table r_m = (1 + zeta^m)/(1 - zeta^m),
//! inverses, Galois twists and the complex embedding.
//!
//! ```bash
//! cargo run -p wangsun --example cyclotomic_field
//! ```

use wangsun::cyclotomic::{cyclotomic_polynomial, CycloField, Rational};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let field = CycloField::new(8, 1)?;
    println!(
        "Phi_8 = {:?} (degree {})",
        cyclotomic_polynomial(8),
        field.degree()
    );

    for m in 1..8 {
        let r = field.ratio(m)?;
        println!("r_{m} = {r}    ~ {:.6}", r.to_complex());
    }

    // r_2 = (1 + i)/(1 - i) = i, so r_2^2 = -1
    let r2 = field.ratio(2)?;
    println!("r_2^2 = {}", &r2 * &r2);

    let z = field.root_power(1);
    let w = (field.one() - z.clone()).inv()?;
    println!("1/(1 - zeta) = {w}");
    println!("check: (1 - zeta) * that = {}", (field.one() - z) * w);

    // r_4 = 0, so leave it out
    let prod = (1..8)
        .filter(|&m| m != 4)
        .try_fold(field.one(), |acc, m| field.ratio(m).map(|r| acc * r))?;
    println!(
        "prod r_m = {} (rational: {:?})",
        prod,
        prod.as_rational().map(|q| q.to_string())
    );

    let twisted = r2.galois_twist(3)?;
    println!("sigma_3(r_2) = {twisted}");
    println!("half of r_2: {}", r2.scale(&Rational::new(1, 2)));
    Ok(())
}
