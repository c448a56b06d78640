//! Walk the affine group on Z/12Z: composition, inverses, derangements and
//! the permutations they induce.
//!
//! ```bash
//! cargo run -p wangsun --example affine_group
//! ```

use wangsun::affine::{self, AffineMap};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 12;
    let group: Vec<AffineMap> = affine::enumerate_affine_group(n)?.collect();
    let derangements: Vec<AffineMap> = affine::enumerate_affine_derangements(n)?.collect();
    println!(
        "|AGL(1, Z/{n}Z)| = {}, of which {} are derangements",
        group.len(),
        derangements.len()
    );

    let f = AffineMap::new(3, 5, 12)?;
    let g = AffineMap::new(1, 7, 12)?;
    let fg = f.compose(&g)?;
    println!("{f} o {g} = {fg}");
    println!("inverse of {f} is {}", f.inverse());
    println!("{f} as a permutation: {}", f.permutation());

    for d in derangements.iter().filter(|d| d.is_involution()).take(4) {
        println!(
            "{d}: sign {:+}, sigma/tau = {:?}, hits the tritone: {}",
            d.sign(),
            affine::sigma_tau(d.linear() as i64, n as i64)?,
            d.hits_tritone()
        );
    }
    Ok(())
}
