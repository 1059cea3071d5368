//! Affine A2 with the swap: compare `P±(u)` with `P(-u)` between maximal elements of
//! double cosets, and check the closed forms for the coset of `s_0`.

use hecke_involutions::affine::AffineSetup;
use hecke_involutions::canonical::CanonicalBasis;
use hecke_involutions::classic::ClassicKl;
use hecke_involutions::systems;
use hecke_involutions::InvolutionModule;

fn main() -> hecke_involutions::Result<()> {
    let m = InvolutionModule::new(systems::affine_a2_swap().group());
    let g = m.group().clone();
    let cb = CanonicalBasis::new(m.clone());
    let kl = ClassicKl::new(g.clone());
    let setup = AffineSetup::new(m, 0)?;
    for row in setup.scan(11, &cb, &kl)? {
        println!(
            "{:>22} <= {:<24} P± = {:<8} P(-u) = {:<8} N = {}",
            g.format_word(row.lower.d),
            g.format_word(row.upper.d),
            row.ppm.to_string(),
            row.kl_neg_u.to_string(),
            row.n_u1
        );
    }
    let c = setup.check_closed_forms(&cb, &kl)?;
    println!("exponents {:?}, closed forms hold: {}", c.exponents, c.all_ok());
    Ok(())
}
