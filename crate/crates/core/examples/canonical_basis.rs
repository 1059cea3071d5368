//! The canonical basis element `A_w` and its polynomials `P±`, next to the classical
//! Kazhdan–Lusztig polynomials.

use hecke_involutions::canonical::CanonicalBasis;
use hecke_involutions::classic::ClassicKl;
use hecke_involutions::systems;
use hecke_involutions::InvolutionModule;

fn main() -> hecke_involutions::Result<()> {
    let m = InvolutionModule::new(systems::a(3).group());
    let cb = CanonicalBasis::new(m.clone());
    let kl = ClassicKl::new(m.group().clone());
    let g = m.group().clone();
    let w = g.parse_word("2.1.3.2")?;
    println!("w = {}", g.format_word(w));
    let table = cb.pi_table(w)?;
    let mut ys: Vec<_> = table.iter().map(|(y, _, _)| y).collect();
    g.sort_shortlex(&mut ys);
    for y in ys {
        println!("  y = {:<10} P± = {:<8} P = {}", g.format_word(y), cb.ppm(y, w)?.to_string(), kl.kl_poly(y, w)?);
    }
    let a = cb.a_canonical(w)?;
    println!("A_w has {} terms and is bar invariant: {}", a.len(), m.bar_vector(&a) == a);
    Ok(())
}
