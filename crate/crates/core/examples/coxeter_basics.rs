//! Words, lengths, Bruhat order and twisted involutions in small groups.

use hecke_involutions::systems;
use hecke_involutions::InvolutionModule;

fn main() -> hecke_involutions::Result<()> {
    let sys = systems::b(3);
    let g = sys.group();
    println!("{sys}, coefficient ring {}", g.system().ring().basis_description());
    let all: Vec<usize> = (0..g.rank()).collect();
    let w0 = g.longest_element(&all)?;
    println!("w_0 = {} (length {})", g.format_word(w0), g.length(w0));
    println!("Poincaré polynomial: {}", g.poincare_poly(&all)?);
    println!("exponents: {:?}", g.exponents(&all)?);

    let x = g.parse_word("1.2")?;
    let y = g.parse_word("1.2.1.3")?;
    println!("{} <= {}: {}", g.format_word(x), g.format_word(y), g.bruhat_leq(x, y));

    let flip = InvolutionModule::new(systems::a_flip(3).group());
    let twisted = flip.enumerate_twisted(6)?;
    println!("A3 with the diagram flip has {} twisted involutions:", twisted.len());
    for &w in twisted.iter() {
        println!("  [{}]", flip.group().format_word(w));
    }
    Ok(())
}
