//! Reduction mod 2: `P±` against `P`, the model of the action inside the classical
//! Hecke algebra, and the split `P± = P+ - P-`.

use hecke_involutions::classic::{HeckeElement, Mod2Model};
use hecke_involutions::systems;
use hecke_involutions::verify::Verifier;
use hecke_involutions::{InvolutionModule, ModuleVector};

fn main() -> hecke_involutions::Result<()> {
    let m = InvolutionModule::new(systems::b(3).group());
    let g = m.group().clone();
    let model = Mod2Model::new(m.clone());
    let w = g.parse_word("2")?;
    let s = HeckeElement::basis(g.generator(1));
    let via_model = model.odot(&s, &HeckeElement::basis(w))?.to_module_vector(&m)?;
    let direct = m.ts_action(1, &ModuleVector::basis(w)).mod2();
    println!("model agrees with T_s a_w mod 2: {}", via_model == direct);

    let v = Verifier::new(m, 9);
    let rows = v.split_rows()?;
    let nontrivial: Vec<_> = rows.iter().filter(|r| !r.minus.is_zero()).collect();
    println!("{} pairs, {} with P- != 0", rows.len(), nontrivial.len());
    for r in nontrivial.iter().take(8) {
        println!("  ({}, {}): P+ = {}, P- = {}", g.format_word(r.y), g.format_word(r.w), r.plus, r.minus);
    }
    Ok(())
}
