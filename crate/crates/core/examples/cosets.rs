//! Double cosets of a parabolic subgroup, their twisted involutions and the rank-2
//! case labels.

use hecke_involutions::cosets::{classify_rank2, coset_involutions, cosets_up_to, poincare_identity_sides};
use hecke_involutions::systems;
use hecke_involutions::InvolutionModule;

fn main() -> hecke_involutions::Result<()> {
    let m = InvolutionModule::new(systems::b(3).group());
    let g = m.group().clone();
    let k = [0, 1];
    for om in cosets_up_to(&m, &k, 9)? {
        let case = classify_rank2(&m, &om)?.case;
        let inv = coset_involutions(&m, &om)?;
        println!("b = {:<8} d = {:<18} case {:<4} {} involutions", g.format_word(om.b), g.format_word(om.d), case, inv.len());
    }
    let (lhs, rhs) = poincare_identity_sides(&m)?;
    println!("R_(S,*) P_(S,*) = {lhs}");
    println!("P_S(u^2)        = {rhs}");
    Ok(())
}
