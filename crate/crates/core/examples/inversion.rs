//! The diamond twist of a finite group and the inversion identities.

use hecke_involutions::duality::DualityContext;
use hecke_involutions::systems;
use hecke_involutions::InvolutionModule;

fn main() -> hecke_involutions::Result<()> {
    for (name, sys) in [("A3", systems::a(3)), ("B3", systems::b(3)), ("I2(5)", systems::i2(5))] {
        let ctx = DualityContext::new(InvolutionModule::new(sys.group()))?;
        let r = ctx.r_duality_rows(64)?;
        let inv = ctx.inversion_rows(64)?;
        println!(
            "{name}: diamond {:?}, r identities {}/{}, inversion sums {}/{}",
            ctx.diamond(),
            r.iter().filter(|x| x.holds()).count(),
            r.len(),
            inv.iter().filter(|x| x.holds()).count(),
            inv.len()
        );
    }
    Ok(())
}
