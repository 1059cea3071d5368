//! The generators acting on `a_w`, and the bar operator.

use hecke_involutions::systems;
use hecke_involutions::{InvolutionModule, ModuleVector};

fn show(m: &InvolutionModule, v: &ModuleVector) -> String {
    let g = m.group();
    let mut terms: Vec<_> = v.iter().collect();
    terms.sort_by(|a, b| g.cmp_shortlex(a.0, b.0));
    terms.iter().map(|(w, c)| format!("({c}) a[{}]", g.format_word(*w))).collect::<Vec<_>>().join(" + ")
}

fn main() -> hecke_involutions::Result<()> {
    let m = InvolutionModule::new(systems::b(2).group());
    let g = m.group().clone();
    for word in ["", "s", "s.t.s"] {
        let w = g.parse_word(word)?;
        for s in 0..g.rank() {
            let out = m.ts_action(s, &ModuleVector::basis(w));
            println!("T_{} a[{word}] = {}", g.system().labels()[s], show(&m, &out));
        }
    }
    let w = g.parse_word("s.t.s.t")?;
    println!("bar(a[s.t.s.t]) = {}", show(&m, &m.bar_basis(w)));
    println!("r_(1, s.t.s.t) = {}", m.r_poly(g.identity(), w));
    Ok(())
}
