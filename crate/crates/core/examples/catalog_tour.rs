//! Every worked example at its defaults.
//!
//!   cargo run --example catalog_tour

use riccati::catalog;
use riccati::Bindings;

fn main() -> riccati::Result<()> {
    for entry in catalog::list() {
        let inst = catalog::instantiate(entry.id, &Bindings::new())?;
        let report = inst.soundness(512, 1e-8)?;
        let x = 0.5 * (inst.interval.lo() + inst.interval.hi());
        println!(
            "{} [{:?}, {}] {}\n    y({x}) = {:.10}  residual {:.1e}  poles {:?}",
            entry.id,
            entry.route,
            inst.spec.branch,
            entry.title,
            inst.family.general().eval(x)?,
            report.max_residual,
            inst.family.poles()
        );
        if let Some(k) = inst.k {
            println!("    k = {k:.10}");
        }
        for note in &inst.notes {
            println!("    note: {note}");
        }
    }

    let params = Bindings::new().with("K", 2.0);
    let inst = catalog::instantiate("ex3", &params)?;
    println!("ex3 with K = 2: a(1) = {:.10}", inst.system.a().eval(1.0)?);
    Ok(())
}
