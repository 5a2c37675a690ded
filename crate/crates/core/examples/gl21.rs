//! Factored determinant and irreducibility report for one gl(2|1) weight.

use superverma::catalog::{build_algebra, AlgebraSpec, Positivity, Weight};
use superverma::character::ParabolicDatum;
use superverma::formula::eval_formula;
use superverma::irreducibility::irreducibility_report;
use superverma::verma::ParabolicVerma;

fn main() -> superverma::Result<()> {
    let rs = build_algebra(&AlgebraSpec::gl(2, 1), &Positivity::Standard)?;
    let pd = ParabolicDatum::new(rs, &[0])?;
    let lam = Weight::from_i64(&[2, 1, -1]);
    let mu = &lam - &Weight::from_i64(&[1, 0, -1]);

    let res = eval_formula(&pd, &lam, &mu)?;
    for f in &res.factors {
        println!("{:>10} {:<8} r={:?} exp={} value={}", pd.rs().weight_label(&pd.root(f.root).weight), f.kind.as_str(), f.r, f.exponent, f.value);
    }
    let brute = ParabolicVerma::new(&pd, &lam, 2)?.brute_determinant(&mu)?;
    println!("formula {}  brute {}", res.value, brute);

    let rep = irreducibility_report(&pd, &lam, Some(3))?;
    println!("{}: {} (M={}, M+={})", lam, rep.verdict.as_str(), rep.m, rep.m_plus);
    Ok(())
}
