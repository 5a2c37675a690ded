//! Acceptance run: prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use superverma::catalog::{build_algebra, AlgebraSpec, Positivity, RootSystem, Weight};
use superverma::character::{Over, ParabolicDatum};
use superverma::formula::{
    degree_check, enumerate_factors, eval_formula, generic_direction, random_grid_weight, verify_offset,
    with_pairings, FactorKind, VerifyOptions,
};
use superverma::irreducibility::{irreducibility_report, Verdict};
use superverma::linalg::{int, rat, Rat};
use superverma::verma::{casimir, weight_space_dim, ParabolicVerma, PbwVector};

type Outcome = std::result::Result<String, String>;

struct Config {
    spec: AlgebraSpec,
    positivity: Positivity,
    pi_l: Vec<usize>,
    /// Offsets up to this height in the formula-vs-oracle runs.
    depth: usize,
}

impl Config {
    fn new(spec: AlgebraSpec, pi_l: &[usize], depth: usize) -> Self {
        Config { spec, positivity: Positivity::Standard, pi_l: pi_l.to_vec(), depth }
    }

    fn datum(&self) -> ParabolicDatum {
        let rs = build_algebra(&self.spec, &self.positivity).expect("valid algebra");
        ParabolicDatum::new(rs, &self.pi_l).expect("valid Π_l")
    }
}

fn matrix() -> Vec<Config> {
    let mut osp32 = Config::new(AlgebraSpec::osp(3, 1), &[0], 3);
    osp32.positivity = Positivity::Regular(vec![int(1), int(2)]);
    vec![
        Config::new(AlgebraSpec::gl(1, 1), &[], 4),
        Config::new(AlgebraSpec::gl(2, 1), &[], 3),
        Config::new(AlgebraSpec::gl(2, 1), &[0], 3),
        Config::new(AlgebraSpec::gl(2, 2), &[0], 3),
        Config::new(AlgebraSpec::osp(1, 1), &[], 4),
        Config::new(AlgebraSpec::osp(3, 1), &[], 3),
        osp32,
        Config::new(AlgebraSpec::osp(2, 1), &[1], 3),
    ]
}

/// The matrix plus configurations outside it that the cheaper checks also cover.
fn extended() -> Vec<Config> {
    let mut out = matrix();
    out.push(Config::new(AlgebraSpec::d21(rat(1, 2)), &[], 3));
    out.push(Config::new(AlgebraSpec::osp(1, 2), &[0], 3));
    out
}

fn label(pd: &ParabolicDatum) -> String {
    format!("{} Π_l={:?}", pd.rs().name(), pd.pi_l())
}

fn offsets(pd: &ParabolicDatum, depth: usize) -> Vec<Weight> {
    pd.qplus_window(depth).iter().map(|c| pd.weight_from_coords(c)).collect()
}

fn random_lambda(pd: &ParabolicDatum, rng: &mut ChaCha8Rng) -> Weight {
    let rank = pd.rs().rank();
    let x = Weight(
        (0..rank)
            .map(|_| if rng.gen_bool(0.2) { rat(rng.gen_range(-6..=6), 2) } else { int(rng.gen_range(-3..=3)) })
            .collect(),
    );
    let pairings: Vec<Rat> = pd.pi_l().iter().map(|_| int(rng.gen_range(0..=2))).collect();
    with_pairings(pd, &x, &pairings).expect("dominant λ")
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(String::new())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(ctx: &str) -> impl FnOnce(E) -> String + '_ {
    move |e| format!("{ctx}: {e}")
}

fn criterion_1() -> Outcome {
    let mut runs = 0;
    for cfg in extended() {
        let pd = cfg.datum();
        for (i, eta) in offsets(&pd, cfg.depth).iter().enumerate() {
            let opts = VerifyOptions { samples: 3, seed: 11 + i as u64, ..VerifyOptions::default() };
            let rep = verify_offset(&pd, eta, &opts).map_err(err(&label(&pd)))?;
            check(rep.pass, || format!("{} η={eta}: ratios {:?}", label(&pd), rep.samples))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} offsets"))
}

/// λ on the zero set of one determinant factor, or with an integral even
/// coroot pairing, keeping the Π_l pairings of `base`.
fn singular_lambda(pd: &ParabolicDatum, base: &Weight, rng: &mut ChaCha8Rng) -> Option<Weight> {
    let rs = pd.rs();
    let root = *pd.delta_n().choose(rng)?;
    let a = &rs.root(root).weight;
    let aa = rs.form(a, a);
    let lr = base + rs.rho();
    let target = if rs.is_isotropic(root) {
        int(0)
    } else if rs.is_odd(root) {
        let s = 2 * rng.gen_range(1..=2) - 1;
        rat(s, 2) * &aa
    } else if rng.gen_bool(0.5) && rs.is_even_bar(root) {
        rat(rng.gen_range(1..=3), 2) * &aa
    } else {
        // ⟨λ, α^∨⟩ = k, stated for λ rather than λ + ρ
        rat(rng.gen_range(0..=3), 2) * &aa + rs.form(rs.rho(), a)
    };
    let d = generic_direction(pd, rng).ok()?;
    let da = rs.form(&d, a);
    let t = (target - rs.form(&lr, a)) / da;
    Some(base + &d.scale(&t))
}

fn criterion_2() -> Outcome {
    let mut report = Vec::new();
    for cfg in extended() {
        let pd = cfg.datum();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let depth = cfg.depth.min(3);
        let (mut zeros, mut pairs) = (0, 0);
        for i in 0..50 {
            let mut lam = random_lambda(&pd, &mut rng);
            if i % 2 == 1 {
                lam = singular_lambda(&pd, &lam, &mut rng).unwrap_or(lam);
            }
            let mp = ParabolicVerma::new(&pd, &lam, depth).map_err(err(&label(&pd)))?;
            for mu in pd.window(&lam, depth) {
                let f = eval_formula(&pd, &lam, &mu).map_err(err(&label(&pd)))?;
                let b = mp.brute_determinant(&mu).map_err(err(&label(&pd)))?;
                check(f.is_zero == b.is_zero(), || {
                    format!("{} λ={lam} μ={mu}: formula zero {} brute {b}", label(&pd), f.is_zero)
                })?;
                zeros += b.is_zero() as usize;
                pairs += 1;
            }
        }
        check(zeros > 0, || format!("{}: no singular weight space sampled", label(&pd)))?;
        report.push(format!("{}: {zeros}/{pairs} zero", pd.rs().name()));
    }
    Ok(report.join("; "))
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    for cfg in matrix().into_iter().filter(|c| c.pi_l.is_empty()) {
        let pd = cfg.datum();
        let rs = pd.rs();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..3 {
            let lam = random_grid_weight(&mut rng, rs.rank());
            for eta in offsets(&pd, cfg.depth) {
                let mu = &lam - &eta;
                let ht = pd.qplus_coords(&eta).expect("offset").iter().sum::<i64>() as u32;
                let factors = enumerate_factors(&pd, &lam, &mu).map_err(err(&label(&pd)))?;
                let listed: BTreeSet<(usize, u32)> = factors.iter().map(|f| (f.root, f.multiple)).collect();
                let kac = |root: usize, s: u32| -> i64 {
                    let a = &rs.root(root).weight;
                    if s == 0 {
                        pd.partition_count(&(&(&lam - a) - &mu), Over::Full, Some(root))
                    } else {
                        pd.partition_count(&(&(&lam - &a.scale(&int(s as i64))) - &mu), Over::Full, None)
                    }
                };
                for f in &factors {
                    check(f.exponent == kac(f.root, f.multiple), || {
                        format!("{} η={eta}: exponent {} for {:?} vs count {}", label(&pd), f.exponent, f, kac(f.root, f.multiple))
                    })?;
                    checked += 1;
                }
                let mut candidates: Vec<(usize, u32)> = Vec::new();
                for a in pd.delta_n_0bar() {
                    candidates.extend((1..=ht).map(|r| (a, r)));
                }
                for a in pd.odd_nonisotropic() {
                    candidates.extend((1..=ht).map(|r| 2 * r - 1).filter(|&s| s <= ht).map(|s| (a, s)));
                }
                candidates.extend(pd.isotropic().into_iter().map(|a| (a, 0)));
                for (a, s) in candidates {
                    if !listed.contains(&(a, s)) {
                        check(kac(a, s) == 0, || format!("{} η={eta}: factor ({a}, {s}) missing", label(&pd)))?;
                    }
                }
            }
        }
    }
    Ok(format!("{checked} exponents"))
}

fn criterion_4() -> Outcome {
    let rs = build_algebra(&AlgebraSpec::gl(3, 1), &Positivity::Standard)
        .and_then(|rs| rs.even_part())
        .map_err(err("even part"))?;
    let mut runs = 0;
    for pi_l in [vec![], vec![0]] {
        let pd = ParabolicDatum::new(rs.clone(), &pi_l).map_err(err("even part"))?;
        check(pd.odd_nonisotropic().is_empty() && pd.isotropic().is_empty(), || "odd roots present".into())?;
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for (i, eta) in offsets(&pd, 3).iter().enumerate() {
            let opts = VerifyOptions { samples: 3, seed: 41 + i as u64, ..VerifyOptions::default() };
            let rep = verify_offset(&pd, eta, &opts).map_err(err(&label(&pd)))?;
            check(rep.pass, || format!("{} η={eta} fails", label(&pd)))?;
            let lam = random_lambda(&pd, &mut rng);
            let factors = enumerate_factors(&pd, &lam, &(&lam - eta)).map_err(err(&label(&pd)))?;
            check(factors.iter().all(|f| f.kind == FactorKind::EvenBar), || format!("{} η={eta}: odd factor", label(&pd)))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} offsets, no odd factors"))
}

fn criterion_5() -> Outcome {
    let depth = 4;
    let mut checked = 0;
    for cfg in extended() {
        let pd = cfg.datum();
        let ctx = label(&pd);
        for coords in pd.qplus_window(depth) {
            let eta = pd.weight_from_coords(&coords);
            let mut conv = 0;
            for c1 in pd.qplus_window(depth) {
                if c1.iter().zip(&coords).all(|(a, b)| a <= b) {
                    let e1 = pd.weight_from_coords(&c1);
                    conv += pd.partition_count(&e1, Over::L, None) * pd.partition_count(&(&eta - &e1), Over::N, None);
                }
            }
            check(conv == pd.partition_count(&eta, Over::Full, None), || format!("{ctx}: 𝔓 ≠ 𝔓_l·𝔓_n at {eta}"))?;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        for _ in 0..2 {
            let lam = random_lambda(&pd, &mut rng);
            let ch = pd.ch_parabolic_verma(&lam, depth).map_err(err(&ctx))?;
            let via_v = pd.multiply_partition(&pd.ch_irrep_l(&lam, depth).map_err(err(&ctx))?, Over::N);
            let mp = ParabolicVerma::new(&pd, &lam, depth).map_err(err(&ctx))?;
            for mu in pd.window(&lam, depth) {
                check(ch.coeff(&mu) == via_v.coeff(&mu), || format!("{ctx} λ={lam}: ch M_p ≠ 𝔓_n·ch V at {mu}"))?;
                let dim = weight_space_dim(&mp, &mu).map_err(err(&ctx))?;
                check(dim as i64 == ch.coeff(&mu), || format!("{ctx} λ={lam}: dim {dim} at {mu}"))?;
                let base = pd.chi_p(&lam, &mu);
                for w in pd.weyl_group_l() {
                    let moved = pd.chi_p(&pd.dot_action(w, &lam), &mu);
                    check(moved == w.sign * base, || format!("{ctx} λ={lam}: χ^p not alternating at {mu}"))?;
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} weight spaces"))
}

fn random_vector(mp: &ParabolicVerma<'_>, mu: &Weight, rng: &mut ChaCha8Rng) -> Option<PbwVector> {
    let basis = mp.weight_basis(mu).ok()?;
    if basis.is_empty() {
        return None;
    }
    let mut v = PbwVector::new();
    for _ in 0..3 {
        let (p, _, e) = basis.choose(rng)?;
        let c = int(rng.gen_range(-3..=3));
        for (k, x) in mp.monomial(p, *e) {
            *v.entry(k).or_insert_with(Rat::zero) += x * &c;
        }
    }
    v.retain(|_, x| !x.is_zero());
    Some(v)
}

/// `σ(x_a) = c · x_{σ(a)}`
fn sigma_scalar(rs: &RootSystem, a: usize) -> Option<Rat> {
    let s = rs.sigma(&rs.basis_element(a));
    let b = rs.sigma_basis(a);
    (s.len() == 1).then(|| s.get(&b).cloned()).flatten()
}

fn scaled(v: &PbwVector, c: &Rat) -> PbwVector {
    v.iter().map(|(k, x)| (k.clone(), x * c)).filter(|(_, x)| !x.is_zero()).collect()
}

fn criterion_6() -> Outcome {
    let mut seen = BTreeSet::new();
    let (mut triples, mut blocks) = (0, 0);
    for cfg in extended() {
        let pd = cfg.datum();
        let rs = pd.rs();
        let ctx = label(&pd);
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        if seen.insert(rs.name()) {
            let mut done = 0;
            let mut attempts = 0;
            while done < 200 {
                attempts += 1;
                if attempts > 5000 {
                    return Err(format!("{ctx}: could not draw 200 triples"));
                }
                let lam = random_lambda(&pd, &mut rng);
                let mp = ParabolicVerma::new(&pd, &lam, 3).map_err(err(&ctx))?;
                let window = pd.window(&lam, 2);
                let mu = window.choose(&mut rng).expect("non-empty window");
                let Some(u) = random_vector(&mp, mu, &mut rng) else { continue };
                let a = rng.gen_range(0..rs.dim());
                let xu = mp.act(a, &u).map_err(err(&ctx))?;
                let target = mu + rs.elem_weight(a);
                if pd.qplus_coords(&(&lam - &target)).is_none() {
                    check(xu.is_empty(), || format!("{ctx} λ={lam}: x u above λ is non-zero"))?;
                    done += 1;
                    continue;
                }
                let Some(v) = random_vector(&mp, &target, &mut rng) else { continue };
                let c = sigma_scalar(rs, a).ok_or_else(|| format!("{ctx}: σ({a}) is not a basis multiple"))?;
                let sv = scaled(&mp.act(rs.sigma_basis(a), &v).map_err(err(&ctx))?, &c);
                let lhs = mp.pairing(&xu, &v).map_err(err(&ctx))?;
                let rhs = mp.pairing(&u, &sv).map_err(err(&ctx))?;
                check(lhs == rhs, || format!("{ctx} λ={lam} μ={mu} x={a}: {lhs} ≠ {rhs}"))?;
                done += 1;
            }
            triples += done;
        }
        let lam = random_lambda(&pd, &mut rng);
        let depth = cfg.depth.min(3);
        let fwd = ParabolicVerma::new(&pd, &lam, depth).map_err(err(&ctx))?;
        let mut order = pd.delta_n().to_vec();
        order.reverse();
        if order.len() > 2 {
            order.swap(0, 1);
        }
        let bwd = ParabolicVerma::with_order(&pd, &lam, depth, order).map_err(err(&ctx))?;
        for mu in pd.window(&lam, depth) {
            let block = fwd.gram_block(&mu).map_err(err(&ctx))?;
            check(block.matrix.is_symmetric(), || format!("{ctx} λ={lam}: asymmetric block at {mu}"))?;
            let a = fwd.brute_determinant(&mu).map_err(err(&ctx))?;
            let b = bwd.brute_determinant(&mu).map_err(err(&ctx))?;
            check(a == b, || format!("{ctx} λ={lam} μ={mu}: ordering changes det {a} → {b}"))?;
            blocks += 1;
        }
    }
    Ok(format!("{triples} triples, {blocks} blocks"))
}

fn criterion_7() -> Outcome {
    let mut runs = 0;
    for cfg in extended() {
        let pd = cfg.datum();
        let ctx = label(&pd);
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for eta in offsets(&pd, cfg.depth.min(3)) {
            let base = random_lambda(&pd, &mut rng);
            let dir = generic_direction(&pd, &mut rng).map_err(err(&ctx))?;
            let rep = degree_check(&pd, &eta, &base, &dir, None).map_err(err(&ctx))?;
            check(rep.pass, || format!("{ctx} η={eta}: degree {:?}, expected {}", rep.observed, rep.expected))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} offsets"))
}

/// Criteria 8 and 9 share one sweep.
struct Sweep {
    lambdas: usize,
    irreducible: usize,
    regular: usize,
    kernels: usize,
    failures_8: Vec<String>,
    failures_9: Vec<String>,
}

fn sweep() -> std::result::Result<Sweep, String> {
    let mut s = Sweep { lambdas: 0, irreducible: 0, regular: 0, kernels: 0, failures_8: vec![], failures_9: vec![] };
    for cfg in extended() {
        let pd = cfg.datum();
        let rs = pd.rs();
        let ctx = label(&pd);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let lam = random_lambda(&pd, &mut rng);
            let rep = irreducibility_report(&pd, &lam, Some(3)).map_err(err(&ctx))?;
            let irreducible = rep.verdict == Verdict::Irreducible;
            let bc = rep.brute_check.as_ref().expect("brute check requested");
            let mut bad = Vec::new();
            if rep.classes.iter().all(|c| c.satisfied) != irreducible {
                bad.push("a");
            }
            if !rep.psi.iso.is_empty() && irreducible {
                bad.push("b");
            }
            if (rep.m_plus && !irreducible) || (irreducible && !rep.m) {
                bad.push("c");
            }
            if let Some(mpp) = rep.m_plus_plus {
                s.regular += 1;
                let depth = rep.witness_depth.unwrap_or(0).max(3);
                let mut vanishing = false;
                for mu in pd.window(&lam, depth) {
                    vanishing |= eval_formula(&pd, &lam, &mu).map_err(err(&ctx))?.is_zero;
                }
                if mpp != irreducible || vanishing == irreducible {
                    bad.push("d");
                }
            }
            if !bc.agrees {
                bad.push("e");
            }
            if !bad.is_empty() {
                s.failures_8.push(format!("{ctx} λ={lam}: {}", bad.join(",")));
            }
            for k in &bc.kernels {
                if bc.kernels.iter().any(|o| o != k && rs.leq(k, o)) {
                    continue;
                }
                s.kernels += 1;
                let beta = &lam - k;
                let lhs = rs.form(&(&lam + rs.rho()), &beta);
                let rhs = rs.form(&beta, &beta) / int(2);
                if lhs != rhs || casimir(rs, &lam) != casimir(rs, k) {
                    s.failures_9.push(format!("{ctx} λ={lam} μ={k}"));
                }
            }
            s.lambdas += 1;
            s.irreducible += irreducible as usize;
        }
    }
    Ok(s)
}

fn summarize(failures: &[String], ok: String) -> Outcome {
    match failures.first() {
        None => Ok(ok),
        Some(first) => Err(format!("{} failures, first {first}", failures.len())),
    }
}

fn report(n: usize, outcome: &Outcome, started: Instant) -> bool {
    let secs = started.elapsed().as_secs_f64();
    match outcome {
        Ok(detail) => println!("criterion {n}: PASS ({detail}; {secs:.1}s)"),
        Err(why) => println!("criterion {n}: FAIL ({why}; {secs:.1}s)"),
    }
    outcome.is_ok()
}

fn main() -> ExitCode {
    let criteria: [fn() -> Outcome; 7] =
        [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7];
    let mut all = true;
    for (i, c) in criteria.iter().enumerate() {
        let t = Instant::now();
        all &= report(i + 1, &c(), t);
    }
    let t = Instant::now();
    match sweep() {
        Ok(s) => {
            let detail = format!("{} λ, {} irreducible, {} regular", s.lambdas, s.irreducible, s.regular);
            all &= report(8, &summarize(&s.failures_8, detail), t);
            all &= report(9, &summarize(&s.failures_9, format!("{} maximal kernels", s.kernels)), t);
        }
        Err(e) => {
            report(8, &Err(e.clone()), t);
            report(9, &Err(e), t);
            all = false;
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
