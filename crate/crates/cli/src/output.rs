//! JSON reports and aligned text tables. Rationals are always strings.

use serde_json::{json, Value};
use superverma::catalog::{RootSystem, Weight};
use superverma::character::ParabolicDatum;
use superverma::formula::{FormulaResult, Sample, VerificationReport};
use superverma::irreducibility::{delta_classes, CharSum, IrredReport, PsiSets};
use superverma::linalg::{fmt_rat, Rat, RatMatrix};
use superverma::verma::GramBlock;

pub struct Report {
    pub json: Value,
    pub table: String,
}

pub fn rat(r: &Rat) -> Value {
    Value::String(fmt_rat(r))
}

pub fn weight(w: &Weight) -> Value {
    Value::Array(w.coords().iter().map(rat).collect())
}

fn weight_text(w: &Weight) -> String {
    format!("{w}")
}

fn matrix(m: &RatMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(rat).collect())).collect())
}

fn root(rs: &RootSystem, i: usize) -> Value {
    json!({"index": i, "root": weight(&rs.root(i).weight), "label": rs.weight_label(&rs.root(i).weight)})
}

fn label(rs: &RootSystem, i: usize) -> String {
    rs.weight_label(&rs.root(i).weight)
}

/// Columns padded to their widest cell.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = vec![line(headers.to_vec())];
    out.push(line(widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().iter().map(String::as_str).collect()));
    for row in rows {
        out.push(line(row.iter().map(String::as_str).collect()));
    }
    out.join("\n")
}

fn kind_flags(rs: &RootSystem, i: usize) -> (&'static str, bool) {
    (if rs.is_odd(i) { "odd" } else { "even" }, rs.is_isotropic(i))
}

pub fn describe(pd: &ParabolicDatum) -> Report {
    let rs = pd.rs();
    let positive: Vec<Value> = (0..rs.positive().len())
        .map(|i| {
            let (parity, iso) = kind_flags(rs, i);
            json!({
                "index": i,
                "root": weight(&rs.root(i).weight),
                "label": label(rs, i),
                "parity": parity,
                "isotropic": iso,
                "height": rs.positive_simple_coords(i).iter().sum::<i64>(),
                "in_levi": pd.is_in_l(i),
            })
        })
        .collect();
    let simple: Vec<Value> = rs
        .simple_indices()
        .iter()
        .enumerate()
        .map(|(p, &i)| {
            json!({"position": p, "root_index": i, "root": weight(&rs.root(i).weight), "label": label(rs, i), "parity": kind_flags(rs, i).0})
        })
        .collect();
    let classes = delta_classes(pd);
    let classes_json: Vec<Value> = classes
        .iter()
        .map(|c| {
            json!({
                "index": c.index,
                "members": c.members.iter().map(|&i| root(rs, i)).collect::<Vec<_>>(),
                "span_witness": root(rs, c.span_witness),
            })
        })
        .collect();
    let json = json!({
        "algebra": rs.name(),
        "rank": rs.rank(),
        "coordinates": rs.coordinate_labels(),
        "form": matrix(rs.form_matrix()),
        "regular_element": rs.regular_element().iter().map(rat).collect::<Vec<_>>(),
        "positive_roots": positive,
        "simple_roots": simple,
        "rho": weight(rs.rho()),
        "pi_l": pd.pi_l(),
        "delta_n": pd.delta_n().iter().map(|&i| root(rs, i)).collect::<Vec<_>>(),
        "classes": classes_json,
    });

    let mut text = format!(
        "{}  rank {}  coordinates {}\nρ = {}\n\npositive roots\n",
        rs.name(),
        rs.rank(),
        rs.coordinate_labels().join(" "),
        weight_text(rs.rho())
    );
    let rows: Vec<Vec<String>> = (0..rs.positive().len())
        .map(|i| {
            let (parity, iso) = kind_flags(rs, i);
            vec![
                i.to_string(),
                label(rs, i),
                parity.into(),
                if iso { "yes".into() } else { "no".into() },
                rs.positive_simple_coords(i).iter().sum::<i64>().to_string(),
                if pd.is_in_l(i) { "l".into() } else { "n".into() },
            ]
        })
        .collect();
    text.push_str(&table(&["index", "root", "parity", "isotropic", "height", "part"], &rows));
    text.push_str("\n\nsimple roots Π\n");
    let rows: Vec<Vec<String>> = rs
        .simple_indices()
        .iter()
        .enumerate()
        .map(|(p, &i)| {
            vec![p.to_string(), label(rs, i), kind_flags(rs, i).0.into(), pd.pi_l().contains(&p).to_string()]
        })
        .collect();
    text.push_str(&table(&["position", "root", "parity", "in Π_l"], &rows));
    text.push_str("\n\nΔ^i classes of Δ_n\n");
    let rows: Vec<Vec<String>> = classes
        .iter()
        .map(|c| {
            vec![c.index.to_string(), c.members.iter().map(|&i| label(rs, i)).collect::<Vec<_>>().join(", ")]
        })
        .collect();
    text.push_str(&table(&["class", "members"], &rows));
    Report { json, table: text }
}

pub fn det(pd: &ParabolicDatum, lam: &Weight, mu: &Weight, res: &FormulaResult) -> Report {
    let rs = pd.rs();
    let factors: Vec<Value> = res
        .factors
        .iter()
        .map(|f| {
            json!({
                "root": weight(&rs.root(f.root).weight),
                "label": label(rs, f.root),
                "kind": f.kind.as_str(),
                "r": f.r,
                "multiple": f.multiple,
                "exponent": f.exponent,
                "value": rat(&f.value),
            })
        })
        .collect();
    let merged: Vec<Value> = res
        .merged
        .iter()
        .map(|m| {
            json!({
                "alpha": weight(&m.form.alpha),
                "constant": rat(&m.form.constant),
                "exponent": m.exponent,
                "value": rat(&m.value),
            })
        })
        .collect();
    let json = json!({
        "algebra": rs.name(),
        "pi_l": pd.pi_l(),
        "lambda": weight(lam),
        "mu": weight(mu),
        "eta": weight(&(lam - mu)),
        "factors": factors,
        "merged": merged,
        "degree": res.degree(),
        "value": rat(&res.value),
        "is_zero": res.is_zero,
    });
    let rows: Vec<Vec<String>> = res
        .factors
        .iter()
        .map(|f| {
            vec![
                label(rs, f.root),
                f.r.map_or("-".into(), |r| r.to_string()),
                f.kind.as_str().into(),
                f.exponent.to_string(),
                fmt_rat(&f.value),
            ]
        })
        .collect();
    let mut text = format!("{}  λ = {}  μ = {}\n\n", rs.name(), weight_text(lam), weight_text(mu));
    if rows.is_empty() {
        text.push_str("no factors\n");
    } else {
        text.push_str(&table(&["root", "r", "kind", "exponent", "value"], &rows));
        text.push('\n');
    }
    text.push_str(&format!("\nD1·D2·D3 = {}{}", fmt_rat(&res.value), if res.is_zero { "  (zero)" } else { "" }));
    Report { json, table: text }
}

pub fn gram(pd: &ParabolicDatum, lam: &Weight, block: &GramBlock, det: &Rat) -> Report {
    let rs = pd.rs();
    let basis: Vec<Value> = block
        .basis
        .iter()
        .map(|(p, nu, e)| {
            json!({
                "partition": p.parts.iter().map(|&(r, m)| json!({"root": label(rs, r), "multiplicity": m})).collect::<Vec<_>>(),
                "nu": weight(nu),
                "v_index": e,
            })
        })
        .collect();
    let empty = block.basis.is_empty();
    let json = json!({
        "algebra": rs.name(),
        "pi_l": pd.pi_l(),
        "lambda": weight(lam),
        "mu": weight(&block.mu),
        "dimension": block.basis.len(),
        "basis": basis,
        "matrix": matrix(&block.matrix),
        "determinant": rat(det),
        "note": if empty { Value::String("empty block".into()) } else { Value::Null },
    });
    let mut text = format!(
        "{}  λ = {}  μ = {}  dimension {}\n",
        rs.name(),
        weight_text(lam),
        weight_text(&block.mu),
        block.basis.len()
    );
    if empty {
        text.push_str("empty block\n");
    } else {
        let headers: Vec<String> = (0..block.basis.len()).map(|j| j.to_string()).collect();
        let mut h: Vec<&str> = vec!["basis"];
        h.extend(headers.iter().map(String::as_str));
        let rows: Vec<Vec<String>> = block
            .basis
            .iter()
            .enumerate()
            .map(|(i, (p, _, e))| {
                let word = if p.parts.is_empty() {
                    "1".to_string()
                } else {
                    p.parts
                        .iter()
                        .map(|&(r, m)| if m == 1 { format!("x_{{-({})}}", label(rs, r)) } else { format!("x_{{-({})}}^{m}", label(rs, r)) })
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                let mut row = vec![format!("{i}: {word}·e{e}")];
                row.extend(block.matrix.row(i).iter().map(fmt_rat));
                row
            })
            .collect();
        text.push_str(&table(&h, &rows));
        text.push('\n');
    }
    text.push_str(&format!("determinant {}", fmt_rat(det)));
    Report { json, table: text }
}

fn sample(s: &Sample) -> Value {
    json!({
        "lambda": weight(&s.lambda),
        "brute": rat(&s.brute),
        "formula": rat(&s.formula),
        "ratio": s.ratio.as_ref().map(rat),
    })
}

pub fn verify(rep: &VerificationReport) -> Report {
    let json = json!({
        "algebra": rep.algebra,
        "pi_l": rep.pi_l,
        "eta": weight(&rep.eta),
        "pairings": rep.pairings.iter().map(rat).collect::<Vec<_>>(),
        "samples": rep.samples.iter().map(sample).collect::<Vec<_>>(),
        "zero_samples": rep.zero_samples.iter().map(sample).collect::<Vec<_>>(),
        "constant_c": rep.constant_c.as_ref().map(rat),
        "pass": rep.pass,
        "seed": rep.seed,
    });
    let rows: Vec<Vec<String>> = rep
        .samples
        .iter()
        .chain(&rep.zero_samples)
        .map(|s| {
            vec![
                weight_text(&s.lambda),
                fmt_rat(&s.brute),
                fmt_rat(&s.formula),
                s.ratio.as_ref().map_or("-".into(), fmt_rat),
            ]
        })
        .collect();
    let mut text = format!("{}  Π_l = {:?}  η = {}  seed {}\n\n", rep.algebra, rep.pi_l, weight_text(&rep.eta), rep.seed);
    text.push_str(&table(&["λ", "brute", "formula", "ratio"], &rows));
    text.push_str(&format!(
        "\n\nc = {}\n{}",
        rep.constant_c.as_ref().map_or("undetermined".into(), fmt_rat),
        if rep.pass { "PASS" } else { "FAIL" }
    ));
    Report { json, table: text }
}

fn psi(rs: &RootSystem, p: &PsiSets) -> Value {
    json!({
        "noniso": p.noniso.iter().map(|&(a, n)| json!({"root": weight(&rs.root(a).weight), "label": label(rs, a), "n": n})).collect::<Vec<_>>(),
        "iso": p.iso.iter().map(|&a| weight(&rs.root(a).weight)).collect::<Vec<_>>(),
    })
}

fn char_sum(s: &CharSum) -> Value {
    json!({
        "verma_terms": s.finite.iter().map(|(nu, c)| json!({"highest_weight": weight(nu), "coefficient": c})).collect::<Vec<_>>(),
        "ladders": s.ladders.iter().map(|l| json!({"start": weight(&l.start), "step": weight(&l.step), "coefficient": l.coefficient})).collect::<Vec<_>>(),
        "vanishes": s.vanishes(),
    })
}

fn tri(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "true",
        Some(false) => "false",
        None => "n/a",
    }
}

pub fn irreducible(pd: &ParabolicDatum, rep: &IrredReport) -> Report {
    let rs = pd.rs();
    let classes: Vec<Value> = rep
        .classes
        .iter()
        .map(|c| {
            json!({
                "index": c.class.index,
                "members": c.class.members.iter().map(|&i| root(rs, i)).collect::<Vec<_>>(),
                "span_witness": root(rs, c.class.span_witness),
                "psi": psi(rs, &c.psi),
                "criterion": char_sum(&c.sum),
                "satisfied": c.satisfied,
            })
        })
        .collect();
    let json = json!({
        "algebra": rep.algebra,
        "pi_l": rep.pi_l,
        "lambda": weight(&rep.lambda),
        "verdict": rep.verdict.as_str(),
        "psi": psi(rs, &rep.psi),
        "classes": classes,
        "global": {"shortcut": rep.global.shortcut, "criterion": char_sum(&rep.global.sum)},
        "witness_depth": rep.witness_depth,
        "M": rep.m,
        "M_plus": rep.m_plus,
        "M_plus_plus": tri(rep.m_plus_plus),
        "brute_check": rep.brute_check.as_ref().map(|b| json!({
            "depth": b.depth,
            "agrees": b.agrees,
            "kernels": b.kernels.iter().map(weight).collect::<Vec<_>>(),
        })),
    });
    let mut text = format!("{}  Π_l = {:?}  λ = {}\n\n", rep.algebra, rep.pi_l, weight_text(&rep.lambda));
    let rows: Vec<Vec<String>> = rep
        .classes
        .iter()
        .map(|c| {
            let noniso: Vec<String> = c.psi.noniso.iter().map(|&(a, n)| format!("{} (n={n})", label(rs, a))).collect();
            let iso: Vec<String> = c.psi.iso.iter().map(|&a| label(rs, a)).collect();
            vec![
                c.class.index.to_string(),
                c.class.members.iter().map(|&i| label(rs, i)).collect::<Vec<_>>().join(", "),
                if noniso.is_empty() { "-".into() } else { noniso.join(", ") },
                if iso.is_empty() { "-".into() } else { iso.join(", ") },
                c.satisfied.to_string(),
            ]
        })
        .collect();
    text.push_str(&table(&["class", "members", "Ψ non-iso", "Ψ iso", "satisfied"], &rows));
    text.push_str(&format!(
        "\n\nM = {}  M+ = {}  M++ = {}\n",
        rep.m,
        rep.m_plus,
        tri(rep.m_plus_plus)
    ));
    if let Some(b) = &rep.brute_check {
        text.push_str(&format!(
            "brute force to depth {}: {} singular block(s), {}\n",
            b.depth,
            b.kernels.len(),
            if b.agrees { "agrees" } else { "DISAGREES" }
        ));
    }
    text.push_str(rep.verdict.as_str());
    Report { json, table: text }
}
