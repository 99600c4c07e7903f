//! Markdown renderings. JSON comes straight from the serde impls.

use std::fmt::Write;

use drinfeld_smb::conductor::{ConductorReport, SzpiroReport};
use drinfeld_smb::newton::ValuationProfile;
use drinfeld_smb::smb::{MultisetReport, SmbReport};
use drinfeld_smb::Rat;

use crate::run::{NewtonReport, PsiReport};

fn list(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(|r| r.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

fn profile_table(out: &mut String, p: &ValuationProfile) {
    out.push_str("| w | mult |\n|---|---|\n");
    for (v, m) in p.entries() {
        let _ = writeln!(out, "| {v} | {m} |");
    }
}

pub fn smb_md(r: &SmbReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "place {}, u = {}, n = {}, q = {}, rank {}\n", r.place, r.u, r.n, r.q, r.rank);
    let _ = writeln!(s, "| route | valuations |\n|---|---|");
    for lvl in &r.recursion.levels {
        let _ = writeln!(s, "| recursion, level {} | {} |", lvl.level, list(&lvl.valuations));
    }
    if let Some(l) = r.closed_form.as_ref().and_then(|cf| cf.lambda.as_ref()) {
        let _ = writeln!(s, "| closed form | {} |", list(l));
    }
    if let Some(d) = &r.dictionary {
        let _ = writeln!(s, "| dictionary | {} |", list(d));
    }
    if let Some(cf) = &r.closed_form {
        let _ = writeln!(s, "\nlattice valuations: {}", list(&cf.lattice.generator_valuations));
        let _ = writeln!(s, "branch: {:?}, m = {}, w(j) = {}", cf.branch, opt(&cf.m), cf.w_j);
    }
    if let Some(n) = &r.note {
        let _ = writeln!(s, "\nnote: {n}");
    }
    let _ = writeln!(s, "\nagree: {}", r.agree);
    s
}

pub fn newton_md(r: &NewtonReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "element: {}\n\nvertices:", r.element);
    for (x, y) in &r.polygon.vertices {
        let _ = writeln!(s, "- ({x}, {y})");
    }
    let _ = writeln!(s, "\nroot valuations ({} roots):\n", r.total);
    profile_table(&mut s, &r.profile);
    s
}

pub fn psi_md(r: &PsiReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "source: {}, w(j) = {}\n", r.source, opt(&r.w_j));
    s.push_str("| from | to | slope | intercept |\n|---|---|---|---|\n");
    for p in r.psi.pieces() {
        let _ = writeln!(s, "| {} | {} | {} | {} |", p.from, p.to.map_or("inf".into(), |t| t.to_string()), p.slope, p.intercept);
    }
    let _ = writeln!(s, "\n#G^0 = {}\n\n| upper | lower | order |\n|---|---|---|", r.filtration.g0_order);
    for b in &r.filtration.breaks {
        let _ = writeln!(s, "| {} | {} | {} |", b.upper, b.lower, b.order);
    }
    s
}

pub fn conductor_md(rows: &[ConductorReport]) -> String {
    let mut s = String::from("| place | w(j) | case | 𝔣_w | deg·𝔣_w |\n|---|---|---|---|---|\n");
    for r in rows {
        let _ = writeln!(
            s,
            "| {} | {} | {} | {} | {} |",
            r.place,
            r.w_j,
            r.local.case.as_str(),
            opt(&r.local.conductor),
            opt(&r.weighted())
        );
    }
    for r in rows {
        if let Some(n) = &r.local.note {
            let _ = writeln!(s, "\n{}: {n}", r.place);
        }
    }
    s
}

pub fn szpiro_md(r: &SzpiroReport) -> String {
    let mut s = conductor_md(&r.per_place);
    let _ = writeln!(
        s,
        "\nh_J = {}, 𝔣 = {}, bound = {}, holds = {}",
        r.h_j,
        opt(&r.global_conductor),
        opt(&r.bound),
        opt(&r.holds)
    );
    if !r.failed_places.is_empty() {
        let _ = writeln!(s, "\nhypothesis failed at: {}", r.failed_places.join(", "));
    }
    s
}

pub fn verify_md(r: &MultisetReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "SMB (level {}): {}\n\npredicted:\n", r.smb.level, list(&r.smb.valuations));
    profile_table(&mut s, &r.predicted);
    s.push_str("\noracle:\n\n");
    profile_table(&mut s, &r.oracle);
    let _ = writeln!(s, "\nequal: {}", r.equal);
    s
}
