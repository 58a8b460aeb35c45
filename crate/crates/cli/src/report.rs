//! Deterministic text rendering for `analyze`, `blowdowns` and `factor`.

use std::fmt::Write;

use toric_core::birational::FactorizationPath;
use toric_core::{
    blow_down_candidates, is_fano, mori_cone, Fan, FanError, Obstruction, Rational,
    ValidationReport,
};

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Text,
    Compact,
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn flag(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "NO"
    }
}

fn term(q: &Rational, label: &str) -> String {
    if q == &Rational::from_integer(1.into()) {
        format!("r({label})")
    } else {
        format!("{q} r({label})")
    }
}

/// Writes the analysis; stops after the validation block when the fan is invalid.
pub fn analysis(fan: &Fan, validation: &ValidationReport, style: Style, out: &mut String) -> Result<(), FanError> {
    let w = |out: &mut String, s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    let compact = style == Style::Compact;
    if compact {
        w(out, format!("dim={}", fan.dim()));
        w(out, format!("rays={}", fan.generators().len()));
        w(out, format!("maxcones={}", fan.max_cones().len()));
        w(out, format!("smooth={}", validation.smooth));
        w(out, format!("complete={}", validation.complete));
        w(out, format!("faces={}", validation.faces_ok));
        for v in &validation.witnesses {
            w(out, format!("witness={v}"));
        }
    } else {
        w(out, format!("dimension: {}", fan.dim()));
        w(out, format!("rays: {}", fan.generators().len()));
        w(out, format!("maximal cones: {}", fan.max_cones().len()));
        w(out, format!("smooth: {}", flag(validation.smooth)));
        w(out, format!("complete: {}", flag(validation.complete)));
        w(out, format!("cones meet in faces: {}", flag(validation.faces_ok)));
        for v in &validation.witnesses {
            w(out, format!("  witness: {v}"));
        }
    }
    if !validation.is_valid() {
        return Ok(());
    }

    let mori = mori_cone(fan)?;
    let labels: Vec<String> = mori
        .entries
        .iter()
        .map(|e| fan.set_label(e.relation.collection.rays()))
        .collect();
    if compact {
        w(out, format!("relations={}", mori.entries.len()));
    } else {
        w(out, format!("primitive relations: {}", mori.entries.len()));
    }
    for (e, label) in mori.entries.iter().zip(&labels) {
        let decomposition = e.decomposition.as_ref().map(|d| {
            d.iter()
                .map(|(j, q)| term(q, &labels[*j]))
                .collect::<Vec<_>>()
                .join(" + ")
        });
        if compact {
            let mut line = format!(
                "relation={label};equation={};degree={};extremal={}",
                e.relation.describe(fan),
                e.relation.degree,
                e.extremal
            );
            if let Some(d) = decomposition {
                let _ = write!(line, ";decomposition={d}");
            }
            w(out, line);
        } else {
            let mut line = format!("  {label}: {}  degree {}", e.relation.describe(fan), e.relation.degree);
            if e.extremal {
                line.push_str("  extremal");
            } else if let Some(d) = decomposition {
                let _ = write!(line, "  = {d}");
            }
            w(out, line);
        }
    }

    let fano = is_fano(fan)?;
    let fano_text = if fano.fano {
        "yes".to_string()
    } else {
        let ws: Vec<String> = fano
            .witnesses
            .iter()
            .map(|r| format!("witness {}, degree {}", fan.set_label(r.collection.rays()), r.degree))
            .collect();
        format!("no ({})", ws.join("; "))
    };
    if compact {
        w(out, format!("extremal={}", mori.extremal_count()));
        w(out, format!("picard={}", mori.picard_number));
        w(out, format!("projective={}", mori.strictly_convex));
        w(out, format!("fano={}", fano.fano));
    } else {
        w(out, format!("extremal classes: {}", mori.extremal_count()));
        w(out, format!("Picard number: {}", mori.picard_number));
        w(out, format!("projective: {}", yes_no(mori.strictly_convex)));
        w(out, format!("Fano: {fano_text}"));
    }
    candidates(fan, style, out)
}

fn candidates(fan: &Fan, style: Style, out: &mut String) -> Result<(), FanError> {
    let cands = blow_down_candidates(fan)?;
    if style == Style::Compact {
        let _ = writeln!(out, "candidates={}", cands.len());
    } else {
        let _ = writeln!(out, "blow-down candidates: {}", cands.len());
    }
    for c in &cands {
        let relation = c.relation.describe(fan);
        let ray = fan.name(c.ray);
        let line = match (&c.target, &c.obstruction, style) {
            (Some(t), _, Style::Text) => {
                let fano = is_fano(t)?.fano;
                let projective = toric_core::is_projective(t)?;
                format!(
                    "  {relation}  contract {ray}: valid, target Fano: {}, projective: {}",
                    yes_no(fano),
                    yes_no(projective)
                )
            }
            (Some(t), _, Style::Compact) => format!(
                "candidate={relation};ray={ray};valid=true;fano={};projective={}",
                is_fano(t)?.fano,
                toric_core::is_projective(t)?
            ),
            (None, obstruction, style) => {
                let why = match obstruction {
                    Some(Obstruction::Star(cones)) => cones
                        .iter()
                        .map(|c| format!("obstructed by cone {}", fan.cone_label(c)))
                        .collect::<Vec<_>>()
                        .join(", "),
                    Some(Obstruction::Invalid(why)) => format!("invalid result: {why}"),
                    None => "invalid".to_string(),
                };
                if style == Style::Compact {
                    format!("candidate={relation};ray={ray};valid=false;reason={why}")
                } else {
                    format!("  {relation}  contract {ray}: {why}")
                }
            }
        };
        out.push_str(&line);
        out.push('\n');
    }
    Ok(())
}

pub fn blowdowns(fan: &Fan, style: Style, out: &mut String) -> Result<(), FanError> {
    candidates(fan, style, out)
}

pub fn factorizations(paths: &[FactorizationPath], style: Style, out: &mut String) {
    for (i, path) in paths.iter().enumerate() {
        if style == Style::Compact {
            let steps: Vec<String> = path
                .steps
                .iter()
                .map(|s| format!("{}@{}:fano={}", s.contracted, s.center.join(","), s.fano))
                .collect();
            let _ = writeln!(out, "path={};steps={};{}", i + 1, path.len(), steps.join(";"));
            continue;
        }
        let _ = writeln!(out, "path {}: {} step(s)", i + 1, path.len());
        if path.is_empty() {
            let _ = writeln!(out, "  (identity: the fans coincide)");
        }
        let last = path.len().saturating_sub(1);
        for (k, s) in path.steps.iter().enumerate() {
            let center = format!("⟨{}⟩", s.center.join(","));
            if k == last {
                let _ = writeln!(out, "  contract {} onto {center} -> coarse fan", s.contracted);
            } else {
                let _ = writeln!(
                    out,
                    "  contract {} onto {center} -> intermediate with {} rays [Fano: {}, projective: {}]",
                    s.contracted,
                    s.fan.generators().len(),
                    yes_no(s.fano),
                    yes_no(s.projective)
                );
            }
        }
    }
}
