use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};

use phasediag_core::io::olog::{quiver_json, to_json};
use phasediag_core::io::{export_dot, export_olog, read_complex, read_group, read_rep, read_strata};
use phasediag_core::large_dev::parse_grid;
use phasediag_core::perm_group::normalizer;
use phasediag_core::singularity::{
    milnor_number, parse_weights, spectrum_grading, AdjacencyCorpus, PolyGerm, QuasihomogeneousGerm,
};
use phasediag_core::{fixtures, DiscreteObservable, FiniteCategory, OrbitCategory, PhaseCategory, RateProfile};

use crate::output::{emit, write_atomic};
use crate::{CategoryOutput, Command, Format, GermArgs, GroupAction, LdpArgs, SingAction};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn seed(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let mut written = String::new();
    for (name, mut text) in fixtures::seed_files() {
        text.push('\n');
        let path = dir.join(&name);
        write_atomic(&path, &text)?;
        writeln!(written, "{}", path.display())?;
    }
    emit(None, &written)
}

pub fn run(cmd: &Command) -> Result<()> {
    match cmd {
        Command::Group { action: GroupAction::Info { input } } => group_info(input),
        Command::Orbitcat { input, out } => {
            let group = read_group(&read(input)?)?;
            let oc = OrbitCategory::build(&group)?;
            write_category(&oc.category, out)
        }
        Command::Phase { group, complex, out } => {
            let g = read_group(&read(group)?)?;
            let x = read_complex(&read(complex)?, &g)?;
            let oc = OrbitCategory::build(&g)?;
            let phase = PhaseCategory::build(&oc, &x)?;
            write_category(&phase.category, out)
        }
        Command::Strata { input, out } => {
            let strata = read_strata(&read(input)?)?;
            for w in strata.warnings() {
                log::warn!("{w}");
            }
            write_category(&strata.strata_category()?, out)
        }
        Command::Quiver { group, rep, output } => {
            let g = read_group(&read(group)?)?;
            let action = read_rep(&read(rep)?, &g)?;
            let oc = OrbitCategory::build(&g)?;
            let quiver = action.degeneracy_quiver(&g, &oc.lattice)?;
            if !quiver.dimensions_add_up() {
                log::warn!("quiver dimensions do not add up");
            }
            let json = serde_json::to_string_pretty(&quiver_json(&g, &oc.lattice, &quiver))?;
            emit(output.as_deref(), &json)
        }
        Command::Sing { action } => sing(action),
        Command::Ldp(args) => ldp(args),
    }
}

fn group_info(input: &Path) -> Result<()> {
    let group = read_group(&read(input)?)?;
    let oc = OrbitCategory::build(&group)?;
    let mut s = String::new();
    writeln!(s, "degree {}", group.degree())?;
    writeln!(s, "order {}", group.order())?;
    let gens: Vec<String> = group.generators().iter().map(|p| p.cycle_notation()).collect();
    writeln!(s, "generators {}", gens.join(", "))?;
    writeln!(s, "subgroups {}", oc.lattice.subgroups.len())?;
    writeln!(s, "classes {}", oc.class_count())?;
    writeln!(s, "class\tlabel\torder\tconjugates\tnormalizer\tweyl")?;
    for c in &oc.lattice.classes {
        let n = normalizer(&group, &c.representative).order();
        writeln!(
            s,
            "{}\t{}\t{}\t{}\t{}\t{}",
            c.class_index,
            c.label(),
            c.order(),
            c.conjugates.len(),
            n,
            n / c.order()
        )?;
    }
    emit(None, &s)
}

fn write_category(cat: &FiniteCategory, out: &CategoryOutput) -> Result<()> {
    let format = match (out.format, &out.output) {
        (Some(f), _) => f,
        (None, None) => Format::Dot,
        (None, Some(path)) => match path.extension().and_then(|e| e.to_str()) {
            Some("dot" | "gv") => Format::Dot,
            Some("json") => Format::Json,
            _ => bail!("cannot infer a format from {}; use --format", path.display()),
        },
    };
    let text = match format {
        Format::Dot => export_dot(cat),
        Format::Json => to_json(&export_olog(cat)),
    };
    emit(out.output.as_deref(), &text)
}

fn quasihomogeneous(germ: PolyGerm, weights: &str) -> Result<QuasihomogeneousGerm> {
    Ok(QuasihomogeneousGerm::new(germ, parse_weights(weights)?)?)
}

fn sing(action: &SingAction) -> Result<()> {
    match action {
        SingAction::Mu(GermArgs { germ, weights }) => {
            let g = PolyGerm::parse(germ)?;
            if let Some(w) = weights {
                quasihomogeneous(g.clone(), w)?;
            }
            emit(None, &milnor_number(&g)?.to_string())
        }
        SingAction::Spectrum(args) => {
            let q = quasihomogeneous(PolyGerm::parse(&args.germ)?, &args.weights)?;
            let spectrum: Vec<String> = spectrum_grading(&q)?.iter().map(|r| r.to_string()).collect();
            emit(None, &spectrum.join(" "))
        }
        SingAction::Stabilize(GermArgs { germ, weights }) => {
            let g = PolyGerm::parse(germ)?;
            match weights {
                None => emit(None, &g.stabilize()?.to_string()),
                Some(w) => {
                    let s = quasihomogeneous(g, w)?.stabilize()?;
                    let ws: Vec<String> = s.weights().iter().map(|r| r.to_string()).collect();
                    emit(None, &format!("{}\n{}", s.germ(), ws.join(",")))
                }
            }
        }
        SingAction::Corpus => {
            let corpus = AdjacencyCorpus::bundled();
            let mismatches = corpus.verify_computed()?;
            let mut s = String::new();
            writeln!(s, "name\tnormal form\tweights\tmu\tcodim")?;
            for e in corpus.entries() {
                writeln!(s, "{}\t{}\t{}\t{}\t{}", e.name, e.normal_form, e.weights.join(","), e.mu, e.codim)?;
            }
            for a in corpus.arrows() {
                writeln!(s, "{} -> {}", a.from, a.to)?;
            }
            emit(None, &s)?;
            if !mismatches.is_empty() {
                bail!("computed values disagree with the corpus: {}", mismatches.join("; "));
            }
            Ok(())
        }
        SingAction::Cokernel { from, to } => {
            let c = AdjacencyCorpus::bundled().relative_cokernel(from, to)?;
            let top = c.top_weight.map_or_else(|| "-".to_string(), |w| w.to_string());
            emit(None, &format!("dimension {}\ntop_weight {top}", c.dimension))
        }
    }
}

fn ldp(args: &LdpArgs) -> Result<()> {
    let obs = match (&args.dist, args.bernoulli) {
        (Some(d), None) => DiscreteObservable::parse(d)?,
        (None, Some(p)) => DiscreteObservable::bernoulli(p)?,
        _ => return Err(anyhow!("exactly one of --dist and --bernoulli is required")),
    };
    let grid = parse_grid(&args.grid)?;
    let profile = RateProfile::new(obs);
    let mut s = String::new();
    writeln!(s, "x\tGamma*(x)\tC(x)")?;
    for row in profile.table(&grid)? {
        let x = (row.x * 1e12).round() / 1e12;
        writeln!(s, "{x}\t{}\t{}", fixed(row.conjugate), fixed(row.cramer))?;
    }
    emit(None, &s)
}

/// Twelve decimals, without a sign on values that round to zero.
fn fixed(v: f64) -> String {
    let text = format!("{v:.12}");
    match text.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => text,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_drops_negative_zero() {
        assert_eq!(fixed(-1e-17), "0.000000000000");
        assert_eq!(fixed(-0.25), "-0.250000000000");
        assert_eq!(fixed(0.0), "0.000000000000");
    }
}
