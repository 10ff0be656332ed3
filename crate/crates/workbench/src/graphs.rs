//! Graph arguments and the thin commands built on them.

use reflexive_core::cover::{cover_window, lift};
use reflexive_core::digraph::{canonical_cycle, cycle_of_word, enumerate_cycles, path_of_word, to_dot};
use reflexive_core::homsearch::hom_search;
use reflexive_core::{Digraph, PinSet, Word};

use crate::args::{DotArgs, HomArgs, LiftArgs};
use crate::CliError;

/// A graph given on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphArg {
    Path(Word),
    Cycle(Word),
}

impl GraphArg {
    pub fn parse(s: &str) -> Result<GraphArg, CliError> {
        let word = |w: &str| w.parse::<Word>().map_err(|e| CliError::Usage(format!("in {s:?}: {e}")));
        if let Some(w) = s.strip_prefix("cycle:") {
            Ok(GraphArg::Cycle(word(w)?))
        } else if let Some(w) = s.strip_prefix("path:") {
            Ok(GraphArg::Path(word(w)?))
        } else {
            Ok(GraphArg::Path(word(s)?))
        }
    }

    pub fn digraph(&self) -> Result<Digraph, CliError> {
        match self {
            GraphArg::Path(w) => Ok(path_of_word(w)),
            GraphArg::Cycle(w) => Ok(cycle_of_word(w)?),
        }
    }
}

pub fn cmd_enumerate(girth: usize) -> Result<String, CliError> {
    let mut out = String::new();
    for c in enumerate_cycles(girth)? {
        out.push_str(&c.word().to_string());
        out.push('\n');
    }
    Ok(out)
}

pub fn cmd_hom(args: &HomArgs) -> Result<String, CliError> {
    let from = GraphArg::parse(&args.from)?.digraph()?;
    let to = GraphArg::parse(&args.to)?.digraph()?;
    let pins: PinSet = args.pins.iter().copied().collect();
    Ok(match hom_search(&from, &to, &pins)? {
        Some(h) => format_map(h.as_slice()),
        None => "none\n".to_string(),
    })
}

fn format_map(map: &[usize]) -> String {
    let pairs: Vec<String> = map.iter().enumerate().map(|(u, v)| format!("{u}->{v}")).collect();
    pairs.join(" ") + "\n"
}

pub fn cmd_lift(args: &LiftArgs) -> Result<String, CliError> {
    let cycle_word = args.cycle.strip_prefix("cycle:").unwrap_or(&args.cycle);
    let g = GraphArg::parse(&format!("cycle:{cycle_word}"))?.digraph()?;
    let k = match &args.source {
        Some(s) => GraphArg::parse(s)?.digraph()?,
        None => g.clone(),
    };
    let map = match &args.map {
        Some(m) => m.clone(),
        None if k.vertex_count() == g.vertex_count() => (0..k.vertex_count()).collect(),
        None => return Err(CliError::Usage("--map is required when the source is not the cycle".into())),
    };
    if let Some(l) = lift(&k, &map, &g, args.root, args.gate, args.levels)? {
        let mut out = String::new();
        for (v, &p) in l.map.iter().enumerate() {
            let (x, level) = l.window.label(p);
            out.push_str(&format!("{v} -> ({x},{level})\n"));
        }
        return Ok(out);
    }
    // A lift that exists but leaves a user-sized window is reported as such.
    if args.levels.is_some() && lift(&k, &map, &g, args.root, args.gate, None)?.is_some() {
        return Ok(format!("no lift within {} levels\n", args.levels.unwrap_or_default()));
    }
    Ok("no lift (nonzero winding)\n".to_string())
}

pub fn cmd_export_dot(args: &DotArgs) -> Result<String, CliError> {
    let graph = GraphArg::parse(&args.graph)?;
    let loops = !args.no_loops;
    match args.cover_levels {
        None => Ok(to_dot(&graph.digraph()?, loops, None)),
        Some(levels) => {
            let GraphArg::Cycle(w) = &graph else {
                return Err(CliError::Usage("--cover-levels needs a cycle:WORD graph".into()));
            };
            canonical_cycle(w)?;
            let window = cover_window(&graph.digraph()?, args.gate, levels)?;
            let labels: Vec<String> = (0..window.vertex_count())
                .map(|p| {
                    let (x, i) = window.label(p);
                    format!("({x},{i})")
                })
                .collect();
            Ok(to_dot(&window.digraph, loops, Some(&labels)))
        }
    }
}
