use std::fs;

use leafspan::families::{random_theorem_instance, sharpness_graph};
use leafspan::graph::{parse_edge_list, Graph};
use leafspan::graph6::parse_graph6;

use crate::{Family, FamilyArgs, GraphArgs};

/// Loads the one graph named by `--input`, `--graph6` or `--family`.
pub fn load(args: &GraphArgs) -> Result<Graph, String> {
    if let Some(path) = &args.input {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        return parse_text(&text).map_err(|e| format!("{}: {e}", path.display()));
    }
    if let Some(g6) = &args.graph6 {
        return parse_graph6(g6).map_err(|e| e.to_string());
    }
    generate(&args.family)
}

/// Edge-list text starts with a number on its first content line;
/// anything else is read as graph6.
fn parse_text(text: &str) -> Result<Graph, String> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    if !first.is_empty() && first.bytes().all(|b| b.is_ascii_digit()) {
        parse_edge_list(text).map_err(|e| e.to_string())
    } else {
        parse_graph6(first).map_err(|e| e.to_string())
    }
}

pub fn generate(args: &FamilyArgs) -> Result<Graph, String> {
    match args.family {
        Some(Family::Sharpness) => {
            let m = args.m.ok_or("--family sharpness needs --m")?;
            if m == 0 {
                return Err("--m must be at least 1".into());
            }
            Ok(sharpness_graph(m))
        }
        Some(Family::Random) => {
            let n = args.n.ok_or("--family random needs --n")?;
            random_theorem_instance(n, args.seed).map_err(|e| e.to_string())
        }
        None => Err("no input: give --input, --graph6 or --family".into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sniffs_format() {
        assert_eq!(parse_text("3\n0 1\n1 2\n").unwrap().edge_count(), 2);
        assert_eq!(parse_text("# triangle\nBw\n").unwrap().edge_count(), 3);
        assert!(parse_text("not a graph\n").is_err());
    }
}
