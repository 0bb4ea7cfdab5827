//! The `.pcg` presentation file format.
//!
//! Line-oriented, `#` starts a comment, blank lines are ignored:
//!
//! ```text
//! p <prime>            # relative order shared by every generator
//! gens <name> <name>…  # PC order
//! pow <g> = <word|1>   # g^p = word; omitted rules default to 1
//! comm <gj> <gi> = <word|1>   # [gj, gi] = word, gj later than gi
//! ```
//!
//! `1` denotes the empty word. Words are products of powers of strictly
//! later generators, e.g. `z^4` or `w*t^2`. Writing then reading a
//! presentation reproduces it exactly.

use std::fmt::Write as _;
use std::path::Path;

use bvl_core::{PcPresentation, Rule};
use thiserror::Error;

use crate::wordexpr::{parse_word, WordError, WordExpr};

#[derive(Debug, Error)]
pub enum PcgError {
    #[error("line {line}: {reason}")]
    ParseError { line: usize, reason: String },
    #[error(transparent)]
    Presentation(#[from] bvl_core::PcError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

fn bad(line: usize, reason: impl Into<String>) -> PcgError {
    PcgError::ParseError {
        line,
        reason: reason.into(),
    }
}

/// Parse `.pcg` text into a validated presentation. Weight violations and
/// other structural problems surface from the presentation constructor.
pub fn parse_pcg(text: &str) -> Result<PcPresentation, PcgError> {
    let mut prime: Option<u32> = None;
    let mut names: Vec<String> = Vec::new();
    let mut rules: Vec<Rule> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let keyword = tokens.next().expect("nonempty line");
        match keyword {
            "p" => {
                if prime.is_some() {
                    return Err(bad(line_no, "duplicate `p` line"));
                }
                let value = tokens
                    .next()
                    .ok_or_else(|| bad(line_no, "`p` needs a value"))?;
                let value: u32 = value
                    .parse()
                    .map_err(|_| bad(line_no, format!("invalid prime `{value}`")))?;
                if tokens.next().is_some() {
                    return Err(bad(line_no, "trailing tokens after `p <prime>`"));
                }
                prime = Some(value);
            }
            "gens" => {
                if !names.is_empty() {
                    return Err(bad(line_no, "duplicate `gens` line"));
                }
                names = tokens.map(str::to_string).collect();
                if names.is_empty() {
                    return Err(bad(line_no, "`gens` needs at least one name"));
                }
            }
            "pow" => {
                let (lhs, word) = split_rule(line_no, line, "pow", 1)?;
                let g = gen_index(line_no, &names, lhs[0])?;
                rules.push(Rule::Pow(g, tail(line_no, &names, &word)?));
            }
            "comm" => {
                let (lhs, word) = split_rule(line_no, line, "comm", 2)?;
                let j = gen_index(line_no, &names, lhs[0])?;
                let i = gen_index(line_no, &names, lhs[1])?;
                if j <= i {
                    return Err(bad(
                        line_no,
                        format!("`comm {} {}`: first generator must come later", lhs[0], lhs[1]),
                    ));
                }
                rules.push(Rule::Comm(j, i, tail(line_no, &names, &word)?));
            }
            other => return Err(bad(line_no, format!("unknown keyword `{other}`"))),
        }
    }

    let prime = prime.ok_or_else(|| bad(0, "missing `p` line"))?;
    if names.is_empty() {
        return Err(bad(0, "missing `gens` line"));
    }
    let rel = vec![prime; names.len()];
    Ok(PcPresentation::new(names, rel, rules)?)
}

/// Split `pow g = word` / `comm gj gi = word` into the left-hand generator
/// names and the right-hand word text.
fn split_rule<'a>(
    line_no: usize,
    line: &'a str,
    keyword: &str,
    lhs_count: usize,
) -> Result<(Vec<&'a str>, String), PcgError> {
    let rest = &line[keyword.len()..];
    let (lhs, rhs) = rest
        .split_once('=')
        .ok_or_else(|| bad(line_no, format!("`{keyword}` rule needs `= <word|1>`")))?;
    let lhs: Vec<&str> = lhs.split_whitespace().collect();
    if lhs.len() != lhs_count {
        return Err(bad(
            line_no,
            format!("`{keyword}` takes {lhs_count} generator name(s), got {}", lhs.len()),
        ));
    }
    Ok((lhs, rhs.trim().to_string()))
}

fn gen_index(line_no: usize, names: &[String], name: &str) -> Result<usize, PcgError> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| bad(line_no, format!("unknown generator `{name}`")))
}

/// Parse a rule tail: `1` is the empty word, otherwise a product of powers
/// of generators.
fn tail(line_no: usize, names: &[String], word: &str) -> Result<Vec<(usize, i64)>, PcgError> {
    if word == "1" {
        return Ok(Vec::new());
    }
    let expr = parse_word(word, names).map_err(|e| match e {
        WordError::SyntaxError(pos) => bad(line_no, format!("syntax error in word at offset {pos}")),
        WordError::UnknownGenerator(name) => bad(line_no, format!("unknown generator `{name}`")),
    })?;
    let mut lits = Vec::new();
    flatten(&expr, 1, &mut lits).map_err(|()| {
        bad(
            line_no,
            "rule tails must be plain products of generator powers",
        )
    })?;
    let index = |name: &str| names.iter().position(|n| n == name).expect("validated");
    Ok(lits.into_iter().map(|(n, e)| (index(n), e)).collect())
}

/// Reduce an expression to literal `name^exp` factors; anything that is not
/// a plain product of powers (commutators, powers of products) is rejected.
fn flatten<'e>(
    expr: &'e WordExpr,
    mult: i64,
    out: &mut Vec<(&'e str, i64)>,
) -> Result<(), ()> {
    match expr {
        WordExpr::Gen(name) => {
            out.push((name, mult));
            Ok(())
        }
        WordExpr::Power(base, k) => match base.as_ref() {
            WordExpr::Gen(name) => {
                out.push((name, mult * k));
                Ok(())
            }
            _ => Err(()),
        },
        WordExpr::Product(factors) if mult == 1 => {
            for f in factors {
                flatten(f, 1, out)?;
            }
            Ok(())
        }
        _ => Err(()),
    }
}

/// Render a presentation in `.pcg` form. Requires a homogeneous
/// presentation (one shared relative order), which is what the format can
/// express.
pub fn render_pcg(pres: &PcPresentation) -> Result<String, PcgError> {
    let prime = pres.prime().ok_or_else(|| {
        bad(0, "presentation mixes relative orders; not representable as .pcg")
    })?;
    let names = pres.names();
    let mut out = String::new();
    writeln!(out, "p {prime}").unwrap();
    writeln!(out, "gens {}", names.join(" ")).unwrap();
    let word = |tail: &[(usize, i64)]| -> String {
        if tail.is_empty() {
            "1".to_string()
        } else {
            tail.iter()
                .map(|&(g, e)| {
                    if e == 1 {
                        names[g].clone()
                    } else {
                        format!("{}^{e}", names[g])
                    }
                })
                .collect::<Vec<_>>()
                .join("*")
        }
    };
    for i in 0..pres.rank() {
        let t = pres.pow_tail(i);
        if !t.is_empty() {
            writeln!(out, "pow {} = {}", names[i], word(t)).unwrap();
        }
    }
    for j in 0..pres.rank() {
        for i in 0..j {
            let t = pres.comm_tail(j, i);
            if !t.is_empty() {
                writeln!(out, "comm {} {} = {}", names[j], names[i], word(t)).unwrap();
            }
        }
    }
    Ok(out)
}

pub fn read_group(path: &Path) -> Result<PcPresentation, PcgError> {
    let text = std::fs::read_to_string(path).map_err(|source| PcgError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_pcg(&text)
}

pub fn write_group(path: &Path, pres: &PcPresentation) -> Result<(), PcgError> {
    let text = render_pcg(pres)?;
    std::fs::write(path, text).map_err(|source| PcgError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use bvl_core::catalog::{build_presentation, FamilySpec};
    use bvl_core::{Group, PcError};

    fn heisenberg_text() -> &'static str {
        "# Heisenberg group of order 125\n\
         p 5\n\
         gens x y z\n\
         pow x = 1  # explicit trivial power is allowed\n\
         comm y x = z^4\n"
    }

    #[test]
    fn parses_heisenberg_file() {
        let pres = parse_pcg(heisenberg_text()).unwrap();
        assert_eq!(pres.rank(), 3);
        assert_eq!(pres.prime(), Some(5));
        assert_eq!(pres.comm_tail(1, 0), &[(2, 4)]);
        let g = Group::from_presentation(pres).unwrap();
        assert_eq!(g.order(), 125);
    }

    #[test]
    fn one_denotes_the_empty_word() {
        let pres = parse_pcg("p 3\ngens a b\npow a = 1\ncomm b a = 1\n").unwrap();
        assert!(pres.pow_tail(0).is_empty());
        assert!(pres.comm_tail(1, 0).is_empty());
    }

    #[test]
    fn earlier_generator_tail_is_a_weight_violation() {
        let err = parse_pcg("p 5\ngens x y z\ncomm z x = y\n").unwrap_err();
        match err {
            PcgError::Presentation(PcError::WeightViolation { .. }) => {}
            other => panic!("expected weight violation, got {other}"),
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_pcg("p 5\ngens x y\nfoo x = 1\n").unwrap_err();
        match err {
            PcgError::ParseError { line: 3, .. } => {}
            other => panic!("expected line-3 parse error, got {other}"),
        }
        let err = parse_pcg("p 5\ngens x y\npow q = 1\n").unwrap_err();
        match err {
            PcgError::ParseError { line: 3, .. } => {}
            other => panic!("expected line-3 parse error, got {other}"),
        }
    }

    #[test]
    fn comm_order_is_checked() {
        let err = parse_pcg("p 5\ngens x y\ncomm x y = 1\n").unwrap_err();
        match err {
            PcgError::ParseError { line: 3, reason } => {
                assert!(reason.contains("must come later"), "{reason}");
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn round_trips_every_catalog_family() {
        let dir = tempfile::tempdir().unwrap();
        let specs = [
            FamilySpec::new("holder_heisenberg").with("p", 5),
            FamilySpec::new("lemma10").with("p", 3).with("n", 3),
            FamilySpec::new("lemma11").with("p", 5).with("n", 2),
            FamilySpec::new("table1_G6").with("p", 5),
            FamilySpec::new("table2_G6'").with("p", 2),
            FamilySpec::new("H4").with("p", 5),
            FamilySpec::new("H_ijkl")
                .with("p", 5)
                .with("i", 1)
                .with("j", 0)
                .with("k", 2)
                .with("l", 3),
            FamilySpec::new("K_r").with("p", 5).with("r", 2),
            FamilySpec::new("example17").with("p", 3),
            FamilySpec::new("abelian").with("p", 7).with("e1", 2).with("e2", 1),
        ];
        for spec in specs {
            let pres = build_presentation(&spec).unwrap();
            let path = dir.path().join(format!("{}.pcg", spec.family));
            write_group(&path, &pres).unwrap();
            let back = read_group(&path).unwrap();
            assert_eq!(back.names(), pres.names(), "{}", spec.reference());
            assert_eq!(back.rels(), pres.rels(), "{}", spec.reference());
            for i in 0..pres.rank() {
                assert_eq!(back.pow_tail(i), pres.pow_tail(i), "{}", spec.reference());
                for j in i + 1..pres.rank() {
                    assert_eq!(
                        back.comm_tail(j, i),
                        pres.comm_tail(j, i),
                        "{}",
                        spec.reference()
                    );
                }
            }
        }
    }

    #[test]
    fn render_rejects_mixed_relative_orders() {
        let pres = bvl_core::PcPresentation::new(
            vec!["a".into(), "b".into()],
            vec![3, 5],
            vec![],
        )
        .unwrap();
        assert!(render_pcg(&pres).is_err());
    }
}
