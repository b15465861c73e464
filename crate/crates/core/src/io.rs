//! Text formats and diagram output.
//!
//! Cayley tables (`.cay`):
//!
//! ```text
//! semigroup <name>
//! order <n>
//! <n lines of n space-separated indices>
//! ```
//!
//! Relations (`.rel`): a header `relation <name> <n>` followed by `n` lines
//! of `n` characters from `{0, 1}`. Subsets: one line of indices.
//!
//! Lines end in LF. A single trailing newline is accepted; anything after
//! the last expected line is an error.

use std::fmt::Write as _;

use crate::error::FormatError;
use crate::green::GreenData;
use crate::relation::BoolRelation;
use crate::semigroup::{ElementSubset, FiniteSemigroup};

fn lines(text: &str) -> Result<Vec<&str>, FormatError> {
    if let Some(pos) = text.find('\r') {
        let line = text[..pos].matches('\n').count() + 1;
        return Err(FormatError::at(line, "carriage return; expected LF line endings"));
    }
    let body = text.strip_suffix('\n').unwrap_or(text);
    Ok(body.split('\n').collect())
}

fn expect_lines(lines: &[&str], count: usize) -> Result<(), FormatError> {
    if lines.len() < count {
        return Err(FormatError::at(lines.len() + 1, format!("expected {count} lines, found {}", lines.len())));
    }
    if lines.len() > count {
        return Err(FormatError::at(count + 1, "trailing content"));
    }
    Ok(())
}

fn parse_index(token: &str, line: usize, bound: usize) -> Result<usize, FormatError> {
    let value: usize = token
        .parse()
        .map_err(|_| FormatError::at(line, format!("not an index: {token:?}")))?;
    if value >= bound {
        return Err(FormatError::at(line, format!("index {value} out of range 0..{bound}")));
    }
    Ok(value)
}

pub fn parse_cay(text: &str) -> Result<FiniteSemigroup, FormatError> {
    let lines = lines(text)?;
    let name = lines[0]
        .strip_prefix("semigroup ")
        .map(str::trim)
        .filter(|n| !n.is_empty())
        .ok_or_else(|| FormatError::at(1, "expected `semigroup <name>`"))?;
    let order: usize = lines
        .get(1)
        .and_then(|l| l.strip_prefix("order "))
        .and_then(|n| n.trim().parse().ok())
        .ok_or_else(|| FormatError::at(2, "expected `order <n>`"))?;
    if order == 0 {
        return Err(FormatError::at(2, "order must be positive"));
    }
    expect_lines(&lines, order + 2)?;
    let rows = lines[2..]
        .iter()
        .enumerate()
        .map(|(i, line)| {
            let row: Vec<usize> = line
                .split_ascii_whitespace()
                .map(|t| parse_index(t, i + 3, order))
                .collect::<Result<_, _>>()?;
            if row.len() != order {
                return Err(FormatError::at(i + 3, format!("expected {order} entries, found {}", row.len())));
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FiniteSemigroup::build(rows, name)?)
}

pub fn write_cay(s: &FiniteSemigroup) -> String {
    let mut out = format!("semigroup {}\norder {}\n", s.name(), s.order());
    for x in s.elements() {
        let row: Vec<String> = s.row(x).iter().map(usize::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_relation(text: &str) -> Result<(String, BoolRelation), FormatError> {
    let lines = lines(text)?;
    let header: Vec<&str> = lines[0].split_ascii_whitespace().collect();
    let (name, n) = match header.as_slice() {
        ["relation", name @ .., n] if !name.is_empty() => (
            name.join(" "),
            n.parse::<usize>()
                .map_err(|_| FormatError::at(1, format!("not a size: {n:?}")))?,
        ),
        _ => return Err(FormatError::at(1, "expected `relation <name> <n>`")),
    };
    expect_lines(&lines, n + 1)?;
    let mut rel = BoolRelation::empty(n);
    for (a, line) in lines[1..].iter().enumerate() {
        if line.len() != n {
            return Err(FormatError::at(a + 2, format!("expected {n} characters, found {}", line.len())));
        }
        for (b, ch) in line.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => rel.set(a, b, true),
                _ => return Err(FormatError::at(a + 2, format!("unexpected character {ch:?}"))),
            }
        }
    }
    Ok((name, rel))
}

pub fn write_relation(name: &str, rel: &BoolRelation) -> String {
    let n = rel.size();
    let mut out = format!("relation {name} {n}\n");
    for a in 0..n {
        out.extend((0..n).map(|b| if rel.get(a, b) { '1' } else { '0' }));
        out.push('\n');
    }
    out
}

/// A subset of `0..order`. Repeated indices are rejected.
pub fn parse_subset(text: &str, order: usize) -> Result<ElementSubset, FormatError> {
    let lines = lines(text)?;
    expect_lines(&lines, 1)?;
    let mut subset = ElementSubset::new(order);
    for token in lines[0].split_ascii_whitespace() {
        let x = parse_index(token, 1, order)?;
        if !subset.insert(x) {
            return Err(FormatError::at(1, format!("index {x} repeated")));
        }
    }
    Ok(subset)
}

pub fn write_subset(subset: &ElementSubset) -> String {
    let items: Vec<String> = subset.iter().map(|x| x.to_string()).collect();
    format!("{}\n", items.join(" "))
}

/// Egg-box diagrams of the `D`-classes as DOT, one HTML-table node per
/// class (rows `R`-classes, columns `L`-classes, idempotents starred), with
/// edges for the covering relation of the `J`-order.
pub fn egg_box_dot(s: &FiniteSemigroup, g: &GreenData) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", s.name().replace('"', "'")).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=plaintext];").unwrap();
    for (d, members) in g.d.classes.iter().enumerate() {
        let mut rows: Vec<usize> = members.iter().map(|&x| g.r.class_of[x]).collect();
        let mut cols: Vec<usize> = members.iter().map(|&x| g.l.class_of[x]).collect();
        rows.sort_unstable();
        rows.dedup();
        cols.sort_unstable();
        cols.dedup();
        write!(out, "  d{d} [label=<<table border=\"0\" cellborder=\"1\" cellspacing=\"0\">").unwrap();
        for &r in &rows {
            out.push_str("<tr>");
            for &l in &cols {
                let cell: Vec<String> = members
                    .iter()
                    .filter(|&&x| g.r.class_of[x] == r && g.l.class_of[x] == l)
                    .map(|&x| if s.is_idempotent(x) { format!("{x}*") } else { x.to_string() })
                    .collect();
                write!(out, "<td>{}</td>", cell.join(" ")).unwrap();
            }
            out.push_str("</tr>");
        }
        out.push_str("</table>>];\n");
    }
    let k = g.d.len();
    let rep = |d: usize| g.d.classes[d][0];
    let below = |c: usize, d: usize| c != d && g.leq_j.get(rep(c), rep(d));
    for c in 0..k {
        for d in 0..k {
            if below(c, d) && !(0..k).any(|m| below(c, m) && below(m, d)) {
                writeln!(out, "  d{c} -> d{d};").unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::green::green;
    use proptest::prelude::*;

    #[test]
    fn cay_round_trip() {
        for s in [
            catalog::brandt(2).unwrap(),
            catalog::symmetric_inverse_monoid(2).unwrap(),
            catalog::nil_monoid(),
        ] {
            let text = write_cay(&s);
            let back = parse_cay(&text).unwrap();
            assert_eq!(back.rows(), s.rows());
            assert_eq!(back.name(), s.name());
            assert_eq!(write_cay(&back), text);
        }
    }

    #[test]
    fn cay_without_final_newline() {
        let s = parse_cay("semigroup t\norder 1\n0").unwrap();
        assert_eq!(s.order(), 1);
    }

    #[test]
    fn cay_errors_carry_lines() {
        let cases = [
            ("semigroup t\r\norder 1\n0\n", 1),
            ("semi t\norder 1\n0\n", 1),
            ("semigroup t\nordr 1\n0\n", 2),
            ("semigroup t\norder 2\n0 1\n", 4),
            ("semigroup t\norder 1\n0\n\n", 4),
            ("semigroup t\norder 1\n0\nextra\n", 4),
            ("semigroup t\norder 2\n0 1\n1\n", 4),
            ("semigroup t\norder 2\n0 x\n1 1\n", 3),
            ("semigroup t\norder 2\n0 2\n1 1\n", 3),
        ];
        for (text, line) in cases {
            match parse_cay(text) {
                Err(FormatError::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn cay_rejects_non_associative() {
        let err = parse_cay("semigroup bad\norder 2\n0 1\n0 0\n").unwrap_err();
        assert!(matches!(err, FormatError::Semigroup(_)));
    }

    #[test]
    fn relation_round_trip() {
        let g = green(&catalog::brandt(2).unwrap());
        let text = write_relation("R", &g.r.to_relation());
        assert_eq!(text, "relation R 5\n10000\n01100\n01100\n00011\n00011\n");
        let (name, rel) = parse_relation(&text).unwrap();
        assert_eq!(name, "R");
        assert_eq!(rel, g.r.to_relation());
    }

    #[test]
    fn relation_errors() {
        assert!(parse_relation("relation 2\n10\n01\n").is_err());
        assert!(parse_relation("relation r 2\n12\n01\n").is_err());
        assert!(parse_relation("relation r 2\n10\n").is_err());
        assert!(parse_relation("relation r 2\n10\n01\n00\n").is_err());
        assert!(parse_relation("relation r 2\n100\n01\n").is_err());
    }

    #[test]
    fn subset_parsing() {
        let s = parse_subset("0 1 2 4\n", 5).unwrap();
        assert_eq!(s.to_vec(), vec![0, 1, 2, 4]);
        assert_eq!(write_subset(&s), "0 1 2 4\n");
        assert!(parse_subset("0 5\n", 5).is_err());
        assert!(parse_subset("1 1\n", 5).is_err());
        assert!(parse_subset("0\n1\n", 5).is_err());
        assert!(parse_subset("", 5).unwrap().is_empty());
    }

    #[test]
    fn brandt_egg_box() {
        let b2 = catalog::brandt(2).unwrap();
        let dot = egg_box_dot(&b2, &green(&b2));
        // Two D-classes: {0} below the 2x2 class.
        assert_eq!(dot.matches("<table").count(), 2);
        assert_eq!(dot.matches("<tr>").count(), 3);
        assert!(dot.contains("<td>0*</td>"));
        assert!(dot.contains("<td>1*</td><td>2</td>"));
        assert!(dot.contains("d0 -> d1;"));
        assert_eq!(dot.matches("->").count(), 1);
    }

    proptest! {
        #[test]
        fn relation_text_round_trips(bits in proptest::collection::vec(any::<bool>(), 16)) {
            let rel = BoolRelation::from_fn(4, |a, b| bits[a * 4 + b]);
            let (_, back) = parse_relation(&write_relation("x", &rel)).unwrap();
            prop_assert_eq!(back, rel);
        }
    }
}
