//! Line-oriented presentation format.
//!
//! ```text
//! p=2 n=3
//! g1^2 = g3
//! g2^2 = g3
//! [g2,g1] = g3
//! ```
//!
//! The header fixes the prime and the number of pc-generators. Power
//! relations are written `g<i>^p = <word>` (the literal `p` or its numeric
//! value), commutator relations `[g<i>,g<j>] = <word>` with `i > j`. A word is
//! `1` or `g<a>^<e>*g<b>^<e>*…` with strictly increasing indices. Omitted
//! relations are trivial. `#` starts a comment.

use super::PcGroup;
use crate::error::{Error, Result};

fn syntax(line: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { line, msg: msg.into() }
}

fn parse_generator(tok: &str, line: usize, n: usize) -> Result<usize> {
    let idx = tok
        .trim()
        .strip_prefix('g')
        .ok_or_else(|| syntax(line, format!("expected generator, found '{tok}'")))?
        .parse::<usize>()
        .map_err(|_| syntax(line, format!("bad generator '{tok}'")))?;
    if idx == 0 || idx > n {
        return Err(syntax(line, format!("generator g{idx} out of range 1..={n}")));
    }
    Ok(idx - 1)
}

fn parse_word(text: &str, line: usize, p: u32, n: usize) -> Result<Vec<u32>> {
    let mut word = vec![0; n];
    let text = text.trim();
    if text == "1" {
        return Ok(word);
    }
    if text.is_empty() {
        return Err(syntax(line, "empty right-hand side"));
    }
    let mut last: Option<usize> = None;
    for factor in text.split('*') {
        let (gen, exp) = match factor.split_once('^') {
            Some((g, e)) => {
                let e = e
                    .trim()
                    .parse::<u32>()
                    .map_err(|_| syntax(line, format!("bad exponent in '{factor}'")))?;
                (g, e)
            }
            None => (factor, 1),
        };
        let idx = parse_generator(gen, line, n)?;
        if exp == 0 || exp >= p {
            return Err(Error::ExponentRange(format!(
                "line {line}: exponent {exp} of g{} not in [1, {p})",
                idx + 1
            )));
        }
        if last.is_some_and(|l| idx <= l) {
            return Err(syntax(line, "word indices must be strictly increasing"));
        }
        last = Some(idx);
        word[idx] = exp;
    }
    Ok(word)
}

fn parse_header(text: &str, line: usize) -> Result<(u32, usize)> {
    let mut p = None;
    let mut n = None;
    for tok in text.split_whitespace() {
        match tok.split_once('=') {
            Some(("p", v)) => p = Some(v.parse::<u32>().map_err(|_| syntax(line, "bad prime"))?),
            Some(("n", v)) => n = Some(v.parse::<usize>().map_err(|_| syntax(line, "bad rank"))?),
            _ => return Err(syntax(line, format!("unexpected header token '{tok}'"))),
        }
    }
    match (p, n) {
        (Some(p), Some(n)) => Ok((p, n)),
        _ => Err(syntax(line, "header must be 'p=<prime> n=<rank>'")),
    }
}

pub(crate) fn parse_pc_presentation(text: &str) -> Result<PcGroup> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, htext) = lines.next().ok_or_else(|| syntax(1, "missing header"))?;
    let (p, n) = parse_header(htext, hline)?;
    if !super::is_small_prime(p) {
        return Err(Error::BadPrime(p));
    }
    if n > super::DEFAULT_MAX_RANK {
        return Err(Error::OrderCap {
            n,
            cap: super::DEFAULT_MAX_RANK,
        });
    }

    let mut power: Vec<Option<Vec<u32>>> = vec![None; n];
    let mut comm: Vec<Vec<Option<Vec<u32>>>> = (0..n).map(|i| vec![None; i]).collect();

    for (line, text) in lines {
        let (lhs, rhs) = text
            .split_once('=')
            .ok_or_else(|| syntax(line, "expected '<lhs> = <word>'"))?;
        let lhs = lhs.trim();
        let word = parse_word(rhs, line, p, n)?;
        if let Some(inner) = lhs.strip_prefix('[') {
            let inner = inner
                .strip_suffix(']')
                .ok_or_else(|| syntax(line, "unterminated commutator"))?;
            let (a, b) = inner
                .split_once(',')
                .ok_or_else(|| syntax(line, "commutator needs two generators"))?;
            let i = parse_generator(a, line, n)?;
            let j = parse_generator(b, line, n)?;
            if i <= j {
                return Err(syntax(line, format!("write commutators as [g{},g{}] with the larger index first", j + 1, i + 1)));
            }
            check_later(&word, j, lhs)?;
            if comm[i][j].replace(word).is_some() {
                return Err(syntax(line, format!("duplicate relation for {lhs}")));
            }
        } else {
            let (g, e) = lhs
                .split_once('^')
                .ok_or_else(|| syntax(line, format!("unrecognised relation '{lhs}'")))?;
            let i = parse_generator(g, line, n)?;
            let e = e.trim();
            if e != "p" && e.parse::<u32>().ok() != Some(p) {
                return Err(syntax(line, format!("power relations must be g{}^p", i + 1)));
            }
            check_later(&word, i, lhs)?;
            if power[i].replace(word).is_some() {
                return Err(syntax(line, format!("duplicate relation for {lhs}")));
            }
        }
    }

    let power = power.into_iter().map(|w| w.unwrap_or_else(|| vec![0; n])).collect();
    let comm = comm
        .into_iter()
        .map(|row| row.into_iter().map(|w| w.unwrap_or_else(|| vec![0; n])).collect())
        .collect();
    PcGroup::new(p, power, comm)
}

fn check_later(word: &[u32], bound: usize, relation: &str) -> Result<()> {
    match word.iter().take(bound + 1).position(|&e| e != 0) {
        Some(k) => Err(Error::NonTriangular {
            relation: relation.to_string(),
            generator: k + 1,
        }),
        None => Ok(()),
    }
}

pub(crate) fn word_to_string(w: &[u32]) -> String {
    let parts: Vec<String> = w
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, &e)| if e == 1 { format!("g{}", i + 1) } else { format!("g{}^{e}", i + 1) })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Canonical text form; trivial relations are omitted.
pub(crate) fn to_text(g: &PcGroup) -> String {
    let mut out = format!("p={} n={}\n", g.p, g.n);
    for i in 0..g.n {
        if g.power[i].iter().any(|&e| e != 0) {
            out.push_str(&format!("g{}^p = {}\n", i + 1, word_to_string(&g.power[i])));
        }
    }
    for i in 0..g.n {
        for j in 0..i {
            if g.comm[i][j].iter().any(|&e| e != 0) {
                out.push_str(&format!("[g{},g{}] = {}\n", i + 1, j + 1, word_to_string(&g.comm[i][j])));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_four() {
        let g = parse_pc_presentation("p=2 n=2\ng1^2 = g2\n").unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.power_relation(0), &[0, 1]);
        assert_eq!(g.power_relation(1), &[0, 0]);
    }

    #[test]
    fn elementary_rank_two_over_three() {
        let g = parse_pc_presentation("p=3 n=2\n").unwrap();
        assert_eq!(g.order(), 9);
        assert!(g.commutator_relation(1, 0).iter().all(|&e| e == 0));
    }

    #[test]
    fn earlier_generator_is_rejected() {
        let err = parse_pc_presentation("p=2 n=2\ng2^2 = g1\n").unwrap_err();
        assert!(matches!(err, Error::NonTriangular { generator: 1, .. }));
    }

    #[test]
    fn exponent_out_of_range() {
        let err = parse_pc_presentation("p=3 n=2\ng1^3 = g2^3\n").unwrap_err();
        assert!(matches!(err, Error::ExponentRange(_)));
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let err = parse_pc_presentation("p=2 n=2\n# comment\ng1^2 == g2\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 3, .. }), "{err:?}");
        assert!(matches!(parse_pc_presentation(""), Err(Error::Syntax { .. })));
        assert!(matches!(parse_pc_presentation("p=2\n"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_pc_presentation("p=2 n=1\ng1^3 = 1\n"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_pc_presentation("p=2 n=2\n[g1,g2] = 1\n"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn text_round_trip() {
        let src = "p=2 n=3\ng1^p = g3\ng2^p = g3\n[g2,g1] = g3\n";
        let g = parse_pc_presentation(src).unwrap();
        assert_eq!(g.to_text(), src);
        assert_eq!(parse_pc_presentation(&g.to_text()).unwrap(), g);
    }
}
