//! The line-oriented instance format.
//!
//! ```text
//! mode group
//! sigma a b c
//! delta x y z
//! map g
//! a = x y x x      # comments run to the end of the line
//! b = y^-1
//! c = z x z
//! map h
//! ...
//! ```
//!
//! Header lines come first and in this order. Every map block assigns each
//! generator of `sigma` exactly once; `eps` (or nothing) is the empty word.
//! Group images must already be freely reduced.

use std::fmt::{self, Write};

use marked_pcp_core::{Alphabet, EqualiserResult, Error as CoreError, Instance, Letter, Mode, Morphism, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

/// A parsed file: alphabets plus the named morphisms in file order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFile {
    pub mode: Mode,
    pub sigma: Alphabet,
    pub delta: Alphabet,
    pub maps: Vec<(String, Morphism)>,
}

impl InstanceFile {
    pub fn from_instance(instance: &Instance, names: [&str; 2]) -> Self {
        InstanceFile {
            mode: instance.mode(),
            sigma: instance.sigma().clone(),
            delta: instance.delta().clone(),
            maps: vec![(names[0].into(), instance.g().clone()), (names[1].into(), instance.h().clone())],
        }
    }

    pub fn morphisms(&self) -> Vec<Morphism> {
        self.maps.iter().map(|(_, f)| f.clone()).collect()
    }
}

/// A whitespace-separated token with its 1-based column.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter().map(|(s, t)| (line[..s].chars().count() + 1, t)).collect()
}

struct Parser {
    line: usize,
}

impl Parser {
    fn err(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column, message: message.into() }
    }

    fn alphabet(&self, mode: Mode, toks: &[(usize, &str)]) -> Result<Alphabet, ParseError> {
        for (i, &(col, t)) in toks.iter().enumerate() {
            Alphabet::new(mode, &[t]).map_err(|e| self.err(col, e.to_string()))?;
            if toks[..i].iter().any(|&(_, u)| u == t) {
                return Err(self.err(col, format!("duplicate alphabet symbol `{t}`")));
            }
        }
        let names: Vec<&str> = toks.iter().map(|&(_, t)| t).collect();
        Alphabet::new(mode, &names).map_err(|e| self.err(toks.first().map_or(1, |t| t.0), e.to_string()))
    }

    fn word(&self, delta: &Alphabet, toks: &[(usize, &str)]) -> Result<Word, ParseError> {
        if let [(_, "eps")] = toks {
            return Ok(Word::empty());
        }
        let mut letters: Vec<Letter> = Vec::with_capacity(toks.len());
        for &(col, t) in toks {
            if t == "eps" {
                return Err(self.err(col, "`eps` must stand alone"));
            }
            let l = delta.parse_letter(t).map_err(|e| match e {
                CoreError::UnknownSymbol(_)
                    if t.starts_with('^') || !t.starts_with(|c: char| c.is_ascii_alphabetic()) =>
                {
                    self.err(col, format!("malformed token `{t}`"))
                }
                e => self.err(col, e.to_string()),
            })?;
            if letters.last() == Some(&l.inverse()) {
                return Err(self.err(col, format!("image is not freely reduced at position {}", letters.len() - 1)));
            }
            letters.push(l);
        }
        Ok(Word::from_letters(letters))
    }
}

struct Block {
    name: String,
    line: usize,
    images: Vec<Option<Word>>,
}

/// Parses a file with one or more map blocks.
pub fn parse(text: &str) -> Result<InstanceFile, ParseError> {
    let mut p = Parser { line: 0 };
    let mut mode = None;
    let mut sigma: Option<Alphabet> = None;
    let mut delta: Option<Alphabet> = None;
    let mut blocks: Vec<Block> = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        p.line = i + 1;
        last_line = p.line;
        let content = raw.trim_end_matches('\r');
        let content = content.split('#').next().unwrap_or("");
        let toks = tokens(content);
        let Some(&(col, head)) = toks.first() else { continue };
        let rest = &toks[1..];
        match head {
            "mode" => {
                if mode.is_some() {
                    return Err(p.err(col, "duplicate `mode` line"));
                }
                mode = Some(match rest {
                    [(_, "monoid")] => Mode::Monoid,
                    [(_, "group")] => Mode::Group,
                    [(c, other), ..] => return Err(p.err(*c, format!("unknown mode `{other}`"))),
                    [] => return Err(p.err(col, "`mode` needs `monoid` or `group`")),
                });
                if rest.len() > 1 {
                    return Err(p.err(rest[1].0, "unexpected token after the mode"));
                }
            }
            "sigma" | "delta" => {
                let m = mode.ok_or_else(|| p.err(col, "`mode` must come first"))?;
                let slot = if head == "sigma" { &mut sigma } else { &mut delta };
                if slot.is_some() {
                    return Err(p.err(col, format!("duplicate `{head}` line")));
                }
                if head == "delta" && sigma.is_none() {
                    return Err(p.err(col, "`sigma` must come before `delta`"));
                }
                let a = p.alphabet(m, rest)?;
                if head == "sigma" {
                    sigma = Some(a)
                } else {
                    delta = Some(a)
                }
            }
            "map" => {
                if delta.is_none() {
                    return Err(p.err(col, "`mode`, `sigma` and `delta` must come before the first map"));
                }
                let [(ncol, name)] = rest else {
                    return Err(p.err(col, "`map` needs exactly one name"));
                };
                Alphabet::new(Mode::Monoid, &[*name]).map_err(|e| p.err(*ncol, e.to_string()))?;
                if blocks.iter().any(|b| b.name == *name) {
                    return Err(p.err(*ncol, format!("duplicate map `{name}`")));
                }
                let n = sigma.as_ref().map_or(0, Alphabet::len);
                blocks.push(Block { name: name.to_string(), line: p.line, images: vec![None; n] });
            }
            _ => {
                let block =
                    blocks.last_mut().ok_or_else(|| p.err(col, format!("unexpected `{head}` outside a map block")))?;
                let sigma = sigma.as_ref().expect("maps come after sigma");
                let delta = delta.as_ref().expect("maps come after delta");
                let Some(&(_, "=")) = rest.first() else {
                    return Err(p.err(rest.first().map_or(col + head.chars().count(), |t| t.0), "expected `=`"));
                };
                let g = sigma.index_of(head).ok_or_else(|| p.err(col, format!("unknown symbol `{head}`")))?;
                if block.images[g as usize].is_some() {
                    return Err(p.err(col, format!("duplicate mapping for `{head}` in map `{}`", block.name)));
                }
                let w = if rest.len() == 1 { Word::empty() } else { p.word(delta, &rest[1..])? };
                block.images[g as usize] = Some(w);
            }
        }
    }
    p.line = last_line.max(1);
    let (Some(mode), Some(sigma), Some(delta)) = (mode, sigma, delta) else {
        return Err(p.err(1, "missing `mode`, `sigma` or `delta` line"));
    };
    if blocks.is_empty() {
        return Err(p.err(1, "no `map` block"));
    }
    let mut maps = Vec::with_capacity(blocks.len());
    for b in blocks {
        let mut images = Vec::with_capacity(b.images.len());
        for (g, w) in b.images.into_iter().enumerate() {
            match w {
                Some(w) => images.push(w),
                None => {
                    return Err(ParseError {
                        line: b.line,
                        column: 1,
                        message: format!("map `{}` has no mapping for `{}`", b.name, sigma.symbol(g as u32)),
                    })
                }
            }
        }
        let f = Morphism::new(sigma.clone(), delta.clone(), images).map_err(|e| ParseError {
            line: b.line,
            column: 1,
            message: e.to_string(),
        })?;
        maps.push((b.name, f));
    }
    Ok(InstanceFile { mode, sigma, delta, maps })
}

fn symbols_line(out: &mut String, head: &str, a: &Alphabet) {
    out.push_str(head);
    for s in a.symbols() {
        out.push(' ');
        out.push_str(s);
    }
    out.push('\n');
}

/// Canonical text of a file; `parse` inverts it.
pub fn write_instance(file: &InstanceFile) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "mode {}", file.mode);
    symbols_line(&mut out, "sigma", &file.sigma);
    symbols_line(&mut out, "delta", &file.delta);
    for (name, f) in &file.maps {
        let _ = writeln!(out, "\nmap {name}");
        for (g, w) in f.images().iter().enumerate() {
            let _ = writeln!(out, "{} = {}", file.sigma.symbol(g as u32), file.delta.format_word(w));
        }
    }
    out
}

/// `case`, `basis` and one `<generator> = <word over Σ>` line per basis
/// element, in the generator order of `psi`.
pub fn write_result(result: &EqualiserResult) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "case {}", result.case);
    let _ = writeln!(out, "basis {}", result.basis.len());
    let (names, sigma) = (result.psi.domain(), result.psi.codomain());
    for (g, w) in result.basis.iter().enumerate() {
        let _ = writeln!(out, "{} = {}", names.symbol(g as u32), sigma.format_word(w));
    }
    out
}

/// `psi` as a single-map file named `psi`.
pub fn result_as_file(result: &EqualiserResult) -> InstanceFile {
    let psi = &result.psi;
    InstanceFile {
        mode: psi.mode(),
        sigma: psi.domain().clone(),
        delta: psi.codomain().clone(),
        maps: vec![("psi".into(), psi.clone())],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "mode group\nsigma a b c\ndelta x y z\nmap g\na = x y x x\nb = y^-1\nc = z x z\nmap h\na = x\nb = y x x y\nc = z\n";

    #[test]
    fn tokens_carry_columns() {
        assert_eq!(tokens("  a = x^-1"), [(3, "a"), (5, "="), (7, "x^-1")]);
        assert!(tokens("   ").is_empty());
    }

    #[test]
    fn parses_example() {
        let f = parse(EXAMPLE).unwrap();
        assert_eq!(f.mode, Mode::Group);
        assert_eq!(f.maps.len(), 2);
        assert_eq!(f.maps[1].0, "h");
        assert_eq!(f.delta.format_word(f.maps[0].1.image(1)), "y^-1");
        assert_eq!(parse(&write_instance(&f)).unwrap(), f);
    }

    #[test]
    fn crlf_comments_and_blank_lines() {
        let text = EXAMPLE.replace('\n', "\r\n").replace("map h", "# second map\r\n\r\nmap h   # h");
        assert_eq!(parse(&text).unwrap(), parse(EXAMPLE).unwrap());
    }

    #[test]
    fn empty_images() {
        let f = parse("mode monoid\nsigma a\ndelta x\nmap g\na = eps\nmap h\na =\n").unwrap();
        assert!(f.maps.iter().all(|(_, m)| m.image(0).is_empty()));
    }
}
