//! Plain-text formats for generator matrices and block families.
//!
//! Generator file: a header line `q n k`, then `k` rows of `n` symbols.
//! Block file: a header line `q n w B`, then `B` rows of `n` symbols.
//! Symbols are field element indices. Blank lines and lines starting with
//! `#` are ignored.

use std::path::Path;

use crate::code::{LinearCode, RankMode};
use crate::design::BlockFamily;
use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines { inner: text.lines().enumerate() }
    }

    /// Next meaningful line as (1-based line number, integers).
    fn next_ints(&mut self, what: &str) -> Result<(usize, Vec<u64>)> {
        for (i, line) in self.inner.by_ref() {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let nums = t
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<u64>().map_err(|_| Error::Parse {
                        line: i + 1,
                        message: format!("{tok:?} is not a non-negative integer"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok((i + 1, nums));
        }
        Err(Error::Parse {
            line: 0,
            message: format!("unexpected end of input while reading {what}"),
        })
    }

    fn expect_end(&mut self) -> Result<()> {
        for (i, line) in self.inner.by_ref() {
            let t = line.trim();
            if !t.is_empty() && !t.starts_with('#') {
                return Err(Error::Parse {
                    line: i + 1,
                    message: "trailing data after the declared rows".into(),
                });
            }
        }
        Ok(())
    }
}

fn header(lines: &mut Lines, fields: &[&str]) -> Result<(usize, Vec<u64>)> {
    let (line, h) = lines.next_ints("the header")?;
    if h.len() != fields.len() {
        return Err(Error::Parse {
            line,
            message: format!("header must be `{}`", fields.join(" ")),
        });
    }
    Ok((line, h))
}

fn row(lines: &mut Lines, n: usize, q: u64, what: &str) -> Result<(usize, Vec<Elem>)> {
    let (line, r) = lines.next_ints(what)?;
    if r.len() != n {
        return Err(Error::Parse {
            line,
            message: format!("expected {n} symbols, found {}", r.len()),
        });
    }
    if let Some(&x) = r.iter().find(|&&x| x >= q) {
        return Err(Error::Parse {
            line,
            message: format!("symbol {x} is outside [0, {q})"),
        });
    }
    Ok((line, r.into_iter().map(|x| x as Elem).collect()))
}

fn field(q: u64, line: usize) -> Result<std::sync::Arc<FieldSpec>> {
    u32::try_from(q)
        .ok()
        .and_then(|q| FieldSpec::shared(q).ok())
        .ok_or_else(|| Error::Parse {
            line,
            message: format!("q = {q} is not a supported prime power"),
        })
}

pub fn parse_generator(text: &str) -> Result<LinearCode> {
    let mut lines = Lines::new(text);
    let (hl, h) = header(&mut lines, &["q", "n", "k"])?;
    let (q, n, k) = (h[0], h[1] as usize, h[2] as usize);
    let f = field(q, hl)?;
    if n == 0 || k == 0 || k > n {
        return Err(Error::Parse {
            line: hl,
            message: format!("need 1 <= k <= n, got n = {n}, k = {k}"),
        });
    }
    let rows = (0..k)
        .map(|i| row(&mut lines, n, q, &format!("generator row {}", i + 1)).map(|r| r.1))
        .collect::<Result<Vec<_>>>()?;
    lines.expect_end()?;
    LinearCode::from_generator(f, rows, RankMode::Strict)
}

pub fn write_generator(code: &LinearCode) -> String {
    let mut s = format!("{} {} {}\n", code.q(), code.n(), code.k());
    for r in code.generator() {
        s.push_str(&join(r));
        s.push('\n');
    }
    s
}

pub fn parse_blocks(text: &str) -> Result<BlockFamily> {
    let mut lines = Lines::new(text);
    let (hl, h) = header(&mut lines, &["q", "n", "w", "B"])?;
    let (q, n, w, b) = (h[0], h[1] as usize, h[2] as usize, h[3] as usize);
    field(q, hl)?;
    if n == 0 || w > n {
        return Err(Error::Parse {
            line: hl,
            message: format!("need w <= n and n >= 1, got n = {n}, w = {w}"),
        });
    }
    let mut flat = Vec::with_capacity(n * b);
    for i in 0..b {
        let (line, r) = row(&mut lines, n, q, &format!("block {}", i + 1))?;
        let wt = r.iter().filter(|&&x| x != 0).count();
        if wt != w {
            return Err(Error::Parse {
                line,
                message: format!("block {} has weight {wt}, header says {w}", i + 1),
            });
        }
        flat.extend(r);
    }
    lines.expect_end()?;
    BlockFamily::from_flat(q as u32, n, w, flat, "block file")
}

pub fn write_blocks(f: &BlockFamily) -> String {
    let mut s = format!("{} {} {} {}\n", f.q(), f.n(), f.w(), f.len());
    for b in f.iter() {
        s.push_str(&join(b));
        s.push('\n');
    }
    s
}

fn join(r: &[Elem]) -> String {
    r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn read_generator_file(path: &Path) -> Result<LinearCode> {
    let text = std::fs::read_to_string(path)?;
    Ok(parse_generator(&text)?.with_label(path.display().to_string()))
}

pub fn read_blocks_file(path: &Path) -> Result<BlockFamily> {
    parse_blocks(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn generator_round_trip() {
        let text = "3 4 2\n1 0 1 1\n0 1 1 2\n";
        let c = parse_generator(text).unwrap();
        assert_eq!(write_generator(&c), text);
        assert_eq!(parse_generator(&write_generator(&c)).unwrap(), c);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("3 4\n", 1),
            ("3 4 2\n1 0 1 1\n0 1 1\n", 3),
            ("3 4 2\n# comment\n1 0 1 x\n0 1 1 2\n", 3),
            ("3 4 1\n1 0 1 3\n", 2),
            ("6 4 1\n1 0 1 1\n", 1),
            ("3 4 1\n1 0 1 1\n1 1 1 1\n", 3),
        ];
        for (text, line) in cases {
            match parse_generator(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        assert!(matches!(parse_generator("3 2 2\n1 1\n2 2\n"), Err(Error::Rank { .. })));
    }

    #[test]
    fn blocks_round_trip() {
        let text = "4 3 2 2\n1 3 0\n0 2 2\n";
        let f = parse_blocks(text).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(write_blocks(&f), text);
        assert!(parse_blocks("4 3 2 1\n1 1 1\n").is_err());
    }

    proptest! {
        #[test]
        fn random_generators_round_trip(seed in any::<u64>(), q in prop::sample::select(vec![2u32, 3, 4, 5, 8, 9])) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let f = FieldSpec::shared(q).unwrap();
            let n = rng.gen_range(1..10);
            let k = rng.gen_range(1..=n);
            let rows = (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..q) as Elem).collect()).collect();
            if let Ok(c) = LinearCode::from_generator(f, rows, RankMode::Strict) {
                let text = write_generator(&c);
                let back = parse_generator(&text).unwrap();
                prop_assert_eq!(write_generator(&back), text);
                prop_assert_eq!(back, c);
            }
        }
    }
}
