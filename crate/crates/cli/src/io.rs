//! Plain-text set and function files.
//!
//! Both start with a header line "p n". A set file then lists one element
//! per line; a function file lists exactly p^n lines "x f(x)". An element is
//! written as its n coordinates x_1 … x_n in order, as a run of digits when
//! p ≤ 10 and comma-separated otherwise. '#' starts a comment.

use std::fs;
use std::path::Path;

use additive_lab::lintest::FnTable;
use additive_lab::{FpSet, GroupCtx};

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
}

fn fmt_err<T>(line: usize, message: impl Into<String>) -> Result<T, FileError> {
    Err(FileError::Format {
        line,
        message: message.into(),
    })
}

/// Non-blank lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_header(line: usize, s: &str) -> Result<GroupCtx, FileError> {
    let parts: Vec<&str> = s.split_whitespace().collect();
    if parts.len() != 2 {
        return fmt_err(line, "header must be \"p n\"");
    }
    let p: u64 = parts[0].parse().or_else(|_| fmt_err(line, format!("bad p {:?}", parts[0])))?;
    let n: u32 = parts[1].parse().or_else(|_| fmt_err(line, format!("bad n {:?}", parts[1])))?;
    GroupCtx::new(p, n).or_else(|e| fmt_err(line, e.to_string()))
}

fn parse_element(ctx: GroupCtx, line: usize, tok: &str) -> Result<usize, FileError> {
    let digits: Vec<&str> = if tok.contains(',') {
        tok.split(',').collect()
    } else {
        tok.char_indices().map(|(i, c)| &tok[i..i + c.len_utf8()]).collect()
    };
    if digits.len() != ctx.dim() {
        return fmt_err(line, format!("expected {} digits, found {}", ctx.dim(), digits.len()));
    }
    let mut d = Vec::with_capacity(ctx.dim());
    for s in digits {
        match s.trim().parse::<u32>() {
            Ok(v) if v < ctx.p() => d.push(v),
            Ok(v) => return fmt_err(line, format!("digit {v} out of range for p = {}", ctx.p())),
            Err(_) => return fmt_err(line, format!("bad digit {s:?}")),
        }
    }
    Ok(ctx.index_of(&d))
}

fn format_element(ctx: GroupCtx, idx: usize) -> String {
    let d = ctx.digits(idx);
    if ctx.p() <= 10 {
        d.iter().map(|v| char::from(b'0' + *v as u8)).collect()
    } else {
        d.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    }
}

pub fn parse_set(text: &str) -> Result<FpSet, FileError> {
    let mut lines = content_lines(text);
    let Some((hl, h)) = lines.next() else {
        return fmt_err(1, "missing header");
    };
    let ctx = parse_header(hl, h)?;
    let mut set = FpSet::empty(ctx);
    for (line, s) in lines {
        let toks: Vec<&str> = s.split_whitespace().collect();
        if toks.len() != 1 {
            return fmt_err(line, "expected one element per line");
        }
        set.insert(parse_element(ctx, line, toks[0])?);
    }
    Ok(set)
}

pub fn format_set(set: &FpSet) -> String {
    let ctx = set.ctx();
    let mut out = format!("{} {}\n", ctx.p(), ctx.n());
    for x in set.iter() {
        out.push_str(&format_element(ctx, x));
        out.push('\n');
    }
    out
}

pub fn parse_fn(text: &str) -> Result<FnTable, FileError> {
    let mut lines = content_lines(text);
    let Some((hl, h)) = lines.next() else {
        return fmt_err(1, "missing header");
    };
    let ctx = parse_header(hl, h)?;
    let mut table: Vec<Option<usize>> = vec![None; ctx.order()];
    let mut last = hl;
    for (line, s) in lines {
        last = line;
        let toks: Vec<&str> = s.split_whitespace().collect();
        if toks.len() != 2 {
            return fmt_err(line, "expected \"x f(x)\"");
        }
        let x = parse_element(ctx, line, toks[0])?;
        let y = parse_element(ctx, line, toks[1])?;
        if table[x].replace(y).is_some() {
            return fmt_err(line, "duplicate entry");
        }
    }
    let missing = table.iter().filter(|v| v.is_none()).count();
    if missing > 0 {
        return fmt_err(last, format!("missing entries: {missing} of {} points have no value", ctx.order()));
    }
    FnTable::new(ctx, table.into_iter().map(|v| v.unwrap()).collect())
        .or_else(|e| fmt_err(last, e.to_string()))
}

pub fn format_fn(f: &FnTable) -> String {
    let ctx = f.ctx();
    let mut out = format!("{} {}\n", ctx.p(), ctx.n());
    for x in 0..ctx.order() {
        out.push_str(&format_element(ctx, x));
        out.push(' ');
        out.push_str(&format_element(ctx, f.at(x)));
        out.push('\n');
    }
    out
}

fn read(path: &Path) -> Result<String, FileError> {
    fs::read_to_string(path).map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), FileError> {
    fs::write(path, text).map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_set(path: &Path) -> Result<FpSet, FileError> {
    parse_set(&read(path)?)
}

pub fn save_set(set: &FpSet, path: &Path) -> Result<(), FileError> {
    write(path, &format_set(set))
}

pub fn load_fn(path: &Path) -> Result<FnTable, FileError> {
    parse_fn(&read(path)?)
}

pub fn save_fn(f: &FnTable, path: &Path) -> Result<(), FileError> {
    write(path, &format_fn(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use additive_lab::{instances, rng};

    #[test]
    fn set_format_example() {
        let s = parse_set("2 3\n000\n100\n").unwrap();
        let c = s.ctx();
        assert_eq!((c.p(), c.n()), (2, 3));
        assert_eq!(s.to_vec(), vec![0, c.unit(0).index()]);
    }

    #[test]
    fn comments_and_errors_carry_line_numbers() {
        let s = parse_set("# header next\n3 2\n\n21 # trailing\n").unwrap();
        assert_eq!(s.len(), 1);
        let e = parse_set("3 2\n21\n31\n").unwrap_err().to_string();
        assert!(e.starts_with("line 3:") && e.contains("out of range"), "{e}");
        let e = parse_set("3 2\n2\n").unwrap_err().to_string();
        assert!(e.starts_with("line 2:"), "{e}");
        assert!(parse_set("4 2\n").is_err());
        assert!(parse_set("").is_err());
    }

    #[test]
    fn set_roundtrip() {
        let mut r = rng::stream(10, 0);
        for (p, n) in [(2u64, 5u32), (3, 3), (13, 2), (5, 1)] {
            let c = GroupCtx::new(p, n).unwrap();
            for _ in 0..25 {
                let s = instances::random_nonempty_set(c, &mut r);
                assert_eq!(parse_set(&format_set(&s)).unwrap(), s);
            }
        }
    }

    #[test]
    fn fn_roundtrip_and_totality() {
        let c = GroupCtx::new(3, 2).unwrap();
        let f = FnTable::random(c, &mut rng::stream(1, 1));
        let text = format_fn(&f);
        assert_eq!(parse_fn(&text).unwrap(), f);
        let short: String = text.lines().take(c.order()).map(|l| format!("{l}\n")).collect();
        let e = parse_fn(&short).unwrap_err().to_string();
        assert!(e.contains("missing entries"), "{e}");
        let dup = format!("{text}00 00\n");
        assert!(parse_fn(&dup).unwrap_err().to_string().contains("duplicate"));
    }

    #[test]
    fn files_on_disk() {
        let dir = tempfile::tempdir().unwrap();
        let c = GroupCtx::new(2, 4).unwrap();
        let s = instances::random_set(c, 5, &mut rng::stream(2, 0));
        let path = dir.path().join("a.set");
        save_set(&s, &path).unwrap();
        assert_eq!(load_set(&path).unwrap(), s);
        let f = FnTable::random(c, &mut rng::stream(2, 1));
        let path = dir.path().join("f.fn");
        save_fn(&f, &path).unwrap();
        assert_eq!(load_fn(&path).unwrap(), f);
        assert!(matches!(load_set(&dir.path().join("none")), Err(FileError::Io { .. })));
    }
}
