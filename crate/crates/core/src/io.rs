//! Extension, section and morphism files.
//!
//! These files are sequences of blocks. A line starting with a keyword opens
//! a block; words after the keyword are its arguments and the integers on the
//! following lines are its values. `#` starts a comment.
//!
//! Extension file:
//!
//! ```text
//! G tables/g24b.tbl   # table path or builtin name
//! K K8
//! beta
//! 0 1 2 3 4 5 6 7 0 1 ...
//! section             # optional
//! 0 1 2 3 4 5 6 7
//! ```
//!
//! Morphism file: blocks `lambda`, `mu` and `nu`.

use std::path::{Path, PathBuf};

use crate::builtin::builtin_finite;
use crate::error::{GyroError, Result};
use crate::extension::{Extension, Section};
use crate::gyrogroup::FiniteGyrogroup;
use crate::morphism::ExtensionMorphism;
use crate::table::CayleyTable;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub keyword: String,
    pub args: Vec<String>,
    pub values: Vec<usize>,
}

pub fn parse_blocks(text: &str) -> Result<Vec<Block>> {
    let mut blocks: Vec<Block> = Vec::new();
    for line in text.lines() {
        let body = line.split('#').next().unwrap_or("").trim();
        let mut words = body.split_whitespace().peekable();
        let Some(first) = words.peek().copied() else {
            continue;
        };
        if first
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic())
        {
            words.next();
            blocks.push(Block {
                keyword: first.to_string(),
                args: words.map(str::to_string).collect(),
                values: Vec::new(),
            });
            continue;
        }
        let block = blocks
            .last_mut()
            .ok_or_else(|| GyroError::Parse(format!("values before any keyword: `{body}`")))?;
        for w in words {
            block.values.push(
                w.parse()
                    .map_err(|_| GyroError::Parse(format!("not a non-negative integer: `{w}`")))?,
            );
        }
    }
    Ok(blocks)
}

fn find<'a>(blocks: &'a [Block], keyword: &str) -> Option<&'a Block> {
    blocks
        .iter()
        .find(|b| b.keyword.eq_ignore_ascii_case(keyword))
}

fn require<'a>(blocks: &'a [Block], keyword: &str) -> Result<&'a Block> {
    find(blocks, keyword).ok_or_else(|| GyroError::Parse(format!("missing `{keyword}` block")))
}

/// A builtin name, or a table file relative to `base`.
pub fn resolve_structure(reference: &str, base: &Path) -> Result<FiniteGyrogroup> {
    if let Ok(g) = builtin_finite(reference) {
        return Ok(g);
    }
    let path: PathBuf = base.join(reference);
    if !path.exists() {
        return Err(GyroError::UnknownBuiltin(reference.into()));
    }
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| reference.to_string());
    FiniteGyrogroup::new(name, CayleyTable::load(&path)?)
}

/// Parses an extension file; `H` is the kernel of `beta`.
pub fn parse_extension(text: &str, base: &Path) -> Result<(Extension, Option<Section>)> {
    let blocks = parse_blocks(text)?;
    let reference = |kw: &str| -> Result<FiniteGyrogroup> {
        let b = require(&blocks, kw)?;
        let r = b.args.first().ok_or_else(|| {
            GyroError::Parse(format!("`{kw}` needs a table path or builtin name"))
        })?;
        resolve_structure(r, base)
    };
    let g = reference("G")?;
    let k = reference("K")?;
    let beta = require(&blocks, "beta")?.values.clone();
    let e = Extension::from_projection(g, k, beta)?;
    let t = find(&blocks, "section")
        .map(|b| Section::new(&e, b.values.clone()))
        .transpose()?;
    Ok((e, t))
}

pub fn load_extension(path: &Path) -> Result<(Extension, Option<Section>)> {
    let text = std::fs::read_to_string(path)?;
    parse_extension(&text, path.parent().unwrap_or(Path::new(".")))
}

pub fn extension_to_text(g_ref: &str, k_ref: &str, e: &Extension, t: Option<&Section>) -> String {
    let line = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    let mut out = format!("G {g_ref}\nK {k_ref}\nbeta\n{}\n", line(e.projection()));
    if let Some(t) = t {
        out += &format!("section\n{}\n", line(t.values()));
    }
    out
}

pub fn parse_section(text: &str, e: &Extension) -> Result<Section> {
    let blocks = parse_blocks(text)?;
    let values = match find(&blocks, "section") {
        Some(b) => b.values.clone(),
        None => crate::table::tokenize(text)?,
    };
    Section::new(e, values)
}

pub fn parse_morphism(text: &str) -> Result<ExtensionMorphism> {
    let blocks = parse_blocks(text)?;
    Ok(ExtensionMorphism {
        lambda: require(&blocks, "lambda")?.values.clone(),
        mu: require(&blocks, "mu")?.values.clone(),
        nu: require(&blocks, "nu")?.values.clone(),
    })
}

pub fn morphism_to_text(m: &ExtensionMorphism) -> String {
    let line = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    format!(
        "lambda\n{}\nmu\n{}\nnu\n{}\n",
        line(&m.lambda),
        line(&m.mu),
        line(&m.nu)
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::builtin_extension;

    #[test]
    fn blocks() {
        let b = parse_blocks("# c\nG K8 extra\nbeta\n0 1\n2 3 # tail\n").unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b[0].args, vec!["K8", "extra"]);
        assert_eq!(b[1].values, vec![0, 1, 2, 3]);
        assert!(parse_blocks("1 2\n").is_err());
        assert!(parse_blocks("beta\n1 -2\n").is_err());
    }

    #[test]
    fn extension_round_trip() {
        let (e, t) = builtin_extension("G24b").unwrap();
        let text = extension_to_text("G24b", "K8", &e, Some(&t));
        let (back, s) = parse_extension(&text, Path::new(".")).unwrap();
        assert_eq!(back.projection(), e.projection());
        assert_eq!(back.inclusion(), e.inclusion());
        assert_eq!(s.unwrap(), t);
        assert!(parse_extension("G G24b\nbeta\n0\n", Path::new(".")).is_err());
    }

    #[test]
    fn morphism_round_trip() {
        let (e, _) = builtin_extension("G24a").unwrap();
        let m = ExtensionMorphism::identity(&e);
        assert_eq!(parse_morphism(&morphism_to_text(&m)).unwrap(), m);
        assert!(parse_morphism("lambda\n0\n").is_err());
    }
}
