//! The `aaut v1` element text format.
//!
//! ```text
//! aaut v1
//! d 2 k 2
//! pair
//! 0 -> 00
//! 10 -> 01
//! 11 -> 1
//! ```

use std::collections::BTreeSet;

use crate::element::{Element, TreePair};
use crate::error::{Error, Result};
use crate::tree::{is_complete, Address, TreeParams};

const HEADER: &str = "aaut v1";

pub fn write_pair(p: &TreePair) -> String {
    let params = p.params();
    let mut out = format!("{HEADER}\nd {} k {}\npair\n", params.d, params.k);
    for (a, b) in p.map() {
        out.push_str(&format!("{a} -> {b}\n"));
    }
    out
}

pub fn write_element(e: &Element) -> String {
    write_pair(e.pair())
}

/// Parses a tree pair exactly as written, without contracting it.
pub fn parse_pair(text: &str) -> Result<TreePair> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let mut next = |what: &str| {
        lines
            .next()
            .ok_or_else(|| Error::format(1, format!("missing {what}")).at_line(text.lines().count() + 1, 0))
    };

    let (n, header) = next("header")?;
    if header.trim_end() != HEADER {
        return Err(Error::format(1, format!("expected '{HEADER}'")).at_line(n, 0));
    }
    let (n, line) = next("parameter line")?;
    let params = parse_params(line).map_err(|e| e.at_line(n, 0))?;
    let (n, line) = next("'pair'")?;
    if line.trim_end() != "pair" {
        return Err(Error::format(1, "expected 'pair'").at_line(n, 0));
    }

    let mut pairs: Vec<(Address, Address)> = Vec::new();
    let mut seen_domain = BTreeSet::new();
    let mut seen_range = BTreeSet::new();
    let mut last_line = n;
    for (n, line) in lines {
        last_line = n;
        if line.trim().is_empty() {
            continue;
        }
        let (a, b) = parse_mapping(line, &params).map_err(|e| e.at_line(n, 0))?;
        if !seen_domain.insert(a.clone()) {
            return Err(Error::format(1, format!("domain not an antichain: duplicate leaf '{a}'")).at_line(n, 0));
        }
        if pairs.last().is_some_and(|(prev, _)| prev > &a) {
            return Err(Error::format(1, format!("domain leaves not sorted shortlex at '{a}'")).at_line(n, 0));
        }
        if !seen_range.insert(b.clone()) {
            return Err(Error::format(1, format!("not a bijection: range leaf '{b}' repeated")).at_line(n, 0));
        }
        pairs.push((a, b));
    }
    if pairs.is_empty() {
        return Err(Error::format(1, "no mappings").at_line(last_line + 1, 0));
    }
    check_side(&pairs.iter().map(|p| p.0.clone()).collect::<Vec<_>>(), &params, "domain")
        .map_err(|e| e.at_line(last_line, 0))?;
    check_side(&pairs.iter().map(|p| p.1.clone()).collect::<Vec<_>>(), &params, "range")
        .map_err(|e| e.at_line(last_line, 0))?;
    TreePair::new(params, pairs)
}

/// Parses and canonicalizes an element.
pub fn parse_element(text: &str) -> Result<Element> {
    Ok(parse_pair(text)?.canonicalize())
}

fn parse_params(line: &str) -> Result<TreeParams> {
    let words: Vec<&str> = line.split_whitespace().collect();
    let [dk, d, kk, k] = words.as_slice() else {
        return Err(Error::format(1, "expected 'd <d> k <k>'"));
    };
    if *dk != "d" || *kk != "k" {
        return Err(Error::format(1, "expected 'd <d> k <k>'"));
    }
    let num = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| Error::format(column_of(line, s), format!("not a number: '{s}'")))
    };
    let (d, k) = (num(d)?, num(k)?);
    TreeParams::new(d, k).map_err(|e| Error::format(1, e.to_string()))
}

fn parse_mapping(line: &str, params: &TreeParams) -> Result<(Address, Address)> {
    let Some(arrow) = line.find("->") else {
        return Err(Error::format(1, "expected '<domain-leaf> -> <range-leaf>'"));
    };
    let leaf = |part: &str, base: usize| -> Result<Address> {
        let word = part.trim();
        if word.is_empty() || word.contains(char::is_whitespace) {
            return Err(Error::format(base + 1, "expected a single non-root leaf"));
        }
        let offset = base + part.find(word).unwrap_or(0);
        Address::parse(word, params).map_err(|e| e.at_line(1, offset))
    };
    let a = leaf(&line[..arrow], 0)?;
    let b = leaf(&line[arrow + 2..], arrow + 2)?;
    Ok((a, b))
}

fn check_side(leaves: &[Address], params: &TreeParams, side: &str) -> Result<()> {
    let set: BTreeSet<&Address> = leaves.iter().collect();
    for l in leaves {
        if let Some(p) = l.proper_prefixes().find(|p| set.contains(p)) {
            return Err(Error::format(1, format!("{side} not an antichain: '{p}' is a prefix of '{l}'")));
        }
    }
    if !is_complete(leaves, params)? {
        return Err(Error::format(1, format!("{side} is not a complete tree")));
    }
    Ok(())
}

fn column_of(line: &str, word: &str) -> usize {
    line.find(word).map_or(1, |i| i + 1)
}
