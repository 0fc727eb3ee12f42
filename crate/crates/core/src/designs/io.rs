//! Text formats for resolvable designs and circulant seeds.
//!
//! Design files start with `v b c k lambda` (`k` may be `-` for mixed block
//! sizes) followed by `c` classes, one block per line as space-separated
//! points, with classes separated by a line holding `%`. Seed files use the
//! header `m c` and the same class layout over `Z_m`. `#` starts a comment
//! line.

use std::path::Path;

use crate::error::{Error, Result};

use super::{verify_packing, CirculantSeed, ResolvablePacking};

struct Parsed {
    header: (usize, Vec<String>),
    classes: Vec<Vec<Vec<usize>>>,
}

fn parse_sections(text: &str) -> Result<Parsed> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(0, "missing header line"))?;
    let header_fields = header.split_whitespace().map(str::to_owned).collect();

    let mut classes = vec![Vec::new()];
    for (lno, line) in lines {
        if line == "%" {
            classes.push(Vec::new());
            continue;
        }
        let block = line
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|e| Error::parse(lno, format!("bad point {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        classes.last_mut().expect("at least one class").push(block);
    }
    if classes.last().is_some_and(Vec::is_empty) && classes.len() > 1 {
        classes.pop();
    }
    Ok(Parsed {
        header: (hline, header_fields),
        classes,
    })
}

fn field(line: usize, fields: &[String], i: usize, name: &str) -> Result<usize> {
    let raw = fields
        .get(i)
        .ok_or_else(|| Error::parse(line, format!("header is missing `{name}`")))?;
    raw.parse()
        .map_err(|e| Error::parse(line, format!("bad `{name}` {raw:?}: {e}")))
}

/// Parses and fully verifies a design.
pub fn parse_design(text: &str) -> Result<ResolvablePacking> {
    let Parsed {
        header: (hline, fields),
        classes,
    } = parse_sections(text)?;
    if fields.len() != 5 {
        return Err(Error::parse(hline, "header must be `v b c k lambda`"));
    }
    let v = field(hline, &fields, 0, "v")?;
    let b = field(hline, &fields, 1, "b")?;
    let c = field(hline, &fields, 2, "c")?;
    let k = if fields[3] == "-" {
        None
    } else {
        Some(field(hline, &fields, 3, "k")?)
    };
    let lambda = field(hline, &fields, 4, "lambda")?;

    if classes.len() != c {
        return Err(Error::parse(hline, format!("header declares {c} classes, found {}", classes.len())));
    }
    let blocks: usize = classes.iter().map(Vec::len).sum();
    if blocks != b {
        return Err(Error::parse(hline, format!("header declares {b} blocks, found {blocks}")));
    }
    let packing = ResolvablePacking::from_classes(v, classes)?;
    verify_packing(packing.base(), packing.classes(), k, Some(lambda))?;
    Ok(packing)
}

pub fn parse_design_file(path: impl AsRef<Path>) -> Result<ResolvablePacking> {
    parse_design(&std::fs::read_to_string(path)?)
}

/// Serializes a design; the header's `lambda` is the realized value.
pub fn write_design(p: &ResolvablePacking) -> String {
    let k = p
        .block_size()
        .map_or_else(|| "-".to_owned(), |k| k.to_string());
    let mut out = format!(
        "{} {} {} {} {}\n",
        p.points(),
        p.base().blocks().len(),
        p.classes().len(),
        k,
        p.lambda()
    );
    write_classes(&mut out, (0..p.classes().len()).map(|c| p.class_blocks(c).collect()));
    out
}

fn write_classes<'a>(out: &mut String, classes: impl Iterator<Item = Vec<&'a [usize]>>) {
    for (i, class) in classes.enumerate() {
        if i > 0 {
            out.push_str("%\n");
        }
        for block in class {
            let pts: Vec<String> = block.iter().map(usize::to_string).collect();
            out.push_str(&pts.join(" "));
            out.push('\n');
        }
    }
}

pub fn parse_seed(text: &str) -> Result<CirculantSeed> {
    let Parsed {
        header: (hline, fields),
        classes,
    } = parse_sections(text)?;
    if fields.len() != 2 {
        return Err(Error::parse(hline, "seed header must be `m c`"));
    }
    let m = field(hline, &fields, 0, "m")?;
    let c = field(hline, &fields, 1, "c")?;
    if classes.len() != c {
        return Err(Error::parse(hline, format!("header declares {c} classes, found {}", classes.len())));
    }
    CirculantSeed::new(m, classes)
}

pub fn write_seed(seed: &CirculantSeed) -> String {
    let mut out = format!("{} {}\n", seed.modulus(), seed.base_classes().len());
    write_classes(
        &mut out,
        seed.base_classes()
            .iter()
            .map(|class| class.iter().map(Vec::as_slice).collect()),
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::affine_plane;

    #[test]
    fn design_round_trip() {
        let p = affine_plane(3).unwrap();
        let text = write_design(&p);
        assert!(text.starts_with("9 12 4 3 1\n"));
        assert_eq!(parse_design(&text).unwrap(), p);
    }

    #[test]
    fn repeated_point_in_class_rejected() {
        let text = "4 4 2 2 1\n0 1\n1 2\n%\n0 2\n1 3\n";
        assert!(matches!(parse_design(text), Err(Error::Verification(_))));
    }

    #[test]
    fn header_mismatches_rejected() {
        assert!(parse_design("").is_err());
        assert!(parse_design("4 2 1 2\n0 1\n2 3\n").is_err());
        assert!(parse_design("4 3 1 2 1\n0 1\n2 3\n").is_err());
        assert!(parse_design("4 2 2 2 1\n0 1\n2 3\n").is_err());
        assert!(parse_design("4 2 1 3 1\n0 1\n2 3\n").is_err());
        assert!(matches!(
            parse_design("4 2 1 2 1\n0 x\n2 3\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn declared_lambda_too_small() {
        let text = "4 4 2 2 1\n0 1\n2 3\n%\n0 1\n2 3\n";
        assert!(parse_design(text).is_err());
        let ok = "4 4 2 2 2\n0 1\n2 3\n%\n0 1\n2 3\n";
        assert_eq!(parse_design(ok).unwrap().lambda(), 2);
    }

    #[test]
    fn seed_round_trip() {
        let text = "# z7\n7 3\n0 1 2\n3 6\n4 5\n%\n0 2 4\n5 6\n1 3\n%\n0 1 4\n3 5\n2 6\n";
        let seed = parse_seed(text).unwrap();
        assert_eq!(seed.modulus(), 7);
        assert_eq!(seed.base_classes()[1][2], vec![1, 3]);
        assert_eq!(parse_seed(&write_seed(&seed)).unwrap(), seed);
        assert!(parse_seed("7 2\n0 1 2 3 4 5 6\n").is_err());
    }
}
