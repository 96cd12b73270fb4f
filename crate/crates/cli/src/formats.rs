//! Line-oriented text formats: curve descriptions, Hecke tables, eigenvalue
//! maps, modular polynomials and singular-moduli reports.
//!
//! Blank lines and `#` comments are ignored everywhere. Errors carry the
//! 1-based line number of the offending line.

use std::fmt::Write as _;

use modeq_core::eliminate::{SingularModuliReport, SymmetryRelation};
use modeq_core::exactalg::rational::{common_denominator, parse_integer, DisplayRational, ParseRationalError};
use modeq_core::exactalg::{parse_rational, BiPoly, BigRational, RatMatrix, UniPoly};
use modeq_core::heckeforms::{EigenTransferMap, HeckeTable};
use modeq_core::schwarzian::{CurveData, EllipticPoint, PointValue, SchwarzianError};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {kind}")]
pub struct FormatError {
    pub line: usize,
    pub kind: FormatErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatErrorKind {
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("bad number {token:?}: {source}")]
    Number { token: String, source: ParseRationalError },
    #[error("{0:?} is out of range")]
    OutOfRange(String),
    #[error("unknown key {0:?}")]
    UnknownKey(String),
    #[error("key {0:?} given twice")]
    DuplicateKey(String),
    #[error("missing {0}")]
    Missing(&'static str),
    #[error(transparent)]
    Curve(#[from] SchwarzianError),
    #[error("weight {weight}: row has {found} entries, expected {expected}")]
    RowLength { weight: u32, expected: usize, found: usize },
    #[error("weight {weight}: {rows} rows for a matrix with {columns} columns")]
    NotSquare { weight: u32, rows: usize, columns: usize },
    #[error("weight {0} appears twice")]
    DuplicateWeight(u32),
    #[error("denominator must be positive")]
    BadDenominator,
    #[error("term x^{i} y^{j} is out of (j, i) order")]
    OutOfOrder { i: usize, j: usize },
    #[error("zero coefficient listed")]
    ZeroCoefficient,
    #[error("header declares degrees ({declared_x}, {declared_y}) but the terms give ({found_x}, {found_y})")]
    DegreeMismatch { declared_x: usize, declared_y: usize, found_x: usize, found_y: usize },
}

fn err(line: usize, kind: FormatErrorKind) -> FormatError {
    FormatError { line, kind }
}

/// Significant lines with their 1-based numbers, comments stripped.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn rational(token: &str, line: usize) -> Result<BigRational, FormatError> {
    parse_rational(token).map_err(|source| err(line, FormatErrorKind::Number { token: token.to_string(), source }))
}

fn integer(token: &str, line: usize) -> Result<BigInt, FormatError> {
    parse_integer(token).map_err(|source| err(line, FormatErrorKind::Number { token: token.to_string(), source }))
}

fn small<T: TryFrom<BigInt>>(token: &str, line: usize) -> Result<T, FormatError> {
    T::try_from(integer(token, line)?).map_err(|_| err(line, FormatErrorKind::OutOfRange(token.to_string())))
}

/// Splits `key=value`.
fn key_value(token: &str, line: usize) -> Result<(&str, &str), FormatError> {
    token.split_once('=').ok_or_else(|| err(line, FormatErrorKind::Expected("key=value")))
}

/// Expects `keyword value` at the start of `words`.
fn keyword<'a>(words: &mut impl Iterator<Item = &'a str>, key: &'static str, line: usize) -> Result<&'a str, FormatError> {
    if words.next() != Some(key) {
        return Err(err(line, FormatErrorKind::Expected(key)));
    }
    words.next().ok_or_else(|| err(line, FormatErrorKind::Missing(key)))
}

fn no_trailing<'a>(mut words: impl Iterator<Item = &'a str>, line: usize) -> Result<(), FormatError> {
    match words.next() {
        None => Ok(()),
        Some(w) => Err(err(line, FormatErrorKind::UnknownKey(w.to_string()))),
    }
}

fn parse_point(body: &str, line: usize) -> Result<EllipticPoint, FormatError> {
    let (mut a, mut e, mut b, mut disc) = (None, None, None, None);
    for token in body.split_whitespace() {
        let (k, v) = key_value(token, line)?;
        let taken = match k {
            "a" => {
                let value = if v == "inf" { PointValue::Infinity } else { PointValue::Finite(rational(v, line)?) };
                a.replace(value).is_some()
            }
            "e" => e.replace(small::<u32>(v, line)?).is_some(),
            "B" => b.replace(rational(v, line)?).is_some(),
            "disc" => disc.replace(small::<i64>(v, line)?).is_some(),
            _ => return Err(err(line, FormatErrorKind::UnknownKey(k.to_string()))),
        };
        if taken {
            return Err(err(line, FormatErrorKind::DuplicateKey(k.to_string())));
        }
    }
    let value = a.ok_or_else(|| err(line, FormatErrorKind::Missing("a=")))?;
    let order = e.ok_or_else(|| err(line, FormatErrorKind::Missing("e=")))?;
    Ok(EllipticPoint { value, order, accessory: b, disc })
}

/// Parses a curve file. Structural checks run as each point is read, so a
/// bad point is reported on its own line.
pub fn parse_curve(text: &str) -> Result<CurveData, FormatError> {
    let mut it = lines(text);
    match it.next() {
        Some((_, "[curve]")) => {}
        Some((line, _)) => return Err(err(line, FormatErrorKind::Expected("[curve]"))),
        None => return Err(err(1, FormatErrorKind::Expected("[curve]"))),
    }
    let mut name: Option<String> = None;
    let mut discriminant: Option<u64> = None;
    let mut points = Vec::new();
    let mut last_line = 1;
    for (line, l) in it {
        last_line = line;
        if let Some(body) = l.strip_prefix("point ") {
            points.push(parse_point(body, line)?);
            CurveData::new("", points.clone()).map_err(|e| err(line, e.into()))?;
            continue;
        }
        let (k, v) = key_value(l, line)?;
        match k.trim() {
            "name" if name.is_none() => name = Some(v.trim().to_string()),
            "discriminant" if discriminant.is_none() => discriminant = Some(small(v.trim(), line)?),
            "name" | "discriminant" => return Err(err(line, FormatErrorKind::DuplicateKey(k.to_string()))),
            _ => return Err(err(line, FormatErrorKind::UnknownKey(k.to_string()))),
        }
    }
    let name = name.ok_or_else(|| err(last_line, FormatErrorKind::Missing("name=")))?;
    if points.is_empty() {
        return Err(err(last_line, FormatErrorKind::Missing("point lines")));
    }
    let curve = CurveData::new(name, points).map_err(|e| err(last_line, e.into()))?;
    Ok(match discriminant {
        Some(d) => curve.with_discriminant(d),
        None => curve,
    })
}

pub fn write_curve(curve: &CurveData) -> String {
    let mut out = String::from("[curve]\n");
    let _ = writeln!(out, "name={}", curve.name);
    if let Some(d) = curve.discriminant {
        let _ = writeln!(out, "discriminant={d}");
    }
    for p in curve.points() {
        let _ = write!(out, "point a={} e={}", p.value, p.order);
        if let Some(b) = &p.accessory {
            let _ = write!(out, " B={}", DisplayRational(b));
        }
        if let Some(d) = p.disc {
            let _ = write!(out, " disc={d}");
        }
        out.push('\n');
    }
    out
}

/// Parses a Hecke table. Matrix sides are checked for squareness here and
/// against the curve's dimensions by [`HeckeTable::validate`].
pub fn parse_hecke_table(text: &str) -> Result<HeckeTable, FormatError> {
    let mut it = lines(text).peekable();
    let (line, header) = it.next().ok_or_else(|| err(1, FormatErrorKind::Expected("prime <p>")))?;
    let mut words = header.split_whitespace();
    let prime: u64 = small(keyword(&mut words, "prime", line)?, line)?;
    no_trailing(words, line)?;
    let mut table = HeckeTable::new(prime);
    while let Some((line, l)) = it.next() {
        let mut words = l.split_whitespace();
        let k: u32 = small(keyword(&mut words, "weight", line)?, line)?;
        no_trailing(words, line)?;
        if table.get(k).is_ok() {
            return Err(err(line, FormatErrorKind::DuplicateWeight(k)));
        }
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        while let Some(&(row_line, row)) = it.peek() {
            if row.starts_with("weight") {
                break;
            }
            it.next();
            let entries = row.split_whitespace().map(|t| rational(t, row_line)).collect::<Result<Vec<_>, _>>()?;
            if let Some(first) = rows.first() {
                if entries.len() != first.len() {
                    return Err(err(
                        row_line,
                        FormatErrorKind::RowLength { weight: k, expected: first.len(), found: entries.len() },
                    ));
                }
            }
            rows.push(entries);
        }
        let columns = rows.first().map_or(0, Vec::len);
        if rows.len() != columns || columns == 0 {
            return Err(err(line, FormatErrorKind::NotSquare { weight: k, rows: rows.len(), columns }));
        }
        table.insert(k, RatMatrix::from_rows(rows).expect("square"));
    }
    Ok(table)
}

pub fn write_hecke_table(table: &HeckeTable) -> String {
    let mut out = format!("prime {}\n", table.prime());
    for (k, m) in table.iter() {
        let _ = writeln!(out, "\nweight {k}");
        for row in m.rows() {
            let cells: Vec<String> = row.iter().map(|c| DisplayRational(c).to_string()).collect();
            let _ = writeln!(out, "{}", cells.join(" "));
        }
    }
    out
}

/// Parses an eigenvalue-map file: `g_k(a) = (c_0 + c_1 a + …)/den`.
pub fn parse_eigenmap(text: &str) -> Result<EigenTransferMap, FormatError> {
    let mut it = lines(text);
    let (line, header) = it.next().ok_or_else(|| err(1, FormatErrorKind::Expected("base <p0> target <p>")))?;
    let mut words = header.split_whitespace();
    let base: u64 = small(keyword(&mut words, "base", line)?, line)?;
    let target: u64 = small(keyword(&mut words, "target", line)?, line)?;
    no_trailing(words, line)?;
    let mut map = EigenTransferMap::new(base, target);
    for (line, l) in it {
        let mut words = l.split_whitespace();
        let k: u32 = small(keyword(&mut words, "weight", line)?, line)?;
        let den = rational(keyword(&mut words, "den", line)?, line)?;
        if den <= BigRational::zero() {
            return Err(err(line, FormatErrorKind::BadDenominator));
        }
        if words.next() != Some("coeffs") {
            return Err(err(line, FormatErrorKind::Expected("coeffs")));
        }
        let coeffs = words.map(|t| rational(t, line)).collect::<Result<Vec<_>, _>>()?;
        if coeffs.is_empty() {
            return Err(err(line, FormatErrorKind::Missing("coefficients")));
        }
        if map.get(k).is_ok() {
            return Err(err(line, FormatErrorKind::DuplicateWeight(k)));
        }
        map.insert(k, UniPoly::new(coeffs, 'a').scale(&den.recip()));
    }
    Ok(map)
}

pub fn write_eigenmap(map: &EigenTransferMap) -> String {
    let mut out = format!("base {} target {}\n", map.base(), map.target());
    for (k, g) in map.iter() {
        let den = common_denominator(g.coeffs());
        let d = BigRational::from_integer(den.clone());
        let coeffs: Vec<String> = if g.is_zero() {
            vec!["0".to_string()]
        } else {
            g.coeffs().iter().map(|c| DisplayRational(&(c * &d)).to_string()).collect()
        };
        let _ = writeln!(out, "weight {k} den {den} coeffs {}", coeffs.join(" "));
    }
    out
}

/// A modular polynomial as stored on disk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiFile {
    pub prime: u64,
    pub curve: String,
    pub phi: BiPoly,
}

pub const PHI_VARS: (char, char) = ('x', 'y');

pub fn parse_phi(text: &str) -> Result<PhiFile, FormatError> {
    let mut it = lines(text);
    let (line, header) = it.next().ok_or_else(|| err(1, FormatErrorKind::Expected("PHI header")))?;
    let mut words = header.split_whitespace();
    if words.next() != Some("PHI") {
        return Err(err(line, FormatErrorKind::Expected("PHI header")));
    }
    let (mut prime, mut curve, mut degx, mut degy) = (None, None, None, None);
    for token in words {
        let (k, v) = key_value(token, line)?;
        let taken = match k {
            "p" => prime.replace(small::<u64>(v, line)?).is_some(),
            "curve" => curve.replace(v.to_string()).is_some(),
            "degx" => degx.replace(small::<usize>(v, line)?).is_some(),
            "degy" => degy.replace(small::<usize>(v, line)?).is_some(),
            _ => return Err(err(line, FormatErrorKind::UnknownKey(k.to_string()))),
        };
        if taken {
            return Err(err(line, FormatErrorKind::DuplicateKey(k.to_string())));
        }
    }
    let prime = prime.ok_or_else(|| err(line, FormatErrorKind::Missing("p=")))?;
    let curve = curve.ok_or_else(|| err(line, FormatErrorKind::Missing("curve=")))?;
    let declared_x = degx.ok_or_else(|| err(line, FormatErrorKind::Missing("degx=")))?;
    let declared_y = degy.ok_or_else(|| err(line, FormatErrorKind::Missing("degy=")))?;
    let mut phi = BiPoly::zero(PHI_VARS);
    let mut previous: Option<(usize, usize)> = None;
    let mut last_line = line;
    for (line, l) in it {
        last_line = line;
        let mut words = l.split_whitespace();
        let mut next = |what: &'static str| words.next().ok_or_else(|| err(line, FormatErrorKind::Missing(what)));
        let i: usize = small(next("exponent of x")?, line)?;
        let j: usize = small(next("exponent of y")?, line)?;
        let c = rational(next("coefficient")?, line)?;
        no_trailing(words, line)?;
        if previous.is_some_and(|p| p >= (j, i)) {
            return Err(err(line, FormatErrorKind::OutOfOrder { i, j }));
        }
        if c.is_zero() {
            return Err(err(line, FormatErrorKind::ZeroCoefficient));
        }
        previous = Some((j, i));
        phi.add_term((i, j), c);
    }
    let (found_x, found_y) = (phi.degree_first().unwrap_or(0), phi.degree_second().unwrap_or(0));
    if (found_x, found_y) != (declared_x, declared_y) {
        return Err(err(last_line, FormatErrorKind::DegreeMismatch { declared_x, declared_y, found_x, found_y }));
    }
    Ok(PhiFile { prime, curve, phi })
}

pub fn write_phi(file: &PhiFile) -> String {
    let phi = &file.phi;
    let mut out = format!(
        "PHI p={} curve={} degx={} degy={}\n",
        file.prime,
        file.curve,
        phi.degree_first().unwrap_or(0),
        phi.degree_second().unwrap_or(0)
    );
    let mut terms: Vec<(&(usize, usize), &BigRational)> = phi.terms().collect();
    terms.sort_by_key(|((i, j), _)| (*j, *i));
    for ((i, j), c) in terms {
        let _ = writeln!(out, "{i} {j} {}", DisplayRational(c));
    }
    out
}

pub fn write_singular_moduli(report: &SingularModuliReport) -> String {
    let mut out = String::new();
    for e in &report.entries {
        let coeffs: Vec<String> = e.factor.coeffs().iter().map(|c| DisplayRational(c).to_string()).collect();
        let _ = writeln!(
            out,
            "factor deg={} mult={} norm={} coeffs={}",
            e.factor.degree().unwrap_or(0),
            e.multiplicity,
            DisplayRational(&e.norm),
            coeffs.join(" ")
        );
    }
    out
}

pub fn symmetry_label(s: SymmetryRelation) -> &'static str {
    match s {
        SymmetryRelation::Symmetric => "symmetric",
        SymmetryRelation::Antisymmetric => "antisymmetric",
        SymmetryRelation::Unrelated => "unrelated",
    }
}

/// Parses a comma-separated list of rationals, as given to `--cm-hints`.
pub fn parse_rational_list(text: &str) -> Result<Vec<BigRational>, FormatError> {
    text.split(',').map(|t| rational(t.trim(), 1)).collect()
}

/// Small nonnegative integer from a rational, for sizes in reports.
pub fn as_usize(q: &BigRational) -> Option<usize> {
    q.is_integer().then(|| q.to_integer().to_usize()).flatten()
}

#[cfg(test)]
mod tests {
    use super::*;
    use modeq_core::exactalg::rational::{int, rat};

    const D10: &str = "[curve]\nname=X0(10)/W10\ndiscriminant=10\npoint a=0 e=3 B=20/243 disc=-3\n\
                       point a=2 e=2 B=-29/400\npoint a=27 e=2 B=-953/97200\npoint a=inf e=2\n";

    #[test]
    fn curve_round_trip() {
        let c = parse_curve(D10).unwrap();
        assert_eq!(c.points().len(), 4);
        assert_eq!(c.discriminant, Some(10));
        assert_eq!(c.points()[0].disc, Some(-3));
        assert_eq!(parse_curve(&write_curve(&c)).unwrap(), c);
    }

    #[test]
    fn curve_errors_name_the_line() {
        let bad = "# header\n[curve]\nname=c\npoint a=1 e=1 B=0\n";
        assert_eq!(parse_curve(bad).unwrap_err().line, 4);
        let dup = "[curve]\nname=c\npoint a=1 e=2 B=0\npoint a=1/1 e=3 B=0\n";
        let e = parse_curve(dup).unwrap_err();
        assert_eq!(e.line, 4);
        assert!(matches!(e.kind, FormatErrorKind::Curve(SchwarzianError::DuplicatePoint(_))));
        assert_eq!(parse_curve("name=c\n").unwrap_err().kind, FormatErrorKind::Expected("[curve]"));
        let e = parse_curve("[curve]\nname=c\npoint a=x e=2 B=0\n").unwrap_err();
        assert!(matches!(e.kind, FormatErrorKind::Number { .. }));
        let e = parse_curve("[curve]\nname=c\npoint a=0 e=2 B=0 colour=red\n").unwrap_err();
        assert_eq!(e.kind, FormatErrorKind::UnknownKey("colour".into()));
    }

    #[test]
    fn hecke_table_round_trip_and_canonical_rationals() {
        let text = "prime 7\n\nweight 4\n-4\nweight 12\n-22336 17346\n305856/1 36428\n";
        let t = parse_hecke_table(text).unwrap();
        assert_eq!(t.get(12).unwrap().get(1, 0), &int(305856));
        assert!(write_hecke_table(&t).contains("305856 36428"));
        assert_eq!(parse_hecke_table(&write_hecke_table(&t)).unwrap(), t);
    }

    #[test]
    fn hecke_table_shape_errors() {
        let e = parse_hecke_table("prime 3\nweight 12\n1 2\n3\n").unwrap_err();
        assert_eq!((e.line, e.kind), (4, FormatErrorKind::RowLength { weight: 12, expected: 2, found: 1 }));
        let e = parse_hecke_table("prime 3\nweight 12\n1 2\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_hecke_table("prime 3\nweight 4\n1\nweight 4\n2\n").unwrap_err();
        assert_eq!(e.kind, FormatErrorKind::DuplicateWeight(4));
    }

    #[test]
    fn eigenmap_round_trip() {
        let text = "base 3 target 7\nweight 24 den 24 coeffs 145233723936 156628 -1\nweight 4 den 1 coeffs -4\n";
        let m = parse_eigenmap(text).unwrap();
        let g = m.get(24).unwrap();
        assert_eq!(g.coeff(2), rat(-1, 24));
        assert_eq!(parse_eigenmap(&write_eigenmap(&m)).unwrap(), m);
        assert!(write_eigenmap(&m).contains("weight 24 den 24 coeffs 145233723936 156628 -1"));
        let e = parse_eigenmap("base 3 target 7\nweight 4 den 0 coeffs 1\n").unwrap_err();
        assert_eq!((e.line, e.kind), (2, FormatErrorKind::BadDenominator));
    }

    #[test]
    fn phi_round_trip_and_order() {
        let text = "PHI p=2 curve=toy degx=1 degy=1\n0 0 5\n1 0 -1\n1 1 3/2\n";
        let f = parse_phi(text).unwrap();
        assert_eq!(f.phi.coeff(1, 1), rat(3, 2));
        assert_eq!(write_phi(&f), text);
        let e = parse_phi("PHI p=2 curve=toy degx=1 degy=0\n1 0 1\n0 0 1\n").unwrap_err();
        assert_eq!((e.line, e.kind), (3, FormatErrorKind::OutOfOrder { i: 0, j: 0 }));
        let e = parse_phi("PHI p=2 curve=toy degx=2 degy=0\n1 0 1\n").unwrap_err();
        assert!(matches!(e.kind, FormatErrorKind::DegreeMismatch { .. }));
    }

    #[test]
    fn rational_lists() {
        assert_eq!(parse_rational_list("2, 27,-1/3").unwrap(), vec![int(2), int(27), rat(-1, 3)]);
        assert!(parse_rational_list("2,,3").is_err());
    }
}
