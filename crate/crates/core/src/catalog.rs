//! Built-in groups and the `.perm` generator file format.
//!
//! A `.perm` file starts with a `degree <n>` header followed by one
//! permutation per line in 1-based cycle notation. `#` starts a comment and
//! blank lines are ignored.

use std::fmt;
use std::fs;
use std::path::Path;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::group::{GeneratorSet, GroupHandle};
use crate::perm::{format_cycles, parse_cycles, Permutation};

// Standard generators of the Mathieu groups as permutation groups on
// 11, 12, 23 and 24 points.
const M11_GENERATORS: &[&str] = &["(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)"];
const M12_GENERATORS: &[&str] = &[
    "(1,2,3,4,5,6,7,8,9,10,11)",
    "(3,7,11,8)(4,10,5,6)",
    "(1,12)(2,11)(3,6)(4,8)(5,9)(7,10)",
];
const M23_GENERATORS: &[&str] = &[
    "(1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23)",
    "(3,17,10,7,9)(4,13,14,19,5)(8,18,11,12,23)(15,20,22,21,16)",
];
const M24_GENERATORS: &[&str] = &[
    "(1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23)",
    "(3,17,10,7,9)(4,13,14,19,5)(8,18,11,12,23)(15,20,22,21,16)",
    "(1,24)(2,23)(3,12)(4,16)(5,18)(6,10)(7,20)(8,14)(9,21)(11,17)(13,22)(15,19)",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    Symmetric(usize),
    Alternating(usize),
    Cyclic(usize),
    Dihedral(usize),
    Pgl2(usize),
    Psl2(usize),
    Mathieu(usize),
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Builtin::Symmetric(n) => write!(f, "S{n}"),
            Builtin::Alternating(n) => write!(f, "A{n}"),
            Builtin::Cyclic(n) => write!(f, "C{n}"),
            Builtin::Dihedral(n) => write!(f, "D{n}"),
            Builtin::Pgl2(q) => write!(f, "PGL(2,{q})"),
            Builtin::Psl2(q) => write!(f, "PSL(2,{q})"),
            Builtin::Mathieu(k) => write!(f, "M{k}"),
        }
    }
}

impl Builtin {
    /// Parses short names: `S5`, `A6`, `C4`, `D8`, `PGL(2,7)` (also `PGL2_7`),
    /// `PSL(2,7)`, `M11`.
    pub fn parse(name: &str) -> Result<Builtin> {
        let unknown = || Error::UnknownGroup(name.to_string());
        let s = name.trim();
        let upper = s.to_ascii_uppercase();
        for (prefix, ctor) in [
            ("PGL", Builtin::Pgl2 as fn(usize) -> Builtin),
            ("PSL", Builtin::Psl2),
        ] {
            if let Some(rest) = upper.strip_prefix(prefix) {
                let rest = rest
                    .strip_prefix("(2,")
                    .and_then(|r| r.strip_suffix(')'))
                    .or_else(|| rest.strip_prefix("2_"))
                    .or_else(|| rest.strip_prefix("2-"))
                    .ok_or_else(unknown)?;
                return Ok(ctor(rest.trim().parse().map_err(|_| unknown())?));
            }
        }
        let (head, digits) = upper.split_at(
            upper
                .find(|c: char| c.is_ascii_digit())
                .ok_or_else(unknown)?,
        );
        let n: usize = digits.parse().map_err(|_| unknown())?;
        match head {
            "S" | "SYM" => Ok(Builtin::Symmetric(n)),
            "A" | "ALT" => Ok(Builtin::Alternating(n)),
            "C" => Ok(Builtin::Cyclic(n)),
            "D" => Ok(Builtin::Dihedral(n)),
            "M" => Ok(Builtin::Mathieu(n)),
            _ => Err(unknown()),
        }
    }

    /// Expected `(degree, order, transitivity degree)`.
    pub fn expected(&self) -> Result<(usize, BigUint, usize)> {
        let fact = |n: usize| -> BigUint { (1..=n).map(BigUint::from).product() };
        let invalid = |msg: String| Err(Error::InvalidParameter(msg));
        Ok(match *self {
            Builtin::Symmetric(n) if n >= 1 => (n, fact(n), n),
            Builtin::Alternating(n) if n >= 3 => (n, fact(n) / 2u32, n - 2),
            // C2 is Sym(2)
            Builtin::Cyclic(n) if n >= 1 => (n, BigUint::from(n), if n == 2 { 2 } else { 1 }),
            Builtin::Dihedral(n) if n >= 3 => (n, BigUint::from(2 * n), if n == 3 { 3 } else { 1 }),
            Builtin::Pgl2(q) | Builtin::Psl2(q) => {
                if !(3..=31).contains(&q) || !is_prime(q) {
                    return invalid(format!("q = {q} must be an odd prime ≤ 31"));
                }
                let order = BigUint::from(q * (q * q - 1));
                match self {
                    // PGL(2,3) is Sym(4)
                    Builtin::Pgl2(_) => (q + 1, order, if q == 3 { 4 } else { 3 }),
                    _ => (q + 1, order / 2u32, 2),
                }
            }
            Builtin::Mathieu(11) => (11, BigUint::from(7920u32), 4),
            Builtin::Mathieu(12) => (12, BigUint::from(95040u32), 5),
            Builtin::Mathieu(23) => (23, BigUint::from(10200960u32), 4),
            Builtin::Mathieu(24) => (24, BigUint::from(244823040u32), 5),
            Builtin::Mathieu(k) => return invalid(format!("no Mathieu group M{k} in the catalog")),
            other => return invalid(format!("{other}: degree out of range")),
        })
    }

    /// Generators, before validation.
    pub fn generators(&self) -> Result<GeneratorSet> {
        let (n, _, _) = self.expected()?;
        let label = self.to_string();
        let cyc = |points: Vec<usize>| Permutation::cycle(n, &points);
        let gens: Vec<Permutation> = match *self {
            Builtin::Symmetric(n) => {
                let mut g = Vec::new();
                if n >= 2 {
                    g.push(cyc(vec![0, 1])?);
                }
                if n >= 3 {
                    g.push(cyc((0..n).collect())?);
                }
                g
            }
            Builtin::Alternating(n) => (2..n).map(|k| cyc(vec![0, 1, k])).collect::<Result<_>>()?,
            Builtin::Cyclic(n) => {
                if n >= 2 {
                    vec![cyc((0..n).collect())?]
                } else {
                    vec![]
                }
            }
            Builtin::Dihedral(n) => vec![
                cyc((0..n).collect())?,
                Permutation::from_fn(n, |i| (n - i) % n)?,
            ],
            Builtin::Pgl2(q) => {
                let g = primitive_root(q);
                vec![
                    mobius(q, |x| x.map(|x| (x + 1) % q)),
                    mobius(q, |x| x.map(|x| x * g % q)),
                    mobius(q, |x| match x {
                        None => Some(0),
                        Some(0) => None,
                        Some(x) => Some(inverse_mod(x, q)),
                    }),
                ]
            }
            Builtin::Psl2(q) => {
                let g2 = primitive_root(q).pow(2) % q;
                vec![
                    mobius(q, |x| x.map(|x| (x + 1) % q)),
                    mobius(q, |x| x.map(|x| x * g2 % q)),
                    mobius(q, |x| match x {
                        None => Some(0),
                        Some(0) => None,
                        Some(x) => Some((q - inverse_mod(x, q)) % q),
                    }),
                ]
            }
            Builtin::Mathieu(k) => {
                let cycles = match k {
                    11 => M11_GENERATORS,
                    12 => M12_GENERATORS,
                    23 => M23_GENERATORS,
                    _ => M24_GENERATORS,
                };
                cycles
                    .iter()
                    .map(|c| parse_cycles(c, n))
                    .collect::<Result<_>>()?
            }
        };
        GeneratorSet::new(n, gens, label)
    }

    /// Builds the group and checks its degree, order and transitivity degree.
    pub fn build(&self) -> Result<GroupHandle> {
        let (n, order, t) = self.expected()?;
        let handle = GroupHandle::new(self.generators()?)?;
        let fail = |reason: String| {
            Err(Error::Validation {
                label: self.to_string(),
                reason,
            })
        };
        if handle.degree() != n {
            return fail(format!("degree {} != {n}", handle.degree()));
        }
        if handle.order() != &order {
            return fail(format!("order {} != {order}", handle.order()));
        }
        if handle.transitivity_degree() != t {
            return fail(format!(
                "transitivity degree {} != {t}",
                handle.transitivity_degree()
            ));
        }
        Ok(handle)
    }
}

/// Generators of a validated built-in group.
pub fn builtin(name: &str) -> Result<GeneratorSet> {
    let b = Builtin::parse(name)?;
    Ok(b.build()?.generators().clone())
}

/// Projective line over `F_q`: points `0..q-1`, with `∞` as index `q`.
fn mobius(q: usize, f: impl Fn(Option<usize>) -> Option<usize>) -> Permutation {
    let to_index = |x: Option<usize>| x.unwrap_or(q);
    let from_index = |i: usize| if i == q { None } else { Some(i) };
    Permutation::from_fn(q + 1, |i| to_index(f(from_index(i)))).expect("Möbius map is a bijection")
}

fn is_prime(n: usize) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

fn inverse_mod(x: usize, q: usize) -> usize {
    (1..q).find(|y| x * y % q == 1).expect("q prime")
}

fn primitive_root(q: usize) -> usize {
    (2..q)
        .find(|&g| {
            let mut x = 1;
            (1..q - 1).all(|_| {
                x = x * g % q;
                x != 1
            })
        })
        .unwrap_or(1)
}

/// Where a group comes from: `catalog:<name>` or `file:<path>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Builtin(Builtin),
    File(String),
}

impl GroupSpec {
    pub fn parse(spec: &str) -> Result<GroupSpec> {
        if let Some(name) = spec.strip_prefix("catalog:") {
            Ok(GroupSpec::Builtin(Builtin::parse(name)?))
        } else if let Some(path) = spec.strip_prefix("file:") {
            Ok(GroupSpec::File(path.to_string()))
        } else {
            Err(Error::UnknownGroup(spec.to_string()))
        }
    }

    pub fn label(&self) -> String {
        match self {
            GroupSpec::Builtin(b) => b.to_string(),
            GroupSpec::File(p) => p.clone(),
        }
    }

    pub fn build(&self) -> Result<GroupHandle> {
        match self {
            GroupSpec::Builtin(b) => b.build(),
            GroupSpec::File(path) => GroupHandle::new(load_generator_file(path)?),
        }
    }
}

pub fn parse_generator_text(text: &str, source: &str) -> Result<GeneratorSet> {
    let err = |line: usize, reason: String| Error::GeneratorFile {
        path: source.to_string(),
        line,
        reason,
    };
    let mut degree: Option<usize> = None;
    let mut label: Option<String> = None;
    let mut gens = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        if !raw.is_ascii() {
            return Err(err(line_no, "non-ASCII text".to_string()));
        }
        let (content, comment) = match raw.find('#') {
            Some(pos) => (&raw[..pos], Some(&raw[pos + 1..])),
            None => (raw, None),
        };
        if let Some(l) = comment.and_then(|c| c.trim().strip_prefix("label:")) {
            label.get_or_insert_with(|| l.trim().to_string());
        }
        let content = content.trim();
        if content.is_empty() {
            continue;
        }
        match degree {
            None => {
                let n = content
                    .strip_prefix("degree")
                    .filter(|rest| rest.starts_with(char::is_whitespace))
                    .and_then(|rest| rest.trim().parse::<usize>().ok())
                    .filter(|&n| n > 0)
                    .ok_or_else(|| err(line_no, "expected header 'degree <n>'".to_string()))?;
                degree = Some(n);
            }
            Some(n) => {
                gens.push(parse_cycles(content, n).map_err(|e| err(line_no, e.to_string()))?)
            }
        }
    }
    let n = degree.ok_or_else(|| err(1, "missing header 'degree <n>'".to_string()))?;
    let label = label.unwrap_or_else(|| {
        Path::new(source)
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| source.to_string())
    });
    GeneratorSet::new(n, gens, label)
}

pub fn load_generator_file(path: impl AsRef<Path>) -> Result<GeneratorSet> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    })?;
    parse_generator_text(&text, &path.display().to_string())
}

pub fn format_generator_file(gens: &GeneratorSet) -> String {
    let mut out = format!("degree {}\n# label: {}\n", gens.degree(), gens.label());
    for g in gens.generators() {
        out.push_str(&format_cycles(g));
        out.push('\n');
    }
    out
}

pub fn save_generator_file(gens: &GeneratorSet, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, format_generator_file(gens)).map_err(|e| Error::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names() {
        assert_eq!(Builtin::parse("S5").unwrap(), Builtin::Symmetric(5));
        assert_eq!(Builtin::parse("a6").unwrap(), Builtin::Alternating(6));
        assert_eq!(Builtin::parse("PGL(2,7)").unwrap(), Builtin::Pgl2(7));
        assert_eq!(Builtin::parse("PSL2_5").unwrap(), Builtin::Psl2(5));
        assert_eq!(Builtin::parse("M24").unwrap(), Builtin::Mathieu(24));
        assert!(Builtin::parse("X3").is_err());
        assert!(Builtin::parse("S").is_err());
        assert!(GroupSpec::parse("M11").is_err());
        assert_eq!(
            GroupSpec::parse("file:a.perm").unwrap(),
            GroupSpec::File("a.perm".into())
        );
    }

    #[test]
    fn small_builtins_validate() {
        for name in [
            "S1", "S4", "A3", "A5", "C1", "C6", "D3", "D5", "PGL(2,3)", "PSL(2,3)",
        ] {
            Builtin::parse(name).unwrap().build().unwrap();
        }
        let pgl = Builtin::Pgl2(7).build().unwrap();
        assert_eq!(pgl.degree(), 8);
        assert_eq!(pgl.order(), &BigUint::from(336u32));
        assert_eq!(pgl.transitivity_degree(), 3);
    }

    #[test]
    fn invalid_parameters() {
        for b in [
            Builtin::Pgl2(9),
            Builtin::Psl2(2),
            Builtin::Pgl2(37),
            Builtin::Mathieu(22),
            Builtin::Alternating(2),
            Builtin::Dihedral(2),
            Builtin::Symmetric(0),
        ] {
            assert!(matches!(b.build(), Err(Error::InvalidParameter(_))), "{b}");
        }
    }

    #[test]
    fn file_format() {
        let g = parse_generator_text("degree 4\n(1,2)\n(1,2,3,4)\n", "s4.perm").unwrap();
        assert_eq!(g.generators().len(), 2);
        assert_eq!(g.label(), "s4");
        let h = GroupHandle::new(g).unwrap();
        assert_eq!(h.order(), &BigUint::from(24u32));

        let g = parse_generator_text("# comment\n\ndegree 3  # header\n(1,2,3) # gen\n\n", "x")
            .unwrap();
        assert_eq!(g.degree(), 3);
        assert_eq!(g.generators().len(), 1);

        match parse_generator_text("degree 4\n(1,5)\n", "bad.perm") {
            Err(Error::GeneratorFile { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_generator_text("(1,2)\n", "x"),
            Err(Error::GeneratorFile { line: 1, .. })
        ));
        assert!(matches!(
            parse_generator_text("", "x"),
            Err(Error::GeneratorFile { .. })
        ));
        assert!(matches!(
            parse_generator_text("degree 3\n(1,2)é\n", "x"),
            Err(Error::GeneratorFile { line: 2, .. })
        ));
    }
}
