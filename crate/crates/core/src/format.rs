//! The line-oriented category description format.
//!
//! ```text
//! # comment
//! objects:
//!   A B, C
//! morphisms:
//!   f : A -> B
//! identities:
//!   A = idA
//! compose:
//!   g * f = h
//! sub T:
//!   A B
//! ```
//!
//! Instead of the explicit sections a document may use exactly one generator:
//! `chain N`, `endomap K`, `preord K`, or a `poset:` section of cover rows
//! `a < b` (a row with a single name declares an element).

use std::fmt::Write as _;

use thiserror::Error;

use crate::category::{CategoryBuilder, FinCategory, ObjId, ValidationFailure};
use crate::gallery::{self, GalleryError, NamedSub};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: expected {expected}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub expected: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error(transparent)]
    Invalid(#[from] ValidationFailure),
    #[error(transparent)]
    Gallery(#[from] GalleryError),
    #[error("sub {sub} names unknown object {object}")]
    UnknownSubObject { sub: String, object: String },
    #[error("sub {0} declared twice")]
    DuplicateSub(String),
    #[error("name {0:?} cannot be written in the format")]
    Unrepresentable(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismDecl {
    pub name: String,
    pub dom: String,
    pub cod: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Body {
    Explicit {
        objects: Vec<String>,
        morphisms: Vec<MorphismDecl>,
        identities: Vec<(String, String)>,
        /// `(g, f, h)` for `g * f = h`.
        composites: Vec<(String, String, String)>,
    },
    Chain(usize),
    Poset {
        elements: Vec<String>,
        covers: Vec<(String, String)>,
    },
    Endomap(usize),
    Preord(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategorySpec {
    pub body: Body,
    /// Named object lists, in declaration order.
    pub subs: Vec<(String, Vec<String>)>,
}

/// A built category and its named object sets: the generator's own sets
/// first, then the document's.
#[derive(Debug, Clone)]
pub struct Built {
    pub category: FinCategory,
    pub subs: Vec<NamedSub>,
}

impl Built {
    pub fn sub(&self, name: &str) -> Option<&[ObjId]> {
        self.subs
            .iter()
            .find(|s| s.name == name)
            .map(|s| s.objects.as_slice())
    }
}

/// Names may not contain whitespace, `#` or `,`, may not end in `:` and may
/// not be one of the separators `:`, `->`, `=`, `*`, `<`.
pub fn is_valid_name(s: &str) -> bool {
    !s.is_empty()
        && !s
            .chars()
            .any(|ch| ch.is_whitespace() || ch == '#' || ch == ',')
        && !s.ends_with(':')
        && !matches!(s, "->" | "=" | "*" | "<")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Objects,
    Morphisms,
    Identities,
    Compose,
    Poset,
    Sub,
}

struct Token<'a> {
    text: &'a str,
    col: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let code = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in code.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &code[s..i],
                    col: code[..s].chars().count() + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &code[s..],
            col: code[..s].chars().count() + 1,
        });
    }
    out
}

struct Parser {
    line: usize,
    end_col: usize,
}

impl Parser {
    fn err(&self, col: usize, expected: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            col,
            expected: expected.into(),
        }
    }

    fn name(&self, t: Option<&Token<'_>>, what: &str) -> Result<String, ParseError> {
        match t {
            Some(t) if is_valid_name(t.text) => Ok(t.text.to_string()),
            Some(t) => Err(self.err(t.col, what)),
            None => Err(self.err(self.end_col, what)),
        }
    }

    fn punct(&self, t: Option<&Token<'_>>, p: &str) -> Result<(), ParseError> {
        match t {
            Some(t) if t.text == p => Ok(()),
            Some(t) => Err(self.err(t.col, format!("'{p}'"))),
            None => Err(self.err(self.end_col, format!("'{p}'"))),
        }
    }

    fn end(&self, t: Option<&Token<'_>>) -> Result<(), ParseError> {
        match t {
            Some(t) => Err(self.err(t.col, "end of line")),
            None => Ok(()),
        }
    }

    fn count(&self, t: Option<&Token<'_>>, what: &str) -> Result<usize, ParseError> {
        match t {
            Some(t) => match t.text.parse::<usize>() {
                Ok(k) if k > 0 => Ok(k),
                _ => Err(self.err(t.col, what)),
            },
            None => Err(self.err(self.end_col, what)),
        }
    }

    /// Names separated by whitespace and/or commas.
    fn list(&self, toks: &[Token<'_>], out: &mut Vec<String>) -> Result<(), ParseError> {
        for t in toks {
            let mut col = t.col;
            for piece in t.text.split(',') {
                if !piece.is_empty() {
                    if !is_valid_name(piece) {
                        return Err(self.err(col, "a name"));
                    }
                    out.push(piece.to_string());
                }
                col += piece.chars().count() + 1;
            }
        }
        Ok(())
    }
}

#[derive(Default)]
struct Draft {
    objects: Vec<String>,
    morphisms: Vec<MorphismDecl>,
    identities: Vec<(String, String)>,
    composites: Vec<(String, String, String)>,
    explicit: bool,
    generator: Option<Body>,
    poset_elements: Vec<String>,
    poset_covers: Vec<(String, String)>,
    subs: Vec<(String, Vec<String>)>,
}

pub fn parse_spec(text: &str) -> Result<CategorySpec, ParseError> {
    let mut d = Draft::default();
    let mut section = Section::None;
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let p = Parser {
            line: i + 1,
            end_col: raw
                .split('#')
                .next()
                .unwrap_or("")
                .trim_end()
                .chars()
                .count()
                + 1,
        };
        last_line = i + 1;
        let toks = tokens(raw);
        let Some(first) = toks.first() else { continue };
        let header = |name: &str| toks.len() == 1 && first.text == format!("{name}:");
        let generator_used =
            d.generator.is_some() || !d.poset_elements.is_empty() || section == Section::Poset;
        let explicit_clash = |p: &Parser| {
            if generator_used {
                Err(p.err(first.col, "no explicit sections after a generator"))
            } else {
                Ok(())
            }
        };
        let generator_clash = |p: &Parser| {
            if generator_used || d.explicit {
                Err(p.err(first.col, "at most one generator and no explicit sections"))
            } else {
                Ok(())
            }
        };
        match first.text {
            "objects:" | "morphisms:" | "identities:" | "compose:" if toks.len() == 1 => {
                explicit_clash(&p)?;
                d.explicit = true;
                section = match first.text {
                    "objects:" => Section::Objects,
                    "morphisms:" => Section::Morphisms,
                    "identities:" => Section::Identities,
                    _ => Section::Compose,
                };
                continue;
            }
            "poset:" if header("poset") => {
                generator_clash(&p)?;
                section = Section::Poset;
                continue;
            }
            "chain" | "endomap" | "preord" => {
                generator_clash(&p)?;
                let k = p.count(toks.get(1), "a positive integer")?;
                p.end(toks.get(2))?;
                d.generator = Some(match first.text {
                    "chain" => Body::Chain(k),
                    "endomap" => Body::Endomap(k),
                    _ => Body::Preord(k),
                });
                section = Section::None;
                continue;
            }
            "sub" if toks.len() >= 2 && toks[1].text.ends_with(':') => {
                let name = &toks[1].text[..toks[1].text.len() - 1];
                if !is_valid_name(name) {
                    return Err(p.err(toks[1].col, "a sub name followed by ':'"));
                }
                let mut objects = Vec::new();
                p.list(&toks[2..], &mut objects)?;
                d.subs.push((name.to_string(), objects));
                section = Section::Sub;
                continue;
            }
            _ => {}
        }
        match section {
            Section::None => return Err(p.err(first.col, "a section header or generator")),
            Section::Objects => p.list(&toks, &mut d.objects)?,
            Section::Sub => p.list(&toks, &mut d.subs.last_mut().expect("open sub").1)?,
            Section::Morphisms => {
                let name = p.name(toks.first(), "a morphism name")?;
                p.punct(toks.get(1), ":")?;
                let dom = p.name(toks.get(2), "a domain")?;
                p.punct(toks.get(3), "->")?;
                let cod = p.name(toks.get(4), "a codomain")?;
                p.end(toks.get(5))?;
                d.morphisms.push(MorphismDecl { name, dom, cod });
            }
            Section::Identities => {
                let obj = p.name(toks.first(), "an object name")?;
                p.punct(toks.get(1), "=")?;
                let mor = p.name(toks.get(2), "a morphism name")?;
                p.end(toks.get(3))?;
                d.identities.push((obj, mor));
            }
            Section::Compose => {
                let g = p.name(toks.first(), "a morphism name")?;
                p.punct(toks.get(1), "*")?;
                let f = p.name(toks.get(2), "a morphism name")?;
                p.punct(toks.get(3), "=")?;
                let h = p.name(toks.get(4), "a morphism name")?;
                p.end(toks.get(5))?;
                d.composites.push((g, f, h));
            }
            Section::Poset => {
                let a = p.name(toks.first(), "an element name")?;
                if toks.len() > 1 {
                    p.punct(toks.get(1), "<")?;
                    let b = p.name(toks.get(2), "an element name")?;
                    p.end(toks.get(3))?;
                    for e in [&a, &b] {
                        if !d.poset_elements.contains(e) {
                            d.poset_elements.push(e.clone());
                        }
                    }
                    d.poset_covers.push((a, b));
                } else if !d.poset_elements.contains(&a) {
                    d.poset_elements.push(a);
                }
            }
        }
    }
    finish(d).ok_or(ParseError {
        line: last_line.max(1),
        col: 1,
        expected: "a generator or an objects section".into(),
    })
}

fn finish(d: Draft) -> Option<CategorySpec> {
    let body = if let Some(g) = d.generator {
        g
    } else if !d.poset_elements.is_empty() {
        Body::Poset {
            elements: d.poset_elements,
            covers: d.poset_covers,
        }
    } else if d.explicit {
        Body::Explicit {
            objects: d.objects,
            morphisms: d.morphisms,
            identities: d.identities,
            composites: d.composites,
        }
    } else {
        return None;
    };
    Some(CategorySpec { body, subs: d.subs })
}

fn line_list(out: &mut String, names: &[String]) {
    if !names.is_empty() {
        let _ = writeln!(out, "  {}", names.join(" "));
    }
}

/// Render a spec. Every name must satisfy [`is_valid_name`] for the output to
/// parse back to the same spec.
pub fn serialize(spec: &CategorySpec) -> String {
    let mut out = String::new();
    match &spec.body {
        Body::Explicit {
            objects,
            morphisms,
            identities,
            composites,
        } => {
            out.push_str("objects:\n");
            line_list(&mut out, objects);
            out.push_str("morphisms:\n");
            for m in morphisms {
                let _ = writeln!(out, "  {} : {} -> {}", m.name, m.dom, m.cod);
            }
            out.push_str("identities:\n");
            for (o, m) in identities {
                let _ = writeln!(out, "  {o} = {m}");
            }
            out.push_str("compose:\n");
            for (g, f, h) in composites {
                let _ = writeln!(out, "  {g} * {f} = {h}");
            }
        }
        Body::Chain(n) => {
            let _ = writeln!(out, "chain {n}");
        }
        Body::Endomap(k) => {
            let _ = writeln!(out, "endomap {k}");
        }
        Body::Preord(k) => {
            let _ = writeln!(out, "preord {k}");
        }
        Body::Poset { elements, covers } => {
            out.push_str("poset:\n");
            for e in elements {
                let _ = writeln!(out, "  {e}");
            }
            for (a, b) in covers {
                let _ = writeln!(out, "  {a} < {b}");
            }
        }
    }
    for (name, objects) in &spec.subs {
        let _ = writeln!(out, "sub {name}:");
        line_list(&mut out, objects);
    }
    out
}

/// Build the category a spec describes.
pub fn build(spec: &CategorySpec) -> Result<Built, BuildError> {
    let (category, mut subs) = match &spec.body {
        Body::Explicit {
            objects,
            morphisms,
            identities,
            composites,
        } => {
            let mut b = CategoryBuilder::new();
            for o in objects {
                b.object(o);
            }
            for m in morphisms {
                b.morphism(&m.name, &m.dom, &m.cod);
            }
            for (o, m) in identities {
                b.identity(o, m);
            }
            for (g, f, h) in composites {
                b.composite(g, f, h);
            }
            (b.build()?, Vec::new())
        }
        Body::Chain(n) => (gallery::chain(*n)?, Vec::new()),
        Body::Poset { elements, covers } => {
            let names: Vec<&str> = elements.iter().map(String::as_str).collect();
            let rel: Vec<(&str, &str)> = covers
                .iter()
                .map(|(a, b)| (a.as_str(), b.as_str()))
                .collect();
            (gallery::poset_category(&names, &rel)?, Vec::new())
        }
        Body::Endomap(k) => {
            let g = gallery::endomap_category(*k)?;
            (g.category, g.subs)
        }
        Body::Preord(k) => {
            let g = gallery::preord_category(*k)?;
            (g.category, g.subs)
        }
    };
    for (name, objects) in &spec.subs {
        if subs.iter().any(|s| &s.name == name) {
            return Err(BuildError::DuplicateSub(name.clone()));
        }
        let mut ids = Vec::with_capacity(objects.len());
        for o in objects {
            ids.push(
                category
                    .obj_id(o)
                    .ok_or_else(|| BuildError::UnknownSubObject {
                        sub: name.clone(),
                        object: o.clone(),
                    })?,
            );
        }
        ids.sort();
        ids.dedup();
        subs.push(NamedSub {
            name: name.clone(),
            objects: ids,
        });
    }
    Ok(Built { category, subs })
}

/// Explicit description of `c`: objects and morphisms in id order, and every
/// composite without an identity factor.
pub fn export(c: &FinCategory, subs: &[NamedSub]) -> Result<CategorySpec, BuildError> {
    let check = |s: &str| {
        if is_valid_name(s) {
            Ok(s.to_string())
        } else {
            Err(BuildError::Unrepresentable(s.to_string()))
        }
    };
    let objects = c
        .objects()
        .map(|o| check(c.obj_name(o)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut morphisms = Vec::with_capacity(c.mor_count());
    for m in c.morphisms() {
        morphisms.push(MorphismDecl {
            name: check(c.mor_name(m))?,
            dom: c.obj_name(c.dom(m)).to_string(),
            cod: c.obj_name(c.cod(m)).to_string(),
        });
    }
    let identities = c
        .objects()
        .map(|o| (c.obj_name(o).to_string(), c.mor_name(c.id(o)).to_string()))
        .collect();
    let mut composites = Vec::new();
    for f in c.morphisms().filter(|&f| !c.is_identity(f)) {
        for g in c.out(c.cod(f)).iter().filter(|&g| !c.is_identity(g)) {
            composites.push((
                c.mor_name(g).to_string(),
                c.mor_name(f).to_string(),
                c.mor_name(c.compose(g, f)).to_string(),
            ));
        }
    }
    let subs = subs
        .iter()
        .map(|s| {
            Ok((
                check(&s.name)?,
                s.objects
                    .iter()
                    .map(|&o| c.obj_name(o).to_string())
                    .collect(),
            ))
        })
        .collect::<Result<Vec<_>, BuildError>>()?;
    Ok(CategorySpec {
        body: Body::Explicit {
            objects,
            morphisms,
            identities,
            composites,
        },
        subs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const CHAIN3: &str = "\
# three objects
objects:
  1 2 3
morphisms:
  a : 1 -> 2
  b : 2 -> 3
  ba : 1 -> 3
  i1 : 1 -> 1
  i2 : 2 -> 2
  i3 : 3 -> 3
identities:
  1 = i1
  2 = i2
  3 = i3
compose:
  b * a = ba   # the only non-trivial composite
sub T: 1, 2
";

    #[test]
    fn explicit_document() {
        let spec = parse_spec(CHAIN3).unwrap();
        let built = build(&spec).unwrap();
        assert_eq!(built.category.obj_count(), 3);
        assert_eq!(built.category.mor_count(), 6);
        assert_eq!(built.sub("T").unwrap().len(), 2);
        assert_eq!(parse_spec(&serialize(&spec)).unwrap(), spec);
    }

    #[test]
    fn chain_shorthand() {
        let spec = parse_spec("chain 3\n").unwrap();
        assert_eq!(spec.body, Body::Chain(3));
        assert_eq!(build(&spec).unwrap().category, gallery::chain(3).unwrap());
    }

    #[test]
    fn poset_shorthand_gives_n5() {
        let text = "poset:\n  T\n  Z\n  Z'\n  C\n  F\n  T < Z\n  Z < Z'\n  Z' < F\n  T < C\n  C < F\nsub T: T Z Z'\n";
        let built = build(&parse_spec(text).unwrap()).unwrap();
        assert_eq!(built.category, gallery::n5());
    }

    #[test]
    fn malformed_composition_row() {
        let text = "objects:\n  A\nmorphisms:\n  i : A -> A\ncompose:\n  i * i i\n";
        let e = parse_spec(text).unwrap_err();
        assert_eq!((e.line, e.col), (6, 9));
        assert_eq!(e.expected, "'='");
    }

    #[test]
    fn missing_section() {
        let e = parse_spec("  A B\n").unwrap_err();
        assert_eq!((e.line, e.col), (1, 3));
        assert!(parse_spec("# nothing\n").is_err());
    }

    #[test]
    fn generator_and_sections_do_not_mix() {
        assert!(parse_spec("chain 2\nobjects:\n  A\n").is_err());
        assert!(parse_spec("chain 2\nendomap 2\n").is_err());
        assert!(parse_spec("chain 0\n").is_err());
    }

    #[test]
    fn unknown_sub_object() {
        let spec = parse_spec("chain 2\nsub X: 3\n").unwrap();
        assert!(matches!(
            build(&spec),
            Err(BuildError::UnknownSubObject { .. })
        ));
    }

    #[test]
    fn gallery_exports_round_trip() {
        let mut cats = vec![gallery::chain(4).unwrap(), gallery::two(), gallery::n5()];
        let e = gallery::endomap_category(2).unwrap();
        let p = gallery::preord_category(2).unwrap();
        cats.push(e.category.clone());
        cats.push(p.category.clone());
        for c in &cats {
            let spec = export(c, &[]).unwrap();
            let text = serialize(&spec);
            let again = parse_spec(&text).unwrap();
            assert_eq!(again, spec);
            assert_eq!(&build(&again).unwrap().category, c);
        }
        let spec = export(&e.category, &e.subs).unwrap();
        let built = build(&parse_spec(&serialize(&spec)).unwrap()).unwrap();
        assert_eq!(built.subs, e.subs);
    }
}
