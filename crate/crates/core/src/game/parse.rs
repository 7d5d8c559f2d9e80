//! Shared text syntax: rulesets like `ECN(6_{1,2},3)`, positions like `0,4,4,1`.
//!
//! Parsing ignores whitespace; `Display` emits the canonical spelling.

use std::str::FromStr;

use super::{Position, Ruleset};
use crate::error::{Error, Result};

fn num(what: &'static str, input: &str, s: &str) -> Result<usize> {
    s.parse::<usize>()
        .map_err(|_| Error::parse(what, input, format!("expected an integer, found {s:?}")))
}

fn inner<'a>(s: &'a str, prefix: &str) -> Option<&'a str> {
    let upper = s.to_ascii_uppercase();
    (upper.starts_with(prefix) && s.ends_with(')')).then(|| &s[prefix.len()..s.len() - 1])
}

fn parse_index_list(input: &str, body: &str) -> Result<Vec<usize>> {
    if body.is_empty() {
        return Ok(Vec::new());
    }
    body.split(',').map(|x| num("ruleset", input, x)).collect()
}

impl FromStr for Ruleset {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |reason: &str| Error::parse("ruleset", input, reason);

        if let Some(body) = inner(&s, "ECN(") {
            let (m, rest) = body.split_once('_').ok_or_else(|| bad("expected m_{S},k"))?;
            let m = num("ruleset", input, m)?;
            let (steps, k) = if let Some(rest) = rest.strip_prefix('{') {
                let (steps, k) = rest.split_once('}').ok_or_else(|| bad("unclosed '{'"))?;
                let k = k.strip_prefix(',').ok_or_else(|| bad("expected ',' before k"))?;
                (parse_index_list(input, steps)?, k)
            } else {
                let (step, k) = rest.split_once(',').ok_or_else(|| bad("expected ',' before k"))?;
                (vec![num("ruleset", input, step)?], k)
            };
            let k = num("ruleset", input, k)?;
            return Ruleset::ecn(m, steps, k);
        }
        if let Some(body) = inner(&s, "CN(") {
            let (m, k) = body.split_once(',').ok_or_else(|| bad("expected CN(m,k)"))?;
            return Ruleset::cn(num("ruleset", input, m)?, num("ruleset", input, k)?);
        }
        if let Some(body) = inner(&s, "MN(") {
            let (m, k) = body.split_once(',').ok_or_else(|| bad("expected MN(m,k)"))?;
            return Ruleset::moore(num("ruleset", input, m)?, num("ruleset", input, k)?);
        }
        if let Some(body) = inner(&s, "NIM(") {
            return Ruleset::nim(num("ruleset", input, body)?);
        }
        if let Some(body) = inner(&s, "SC(") {
            let (m, faces) = body.split_once(';').ok_or_else(|| bad("expected SC(m;{..},..)"))?;
            let m = num("ruleset", input, m)?;
            let mut list = Vec::new();
            let mut rest = faces;
            while !rest.is_empty() {
                let r = rest.strip_prefix('{').ok_or_else(|| bad("expected '{'"))?;
                let (face, tail) = r.split_once('}').ok_or_else(|| bad("unclosed '{'"))?;
                list.push(parse_index_list(input, face)?);
                rest = tail.strip_prefix(',').unwrap_or(tail);
            }
            return Ruleset::from_maximal_faces(m, list);
        }
        Err(bad("expected one of ECN(m_{S},k), CN(m,k), MN(m,k), NIM(m), SC(m;faces)"))
    }
}

impl FromStr for Position {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let s: String = input
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        let s = s
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .unwrap_or(&s);
        if s.is_empty() {
            return Err(Error::parse("position", input, "no pile heights"));
        }
        s.split(',')
            .map(|x| {
                x.parse::<u64>().map_err(|_| {
                    Error::parse("position", input, format!("bad pile height {x:?}"))
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Position::new)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ruleset_round_trip() {
        for text in [
            "ECN(6_{1,2},3)",
            "ECN(8_{1,2,3,4},2)",
            "NIM(3)",
            "MN(5,2)",
            "SC(3;{2},{0,1})",
        ] {
            let r: Ruleset = text.parse().unwrap();
            assert_eq!(r.to_string(), text);
        }
    }

    #[test]
    fn ruleset_spellings() {
        let want = Ruleset::ecn(6, [1, 2], 3).unwrap();
        for text in ["ECN(6_{1,2},3)", " ecn( 6_{ 2 , 1 } , 3 ) ", "ECN(6_{2,1,2},3)"] {
            assert_eq!(text.parse::<Ruleset>().unwrap(), want, "{text}");
        }
        assert_eq!("ECN(8_3,2)".parse::<Ruleset>().unwrap().to_string(), "ECN(8_{3},2)");
        assert_eq!("CN(5,3)".parse::<Ruleset>().unwrap().to_string(), "ECN(5_{1},3)");
    }

    #[test]
    fn ruleset_errors() {
        assert!(matches!("ECN(6_{1,2}3)".parse::<Ruleset>(), Err(Error::Parse { .. })));
        assert!(matches!("FOO(1)".parse::<Ruleset>(), Err(Error::Parse { .. })));
        assert!(matches!("ECN(6_{4},2)".parse::<Ruleset>(), Err(Error::InvalidRuleset(_))));
    }

    #[test]
    fn position_parsing() {
        let p: Position = "0,4,4,1,3,4,4".parse().unwrap();
        assert_eq!(p.piles(), &[0, 4, 4, 1, 3, 4, 4]);
        assert_eq!(" (1, 2 ,3) ".parse::<Position>().unwrap().to_string(), "1,2,3");
        assert!("1,,2".parse::<Position>().is_err());
        assert!("".parse::<Position>().is_err());
        assert!("1,-2".parse::<Position>().is_err());
    }
}
