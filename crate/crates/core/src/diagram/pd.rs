use super::LinkDiagram;
use crate::{Error, Result};

/// Parse PD text such as `X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)`.
///
/// Square brackets are accepted in place of parentheses, an outer `PD[...]`
/// wrapper is ignored, and a bare `O` adds a crossingless circle component.
/// The empty string is the empty diagram.
pub fn parse_pd(text: &str) -> Result<LinkDiagram> {
    let mut body = text.trim();
    if let Some(rest) = body
        .strip_prefix("PD[")
        .or_else(|| body.strip_prefix("PD("))
    {
        body = rest
            .strip_suffix(']')
            .or_else(|| rest.strip_suffix(')'))
            .ok_or_else(|| Error::Parse("unterminated PD wrapper".into()))?;
    }
    let mut tuples = Vec::new();
    let mut loops = 0;
    let mut rest = body;
    loop {
        rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == ',' || c == ';');
        if rest.is_empty() {
            break;
        }
        let mut chars = rest.chars();
        match chars.next() {
            Some('X') | Some('x') => {
                let after = chars.as_str().trim_start();
                let close = match after.chars().next() {
                    Some('(') => ')',
                    Some('[') => ']',
                    _ => {
                        return Err(Error::Parse(format!(
                            "expected '(' after X near {:?}",
                            snippet(rest)
                        )))
                    }
                };
                let end = after.find(close).ok_or_else(|| {
                    Error::Parse(format!("unterminated crossing near {:?}", snippet(rest)))
                })?;
                let inner = &after[1..end];
                let labels: Vec<u32> = inner
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad arc label {:?}", t.trim())))
                    })
                    .collect::<Result<_>>()?;
                let arr: [u32; 4] = labels.as_slice().try_into().map_err(|_| {
                    Error::Parse(format!(
                        "crossing X({inner}) has {} labels, expected 4",
                        labels.len()
                    ))
                })?;
                tuples.push(arr);
                rest = &after[end + 1..];
            }
            Some('O') | Some('o') => {
                loops += 1;
                let after = chars.as_str();
                rest = after
                    .strip_prefix("()")
                    .or_else(|| after.strip_prefix("[]"))
                    .unwrap_or(after);
            }
            _ => {
                return Err(Error::Parse(format!(
                    "unexpected input near {:?}",
                    snippet(rest)
                )))
            }
        }
    }
    LinkDiagram::from_pd(&tuples, loops).map_err(|e| match e {
        Error::InvalidDiagram(m) => Error::Parse(m),
        other => other,
    })
}

fn snippet(s: &str) -> &str {
    let end = s.char_indices().nth(12).map_or(s.len(), |(i, _)| i);
    &s[..end]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_variants() {
        let a = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        let b = parse_pd("PD[X[1, 4, 2, 5], X[3, 6, 4, 1], X[5, 2, 6, 3]]").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_pd("").unwrap().len(), 0);
        assert_eq!(parse_pd("O").unwrap().free_loops(), 1);
        assert_eq!(parse_pd("O O X(1,2,2,1)").unwrap().component_count(), 3);
    }

    #[test]
    fn reports_arity() {
        let e = parse_pd("X(1,2,3)").unwrap_err();
        assert!(e.to_string().contains("3 labels"), "{e}");
        assert!(parse_pd("X(1,2,2,1) Y").is_err());
        assert!(parse_pd("X(1,a,2,1)").is_err());
    }
}
