//! Graph-spec strings: `K4`, `K3xK4xK2`, `Q3`, `K3(2)`, `T:3,1,1,1`.

use spanfactor::graphs::{
    cartesian_product, complete_graph, hypercube, multigraph_kn, threshold_graph,
};
use spanfactor::{Graph, GraphError, Partition};
use thiserror::Error;

/// Syntax error at a 0-based byte offset into the spec.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at position {position} of `{input}`")]
pub struct ParseError {
    pub input: String,
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

struct Cursor<'a> {
    input: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            input: self.input.to_string(),
            position: self.pos,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.input.as_bytes().get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", c as char)))
        }
    }

    fn number(&mut self) -> Result<usize, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        self.input[start..self.pos].parse().map_err(|_| ParseError {
            input: self.input.to_string(),
            position: start,
            message: "number out of range".into(),
        })
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected `{}`", c as char))),
        }
    }
}

/// Parses a graph spec and builds the graph.
///
/// A product of a single factor is the complete graph itself. The
/// multiplicity suffix `(q)` is only accepted on a lone `K_n`.
pub fn parse_spec(s: &str) -> Result<Graph, SpecError> {
    let mut cur = Cursor { input: s, pos: 0 };
    match cur.peek() {
        Some(b'Q') => {
            cur.pos += 1;
            let n = cur.number()?;
            cur.finish()?;
            Ok(hypercube(n)?)
        }
        Some(b'T') => {
            cur.pos += 1;
            cur.expect(b':')?;
            let mut parts = vec![cur.number()?];
            while cur.eat(b',') {
                parts.push(cur.number()?);
            }
            cur.finish()?;
            Ok(threshold_graph(&Partition::new(parts)?)?)
        }
        Some(b'K') => {
            let mut dims = Vec::new();
            loop {
                cur.expect(b'K')?;
                dims.push(cur.number()?);
                if cur.peek() == Some(b'(') {
                    if dims.len() > 1 {
                        return Err(cur
                            .error("a multiplicity is only allowed on a single complete graph")
                            .into());
                    }
                    cur.pos += 1;
                    let q = cur.number()?;
                    let q = u32::try_from(q).map_err(|_| cur.error("multiplicity out of range"))?;
                    cur.expect(b')')?;
                    cur.finish()?;
                    return Ok(multigraph_kn(dims[0], q)?);
                }
                if !cur.eat(b'x') {
                    break;
                }
            }
            cur.finish()?;
            if let [n] = dims[..] {
                return Ok(complete_graph(n)?);
            }
            let factors = dims
                .iter()
                .map(|&n| complete_graph(n))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(cartesian_product(&factors)?)
        }
        _ => Err(cur.error("expected `K`, `Q` or `T:`").into()),
    }
}
