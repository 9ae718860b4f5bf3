//! graph6 reader and writer, restricted to the single-byte size header.
//!
//! A record is `63 + n` followed by the upper triangle of the adjacency
//! matrix read column by column (`x(0,1), x(0,2), x(1,2), x(0,3), ...`),
//! packed six bits per byte, most significant bit first, each byte offset
//! by 63. Trailing padding bits must be zero.

use std::io::{BufRead, Write};

use thiserror::Error;

use crate::graph::{Graph, MAX_ORDER};

const BIAS: u8 = 63;
const MAX_PRINTABLE: u8 = 126;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty record")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside the printable range 63..=126")]
    ByteOutOfRange { offset: usize, byte: u8 },
    #[error("multi-byte size header at offset 0 is not supported")]
    MultiByteHeader,
    #[error("order {order} exceeds the cap of {MAX_ORDER} vertices (offset 0)")]
    OrderTooLarge { order: usize },
    #[error("expected {expected} bytes for order {order}, found {found} (first bad offset {offset})")]
    BadLength { order: usize, expected: usize, found: usize, offset: usize },
    #[error("nonzero padding bits in the last byte at offset {offset}")]
    NonzeroPadding { offset: usize },
}

impl Graph6Error {
    /// Byte offset within the record where the problem was detected.
    pub fn offset(&self) -> usize {
        match *self {
            Graph6Error::Empty | Graph6Error::MultiByteHeader | Graph6Error::OrderTooLarge { .. } => 0,
            Graph6Error::ByteOutOfRange { offset, .. }
            | Graph6Error::BadLength { offset, .. }
            | Graph6Error::NonzeroPadding { offset } => offset,
        }
    }
}

fn body_len(order: usize) -> usize {
    (order * order.saturating_sub(1) / 2).div_ceil(6)
}

/// Parses one graph6 record. A trailing `\n` or `\r\n` is ignored.
pub fn parse_graph6(line: &[u8]) -> Result<Graph, Graph6Error> {
    let line = strip_line_end(line);
    let (&head, body) = line.split_first().ok_or(Graph6Error::Empty)?;
    if !(BIAS..=MAX_PRINTABLE).contains(&head) {
        return Err(Graph6Error::ByteOutOfRange { offset: 0, byte: head });
    }
    if head == MAX_PRINTABLE {
        return Err(Graph6Error::MultiByteHeader);
    }
    let order = (head - BIAS) as usize;
    if order > MAX_ORDER {
        return Err(Graph6Error::OrderTooLarge { order });
    }
    let expected = body_len(order);
    if let Some((i, &byte)) = body.iter().enumerate().find(|(_, b)| !(BIAS..=MAX_PRINTABLE).contains(*b)) {
        return Err(Graph6Error::ByteOutOfRange { offset: i + 1, byte });
    }
    if body.len() != expected {
        return Err(Graph6Error::BadLength {
            order,
            expected: expected + 1,
            found: line.len(),
            offset: 1 + expected.min(body.len()),
        });
    }

    let mut g = Graph::empty(order).expect("order checked against cap");
    let mut k = 0usize;
    for j in 1..order {
        for i in 0..j {
            let byte = body[k / 6] - BIAS;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.insert_edge(i, j).expect("indices below order");
            }
            k += 1;
        }
    }
    if !k.is_multiple_of(6) {
        let last = body[k / 6] - BIAS;
        let pad = (1u8 << (6 - k % 6)) - 1;
        if last & pad != 0 {
            return Err(Graph6Error::NonzeroPadding { offset: 1 + k / 6 });
        }
    }
    Ok(g)
}

/// graph6 text for the graph under its current labeling (no trailing newline).
pub fn write_graph6(g: &Graph) -> String {
    String::from_utf8(encode(g)).expect("graph6 is ASCII")
}

/// graph6 bytes for the graph under its current labeling.
pub fn encode(g: &Graph) -> Vec<u8> {
    let n = g.order();
    let mut out = Vec::with_capacity(1 + body_len(n));
    out.push(BIAS + n as u8);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        let row = g.neighbors(j);
        for i in 0..j {
            acc = acc << 1 | (row >> i & 1) as u8;
            filled += 1;
            if filled == 6 {
                out.push(BIAS + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(BIAS + (acc << (6 - filled)));
    }
    out
}

fn strip_line_end(line: &[u8]) -> &[u8] {
    let line = line.strip_suffix(b"\n").unwrap_or(line);
    line.strip_suffix(b"\r").unwrap_or(line)
}

/// What a [`Graph6Reader`] does with a record that fails to parse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OnError {
    /// Yield the error, then stop.
    Abort,
    /// Count the bad line and keep going.
    Skip,
}

#[derive(Debug, Error)]
pub enum StreamError {
    #[error("line {line}: {source}")]
    Parse {
        line: usize,
        #[source]
        source: Graph6Error,
    },
    #[error("read error after line {line}: {source}")]
    Io {
        line: usize,
        #[source]
        source: std::io::Error,
    },
}

/// Streams graphs from line-oriented graph6 input, in file order. Blank
/// lines and an optional `>>graph6<<` header are skipped. Line numbers are
/// 1-based.
pub struct Graph6Reader<R> {
    source: R,
    policy: OnError,
    line_no: usize,
    buf: Vec<u8>,
    skipped: usize,
    done: bool,
}

impl<R: BufRead> Graph6Reader<R> {
    pub fn new(source: R, policy: OnError) -> Self {
        Graph6Reader { source, policy, line_no: 0, buf: Vec::new(), skipped: 0, done: false }
    }

    /// Number of malformed lines skipped so far (only in [`OnError::Skip`] mode).
    pub fn skipped(&self) -> usize {
        self.skipped
    }

    pub fn line_number(&self) -> usize {
        self.line_no
    }
}

impl<R: BufRead> Iterator for Graph6Reader<R> {
    type Item = Result<Graph, StreamError>;

    fn next(&mut self) -> Option<Self::Item> {
        while !self.done {
            self.buf.clear();
            match self.source.read_until(b'\n', &mut self.buf) {
                Ok(0) => self.done = true,
                Ok(_) => {
                    self.line_no += 1;
                    let mut rec = strip_line_end(&self.buf);
                    if self.line_no == 1 {
                        rec = rec.strip_prefix(b">>graph6<<").unwrap_or(rec);
                    }
                    if rec.is_empty() {
                        continue;
                    }
                    match parse_graph6(rec) {
                        Ok(g) => return Some(Ok(g)),
                        Err(source) => match self.policy {
                            OnError::Skip => self.skipped += 1,
                            OnError::Abort => {
                                self.done = true;
                                return Some(Err(StreamError::Parse { line: self.line_no, source }));
                            }
                        },
                    }
                }
                Err(source) => {
                    self.done = true;
                    return Some(Err(StreamError::Io { line: self.line_no, source }));
                }
            }
        }
        None
    }
}

/// Convenience wrapper around [`Graph6Reader`].
pub fn stream_graphs<R: BufRead>(source: R, policy: OnError) -> Graph6Reader<R> {
    Graph6Reader::new(source, policy)
}

/// Writes one record per line, LF-terminated.
pub fn write_all<'a, W: Write>(
    mut out: W,
    graphs: impl IntoIterator<Item = &'a Graph>,
) -> std::io::Result<()> {
    for g in graphs {
        out.write_all(&encode(g))?;
        out.write_all(b"\n")?;
    }
    Ok(())
}
