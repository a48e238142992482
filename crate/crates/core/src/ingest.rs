//! Sparse matrix and hypergraph file I/O, and the column-net / row-net
//! hypergraph models of a sparse matrix.
//!
//! The text hypergraph format is
//!
//! ```text
//! % comment lines start with '%'
//! B V N P F
//! [cost] pin pin ...        <- one line per net, N lines
//! weight                    <- one line per vertex, only if F & 2
//! ```
//!
//! where `B` is the index base (0 or 1), `V` the vertex count, `N` the net
//! count, `P` the total pin count and `F` a flag word: bit 0 means each net
//! line starts with its cost, bit 1 means vertex weights follow the nets.
//! A net line with no pins is an empty net.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::hgraph::Hypergraph;

/// Nonzero structure of a sparse matrix, 0-based, deduplicated and sorted
/// row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrixPattern {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize)>,
}

impl SparseMatrixPattern {
    pub fn new(rows: usize, cols: usize, mut entries: Vec<(usize, usize)>) -> Result<Self> {
        for &(i, j) in &entries {
            if i >= rows || j >= cols {
                return Err(Error::Config(format!(
                    "entry ({}, {}) outside a {}x{} matrix",
                    i, j, rows, cols
                )));
            }
        }
        entries.sort_unstable();
        entries.dedup();
        Ok(SparseMatrixPattern {
            rows,
            cols,
            entries,
        })
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn transpose(&self) -> SparseMatrixPattern {
        let mut entries: Vec<(usize, usize)> = self.entries.iter().map(|&(i, j)| (j, i)).collect();
        entries.sort_unstable();
        SparseMatrixPattern {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Symmetry {
    General,
    Symmetric,
}

pub fn read_matrix_market(path: impl AsRef<Path>) -> Result<SparseMatrixPattern> {
    let file = File::open(path)?;
    parse_matrix_market(BufReader::new(file))
}

pub fn parse_matrix_market<R: BufRead>(reader: R) -> Result<SparseMatrixPattern> {
    let mut lines = reader.lines().enumerate();

    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::format(1, "empty file"))?;
    let header = header?;
    let tokens: Vec<String> = header
        .split_whitespace()
        .map(|t| t.to_ascii_lowercase())
        .collect();
    if tokens.len() < 4
        || tokens[0] != "%%matrixmarket"
        || tokens[1] != "matrix"
        || tokens[2] != "coordinate"
    {
        return Err(Error::format(
            1,
            "expected '%%MatrixMarket matrix coordinate <field> <symmetry>'",
        ));
    }
    let field = tokens[3].as_str();
    if !matches!(field, "real" | "integer" | "complex" | "pattern") {
        return Err(Error::format(1, format!("unknown field type '{}'", field)));
    }
    let symmetry = match tokens.get(4).map(String::as_str) {
        None | Some("general") => Symmetry::General,
        Some("symmetric") | Some("skew-symmetric") | Some("hermitian") => Symmetry::Symmetric,
        Some(other) => return Err(Error::format(1, format!("unknown symmetry '{}'", other))),
    };

    let mut size: Option<(usize, usize, usize)> = None;
    let mut entries = Vec::new();
    let mut seen = 0usize;
    for (idx, line) in lines {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let mut it = trimmed.split_whitespace();
        let mut next_index = |what: &str| -> Result<usize> {
            it.next()
                .ok_or_else(|| Error::format(lineno, format!("missing {}", what)))?
                .parse::<usize>()
                .map_err(|e| Error::format(lineno, format!("bad {}: {}", what, e)))
        };
        match size {
            None => {
                let rows = next_index("row count")?;
                let cols = next_index("column count")?;
                let nnz = next_index("entry count")?;
                size = Some((rows, cols, nnz));
                entries.reserve(nnz);
            }
            Some((rows, cols, _)) => {
                let i = next_index("row index")?;
                let j = next_index("column index")?;
                if i == 0 || j == 0 || i > rows || j > cols {
                    return Err(Error::format(
                        lineno,
                        format!("entry ({}, {}) outside a {}x{} matrix", i, j, rows, cols),
                    ));
                }
                entries.push((i - 1, j - 1));
                if symmetry == Symmetry::Symmetric && i != j {
                    entries.push((j - 1, i - 1));
                }
                seen += 1;
            }
        }
    }
    let (rows, cols, nnz) = size.ok_or_else(|| Error::format(1, "missing size line"))?;
    if seen != nnz {
        return Err(Error::format(
            0,
            format!("size line declares {} entries, found {}", nnz, seen),
        ));
    }
    if symmetry == Symmetry::Symmetric && rows != cols {
        return Err(Error::format(1, "symmetric matrix must be square"));
    }
    SparseMatrixPattern::new(rows, cols, entries).map_err(|e| Error::format(0, e.to_string()))
}

pub fn write_matrix_market(m: &SparseMatrixPattern, path: impl AsRef<Path>) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    writeln!(out, "%%MatrixMarket matrix coordinate pattern general")?;
    writeln!(out, "{} {} {}", m.rows, m.cols, m.nnz())?;
    for &(i, j) in &m.entries {
        writeln!(out, "{} {}", i + 1, j + 1)?;
    }
    out.flush()?;
    Ok(())
}

/// One vertex per row, one net per column. Vertex weight is the row's
/// nonzero count unless `unit_weights` is set; every net costs 1.
pub fn column_net_model(m: &SparseMatrixPattern, unit_weights: bool) -> Hypergraph {
    let pins: Vec<(usize, usize)> = m.entries.iter().map(|&(i, j)| (j, i)).collect();
    let weights = if unit_weights {
        vec![1; m.rows]
    } else {
        let mut w = vec![0i64; m.rows];
        for &(i, _) in &m.entries {
            w[i] += 1;
        }
        w
    };
    Hypergraph::build(m.rows, m.cols, &pins, weights, vec![1; m.cols])
        .expect("a validated pattern always yields a valid hypergraph")
}

/// One vertex per column, one net per row.
pub fn row_net_model(m: &SparseMatrixPattern, unit_weights: bool) -> Hypergraph {
    column_net_model(&m.transpose(), unit_weights)
}

pub fn read_hypergraph_text(path: impl AsRef<Path>) -> Result<Hypergraph> {
    let file = File::open(path)?;
    parse_hypergraph_text(BufReader::new(file))
}

pub fn parse_hypergraph_text<R: BufRead>(reader: R) -> Result<Hypergraph> {
    let mut lines = reader
        .lines()
        .enumerate()
        .filter(|(_, l)| !matches!(l, Ok(s) if s.trim_start().starts_with('%')));

    let parse_num = |tok: &str, lineno: usize, what: &str| -> Result<i64> {
        tok.parse::<i64>()
            .map_err(|e| Error::format(lineno, format!("bad {} '{}': {}", what, tok, e)))
    };

    // header, skipping blank lines before it
    let (hline, header) = loop {
        match lines.next() {
            None => return Err(Error::format(1, "missing header")),
            Some((i, l)) => {
                let l = l?;
                if !l.trim().is_empty() {
                    break (i + 1, l);
                }
            }
        }
    };
    let fields: Vec<i64> = header
        .split_whitespace()
        .map(|t| parse_num(t, hline, "header field"))
        .collect::<Result<_>>()?;
    if fields.len() < 4 || fields.len() > 5 {
        return Err(Error::format(hline, "header must be 'B V N P [F]'"));
    }
    let base = fields[0];
    if base != 0 && base != 1 {
        return Err(Error::format(hline, "index base must be 0 or 1"));
    }
    if fields[1..4].iter().any(|&x| x < 0) {
        return Err(Error::format(hline, "negative count in header"));
    }
    let num_vertices = fields[1] as usize;
    let num_nets = fields[2] as usize;
    let declared_pins = fields[3] as usize;
    let flags = fields.get(4).copied().unwrap_or(0);
    if !(0..=3).contains(&flags) {
        return Err(Error::format(hline, "flags must be in 0..=3"));
    }
    let has_costs = flags & 1 != 0;
    let has_weights = flags & 2 != 0;

    let mut pins = Vec::with_capacity(declared_pins);
    let mut net_costs = vec![1i64; num_nets];
    for net in 0..num_nets {
        let (idx, line) = lines
            .next()
            .ok_or_else(|| Error::format(0, format!("expected {} net lines, got {}", num_nets, net)))?;
        let line = line?;
        let lineno = idx + 1;
        let mut toks = line.split_whitespace();
        if has_costs {
            let tok = toks
                .next()
                .ok_or_else(|| Error::format(lineno, "net line is missing its cost"))?;
            net_costs[net] = parse_num(tok, lineno, "net cost")?;
        }
        for tok in toks {
            let v = parse_num(tok, lineno, "pin")? - base;
            if v < 0 || v as usize >= num_vertices {
                return Err(Error::format(
                    lineno,
                    format!("pin {} outside vertex range", tok),
                ));
            }
            pins.push((net, v as usize));
        }
    }
    if pins.len() != declared_pins {
        return Err(Error::format(
            hline,
            format!(
                "header declares {} pins, net lines hold {}",
                declared_pins,
                pins.len()
            ),
        ));
    }

    let mut vertex_weights = vec![1i64; num_vertices];
    let mut rest = Vec::new();
    for (idx, line) in lines {
        let line = line?;
        for tok in line.split_whitespace() {
            rest.push((idx + 1, tok.to_string()));
        }
    }
    if has_weights {
        if rest.len() != num_vertices {
            return Err(Error::format(
                rest.last().map(|r| r.0).unwrap_or(0),
                format!("expected {} vertex weights, found {}", num_vertices, rest.len()),
            ));
        }
        for (v, (lineno, tok)) in rest.iter().enumerate() {
            vertex_weights[v] = parse_num(tok, *lineno, "vertex weight")?;
        }
    } else if let Some((lineno, _)) = rest.first() {
        return Err(Error::format(*lineno, "unexpected trailing data"));
    }

    Hypergraph::build(num_vertices, num_nets, &pins, vertex_weights, net_costs).map_err(|e| match e {
        Error::InvalidWeight(msg) => Error::format(0, msg),
        other => other,
    })
}

pub fn write_hypergraph_text(h: &Hypergraph, path: impl AsRef<Path>) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    format_hypergraph_text(h, &mut out)?;
    out.flush()?;
    Ok(())
}

/// Writes 1-based text; cost and weight sections are emitted only when some
/// value differs from 1.
pub fn format_hypergraph_text<W: Write>(h: &Hypergraph, out: &mut W) -> Result<()> {
    let has_costs = h.net_costs().iter().any(|&c| c != 1);
    let has_weights = h.vertex_weights().iter().any(|&w| w != 1);
    let flags = (has_costs as u8) | ((has_weights as u8) << 1);
    writeln!(
        out,
        "1 {} {} {} {}",
        h.num_vertices(),
        h.num_nets(),
        h.num_pins(),
        flags
    )?;
    let mut line = String::new();
    for net in 0..h.num_nets() {
        line.clear();
        if has_costs {
            line.push_str(&h.net_cost(net).to_string());
        }
        for &v in h.pins(net) {
            if !line.is_empty() {
                line.push(' ');
            }
            line.push_str(&(v + 1).to_string());
        }
        writeln!(out, "{}", line)?;
    }
    if has_weights {
        for &w in h.vertex_weights() {
            writeln!(out, "{}", w)?;
        }
    }
    Ok(())
}
