//! JSON interchange documents for cycles, complexes, functions, morphisms
//! and diagonal bundles. Integers and rationals are written as strings.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{format_rational, parse_integer, parse_rational, IntMatrix, IntVec, RatVec, Rational};
use crate::functions::PLFunction;
use crate::intersect::Morphism;
use crate::linspace::{fnn, DiagonalRepresentation, SymbolicFunction};
use crate::polyhedra::{Cell, Complex, TropicalCycle};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellDoc {
    pub vertices: Vec<usize>,
    pub rays: Vec<usize>,
    #[serde(default)]
    pub lineality: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<String>,
}

/// A weighted cycle (`kind = "cycle"`) or an unweighted complex
/// (`kind = "complex"`). Cells index into the shared vertex, ray and
/// lineality lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyhedralDoc {
    pub kind: String,
    pub ambient_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    pub vertices: Vec<Vec<String>>,
    pub rays: Vec<Vec<String>>,
    #[serde(default)]
    pub lineality: Vec<Vec<String>>,
    pub cells: Vec<CellDoc>,
}

/// Where a function's carrier comes from: a file path, the shorthand
/// `fnn:<n>` for `F^n_n`, or an inline complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CarrierRef {
    Reference(String),
    Inline(Box<PolyhedralDoc>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceDoc {
    pub cell: usize,
    pub covector: Vec<String>,
    pub offset: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionDoc {
    pub kind: String,
    pub ambient_dim: usize,
    pub carrier: CarrierRef,
    pub pieces: Vec<PieceDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismDoc {
    pub kind: String,
    pub source_dim: usize,
    pub target_dim: usize,
    pub matrix: Vec<Vec<String>>,
    pub translation: Vec<String>,
}

/// A diagonal representation on `F^n_n`: tuples of ray-function
/// combinations, each also given cell by cell on the shared carrier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalDoc {
    pub kind: String,
    pub n: usize,
    pub k: usize,
    pub codim: usize,
    pub carrier: CarrierRef,
    pub symbolic: Vec<Vec<String>>,
    pub tuples: Vec<Vec<Vec<PieceDoc>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
}

fn ints(v: &[BigInt]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn rats(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn parse_ints(v: &[String], len: usize, what: &str) -> Result<IntVec> {
    if v.len() != len {
        return Err(Error::Parse(format!("{what}: expected {len} entries, found {}", v.len())));
    }
    v.iter().map(|s| parse_integer(s)).collect()
}

fn parse_rats(v: &[String], len: usize, what: &str) -> Result<RatVec> {
    if v.len() != len {
        return Err(Error::Parse(format!("{what}: expected {len} entries, found {}", v.len())));
    }
    v.iter().map(|s| parse_rational(s)).collect()
}

/// Interns vectors in sorted order and hands out indices.
struct Pool<T: Ord + Clone> {
    index: BTreeMap<T, usize>,
}

impl<T: Ord + Clone> Pool<T> {
    fn new<'a>(items: impl IntoIterator<Item = &'a T>) -> Self
    where
        T: 'a,
    {
        let mut index = BTreeMap::new();
        for t in items {
            index.insert(t.clone(), 0);
        }
        for (i, v) in index.values_mut().enumerate() {
            *v = i;
        }
        Self { index }
    }

    fn id(&self, t: &T) -> usize {
        self.index[t]
    }

    fn items(&self) -> impl Iterator<Item = &T> {
        self.index.keys()
    }
}

fn polyhedral_doc(kind: &str, ambient: usize, dim: Option<usize>, cells: &[(Cell, Option<BigInt>)]) -> PolyhedralDoc {
    let verts: Vec<RatVec> = cells.iter().flat_map(|(c, _)| c.vertices()).collect();
    let rays: Vec<IntVec> = cells.iter().flat_map(|(c, _)| c.directions()).collect();
    let lins: Vec<IntVec> = cells.iter().flat_map(|(c, _)| c.lineality_directions()).collect();
    let (vp, rp, lp) = (Pool::new(&verts), Pool::new(&rays), Pool::new(&lins));
    let cells = cells
        .iter()
        .map(|(c, w)| CellDoc {
            vertices: c.vertices().iter().map(|v| vp.id(v)).collect(),
            rays: c.directions().iter().map(|r| rp.id(r)).collect(),
            lineality: c.lineality_directions().iter().map(|l| lp.id(l)).collect(),
            weight: w.as_ref().map(|w| w.to_string()),
        })
        .collect();
    PolyhedralDoc {
        kind: kind.into(),
        ambient_dim: ambient,
        dim,
        vertices: vp.items().map(|v| rats(v)).collect(),
        rays: rp.items().map(|r| ints(r)).collect(),
        lineality: lp.items().map(|l| ints(l)).collect(),
        cells,
    }
}

pub fn cycle_to_doc(x: &TropicalCycle) -> PolyhedralDoc {
    let cells: Vec<(Cell, Option<BigInt>)> = x.cells().iter().map(|(c, w)| (c.clone(), Some(w.clone()))).collect();
    polyhedral_doc("cycle", x.ambient_dim(), Some(x.dim()), &cells)
}

pub fn complex_to_doc(c: &Complex) -> PolyhedralDoc {
    let cells: Vec<(Cell, Option<BigInt>)> = c.cells().iter().map(|c| (c.clone(), None)).collect();
    polyhedral_doc("complex", c.ambient_dim(), None, &cells)
}

fn pick<T: Clone>(ids: &[usize], pool: &[T], what: &str, cell: usize) -> Result<Vec<T>> {
    ids.iter()
        .map(|&i| {
            pool.get(i)
                .cloned()
                .ok_or_else(|| Error::Parse(format!("cell {cell}: {what} index {i} out of range")))
        })
        .collect()
}

/// Cells of a document in file order.
fn doc_cells(doc: &PolyhedralDoc) -> Result<Vec<Cell>> {
    let n = doc.ambient_dim;
    let verts = doc
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| parse_rats(v, n, &format!("vertex {i}")))
        .collect::<Result<Vec<_>>>()?;
    let rays = doc
        .rays
        .iter()
        .enumerate()
        .map(|(i, v)| parse_ints(v, n, &format!("ray {i}")))
        .collect::<Result<Vec<_>>>()?;
    let lins = doc
        .lineality
        .iter()
        .enumerate()
        .map(|(i, v)| parse_ints(v, n, &format!("lineality vector {i}")))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::with_capacity(doc.cells.len());
    for (ci, c) in doc.cells.iter().enumerate() {
        let v: Vec<RatVec> = pick(&c.vertices, &verts, "vertex", ci)?;
        let r: Vec<IntVec> = pick(&c.rays, &rays, "ray", ci)?;
        let l: Vec<IntVec> = pick(&c.lineality, &lins, "lineality", ci)?;
        let cell = Cell::polyhedron(n, &v, &r, &l)
            .ok_or_else(|| Error::Parse(format!("cell {ci}: needs at least one vertex")))?;
        out.push(cell);
    }
    Ok(out)
}

pub fn cycle_from_doc(doc: &PolyhedralDoc) -> Result<TropicalCycle> {
    if doc.kind != "cycle" {
        return Err(Error::Parse(format!("expected a cycle document, found kind {:?}", doc.kind)));
    }
    let cells = doc_cells(doc)?;
    let dim = match doc.dim {
        Some(d) => d,
        None => cells.first().map(Cell::dim).ok_or_else(|| Error::Parse("empty cycle without dim".into()))?,
    };
    let mut weighted = Vec::with_capacity(cells.len());
    for (i, (cell, cd)) in cells.into_iter().zip(&doc.cells).enumerate() {
        let w = cd
            .weight
            .as_deref()
            .ok_or_else(|| Error::Parse(format!("cell {i}: missing weight")))?;
        if cell.dim() != dim {
            return Err(Error::Parse(format!("cell {i}: dimension {} in a cycle of dimension {dim}", cell.dim())));
        }
        weighted.push((cell, parse_integer(w)?));
    }
    TropicalCycle::new(doc.ambient_dim, dim, weighted)
}

pub fn complex_from_doc(doc: &PolyhedralDoc) -> Result<Complex> {
    if doc.kind != "complex" && doc.kind != "cycle" {
        return Err(Error::Parse(format!("expected a complex document, found kind {:?}", doc.kind)));
    }
    Complex::new(doc.ambient_dim, doc_cells(doc)?)
}

fn resolve_carrier(r: &CarrierRef, base: Option<&Path>) -> Result<(Complex, Vec<Cell>)> {
    let doc = match r {
        CarrierRef::Reference(s) => {
            if let Some(n) = s.strip_prefix("fnn:") {
                let n: usize = n.parse().map_err(|_| Error::Parse(format!("bad carrier shorthand {s:?}")))?;
                let c = fnn(n);
                let cells = c.cells().to_vec();
                return Ok((c, cells));
            }
            let path: PathBuf = match base {
                Some(b) => b.join(s),
                None => PathBuf::from(s),
            };
            read_json::<PolyhedralDoc>(&path)?
        }
        CarrierRef::Inline(d) => (**d).clone(),
    };
    let cells = doc_cells(&doc)?;
    let complex = Complex::new(doc.ambient_dim, cells.clone())?;
    Ok((complex, cells))
}

fn pieces_to_forms(pieces: &[PieceDoc], carrier: &Complex, file_cells: &[Cell], what: &str) -> Result<Vec<RatVec>> {
    let n = carrier.ambient_dim();
    let mut forms: Vec<Option<RatVec>> = vec![None; carrier.cells().len()];
    for (pi, p) in pieces.iter().enumerate() {
        let cell = file_cells
            .get(p.cell)
            .ok_or_else(|| Error::Parse(format!("{what}, piece {pi}: cell {} out of range", p.cell)))?;
        let slot = carrier
            .cells()
            .iter()
            .position(|c| c == cell)
            .ok_or_else(|| Error::Parse(format!("{what}, piece {pi}: cell {} is not maximal", p.cell)))?;
        let mut f = vec![parse_rational(&p.offset)?];
        f.extend(parse_rats(&p.covector, n, &format!("{what}, piece {pi}"))?);
        if forms[slot].replace(f).is_some() {
            return Err(Error::Parse(format!("{what}: cell {} given twice", p.cell)));
        }
    }
    forms
        .into_iter()
        .enumerate()
        .map(|(i, f)| f.ok_or_else(|| Error::Parse(format!("{what}: no form for carrier cell {i}"))))
        .collect()
}

fn function_pieces(f: &PLFunction) -> Vec<PieceDoc> {
    f.forms()
        .iter()
        .enumerate()
        .map(|(i, form)| PieceDoc { cell: i, covector: rats(&form[1..]), offset: format_rational(&form[0]) })
        .collect()
}

/// A function document. With `carrier = None` the carrier is written inline.
pub fn function_to_doc(f: &PLFunction, carrier: Option<CarrierRef>) -> FunctionDoc {
    let carrier = carrier.unwrap_or_else(|| CarrierRef::Inline(Box::new(complex_to_doc(f.carrier()))));
    FunctionDoc { kind: "function".into(), ambient_dim: f.ambient_dim(), carrier, pieces: function_pieces(f) }
}

/// Reads a function; carrier paths are resolved relative to `base`.
pub fn function_from_doc(doc: &FunctionDoc, base: Option<&Path>) -> Result<PLFunction> {
    if doc.kind != "function" {
        return Err(Error::Parse(format!("expected a function document, found kind {:?}", doc.kind)));
    }
    let (carrier, file_cells) = resolve_carrier(&doc.carrier, base)?;
    if carrier.ambient_dim() != doc.ambient_dim {
        return Err(Error::Parse("carrier lives in a different space".into()));
    }
    let forms = pieces_to_forms(&doc.pieces, &carrier, &file_cells, "function")?;
    PLFunction::new(carrier, forms)
}

pub fn morphism_to_doc(f: &Morphism) -> MorphismDoc {
    MorphismDoc {
        kind: "morphism".into(),
        source_dim: f.source_dim(),
        target_dim: f.target_dim(),
        matrix: f.matrix().to_rows().iter().map(|r| ints(r)).collect(),
        translation: ints(f.translation()),
    }
}

pub fn morphism_from_doc(doc: &MorphismDoc) -> Result<Morphism> {
    if doc.kind != "morphism" {
        return Err(Error::Parse(format!("expected a morphism document, found kind {:?}", doc.kind)));
    }
    if doc.matrix.len() != doc.target_dim {
        return Err(Error::Parse(format!("matrix has {} rows, target_dim is {}", doc.matrix.len(), doc.target_dim)));
    }
    let rows = doc
        .matrix
        .iter()
        .enumerate()
        .map(|(i, r)| parse_ints(r, doc.source_dim, &format!("matrix row {i}")))
        .collect::<Result<Vec<_>>>()?;
    let t = parse_ints(&doc.translation, doc.target_dim, "translation")?;
    Morphism::new(IntMatrix::from_rows_with_cols(&rows, doc.source_dim), t)
}

/// A bundle for a representation on `F^n_n` cutting out the diagonal of
/// `L^n_{n-k}`. The representation must carry its symbolic form.
pub fn diagonal_to_doc(n: usize, k: usize, rep: &DiagonalRepresentation, carrier: CarrierRef, verified: Option<bool>) -> Result<DiagonalDoc> {
    let sym = rep
        .symbolic
        .as_ref()
        .ok_or_else(|| Error::Invalid("representation has no symbolic form".into()))?;
    Ok(DiagonalDoc {
        kind: "diagonal".into(),
        n,
        k,
        codim: rep.codim,
        carrier,
        symbolic: sym.iter().map(|t| t.iter().map(|f| f.to_string()).collect()).collect(),
        tuples: rep.tuples().iter().map(|t| t.iter().map(function_pieces).collect()).collect(),
        verified,
    })
}

pub fn diagonal_from_doc(doc: &DiagonalDoc, base: Option<&Path>) -> Result<DiagonalRepresentation> {
    if doc.kind != "diagonal" {
        return Err(Error::Parse(format!("expected a diagonal document, found kind {:?}", doc.kind)));
    }
    let (carrier, file_cells) = resolve_carrier(&doc.carrier, base)?;
    if carrier.ambient_dim() != 2 * doc.n {
        return Err(Error::Parse(format!("carrier does not live in R^{}", 2 * doc.n)));
    }
    let mut tuples = Vec::with_capacity(doc.tuples.len());
    for (i, t) in doc.tuples.iter().enumerate() {
        if t.len() != doc.codim {
            return Err(Error::Parse(format!("tuple {i} has {} functions, codim is {}", t.len(), doc.codim)));
        }
        let mut fs = Vec::with_capacity(t.len());
        for (j, pieces) in t.iter().enumerate() {
            let forms = pieces_to_forms(pieces, &carrier, &file_cells, &format!("tuple {i}, function {j}"))?;
            fs.push(PLFunction::new(carrier.clone(), forms)?);
        }
        tuples.push(fs);
    }
    let symbolic = doc
        .symbolic
        .iter()
        .map(|t| t.iter().map(|s| SymbolicFunction::parse(s)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let mut rep = DiagonalRepresentation::single(doc.codim, tuples);
    rep.symbolic = Some(symbolic);
    Ok(rep)
}

/// Pretty JSON with a trailing newline; byte-stable for equal values.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

/// Parses JSON, reporting `origin:line:column` on failure.
pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str, origin: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{origin}:{}:{}: {e}", e.line(), e.column())))
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    from_json(&text, &path.display().to_string())
}

pub fn cycle_to_json(x: &TropicalCycle) -> String {
    to_json(&cycle_to_doc(x))
}

pub fn cycle_from_json(text: &str, origin: &str) -> Result<TropicalCycle> {
    cycle_from_doc(&from_json(text, origin)?).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{origin}: {m}")),
        other => other,
    })
}
