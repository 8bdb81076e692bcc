//! JSON wire formats.
//!
//! Exact scalars ride in strings using the RAT grammar
//! `'-'? digits ('/' digits)?`; a scalar is `{"re": RAT, "im": RAT}` and the
//! `"im"` key may be omitted on output only in real-output mode (input
//! always accepts both forms). Objects serialize with keys in alphabetical
//! order, so equal values have byte-identical encodings.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::group::{GroupContext, MembershipHint};
use crate::liealg::{LieAlgebra, RootDatum};
use crate::mat::Mat;
use crate::scalar::{parse_rat, rat_to_string, Scalar};
use crate::subspace::Subspace;
use crate::verify::CheckReport;

/// Output rendering options.
#[derive(Clone, Copy, Debug, Default)]
pub struct OutputOpts {
    /// Omit `"im"` when the imaginary part is zero.
    pub real_output: bool,
}

pub fn scalar_to_value(s: &Scalar, opts: OutputOpts) -> Value {
    let mut m = Map::new();
    m.insert("re".into(), Value::String(rat_to_string(s.re())));
    if !(opts.real_output && s.is_real()) {
        m.insert("im".into(), Value::String(rat_to_string(s.im())));
    }
    Value::Object(m)
}

pub fn scalar_from_value(v: &Value) -> Result<Scalar> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Input(format!("scalar must be an object, got {v}")))?;
    for key in obj.keys() {
        if key != "re" && key != "im" {
            return Err(Error::Input(format!("unexpected key {key:?} in scalar")));
        }
    }
    let re = match obj.get("re") {
        Some(Value::String(s)) => parse_rat(s)?,
        Some(other) => {
            return Err(Error::Input(format!(
                "scalar \"re\" must be a string, got {other}"
            )))
        }
        None => return Err(Error::Input("scalar is missing \"re\"".into())),
    };
    let im = match obj.get("im") {
        Some(Value::String(s)) => parse_rat(s)?,
        Some(other) => {
            return Err(Error::Input(format!(
                "scalar \"im\" must be a string, got {other}"
            )))
        }
        None => num_rational::BigRational::new(0.into(), 1.into()),
    };
    Ok(Scalar::new(re, im))
}

pub fn mat_to_value(m: &Mat, opts: OutputOpts) -> Value {
    let entries: Vec<Value> = (0..m.rows())
        .map(|r| Value::Array(m.row(r).iter().map(|s| scalar_to_value(s, opts)).collect()))
        .collect();
    json!({
        "cols": m.cols(),
        "entries": entries,
        "rows": m.rows(),
    })
}

pub fn mat_from_value(v: &Value) -> Result<Mat> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Input("matrix must be an object".into()))?;
    let rows = obj
        .get("rows")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Input("matrix is missing integer \"rows\"".into()))?
        as usize;
    let cols = obj
        .get("cols")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Input("matrix is missing integer \"cols\"".into()))?
        as usize;
    let entries = obj
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Input("matrix is missing array \"entries\"".into()))?;
    if entries.len() != rows {
        return Err(Error::Input(format!(
            "matrix declares {rows} rows but \"entries\" has {}",
            entries.len()
        )));
    }
    let mut flat = Vec::with_capacity(rows * cols);
    for (r, row) in entries.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| Error::Input(format!("entries[{r}] is not an array")))?;
        if row.len() != cols {
            return Err(Error::Input(format!(
                "entries[{r}] has {} entries, expected {cols}",
                row.len()
            )));
        }
        for (c, cell) in row.iter().enumerate() {
            flat.push(
                scalar_from_value(cell)
                    .map_err(|e| Error::Input(format!("entries[{r}][{c}]: {e}")))?,
            );
        }
    }
    Ok(Mat::new(rows, cols, flat))
}

pub fn subspace_to_value(s: &Subspace, opts: OutputOpts) -> Value {
    json!({
        "ambient_dim": s.ambient_dim(),
        "basis": mat_to_value(s.basis(), opts),
        "dim": s.dim(),
    })
}

pub fn subspace_from_value(v: &Value) -> Result<Subspace> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Input("subspace must be an object".into()))?;
    let ambient = obj
        .get("ambient_dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Input("subspace is missing \"ambient_dim\"".into()))?
        as usize;
    let basis = mat_from_value(
        obj.get("basis")
            .ok_or_else(|| Error::Input("subspace is missing \"basis\"".into()))?,
    )?;
    if basis.rows() > 0 && basis.cols() != ambient {
        return Err(Error::Input(format!(
            "subspace basis has width {}, ambient_dim is {ambient}",
            basis.cols()
        )));
    }
    if basis.rows() == 0 {
        return Ok(Subspace::zero(ambient));
    }
    Ok(Subspace::from_mat(&basis))
}

pub fn lie_to_value(l: &LieAlgebra, opts: OutputOpts) -> Value {
    json!({
        "ambient": l.ambient(),
        "basis": l.basis().iter().map(|m| mat_to_value(m, opts)).collect::<Vec<_>>(),
    })
}

/// Load an algebra; the basis is taken in file order, structure constants
/// are recomputed, never trusted from the file.
pub fn lie_from_value(v: &Value) -> Result<LieAlgebra> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Input("algebra must be an object".into()))?;
    let ambient = obj
        .get("ambient")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Input("algebra is missing integer \"ambient\"".into()))?
        as usize;
    let basis_vals = obj
        .get("basis")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Input("algebra is missing array \"basis\"".into()))?;
    let mut basis = Vec::with_capacity(basis_vals.len());
    for (i, b) in basis_vals.iter().enumerate() {
        basis.push(mat_from_value(b).map_err(|e| Error::Input(format!("basis[{i}]: {e}")))?);
    }
    LieAlgebra::from_basis(ambient, basis)
}

pub fn group_to_value(g: &GroupContext, opts: OutputOpts) -> Value {
    json!({
        "ambient": g.ambient(),
        "hint": g.hint().as_str(),
        "lie": lie_to_value(g.lie(), opts),
        "name": g.name(),
    })
}

/// Load a group context. Loaded groups carry no sampler or chart.
pub fn group_from_value(v: &Value) -> Result<GroupContext> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Input("group must be an object".into()))?;
    let name = obj
        .get("name")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Input("group is missing string \"name\"".into()))?;
    let ambient = obj
        .get("ambient")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Input("group is missing integer \"ambient\"".into()))?
        as usize;
    let lie = lie_from_value(
        obj.get("lie")
            .ok_or_else(|| Error::Input("group is missing \"lie\"".into()))?,
    )?;
    let hint = match obj.get("hint") {
        Some(Value::String(s)) => MembershipHint::parse(s)?,
        Some(other) => {
            return Err(Error::Input(format!(
                "group \"hint\" must be a string, got {other}"
            )))
        }
        None => MembershipHint::None,
    };
    GroupContext::new(name, ambient, lie, hint, None)
}

/// A subalgebra argument: `{"vectors": [[SCALAR,...],...]}` in
/// g-coordinates, or `{"indices": [i,...]}` selecting basis elements.
pub fn subalgebra_arg_from_value(lie: &LieAlgebra, v: &Value) -> Result<Subspace> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Input("subalgebra argument must be an object".into()))?;
    if let Some(vectors) = obj.get("vectors") {
        let arr = vectors
            .as_array()
            .ok_or_else(|| Error::Input("\"vectors\" must be an array".into()))?;
        let mut rows = Vec::with_capacity(arr.len());
        for (i, row) in arr.iter().enumerate() {
            let row = row
                .as_array()
                .ok_or_else(|| Error::Input(format!("vectors[{i}] is not an array")))?;
            if row.len() != lie.dim() {
                return Err(Error::Input(format!(
                    "vectors[{i}] has length {}, algebra dimension is {}",
                    row.len(),
                    lie.dim()
                )));
            }
            rows.push(
                row.iter()
                    .map(scalar_from_value)
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| Error::Input(format!("vectors[{i}]: {e}")))?,
            );
        }
        return Ok(Subspace::from_span(lie.dim(), &rows));
    }
    if let Some(indices) = obj.get("indices") {
        let arr = indices
            .as_array()
            .ok_or_else(|| Error::Input("\"indices\" must be an array".into()))?;
        return subalgebra_from_indices(
            lie,
            &arr.iter()
                .map(|x| {
                    x.as_u64()
                        .map(|u| u as usize)
                        .ok_or_else(|| Error::Input("indices must be nonnegative integers".into()))
                })
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Err(Error::Input(
        "subalgebra argument needs \"vectors\" or \"indices\"".into(),
    ))
}

/// Span of the selected basis elements.
pub fn subalgebra_from_indices(lie: &LieAlgebra, indices: &[usize]) -> Result<Subspace> {
    let mut rows = Vec::with_capacity(indices.len());
    for &i in indices {
        if i >= lie.dim() {
            return Err(Error::Input(format!(
                "basis index {i} out of range for dimension {}",
                lie.dim()
            )));
        }
        let mut row = vec![Scalar::zero(); lie.dim()];
        row[i] = Scalar::one();
        rows.push(row);
    }
    Ok(Subspace::from_span(lie.dim(), &rows))
}

pub fn root_datum_to_value(d: &RootDatum, opts: OutputOpts) -> Value {
    let roots: Vec<Value> = d
        .roots()
        .iter()
        .map(|r| {
            json!({
                "dim": r.space.dim(),
                "space": subspace_to_value(&r.space, opts),
                "values": r.values.iter().map(|s| scalar_to_value(s, opts)).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "h_basis": mat_to_value(d.h_basis(), opts),
        "roots": roots,
    })
}

/// Canonical report encoding. In canonical mode `runtime_ms` is pinned to 0
/// so repeated runs with one seed are byte-identical; pass `canonical =
/// false` to include the measured runtime.
pub fn report_to_value(r: &CheckReport, canonical: bool) -> Value {
    json!({
        "check": r.check,
        "outcome": r.outcome.as_str(),
        "runtime_ms": if canonical { 0 } else { r.runtime_ms },
        "samples": r.samples,
        "seed": r.seed,
        "witnesses": r.witnesses,
    })
}
