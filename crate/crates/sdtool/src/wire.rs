//! JSON wire formats for the domain objects.
//!
//! Rationals are accepted as integer literals or as strings `"p/q"` and are
//! always serialized as strings. Forms serialize their terms in descending
//! graded lexicographic order and cycles their points in lexicographic
//! coordinate order, so output is byte-deterministic.

use std::fmt;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use sdtool_core::{
    BasePoint, CommuteWitness, Matrix, MatrixTuple, MultiForm, Poly, Rat, ZeroCycle,
};

/// Schema violation located by a path into the input document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub path: String,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

fn err<T>(path: &str, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        path: path.to_string(),
        message: message.into(),
    })
}

fn child(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn index(path: &str, i: usize) -> String {
    format!("{path}[{i}]")
}

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, ParseError> {
    v.as_object().ok_or_else(|| ParseError {
        path: path.to_string(),
        message: "expected an object".into(),
    })
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a [Value], ParseError> {
    v.as_array()
        .map(|a| a.as_slice())
        .ok_or_else(|| ParseError {
            path: path.to_string(),
            message: "expected an array".into(),
        })
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value, ParseError> {
    obj.get(key).ok_or_else(|| ParseError {
        path: child(path, key),
        message: "missing field".into(),
    })
}

fn get_count(
    obj: &Map<String, Value>,
    key: &str,
    path: &str,
    min: usize,
) -> Result<usize, ParseError> {
    let p = child(path, key);
    let n = get(obj, key, path)?.as_u64().ok_or_else(|| ParseError {
        path: p.clone(),
        message: "expected a nonnegative integer".into(),
    })?;
    if n > u32::MAX as u64 {
        return err(&p, "value out of range");
    }
    let n = n as usize;
    if n < min {
        return err(&p, format!("must be at least {min}"));
    }
    Ok(n)
}

/// A rational from an integer literal or a `"p/q"` string; the result is in
/// lowest terms with positive denominator.
pub fn parse_rat(v: &Value, path: &str) -> Result<Rat, ParseError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rat::from_integer(BigInt::from(i)))
            } else if let Some(u) = n.as_u64() {
                Ok(Rat::from_integer(BigInt::from(u)))
            } else {
                err(
                    path,
                    "expected an integer or a \"p/q\" string, found a non-integer number",
                )
            }
        }
        Value::String(s) => s.parse::<Rat>().map_err(|_| ParseError {
            path: path.to_string(),
            message: format!("invalid rational {s:?}"),
        }),
        _ => err(path, "expected an integer or a \"p/q\" string"),
    }
}

pub fn parse_rat_vec(v: &Value, path: &str) -> Result<Vec<Rat>, ParseError> {
    as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, e)| parse_rat(e, &index(path, i)))
        .collect()
}

/// An exponent vector of small nonnegative integers.
pub fn parse_exponents(v: &Value, path: &str) -> Result<Vec<u32>, ParseError> {
    as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let p = index(path, i);
            let n = e.as_u64().ok_or_else(|| ParseError {
                path: p.clone(),
                message: "expected a nonnegative integer".into(),
            })?;
            u32::try_from(n).map_err(|_| ParseError {
                path: p,
                message: "value out of range".into(),
            })
        })
        .collect()
}

pub fn parse_multiform(v: &Value, path: &str) -> Result<MultiForm, ParseError> {
    let obj = as_object(v, path)?;
    let vars = get_count(obj, "vars", path, 1)?;
    let degree = get_count(obj, "degree", path, 0)?;
    let terms = as_array(get(obj, "terms", path)?, &child(path, "terms"))?;
    let mut parsed = Vec::with_capacity(terms.len());
    for (i, t) in terms.iter().enumerate() {
        let tpath = index(&child(path, "terms"), i);
        let tobj = as_object(t, &tpath)?;
        let epath = child(&tpath, "exp");
        let exps = parse_exponents(get(tobj, "exp", &tpath)?, &epath)?;
        if exps.len() != vars {
            return err(
                &epath,
                format!("expected {} exponents, found {}", vars, exps.len()),
            );
        }
        let total: u64 = exps.iter().map(|&e| u64::from(e)).sum();
        if total != degree as u64 {
            return err(
                &epath,
                format!("exponents sum to {total}, expected degree {degree}"),
            );
        }
        let coef = parse_rat(get(tobj, "coef", &tpath)?, &child(&tpath, "coef"))?;
        parsed.push((exps, coef));
    }
    Ok(MultiForm::from_terms(vars, degree, parsed))
}

pub fn parse_base_point(v: &Value, path: &str) -> Result<BasePoint, ParseError> {
    let obj = as_object(v, path)?;
    let n = get_count(obj, "n", path, 0)?;
    let d = get_count(obj, "d", path, 1)?;
    let fpath = child(path, "forms");
    let farr = as_array(get(obj, "forms", path)?, &fpath)?;
    if farr.len() != n {
        return err(
            &fpath,
            format!("expected {} forms, found {}", n, farr.len()),
        );
    }
    let mut forms = Vec::with_capacity(n);
    for (i, fv) in farr.iter().enumerate() {
        let p = index(&fpath, i);
        let f = parse_multiform(fv, &p)?;
        if f.vars() != d {
            return err(
                &p,
                format!("form in {} variables, expected {}", f.vars(), d),
            );
        }
        if f.degree() != i + 1 {
            return err(
                &p,
                format!("form of degree {}, expected {}", f.degree(), i + 1),
            );
        }
        forms.push(f);
    }
    Ok(BasePoint::new(d, forms))
}

pub fn parse_zero_cycle(v: &Value, path: &str) -> Result<ZeroCycle, ParseError> {
    let obj = as_object(v, path)?;
    let d = get_count(obj, "d", path, 1)?;
    let ppath = child(path, "points");
    let parr = as_array(get(obj, "points", path)?, &ppath)?;
    if parr.is_empty() {
        return err(&ppath, "a cycle has at least one point");
    }
    let mut points = Vec::with_capacity(parr.len());
    for (i, pv) in parr.iter().enumerate() {
        let p = index(&ppath, i);
        let pobj = as_object(pv, &p)?;
        let cpath = child(&p, "coords");
        let coords = parse_rat_vec(get(pobj, "coords", &p)?, &cpath)?;
        if coords.len() != d {
            return err(
                &cpath,
                format!("expected {} coordinates, found {}", d, coords.len()),
            );
        }
        let mult = get_count(pobj, "mult", &p, 1)?;
        points.push((coords, mult));
    }
    Ok(ZeroCycle::new(d, points))
}

pub fn parse_matrix_tuple(v: &Value, path: &str) -> Result<MatrixTuple, ParseError> {
    let obj = as_object(v, path)?;
    let n = get_count(obj, "n", path, 1)?;
    let d = get_count(obj, "d", path, 1)?;
    let mpath = child(path, "matrices");
    let marr = as_array(get(obj, "matrices", path)?, &mpath)?;
    if marr.len() != d {
        return err(
            &mpath,
            format!("expected {} matrices, found {}", d, marr.len()),
        );
    }
    let mut mats = Vec::with_capacity(d);
    for (j, mv) in marr.iter().enumerate() {
        let jpath = index(&mpath, j);
        let rows = as_array(mv, &jpath)?;
        if rows.len() != n {
            return err(&jpath, format!("expected {} rows, found {}", n, rows.len()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (r, rv) in rows.iter().enumerate() {
            let rpath = index(&jpath, r);
            let cols = as_array(rv, &rpath)?;
            if cols.len() != n {
                return err(
                    &rpath,
                    format!("expected {} entries, found {}", n, cols.len()),
                );
            }
            for (c, ev) in cols.iter().enumerate() {
                entries.push(parse_rat(ev, &index(&rpath, c))?);
            }
        }
        mats.push(Matrix::new(n, entries));
    }
    Ok(MatrixTuple::new(mats))
}

pub fn rat_value(r: &Rat) -> Value {
    Value::String(r.to_string())
}

pub fn rat_vec_value(rs: &[Rat]) -> Value {
    Value::Array(rs.iter().map(rat_value).collect())
}

pub fn multiform_value(f: &MultiForm) -> Value {
    let terms: Vec<Value> = f
        .terms()
        .map(|(m, c)| json!({ "exp": m.exps(), "coef": rat_value(c) }))
        .collect();
    json!({ "vars": f.vars(), "degree": f.degree(), "terms": terms })
}

pub fn base_point_value(b: &BasePoint) -> Value {
    let forms: Vec<Value> = b.forms().iter().map(multiform_value).collect();
    json!({ "n": b.rank(), "d": b.dim(), "forms": forms })
}

pub fn zero_cycle_value(z: &ZeroCycle) -> Value {
    let points: Vec<Value> = z
        .points()
        .iter()
        .map(|(coords, mult)| json!({ "coords": rat_vec_value(coords), "mult": mult }))
        .collect();
    json!({ "d": z.dim(), "points": points })
}

pub fn matrix_tuple_value(t: &MatrixTuple) -> Value {
    let n = t.n();
    let matrices: Vec<Value> = t
        .matrices()
        .iter()
        .map(|m| {
            let rows: Vec<Value> = (0..n)
                .map(|r| Value::Array((0..n).map(|c| rat_value(m.at(r, c))).collect()))
                .collect();
            Value::Array(rows)
        })
        .collect();
    json!({ "n": n, "d": t.d(), "matrices": matrices })
}

pub fn poly_value(p: &Poly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(m, c)| json!({ "exp": m.exps(), "coef": rat_value(c) }))
        .collect();
    json!({ "vars": p.vars(), "terms": terms })
}

pub fn witness_value(w: &CommuteWitness) -> Value {
    json!({
        "i": w.i,
        "j": w.j,
        "row": w.row,
        "col": w.col,
        "value": rat_value(&w.value),
    })
}
