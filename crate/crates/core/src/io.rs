//! JSON encodings.
//!
//! * complex numbers: `[re, im]`
//! * bicomplex scalars: `{"idem": [re-, im-, re+, im+]}`, `{"cart": [re1, im1, re2, im2]}`
//!   or `{"real": [u1, u2, u3, u4]}` on input; output carries `idem` and `cart`
//! * operators: `{"n": 2, "t1": [[[1,0],[0,0]], ...], "t2": ...}`, or
//!   `{"matrix": [[scalar, ...], ...]}` with bicomplex entries
//! * vectors: `{"minus": [...], "plus": [...]}` or a list of scalars
//! * matrices: `{"minus": [[...]], "plus": [[...]]}` or rows of scalars

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CSubspace};
use crate::operator::{BicomplexMatrix, BicomplexOperator, BicomplexVector};
use crate::scalar::Bicomplex;
use crate::Complex;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScalarJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub idem: Option<[f64; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cart: Option<[f64; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub real: Option<[f64; 4]>,
}

impl ScalarJson {
    pub fn to_bicomplex(&self) -> Result<Bicomplex> {
        match (self.idem, self.cart, self.real) {
            (Some(a), None, None) => Bicomplex::new(Complex::new(a[0], a[1]), Complex::new(a[2], a[3])),
            (None, Some(a), None) => Bicomplex::from_cartesian(Complex::new(a[0], a[1]), Complex::new(a[2], a[3])),
            (None, None, Some(u)) => Bicomplex::from_real(u[0], u[1], u[2], u[3]),
            _ => Err(Error::parse("scalar", "expected exactly one of \"idem\", \"cart\", \"real\"")),
        }
    }

    /// Canonical output form: `idem` plus `cart`.
    pub fn from_bicomplex(x: Bicomplex) -> Self {
        let (z1, z2) = x.to_cartesian();
        ScalarJson {
            idem: Some([x.minus().re, x.minus().im, x.plus().re, x.plus().im]),
            cart: Some([z1.re, z1.im, z2.re, z2.im]),
            real: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OperatorJson {
    Components {
        #[serde(default)]
        n: Option<usize>,
        t1: Vec<Vec<Complex>>,
        t2: Vec<Vec<Complex>>,
    },
    Entries { matrix: Vec<Vec<ScalarJson>> },
}

impl OperatorJson {
    pub fn to_operator(&self) -> Result<BicomplexOperator> {
        match self {
            OperatorJson::Components { n, t1, t2 } => {
                let t1 = CMatrix::from_rows(t1)?;
                let t2 = CMatrix::from_rows(t2)?;
                if let Some(n) = *n {
                    for m in [&t1, &t2] {
                        if m.rows() != n || m.cols() != n {
                            return Err(Error::parse(
                                "operator",
                                format!("\"n\" is {n} but a component is {}x{}", m.rows(), m.cols()),
                            ));
                        }
                    }
                }
                BicomplexOperator::new(t1, t2)
            }
            OperatorJson::Entries { matrix } => Ok(MatrixJson::Entries(matrix.clone()).to_matrix()?.into_operator()),
        }
    }

    pub fn from_operator(t: &BicomplexOperator) -> Self {
        OperatorJson::Components {
            n: t.t1().is_square().then(|| t.rows()),
            t1: t.t1().to_rows(),
            t2: t.t2().to_rows(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VectorJson {
    Components { minus: Vec<Complex>, plus: Vec<Complex> },
    Entries(Vec<ScalarJson>),
}

impl VectorJson {
    pub fn to_vector(&self) -> Result<BicomplexVector> {
        match self {
            VectorJson::Components { minus, plus } => BicomplexVector::new(minus.clone(), plus.clone()),
            VectorJson::Entries(entries) => {
                let xs = entries.iter().map(ScalarJson::to_bicomplex).collect::<Result<Vec<_>>>()?;
                Ok(BicomplexVector::from_entries(&xs))
            }
        }
    }

    pub fn from_vector(v: &BicomplexVector) -> Self {
        VectorJson::Components {
            minus: v.minus().to_vec(),
            plus: v.plus().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixJson {
    Components { minus: Vec<Vec<Complex>>, plus: Vec<Vec<Complex>> },
    Entries(Vec<Vec<ScalarJson>>),
}

impl MatrixJson {
    pub fn to_matrix(&self) -> Result<BicomplexMatrix> {
        match self {
            MatrixJson::Components { minus, plus } => {
                BicomplexMatrix::new(CMatrix::from_rows(minus)?, CMatrix::from_rows(plus)?)
            }
            MatrixJson::Entries(rows) => {
                let rows = rows
                    .iter()
                    .map(|r| r.iter().map(ScalarJson::to_bicomplex).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                BicomplexMatrix::from_entries(&rows)
            }
        }
    }

    pub fn from_matrix(m: &BicomplexMatrix) -> Self {
        MatrixJson::Components {
            minus: m.minus().to_rows(),
            plus: m.plus().to_rows(),
        }
    }
}

/// Basis vectors of a subspace as lists of `[re, im]`.
pub fn subspace_to_json(s: &CSubspace) -> Vec<Vec<Complex>> {
    s.basis().to_vec()
}

fn from_json<T: for<'de> Deserialize<'de>>(what: &str, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        Error::parse(
            format!("{what} (line {}, column {})", e.line(), e.column()),
            e.to_string(),
        )
    })
}

pub fn parse_scalar(text: &str) -> Result<Bicomplex> {
    from_json::<ScalarJson>("scalar", text)?.to_bicomplex()
}

/// A complex number as `[re, im]`.
pub fn parse_complex(text: &str) -> Result<Complex> {
    let z: Complex = from_json("complex", text)?;
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite("complex"));
    }
    Ok(z)
}

pub fn parse_operator(text: &str) -> Result<BicomplexOperator> {
    from_json::<OperatorJson>("operator", text)?.to_operator()
}

pub fn parse_vector(text: &str) -> Result<BicomplexVector> {
    from_json::<VectorJson>("vector", text)?.to_vector()
}

pub fn parse_matrix(text: &str) -> Result<BicomplexMatrix> {
    from_json::<MatrixJson>("matrix", text)?.to_matrix()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::example_operator;

    #[test]
    fn scalar_encodings() {
        assert_eq!(parse_scalar(r#"{"cart":[0.5,0,0,0.5]}"#).unwrap(), Bicomplex::E1);
        assert_eq!(parse_scalar(r#"{"idem":[1,0,0,0]}"#).unwrap(), Bicomplex::E1);
        assert_eq!(parse_scalar(r#"{"real":[0.5,0,0,0.5]}"#).unwrap(), Bicomplex::E1);
        assert!(parse_scalar(r#"{"idem":[1,0,0,0],"real":[1,0,0,0]}"#).is_err());
        assert!(parse_scalar(r#"{}"#).is_err());
        assert!(parse_scalar(r#"{"polar":[1,0,0,0]}"#).is_err());
        let out = serde_json::to_string(&ScalarJson::from_bicomplex(Bicomplex::E1)).unwrap();
        assert_eq!(out, r#"{"idem":[1.0,0.0,0.0,0.0],"cart":[0.5,0.0,0.0,0.5]}"#);
    }

    #[test]
    fn parse_errors_carry_position() {
        match parse_operator("{\n  \"t1\": [[[1,0]]],\n  \"t2\": oops }") {
            Err(Error::Parse { context, .. }) => assert!(context.contains("line 3"), "{context}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn operator_encodings() {
        let text = r#"{"n":2,"t1":[[[1,0],[0,0]],[[0,0],[0,0]]],"t2":[[[1,0],[0,0]],[[0,0],[1,0]]]}"#;
        let t = parse_operator(text).unwrap();
        assert_eq!(t, example_operator());
        let again = serde_json::to_string(&OperatorJson::from_operator(&t)).unwrap();
        assert_eq!(parse_operator(&again).unwrap(), t);

        // entrywise: T = [[1, 0], [0, e2]]
        let text = r#"{"matrix":[[{"real":[1,0,0,0]},{"idem":[0,0,0,0]}],[{"idem":[0,0,0,0]},{"idem":[0,0,1,0]}]]}"#;
        assert_eq!(parse_operator(text).unwrap(), example_operator());

        let bad_n = r#"{"n":3,"t1":[[[1,0]]],"t2":[[[1,0]]]}"#;
        assert!(matches!(parse_operator(bad_n), Err(Error::Parse { .. })));
    }

    #[test]
    fn vector_encodings() {
        let a = parse_vector(r#"{"minus":[[1,0],[0,0]],"plus":[[1,0],[1,0]]}"#).unwrap();
        let b = parse_vector(r#"[{"real":[1,0,0,0]},{"idem":[0,0,1,0]}]"#).unwrap();
        assert_eq!(a, b);
        assert!(parse_vector(r#"{"minus":[[1,0]],"plus":[]}"#).is_err());
    }

    #[test]
    fn matrix_encodings() {
        let m = parse_matrix(r#"[[{"idem":[1,0,2,0]}]]"#).unwrap();
        assert_eq!(m.entry(0, 0), Bicomplex::new(Complex::new(1.0, 0.0), Complex::new(2.0, 0.0)).unwrap());
        let j = serde_json::to_string(&MatrixJson::from_matrix(&m)).unwrap();
        assert_eq!(j, r#"{"minus":[[[1.0,0.0]]],"plus":[[[2.0,0.0]]]}"#);
    }
}
