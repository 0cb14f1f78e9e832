//! Finite complexes of invariant forms on nilmanifolds and solvmanifolds.
//!
//! A model is a coframe `e_1..e_2n` with structure constants (the
//! two-form `d e_i` for each `i`), a symplectic two-form, and a volume
//! normalization for the top blade. The exterior derivative extends the
//! structure constants by the Leibniz rule; cohomology computed here is
//! the cohomology of this invariant complex.

use std::fmt;

use num_traits::Zero;

use crate::blade::Blade;
use crate::form::{promote, Form};
use crate::linalg::Mat;
use crate::parse::{parse_form_at, ParseError};
use crate::scalar::{Gaussian, Rat, Scalar};

/// Coefficient rings whose elements are constant on the model; the
/// Leibniz extension of `d` differentiates blades only, so invariant
/// models are restricted to these rings.
pub trait ConstantScalar: Scalar {}
impl ConstantScalar for Rat {}
impl ConstantScalar for Gaussian {}

/// Exterior-derivative provider shared by the invariant and polynomial
/// backends.
pub trait Derivative<K: Scalar> {
    fn ambient_dim(&self) -> usize;
    fn d(&self, a: &Form<K>) -> Form<K>;
}

#[derive(Clone, Debug)]
pub struct InvariantModel {
    name: String,
    dim: usize,
    /// `d_one[i-1]` is `d e_i` as an invariant two-form.
    d_one: Vec<Form<Rat>>,
    omega: Form<Rat>,
    /// Total volume assigned to the top blade `e_1^…^e_2n`.
    volume: Rat,
    /// Optional almost complex structure from the model file, acting on
    /// coframe coefficient columns.
    j_matrix: Option<Mat>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ModelError {
    UnknownBuiltin(String),
    BadStructure(String),
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::UnknownBuiltin(name) => write!(f, "unknown builtin model '{name}'"),
            ModelError::BadStructure(msg) => write!(f, "invalid model: {msg}"),
        }
    }
}

impl std::error::Error for ModelError {}

/// One validated invariant with an optional failure witness.
#[derive(Clone, Debug)]
pub struct ValidationEntry {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub entries: Vec<ValidationEntry>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }
}

impl InvariantModel {
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        d_one: Vec<Form<Rat>>,
        omega: Form<Rat>,
        volume: Rat,
    ) -> Result<InvariantModel, ModelError> {
        if dim == 0 || dim % 2 != 0 {
            return Err(ModelError::BadStructure(format!(
                "dimension must be even and positive, got {dim}"
            )));
        }
        if d_one.len() != dim {
            return Err(ModelError::BadStructure(format!(
                "expected {dim} structure forms, got {}",
                d_one.len()
            )));
        }
        for (i, f) in d_one.iter().enumerate() {
            if f.dim() != dim {
                return Err(ModelError::BadStructure(format!(
                    "d e{} has wrong ambient dimension",
                    i + 1
                )));
            }
            if !f.is_zero() && f.homogeneous_degree() != Some(2) {
                return Err(ModelError::BadStructure(format!(
                    "d e{} must be a two-form",
                    i + 1
                )));
            }
        }
        if omega.dim() != dim || (!omega.is_zero() && omega.homogeneous_degree() != Some(2)) {
            return Err(ModelError::BadStructure(
                "omega must be a two-form over the coframe".into(),
            ));
        }
        if Zero::is_zero(&volume) {
            return Err(ModelError::BadStructure(
                "volume normalization must be nonzero".into(),
            ));
        }
        Ok(InvariantModel {
            name: name.into(),
            dim,
            d_one,
            omega,
            volume,
            j_matrix: None,
        })
    }

    pub fn with_j_matrix(mut self, j: Mat) -> InvariantModel {
        self.j_matrix = Some(j);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn half_dim(&self) -> usize {
        self.dim / 2
    }

    pub fn omega(&self) -> &Form<Rat> {
        &self.omega
    }

    pub fn volume(&self) -> &Rat {
        &self.volume
    }

    pub fn j_matrix(&self) -> Option<&Mat> {
        self.j_matrix.as_ref()
    }

    pub fn structure_form(&self, i: usize) -> &Form<Rat> {
        &self.d_one[i - 1]
    }

    /// Named built-in models: `kt` (the four-dimensional nilmanifold
    /// with `d e4 = e2^e3`) and `torus{n}` (the abelian complex in
    /// dimension `2n`).
    pub fn builtin(name: &str) -> Result<InvariantModel, ModelError> {
        if name == "kt" {
            let dim = 4;
            let mut d_one = vec![Form::zero(dim); dim];
            d_one[3] = blade_form(dim, &[2, 3]);
            let omega = blade_form(dim, &[1, 2]).plus(&blade_form(dim, &[3, 4]));
            return InvariantModel::new("kt", dim, d_one, omega, Rat::from_integer(1.into()));
        }
        if let Some(rest) = name.strip_prefix("torus") {
            if let Ok(n) = rest.parse::<usize>() {
                if n >= 1 && 2 * n <= crate::blade::MAX_DIM {
                    let dim = 2 * n;
                    let d_one = vec![Form::zero(dim); dim];
                    let mut omega = Form::zero(dim);
                    for i in 0..n {
                        omega = omega.plus(&blade_form(dim, &[2 * i + 1, 2 * i + 2]));
                    }
                    return InvariantModel::new(
                        name,
                        dim,
                        d_one,
                        omega,
                        Rat::from_integer(1.into()),
                    );
                }
            }
        }
        Err(ModelError::UnknownBuiltin(name.into()))
    }

    pub fn builtin_names() -> Vec<&'static str> {
        vec!["kt", "torus2", "torus3", "torus4"]
    }

    /// Checks the model invariants: `d∘d = 0` on the coframe, `dω = 0`,
    /// and `ω^n ≠ 0`. Failures carry a witness form.
    pub fn validate(&self) -> ValidationReport {
        let mut entries = Vec::new();

        let mut dd_witness: Option<String> = None;
        for i in 1..=self.dim {
            let dd = self.d(&self.d_one[i - 1]);
            if !dd.is_zero() {
                dd_witness = Some(format!("d(d e{i}) = {dd}"));
                break;
            }
        }
        entries.push(ValidationEntry {
            name: "d^2 = 0 on the coframe (Jacobi identity)".into(),
            passed: dd_witness.is_none(),
            witness: dd_witness,
        });

        let domega: Form<Rat> = self.d(&self.omega);
        entries.push(ValidationEntry {
            name: "omega is closed".into(),
            passed: domega.is_zero(),
            witness: (!domega.is_zero()).then(|| format!("d omega = {domega}")),
        });

        let n = self.half_dim();
        let mut top = Form::unit(self.dim);
        for _ in 0..n {
            top = top.wedge(&self.omega);
        }
        entries.push(ValidationEntry {
            name: "omega^n is nonzero (nondegeneracy)".into(),
            passed: !top.is_zero(),
            witness: top.is_zero().then(|| "omega^n = 0".to_string()),
        });

        ValidationReport { entries }
    }

    /// Coefficient of the top blade times the volume normalization.
    pub fn integrate_top<K: ConstantScalar>(&self, a: &Form<K>) -> K {
        let top = Blade::top(self.dim);
        a.coefficient(&top).scale(&self.volume)
    }
}

impl<K: ConstantScalar> Derivative<K> for InvariantModel {
    fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Leibniz extension of the structure constants:
    /// `d(e_{i1..ik}) = Σ_j (−1)^{j−1} e_{i1} ∧ … ∧ d e_{ij} ∧ … ∧ e_{ik}`.
    fn d(&self, a: &Form<K>) -> Form<K> {
        let mut out = Form::zero(self.dim);
        for (blade, c) in a.terms() {
            let indices = blade.indices();
            for (pos, &i) in indices.iter().enumerate() {
                let di = &self.d_one[i - 1];
                if di.is_zero() {
                    continue;
                }
                let mut piece: Form<K> = Form::unit(self.dim);
                for &p in &indices[..pos] {
                    piece = piece.wedge(&Form::term(
                        self.dim,
                        Blade::one_form(p, self.dim).unwrap(),
                        K::one(),
                    ));
                }
                piece = piece.wedge(&promote::<K>(di));
                for &s in &indices[pos + 1..] {
                    piece = piece.wedge(&Form::term(
                        self.dim,
                        Blade::one_form(s, self.dim).unwrap(),
                        K::one(),
                    ));
                }
                let sign = if pos % 2 == 0 {
                    K::one()
                } else {
                    K::one().negate()
                };
                out = out.plus(&piece.scale(&sign.times(c)));
            }
        }
        out
    }
}

fn blade_form(dim: usize, indices: &[usize]) -> Form<Rat> {
    Form::term(
        dim,
        Blade::from_indices(indices, dim).unwrap(),
        Rat::from_integer(1.into()),
    )
}

/// Parses the `# symp-model v1` text format:
///
/// ```text
/// # symp-model v1
/// dim 4
/// d e4 = 1 * e2^e3
/// omega = 1 * e1^e2 + 1 * e3^e4
/// volume = 1
/// J = 0 1 0 0; -1 0 0 0; 0 0 0 1; 0 0 -1 0
/// ```
///
/// Omitted `d e_i` lines default to zero. Errors carry line and column.
pub fn parse_model(src: &str, name: impl Into<String>) -> Result<InvariantModel, ModelParseError> {
    let mut header_seen = false;
    let mut dim: Option<usize> = None;
    // (line, column of rhs, coframe index, rhs text)
    let mut d_lines: Vec<(usize, usize, usize, String)> = Vec::new();
    // (line, column of rhs, rhs text)
    let mut omega_line: Option<(usize, usize, String)> = None;
    let mut volume: Option<Rat> = None;
    let mut j_line: Option<(usize, String)> = None;

    for (idx, raw) in src.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim_end();
        let trimmed = line.trim_start();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('#') {
            if trimmed == "# symp-model v1" {
                header_seen = true;
            }
            continue;
        }
        if !header_seen {
            return Err(ModelParseError::at(
                lineno,
                1,
                "missing '# symp-model v1' header",
            ));
        }
        let col0 = line.len() - trimmed.len() + 1;
        if let Some(rest) = trimmed.strip_prefix("dim") {
            let value = rest.trim();
            let parsed: usize = value.parse().map_err(|_| {
                ModelParseError::at(lineno, col0 + 4, "expected an integer dimension")
            })?;
            dim = Some(parsed);
        } else if let Some(rest) = trimmed.strip_prefix("d ") {
            let (lhs, rhs) = rest
                .split_once('=')
                .ok_or_else(|| ModelParseError::at(lineno, col0, "expected 'd e<i> = <form>'"))?;
            let lhs = lhs.trim();
            let index: usize = lhs
                .strip_prefix('e')
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| {
                    ModelParseError::at(lineno, col0 + 2, "expected a coframe element like e4")
                })?;
            let rhs_col = line.find('=').unwrap() + 2;
            d_lines.push((lineno, rhs_col, index, rhs.to_string()));
        } else if let Some(rest) = trimmed.strip_prefix("omega") {
            let rhs = rest
                .trim_start()
                .strip_prefix('=')
                .ok_or_else(|| ModelParseError::at(lineno, col0, "expected 'omega = <form>'"))?;
            let rhs_col = line.find('=').unwrap() + 2;
            omega_line = Some((lineno, rhs_col, rhs.to_string()));
        } else if let Some(rest) = trimmed.strip_prefix("volume") {
            let rhs = rest
                .trim_start()
                .strip_prefix('=')
                .ok_or_else(|| ModelParseError::at(lineno, col0, "expected 'volume = p/q'"))?;
            let v = parse_rat(rhs.trim())
                .ok_or_else(|| ModelParseError::at(lineno, col0, "expected a rational volume"))?;
            volume = Some(v);
        } else if let Some(rest) = trimmed.strip_prefix("J") {
            let rhs = rest
                .trim_start()
                .strip_prefix('=')
                .ok_or_else(|| ModelParseError::at(lineno, col0, "expected 'J = row; row; …'"))?;
            j_line = Some((lineno, rhs.to_string()));
        } else {
            return Err(ModelParseError::at(
                lineno,
                col0,
                format!("unrecognized directive '{trimmed}'"),
            ));
        }
    }

    if !header_seen {
        return Err(ModelParseError::at(
            1,
            1,
            "missing '# symp-model v1' header",
        ));
    }
    let dim = dim.ok_or_else(|| ModelParseError::at(1, 1, "missing 'dim' directive"))?;
    if dim == 0 || dim % 2 != 0 || dim > crate::blade::MAX_DIM {
        return Err(ModelParseError::at(
            1,
            1,
            format!("dimension must be a small even positive integer, got {dim}"),
        ));
    }

    let mut d_one = vec![Form::zero(dim); dim];
    for (lineno, col, index, rhs) in d_lines {
        if index == 0 || index > dim {
            return Err(ModelParseError::at(
                lineno,
                3,
                format!("coframe index e{index} out of range for dimension {dim}"),
            ));
        }
        let form = parse_form_at(&rhs, dim, lineno, col).map_err(ModelParseError::from)?;
        d_one[index - 1] = form;
    }

    let (omega_lineno, omega_col, rhs) =
        omega_line.ok_or_else(|| ModelParseError::at(1, 1, "missing 'omega' directive"))?;
    let omega = parse_form_at(&rhs, dim, omega_lineno, omega_col).map_err(ModelParseError::from)?;

    let volume = volume.unwrap_or_else(|| Rat::from_integer(1.into()));

    let mut model = InvariantModel::new(name, dim, d_one, omega, volume)
        .map_err(|e| ModelParseError::at(1, 1, e.to_string()))?;

    if let Some((lineno, rhs)) = j_line {
        let rows: Vec<&str> = rhs.split(';').collect();
        if rows.len() != dim {
            return Err(ModelParseError::at(
                lineno,
                1,
                format!("J must have {dim} rows"),
            ));
        }
        let mut j = Mat::zeros(dim, dim);
        for (r, row_src) in rows.iter().enumerate() {
            let cells: Vec<&str> = row_src.split_whitespace().collect();
            if cells.len() != dim {
                return Err(ModelParseError::at(
                    lineno,
                    1,
                    format!("J row {} must have {dim} entries", r + 1),
                ));
            }
            for (c, cell) in cells.iter().enumerate() {
                let v = parse_rat(cell).ok_or_else(|| {
                    ModelParseError::at(lineno, 1, format!("bad rational '{cell}' in J"))
                })?;
                j.set(r, c, v);
            }
        }
        model = model.with_j_matrix(j);
    }

    Ok(model)
}

fn parse_rat(s: &str) -> Option<Rat> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: num_bigint::BigInt = n.trim().parse().ok()?;
            let d: num_bigint::BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => Some(Rat::from_integer(s.trim().parse().ok()?)),
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModelParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ModelParseError {
    fn at(line: usize, col: usize, message: impl Into<String>) -> Self {
        ModelParseError {
            line,
            col,
            message: message.into(),
        }
    }
}

impl From<ParseError> for ModelParseError {
    fn from(e: ParseError) -> Self {
        ModelParseError {
            line: e.line,
            col: e.col,
            message: e.message,
        }
    }
}

impl fmt::Display for ModelParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.col, self.message
        )
    }
}

impl std::error::Error for ModelParseError {}

/// Canonical text rendering of a model, used for hashing and reports.
pub fn render_model(m: &InvariantModel) -> String {
    let mut out = String::from("# symp-model v1\n");
    out.push_str(&format!("dim {}\n", m.dim()));
    for i in 1..=m.dim() {
        let f = m.structure_form(i);
        if !f.is_zero() {
            out.push_str(&format!("d e{i} = {f}\n"));
        }
    }
    out.push_str(&format!("omega = {}\n", m.omega()));
    out.push_str(&format!("volume = {}\n", m.volume()));
    if let Some(j) = m.j_matrix() {
        let rows: Vec<String> = (0..j.rows())
            .map(|r| {
                (0..j.cols())
                    .map(|c| j.get(r, c).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        out.push_str(&format!("J = {}\n", rows.join("; ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rint;

    #[test]
    fn kt_builtin_and_derivative() {
        let kt = InvariantModel::builtin("kt").unwrap();
        assert_eq!(kt.dim(), 4);
        // d e4 = e23
        let e4 = blade_form(4, &[4]);
        assert_eq!(kt.d(&e4), blade_form(4, &[2, 3]));
        // d e14 = -e123, frozen from the Leibniz oracle d(e1∧e4) = -e1∧e23.
        let e14 = blade_form(4, &[1, 4]);
        assert_eq!(kt.d(&e14), blade_form(4, &[1, 2, 3]).negate());
        // torus derivative vanishes everywhere
        let t2 = InvariantModel::builtin("torus2").unwrap();
        assert!(t2.d(&e14).is_zero());
        assert!(kt.validate().passed());
        assert!(t2.validate().passed());
    }

    #[test]
    fn torus3_shape() {
        let t3 = InvariantModel::builtin("torus3").unwrap();
        assert_eq!(t3.dim(), 6);
        assert_eq!(t3.omega().num_terms(), 3);
        assert!(InvariantModel::builtin("torus0").is_err());
        assert!(InvariantModel::builtin("sphere").is_err());
    }

    #[test]
    fn validation_failures_carry_witnesses() {
        // d e1 = e23, d e3 = e14 violates d^2 = 0: d(e23) = e124.
        let mut d_one = vec![Form::zero(4); 4];
        d_one[0] = blade_form(4, &[2, 3]);
        d_one[2] = blade_form(4, &[1, 4]);
        let omega = blade_form(4, &[1, 2]).plus(&blade_form(4, &[3, 4]));
        let m = InvariantModel::new("bad-jacobi", 4, d_one, omega, rint(1)).unwrap();
        let report = m.validate();
        assert!(!report.passed());
        assert!(!report.entries[0].passed);
        assert!(report.entries[0].witness.is_some());

        // d e1 = e23, d e2 = e13 with omega = e13 + e24 fails closedness.
        let mut d_one = vec![Form::zero(4); 4];
        d_one[0] = blade_form(4, &[2, 3]);
        d_one[1] = blade_form(4, &[1, 3]);
        let omega = blade_form(4, &[1, 3]).plus(&blade_form(4, &[2, 4]));
        let m = InvariantModel::new("bad-omega", 4, d_one, omega, rint(1)).unwrap();
        let report = m.validate();
        assert!(report.entries[0].passed);
        assert!(!report.entries[1].passed);

        // Degenerate omega.
        let m = InvariantModel::new(
            "degenerate",
            4,
            vec![Form::zero(4); 4],
            blade_form(4, &[1, 2]),
            rint(1),
        )
        .unwrap();
        let report = m.validate();
        assert!(!report.entries[2].passed);
    }

    #[test]
    fn integrate_top_examples() {
        let kt = InvariantModel::builtin("kt").unwrap();
        let omega = kt.omega().clone();
        let half_sq = omega.wedge(&omega).scale(&crate::scalar::rat(1, 2));
        assert_eq!(kt.integrate_top(&half_sq), rint(1));
        assert_eq!(kt.integrate_top(&blade_form(4, &[1])), rint(0));
        // e1 ∧ e234 = +e1234
        let got = kt.integrate_top(&blade_form(4, &[1]).wedge(&blade_form(4, &[2, 3, 4])));
        assert_eq!(got, rint(1));
    }

    #[test]
    fn model_file_roundtrip() {
        let kt = InvariantModel::builtin("kt").unwrap();
        let text = render_model(&kt);
        let parsed = parse_model(&text, "kt").unwrap();
        assert_eq!(parsed.dim(), 4);
        assert_eq!(parsed.omega(), kt.omega());
        assert_eq!(parsed.structure_form(4), kt.structure_form(4));

        let err = parse_model(
            "# symp-model v1\ndim 4\nd e9 = 1 * e1^e2\nomega = 1 * e1^e2\n",
            "x",
        )
        .unwrap_err();
        assert_eq!(err.line, 3);

        let err = parse_model("dim 4\nomega = 1 * e1^e2\n", "x").unwrap_err();
        assert!(err.message.contains("header"));

        let err = parse_model("# symp-model v1\ndim 4\nomega = 1 * e1^e9\n", "x").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.message.contains("out of range"));
    }

    #[test]
    fn j_matrix_parses() {
        let src = "# symp-model v1\ndim 2\nomega = 1 * e1^e2\nJ = 0 1; -1 0\n";
        let m = parse_model(src, "flat").unwrap();
        let j = m.j_matrix().unwrap();
        assert_eq!(j.get(0, 1), &rint(1));
        assert_eq!(j.get(1, 0), &rint(-1));
    }
}
