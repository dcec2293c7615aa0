//! Dense row-major complex matrices, the deterministic float formatter, and
//! the matrix CSV format (`a`, `a+bi`, `a-bi` entries).

use super::NumericError;
use num_complex::Complex64;
use std::fmt;

/// Dense complex matrix, row-major. Construction rejects non-finite
/// entries, so downstream arithmetic never sees NaN or infinity.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        DenseMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_entries(
        rows: usize,
        cols: usize,
        data: Vec<Complex64>,
    ) -> Result<Self, NumericError> {
        assert_eq!(rows * cols, data.len(), "entry count must match shape");
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let m = DenseMatrix { rows, cols, data };
        m.check_finite()?;
        Ok(m)
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(*v, 0.0);
        }
        m
    }

    pub fn diagonal_complex(values: &[Complex64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = *v;
        }
        m
    }

    fn check_finite(&self) -> Result<(), NumericError> {
        for r in 0..self.rows {
            for c in 0..self.cols {
                let z = self[(r, c)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(NumericError::NonFinite { row: r, col: c });
                }
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> DenseMatrix {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(c, r)] = self[(r, c)].conj();
            }
        }
        out
    }

    pub fn mul(&self, other: &DenseMatrix) -> Result<DenseMatrix, NumericError> {
        if self.cols != other.rows {
            return Err(NumericError::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for c in 0..other.cols {
                    out[(r, c)] += a * other[(k, c)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Result<Vec<Complex64>, NumericError> {
        if self.cols != x.len() {
            return Err(NumericError::ShapeMismatch(format!(
                "cannot apply {}x{} to a vector of length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.rows];
        for r in 0..self.rows {
            let mut acc = Complex64::new(0.0, 0.0);
            for c in 0..self.cols {
                acc += self[(r, c)] * x[c];
            }
            out[r] = acc;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &DenseMatrix) -> Result<DenseMatrix, NumericError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(NumericError::ShapeMismatch(format!(
                "cannot subtract {}x{} from {}x{}",
                other.rows, other.cols, self.rows, self.cols
            )));
        }
        let mut out = self.clone();
        for (o, b) in out.data.iter_mut().zip(&other.data) {
            *o -= b;
        }
        Ok(out)
    }

    pub fn add(&self, other: &DenseMatrix) -> Result<DenseMatrix, NumericError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(NumericError::ShapeMismatch(format!(
                "cannot add {}x{} to {}x{}",
                other.rows, other.cols, self.rows, self.cols
            )));
        }
        let mut out = self.clone();
        for (o, b) in out.data.iter_mut().zip(&other.data) {
            *o += b;
        }
        Ok(out)
    }

    pub fn scaled(&self, factor: f64) -> DenseMatrix {
        let mut out = self.clone();
        for z in &mut out.data {
            *z *= factor;
        }
        out
    }

    pub fn column(&self, c: usize) -> Vec<Complex64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn set_column(&mut self, c: usize, values: &[Complex64]) {
        assert_eq!(values.len(), self.rows);
        for (r, v) in values.iter().enumerate() {
            self[(r, c)] = *v;
        }
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Max entrywise deviation from the conjugate transpose.
    pub fn hermitian_deviation(&self) -> f64 {
        assert!(self.is_square());
        let mut dev: f64 = 0.0;
        for r in 0..self.rows {
            for c in 0..self.cols {
                dev = dev.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        dev
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Display for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, "  ")?;
                }
                write!(f, "{}", format_complex(self[(r, c)]))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Deterministic scientific formatting with a signed two-digit exponent
/// (`1.500000000000e+00`), so emitted files are byte-identical across runs
/// and platforms.
pub fn fmt_e(x: f64) -> String {
    let s = format!("{x:.12e}");
    let (mantissa, exp) = s.split_once('e').expect("float formatting yields an exponent");
    let (sign, digits) = match exp.strip_prefix('-') {
        Some(d) => ('-', d),
        None => ('+', exp),
    };
    format!("{mantissa}e{sign}{:0>2}", digits)
}

/// One CSV cell: `a` for real entries, `a+bi`/`a-bi` otherwise.
pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        fmt_e(z.re)
    } else if z.im > 0.0 {
        format!("{}+{}i", fmt_e(z.re), fmt_e(z.im))
    } else {
        format!("{}-{}i", fmt_e(z.re), fmt_e(-z.im))
    }
}

/// Parses one CSV cell; accepts `a`, `a+bi`, `a-bi` with any float syntax.
pub fn parse_complex(cell: &str) -> Result<Complex64, NumericError> {
    let s = cell.trim();
    if s.is_empty() {
        return Err(NumericError::Csv("empty entry".into()));
    }
    let bad = |_| NumericError::Csv(format!("cannot parse entry {s:?}"));
    if let Some(body) = s.strip_suffix('i') {
        // Split at the last +/- that is not an exponent sign and not the
        // leading sign of the real part.
        let bytes = body.as_bytes();
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            let b = bytes[i];
            if (b == b'+' || b == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
                split = Some(i);
                break;
            }
        }
        let i = split.ok_or_else(|| NumericError::Csv(format!("cannot parse entry {s:?}")))?;
        let re: f64 = body[..i].trim().parse().map_err(bad)?;
        let im: f64 = body[i..].trim().parse().map_err(bad)?;
        Ok(Complex64::new(re, im))
    } else {
        let re: f64 = s.parse().map_err(bad)?;
        Ok(Complex64::new(re, 0.0))
    }
}

/// Parses the matrix CSV format: one row per line, comma-separated entries.
pub fn parse_matrix_csv(text: &str) -> Result<DenseMatrix, NumericError> {
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(parse_complex)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| NumericError::Csv(format!("line {}: {e}", lineno + 1)))?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(NumericError::Csv(format!(
                    "line {}: expected {} entries, found {}",
                    lineno + 1,
                    first.len(),
                    row.len()
                )));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(NumericError::Csv("no rows".into()));
    }
    let n_rows = rows.len();
    let n_cols = rows[0].len();
    DenseMatrix::from_entries(n_rows, n_cols, rows.into_iter().flatten().collect())
}

/// Writes the matrix CSV format; inverse of [`parse_matrix_csv`] up to
/// float-formatting precision.
pub fn write_matrix_csv(m: &DenseMatrix) -> String {
    let mut out = String::new();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if c > 0 {
                out.push(',');
            }
            out.push_str(&format_complex(m[(r, c)]));
        }
        out.push('\n');
    }
    out
}
