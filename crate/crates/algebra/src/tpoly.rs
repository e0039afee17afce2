//! Polynomials in one parameter t over a coefficient field, and the
//! t-adic valuation of maximal minors.

use crate::det::{minor, RingElement};
use crate::error::{AlgebraError, Result};
use crate::field::{CoefficientField, FieldElement};

/// Dense in t, lowest degree first, no trailing zeros.
#[derive(Clone, Debug)]
pub struct TPoly {
    field: CoefficientField,
    coeffs: Vec<FieldElement>,
}

impl TPoly {
    pub fn new(field: &CoefficientField, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        TPoly { field: field.clone(), coeffs }
    }

    pub fn constant(field: &CoefficientField, c: FieldElement) -> Self {
        Self::new(field, vec![c])
    }

    /// c + d·t.
    pub fn linear(field: &CoefficientField, c: FieldElement, d: FieldElement) -> Self {
        Self::new(field, vec![c, d])
    }

    pub fn field(&self) -> &CoefficientField {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Lowest exponent of t with nonzero coefficient; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn lowest_coeff(&self) -> Option<&FieldElement> {
        self.valuation().map(|v| &self.coeffs[v])
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut c = vec![self.field.zero(); k];
        c.extend(self.coeffs.iter().cloned());
        TPoly { field: self.field.clone(), coeffs: c }
    }
}

impl RingElement for TPoly {
    fn zero_like(&self) -> Self {
        TPoly { field: self.field.clone(), coeffs: Vec::new() }
    }
    fn one_like(&self) -> Self {
        TPoly::constant(&self.field, self.field.one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = self.field.zero();
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z).add(other.coeffs.get(i).unwrap_or(&z)))
            .collect();
        TPoly::new(&self.field, c)
    }
    fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = self.field.zero();
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z).sub(other.coeffs.get(i).unwrap_or(&z)))
            .collect();
        TPoly::new(&self.field, c)
    }
    fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return self.zero_like();
        }
        let mut c = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        TPoly::new(&self.field, c)
    }
}

/// Rectangular matrix of t-polynomials over one field.
#[derive(Clone, Debug)]
pub struct TPolynomialMatrix {
    field: CoefficientField,
    rows: Vec<Vec<TPoly>>,
}

impl TPolynomialMatrix {
    pub fn new(field: CoefficientField, rows: Vec<Vec<TPoly>>) -> Result<Self> {
        let width = rows.first().map(|r| r.len()).unwrap_or(0);
        if rows.iter().any(|r| r.len() != width) {
            return Err(AlgebraError::Precondition("matrix rows have different lengths".into()));
        }
        if rows.iter().flatten().any(|e| e.field != field) {
            return Err(AlgebraError::FieldMismatch);
        }
        Ok(TPolynomialMatrix { field, rows })
    }

    pub fn field(&self) -> &CoefficientField {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map(|r| r.len()).unwrap_or(0)
    }

    pub fn rows(&self) -> &[Vec<TPoly>] {
        &self.rows
    }

    /// Multiplies column `j` by t^k.
    pub fn scale_column(&self, j: usize, k: usize) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().enumerate().map(|(c, e)| if c == j { e.shift(k) } else { e.clone() }).collect())
            .collect();
        TPolynomialMatrix { field: self.field.clone(), rows }
    }
}

#[derive(Clone, Debug)]
pub struct MinorValuation {
    /// Column subset, increasing, 0-based.
    pub columns: Vec<usize>,
    /// `None` stands for an identically zero minor (valuation ∞).
    pub valuation: Option<usize>,
    pub leading: Option<FieldElement>,
}

/// Valuations of all d×d minors on `rows` (default: the first d rows), with
/// column subsets in lexicographic order.
pub fn t_valuation_of_minors(m: &TPolynomialMatrix, d: usize, rows: Option<&[usize]>) -> Result<Vec<MinorValuation>> {
    let rows: Vec<usize> = match rows {
        Some(r) => r.to_vec(),
        None => (0..d).collect(),
    };
    if rows.len() != d || rows.iter().any(|&r| r >= m.nrows()) || d == 0 || d > m.ncols() {
        return Err(AlgebraError::Precondition(format!("need {d} valid rows and at least {d} columns")));
    }
    let mut out = Vec::new();
    let mut cols: Vec<usize> = (0..d).collect();
    loop {
        let det = minor(&m.rows, &rows, &cols);
        out.push(MinorValuation {
            columns: cols.clone(),
            valuation: det.valuation(),
            leading: det.lowest_coeff().cloned(),
        });
        if !next_combination(&mut cols, m.ncols()) {
            break;
        }
    }
    Ok(out)
}

/// Advances a strictly increasing sequence to its lexicographic successor.
pub fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> CoefficientField {
        CoefficientField::Rationals
    }

    fn lin(c: i64, d: i64) -> TPoly {
        TPoly::linear(&q(), q().from_int(c), q().from_int(d))
    }

    #[test]
    fn explicit_cubic_minor() {
        // [[1+t, 0, 1], [-t, 1, 1], [0, 0, t]] has determinant t(1+t)
        let m = TPolynomialMatrix::new(
            q(),
            vec![vec![lin(1, 1), lin(0, 0), lin(1, 0)], vec![lin(0, -1), lin(1, 0), lin(1, 0)], vec![lin(0, 0), lin(0, 0), lin(0, 1)]],
        )
        .unwrap();
        let v = t_valuation_of_minors(&m, 3, None).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].valuation, Some(1));
        assert!(v[0].leading.as_ref().unwrap().is_one());
    }

    #[test]
    fn zero_column_is_infinite() {
        let m = TPolynomialMatrix::new(q(), vec![vec![lin(1, 0), lin(0, 0), lin(2, 1)], vec![lin(0, 1), lin(0, 0), lin(1, 0)]]).unwrap();
        let v = t_valuation_of_minors(&m, 2, None).unwrap();
        let cols: Vec<_> = v.iter().map(|x| (x.columns.clone(), x.valuation)).collect();
        assert_eq!(cols, [(vec![0, 1], None), (vec![0, 2], Some(0)), (vec![1, 2], None)]);
    }

    #[test]
    fn combinations_are_lex() {
        let mut c = vec![0, 1];
        let mut all = vec![c.clone()];
        while next_combination(&mut c, 4) {
            all.push(c.clone());
        }
        assert_eq!(all, [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]);
    }
}
