//! Reference matroids and matrices used throughout the test suites and
//! exposed by the CLI under short names.

use crate::matroid::Matroid;
use crate::subset::Subset;

fn sets(items: &[&str], n: usize) -> Vec<Subset> {
    Matroid::parse_sets(items, n).expect("fixture sets are well formed")
}

fn paving(d: usize, n: usize, hyperplanes: &[&str]) -> Matroid {
    Matroid::paving_from_hyperplanes(d, n, &sets(hyperplanes, n)).expect("fixture is a matroid")
}

pub const QSING_LINES: [&str; 12] =
    ["1,2,6,8", "1,3,5,7", "1,9,12", "2,4,5,9", "2,7,11", "3,4,6", "3,8,9", "3,10,12", "4,7,8", "4,10,11", "5,6,10", "8,11,12"];

/// The (3,12) matroid with a singular realization space.
pub fn q_sing() -> Matroid {
    paving(3, 12, &QSING_LINES)
}

/// Rows of a symbolic realization of [`q_sing`] over Q[x, y].
pub const QSING_MATRIX: [[&str; 12]; 3] = [
    ["1", "0", "0", "1", "1", "1", "y - 1", "1", "1", "x", "y - 1", "x"],
    ["0", "1", "0", "1", "0", "1", "0", "y", "y", "y", "-x*y^2 + 2*y^2 - y", "y"],
    ["0", "0", "1", "1", "1", "0", "y", "0", "1", "x - y", "y", "1"],
];

/// Inverting set displayed alongside [`QSING_MATRIX`].
pub const QSING_SEMIGROUP: [&str; 20] = [
    "x", "y", "x-1", "x-2", "y-1", "y+1", "x-y", "x-2*y", "x-y-1", "x*y-y+1", "x*y-2*y+1", "x+y^2-y", "x*y-2*y+2",
    "x+y^2-2*y", "x+y^2-y-1", "x*y-y^2-y+1", "x*y^2-y^2+y-1", "x*y^2-2*y^2+y-1", "x*y^2-2*y^2+2*y-1",
    "x^2*y-x*y^2-2*x*y+x+2*y^2",
];

pub const QSING_IDEAL: &str = "(x*y + x - 2*y)*(y^2 - y + 1)";

/// (3,9) matroid whose realization space is two points over Q(i).
pub fn gaussian_nine() -> Matroid {
    paving(3, 9, &["125", "139", "147", "168", "237", "246", "289", "345", "578", "679"])
}

/// Its printed ideal in x1..x7 and the printed inverting set.
pub const GAUSSIAN_NINE_IDEAL: [&str; 7] = ["x1 - 1", "x2 - 1", "x3 - x7 - 1", "x4 - 1", "x5 - x7", "x6 - x7 - 1", "x7^2 + 1"];

pub const GAUSSIAN_NINE_SEMIGROUP: [&str; 38] = [
    "x1", "x2", "x3", "x4", "x5", "x6", "x7", "x3 - 1", "x5 - 1", "x6 - 1", "x7 - 1", "x2 - x3", "x2 - x5", "x2 - x7",
    "x3 - x4", "x4 - x6", "x5 - x6", "x1 + x7 - 1", "x1*x3 - x1 - x2 + 1", "x1*x3 - x1*x6 - x2 + x5", "x1*x3 - x2",
    "x1*x3 - x2 + x7", "x1*x3 - x1*x4 - x2", "x1*x4 - x1 + 1", "x1*x4 + x7", "x1*x6 - x1 - x5 + 1", "x1*x6 - x5",
    "x1*x6 - x5 + x7", "x2 + x3*x7 - x3 - x7", "x2*x4 - x2 + x3 - x4", "x2*x4 - x2*x6 + x3*x5 - x4*x5",
    "x2*x6 - x2 - x3*x5 + x3 + x5 - x6", "x2*x6 - x3*x5", "x2*x6 - x3*x5 + x3*x7 - x6*x7", "x4*x5 - x4 - x5 + x6",
    "x4*x5 - x4*x7 + x6*x7", "x4*x7 - x4 - x7", "x5 + x6*x7 - x6 - x7",
];

/// (3,10) matroid whose reduced realization space is a smooth plane curve.
pub fn curve_ten() -> Matroid {
    paving(3, 10, &["125", "136", "148", "237", "249", "2,6,10", "345", "467", "5,9,10", "689", "7,8,10"])
}

pub const CURVE_TEN_MATRIX: [[&str; 10]; 3] = [
    ["1", "0", "0", "1", "1", "x", "0", "x^2 - x*y - 1", "1", "x"],
    ["0", "1", "0", "1", "1", "0", "x", "x - y - 1", "-x + y + 1", "y"],
    ["0", "0", "1", "1", "0", "1", "x - 1", "x - y - 1", "1", "1"],
];

pub const CURVE_TEN_IDEAL: &str = "x^2*y - x^2 - x*y^2 + x*y - y";

pub const CURVE_TEN_SEMIGROUP: [&str; 12] = [
    "x", "y", "x - 1", "y - 1", "x - y", "x - y - 1", "x*y - x + 1", "x*y - x - y", "x^2 - x*y - 1", "x^2 - x*y + y",
    "x^2 - x*y - x + y + 1", "x^3 - 2*x^2 - x*y^2 + 2*x*y - 2*y",
];

/// Rank 3 matroids on 9 points with two-point realization spaces, each
/// with the univariate generator of its reduced ideal.
pub fn reducible_rank3() -> Vec<(Matroid, &'static str)> {
    let rows: [(&[&str], &str); 8] = [
        (&["127", "138", "145", "246", "258", "347", "356", "678"], "x^2 - x + 1"),
        (&["128", "135", "147", "239", "245", "267", "346", "378", "568"], "x^2 - x + 1"),
        (&["127", "138", "145", "169", "239", "246", "258", "347", "356", "489", "579", "678"], "x^2 - x + 1"),
        (&["125", "139", "147", "168", "237", "246", "289", "345", "578", "679"], "x^2 + 1"),
        (&["1258", "136", "149", "237", "269", "345", "467", "579"], "x^2 - x + 1"),
        (&["1258", "136", "179", "237", "249", "345", "389", "468", "567"], "x^2 + x - 1"),
        (&["1258", "136", "237", "269", "345", "389", "468", "479", "567"], "x^2 + x + 1"),
        (&["1259", "1367", "238", "247", "345", "469", "568", "789"], "x^2 - x + 1"),
    ];
    rows.iter().map(|(lines, f)| (paving(3, 9, lines), *f)).collect()
}

/// Rank 4 matroids on 8 points with two-point realization spaces.
pub fn disconnected_rank4() -> Vec<(Matroid, &'static str)> {
    let rows: [(&[&str], &str); 2] = [
        (&["3467", "2567", "2458", "2378", "1568", "1357", "1348", "1247", "1236"], "x^2 - 3*x + 1"),
        (&["4568", "3467", "2567", "2378", "1357", "1348", "1258", "1247", "1236"], "3*x^2 - 3*x + 1"),
    ];
    rows.iter().map(|(planes, f)| (paving(4, 8, planes), *f)).collect()
}

/// The third printed row of the same table. As printed it is not the plane
/// list of any matroid: 1246 and 1248 meet in the independent triple 124.
pub const DISCONNECTED_RANK4_PRINTED_ROW3: [&str; 10] =
    ["12367", "5678", "3456", "2478", "2358", "1457", "1248", "1268", "1256", "1246"];
pub const DISCONNECTED_RANK4_ROW3_IDEAL: &str = "3*x^2 - x + 1";

/// Rank 4 on 10 points: three hyperplanes {1,2,3,10}, {4,5,6,10}, {7,8,9,10}.
pub fn three_planes_through_ten() -> Matroid {
    Matroid::from_nonbases(4, 10, sets(&["1,2,3,10", "4,5,6,10", "7,8,9,10"], 10)).expect("fixture is a matroid")
}

/// Integer 4×9 matrix realizing U(4,9) used with [`three_planes_through_ten`].
pub const UNIFORM_FOUR_NINE: [[i64; 9]; 4] = [
    [1, 0, 0, 0, 1, 2, -2, 3, 5],
    [0, 1, 0, 0, 1, 3, 4, -4, -5],
    [0, 0, 1, 0, 1, 4, 7, -14, -18],
    [0, 0, 0, 1, 1, 1, 1, 1, 1],
];

/// The 8 points of the affine 3-space over F₂, as a 4×8 matrix.
pub const BINARY_AFFINE_CUBE: [[i64; 8]; 4] = [
    [0, 1, 0, 0, 1, 1, 0, 1],
    [0, 0, 1, 0, 1, 0, 1, 1],
    [0, 0, 0, 1, 0, 1, 1, 1],
    [1, 1, 1, 1, 1, 1, 1, 1],
];

/// The matroid of [`BINARY_AFFINE_CUBE`] over F₂.
pub fn binary_affine_cube() -> Matroid {
    let f2 = strata_algebra::CoefficientField::prime(2).expect("2 is prime");
    let rows: Vec<&[i64]> = BINARY_AFFINE_CUBE.iter().map(|r| &r[..]).collect();
    crate::matroid::linear_matroid(&crate::matroid::int_matrix(&f2, &rows)).expect("fixture matrix")
}

/// Looks up a fixture matroid by CLI name.
pub fn by_name(name: &str) -> Option<Matroid> {
    match name {
        "qsing" => Some(q_sing()),
        "gaussian9" => Some(gaussian_nine()),
        "curve10" => Some(curve_ten()),
        "planes10" => Some(three_planes_through_ten()),
        "cube" => Some(binary_affine_cube()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        assert_eq!(q_sing().cyclic_hyperplanes().len(), 12);
        assert_eq!(gaussian_nine().lines().unwrap().len(), 10);
        assert_eq!(curve_ten().lines().unwrap().len(), 11);
        assert_eq!(reducible_rank3().len(), 8);
        for (m, _) in disconnected_rank4() {
            assert!(m.is_simple() && m.is_connected());
            assert_eq!(m.planes().unwrap().len(), 9);
        }
        let row3 = sets(&DISCONNECTED_RANK4_PRINTED_ROW3, 8);
        assert!(Matroid::paving_from_hyperplanes(4, 8, &row3).is_err());
    }
}
