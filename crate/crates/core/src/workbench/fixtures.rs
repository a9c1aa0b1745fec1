//! Transcribed published data: two full instances with their spectral
//! displays, and the characteristic-polynomial factorization lists of the
//! twenty known noncyclotomic rank-5 examples.

use crate::structcheck::{Instance, IntMatrix};
use serde::{Deserialize, Serialize};

fn mats(raw: &[[[i64; 5]; 5]; 4]) -> Vec<IntMatrix> {
    let mut out: Vec<IntMatrix> = vec![(0..5).map(|i| (0..5).map(|k| (i == k) as i64).collect()).collect()];
    for m in raw {
        out.push(m.iter().map(|row| row.to_vec()).collect());
    }
    out
}

const N35: [[[i64; 5]; 5]; 4] = [
    [[0, 4, 0, 0, 0], [1, 0, 0, 0, 3], [0, 0, 0, 2, 2], [0, 0, 1, 2, 1], [0, 1, 1, 1, 1]],
    [[0, 0, 6, 0, 0], [0, 0, 0, 3, 3], [1, 0, 5, 0, 0], [0, 1, 0, 2, 3], [0, 1, 0, 3, 2]],
    [[0, 0, 0, 12, 0], [0, 0, 3, 6, 3], [0, 2, 0, 4, 6], [1, 2, 2, 4, 3], [0, 1, 3, 3, 5]],
    [[0, 0, 0, 0, 12], [0, 3, 3, 3, 3], [0, 2, 0, 6, 4], [0, 1, 3, 3, 5], [1, 1, 2, 5, 3]],
];

const N249: [[[i64; 5]; 5]; 4] = [
    [[0, 62, 0, 0, 0], [1, 15, 14, 12, 20], [0, 14, 16, 17, 15], [0, 12, 17, 18, 15], [0, 20, 15, 15, 12]],
    [[0, 0, 62, 0, 0], [0, 14, 16, 17, 15], [1, 16, 18, 16, 11], [0, 17, 16, 11, 18], [0, 15, 11, 18, 18]],
    [[0, 0, 0, 62, 0], [0, 12, 17, 18, 15], [0, 17, 16, 11, 18], [1, 18, 11, 18, 14], [0, 15, 18, 14, 15]],
    [[0, 0, 0, 0, 62], [0, 20, 15, 15, 12], [0, 15, 11, 18, 18], [0, 15, 18, 14, 15], [1, 12, 18, 15, 16]],
];

/// Order-35 symmetric instance with an S3 eigenvalue field.
pub fn n35() -> Instance {
    Instance::new(mats(&N35)).expect("well-formed fixture")
}

/// Order-249 homogeneous symmetric instance with an S4 eigenvalue field.
pub fn n249() -> Instance {
    Instance::new(mats(&N249)).expect("well-formed fixture")
}

pub const N35_P: [[f64; 5]; 5] = [
    [1.0, 4.0, 6.0, 12.0, 12.0],
    [1.0, -1.0, 6.0, -3.0, -3.0],
    [1.0, -2.60168, -1.0, -0.167055, 2.768734],
    [1.0, 0.339877, -1.0, 3.54461, -3.88448],
    [1.0, 2.26180, -1.0, -3.37755, 1.11575],
];

pub const N35_Q: [[f64; 5]; 5] = [
    [1.0, 4.0, 10.0, 10.0, 10.0],
    [1.0, -1.0, -6.50420, 0.849692, 5.65451],
    [1.0, 4.0, -5.0 / 3.0, -5.0 / 3.0, -5.0 / 3.0],
    [1.0, -1.0, -0.139212, 2.95384, -2.81463],
    [1.0, -1.0, 2.30728, -3.23707, 0.929791],
];

/// Displayed dual intersection matrices `L*_1..L*_4`, rows `k`, columns `j`.
pub const N35_LSTAR: [[[f64; 5]; 5]; 4] = [
    [
        [0.0, 4.0, 0.0, 0.0, 0.0],
        [1.0, 3.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 2.0 / 3.0, 5.0 / 3.0, 5.0 / 3.0],
        [0.0, 0.0, 5.0 / 3.0, 2.0 / 3.0, 5.0 / 3.0],
        [0.0, 0.0, 5.0 / 3.0, 5.0 / 3.0, 2.0 / 3.0],
    ],
    [
        [0.0, 0.0, 10.0, 0.0, 0.0],
        [0.0, 0.0, 5.0 / 3.0, 25.0 / 6.0, 25.0 / 6.0],
        [1.0, 2.0 / 3.0, 0.0541562, 2.59972, 5.67949],
        [0.0, 5.0 / 3.0, 2.59972, 3.51139, 20.0 / 9.0],
        [0.0, 5.0 / 3.0, 5.67946, 20.0 / 9.0, 0.431651],
    ],
    [
        [0.0, 0.0, 0.0, 10.0, 0.0],
        [0.0, 0.0, 25.0 / 6.0, 5.0 / 3.0, 25.0 / 6.0],
        [0.0, 5.0 / 3.0, 2.59972, 3.51139, 20.0 / 9.0],
        [1.0, 2.0 / 3.0, 3.51139, 2.50545, 2.31644],
        [0.0, 5.0 / 3.0, 20.0 / 9.0, 2.31169, 3.79463],
    ],
    [
        [0.0, 0.0, 0.0, 0.0, 10.0],
        [0.0, 0.0, 25.0 / 6.0, 25.0 / 6.0, 5.0 / 3.0],
        [0.0, 5.0 / 3.0, 5.67946, 20.0 / 9.0, 0.431651],
        [0.0, 5.0 / 3.0, 20.0 / 9.0, 2.31649, 3.79463],
        [1.0, 2.0 / 3.0, 0.431651, 3.79463, 4.10706],
    ],
];

pub const N249_P: [[f64; 5]; 5] = [
    [1.0, 62.0, 62.0, 62.0, 62.0],
    [1.0, 9.45706, -4.83450, -8.21429, 2.59173],
    [1.0, 0.165779, -7.32957, 10.6401, -4.47634],
    [1.0, -0.777430, 10.45989, -2.18457, -8.49789],
    [1.0, -9.84541, 0.704180, -1.24127, 9.38250],
];

pub const N249_LSTAR: [[[f64; 5]; 5]; 4] = [
    [
        [0.0, 62.0, 0.0, 0.0, 0.0],
        [1.0, 16.2247, 17.5718, 15.3191, 11.8843],
        [0.0, 17.5718, 10.8695, 18.0841, 15.4745],
        [0.0, 15.3191, 18.3339, 16.6017, 15.7793],
        [0.0, 11.8843, 15.4745, 14.6661, 19.9751],
    ],
    [
        [0.0, 0.0, 62.0, 0.0, 0.0],
        [0.0, 17.5718, 10.8695, 18.0841, 15.4745],
        [1.0, 10.8695, 18.3339, 16.0173, 15.7793],
        [0.0, 18.0841, 16.0173, 11.1233, 16.7753],
        [0.0, 15.4745, 15.7793, 16.7753, 13.9710],
    ],
    [
        [0.0, 0.0, 0.0, 62.0, 0.0],
        [0.0, 15.3191, 18.0841, 13.9307, 14.6661],
        [0.0, 18.0841, 16.0173, 11.1233, 16.7753],
        [1.0, 13.9307, 11.1233, 17.5255, 18.4206],
        [0.0, 14.6661, 16.7753, 18.4206, 12.1381],
    ],
    [
        [0.0, 0.0, 0.0, 0.0, 62.0],
        [0.0, 11.8843, 15.4745, 14.6661, 19.9751],
        [0.0, 15.4745, 15.7793, 16.7753, 13.9710],
        [0.0, 14.6661, 16.7753, 18.4206, 12.1381],
        [1.0, 19.9751, 13.9710, 12.1381, 14.9159],
    ],
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GaloisFamily {
    /// Eigenvalue field with S4 Galois group, homogeneous and pseudocyclic.
    FourTransitive,
    /// Eigenvalue field with S3 Galois group, one rational nontrivial character.
    ThreeTransitive,
}

/// One published example known only through its multiplicities and the
/// factored characteristic polynomials of `b_1..b_4`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationFixture {
    pub name: String,
    pub order: i64,
    pub family: GaloisFamily,
    /// `[m]` for the four-transitive family, `[m1, m2]` otherwise.
    pub multiplicities: Vec<i64>,
    pub factorizations: Vec<String>,
    pub handshake: bool,
    /// Whether the example passes every feasibility condition.
    pub feasible: bool,
}

fn four_t(order: i64, k: i64, quartics: [&str; 4]) -> FactorizationFixture {
    FactorizationFixture {
        name: format!("4T{}", order),
        order,
        family: GaloisFamily::FourTransitive,
        multiplicities: vec![k],
        factorizations: quartics.iter().map(|q| format!("(x-{})({})", k, q)).collect(),
        handshake: true,
        feasible: true,
    }
}

fn three_t(name: &str, order: i64, m1: i64, m2: i64, f: [&str; 4], handshake: bool, feasible: bool) -> FactorizationFixture {
    FactorizationFixture {
        name: format!("3T{}", name),
        order,
        family: GaloisFamily::ThreeTransitive,
        multiplicities: vec![m1, m2],
        factorizations: f.iter().map(|s| s.to_string()).collect(),
        handshake,
        feasible,
    }
}

/// All twenty factorization lists, four-transitive first.
pub fn factorization_fixtures() -> Vec<FactorizationFixture> {
    vec![
        four_t(249, 62, ["x^4+x^3-93x^2-57x+12", "x^4+x^3-93x^2-306x+261", "x^4+x^3-93x^2-306x-237", "x^4+x^3-93x^2-140x+925"]),
        four_t(321, 80, ["x^4+x^3-120x^2-341x-242", "x^4+x^3-120x^2-20x+2968", "x^4+x^3-120x^2-301x-400", "x^4+x^3-120x^2+301x+1042"]),
        four_t(473, 118, ["x^4+x^3-177x^2-266x+279", "x^4+x^3-177x^2-266x+3117", "x^4+x^3-177x^2+680x-667", "x^4+x^3-177x^2+207x+4536"]),
        four_t(633, 158, ["x^4+x^3-237x^2-356x+10897", "x^4+x^3-237x^2-145x+11108", "x^4+x^3-237x^2+1754x-3451", "x^4+x^3-237x^2-778x+5411"]),
        four_t(785, 196, ["x^4+x^3-294x^2-1619x-1524", "x^4+x^3-294x^2-49x+20456", "x^4+x^3-294x^2+1521x+3186", "x^4+x^3-294x^2+736x+7896"]),
        four_t(993, 248, ["x^4+x^3-372x^2+931x-128", "x^4+x^3-372x^2+931x+9802", "x^4+x^3-372x^2+2917x-6086", "x^4+x^3-372x^2+1924x+7816"]),
        three_t("35", 35, 4, 10, ["(x-4)(x+1)(x^3-6x+2)", "(x-6)^2(x+1)^3", "(x-12)(x+3)(x^3-12x-2)", "(x-12)(x+3)(x^3-12x+12)"], true, true),
        three_t("45", 45, 8, 12, ["(x-4)^2(x+1)^3", "(x-8)(x+1)(x^3-12x+14)", "(x-8)(x+1)(x^3-12x+4)", "(x-24)(x+3)(x^3-18x+18)"], true, true),
        three_t("76", 76, 18, 19, ["(x-3)^2(x+1)^3", "(x-18)(x+1)(x^3-27x-18)", "(x-18)(x+1)(x^3-27x-42)", "(x-36)(x+2)(x^3-36x-48)"], true, true),
        three_t("88a", 88, 66, 7, ["(x-3)^4(x+1)", "(x-14)(x)(x^3+2x^2-72x-16)", "(x-35)(x)(x^3+5x^2-120x-360)", "(x-35)(x)(x^3+5x^2-120x+80)"], false, false),
        three_t("88b", 88, 66, 7, ["(x-3)^4(x+1)", "(x-21)(x)(x^3+3x^2-96x-384)", "(x-21)(x)(x^3+3x^2-96x-472)", "(x-42)(x)(x^3+6x^2-120x-784)"], false, false),
        three_t("93", 93, 2, 30, ["(x-12)(x+6)(x^3-15x+2)", "(x-20)(x+10)(x^3-21x-16)", "(x-30)(x+15)(x^3-24x+8)", "(x-30)^2(x+1)^3"], true, true),
        three_t("116", 116, 58, 19, ["(x-1)^4(x+1)", "(x-19)(x)(x^3+x^2-48x+72)", "(x-19)(x)(x^3+x^2-48x-44)", "(x-76)(x)(x^3+4x^2-72x-32)"], false, false),
        three_t("129", 129, 86, 14, ["(x-2)^4(x+1)", "(x-28)(x)(x^3+2x^2-99x+150)", "(x-28)(x)(x^3+2x^2-99x-108)", "(x-70)(x)(x^3+5x^2-135x-75)"], true, false),
        three_t("165", 165, 32, 44, ["(x-4)^2(x+1)^3", "(x-32)(x+1)(x^3-48x-32)", "(x-32)(x+1)(x^3-48x-112)", "(x-96)(x+3)(x^3-72x-144)"], true, true),
        three_t("189", 189, 20, 56, ["(x-8)^2(x+1)^3", "(x-20)(x+1)(x^3-30x-20)", "(x-80)(x+4)(x^3-75x+70)", "(x-80)(x+4)(x^3-75x-200)"], true, true),
        three_t("190", 190, 18, 57, ["(x-9)^2(x+1)^3", "(x-36)(x+2)(x^3-48x+32)", "(x-36)(x+2)(x^3-48x+112)", "(x-108)(x+6)(x^3-72x+144)"], true, true),
        three_t("217", 217, 30, 62, ["(x-6)^2(x+1)^3", "(x-60)(x+2)(x^3-75x-100)", "(x-60)(x+2)(x^3-75x-170)", "(x-90)(x+3)(x^3-90x-180)"], true, true),
        three_t("231a", 231, 32, 66, ["(x-6)^2(x+1)^3", "(x-32)(x+1)(x^3-48x-96)", "(x-96)(x+3)(x^3-96x-352)", "(x-96)(x+3)(x^3-96x-128)"], true, true),
        three_t("231b", 231, 32, 66, ["(x-6)^2(x+1)^3", "(x-32)(x+1)(x^3-48x+16)", "(x-96)(x+3)(x^3-96x-128)", "(x-96)(x+3)(x^3-96x+208)"], true, true),
    ]
}

/// `5184 · W(y, m)` for the pseudocyclic 5A1 elimination polynomial,
/// with `y = λ_{333}`.
pub const W_5A1_TIMES_5184: &str = "5184*y^4-5184*y^3*m+1944*y^2*m^2-324*y*m^3+81/4*m^4+7776*y^3-6160*y^2*m+1622*y*m^2-142*m^3+4292*y^2-2392*y*m+330*m^2+1032*y-304*m+91";
