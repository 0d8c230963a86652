use std::fmt;

use serde::{Deserialize, Serialize};

/// The full ELECTRE Tri-B parameter set for `n` criteria and `k` classes.
///
/// `profiles` holds the `k - 1` interior class boundaries ordered from the
/// worst to the best; the outer sentinels are implicit. A veto of `+inf`
/// disables the veto on that criterion.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriBParameters {
    pub weights: Vec<f64>,
    pub q: Vec<f64>,
    pub p: Vec<f64>,
    #[serde(with = "inf_serde::vec")]
    pub v: Vec<f64>,
    pub profiles: Vec<Vec<f64>>,
    pub lambda: f64,
}

impl TriBParameters {
    pub fn n_criteria(&self) -> usize {
        self.weights.len()
    }

    pub fn n_classes(&self) -> usize {
        self.profiles.len() + 1
    }

    /// Restriction to a subset of criteria, in the given order.
    pub fn select_criteria(&self, cols: &[usize]) -> TriBParameters {
        let pick = |xs: &[f64]| cols.iter().map(|&j| xs[j]).collect::<Vec<_>>();
        TriBParameters {
            weights: pick(&self.weights),
            q: pick(&self.q),
            p: pick(&self.p),
            v: pick(&self.v),
            profiles: self.profiles.iter().map(|row| pick(row)).collect(),
            lambda: self.lambda,
        }
    }
}

/// One broken invariant. Criterion and profile indices are 0-based here and
/// printed 1-based.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    Shape(String),
    NonFinite { what: &'static str, criterion: usize },
    WeightOutOfRange { criterion: usize, value: f64 },
    ZeroWeightSum,
    NegativeIndifference { criterion: usize, value: f64 },
    PreferenceBelowIndifference { criterion: usize, p: f64, q: f64 },
    VetoBelowPreference { criterion: usize, v: f64, p: f64 },
    ProfilesNotMonotone { criterion: usize, profile: usize },
    LambdaBelowHalf(f64),
    LambdaAboveOne(f64),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Shape(ref s) => write!(f, "shape: {s}"),
            Violation::NonFinite { what, criterion } => {
                write!(f, "{what}_{} is not a finite number", criterion + 1)
            }
            Violation::WeightOutOfRange { criterion, value } => {
                write!(f, "w_{} = {value} outside [0, 1]", criterion + 1)
            }
            Violation::ZeroWeightSum => write!(f, "weights sum to zero"),
            Violation::NegativeIndifference { criterion, value } => {
                write!(f, "q_{} = {value} is negative", criterion + 1)
            }
            Violation::PreferenceBelowIndifference { criterion, .. } => {
                write!(f, "p_{0} < q_{0}", criterion + 1)
            }
            Violation::VetoBelowPreference { criterion, .. } => {
                write!(f, "v_{0} < p_{0}", criterion + 1)
            }
            Violation::ProfilesNotMonotone { criterion, profile } => write!(
                f,
                "g_{0}(b_{1}) > g_{0}(b_{2})",
                criterion + 1,
                profile + 1,
                profile + 2
            ),
            Violation::LambdaBelowHalf(l) => write!(f, "λ below 0.5 ({l})"),
            Violation::LambdaAboveOne(l) => write!(f, "λ above 1 ({l})"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    /// Display strings of each violation, e.g. `"p_1 < q_1"`.
    pub fn messages(&self) -> Vec<String> {
        self.violations.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        write!(f, "{}", self.messages().join("; "))
    }
}

/// Checks every ordering and range constraint of a parameter set against a
/// matrix shape. Never fails; the report lists what is wrong.
pub fn validate_parameters(params: &TriBParameters, n_criteria: usize, n_classes: usize) -> ValidationReport {
    let mut out = Vec::new();
    let n = n_criteria;
    for (name, len) in [
        ("weights", params.weights.len()),
        ("q", params.q.len()),
        ("p", params.p.len()),
        ("v", params.v.len()),
    ] {
        if len != n {
            out.push(Violation::Shape(format!("{name} has {len} entries, expected {n}")));
        }
    }
    if n_classes < 2 {
        out.push(Violation::Shape(format!("need at least 2 classes, got {n_classes}")));
    } else if params.profiles.len() != n_classes - 1 {
        out.push(Violation::Shape(format!(
            "{} profiles for {} classes, expected {}",
            params.profiles.len(),
            n_classes,
            n_classes - 1
        )));
    }
    for (h, row) in params.profiles.iter().enumerate() {
        if row.len() != n {
            out.push(Violation::Shape(format!(
                "profile {} has {} entries, expected {n}",
                h + 1,
                row.len()
            )));
        }
    }
    if !out.is_empty() {
        return ValidationReport { violations: out };
    }

    for j in 0..n {
        let (w, q, p, v) = (params.weights[j], params.q[j], params.p[j], params.v[j]);
        if !w.is_finite() {
            out.push(Violation::NonFinite {
                what: "w",
                criterion: j,
            });
        } else if !(0.0..=1.0).contains(&w) {
            out.push(Violation::WeightOutOfRange { criterion: j, value: w });
        }
        if !q.is_finite() {
            out.push(Violation::NonFinite {
                what: "q",
                criterion: j,
            });
        }
        if !p.is_finite() {
            out.push(Violation::NonFinite {
                what: "p",
                criterion: j,
            });
        }
        // +inf is the "no veto" marker
        if v.is_nan() || v == f64::NEG_INFINITY {
            out.push(Violation::NonFinite {
                what: "v",
                criterion: j,
            });
        }
        if q < 0.0 {
            out.push(Violation::NegativeIndifference { criterion: j, value: q });
        }
        if p < q {
            out.push(Violation::PreferenceBelowIndifference { criterion: j, p, q });
        }
        if v < p {
            out.push(Violation::VetoBelowPreference { criterion: j, v, p });
        }
        for h in 0..params.profiles.len() {
            let g = params.profiles[h][j];
            if !g.is_finite() {
                out.push(Violation::NonFinite {
                    what: "b",
                    criterion: j,
                });
            } else if h + 1 < params.profiles.len() && g > params.profiles[h + 1][j] {
                out.push(Violation::ProfilesNotMonotone {
                    criterion: j,
                    profile: h,
                });
            }
        }
    }
    if params.weights.iter().all(|w| w.is_finite()) && params.weights.iter().sum::<f64>() <= 0.0 {
        out.push(Violation::ZeroWeightSum);
    }
    let l = params.lambda;
    if l.is_nan() || l < 0.5 {
        out.push(Violation::LambdaBelowHalf(l));
    } else if l > 1.0 {
        out.push(Violation::LambdaAboveOne(l));
    }
    ValidationReport { violations: out }
}

/// Numbers that may be `+inf` (vetoes, fixed genes) serialize with
/// `"none"` standing in for infinity, since neither JSON nor every TOML
/// consumer round-trips infinities.
pub(crate) mod inf_serde {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Value(f64),
        Marker(String),
    }

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if *x == f64::INFINITY {
            s.serialize_str("none")
        } else {
            s.serialize_f64(*x)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Value(v) => Ok(v),
            Repr::Marker(m) if m == "none" || m == "inf" => Ok(f64::INFINITY),
            Repr::Marker(m) => Err(serde::de::Error::custom(format!(
                "expected a number or \"none\", got \"{m}\""
            ))),
        }
    }

    #[derive(Serialize, Deserialize)]
    struct Wrap(#[serde(with = "self")] f64);

    pub mod vec {
        use super::Wrap;
        use serde::{Deserialize, Deserializer, Serialize, Serializer};

        pub fn serialize<S: Serializer>(v: &[f64], s: S) -> Result<S::Ok, S::Error> {
            v.iter().map(|&x| Wrap(x)).collect::<Vec<_>>().serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
            Ok(Vec::<Wrap>::deserialize(d)?.into_iter().map(|w| w.0).collect())
        }
    }
}
