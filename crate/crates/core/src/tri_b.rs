//! ELECTRE Tri-B outranking: concordance, discordance, credibility, the
//! λ-cut and the two assignment rules.
//!
//! Differences are always "how much the second object beats the first" on a
//! criterion: for `c_j(x, b)` it is `g_j(b) - g_j(x)`, for `c_j(b, x)` it is
//! `g_j(x) - g_j(b)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::DecisionMatrix;
use crate::params::TriBParameters;

/// Assignment procedure.
///
/// `Pessimistic` and `Optimistic` test the plain outranking relation `S` in
/// both scans. The `Strict` variants test strict preference instead
/// (`a S b` and not `b S a`): an alternative only climbs above a profile it
/// strictly beats, or only stays below a profile that strictly beats it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Pessimistic,
    Optimistic,
    PessimisticStrict,
    OptimisticStrict,
}

impl std::str::FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pessimistic" | "pes" => Ok(Rule::Pessimistic),
            "optimistic" | "opt" => Ok(Rule::Optimistic),
            "pessimistic-strict" | "pes-strict" => Ok(Rule::PessimisticStrict),
            "optimistic-strict" | "opt-strict" => Ok(Rule::OptimisticStrict),
            other => Err(Error::invalid(format!("unknown assignment rule '{other}'"))),
        }
    }
}

impl std::fmt::Display for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Rule::Pessimistic => "pessimistic",
            Rule::Optimistic => "optimistic",
            Rule::PessimisticStrict => "pessimistic-strict",
            Rule::OptimisticStrict => "optimistic-strict",
        })
    }
}

/// `σ(x, b)` and `σ(b, x)` for one alternative and one profile.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CredibilityPair {
    pub sigma_x_b: f64,
    pub sigma_b_x: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    pub classes: Vec<usize>,
    pub rule: Rule,
}

/// Partial concordance for a difference `diff` against thresholds `q <= p`.
///
/// When `p == q` the interpolation band is empty and the index becomes a
/// step that counts the boundary `diff == q` as concordant.
pub fn partial_concordance(diff: f64, q: f64, p: f64) -> f64 {
    if p <= q {
        return if diff <= q { 1.0 } else { 0.0 };
    }
    if diff >= p {
        0.0
    } else if diff < q {
        1.0
    } else {
        (p - diff) / (p - q)
    }
}

/// Partial discordance for a difference `diff` against thresholds `p <= v`.
/// An infinite veto never fires.
pub fn partial_discordance(diff: f64, p: f64, v: f64) -> f64 {
    if v == f64::INFINITY {
        return 0.0;
    }
    if v <= p {
        return if diff >= p { 1.0 } else { 0.0 };
    }
    if diff < p {
        0.0
    } else if diff >= v {
        1.0
    } else {
        (diff - p) / (v - p)
    }
}

/// Weighted mean of the partial concordances.
pub fn global_concordance(partials: &[f64], weights: &[f64]) -> Result<f64> {
    if partials.len() != weights.len() {
        return Err(Error::invalid(format!(
            "{} partial indices for {} weights",
            partials.len(),
            weights.len()
        )));
    }
    let total: f64 = weights.iter().sum();
    if total <= 0.0 {
        return Err(Error::DegenerateWeights);
    }
    Ok(weighted_mean(partials.iter().copied(), weights, total))
}

fn weighted_mean(partials: impl Iterator<Item = f64>, weights: &[f64], total: f64) -> f64 {
    partials.zip(weights).map(|(c, w)| c * w).sum::<f64>() / total
}

/// Concordance discounted by every discordance that exceeds it.
pub fn credibility(concordance: f64, discordances: &[f64]) -> f64 {
    discordances
        .iter()
        .filter(|&&d| d > concordance)
        .fold(concordance, |s, &d| s * (1.0 - d) / (1.0 - concordance))
}

/// `x S b` holds iff `σ >= λ`.
pub fn outranks(sigma: f64, lambda: f64) -> bool {
    sigma >= lambda
}

/// σ of "first is at least as good as second", where `diffs[j]` is how much
/// the second beats the first on criterion `j`.
fn sigma_from_diffs(params: &TriBParameters, total_weight: f64, diff: impl Fn(usize) -> f64) -> f64 {
    let n = params.weights.len();
    let mut c = 0.0;
    for j in 0..n {
        c += params.weights[j] * partial_concordance(diff(j), params.q[j], params.p[j]);
    }
    let c = c / total_weight;
    let mut sigma = c;
    for j in 0..n {
        let d = partial_discordance(diff(j), params.p[j], params.v[j]);
        if d > c {
            sigma *= (1.0 - d) / (1.0 - c);
        }
    }
    sigma
}

/// Precomputed view of a parameter set for repeated assignment.
#[derive(Clone, Debug)]
pub struct Engine<'a> {
    params: &'a TriBParameters,
    total_weight: f64,
}

impl<'a> Engine<'a> {
    /// The parameters are assumed valid (see
    /// [`validate_parameters`](crate::params::validate_parameters)); only a
    /// zero weight sum is rejected here.
    pub fn new(params: &'a TriBParameters) -> Result<Self> {
        let total_weight: f64 = params.weights.iter().sum();
        if total_weight <= 0.0 || !total_weight.is_finite() {
            return Err(Error::DegenerateWeights);
        }
        Ok(Self { params, total_weight })
    }

    pub fn sigma_x_b(&self, x: &[f64], h: usize) -> f64 {
        let b = &self.params.profiles[h];
        sigma_from_diffs(self.params, self.total_weight, |j| b[j] - x[j])
    }

    pub fn sigma_b_x(&self, x: &[f64], h: usize) -> f64 {
        let b = &self.params.profiles[h];
        sigma_from_diffs(self.params, self.total_weight, |j| x[j] - b[j])
    }

    pub fn credibility_pair(&self, x: &[f64], h: usize) -> CredibilityPair {
        CredibilityPair {
            sigma_x_b: self.sigma_x_b(x, h),
            sigma_b_x: self.sigma_b_x(x, h),
        }
    }

    /// Highest profile outranked by `x`, plus one; `0` if none.
    pub fn pessimistic(&self, x: &[f64]) -> usize {
        let lambda = self.params.lambda;
        (0..self.params.profiles.len())
            .rev()
            .find(|&h| outranks(self.sigma_x_b(x, h), lambda))
            .map_or(0, |h| h + 1)
    }

    /// Lowest profile that outranks `x`; the best class if none does.
    pub fn optimistic(&self, x: &[f64]) -> usize {
        let lambda = self.params.lambda;
        let n_profiles = self.params.profiles.len();
        (0..n_profiles)
            .find(|&h| outranks(self.sigma_b_x(x, h), lambda))
            .unwrap_or(n_profiles)
    }

    /// Highest profile strictly preferred by `x`, plus one; `0` if none.
    pub fn pessimistic_strict(&self, x: &[f64]) -> usize {
        let lambda = self.params.lambda;
        (0..self.params.profiles.len())
            .rev()
            .find(|&h| outranks(self.sigma_x_b(x, h), lambda) && !outranks(self.sigma_b_x(x, h), lambda))
            .map_or(0, |h| h + 1)
    }

    /// Lowest profile strictly preferred to `x`; the best class if none.
    pub fn optimistic_strict(&self, x: &[f64]) -> usize {
        let lambda = self.params.lambda;
        let n_profiles = self.params.profiles.len();
        (0..n_profiles)
            .find(|&h| outranks(self.sigma_b_x(x, h), lambda) && !outranks(self.sigma_x_b(x, h), lambda))
            .unwrap_or(n_profiles)
    }

    pub fn classify(&self, x: &[f64], rule: Rule) -> usize {
        match rule {
            Rule::Pessimistic => self.pessimistic(x),
            Rule::Optimistic => self.optimistic(x),
            Rule::PessimisticStrict => self.pessimistic_strict(x),
            Rule::OptimisticStrict => self.optimistic_strict(x),
        }
    }
}

fn check_shape(matrix: &DecisionMatrix, params: &TriBParameters) -> Result<()> {
    if params.n_criteria() != matrix.n_criteria() {
        return Err(Error::invalid(format!(
            "parameters cover {} criteria, matrix has {}",
            params.n_criteria(),
            matrix.n_criteria()
        )));
    }
    Ok(())
}

pub fn assign(matrix: &DecisionMatrix, params: &TriBParameters, rule: Rule) -> Result<Assignment> {
    check_shape(matrix, params)?;
    let engine = Engine::new(params)?;
    Ok(Assignment {
        classes: matrix.rows().iter().map(|x| engine.classify(x, rule)).collect(),
        rule,
    })
}

pub fn assign_pessimistic(matrix: &DecisionMatrix, params: &TriBParameters) -> Result<Assignment> {
    assign(matrix, params, Rule::Pessimistic)
}

pub fn assign_optimistic(matrix: &DecisionMatrix, params: &TriBParameters) -> Result<Assignment> {
    assign(matrix, params, Rule::Optimistic)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn concordance_examples() {
        assert_eq!(partial_concordance(5.0, 1.0, 3.0), 0.0);
        assert_eq!(partial_concordance(0.0, 1.0, 3.0), 1.0);
        assert_eq!(partial_concordance(2.0, 1.0, 3.0), 0.5);
        assert_eq!(partial_concordance(0.0, 0.0, 0.0), 1.0);
        assert_eq!(partial_concordance(1e-12, 0.0, 0.0), 0.0);
        assert_eq!(partial_concordance(-1.0, 0.0, 0.0), 1.0);
    }

    #[test]
    fn global_concordance_examples() {
        assert_eq!(global_concordance(&[1.0, 1.0], &[0.53, 0.29]).unwrap(), 1.0);
        assert_eq!(global_concordance(&[1.0, 0.0], &[0.5, 0.5]).unwrap(), 0.5);
        assert_eq!(global_concordance(&[1.0, 0.5, 0.0], &[2.0, 1.0, 1.0]).unwrap(), 0.625);
        assert!(matches!(
            global_concordance(&[1.0, 0.0], &[0.0, 0.0]),
            Err(Error::DegenerateWeights)
        ));
    }

    #[test]
    fn discordance_examples() {
        assert_eq!(partial_discordance(1.0, 2.0, 6.0), 0.0);
        assert_eq!(partial_discordance(7.0, 2.0, 6.0), 1.0);
        assert_eq!(partial_discordance(4.0, 2.0, 6.0), 0.5);
        // v == p degenerates to a step
        assert_eq!(partial_discordance(2.0, 2.0, 2.0), 1.0);
        assert_eq!(partial_discordance(1.9, 2.0, 2.0), 0.0);
        assert_eq!(partial_discordance(1e9, 2.0, f64::INFINITY), 0.0);
    }

    #[test]
    fn credibility_examples() {
        assert_eq!(credibility(0.8, &[0.1, 0.5]), 0.8);
        assert_eq!(credibility(0.6, &[1.0]), 0.0);
        assert_eq!(credibility(0.5, &[0.75]), 0.25);
        assert_eq!(credibility(1.0, &[1.0]), 1.0);
        assert_eq!(credibility(0.3, &[0.0, 0.0]), 0.3);
    }

    #[test]
    fn lambda_cut_is_inclusive() {
        assert!(outranks(0.86, 0.75));
        assert!(outranks(0.75, 0.75));
        assert!(!outranks(0.74, 0.75));
    }

    fn three_classes() -> TriBParameters {
        TriBParameters {
            weights: vec![0.5, 0.5],
            q: vec![0.0, 0.0],
            p: vec![1.0, 1.0],
            v: vec![2.0, 2.0],
            profiles: vec![vec![10.0, 10.0], vec![20.0, 20.0]],
            lambda: 0.75,
        }
    }

    #[test]
    fn dominating_and_dominated_alternatives() {
        let params = three_classes();
        let m = DecisionMatrix::from_rows(vec![vec![100.0, 100.0], vec![-100.0, -100.0]]).unwrap();
        assert_eq!(assign_pessimistic(&m, &params).unwrap().classes, vec![2, 0]);
        assert_eq!(assign_optimistic(&m, &params).unwrap().classes, vec![2, 0]);
    }

    #[test]
    fn optimistic_mid_alternative_two_classes() {
        // x ties b exactly, so σ(b, x) = 1 >= λ: the profile outranks x
        let params = TriBParameters {
            weights: vec![0.5, 0.5],
            q: vec![1.0, 1.0],
            p: vec![2.0, 2.0],
            v: vec![4.0, 4.0],
            profiles: vec![vec![5.0, 5.0]],
            lambda: 0.6,
        };
        let m = DecisionMatrix::from_rows(vec![vec![5.0, 5.0], vec![5.5, 4.5]]).unwrap();
        let engine = Engine::new(&params).unwrap();
        let pair = engine.credibility_pair(m.row(0), 0);
        assert_eq!(pair.sigma_b_x, 1.0);
        assert_eq!(pair.sigma_x_b, 1.0);
        assert_eq!(assign_optimistic(&m, &params).unwrap().classes, vec![0, 0]);
        assert_eq!(assign_pessimistic(&m, &params).unwrap().classes, vec![1, 1]);
    }

    #[test]
    fn strict_rules_on_indifferent_alternative() {
        // x and b are indifferent: S holds both ways, strict preference neither
        let params = TriBParameters {
            weights: vec![0.5, 0.5],
            q: vec![1.0, 1.0],
            p: vec![2.0, 2.0],
            v: vec![4.0, 4.0],
            profiles: vec![vec![5.0, 5.0]],
            lambda: 0.6,
        };
        let m = DecisionMatrix::from_rows(vec![vec![5.0, 5.0], vec![9.0, 9.0]]).unwrap();
        assert_eq!(
            assign(&m, &params, Rule::PessimisticStrict).unwrap().classes,
            vec![0, 1]
        );
        assert_eq!(assign(&m, &params, Rule::OptimisticStrict).unwrap().classes, vec![1, 1]);
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let m = DecisionMatrix::from_rows(vec![vec![1.0, 2.0, 3.0], vec![1.0, 2.0, 3.0]]).unwrap();
        assert!(assign_pessimistic(&m, &three_classes()).is_err());
    }

    #[test]
    fn rule_parsing() {
        assert_eq!("Pessimistic".parse::<Rule>().unwrap(), Rule::Pessimistic);
        assert_eq!("pessimistic-strict".parse::<Rule>().unwrap(), Rule::PessimisticStrict);
        assert_eq!(Rule::OptimisticStrict.to_string(), "optimistic-strict");
        assert!("median".parse::<Rule>().is_err());
    }
}
