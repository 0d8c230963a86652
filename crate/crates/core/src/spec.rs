//! Which parameters are known and which are searched for.
//!
//! An [`ElicitationSpec`] holds one [`GeneBound`] per scalar ELECTRE Tri-B
//! parameter, laid out exactly like a chromosome: all weights, then all
//! indifference thresholds, then preference, then veto, then the profile
//! rows from worst to best, then λ.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::DecisionMatrix;
use crate::params::TriBParameters;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneBound {
    Fixed(#[serde(with = "crate::params::inf_serde")] f64),
    Free { lo: f64, hi: f64 },
}

impl GeneBound {
    pub fn is_fixed(&self) -> bool {
        matches!(self, GeneBound::Fixed(_))
    }

    pub fn lo(&self) -> f64 {
        match *self {
            GeneBound::Fixed(v) => v,
            GeneBound::Free { lo, .. } => lo,
        }
    }

    pub fn hi(&self) -> f64 {
        match *self {
            GeneBound::Fixed(v) => v,
            GeneBound::Free { hi, .. } => hi,
        }
    }

    /// Width of the search interval; zero for fixed genes.
    pub fn width(&self) -> f64 {
        match *self {
            GeneBound::Fixed(_) => 0.0,
            GeneBound::Free { lo, hi } => hi - lo,
        }
    }
}

/// Names one scalar parameter. Indices are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParamRef {
    Weight(usize),
    Q(usize),
    P(usize),
    V(usize),
    Profile { profile: usize, criterion: usize },
    Lambda,
}

/// Index arithmetic of the flat gene vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Layout {
    pub n_criteria: usize,
    pub n_classes: usize,
}

impl Layout {
    pub fn new(n_criteria: usize, n_classes: usize) -> Self {
        Self { n_criteria, n_classes }
    }

    pub fn n_profiles(&self) -> usize {
        self.n_classes - 1
    }

    pub fn len(&self) -> usize {
        self.lambda() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn weight(&self, j: usize) -> usize {
        j
    }

    pub fn q(&self, j: usize) -> usize {
        self.n_criteria + j
    }

    pub fn p(&self, j: usize) -> usize {
        2 * self.n_criteria + j
    }

    pub fn v(&self, j: usize) -> usize {
        3 * self.n_criteria + j
    }

    pub fn profile(&self, h: usize, j: usize) -> usize {
        4 * self.n_criteria + h * self.n_criteria + j
    }

    pub fn lambda(&self) -> usize {
        4 * self.n_criteria + self.n_profiles() * self.n_criteria
    }

    pub fn index(&self, r: ParamRef) -> usize {
        match r {
            ParamRef::Weight(j) => self.weight(j),
            ParamRef::Q(j) => self.q(j),
            ParamRef::P(j) => self.p(j),
            ParamRef::V(j) => self.v(j),
            ParamRef::Profile { profile, criterion } => self.profile(profile, criterion),
            ParamRef::Lambda => self.lambda(),
        }
    }

    /// Gene indices that must be non-decreasing along each chain:
    /// `q_j <= p_j <= v_j` per criterion and `b_1 <= ... <= b_{k-1}` per
    /// criterion.
    pub fn chains(&self) -> Vec<Vec<usize>> {
        let n = self.n_criteria;
        let mut out = Vec::with_capacity(2 * n);
        for j in 0..n {
            out.push(vec![self.q(j), self.p(j), self.v(j)]);
        }
        for j in 0..n {
            out.push((0..self.n_profiles()).map(|h| self.profile(h, j)).collect());
        }
        out
    }

    pub fn encode(&self, params: &TriBParameters) -> Vec<f64> {
        let mut genes = Vec::with_capacity(self.len());
        genes.extend_from_slice(&params.weights);
        genes.extend_from_slice(&params.q);
        genes.extend_from_slice(&params.p);
        genes.extend_from_slice(&params.v);
        for row in &params.profiles {
            genes.extend_from_slice(row);
        }
        genes.push(params.lambda);
        genes
    }

    pub fn decode(&self, genes: &[f64]) -> TriBParameters {
        let n = self.n_criteria;
        TriBParameters {
            weights: genes[0..n].to_vec(),
            q: genes[n..2 * n].to_vec(),
            p: genes[2 * n..3 * n].to_vec(),
            v: genes[3 * n..4 * n].to_vec(),
            profiles: (0..self.n_profiles())
                .map(|h| genes[self.profile(h, 0)..self.profile(h, 0) + n].to_vec())
                .collect(),
            lambda: genes[self.lambda()],
        }
    }
}

/// Per-parameter fixed value or search interval.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElicitationSpec {
    n_criteria: usize,
    n_classes: usize,
    genes: Vec<GeneBound>,
}

impl ElicitationSpec {
    /// Validates that the bounds admit at least one valid parameter set.
    pub fn new(n_criteria: usize, n_classes: usize, genes: Vec<GeneBound>) -> Result<Self> {
        let spec = Self {
            n_criteria,
            n_classes,
            genes,
        };
        spec.check()?;
        Ok(spec)
    }

    /// Every parameter free within its default interval: weights in
    /// `[0, 1]`, q and p in `[0, d]` where `d` is the mean absolute
    /// pairwise difference of their column, v in `[0, max - min]`, profile
    /// cells in `[min, max]` of their column and λ in `[0.5, 1]`.
    pub fn free(matrix: &DecisionMatrix, n_classes: usize) -> Result<Self> {
        Self::builder(matrix, n_classes)?.build()
    }

    pub fn builder(matrix: &DecisionMatrix, n_classes: usize) -> Result<SpecBuilder> {
        if n_classes < 2 {
            return Err(Error::invalid(format!("need at least 2 classes, got {n_classes}")));
        }
        let n = matrix.n_criteria();
        let layout = Layout::new(n, n_classes);
        let mut genes = vec![GeneBound::Fixed(0.0); layout.len()];
        for j in 0..n {
            let (min, max) = matrix.column_range(j);
            let span = matrix.mean_abs_difference(j);
            genes[layout.weight(j)] = GeneBound::Free { lo: 0.0, hi: 1.0 };
            for idx in [layout.q(j), layout.p(j)] {
                genes[idx] = GeneBound::Free { lo: 0.0, hi: span };
            }
            genes[layout.v(j)] = GeneBound::Free { lo: 0.0, hi: max - min };
            for h in 0..layout.n_profiles() {
                genes[layout.profile(h, j)] = GeneBound::Free { lo: min, hi: max };
            }
        }
        genes[layout.lambda()] = GeneBound::Free { lo: 0.5, hi: 1.0 };
        Ok(SpecBuilder { layout, genes })
    }

    /// Every parameter fixed to the given values.
    pub fn fixed(params: &TriBParameters) -> Result<Self> {
        let layout = Layout::new(params.n_criteria(), params.n_classes());
        let genes = layout.encode(params).into_iter().map(GeneBound::Fixed).collect();
        Self::new(layout.n_criteria, layout.n_classes, genes)
    }

    pub fn layout(&self) -> Layout {
        Layout::new(self.n_criteria, self.n_classes)
    }

    pub fn n_criteria(&self) -> usize {
        self.n_criteria
    }

    pub fn n_classes(&self) -> usize {
        self.n_classes
    }

    pub fn genes(&self) -> &[GeneBound] {
        &self.genes
    }

    pub fn bound(&self, r: ParamRef) -> GeneBound {
        self.genes[self.layout().index(r)]
    }

    pub fn free_count(&self) -> usize {
        self.genes.iter().filter(|g| !g.is_fixed()).count()
    }

    /// The same spec restricted to a subset of criteria, in the given order.
    pub fn restrict(&self, cols: &[usize]) -> Result<ElicitationSpec> {
        let full = self.layout();
        let sub = Layout::new(cols.len(), self.n_classes);
        let mut genes = vec![GeneBound::Fixed(0.0); sub.len()];
        for (jj, &j) in cols.iter().enumerate() {
            if j >= self.n_criteria {
                return Err(Error::invalid(format!("criterion index {j} out of range")));
            }
            genes[sub.weight(jj)] = self.genes[full.weight(j)];
            genes[sub.q(jj)] = self.genes[full.q(j)];
            genes[sub.p(jj)] = self.genes[full.p(j)];
            genes[sub.v(jj)] = self.genes[full.v(j)];
            for h in 0..full.n_profiles() {
                genes[sub.profile(h, jj)] = self.genes[full.profile(h, j)];
            }
        }
        genes[sub.lambda()] = self.genes[full.lambda()];
        ElicitationSpec::new(cols.len(), self.n_classes, genes)
    }

    fn check(&self) -> Result<()> {
        if self.n_classes < 2 {
            return Err(Error::invalid(format!(
                "need at least 2 classes, got {}",
                self.n_classes
            )));
        }
        if self.n_criteria == 0 {
            return Err(Error::invalid("need at least one criterion"));
        }
        let layout = self.layout();
        if self.genes.len() != layout.len() {
            return Err(Error::invalid(format!(
                "{} gene bounds, expected {}",
                self.genes.len(),
                layout.len()
            )));
        }
        for (i, g) in self.genes.iter().enumerate() {
            match *g {
                GeneBound::Fixed(v) if v.is_nan() => {
                    return Err(Error::invalid(format!("gene {i}: fixed value is NaN")))
                }
                GeneBound::Free { lo, hi } if !(lo.is_finite() && hi.is_finite() && lo <= hi) => {
                    return Err(Error::invalid(format!("gene {i}: bad interval [{lo}, {hi}]")))
                }
                _ => {}
            }
        }
        let v_indices: Vec<usize> = (0..self.n_criteria).map(|j| layout.v(j)).collect();
        for (i, g) in self.genes.iter().enumerate() {
            // only a fixed veto may be infinite
            if let GeneBound::Fixed(v) = *g {
                if v.is_infinite() && !(v_indices.contains(&i) && v > 0.0) {
                    return Err(Error::invalid(format!("gene {i}: fixed value must be finite")));
                }
            }
        }
        for j in 0..self.n_criteria {
            let w = self.genes[layout.weight(j)];
            if w.lo() < 0.0 || w.hi() > 1.0 {
                return Err(Error::invalid(format!("w_{} bounds must lie within [0, 1]", j + 1)));
            }
            if self.genes[layout.q(j)].lo() < 0.0 {
                return Err(Error::invalid(format!("q_{} must be non-negative", j + 1)));
            }
        }
        let max_weight: f64 = (0..self.n_criteria).map(|j| self.genes[layout.weight(j)].hi()).sum();
        if max_weight <= 0.0 {
            return Err(Error::DegenerateWeights);
        }
        for chain in layout.chains() {
            let mut floor = f64::NEG_INFINITY;
            for &i in &chain {
                let g = self.genes[i];
                floor = floor.max(g.lo());
                if floor > g.hi() {
                    return Err(Error::invalid(format!(
                        "bounds admit no ordered assignment: {} cannot reach {}",
                        describe(layout, i),
                        floor
                    )));
                }
            }
        }
        let l = self.genes[layout.lambda()];
        if l.lo().max(0.5) > l.hi().min(1.0) {
            return Err(Error::invalid(format!(
                "λ bounds [{}, {}] do not meet [0.5, 1]",
                l.lo(),
                l.hi()
            )));
        }
        Ok(())
    }
}

fn describe(layout: Layout, i: usize) -> String {
    let n = layout.n_criteria;
    if i == layout.lambda() {
        return "λ".into();
    }
    let (name, j) = match i / n {
        0 => ("w", i % n),
        1 => ("q", i % n),
        2 => ("p", i % n),
        3 => ("v", i % n),
        r => return format!("g_{}(b_{})", i % n + 1, r - 3),
    };
    format!("{name}_{}", j + 1)
}

/// Mutable staging area for an [`ElicitationSpec`]; checked on `build`.
#[derive(Clone, Debug)]
pub struct SpecBuilder {
    layout: Layout,
    genes: Vec<GeneBound>,
}

impl SpecBuilder {
    pub fn set(mut self, r: ParamRef, bound: GeneBound) -> Self {
        let i = self.layout.index(r);
        self.genes[i] = bound;
        self
    }

    pub fn fix(self, r: ParamRef, value: f64) -> Self {
        self.set(r, GeneBound::Fixed(value))
    }

    pub fn fix_all_q(mut self, value: f64) -> Self {
        for j in 0..self.layout.n_criteria {
            self.genes[self.layout.q(j)] = GeneBound::Fixed(value);
        }
        self
    }

    pub fn fix_all_p(mut self, value: f64) -> Self {
        for j in 0..self.layout.n_criteria {
            self.genes[self.layout.p(j)] = GeneBound::Fixed(value);
        }
        self
    }

    /// Disables the veto on criterion `j`.
    pub fn no_veto(self, j: usize) -> Self {
        self.fix(ParamRef::V(j), f64::INFINITY)
    }

    pub fn fix_lambda(self, value: f64) -> Self {
        self.fix(ParamRef::Lambda, value)
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn build(self) -> Result<ElicitationSpec> {
        ElicitationSpec::new(self.layout.n_criteria, self.layout.n_classes, self.genes)
    }
}
