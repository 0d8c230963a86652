//! Straight-line transcription of the outranking equations, written without
//! reference to the library's engine.

use electre_tree::TriBParameters;

/// c_j(a, b): evidence that `a` is at least as good as `b` on criterion j.
fn c_j(ga: f64, gb: f64, q: f64, p: f64) -> f64 {
    let d = gb - ga;
    if p == q {
        // degenerate band: a step that includes the boundary
        return if d <= q { 1.0 } else { 0.0 };
    }
    if d >= p {
        0.0
    } else if d < q {
        1.0
    } else {
        (p - gb + ga) / (p - q)
    }
}

fn d_j(ga: f64, gb: f64, p: f64, v: f64) -> f64 {
    let d = gb - ga;
    if v == f64::INFINITY {
        return 0.0;
    }
    if d < p {
        0.0
    } else if d >= v {
        1.0
    } else {
        (d - p) / (v - p)
    }
}

/// σ(a, b).
pub fn sigma(t: &TriBParameters, a: &[f64], b: &[f64]) -> f64 {
    let n = t.weights.len();
    let mut num = 0.0;
    let mut den = 0.0;
    for j in 0..n {
        num += t.weights[j] * c_j(a[j], b[j], t.q[j], t.p[j]);
        den += t.weights[j];
    }
    let c = num / den;
    let mut s = c;
    for j in 0..n {
        let d = d_j(a[j], b[j], t.p[j], t.v[j]);
        if d > c {
            s *= (1.0 - d) / (1.0 - c);
        }
    }
    s
}

pub fn concordance(t: &TriBParameters, a: &[f64], b: &[f64]) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for j in 0..t.weights.len() {
        num += t.weights[j] * c_j(a[j], b[j], t.q[j], t.p[j]);
        den += t.weights[j];
    }
    num / den
}

fn s(t: &TriBParameters, a: &[f64], b: &[f64]) -> bool {
    sigma(t, a, b) >= t.lambda
}

/// Scan profiles from the best down; `x S b_h` puts x in class h + 1.
pub fn pessimistic(t: &TriBParameters, x: &[f64]) -> usize {
    let k = t.profiles.len() + 1;
    for h in (0..k - 1).rev() {
        if s(t, x, &t.profiles[h]) {
            return h + 1;
        }
    }
    0
}

/// Scan profiles from the worst up; `b_h S x` puts x in class h.
pub fn optimistic(t: &TriBParameters, x: &[f64]) -> usize {
    let k = t.profiles.len() + 1;
    for h in 0..k - 1 {
        if s(t, &t.profiles[h], x) {
            return h;
        }
    }
    k - 1
}

pub fn pessimistic_strict(t: &TriBParameters, x: &[f64]) -> usize {
    let k = t.profiles.len() + 1;
    for h in (0..k - 1).rev() {
        let b = &t.profiles[h];
        if s(t, x, b) && !s(t, b, x) {
            return h + 1;
        }
    }
    0
}

pub fn optimistic_strict(t: &TriBParameters, x: &[f64]) -> usize {
    let k = t.profiles.len() + 1;
    for h in 0..k - 1 {
        let b = &t.profiles[h];
        if s(t, b, x) && !s(t, x, b) {
            return h;
        }
    }
    k - 1
}
