use std::fmt;

/// Order-preserving map `[m] -> [n]`, stored as its value list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonotoneMap {
    values: Vec<usize>,
    target: usize,
}

impl MonotoneMap {
    /// `values[i]` is the image of `i`; the target is `[target]`.
    pub fn new(values: Vec<usize>, target: usize) -> Option<Self> {
        if values.windows(2).any(|w| w[0] > w[1]) || values.iter().any(|&v| v > target) || values.is_empty() {
            return None;
        }
        Some(MonotoneMap { values, target })
    }

    pub fn identity(m: usize) -> Self {
        MonotoneMap { values: (0..=m).collect(), target: m }
    }

    /// Coface `ε_i: [m-1] -> [m]` missing `i`.
    pub fn coface(m: usize, i: usize) -> Self {
        assert!(m >= 1 && i <= m);
        MonotoneMap { values: (0..=m).filter(|&x| x != i).collect(), target: m }
    }

    /// Codegeneracy `s_j: [m+1] -> [m]` hitting `j` twice.
    pub fn codegeneracy(m: usize, j: usize) -> Self {
        assert!(j <= m);
        MonotoneMap { values: (0..=m + 1).map(|x| if x <= j { x } else { x - 1 }).collect(), target: m }
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `m` for a map out of `[m]`.
    pub fn source(&self) -> usize {
        self.values.len() - 1
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0 && *self.values.last().unwrap() == self.target && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MonotoneMap) -> MonotoneMap {
        assert_eq!(other.target, self.source(), "composition of incompatible maps");
        MonotoneMap { values: other.values.iter().map(|&v| self.values[v]).collect(), target: self.target }
    }

    /// Positions `j >= 1` where a surjection steps up, as a bit mask.
    pub fn jump_mask(&self) -> u64 {
        let mut mask = 0;
        for j in 1..self.values.len() {
            if self.values[j] != self.values[j - 1] {
                mask |= 1 << j;
            }
        }
        mask
    }

    /// The surjection out of `[m]` whose jump positions are `mask`.
    pub fn from_jump_mask(m: usize, mask: u64) -> Self {
        let mut values = Vec::with_capacity(m + 1);
        let mut v = 0;
        for j in 0..=m {
            if j > 0 && mask & (1 << j) != 0 {
                v += 1;
            }
            values.push(v);
        }
        MonotoneMap { values, target: v }
    }
}

impl fmt::Display for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]->[{}]:{:?}", self.source(), self.target, self.values)
    }
}

/// All surjections `[n] ↠ [p]`, lexicographic in their value lists.
pub fn monotone_surjections(n: usize, p: usize) -> Vec<MonotoneMap> {
    if p > n {
        return vec![];
    }
    let mut out = Vec::new();
    let mut values = vec![0usize];
    fn go(n: usize, p: usize, values: &mut Vec<usize>, out: &mut Vec<MonotoneMap>) {
        let last = *values.last().unwrap();
        if values.len() == n + 1 {
            if last == p {
                out.push(MonotoneMap { values: values.clone(), target: p });
            }
            return;
        }
        // remaining positions must still reach p
        let left = n + 1 - values.len();
        for step in 0..=1 {
            let v = last + step;
            if v > p || p - v > left - 1 {
                continue;
            }
            values.push(v);
            go(n, p, values, out);
            values.pop();
        }
    }
    go(n, p, &mut values, &mut out);
    out
}

/// `α = ε ∘ η'` with `η'` surjective and `ε` injective.
pub fn epi_monic_factor(alpha: &MonotoneMap) -> (MonotoneMap, MonotoneMap) {
    let mut image: Vec<usize> = alpha.values.clone();
    image.dedup();
    let q = image.len() - 1;
    let eta = alpha.values.iter().map(|v| image.binary_search(v).unwrap()).collect();
    (MonotoneMap { values: eta, target: q }, MonotoneMap { values: image, target: alpha.target })
}
