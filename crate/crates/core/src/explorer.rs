//! Pool building, assignment enumeration and the signature census.
//!
//! Pool `A` holds matrices of order `k`, pool `B` matrices of order `m`. Each
//! construction consumes a fixed number of slots from each pool:
//!
//! | construction | A slots | B slots | built matrix                         |
//! |--------------|---------|---------|--------------------------------------|
//! | `modified`   | `m`     | `k`     | `modified(A_1..A_m, B_1..B_k)`       |
//! | `nosong`     | `m`     | 1       | `no_song(C, [A_1..A_m])`             |
//! | `product`    | 1       | 1       | `sylvester_product(C, A)`            |
//!
//! so collapsing both pools to single matrices makes all three agree.
//!
//! Randomness (pool variants, sampled assignments) comes from ChaCha8 seeded
//! with `seed_from_u64`. Sampled assignment `i` draws from stream `i` of the
//! generator, which keeps every tuple independent of evaluation order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::constructions::{modified, no_song, sylvester_product, ModifiedInputs};
use crate::error::{Error, Result};
use crate::hadamard::{
    apply_transform, find_violation, is_prime, is_valid_order, paley_i, sylvester_power,
    EquivalenceTransform, HadamardMatrix, MAX_GENERATED_ORDER,
};
use crate::hadcode::{signature, InvariantSignature};
use crate::par::{map_indices, Execution};

/// Default cap on exhaustive enumeration.
pub const DEFAULT_EXHAUSTIVE_CAP: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Sylvester,
    Paley1,
    /// Matrices supplied by the caller, e.g. read from files.
    Supplied(Vec<HadamardMatrix>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoolSpec {
    pub order: usize,
    pub families: Vec<Family>,
    pub variants_per_base: usize,
    pub seed: u64,
}

impl PoolSpec {
    pub fn new(order: usize, families: Vec<Family>) -> Self {
        PoolSpec {
            order,
            families,
            variants_per_base: 0,
            seed: 0,
        }
    }

    pub fn with_variants(mut self, variants_per_base: usize, seed: u64) -> Self {
        self.variants_per_base = variants_per_base;
        self.seed = seed;
        self
    }
}

fn base_matrices(spec: &PoolSpec) -> Result<Vec<HadamardMatrix>> {
    let n = spec.order;
    if !is_valid_order(n) {
        return Err(Error::InvalidParameter(format!(
            "no Hadamard matrix of order {n} exists (order must be 1, 2 or a multiple of 4)"
        )));
    }
    let mut bases = Vec::new();
    for family in &spec.families {
        match family {
            Family::Sylvester => {
                if n.is_power_of_two() && n <= MAX_GENERATED_ORDER {
                    bases.push(sylvester_power(n.trailing_zeros())?);
                }
            }
            Family::Paley1 => {
                let q = n as u64 - 1;
                if n <= MAX_GENERATED_ORDER && q % 4 == 3 && is_prime(q) {
                    bases.push(paley_i(q)?);
                }
            }
            Family::Supplied(ms) => {
                if let Some(bad) = ms.iter().find(|h| h.order() != n) {
                    return Err(Error::InvalidParameter(format!(
                        "supplied matrix has order {}, pool requires {n}",
                        bad.order()
                    )));
                }
                bases.extend(ms.iter().cloned());
            }
        }
    }
    if bases.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "order {n} is not constructible by the selected families"
        )));
    }
    Ok(bases)
}

/// Base matrices from each family in order, each followed by its seeded variants.
pub fn build_pool(spec: &PoolSpec) -> Result<Vec<HadamardMatrix>> {
    let bases = base_matrices(spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut pool = Vec::with_capacity(bases.len() * (spec.variants_per_base + 1));
    for base in bases {
        let variants = (0..spec.variants_per_base)
            .map(|_| apply_transform(&base, &EquivalenceTransform::random(base.order(), &mut rng)))
            .collect::<Result<Vec<_>>>()?;
        pool.push(base);
        pool.extend(variants);
    }
    Ok(pool)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Construction {
    Modified,
    #[serde(rename = "nosong")]
    NoSong,
    Product,
}

impl Construction {
    /// Number of (A, B) pool slots for pool orders `k` and `m`.
    fn slots(self, k: usize, m: usize) -> (usize, usize) {
        match self {
            Construction::Modified => (m, k),
            Construction::NoSong => (m, 1),
            Construction::Product => (1, 1),
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Construction::Modified => "modified",
            Construction::NoSong => "nosong",
            Construction::Product => "product",
        })
    }
}

impl FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "modified" => Ok(Construction::Modified),
            "nosong" => Ok(Construction::NoSong),
            "product" => Ok(Construction::Product),
            other => Err(Error::InvalidParameter(format!(
                "unknown construction {other:?}"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Every tuple, in lexicographic index order.
    Exhaustive,
    /// `count` uniformly drawn tuples.
    Sampled { count: u64 },
}

/// One choice of pool indices: `a[j]` indexes pool A for slot `j`, `b[u]` pool B.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub index: u64,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

/// Index-addressable sequence of assignments.
#[derive(Clone, Debug)]
pub struct AssignmentPlan {
    pool_a: usize,
    pool_b: usize,
    slots_a: usize,
    slots_b: usize,
    strategy: Strategy,
    seed: u64,
    len: u64,
}

impl AssignmentPlan {
    pub fn new(
        (pool_a, slots_a): (usize, usize),
        (pool_b, slots_b): (usize, usize),
        strategy: Strategy,
        seed: u64,
        exhaustive_cap: u64,
    ) -> Result<Self> {
        if pool_a == 0 || pool_b == 0 {
            return Err(Error::InvalidInput("pools must be non-empty".into()));
        }
        let len = match strategy {
            Strategy::Sampled { count } => count,
            Strategy::Exhaustive => {
                let total = checked_pow(pool_a as u64, slots_a).and_then(|x| {
                    checked_pow(pool_b as u64, slots_b).and_then(|y| x.checked_mul(y))
                });
                match total {
                    Some(t) if t <= exhaustive_cap => t,
                    _ => {
                        return Err(Error::ResourceLimit(format!(
                            "exhaustive enumeration of {pool_a}^{slots_a} * {pool_b}^{slots_b} \
                             assignments exceeds the cap of {exhaustive_cap}; use sampled mode"
                        )))
                    }
                }
            }
        };
        Ok(AssignmentPlan {
            pool_a,
            pool_b,
            slots_a,
            slots_b,
            strategy,
            seed,
            len,
        })
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, index: u64) -> Assignment {
        assert!(index < self.len, "assignment {index} out of range");
        let (a, b) = match self.strategy {
            Strategy::Exhaustive => {
                let mut rest = index;
                let mut b = vec![0; self.slots_b];
                for d in b.iter_mut().rev() {
                    *d = (rest % self.pool_b as u64) as usize;
                    rest /= self.pool_b as u64;
                }
                let mut a = vec![0; self.slots_a];
                for d in a.iter_mut().rev() {
                    *d = (rest % self.pool_a as u64) as usize;
                    rest /= self.pool_a as u64;
                }
                (a, b)
            }
            Strategy::Sampled { .. } => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                rng.set_stream(index);
                let a = (0..self.slots_a)
                    .map(|_| rng.gen_range(0..self.pool_a))
                    .collect();
                let b = (0..self.slots_b)
                    .map(|_| rng.gen_range(0..self.pool_b))
                    .collect();
                (a, b)
            }
        };
        Assignment { index, a, b }
    }

    pub fn iter(&self) -> impl Iterator<Item = Assignment> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }
}

fn checked_pow(base: u64, exp: usize) -> Option<u64> {
    (0..exp).try_fold(1u64, |acc, _| acc.checked_mul(base))
}

fn pool_order(pool: &[HadamardMatrix], name: &str) -> Result<usize> {
    let Some(first) = pool.first() else {
        return Err(Error::InvalidInput(format!("pool {name} is empty")));
    };
    if let Some(bad) = pool.iter().find(|h| h.order() != first.order()) {
        return Err(Error::InvalidInput(format!(
            "pool {name} mixes orders {} and {}",
            first.order(),
            bad.order()
        )));
    }
    Ok(first.order())
}

/// Inputs for the two-pool construction, drawn from the pools by `strategy`.
pub fn enumerate_assignments<'a>(
    pool_a: &'a [HadamardMatrix],
    pool_b: &'a [HadamardMatrix],
    strategy: Strategy,
    seed: u64,
    exhaustive_cap: u64,
) -> Result<impl Iterator<Item = ModifiedInputs> + 'a> {
    let k = pool_order(pool_a, "A")?;
    let m = pool_order(pool_b, "B")?;
    let plan = AssignmentPlan::new(
        (pool_a.len(), m),
        (pool_b.len(), k),
        strategy,
        seed,
        exhaustive_cap,
    )?;
    Ok((0..plan.len()).map(move |i| {
        let asg = plan.get(i);
        ModifiedInputs::new(
            asg.a.iter().map(|&x| pool_a[x].clone()).collect(),
            asg.b.iter().map(|&x| pool_b[x].clone()).collect(),
        )
        .expect("pool orders were validated")
    }))
}

/// Builds the matrix for one assignment.
pub fn build_assignment(
    construction: Construction,
    pool_a: &[HadamardMatrix],
    pool_b: &[HadamardMatrix],
    asg: &Assignment,
) -> Result<HadamardMatrix> {
    let pick = |pool: &[HadamardMatrix], idx: &[usize]| -> Vec<HadamardMatrix> {
        idx.iter().map(|&x| pool[x].clone()).collect()
    };
    match construction {
        Construction::Modified => Ok(modified(&ModifiedInputs::new(
            pick(pool_a, &asg.a),
            pick(pool_b, &asg.b),
        )?)),
        Construction::NoSong => no_song(&pool_b[asg.b[0]], &pick(pool_a, &asg.a)),
        Construction::Product => Ok(sylvester_product(&pool_b[asg.b[0]], &pool_a[asg.a[0]])),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExploreOptions {
    pub construction: Construction,
    pub strategy: Strategy,
    /// Drives sampling; echoed in the report.
    pub seed: u64,
    pub exhaustive_cap: u64,
    pub execution: Execution,
}

impl ExploreOptions {
    pub fn new(construction: Construction, strategy: Strategy, seed: u64) -> Self {
        ExploreOptions {
            construction,
            strategy,
            seed,
            exhaustive_cap: DEFAULT_EXHAUSTIVE_CAP,
            execution: Execution::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureCount {
    pub order: usize,
    pub rank: usize,
    pub dim_kernel: usize,
    pub min_distance: usize,
    pub multiplicity: u64,
}

impl SignatureCount {
    pub fn signature(&self) -> InvariantSignature {
        InvariantSignature {
            order: self.order,
            rank: self.rank,
            dim_kernel: self.dim_kernel,
            min_distance: self.min_distance,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplorationReport {
    pub target_order: usize,
    pub construction: Construction,
    pub assignments_tried: u64,
    pub seed: u64,
    /// Sorted ascending by `(rank, dim_kernel)`.
    pub signatures: Vec<SignatureCount>,
}

impl ExplorationReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.signatures {
            w.serialize(row).expect("in-memory csv write");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv flush"))
            .expect("csv output is utf-8")
    }
}

/// Builds every assigned matrix, checks it, and tallies invariant signatures.
pub fn explore(
    pool_a: &[HadamardMatrix],
    pool_b: &[HadamardMatrix],
    opts: &ExploreOptions,
) -> Result<ExplorationReport> {
    let k = pool_order(pool_a, "A")?;
    let m = pool_order(pool_b, "B")?;
    let (slots_a, slots_b) = opts.construction.slots(k, m);
    let plan = AssignmentPlan::new(
        (pool_a.len(), slots_a),
        (pool_b.len(), slots_b),
        opts.strategy,
        opts.seed,
        opts.exhaustive_cap,
    )?;

    let results = map_indices(opts.execution, plan.len(), |i| {
        let asg = plan.get(i);
        let h = build_assignment(opts.construction, pool_a, pool_b, &asg)?;
        if let Some(v) = find_violation(h.as_matrix()) {
            return Err(Error::InvalidInput(format!("output is not Hadamard: {v}")));
        }
        signature(&h)
    });

    let mut tally: BTreeMap<(usize, usize, usize, usize), u64> = BTreeMap::new();
    for (i, r) in results.into_iter().enumerate() {
        let sig = r.map_err(|e| Error::Assignment {
            index: i as u64,
            message: e.to_string(),
        })?;
        *tally
            .entry((sig.rank, sig.dim_kernel, sig.min_distance, sig.order))
            .or_default() += 1;
    }

    Ok(ExplorationReport {
        target_order: k * m,
        construction: opts.construction,
        assignments_tried: plan.len(),
        seed: opts.seed,
        signatures: tally
            .into_iter()
            .map(
                |((rank, dim_kernel, min_distance, order), multiplicity)| SignatureCount {
                    order,
                    rank,
                    dim_kernel,
                    min_distance,
                    multiplicity,
                },
            )
            .collect(),
    })
}
