//! Decision procedures for Nambu-Poisson, Nambu-Jacobi, decomposability and
//! involutivity.
//!
//! Every check returns a [`Verdict`]; a failing verdict carries a
//! [`Witness`] whose residual can be recomputed from the stored arguments.
//!
//! The function-quantified identities are decided by enumerating monomial
//! argument tuples. Both (LD) `[L_{f1..f(n-1)}, L] = 0` and the fundamental
//! identity are multilinear in their arguments and depend on each argument
//! only through its 2-jet, and monomials of degree at most 2 realize every
//! 2-jet at every point. Exhaustive enumeration at `max_degree = 2` is
//! therefore a complete decision procedure for polynomial tensors.

use std::fmt;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::combinations;
use crate::error::{ensure_dim, Error, Result};
use crate::identity::fundamental_identity_residual;
use crate::multivector::{nj_bracket_eval, Multivector};
use crate::poly::{integer, monomials_up_to, Polynomial};

/// How argument tuples are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    /// Uniformly sampled tuples; reproducible from the seed, not exhaustive.
    Randomized {
        samples: usize,
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    pub max_degree: u32,
    pub mode: Mode,
    /// Worker threads for tuple enumeration; 0 uses the global pool.
    pub workers: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            max_degree: 2,
            mode: Mode::Exhaustive,
            workers: 0,
        }
    }
}

impl CheckConfig {
    pub fn randomized(samples: usize, seed: u64) -> Self {
        CheckConfig {
            mode: Mode::Randomized { samples, seed },
            ..CheckConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_degree < 2 {
            return Err(Error::Config(format!(
                "max_degree must be at least 2 (got {})",
                self.max_degree
            )));
        }
        if let Mode::Randomized { samples: 0, .. } = self.mode {
            return Err(Error::Config("randomized mode needs samples > 0".into()));
        }
        Ok(())
    }

    pub fn is_exhaustive(&self) -> bool {
        self.mode == Mode::Exhaustive
    }
}

/// Which identity a witness violates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Identity {
    /// The fundamental identity; `fs`/`gs` are its two argument groups and
    /// the residual is LHS - RHS.
    Jacobi,
    /// `[L, L]` for a bivector.
    SelfSchouten,
    /// `[G, D]` of a Jacobi pair.
    PairFirst,
    /// `[D, D] + 2 G ^ D` of a Jacobi pair.
    PairSecond,
    /// `L_{x_J} ^ L` for the coordinate functions in `fs`.
    Plucker,
    /// `[X_i, X_j] ^ X_1 ^ ... ^ X_n` (1-based field positions).
    Involutive { i: usize, j: usize },
    /// LHS - RHS of the hamiltonian bracket identity.
    Hamiltonian,
    /// A contraction `L_f` whose verdict disagrees with that of `L`; `fs = [f]`.
    Contraction,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Identity::Jacobi => write!(f, "fundamental identity"),
            Identity::SelfSchouten => write!(f, "[L,L]"),
            Identity::PairFirst => write!(f, "[G,D]"),
            Identity::PairSecond => write!(f, "[D,D] + 2 G^D"),
            Identity::Plucker => write!(f, "L_(fs) ^ L"),
            Identity::Involutive { i, j } => write!(f, "[X{i},X{j}] ^ X1^...^Xn"),
            Identity::Hamiltonian => write!(f, "hamiltonian bracket identity"),
            Identity::Contraction => write!(f, "contraction verdict"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Residual {
    Scalar(Polynomial),
    Tensor(Multivector),
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        match self {
            Residual::Scalar(p) => p.is_zero(),
            Residual::Tensor(m) => m.is_zero(),
        }
    }
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residual::Scalar(p) => write!(f, "{p}"),
            Residual::Tensor(m) => write!(f, "{m}"),
        }
    }
}

/// The arguments that violate an identity, with the nonzero residual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub identity: Identity,
    pub fs: Vec<Polynomial>,
    pub gs: Vec<Polynomial>,
    pub residual: Residual,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub passed: bool,
    pub witness: Option<Witness>,
    /// Number of argument tuples (or identities) evaluated.
    pub cases: usize,
    /// False when the verdict rests on sampled tuples.
    pub exhaustive: bool,
}

impl Verdict {
    fn pass(cases: usize, exhaustive: bool) -> Self {
        Verdict {
            passed: true,
            witness: None,
            cases,
            exhaustive,
        }
    }

    fn fail(witness: Witness, cases: usize, exhaustive: bool) -> Self {
        debug_assert!(!witness.residual.is_zero());
        Verdict {
            passed: false,
            witness: Some(witness),
            cases,
            exhaustive,
        }
    }

    fn from_residual(
        identity: Identity,
        fs: &[Polynomial],
        gs: &[Polynomial],
        residual: Residual,
    ) -> Self {
        if residual.is_zero() {
            Verdict::pass(1, true)
        } else {
            Verdict::fail(
                Witness {
                    identity,
                    fs: fs.to_vec(),
                    gs: gs.to_vec(),
                    residual,
                },
                1,
                true,
            )
        }
    }
}

fn ensure_degree(m: &Multivector, expected: usize) -> Result<()> {
    if m.degree() != expected {
        return Err(Error::DegreeMismatch {
            expected,
            found: m.degree(),
        });
    }
    Ok(())
}

fn coordinates(dim: usize, indices: &[usize]) -> Vec<Polynomial> {
    indices
        .iter()
        .map(|&i| Polynomial::var(dim, i).expect("index within dimension"))
        .collect()
}

fn in_pool<R: Send>(workers: usize, job: impl FnOnce() -> R + Send) -> R {
    if workers == 0 {
        return job();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(job),
        Err(_) => job(),
    }
}

/// Argument tuples as index lists into a monomial table, in canonical order.
///
/// Each entry is a list of groups; every group is strictly increasing.
fn tuple_plan(table_len: usize, group_sizes: &[usize], cfg: &CheckConfig) -> Vec<Vec<Vec<usize>>> {
    match cfg.mode {
        Mode::Exhaustive => {
            let mut plan: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
            for &k in group_sizes {
                let choices = combinations(table_len, k);
                plan = plan
                    .into_iter()
                    .flat_map(|prefix| {
                        choices.iter().map(move |c| {
                            let mut next = prefix.clone();
                            next.push(c.clone());
                            next
                        })
                    })
                    .collect();
            }
            plan
        }
        Mode::Randomized { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples)
                .filter_map(|_| {
                    group_sizes
                        .iter()
                        .map(|&k| {
                            if k > table_len {
                                return None;
                            }
                            let mut picked = sample(&mut rng, table_len, k).into_vec();
                            picked.sort_unstable();
                            Some(picked)
                        })
                        .collect()
                })
                .collect()
        }
    }
}

/// Runs `eval` over the plan in parallel; the first failure in plan order
/// wins regardless of scheduling.
fn search_plan<F>(plan: &[Vec<Vec<usize>>], cfg: &CheckConfig, eval: F) -> Result<Verdict>
where
    F: Fn(&[Vec<usize>]) -> Result<Option<Witness>> + Sync,
{
    let found = in_pool(cfg.workers, || {
        plan.par_iter()
            .map(|groups| eval(groups))
            .find_map_first(|r| match r {
                Ok(None) => None,
                other => Some(other),
            })
    });
    match found {
        None => Ok(Verdict::pass(plan.len(), cfg.is_exhaustive())),
        Some(Ok(Some(w))) => Ok(Verdict::fail(w, plan.len(), cfg.is_exhaustive())),
        Some(Err(e)) => Err(e),
        Some(Ok(None)) => unreachable!(),
    }
}

/// Residual of the fundamental identity for the bracket `D + s(G)` (just
/// `D` when `gamma` is `None`).
pub fn jacobi_residual(
    delta: &Multivector,
    gamma: Option<&Multivector>,
    fs: &[Polynomial],
    gs: &[Polynomial],
) -> Result<Polynomial> {
    let n = delta.degree();
    if gs.len() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            found: gs.len(),
        });
    }
    for f in fs.iter().chain(gs) {
        ensure_dim(delta.dim(), f.dim())?;
    }
    fundamental_identity_residual(|args| nj_bracket_eval(delta, gamma, args), fs, gs)
}

/// Poisson test for a bivector: `[L, L] = 0` identically.
pub fn check_poisson(l: &Multivector) -> Result<Verdict> {
    ensure_degree(l, 2)?;
    let residual = l.schouten(l)?;
    Ok(Verdict::from_residual(
        Identity::SelfSchouten,
        &[],
        &[],
        Residual::Tensor(residual),
    ))
}

/// Nambu-Poisson test: `[L_{f1..f(n-1)}, L] = 0` for every strictly
/// increasing tuple of non-constant monomials of degree `<= max_degree`.
///
/// A failing tuple is reported as a fundamental-identity witness: `gs` are
/// the coordinate functions selecting the first nonzero component of the
/// (LD) residual, which makes the witness replayable by [`check_fi_direct`].
pub fn check_nambu_poisson(l: &Multivector, cfg: &CheckConfig) -> Result<Verdict> {
    cfg.validate()?;
    let n = l.degree();
    if n < 2 {
        return Err(Error::DegreeMismatch {
            expected: 2,
            found: n,
        });
    }
    if n == 2 {
        return check_poisson(l);
    }
    let dim = l.dim();
    let table: Vec<Polynomial> = monomials_up_to(dim, 1, cfg.max_degree)
        .into_iter()
        .map(|m| Polynomial::monomial(dim, m).expect("monomial within dimension"))
        .collect();
    let plan = tuple_plan(table.len(), &[n - 1], cfg);
    search_plan(&plan, cfg, |groups| {
        let fs: Vec<Polynomial> = groups[0].iter().map(|&i| table[i].clone()).collect();
        let ld = l.hamiltonian(&fs)?.schouten(l)?;
        let Some((set, _)) = ld.terms().next() else {
            return Ok(None);
        };
        let gs = coordinates(dim, set.indices());
        let residual = jacobi_residual(l, None, &fs, &gs)?;
        Ok(Some(Witness {
            identity: Identity::Jacobi,
            fs,
            gs,
            residual: Residual::Scalar(residual),
        }))
    })
}

/// Evaluates the fundamental identity for one concrete argument choice.
pub fn check_fi_direct(
    delta: &Multivector,
    gamma: Option<&Multivector>,
    fs: &[Polynomial],
    gs: &[Polynomial],
) -> Result<Verdict> {
    let residual = jacobi_residual(delta, gamma, fs, gs)?;
    Ok(Verdict::from_residual(
        Identity::Jacobi,
        fs,
        gs,
        Residual::Scalar(residual),
    ))
}

/// Conditions `[G, D] = 0` and `[D, D] = -2 G ^ D` for a binary Jacobi pair.
pub fn check_jacobi_pair(delta: &Multivector, gamma: &Multivector) -> Result<Verdict> {
    ensure_degree(delta, 2)?;
    ensure_degree(gamma, 1)?;
    ensure_dim(delta.dim(), gamma.dim())?;
    let first = gamma.schouten(delta)?;
    if !first.is_zero() {
        return Ok(Verdict::from_residual(
            Identity::PairFirst,
            &[],
            &[],
            Residual::Tensor(first),
        ));
    }
    let second = delta
        .schouten(delta)?
        .checked_add(&gamma.wedge(delta)?.scale_rational(&integer(2)))?;
    let mut v = Verdict::from_residual(Identity::PairSecond, &[], &[], Residual::Tensor(second));
    v.cases = 2;
    Ok(v)
}

/// Nambu-Jacobi test for the bracket `D + s(G)`.
///
/// For `n = 2` this is [`check_jacobi_pair`]. For `n >= 3` the fundamental
/// identity is evaluated on every pair of strictly increasing monomial
/// tuples of degree `0..=max_degree`; constants are included because `s(G)`
/// is of order zero in each argument.
pub fn check_nambu_jacobi(
    delta: &Multivector,
    gamma: &Multivector,
    cfg: &CheckConfig,
) -> Result<Verdict> {
    cfg.validate()?;
    ensure_dim(delta.dim(), gamma.dim())?;
    let n = delta.degree();
    if n < 2 {
        return Err(Error::DegreeMismatch {
            expected: 2,
            found: n,
        });
    }
    ensure_degree(gamma, n - 1)?;
    if n == 2 {
        return check_jacobi_pair(delta, gamma);
    }
    let dim = delta.dim();
    let table: Vec<Polynomial> = monomials_up_to(dim, 0, cfg.max_degree)
        .into_iter()
        .map(|m| Polynomial::monomial(dim, m).expect("monomial within dimension"))
        .collect();
    let plan = tuple_plan(table.len(), &[n - 1, n], cfg);
    search_plan(&plan, cfg, |groups| {
        let fs: Vec<Polynomial> = groups[0].iter().map(|&i| table[i].clone()).collect();
        let gs: Vec<Polynomial> = groups[1].iter().map(|&i| table[i].clone()).collect();
        let residual = jacobi_residual(delta, Some(gamma), &fs, &gs)?;
        Ok((!residual.is_zero()).then_some(Witness {
            identity: Identity::Jacobi,
            fs,
            gs,
            residual: Residual::Scalar(residual),
        }))
    })
}

/// Plücker-type test: `L_{x_J} ^ L = 0` for every (n-1)-subset `J` of
/// coordinates. Passing means decomposable at every regular point.
pub fn check_decomposable(l: &Multivector) -> Result<Verdict> {
    let n = l.degree();
    if n == 0 {
        return Err(Error::DegreeMismatch {
            expected: 1,
            found: 0,
        });
    }
    let dim = l.dim();
    let subsets = crate::multivector::IndexSet::all(dim, n - 1);
    let cases = subsets.len();
    for set in subsets {
        let fs = coordinates(dim, set.indices());
        let relation = l.contract_all(&fs)?.wedge(l)?;
        if !relation.is_zero() {
            return Ok(Verdict::fail(
                Witness {
                    identity: Identity::Plucker,
                    fs,
                    gs: Vec::new(),
                    residual: Residual::Tensor(relation),
                },
                cases,
                true,
            ));
        }
    }
    Ok(Verdict::pass(cases, true))
}

/// `[X_i, X_j]` lies in the span of the fields at regular points:
/// `[X_i, X_j] ^ X_1 ^ ... ^ X_n = 0` identically for all `i < j`.
pub fn check_involutive(fields: &[Multivector]) -> Result<Verdict> {
    let Some(first) = fields.first() else {
        return Err(Error::ArityMismatch {
            expected: 1,
            found: 0,
        });
    };
    let dim = first.dim();
    for x in fields {
        ensure_degree(x, 1)?;
        ensure_dim(dim, x.dim())?;
    }
    let mut top = Multivector::scalar(Polynomial::one(dim));
    for x in fields {
        top = top.wedge(x)?;
    }
    let mut cases = 0;
    for i in 0..fields.len() {
        for j in i + 1..fields.len() {
            cases += 1;
            let relation = fields[i].schouten(&fields[j])?.wedge(&top)?;
            if !relation.is_zero() {
                return Ok(Verdict::fail(
                    Witness {
                        identity: Identity::Involutive { i: i + 1, j: j + 1 },
                        fs: Vec::new(),
                        gs: Vec::new(),
                        residual: Residual::Tensor(relation),
                    },
                    cases,
                    true,
                ));
            }
        }
    }
    Ok(Verdict::pass(cases, true))
}

/// Both sides of `[L_F, L_G] = sum_i L_{g1,..,{F,gi},..,g(n-1)}`.
pub fn ham_identity_sides(
    l: &Multivector,
    fs: &[Polynomial],
    gs: &[Polynomial],
) -> Result<(Multivector, Multivector)> {
    let n = l.degree();
    if gs.len() + 1 != n {
        return Err(Error::ArityMismatch {
            expected: n.saturating_sub(1),
            found: gs.len(),
        });
    }
    let lhs = l.hamiltonian(fs)?.schouten(&l.hamiltonian(gs)?)?;
    let mut rhs = Multivector::zero(l.dim(), 1);
    for i in 0..gs.len() {
        let mut args = fs.to_vec();
        args.push(gs[i].clone());
        let mut replaced = gs.to_vec();
        replaced[i] = l.bracket_eval(&args)?;
        rhs = rhs.checked_add(&l.hamiltonian(&replaced)?)?;
    }
    Ok((lhs, rhs))
}

pub fn check_ham_identity(
    l: &Multivector,
    fs: &[Polynomial],
    gs: &[Polynomial],
) -> Result<Verdict> {
    let (lhs, rhs) = ham_identity_sides(l, fs, gs)?;
    Ok(Verdict::from_residual(
        Identity::Hamiltonian,
        fs,
        gs,
        Residual::Tensor(lhs.checked_sub(&rhs)?),
    ))
}

/// The pair `(D_f + f G, -G_f)` describing the contraction `{f, ...}` of
/// the bracket `D + s(G)`.
pub fn contraction_pair(
    delta: &Multivector,
    gamma: &Multivector,
    f: &Polynomial,
) -> Result<(Multivector, Multivector)> {
    let n = delta.degree();
    if n < 3 {
        return Err(Error::DegreeMismatch {
            expected: 3,
            found: n,
        });
    }
    ensure_degree(gamma, n - 1)?;
    ensure_dim(delta.dim(), gamma.dim())?;
    let new_delta = delta.contract(f)?.checked_add(&gamma.scale(f)?)?;
    let new_gamma = gamma.contract(f)?.neg();
    Ok((new_delta, new_gamma))
}

/// Residuals of the three identities a ternary Nambu-Jacobi pair
/// satisfies for every `f`:
/// `[D_f, G] - 2 G_f ^ G`, `[D_f, D_f]` and `G_f ^ D_f`.
pub fn ternary_pair_residuals(
    delta: &Multivector,
    gamma: &Multivector,
    f: &Polynomial,
) -> Result<[Multivector; 3]> {
    ensure_degree(delta, 3)?;
    ensure_degree(gamma, 2)?;
    ensure_dim(delta.dim(), gamma.dim())?;
    let delta_f = delta.contract(f)?;
    let gamma_f = gamma.contract(f)?;
    let two = integer(2);
    let first = delta_f
        .schouten(gamma)?
        .checked_sub(&gamma_f.wedge(gamma)?.scale_rational(&two))?;
    Ok([first, delta_f.schouten(&delta_f)?, gamma_f.wedge(&delta_f)?])
}

/// Outcome of [`theorem1_crosscheck`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheck {
    /// Passes iff the tensor's own verdict equals the conjunction of the
    /// contraction verdicts.
    pub verdict: Verdict,
    pub tensor: Verdict,
    pub contractions_checked: usize,
    /// First contraction (in enumeration order) that is not Nambu-Poisson.
    pub failing_contraction: Option<(Polynomial, Verdict)>,
}

/// Contraction functions used by [`theorem1_crosscheck`]: the constant 1,
/// every monomial of degree `1..=max_degree`, and every sum of two distinct
/// such monomials.
///
/// The (LD) residual of `L_f` is quadratic in `f`, so by polarization this
/// family detects a failing contraction whenever any polynomial `f` of
/// degree `<= max_degree` has one.
pub fn contraction_family(dim: usize, max_degree: u32) -> Vec<Polynomial> {
    let monos: Vec<Polynomial> = monomials_up_to(dim, 1, max_degree)
        .into_iter()
        .map(|m| Polynomial::monomial(dim, m).expect("monomial within dimension"))
        .collect();
    let mut family = vec![Polynomial::one(dim)];
    family.extend(monos.iter().cloned());
    for pair in combinations(monos.len(), 2) {
        family.push(&monos[pair[0]] + &monos[pair[1]]);
    }
    family
}

/// Consistency test between the verdict on `L` and the verdicts on its
/// contractions `L_f` over [`contraction_family`].
pub fn theorem1_crosscheck(l: &Multivector, cfg: &CheckConfig) -> Result<CrossCheck> {
    cfg.validate()?;
    let n = l.degree();
    if n < 3 {
        return Err(Error::DegreeMismatch {
            expected: 3,
            found: n,
        });
    }
    let tensor = check_nambu_poisson(l, cfg)?;
    let family = contraction_family(l.dim(), cfg.max_degree);
    let inner = CheckConfig {
        workers: 0,
        ..cfg.clone()
    };
    let outcomes: Vec<Result<Option<(Polynomial, Verdict)>>> = in_pool(cfg.workers, || {
        family
            .par_iter()
            .map(|f| {
                let v = check_nambu_poisson(&l.contract(f)?, &inner)?;
                Ok((!v.passed).then(|| (f.clone(), v)))
            })
            .collect()
    });
    let mut failing = None;
    for outcome in outcomes {
        if let Some(hit) = outcome? {
            failing = Some(hit);
            break;
        }
    }
    let consistent = tensor.passed == failing.is_none();
    let verdict = if consistent {
        Verdict::pass(family.len(), cfg.is_exhaustive())
    } else {
        // the tensor fails while every contraction passes, or the reverse
        let (fs, residual) = match (&failing, &tensor.witness) {
            (Some((f, v)), _) => (
                vec![f.clone()],
                v.witness.as_ref().map(|w| w.residual.clone()),
            ),
            (None, Some(w)) => (Vec::new(), Some(w.residual.clone())),
            (None, None) => (Vec::new(), None),
        };
        let residual = residual.expect("a failing verdict has a witness");
        Verdict::fail(
            Witness {
                identity: Identity::Contraction,
                fs,
                gs: Vec::new(),
                residual,
            },
            family.len(),
            cfg.is_exhaustive(),
        )
    };
    Ok(CrossCheck {
        verdict,
        tensor,
        contractions_checked: family.len(),
        failing_contraction: failing,
    })
}
