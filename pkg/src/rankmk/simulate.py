"""Random error generation and seeded Monte-Carlo measurement.

Reproducibility contract (language-independent):

* The generator is SplitMix64 (Steele, Lea, Flood; as in Java's
  SplittableRandom).  State s is a 64-bit integer; each draw performs
  s = (s + 0x9E3779B97F4A7C15) mod 2^64 and outputs mix64(s), where
  mix64(z): z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
  z *= 0x94D049BB133111EB; z ^= z >> 31 (all mod 2^64).
* `below(n)` draws 64-bit words, rejecting w >= 2^64 - (2^64 mod n),
  and returns w mod n.
* Trial i of a run with master seed s uses a fresh SplitMix64 seeded with
  mix64((s + i * 0x9E3779B97F4A7C15) mod 2^64), so trials are independent
  of execution order and may run concurrently.
* Matrices are drawn entry by entry in row-major order; rank-conditioned
  sampling redraws the entire matrix until the condition holds; errors draw
  the support basis B first, then the coefficient matrix A.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from .codes import GabidulinSpec, LinearCodeSpec, resolve_code
from .decoder import FailureReason, decode
from .errors import ParameterError
from .fields import ExtField
from .matrix import MatQ, MatQm, ext_expand, orth_complement_q, rank_q, rank_qm, rref

_GAMMA = 0x9E3779B97F4A7C15
_MASK64 = (1 << 64) - 1

# Two-sided 99% normal quantile, Phi^-1(0.995).
Z99 = 2.5758293035489004

# Give up on rank-conditioned rejection sampling after this many redraws.
MAX_REJECTS = 10_000


def mix64(z: int) -> int:
    z &= _MASK64
    z ^= z >> 30
    z = (z * 0xBF58476D1CE4E5B9) & _MASK64
    z ^= z >> 27
    z = (z * 0x94D049BB133111EB) & _MASK64
    z ^= z >> 31
    return z


class SplitMix64:
    """Counter-based 64-bit generator; see the module docstring for the contract."""

    def __init__(self, seed: int):
        self._s = seed & _MASK64

    def next_u64(self) -> int:
        self._s = (self._s + _GAMMA) & _MASK64
        return mix64(self._s)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection from 64-bit words."""
        if n <= 0:
            raise ParameterError("below() needs a positive bound")
        limit = _MASK64 + 1 - ((_MASK64 + 1) % n)
        while True:
            w = self.next_u64()
            if w < limit:
                return w % n


def trial_rng(master_seed: int, index: int) -> SplitMix64:
    """The per-trial generator prescribed by the reproducibility contract."""
    return SplitMix64(mix64((master_seed + index * _GAMMA) & _MASK64))


# -- sampling -----------------------------------------------------------------


def rand_matrix(rng: SplitMix64, ctx: ExtField, rows: int, cols: int, subfield: bool = False):
    bound = ctx.q if subfield else ctx.order
    cls = MatQ if subfield else MatQm
    return cls(ctx, [[rng.below(bound) for _ in range(cols)] for _ in range(rows)], cols)


def sample_full_rank(
    rng: SplitMix64,
    ctx: ExtField,
    rows: int,
    cols: int,
    rank: int,
    subfield: bool = False,
    rank_over: str = "q",
):
    """Uniform matrix of the requested rank, by rejection from uniform.

    `subfield` picks the entry domain (F_q vs F_{q^m}); `rank_over` picks
    which rank is conditioned on ("q" or "qm").  Rejection from the uniform
    distribution preserves uniformity on the conditioned set.
    """
    if rank_over not in ("q", "qm"):
        raise ParameterError(f"rank_over must be 'q' or 'qm', got {rank_over!r}")
    max_rank = min(rows * (1 if subfield else ctx.m) if rank_over == "q" else rows, cols)
    if not 0 <= rank <= max_rank:
        raise ParameterError(f"target rank {rank} infeasible for this shape")
    if rank == 0:  # singleton set; consumes no draws
        return (MatQ if subfield else MatQm).zeros(ctx, rows, cols)
    measure = rank_q if rank_over == "q" else rank_qm
    for _ in range(MAX_REJECTS):
        mat = rand_matrix(rng, ctx, rows, cols, subfield=subfield)
        if measure(mat) == rank:
            return mat
    raise ParameterError(f"no rank-{rank} sample found after {MAX_REJECTS} draws")


def sample_error(
    rng: SplitMix64, ctx: ExtField, ell: int, n: int, t: int, mode: str = "uniform"
) -> tuple[MatQm, MatQm, MatQ]:
    """Error E = A @ B of rank weight exactly t; returns (E, A, B).

    In "uniform" mode, (A, B) are uniform full-F_q-rank factors, which makes
    E uniform over all ell x n matrices of rank weight t (every such E has
    exactly |GL_t(F_q)| factor pairs).  In "fullrank" mode, A is redrawn
    until its extension-field rank is t, so E satisfies the full-rank
    condition by construction.
    """
    if mode not in ("uniform", "fullrank"):
        raise ParameterError(f"mode must be 'uniform' or 'fullrank', got {mode!r}")
    if t > n or (mode == "uniform" and t > ell * ctx.m) or (mode == "fullrank" and t > ell):
        raise ParameterError(f"rank weight t={t} infeasible for ell={ell}, n={n}")
    if t == 0:
        return MatQm.zeros(ctx, ell, n), MatQm(ctx, [[] for _ in range(ell)], 0), MatQ(ctx, [], n)
    basis = sample_full_rank(rng, ctx, t, n, t, subfield=True, rank_over="q")
    coeff = sample_full_rank(rng, ctx, ell, t, t, rank_over="q" if mode == "uniform" else "qm")
    return coeff @ MatQm(ctx, basis.data, basis.cols), coeff, basis


# -- bounds and counting -------------------------------------------------------


def success_lower_bound(t: int, ell: int, m: int, q: int) -> tuple[Fraction, Fraction]:
    """(product, simple) lower bounds on the full-rank-condition probability.

    product = prod_{i=0}^{t-1} (1 - q^(m(i-ell))), simple = 1 - t q^(m(t-1-ell)).
    """
    if t < 0 or ell < t:
        raise ParameterError(f"bounds require 0 <= t <= ell, got t={t}, ell={ell}")
    product = Fraction(1)
    for i in range(t):
        product *= 1 - Fraction(q) ** (m * (i - ell))
    simple = 1 - t * Fraction(q) ** (m * (t - 1 - ell))
    return product, simple


def count_matrices_rank(n: int, m: int, t: int, q: int) -> int:
    """Number of n x m matrices of rank t over F_q."""
    if not 0 <= t <= min(n, m):
        raise ParameterError(f"rank t={t} out of range for {n} x {m}")
    out = Fraction(1)
    for i in range(t):
        out *= Fraction((q**m - q**i) * (q**n - q**i), q**t - q**i)
    assert out.denominator == 1
    return out.numerator


def wilson_interval(successes: int, trials: int, z: float = Z99) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials <= 0:
        raise ParameterError("wilson_interval needs at least one trial")
    p = successes / trials
    denom = 1 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    half = z * ((p * (1 - p) / trials + z * z / (4 * trials * trials)) ** 0.5) / denom
    return max(0.0, center - half), min(1.0, center + half)


# -- Monte-Carlo harness --------------------------------------------------------


@dataclass(frozen=True)
class SimConfig:
    code: GabidulinSpec | LinearCodeSpec
    ell: int
    t: int
    trials: int
    seed: int
    mode: str = "uniform"

    def __post_init__(self):
        if self.mode not in ("uniform", "fullrank"):
            raise ParameterError(f"mode must be 'uniform' or 'fullrank', got {self.mode!r}")
        if self.trials < 1:
            raise ParameterError("trials must be >= 1")
        n = self.code.n
        if self.t > n:
            raise ParameterError(f"t={self.t} exceeds code length {n}")
        if self.mode == "fullrank" and self.t > self.ell:
            raise ParameterError("fullrank mode requires t <= ell")


@dataclass(frozen=True)
class SimReport:
    config: SimConfig
    successes: int
    support_failures: int
    erasure_failures: int
    verification_failures: int
    miscorrections: int
    bound_product: Fraction
    bound_simple: Fraction
    wilson_low: float
    wilson_high: float
    wall_time_s: float
    duality_violations: int | None = None

    @property
    def empirical_rate(self) -> float:
        return self.successes / self.config.trials

    def tallies(self) -> dict[str, int]:
        return {
            "successes": self.successes,
            "support_failures": self.support_failures,
            "erasure_failures": self.erasure_failures,
            "verification_failures": self.verification_failures,
            "miscorrections": self.miscorrections,
        }

    def to_csv(self) -> str:
        cfg = self.config
        ctx = cfg.code.ctx
        rows = [
            ("param", "value"),
            ("q", ctx.q),
            ("m", ctx.m),
            ("n", cfg.code.n),
            ("k", cfg.code.k),
            ("ell", cfg.ell),
            ("t", cfg.t),
            ("trials", cfg.trials),
            ("seed", cfg.seed),
            ("mode", cfg.mode),
        ]
        rows += list(self.tallies().items())
        rows += [
            ("empirical_rate", repr(self.empirical_rate)),
            ("bound_product", repr(float(self.bound_product))),
            ("bound_simple", repr(float(self.bound_simple))),
            ("wilson_low", repr(self.wilson_low)),
            ("wilson_high", repr(self.wilson_high)),
            ("wall_time_s", repr(self.wall_time_s)),
        ]
        return "\n".join(f"{k},{v}" for k, v in rows) + "\n"

    def summary_line(self) -> str:
        return (
            f"rate,{self.empirical_rate!r} bound,{float(self.bound_product)!r} "
            f"n,{self.config.trials} seed,{self.config.seed}"
        )


_SUPPORT_REASONS = (FailureReason.TOO_MANY_ERRORS, FailureReason.SUPPORT_DIMENSION_MISMATCH)
_ERASURE_REASONS = (FailureReason.RANK_DEFICIENT, FailureReason.INCONSISTENT)


def run_trials(cfg: SimConfig, check_support_duality: bool = False) -> SimReport:
    """Sample, encode, corrupt, decode and tally `cfg.trials` independent trials.

    Identical configs give identical tallies.  With check_support_duality,
    every successful decode also verifies that the dual space of the
    expanded trailing parity-check rows equals the recovered support basis.
    """
    resolved = resolve_code(cfg.code)
    ctx, h, gen = resolved.ctx, resolved.h, resolved.gen
    n, k, d = resolved.n, resolved.k, resolved.d
    start = time.perf_counter()
    successes = support_f = erasure_f = verify_f = miscorrections = 0
    duality_violations = 0 if check_support_duality else None
    for i in range(cfg.trials):
        rng = trial_rng(cfg.seed, i)
        msg = rand_matrix(rng, ctx, cfg.ell, k)
        code_word = msg @ gen
        err, _, _ = sample_error(rng, ctx, cfg.ell, n, cfg.t, cfg.mode)
        outcome = decode(h, code_word.add(err), d)
        if outcome.success:
            if outcome.c_hat == code_word:
                successes += 1
            else:
                miscorrections += 1
            if check_support_duality:
                dual = orth_complement_q(ext_expand(outcome.h_sub))
                if rref(dual)[0] != outcome.b_hat:
                    duality_violations += 1
        elif outcome.reason in _SUPPORT_REASONS:
            support_f += 1
        elif outcome.reason in _ERASURE_REASONS:
            erasure_f += 1
        else:
            verify_f += 1
    product, simple = success_lower_bound(cfg.t, cfg.ell, ctx.m, ctx.q)
    low, high = wilson_interval(successes, cfg.trials)
    return SimReport(
        config=cfg,
        successes=successes,
        support_failures=support_f,
        erasure_failures=erasure_f,
        verification_failures=verify_f,
        miscorrections=miscorrections,
        bound_product=product,
        bound_simple=simple,
        wilson_low=low,
        wilson_high=high,
        wall_time_s=time.perf_counter() - start,
        duality_violations=duality_violations,
    )


# -- success condition of the Loidreau-Overbeck decoder ---------------------------


def lo_condition_check(g, k: int, err: MatQm) -> bool:
    """Whether the stacked locator/error Frobenius-power matrix has rank n - 1.

    Stacks g, g^[1], ..., g^[n-t-2] over E, E^[1], ..., E^[n-k-t-1] (entrywise
    q^i powers) and tests extension-field rank n - 1, the exact success
    condition of the Loidreau-Overbeck interleaved decoder; t is the rank
    weight of `err`.
    """
    ctx = err.ctx
    g = [int(a) for a in g]
    n = len(g)
    if err.cols != n:
        raise ParameterError("error width does not match locator length")
    t = rank_q(err)
    if n - t - 2 < 0 or n - k - t - 1 < 0:
        raise ParameterError(f"t={t} too large for the stacked-rank condition (n={n}, k={k})")
    rows = [[ctx.frobenius(a, i) for a in g] for i in range(n - t - 1)]
    for i in range(n - k - t):
        rows.extend([[ctx.frobenius(a, i) for a in row] for row in err.data])
    return rank_qm(MatQm(ctx, rows, n)) == n - 1
