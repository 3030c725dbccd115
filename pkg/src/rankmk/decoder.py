"""Syndrome decoding of high-order interleaved codes.

`decode` implements the rank-metric decoder: echelonize the syndrome,
carry the row transform onto the parity-check matrix, read the error
support off the kernel of the coordinate-expanded trailing rows, then
solve the erasure system for the coefficient matrix.  It is guaranteed to
return the transmitted codeword whenever t <= d - 2 errors occurred, the
interleaving order is at least t, and the error matrix has full rank over
the extension field.  `mk_hamming_decode` is the classic Metzner and
Kapturowski (1990) decoder for column-burst errors, the Hamming-metric
sibling of the same idea.

The decoder only ever reads the parity-check matrix, never a generator.
All functions are pure; inputs are never mutated.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import InconsistentSystemError, ParameterError, RankDeficientError
from .matrix import (
    MatQ,
    MatQm,
    ext_expand,
    rank_q,
    rank_qm,
    rref_with_transform,
    right_kernel_q,
    solve_right,
)


class FailureReason(enum.Enum):
    TOO_MANY_ERRORS = "too_many_errors"
    SUPPORT_DIMENSION_MISMATCH = "support_dimension_mismatch"
    RANK_DEFICIENT = "rank_deficient"
    INCONSISTENT = "inconsistent"
    VERIFICATION_FAILED = "verification_failed"


class DecodeFailure(Exception):
    """Raised by the pipeline stages; `decode` converts it to an outcome."""

    def __init__(self, reason: FailureReason, detail: str = ""):
        super().__init__(detail or reason.value)
        self.reason = reason


@dataclass(frozen=True)
class SupportRecovery:
    """Recovered error support: trailing parity-check rows and kernel basis."""

    t_hat: int
    h_sub: MatQm
    basis: MatQ  # canonical (RREF) basis of the recovered rank support


@dataclass(frozen=True)
class DecodeOutcome:
    success: bool
    reason: FailureReason | None
    t_hat: int
    c_hat: MatQm | None = None
    a_hat: MatQm | None = None
    b_hat: MatQ | None = None
    h_sub: MatQm | None = None
    beyond_guarantee: bool = False

    @classmethod
    def failed(cls, reason: FailureReason, t_hat: int, beyond: bool = False) -> "DecodeOutcome":
        return cls(success=False, reason=reason, t_hat=t_hat, beyond_guarantee=beyond)


def syndrome(h: MatQm, received: MatQm) -> MatQm:
    """S = H @ R^T; equals H @ E^T whenever R is a codeword plus E."""
    return h @ received.transpose()


def compute_hsub(h: MatQm, synd: MatQm) -> tuple[int, MatQm]:
    """Echelonize the syndrome and return (t_hat, trailing rows of P @ H).

    t_hat is the extension-field rank of the syndrome; the returned rows
    are the ones aligned with the zero rows of the echelonized syndrome.
    """
    trans, reduced = rref_with_transform(synd)
    t_hat = sum(1 for row in reduced.data if any(row))
    if t_hat >= h.rows:
        raise DecodeFailure(FailureReason.TOO_MANY_ERRORS, f"syndrome rank {t_hat} leaves no zero rows")
    ph = trans @ h
    return t_hat, ph.submatrix(t_hat, h.rows, 0, h.cols)


def recover_support(h: MatQm, synd: MatQm) -> SupportRecovery:
    """Rank support of the error as the F_q-kernel of the expanded trailing rows."""
    t_hat, h_sub = compute_hsub(h, synd)
    basis = right_kernel_q(ext_expand(h_sub))
    if basis.rows != t_hat:
        raise DecodeFailure(
            FailureReason.SUPPORT_DIMENSION_MISMATCH,
            f"support dimension {basis.rows} != syndrome rank {t_hat}",
        )
    return SupportRecovery(t_hat=t_hat, h_sub=h_sub, basis=basis)


def erasure_decode(h: MatQm, synd: MatQm, basis: MatQ) -> MatQm:
    """Coefficient matrix A solving (H @ B^T) @ A^T = S, given a support basis B."""
    coeff = h @ MatQm(basis.ctx, basis.data, basis.cols).transpose()
    try:
        return solve_right(coeff, synd)
    except RankDeficientError as exc:
        raise DecodeFailure(FailureReason.RANK_DEFICIENT, str(exc)) from exc
    except InconsistentSystemError as exc:
        raise DecodeFailure(FailureReason.INCONSISTENT, str(exc)) from exc


def decode(h: MatQm, received: MatQm, d: int | None = None) -> DecodeOutcome:
    """Full decoding pipeline; never returns success with a non-codeword.

    The minimum rank distance `d`, when known, only sets the
    beyond_guarantee flag (t_hat > d - 2); it is not used in computation.
    """
    if h.cols != received.cols:
        raise ParameterError(
            f"parity-check has {h.cols} columns but received word has {received.cols}"
        )
    synd = syndrome(h, received)
    try:
        support = recover_support(h, synd)
        t_hat = support.t_hat
        a_hat = erasure_decode(h, synd, support.basis)
    except DecodeFailure as failure:
        t_hat = rank_qm(synd)
        beyond = d is not None and t_hat > d - 2
        return DecodeOutcome.failed(failure.reason, t_hat, beyond)
    beyond = d is not None and t_hat > d - 2
    b_full = MatQm(h.ctx, support.basis.data, support.basis.cols)
    e_hat = a_hat @ b_full
    c_hat = received.sub(e_hat)
    if not (h @ c_hat.transpose()).is_zero() or rank_q(e_hat) != t_hat:
        return DecodeOutcome.failed(FailureReason.VERIFICATION_FAILED, t_hat, beyond)
    return DecodeOutcome(
        success=True,
        reason=None,
        t_hat=t_hat,
        c_hat=c_hat,
        a_hat=a_hat,
        b_hat=support.basis,
        h_sub=support.h_sub,
        beyond_guarantee=beyond,
    )


def beyond_d2_condition(h: MatQm, basis: MatQ) -> bool:
    """Whether the recovered support stays identifiable past the t <= d-2 regime.

    True iff appending any subfield row b outside the span of `basis` raises
    the extension-field rank of H @ [B^T | b^T] to t + 1; equivalently, the
    space {b in F_q^n : H b^T in colspan(H B^T)} has dimension exactly t.
    Computed by expanding the joint linear system over F_q and projecting
    its kernel onto the b-coordinates.
    """
    ctx = h.ctx
    n, t = h.cols, basis.rows
    if rank_q(basis) != t:
        raise ParameterError("support basis rows must be independent over F_q")
    if t + 1 > h.rows:
        return False
    size = (h.rows * ctx.m) * (n + t * ctx.m)
    if size > 4_000_000:
        raise ParameterError("expanded membership system exceeds the size guard")
    # Left block: b |-> coordinates of H b^T. Right block: x |-> -(H B^T) x,
    # with x expressed by its t*m subfield coordinates.
    left = ext_expand(h)
    coeff = h @ MatQm(ctx, basis.data, basis.cols).transpose()
    cols = []
    for j in range(t):
        col = coeff.col(j)
        for r in range(ctx.m):
            scaled = [ctx.neg(ctx.mul(a, ctx.pow(ctx.alpha, r))) for a in col]
            cols.append([digit for a in scaled for digit in ctx.as_vector(a)])
    joint_rows = [list(row) + [c[i] for c in cols] for i, row in enumerate(left.data)]
    joint = MatQ(ctx, joint_rows, n + t * ctx.m)
    kernel = right_kernel_q(joint)
    if kernel.rows == 0:
        return t == 0
    projection = MatQ(ctx, [row[:n] for row in kernel.data], n)
    return rank_q(projection) == t


def mk_hamming_decode(h: MatQm, received: MatQm, d_hamming: int | None = None) -> DecodeOutcome:
    """Metzner-Kapturowski decoding of column-burst errors (Hamming metric).

    The support positions are the all-zero columns of the trailing rows of
    P @ H; the basis rows are the corresponding identity vectors.  Succeeds
    when the burst hits at most d_H - 2 positions and the error columns are
    independent over the extension field.
    """
    if h.cols != received.cols:
        raise ParameterError(
            f"parity-check has {h.cols} columns but received word has {received.cols}"
        )
    ctx = h.ctx
    synd = syndrome(h, received)
    try:
        t_hat, h_sub = compute_hsub(h, synd)
    except DecodeFailure as failure:
        return DecodeOutcome.failed(failure.reason, rank_qm(synd))
    beyond = d_hamming is not None and t_hat > d_hamming - 2
    positions = [j for j in range(h_sub.cols) if all(row[j] == 0 for row in h_sub.data)]
    if len(positions) != t_hat:
        return DecodeOutcome.failed(FailureReason.SUPPORT_DIMENSION_MISMATCH, t_hat, beyond)
    rows = []
    for p in positions:
        row = [0] * h.cols
        row[p] = 1
        rows.append(row)
    basis = MatQ(ctx, rows, h.cols)
    try:
        a_hat = erasure_decode(h, synd, basis)
    except DecodeFailure as failure:
        return DecodeOutcome.failed(failure.reason, t_hat, beyond)
    e_hat = a_hat @ MatQm(ctx, basis.data, basis.cols)
    c_hat = received.sub(e_hat)
    nonzero_cols = [j for j in range(e_hat.cols) if any(row[j] for row in e_hat.data)]
    if not (h @ c_hat.transpose()).is_zero() or len(nonzero_cols) != t_hat:
        return DecodeOutcome.failed(FailureReason.VERIFICATION_FAILED, t_hat, beyond)
    return DecodeOutcome(
        success=True,
        reason=None,
        t_hat=t_hat,
        c_hat=c_hat,
        a_hat=a_hat,
        b_hat=basis,
        h_sub=h_sub,
        beyond_guarantee=beyond,
    )
