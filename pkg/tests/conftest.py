"""Shared helpers for the test suite."""

from __future__ import annotations

import itertools

from rankmk.codes import GabidulinSpec, LinearCodeSpec, resolve_code
from rankmk.fields import ExtField
from rankmk.matrix import MatQ, MatQm, rank_q, rref
from rankmk.simulate import rand_matrix, sample_error, trial_rng


def gab_code(q: int, m: int, n: int, k: int) -> LinearCodeSpec:
    """Gabidulin code with locators 1, alpha, ..., alpha^(n-1), resolved."""
    ctx = ExtField(q, m)
    return resolve_code(GabidulinSpec(ctx, tuple(ctx.alpha_pow(i) for i in range(n)), k))


def all_rref_bases(ctx: ExtField, t: int, n: int):
    """Canonical (RREF) bases of every t-dimensional subspace of F_q^n.

    Enumerates all q^(t*n) subfield matrices, keeps the full-rank ones, and
    dedupes by RREF; only feasible for tiny shapes.
    """
    q = ctx.q
    seen = set()
    out = []
    for entries in itertools.product(range(q), repeat=t * n):
        mat = MatQ(ctx, [list(entries[i * n : (i + 1) * n]) for i in range(t)], n)
        if rank_q(mat) != t:
            continue
        canon = rref(mat)[0]
        key = tuple(tuple(r) for r in canon.data)
        if key not in seen:
            seen.add(key)
            out.append(canon)
    return out


def planted_word(code: LinearCodeSpec, ell: int, t: int, seed: int, mode: str = "fullrank"):
    """(codeword, error, received) with a random message and sampled error."""
    ctx = code.ctx
    rng = trial_rng(seed, 0)
    msg = rand_matrix(rng, ctx, ell, code.k)
    word = msg @ code.gen
    err, _, _ = sample_error(rng, ctx, ell, code.n, t, mode)
    return word, err, word.add(err)


def is_rref(mat: MatQm) -> bool:
    """Independent reduced-row-echelon-form predicate."""
    last_pivot = -1
    seen_zero_row = False
    for row in mat.data:
        nz = [j for j, a in enumerate(row) if a]
        if not nz:
            seen_zero_row = True
            continue
        if seen_zero_row:
            return False
        p = nz[0]
        if p <= last_pivot or row[p] != 1:
            return False
        if any(other[p] for other in mat.data if other is not row):
            return False
        last_pivot = p
    return True
