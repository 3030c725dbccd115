"""Dense exact linear algebra over F_q and F_{q^m}.

Two matrix types share one representation (row-major lists of int codes):
`MatQm` holds entries anywhere in F_{q^m}; `MatQ` additionally guarantees
every entry lies in the subfield F_q (code < q).  Because F_q is closed
under the field operations, every algorithm below works verbatim on both
types and preserves the subfield invariant, so results keep the type of
their inputs.

Matrices are immutable by convention: no method mutates `data` after
construction, and all operations return fresh objects, so values are safe
to share across threads.

The textual format is: first line `q m rows cols`, then `rows` lines of
`cols` decimal element codes separated by single spaces.
"""

from __future__ import annotations

from typing import Sequence

from .errors import FormatError, InconsistentSystemError, RankDeficientError
from .fields import ExtField


class MatQm:
    """Matrix over F_{q^m} with entries stored as int codes."""

    __slots__ = ("ctx", "rows", "cols", "data")

    def __init__(self, ctx: ExtField, data: Sequence[Sequence[int]], cols: int | None = None):
        rows = list(data)
        if cols is None:
            if not rows:
                raise FormatError("column count required for matrices with zero rows")
            cols = len(rows[0])
        self.ctx = ctx
        self.rows = len(rows)
        self.cols = cols
        packed = []
        for r in rows:
            r = list(r)
            if len(r) != cols:
                raise FormatError("ragged rows in matrix construction")
            for a in r:
                self._check_entry(ctx, a)
            packed.append(r)
        self.data = packed

    @staticmethod
    def _check_entry(ctx: ExtField, a: int) -> None:
        if not isinstance(a, int) or a < 0 or a >= ctx.order:
            raise FormatError(f"entry {a!r} out of range [0, {ctx.order})")

    # -- constructors -----------------------------------------------------------

    @classmethod
    def zeros(cls, ctx: ExtField, rows: int, cols: int) -> "MatQm":
        return cls(ctx, [[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, ctx: ExtField, n: int) -> "MatQm":
        return cls(ctx, [[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_flat(cls, ctx: ExtField, rows: int, cols: int, entries: Sequence[int]) -> "MatQm":
        if len(entries) != rows * cols:
            raise FormatError(f"expected {rows * cols} entries, got {len(entries)}")
        return cls(ctx, [list(entries[i * cols : (i + 1) * cols]) for i in range(rows)], cols)

    # -- structure --------------------------------------------------------------

    def row(self, i: int) -> list[int]:
        return list(self.data[i])

    def col(self, j: int) -> list[int]:
        return [r[j] for r in self.data]

    def transpose(self) -> "MatQm":
        return type(self)(self.ctx, [self.col(j) for j in range(self.cols)], self.rows)

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "MatQm":
        """Rows r0:r1 and columns c0:c1 (half-open, like slices)."""
        if not (0 <= r0 <= r1 <= self.rows and 0 <= c0 <= c1 <= self.cols):
            raise FormatError("submatrix range out of bounds")
        return type(self)(self.ctx, [r[c0:c1] for r in self.data[r0:r1]], c1 - c0)

    def hstack(self, other: "MatQm") -> "MatQm":
        self._conformable(other, rows=True)
        cls = type(self) if isinstance(other, type(self)) else MatQm
        return cls(self.ctx, [a + b for a, b in zip(self.data, other.data)], self.cols + other.cols)

    def vstack(self, other: "MatQm") -> "MatQm":
        self._conformable(other, cols=True)
        cls = type(self) if isinstance(other, type(self)) else MatQm
        return cls(self.ctx, [list(r) for r in self.data] + [list(r) for r in other.data], self.cols)

    def _conformable(self, other: "MatQm", rows: bool = False, cols: bool = False) -> None:
        if self.ctx != other.ctx:
            raise FormatError("matrices live over different fields")
        if rows and self.rows != other.rows:
            raise FormatError(f"row mismatch: {self.rows} vs {other.rows}")
        if cols and self.cols != other.cols:
            raise FormatError(f"column mismatch: {self.cols} vs {other.cols}")

    # -- arithmetic ---------------------------------------------------------------

    def __matmul__(self, other: "MatQm") -> "MatQm":
        if self.ctx != other.ctx:
            raise FormatError("matrices live over different fields")
        if self.cols != other.rows:
            raise FormatError(f"dimension mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        ctx = self.ctx
        mul, add = ctx.mul, ctx.add
        out = []
        ocols = other.cols
        odata = other.data
        for arow in self.data:
            acc = [0] * ocols
            for a, brow in zip(arow, odata):
                if a == 0:
                    continue
                if a == 1:
                    for j, b in enumerate(brow):
                        if b:
                            acc[j] = add(acc[j], b)
                else:
                    for j, b in enumerate(brow):
                        if b:
                            acc[j] = add(acc[j], mul(a, b))
            out.append(acc)
        cls = MatQ if isinstance(self, MatQ) and isinstance(other, MatQ) else MatQm
        return cls(self.ctx, out, ocols)

    def add(self, other: "MatQm") -> "MatQm":
        self._conformable(other, rows=True, cols=True)
        f = self.ctx.add
        cls = type(self) if isinstance(other, type(self)) else MatQm
        return cls(self.ctx, [[f(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)], self.cols)

    def sub(self, other: "MatQm") -> "MatQm":
        self._conformable(other, rows=True, cols=True)
        f = self.ctx.sub
        cls = type(self) if isinstance(other, type(self)) else MatQm
        return cls(self.ctx, [[f(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)], self.cols)

    def scale(self, c: int) -> "MatQm":
        mul = self.ctx.mul
        return type(self)(self.ctx, [[mul(c, a) for a in r] for r in self.data], self.cols)

    def map_entries(self, f) -> "MatQm":
        return type(self)(self.ctx, [[f(a) for a in r] for r in self.data], self.cols)

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.data for a in r)

    # -- comparison / misc -----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, MatQm)
            and self.ctx == other.ctx
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self) -> int:
        return hash((self.ctx, self.rows, self.cols, tuple(tuple(r) for r in self.data)))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.rows}x{self.cols} over GF({self.ctx.q}^{self.ctx.m}))"

    # -- textual format -----------------------------------------------------------------

    def to_text(self) -> str:
        head = f"{self.ctx.q} {self.ctx.m} {self.rows} {self.cols}"
        body = "\n".join(" ".join(str(a) for a in r) for r in self.data)
        return head + ("\n" + body if self.rows else "") + "\n"


class MatQ(MatQm):
    """Matrix whose entries all lie in the subfield F_q."""

    @staticmethod
    def _check_entry(ctx: ExtField, a: int) -> None:
        if not isinstance(a, int) or a < 0 or a >= ctx.q:
            raise FormatError(f"subfield entry {a!r} out of range [0, {ctx.q})")


def mat_from_text(text: str, ctx: ExtField | None = None, subfield: bool = False) -> MatQm:
    """Parse the matrix textual format; builds a default field if ctx is None."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty matrix text")
    head = lines[0].split()
    if len(head) != 4:
        raise FormatError(f"malformed matrix header {lines[0]!r}")
    try:
        q, m, rows, cols = (int(x) for x in head)
    except ValueError as exc:
        raise FormatError(f"malformed matrix header {lines[0]!r}") from exc
    if ctx is None:
        ctx = ExtField(q, m)
    elif (ctx.q, ctx.m) != (q, m):
        raise FormatError(f"matrix header field ({q},{m}) does not match context ({ctx.q},{ctx.m})")
    if len(lines) != rows + 1:
        raise FormatError(f"expected {rows} matrix rows, got {len(lines) - 1}")
    data = []
    for ln in lines[1:]:
        try:
            row = [int(x) for x in ln.split()]
        except ValueError as exc:
            raise FormatError(f"malformed matrix row {ln!r}") from exc
        data.append(row)
    cls = MatQ if subfield else MatQm
    try:
        return cls(ctx, data, cols)
    except FormatError:
        raise
    except Exception as exc:  # pragma: no cover - defensive
        raise FormatError(str(exc)) from exc


# -- the coordinate-expansion map ----------------------------------------------------


def ext_expand(mat: MatQm) -> MatQ:
    """Expand each row into its m coordinate rows and stack the blocks.

    Output has rows*m rows; block i holds the basis coordinates of row i,
    one output row per basis element, constant coordinate first.
    """
    ctx = mat.ctx
    out: list[list[int]] = []
    for r in mat.data:
        cols = [ctx.as_vector(a) for a in r]
        for i in range(ctx.m):
            out.append([c[i] for c in cols])
    return MatQ(ctx, out, mat.cols)


# -- echelon forms ----------------------------------------------------------------------


def _rref_gf2(data: list[list[int]], cols: int) -> tuple[list[list[int]], list[int]]:
    """Bit-packed RREF over F_2; rows enter and leave as 0/1 lists."""
    masks = []
    for r in data:
        v = 0
        for j, a in enumerate(r):
            if a:
                v |= 1 << j
        masks.append(v)
    pivots = []
    pr = 0
    nrows = len(masks)
    for c in range(cols):
        bit = 1 << c
        pivot = next((i for i in range(pr, nrows) if masks[i] & bit), None)
        if pivot is None:
            continue
        masks[pr], masks[pivot] = masks[pivot], masks[pr]
        mrow = masks[pr]
        for i in range(nrows):
            if i != pr and masks[i] & bit:
                masks[i] ^= mrow
        pivots.append(c)
        pr += 1
        if pr == nrows:
            break
    out = [[(v >> j) & 1 for j in range(cols)] for v in masks]
    return out, pivots


def rref(mat: MatQm) -> tuple[MatQm, list[int]]:
    """Reduced row echelon form and its pivot columns."""
    ctx = mat.ctx
    if ctx.q == 2 and isinstance(mat, MatQ):
        out, pivots = _rref_gf2([list(r) for r in mat.data], mat.cols)
        return type(mat)(ctx, out, mat.cols), pivots
    work = [list(r) for r in mat.data]
    pivots = _eliminate(ctx, work, mat.cols, None)
    return type(mat)(ctx, work, mat.cols), pivots


def rref_with_transform(mat: MatQm) -> tuple[MatQm, MatQm]:
    """Invertible P with P @ mat = rref(mat); row operations mirrored on I."""
    ctx = mat.ctx
    work = [list(r) for r in mat.data]
    trans = [[1 if i == j else 0 for j in range(mat.rows)] for i in range(mat.rows)]
    _eliminate(ctx, work, mat.cols, trans)
    return MatQm(ctx, trans, mat.rows), type(mat)(ctx, work, mat.cols)


def _eliminate(ctx: ExtField, work: list[list[int]], cols: int, trans: list[list[int]] | None) -> list[int]:
    """In-place RREF; scans columns left to right, picks the topmost nonzero
    pivot, normalizes it to 1 and clears the column above and below."""
    mul, sub, inv = ctx.mul, ctx.sub, ctx.inv
    nrows = len(work)
    pivots = []
    pr = 0
    for c in range(cols):
        pivot = next((i for i in range(pr, nrows) if work[i][c]), None)
        if pivot is None:
            continue
        work[pr], work[pivot] = work[pivot], work[pr]
        if trans is not None:
            trans[pr], trans[pivot] = trans[pivot], trans[pr]
        lead = work[pr][c]
        if lead != 1:
            s = inv(lead)
            work[pr] = [mul(s, a) for a in work[pr]]
            if trans is not None:
                trans[pr] = [mul(s, a) for a in trans[pr]]
        prow = work[pr]
        for i in range(nrows):
            f = work[i][c]
            if i == pr or f == 0:
                continue
            work[i] = [sub(a, mul(f, b)) for a, b in zip(work[i], prow)]
            if trans is not None:
                trow = trans[pr]
                trans[i] = [sub(a, mul(f, b)) for a, b in zip(trans[i], trow)]
        pivots.append(c)
        pr += 1
        if pr == nrows:
            break
    return pivots


# -- ranks ------------------------------------------------------------------------------


def rank_qm(mat: MatQm) -> int:
    """Rank over the extension field F_{q^m}."""
    return len(rref(mat)[1])


def rank_q(mat: MatQm) -> int:
    """Rank of the coordinate expansion over the base field F_q."""
    if isinstance(mat, MatQ):
        return len(rref(mat)[1])
    return len(rref(ext_expand(mat))[1])


# -- kernels and complements ----------------------------------------------------------------


def _kernel_basis(mat: MatQm) -> MatQm:
    ctx = mat.ctx
    reduced, pivots = rref(mat)
    pivot_set = set(pivots)
    free = [j for j in range(mat.cols) if j not in pivot_set]
    neg = ctx.neg
    rows = []
    for f in free:
        v = [0] * mat.cols
        v[f] = 1
        for i, p in enumerate(pivots):
            v[p] = neg(reduced.data[i][f])
        rows.append(v)
    basis = type(mat)(ctx, rows, mat.cols) if rows else type(mat)(ctx, [], mat.cols)
    return rref(basis)[0] if rows else basis


def right_kernel_qm(mat: MatQm) -> MatQm:
    """Canonical (RREF) basis of {v in F_{q^m}^n : mat @ v^T = 0}."""
    if isinstance(mat, MatQ):
        mat = MatQm(mat.ctx, mat.data, mat.cols)
    return _kernel_basis(mat)


def right_kernel_q(mat: MatQ) -> MatQ:
    """Canonical (RREF) basis of {v in F_q^n : mat @ v^T = 0}."""
    if not isinstance(mat, MatQ):
        raise FormatError("right_kernel_q expects a subfield matrix; ext-expand first")
    return _kernel_basis(mat)


def orth_complement_q(basis: MatQ) -> MatQ:
    """Canonical basis of the dual space {v : basis @ v^T = 0} in F_q^n."""
    return right_kernel_q(basis)


# -- linear solving ----------------------------------------------------------------------------


def solve_right(coeff: MatQm, rhs: MatQm) -> MatQm:
    """Unique X with coeff @ X^T = rhs.

    Requires coeff to have full column rank; raises RankDeficientError when
    it does not (solution would not be unique) and InconsistentSystemError
    when no solution exists.
    """
    coeff._conformable(rhs, rows=True)
    b = coeff.cols
    aug = MatQm(coeff.ctx, [list(x) + list(y) for x, y in zip(coeff.data, rhs.data)], b + rhs.cols)
    reduced, pivots = rref(aug)
    coeff_pivots = [p for p in pivots if p < b]
    if len(coeff_pivots) < b:
        raise RankDeficientError(f"coefficient matrix has column rank {len(coeff_pivots)} < {b}")
    if len(pivots) > b:
        raise InconsistentSystemError("no solution: residual rows are nonzero")
    xt = [reduced.data[i][b:] for i in range(b)]
    return MatQm(coeff.ctx, [[xt[i][j] for i in range(b)] for j in range(rhs.cols)], b)
