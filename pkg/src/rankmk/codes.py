"""Construction of Gabidulin and generic linear rank-metric codes.

An interleaved codeword of order ell is simply an ell x n `MatQm` whose
rows are codewords of the constituent code, i.e. H @ C^T = 0.

Code spec files: the first line is a field spec (`q=.. m=.. f=..`), the
second line is either

    kind=gabidulin g=<code,code,...> k=<int>

or `kind=generic [d=<int>] H=` followed by a parity-check matrix block in
the matrix textual format (header line included).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import FormatError, ParameterError
from .fields import ExtField
from .matrix import MatQm, mat_from_text, rank_q, rank_qm, rref

# Exhaustive enumeration guard (number of codewords).
ENUM_LIMIT = 2**20


@dataclass(frozen=True)
class GabidulinSpec:
    """Evaluation code of q-power (Frobenius) images of a rank-n locator vector."""

    ctx: ExtField
    g: tuple[int, ...]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "g", tuple(int(a) for a in self.g))
        n = len(self.g)
        if not 1 <= self.k <= n:
            raise ParameterError(f"dimension k={self.k} must satisfy 1 <= k <= n={n}")
        if n > self.ctx.m:
            raise ParameterError(f"length n={n} exceeds extension degree m={self.ctx.m}")
        if rank_q(MatQm(self.ctx, [list(self.g)], n)) != n:
            raise ParameterError("code locators must be linearly independent over F_q")

    @property
    def n(self) -> int:
        return len(self.g)

    @property
    def d(self) -> int:
        return self.n - self.k + 1


@dataclass(frozen=True)
class LinearCodeSpec:
    """Generic [n, k, d] rank-metric code given by a parity-check matrix.

    `d` is caller-supplied metadata (or computed, for tiny codes); the
    decoder uses it only for the guarantee predicate t <= d - 2.
    """

    h: MatQm
    d: int | None = None
    gen: MatQm | None = field(default=None)

    def __post_init__(self):
        if rank_qm(self.h) != self.h.rows:
            raise ParameterError("parity-check matrix must have full row rank")
        if self.gen is not None and not (self.h @ self.gen.transpose()).is_zero():
            raise ParameterError("generator rows are not annihilated by the parity-check matrix")

    @property
    def ctx(self) -> ExtField:
        return self.h.ctx

    @property
    def n(self) -> int:
        return self.h.cols

    @property
    def k(self) -> int:
        return self.h.cols - self.h.rows


def moore_matrix(ctx: ExtField, g, rows: int) -> MatQm:
    """Matrix whose row i applies the q^i power map entrywise to g."""
    g = [int(a) for a in g]
    return MatQm(ctx, [[ctx.frobenius(a, i) for a in g] for i in range(rows)], len(g))


def gabidulin_generator(spec: GabidulinSpec) -> MatQm:
    """k x n generator: row i is g raised entrywise to the q^i-th power."""
    return moore_matrix(spec.ctx, spec.g, spec.k)


def parity_check_from_generator(gen: MatQm) -> MatQm:
    """Canonical (RREF) parity-check matrix for a full-rank generator.

    Brings gen to RREF, reads the non-pivot block P from [I | P] under the
    pivot-column permutation, assembles [-P^T | I] on permuted coordinates,
    undoes the permutation, and RREF-canonicalizes the result.
    """
    ctx = gen.ctx
    k, n = gen.rows, gen.cols
    reduced, pivots = rref(gen)
    if len(pivots) != k:
        raise ParameterError(f"generator matrix has rank {len(pivots)} < {k}")
    free = [j for j in range(n) if j not in set(pivots)]
    perm = pivots + free
    neg = ctx.neg
    rows = []
    for i, f in enumerate(free):
        row = [0] * n
        for r, p in enumerate(pivots):
            row[p] = neg(reduced.data[r][f])
        row[f] = 1
        rows.append(row)
    h = MatQm(ctx, rows, n) if rows else MatQm(ctx, [], n)
    h = rref(h)[0]
    if not (h @ gen.transpose()).is_zero():
        raise ParameterError("internal: parity-check construction failed")
    return h


def linear_code_from_gabidulin(spec: GabidulinSpec) -> LinearCodeSpec:
    gen = gabidulin_generator(spec)
    return LinearCodeSpec(h=parity_check_from_generator(gen), d=spec.d, gen=gen)


def generator_from_parity_check(h: MatQm) -> MatQm:
    """Canonical generator (RREF kernel basis) of the code with parity check h."""
    from .matrix import right_kernel_qm

    return right_kernel_qm(h)


def encode_interleaved(gen: MatQm, msg: MatQm) -> MatQm:
    """Stack of ell constituent codewords: C = msg @ gen, msg is ell x k."""
    return msg @ gen


def min_rank_distance_exhaustive(spec: GabidulinSpec | LinearCodeSpec) -> int:
    """Exact minimum rank distance by enumerating all nonzero codewords."""
    if isinstance(spec, GabidulinSpec):
        ctx, gen = spec.ctx, gabidulin_generator(spec)
    else:
        ctx = spec.ctx
        gen = spec.gen if spec.gen is not None else generator_from_parity_check(spec.h)
    k, order = gen.rows, ctx.order
    if order**k > ENUM_LIMIT:
        raise ParameterError(f"enumeration of {order}^{k} codewords exceeds the size guard")
    best = None
    for idx in range(1, order**k):
        msg = []
        v = idx
        for _ in range(k):
            v, r = divmod(v, order)
            msg.append(r)
        w = rank_q(MatQm(ctx, [msg], k) @ gen)
        if best is None or w < best:
            best = w
            if best == 1:
                break
    return best


# -- code spec files ----------------------------------------------------------------


def code_spec_to_text(spec: GabidulinSpec | LinearCodeSpec) -> str:
    if isinstance(spec, GabidulinSpec):
        g = ",".join(str(a) for a in spec.g)
        return f"{spec.ctx.to_spec()}\nkind=gabidulin g={g} k={spec.k}\n"
    head = f"{spec.ctx.to_spec()}\nkind=generic"
    if spec.d is not None:
        head += f" d={spec.d}"
    return head + " H=\n" + spec.h.to_text()


def code_spec_from_text(text: str) -> GabidulinSpec | LinearCodeSpec:
    lines = text.splitlines()
    if len(lines) < 2:
        raise FormatError("code spec needs a field line and a kind line")
    ctx = ExtField.from_spec(lines[0])
    kind_line = lines[1].split()
    fields = {}
    for token in kind_line:
        key, _, value = token.partition("=")
        fields[key] = value
    kind = fields.get("kind")
    if kind == "gabidulin":
        try:
            g = tuple(int(a) for a in fields["g"].split(","))
            k = int(fields["k"])
        except (KeyError, ValueError) as exc:
            raise FormatError("malformed gabidulin code spec") from exc
        return GabidulinSpec(ctx, g, k)
    if kind == "generic":
        if "H" not in fields:
            raise FormatError("generic code spec must end with H= and a matrix block")
        d = None
        if "d" in fields:
            try:
                d = int(fields["d"])
            except ValueError as exc:
                raise FormatError("malformed d= value in code spec") from exc
        h = mat_from_text("\n".join(lines[2:]), ctx=ctx)
        return LinearCodeSpec(h=h, d=d)
    raise FormatError(f"unknown code kind {kind!r}")


def resolve_code(spec: GabidulinSpec | LinearCodeSpec) -> LinearCodeSpec:
    """Normalize either spec kind to a LinearCodeSpec with a generator attached."""
    if isinstance(spec, GabidulinSpec):
        return linear_code_from_gabidulin(spec)
    if spec.gen is None:
        return LinearCodeSpec(h=spec.h, d=spec.d, gen=generator_from_parity_check(spec.h))
    return spec
