"""Exact arithmetic in F_q (q prime) and its degree-m extension F_{q^m}.

Field elements are plain Python ints ("codes") in [0, q^m).  The base-q
digits c_0, ..., c_{m-1} of a code are the coordinates of the element in the
polynomial basis (1, alpha, alpha^2, ..., alpha^(m-1)), where alpha is the
residue class of the indeterminate modulo the field polynomial.  Elements of
the subfield F_q are exactly the codes below q, and F_q arithmetic on them is
plain integer arithmetic mod q.

Multiplication reduces modulo the field polynomial in O(m^2).  When the
polynomial is primitive and the field is small, discrete-log tables are built
once so multiplication, inversion and powering become table lookups.
"""

from __future__ import annotations

from typing import Sequence

from .errors import FormatError, ParameterError

# Largest field for which log/exp tables (and dlog/alpha_pow) are supported.
TABLE_LIMIT = 2**20

# Default field polynomial per (q, m): coefficient tuples, constant term
# first, monic.  All entries are primitive, verified by the test suite.
# The q=2 column is the classic minimal-weight primitive polynomial list.
DEFAULT_MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 1): (1, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (2, 9): (1, 0, 0, 0, 1, 0, 0, 0, 0, 1),
    (2, 10): (1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1),
    (2, 11): (1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 12): (1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1),
    (2, 13): (1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 14): (1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1),
    (2, 15): (1, 0, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 16): (1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (3, 1): (1, 1),
    (3, 2): (2, 1, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 1, 0, 0, 1),
    (3, 5): (1, 2, 0, 0, 0, 1),
    (3, 6): (2, 1, 0, 0, 0, 0, 1),
    (5, 1): (3, 1),
    (5, 2): (2, 1, 1),
    (5, 3): (2, 3, 0, 1),
    (5, 4): (2, 2, 1, 0, 1),
    (7, 1): (4, 1),
    (7, 2): (3, 1, 1),
    (7, 3): (2, 3, 0, 1),
}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _int_to_digits(code: int, q: int, length: int) -> tuple[int, ...]:
    digits = []
    for _ in range(length):
        code, r = divmod(code, q)
        digits.append(r)
    return tuple(digits)


def _digits_to_int(digits: Sequence[int], q: int) -> int:
    code = 0
    for d in reversed(digits):
        code = code * q + d
    return code


def _poly_rem(a: list[int], f: Sequence[int], q: int) -> list[int]:
    """Remainder of a modulo the monic polynomial f, coefficients mod q."""
    a = list(a)
    df = len(f) - 1
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i] % q
        if c:
            for j in range(df + 1):
                a[i - df + j] = (a[i - df + j] - c * f[j]) % q
    return [c % q for c in a[:df]]


def _poly_mul_mod(a: Sequence[int], b: Sequence[int], f: Sequence[int], q: int) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % q
    return _poly_rem(prod, f, q)


def _is_irreducible(f: Sequence[int], q: int, m: int) -> bool:
    """Trial division by every monic polynomial of degree <= m/2."""
    if q ** (m // 2) > 2**16:
        raise ParameterError("irreducibility check supports q^(m/2) <= 2^16")
    for deg in range(1, m // 2 + 1):
        for low in range(q**deg):
            g = list(_int_to_digits(low, q, deg)) + [1]
            if not any(_poly_rem(list(f), g, q)):
                return False
    return True


class ExtField:
    """The tower F_q in F_{q^m}: field polynomial, basis, and arithmetic.

    Immutable after construction; all operations are pure functions of their
    integer arguments, so one instance is safely shared across threads.
    """

    def __init__(self, q: int, m: int, modulus: Sequence[int] | None = None):
        if not _is_prime(q):
            raise ParameterError(f"base field size q={q} must be prime")
        if m < 1:
            raise ParameterError(f"extension degree m={m} must be >= 1")
        if modulus is None:
            try:
                modulus = DEFAULT_MODULI[(q, m)]
            except KeyError:
                raise ParameterError(
                    f"no default field polynomial for q={q}, m={m}; pass one explicitly"
                ) from None
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) != m + 1:
            raise FormatError(f"field polynomial must have degree {m} (got {len(modulus) - 1})")
        if any(c < 0 or c >= q for c in modulus):
            raise FormatError("field polynomial coefficients must lie in [0, q)")
        if modulus[-1] != 1:
            raise FormatError("field polynomial must be monic")
        if not _is_irreducible(modulus, q, m):
            raise ParameterError(f"field polynomial {modulus} is reducible over F_{q}")

        self.q = q
        self.m = m
        self.modulus = modulus
        self.order = q**m
        # alpha = residue of x: for m >= 2 the digit vector (0,1,0,...);
        # for m = 1 it reduces to -c0.
        self.alpha = q if m >= 2 else (q - modulus[0]) % q

        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self._primitive: bool | None = None
        if self.order <= TABLE_LIMIT:
            self._primitive = self._check_primitive()
            if self._primitive:
                self._build_tables()

    # -- construction helpers -------------------------------------------------

    def _check_primitive(self) -> bool:
        if self.alpha == 0:  # m = 1 with modulus x: the residue of x is zero
            return False
        n = self.order - 1
        if n == 0:
            return True
        for p in _prime_factors(n):
            if self._pow_raw(self.alpha, n // p) == 1:
                return False
        return True

    def _build_tables(self) -> None:
        n = self.order - 1
        exp = [0] * (2 * n if n else 1)
        log = [0] * self.order
        v = 1
        for i in range(n):
            exp[i] = v
            log[v] = i
            v = self._mul_raw(v, self.alpha)
        for i in range(n, 2 * n):
            exp[i] = exp[i - n]
        self._exp = exp
        self._log = log

    @property
    def is_primitive(self) -> bool:
        """True when alpha generates the multiplicative group."""
        if self._primitive is None:
            self._primitive = self._check_primitive()
        return self._primitive

    # -- raw polynomial-basis arithmetic --------------------------------------

    def _mul_raw(self, a: int, b: int) -> int:
        if self.q == 2:
            mod_mask = _digits_to_int(self.modulus, 2)
            top = 1 << self.m
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if a & top:
                    a ^= mod_mask
            return r
        da = _int_to_digits(a, self.q, self.m)
        db = _int_to_digits(b, self.q, self.m)
        return _digits_to_int(_poly_mul_mod(da, db, self.modulus, self.q), self.q)

    def _pow_raw(self, a: int, e: int) -> int:
        r = 1
        base = a
        while e:
            if e & 1:
                r = self._mul_raw(r, base)
            base = self._mul_raw(base, base)
            e >>= 1
        return r

    # -- field operations ------------------------------------------------------

    def check(self, a: int) -> int:
        """Validate an element code, returning it unchanged."""
        if not isinstance(a, int) or a < 0 or a >= self.order:
            raise FormatError(f"element code {a!r} out of range [0, {self.order})")
        return a

    def add(self, a: int, b: int) -> int:
        if self.q == 2:
            return a ^ b
        q = self.q
        out = 0
        mult = 1
        for _ in range(self.m):
            out += ((a + b) % q) * mult
            a //= q
            b //= q
            mult *= q
        return out

    def neg(self, a: int) -> int:
        if self.q == 2:
            return a
        q = self.q
        out = 0
        mult = 1
        for _ in range(self.m):
            out += (-a % q) * mult
            a //= q
            mult *= q
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b)) if self.q != 2 else a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._log is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_raw(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inversion of zero field element")
        if self._log is not None:
            n = self.order - 1
            return self._exp[(n - self._log[a]) % n]
        return self._pow_raw(a, self.order - 2)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 1 if e == 0 else 0
        n = self.order - 1
        if self._log is not None:
            return self._exp[(self._log[a] * e) % n] if n else a
        return self._pow_raw(a, e % n if n else 0)

    def frobenius(self, a: int, i: int) -> int:
        """The q^i-power map a -> a^(q^i); identity for i = 0 or i = m."""
        if i < 0:
            raise ParameterError("frobenius exponent must be >= 0")
        return self.pow(a, self.q ** (i % self.m))

    # -- coordinate view --------------------------------------------------------

    def as_vector(self, a: int) -> tuple[int, ...]:
        """Coordinates of a in the basis (1, alpha, ..., alpha^(m-1))."""
        return _int_to_digits(self.check(a), self.q, self.m)

    def from_vector(self, digits: Sequence[int]) -> int:
        if len(digits) != self.m:
            raise FormatError(f"expected {self.m} digits, got {len(digits)}")
        for d in digits:
            if not isinstance(d, int) or d < 0 or d >= self.q:
                raise FormatError(f"digit {d!r} out of range [0, {self.q})")
        return _digits_to_int(digits, self.q)

    # -- alpha-power notation ----------------------------------------------------

    def _require_tables(self) -> None:
        if self.order > TABLE_LIMIT:
            raise ParameterError("alpha-power notation supported only for q^m <= 2^20")
        if not self.is_primitive:
            raise ParameterError("field polynomial is not primitive; alpha-power notation unavailable")
        if self._log is None:
            self._build_tables()

    def alpha_pow(self, k: int) -> int:
        """alpha^k for a primitive field polynomial (k taken mod q^m - 1)."""
        self._require_tables()
        n = self.order - 1
        return self._exp[k % n] if n else 1

    def dlog(self, a: int) -> int:
        """Discrete log base alpha; the inverse of alpha_pow on [0, q^m - 1)."""
        if a == 0:
            raise ValueError("discrete log of zero")
        self._require_tables()
        return self._log[self.check(a)]

    # -- serialization -------------------------------------------------------------

    def to_spec(self) -> str:
        """Textual form `q=<int> m=<int> f=<c0,c1,...,cm>`."""
        coeffs = ",".join(str(c) for c in self.modulus)
        return f"q={self.q} m={self.m} f={coeffs}"

    @classmethod
    def from_spec(cls, text: str) -> "ExtField":
        fields = {}
        for token in text.split():
            if "=" not in token:
                raise FormatError(f"malformed field spec token {token!r}")
            key, _, value = token.partition("=")
            fields[key] = value
        try:
            q = int(fields["q"])
            m = int(fields["m"])
            coeffs = tuple(int(c) for c in fields["f"].split(","))
        except (KeyError, ValueError) as exc:
            raise FormatError(f"malformed field spec {text!r}") from exc
        return cls(q, m, coeffs)

    @classmethod
    def default(cls, q: int, m: int) -> "ExtField":
        """Field with the shipped default polynomial for (q, m)."""
        return cls(q, m)

    # -- identity -----------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ExtField)
            and self.q == other.q
            and self.m == other.m
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.q, self.m, self.modulus))

    def __repr__(self) -> str:
        return f"ExtField(q={self.q}, m={self.m}, modulus={self.modulus})"
