"""Exact coefficient arithmetic: Laurent polynomials in the deformation parameters.

Every scalar weight in the system lives in Z[q_ij^{+-1}] for parameters q_ij
with 1 <= i < j <= n, or in one of two specializations of that ring:

* ``multi``   -- the full multiparameter ring, n(n-1)/2 variables q_ij;
* ``single``  -- every q_ij collapsed to one variable q;
* ``numeric`` -- every q_ij fixed to a nonzero rational, scalars are exact
  rationals.

Exponent vectors are stored densely (one slot per variable; at desk scale
n <= 5 so there are at most 10 slots) and coefficients are arbitrary-precision
integers, or exact rationals in numeric mode.  All values are immutable and
all operations are pure, so scalars can be shared freely across threads.
"""

from __future__ import annotations

from fractions import Fraction


class ModeMismatchError(ValueError):
    """Raised when scalars over different parameter modes are combined."""


def _as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise ValueError(f"not an exact rational: {value!r}")


class ParamMode:
    """Identifies the coefficient ring and names its variables.

    ``variables`` is the ordered tuple of variable labels: pairs (i, j) with
    i < j in lexicographic order for ``multi``, the single label ``"q"`` for
    ``single``, and empty for ``numeric``.
    """

    __slots__ = ("kind", "n", "variables", "assignment")

    def __init__(self, kind, n=None, variables=(), assignment=None):
        self.kind = kind
        self.n = n
        self.variables = variables
        self.assignment = assignment

    @classmethod
    def multi(cls, n: int) -> "ParamMode":
        if n < 1:
            raise ValueError("need n >= 1")
        pairs = tuple((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1))
        return cls("multi", n=n, variables=pairs)

    @classmethod
    def single(cls) -> "ParamMode":
        return cls("single", variables=("q",))

    @classmethod
    def numeric(cls, n: int, assignment) -> "ParamMode":
        """Fix every q_ij to a nonzero rational; scalars become rationals."""
        pairs = tuple((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1))
        fixed = {}
        for pair in pairs:
            if pair not in assignment:
                raise ValueError(f"numeric mode needs a value for q_{pair[0]}{pair[1]}")
            val = _as_rational(assignment[pair])
            if val == 0:
                raise ValueError(f"q_{pair[0]}{pair[1]} must be nonzero")
            fixed[pair] = val
        return cls("numeric", n=n, variables=(), assignment=fixed)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def cache_key(self):
        if self.kind == "multi":
            return ("multi", self.n)
        if self.kind == "single":
            return ("single",)
        return ("numeric", self.n, tuple(sorted((k, str(v)) for k, v in self.assignment.items())))

    def __eq__(self, other):
        return isinstance(other, ParamMode) and self.cache_key() == other.cache_key()

    def __hash__(self):
        return hash(self.cache_key())

    def __repr__(self):
        if self.kind == "multi":
            return f"ParamMode.multi({self.n})"
        if self.kind == "single":
            return "ParamMode.single()"
        return f"ParamMode.numeric({self.n}, ...)"

    # -- scalar constructors ------------------------------------------------

    def zero(self) -> "ParamScalar":
        return ParamScalar(self, {})

    def one(self) -> "ParamScalar":
        return self.scalar(1)

    def scalar(self, value) -> "ParamScalar":
        if isinstance(value, ParamScalar):
            if value.mode != self:
                raise ModeMismatchError("scalar belongs to a different mode")
            return value
        if isinstance(value, Fraction) and self.kind != "numeric" and value.denominator != 1:
            raise ValueError("symbolic modes have integer coefficients")
        value = _canonical_coeff(value if isinstance(value, (int, Fraction)) else _as_rational(value))
        if value == 0:
            return ParamScalar(self, {})
        return ParamScalar(self, {(0,) * self.nvars: value})

    def variable(self, label, power: int = 1) -> "ParamScalar":
        """The generator named by ``label`` ((i, j) pair or "q"), as a scalar."""
        if self.kind == "numeric":
            val = self.assignment.get(label)
            if val is None:
                raise ValueError(f"unknown parameter {label!r}")
            return self.scalar(val**power)
        try:
            slot = self.variables.index(label)
        except ValueError:
            raise ValueError(f"unknown parameter {label!r} in mode {self!r}") from None
        exps = [0] * self.nvars
        exps[slot] = power
        return ParamScalar(self, {tuple(exps): 1})

    def q(self, i: int, j: int) -> "ParamScalar":
        """q_ij for i < j, q_ji^{-1} for i > j, and 1 for i == j.

        Only parameters with i < j exist; the other cases are derived, never
        stored.
        """
        if i == j:
            return self.one()
        if i < j:
            label, power = (i, j), 1
        else:
            label, power = (j, i), -1
        if self.kind == "single":
            label = "q"
        return self.variable(label, power)


def _canonical_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class ParamScalar:
    """An element of the coefficient ring, in canonical form.

    ``terms`` maps dense exponent tuples to nonzero coefficients.  Structural
    equality of the term maps is ring equality, so zero coefficients are
    dropped eagerly.
    """

    __slots__ = ("mode", "terms")

    def __init__(self, mode: ParamMode, terms: dict):
        self.mode = mode
        self.terms = terms

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(0,) * self.mode.nvars: 1}

    def _check(self, other: "ParamScalar"):
        if self.mode != other.mode:
            raise ModeMismatchError("scalars over different parameter modes")

    # -- ring operations -----------------------------------------------------

    def __add__(self, other) -> "ParamScalar":
        if isinstance(other, int):
            other = self.mode.scalar(other)
        self._check(other)
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            s = terms.get(exps, 0) + c
            if s:
                terms[exps] = _canonical_coeff(s)
            else:
                terms.pop(exps, None)
        return ParamScalar(self.mode, terms)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self) -> "ParamScalar":
        return ParamScalar(self.mode, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "ParamScalar":
        if isinstance(other, int):
            other = self.mode.scalar(other)
        return self.__add__(other.__neg__())

    def __rsub__(self, other):
        return self.mode.scalar(other).__sub__(self)

    def __mul__(self, other) -> "ParamScalar":
        if isinstance(other, int):
            if other == 1:
                return self
            return ParamScalar(self.mode, {e: _canonical_coeff(c * other) for e, c in self.terms.items()} if other else {})
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(key, 0) + ca * cb
                if s:
                    out[key] = s
                else:
                    del out[key]
        for key, val in out.items():
            out[key] = _canonical_coeff(val)
        return ParamScalar(self.mode, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k: int) -> "ParamScalar":
        if k < 0:
            return self.inv() ** (-k)
        result = self.mode.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inv(self) -> "ParamScalar":
        """Inverse of a unit.

        Only monomials with coefficient +-1 are units of the Laurent ring
        (every nonzero rational in numeric mode).
        """
        if len(self.terms) != 1:
            raise ValueError("not an invertible scalar")
        ((exps, c),) = self.terms.items()
        if self.mode.kind == "numeric":
            return ParamScalar(self.mode, {exps: _canonical_coeff(Fraction(1) / c)})
        if c not in (1, -1):
            raise ValueError("not a unit of the Laurent ring")
        return ParamScalar(self.mode, {tuple(-e for e in exps): c})

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.mode.scalar(other)
        return isinstance(other, ParamScalar) and self.mode == other.mode and self.terms == other.terms

    def __hash__(self):
        return hash((self.mode, frozenset(self.terms.items())))

    # -- specializations -----------------------------------------------------

    def specialize(self, assignment) -> Fraction:
        """Evaluate at a nonzero rational point; an exact ring homomorphism.

        ``assignment`` maps variable labels to nonzero rationals and must
        cover every variable that actually appears.
        """
        values = {}
        for label, val in assignment.items():
            val = _as_rational(val)
            if val == 0:
                raise ValueError(f"zero assignment for {label!r} not allowed")
            values[label] = val
        total = Fraction(0)
        variables = self.mode.variables
        for exps, c in self.terms.items():
            term = Fraction(c)
            for slot, e in enumerate(exps):
                if e == 0:
                    continue
                label = variables[slot]
                if label not in values:
                    raise ValueError(f"assignment missing variable {label!r}")
                term *= values[label] ** e
            total += term
        return total

    def to_single(self) -> "ParamScalar":
        """Collapse every q_ij to the one-parameter q; a ring homomorphism."""
        if self.mode.kind != "multi":
            raise ModeMismatchError("to_single expects a multiparameter scalar")
        single = ParamMode.single()
        terms: dict = {}
        for exps, c in self.terms.items():
            key = (sum(exps),)
            s = terms.get(key, 0) + c
            if s:
                terms[key] = s
            else:
                del terms[key]
        return ParamScalar(single, terms)

    # -- presentation ----------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items())

    def to_jsonable(self):
        return [{"exponents": list(e), "coeff": str(c)} for e, c in self.sorted_terms()]

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            factors = []
            for slot, e in enumerate(exps):
                if e == 0:
                    continue
                label = self.mode.variables[slot]
                name = "q" if label == "q" else f"q{label[0]}{label[1]}"
                factors.append(name if e == 1 else f"{name}^{e}")
            if not factors:
                body = str(abs(c))
            else:
                mag = abs(c) if isinstance(c, (int, Fraction)) else c
                body = "*".join(factors) if mag == 1 else "*".join([str(mag)] + factors)
            sign = "-" if (c < 0) else "+"
            parts.append((sign, body))
        out = parts[0][1] if parts[0][0] == "+" else "-" + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"ParamScalar({self})"
