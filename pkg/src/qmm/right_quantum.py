"""The bialgebra of the generic right-quantum matrix, and its relation ideal.

The algebra B is generated by z_i^j subject to the column relations

    z_j^l z_i^l = q_ij z_i^l z_j^l            (all l, i < j)

and the cross relations

    q_ij z_i^k z_j^l - q_kl z_j^l z_i^k = z_j^k z_i^l - q_kl q_ij z_i^l z_j^k
                                              (i < j, k < l).

B has no known confluent rewriting system, so "p = 0 in B" is decided one
degree at a time by linear algebra: the degree-d component of the two-sided
ideal is spanned by u*r*v over words u, v with |u| + |v| = d - 2, and
membership is reduction against a row-reduced form of that span.  Two
accelerations keep this desk-scale:

* a greedy rewrite pass with the column relations (oriented to sort equal
  upper indices by lower index) is confluent and projects both the query and
  the spanning rows onto column-sorted words, killing every column row
  outright;
* by default the parameters are specialized to random distinct odd primes and
  the elimination runs over exact rationals (integer rows with content
  stripping); membership is declared only when every draw agrees.  The
  ``exact`` flag switches to fraction-free elimination over the Laurent ring
  itself, feasible at small n and degree and used as ground truth.

Bases are cached per (mode, degree, specialization) and, when QMM_CACHE_DIR
is set, persisted as versioned JSON.
"""

from __future__ import annotations

import json
import math
import os
import threading
from bisect import insort
from fractions import Fraction
from hashlib import sha256
from itertools import permutations, product
from random import Random

from .free_algebra import Alphabet, NCPoly, Word, word_rank
from .param_ring import ParamMode, ParamScalar
from .quantum_spaces import QuantumSpace

ODD_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
               59, 61, 67, 71, 73, 79, 83, 89, 97)

_CACHE_VERSION = 1
_CACHE_ENV = "QMM_CACHE_DIR"


# ---------------------------------------------------------------------------
# relations


def build_relations(n: int, mode: ParamMode) -> list[NCPoly]:
    """The defining degree-2 relations of B: n*C(n,2) column relations
    followed by C(n,2)^2 cross relations, each as a free z-polynomial."""
    z = Alphabet("z", n)
    rels = []
    for l in range(1, n + 1):
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                p = NCPoly.monomial(z, mode, z.z_word([(j, l), (i, l)]))
                p = p + NCPoly.monomial(z, mode, z.z_word([(i, l), (j, l)]), -mode.q(i, j))
                rels.append(p)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(1, n + 1):
                for l in range(k + 1, n + 1):
                    qij, qkl = mode.q(i, j), mode.q(k, l)
                    p = NCPoly.monomial(z, mode, z.z_word([(i, k), (j, l)]), qij)
                    p = p + NCPoly.monomial(z, mode, z.z_word([(j, l), (i, k)]), -qkl)
                    p = p + NCPoly.monomial(z, mode, z.z_word([(j, k), (i, l)]), -mode.one())
                    p = p + NCPoly.monomial(z, mode, z.z_word([(i, l), (j, k)]), qkl * qij)
                    rels.append(p)
    return rels


def column_reduce(p: NCPoly) -> NCPoly:
    """Greedy rewrite with the column relations, oriented
    z_j^l z_i^l -> q_ij z_i^l z_j^l (i < j).

    Letters with a common upper index q-commute, so this bubble pass has a
    unique normal form (no adjacent pair with equal uppers and descending
    lowers) and changes p only by ideal elements.
    """
    n = p.alphabet.n
    mode = p.mode
    terms: dict[Word, ParamScalar] = {}
    for word, coeff in p.terms.items():
        letters = bytearray(word)
        pos = 0
        while pos < len(letters) - 1:
            a, b = letters[pos], letters[pos + 1]
            if a % n == b % n and a // n > b // n:
                letters[pos], letters[pos + 1] = b, a
                coeff = coeff * mode.q(b // n + 1, a // n + 1)
                pos = max(pos - 1, 0)
            else:
                pos += 1
        key = bytes(letters)
        acc = terms.get(key)
        acc = coeff if acc is None else acc + coeff
        if acc.is_zero():
            terms.pop(key, None)
        else:
            terms[key] = acc
    return NCPoly(p.alphabet, mode, terms)


# ---------------------------------------------------------------------------
# sparse echelon structures


def _strip_int(vec: dict) -> None:
    g = 0
    for v in vec.values():
        g = math.gcd(g, v)
        if g == 1:
            return
    if g > 1:
        for k in vec:
            vec[k] //= g


class IntEchelon:
    """Sparse row-reduced spanning set over Z (same Q-row-space).

    Rows are primitive integer vectors keyed by their pivot (smallest word
    index); combination is fraction-free with periodic content stripping.
    """

    __slots__ = ("pivots", "rows")

    def __init__(self):
        self.pivots: list[int] = []
        self.rows: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _combine(self, vec: dict[int, int], row: dict[int, int], pivot: int) -> None:
        a, b = vec[pivot], row[pivot]
        g = math.gcd(a, b)
        fa, fb = b // g, a // g
        if fa != 1:
            for k in vec:
                vec[k] *= fa
        for k, rv in row.items():
            nv = vec.get(k, 0) - fb * rv
            if nv:
                vec[k] = nv
            else:
                vec.pop(k, None)

    def reduce(self, vec: dict[int, int]) -> dict[int, int]:
        """Remainder of vec modulo the row space (up to a nonzero scalar)."""
        if not vec:
            return vec
        steps = 0
        start = 0
        lo = min(vec)
        while start < len(self.pivots) and self.pivots[start] < lo:
            start += 1
        for idx in range(start, len(self.pivots)):
            p = self.pivots[idx]
            if p in vec:
                self._combine(vec, self.rows[p], p)
                steps += 1
                if steps % 16 == 0:
                    _strip_int(vec)
        _strip_int(vec)
        return vec

    def contains(self, vec: dict[int, int]) -> bool:
        return not self.reduce(dict(vec))

    def reduce_rational(self, vec: dict[int, Fraction]) -> dict[int, Fraction]:
        """Exact remainder with unscaled coordinates (rational arithmetic)."""
        for p in self.pivots:
            c = vec.get(p)
            if not c:
                vec.pop(p, None)
                continue
            row = self.rows[p]
            factor = Fraction(c, row[p])
            for k, rv in row.items():
                nv = vec.get(k, 0) - factor * rv
                if nv:
                    vec[k] = nv
                else:
                    vec.pop(k, None)
        return {k: v for k, v in vec.items() if v}

    def insert(self, vec: dict[int, int]) -> bool:
        vec = self.reduce(vec)
        if not vec:
            return False
        pivot = min(vec)
        if vec[pivot] < 0:
            for k in vec:
                vec[k] = -vec[k]
        self.rows[pivot] = vec
        insort(self.pivots, pivot)
        return True

    def finalize(self) -> None:
        """Back-substitute to reduced echelon form: each pivot column appears
        in its own row only.  Processing pivots in decreasing order keeps this
        a single pass."""
        for idx in range(len(self.pivots) - 1, -1, -1):
            row = self.rows[self.pivots[idx]]
            for q in self.pivots[idx + 1:]:
                if q in row:
                    self._combine(row, self.rows[q], q)
            _strip_int(row)

    # -- persistence ------------------------------------------------------------

    def to_jsonable(self):
        return [
            [p, [[k, str(v)] for k, v in sorted(self.rows[p].items())]]
            for p in self.pivots
        ]

    @classmethod
    def from_jsonable(cls, data) -> "IntEchelon":
        basis = cls()
        for p, row in data:
            basis.rows[p] = {k: int(v) for k, v in row}
            basis.pivots.append(p)
        basis.pivots.sort()
        return basis


def _strip_symbolic(mode: ParamMode, vec: dict) -> None:
    """Divide a symbolic row by its content: the integer gcd of all
    coefficients and the common monomial factor (a unit of the Laurent ring)."""
    g = 0
    mins = None
    for s in vec.values():
        for exps, c in s.terms.items():
            g = math.gcd(g, c if isinstance(c, int) else 0)
            mins = exps if mins is None else tuple(map(min, mins, exps))
    if mins is None:
        return
    if g == 0:
        g = 1
    if g == 1 and not any(mins):
        return
    for k, s in vec.items():
        vec[k] = ParamScalar(
            mode,
            {tuple(e - m for e, m in zip(exps, mins)): c // g for exps, c in s.terms.items()},
        )


class SymbolicEchelon:
    """Row-reduced spanning set over the Laurent ring itself.

    Fraction-free: combining scales the working vector by the pivot
    coefficient, which is harmless over a domain.  ``reduce`` therefore
    returns the remainder together with the accumulated multiplier.
    """

    __slots__ = ("mode", "pivots", "rows")

    def __init__(self, mode: ParamMode):
        self.mode = mode
        self.pivots: list[int] = []
        self.rows: dict[int, dict[int, ParamScalar]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: dict, strip: bool = True) -> tuple[dict, ParamScalar]:
        """Eliminate every pivot from vec; returns (remainder, multiplier).

        With ``strip`` the remainder is divided by its content as it goes and
        the multiplier is only meaningful up to content (enough for zero
        tests); without it the exact invariant holds:
        remainder = multiplier * vec - (row-space element).
        """
        multiplier = self.mode.one()
        for p in self.pivots:
            a = vec.get(p)
            if a is None:
                continue
            if a.is_zero():
                del vec[p]
                continue
            row = self.rows[p]
            b = row[p]
            multiplier = multiplier * b
            for k in list(vec):
                vec[k] = vec[k] * b
            for k, rv in row.items():
                nv = vec.get(k)
                nv = -(a * rv) if nv is None else nv - a * rv
                if nv.is_zero():
                    vec.pop(k, None)
                else:
                    vec[k] = nv
            if strip:
                _strip_symbolic(self.mode, vec)
        return vec, multiplier

    def contains(self, vec: dict) -> bool:
        remainder, _ = self.reduce(dict(vec))
        return not remainder

    def insert(self, vec: dict) -> bool:
        vec, _ = self.reduce(vec)
        if not vec:
            return False
        _strip_symbolic(self.mode, vec)
        pivot = min(vec)
        lead_exp = min(vec[pivot].terms)
        if vec[pivot].terms[lead_exp] < 0:
            for k in vec:
                vec[k] = -vec[k]
        self.rows[pivot] = vec
        insort(self.pivots, pivot)
        return True

    def finalize(self) -> None:
        """Back-substitute to reduced echelon form (see IntEchelon.finalize)."""
        for idx in range(len(self.pivots) - 1, -1, -1):
            p = self.pivots[idx]
            row = self.rows[p]
            for q in self.pivots[idx + 1:]:
                a = row.get(q)
                if a is None:
                    continue
                other = self.rows[q]
                b = other[q]
                for k in list(row):
                    row[k] = row[k] * b
                for k, rv in other.items():
                    nv = row.get(k)
                    nv = -(a * rv) if nv is None else nv - a * rv
                    if nv.is_zero():
                        row.pop(k, None)
                    else:
                        row[k] = nv
            _strip_symbolic(self.mode, row)

    def to_jsonable(self):
        return [
            [p, [[k, v.to_jsonable()] for k, v in sorted(self.rows[p].items())]]
            for p in self.pivots
        ]

    @classmethod
    def from_jsonable(cls, mode: ParamMode, data) -> "SymbolicEchelon":
        basis = cls(mode)
        for p, row in data:
            basis.rows[p] = {k: _scalar_from_jsonable(mode, v) for k, v in row}
            basis.pivots.append(p)
        basis.pivots.sort()
        return basis


def _scalar_from_jsonable(mode: ParamMode, records) -> ParamScalar:
    terms = {}
    for rec in records:
        coeff = Fraction(rec["coeff"])
        coeff = int(coeff) if coeff.denominator == 1 else coeff
        terms[tuple(rec["exponents"])] = coeff
    return ParamScalar(mode, terms)


# ---------------------------------------------------------------------------
# specialization draws


def specialization_draws(mode: ParamMode, count: int, seed: int) -> list[dict]:
    """``count`` independent assignments of distinct odd primes in [3, 97] to
    the parameters, drawn from Python's Mersenne-Twister ``random.Random``
    seeded with ``seed``.  Reports quoting (seed, count) are replayable."""
    rng = Random(seed)
    draws = []
    for _ in range(count):
        primes = rng.sample(ODD_PRIMES, len(mode.variables))
        draws.append({label: Fraction(p) for label, p in zip(mode.variables, primes)})
    return draws


# ---------------------------------------------------------------------------
# the membership oracle


class IdealOracle:
    """Graded membership oracle for the two-sided relation ideal of B.

    One oracle fixes the decision policy (exact-symbolic, or agreement across
    ``draws`` rational specializations derived from ``seed``); per-degree
    bases are built lazily, cached in memory, and optionally persisted.
    """

    _memory_cache: dict = {}
    _build_locks: dict = {}
    _lock = threading.Lock()

    def __init__(self, n: int, mode: ParamMode, exact: bool = False, seed: int = 0, draws: int = 3):
        self.n = n
        self.mode = mode
        self.z = Alphabet("z", n)
        # numeric mode has no symbols left: membership is a single exact run
        self.exact = bool(exact) or mode.kind == "numeric"
        self.seed = seed
        if not self.exact and draws < 1:
            raise ValueError("specialized mode needs at least one draw")
        self.assignments = [] if self.exact else specialization_draws(mode, draws, seed)
        self.relations = build_relations(n, mode)

    # -- basis construction ------------------------------------------------------

    def _key(self, degree: int, draw: int | None):
        assignment = None if draw is None else tuple(
            (str(k), str(v)) for k, v in sorted(self.assignments[draw].items())
        )
        return (_CACHE_VERSION, self.n, self.mode.cache_key(), degree, assignment)

    def basis(self, degree: int, draw: int | None):
        key = self._key(degree, draw)
        with self._lock:
            cached = self._memory_cache.get(key)
            if cached is not None:
                return cached
            build_lock = self._build_locks.setdefault(key, threading.Lock())
        # single writer per key; finished bases are immutable and shared
        with build_lock:
            with self._lock:
                cached = self._memory_cache.get(key)
            if cached is not None:
                return cached
            basis = _load_persistent(self.mode, key)
            if basis is None:
                basis = self._build(degree, draw)
                _save_persistent(key, basis)
            with self._lock:
                self._memory_cache[key] = basis
                self._build_locks.pop(key, None)
        return basis

    def _build(self, degree: int, draw: int | None):
        size = self.z.size
        assignment = None if draw is None else self.assignments[draw]
        if assignment is None and self.mode.kind != "numeric":
            basis = SymbolicEchelon(self.mode)
            convert = self._symbolic_vector
        else:
            basis = IntEchelon()
            convert = lambda p: self._int_vector(p, assignment)
        for left_len in range(degree - 1):
            right_len = degree - 2 - left_len
            for u in product(range(size), repeat=left_len):
                ub = bytes(u)
                for rel in self.relations:
                    for v in product(range(size), repeat=right_len):
                        vb = bytes(v)
                        row = NCPoly(
                            self.z,
                            self.mode,
                            {ub + w + vb: c for w, c in rel.terms.items()},
                        )
                        vec = convert(column_reduce(row))
                        if vec:
                            basis.insert(vec)
        basis.finalize()
        return basis

    def _symbolic_vector(self, p: NCPoly) -> dict:
        size = self.z.size
        return {word_rank(w, size): c for w, c in p.terms.items()}

    def _int_vector(self, p: NCPoly, assignment) -> dict:
        size = self.z.size
        values = {}
        for w, c in p.terms.items():
            val = c.specialize(assignment) if assignment is not None else c.specialize({})
            if val:
                values[word_rank(w, size)] = val
        if not values:
            return {}
        denom = math.lcm(*(v.denominator for v in values.values()))
        vec = {k: int(v * denom) for k, v in values.items()}
        _strip_int(vec)
        return vec

    def _rational_vector(self, p: NCPoly, assignment) -> dict:
        size = self.z.size
        out = {}
        for w, c in p.terms.items():
            val = c.specialize(assignment) if assignment is not None else c.specialize({})
            if val:
                out[word_rank(w, size)] = val
        return out

    # -- membership -----------------------------------------------------------------

    def _checked_degree(self, p: NCPoly):
        if p.alphabet != self.z:
            raise ValueError("membership expects a z-polynomial over this oracle's n")
        if p.mode != self.mode:
            raise ValueError("membership expects this oracle's parameter mode")
        d = p.homogeneous_degree()
        if d is None:
            raise ValueError("membership is graded: input must be homogeneous")
        return d

    def contains(self, p: NCPoly) -> bool:
        """Whether p vanishes in B, i.e. lies in the degree-|p| component of
        the relation ideal.  Nonzero inputs below degree 2 are never members."""
        d = self._checked_degree(p)
        if p.is_zero():
            return True
        if d < 2:
            return False
        p = column_reduce(p)
        if p.is_zero():
            return True
        if self.exact:
            if self.mode.kind == "numeric":
                return self.basis(d, None).contains(self._int_vector(p, None))
            return self.basis(d, None).contains(self._symbolic_vector(p))
        return all(
            self.basis(d, i).contains(self._int_vector(p, self.assignments[i]))
            for i in range(len(self.assignments))
        )

    def contains_tensor(self, tp: "TensorPoly") -> bool:
        """Membership in ideal(x)B + B(x)ideal for an element of B(x)B whose
        tensor legs are homogeneous of one common degree.

        Reduce every right-word column by the ideal basis on the left leg;
        what survives has left coordinates in a complement of the ideal, so
        the whole element is a member iff each surviving left coordinate's
        right vector is itself a member.
        """
        if tp.is_zero():
            return True
        degrees = {len(wl) for wl, _ in tp.terms} | {len(wr) for _, wr in tp.terms}
        if len(degrees) != 1:
            raise ValueError("tensor membership expects matching homogeneous legs")
        d = degrees.pop()
        if d < 2:
            return False
        tp = tp.column_reduce()
        if tp.is_zero():
            return True
        if self.exact and self.mode.kind != "numeric":
            return self._contains_tensor_symbolic(tp, d)
        draws = [None] if self.mode.kind == "numeric" else range(len(self.assignments))
        return all(self._contains_tensor_specialized(tp, d, i) for i in draws)

    def _contains_tensor_specialized(self, tp: "TensorPoly", d: int, draw) -> bool:
        basis = self.basis(d, draw)
        assignment = None if draw is None else self.assignments[draw]
        size = self.z.size
        columns: dict[int, dict[int, Fraction]] = {}
        for (wl, wr), c in tp.terms.items():
            val = c.specialize(assignment) if assignment is not None else c.specialize({})
            if val:
                columns.setdefault(word_rank(wr, size), {})[word_rank(wl, size)] = val
        rows: dict[int, dict[int, Fraction]] = {}
        for ridx, col in columns.items():
            for lidx, val in basis.reduce_rational(col).items():
                rows.setdefault(lidx, {})[ridx] = val
        for rvec in rows.values():
            denom = math.lcm(*(v.denominator for v in rvec.values()))
            vec = {k: int(v * denom) for k, v in rvec.items()}
            _strip_int(vec)
            if not basis.contains(vec):
                return False
        return True

    def _contains_tensor_symbolic(self, tp: "TensorPoly", d: int) -> bool:
        basis = self.basis(d, None)
        size = self.z.size
        columns: dict[int, dict[int, ParamScalar]] = {}
        for (wl, wr), c in tp.terms.items():
            columns.setdefault(word_rank(wr, size), {})[word_rank(wl, size)] = c
        remainders = {}
        multipliers = {}
        for ridx, col in columns.items():
            rem, mult = basis.reduce(col, strip=False)
            if rem:
                remainders[ridx] = rem
                multipliers[ridx] = mult
        # undo the per-column fraction-free scaling: multiply column r by
        # prod(multipliers)/multipliers[r], a ring element, before testing rows
        rows: dict[int, dict[int, ParamScalar]] = {}
        for ridx, rem in remainders.items():
            scale = self.mode.one()
            for other, m in multipliers.items():
                if other != ridx:
                    scale = scale * m
            for lidx, val in rem.items():
                rows.setdefault(lidx, {})[ridx] = val * scale
        for rvec in rows.values():
            _strip_symbolic(self.mode, rvec)
            if not basis.contains(rvec):
                return False
        return True


# ---------------------------------------------------------------------------
# persistence


def _cache_path(key) -> str | None:
    directory = os.environ.get(_CACHE_ENV)
    if not directory:
        return None
    digest = sha256(repr(key).encode()).hexdigest()[:24]
    return os.path.join(directory, f"qmm_basis_v{_CACHE_VERSION}_{digest}.json")


def _load_persistent(mode: ParamMode, key):
    path = _cache_path(key)
    if path is None or not os.path.exists(path):
        return None
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError):
        return None
    if data.get("key") != _jsonable_key(key):
        return None
    if data.get("symbolic"):
        return SymbolicEchelon.from_jsonable(mode, data["rows"])
    return IntEchelon.from_jsonable(data["rows"])


def _save_persistent(key, basis) -> None:
    path = _cache_path(key)
    if path is None:
        return
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    payload = {
        "version": _CACHE_VERSION,
        "key": _jsonable_key(key),
        "symbolic": isinstance(basis, SymbolicEchelon),
        "rows": basis.to_jsonable(),
    }
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(payload, fh)
    os.replace(tmp, path)


def _jsonable_key(key):
    def walk(obj):
        if isinstance(obj, tuple):
            return [walk(x) for x in obj]
        return obj

    return walk(key)


# ---------------------------------------------------------------------------
# matrices and the quantum determinant


class QMatrix:
    """An n x n matrix: either the generic z-matrix Z, or entries from a
    commutative ring with exact zero-test (ParamScalar values)."""

    __slots__ = ("n", "mode", "entries")

    def __init__(self, n: int, mode: ParamMode, entries=None):
        self.n = n
        self.mode = mode
        if entries is not None:
            if len(entries) != n or any(len(row) != n for row in entries):
                raise ValueError(f"need an {n}x{n} matrix")
            entries = [[mode.scalar(e) for e in row] for row in entries]
        self.entries = entries

    @classmethod
    def generic(cls, n: int, mode: ParamMode) -> "QMatrix":
        return cls(n, mode, None)

    @property
    def is_generic(self) -> bool:
        return self.entries is None

    def entry(self, i: int, j: int) -> ParamScalar:
        return self.entries[i - 1][j - 1]


def qdet(Z: QMatrix, subset=None):
    """The quantum determinant of the submatrix on ``subset`` (default all of
    1..n): the inversion-weighted permutation sum

        sum over pi of w(pi) z^{j_1}_{j_pi(1)} ... z^{j_m}_{j_pi(m)},

    sharing the J-mapped weight convention with the wedge basis.  Returns an
    NCPoly for the generic matrix, a scalar otherwise.
    """
    n, mode = Z.n, Z.mode
    J = tuple(sorted(subset)) if subset is not None else tuple(range(1, n + 1))
    if not J or J[0] < 1 or J[-1] > n or len(set(J)) != len(J):
        raise ValueError(f"need a nonempty subset of 1..{n}")
    space = QuantumSpace(n, mode)
    m = len(J)
    if Z.is_generic:
        z = Alphabet("z", n)
        acc = NCPoly.zero(z, mode)
        for pi in permutations(range(m)):
            w = space.inversion_weight(J, pi)
            word = z.z_word((J[pi[k]], J[k]) for k in range(m))
            acc = acc + NCPoly.monomial(z, mode, word, w)
        return acc
    acc = mode.zero()
    for pi in permutations(range(m)):
        term = space.inversion_weight(J, pi)
        for k in range(m):
            term = term * Z.entry(J[pi[k]], J[k])
        acc = acc + term
    return acc


def is_right_quantum(M: QMatrix) -> bool:
    """Whether a matrix with commuting, zero-testable entries satisfies every
    column and cross relation (the generic matrix does by construction)."""
    if M.is_generic:
        return True
    z = Alphabet("z", M.n)
    for rel in build_relations(M.n, M.mode):
        total = M.mode.zero()
        for word, coeff in rel.terms.items():
            term = coeff
            for letter in word:
                i, j = z.z_indices(letter)
                term = term * M.entry(i, j)
            total = total + term
        if not total.is_zero():
            return False
    return True


# ---------------------------------------------------------------------------
# comultiplication


class TensorPoly:
    """An element of B (x) B at the free level: scalar combinations of pairs
    of z-words.  Multiplication is factorwise concatenation."""

    __slots__ = ("alphabet", "mode", "terms")

    def __init__(self, alphabet: Alphabet, mode: ParamMode, terms: dict):
        self.alphabet = alphabet
        self.mode = mode
        self.terms = terms

    @classmethod
    def zero(cls, alphabet: Alphabet, mode: ParamMode) -> "TensorPoly":
        return cls(alphabet, mode, {})

    @classmethod
    def outer(cls, a: NCPoly, b: NCPoly) -> "TensorPoly":
        terms = {}
        for wa, ca in a.terms.items():
            for wb, cb in b.terms.items():
                terms[(wa, wb)] = ca * cb
        return cls(a.alphabet, a.mode, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "TensorPoly") -> "TensorPoly":
        terms = dict(self.terms)
        for k, c in other.terms.items():
            s = terms.get(k)
            s = c if s is None else s + c
            if s.is_zero():
                terms.pop(k, None)
            else:
                terms[k] = s
        return TensorPoly(self.alphabet, self.mode, terms)

    def __neg__(self) -> "TensorPoly":
        return TensorPoly(self.alphabet, self.mode, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "TensorPoly") -> "TensorPoly":
        return self.__add__(other.__neg__())

    def __mul__(self, other: "TensorPoly") -> "TensorPoly":
        out: dict = {}
        for (la, ra), ca in self.terms.items():
            for (lb, rb), cb in other.terms.items():
                key = (la + lb, ra + rb)
                c = ca * cb
                s = out.get(key)
                s = c if s is None else s + c
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        return TensorPoly(self.alphabet, self.mode, out)

    def scale(self, coeff) -> "TensorPoly":
        coeff = self.mode.scalar(coeff)
        if coeff.is_zero():
            return TensorPoly.zero(self.alphabet, self.mode)
        return TensorPoly(self.alphabet, self.mode, {k: c * coeff for k, c in self.terms.items()})

    def column_reduce(self) -> "TensorPoly":
        """Column rewriting on each tensor leg independently; both passes move
        the element only inside ideal(x)B + B(x)ideal."""
        out = TensorPoly.zero(self.alphabet, self.mode)
        for (wl, wr), c in self.terms.items():
            left = column_reduce(NCPoly.monomial(self.alphabet, self.mode, wl, c))
            right = column_reduce(NCPoly.monomial(self.alphabet, self.mode, wr))
            out = out + TensorPoly.outer(left, right)
        return out

    def __eq__(self, other):
        return (
            isinstance(other, TensorPoly)
            and self.alphabet == other.alphabet
            and self.mode == other.mode
            and self.terms == other.terms
        )


def comultiply(p: NCPoly) -> TensorPoly:
    """Delta applied letterwise, z_i^j -> sum_l z_i^l (x) z_l^j, and extended
    multiplicatively; the empty word maps to 1 (x) 1."""
    n = p.alphabet.n
    z = p.alphabet
    out = TensorPoly.zero(z, p.mode)
    for word, coeff in p.terms.items():
        acc = TensorPoly(z, p.mode, {(b"", b""): p.mode.one()})
        for letter in word:
            i, j = z.z_indices(letter)
            step = TensorPoly(
                z,
                p.mode,
                {
                    (bytes([z.z(i, l)]), bytes([z.z(l, j)])): p.mode.one()
                    for l in range(1, n + 1)
                },
            )
            acc = acc * step
        out = out + acc.scale(coeff)
    return out


def counit(p: NCPoly) -> ParamScalar:
    """epsilon(z_i^j) = delta_ij, extended multiplicatively."""
    z = p.alphabet
    total = p.mode.zero()
    for word, coeff in p.terms.items():
        if all(letter // z.n == letter % z.n for letter in word):
            total = total + coeff
    return total


def counit_left(tp: TensorPoly) -> NCPoly:
    """(epsilon (x) id) applied to an element of B (x) B."""
    z = tp.alphabet
    acc = NCPoly.zero(z, tp.mode)
    for (wl, wr), c in tp.terms.items():
        if all(letter // z.n == letter % z.n for letter in wl):
            acc = acc + NCPoly.monomial(z, tp.mode, wr, c)
    return acc
