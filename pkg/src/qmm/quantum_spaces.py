"""Quantum affine n-space, its exterior dual, and their coactions.

The affine algebra A is generated by x_1..x_n with x_j x_i = q_ij x_i x_j for
i < j; its PBW basis consists of the sorted monomials x^m = x_1^{m_1}...x_n^{m_n}.
The exterior dual A^! is generated by the evaluation-dual letters x^1..x^n
(<x^i, x_j> = delta_ij) with squares zero and x^l x^k = -q_kl^{-1} x^k x^l for
k < l.  Between them sits the wedge basis of the degree-m dual component: for a
subset J = (j_1 < ... < j_m) the element

    wedge(J) = sum over permutations pi of S_m of w(pi) x_{j_pi(1)} ... x_{j_pi(m)}

with inversion weight w(pi) = prod over inversions of (-q_ab)^{-1}.  The
parameters in w(pi) are indexed by the actual elements of J, pairs
(a, b) = (j_pi(j), j_pi(i)) with a < b, not by positions 1..m: the position
convention fails to annihilate the degree-m relations of A^! for any J other
than {1..m}, which is machine-checked by ``wedge_pairing_check`` (and its
negative twin in the test suite).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product

from .free_algebra import Alphabet, NCPoly, Word
from .param_ring import ParamMode, ParamScalar


@dataclass(frozen=True)
class WedgeElement:
    """A wedge basis vector: its subset and its expansion in the free algebra.

    The expansion is homogeneous of degree len(subset), the increasing word
    carries coefficient exactly 1, and it pairs to zero with every degree-m
    relation of the exterior dual.
    """

    subset: tuple[int, ...]
    expansion: NCPoly


class QuantumSpace:
    """Bundles n, the parameter mode, and both alphabets."""

    def __init__(self, n: int, mode: ParamMode):
        if n < 1:
            raise ValueError("need n >= 1")
        if mode.kind in ("multi", "numeric") and mode.n != n:
            raise ValueError(f"mode is for n={mode.n}, space is for n={n}")
        self.n = n
        self.mode = mode
        self.x = Alphabet("x", n)
        self.z = Alphabet("z", n)

    # -- the affine side -------------------------------------------------------

    def affine_normalize(self, word: Word) -> tuple[ParamScalar, tuple[int, ...]]:
        """PBW normal form of a free word: word = c * x^m in A.

        Stable insertion sort; every swap of x_j leftwards past x_i with i < j
        contributes one factor q_ij, so c is the product of q over the
        inversion pairs of the word.
        """
        counts: dict[tuple[int, int], int] = {}
        letters = bytes(word)
        length = len(letters)
        for p in range(length):
            for r in range(p + 1, length):
                if letters[p] > letters[r]:
                    pair = (letters[r] + 1, letters[p] + 1)
                    counts[pair] = counts.get(pair, 0) + 1
        coeff = self.mode.one()
        for (i, j), e in sorted(counts.items()):
            coeff = coeff * self.mode.q(i, j) ** e
        multidegree = [0] * self.n
        for c in letters:
            multidegree[c] += 1
        return coeff, tuple(multidegree)

    def monomial_word(self, m) -> Word:
        """The sorted word of the PBW monomial x^m."""
        out = bytearray()
        for i, e in enumerate(m):
            out.extend([i] * e)
        return bytes(out)

    def affine_basis(self, degree: int) -> list[tuple[int, ...]]:
        """All multidegrees of total degree ``degree``, in PBW word order."""
        if degree < 0:
            raise ValueError("degree must be >= 0")
        out: list[tuple[int, ...]] = []

        def rec(slot: int, remaining: int, prefix: tuple[int, ...]):
            if slot == self.n - 1:
                out.append(prefix + (remaining,))
                return
            for e in range(remaining, -1, -1):
                rec(slot + 1, remaining - e, prefix + (e,))

        rec(0, degree, ())
        return out

    # -- the exterior dual ---------------------------------------------------------

    def exterior_normalize(self, word: Word) -> NCPoly:
        """Normal form in the exterior dual: repeated letters kill the word,
        and each swap of a descending adjacent pair x^l x^k (k < l) costs
        -q_kl^{-1}.  The result is supported on one strictly increasing word
        (or is zero)."""
        letters = list(bytes(word))
        if len(set(letters)) != len(letters):
            return NCPoly.zero(self.x, self.mode)
        coeff = self.mode.one()
        for p in range(len(letters)):
            for r in range(p + 1, len(letters)):
                if letters[p] > letters[r]:
                    k, l = letters[r] + 1, letters[p] + 1
                    coeff = coeff * (-self.mode.q(k, l)).inv()
        return NCPoly.monomial(self.x, self.mode, bytes(sorted(letters)), coeff)

    def exterior_relation_generators(self) -> list[NCPoly]:
        """The n squares and C(n,2) q-anticommutators spanning the degree-2
        relations of the exterior dual, verbatim."""
        gens = []
        for l in range(1, self.n + 1):
            gens.append(NCPoly.monomial(self.x, self.mode, self.x.x_word([l, l])))
        for k in range(1, self.n + 1):
            for l in range(k + 1, self.n + 1):
                p = NCPoly.monomial(self.x, self.mode, self.x.x_word([k, l]))
                p = p + NCPoly.monomial(self.x, self.mode, self.x.x_word([l, k]), self.mode.q(k, l))
                gens.append(p)
        return gens

    # -- wedge basis -----------------------------------------------------------------

    def inversion_weight(self, subset, pi) -> ParamScalar:
        """w(pi) for pi a permutation of positions 0..m-1 of ``subset``.

        One factor (-q_ab)^{-1} per inversion, with (a, b) the subset elements
        at the inverted positions (a < b always, since the subset increases).
        """
        J = tuple(subset)
        w = self.mode.one()
        for a in range(len(J)):
            for b in range(a + 1, len(J)):
                if pi[a] > pi[b]:
                    i, j = J[pi[b]], J[pi[a]]
                    w = w * (-self.mode.q(i, j)).inv()
        return w

    def wedge_expand(self, subset) -> WedgeElement:
        """The wedge basis vector for a nonempty subset of {1..n}."""
        J = tuple(sorted(subset))
        if not J or not (1 <= J[0] and J[-1] <= self.n) or len(set(J)) != len(J):
            raise ValueError(f"need a nonempty subset of 1..{self.n}")
        terms = {}
        for pi in permutations(range(len(J))):
            word = self.x.x_word([J[p] for p in pi])
            terms[word] = self.inversion_weight(J, pi)
        return WedgeElement(J, NCPoly(self.x, self.mode, terms))

    def dual_relation_spanners(self, m: int):
        """Spanning family of the degree-m relations of the exterior dual:
        every u * r * v with r a degree-2 generator and |u| + |v| = m - 2."""
        gens = self.exterior_relation_generators()
        letters = range(self.x.size)
        for pos in range(m - 1):
            for u in product(letters, repeat=pos):
                for v in product(letters, repeat=m - 2 - pos):
                    for r in gens:
                        yield NCPoly(
                            self.x,
                            self.mode,
                            {bytes(u) + w + bytes(v): c for w, c in r.terms.items()},
                        )

    @staticmethod
    def pair_words(dual_poly: NCPoly, poly: NCPoly) -> ParamScalar:
        """Evaluation pairing extended to tensor words: the product of
        factorwise Kronecker deltas, i.e. equal words pair to 1."""
        a, b = dual_poly.terms, poly.terms
        if len(a) > len(b):
            a, b = b, a
        total = dual_poly.mode.zero()
        for w, c in a.items():
            other = b.get(w)
            if other is not None:
                total = total + c * other
        return total

    def vanishes_on_dual_relations(self, p: NCPoly, m: int) -> bool:
        """Whether a degree-m element of the free algebra pairs to zero with
        the whole degree-m relation space of the exterior dual."""
        return all(self.pair_words(s, p).is_zero() for s in self.dual_relation_spanners(m))

    def wedge_pairing_check(self, subset) -> bool:
        """True iff wedge(J) really lies in the dual of the degree-m component
        of the exterior algebra.  Vacuously true below degree 2."""
        J = tuple(sorted(subset))
        if len(J) < 2:
            return True
        return self.vanishes_on_dual_relations(self.wedge_expand(J).expansion, len(J))

    # -- coactions ------------------------------------------------------------------

    def z_gen(self, i: int, j: int) -> NCPoly:
        return NCPoly.monomial(self.z, self.mode, bytes([self.z.z(i, j)]))

    def coaction_affine(self, m) -> dict[tuple[int, ...], NCPoly]:
        """Coefficients b_{r,m} of the comodule-algebra coaction on x^m.

        Expands delta(x_1)^{m_1} ... delta(x_n)^{m_n} with delta(x_i) =
        sum_j z_i^j (x) x_j, normalizing the affine side after each factor.
        Every b_{r,m} is homogeneous of z-degree |m|.
        """
        states: dict[tuple[int, ...], NCPoly] = {
            (0,) * self.n: NCPoly.one(self.z, self.mode)
        }
        for i in range(1, self.n + 1):
            for _ in range(m[i - 1]):
                new: dict[tuple[int, ...], NCPoly] = {}
                for r, bpoly in states.items():
                    word_r = self.monomial_word(r)
                    for j in range(1, self.n + 1):
                        c, r2 = self.affine_normalize(word_r + bytes([j - 1]))
                        contrib = (bpoly * self.z_gen(i, j)).scale(c)
                        if r2 in new:
                            new[r2] = new[r2] + contrib
                        else:
                            new[r2] = contrib
                states = {r: p for r, p in new.items() if not p.is_zero()}
        return states

    def coaction_tensor(self, word: Word) -> dict[Word, NCPoly]:
        """Free-level coaction on a tensor word: no normalization anywhere.

        Maps x_{i_1} (x) ... (x) x_{i_m} to the family of coefficients
        z_{i_1}^{j_1} ... z_{i_m}^{j_m} indexed by the target word (j_1..j_m).
        """
        out: dict[Word, NCPoly] = {}
        m = len(word)
        for jword in product(range(1, self.n + 1), repeat=m):
            zword = self.z.z_word(zip((c + 1 for c in bytes(word)), jword))
            target = self.x.x_word(jword)
            out[target] = NCPoly.monomial(self.z, self.mode, zword)
        return out

    def coaction_tensor_poly(self, p: NCPoly) -> dict[Word, NCPoly]:
        """Linear extension of the free-level coaction to an x-polynomial."""
        out: dict[Word, NCPoly] = {}
        for w, c in p.terms.items():
            for target, zpoly in self.coaction_tensor(w).items():
                contrib = zpoly.scale(c)
                if target in out:
                    out[target] = out[target] + contrib
                else:
                    out[target] = contrib
        return {t: poly for t, poly in out.items() if not poly.is_zero()}
