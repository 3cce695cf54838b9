"""Classical Weyl groups (types A, B, C, D) as signed permutations.

Conventions (ambient coordinates e_1..e_m):

* type A, rank n: m = n + 1 letters, alpha_i = e_i - e_{i+1};
* type B, rank n: m = n, alpha_n = e_n;
* type C, rank n: m = n, alpha_n = 2 e_n;
* type D, rank n: m = n, alpha_n = e_{n-1} + e_n.

An element is a signed permutation w with w(e_i) = e_{w(i)}, where a
negative value -k means -e_k.  Type A elements have no sign flips and
type D elements flip an even number of signs.  Types B and C share the
same group but keep distinct root data, since restriction formulas
depend on the roots themselves.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DomainError
from .poset import GradedPoset


class UnsupportedType(DomainError):
    code = "unsupported-type"


class RankTooLarge(DomainError):
    code = "rank-too-large"


class NotARoot(DomainError):
    code = "not-a-root"


class MixedGroups(DomainError):
    code = "mixed-groups"


ORDER_CAP = 10**6


class GroupElement:
    """A signed permutation; ``signed[i-1]`` is the signed image of i."""

    __slots__ = ("signed",)

    def __init__(self, signed):
        self.signed = tuple(signed)

    def __mul__(self, other):
        # (u v)(i) = u(v(i)), extended by u(-k) = -u(k)
        u, v = self.signed, other.signed
        out = []
        for i in range(1, len(u) + 1):
            k = v[i - 1]
            out.append(u[k - 1] if k > 0 else -u[-k - 1])
        return GroupElement(out)

    def inverse(self):
        out = [0] * len(self.signed)
        for i, k in enumerate(self.signed, start=1):
            if k > 0:
                out[k - 1] = i
            else:
                out[-k - 1] = -i
        return GroupElement(out)

    def act_vector(self, vec):
        """Image of an ambient coordinate vector under this element."""
        out = [0] * len(self.signed)
        for i, c in enumerate(vec):
            if c:
                k = self.signed[i]
                if k > 0:
                    out[k - 1] += c
                else:
                    out[-k - 1] -= c
        return tuple(out)

    @property
    def is_identity(self):
        return all(k == i for i, k in enumerate(self.signed, start=1))

    def one_line(self):
        return "[" + ",".join(str(k) for k in self.signed) + "]"

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.signed == other.signed

    def __hash__(self):
        return hash(self.signed)

    def __repr__(self):
        return f"GroupElement({self.one_line()})"


def _simple_roots(lie_type, n):
    if lie_type == "A":
        m = n + 1
        simples = []
        for i in range(n):
            v = [0] * m
            v[i], v[i + 1] = 1, -1
            simples.append(tuple(v))
        return m, simples
    m = n
    simples = []
    for i in range(n - 1):
        v = [0] * m
        v[i], v[i + 1] = 1, -1
        simples.append(tuple(v))
    last = [0] * m
    if lie_type == "B":
        last[n - 1] = 1
    elif lie_type == "C":
        last[n - 1] = 2
    else:  # D
        last[n - 2], last[n - 1] = 1, 1
    simples.append(tuple(last))
    return m, simples


def _positive_roots(lie_type, n):
    roots = []
    if lie_type == "A":
        m = n + 1
        for i in range(m):
            for j in range(i + 1, m):
                v = [0] * m
                v[i], v[j] = 1, -1
                roots.append(tuple(v))
        return roots
    m = n
    for i in range(m):
        for j in range(i + 1, m):
            v = [0] * m
            v[i], v[j] = 1, -1
            roots.append(tuple(v))
            v = [0] * m
            v[i], v[j] = 1, 1
            roots.append(tuple(v))
    if lie_type == "B":
        for i in range(m):
            v = [0] * m
            v[i] = 1
            roots.append(tuple(v))
    elif lie_type == "C":
        for i in range(m):
            v = [0] * m
            v[i] = 2
            roots.append(tuple(v))
    return roots


class RootSystem:
    def __init__(self, lie_type, n):
        self.lie_type = lie_type
        self.rank = n
        self.dim, simples = _simple_roots(lie_type, n)
        self.simple_roots = tuple(simples)
        self.positive_roots = tuple(_positive_roots(lie_type, n))
        self.negative_roots = tuple(tuple(-c for c in r) for r in self.positive_roots)
        self._pos = frozenset(self.positive_roots)
        self._neg = frozenset(self.negative_roots)
        self._coords = {}

    def is_root(self, vec):
        return vec in self._pos or vec in self._neg

    def is_positive(self, vec):
        return vec in self._pos

    def is_negative(self, vec):
        return vec in self._neg

    def simple_coords(self, vec):
        """Coefficients of ``vec`` over the simple roots (exact)."""
        cached = self._coords.get(vec)
        if cached is not None:
            return cached
        # Gaussian elimination on the dim x rank system; simple roots are
        # linearly independent so the solution is unique when it exists.
        n = self.rank
        rows = [
            [Fraction(self.simple_roots[j][i]) for j in range(n)] + [Fraction(vec[i])]
            for i in range(self.dim)
        ]
        pivots = []
        r = 0
        for c in range(n):
            pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
            if pivot is None:
                continue
            rows[r], rows[pivot] = rows[pivot], rows[r]
            pv = rows[r][c]
            rows[r] = [x / pv for x in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][c] != 0:
                    factor = rows[i][c]
                    rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
        if any(row[-1] != 0 for row in rows[r:]):
            raise NotARoot(f"{vec} is not in the root lattice span")
        sol = [Fraction(0)] * n
        for idx, c in enumerate(pivots):
            sol[c] = rows[idx][-1]
        result = tuple(sol)
        self._coords[vec] = result
        return result


def weyl_order(lie_type, n):
    if lie_type == "A":
        return math.factorial(n + 1)
    if lie_type in ("B", "C"):
        return 2**n * math.factorial(n)
    return 2 ** (n - 1) * math.factorial(n)


class WeylGroup:
    """A finite Weyl group context: roots, elements, Bruhat order."""

    def __init__(self, lie_type, n):
        lie_type = lie_type.upper()
        if lie_type not in ("A", "B", "C", "D"):
            raise UnsupportedType(f"unsupported Lie type {lie_type!r}")
        if n < 1 or (lie_type == "D" and n < 2):
            raise DomainError(f"rank {n} too small for type {lie_type}")
        if weyl_order(lie_type, n) > ORDER_CAP:
            raise RankTooLarge(f"|W| for {lie_type}{n} exceeds cap {ORDER_CAP}")
        self.lie_type = lie_type
        self.rank = n
        self.roots = RootSystem(lie_type, n)
        self.dim = self.roots.dim
        self.identity = GroupElement(range(1, self.dim + 1))
        self._simple = [None]  # 1-indexed
        for i in range(1, n + 1):
            self._simple.append(self._make_simple(i))
        self.elements = self._generate()
        self._elements_set = frozenset(self.elements)
        self._length = {}
        self._bruhat = {}
        self._words = {}
        self._reflections = None

    def _make_simple(self, i):
        m = self.dim
        signed = list(range(1, m + 1))
        if self.lie_type == "A" or i < self.rank:
            signed[i - 1], signed[i] = signed[i], signed[i - 1]
        elif self.lie_type in ("B", "C"):
            signed[m - 1] = -m
        else:  # D, i == n
            signed[m - 2], signed[m - 1] = -m, -(m - 1)
        return GroupElement(signed)

    def _generate(self):
        frontier = [self.identity]
        seen = {self.identity}
        out = [self.identity]
        gens = self._simple[1:]
        while frontier:
            nxt = []
            for w in frontier:
                for s in gens:
                    u = w * s
                    if u not in seen:
                        seen.add(u)
                        out.append(u)
                        nxt.append(u)
            frontier = nxt
        return tuple(out)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, w):
        return w in self._elements_set

    def simple_reflection(self, i):
        if not 1 <= i <= self.rank:
            raise DomainError(f"no simple reflection s{i} in rank {self.rank}")
        return self._simple[i]

    def require_element(self, w):
        if w not in self._elements_set:
            raise MixedGroups(f"{w!r} is not an element of {self.lie_type}{self.rank}")

    # -- roots -----------------------------------------------------------

    def act_on_root(self, w, root):
        root = tuple(root)
        if not self.roots.is_root(root):
            raise NotARoot(f"{root} is not a root of {self.lie_type}{self.rank}")
        return w.act_vector(root)

    def reflection(self, root):
        """The reflection through ``root`` as a group element."""
        root = tuple(root)
        if not self.roots.is_root(root):
            raise NotARoot(f"{root} is not a root")
        norm = sum(Fraction(c) ** 2 for c in root)
        signed = []
        for i in range(self.dim):
            coeff = Fraction(2 * root[i]) / norm
            image = [Fraction(1 if j == i else 0) - coeff * root[j] for j in range(self.dim)]
            nonzero = [(j, c) for j, c in enumerate(image) if c != 0]
            if len(nonzero) != 1 or abs(nonzero[0][1]) != 1:
                raise NotARoot(f"reflection in {root} is not a signed permutation")
            j, c = nonzero[0]
            signed.append((j + 1) if c > 0 else -(j + 1))
        t = GroupElement(signed)
        self.require_element(t)
        return t

    # -- length, descents, words ------------------------------------------

    def length(self, w):
        cached = self._length.get(w)
        if cached is not None:
            return cached
        n = sum(1 for a in self.roots.positive_roots if self.roots.is_negative(w.act_vector(a)))
        self._length[w] = n
        return n

    def is_right_ascent(self, w, i):
        # l(w s_i) > l(w)  iff  w(alpha_i) > 0
        return self.roots.is_positive(w.act_vector(self.roots.simple_roots[i - 1]))

    def right_descents(self, w):
        return frozenset(i for i in range(1, self.rank + 1) if not self.is_right_ascent(w, i))

    def reduced_word(self, w):
        """Deterministic reduced word: greedily strip the smallest left descent.

        This choice reproduces the conventional labels s_{i_1}.s_{i_2}...
        seen in hand-drawn Bruhat diagrams (e.g. ``s2.s1.s3.s2``).
        """
        cached = self._words.get(w)
        if cached is not None:
            return cached
        word = []
        cur = w
        while not cur.is_identity:
            inv = cur.inverse()
            i = next(
                i
                for i in range(1, self.rank + 1)
                if self.roots.is_negative(inv.act_vector(self.roots.simple_roots[i - 1]))
            )
            word.append(i)
            cur = self._simple[i] * cur
        result = tuple(word)
        self._words[w] = result
        return result

    def all_reduced_words(self, w):
        if w.is_identity:
            return [()]
        out = []
        for i in sorted(self.right_descents(w)):
            for sub in self.all_reduced_words(w * self._simple[i]):
                out.append(sub + (i,))
        return out

    def word_to_element(self, word):
        cur = self.identity
        for i in word:
            cur = cur * self.simple_reflection(i)
        return cur

    # -- Bruhat order ------------------------------------------------------

    def bruhat_leq(self, u, w):
        """u <= w in Bruhat order, by the descent recursion (memoized)."""
        if u.is_identity:
            return True
        if self.length(u) > self.length(w):
            return False
        key = (u.signed, w.signed)
        cached = self._bruhat.get(key)
        if cached is not None:
            return cached
        i = min(self.right_descents(w))
        s = self._simple[i]
        ws = w * s
        if self.is_right_ascent(u, i):
            result = self.bruhat_leq(u, ws)
        else:
            result = self.bruhat_leq(u * s, ws)
        self._bruhat[key] = result
        return result

    def max_parabolic(self, J):
        """Longest element of the parabolic subgroup generated by {s_j : j in J}."""
        J = sorted(set(J))
        for j in J:
            if not 1 <= j <= self.rank:
                raise DomainError(f"index {j} outside 1..{self.rank}")
        w = self.identity
        while True:
            for j in J:
                if self.is_right_ascent(w, j):
                    w = w * self._simple[j]
                    break
            else:
                return w

    # -- ids and parsing -----------------------------------------------------

    def element_id(self, w):
        word = self.reduced_word(w)
        return "e" if not word else ".".join(f"s{i}" for i in word)

    def parse_word(self, text):
        text = text.strip()
        if text in ("e", ""):
            return self.identity
        word = []
        for token in text.split("."):
            token = token.strip()
            if not token.startswith("s"):
                raise DomainError(f"bad generator token {token!r}")
            try:
                word.append(int(token[1:]))
            except ValueError:
                raise DomainError(f"bad generator token {token!r}") from None
        return self.word_to_element(word)

    def parse_one_line(self, text):
        text = text.strip()
        if not (text.startswith("[") and text.endswith("]")):
            raise DomainError(f"bad one-line notation {text!r}")
        try:
            signed = tuple(int(tok) for tok in text[1:-1].split(","))
        except ValueError:
            raise DomainError(f"bad one-line notation {text!r}") from None
        w = GroupElement(signed)
        if len(signed) != self.dim or sorted(abs(k) for k in signed) != list(range(1, self.dim + 1)):
            raise DomainError(f"{text!r} is not a signed permutation of 1..{self.dim}")
        self.require_element(w)
        return w

    def parse_element(self, text):
        text = text.strip()
        if text.startswith("["):
            return self.parse_one_line(text)
        return self.parse_word(text)

    # -- the Bruhat board ------------------------------------------------------

    def to_poset(self, restrict_to_lengths=None):
        """The Bruhat order as a graded poset, rank = Bruhat length."""
        elems = list(self.elements)
        if restrict_to_lengths is not None:
            allowed = set(restrict_to_lengths)
            elems = [w for w in elems if self.length(w) in allowed]
        by_len = {}
        for w in elems:
            by_len.setdefault(self.length(w), []).append(w)
        ids = {w: self.element_id(w) for w in elems}
        ranked = sorted(elems, key=lambda w: (self.length(w), ids[w]))
        covers = []
        for l in sorted(by_len):
            uppers = by_len.get(l + 1, ())
            for w in uppers:
                for u in by_len[l]:
                    if self.bruhat_leq(u, w):
                        covers.append((ids[w], ids[u]))
        return GradedPoset([(ids[w], self.length(w)) for w in ranked], covers)


    def induced_subposet(self, elements):
        """Bruhat order restricted to ``elements``, keeping ambient ranks.

        Covers are the transitive reduction of the induced order; rank
        gaps are allowed (hence a non-strict grading).
        """
        elements = list(elements)
        ids = {self.element_id(w): w for w in elements}
        ordered = sorted(ids, key=lambda e: (self.length(ids[e]), e))
        covers = []
        for upper in ordered:
            for lower in ordered:
                if upper == lower or not self.bruhat_leq(ids[lower], ids[upper]):
                    continue
                direct = not any(
                    mid != upper
                    and mid != lower
                    and self.bruhat_leq(ids[lower], ids[mid])
                    and self.bruhat_leq(ids[mid], ids[upper])
                    for mid in ordered
                )
                if direct:
                    covers.append((upper, lower))
        return GradedPoset(
            [(e, self.length(ids[e])) for e in ordered], covers, strict_grading=False
        )


_CACHE = {}


def make_weyl(lie_type, n):
    """Weyl group context for the given type and rank (cached)."""
    key = (lie_type.upper(), n)
    if key not in _CACHE:
        _CACHE[key] = WeylGroup(*key)
    return _CACHE[key]
