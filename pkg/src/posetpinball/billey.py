"""Exact polynomial arithmetic and restriction of equivariant Schubert classes.

``RootPolynomial`` is a polynomial in the simple roots a_1..a_n with
rational coefficients, stored sparsely by exponent vector.  ``TPolynomial``
is a dense univariate polynomial in t.  The specialization a_i -> t (all i)
restricts a full-torus value to the one-parameter circle whose pairing with
every simple root is 1.

The restriction of a Schubert class to a fixed point is computed by the
subword sum: fix a reduced word w = s_{b_1}..s_{b_l}; the value at w of the
class of v is the sum, over position sets j_1 < .. < j_k whose letters
multiply to v with k = l(v), of the product of the partial-word images
r(j) = s_{b_1}..s_{b_{j-1}}(alpha_{b_j}).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .coxeter import MixedGroups, WeylGroup
from .errors import DomainError


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------


class RootPolynomial:
    """Sparse polynomial in the simple roots; keys are exponent tuples."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for expo, coeff in terms.items():
                coeff = Fraction(coeff)
                if coeff != 0:
                    self.terms[tuple(expo)] = coeff

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def constant(cls, nvars, value):
        return cls(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def linear(cls, coeffs):
        """The linear form sum_i coeffs[i] * a_{i+1}."""
        coeffs = list(coeffs)
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                expo = [0] * n
                expo[i] = 1
                terms[tuple(expo)] = Fraction(c)
        return cls(n, terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, RootPolynomial)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __add__(self, other):
        out = dict(self.terms)
        for expo, c in other.terms.items():
            s = out.get(expo, Fraction(0)) + c
            if s == 0:
                out.pop(expo, None)
            else:
                out[expo] = s
        return RootPolynomial(self.nvars, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, k):
        k = Fraction(k)
        return RootPolynomial(self.nvars, {e: c * k for e, c in self.terms.items()})

    def __mul__(self, other):
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                expo = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(expo, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(expo, None)
                else:
                    out[expo] = s
        return RootPolynomial(self.nvars, out)

    def total_degree(self):
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self, degree=None):
        degrees = {sum(e) for e in self.terms}
        if not degrees:
            return True
        if degree is None:
            return len(degrees) == 1
        return degrees == {degree}

    def specialize_to_t(self):
        """Substitute a_i -> t for every i."""
        coeffs = {}
        for expo, c in self.terms.items():
            d = sum(expo)
            coeffs[d] = coeffs.get(d, Fraction(0)) + c
        top = max(coeffs) if coeffs else -1
        return TPolynomial([coeffs.get(d, Fraction(0)) for d in range(top + 1)])

    def substitute_var(self, index, replacement):
        """Substitute a_{index+1} := replacement (a RootPolynomial)."""
        out = RootPolynomial.zero(self.nvars)
        for expo, c in self.terms.items():
            term = RootPolynomial.constant(self.nvars, c)
            rest = list(expo)
            power = rest[index]
            rest[index] = 0
            if any(rest):
                term = term * RootPolynomial(self.nvars, {tuple(rest): 1})
            for _ in range(power):
                term = term * replacement
            out = out + term
        return out

    def divisible_by_linear(self, coeffs):
        """Exact divisibility by the linear form sum coeffs[i] a_{i+1}.

        A linear form is irreducible, so divisibility is equivalent to
        vanishing on its zero hyperplane; substitute one variable out and
        test for the zero polynomial.
        """
        coeffs = [Fraction(c) for c in coeffs]
        pivot = next((i for i, c in enumerate(coeffs) if c != 0), None)
        if pivot is None:
            raise DomainError("zero linear form")
        replacement_terms = {}
        for i, c in enumerate(coeffs):
            if i != pivot and c != 0:
                expo = [0] * self.nvars
                expo[i] = 1
                replacement_terms[tuple(expo)] = -c / coeffs[pivot]
        replacement = RootPolynomial(self.nvars, replacement_terms)
        return self.substitute_var(pivot, replacement).is_zero()

    def __str__(self):
        if not self.terms:
            return "0"
        def key(expo):
            return (-sum(expo), tuple(-e for e in expo))
        parts = []
        for expo in sorted(self.terms, key=key):
            coeff = self.terms[expo]
            factors = []
            for i, e in enumerate(expo):
                if e == 1:
                    factors.append(f"a{i + 1}")
                elif e > 1:
                    factors.append(f"a{i + 1}^{e}")
            body = "*".join(factors)
            mag = abs(coeff)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            parts.append((coeff < 0, text))
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for neg, text in parts[1:]:
            out += (" - " if neg else " + ") + text
        return out


class TPolynomial:
    """Dense univariate polynomial in t over the rationals."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        coeffs = [Fraction(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def constant(cls, value):
        return cls([value])

    @classmethod
    def t_power(cls, d, coeff=1):
        return cls([0] * d + [coeff])

    def is_zero(self):
        return not self.coeffs

    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def __eq__(self, other):
        return isinstance(other, TPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return TPolynomial(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, k):
        k = Fraction(k)
        return TPolynomial([c * k for c in self.coeffs])

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return TPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return TPolynomial(out)

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        quo = [Fraction(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        d = other.degree()
        lead = other.coeffs[-1]
        for i in range(len(rem) - 1, d - 1, -1):
            if rem[i] == 0:
                continue
            q = rem[i] / lead
            quo[i - d] = q
            for j, c in enumerate(other.coeffs):
                rem[i - d + j] -= q * c
        return TPolynomial(quo), TPolynomial(rem)

    def exact_div(self, other):
        quo, rem = self.divmod(other)
        if not rem.is_zero():
            raise DomainError("inexact polynomial division")
        return quo

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(1 / self.coeffs[-1])

    def eval0(self):
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for d in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[d]
            if c == 0:
                continue
            mag = abs(c)
            if d == 0:
                text = str(mag)
            else:
                var = "t" if d == 1 else f"t^{d}"
                text = var if mag == 1 else f"{mag}*{var}"
            parts.append((c < 0, text))
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for neg, text in parts[1:]:
            out += ("-" if neg else "+") + text
        return out


_TERM_RE = re.compile(r"^([+-]?)(\d+(?:/\d+)?)?\*?(t(?:\^(\d+))?)?$")


def parse_t_polynomial(text):
    """Parse strings like ``3*t^2+1``, ``t``, ``-t^3 + 2`` or ``0``."""
    text = text.strip().replace(" ", "")
    if text in ("", "0"):
        return TPolynomial()
    chunks = re.findall(r"[+-]?[^+-]+", text)
    coeffs = {}
    for chunk in chunks:
        m = _TERM_RE.match(chunk)
        if not m or (m.group(2) is None and m.group(3) is None):
            raise DomainError(f"cannot parse polynomial term {chunk!r}")
        sign, coeff_text, t_part, power = m.groups()
        coeff = Fraction(coeff_text) if coeff_text else Fraction(1)
        if sign == "-":
            coeff = -coeff
        degree = 0 if t_part is None else (1 if power is None else int(power))
        coeffs[degree] = coeffs.get(degree, Fraction(0)) + coeff
    top = max(coeffs)
    return TPolynomial([coeffs.get(d, Fraction(0)) for d in range(top + 1)])


# ---------------------------------------------------------------------------
# restriction classes
# ---------------------------------------------------------------------------


@dataclass
class RestrictionClass:
    """A class given by its values at fixed points (one poly per element)."""

    support: tuple  # fixed-point element ids, in order
    values: dict  # id -> RootPolynomial or TPolynomial
    degree: int  # cohomological degree tag (2 * polynomial degree)
    kind: str  # "root" or "t"

    def __post_init__(self):
        if self.degree % 2 != 0:
            raise DomainError("degree tag must be even")
        half = self.degree // 2
        for eid, value in self.values.items():
            if eid not in self.support:
                raise DomainError(f"value at {eid!r} outside the support poset")
            if value.is_zero():
                continue
            if self.kind == "root":
                if not value.is_homogeneous(half):
                    raise DomainError(f"value at {eid!r} not homogeneous of degree {half}")
            else:
                if value.degree() != half or any(c != 0 for c in value.coeffs[:-1]):
                    raise DomainError(f"value at {eid!r} not homogeneous of degree {half}")

    def value(self, eid):
        v = self.values.get(eid)
        if v is not None:
            return v
        return TPolynomial() if self.kind == "t" else RootPolynomial.zero(0)


def billey_restrict(group: WeylGroup, v, w, word=None):
    """Value of the equivariant Schubert class of v at the fixed point w.

    ``word`` may pin a particular reduced word of w; the result does not
    depend on the choice (property-tested), so it defaults to the
    canonical one.
    """
    group.require_element(v)
    group.require_element(w)
    if word is None:
        word = group.reduced_word(w)
    elif group.word_to_element(word) != w or len(word) != group.length(w):
        raise DomainError(f"{word} is not a reduced word for the given element")
    lv = group.length(v)
    n = group.rank
    if lv > len(word):
        return RootPolynomial.zero(n)

    # r(j) in simple-root coordinates, for the fixed reduced word of w
    prefix = group.identity
    rpolys = []
    for b in word:
        alpha = group.roots.simple_roots[b - 1]
        rpolys.append(RootPolynomial.linear(group.roots.simple_coords(prefix.act_vector(alpha))))
        prefix = prefix * group.simple_reflection(b)

    total = RootPolynomial.zero(n)
    simple = [group.simple_reflection(i) for i in range(1, n + 1)]

    def walk(pos, acc, acc_len, product):
        nonlocal total
        if acc_len == lv:
            if acc == v:
                total = total + product
            return
        if len(word) - pos < lv - acc_len:
            return
        walk(pos + 1, acc, acc_len, product)
        b = word[pos]
        if group.is_right_ascent(acc, b):
            walk(pos + 1, acc * simple[b - 1], acc_len + 1, product * rpolys[pos])

    one = RootPolynomial.constant(n, 1)
    walk(0, group.identity, 0, one)
    return total


def specialize_to_t(p: RootPolynomial) -> TPolynomial:
    return p.specialize_to_t()


def schubert_class(group, v, fixed_points, specialize=True):
    """The restriction class of v over the given fixed-point subset.

    ``fixed_points`` is an iterable of group elements; keys of the result
    are their canonical word ids.  Degree tag is 2 l(v).
    """
    values = {}
    support = []
    for w in fixed_points:
        eid = group.element_id(w)
        support.append(eid)
        p = billey_restrict(group, v, w)
        values[eid] = p.specialize_to_t() if specialize else p
    return RestrictionClass(
        support=tuple(support),
        values=values,
        degree=2 * group.length(v),
        kind="t" if specialize else "root",
    )


def gkm_divisibility_check(group, cls: RestrictionClass):
    """Divisibility along every reflection pair {w, t_alpha w}, alpha > 0."""
    if cls.kind != "root":
        raise DomainError("the divisibility check needs root-valued classes")
    ids = {group.element_id(w): w for w in group.elements}
    if set(cls.support) != set(ids):
        raise DomainError("class must be supported on the full Weyl group")
    checked = set()
    for eid, w in ids.items():
        for alpha in group.roots.positive_roots:
            t = group.reflection(alpha)
            u = t * w
            pair = frozenset((w.signed, u.signed))
            if pair in checked:
                continue
            checked.add(pair)
            diff = cls.value(eid) - cls.value(group.element_id(u))
            if diff.is_zero():
                continue
            if not diff.divisible_by_linear(group.roots.simple_coords(alpha)):
                return False
    return True
