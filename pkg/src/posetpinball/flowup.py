"""Exact module algebra over the one-variable polynomial ring Q[t].

Vectors live in a product of copies of Q[t] indexed by a graded poset.
This module provides flow-up and triangularity tests, exact linear
independence over the fraction field Q(t), and the construction that
turns any spanning set into a basis triangular with respect to a chosen
total order: scan positions in order, collect the ideal of values of the
vectors still vanishing on everything earlier, and keep one vector whose
leading value generates that ideal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .billey import TPolynomial, parse_t_polynomial
from .errors import DomainError
from .poset import GradedPoset


class ZeroVector(DomainError):
    code = "zero-vector"


class NotSpanning(DomainError):
    code = "not-spanning"


class NotInjective(DomainError):
    code = "not-injective"


class RestrictionVector:
    """A vector in prod_{i in poset} Q[t]; missing entries are zero."""

    __slots__ = ("poset", "values")

    def __init__(self, poset: GradedPoset, values):
        self.poset = poset
        self.values = {}
        for eid, value in values.items():
            if eid not in poset:
                raise DomainError(f"component {eid!r} is not a poset element")
            if not isinstance(value, TPolynomial):
                value = parse_t_polynomial(str(value))
            if not value.is_zero():
                self.values[eid] = value

    def get(self, eid) -> TPolynomial:
        return self.values.get(eid, TPolynomial())

    def support(self):
        return frozenset(self.values)

    def is_zero(self):
        return not self.values

    def scale(self, k):
        return RestrictionVector(self.poset, {e: v.scale(k) for e, v in self.values.items()})

    def sub_scaled(self, other, factor: TPolynomial):
        """self - factor * other, componentwise."""
        out = dict(self.values)
        for eid, value in other.values.items():
            new = out.get(eid, TPolynomial()) - factor * value
            if new.is_zero():
                out.pop(eid, None)
            else:
                out[eid] = new
        return RestrictionVector(self.poset, out)

    def __eq__(self, other):
        return (
            isinstance(other, RestrictionVector)
            and self.poset is other.poset
            and self.values == other.values
        )

    def __repr__(self):
        inner = ", ".join(f"{e}: {v}" for e, v in sorted(self.values.items()))
        return f"RestrictionVector({{{inner}}})"


# ---------------------------------------------------------------------------
# flow-ups and triangularity
# ---------------------------------------------------------------------------


def is_flowup(x: RestrictionVector):
    """The minimum nonzero coordinate if x is a flow-up, else None.

    x is a flow-up when its support has a unique minimal element whose
    principal order filter contains the whole support.
    """
    if x.is_zero():
        raise ZeroVector("the zero vector is not a flow-up")
    support = x.support()
    minima = [
        i
        for i in support
        if not any(j != i and x.poset.leq(j, i) for j in support)
    ]
    if len(minima) != 1:
        return None
    bottom = minima[0]
    if all(x.poset.leq(bottom, j) for j in support):
        return bottom
    return None


@dataclass
class TriangularityReport:
    ok: bool
    minima: dict  # label -> min id (flow-ups only)
    non_flowups: list  # labels with no unique support minimum
    collisions: list  # (label_a, label_b, shared min)


def poset_triangularity_report(labeled_vectors) -> TriangularityReport:
    """Check a labeled family for poset-upper-triangularity."""
    minima = {}
    non_flowups = []
    collisions = []
    first_at = {}
    for label, vec in labeled_vectors:
        bottom = is_flowup(vec)
        if bottom is None:
            non_flowups.append(label)
            continue
        minima[label] = bottom
        if bottom in first_at:
            collisions.append((first_at[bottom], label, bottom))
        else:
            first_at[bottom] = label
    return TriangularityReport(
        ok=not non_flowups and not collisions,
        minima=minima,
        non_flowups=non_flowups,
        collisions=collisions,
    )


def is_poset_upper_triangular(labeled_vectors) -> bool:
    return poset_triangularity_report(labeled_vectors).ok


def is_total_order_upper_triangular(vectors, order) -> bool:
    """Distinct first-nonzero positions along the given total order."""
    position = {eid: k for k, eid in enumerate(order)}
    seen = set()
    for vec in vectors:
        if vec.is_zero():
            raise ZeroVector("the zero vector cannot be triangular")
        first = min(vec.support(), key=lambda e: position[e])
        if first in seen:
            return False
        seen.add(first)
    return True


def find_triangular_order(labeled_vectors, poset: GradedPoset, node_budget=100_000):
    """A linear extension making the family upper-triangular, or None.

    Each vector must be assigned a distinct support element that some
    linear extension visits before the rest of that support; the chosen
    element must be minimal in the support, and the accumulated
    before-constraints must stay acyclic.  Backtracking over assignments,
    bounded by ``node_budget``.
    """
    vectors = list(labeled_vectors)
    if len({label for label, _ in vectors}) != len(vectors):
        raise DomainError("candidate labels must be unique")
    options = []
    for label, vec in vectors:
        if vec.is_zero():
            raise ZeroVector(f"zero vector {label!r}")
        support = vec.support()
        minima = [
            i
            for i in support
            if not any(j != i and poset.leq(j, i) for j in support)
        ]
        options.append((label, vec, minima))
    options.sort(key=lambda item: len(item[2]))

    base_edges = set(poset.covers)  # (upper, lower): lower precedes upper

    def acyclic(extra):
        # Kahn's algorithm over poset covers plus the before-constraints
        succ = {}
        indeg = {e: 0 for e in poset.elements}
        for upper, lower in base_edges:
            succ.setdefault(lower, []).append(upper)
            indeg[upper] += 1
        for first, later in extra:
            succ.setdefault(first, []).append(later)
            indeg[later] += 1
        queue = [e for e in poset.elements if indeg[e] == 0]
        seen = 0
        order = []
        while queue:
            queue.sort(key=lambda e: (poset.rank[e], e))
            cur = queue.pop(0)
            order.append(cur)
            seen += 1
            for nxt in succ.get(cur, ()):
                indeg[nxt] -= 1
                if indeg[nxt] == 0:
                    queue.append(nxt)
        return order if seen == len(poset.elements) else None

    budget = [node_budget]
    assignment = {}

    def backtrack(idx):
        if budget[0] <= 0:
            return None
        budget[0] -= 1
        if idx == len(options):
            extra = []
            for label, vec, _ in options:
                first = assignment[label]
                extra.extend((first, j) for j in vec.support() if j != first)
            return acyclic(extra)
        label, vec, minima = options[idx]
        for candidate in sorted(minima, key=lambda e: (poset.rank[e], e)):
            if candidate in assignment.values():
                continue
            assignment[label] = candidate
            extra = []
            for done_label, done_vec, _ in options[: idx + 1]:
                if done_label in assignment:
                    first = assignment[done_label]
                    extra.extend((first, j) for j in done_vec.support() if j != first)
            if acyclic(extra) is not None:
                result = backtrack(idx + 1)
                if result is not None:
                    return result
            del assignment[label]
        return None

    order = backtrack(0)
    if order is None:
        if budget[0] <= 0:
            # an exhausted search is inconclusive, not a definite "no"
            raise DomainError("triangular-order search budget exhausted")
        return None
    assert is_total_order_upper_triangular([vec for _, vec in vectors], order)
    return order


# ---------------------------------------------------------------------------
# exact linear algebra over Q[t] and Q(t)
# ---------------------------------------------------------------------------


def _matrix(vectors, columns):
    return [[vec.get(c) for c in columns] for vec in vectors]


def polynomial_matrix_rank(rows):
    """Rank over Q(t) by fraction-free (Bareiss) elimination."""
    m = [[entry for entry in row] for row in rows]
    if not m:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    rank = 0
    prev = TPolynomial([1])
    row = 0
    for col in range(n_cols):
        pivot = next((r for r in range(row, n_rows) if not m[r][col].is_zero()), None)
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        for r in range(row + 1, n_rows):
            for c in range(col + 1, n_cols):
                m[r][c] = (m[row][col] * m[r][c] - m[r][col] * m[row][c]).exact_div(prev)
            m[r][col] = TPolynomial()
        prev = m[row][col]
        rank += 1
        row += 1
        if row == n_rows:
            break
    return rank


def linearly_independent(vectors) -> bool:
    vectors = list(vectors)
    if not vectors:
        return True
    columns = sorted({e for v in vectors for e in v.support()})
    if len(columns) < len(vectors):
        return False
    return polynomial_matrix_rank(_matrix(vectors, columns)) == len(vectors)


def span_equivalent(vectors_a, vectors_b) -> bool:
    """Equality of Q(t)-spans (rank comparison, exact)."""
    a, b = list(vectors_a), list(vectors_b)
    poset = a[0].poset if a else (b[0].poset if b else None)
    if poset is None:
        return True
    columns = list(poset.elements)
    ra = polynomial_matrix_rank(_matrix(a, columns))
    rb = polynomial_matrix_rank(_matrix(b, columns))
    rab = polynomial_matrix_rank(_matrix(a + b, columns))
    return ra == rb == rab


def t_ext_gcd(a: TPolynomial, b: TPolynomial):
    """(g, s, u) with s*a + u*b = g; g monic unless both inputs are zero."""
    r0, r1 = a, b
    s0, s1 = TPolynomial([1]), TPolynomial()
    u0, u1 = TPolynomial(), TPolynomial([1])
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        u0, u1 = u1, u0 - q * u1
    if r0.is_zero():
        return r0, s0, u0
    lead = r0.coeffs[-1]
    inv = Fraction(1) / lead
    return r0.scale(inv), s0.scale(inv), u0.scale(inv)


def construct_flowup_basis(generators, order):
    """Triangular module generators for the span of ``generators``.

    Scans the index elements along ``order`` (a total order refining the
    poset order).  At each position the vectors still vanishing on all
    earlier positions form a submodule whose values there are an ideal of
    Q[t]; a Bezout combination realizes the monic minimal-degree generator
    and the other vectors are reduced against it, so they keep vanishing
    one position longer.  The pivot vectors span the same module and are
    upper-triangular with respect to ``order``.
    """
    active = [g for g in generators if not g.is_zero()]
    if not active:
        return []
    poset = active[0].poset
    order = list(order)
    if set(order) != set(poset.elements):
        raise DomainError("order must be a total order on the whole index set")
    pivots = []
    for eid in order:
        carriers = [g for g in active if eid in g.support()]
        if not carriers:
            continue
        combo = carriers[0]
        g = combo.get(eid)
        for nxt in carriers[1:]:
            g2, s, u = t_ext_gcd(g, nxt.get(eid))
            merged = {}
            for key in set(combo.values) | set(nxt.values):
                val = s * combo.get(key) + u * nxt.get(key)
                if not val.is_zero():
                    merged[key] = val
            combo = RestrictionVector(poset, merged)
            g = g2
        lead = g.coeffs[-1]
        if lead != 1:
            combo = combo.scale(Fraction(1) / lead)
            g = g.monic()
        reduced = []
        for vec in active:
            coeff = vec.get(eid)
            if coeff.is_zero():
                reduced.append(vec)
                continue
            remainder = vec.sub_scaled(combo, coeff.exact_div(g))
            if not remainder.is_zero():
                reduced.append(remainder)
        active = reduced
        pivots.append((eid, combo))
    if active:
        # everything should have been absorbed into the pivots
        raise NotSpanning("leftover generators after the triangular scan")
    for g in generators:
        if not reduce_against_triangular(g, pivots, order).is_zero():
            raise NotSpanning("constructed set does not span the input generators")
    return [vec for _, vec in pivots]


def reduce_against_triangular(x: RestrictionVector, pivots, order):
    """Remainder of x under Q[t]-reduction by triangular pivots.

    ``pivots`` is a list of (position, vector) with vector vanishing
    before its position.  A zero remainder certifies Q[t]-membership.
    """
    position = {eid: k for k, eid in enumerate(order)}
    by_pos = {eid: vec for eid, vec in pivots}
    cur = x
    while not cur.is_zero():
        first = min(cur.support(), key=lambda e: position[e])
        pivot = by_pos.get(first)
        if pivot is None:
            return cur
        value = cur.get(first)
        lead = pivot.get(first)
        quotient, remainder = value.divmod(lead)
        if not remainder.is_zero():
            return cur
        cur = cur.sub_scaled(pivot, quotient)
    return cur


def flowup_pivot_positions(generators, order):
    """Positions receiving a pivot when scanning ``generators`` along ``order``."""
    basis = construct_flowup_basis(generators, order)
    position = {eid: k for k, eid in enumerate(order)}
    return [min(vec.support(), key=lambda e: position[e]) for vec in basis]


# ---------------------------------------------------------------------------
# candidate bases and certificates
# ---------------------------------------------------------------------------


@dataclass
class CandidateBasis:
    """Labeled classes over a shared index set, with degree tags (2d)."""

    index: list
    entries: list  # (label, RestrictionVector, degree)

    def vectors(self):
        return [vec for _, vec, _ in self.entries]

    def labeled_vectors(self):
        return [(label, vec) for label, vec, _ in self.entries]

    def entry(self, label):
        for lab, vec, degree in self.entries:
            if lab == label:
                return vec, degree
        raise DomainError(f"no candidate labeled {label!r}")

    def to_doc(self):
        return {
            "index": list(self.index),
            "classes": [
                {
                    "label": label,
                    "degree": degree,
                    "values": {eid: str(vec.get(eid)) for eid in self.index},
                }
                for label, vec, degree in self.entries
            ],
        }

    @classmethod
    def from_doc(cls, doc, poset: GradedPoset):
        index = list(doc["index"])
        entries = []
        for item in doc["classes"]:
            values = {
                eid: parse_t_polynomial(text)
                for eid, text in item["values"].items()
            }
            entries.append((item["label"], RestrictionVector(poset, values), item["degree"]))
        return cls(index=index, entries=entries)

    @classmethod
    def from_classes(cls, poset: GradedPoset, classes):
        """Build from (label, RestrictionClass) pairs produced by billey."""
        index = list(poset.elements)
        entries = []
        for label, rc in classes:
            values = {eid: rc.value(eid) for eid in rc.support}
            entries.append((label, RestrictionVector(poset, values), rc.degree))
        return cls(index=index, entries=entries)


@dataclass
class VerifyResult:
    ok: bool
    details: dict

    def __bool__(self):
        return self.ok


def verify_pinball_basis(candidates: CandidateBasis, targets) -> VerifyResult:
    """Certificate (A) linear independence + (B) degree histogram == targets."""
    targets = list(targets)
    histogram = {}
    details = {}
    for label, _, degree in candidates.entries:
        if degree % 2 != 0:
            details["degree_mismatch"] = f"candidate {label!r} has odd degree {degree}"
            return VerifyResult(False, details)
        histogram[degree // 2] = histogram.get(degree // 2, 0) + 1
    wanted = {j: b for j, b in enumerate(targets) if b}
    if histogram != wanted:
        details["degree_mismatch"] = {"have": histogram, "want": wanted}
        return VerifyResult(False, details)
    independent = linearly_independent(candidates.vectors())
    details["independent"] = independent
    return VerifyResult(independent, details)


def verify_matching_basis(candidates, f, deg_y, targets, poset) -> VerifyResult:
    """Certificate for a degree-compatible matching.

    ``f`` maps index elements to candidate labels, ``deg_y`` assigns each
    index element its degree.  Checks injectivity, deg_y(j) equal to the
    ambient rank of f(j) (via the candidate degree tag), the degree
    histogram against ``targets``, and a triangular-order witness.
    """
    values = list(f.values())
    if len(set(values)) != len(values):
        raise NotInjective("matching must be injective")
    details = {}
    for j, label in f.items():
        _, degree = candidates.entry(label)
        if deg_y[j] != degree // 2:
            details["degree_mismatch"] = f"deg_Y({j!r}) != rank of {label!r}"
            return VerifyResult(False, details)
    histogram = {}
    for j in f:
        histogram[deg_y[j]] = histogram.get(deg_y[j], 0) + 1
    wanted = {k: b for k, b in enumerate(targets) if b}
    if histogram != wanted:
        details["degree_mismatch"] = {"have": histogram, "want": wanted}
        return VerifyResult(False, details)
    witness = find_triangular_order(candidates.labeled_vectors(), poset)
    details["triangular_order"] = witness
    return VerifyResult(witness is not None, details)
