"""Finite graded posets with Hasse-diagram structure.

A poset here is a finite set of opaque string ids, a rank function, and a
set of cover pairs (upper, lower) with rank(upper) = rank(lower) + 1.  The
full order is the reflexive-transitive closure of the covers.  Instances
are immutable after construction, so they can be shared freely.
"""

from __future__ import annotations

import json

from .errors import DomainError


class DuplicateId(DomainError):
    code = "duplicate-id"


class UnknownId(DomainError):
    code = "unknown-id"


class RankViolation(DomainError):
    code = "rank-violation"


class CycleDetected(DomainError):
    # Unreachable once every cover drops rank by exactly 1, but kept so the
    # constructor's contract is explicit.
    code = "cycle-detected"


MAX_ELEMENTS = 10_000


class ElementSubset:
    """A subset of a poset's elements, remembering its parent poset."""

    __slots__ = ("parent", "members")

    def __init__(self, parent, members):
        members = frozenset(members)
        for m in members:
            if m not in parent.rank:
                raise UnknownId(f"unknown element {m!r}")
        self.parent = parent
        self.members = members

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, item):
        return item in self.members

    def __len__(self):
        return len(self.members)

    def __eq__(self, other):
        if isinstance(other, ElementSubset):
            return self.parent is other.parent and self.members == other.members
        if isinstance(other, (set, frozenset)):
            return self.members == other
        return NotImplemented

    def __repr__(self):
        return f"ElementSubset({sorted(self.members)})"


class GradedPoset:
    """Strictly graded by default: every cover steps rank by exactly one.

    ``strict_grading=False`` relaxes this to rank(upper) > rank(lower),
    which is what induced subposets with ambient ranks need (e.g. Bruhat
    order restricted to a fixed-point set).  Either way the rank strictly
    decreases along edges, so the cover digraph can never contain a cycle.
    """

    def __init__(self, elements_with_ranks, covers, strict_grading=True):
        elements = []
        rank = {}
        for eid, r in elements_with_ranks:
            if eid in rank:
                raise DuplicateId(f"duplicate element id {eid!r}")
            if not isinstance(r, int) or r < 0:
                raise RankViolation(f"rank of {eid!r} must be a nonnegative integer")
            elements.append(eid)
            rank[eid] = r
        if len(elements) > MAX_ELEMENTS:
            raise DomainError(f"poset capped at {MAX_ELEMENTS} elements")

        seen = set()
        cover_list = []
        down = {eid: [] for eid in elements}
        up = {eid: [] for eid in elements}
        for upper, lower in covers:
            if upper not in rank:
                raise UnknownId(f"cover references unknown id {upper!r}")
            if lower not in rank:
                raise UnknownId(f"cover references unknown id {lower!r}")
            if strict_grading and rank[upper] != rank[lower] + 1:
                raise RankViolation(
                    f"cover ({upper!r}, {lower!r}) violates rank({upper!r}) == rank({lower!r}) + 1"
                )
            if not strict_grading and rank[upper] <= rank[lower]:
                raise RankViolation(
                    f"cover ({upper!r}, {lower!r}) does not decrease rank"
                )
            if (upper, lower) in seen:
                continue
            seen.add((upper, lower))
            cover_list.append((upper, lower))
            down[upper].append(lower)
            up[lower].append(upper)

        self.strict_grading = strict_grading
        self.elements = tuple(elements)
        self.rank = rank
        self.covers = tuple(cover_list)
        self._down = {k: tuple(v) for k, v in down.items()}
        self._up = {k: tuple(v) for k, v in up.items()}
        self._below = {}  # element -> frozenset of elements strictly below

    # -- basic queries -------------------------------------------------

    def __len__(self):
        return len(self.elements)

    def __contains__(self, eid):
        return eid in self.rank

    def _require(self, eid):
        if eid not in self.rank:
            raise UnknownId(f"unknown element {eid!r}")

    def lower_covers(self, eid):
        self._require(eid)
        return self._down[eid]

    def upper_covers(self, eid):
        self._require(eid)
        return self._up[eid]

    def strictly_below(self, eid):
        """All elements strictly below eid (computed once, then cached)."""
        self._require(eid)
        cached = self._below.get(eid)
        if cached is not None:
            return cached
        acc = set()
        stack = list(self._down[eid])
        while stack:
            cur = stack.pop()
            if cur in acc:
                continue
            acc.add(cur)
            done = self._below.get(cur)
            if done is not None:
                acc |= done
            else:
                stack.extend(self._down[cur])
        result = frozenset(acc)
        self._below[eid] = result
        return result

    def leq(self, a, b):
        """True iff a <= b in the reflexive-transitive closure of the covers."""
        self._require(a)
        self._require(b)
        return a == b or a in self.strictly_below(b)

    def principal_ideal(self, eid):
        self._require(eid)
        return ElementSubset(self, self.strictly_below(eid) | {eid})

    def principal_filter(self, eid):
        self._require(eid)
        return ElementSubset(self, {x for x in self.elements if self.leq(eid, x)})

    def linear_extension(self, subset=None):
        """A total order on ``subset`` refining the induced partial order.

        Deterministic: since covers step rank by exactly one, any chain is
        strictly rank-increasing, so sorting by (rank, id) is always a
        valid linear extension.
        """
        if subset is None:
            subset = self.elements
        items = list(subset)
        for eid in items:
            self._require(eid)
        items.sort(key=lambda e: (self.rank[e], e))
        return items

    def is_union_of_principal_ideals(self, subset):
        members = set(subset)
        for eid in members:
            self._require(eid)
        for eid in members:
            if not self.strictly_below(eid) <= members:
                return False
        return True

    # -- serialization -------------------------------------------------

    def to_doc(self):
        doc = {
            "elements": [{"id": e, "rank": self.rank[e]} for e in self.elements],
            "covers": [[u, l] for u, l in self.covers],
        }
        if not self.strict_grading:
            doc["graded"] = "ambient"
        return doc

    def dumps(self):
        return json.dumps(self.to_doc(), separators=(",", ":"))

    @classmethod
    def from_doc(cls, doc):
        elements = [(item["id"], item["rank"]) for item in doc["elements"]]
        covers = [tuple(pair) for pair in doc["covers"]]
        return cls(elements, covers, strict_grading=doc.get("graded") != "ambient")

    @classmethod
    def loads(cls, text):
        return cls.from_doc(json.loads(text))

    def __eq__(self, other):
        if not isinstance(other, GradedPoset):
            return NotImplemented
        return (
            self.elements == other.elements
            and self.rank == other.rank
            and set(self.covers) == set(other.covers)
        )


def build_poset(elements_with_ranks, covers):
    """Validate and build a :class:`GradedPoset`."""
    return GradedPoset(elements_with_ranks, covers)
