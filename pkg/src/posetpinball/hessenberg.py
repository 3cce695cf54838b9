"""Fixed-point combinatorics of nilpotent Hessenberg varieties.

A Hessenberg space is encoded by its set of negative roots M_H; the
fixed-point set of the corresponding regular nilpotent family is
{w : w^{-1}(alpha_i) in M_H u Phi+ for every simple alpha_i}.  The
Peterson case is M_H = -Delta; Springer fixed points in type A are the
permutations whose inverses have descents inside the partial sums of the
Jordan partition.
"""

from __future__ import annotations

import re

from .coxeter import WeylGroup, make_weyl
from .errors import DomainError


class NotAPartition(DomainError):
    code = "not-a-partition"


class NotBracketClosed(DomainError):
    code = "not-bracket-closed"


class HessenbergSpace:
    """A Borel-containing bracket-closed subspace, as its negative roots.

    Closure is checked against additions of simple roots only: the Borel
    is generated by the Cartan and the simple root spaces, so closure
    under those implies closure under all of Phi+.
    """

    __slots__ = ("group", "negative_roots")

    def __init__(self, group: WeylGroup, negative_roots):
        roots = frozenset(tuple(r) for r in negative_roots)
        for r in roots:
            if not group.roots.is_negative(r):
                raise DomainError(f"{r} is not a negative root")
        for alpha in roots:
            for beta in group.roots.simple_roots:
                total = tuple(a + b for a, b in zip(alpha, beta))
                if group.roots.is_negative(total) and total not in roots:
                    raise NotBracketClosed(
                        f"{alpha} + simple root {beta} lands outside the space"
                    )
        self.group = group
        self.negative_roots = roots

    def __contains__(self, root):
        return tuple(root) in self.negative_roots

    def __len__(self):
        return len(self.negative_roots)


def peterson_space(group: WeylGroup) -> HessenbergSpace:
    return HessenbergSpace(group, [tuple(-c for c in a) for a in group.roots.simple_roots])


def borel_space(group: WeylGroup) -> HessenbergSpace:
    return HessenbergSpace(group, [])


def full_space(group: WeylGroup) -> HessenbergSpace:
    return HessenbergSpace(group, group.roots.negative_roots)


def from_hessenberg_function(group: WeylGroup, h) -> HessenbergSpace:
    """Type-A sugar: h nondecreasing with i <= h(i) <= n gives the usual
    space spanned by the positions below the staircase."""
    if group.lie_type != "A":
        raise DomainError("Hessenberg functions describe type A only")
    n = group.dim
    h = [int(x) for x in h]
    if len(h) != n:
        raise DomainError(f"expected {n} values, got {len(h)}")
    for i in range(n):
        if not i + 1 <= h[i] <= n:
            raise DomainError(f"need i <= h(i) <= n at position {i + 1}")
        if i and h[i] < h[i - 1]:
            raise DomainError("h must be nondecreasing")
    roots = []
    for j in range(1, n + 1):
        for i in range(j + 1, h[j - 1] + 1):
            vec = [0] * n
            vec[i - 1], vec[j - 1] = 1, -1  # e_i - e_j with i > j is negative
            roots.append(tuple(vec))
    return HessenbergSpace(group, roots)


_MH_TOKEN = re.compile(r"([+-]?)a(\d+)")


def parse_mh(group: WeylGroup, text) -> HessenbergSpace:
    """Parse a comma-separated list of root combinations like ``-a1,-a1-a2``."""
    roots = []
    for chunk in text.split(","):
        chunk = chunk.strip().replace(" ", "")
        if not chunk:
            continue
        vec = [0] * group.dim
        consumed = 0
        for sign, idx in _MH_TOKEN.findall(chunk):
            i = int(idx)
            if not 1 <= i <= group.rank:
                raise DomainError(f"no simple root a{i}")
            coeff = -1 if sign == "-" else 1
            simple = group.roots.simple_roots[i - 1]
            vec = [v + coeff * s for v, s in zip(vec, simple)]
            consumed += len(sign) + len(idx) + 1
        if consumed != len(chunk):
            raise DomainError(f"cannot parse root expression {chunk!r}")
        roots.append(tuple(vec))
    return HessenbergSpace(group, roots)


# ---------------------------------------------------------------------------
# fixed points
# ---------------------------------------------------------------------------


def hessenberg_fixed_points(group: WeylGroup, space: HessenbergSpace):
    """Elements with w^{-1}(alpha) in M_H u Phi+ for every simple alpha."""
    out = []
    for w in group.elements:
        inv = w.inverse()
        for alpha in group.roots.simple_roots:
            image = inv.act_vector(alpha)
            if group.roots.is_negative(image) and image not in space.negative_roots:
                break
        else:
            out.append(w)
    return out


def peterson_fixed_points(group: WeylGroup):
    """All pairs (J, w_J) over subsets of the simple roots."""
    out = []
    n = group.rank
    for mask in range(1 << n):
        J = tuple(i + 1 for i in range(n) if mask >> i & 1)
        out.append((J, group.max_parabolic(J)))
    return out


def check_partition(n, lam):
    lam = tuple(int(x) for x in lam)
    if not lam or any(x < 1 for x in lam) or sum(lam) != n:
        raise NotAPartition(f"{lam} is not a partition of {n}")
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise NotAPartition(f"{lam} is not weakly decreasing")
    return lam


def springer_fixed_points(n, lam, group=None):
    """Type-A elements whose inverses have descents inside the partial sums."""
    lam = check_partition(n, lam)
    if group is None:
        group = make_weyl("A", n - 1)
    allowed = set()
    total = 0
    for part in lam:
        total += part
        allowed.add(total)
    out = []
    for w in group.elements:
        inv = w.inverse().signed
        descents = {i + 1 for i in range(n - 1) if inv[i] > inv[i + 1]}
        if descents <= allowed:
            out.append(w)
    return out


def subregular_fixed_point(group: WeylGroup, i):
    """The fixed point s_{n-1} s_{n-2} ... s_i (identity for i = n)."""
    n = group.dim
    return group.word_to_element(list(range(n - 1, i - 1, -1)))


def subregular_targets(n):
    return (1, n - 1)


# ---------------------------------------------------------------------------
# Betti numbers, rolldowns, degrees
# ---------------------------------------------------------------------------


def hessenberg_betti(group: WeylGroup, space: HessenbergSpace):
    """Rank histogram of the fixed points: the count at j is the number of
    fixed points w with j positive roots sent into M_H by w^{-1}."""
    counts = {}
    for w in hessenberg_fixed_points(group, space):
        inv = w.inverse()
        j = sum(
            1
            for alpha in group.roots.positive_roots
            if inv.act_vector(alpha) in space.negative_roots
        )
        counts[j] = counts.get(j, 0) + 1
    top = max(counts) if counts else 0
    return [counts.get(j, 0) for j in range(top + 1)]


def peterson_rolldown(group: WeylGroup, J):
    """The product of the simple reflections in J, in increasing order."""
    return group.word_to_element(sorted(set(J)))


def subregular_rolldown(group: WeylGroup, i):
    n = group.dim
    if not 1 <= i <= n:
        raise DomainError(f"index {i} outside 1..{n}")
    if i == n:
        return group.identity
    return group.simple_reflection(i)


def peterson_degree(J):
    return len(set(J))
