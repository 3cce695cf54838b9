"""The symmetric-group action on restriction classes and its matrix form.

The action re-indexes componentwise, (w . sigma)(u) = sigma(u w).  On the
one-parameter cohomology of the subregular family in type A it preserves
the span of the classes (p_e, p_{s_1}, ..., p_{s_{n-1}}), with generator
formulas

    s_i . p_{s_j} = p_{s_j}                      (i != j)
    s_j . p_{s_j} = t p_e - p_{s_j} + p_{s_{j-1}} + p_{s_{j+1}}

(out-of-range neighbor terms dropped), and w . p_e = p_e.  At t = 0 these
matrices recover the classical graded action: the degree-0 character is 1
and the degree-2 character counts fixed points minus one.  The row-strict
filling model of shape (n-1, 1) gives the classical comparison characters.
"""

from __future__ import annotations

from fractions import Fraction

from .billey import RestrictionClass, RootPolynomial, TPolynomial
from .coxeter import WeylGroup, make_weyl
from .errors import DomainError


class PartialSupport(DomainError):
    code = "partial-support"


# ---------------------------------------------------------------------------
# the componentwise action on full restriction classes
# ---------------------------------------------------------------------------


def kk_act_on_class(group: WeylGroup, w, cls: RestrictionClass) -> RestrictionClass:
    """(w . sigma)(u) = sigma(u w); needs the class on the whole group."""
    ids = {group.element_id(u): u for u in group.elements}
    if set(cls.support) != set(ids):
        raise PartialSupport("the action needs values at every group element")
    values = {eid: cls.value(group.element_id(u * w)) for eid, u in ids.items()}
    return RestrictionClass(cls.support, values, cls.degree, cls.kind)


def expand_degree_one(group: WeylGroup, cls: RestrictionClass):
    """Write a degree-2 class exactly as c_e sigma_e + sum_i c_i sigma_{s_i}.

    Solves for the coefficients from the values at e and the simple
    reflections, then verifies the expansion at every group element.
    Returns (c_e, {i: c_i}) with c_e a linear RootPolynomial and c_i
    rationals, or raises if the class is not in that span.
    """
    from .billey import billey_restrict

    if cls.kind != "root":
        raise DomainError("expansion works on root-valued classes")
    c_e = cls.value("e")
    coeffs = {}
    for i in range(1, group.rank + 1):
        s_i = group.simple_reflection(i)
        eid = group.element_id(s_i)
        alpha_i = RootPolynomial.linear(
            group.roots.simple_coords(group.roots.simple_roots[i - 1])
        )
        residue = cls.value(eid) - c_e
        if residue.is_zero():
            coeffs[i] = Fraction(0)
            continue
        # residue must be a rational multiple of alpha_i
        ratio = None
        for expo, c in alpha_i.terms.items():
            ratio = residue.terms.get(expo, Fraction(0)) / c
            break
        if ratio is None or residue != alpha_i.scale(ratio):
            raise DomainError(f"value at {eid} is not c_e + c * a{i}")
        coeffs[i] = ratio
    # verify the expansion everywhere
    for u in group.elements:
        eid = group.element_id(u)
        expected = c_e * billey_restrict(group, group.identity, u)
        for i, c in coeffs.items():
            if c:
                expected = expected + billey_restrict(group, group.simple_reflection(i), u).scale(c)
        if expected != cls.value(eid):
            raise DomainError(f"expansion fails at {eid}")
    return c_e, coeffs


# ---------------------------------------------------------------------------
# matrices over the basis (p_e, p_{s_1}, ..., p_{s_{n-1}})
# ---------------------------------------------------------------------------


def _zero(n):
    return [[TPolynomial() for _ in range(n)] for _ in range(n)]


def kk_identity(n):
    m = _zero(n)
    for i in range(n):
        m[i][i] = TPolynomial([1])
    return m


def kk_matrix_simple(n, j):
    """Matrix of s_j on the basis (p_e, p_{s_1}, .., p_{s_{n-1}})."""
    if not 1 <= j <= n - 1:
        raise DomainError(f"need 1 <= j <= {n - 1}")
    m = kk_identity(n)
    # column j is the image of p_{s_j}
    m[j][j] = TPolynomial([-1])
    m[0][j] = TPolynomial([0, 1])  # t p_e
    if j - 1 >= 1:
        m[j - 1][j] = TPolynomial([1])
    if j + 1 <= n - 1:
        m[j + 1][j] = TPolynomial([1])
    return m


def kk_mat_mul(a, b):
    n = len(a)
    out = _zero(n)
    for i in range(n):
        for k in range(n):
            if a[i][k].is_zero():
                continue
            for j in range(n):
                if not b[k][j].is_zero():
                    out[i][j] = out[i][j] + a[i][k] * b[k][j]
    return out


def kk_matrix(n, w) -> list:
    """Matrix of w via its reduced word (independent of the word chosen)."""
    group = make_weyl("A", n - 1)
    if not isinstance(w, tuple):
        word = group.reduced_word(w)
    else:
        word = w
    m = kk_identity(n)
    for j in word:
        m = kk_mat_mul(m, kk_matrix_simple(n, j))
    return m


def kk_mat_eval0(m):
    return [[entry.eval0() for entry in row] for row in m]


def kk_mat_eq(a, b):
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def character(n, w, degree_piece):
    """Trace of w at t = 0 on the degree-0 or degree-2 summand."""
    if degree_piece not in (0, 1):
        raise DomainError("degree piece must be 0 or 1")
    m0 = kk_mat_eval0(kk_matrix(n, w))
    if degree_piece == 0:
        return int(m0[0][0])
    total = sum(m0[i][i] for i in range(1, n))
    if total.denominator != 1:
        raise DomainError("trace is not an integer")
    return int(total)


def cycle_type_representative(group: WeylGroup, cycle_type):
    """Canonical element of S_n with the given cycle type (a partition)."""
    n = group.dim
    if sum(cycle_type) != n:
        raise DomainError(f"{cycle_type} does not partition {n}")
    signed = [0] * n
    start = 0
    for part in cycle_type:
        for offset in range(part):
            signed[start + offset] = start + 1 + (offset + 1) % part
        start += part
    return group.parse_one_line("[" + ",".join(map(str, signed)) + "]")


def fixed_point_count(w):
    return sum(1 for i, k in enumerate(w.signed, start=1) if k == i)


# ---------------------------------------------------------------------------
# the row-strict filling model of shape (n-1, 1)
# ---------------------------------------------------------------------------


def filling_action(n, w, bottom):
    """Image of the filling with the given bottom-box entry under w.

    The literal two-step rule: put w(i) in the box where the filling had
    i, then re-sort the top row.  The result is the filling whose bottom
    box holds w(bottom).
    """
    top = [k for k in range(1, n + 1) if k != bottom]
    new_top = sorted(w.signed[k - 1] for k in top)
    new_bottom = w.signed[bottom - 1]
    assert new_top == [k for k in range(1, n + 1) if k != new_bottom]
    return new_bottom


def gp_character(n, w, degree_piece):
    """Trace of w on the graded pieces of the filling model.

    Degree 0 is spanned by the sum of all fillings; degree 1 by the
    differences T_j - T_1 (j = 2..n), whose span carries the classical
    top-degree subregular action.
    """
    if degree_piece not in (0, 1):
        raise DomainError("degree piece must be 0 or 1")
    if degree_piece == 0:
        return 1  # w permutes the fillings, fixing their sum
    total = 0
    image_of_1 = filling_action(n, w, 1)
    for j in range(2, n + 1):
        image = filling_action(n, w, j)
        # w(T_j - T_1) = v_{w(j)} - v_{w(1)} with v_1 = 0
        if image == j:
            total += 1
        if image_of_1 == j:
            total -= 1
    return total


# ---------------------------------------------------------------------------
# character tables
# ---------------------------------------------------------------------------


def cycle_types(n):
    """All partitions of n, largest part first, in lexicographic order."""
    out = []

    def build(remaining, cap, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for part in range(min(remaining, cap), 0, -1):
            build(remaining - part, part, prefix + [part])

    build(n, n, [])
    return out


def character_table(n):
    """Rows: cycle type, #fix, degree-0/2 matrix traces, model traces, match."""
    group = make_weyl("A", n - 1)
    rows = []
    for ct in cycle_types(n):
        w = cycle_type_representative(group, ct)
        fixed = fixed_point_count(w)
        psi0 = character(n, w, 0)
        psi1 = character(n, w, 1)
        chi0 = gp_character(n, w, 0)
        chi1 = gp_character(n, w, 1)
        rows.append(
            {
                "cycle_type": ct,
                "fixed_points": fixed,
                "psi0": psi0,
                "psi1": psi1,
                "chi0": chi0,
                "chi1": chi1,
                "match": psi0 == chi0 and psi1 == chi1,
            }
        )
    return rows
