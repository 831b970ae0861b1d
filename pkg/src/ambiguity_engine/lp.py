"""Exact two-phase simplex over :class:`fractions.Fraction`.

Solves ``min c.x  s.t.  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0``.
Bland's rule is used for both phases, so the method terminates on
degenerate problems. Intended for the small dense systems that show up in
credal-set geometry (tens of variables), not for general use.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class LPResult:
    status: str
    x: Optional[tuple] = None
    fun: Optional[Fraction] = None

    @property
    def success(self):
        return self.status == OPTIMAL


def _frac(v):
    return v if type(v) is Fraction else Fraction(v)


def _pivot(T, basis, row, col):
    piv = T[row][col]
    if piv != 1:
        T[row] = [v / piv for v in T[row]]
    prow = T[row]
    for i, r in enumerate(T):
        if i == row:
            continue
        f = r[col]
        if f:
            T[i] = [a - f * b for a, b in zip(r, prow)]
    basis[row] = col


def _run(T, basis, cost, allowed):
    """Minimize ``cost`` from a canonical tableau. Returns False if unbounded."""
    rhs = len(T[0]) - 1 if T else 0
    while True:
        entering = None
        for j in allowed:
            if j in basis:
                continue
            r = cost[j]
            for i, b in enumerate(basis):
                cb = cost[b]
                if cb:
                    r -= cb * T[i][j]
            if r < 0:
                entering = j
                break
        if entering is None:
            return True
        best = None
        for i, row in enumerate(T):
            a = row[entering]
            if a > 0:
                ratio = row[rhs] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        _pivot(T, basis, best[1], entering)


def linprog(c: Sequence, A_ub: Sequence = (), b_ub: Sequence = (),
            A_eq: Sequence = (), b_eq: Sequence = ()) -> LPResult:
    """Minimize ``c . x`` subject to linear constraints and ``x >= 0``."""
    n = len(c)
    c = [_frac(v) for v in c]
    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    m_ub = len(A_ub)
    if len(b_ub) != m_ub or len(b_eq) != len(A_eq):
        raise ValueError("constraint matrix and right-hand side lengths differ")
    for k, (a, b) in enumerate(zip(A_ub, b_ub)):
        if len(a) != n:
            raise ValueError("row length does not match objective")
        slack = [_ZERO] * m_ub
        slack[k] = _ONE
        rows.append([_frac(v) for v in a] + slack)
        rhs.append(_frac(b))
    for a, b in zip(A_eq, b_eq):
        if len(a) != n:
            raise ValueError("row length does not match objective")
        rows.append([_frac(v) for v in a] + [_ZERO] * m_ub)
        rhs.append(_frac(b))

    m = len(rows)
    nvar = n + m_ub
    if m == 0:
        if any(v < 0 for v in c):
            return LPResult(UNBOUNDED)
        return LPResult(OPTIMAL, tuple([_ZERO] * n), _ZERO)

    T = []
    for i, (r, b) in enumerate(zip(rows, rhs)):
        if b < 0:
            r = [-v for v in r]
            b = -b
        art = [_ZERO] * m
        art[i] = _ONE
        T.append(r + art + [b])
    basis = list(range(nvar, nvar + m))
    phase1 = [_ZERO] * nvar + [_ONE] * m
    _run(T, basis, phase1, range(nvar + m))
    if sum(T[i][-1] for i, b in enumerate(basis) if b >= nvar) > 0:
        return LPResult(INFEASIBLE)

    # drive artificials out of the basis; drop redundant rows
    i = 0
    while i < len(T):
        if basis[i] >= nvar:
            col = next((j for j in range(nvar) if T[i][j] != 0), None)
            if col is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, basis, i, col)
        i += 1
    T = [row[:nvar] + [row[-1]] for row in T]

    cost = c + [_ZERO] * m_ub
    if not T:
        if any(v < 0 for v in cost):
            return LPResult(UNBOUNDED)
        return LPResult(OPTIMAL, tuple([_ZERO] * n), _ZERO)
    if not _run(T, basis, cost, range(nvar)):
        return LPResult(UNBOUNDED)
    x = [_ZERO] * nvar
    for i, b in enumerate(basis):
        x[b] = T[i][-1]
    fun = sum((cv * xv for cv, xv in zip(c, x)), _ZERO)
    return LPResult(OPTIMAL, tuple(x[:n]), fun)


def feasible_point(A_eq: Sequence, b_eq: Sequence, A_ub: Sequence = (), b_ub: Sequence = ()):
    """A nonnegative solution of the system, or None if there is none."""
    n = len(A_eq[0]) if A_eq else len(A_ub[0])
    res = linprog([0] * n, A_ub, b_ub, A_eq, b_eq)
    return res.x if res.success else None
