"""Exact-arithmetic linear programming.

A deliberately small LP toolkit: nonnegative (or free) variables, three
relation kinds, one objective, and a two-phase primal simplex with Bland's
rule over exact rationals.  There is no floating point anywhere, no
tolerance knobs, and statuses are decided exactly: ``optimal``,
``infeasible`` or ``unbounded``.

The pivot inner loop runs through a compiled Cython kernel when available
(``robustflow._speedups``), falling back to the pure-Python twin; set
``ROBUSTFLOW_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .rational import ONE, ZERO, rat

if os.environ.get("ROBUSTFLOW_PURE_PYTHON"):
    from . import _pivot_py as _kernel

    KERNEL = "python"
else:
    try:
        from . import _speedups as _kernel  # type: ignore[attr-defined]

        KERNEL = "compiled"
    except ImportError:
        from . import _pivot_py as _kernel

        KERNEL = "python"

_RELATIONS = ("<=", ">=", "==")


class LpError(ValueError):
    """Malformed LP input."""


@dataclass
class _Constraint:
    coeffs: dict
    rel: str
    rhs: object
    label: Optional[str]


class LinearProgram:
    """LP container; variables are nonnegative unless declared free."""

    def __init__(self, sense: str = "max") -> None:
        if sense not in ("max", "min"):
            raise LpError(f"sense must be 'max' or 'min', got {sense!r}")
        self.sense = sense
        self.var_names: list = []
        self.free: list = []
        self.objective: dict = {}
        self.constraints: list = []

    def add_var(self, name: Optional[str] = None, *, free: bool = False) -> int:
        idx = len(self.var_names)
        self.var_names.append(name if name is not None else f"x{idx}")
        self.free.append(bool(free))
        return idx

    def set_objective(self, coeffs: Mapping) -> None:
        self.objective = {j: rat(c) for j, c in coeffs.items() if rat(c) != 0}
        self._check_indices(self.objective)

    def add_constraint(
        self, coeffs: Mapping, rel: str, rhs, label: Optional[str] = None
    ) -> int:
        if rel not in _RELATIONS:
            raise LpError(f"relation must be one of {_RELATIONS}, got {rel!r}")
        clean = {j: rat(c) for j, c in coeffs.items() if rat(c) != 0}
        self._check_indices(clean)
        self.constraints.append(_Constraint(clean, rel, rat(rhs), label))
        return len(self.constraints) - 1

    def _check_indices(self, coeffs: Mapping) -> None:
        for j in coeffs:
            if not isinstance(j, int) or not 0 <= j < len(self.var_names):
                raise LpError(f"unknown variable index {j!r}")

    @property
    def n_vars(self) -> int:
        return len(self.var_names)

    @property
    def n_constraints(self) -> int:
        return len(self.constraints)


@dataclass(frozen=True)
class LpSolution:
    status: str
    objective_value: Optional[object]
    values: tuple


@dataclass(frozen=True)
class LexSolution:
    status: str
    primary_value: Optional[object]
    secondary_value: Optional[object]
    values: tuple


def dump_lp(lp: LinearProgram) -> str:
    """Plain-text rendering of the LP, mainly for debugging and goldens."""

    def term(j, c, first):
        name = lp.var_names[j]
        sign = "-" if c < 0 else ("" if first else "+")
        mag = abs(c)
        coef = "" if mag == 1 else f"{mag} "
        return f"{sign}{' ' if sign and not first else ''}{coef}{name}".strip()

    def linear(coeffs):
        if not coeffs:
            return "0"
        parts = []
        for k, j in enumerate(sorted(coeffs)):
            parts.append(term(j, coeffs[j], k == 0))
        return " ".join(parts)

    lines = [f"{lp.sense}: {linear(lp.objective)}", "subject to:"]
    for i, con in enumerate(lp.constraints):
        tag = f" [{con.label}]" if con.label else ""
        lines.append(f"  c{i}{tag}: {linear(con.coeffs)} {con.rel} {con.rhs}")
    frees = [lp.var_names[j] for j in range(lp.n_vars) if lp.free[j]]
    lines.append(f"free: {', '.join(frees) if frees else '(none)'}")
    return "\n".join(lines) + "\n"


class _Simplex:
    """Dense-tableau two-phase simplex with Bland's rule, exact arithmetic.

    Kept as an object so a solved tableau can be extended with pin rows and
    re-optimized for lexicographic objectives without a cold restart.
    """

    def __init__(self, lp: LinearProgram) -> None:
        self.lp = lp
        # Structural columns: free variables are split into two parts.
        self.col_pos: list = []
        self.col_neg: list = []
        n = 0
        for j in range(lp.n_vars):
            self.col_pos.append(n)
            n += 1
            if lp.free[j]:
                self.col_neg.append(n)
                n += 1
            else:
                self.col_neg.append(None)
        self.nstruct = n
        # Constraints in <= form (equalities become two rows).
        halves = []
        for con in lp.constraints:
            dense = [ZERO] * n
            for j, c in con.coeffs.items():
                dense[self.col_pos[j]] += c
                if self.col_neg[j] is not None:
                    dense[self.col_neg[j]] -= c
            if con.rel in ("<=", "=="):
                halves.append((dense, con.rhs))
            if con.rel in (">=", "=="):
                halves.append(([-c for c in dense], -con.rhs))
        m = len(halves)
        art_rows = [i for i, (_, b) in enumerate(halves) if b < 0]
        ncols = n + m + len(art_rows)
        self.rows: list = []
        self.basis: list = []
        self.enterable = [True] * ncols
        art_at = n + m
        for i, (dense, b) in enumerate(halves):
            row = list(dense) + [ZERO] * (m + len(art_rows)) + [b]
            row[n + i] = ONE
            if b < 0:
                for j in range(ncols):
                    row[j] = -row[j]
                row[-1] = -b
                row[art_at] = ONE
                self.enterable[art_at] = False
                self.basis.append(art_at)
                art_at += 1
            else:
                self.basis.append(n + i)
            self.rows.append(row)
        self.ncols = ncols
        self.has_artificials = bool(art_rows)
        self.obj: list = []

    # -- pivoting ---------------------------------------------------------

    def _pivot(self, i: int, col: int) -> None:
        prow = self.rows[i]
        piv = prow[col]
        if piv != 1:
            for j in range(len(prow)):
                if prow[j]:
                    prow[j] = prow[j] / piv
        nz = [j for j in range(len(prow)) if prow[j]]
        others = self.rows[:i] + self.rows[i + 1 :]
        others.append(self.obj)
        _kernel.eliminate(others, prow, col, nz)
        self.basis[i] = col

    def _run(self) -> str:
        rows, basis, obj = self.rows, self.basis, self.obj
        while True:
            col = -1
            for j in range(self.ncols):
                if self.enterable[j] and obj[j] > 0:
                    col = j
                    break
            if col < 0:
                return "optimal"
            best_i = -1
            best_ratio = None
            for i, row in enumerate(rows):
                a = row[col]
                if a > 0:
                    ratio = row[-1] / a
                    if (
                        best_ratio is None
                        or ratio < best_ratio
                        or (ratio == best_ratio and basis[i] < basis[best_i])
                    ):
                        best_ratio = ratio
                        best_i = i
            if best_i < 0:
                return "unbounded"
            self._pivot(best_i, col)

    # -- phases -----------------------------------------------------------

    def _phase1(self) -> bool:
        """Returns True when a feasible basis was reached."""
        if not self.has_artificials:
            return True
        obj = [ZERO] * (self.ncols + 1)
        for i, row in enumerate(self.rows):
            if not self.enterable[self.basis[i]]:
                for j in range(self.ncols + 1):
                    if row[j]:
                        obj[j] = obj[j] + row[j]
        for j in range(self.ncols):
            if not self.enterable[j]:
                obj[j] = obj[j] - ONE
        self.obj = obj
        status = self._run()
        assert status == "optimal", "phase 1 cannot be unbounded"
        if self.obj[-1] != 0:
            return False
        # Drive leftover artificials (all at value 0) out of the basis.
        drop = []
        for i in range(len(self.rows)):
            if not self.enterable[self.basis[i]]:
                row = self.rows[i]
                col = next((j for j in range(self.ncols) if self.enterable[j] and row[j]), None)
                if col is None:
                    drop.append(i)
                else:
                    self._pivot(i, col)
        for i in reversed(drop):
            del self.rows[i]
            del self.basis[i]
        return True

    def _phase2(self, coeffs: Mapping) -> str:
        obj = [ZERO] * (self.ncols + 1)
        sign = ONE if self.lp.sense == "max" else -ONE
        for j, c in coeffs.items():
            obj[self.col_pos[j]] += sign * c
            if self.col_neg[j] is not None:
                obj[self.col_neg[j]] -= sign * c
        for i, row in enumerate(self.rows):
            f = obj[self.basis[i]]
            if f:
                for j in range(self.ncols + 1):
                    if row[j]:
                        obj[j] = obj[j] - f * row[j]
        self.obj = obj
        return self._run()

    # -- results ----------------------------------------------------------

    def column_values(self) -> list:
        vals = [ZERO] * self.ncols
        for i, row in enumerate(self.rows):
            vals[self.basis[i]] = row[-1]
        return vals

    def var_values(self) -> tuple:
        cols = self.column_values()
        out = []
        for j in range(self.lp.n_vars):
            v = cols[self.col_pos[j]]
            if self.col_neg[j] is not None:
                v = v - cols[self.col_neg[j]]
            out.append(v)
        return tuple(out)

    def objective_of(self, coeffs: Mapping, values: Sequence) -> object:
        return sum((rat(c) * values[j] for j, c in coeffs.items()), ZERO)

    # -- lexicographic continuation ----------------------------------------

    def pin_objective(self, coeffs: Mapping, value) -> None:
        """Add rows fixing ``coeffs . x == value``; the current vertex stays basic."""
        for sense_flip in (False, True):
            ncols = self.ncols
            for row in self.rows:
                row.insert(ncols, ZERO)
            self.obj = []
            dense = [ZERO] * (ncols + 2)
            for j, c in coeffs.items():
                c = rat(c) if not sense_flip else -rat(c)
                dense[self.col_pos[j]] += c
                if self.col_neg[j] is not None:
                    dense[self.col_neg[j]] -= c
            dense[ncols] = ONE
            dense[-1] = rat(value) if not sense_flip else -rat(value)
            self.ncols = ncols + 1
            self.enterable.append(True)
            for i, row in enumerate(self.rows):
                f = dense[self.basis[i]]
                if f:
                    for j in range(self.ncols + 1):
                        if row[j]:
                            dense[j] = dense[j] - f * row[j]
            assert dense[-1] == 0, "pin row must be tight at the solved vertex"
            self.rows.append(dense)
            self.basis.append(ncols)


def solve_lp(lp: LinearProgram) -> LpSolution:
    """Solve exactly; statuses are ``optimal``/``infeasible``/``unbounded``."""
    simplex = _Simplex(lp)
    solution, _ = _solve_with(simplex)
    return solution


def _solve_with(simplex: _Simplex):
    lp = simplex.lp
    if not simplex._phase1():
        return LpSolution("infeasible", None, ()), simplex
    status = simplex._phase2(lp.objective)
    if status == "unbounded":
        return LpSolution("unbounded", None, ()), simplex
    values = simplex.var_values()
    _verify(lp, values)
    return LpSolution("optimal", simplex.objective_of(lp.objective, values), values), simplex


def _verify(lp: LinearProgram, values: Sequence) -> None:
    for j in range(lp.n_vars):
        assert lp.free[j] or values[j] >= 0, "solver produced a negative variable"
    for con in lp.constraints:
        lhs = sum((c * values[j] for j, c in con.coeffs.items()), ZERO)
        ok = lhs <= con.rhs if con.rel == "<=" else lhs >= con.rhs if con.rel == ">=" else lhs == con.rhs
        assert ok, f"solver violated constraint {con.label or ''}"


def lexicographic_solve(lp: LinearProgram, secondary: Mapping) -> LexSolution:
    """Optimize ``lp``'s objective, then ``secondary`` among its optima.

    Both objectives share ``lp.sense``.  The follow-up solve warm-continues
    from the optimal tableau with the primary objective pinned to its value.
    """
    first, simplex = _solve_with(_Simplex(lp))
    if first.status != "optimal":
        return LexSolution(first.status, None, None, ())
    simplex.pin_objective(lp.objective, first.objective_value)
    status = simplex._phase2(secondary)
    if status == "unbounded":
        return LexSolution("unbounded", first.objective_value, None, ())
    values = simplex.var_values()
    _verify(lp, values)
    primary = simplex.objective_of(lp.objective, values)
    assert primary == first.objective_value, "lexicographic step moved the primary objective"
    return LexSolution("optimal", primary, simplex.objective_of(secondary, values), values)
