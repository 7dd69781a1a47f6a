"""Pure-Python simplex pivot kernel (fallback for the compiled one)."""

from __future__ import annotations


def eliminate(rows, prow, col, nz):
    """Subtract ``row[col] * prow`` from every row in ``rows``.

    ``prow`` must already be normalized (``prow[col] == 1``) and is not in
    ``rows``.  ``nz`` lists the indices where ``prow`` is nonzero; all other
    columns are unchanged.  This is the hot loop of the solver.
    """
    for row in rows:
        f = row[col]
        if f:
            for j in nz:
                row[j] = row[j] - f * prow[j]
