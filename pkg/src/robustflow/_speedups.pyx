# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled simplex pivot kernel.

 semantics identical to ``_pivot_py.eliminate``; the arithmetic stays on
exact rational Python objects, Cython only removes the interpreter overhead
of the double loop.
"""


cpdef eliminate(list rows, list prow, Py_ssize_t col, list nz):
    cdef Py_ssize_t i, k, j
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t nnz = len(nz)
    cdef list row
    cdef object f
    for i in range(nrows):
        row = <list> rows[i]
        f = row[col]
        if f:
            for k in range(nnz):
                j = nz[k]
                row[j] = row[j] - f * prow[j]
