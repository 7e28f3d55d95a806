"""Pure-NumPy fallback kernels for exact linear algebra over small fields.

Field elements are encoded as integers ``0..q-1`` and all arithmetic goes
through lookup tables, so the same kernels serve prime fields and extension
fields alike.  ``chainring._gfcore`` is the compiled twin with the same
signatures; ``chainring.linalg`` picks whichever is importable.
"""

BACKEND = "python"


def rref(mat, addt, subt, mult, invt, pivots_out):
    """Reduce ``mat`` to reduced row-echelon form in place.

    Returns the rank; writes pivot column indices into ``pivots_out``.
    """
    nrows, ncols = mat.shape
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        pivot = -1
        for row in range(rank, nrows):
            if mat[row, col]:
                pivot = row
                break
        if pivot < 0:
            continue
        if pivot != rank:
            mat[[rank, pivot]] = mat[[pivot, rank]]
        scale = invt[mat[rank, col]]
        if scale != 1:
            mat[rank] = mult[scale, mat[rank]]
        factors = mat[:, col].copy()
        factors[rank] = 0
        hit = factors.nonzero()[0]
        if hit.size:
            mat[hit] = subt[mat[hit], mult[factors[hit][:, None], mat[rank][None, :]]]
        pivots_out[rank] = col
        rank += 1
    return rank


def reduce_rows(rows, basis, pivots, addt, subt, mult):
    """Reduce every row of ``rows`` against an RREF ``basis`` in place."""
    for j in range(basis.shape[0]):
        col = pivots[j]
        factors = rows[:, col].copy()
        hit = factors.nonzero()[0]
        if hit.size:
            rows[hit] = subt[rows[hit], mult[factors[hit][:, None], basis[j][None, :]]]
