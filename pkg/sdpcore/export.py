"""
Debug dump of an assembled problem in SDPA sparse format (``.dat-s``).

The cone program produced by cvxpy for SCS, ``min c^T x  s.t.  b - A x in K``,
is rewritten as ``min c^T x  s.t.  sum_i x_i F_i - F_0 >= 0`` with one
diagonal block for the linear rows (equalities become two inequalities) and
one block per semidefinite cone.
"""
import io
import math
from typing import List, Optional, TextIO, Tuple

import cvxpy as cp
import numpy as np

from .problem import SdpProblem

Entry = Tuple[int, int, int, int, float]


def _svec_positions(n: int) -> List[Tuple[int, int]]:
    """Column-major lower-triangle order used by SCS."""
    return [(i, j) for j in range(n) for i in range(j, n)]


def export_sdpa(problem: SdpProblem, stream: Optional[TextIO] = None) -> str:
    """
    Write the problem in SDPA sparse format.

    Args:
        problem: Assembled problem
        stream: Optional text stream to write to

    Returns:
        The SDPA text
    """
    prob = problem.to_cvxpy()
    data, _, _ = prob.get_problem_data(cp.SCS)
    a = data["A"].tocsc()
    b = np.asarray(data["b"], dtype=float)
    c = np.asarray(data["c"], dtype=float)
    dims = data["dims"]
    if getattr(dims, "soc", None) or getattr(dims, "exp", 0) or getattr(dims, "p3d", None):
        raise ValueError("only zero, nonnegative and semidefinite cones can be exported")

    m = c.size
    dense = a.toarray()
    entries: List[Entry] = []
    lp_rows = []
    row = 0
    for _ in range(dims.zero):
        lp_rows.append((row, 1.0))
        lp_rows.append((row, -1.0))
        row += 1
    for _ in range(dims.nonneg):
        lp_rows.append((row, 1.0))
        row += 1

    block_sizes: List[int] = []
    block = 0
    if lp_rows:
        block += 1
        block_sizes.append(-len(lp_rows))
        for pos, (r, sign) in enumerate(lp_rows, start=1):
            if b[r] != 0.0:
                entries.append((0, block, pos, pos, -sign * b[r]))
            for i in np.nonzero(dense[r])[0]:
                entries.append((int(i) + 1, block, pos, pos, -sign * dense[r, i]))

    for n in dims.psd:
        block += 1
        block_sizes.append(n)
        for (i, j) in _svec_positions(n):
            scale = 1.0 if i == j else 1.0 / math.sqrt(2.0)
            p, q = min(i, j) + 1, max(i, j) + 1
            if b[row] != 0.0:
                entries.append((0, block, p, q, -scale * b[row]))
            for k in np.nonzero(dense[row])[0]:
                entries.append((int(k) + 1, block, p, q, -scale * dense[row, k]))
            row += 1

    out = io.StringIO()
    out.write(f'"{problem.name}: exported from cvxpy cone form"\n')
    out.write(f"{m}\n{len(block_sizes)}\n")
    out.write(" ".join(str(s) for s in block_sizes) + "\n")
    out.write(" ".join(repr(float(v)) for v in c) + "\n")
    for mat, blk, i, j, value in entries:
        out.write(f"{mat} {blk} {i} {j} {value!r}\n")
    text = out.getvalue()
    if stream is not None:
        stream.write(text)
    return text
