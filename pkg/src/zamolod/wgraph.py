"""W-graphs for I2(p) and I2(p) x I2(q), checked by exact polynomial matrices.

Hecke operators act on the span of the vertices:

    T_i(u) = q u                                   if i not in tau(u)
    T_i(u) = -u + q^(1/2) sum_{w: i not in tau(w)} m_uw w   otherwise

with ground ring Z[v], q = v^2.  Operator matrices are stored as coefficient
stacks: an array of shape (deg+1, n, n) of Python ints (dtype=object), so
all arithmetic is exact.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .biagram import DynkinBiagram, recognize, _support_components


class PropagationConflict(ValueError):
    pass


class RelationFailure(AssertionError):
    def __init__(self, relation: str, witness: Tuple[int, int]):
        super().__init__(f"relation {relation} fails at matrix entry {witness}")
        self.relation = relation
        self.witness = witness


# ---------------------------------------------------------------------------
# phi_p
# ---------------------------------------------------------------------------

def phi(p: int) -> List[int]:
    """Coefficients (ascending powers of t) of phi_p, phi_{r+1} = t phi_r - phi_{r-1}."""
    if p < 1:
        raise ValueError("p must be >= 1")
    prev, cur = [0], [1]
    for _ in range(p - 1):
        nxt = [0] + cur
        for k, c in enumerate(prev):
            nxt[k] -= c
        prev, cur = cur, nxt
    while len(cur) > 1 and cur[-1] == 0:
        cur.pop()
    return cur


def phi_matrix(adjacency: Sequence[Sequence[int]], p: int) -> np.ndarray:
    """phi_p evaluated at an integer matrix, by the same three-term recurrence."""
    m = np.array(adjacency, dtype=object)
    n = m.shape[0]
    prev = np.zeros((n, n), dtype=object)
    cur = np.identity(n, dtype=object)
    for _ in range(p - 1):
        prev, cur = cur, m.dot(cur) - prev
    return cur


def is_I2p_cell(adjacency: Sequence[Sequence[int]], p: int) -> bool:
    """True iff phi_p(m) vanishes as an integer matrix."""
    return not np.any(phi_matrix(adjacency, p) != 0)


def is_I2p_cell_by_type(adjacency: Sequence[Sequence[int]], p: int) -> bool:
    """Independent route: every component is Dynkin with Coxeter number dividing p."""
    comps = _support_components(adjacency)
    for comp in comps:
        rec = recognize(adjacency, comp)
        if rec is None or p % rec.dtype.coxeter_number != 0:
            return False
    return True


# ---------------------------------------------------------------------------
# Cell graphs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CellGraph:
    n: int
    m: np.ndarray  # coefficient stack (deg+1, n, n) of edge weights in v
    tau: Tuple[FrozenSet[int], ...]

    @classmethod
    def from_int_matrix(cls, m: Sequence[Sequence[int]], tau: Sequence[Iterable[int]]) -> "CellGraph":
        arr = np.array([m], dtype=object)
        return cls(len(m), arr, tuple(frozenset(t) for t in tau))

    def is_reduced(self) -> bool:
        for u in range(self.n):
            for w in range(self.n):
                if u != w and self.tau[u] <= self.tau[w] and np.any(self.m[:, u, w] != 0):
                    return False
        return True

    def with_weight(self, u: int, w: int, value: int) -> "CellGraph":
        m = self.m.copy()
        m[:, u, w] = 0
        m[0, u, w] = value
        return CellGraph(self.n, m, self.tau)


def _swap(x: int) -> int:
    return {1: 2, 2: 1, 3: 4, 4: 3}[x]


SEEDS = ({1, 3}, {2, 3}, {1, 4}, {2, 4})


def build_product_cell(bg: DynkinBiagram, seed_tau: Iterable[int], start: int = 0) -> CellGraph:
    """Propagate tau from ``start``: Gamma edges swap 1<->2, Delta edges swap 3<->4.

    If Delta is trivial the seed may be {1}, {2}, {1,3,4}, {2,3,4}; if Gamma is
    trivial, {3}, {4}, {1,2,3}, {1,2,4}.  Edge weights are m = Gamma + Delta.
    """
    seed = frozenset(seed_tau)
    n = bg.n
    tau: List[Optional[FrozenSet[int]]] = [None] * n
    # every connected component is seeded at its smallest vertex
    for root in [start] + list(range(n)):
        if tau[root] is None:
            tau[root] = seed
            _propagate(bg, tau, root)
    m = [[bg.gamma[u][w] + bg.delta[u][w] for w in range(n)] for u in range(n)]
    return CellGraph.from_int_matrix(m, tau)


def _propagate(bg: DynkinBiagram, tau, start: int) -> None:
    n = bg.n
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in range(n):
            if bg.gamma[u][w]:
                pair = (1, 2)
            elif bg.delta[u][w]:
                pair = (3, 4)
            else:
                continue
            new = frozenset(_swap(x) if x in pair else x for x in tau[u])
            if tau[w] is None:
                tau[w] = new
                queue.append(w)
            elif tau[w] != new:
                raise PropagationConflict(f"vertex {w} receives {sorted(tau[w])} and {sorted(new)}")


def product_cells(bg: DynkinBiagram) -> List[CellGraph]:
    has_g = any(any(r) for r in bg.gamma)
    has_d = any(any(r) for r in bg.delta)
    if has_g == has_d:
        seeds = SEEDS
    elif has_g:
        seeds = ({1}, {2}, {1, 3, 4}, {2, 3, 4})
    else:
        seeds = ({3}, {4}, {1, 2, 3}, {1, 2, 4})
    return [build_product_cell(bg, s) for s in seeds]


# ---------------------------------------------------------------------------
# Polynomial matrices and relations
# ---------------------------------------------------------------------------

def _pm_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.zeros((a.shape[0] + b.shape[0] - 1, a.shape[1], b.shape[2]), dtype=object)
    for i in range(a.shape[0]):
        if not np.any(a[i] != 0):
            continue
        for j in range(b.shape[0]):
            if np.any(b[j] != 0):
                out[i + j] += a[i].dot(b[j])
    return out


def _pm_sub(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    d = max(a.shape[0], b.shape[0])
    out = np.zeros((d,) + a.shape[1:], dtype=object)
    out[: a.shape[0]] += a
    out[: b.shape[0]] -= b
    return out


def _first_nonzero(a: np.ndarray) -> Optional[Tuple[int, int]]:
    nz = np.argwhere(a != 0)
    if len(nz) == 0:
        return None
    _, r, c = nz[0]
    return int(r), int(c)


def operator(cell: CellGraph, i: int) -> np.ndarray:
    """Matrix of T_i in the vertex basis (column u = image of u)."""
    n = cell.n
    dm = cell.m.shape[0]
    out = np.zeros((max(3, dm + 1), n, n), dtype=object)
    for u in range(n):
        if i not in cell.tau[u]:
            out[2, u, u] += 1
        else:
            out[0, u, u] -= 1
            for w in range(n):
                if i not in cell.tau[w]:
                    out[1:dm + 1, w, u] += cell.m[:, u, w]
    return out


def _identity(n: int) -> np.ndarray:
    return np.array([np.identity(n, dtype=object)])


def _braid_word(a: np.ndarray, b: np.ndarray, length: int) -> np.ndarray:
    out = None
    for k in range(length):
        f = a if k % 2 == 0 else b
        out = f if out is None else _pm_mul(out, f)
    return out


def verify_hecke_relations(
    cell: CellGraph, p: int, q_order: int, generators: Sequence[int] = (1, 2, 3, 4), raise_on_failure: bool = True
) -> Dict[str, Optional[Tuple[int, int]]]:
    """Check quadratic, braid and commutation relations; returns relation -> witness (None = ok)."""
    n = cell.n
    T = {i: operator(cell, i) for i in generators}
    report: Dict[str, Optional[Tuple[int, int]]] = {}
    q_minus = np.zeros((3, n, n), dtype=object)
    q_minus[2] = np.identity(n, dtype=object)
    one = _identity(n)
    for i in generators:
        lhs = _pm_mul(_pm_sub(T[i], q_minus), _pm_sub(T[i], -one))
        report[f"quadratic T{i}"] = _first_nonzero(lhs)
    pairs = [((1, 2), p), ((3, 4), q_order)]
    for (a, b), length in pairs:
        if a in T and b in T:
            diff = _pm_sub(_braid_word(T[a], T[b], length), _braid_word(T[b], T[a], length))
            report[f"braid T{a}T{b} (length {length})"] = _first_nonzero(diff)
    for a, b in ((1, 3), (1, 4), (2, 3), (2, 4)):
        if a in T and b in T:
            diff = _pm_sub(_pm_mul(T[a], T[b]), _pm_mul(T[b], T[a]))
            report[f"commute T{a}T{b}"] = _first_nonzero(diff)
    if raise_on_failure:
        for rel, wit in report.items():
            if wit is not None:
                raise RelationFailure(rel, wit)
    return report


def _pad(a: np.ndarray, d: int) -> np.ndarray:
    out = np.zeros((d,) + a.shape[1:], dtype=object)
    out[: a.shape[0]] += a
    return out


def commutator(cell: CellGraph, a: int, b: int) -> np.ndarray:
    T_a, T_b = operator(cell, a), operator(cell, b)
    return _pm_sub(_pm_mul(T_a, T_b), _pm_mul(T_b, T_a))
