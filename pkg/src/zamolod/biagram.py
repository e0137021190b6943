"""Dynkin biagrams: pairs (Gamma, Delta) of Coxeter adjacency matrices.

Covers the data model, recognition of Dynkin components against numbered
templates, Coxeter numbers and color types, closed-form dominant
eigenvectors, the finite-type test, and the two labelings (strictly
subadditive, fixed point) that certify Zamolodchikov periodicity.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from networkx.algorithms import isomorphism

from .exchange import (
    BLACK,
    WHITE,
    ExchangeMatrix,
    Matrix,
    as_matrix,
    decompose,
    normalize_color,
    opposite,
    recompose,
)

EIG_MARGIN = 1e-9


class NonDynkinComponent(ValueError):
    def __init__(self, vertices):
        super().__init__(f"component {sorted(vertices)} matches no Dynkin template")
        self.vertices = tuple(sorted(vertices))


class MixedCoxeterNumbers(ValueError):
    pass


class NoConvergence(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# Biagram data model
# ---------------------------------------------------------------------------

def _matmul(a: Matrix, b: Matrix) -> List[List[int]]:
    n = len(a)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for k in range(n):
            x = ai[k]
            if x:
                bk = b[k]
                for j in range(n):
                    if bk[j]:
                        oi[j] += x * bk[j]
    return out


@dataclass(frozen=True)
class DynkinBiagram:
    gamma: Matrix
    delta: Matrix
    eps: Tuple[str, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        g = as_matrix(self.gamma)
        d = as_matrix(self.delta)
        eps = tuple(normalize_color(c) for c in self.eps)
        object.__setattr__(self, "gamma", g)
        object.__setattr__(self, "delta", d)
        object.__setattr__(self, "eps", eps)
        n = len(g)
        if len(d) != n or len(eps) != n:
            raise ValueError("gamma, delta and eps must have the same size")
        for i in range(n):
            for j in range(n):
                gij, dij = g[i][j], d[i][j]
                if gij < 0 or dij < 0:
                    raise ValueError("Coxeter adjacency matrices are nonnegative")
                if gij and dij:
                    raise ValueError(f"gamma and delta share the entry ({i},{j})")
                if (gij > 0) != (g[j][i] > 0) or (dij > 0) != (d[j][i] > 0):
                    raise ValueError(f"support is not symmetric at ({i},{j})")
                if (gij or dij) and eps[i] == eps[j]:
                    raise ValueError(f"edge ({i},{j}) joins two vertices of the same color")
            if g[i][i] or d[i][i]:
                raise ValueError("diagonal must vanish")

    @property
    def n(self) -> int:
        return len(self.gamma)

    # -- conversions -------------------------------------------------------
    def to_exchange_matrix(self) -> ExchangeMatrix:
        return recompose(self.gamma, self.delta, self.eps)

    @classmethod
    def from_exchange_matrix(cls, m: ExchangeMatrix, name: str = "") -> "DynkinBiagram":
        dec = decompose(m)
        return cls(dec.gamma, dec.delta, m.eps, name)

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "gamma": [list(r) for r in self.gamma],
            "delta": [list(r) for r in self.delta],
            "eps": list(self.eps),
        }
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_json(cls, obj) -> "DynkinBiagram":
        if isinstance(obj, str):
            obj = json.loads(obj)
        if "gamma" in obj:
            bg = cls(as_matrix(obj["gamma"]), as_matrix(obj["delta"]), tuple(obj["eps"]), obj.get("name", ""))
        elif "b" in obj:
            bg = cls.from_exchange_matrix(ExchangeMatrix.from_json(obj), obj.get("name", ""))
        else:
            raise ValueError("JSON needs either gamma/delta or b")
        if "n" in obj and obj["n"] != bg.n:
            raise ValueError("declared n does not match matrix size")
        return bg

    # -- structural operations ---------------------------------------------
    def dual(self) -> "DynkinBiagram":
        return DynkinBiagram(self.delta, self.gamma, self.eps, self.name + "*" if self.name else "")

    def transpose(self) -> "DynkinBiagram":
        gt = tuple(zip(*self.gamma))
        dt = tuple(zip(*self.delta))
        return DynkinBiagram(gt, dt, self.eps, self.name)

    def recolor(self) -> "DynkinBiagram":
        """Swap the two color classes (the B-matrix changes sign)."""
        return DynkinBiagram(self.gamma, self.delta, tuple(opposite(c) for c in self.eps), self.name)

    def permute(self, order: Sequence[int]) -> "DynkinBiagram":
        """New vertex i is old vertex order[i]."""
        order = list(order)
        if sorted(order) != list(range(self.n)):
            raise ValueError("order must be a permutation")
        g = [[self.gamma[a][b] for b in order] for a in order]
        d = [[self.delta[a][b] for b in order] for a in order]
        return DynkinBiagram(as_matrix(g), as_matrix(d), tuple(self.eps[a] for a in order), self.name)

    def renamed(self, name: str) -> "DynkinBiagram":
        return DynkinBiagram(self.gamma, self.delta, self.eps, name)

    def adjacency(self) -> List[List[int]]:
        n = self.n
        return [[self.gamma[i][j] + self.delta[i][j] for j in range(n)] for i in range(n)]

    def components(self) -> List[List[int]]:
        """Connected components of the combined support graph."""
        return _support_components([[self.gamma[i][j] + self.delta[i][j] for j in range(self.n)] for i in range(self.n)])

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def commutator(self) -> List[List[int]]:
        """Gamma*Delta - Delta*Gamma (red-blue minus blue-red path counts)."""
        gd = _matmul(self.gamma, self.delta)
        dg = _matmul(self.delta, self.gamma)
        return [[gd[i][j] - dg[i][j] for j in range(self.n)] for i in range(self.n)]

    def nonadmissible_pairs(self) -> List[Tuple[int, int]]:
        c = self.commutator()
        return [(i, j) for i in range(self.n) for j in range(self.n) if c[i][j]]

    def is_admissible(self) -> bool:
        return not self.nonadmissible_pairs()


def disjoint_union(a: DynkinBiagram, b: DynkinBiagram, name: str = "") -> DynkinBiagram:
    n, m = a.n, b.n
    g = [[0] * (n + m) for _ in range(n + m)]
    d = [[0] * (n + m) for _ in range(n + m)]
    for i in range(n):
        for j in range(n):
            g[i][j], d[i][j] = a.gamma[i][j], a.delta[i][j]
    for i in range(m):
        for j in range(m):
            g[n + i][n + j], d[n + i][n + j] = b.gamma[i][j], b.delta[i][j]
    return DynkinBiagram(as_matrix(g), as_matrix(d), a.eps + b.eps, name)


def is_admissible(bg: DynkinBiagram) -> bool:
    return bg.is_admissible()


def _support_components(mat: Sequence[Sequence[int]]) -> List[List[int]]:
    n = len(mat)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], []
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in range(n):
                if (mat[u][v] or mat[v][u]) and not seen[v]:
                    seen[v] = True
                    stack.append(v)
        comps.append(sorted(comp))
    return comps


# ---------------------------------------------------------------------------
# Dynkin types and their numbered templates
# ---------------------------------------------------------------------------

FAMILIES = ("A", "B", "C", "D", "E", "F", "G")


@dataclass(frozen=True, order=True)
class DynkinType:
    family: str
    rank: int

    def __post_init__(self):
        f, r = self.family, self.rank
        ok = (
            (f == "A" and r >= 1)
            or (f in ("B", "C") and r >= 2)
            or (f == "D" and r >= 4)
            or (f == "E" and r in (6, 7, 8))
            or (f == "F" and r == 4)
            or (f == "G" and r == 2)
        )
        if not ok:
            raise ValueError(f"no Dynkin diagram of type {f}{r}")

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    def __str__(self) -> str:
        return self.name

    @property
    def coxeter_number(self) -> int:
        f, r = self.family, self.rank
        if f == "A":
            return r + 1
        if f in ("B", "C"):
            return 2 * r
        if f == "D":
            return 2 * r - 2
        if f == "E":
            return {6: 12, 7: 18, 8: 30}[r]
        if f == "F":
            return 12
        return 6

    @property
    def simply_laced(self) -> bool:
        return self.family in ("A", "D", "E")

    @property
    def color_type(self) -> Tuple[int, int]:
        eps = template_colors(self)
        a = sum(1 for c in eps if c == BLACK)
        return tuple(sorted((a, self.rank - a), reverse=True))

    def template(self) -> Matrix:
        return template_matrix(self)

    def dual(self) -> "DynkinType":
        """Type of the transposed template (B <-> C, everything else fixed)."""
        if self.family == "B" and self.rank >= 3:
            return DynkinType("C", self.rank)
        if self.family == "C":
            return DynkinType("B", self.rank)
        return self


def parse_type(s: str) -> DynkinType:
    s = s.strip()
    return DynkinType(s[0].upper(), int(s[1:]))


def all_types(max_rank: int) -> List[DynkinType]:
    out = []
    for r in range(1, max_rank + 1):
        out.append(DynkinType("A", r))
        if r >= 2:
            out.append(DynkinType("B", r))
        if r >= 3:
            out.append(DynkinType("C", r))
        if r >= 4:
            out.append(DynkinType("D", r))
        if r in (6, 7, 8):
            out.append(DynkinType("E", r))
        if r == 4:
            out.append(DynkinType("F", 4))
        if r == 2:
            out.append(DynkinType("G", 2))
    return out


@lru_cache(maxsize=None)
def template_matrix(t: DynkinType) -> Matrix:
    """Coxeter adjacency matrix in the numbering used for the eigenvectors.

    A_n: 0-1-...-(n-1).  B_n: weight 2 sits in row 0 (A[0][1] = 2).  C_n is
    the transpose.  D_n: leaves 0 and 1 hang off 2, then 2-3-...-(n-1).
    E_n: 0-2-3-...-(n-1) with 1 attached to 3.  F_4: 0-1=2-3 with
    A[2][1] = 2.  G_2: A[0][1] = 3.
    """
    n = t.rank
    a = [[0] * n for _ in range(n)]

    def edge(i, j, wij=1, wji=1):
        a[i][j] = wij
        a[j][i] = wji

    f = t.family
    if f in ("A", "B", "C"):
        for i in range(n - 1):
            edge(i, i + 1)
        if f == "B":
            edge(0, 1, 2, 1)
        elif f == "C":
            edge(0, 1, 1, 2)
    elif f == "D":
        edge(0, 2)
        edge(1, 2)
        for i in range(2, n - 1):
            edge(i, i + 1)
    elif f == "E":
        edge(0, 2)
        edge(1, 3)
        for i in range(2, n - 1):
            edge(i, i + 1)
    elif f == "F":
        edge(0, 1)
        edge(1, 2, 1, 2)
        edge(2, 3)
    elif f == "G":
        edge(0, 1, 3, 1)
    return as_matrix(a)


@lru_cache(maxsize=None)
def template_colors(t: DynkinType) -> Tuple[str, ...]:
    """Bipartition of the template with vertex 0 black."""
    a = template_matrix(t)
    n = t.rank
    eps: List[Optional[str]] = [None] * n
    eps[0] = BLACK
    stack = [0]
    while stack:
        u = stack.pop()
        for v in range(n):
            if a[u][v] and eps[v] is None:
                eps[v] = opposite(eps[u])
                stack.append(v)
    return tuple(eps)


def _weighted_digraph(mat: Sequence[Sequence[int]], verts: Sequence[int]) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(range(len(verts)))
    for a, u in enumerate(verts):
        for b, v in enumerate(verts):
            if mat[u][v]:
                g.add_edge(a, b, w=mat[u][v])
    return g


def _candidates(rank: int) -> List[DynkinType]:
    out = [DynkinType("A", rank)]
    if rank >= 2:
        out.append(DynkinType("B", rank))
    if rank >= 3:
        out.append(DynkinType("C", rank))
    if rank >= 4:
        out.append(DynkinType("D", rank))
    if rank in (6, 7, 8):
        out.append(DynkinType("E", rank))
    if rank == 4:
        out.append(DynkinType("F", 4))
    if rank == 2:
        out.append(DynkinType("G", 2))
    return out


@dataclass(frozen=True)
class Component:
    vertices: Tuple[int, ...]  # canonical order: vertices[k] plays template vertex k
    dtype: DynkinType


def recognize(mat: Sequence[Sequence[int]], verts: Sequence[int]) -> Optional[Component]:
    """Match the submatrix on ``verts`` against every template of that rank."""
    verts = list(verts)
    r = len(verts)
    sub = _weighted_digraph(mat, verts)
    wsum = sum(d["w"] for _, _, d in sub.edges(data=True))
    for t in _candidates(r):
        tm = template_matrix(t)
        if sum(map(sum, tm)) != wsum:
            continue
        tg = _weighted_digraph(tm, range(r))
        gm = isomorphism.DiGraphMatcher(tg, sub, edge_match=lambda x, y: x["w"] == y["w"])
        for mapping in gm.isomorphisms_iter():
            order = tuple(verts[mapping[k]] for k in range(r))
            return Component(order, t)
    return None


def decompose_components(mat: Sequence[Sequence[int]]) -> List[Component]:
    """Split a Coxeter adjacency matrix into recognized Dynkin components."""
    out = []
    for comp in _support_components(mat):
        c = recognize(mat, comp)
        if c is None:
            raise NonDynkinComponent(comp)
        out.append(c)
    return out


def is_dynkin_biagram(bg: DynkinBiagram) -> bool:
    try:
        decompose_components(bg.gamma)
        decompose_components(bg.delta)
    except NonDynkinComponent:
        return False
    return True


def _shared_h(mat) -> int:
    hs = {c.dtype.coxeter_number for c in decompose_components(mat)}
    if len(hs) != 1:
        raise MixedCoxeterNumbers(f"components have Coxeter numbers {sorted(hs)}")
    return hs.pop()


def coxeter_numbers(bg: DynkinBiagram) -> Tuple[int, int]:
    """(h_Gamma, h_Delta); isolated vertices count as A1 (h = 2)."""
    return _shared_h(bg.gamma), _shared_h(bg.delta)


def component_types(bg: DynkinBiagram) -> Tuple[List[DynkinType], List[DynkinType]]:
    g = sorted(c.dtype for c in decompose_components(bg.gamma) if c.dtype.rank > 1 or True)
    d = sorted(c.dtype for c in decompose_components(bg.delta))
    return g, d


# ---------------------------------------------------------------------------
# Eigenvectors and color sets
# ---------------------------------------------------------------------------

def dominant_eigenvalue(t: DynkinType) -> float:
    return 2 * math.cos(math.pi / t.coxeter_number)


def dominant_eigenvector(t: DynkinType, side: str = "right") -> np.ndarray:
    """Closed-form dominant eigenvector in the template numbering.

    ``right`` means A v = lambda v, ``left`` means v A = lambda v.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    if t.rank > 64:
        raise ValueError("rank above supported bound (64)")
    n, f, h = t.rank, t.family, t.coxeter_number
    if f == "A":
        return np.array([math.sin(k * math.pi / (n + 1)) for k in range(1, n + 1)])
    if f in ("B", "C"):
        tail = [math.cos(k * math.pi / (2 * n)) for k in range(1, n)]
        half_first = (f == "B") == (side == "left")
        return np.array([0.5 if half_first else 1.0] + tail)
    if f == "D":
        return np.array([0.5, 0.5] + [math.cos(k * math.pi / (2 * n - 2)) for k in range(1, n - 1)])
    if f == "E":
        th = math.pi / h
        s = math.sin
        v = [s(th) / s(3 * th), s(th) / s(2 * th), s(2 * th) / s(3 * th), 1.0]
        v += [s((n - 3 - j) * th) / s((n - 3) * th) for j in range(1, n - 3)]
        return np.array(v)
    if f == "F":
        r2, r3, r6 = math.sqrt(2), math.sqrt(3), math.sqrt(6)
        if side == "left":
            return np.array([1.0, 2 / (r6 - r2), 1 / (r3 - 1), r2 / 2])
        return np.array([1.0, 2 / (r6 - r2), 2 / (r3 - 1), r2])
    # G2
    if side == "left":
        return np.array([1.0, math.sqrt(3)])
    return np.array([1.0, math.sqrt(3) / 3])


def perron_vector(mat: Sequence[Sequence[float]], side: str = "right", iters: int = 20000, tol: float = 1e-14):
    """Shifted power iteration for a nonnegative irreducible matrix.

    Returns (eigenvalue, vector normalized to max 1).  The +I shift removes
    the period-2 oscillation of bipartite matrices.
    """
    a = np.array(mat, dtype=float)
    if side == "left":
        a = a.T
    n = a.shape[0]
    m = a + np.eye(n)
    v = np.ones(n)
    for _ in range(iters):
        w = m @ v
        w /= w.max()
        if np.max(np.abs(w - v)) < tol:
            v = w
            break
        v = w
    lam = float((a @ v).max() / v[(a @ v).argmax()]) if n else 0.0
    return lam, v


def color_sets(t: DynkinType, side: str = "right") -> Tuple[Tuple[float, ...], Tuple[float, ...]]:
    """Eigenvector entries split by color, each set divided by its minimum.

    The first set is the class of template vertex 0.
    """
    v = dominant_eigenvector(t, side)
    eps = template_colors(t)
    first = [v[k] for k in range(t.rank) if eps[k] == eps[0]]
    second = [v[k] for k in range(t.rank) if eps[k] != eps[0]]

    def norm(xs):
        if not xs:
            return ()
        lo = min(xs)
        return tuple(sorted(x / lo for x in xs))

    return norm(first), norm(second)


# ---------------------------------------------------------------------------
# Finite type test
# ---------------------------------------------------------------------------

def vinberg_check(cartan: Sequence[Sequence[int]], max_iter: int = 10_000) -> bool:
    """Finite-type test for a Cartan matrix: look for alpha > 0 with C alpha > 0.

    Recognized template components use their dominant eigenvector as the
    certificate.  Anything else falls back to shifted power iteration on
    A = 2I - C, testing each iterate as a certificate, capped at max_iter.
    """
    c = np.array(cartan, dtype=float)
    n = c.shape[0]
    if any(c[i, i] != 2 for i in range(n)):
        raise ValueError("Cartan matrix needs 2 on the diagonal")
    if np.any(c - np.diag(np.diag(c)) > 0):
        raise ValueError("Cartan matrix needs nonpositive off-diagonal entries")
    a_int = [[(2 if i == j else 0) - int(cartan[i][j]) for j in range(n)] for i in range(n)]
    for comp in _support_components(a_int):
        sub_c = c[np.ix_(comp, comp)]
        rec = recognize(a_int, comp)
        if rec is not None:
            alpha = np.zeros(len(comp))
            vec = dominant_eigenvector(rec.dtype, "right")
            pos = {v: k for k, v in enumerate(comp)}
            for k, v in enumerate(rec.vertices):
                alpha[pos[v]] = vec[k]
            if np.all(sub_c @ alpha > EIG_MARGIN):
                continue
        a = 2 * np.eye(len(comp)) - sub_c
        alpha = np.ones(len(comp))
        found = False
        for _ in range(max_iter):
            if np.all(sub_c @ alpha > 1e-12 * np.abs(alpha).max()):
                found = True
                break
            alpha = a @ alpha + alpha
            alpha /= alpha.max()
        if not found:
            return False
    return True


# ---------------------------------------------------------------------------
# Labelings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Labeling:
    values: Tuple
    kind: str
    residual: float = 0.0


def _sums(bg: DynkinBiagram, rho: Sequence, k: int):
    sg = sum(bg.gamma[i][k] * rho[i] for i in range(bg.n))
    sd = sum(bg.delta[j][k] * rho[j] for j in range(bg.n))
    return sg, sd


def is_strictly_subadditive(bg: DynkinBiagram, rho: Sequence, margin=0) -> bool:
    """2 rho_k > sum_i Gamma_ik rho_i and 2 rho_k > sum_j Delta_jk rho_j, all k."""
    if len(rho) != bg.n or any(r <= 0 for r in rho):
        return False
    for k in range(bg.n):
        sg, sd = _sums(bg, rho, k)
        if not (2 * rho[k] - sg > margin and 2 * rho[k] - sd > margin):
            return False
    return True


def is_subadditive(bg: DynkinBiagram, rho: Sequence) -> bool:
    if len(rho) != bg.n or any(r < 0 for r in rho):
        return False
    for k in range(bg.n):
        sg, sd = _sums(bg, rho, k)
        if 2 * rho[k] < sg or 2 * rho[k] < sd:
            return False
    return True


def z_map(bg: DynkinBiagram, rho: Sequence[float]) -> List[float]:
    out = []
    for k in range(bg.n):
        pg = 1.0
        pd = 1.0
        for i in range(bg.n):
            if bg.gamma[i][k]:
                pg *= rho[i] ** bg.gamma[i][k]
            if bg.delta[i][k]:
                pd *= rho[i] ** bg.delta[i][k]
        out.append(math.sqrt(pg + pd))
    return out


def fixed_point_residual(bg: DynkinBiagram, rho: Sequence[float]) -> float:
    return max((abs(r - z) for r, z in zip(rho, z_map(bg, rho))), default=0.0)


def is_fixed_point_labeling(bg: DynkinBiagram, rho: Sequence[float], tol: float = 1e-9) -> bool:
    return all(r > 1 for r in rho) and fixed_point_residual(bg, rho) < tol


def _perron_left_common(bg: DynkinBiagram) -> Optional[np.ndarray]:
    """Left Perron vector of Gamma + Delta, one block per connected component."""
    n = bg.n
    total = np.array(bg.adjacency(), dtype=float)
    v = np.zeros(n)
    for comp in bg.components():
        if len(comp) == 1:
            v[comp[0]] = 1.0
            continue
        sub = total[np.ix_(comp, comp)]
        vals, vecs = np.linalg.eig(sub.T)
        k = int(np.argmax(vals.real))
        w = np.real(vecs[:, k])
        w = w / w[np.argmax(np.abs(w))]
        if np.any(w <= 0):
            return None
        v[comp] = w / w.max()
    return v


def strictly_subadditive_labeling(bg: DynkinBiagram, denominator: int = 10**12) -> Optional[Labeling]:
    """Common dominant (left) eigenvector, rounded to rationals and re-checked exactly.

    Returns None unless the biagram is an admissible Dynkin biagram and the
    rounded vector clears every strict inequality by the eigenvector margin.
    """
    if not bg.is_admissible() or not is_dynkin_biagram(bg):
        return None
    v = _perron_left_common(bg)
    if v is None:
        return None
    vals = tuple(Fraction(float(x)).limit_denominator(denominator) for x in v)
    if not is_strictly_subadditive(bg, vals, margin=Fraction(EIG_MARGIN)):
        return None
    return Labeling(vals, "strictly-subadditive")


def fixed_point_labeling(
    bg: DynkinBiagram, tol: float = 1e-12, max_iter: int = 10**6, nu: Optional[Sequence] = None
) -> Optional[Labeling]:
    """Iterate the Z-map down from an upper bound alpha^nu to a fixed point.

    nu defaults to the strictly subadditive labeling; alpha is chosen with
    alpha^q = 2^1.5 > 2 where q is the smallest slack of nu.  Work is done in
    log space so large starting values do not overflow.
    """
    if nu is None:
        lab = strictly_subadditive_labeling(bg)
        if lab is None:
            return None
        nu = lab.values
    nu = np.array([float(x) for x in nu])
    n = bg.n
    G = np.array(bg.gamma, dtype=float)
    D = np.array(bg.delta, dtype=float)
    slack = np.minimum(2 * nu - G.T @ nu, 2 * nu - D.T @ nu)
    q = float(slack.min())
    if q <= 0:
        return None
    log_alpha = 1.5 * math.log(2) / q
    L = nu * log_alpha
    for it in range(max_iter):
        ZL = 0.5 * np.logaddexp(G.T @ L, D.T @ L)
        if np.any(ZL > L + 1e-12 * np.maximum(1.0, np.abs(L))):
            raise NoConvergence(f"Z-map iterate increased at step {it}")
        if np.any(ZL < 0):
            raise NoConvergence("Z-map iterate left the region rho >= 1")
        if L.max() < 700:
            diff = float(np.max(np.abs(np.exp(L) - np.exp(ZL))))
            if diff < tol:
                rho = tuple(float(x) for x in np.exp(ZL))
                return Labeling(rho, "fixed-point", fixed_point_residual(bg, rho))
        L = ZL
    raise NoConvergence(f"no fixed point within {max_iter} iterations (n={n})")
