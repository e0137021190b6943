"""Bicolored automorphisms, folding, and the global flip.

A bicolored automorphism is given as a permutation ``perm`` of the vertex
indices (``perm[i]`` is the image of ``i``).  Folding sums rows over orbits;
orbits are ordered by their smallest member so that output is deterministic.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms import isomorphism

from .biagram import DynkinBiagram
from .exchange import ExchangeMatrix, as_matrix, decompose


class ViolatesCondition(ValueError):
    """A supplied permutation fails one of the conditions (i)-(iv)."""

    def __init__(self, condition: str, witness: Tuple[int, ...], detail: str = ""):
        msg = f"condition ({condition}) fails at {witness}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
        self.condition = condition
        self.witness = witness


class RepresentativeMismatch(AssertionError):
    pass


class NoDerivationRecorded(LookupError):
    pass


@dataclass(frozen=True)
class BicoloredAutomorphism:
    perm: Tuple[int, ...]
    orbits: Tuple[Tuple[int, ...], ...]


def orbits_of(perm: Sequence[int]) -> Tuple[Tuple[int, ...], ...]:
    n = len(perm)
    seen = [False] * n
    out = []
    for s in range(n):
        if seen[s]:
            continue
        orb = []
        v = s
        while not seen[v]:
            seen[v] = True
            orb.append(v)
            v = perm[v]
        out.append(tuple(sorted(orb)))
    out.sort(key=lambda o: o[0])
    return tuple(out)


def validate_automorphism(m: ExchangeMatrix, perm: Sequence[int]) -> BicoloredAutomorphism:
    """Check conditions (i)-(iv) and return the validated automorphism.

    Condition (iv) (no edges inside an orbit) is tested first because it is
    the most specific diagnosis; then (i), (ii), (iii).
    """
    perm = tuple(int(p) for p in perm)
    n = m.n
    if sorted(perm) != list(range(n)):
        raise ValueError("perm must be a bijection on the vertex set")
    b = m.b
    orbits = orbits_of(perm)
    for orb in orbits:
        for i in orb:
            for j in orb:
                if b[i][j] or b[j][i]:
                    raise ViolatesCondition("iv", (i, j), "edge inside an orbit")
    for i in range(n):
        if m.eps[perm[i]] != m.eps[i]:
            raise ViolatesCondition("i", (i, perm[i]), "color not preserved")
    for orb in orbits:
        for a in orb:
            for c in orb:
                for j in range(n):
                    if b[a][j] * b[c][j] < 0:
                        raise ViolatesCondition("ii", (a, c, j), "opposite signs within an orbit")
    for i in range(n):
        for j in range(n):
            if b[perm[i]][perm[j]] != b[i][j]:
                raise ViolatesCondition("iii", (i, j), "entries not preserved")
    return BicoloredAutomorphism(perm, orbits)


def _fold_rows(mat: Sequence[Sequence[int]], orbits) -> List[List[int]]:
    k = len(orbits)
    out = [[0] * k for _ in range(k)]
    for I, orb_i in enumerate(orbits):
        for J, orb_j in enumerate(orbits):
            sums = {sum(mat[i][j] for i in orb_i) for j in orb_j}
            if len(sums) != 1:
                raise RepresentativeMismatch(f"orbit sums differ for rows {orb_i}, columns {orb_j}")
            out[I][J] = sums.pop()
    return out


def fold(m: ExchangeMatrix, f) -> ExchangeMatrix:
    """f(B)_IJ = sum over i in I of b_ij, any j in J."""
    if not isinstance(f, BicoloredAutomorphism):
        f = validate_automorphism(m, f)
    folded = _fold_rows(m.b, f.orbits)
    eps = tuple(m.eps[orb[0]] for orb in f.orbits)
    return ExchangeMatrix(as_matrix(folded), eps)


def fold_biagram(bg: DynkinBiagram, perm: Sequence[int], name: str = "") -> DynkinBiagram:
    """Fold the biagram's exchange matrix; also fold Gamma and Delta separately
    and check that the two routes agree."""
    m = bg.to_exchange_matrix()
    f = validate_automorphism(m, perm)
    fm = fold(m, f)
    g = _fold_rows(bg.gamma, f.orbits)
    d = _fold_rows(bg.delta, f.orbits)
    out = DynkinBiagram(as_matrix(g), as_matrix(d), fm.eps, name)
    if out.to_exchange_matrix() != fm:
        raise RepresentativeMismatch("folding does not split as f(Gamma) + f(Delta)")
    return out


def global_flip(bg: DynkinBiagram) -> DynkinBiagram:
    out = bg.transpose()
    if bg.is_admissible() and not out.is_admissible():
        raise AssertionError("transpose broke admissibility")
    return out


def leaf_swap_perm(n: int, pairs: Sequence[Tuple[int, int]]) -> List[int]:
    perm = list(range(n))
    for a, b in pairs:
        perm[a], perm[b] = b, a
    return perm


def cycle_perm(n: int, cycles: Sequence[Sequence[int]]) -> List[int]:
    perm = list(range(n))
    for cyc in cycles:
        for k, v in enumerate(cyc):
            perm[v] = cyc[(k + 1) % len(cyc)]
    return perm


# ---------------------------------------------------------------------------
# Isomorphism of biagrams
# ---------------------------------------------------------------------------

def _colored_graph(bg: DynkinBiagram) -> nx.DiGraph:
    g = nx.DiGraph()
    for i in range(bg.n):
        g.add_node(i, eps=bg.eps[i])
    for i in range(bg.n):
        for j in range(bg.n):
            if bg.gamma[i][j]:
                g.add_edge(i, j, w=("g", bg.gamma[i][j]))
            elif bg.delta[i][j]:
                g.add_edge(i, j, w=("d", bg.delta[i][j]))
    return g


def find_isomorphism(a: DynkinBiagram, b: DynkinBiagram, respect_colors: bool = True) -> Optional[Dict[int, int]]:
    """Vertex map a -> b carrying Gamma to Gamma and Delta to Delta.

    With ``respect_colors`` the bipartition must match too; otherwise a global
    swap of the two color classes is also accepted (it only negates B).
    """
    if a.n != b.n:
        return None
    ga = _colored_graph(a)

    def em(x, y):
        return x["w"] == y["w"]

    def nm(x, y):
        return x["eps"] == y["eps"]

    attempts = [b]
    if not respect_colors:
        attempts.append(b.recolor())
    for target in attempts:
        gt = _colored_graph(target)
        gm = isomorphism.DiGraphMatcher(ga, gt, node_match=nm, edge_match=em)
        for mapping in gm.isomorphisms_iter():
            return dict(mapping)
    return None


def is_isomorphic(a: DynkinBiagram, b: DynkinBiagram, respect_colors: bool = False) -> bool:
    return find_isomorphism(a, b, respect_colors) is not None


# ---------------------------------------------------------------------------
# Derivation scripts
# ---------------------------------------------------------------------------

def replay(script: dict, builder=None) -> DynkinBiagram:
    """Run a derivation script {"source": spec, "steps": [...]}.

    ``builder`` maps a source spec dict to a biagram; defaults to
    ``catalog.build``.
    """
    if builder is None:
        from .catalog import FamilySpec, build

        def builder(spec):
            return build(FamilySpec.from_dict(spec))

    bg = builder(script["source"])
    for step in script["steps"]:
        op = step["op"]
        if op == "fold":
            bg = fold_biagram(bg, step["perm"])
        elif op == "flip":
            bg = global_flip(bg)
        elif op == "dual":
            bg = bg.dual()
        else:
            raise ValueError(f"unknown derivation step {op!r}")
    return bg


def derive_from_ade(spec) -> dict:
    """Return the recorded derivation script for a catalog target."""
    from .catalog import derivation_script

    script = derivation_script(spec)
    if script is None:
        raise NoDerivationRecorded(f"no derivation recorded for {spec}")
    return copy.deepcopy(script)
