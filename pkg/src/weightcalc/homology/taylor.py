"""Cohen-Macaulay certification via dualized Taylor complexes.

For a monomial ideal with generators m_1..m_r in a polynomial ring,
the Taylor complex on all 2^r generator subsets is a free resolution
of the quotient.  Dualizing into the ring and fixing a multidegree
leaves a complex of scalar matrices with entries 0, +-1 whose
activity pattern depends only on a componentwise clamp of the
multidegree.  Scanning the finite clamp grid therefore certifies the
vanishing set of all Ext modules completely; per-total-degree
dimensions follow from closed-form lattice-point counts over each
clamp cell.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from weightcalc.homology.linalg import rank_mod

GEN_CAP = 16
GRID_CAP = 50_000


def _normalize_gens(gens, nvars: int) -> tuple[tuple[int, ...], ...]:
    out = []
    for g in gens:
        g = tuple(int(v) for v in g)
        if len(g) != nvars:
            raise ValueError("generator arity mismatch")
        if any(v < 0 for v in g):
            raise ValueError("negative exponent")
        out.append(g)
    # drop duplicates and non-minimal generators
    kept: list[tuple[int, ...]] = []
    for g in sorted(set(out), key=lambda v: (sum(v), v)):
        if not any(all(h[i] <= g[i] for i in range(nvars)) for h in kept):
            kept.append(g)
    return tuple(kept)


@dataclass(frozen=True)
class ExtSummary:
    """Certified vanishing data for Ext^i(R/I, R) over F_p."""

    nvars: int
    gens: tuple[tuple[int, ...], ...]
    prime: int
    zero_module: bool
    inconclusive: bool
    reason: str
    nonzero_indices: tuple[int, ...]
    degree_dims: tuple[tuple[int, tuple[tuple[int, int], ...]], ...]

    @property
    def grade(self) -> int | None:
        """Least nonvanishing index; None when everything vanishes."""
        return self.nonzero_indices[0] if self.nonzero_indices else None

    def dims_for(self, i: int) -> dict[int, int]:
        for idx, pairs in self.degree_dims:
            if idx == i:
                return dict(pairs)
        return {}


def _subset_lcms(gens: tuple[tuple[int, ...], ...], nvars: int) -> np.ndarray:
    r = len(gens)
    lcms = np.zeros((1 << r, nvars), dtype=np.int64)
    exps = np.array(gens, dtype=np.int64).reshape(r, nvars)
    for s in range(1, 1 << r):
        low = (s & -s).bit_length() - 1
        lcms[s] = np.maximum(lcms[s ^ (1 << low)], exps[low])
    return lcms


def _boundary_matrix(
    lower: list[int], upper: list[int], r: int
) -> np.ndarray:
    """Dual transition between active subset levels; entries 0, +-1."""
    pos = {s: c for c, s in enumerate(lower)}
    mat = np.zeros((len(upper), len(lower)), dtype=np.int64)
    for row, sup in enumerate(upper):
        bits = [b for b in range(r) if sup >> b & 1]
        for t, b in enumerate(bits):
            sub = sup ^ (1 << b)
            col = pos.get(sub)
            if col is not None:
                mat[row, col] = -1 if t % 2 else 1
    return mat


def _pattern_homology(
    active: np.ndarray, r: int, prime: int
) -> dict[int, int]:
    """Nonzero cohomology dimensions of the dual complex on an active
    upper set of generator subsets."""
    levels: list[list[int]] = [[] for _ in range(r + 1)]
    for s in np.nonzero(active)[0]:
        levels[int(s).bit_count()].append(int(s))
    ranks = []
    for k in range(r):
        if not levels[k] or not levels[k + 1]:
            ranks.append(0)
            continue
        ranks.append(rank_mod(_boundary_matrix(levels[k], levels[k + 1], r), prime))
    out = {}
    for k in range(r + 1):
        dim = len(levels[k])
        h = dim - (ranks[k] if k < r else 0) - (ranks[k - 1] if k > 0 else 0)
        if h:
            out[k] = h
    return out


def _is_acyclic_cone(active: np.ndarray, r: int) -> bool:
    """Cheap acyclicity certificate for one clamp cell.

    The inactive subsets form a lower set; when it is closed under
    adding some generator b it is a cone with apex b, its reduced
    cohomology vanishes, and the active-part complex is exact.  Only
    valid when the empty set is inactive, i.e. away from the all-zero
    clamp.
    """
    if active[0]:
        return False
    idx = np.arange(active.size)
    inactive = ~active
    for b in range(r):
        if np.all(active | inactive[idx | (1 << b)]):
            return True
    return False


def taylor_ext_ranks(
    gens,
    nvars: int,
    imax: int | None = None,
    dmax: int = 0,
    prime: int = 29,
    gen_cap: int = GEN_CAP,
) -> ExtSummary:
    """Certified Ext^i(R/I, R) vanishing set plus per-degree dimensions.

    The clamp grid covers every multidegree, so nonzero_indices is the
    exact set of nonvanishing homological indices (capped at imax when
    given).  Degree data is reported for total degrees up to dmax.
    Oversized inputs yield an inconclusive summary, never a silent
    pass.
    """
    gens = _normalize_gens(gens, nvars)
    base = dict(nvars=nvars, gens=gens, prime=prime)
    if any(sum(g) == 0 for g in gens):
        return ExtSummary(
            **base,
            zero_module=True,
            inconclusive=False,
            reason="unit ideal: zero module",
            nonzero_indices=(),
            degree_dims=(),
        )
    r = len(gens)
    if r > gen_cap:
        return ExtSummary(
            **base,
            zero_module=False,
            inconclusive=True,
            reason=f"{r} generators exceed the cap {gen_cap}",
            nonzero_indices=(),
            degree_dims=(),
        )
    maxexp = [max((g[v] for g in gens), default=0) for v in range(nvars)]
    grid_size = math.prod(m + 1 for m in maxexp)
    if grid_size > GRID_CAP:
        return ExtSummary(
            **base,
            zero_module=False,
            inconclusive=True,
            reason=f"clamp grid of size {grid_size} exceeds the cap {GRID_CAP}",
            nonzero_indices=(),
            degree_dims=(),
        )
    lcms = _subset_lcms(gens, nvars)
    pattern_cache: dict[bytes, dict[int, int]] = {}
    # cells: map homological index -> list of (fixed degree sum, free coords, dim)
    cells: dict[int, list[tuple[int, int, int]]] = {}
    nonzero: set[int] = set()
    for depths in itertools.product(*(range(m + 1) for m in maxexp)):
        t = np.array(depths, dtype=np.int64)
        active = np.all(lcms >= t, axis=1)
        if not active.any():
            continue
        # full active set = augmented simplex complex, exact for r >= 1
        if r and active.all():
            continue
        if _is_acyclic_cone(active, r):
            continue
        key = active.tobytes()
        if key not in pattern_cache:
            pattern_cache[key] = _pattern_homology(active, r, prime)
        hom = pattern_cache[key]
        if not hom:
            continue
        fixed = -sum(depths)
        nfree = sum(1 for d in depths if d == 0)
        for i, h in hom.items():
            nonzero.add(i)
            cells.setdefault(i, []).append((fixed, nfree, h))
    indices = tuple(sorted(i for i in nonzero if imax is None or i <= imax))
    dmin = -sum(maxexp)
    degree_dims = []
    for i in indices:
        per_degree: dict[int, int] = {}
        for fixed, nfree, h in cells.get(i, []):
            for deg in range(dmin, dmax + 1):
                extra = deg - fixed
                if extra < 0:
                    continue
                if nfree == 0:
                    count = 1 if extra == 0 else 0
                else:
                    count = math.comb(extra + nfree - 1, nfree - 1)
                if count:
                    per_degree[deg] = per_degree.get(deg, 0) + h * count
        degree_dims.append((i, tuple(sorted(per_degree.items()))))
    return ExtSummary(
        **base,
        zero_module=False,
        inconclusive=False,
        reason="",
        nonzero_indices=indices,
        degree_dims=tuple(degree_dims),
    )


def codim_of(gens, nvars: int) -> int | None:
    """Height of a monomial ideal: smallest variable set meeting every
    generator.  None for the unit ideal (by convention undefined here),
    0 for the zero ideal."""
    gens = _normalize_gens(gens, nvars)
    if any(sum(g) == 0 for g in gens):
        return None
    support = sorted({v for g in gens for v in range(nvars) if g[v]})
    for size in range(len(support) + 1):
        for combo in itertools.combinations(support, size):
            chosen = set(combo)
            if all(any(v in chosen for v in range(nvars) if g[v]) for g in gens):
                return size
    return len(support)


@dataclass(frozen=True)
class CmVerdict:
    is_cm: bool | None
    grade: int | None
    codim: int | None
    zero_module: bool
    inconclusive: bool
    ext: ExtSummary


def grade_and_cm(
    gens, nvars: int, prime: int = 29, gen_cap: int = GEN_CAP
) -> CmVerdict:
    """Cohen-Macaulay test: Ext vanishes away from a single index equal
    to the codimension."""
    ext = taylor_ext_ranks(gens, nvars, prime=prime, gen_cap=gen_cap)
    if ext.zero_module:
        return CmVerdict(None, None, None, True, False, ext)
    if ext.inconclusive:
        return CmVerdict(None, None, None, False, True, ext)
    cd = codim_of(gens, nvars)
    verdict = ext.nonzero_indices == (cd,)
    return CmVerdict(verdict, ext.grade, cd, False, False, ext)


def is_cm(
    gens, nvars: int, prime: int = 29, gen_cap: int = GEN_CAP
) -> bool | None:
    """Plain verdict; None for zero modules and inconclusive runs."""
    v = grade_and_cm(gens, nvars, prime, gen_cap)
    return v.is_cm


def taylor_primal_check(gens, nvars: int, prime: int = 29) -> bool:
    """Independent validation of the Taylor machinery itself.

    The primal complex must be exact in positive homological degrees at
    every clamp cell, with bottom homology of dimension 1 exactly off
    the ideal.
    """
    gens = _normalize_gens(gens, nvars)
    if any(sum(g) == 0 for g in gens):
        return True
    r = len(gens)
    if r > GEN_CAP:
        raise ValueError("too many generators for the primal check")
    maxexp = [max((g[v] for g in gens), default=0) for v in range(nvars)]
    lcms = _subset_lcms(gens, nvars)
    for top in itertools.product(*(range(m + 1) for m in maxexp)):
        b = np.array(top, dtype=np.int64)
        active = np.all(lcms <= b, axis=1)
        levels: list[list[int]] = [[] for _ in range(r + 1)]
        for s in np.nonzero(active)[0]:
            levels[int(s).bit_count()].append(int(s))
        ranks = []
        for k in range(r):
            if not levels[k] or not levels[k + 1]:
                ranks.append(0)
                continue
            ranks.append(
                rank_mod(_boundary_matrix(levels[k], levels[k + 1], r), prime)
            )
        for k in range(1, r + 1):
            dim = len(levels[k])
            h = dim - (ranks[k] if k < r else 0) - (ranks[k - 1] if k > 0 else 0)
            if h != 0:
                return False
        in_ideal = any(all(g[v] <= top[v] for v in range(nvars)) for g in gens)
        h0 = len(levels[0]) - (ranks[0] if r > 0 else 0)
        if h0 != (0 if in_ideal else 1):
            return False
    return True


def hilbert_euler_check(gens, nvars: int, degmax: int) -> bool:
    """Inclusion-exclusion Hilbert function against a direct monomial
    count, per degree up to degmax."""
    gens = _normalize_gens(gens, nvars)
    lcms = _subset_lcms(gens, nvars)
    r = len(gens)

    def ring_dim(e: int) -> int:
        return math.comb(e + nvars - 1, nvars - 1) if e >= 0 else 0

    for deg in range(degmax + 1):
        euler = 0
        for s in range(1 << r):
            term = ring_dim(deg - int(lcms[s].sum()))
            euler += -term if int(s).bit_count() % 2 else term
        direct = 0
        for mono in itertools.combinations_with_replacement(range(nvars), deg):
            exp = [0] * nvars
            for v in mono:
                exp[v] += 1
            if not any(all(g[v] <= exp[v] for v in range(nvars)) for g in gens):
                direct += 1
        if euler != direct:
            return False
    return True


def ext_euler_check(summary: ExtSummary, dmax: int = 0) -> bool:
    """Alternating Ext dimensions against the dual inclusion-exclusion
    closed form, per degree."""
    if summary.zero_module or summary.inconclusive:
        raise ValueError("needs a conclusive nonzero summary")
    nvars = summary.nvars
    lcms = _subset_lcms(summary.gens, nvars)
    r = len(summary.gens)

    def ring_dim(e: int) -> int:
        return math.comb(e + nvars - 1, nvars - 1) if e >= 0 else 0

    dmin = -sum(max(g[v] for g in summary.gens) for v in range(nvars)) if r else 0
    for deg in range(dmin, dmax + 1):
        euler = 0
        for s in range(1 << r):
            term = ring_dim(deg + int(lcms[s].sum()))
            euler += -term if int(s).bit_count() % 2 else term
        from_ext = 0
        for i, pairs in summary.degree_dims:
            d = dict(pairs).get(deg, 0)
            from_ext += -d if i % 2 else d
        if euler != from_ext:
            return False
    return True


@dataclass(frozen=True)
class ShellResult:
    facets: tuple[tuple[int, ...], ...]
    shellable: bool
    failure: str


def shellability_check(
    J1, J2, d: int, f: int
) -> ShellResult:
    """Shelling certification for the complex cut out by the degree-d
    products, on facets choosing one branch per index.

    The branch sets must partition the indices.  A facet is encoded
    +1/-1 per index (+1 on the y branch); its offending set collects
    J1 indices on y and J2 indices on z, and facets are the choices
    with fewer than d offenders, ordered by offender count then
    lexicographically.
    """
    J1, J2 = frozenset(J1), frozenset(J2)
    if J1 & J2 or (J1 | J2) != set(range(f)):
        raise ValueError("branch sets must partition the index range")
    if d < 2:
        raise ValueError("d must be at least 2; d = 1 has a single facet")

    def offenders(x: tuple[int, ...]) -> frozenset[int]:
        return frozenset(
            j
            for j in range(f)
            if (j in J1 and x[j] == 1) or (j in J2 and x[j] == -1)
        )

    facets = [
        x
        for x in itertools.product((1, -1), repeat=f)
        if len(offenders(x)) < d
    ]
    facets.sort(key=lambda x: (len(offenders(x)), tuple(0 if v == 1 else 1 for v in x)))

    def vertex_set(x: tuple[int, ...]) -> frozenset[tuple[int, int]]:
        return frozenset((j, x[j]) for j in range(f))

    for k in range(1, len(facets)):
        cur = facets[k]
        J = offenders(cur)
        if not J:
            return ShellResult(tuple(facets), False, f"facet {k} has no offenders")
        cur_verts = vertex_set(cur)
        # each declared codim-1 face must already be covered
        for j in J:
            face = cur_verts - {(j, cur[j])}
            if not any(face <= vertex_set(facets[i]) for i in range(k)):
                return ShellResult(
                    tuple(facets), False, f"face of facet {k} at {j} not covered"
                )
        # and every overlap with an earlier facet must factor through one
        for i in range(k):
            common = cur_verts & vertex_set(facets[i])
            if not any((j, cur[j]) not in common for j in J):
                return ShellResult(
                    tuple(facets),
                    False,
                    f"facets {i} and {k} meet outside the declared faces",
                )
    return ShellResult(tuple(facets), True, "")
