"""Voronoi cell complexes for GL_m(Z), m = 2, 3, 4, and group cohomology.

All cells used are simplices on sign classes of lattice vectors: the top
cell is the simplex on the A_m root classes of an extended basis, every
cell of the decomposition in the range we need is GL_m(Z)-equivalent to one
of its faces, and the boundary is the alternating vertex-drop sum.  The
coinvariant complexes over Gamma_1(m;N) with coefficients Sym^k (x) eps^j
are assembled at orbit level: generators (representative, coset label,
monomial) modulo the stabilizer action, boundaries transported by explicit
unimodular equivalences.
"""

from __future__ import annotations

import itertools
import json
import os
from fractions import Fraction
from functools import lru_cache

from .exact_linalg import (
    BudgetExceeded,
    PresentedSpace,
    SparseMatrix,
    complex_cohomology,
)
from .lattice import (
    act_sym,
    coset_space,
    coordinates_in_basis,
    det_character,
    identity_matrix,
    is_unimodular,
    mat_from_columns,
    mat_inverse,
    mat_mul,
    mat_vec,
    matrix_rank,
    monomials,
    saturation_basis,
    sign_vector,
    standard_extended_basis,
    substitute,
    vec_sum,
)
from .trees_forests import cell_from_ordered

CACHE_ENV = "CYCLOMOD_CACHE_DIR"
_CACHE_VERSION = 3


def d_m(m: int) -> int:
    """Dimension of the symmetric space: (m-1)(m+2)/2."""
    return (m - 1) * (m + 2) // 2


def a_m_roots(m: int, basis=None):
    """The m(m+1)/2 sign classes v_i + ... + v_j of an extended basis."""
    if not 2 <= m <= 4:
        raise ValueError("need 2 <= m <= 4")
    if basis is None:
        ext = standard_extended_basis(m)
    else:
        basis = [tuple(v) for v in basis]
        ext = tuple(basis) + (tuple(-sum(c) for c in zip(*basis)),)
    roots = set()
    n = m + 1
    for i in range(n):
        for length in range(1, m + 1):
            run = [ext[(i + t) % n] for t in range(length)]
            roots.add(sign_vector(vec_sum(run)))
    return sorted(roots)


def top_cell(m: int):
    return tuple(sorted(a_m_roots(m)))


def cell_rank(cell) -> int:
    return matrix_rank(list(cell))


def _invariant(cell):
    return (
        len(cell),
        cell_rank(cell),
        tuple(sorted(_pervertex_triples(cell).values())),
    )


def _independent_subset(cell, r):
    idx = []
    for i, v in enumerate(cell):
        if matrix_rank([cell[j] for j in idx] + [v]) > len(idx):
            idx.append(i)
        if len(idx) == r:
            return idx
    return None


def cell_maps(c1, c2, find_all=False, vert_inv1=None, vert_inv2=None):
    """Unimodular g with g{+-verts c1} = {+-verts c2}; one or all of them.

    Backtracking over images of an independent vertex subset of c1, with a
    per-vertex zero-sum-triple invariant as prefilter.
    """
    m = len(c1[0])
    if len(c1) != len(c2) or cell_rank(c1) != m or cell_rank(c2) != m:
        return [] if find_all else None
    inv1 = _pervertex_triples(c1)
    inv2 = _pervertex_triples(c2)
    if sorted(inv1.values()) != sorted(inv2.values()):
        return [] if find_all else None
    pivot = _independent_subset(c1, m)
    M1 = mat_from_columns([c1[i] for i in pivot])
    M1i = mat_inverse(M1)
    set2 = set(c2)
    out = []
    cand = [v for v in c2]

    def backtrack(j, chosen):
        nonlocal out
        if out and not find_all:
            return
        if j == m:
            M2 = mat_from_columns(chosen)
            g = mat_mul(M2, M1i)
            if any(
                not isinstance(x, int) and x.denominator != 1
                for row in g
                for x in row
            ):
                return
            g = tuple(tuple(int(x) for x in row) for row in g)
            if not is_unimodular(g):
                return
            if {sign_vector(mat_vec(g, v)) for v in c1} == set2:
                out.append(g)
            return
        src = c1[pivot[j]]
        for v in cand:
            if inv2[v] != inv1[src]:
                continue
            for s in (1, -1):
                w = tuple(s * x for x in v)
                if matrix_rank(list(chosen) + [w]) == j + 1:
                    backtrack(j + 1, chosen + [w])

    backtrack(0, [])
    return out if find_all else (out[0] if out else None)


@lru_cache(maxsize=None)
def _pervertex_triples_cached(cell):
    verts = list(cell)
    count = {v: 0 for v in verts}
    for a, b, c in itertools.combinations(verts, 3):
        for sa in (1, -1):
            for sb in (1, -1):
                t = tuple(x * sa + y * sb + z for x, y, z in zip(a, b, c))
                if not any(t):
                    count[a] += 1
                    count[b] += 1
                    count[c] += 1
    return count


def _pervertex_triples(cell):
    return _pervertex_triples_cached(tuple(cell))


def cell_equivalent(c1, c2):
    """A g in GL_m(Z) carrying the sign classes of c1 onto c2, or None."""
    c1 = tuple(sorted(sign_vector(v) for v in c1))
    c2 = tuple(sorted(sign_vector(v) for v in c2))
    return cell_maps(c1, c2)


def cell_stabilizer(cell):
    """All unimodular g preserving {+-verts}; small generating set + order."""
    cell = tuple(sorted(sign_vector(v) for v in cell))
    elements = cell_maps(cell, cell, find_all=True)
    gens = []
    known = {identity_matrix(len(cell[0]))}
    for g in elements:
        if g in known:
            continue
        gens.append(g)
        frontier = list(known | {g})
        closure = set(known | {g})
        while frontier:
            nxt = []
            for a in frontier:
                for b in gens:
                    for c in (mat_mul(a, b), mat_mul(b, a)):
                        if c not in closure:
                            closure.add(c)
                            nxt.append(c)
            frontier = nxt
        known = closure
        if len(known) == len(elements):
            break
    return gens, len(elements)


class OrbitDatabase:
    """Orbit representatives of the faces of the A_m simplex per dimension,
    split into interior (full-rank span) and boundary cells."""

    def __init__(self, m, interior, boundary, stabilizers):
        self.m = m
        self.interior = interior  # dim -> list of cells
        self.boundary = boundary  # dim -> list of cells
        self._stabilizers = stabilizers  # cell -> (gens, order)
        self._face_cache = {}

    def stabilizer(self, rep):
        if rep not in self._stabilizers:
            self._stabilizers[rep] = cell_stabilizer(rep)
        return self._stabilizers[rep]

    def interior_counts(self):
        return {d: len(v) for d, v in sorted(self.interior.items()) if v}

    def find_interior_rep(self, cell):
        """(dim, index, g) with g . cell = rep, for an interior cell."""
        cell = tuple(sorted(sign_vector(v) for v in cell))
        key = cell
        if key in self._face_cache:
            return self._face_cache[key]
        d = len(cell) - 1
        for idx, rep in enumerate(self.interior.get(d, [])):
            g = cell_maps(cell, rep)
            if g is not None:
                self._face_cache[key] = (d, idx, g)
                return d, idx, g
        raise LookupError(f"no interior representative found for {cell}")

    def to_json(self):
        def enc_cell(c):
            return [list(v) for v in c]

        return {
            "m": self.m,
            "version": _CACHE_VERSION,
            "interior": {
                str(d): [enc_cell(c) for c in reps]
                for d, reps in self.interior.items()
            },
            "boundary": {
                str(d): [enc_cell(c) for c in reps]
                for d, reps in self.boundary.items()
            },
            "stabilizers": [
                {
                    "cell": enc_cell(c),
                    "gens": [list(map(list, g)) for g in gens],
                    "order": order,
                }
                for c, (gens, order) in self._stabilizers.items()
            ],
        }

    @classmethod
    def from_json(cls, data):
        def dec_cell(c):
            return tuple(sorted(tuple(v) for v in c))

        interior = {
            int(d): [dec_cell(c) for c in reps]
            for d, reps in data["interior"].items()
        }
        boundary = {
            int(d): [dec_cell(c) for c in reps]
            for d, reps in data["boundary"].items()
        }
        stabs = {}
        for item in data["stabilizers"]:
            stabs[dec_cell(item["cell"])] = (
                [tuple(tuple(r) for r in g) for g in item["gens"]],
                item["order"],
            )
        return cls(data["m"], interior, boundary, stabs)


def census_json(db: OrbitDatabase) -> str:
    """One JSON line per orbit: the census external format."""
    lines = []
    for interior_flag, table in ((True, db.interior), (False, db.boundary)):
        for d in sorted(table):
            for idx, rep in enumerate(table[d]):
                order = db.stabilizer(rep)[1] if interior_flag else None
                lines.append(
                    json.dumps(
                        {
                            "m": db.m,
                            "dim": d,
                            "interior": interior_flag,
                            "orbit_index": idx,
                            "vertices": [list(v) for v in rep],
                            "stabilizer_order": order,
                        },
                        sort_keys=True,
                    )
                )
    return "\n".join(lines) + "\n"


def _cache_path(m):
    base = os.environ.get(CACHE_ENV)
    if base is None:
        base = os.path.join(os.path.expanduser("~"), ".cache", "cyclomod")
    return os.path.join(base, f"orbits_m{m}_v{_CACHE_VERSION}.json")


@lru_cache(maxsize=None)
def classify_cells(m: int, use_cache: bool = True) -> OrbitDatabase:
    """Classify the faces of the A_m simplex into GL_m(Z)-orbits.

    For m = 4 the classification is restricted to dimensions <= 7, where
    every cell of the Voronoi decomposition is equivalent to an A_4 face.
    Results are persisted as JSON keyed by m and a format version.
    """
    if m not in (2, 3, 4):
        raise ValueError("m must be 2, 3 or 4")
    path = _cache_path(m)
    if use_cache and os.path.exists(path):
        try:
            with open(path) as fh:
                data = json.load(fh)
            if data.get("version") == _CACHE_VERSION and data.get("m") == m:
                return OrbitDatabase.from_json(data)
        except (ValueError, KeyError):
            pass
    top = top_cell(m)
    max_size = len(top) if m < 4 else 8
    interior: dict = {}
    boundary: dict = {}
    stabs: dict = {}
    for size in range(1, max_size + 1):
        d = size - 1
        interior[d] = []
        boundary[d] = []
        buckets: dict = {}
        for sub in itertools.combinations(top, size):
            cell = tuple(sorted(sub))
            r = cell_rank(cell)
            if r == m:
                inv = _invariant(cell)
                placed = False
                for rep in buckets.get(inv, []):
                    if cell_maps(cell, rep) is not None:
                        placed = True
                        break
                if not placed:
                    buckets.setdefault(inv, []).append(cell)
                    interior[d].append(cell)
            else:
                # boundary cell: classify via the saturation of its span,
                # which reduces to the interior classification in rank r
                key = _boundary_class_key(cell, r)
                if key not in buckets.setdefault(("bd", r), set()):
                    buckets[("bd", r)].add(key)
                    boundary[d].append(cell)
        interior[d].sort()
        boundary[d].sort()
    db = OrbitDatabase(m, interior, boundary, stabs)
    for d, reps in interior.items():
        for rep in reps:
            db.stabilizer(rep)
    try:
        os.makedirs(os.path.dirname(path), exist_ok=True)
        with open(path, "w") as fh:
            json.dump(db.to_json(), fh)
    except OSError:
        pass
    return db


def _boundary_class_key(cell, r):
    """Equivalence key of a boundary cell: rank + the GL_r-orbit of the cell
    rewritten in a basis of the saturation of its span."""
    sat = saturation_basis(list(cell))
    rewritten = []
    for v in cell:
        coords = coordinates_in_basis(sat, v)
        rewritten.append(sign_vector(tuple(int(x) for x in coords)))
    rewritten = tuple(sorted(rewritten))
    if r < 2:
        return (r, len(cell))
    # normalize by the small-rank interior classification
    sub = classify_cells(r) if r in (2, 3, 4) else None
    if sub is None:
        return (r, rewritten)
    try:
        d, idx, _ = sub.find_interior_rep(rewritten)
        return (r, d, idx)
    except LookupError:
        return (r, rewritten)


# ---------------------------------------------------------------------------
# coinvariant complexes and group cohomology


def _coef_transport(label, poly, g, j, N):
    """The left action of g on delta_label (x) poly (x) eps^j."""
    ginv = mat_inverse(g)
    m = len(label)
    new_label = tuple(
        sum(label[i] * ginv[i][j2] for i in range(m)) % N for j2 in range(m)
    )
    return new_label, act_sym(g, poly), det_character(g) ** j


class VoronoiCoinvariants:
    """The interior Voronoi chain complex tensored over Gamma_1(m;N) with
    Sym^k (x) eps^j, presented at orbit level."""

    def __init__(self, m, N, k=0, j=0):
        self.m, self.N, self.k, self.j = m, N, k, j
        self.db = classify_cells(m)
        n_labels = len(coset_space(m, N)) * len(monomials(m, k))
        total = sum(len(v) for v in self.db.interior.values()) * n_labels
        if total > 5 * 10**5:
            raise BudgetExceeded("voronoi coinvariants beyond the desk budget")
        self.dims = sorted(d for d, v in self.db.interior.items() if v)
        self.spaces = {d: self._space(d) for d in self.dims}
        self.diff = {
            d: self._boundary_matrix(d) for d in self.dims if d - 1 in self.spaces
        }

    def _labels(self, d):
        out = []
        for idx in range(len(self.db.interior[d])):
            for a in coset_space(self.m, self.N):
                for n in monomials(self.m, self.k):
                    out.append((idx, a, tuple(n)))
        return out

    def _space(self, d):
        gens = self._labels(d)
        rows = []
        seen = set()
        for idx, rep in enumerate(self.db.interior[d]):
            stab_gens, _ = self.db.stabilizer(rep)
            for g in stab_gens:
                # orientation sign of g on the representative
                mapped = [sign_vector(mat_vec(g, v)) for v in rep]
                order = sorted(range(len(mapped)), key=lambda t: mapped[t])
                from .dihedral import _sort_parity

                s = _sort_parity(order)
                for a in coset_space(self.m, self.N):
                    for n in monomials(self.m, self.k):
                        lab2, poly, eps = _coef_transport(
                            a, {tuple(n): Fraction(1)}, g, self.j, self.N
                        )
                        row = {(idx, a, tuple(n)): Fraction(1)}
                        for nn, c in poly.items():
                            key = (idx, lab2, nn)
                            row[key] = row.get(key, Fraction(0)) - s * eps * c
                        row = {kk: v for kk, v in row.items() if v}
                        if row:
                            rkey = tuple(sorted(row.items()))
                            if rkey not in seen:
                                seen.add(rkey)
                                rows.append(row)
        return PresentedSpace(gens, rows)

    def _boundary_matrix(self, d):
        src = self.spaces[d]
        tgt = self.spaces[d - 1]
        ent: dict = {}
        for col, (idx, a, n) in enumerate(src.quotient_labels):
            rep = self.db.interior[d][idx]
            img: dict = {}
            for i in range(len(rep)):
                face = rep[:i] + rep[i + 1 :]
                if cell_rank(face) < self.m:
                    continue
                d2, idx2, h = self.db.find_interior_rep(face)
                # face = h^{-1} rep2 as sets; orientation: compare h(face)
                # in sorted order with rep2 in sorted order
                mapped = [sign_vector(mat_vec(h, v)) for v in face]
                order = sorted(range(len(mapped)), key=lambda t: mapped[t])
                from .dihedral import _sort_parity

                s = _sort_parity(order)
                lab2, poly, eps = _coef_transport(
                    a, {n: Fraction(1)}, h, self.j, self.N
                )
                sign = Fraction((-1) ** i * s * eps)
                for nn, c in poly.items():
                    key = (idx2, lab2, nn)
                    v = img.get(key, Fraction(0)) + sign * c
                    if v:
                        img[key] = v
                    elif key in img:
                        del img[key]
            for rix, v in tgt.project(img).items():
                ent[(rix, col)] = v
        return SparseMatrix(tgt.dim(), src.dim(), ent)

    def homology(self):
        """dim H_d for the computable degrees (all but the top for m = 4)."""
        ds = self.dims
        out = {}
        ranks = {d: self.diff[d].rank() for d in self.diff}
        for d in ds:
            dim_d = self.spaces[d].dim()
            r_down = ranks.get(d, 0)
            if d + 1 in self.spaces:
                r_up = ranks.get(d + 1, 0)
            else:
                r_up = None
            if r_up is None and d == max(ds) and self.m == 4:
                continue  # boundaries from dimension 8 are outside scope
            out[d] = dim_d - r_down - (r_up or 0)
        return out

    def check_d_squared(self):
        for d in self.diff:
            if d + 1 in self.diff:
                if not self.diff[d].matmul(self.diff[d + 1]).is_zero():
                    return False
        return True


@lru_cache(maxsize=None)
def build_voronoi_coinvariants(m, N, k=0, j=0) -> VoronoiCoinvariants:
    return VoronoiCoinvariants(m, N, k, j)


def group_cohomology(m, N, k=0, j=0):
    """H^i(Gamma_1(m;N), Sym^k (x) eps^j) via the Voronoi complex.

    Theorem: H_i of the coinvariant complex with coefficients W computes
    H^{d_m - i}(Gamma, W (x) eps) for m even and H^{d_m - i}(Gamma, W) for m
    odd; so the coefficient is twisted accordingly.  Returns {i: dim} for
    the degrees the truncation reaches.
    """
    jj = (j + 1) % 2 if m % 2 == 0 else j
    vc = build_voronoi_coinvariants(m, N, k, jj)
    hom = vc.homology()
    return {d_m(m) - d: dim for d, dim in sorted(hom.items(), reverse=True)}
