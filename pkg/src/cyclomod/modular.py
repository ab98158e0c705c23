"""Modular complexes of GL_m(Z) and their coinvariants over Gamma_1(m;N).

Two constructions live here.

The plain coinvariant complex (degrees 1..m) is built in the same word
coordinates as the dihedral coalgebra: a degree-k generator is a strictly
sorted tuple of blocks (alpha-tuple, exponent-tuple), the per-block double
shuffle relation rows are shared with the dihedral module, and the
differential is the circle-cut formula applied per block via the Leibniz
rule.  Under these coordinates the comparison map eta is the label
inclusion, which realizes the canonical isomorphism of the coinvariant
space with the function space of the double shuffle presentation.

The extended (bicomplex-total) variant, which has corank pieces with
nontrivial stabilizer coinvariants, is built independently in transported
coordinates: generators (composition, coset label, monomial), relation rows
obtained by transporting the block relations, the block reorderings and the
frame-stabilizer action through explicit unimodular matrices.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from functools import lru_cache

from .exact_linalg import (
    BudgetExceeded,
    PresentedSpace,
    SparseMatrix,
    induced_map,
)
from .dihedral import (
    _sort_parity,
    cobracket_raw,
    rows_distribution,
    rows_first_shuffle,
    rows_second_shuffle,
    dihedral_symmetry_rows,
)
from .lattice import (
    coset_space,
    label_ok,
    mat_from_columns,
    monomials,
    substitute,
)
from .trees_forests import shuffles

MAX_ENTRIES = 2 * 10**6


# ---------------------------------------------------------------------------
# word-coordinate complexes (shared shape with the dihedral side)


def _block_sort_key(b):
    return (len(b[0]), b[0], b[1])


def _sorted_blocks(blocks):
    """(sorted tuple, sign) or None when two blocks coincide."""
    blocks = list(blocks)
    if len(set(blocks)) != len(blocks):
        return None
    order = sorted(range(len(blocks)), key=lambda i: _block_sort_key(blocks[i]))
    sign = _sort_parity(order)
    return tuple(blocks[i] for i in order), sign


@lru_cache(maxsize=None)
def _block_rows(p: int, deg: int, N: int, families: str):
    """Relation rows on single blocks (alpha-tuple, exps) of size p.

    families: 'modular' = both shuffle families; 'dihedral' = both families
    plus distributions (with the gamma exception at weight 1 depth 1);
    'relaxed' = dihedral symmetry plus the first modular family only.
    """
    if p == 1 and families in ("modular", "relaxed"):
        # the m = 1 double shuffle relation <v1,v2> = <v2,v1>, i.e. the
        # l = -1 inversion
        return tuple(
            tuple(sorted(r.items())) for r in rows_distribution(1, deg, N, False)
        )
    if families == "modular":
        rows = rows_second_shuffle(p, deg, N) + rows_first_shuffle(p, deg, N)
    elif families == "dihedral":
        rows = (
            rows_second_shuffle(p, deg, N)
            + rows_first_shuffle(p, deg, N)
            + rows_distribution(p, deg, N, include_positive=(p, deg) != (1, 0))
        )
    elif families == "relaxed":
        rows = rows_second_shuffle(p, deg, N) + dihedral_symmetry_rows(
            p + deg, p, N
        )
        if p == 1:
            rows = rows + rows_distribution(1, deg, N, False)
    else:
        raise ValueError(families)
    return tuple(tuple(sorted(r.items())) for r in rows)


def wedge_generators(m: int, w: int, N: int, k: int, gcd_coupled: bool):
    """Sorted block tuples: compositions of m into k block sizes, exponents
    of total degree w - m, optional global gcd condition on the labels."""
    out = []

    def blocks_of(p, d):
        for alpha in itertools.product(range(N), repeat=p):
            for q in monomials(p, d):
                yield (alpha, tuple(q))

    def rec(sizes_left, deg_left, acc):
        if not sizes_left:
            if deg_left != 0:
                return
            sb = _sorted_blocks(acc)
            if sb is None:
                return
            blocks, _ = sb
            if tuple(blocks) != tuple(acc):
                return  # only emit in canonical order
            flat = [a for b in blocks for a in b[0]]
            if gcd_coupled and not label_ok(flat, N):
                return
            out.append(tuple(blocks))
            return
        p = sizes_left[0]
        for d in range(deg_left + 1):
            for b in blocks_of(p, d):
                rec(sizes_left[1:], deg_left - d, acc + [b])

    for sizes in _compositions_pos(m, k):
        rec(list(sizes), w - m, [])
    return sorted(set(out))


def _compositions_pos(total, parts):
    if parts == 0:
        return [()] if total == 0 else []
    out = []
    for first in range(1, total - parts + 2):
        for rest in _compositions_pos(total - first, parts - 1):
            out.append((first,) + rest)
    return out


def wedge_relation_rows(m, w, N, k, gcd_coupled, families, generators):
    """Per-block relation rows embedded into the degree-k wedge basis."""
    genset = set(generators)
    contexts = set()
    for g in generators:
        for i in range(len(g)):
            contexts.add((g[:i] + g[i + 1 :],))
    rows = []
    seen = set()
    for (ctx,) in sorted(contexts):
        p = m - sum(len(b[0]) for b in ctx)
        dmax = (w - m) - sum(sum(b[1]) for b in ctx)
        for d in range(dmax + 1):
            for rowt in _block_rows(p, d, N, families):
                row: dict = {}
                for b, c in rowt:
                    sb = _sorted_blocks(list(ctx) + [b])
                    if sb is None:
                        continue
                    blocks, sign = sb
                    if blocks not in genset:
                        continue  # gcd-violating labels are zero here
                    row[blocks] = row.get(blocks, Fraction(0)) + c * sign
                row = {kk: v for kk, v in row.items() if v}
                if row:
                    key = tuple(sorted(row.items()))
                    if key not in seen:
                        seen.add(key)
                        rows.append(row)
    return rows


@lru_cache(maxsize=None)
def wedge_space(m, w, N, k, gcd_coupled, families) -> PresentedSpace:
    gens = wedge_generators(m, w, N, k, gcd_coupled)
    if not gens:
        return PresentedSpace([])
    rows = wedge_relation_rows(m, w, N, k, gcd_coupled, families, gens)
    return PresentedSpace(gens, rows)


def _cut_block_terms(block, N):
    """Circle-cut terms of one block: [(coeff, blockL, blockR)]."""
    return [
        (coeff, lab1[2], lab2[2])
        for coeff, lab1, lab2 in cobracket_raw(block, N)
    ]


def wedge_differential_raw(gen, N):
    """The differential on a sorted block tuple: minus the circle-cut sum of
    each block, extended by the Leibniz rule; returns {generator: coeff}."""
    out: dict = {}
    for i, b in enumerate(gen):
        leib = (-1) ** i
        for coeff, bl, br in _cut_block_terms(b, N):
            new = list(gen[:i]) + [bl, br] + list(gen[i + 1 :])
            sb = _sorted_blocks(new)
            if sb is None:
                continue
            blocks, sign = sb
            c = -Fraction(coeff) * leib * sign
            s = out.get(blocks, Fraction(0)) + c
            if s:
                out[blocks] = s
            elif blocks in out:
                del out[blocks]
    return out


def coinvariant_complex(m, N, w, relaxed=False, dihedral_target=False):
    """Spaces and differential matrices of the degree 1..m coinvariant
    complex; with dihedral_target=True the wedge complex of the dihedral
    coalgebra quotients at bigrade (w, m) is built instead."""
    families = "dihedral" if dihedral_target else ("relaxed" if relaxed else "modular")
    gcd_coupled = not dihedral_target
    spaces = {}
    for k in range(1, m + 1):
        spaces[k] = wedge_space(m, w, N, k, gcd_coupled, families)
        if spaces[k].num_generators * max(
            1, spaces[k].num_generators
        ) > MAX_ENTRIES * 50:
            raise BudgetExceeded(f"degree {k} space too large")
    diffs = {}
    for k in range(1, m):
        src, tgt = spaces[k], spaces[k + 1]
        genset = set(tgt.labels)

        def raw(lab, genset=genset):
            img = wedge_differential_raw(lab, N)
            return {g: c for g, c in img.items() if g in genset}

        diffs[k] = induced_map(src, tgt, raw)
    return spaces, diffs


def coinvariant_cohomology(m, N, w, relaxed=False):
    """dim H^1..H^m of the modular coinvariant complex."""
    from .exact_linalg import complex_cohomology

    spaces, diffs = coinvariant_complex(m, N, w, relaxed=relaxed)
    mats = [diffs[k] for k in range(1, m)]
    if not mats:
        return [spaces[1].dim()]
    return complex_cohomology(mats)


# ---------------------------------------------------------------------------
# spec-level single relations (GL-module level, used by the comparison checks)


def first_shuffle_relations(m: int, k: int, basis=None):
    """The (k, m-k) first shuffle combinations of an extended basis, one
    Chain of v-generators per basis; generators are vector tuples."""
    from .exact_linalg import Chain
    from .lattice import standard_extended_basis, vec_neg, vec_sum

    if basis is None:
        ext = standard_extended_basis(m)
    else:
        basis = [tuple(v) for v in basis]
        ext = tuple(basis) + (vec_neg(vec_sum(basis)),)
    out = []
    if m == 1:
        out.append(Chain({(ext[0], ext[1]): 1, (ext[1], ext[0]): -1}))
        return out
    if not 1 <= k <= m - 1:
        return out
    terms = {}
    for sl in shuffles(k, m - k):
        tup = tuple(ext[sl[i]] for i in range(m)) + (ext[m],)
        terms[tup] = terms.get(tup, 0) + 1
    out.append(Chain(terms))
    return out


def second_shuffle_relations(m: int, k: int, basis=None):
    """The (k, m-k) second shuffle combinations, written in v-generators via
    the homogeneous affine dictionary u_i -> v_i = u_{i+1} - u_i."""
    from .exact_linalg import Chain

    if basis is None:
        us = [tuple(int(i == j) for i in range(m)) for j in range(m)]
    else:
        us = [tuple(v) for v in basis]
    us = us + [tuple(0 for _ in range(m))]
    out = []
    if not 1 <= k <= m - 1:
        return out
    terms: dict = {}
    for sl in shuffles(k, m - k):
        seq = [us[sl[i]] for i in range(m)] + [us[m]]
        vs = tuple(
            tuple(x - y for x, y in zip(seq[(i + 1) % (m + 1)], seq[i]))
            for i in range(m + 1)
        )
        terms[vs] = terms.get(vs, 0) + 1
    out.append(Chain(terms))
    return out


def dihedral_in_shuffle_span(m: int, N: int = 1, w: int = None) -> bool:
    """Are the dihedral symmetry rows implied by the double shuffle rows in
    the coinvariant presentation?  Checked on the degree-1 space."""
    if w is None:
        w = m
    space = wedge_space(m, w, N, 1, True, "modular")
    genset = set(space.labels)
    for row in dihedral_symmetry_rows(w, m, N):
        restricted = {}
        ok = True
        for (g, n), c in row.items():
            lab = (((g, n)),)
            if lab not in genset:
                ok = False
                break
            restricted[lab] = c
        if not ok:
            continue  # row touches gcd-violating labels: outside this space
        if not space.is_relation(restricted):
            return False
    return True


# ---------------------------------------------------------------------------
# the dg-algebra product


def dga_product(x, y, N):
    """Product of coinvariant generators: concatenate block tuples and
    monomial variables; graded commutative for the block count."""
    bx, by = list(x), list(y)
    sb = _sorted_blocks(bx + by)
    if sb is None:
        return {}
    blocks, sign = sb
    flat = [a for b in blocks for a in b[0]]
    if not label_ok(flat, N):
        raise ValueError("product label violates the gcd condition")
    return {blocks: Fraction(sign)}


# ---------------------------------------------------------------------------
# the extended (bicomplex-total) coinvariant complex, transported coordinates


def _embed_block_matrix(m, offset, small):
    p = len(small)
    rows = []
    for i in range(m):
        row = []
        for j in range(m):
            if offset <= i < offset + p and offset <= j < offset + p:
                row.append(small[i - offset][j - offset])
            else:
                row.append(int(i == j))
        rows.append(tuple(row))
    return tuple(rows)


def _transport(label, mono_poly, g, N):
    """tau_g on coefficient data: label . g and monomial substitution by g."""
    m = len(label)
    new_label = tuple(
        sum(label[i] * g[i][j] for i in range(m)) % N for j in range(m)
    )
    images = [
        {
            tuple(int(jj == j) for jj in range(m)): Fraction(g[i][j])
            for j in range(m)
            if g[i][j]
        }
        for i in range(m)
    ]
    return new_label, substitute(mono_poly, images)


@lru_cache(maxsize=None)
def _cycle_block_matrices(p):
    """Transport matrices for the cyclic rotation, reversal and negation of
    a reference extended block (e_1, ..., e_p, -sum)."""
    es = [tuple(int(i == j) for i in range(p)) for j in range(p)]
    e0 = tuple(-1 for _ in range(p))
    rot = mat_from_columns(es[1:] + [e0])
    rev_tuple = [es[p - 1 - i] for i in range(p)]  # reversal of (v1..v_{p+1}):
    # (v_{p+1}, v_p, ..., v_1): first p columns are (e0, e_p, ..., e_2)
    rev = mat_from_columns([e0] + [es[p - 1 - i] for i in range(p - 1)])
    neg = tuple(tuple(-int(i == j) for j in range(p)) for i in range(p))
    return rot, rev, neg


@lru_cache(maxsize=None)
def _shuffle_perm_matrices(p, k):
    out = []
    for sl in shuffles(k, p - k):
        cols = []
        for j in range(p):
            col = [0] * p
            col[sl[j]] = 1
            cols.append(tuple(col))
        out.append(mat_from_columns(cols))
    return out


@lru_cache(maxsize=None)
def _second_shuffle_matrices(p, k):
    from .dihedral import _first_family_transports

    return _first_family_transports(p, k)


class ExtendedComplex:
    """The total complex of the modular coinvariant bicomplex, degrees
    1..2m-1, in transported coordinates.

    Generators in bidegree (s, r): an ordered composition of m - r into
    s - r parts (the block sizes along the prefix frame e_1..e_{m-r}),
    a coset label and a coefficient monomial.  Relations: per-block double
    shuffle transports, block anticommutation, and for r > 0 the action of
    the stabilizer of the frame.
    """

    def __init__(self, m, N, w, relaxed=False):
        self.m, self.N, self.w = m, N, w
        self.relaxed = relaxed
        if (N ** m) * len(monomials(m, w - m)) * (4 ** m) > MAX_ENTRIES:
            raise BudgetExceeded("extended complex beyond the desk budget")
        self.spaces = {}
        self.labels = {}
        for s in range(1, m + 1):
            for r in range(0, min(s, m)):
                if s - r < 1 or m - r < s - r:
                    continue
                self.spaces[(s, r)] = self._build_space(s, r)
        self.degrees = {}
        for (s, r), sp in self.spaces.items():
            self.degrees.setdefault(s + r, []).append((s, r))
        for n in self.degrees:
            self.degrees[n].sort()

    # -- generators ---------------------------------------------------------

    def _gens(self, s, r):
        q = self.m - r
        k = s - r
        out = []
        for mu in _compositions_pos(q, k):
            for a in coset_space(self.m, self.N):
                for n in monomials(self.m, self.w - self.m):
                    out.append((mu, a, tuple(n)))
        return out

    def _build_space(self, s, r):
        gens = self._gens(s, r)
        rows = []
        q = self.m - r
        seen = set()

        def add_row(row):
            row = {lab: c for lab, c in row.items() if c}
            if row:
                key = tuple(sorted(row.items()))
                if key not in seen:
                    seen.add(key)
                    rows.append(row)

        for mu in _compositions_pos(q, s - r):
            offs = [sum(mu[:i]) for i in range(len(mu))]
            for a in coset_space(self.m, self.N):
                for n in monomials(self.m, self.w - self.m):
                    base = (mu, a, tuple(n))
                    # per-block relations
                    for bi, p in enumerate(mu):
                        off = offs[bi]
                        if p == 1:
                            neg = _embed_block_matrix(self.m, off, ((-1,),))
                            add_row(self._two_term(base, neg, 1))
                            continue
                        if self.relaxed:
                            rot, rev, negm = _cycle_block_matrices(p)
                            for small, sign in (
                                (rot, 1),
                                (rev, (-1) ** (p + 1)),
                                (negm, 1),
                            ):
                                g = _embed_block_matrix(self.m, off, small)
                                add_row(self._two_term(base, g, sign))
                            for kk in range(1, p):
                                add_row(
                                    self._sum_row(
                                        base,
                                        [
                                            _embed_block_matrix(self.m, off, sm)
                                            for sm in _shuffle_perm_matrices(p, kk)
                                        ],
                                    )
                                )
                        else:
                            for kk in range(1, p):
                                for fam in (
                                    _shuffle_perm_matrices(p, kk),
                                    _second_shuffle_matrices(p, kk),
                                ):
                                    add_row(
                                        self._sum_row(
                                            base,
                                            [
                                                _embed_block_matrix(self.m, off, sm)
                                                for sm in fam
                                            ],
                                        )
                                    )
                    # block anticommutation: adjacent swaps
                    for bi in range(len(mu) - 1):
                        p1, p2 = mu[bi], mu[bi + 1]
                        swapped = (
                            mu[:bi] + (p2, p1) + mu[bi + 2 :]
                        )
                        g = self._segment_swap_matrix(offs[bi], p1, p2)
                        lab2, poly = _transport(a, {tuple(n): Fraction(1)}, g, self.N)
                        row = {base: Fraction(1)}
                        for nn, c in poly.items():
                            lab = (swapped, lab2, nn)
                            row[lab] = row.get(lab, Fraction(0)) + c
                        add_row(row)
                    # frame stabilizer rows for corank > 0
                    if r > 0:
                        for g in self._frame_stabilizer_gens(q):
                            add_row(self._two_term(base, g, 1))
        return PresentedSpace(gens, rows)

    def _two_term(self, base, g, sign):
        mu, a, n = base
        lab2, poly = _transport(a, {n: Fraction(1)}, g, self.N)
        row = {base: Fraction(1)}
        for nn, c in poly.items():
            lab = (mu, lab2, nn)
            row[lab] = row.get(lab, Fraction(0)) - Fraction(sign) * c
        return row

    def _sum_row(self, base, mats):
        mu, a, n = base
        row: dict = {}
        for g in mats:
            lab2, poly = _transport(a, {n: Fraction(1)}, g, self.N)
            for nn, c in poly.items():
                lab = (mu, lab2, nn)
                row[lab] = row.get(lab, Fraction(0)) + c
        return row

    def _segment_swap_matrix(self, off, p1, p2):
        """Permutation matrix moving the segment of length p1 at `off` past
        the following segment of length p2 (as a transport: the raw product
        with swapped blocks equals this matrix applied to the reference of
        the swapped composition)."""
        m = self.m
        perm = list(range(m))
        seg1 = list(range(off, off + p1))
        seg2 = list(range(off + p1, off + p1 + p2))
        new_order = list(range(off)) + seg2 + seg1 + list(range(off + p1 + p2, m))
        # columns of g: reference columns of the swapped composition map to
        # the blocks (B2, B1) sitting in the original coordigates
        cols = []
        for j in range(m):
            col = [0] * m
            col[new_order[j]] = 1
            cols.append(tuple(col))
        return mat_from_columns(cols)

    def _frame_stabilizer_gens(self, q):
        m = self.m
        gens = []
        for j in range(q, m):
            for i in range(m):
                if i == j:
                    continue
                e = [[int(a == b) for b in range(m)] for a in range(m)]
                e[i][j] = 1
                gens.append(tuple(tuple(row) for row in e))
        if q < m:
            d = [[int(a == b) for b in range(m)] for a in range(m)]
            d[q][q] = -1
            gens.append(tuple(tuple(row) for row in d))
        return gens

    # -- differentials ------------------------------------------------------

    def _partial_raw(self, s, r, lab):
        """The horizontal differential (FD per block, Leibniz), staying in
        corank r:  (s, r) -> (s + 1, r)."""
        mu, a, n = lab
        offs = [sum(mu[:i]) for i in range(len(mu))]
        out: dict = {}
        for bi, p in enumerate(mu):
            if p < 2:
                continue
            off = offs[bi]
            leib = (-1) ** bi
            # FD on the block <v_1..v_{p+1}>: -Cycle sum of split products,
            # columns in local block coordinates
            local = [tuple(int(i == j) for i in range(p)) for j in range(p)]
            ext = local + [tuple(-1 for _ in range(p))]
            for i0 in range(p + 1):
                for kk in range(1, p):
                    colsL = [ext[(i0 + t) % (p + 1)] for t in range(kk)]
                    colsR = [ext[(i0 + kk + t) % (p + 1)] for t in range(p - kk)]
                    small = mat_from_columns(colsL + colsR)
                    g = _embed_block_matrix(self.m, off, small)
                    new_mu = mu[:bi] + (kk, p - kk) + mu[bi + 1 :]
                    lab2, poly = _transport(a, {n: Fraction(1)}, g, self.N)
                    for nn, c in poly.items():
                        key = (new_mu, lab2, nn)
                        v = out.get(key, Fraction(0)) - leib * c
                        if v:
                            out[key] = v
                        elif key in out:
                            del out[key]
        return out

    def _prime_raw(self, s, r, lab):
        """The vertical differential: drop singleton blocks, (s,r) -> (s,r+1).

        Blocks are reordered with singletons first; dropping the i-th
        singleton carries (-1)^(i-1).  The remaining blocks are transported
        onto the prefix frame of rank m - r - 1.
        """
        mu, a, n = lab
        k = len(mu)
        offs = [sum(mu[:i]) for i in range(k)]
        order = sorted(range(k), key=lambda i: (mu[i] != 1, i))
        sign_sort = _sort_parity(order)
        singles = [i for i in order if mu[i] == 1]
        out: dict = {}
        for pos, bi in enumerate(singles):
            sign = sign_sort * (-1) ** pos
            new_mu = tuple(mu[j] for j in order if j != bi)
            # transport: the remaining blocks, in their sorted order, must
            # occupy the standard prefix.  Columns of g: for each remaining
            # position (in new order), the old coordinate vector.
            old_positions = []
            for j in order:
                if j == bi:
                    continue
                old_positions.extend(range(offs[j], offs[j] + mu[j]))
            rest = [x for x in range(self.m) if x not in old_positions]
            cols = []
            for x in old_positions + rest:
                col = [0] * self.m
                col[x] = 1
                cols.append(tuple(col))
            g = mat_from_columns(cols)
            lab2, poly = _transport(a, {n: Fraction(1)}, g, self.N)
            for nn, c in poly.items():
                key = (new_mu, lab2, nn)
                v = out.get(key, Fraction(0)) + sign * c
                if v:
                    out[key] = v
                elif key in out:
                    del out[key]
        return out

    def total_differential(self, n):
        """Matrix of D = partial + (-1)^s partial' from total degree n."""
        src_keys = self.degrees.get(n, [])
        tgt_keys = self.degrees.get(n + 1, [])
        if not src_keys or not tgt_keys:
            dim_src = sum(self.spaces[k].dim() for k in src_keys)
            dim_tgt = sum(self.spaces[k].dim() for k in tgt_keys)
            return SparseMatrix.zero(dim_tgt, dim_src)
        tgt_offsets = {}
        off = 0
        for kk in tgt_keys:
            tgt_offsets[kk] = off
            off += self.spaces[kk].dim()
        ent = {}
        col = 0
        for s, r in src_keys:
            sp = self.spaces[(s, r)]
            for lab in sp.quotient_labels:
                images = []
                if (s + 1, r) in self.spaces:
                    images.append(((s + 1, r), self._partial_raw(s, r, lab), 1))
                if (s, r + 1) in self.spaces:
                    images.append(((s, r + 1), self._prime_raw(s, r, lab), (-1) ** s))
                for key, raw, sgn in images:
                    tsp = self.spaces[key]
                    proj = tsp.project({k_: v for k_, v in raw.items()})
                    for i, v in proj.items():
                        rix = tgt_offsets[key] + i
                        ent[(rix, col)] = ent.get((rix, col), Fraction(0)) + sgn * v
                col += 1
        dim_src = sum(self.spaces[k].dim() for k in src_keys)
        dim_tgt = sum(self.spaces[k].dim() for k in tgt_keys)
        return SparseMatrix(dim_tgt, dim_src, {k: v for k, v in ent.items() if v})

    def cohomology(self):
        from .exact_linalg import complex_cohomology

        top = 2 * self.m - 1
        mats = [self.total_differential(n) for n in range(1, top)]
        return complex_cohomology(mats)


def extended_coinvariant_complex(m, N, w, relaxed=False) -> ExtendedComplex:
    return ExtendedComplex(m, N, w, relaxed=relaxed)


def cusp_h2_dimension(p: int) -> int:
    """dim H^2 of the extended GL_2 coinvariant complex at weight 2."""
    return extended_coinvariant_complex(2, p, 2).cohomology()[1]


# ---------------------------------------------------------------------------
# manifest export


def generator_manifest(m, N, w, path=None):
    """JSON-lines manifest of the coinvariant generators per degree."""
    lines = []
    for k in range(1, m + 1):
        sp = wedge_space(m, w, N, k, True, "modular")
        for blocks in sp.labels:
            lines.append(
                json.dumps(
                    {
                        "degree": k,
                        "blocks": [len(b[0]) for b in blocks],
                        "alphas": [list(b[0]) for b in blocks],
                        "monomial": [list(b[1]) for b in blocks],
                    },
                    sort_keys=True,
                )
            )
    text = "\n".join(lines) + "\n"
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text
