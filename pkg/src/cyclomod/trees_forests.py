"""Plane trivalent trees, tree chains, colored forests and the tree complex.

A plane trivalent tree with legs cyclically colored by an extended basis
(c_0, ..., c_m) is encoded by a full binary tree over the positions 1..m,
rooted at the c_0 leg.  The canonical orientation is the boundary-walk order
of the edges starting at the c_0 leg; the walk sense (right child first) is
pinned by the boundary formula for the tree chain and by the m = 3 examples,
and is validated globally by the chain-map and shuffle-vanishing tests.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from .exact_linalg import Chain, PresentedSpace, SparseMatrix, complex_cohomology, induced_map
from .lattice import matrix_rank, sign_vector, vec_neg, vec_sum


class OverlappingSpanError(ValueError):
    """Join of chains whose vertex spans intersect nontrivially."""


# ---------------------------------------------------------------------------
# cells: simplices on sign classes of lattice vectors


def cell_from_ordered(vertices):
    """Canonicalize an ordered vertex tuple: (sorted cell, sign) or None.

    The sign is the parity of the sorting permutation; a repeated vertex
    makes the simplex degenerate (None).
    """
    verts = [sign_vector(v) for v in vertices]
    if len(set(verts)) != len(verts):
        return None
    order = sorted(range(len(verts)), key=lambda i: verts[i])
    sign = 1
    seen = [False] * len(order)
    for i in range(len(order)):
        if seen[i]:
            continue
        j = i
        clen = 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            clen += 1
        if clen % 2 == 0:
            sign = -sign
    return tuple(verts[i] for i in order), sign


def chain_of_cells(terms) -> Chain:
    """Chain from (ordered vertex tuple, coeff) pairs, canonicalized."""
    out = []
    for verts, c in terms:
        cs = cell_from_ordered(verts)
        if cs is None:
            continue
        cell, sgn = cs
        out.append((cell, Fraction(c) * sgn))
    return Chain(out)


def cell_rank(cell) -> int:
    return matrix_rank(list(cell))


def join(a: Chain, b: Chain) -> Chain:
    """Bilinear join: concatenate vertex lists of each pair of cells.

    Requires the two spans to intersect in 0 for every term pair.
    """
    out = []
    for ca, va in a.terms.items():
        for cb, vb in b.terms.items():
            if matrix_rank(list(ca) + list(cb)) != len(ca) + len(cb) - (
                len(ca) - cell_rank(ca)
            ) - (len(cb) - cell_rank(cb)):
                # rank of union must be rank(a) + rank(b)
                if cell_rank(ca) + cell_rank(cb) != matrix_rank(list(ca) + list(cb)):
                    raise OverlappingSpanError(
                        f"spans of {ca} and {cb} intersect nontrivially"
                    )
            if cell_rank(ca) + cell_rank(cb) != matrix_rank(list(ca) + list(cb)):
                raise OverlappingSpanError(
                    f"spans of {ca} and {cb} intersect nontrivially"
                )
            out.append((ca + cb, va * vb))
    return chain_of_cells(out)


def boundary_cell(cell) -> Chain:
    """Simplicial boundary of a sorted cell: alternating vertex drops."""
    out = []
    for i in range(len(cell)):
        face = cell[:i] + cell[i + 1 :]
        out.append((face, Fraction(-1) ** i))
    return Chain(out)


def boundary(chain: Chain, interior_rank: int | None = None) -> Chain:
    """Boundary of a cell chain; optionally drop faces of span rank < m."""
    total = Chain()
    for cell, c in chain.terms.items():
        total = total + boundary_cell(cell).scale(c)
    if interior_rank is not None:
        total = Chain(
            {
                cell: c
                for cell, c in total.terms.items()
                if cell_rank(cell) >= interior_rank
            }
        )
    return total


# ---------------------------------------------------------------------------
# plane trivalent trees


def _binary_shapes(seq):
    """All full binary trees over the tuple `seq`; leaves are the entries."""
    if len(seq) == 1:
        return [seq[0]]
    out = []
    for k in range(1, len(seq)):
        for left in _binary_shapes(seq[:k]):
            for right in _binary_shapes(seq[k:]):
                out.append((left, right))
    return out


def _leafset(node):
    if isinstance(node, tuple) and len(node) == 2 and not isinstance(node[0], int):
        pass
    if isinstance(node, int):
        return frozenset((node,))
    return _leafset(node[0]) | _leafset(node[1])


class PlaneTree:
    """A plane trivalent tree with legs cyclically colored by positions 0..m.

    `shape` is a full binary tree over the positions (1, ..., m); the root
    vertex carries the distinguished 0-leg.  Edges are identified by the set
    of leg positions on the side away from position 0.
    """

    __slots__ = ("m", "shape", "_edges", "_walk")

    def __init__(self, m: int, shape):
        self.m = m
        self.shape = shape
        self._edges = None
        self._walk = None

    def __repr__(self):
        return f"PlaneTree(m={self.m}, shape={self.shape!r})"

    def _edge_of(self, node):
        s = _leafset(node)
        return frozenset(s)

    def walk_edges(self):
        """All edges in canonical boundary-walk order, starting at the 0-leg.

        Reversing the plane orientation would multiply the induced tree
        orientation by (-1)^(m-1); the sense here (right child first) is the
        one under which the boundary of the tree chain satisfies the stated
        cut-sum formula.
        """
        if self._walk is not None:
            return self._walk
        out = [frozenset(range(1, self.m + 1))]

        def rec(node):
            if isinstance(node, int):
                return
            for child in (node[1], node[0]):
                out.append(self._edge_of(child))
                rec(child)

        if self.m == 1:
            self._walk = [frozenset((1,))]
            return self._walk
        rec(self.shape)
        self._walk = out
        return out

    def edges(self):
        if self._edges is None:
            self._edges = sorted(self.walk_edges(), key=lambda e: (len(e), sorted(e)))
        return self._edges

    def internal_edges(self):
        return [e for e in self.edges() if 1 < len(e) < self.m]

    def canonical_key(self):
        return (self.m, frozenset(self.internal_edges()))


def enumerate_plane_trivalent_trees(m: int):
    """All plane trivalent trees with legs cyclically colored by e_0..e_m."""
    if m < 2:
        raise ValueError("need m >= 2")
    seen = {}
    for shape in _binary_shapes(tuple(range(1, m + 1))):
        t = PlaneTree(m, shape)
        key = t.canonical_key()
        if key not in seen:
            seen[key] = t
    return [seen[k] for k in sorted(seen, key=lambda k: sorted(map(sorted, k[1])))]


def edge_vector(tree: PlaneTree, edge, coloring):
    """Sum of the leg colors on one side of the edge, as a sign class.

    `coloring` is the extended tuple (c_0, ..., c_m); the two sides give
    opposite vectors since the colors sum to zero.
    """
    v = vec_sum(coloring[i] for i in edge)
    return sign_vector(v)


def canonical_orientation(tree: PlaneTree):
    """The walk-order edge list; the tree chain is +1 versus this listing."""
    return list(tree.walk_edges())


def tree_chain(extended) -> Chain:
    """The tree chain of an extended tuple (c_0, ..., c_m) summing to zero.

    Sum over all plane trivalent trees with legs cyclically colored by the
    tuple (first entry at the distinguished leg) of the cell on the 2m-1
    edge vectors, oriented by the canonical walk.
    """
    extended = tuple(tuple(v) for v in extended)
    if any(vec_sum(extended)):
        raise ValueError("colors must sum to zero")
    m = len(extended) - 1
    if m == 0:
        raise ValueError("empty tree chain")
    if m == 1:
        return chain_of_cells([((extended[1],), 1)])
    out = []
    for t in enumerate_plane_trivalent_trees(m):
        verts = [edge_vector(t, e, extended) for e in t.walk_edges()]
        out.append((verts, 1))
    return chain_of_cells(out)


def tree_chain_sub(colors) -> Chain:
    """psi[w_1,...,w_k]: tree chain of (-sum(w), w_1, ..., w_k)."""
    colors = [tuple(v) for v in colors]
    return tree_chain((vec_neg(vec_sum(colors)),) + tuple(colors))


def tree_chain_boundary_check(basis, verbose: bool = False) -> bool:
    """Check the boundary formula for the tree chain of a lattice basis.

    d psi[e_1..e_m] = - sum over cyclic cuts (i, j) of
    psi[e_{i+1},...,e_j] * psi[e_{j+1},...,e_{i-1}], after dropping the
    faces whose vertices span a sublattice of rank < m.
    """
    basis = [tuple(v) for v in basis]
    m = len(basis)
    ext = (vec_neg(vec_sum(basis)),) + tuple(basis)  # (e_0, e_1, ..., e_m)
    lhs = boundary(tree_chain(ext), interior_rank=m)
    rhs = Chain()
    n = m + 1
    for i in range(n):
        for j in range(n):
            if j == i or j == (i - 1) % n:
                continue
            arc1 = [ext[(i + 1 + k) % n] for k in range(((j - i) % n))]
            arc2 = [ext[(j + 1 + k) % n] for k in range(((i - 1 - j) % n))]
            rhs = rhs + join(tree_chain_sub(arc1), tree_chain_sub(arc2))
    rhs = -rhs
    if verbose and lhs != rhs:
        print("difference:", lhs - rhs)
    return lhs == rhs


def first_shuffle_tree_image(basis, k: int) -> Chain:
    """Sum of tree chains over the (k, m-k)-shuffles of the basis entries."""
    basis = [tuple(v) for v in basis]
    m = len(basis)
    total = Chain()
    for sigma in shuffles(k, m - k):
        permuted = [basis[sigma[i]] for i in range(m)]
        total = total + tree_chain_sub(permuted)
    return total


def shuffles(p: int, q: int):
    """All (p, q)-shuffle permutations of range(p + q), as position tuples.

    sigma is returned as the tuple (sigma^{-1}(0), ..., sigma^{-1}(p+q-1)):
    the element placed in each slot.
    """
    out = []
    for positions in itertools.combinations(range(p + q), p):
        slot = [None] * (p + q)
        a, b = 0, p
        posset = set(positions)
        for s in range(p + q):
            if s in posset:
                slot[s] = a
                a += 1
            else:
                slot[s] = b
                b += 1
        out.append(tuple(slot))
    return out


# ---------------------------------------------------------------------------
# the abstract tree complex and the cyclic Lie cooperad


def _laminar(a, b) -> bool:
    i = a & b
    return not i or i == a or i == b


@lru_cache(maxsize=None)
def tree_complex_bases(m: int):
    """Bases of T^1..T^{m-1}: laminar families of internal splits.

    A tree with legs colored 0..m and no valence-2 vertices is exactly a
    pairwise laminar family of subsets of {1..m} of sizes 2..m-1 (the side
    of each internal edge away from the 0 leg); T^i collects the families
    with m-1-i internal edges.
    """
    subsets = [
        frozenset(c)
        for size in range(2, m)
        for c in itertools.combinations(range(1, m + 1), size)
    ]
    by_count: dict = {i: [] for i in range(1, m)}
    for count in range(m - 1):
        for fam in itertools.combinations(subsets, count):
            if all(_laminar(a, b) for a, b in itertools.combinations(fam, 2)):
                key = tuple(sorted(fam, key=lambda s: (len(s), sorted(s))))
                by_count[m - 1 - count].append(key)
    for i in by_count:
        by_count[i].sort(key=lambda fam: [(len(s), sorted(s)) for s in fam])
    return by_count


def _canonical_edge_list(m: int, family):
    legs = [frozenset((i,)) for i in range(1, m + 1)]
    zero_leg = [frozenset(range(1, m + 1))]
    internal = sorted(family, key=lambda s: (len(s), sorted(s)))
    return zero_leg + legs + internal


def _perm_parity(seq, target) -> int:
    pos = {e: i for i, e in enumerate(seq)}
    perm = [pos[e] for e in target]
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, clen = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            clen += 1
        if clen % 2 == 0:
            sign = -sign
    return sign


def tree_complex_differential(m: int, i: int) -> SparseMatrix:
    """Contraction differential d: T^i -> T^{i+1} in the canonical bases."""
    bases = tree_complex_bases(m)
    src, tgt = bases[i], bases[i + 1]
    tgt_index = {fam: r for r, fam in enumerate(tgt)}
    ent = {}
    for c, fam in enumerate(src):
        edge_list = _canonical_edge_list(m, fam)
        for s in fam:
            pos = edge_list.index(s)
            sign = (-1) ** pos
            rest = tuple(sorted((x for x in fam if x != s), key=lambda t: (len(t), sorted(t))))
            r = tgt_index[rest]
            ent[(r, c)] = ent.get((r, c), 0) + sign
    return SparseMatrix(len(tgt), len(src), {k: Fraction(v) for k, v in ent.items() if v})


def cyclic_lie_dual_space(m: int) -> PresentedSpace:
    """CLie*_{m+1} presented as cyclic words (e_0 w) modulo first shuffles."""
    labels = [tuple(p) for p in itertools.permutations(range(1, m + 1))]
    rows = []
    for base in labels:
        for p in range(1, m):
            a, b = base[:p], base[p:]
            row: dict = {}
            for sl in shuffles(p, m - p):
                word = tuple((a + b)[sl[i]] for i in range(m))
                row[word] = row.get(word, 0) + 1
            rows.append(row)
    return PresentedSpace(labels, rows)


def count_multilinear_lyndon(m: int) -> int:
    """Number of multilinear Lyndon words on m letters (oracle: (m-1)!)."""
    count = 0
    for p in itertools.permutations(range(m)):
        word = tuple(p)
        if all(word < word[k:] + word[:k] for k in range(1, m)):
            count += 1
    return count


def word_to_tree_sum(m: int, word) -> dict:
    """Image in T^1 of the dual cyclic word (e_0, word): plane trees with
    that cyclic leg order, with the plane-canonical orientation expressed in
    the abstract canonical edge order."""
    out: dict = {}
    color = {0: 0}
    for pos, c in enumerate(word, start=1):
        color[pos] = c
    for t in enumerate_plane_trivalent_trees(m):
        walk = t.walk_edges()
        recolored = [frozenset(color[i] for i in e) for e in walk]
        # the 0-leg recolors to {word colors} = {1..m}; legs stay singletons
        family = tuple(
            sorted(
                (e for e in recolored if 1 < len(e) < m),
                key=lambda s: (len(s), sorted(s)),
            )
        )
        target = _canonical_edge_list(m, family)
        sign = _perm_parity(recolored, target)
        out[family] = out.get(family, 0) + sign
        if not out[family]:
            del out[family]
    return out


def tree_complex_exactness(m: int) -> bool:
    """Exactness of 0 -> CLie*_{m+1} -> T^1 -> ... -> T^{m-1} -> 0.

    The first map sends a cyclic word to the signed sum of compatible plane
    trees; it must kill the first shuffle relations, which is checked as
    well-definedness of the induced map.
    """
    clie = cyclic_lie_dual_space(m)
    bases = tree_complex_bases(m)
    t_spaces = {i: PresentedSpace(bases[i]) for i in range(1, m)}
    raw = {word: word_to_tree_sum(m, word) for word in clie.labels}
    w_matrix = induced_map(clie, t_spaces[1], raw)
    diffs = [w_matrix] + [tree_complex_differential(m, i) for i in range(1, m - 1)]
    return all(h == 0 for h in complex_cohomology(diffs))


# ---------------------------------------------------------------------------
# colored forests


class ColoredTree:
    """A colored tree: legs are distinct lattice vectors summing to zero,
    internal edges are splits stored as the side not containing the minimal
    leg.  A rank-1 tree is a segment with legs {v, -v} and a single edge."""

    __slots__ = ("legs", "splits")

    def __init__(self, legs, splits=()):
        self.legs = tuple(sorted(tuple(v) for v in legs))
        self.splits = tuple(
            sorted((self.canon_side(s) for s in splits), key=lambda s: (len(s), sorted(s)))
        )

    def canon_side(self, s):
        s = frozenset(tuple(v) for v in s)
        if min(self.legs) in s:
            s = frozenset(self.legs) - s
        return s

    def key(self):
        return (self.legs, self.splits)

    def rank(self) -> int:
        return len(self.legs) - 1

    def edge_list(self):
        if len(self.legs) == 2:
            return [("seg", self.legs)]
        return [("leg", v) for v in self.legs] + [("split", s) for s in self.splits]

    def __repr__(self):
        return f"ColoredTree(legs={self.legs}, splits={self.splits})"


def _forest_key(trees):
    return tuple(sorted(t.key() for t in trees))


def _cut_leg(t: ColoredTree, leg):
    """Branches at the vertex of `leg` become separate trees.

    Each branch keeps its old legs and gains one new leg colored by minus
    their sum; the edge that connected the branch to the cut vertex becomes
    that new leg.  Returns (new trees, old edge id -> new edge id).
    """
    legset = frozenset(t.legs)
    sides = [t.canon_side(s) for s in t.splits]
    regions = sides + [legset]

    def parent(x):
        cands = [r for r in regions if x != r and x <= r]
        return min(cands, key=len) if cands else None

    v_region = parent(frozenset((leg,)))
    children = [r for r in sides if r <= v_region and r != v_region and parent(r) == v_region]
    loose = [x for x in v_region if x != leg and not any(x in c for c in children)]

    branches = []  # (branch legs, connecting old edge id or None, relativized splits)
    for c in children:
        inner = [s for s in sides if s < c]
        branches.append((sorted(c), ("split", c), inner))
    for x in loose:
        branches.append(([x], ("leg", x), []))
    if v_region != legset:
        outside = legset - v_region
        rel = []
        for s in sides:
            if s & v_region == frozenset() and s != outside:
                rel.append(s)
            elif s > v_region:
                rel.append(legset - s)
        conn = ("split", v_region) if v_region in sides else None
        assert conn is not None
        branches.append((sorted(outside), conn, rel))
    if len(branches) < 2:
        return None

    new_trees = []
    edge_map = {}
    for br_legs, conn, rel_splits in branches:
        new_leg = vec_neg(vec_sum(br_legs))
        nt = ColoredTree(list(br_legs) + [new_leg], rel_splits)
        new_trees.append(nt)
        if len(nt.legs) == 2:
            edge_map[(t.key(), conn)] = (nt.key(), ("seg", nt.legs))
            continue
        edge_map[(t.key(), conn)] = (nt.key(), ("leg", new_leg))
        for x in br_legs:
            edge_map[(t.key(), ("leg", x))] = (nt.key(), ("leg", x))
        brset = frozenset(br_legs)
        for s in sides:
            if s < brset:
                edge_map[(t.key(), ("split", s))] = (nt.key(), ("split", nt.canon_side(s)))
            elif s > v_region and (legset - s) < brset:
                edge_map[(t.key(), ("split", s))] = (
                    nt.key(),
                    ("split", nt.canon_side(legset - s)),
                )
    return new_trees, edge_map


class ForestComplex:
    """The rank-m colored forest complex spanned by the forests reachable
    from single trivalent trees colored by the standard unordered extended
    basis, with differential d = d_I + d_L (contract an internal edge / cut
    a leg at a valence-v vertex into v-1 trees)."""

    def __init__(self, m: int):
        self.m = m
        from .lattice import standard_extended_basis

        colors = sorted(standard_extended_basis(m))
        frontier = []
        for fam in tree_complex_bases(m)[1]:
            splits = [frozenset(colors[i] for i in s) for s in fam]
            frontier.append((ColoredTree(colors, splits),))
        seen = {_forest_key(f) for f in frontier}
        all_forests = list(frontier)
        while frontier:
            nxt = []
            for forest in frontier:
                for _, nf in self._diff_terms(forest):
                    k = _forest_key(nf)
                    if k not in seen:
                        seen.add(k)
                        nxt.append(tuple(nf))
            all_forests.extend(nxt)
            frontier = nxt
        self.basis_by_degree: dict = {}
        for forest in all_forests:
            self.basis_by_degree.setdefault(self.degree(forest), []).append(
                _forest_key(forest)
            )
        for d in self.basis_by_degree:
            self.basis_by_degree[d] = sorted(set(self.basis_by_degree[d]))

    @staticmethod
    def _forest_from_key(key):
        return tuple(ColoredTree(legs, splits) for legs, splits in key)

    def degree(self, forest) -> int:
        return 2 * self.m - sum(len(t.edge_list()) for t in forest)

    @staticmethod
    def _global_edges(forest):
        out = []
        for t in sorted(forest, key=lambda t: t.key()):
            for e in t.edge_list():
                out.append((t.key(), e))
        return out

    def _diff_terms(self, forest):
        forest = sorted(forest, key=lambda t: t.key())
        edges = self._global_edges(forest)
        out = []
        for t in forest:
            others = [u for u in forest if u.key() != t.key()]
            for s in t.splits:
                pos = edges.index((t.key(), ("split", s)))
                nt = ColoredTree(t.legs, [x for x in t.splits if x != s])
                new_forest = others + [nt]
                relabeled = []
                for tk, e in edges:
                    if (tk, e) == (t.key(), ("split", s)):
                        continue
                    if tk == t.key():
                        if e[0] == "split":
                            relabeled.append((nt.key(), ("split", nt.canon_side(e[1]))))
                        else:
                            relabeled.append((nt.key(), e))
                    else:
                        relabeled.append((tk, e))
                sign = (-1) ** pos * _perm_parity(relabeled, self._global_edges(new_forest))
                out.append((sign, new_forest))
            if len(t.legs) == 2:
                continue  # cutting a segment removes a component: rank drops
            for leg in t.legs:
                cut = _cut_leg(t, leg)
                if cut is None:
                    continue
                new_trees, edge_map = cut
                pos = edges.index((t.key(), ("leg", leg)))
                new_forest = others + new_trees
                relabeled = [
                    edge_map.get((tk, e), (tk, e))
                    for tk, e in edges
                    if (tk, e) != (t.key(), ("leg", leg))
                ]
                sign = (-1) ** pos * _perm_parity(relabeled, self._global_edges(new_forest))
                out.append((sign, new_forest))
        return out

    def differential_matrix(self, degree: int) -> SparseMatrix:
        src = self.basis_by_degree.get(degree, [])
        tgt = self.basis_by_degree.get(degree + 1, [])
        tgt_index = {k: i for i, k in enumerate(tgt)}
        ent: dict = {}
        for c, key in enumerate(src):
            for coeff, nf in self._diff_terms(self._forest_from_key(key)):
                k = _forest_key(nf)
                if k in tgt_index:
                    r = tgt_index[k]
                    ent[(r, c)] = ent.get((r, c), 0) + coeff
        return SparseMatrix(
            len(tgt), len(src), {k: Fraction(v) for k, v in ent.items() if v}
        )


def forest_complex(m: int) -> ForestComplex:
    return ForestComplex(m)
