"""Exact sparse linear algebra over Q and presented-space plumbing.

Everything downstream (relation matrices of shuffle presentations, cell
complex differentials, induced maps on quotients) is funnelled through the
two workhorses here: fraction-free rank of a sparse rational matrix, and
incremental row echelonization backing :class:`PresentedSpace`.

Coefficients are `fractions.Fraction` throughout; no floats anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class WellDefinednessError(ValueError):
    """A raw map sends a source relation outside the target relation span."""


class NotAComplexError(ValueError):
    """Consecutive differentials do not compose to zero."""


class BudgetExceeded(RuntimeError):
    """A requested construction exceeds the desk-scale size guard."""


# Matrices beyond this many stored entries are refused by builders that
# accept user-controlled parameters.
MAX_NONZEROS = 2 * 10**6


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Chain:
    """Finite formal Q-linear combination of opaque hashable labels."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            for lab, c in terms.items() if isinstance(terms, dict) else terms:
                c = _as_fraction(c)
                if not c:
                    continue
                s = t.get(lab, Fraction(0)) + c
                if s:
                    t[lab] = s
                elif lab in t:
                    del t[lab]
        self.terms = t

    @classmethod
    def single(cls, label, coeff=1) -> "Chain":
        return cls({label: coeff})

    def __add__(self, other):
        t = dict(self.terms)
        for lab, c in other.terms.items():
            s = t.get(lab, Fraction(0)) + c
            if s:
                t[lab] = s
            elif lab in t:
                del t[lab]
        out = Chain()
        out.terms = t
        return out

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        out = Chain()
        out.terms = {lab: -c for lab, c in self.terms.items()}
        return out

    def scale(self, c) -> "Chain":
        c = _as_fraction(c)
        out = Chain()
        if c:
            out.terms = {lab: v * c for lab, v in self.terms.items()}
        return out

    def __eq__(self, other):
        return isinstance(other, Chain) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda kv: repr(kv[0])))

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        if not self.terms:
            return "Chain(0)"
        return "Chain(" + " + ".join(f"{c}*{lab!r}" for lab, c in self) + ")"


class SparseMatrix:
    """Immutable sparse matrix over Q; no explicit zero entries stored."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries=None):
        self.rows = rows
        self.cols = cols
        ent = {}
        if entries:
            for (i, j), v in entries.items() if isinstance(entries, dict) else entries:
                if not (0 <= i < rows and 0 <= j < cols):
                    raise IndexError(f"entry ({i},{j}) outside {rows}x{cols}")
                v = _as_fraction(v)
                if v:
                    ent[(i, j)] = v
        self.entries = ent

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, {(i, i): Fraction(1) for i in range(n)})

    @classmethod
    def zero(cls, rows: int, cols: int) -> "SparseMatrix":
        return cls(rows, cols)

    @classmethod
    def from_rows(cls, rows: int, cols: int, row_dicts) -> "SparseMatrix":
        ent = {}
        for i, rd in enumerate(row_dicts):
            for j, v in rd.items():
                v = _as_fraction(v)
                if v:
                    ent[(i, j)] = v
        return cls(rows, cols, ent)

    def __eq__(self, other):
        return (
            isinstance(other, SparseMatrix)
            and (self.rows, self.cols) == (other.rows, other.cols)
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    def __getitem__(self, ij):
        return self.entries.get(ij, Fraction(0))

    def row_dicts(self) -> list[dict]:
        out = [dict() for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def col_dicts(self) -> list[dict]:
        out = [dict() for _ in range(self.cols)]
        for (i, j), v in self.entries.items():
            out[j][i] = v
        return out

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(
            self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()}
        )

    def matmul(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        other_rows = other.row_dicts()
        ent: dict = {}
        for (i, k), a in self.entries.items():
            for j, b in other_rows[k].items():
                key = (i, j)
                s = ent.get(key, Fraction(0)) + a * b
                if s:
                    ent[key] = s
                elif key in ent:
                    del ent[key]
        return SparseMatrix(self.rows, other.cols, ent)

    def is_zero(self) -> bool:
        return not self.entries

    def apply(self, vec: dict) -> dict:
        """Matrix times a sparse column vector {col index: value}."""
        out: dict = {}
        cols = self.col_dicts()
        for j, x in vec.items():
            for i, a in cols[j].items():
                s = out.get(i, Fraction(0)) + a * x
                if s:
                    out[i] = s
                elif i in out:
                    del out[i]
        return out

    def rank(self) -> int:
        return rank(self)

    def kernel_basis(self) -> list[dict]:
        return kernel_basis(self)

    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols}"]
        for (i, j) in sorted(self.entries):
            v = self.entries[(i, j)]
            lines.append(f"{i} {j} {v.numerator}/{v.denominator}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SparseMatrix":
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        r, c = map(int, lines[0].split())
        ent = {}
        for ln in lines[1:]:
            i, j, val = ln.split()
            ent[(int(i), int(j))] = Fraction(val)
        return cls(r, c, ent)


def _integer_rows(M: SparseMatrix) -> list[dict]:
    """Rows with denominators cleared; scaling does not change the rank."""
    rows = []
    for rd in M.row_dicts():
        if not rd:
            continue
        den = 1
        for v in rd.values():
            den = den * v.denominator // gcd(den, v.denominator)
        row = {j: int(v * den) for j, v in rd.items()}
        g = 0
        for v in row.values():
            g = gcd(g, v)
        if g > 1:
            row = {j: v // g for j, v in row.items()}
        rows.append(row)
    return rows


def rank(M: SparseMatrix) -> int:
    """Rank over Q by fraction-free elimination on integer rows.

    Cross-multiplication updates (pivot*row - factor*pivot_row) keep all
    entries integral; each updated row is stripped to its gcd content, which
    controls growth on the structured sparse matrices arising from orbit
    complexes.  Pivots are chosen to approximately minimize fill: shortest
    remaining row, then its column of lowest occupancy.  Rows not meeting the
    pivot column are untouched, so sparsity is preserved.
    """
    rows = _integer_rows(M)
    if not rows:
        return 0
    col_count: dict = {}
    for row in rows:
        for j in row:
            col_count[j] = col_count.get(j, 0) + 1
    rnk = 0
    active = rows
    while active:
        piv_idx = min(range(len(active)), key=lambda t: (len(active[t]), t))
        piv_row = active.pop(piv_idx)
        if not piv_row:
            continue
        piv_col = min(piv_row, key=lambda j: (col_count.get(j, 0), j))
        piv_val = piv_row[piv_col]
        rnk += 1
        for j in piv_row:
            col_count[j] -= 1
        nxt = []
        for row in active:
            if piv_col not in row:
                nxt.append(row)
                continue
            factor = row.pop(piv_col)
            for j in row:
                col_count[j] -= 1
            new_row = dict()
            g = 0
            for j in row.keys() | piv_row.keys():
                if j == piv_col:
                    continue
                w = piv_val * row.get(j, 0) - factor * piv_row.get(j, 0)
                if w:
                    new_row[j] = w
                    g = gcd(g, w)
            if g > 1:
                new_row = {j: v // g for j, v in new_row.items()}
            for j in new_row:
                col_count[j] = col_count.get(j, 0) + 1
            if new_row:
                nxt.append(new_row)
        active = nxt
    return rnk


def rref_rows(M: SparseMatrix) -> dict:
    """Fully reduced row echelon form, returned as {pivot column: row dict}.

    Each row has its pivot entry equal to 1 and no other pivot columns in
    its support.
    """
    pivots: dict = {}
    for rd in M.row_dicts():
        row = dict(rd)
        row = reduce_by_pivots(row, pivots)
        if not row:
            continue
        p = min(row)
        inv = Fraction(1) / row[p]
        row = {j: v * inv for j, v in row.items()}
        for q, other in list(pivots.items()):
            if p in other:
                f = other.pop(p)
                for j, v in row.items():
                    if j == p:
                        continue
                    s = other.get(j, Fraction(0)) - f * v
                    if s:
                        other[j] = s
                    elif j in other:
                        del other[j]
        pivots[p] = row
    return pivots


def reduce_by_pivots(vec: dict, pivots: dict) -> dict:
    """Eliminate every pivot column of `pivots` from the vector `vec`."""
    vec = dict(vec)
    while True:
        hit = [j for j in vec if j in pivots]
        if not hit:
            return vec
        p = min(hit)
        f = vec.pop(p)
        for j, v in pivots[p].items():
            if j == p:
                continue
            s = vec.get(j, Fraction(0)) - f * v
            if s:
                vec[j] = s
            elif j in vec:
                del vec[j]


def kernel_basis(M: SparseMatrix) -> list[dict]:
    """Basis of the right kernel {v : Mv = 0}, one sparse dict per vector."""
    pivots = rref_rows(M)
    free_cols = [j for j in range(M.cols) if j not in pivots]
    basis = []
    for f in free_cols:
        vec = {f: Fraction(1)}
        for p, row in pivots.items():
            if f in row:
                vec[p] = -row[f]
        basis.append(vec)
    return basis


class PresentedSpace:
    """A free Q-space on labelled generators with an echelonized relation set.

    The quotient basis is the set of generator labels that are not pivot
    columns of the echelonized relation matrix; this makes induced maps on
    quotients deterministic.
    """

    def __init__(self, labels, relation_rows=()):
        self.labels = tuple(labels)
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate generator labels")
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        self._pivots: dict = {}
        seen = set()
        rows = []
        for row in relation_rows:
            r = self._to_cols(row)
            key = tuple(sorted((j, v) for j, v in r.items()))
            if r and key not in seen:
                seen.add(key)
                rows.append(r)
        rows.sort(key=lambda r: (len(r), sorted(r)))
        for r in rows:
            self._insert(r)
        self.quotient_cols = tuple(
            j for j in range(len(self.labels)) if j not in self._pivots
        )
        self.quotient_labels = tuple(self.labels[j] for j in self.quotient_cols)
        self._qpos = {j: k for k, j in enumerate(self.quotient_cols)}

    def _to_cols(self, row) -> dict:
        out = {}
        for lab, v in row.items():
            v = _as_fraction(v)
            if v:
                j = self.index[lab]
                s = out.get(j, Fraction(0)) + v
                if s:
                    out[j] = s
                elif j in out:
                    del out[j]
        return out

    def _insert(self, row: dict) -> None:
        row = reduce_by_pivots(row, self._pivots)
        if not row:
            return
        p = min(row)
        inv = Fraction(1) / row[p]
        self._pivots[p] = {j: v * inv for j, v in row.items()}

    @property
    def num_generators(self) -> int:
        return len(self.labels)

    @property
    def relation_rank(self) -> int:
        return len(self._pivots)

    def dim(self) -> int:
        return len(self.labels) - len(self._pivots)

    def reduce(self, vector: dict) -> dict:
        """Reduce a {label: coeff} vector modulo the relation span."""
        return reduce_by_pivots(self._to_cols(vector), self._pivots)

    def is_relation(self, vector: dict) -> bool:
        return not self.reduce(vector)

    def project(self, vector: dict) -> dict:
        """Coordinates of a vector on the quotient basis, {position: value}."""
        red = self.reduce(vector)
        out = {}
        for j, v in red.items():
            if j not in self._qpos:
                # Only pivot columns are eliminated by reduce(); anything
                # left over must be a quotient column.
                raise AssertionError("reduction left a pivot column")
            out[self._qpos[j]] = v
        return out

    def relation_matrix(self) -> SparseMatrix:
        rows = sorted(self._pivots)
        ent = {}
        for i, p in enumerate(rows):
            for j, v in self._pivots[p].items():
                ent[(i, j)] = v
        return SparseMatrix(len(rows), len(self.labels), ent)


def quotient_dim(space: PresentedSpace) -> int:
    return space.dim()


def induced_map(
    source: PresentedSpace, target: PresentedSpace, raw
) -> SparseMatrix:
    """Matrix on quotient bases of a raw generator map source -> target.

    `raw` maps each source generator label to a {target label: coeff} dict.
    Raises WellDefinednessError unless every source relation is sent into
    the span of the target relations.
    """
    images = {}
    for lab in source.labels:
        images[lab] = raw(lab) if callable(raw) else raw.get(lab, {})
    for p, row in source._pivots.items():
        vec: dict = {}
        for j, c in row.items():
            for tl, v in images[source.labels[j]].items():
                s = vec.get(tl, Fraction(0)) + c * v
                if s:
                    vec[tl] = s
                elif tl in vec:
                    del vec[tl]
        if not target.is_relation(vec):
            raise WellDefinednessError(
                f"relation with pivot {source.labels[p]!r} maps outside the "
                "target relation span"
            )
    ent = {}
    for k, lab in enumerate(source.quotient_labels):
        for i, v in target.project(images[lab]).items():
            ent[(i, k)] = v
    return SparseMatrix(target.dim(), source.dim(), ent)


def complex_cohomology(diffs: list[SparseMatrix]) -> list[int]:
    """Cohomology dimensions of C_0 -> C_1 -> ... given by the d_i matrices.

    d_i maps C_i to C_{i+1} and is stored with rows indexed by C_{i+1}.
    Returns dim H^i for i = 0..n where n = len(diffs).
    """
    n = len(diffs)
    for i in range(n - 1):
        if diffs[i + 1].cols != diffs[i].rows:
            raise NotAComplexError(
                f"d_{i + 1} has {diffs[i + 1].cols} columns but d_{i} has "
                f"{diffs[i].rows} rows"
            )
        if not diffs[i + 1].matmul(diffs[i]).is_zero():
            raise NotAComplexError(f"d_{i + 1} o d_{i} != 0")
    ranks = [d.rank() for d in diffs]
    out = []
    for i in range(n + 1):
        dim_ci = diffs[i].cols if i < n else diffs[n - 1].rows
        k = dim_ci - (ranks[i] if i < n else 0)
        out.append(k - (ranks[i - 1] if i > 0 else 0))
    return out
