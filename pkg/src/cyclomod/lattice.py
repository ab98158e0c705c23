"""Integer lattices, the GL_m(Z) action, coset labels and Sym^k coefficients.

Vectors are integer tuples (columns); matrices are tuples of row tuples.
The coset space Gamma_1(m;N)\\GL_m(Z) is encoded by the last row of a matrix
mod N, a right GL_m(Z)-set.  Sym^k(V_m) is realized as homogeneous degree-k
polynomials in the coordinate functionals t_1..t_m, with g acting by
precomposition with g^{-1} on coordinates.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd


class RankMismatch(ValueError):
    """Vectors of inconsistent ambient rank."""


Vector = tuple
Matrix = tuple


def vec_add(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vec_neg(a: Vector) -> Vector:
    return tuple(-x for x in a)


def vec_sum(vs) -> Vector:
    vs = list(vs)
    return tuple(sum(col) for col in zip(*vs))


def sign_vector(v: Vector) -> Vector:
    """Canonical representative of {v, -v}: first nonzero coordinate positive."""
    for x in v:
        if x > 0:
            return tuple(v)
        if x < 0:
            return vec_neg(v)
    raise ValueError("zero vector has no sign representative")


def mat_from_columns(cols) -> Matrix:
    cols = list(cols)
    m = len(cols[0])
    return tuple(tuple(c[i] for c in cols) for i in range(m))


def mat_columns(g: Matrix) -> list:
    return [tuple(row[j] for row in g) for j in range(len(g[0]))]


def mat_vec(g: Matrix, v: Vector) -> Vector:
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in g)


def row_vec_mat(a, g: Matrix):
    n = len(g[0])
    return tuple(sum(a[i] * g[i][j] for i in range(len(a))) for j in range(n))


def mat_mul(g: Matrix, h: Matrix) -> Matrix:
    n = len(h[0])
    return tuple(
        tuple(sum(g[i][k] * h[k][j] for k in range(len(h))) for j in range(n))
        for i in range(len(g))
    )


def identity_matrix(m: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(m)) for i in range(m))


def det(g: Matrix) -> int:
    """Integer determinant by fraction-free Gaussian elimination."""
    m = len(g)
    if m == 0:
        return 1
    a = [list(row) for row in g]
    sign = 1
    prev = 1
    for k in range(m - 1):
        if a[k][k] == 0:
            for i in range(k + 1, m):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, m):
            for j in range(k + 1, m):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[m - 1][m - 1]


def det_character(g: Matrix) -> int:
    """The determinant character GL_m(Z) -> {+1, -1}."""
    d = det(g)
    if d not in (1, -1):
        raise ValueError("matrix is not unimodular")
    return d


def is_unimodular(g: Matrix) -> bool:
    return det(g) in (1, -1)


def mat_inverse(g: Matrix) -> Matrix:
    """Exact inverse; integer entries whenever g is unimodular."""
    m = len(g)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(m)]
         for i, row in enumerate(g)]
    for c in range(m):
        piv = next(i for i in range(c, m) if a[i][c])
        a[c], a[piv] = a[piv], a[c]
        pv = a[c][c]
        a[c] = [x / pv for x in a[c]]
        for i in range(m):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    inv = []
    for i in range(m):
        row = []
        for j in range(m, 2 * m):
            x = a[i][j]
            row.append(int(x) if x.denominator == 1 else x)
        inv.append(tuple(row))
    return tuple(inv)


def matrix_rank(vectors) -> int:
    """Rank over Q of a list of integer vectors."""
    rows = [list(map(Fraction, v)) for v in vectors if any(v)]
    r = 0
    ncols = len(vectors[0]) if vectors else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c] / pv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def is_extended_basis(vs) -> bool:
    """True iff vs = (v_1,...,v_{m+1}) sums to zero and v_1..v_m is a basis."""
    vs = [tuple(v) for v in vs]
    m = len(vs[0])
    if any(len(v) != m for v in vs):
        raise RankMismatch("vectors of different ambient rank")
    if len(vs) != m + 1:
        return False
    if any(vec_sum(vs)):
        return False
    return is_unimodular(mat_from_columns(vs[:m]))


def standard_extended_basis(m: int):
    """(e_1, ..., e_m, e_0) with e_0 = -(e_1 + ... + e_m)."""
    es = [tuple(int(i == j) for i in range(m)) for j in range(m)]
    return tuple(es) + (tuple(-1 for _ in range(m)),)


# ---------------------------------------------------------------------------
# coset labels for Gamma_1(m;N) \ GL_m(Z)


def coset_label(g: Matrix, N: int):
    """Last row of g mod N; constant on left Gamma_1(m;N)-cosets."""
    if N < 1:
        raise ValueError("modulus must be >= 1")
    return tuple(x % N for x in g[-1])


def act_coset(label, g: Matrix, N: int):
    """Right action of GL_m(Z) on labels: row vector times g mod N."""
    return tuple(x % N for x in row_vec_mat(label, g))


def label_ok(label, N: int) -> bool:
    g = N
    for x in label:
        g = gcd(g, x)
    return g == 1


def coset_space(m: int, N: int):
    """All labels in (Z/N)^m with gcd(alpha_1,...,alpha_m,N) = 1, sorted."""
    out = [a for a in itertools.product(range(N), repeat=m) if label_ok(a, N)]
    return out


def gl_generators(m: int):
    """Elementary transvections plus one diagonal sign flip: generate GL_m(Z)."""
    gens = []
    for i in range(m):
        for j in range(m):
            if i != j:
                e = [[int(a == b) for b in range(m)] for a in range(m)]
                e[i][j] = 1
                gens.append(tuple(tuple(r) for r in e))
                e[i][j] = -1
                gens.append(tuple(tuple(r) for r in e))
    f = [[int(a == b) for b in range(m)] for a in range(m)]
    f[0][0] = -1
    gens.append(tuple(tuple(r) for r in f))
    return gens


def coset_orbit(start, m: int, N: int):
    """Orbit of a label under the right GL_m(Z)-action, breadth-first."""
    gens = gl_generators(m)
    seen = {tuple(x % N for x in start)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for lab in frontier:
            for g in gens:
                im = act_coset(lab, g, N)
                if im not in seen:
                    seen.add(im)
                    nxt.append(im)
        frontier = nxt
    return sorted(seen)


# ---------------------------------------------------------------------------
# Sym^k(V_m): homogeneous polynomials in the coordinates t_1..t_m


def monomials(m: int, d: int):
    """All exponent m-tuples summing to d, lexicographically sorted."""
    if m == 0:
        return [()] if d == 0 else []
    out = []
    for first in range(d, -1, -1):
        for rest in monomials(m - 1, d - first):
            out.append((first,) + rest)
    return sorted(out)


def poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for ea, ca in p.items():
        for eb, cb in q.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            s = out.get(e, Fraction(0)) + ca * cb
            if s:
                out[e] = s
            elif e in out:
                del out[e]
    return out


def poly_add(p: dict, q: dict) -> dict:
    out = dict(p)
    for e, c in q.items():
        s = out.get(e, Fraction(0)) + c
        if s:
            out[e] = s
        elif e in out:
            del out[e]
    return out


def poly_scale(p: dict, c) -> dict:
    c = Fraction(c)
    if not c:
        return {}
    return {e: v * c for e, v in p.items()}


def substitute(p: dict, images: list) -> dict:
    """Substitute variable i by the linear form images[i] ({exp: coeff})."""
    out: dict = {}
    nvars = len(images)
    zero_exp = tuple(0 for _ in range(nvars))
    for e, c in p.items():
        term = {zero_exp: Fraction(c)}
        for i, k in enumerate(e):
            for _ in range(k):
                term = poly_mul(term, images[i])
        out = poly_add(out, term)
    return out


def act_sym(g: Matrix, p: dict) -> dict:
    """Left action on Sym(V_m): substitute the coordinate column t by g^{-1} t."""
    m = len(g)
    ginv = mat_inverse(g)
    images = []
    for i in range(m):
        form = {}
        for j in range(m):
            c = ginv[i][j]
            if c:
                e = tuple(int(j == a) for a in range(m))
                form[e] = Fraction(c)
        images.append(form)
    return substitute(p, images)


def monomial(m: int, exps) -> dict:
    return {tuple(exps): Fraction(1)}


# ---------------------------------------------------------------------------
# saturation and summand bases (used to classify boundary Voronoi cells)


def q_row_reduce(vectors):
    """RREF over Q of the given vectors as rows; returns reduced nonzero rows."""
    rows = [list(map(Fraction, v)) for v in vectors]
    ncols = len(rows[0]) if rows else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return [row for row in rows[:r]]


def integer_kernel(rows, m: int):
    """Z-basis of {x in Z^m : row . x = 0 for every row}, via column reduction.

    Unimodular column operations zero out each row in turn; the untouched
    transformation columns form the kernel, which is automatically saturated.
    """
    cols = [tuple(int(row[j]) for row in rows) for j in range(m)]
    U = [tuple(int(i == j) for i in range(m)) for j in range(m)]
    p = 0
    for i in range(len(rows)):
        while True:
            nz = [j for j in range(p, m) if cols[j][i]]
            if not nz:
                break
            jmin = min(nz, key=lambda j: abs(cols[j][i]))
            done = True
            for j in nz:
                if j == jmin:
                    continue
                q = cols[j][i] // cols[jmin][i]
                if q:
                    cols[j] = tuple(a - q * b for a, b in zip(cols[j], cols[jmin]))
                    U[j] = tuple(a - q * b for a, b in zip(U[j], U[jmin]))
                if cols[j][i]:
                    done = False
            if done:
                cols[p], cols[jmin] = cols[jmin], cols[p]
                U[p], U[jmin] = U[jmin], U[p]
                p += 1
                break
    return U[p:]


def saturation_basis(vectors):
    """Z-basis of the saturation (Q-span intersect Z^m) of the given vectors.

    The saturation is the integer kernel of the annihilator of the Q-span,
    and integer kernels are saturated by construction.
    """
    red = q_row_reduce(vectors)
    m = len(vectors[0])
    if not red:
        return []
    # Annihilator rows: for each non-pivot column c, the functional sending
    # x to x_c - sum over pivots of red-row coefficients.
    pivot_cols = []
    for row in red:
        pivot_cols.append(next(j for j in range(m) if row[j]))
    ann = []
    for c in range(m):
        if c in pivot_cols:
            continue
        functional = [Fraction(0)] * m
        functional[c] = Fraction(1)
        for row, pc in zip(red, pivot_cols):
            functional[pc] = -row[c]
        den = 1
        for x in functional:
            den = den * x.denominator // gcd(den, x.denominator)
        ann.append([int(x * den) for x in functional])
    if not ann:
        return [tuple(int(i == j) for i in range(m)) for j in range(m)]
    return integer_kernel(ann, m)


def coordinates_in_basis(basis, v):
    """Coefficients of v in the given independent basis (exact; must lie in span)."""
    m = len(v)
    rows = [[Fraction(b[i]) for b in basis] + [Fraction(v[i])] for i in range(m)]
    ncols = len(basis)
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, m) if rows[i][c]), None)
        if piv is None:
            raise ValueError("basis vectors are dependent")
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    for i in range(r, m):
        if rows[i][ncols]:
            raise ValueError("vector outside the span")
    return tuple(rows[i][ncols] for i in range(ncols))
