"""Dense exact linear algebra on tensor-shaped spaces.

Everything here is immutable and pure.  Vectors are tuples of scalars, maps
are dense row-major matrices carrying explicit tensor factorizations of
their domain and codomain, and index flattening is row-major throughout
(leftmost factor most significant).  There is no floating point anywhere;
no tolerances, ever.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod

from .errors import InputError, InconsistencyError
from .fields import Field


# ---------------------------------------------------------------------------
# shapes


@dataclass(frozen=True)
class TensorShape:
    """An ordered list of tensor factor dimensions; () is the ground field."""

    factors: tuple

    def __init__(self, factors=()):
        factors = tuple(int(f) for f in factors)
        if any(f < 0 for f in factors):
            raise InputError(f"factor dimensions must be nonnegative: {factors}")
        object.__setattr__(self, "factors", factors)

    @property
    def total(self) -> int:
        return prod(self.factors)

    def flatten(self, index) -> int:
        """Row-major flat position of a multi-index."""
        index = tuple(index)
        if len(index) != len(self.factors):
            raise InputError(f"index {index} does not match shape {self.factors}")
        flat = 0
        for i, f in zip(index, self.factors):
            if not 0 <= i < f:
                raise InputError(f"index {index} out of range for shape {self.factors}")
            flat = flat * f + i
        return flat

    def unflatten(self, flat: int) -> tuple:
        if not 0 <= flat < self.total:
            raise InputError(f"flat index {flat} out of range for shape {self.factors}")
        out = []
        for f in reversed(self.factors):
            out.append(flat % f)
            flat //= f
        return tuple(reversed(out))

    def concat(self, other: "TensorShape") -> "TensorShape":
        return TensorShape(self.factors + other.factors)

    def __iter__(self):
        return iter(self.factors)

    def __repr__(self):
        return f"TensorShape{self.factors}"


def shape(*factors) -> TensorShape:
    return TensorShape(factors)


SCALAR = TensorShape(())


# ---------------------------------------------------------------------------
# linear maps


@dataclass(frozen=True)
class LinMap:
    """An exact matrix with tensor-shaped domain and codomain.

    entries[r][c] is the coefficient of codomain basis vector r in the image
    of domain basis vector c.
    """

    field: Field
    domain: TensorShape
    codomain: TensorShape
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.codomain.total:
            raise InputError(
                f"{len(self.entries)} rows for codomain of total {self.codomain.total}")
        for row in self.entries:
            if len(row) != self.domain.total:
                raise InputError(
                    f"row of length {len(row)} for domain of total {self.domain.total}")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def from_rows(field, domain, codomain, rows) -> "LinMap":
        domain = domain if isinstance(domain, TensorShape) else TensorShape(domain)
        codomain = codomain if isinstance(codomain, TensorShape) else TensorShape(codomain)
        return LinMap(field, domain, codomain, tuple(tuple(r) for r in rows))

    @staticmethod
    def identity(field, shp) -> "LinMap":
        shp = shp if isinstance(shp, TensorShape) else TensorShape(shp)
        n = shp.total
        one, zero = field.one, field.zero
        rows = tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))
        return LinMap(field, shp, shp, rows)

    @staticmethod
    def zero(field, domain, codomain) -> "LinMap":
        domain = domain if isinstance(domain, TensorShape) else TensorShape(domain)
        codomain = codomain if isinstance(codomain, TensorShape) else TensorShape(codomain)
        z = field.zero
        rows = tuple((z,) * domain.total for _ in range(codomain.total))
        return LinMap(field, domain, codomain, rows)

    @staticmethod
    def element(field, shp, vec) -> "LinMap":
        """A vector as a map from the ground field, k -> V."""
        shp = shp if isinstance(shp, TensorShape) else TensorShape(shp)
        if len(vec) != shp.total:
            raise InputError("element length does not match shape")
        return LinMap(field, SCALAR, shp, tuple((v,) for v in vec))

    @staticmethod
    def functional(field, shp, covec) -> "LinMap":
        """A covector as a map to the ground field, V -> k."""
        shp = shp if isinstance(shp, TensorShape) else TensorShape(shp)
        if len(covec) != shp.total:
            raise InputError("functional length does not match shape")
        return LinMap(field, shp, SCALAR, (tuple(covec),))

    @staticmethod
    def twist(field, left, right) -> "LinMap":
        """The flip V (x) W -> W (x) V on basis vectors."""
        left = left if isinstance(left, TensorShape) else TensorShape(left)
        right = right if isinstance(right, TensorShape) else TensorShape(right)
        nl, nr = left.total, right.total
        dom = TensorShape((nl, nr)) if nl and nr else None
        rows = [[field.zero] * (nl * nr) for _ in range(nl * nr)]
        for i in range(nl):
            for j in range(nr):
                rows[j * nl + i][i * nr + j] = field.one
        return LinMap(field, left.concat(right), right.concat(left),
                      tuple(tuple(r) for r in rows))

    # -- basics --------------------------------------------------------------

    @property
    def rows(self) -> int:
        return self.codomain.total

    @property
    def cols(self) -> int:
        return self.domain.total

    def reshaped(self, domain=None, codomain=None) -> "LinMap":
        """Reinterpret the tensor factorization without touching entries."""
        domain = self.domain if domain is None else (
            domain if isinstance(domain, TensorShape) else TensorShape(domain))
        codomain = self.codomain if codomain is None else (
            codomain if isinstance(codomain, TensorShape) else TensorShape(codomain))
        if domain.total != self.domain.total or codomain.total != self.codomain.total:
            raise InputError("reshape must preserve total dimensions")
        return LinMap(self.field, domain, codomain, self.entries)

    def apply(self, vec):
        if len(vec) != self.cols:
            raise InputError(f"vector of length {len(vec)} for domain {self.cols}")
        f = self.field
        out = []
        for row in self.entries:
            acc = f.zero
            for a, x in zip(row, vec):
                if a != 0 and x != 0:
                    acc = f.add(acc, f.mul(a, x))
            out.append(acc)
        return tuple(out)

    def column(self, c: int):
        return tuple(row[c] for row in self.entries)

    def compose(self, other: "LinMap") -> "LinMap":
        """self after other (matrix product self . other)."""
        if self.field != other.field:
            raise InputError("field mismatch in composition")
        if self.cols != other.rows:
            raise InputError(
                f"composition shape mismatch: {self.domain} vs {other.codomain}")
        f = self.field
        zero = f.zero
        n_out, n_mid, n_in = self.rows, self.cols, other.cols
        out = [[zero] * n_in for _ in range(n_out)]
        oe = other.entries
        for i in range(n_out):
            row = self.entries[i]
            acc = out[i]
            for k in range(n_mid):
                a = row[k]
                if a == 0:
                    continue
                orow = oe[k]
                for j in range(n_in):
                    b = orow[j]
                    if b != 0:
                        acc[j] = f.add(acc[j], f.mul(a, b))
        return LinMap(f, other.domain, self.codomain, tuple(tuple(r) for r in out))

    def add(self, other: "LinMap") -> "LinMap":
        self._require_parallel(other)
        f = self.field
        rows = tuple(tuple(f.add(a, b) for a, b in zip(r1, r2))
                     for r1, r2 in zip(self.entries, other.entries))
        return LinMap(f, self.domain, self.codomain, rows)

    def sub(self, other: "LinMap") -> "LinMap":
        self._require_parallel(other)
        f = self.field
        rows = tuple(tuple(f.sub(a, b) for a, b in zip(r1, r2))
                     for r1, r2 in zip(self.entries, other.entries))
        return LinMap(f, self.domain, self.codomain, rows)

    def scale(self, scalar) -> "LinMap":
        f = self.field
        rows = tuple(tuple(f.mul(scalar, a) for a in r) for r in self.entries)
        return LinMap(f, self.domain, self.codomain, rows)

    def transpose(self) -> "LinMap":
        rows = tuple(tuple(self.entries[i][j] for i in range(self.rows))
                     for j in range(self.cols))
        return LinMap(self.field, self.codomain, self.domain, rows)

    def _require_parallel(self, other):
        if self.field != other.field:
            raise InputError("field mismatch")
        if self.cols != other.cols or self.rows != other.rows:
            raise InputError("shape totals differ")

    def equals(self, other: "LinMap") -> bool:
        """Entrywise equality; factorizations may differ but totals must agree."""
        self._require_parallel(other)
        return self.entries == other.entries

    def is_zero_map(self) -> bool:
        return all(a == 0 for row in self.entries for a in row)

    def first_difference(self, other: "LinMap"):
        """First (column, row) where the matrices differ, scanning columns
        lexicographically; None if equal."""
        self._require_parallel(other)
        for c in range(self.cols):
            for r in range(self.rows):
                if self.entries[r][c] != other.entries[r][c]:
                    return c, r
        return None

    def __repr__(self):
        return f"LinMap({self.field}, {self.domain.factors}->{self.codomain.factors})"


def kron(f: LinMap, g: LinMap) -> LinMap:
    """Tensor product of maps; shapes concatenate, flattening is row-major."""
    if f.field != g.field:
        raise InputError("field mismatch in tensor product")
    fe, ge = f.entries, g.entries
    fr, fc, gr, gc = f.rows, f.cols, g.rows, g.cols
    zero = f.field.zero
    mul = f.field.mul
    out = [[zero] * (fc * gc) for _ in range(fr * gr)]
    for i1 in range(fr):
        frow = fe[i1]
        for j1 in range(fc):
            a = frow[j1]
            if a == 0:
                continue
            for i2 in range(gr):
                grow = ge[i2]
                orow = out[i1 * gr + i2]
                base = j1 * gc
                for j2 in range(gc):
                    b = grow[j2]
                    if b != 0:
                        orow[base + j2] = mul(a, b)
    return LinMap(f.field, f.domain.concat(g.domain), f.codomain.concat(g.codomain),
                  tuple(tuple(r) for r in out))


def kron_all(*maps) -> LinMap:
    out = maps[0]
    for m in maps[1:]:
        out = kron(out, m)
    return out


def compose_all(*maps) -> LinMap:
    """compose_all(f, g, h) = f . g . h (rightmost applied first)."""
    out = maps[0]
    for m in maps[1:]:
        out = out.compose(m)
    return out


# ---------------------------------------------------------------------------
# row reduction


def rref(field, rows):
    """Reduced row echelon form over an exact field.

    Returns (rows, pivot_columns); zero rows are dropped and every pivot is
    normalized to 1 with zeros above and below.
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        if piv != field.one:
            inv = field.inv(piv)
            m[r] = [field.mul(inv, x) for x in m[r]]
        prow = m[r]
        for i in range(len(m)):
            if i == r:
                continue
            fac = m[i][c]
            if fac == 0:
                continue
            mrow = m[i]
            m[i] = [field.sub(x, field.mul(fac, y)) for x, y in zip(mrow, prow)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def _kernel_from_rref(field, reduced, pivots, ncols):
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for row, pc in zip(reduced, pivots):
            if row[fc] != 0:
                v[pc] = field.neg(row[fc])
        basis.append(tuple(v))
    return basis


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    """A subspace given by a reduced-echelon basis; the canonical form makes
    equality of subspaces plain equality of bases."""

    field: Field
    ambient: TensorShape
    basis: tuple
    pivots: tuple

    @staticmethod
    def from_vectors(field, ambient, vectors) -> "Subspace":
        ambient = ambient if isinstance(ambient, TensorShape) else TensorShape(ambient)
        vecs = [tuple(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient.total:
                raise InputError("spanning vector does not match ambient shape")
        reduced, pivots = rref(field, vecs)
        return Subspace(field, ambient, tuple(reduced), tuple(pivots))

    @staticmethod
    def zero(field, ambient) -> "Subspace":
        ambient = ambient if isinstance(ambient, TensorShape) else TensorShape(ambient)
        return Subspace(field, ambient, (), ())

    @staticmethod
    def full(field, ambient) -> "Subspace":
        ambient = ambient if isinstance(ambient, TensorShape) else TensorShape(ambient)
        n = ambient.total
        one, zero = field.one, field.zero
        basis = tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))
        return Subspace(field, ambient, basis, tuple(range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, vec):
        """Remainder of vec after subtracting its span component."""
        f = self.field
        v = list(vec)
        for b, p in zip(self.basis, self.pivots):
            c = v[p]
            if c != 0:
                v = [f.sub(x, f.mul(c, y)) for x, y in zip(v, b)]
        return tuple(v)

    def contains(self, vec) -> bool:
        return all(x == 0 for x in self.reduce(vec))

    def coords(self, vec):
        """Coordinates of vec in the echelon basis; None if not a member."""
        if not self.contains(vec):
            return None
        return tuple(vec[p] for p in self.pivots)

    def inclusion(self) -> LinMap:
        """S -> ambient, basis vectors as columns."""
        rows = tuple(tuple(b[i] for b in self.basis) for i in range(self.ambient.total))
        return LinMap(self.field, TensorShape((self.dim,)), self.ambient, rows)

    def retraction(self) -> LinMap:
        """ambient -> S, pivot-coordinate extraction; a left inverse of inclusion."""
        one, zero = self.field.one, self.field.zero
        n = self.ambient.total
        rows = tuple(tuple(one if j == p else zero for j in range(n)) for p in self.pivots)
        return LinMap(self.field, self.ambient, TensorShape((self.dim,)), rows)

    def sum(self, other: "Subspace") -> "Subspace":
        if self.ambient.total != other.ambient.total:
            raise InputError("ambient mismatch in subspace sum")
        return Subspace.from_vectors(self.field, self.ambient,
                                     list(self.basis) + list(other.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.ambient.total})"


def subspace_map_image(m: LinMap, sub: Subspace) -> Subspace:
    """Image of a subspace under a map, as a canonical subspace of the codomain."""
    vecs = [m.apply(b) for b in sub.basis]
    return Subspace.from_vectors(m.field, m.codomain, vecs)


# ---------------------------------------------------------------------------
# quotients


@dataclass(frozen=True)
class QuotientModule:
    """A quotient of a tensor-shaped space by a subspace of relations.

    Carries an explicit projection and a section (built from the echelon
    pivots of the relations, so the whole construction is deterministic);
    projection . section is the identity on the quotient.
    """

    ambient: TensorShape
    relations: Subspace
    projection: LinMap
    section: LinMap

    @property
    def dim(self) -> int:
        return self.projection.rows

    def __repr__(self):
        return f"QuotientModule({self.ambient.total} -> {self.dim})"


def quotient_by(relations: Subspace) -> QuotientModule:
    f = relations.field
    ambient = relations.ambient
    n = ambient.total
    pivot_set = set(relations.pivots)
    complement = [c for c in range(n) if c not in pivot_set]
    q = len(complement)
    qshape = TensorShape((q,))
    # projection: reduce modulo the relations, then read the complement coords
    proj_rows = [[f.zero] * n for _ in range(q)]
    for j in range(n):
        e = [f.zero] * n
        e[j] = f.one
        rem = relations.reduce(e)
        for t, c in enumerate(complement):
            if rem[c] != 0:
                proj_rows[t][j] = rem[c]
    projection = LinMap(f, ambient, qshape, tuple(tuple(r) for r in proj_rows))
    sec_rows = [[f.zero] * q for _ in range(n)]
    for t, c in enumerate(complement):
        sec_rows[c][t] = f.one
    section = LinMap(f, qshape, ambient, tuple(tuple(r) for r in sec_rows))
    return QuotientModule(ambient, relations, projection, section)


def descend(raw: LinMap, src: QuotientModule, left=1, right=1) -> LinMap:
    """Factor raw: L (x) ambient (x) R -> E through the quotient in the middle.

    Asserts that raw kills the relations (tensored with the identity on the
    surrounding factors); raises InconsistencyError otherwise.
    """
    f = raw.field
    idl = LinMap.identity(f, TensorShape((left,)) if left != 1 else SCALAR)
    idr = LinMap.identity(f, TensorShape((right,)) if right != 1 else SCALAR)
    incl = kron_all(idl, src.relations.inclusion(), idr)
    if src.relations.dim and not raw.compose(incl).is_zero_map():
        raise InconsistencyError("map does not descend to the quotient")
    sec = kron_all(idl, src.section, idr)
    return raw.compose(sec)


def corestrict(raw: LinMap, sub: Subspace, left=1, right=1) -> LinMap:
    """Rewrite raw: D -> L (x) ambient (x) R as a map into the subspace.

    Asserts that the image really lies in L (x) S (x) R.
    """
    f = raw.field
    idl = LinMap.identity(f, TensorShape((left,)) if left != 1 else SCALAR)
    idr = LinMap.identity(f, TensorShape((right,)) if right != 1 else SCALAR)
    retr = kron_all(idl, sub.retraction(), idr)
    incl = kron_all(idl, sub.inclusion(), idr)
    squeezed = retr.compose(raw)
    if not incl.compose(squeezed).equals(raw):
        raise InconsistencyError("image does not lie in the subspace")
    return squeezed


# ---------------------------------------------------------------------------
# affine systems


@dataclass(frozen=True)
class AffineSolutionSet:
    """particular + homogeneous describes every solution of an affine system;
    particular is None exactly when the system is infeasible."""

    particular: tuple | None
    homogeneous: Subspace

    @property
    def feasible(self) -> bool:
        return self.particular is not None

    def contains(self, vec) -> bool:
        if not self.feasible:
            return False
        f = self.homogeneous.field
        diff = tuple(f.sub(a, b) for a, b in zip(vec, self.particular))
        return self.homogeneous.contains(diff)

    def members(self, coefficient_grids):
        """Yield particular + combinations of the homogeneous basis, with
        coefficients drawn from the cartesian product of the given grids."""
        if not self.feasible:
            return
        f = self.homogeneous.field
        basis = self.homogeneous.basis
        if not basis:
            yield self.particular
            return
        grids = list(coefficient_grids)
        for combo in itertools.product(*grids):
            v = list(self.particular)
            for c, b in zip(combo, basis):
                if c != 0:
                    for i, x in enumerate(b):
                        if x != 0:
                            v[i] = f.add(v[i], f.mul(c, x))
            yield tuple(v)


def solve_affine(m: LinMap, b) -> AffineSolutionSet:
    """All exact solutions of m x = b."""
    b = tuple(b)
    if len(b) != m.rows:
        raise InputError(f"rhs length {len(b)} does not match {m.rows} rows")
    f = m.field
    aug = [row + (bi,) for row, bi in zip(m.entries, b)]
    reduced, pivots = rref(f, aug)
    ncols = m.cols
    if ncols in pivots:
        particular = None
    else:
        part = [f.zero] * ncols
        for row, p in zip(reduced, pivots):
            part[p] = row[ncols]
        particular = tuple(part)
    # kernel comes from the coefficient block of the same reduction
    coeff_rows = [row[:ncols] for row in reduced]
    coeff_reduced, coeff_pivots = rref(f, coeff_rows)
    kernel = _kernel_from_rref(f, coeff_reduced, coeff_pivots, ncols)
    return AffineSolutionSet(particular,
                             Subspace.from_vectors(f, m.domain, kernel))


def kernel_image(m: LinMap):
    """(kernel, image) of a map, both canonical; rank-nullity is guaranteed."""
    f = m.field
    reduced, pivots = rref(f, m.entries)
    kernel = Subspace.from_vectors(f, m.domain,
                                   _kernel_from_rref(f, reduced, pivots, m.cols))
    image = Subspace.from_vectors(f, m.codomain,
                                  [m.column(p) for p in pivots])
    if kernel.dim + image.dim != m.cols:
        raise InconsistencyError("rank-nullity violated")  # unreachable
    return kernel, image


def invert(m: LinMap) -> LinMap:
    """Exact inverse of a bijective map; raises InputError when singular."""
    if m.rows != m.cols:
        raise InputError("only square maps can be inverted")
    f = m.field
    n = m.rows
    one, zero = f.one, f.zero
    aug = [list(row) + [one if i == j else zero for j in range(n)]
           for i, row in enumerate(m.entries)]
    reduced, pivots = rref(f, aug)
    if list(pivots) != list(range(n)):
        raise InputError("map is not invertible")
    inv_rows = tuple(tuple(row[n:]) for row in reduced)
    return LinMap(f, m.codomain, m.domain, inv_rows)


# ---------------------------------------------------------------------------
# linear conditions on an unknown matrix


def op_in_unknown(pre: LinMap, left, x_dom, x_cod, right, post: LinMap) -> LinMap:
    """Matrix of the linear operator X |-> post . (1_L (x) X (x) 1_R) . pre.

    pre maps D into L (x) Xdom (x) R and post maps L (x) Xcod (x) R into E.
    The result sends the row-major vectorization of X (shape (Xcod, Xdom))
    to that of the composite (shape (E, D)).
    """
    f = pre.field
    left = left if isinstance(left, TensorShape) else TensorShape(left)
    right = right if isinstance(right, TensorShape) else TensorShape(right)
    x_dom = x_dom if isinstance(x_dom, TensorShape) else TensorShape(x_dom)
    x_cod = x_cod if isinstance(x_cod, TensorShape) else TensorShape(x_cod)
    lt, rt = left.total, right.total
    xd, xc = x_dom.total, x_cod.total
    dd, ee = pre.cols, post.rows
    if pre.rows != lt * xd * rt:
        raise InputError("pre does not land in L (x) Xdom (x) R")
    if post.cols != lt * xc * rt:
        raise InputError("post does not start from L (x) Xcod (x) R")
    zero = f.zero
    # a1[(e,r)][(l,rho)] = post[e][(l,r,rho)]
    a1 = [[zero] * (lt * rt) for _ in range(ee * xc)]
    for e in range(ee):
        prow = post.entries[e]
        for l in range(lt):
            for r in range(xc):
                base = (l * xc + r) * rt
                for rho in range(rt):
                    v = prow[base + rho]
                    if v != 0:
                        a1[e * xc + r][l * rt + rho] = v
    # a2[(l,rho)][(s,d)] = pre[(l,s,rho)][d]
    a2 = [[zero] * (xd * dd) for _ in range(lt * rt)]
    for l in range(lt):
        for s in range(xd):
            base = (l * xd + s) * rt
            for rho in range(rt):
                prow = pre.entries[base + rho]
                arow = a2[l * rt + rho]
                for d in range(dd):
                    v = prow[d]
                    if v != 0:
                        arow[s * dd + d] = v
    # p = a1 . a2, then reshuffle to rows (e,d), cols (r,s)
    mulf, addf = f.mul, f.add
    p = [[zero] * (xd * dd) for _ in range(ee * xc)]
    for i in range(ee * xc):
        arow = a1[i]
        prow = p[i]
        for k in range(lt * rt):
            a = arow[k]
            if a == 0:
                continue
            brow = a2[k]
            for j in range(xd * dd):
                b = brow[j]
                if b != 0:
                    prow[j] = addf(prow[j], mulf(a, b))
    big = [[zero] * (xc * xd) for _ in range(ee * dd)]
    for e in range(ee):
        for r in range(xc):
            prow = p[e * xc + r]
            for s in range(xd):
                base = s * dd
                for d in range(dd):
                    v = prow[base + d]
                    if v != 0:
                        big[e * dd + d][r * xd + s] = v
    return LinMap(f, TensorShape((xc, xd)), TensorShape((ee, dd)),
                  tuple(tuple(r) for r in big))


@dataclass
class _Block:
    label: str
    matrix: LinMap      # operator on vec(X), rows indexed by (e, d)
    rhs: tuple          # target vector of length matrix.rows
    out_total: int
    in_total: int


class LinearConstraints:
    """Accumulates exact linear conditions on one unknown matrix X and solves
    or checks them; the same assembled system backs both, so solver and
    verifier can never drift apart."""

    def __init__(self, field, x_dom, x_cod):
        self.field = field
        self.x_dom = x_dom if isinstance(x_dom, TensorShape) else TensorShape(x_dom)
        self.x_cod = x_cod if isinstance(x_cod, TensorShape) else TensorShape(x_cod)
        self.blocks: list[_Block] = []

    @property
    def n_unknowns(self) -> int:
        return self.x_dom.total * self.x_cod.total

    def require(self, label, lhs: LinMap, rhs: LinMap | None = None,
                target: LinMap | None = None):
        """Add the condition lhs(X) = rhs(X) + target, all sides optional
        except lhs; lhs/rhs are operators built by op_in_unknown, target is a
        fixed map vectorized as the affine right-hand side."""
        op = lhs if rhs is None else lhs.sub(rhs)
        ee, dd = op.codomain.factors if op.codomain.factors else (1, 1)
        if target is None:
            tvec = (self.field.zero,) * op.rows
        else:
            tvec = tuple(x for row in target.entries for x in row)
            if len(tvec) != op.rows:
                raise InputError("target does not match the constraint block")
        self.blocks.append(_Block(label, op, tvec, ee, dd))

    def assembled(self):
        rows, rhs = [], []
        seen = set()
        for blk in self.blocks:
            for r, t in zip(blk.matrix.entries, blk.rhs):
                key = (r, t)
                if key in seen:
                    continue
                seen.add(key)
                if all(x == 0 for x in r) and t == 0:
                    continue
                rows.append(r)
                rhs.append(t)
        dom = TensorShape((self.x_cod.total, self.x_dom.total))
        cod = TensorShape((len(rows),))
        return LinMap(self.field, dom, cod, tuple(rows)), tuple(rhs)

    def solve(self) -> AffineSolutionSet:
        m, b = self.assembled()
        return solve_affine(m, b)

    def violations(self, xvec):
        """Per-block first violation: (label, output index, input index)."""
        out = []
        f = self.field
        for blk in self.blocks:
            got = blk.matrix.apply(xvec)
            for i, (g, t) in enumerate(zip(got, blk.rhs)):
                if g != t:
                    e, d = divmod(i, blk.in_total)
                    out.append((blk.label, e, d))
                    break
        return out

    def satisfied_by(self, xvec) -> bool:
        return not self.violations(xvec)
