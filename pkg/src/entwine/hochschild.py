"""Relative Hochschild cochains and low-degree cohomology.

For a unital subalgebra B of A and an (A,A)-bimodule M, the degree-n
cochains are the two-sided B-linear maps on the n-fold balanced power of A
over B, with degree zero the B-centralizer of M.  The coboundary is the
usual alternating sum; its square is asserted to vanish in every computed
degree.  Degree is capped at two: the balanced cube is the largest space
this library ever builds.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, InconsistencyError
from .linalg import (LinMap, QuotientModule, Subspace, TensorShape, SCALAR,
                     descend, kernel_image, kron, kron_all, op_in_unknown,
                     quotient_by)
from .structures import Algebra, CheckReport, law


@dataclass(frozen=True)
class Bimodule:
    dim: int
    left: LinMap    # (dimA, dim) -> (dim)
    right: LinMap   # (dim, dimA) -> (dim)


def verify_bimodule(alg: Algebra, m: Bimodule) -> CheckReport:
    f = alg.field
    idm = LinMap.identity(f, (m.dim,))
    ida = alg.identity()
    failures = []
    law(failures, "left associativity",
        m.left.compose(kron(ida, m.left)),
        m.left.compose(kron(alg.mult, idm)))
    law(failures, "left unitality",
        m.left.compose(kron(alg.unit_map(), idm)), idm)
    law(failures, "right associativity",
        m.right.compose(kron(m.right, ida)),
        m.right.compose(kron(idm, alg.mult)))
    law(failures, "right unitality",
        m.right.compose(kron(idm, alg.unit_map())), idm)
    law(failures, "actions commute",
        m.left.compose(kron(ida, m.right)),
        m.right.compose(kron(m.left, ida)))
    return CheckReport("bimodule", tuple(failures))


def regular_bimodule(alg: Algebra) -> Bimodule:
    return Bimodule(alg.dim, alg.mult.reshaped((alg.dim, alg.dim), (alg.dim,)),
                    alg.mult)


@dataclass(frozen=True)
class RelativeComplex:
    alg: Algebra
    sub: Subspace              # B inside A
    bimodule: Bimodule
    powers: tuple              # QuotientModule for each balanced power >= 2
    spaces: tuple              # cochain Subspaces, degree 0 upward
    boundaries: tuple          # coboundary maps on cochain coordinates

    @property
    def max_degree(self) -> int:
        return len(self.boundaries) - 1


def _is_unital_subalgebra(alg: Algebra, b: Subspace) -> bool:
    if not b.contains(alg.unit):
        return False
    for u in b.basis:
        for v in b.basis:
            if not b.contains(alg.multiply(u, v)):
                return False
    return True


def _balanced_power(alg: Algebra, b: Subspace, n: int) -> QuotientModule:
    """A (x)_B ... (x)_B A with n factors, as one quotient of the n-fold
    tensor power by all middle balancing relations."""
    f = alg.field
    d = alg.dim
    incl = b.inclusion()
    ids = [LinMap.identity(f, (d,)) for _ in range(n)]
    move = kron(alg.mult.compose(kron(ids[0], incl)), ids[0]).sub(
        kron(ids[0], alg.mult.compose(kron(incl, ids[0]))))
    # move: A (x) B (x) A -> A (x) A, the balancing defect at one junction
    relations = Subspace.from_vectors(f, tuple([d] * n), [])
    for pos in range(n - 1):
        left = LinMap.identity(f, tuple([d] * pos)) if pos else LinMap.identity(f, SCALAR)
        right_len = n - 2 - pos
        right = LinMap.identity(f, tuple([d] * right_len)) if right_len else \
            LinMap.identity(f, SCALAR)
        block = kron_all(left, move, right)
        _, img = kernel_image(block)
        relations = relations.sum(Subspace(f, relations.ambient, img.basis,
                                           img.pivots))
    return quotient_by(relations)


def _cochain_space(alg: Algebra, b: Subspace, m: Bimodule,
                   power: QuotientModule | None) -> Subspace:
    """Two-sided B-linear maps out of a balanced power (or out of A itself
    when power is None), as a subspace of the full matrix space."""
    f = alg.field
    d = alg.dim
    incl = b.inclusion()
    bdim = b.dim
    if power is None:
        dom_dim = d
        left_act = alg.mult.compose(kron(incl, alg.identity()))
        right_act = alg.mult.compose(kron(alg.identity(), incl))
    else:
        dom_dim = power.dim
        amb = power.ambient
        first = kron(alg.mult.compose(kron(incl, alg.identity())),
                     LinMap.identity(f, amb.factors[1:]))
        left_act = descend(power.projection.compose(first), power, left=bdim)
        last = kron(LinMap.identity(f, amb.factors[:-1]),
                    alg.mult.compose(kron(alg.identity(), incl)))
        right_act = descend(power.projection.compose(last), power, right=bdim)
    xdom, xcod = TensorShape((dom_dim,)), TensorShape((m.dim,))
    idm = LinMap.identity(f, (m.dim,))
    rows = []
    # X(b . x) = b . X(x)
    lhs = op_in_unknown(left_act, SCALAR, xdom, xcod, SCALAR, idm)
    rhs = op_in_unknown(LinMap.identity(f, (bdim, dom_dim)), (bdim,), xdom,
                        xcod, SCALAR, m.left.compose(kron(incl, idm)))
    rows.extend(lhs.sub(rhs).entries)
    # X(x . b) = X(x) . b
    lhs = op_in_unknown(right_act, SCALAR, xdom, xcod, SCALAR, idm)
    rhs = op_in_unknown(LinMap.identity(f, (dom_dim, bdim)), SCALAR, xdom,
                        xcod, (bdim,), m.right.compose(kron(idm, incl)))
    rows.extend(lhs.sub(rhs).entries)
    cond = LinMap.from_rows(f, (m.dim * dom_dim,), (len(rows),), rows)
    kernel, _ = kernel_image(cond)
    return Subspace(f, TensorShape((m.dim, dom_dim)), kernel.basis,
                    kernel.pivots)


def _centralizer(alg: Algebra, b: Subspace, m: Bimodule) -> Subspace:
    f = alg.field
    rows = []
    for v in b.basis:
        ins = LinMap.element(f, (alg.dim,), v)
        idm = LinMap.identity(f, (m.dim,))
        lhs = m.left.compose(kron(ins, idm))
        rhs = m.right.compose(kron(idm, ins))
        rows.extend(lhs.sub(rhs).entries)
    if not rows:
        return Subspace.full(f, (m.dim,))
    cond = LinMap.from_rows(f, (m.dim,), (len(rows),), rows)
    kernel, _ = kernel_image(cond)
    return kernel


def _as_map(f, vec, dom_dim, cod_dim) -> LinMap:
    rows = [tuple(vec[i * dom_dim + j] for j in range(dom_dim))
            for i in range(cod_dim)]
    return LinMap.from_rows(f, (dom_dim,), (cod_dim,), rows)


def relative_complex(alg: Algebra, b: Subspace, m: Bimodule,
                     max_degree: int = 1) -> RelativeComplex:
    """Cochain spaces and coboundaries up to degree max_degree + 1.

    max_degree 1 builds the complex through the balanced square, 2 through
    the balanced cube; the square of every assembled coboundary is asserted
    to vanish.
    """
    if max_degree not in (1, 2):
        raise InputError("degree is capped at 2")
    f = alg.field
    d = alg.dim
    rep = verify_bimodule(alg, m)
    if not rep.ok:
        raise InputError(f"invalid bimodule: {rep}")
    if b.ambient.total != d or not _is_unital_subalgebra(alg, b):
        raise InputError("relative complex needs a unital subalgebra")
    powers = [_balanced_power(alg, b, n) for n in range(2, max_degree + 2)]
    spaces = [_centralizer(alg, b, m), _cochain_space(alg, b, m, None)]
    for power in powers:
        spaces.append(_cochain_space(alg, b, m, power))
    boundaries = []
    # degree 0: m -> (a -> a.m - m.a)
    idm = LinMap.identity(f, (m.dim,))
    cols0 = []
    for vec in spaces[0].basis:
        ins = LinMap.element(f, (m.dim,), vec)
        delta = m.left.compose(kron(alg.identity(), ins)).sub(
            m.right.compose(kron(ins, alg.identity())))
        cols0.append(tuple(x for row in delta.entries for x in row))
    boundaries.append(_columns_into(spaces[1], cols0, f, spaces[0].dim))
    # degree 1: f -> (a1, a2 -> a1.f(a2) - f(a1 a2) + f(a1).a2)
    square = powers[0]
    cols1 = []
    for vec in spaces[1].basis:
        fmap = _as_map(f, vec, d, m.dim)
        raw = m.left.compose(kron(alg.identity(), fmap)) \
            .sub(fmap.compose(alg.mult)) \
            .add(m.right.compose(kron(fmap, alg.identity())))
        onq = descend(raw, square)
        cols1.append(tuple(x for row in onq.entries for x in row))
    boundaries.append(_columns_into(spaces[2], cols1, f, spaces[1].dim))
    if max_degree == 2:
        cube = powers[1]
        cols2 = []
        ida = alg.identity()
        for vec in spaces[2].basis:
            gq = _as_map(f, vec, square.dim, m.dim)
            gmap = gq.compose(square.projection)      # back on A (x) A
            raw = m.left.compose(kron(ida, gmap)) \
                .sub(gmap.compose(kron(alg.mult, ida))) \
                .add(gmap.compose(kron(ida, alg.mult))) \
                .sub(m.right.compose(kron(gmap, ida)))
            onq = descend(raw, cube)
            cols2.append(tuple(x for row in onq.entries for x in row))
        boundaries.append(_columns_into(spaces[3], cols2, f, spaces[2].dim))
    complex_ = RelativeComplex(alg, b, m, tuple(powers), tuple(spaces),
                               tuple(boundaries))
    for lower, upper in zip(boundaries, boundaries[1:]):
        if not upper.compose(lower).is_zero_map():
            raise InconsistencyError("coboundary square does not vanish")
    return complex_


def _columns_into(space: Subspace, cols, f, src_dim) -> LinMap:
    """Express ambient column vectors in the coordinates of a cochain
    subspace, asserting membership."""
    out_rows = [[f.zero] * src_dim for _ in range(space.dim)]
    for t, col in enumerate(cols):
        coords = space.coords(col)
        if coords is None:
            raise InconsistencyError("coboundary leaves the cochain space")
        for i, x in enumerate(coords):
            out_rows[i][t] = x
    return LinMap.from_rows(f, (src_dim,), (space.dim,),
                            [tuple(r) for r in out_rows])


def cohomology_dim(complex_: RelativeComplex, n: int):
    """(dimension, representatives) of the degree-n cohomology.

    Representatives are cocycles spanning a complement of the coboundaries,
    in cochain coordinates.
    """
    if n < 0 or n > complex_.max_degree:
        raise InputError(f"degree {n} exceeds the computed complex")
    f = complex_.alg.field
    kernel, _ = kernel_image(complex_.boundaries[n])
    if n == 0:
        image = Subspace.from_vectors(f, kernel.ambient, [])
    else:
        _, image = kernel_image(complex_.boundaries[n - 1])
    dim = kernel.dim - image.dim
    reps = []
    span = image
    for v in kernel.basis:
        if not span.contains(v):
            reps.append(v)
            span = span.sum(Subspace.from_vectors(f, kernel.ambient, [v]))
    if len(reps) != dim:
        raise InconsistencyError("representative count mismatch")  # unreachable
    return dim, Subspace.from_vectors(f, TensorShape((complex_.spaces[n].dim,)),
                                      reps)
