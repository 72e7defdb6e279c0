"""Finite-dimensional algebras and coalgebras by structure constants.

An algebra is (dim, mult, unit) with mult: A (x) A -> A; a coalgebra is
(dim, comult, counit) with comult: C -> C (x) C.  Axioms are checked as
exact matrix identities and every failure is reported with the first basis
tuple (in lexicographic order) on which the two sides differ.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, InputError
from .fields import Field
from .linalg import (LinMap, Subspace, TensorShape, compose_all, kron,
                     quotient_by)


@dataclass(frozen=True)
class CheckFailure:
    law: str
    at: tuple

    def __repr__(self):
        return f"{self.law} fails at basis index {self.at}"


@dataclass(frozen=True)
class CheckReport:
    subject: str
    failures: tuple

    @property
    def ok(self) -> bool:
        return not self.failures

    def __repr__(self):
        if self.ok:
            return f"CheckReport({self.subject}: ok)"
        return f"CheckReport({self.subject}: {list(self.failures)})"


def law(failures, name, lhs: LinMap, rhs: LinMap, domain: TensorShape | None = None):
    """Compare two maps; on mismatch append one failure with the unflattened
    index of the first differing column."""
    diff = lhs.first_difference(rhs)
    if diff is not None:
        dom = domain if domain is not None else lhs.domain
        failures.append(CheckFailure(name, dom.unflatten(diff[0])))


@dataclass(frozen=True)
class Algebra:
    dim: int
    mult: LinMap   # (dim, dim) -> (dim)
    unit: tuple    # vector of length dim

    def __post_init__(self):
        d = self.dim
        if self.mult.domain.factors != (d, d) or self.mult.codomain.factors != (d,):
            raise InputError("multiplication map does not match the dimension")
        if len(self.unit) != d:
            raise InputError("unit vector does not match the dimension")

    @property
    def field(self) -> Field:
        return self.mult.field

    def unit_map(self) -> LinMap:
        """k -> A sending 1 to the unit element."""
        return LinMap.element(self.field, (self.dim,), self.unit)

    def identity(self) -> LinMap:
        return LinMap.identity(self.field, (self.dim,))

    def left_mult(self, vec) -> LinMap:
        """A -> A, multiplication by a fixed element on the left."""
        return self.mult.compose(kron(LinMap.element(self.field, (self.dim,), vec),
                                      self.identity()))

    def right_mult(self, vec) -> LinMap:
        return self.mult.compose(kron(self.identity(),
                                      LinMap.element(self.field, (self.dim,), vec)))

    def multiply(self, u, v):
        return self.mult.apply(_outer(self.field, u, v))


def _outer(field, u, v):
    out = []
    for a in u:
        for b in v:
            out.append(field.mul(a, b))
    return tuple(out)


@dataclass(frozen=True)
class Coalgebra:
    dim: int
    comult: LinMap  # (dim) -> (dim, dim)
    counit: tuple   # covector of length dim

    def __post_init__(self):
        d = self.dim
        if self.comult.domain.factors != (d,) or self.comult.codomain.factors != (d, d):
            raise InputError("comultiplication map does not match the dimension")
        if len(self.counit) != d:
            raise InputError("counit covector does not match the dimension")

    @property
    def field(self) -> Field:
        return self.comult.field

    def counit_map(self) -> LinMap:
        """C -> k given by the counit."""
        return LinMap.functional(self.field, (self.dim,), self.counit)

    def identity(self) -> LinMap:
        return LinMap.identity(self.field, (self.dim,))


def verify_algebra(a: Algebra) -> CheckReport:
    idm = a.identity()
    failures = []
    d3 = TensorShape((a.dim, a.dim, a.dim))
    law(failures, "associativity",
        a.mult.compose(kron(a.mult, idm)),
        a.mult.compose(kron(idm, a.mult)),
        d3)
    law(failures, "left unit", a.mult.compose(kron(a.unit_map(), idm)), idm)
    law(failures, "right unit", a.mult.compose(kron(idm, a.unit_map())), idm)
    return CheckReport("algebra", tuple(failures))


def verify_coalgebra(c: Coalgebra) -> CheckReport:
    idm = c.identity()
    failures = []
    law(failures, "coassociativity",
        kron(c.comult, idm).compose(c.comult),
        kron(idm, c.comult).compose(c.comult))
    law(failures, "left counit", kron(c.counit_map(), idm).compose(c.comult), idm)
    law(failures, "right counit", kron(idm, c.counit_map()).compose(c.comult), idm)
    return CheckReport("coalgebra", tuple(failures))


def dual_swap(x):
    """Transpose the structure maps under dual bases.

    Algebras and coalgebras trade places; applying it twice gives back the
    original on the nose.
    """
    if isinstance(x, Algebra):
        return Coalgebra(x.dim, x.mult.transpose(), tuple(x.unit))
    if isinstance(x, Coalgebra):
        return Algebra(x.dim, x.comult.transpose(), tuple(x.counit))
    raise InputError("dual_swap expects an Algebra or a Coalgebra")


def quotient_coalgebra(c: Coalgebra, i: Subspace):
    """Quotient C/I by a coideal, with the projection C -> C/I.

    A coideal satisfies eps(I) = 0 and Delta(I) <= I (x) C + C (x) I; both
    conditions are checked and a violating vector is reported on failure.
    """
    f = c.field
    if i.ambient.total != c.dim:
        raise InputError("subspace does not live in the coalgebra")
    for v in i.basis:
        val = c.counit_map().apply(v)[0]
        if val != 0:
            raise DomainError("counit does not vanish on the subspace", witness=v)
    # span of I (x) C + C (x) I inside C (x) C
    std = [tuple(f.one if k == j else f.zero for k in range(c.dim))
           for j in range(c.dim)]
    spanners = []
    for v in i.basis:
        for e in std:
            spanners.append(_outer(f, v, e))
            spanners.append(_outer(f, e, v))
    mixed = Subspace.from_vectors(f, (c.dim, c.dim), spanners)
    for v in i.basis:
        if not mixed.contains(c.comult.apply(v)):
            raise DomainError("comultiplication leaves the coideal", witness=v)
    quot = quotient_by(i)
    pi = quot.projection
    sigma = quot.section
    comult_q = compose_all(kron(pi, pi), c.comult, sigma)
    counit_q = compose_all(c.counit_map(), sigma)
    result = Coalgebra(quot.dim, comult_q, counit_q.entries[0])
    # the projection must be a coalgebra map on the nose
    lhs = kron(pi, pi).compose(c.comult)
    rhs = comult_q.compose(pi)
    if not lhs.equals(rhs):
        raise DomainError("projection fails to intertwine comultiplications")
    if not counit_q.compose(pi).equals(c.counit_map()):
        raise DomainError("projection fails to intertwine counits")
    report = verify_coalgebra(result)
    if not report.ok:
        raise DomainError(f"quotient is not a coalgebra: {report}")
    return result, pi
