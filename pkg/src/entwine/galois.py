"""Coalgebra-Galois extensions and algebra-Galois coextensions.

An extension is built from a coaction on an algebra: the fixed subalgebra
is carved out, the balanced tensor square is formed, and the canonical map
a (x) a' -> a . coaction(a') must be bijective.  The entwining map is then
reconstructed from the inverse of the canonical map and re-verified from
scratch, never trusted.  Coextensions are the mirror construction from an
action on a coalgebra, with a quotient coalgebra in place of the fixed
subalgebra and the canonical map running into a cotensor product.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, GaloisError, InconsistencyError, InputError
from .entwining import Entwining, make_entwining
from .entmod import (EntwinedModule, LeftComodule, LeftModule, RightComodule,
                     RightModule, cotensor, tensor_over_A,
                     verify_entwined_module)
from .linalg import (LinMap, QuotientModule, Subspace, SCALAR, compose_all,
                     corestrict, descend, invert, kernel_image, kron,
                     kron_all)
from .structures import (Algebra, Coalgebra, CheckReport, law,
                         quotient_coalgebra, verify_algebra, verify_coalgebra)


# ---------------------------------------------------------------------------
# coactions and actions


def verify_coaction(coalg: Coalgebra, coaction: LinMap) -> CheckReport:
    """Right coaction axioms for a map V -> V (x) C."""
    failures = []
    dv = coaction.domain.factors[0]
    f = coaction.field
    idv = LinMap.identity(f, (dv,))
    law(failures, "coaction coassociativity",
        kron(coaction, coalg.identity()).compose(coaction),
        kron(idv, coalg.comult).compose(coaction))
    law(failures, "coaction counitality",
        kron(idv, coalg.counit_map()).compose(coaction), idv)
    return CheckReport("coaction", tuple(failures))


def verify_action(alg: Algebra, action: LinMap) -> CheckReport:
    """Right action axioms for a map V (x) A -> V."""
    failures = []
    dv = action.codomain.factors[0]
    f = action.field
    idv = LinMap.identity(f, (dv,))
    law(failures, "action associativity",
        action.compose(kron(action, alg.identity())),
        action.compose(kron(idv, alg.mult)))
    law(failures, "action unitality",
        action.compose(kron(idv, alg.unit_map())), idv)
    return CheckReport("action", tuple(failures))


# ---------------------------------------------------------------------------
# fixed subalgebras


def fixed_subalgebra(alg: Algebra, rho_a: LinMap):
    """The subalgebra of elements over which the coaction is left-linear,
    together with its induced algebra structure."""
    f = alg.field
    d = alg.dim
    dc = rho_a.codomain.factors[1]
    ida = alg.identity()
    rows = []
    for j in range(d):
        basis_a = tuple(f.one if t == j else f.zero for t in range(d))
        ins_a = LinMap.element(f, (d,), basis_a)
        lhs = rho_a.compose(alg.mult.compose(kron(ida, ins_a)))
        ins_rho = LinMap.element(f, (d, dc), rho_a.column(j))
        rhs = kron(alg.mult, LinMap.identity(f, (dc,))).compose(kron(ida, ins_rho))
        rows.extend(lhs.sub(rhs).entries)
    cond = LinMap.from_rows(f, (d,), (len(rows),), rows)
    space, _ = kernel_image(cond)
    if not space.contains(alg.unit):
        raise InconsistencyError("fixed subspace misses the unit")
    incl = space.inclusion()
    retr = space.retraction()
    raw_mult = alg.mult.compose(kron(incl, incl))
    # closure: the product of fixed elements is fixed (assert, cannot fail)
    back = incl.compose(retr.compose(raw_mult))
    if not back.equals(raw_mult):
        raise InconsistencyError("fixed subspace is not closed under product")
    sub_alg = Algebra(space.dim, retr.compose(raw_mult), space.coords(alg.unit))
    rep = verify_algebra(sub_alg)
    if not rep.ok:
        raise InconsistencyError(f"induced subalgebra failed verification: {rep}")
    return space, sub_alg


# ---------------------------------------------------------------------------
# extensions


@dataclass(frozen=True)
class GaloisExtension:
    alg: Algebra
    coalg: Coalgebra
    rho_a: LinMap            # A -> A (x) C
    fixed: Subspace          # B inside A
    fixed_alg: Algebra       # B with its induced structure
    square: QuotientModule   # A (x)_B A
    can: LinMap              # A (x)_B A -> A (x) C
    can_inv: LinMap
    ent: Entwining           # the canonical entwining

    @property
    def field(self):
        return self.alg.field

    def module_A(self) -> EntwinedModule:
        """A itself, entwined by its multiplication and the coaction."""
        return EntwinedModule(self.ent, self.alg.dim, self.alg.mult, self.rho_a)

    def square_right_mult(self) -> LinMap:
        """Right multiplication (A (x)_B A) (x) A -> A (x)_B A on the second leg."""
        f = self.field
        da = self.alg.dim
        raw = kron(self.alg.identity(), self.alg.mult)
        return descend(self.square.projection.compose(raw), self.square, right=da)

    def square_left_mult(self) -> LinMap:
        """Left multiplication A (x) (A (x)_B A) -> A (x)_B A on the first leg."""
        f = self.field
        da = self.alg.dim
        tw_mult = self.alg.mult  # (a, x) -> ax on the first factor
        raw = kron(tw_mult, self.alg.identity())
        raw = raw.reshaped((da, da, da), (da, da))
        return descend(self.square.projection.compose(raw), self.square, left=da)

    def mu_AB(self) -> LinMap:
        """The multiplication A (x)_B A -> A induced on the quotient."""
        return descend(self.alg.mult, self.square)

    def ac_right_action(self) -> LinMap:
        """The action (A (x) C) (x) A -> A (x) C through psi."""
        f = self.field
        ida = self.alg.identity()
        idc = self.coalg.identity()
        return compose_all(kron(self.alg.mult, idc), kron(ida, self.ent.psi))


def _b_module_structures(alg: Algebra, fixed: Subspace):
    incl = fixed.inclusion()
    right = RightModule(alg.dim, alg.mult.compose(kron(alg.identity(), incl)))
    left = LeftModule(alg.dim, alg.mult.compose(kron(incl, alg.identity())))
    return right, left


def build_galois(alg: Algebra, coalg: Coalgebra, rho_a: LinMap) -> GaloisExtension:
    """Assemble the whole extension; raises GaloisError when the canonical
    map is not bijective."""
    f = alg.field
    da, dc = alg.dim, coalg.dim
    if rho_a.domain.factors != (da,) or rho_a.codomain.factors != (da, dc):
        raise InputError("coaction shape does not match algebra/coalgebra")
    for rep in (verify_algebra(alg), verify_coalgebra(coalg),
                verify_coaction(coalg, rho_a)):
        if not rep.ok:
            raise DomainError(f"invalid extension data: {rep}")
    fixed, fixed_alg = fixed_subalgebra(alg, rho_a)
    right_b, left_b = _b_module_structures(alg, fixed)
    square = tensor_over_A(right_b, left_b)
    # can(a (x) a') = a . rho(a'), factored through the balanced quotient
    can_raw = compose_all(kron(alg.mult, coalg.identity()),
                          kron(alg.identity(), rho_a))
    can = descend(can_raw, square)
    if square.dim != da * dc:
        raise GaloisError("balanced square and A (x) C have different dimensions",
                          expected_dim=da * dc, actual_dim=square.dim)
    _, image = kernel_image(can)
    if image.dim != da * dc:
        raise GaloisError("canonical map is not bijective",
                          expected_dim=da * dc, actual_dim=square.dim,
                          rank=image.dim)
    can = can.reshaped(codomain=(da, dc))
    can_inv = invert(can)
    # psi(c (x) a) = can(can_inv(1 (x) c) . a)
    unit_c = kron(alg.unit_map(), coalg.identity())   # C -> A (x) C
    to_square = can_inv.compose(unit_c)               # C -> A (x)_B A
    raw_mult = kron(alg.identity(), alg.mult)
    right_mult = descend(square.projection.compose(raw_mult), square, right=da)
    psi = compose_all(can, right_mult,
                      kron(to_square, alg.identity()))
    psi = psi.reshaped((dc, da), (da, dc))
    ent = make_entwining(alg, coalg, psi)  # full re-verification
    ext = GaloisExtension(alg, coalg, rho_a, fixed, fixed_alg, square,
                          can, can_inv, ent)
    rep = verify_entwined_module(ext.module_A())
    if not rep.ok:
        raise InconsistencyError(f"A is not entwined over its own extension: {rep}")
    return ext


def copointed_grouplike(g: GaloisExtension):
    """The group-like element e with coaction(1) = 1 (x) e, if one exists."""
    f = g.field
    da, dc = g.alg.dim, g.coalg.dim
    rho_one = g.rho_a.apply(g.alg.unit)
    # pick a coordinate functional with xi(1) = 1
    pivot = None
    for i, x in enumerate(g.alg.unit):
        if x != 0:
            pivot = i
            break
    scale = f.inv(g.alg.unit[pivot])
    e = tuple(f.mul(scale, rho_one[pivot * dc + j]) for j in range(dc))
    # check rho(1) = 1 (x) e exactly
    expect = []
    for i in range(da):
        for j in range(dc):
            expect.append(f.mul(g.alg.unit[i], e[j]))
    if tuple(expect) != tuple(rho_one):
        return None
    # group-like: comult e = e (x) e and counit e = 1
    ee = tuple(f.mul(a, b) for a in e for b in e)
    if g.coalg.comult.apply(e) != ee:
        return None
    if g.coalg.counit_map().apply(e)[0] != f.one:
        return None
    return e


# ---------------------------------------------------------------------------
# coextensions


@dataclass(frozen=True)
class Coextension:
    coalg: Coalgebra
    alg: Algebra
    rho_c: LinMap            # C (x) A -> C
    coideal: Subspace        # I inside C
    base: Coalgebra          # B = C/I
    base_proj: LinMap        # C -> B
    cosquare: Subspace       # C [] _B C inside C (x) C
    cocan: LinMap            # C (x) A -> C []_B C  (subspace coordinates)
    cocan_inv: LinMap
    ent: Entwining

    @property
    def field(self):
        return self.coalg.field

    def module_C(self) -> EntwinedModule:
        """C itself, entwined by the action and its comultiplication."""
        return EntwinedModule(self.ent, self.coalg.dim, self.rho_c,
                              self.coalg.comult)


def _canonical_coideal(coalg: Coalgebra, alg: Algebra, rho_c: LinMap) -> Subspace:
    """Span of Delta(c.a) corrected by c1 (x) (c2.a), contracted with every
    dual basis functional in the second slot."""
    f = coalg.field
    dc, da = coalg.dim, alg.dim
    after = coalg.comult.compose(rho_c)                       # Delta(c.a)
    before = compose_all(kron(coalg.identity(), rho_c),
                         kron(coalg.comult, alg.identity()))  # c1 (x) c2.a
    diff = after.sub(before)                                  # (dc,da)->(dc,dc)
    vectors = []
    for col in range(dc * da):
        w = diff.column(col)  # an element of C (x) C, flattened row-major
        for k in range(dc):
            vectors.append(tuple(w[p * dc + k] for p in range(dc)))
    return Subspace.from_vectors(f, (dc,), vectors)


def build_coextension(coalg: Coalgebra, alg: Algebra, rho_c: LinMap) -> Coextension:
    f = coalg.field
    dc, da = coalg.dim, alg.dim
    if rho_c.domain.factors != (dc, da) or rho_c.codomain.factors != (dc,):
        raise InputError("action shape does not match coalgebra/algebra")
    for rep in (verify_algebra(alg), verify_coalgebra(coalg),
                verify_action(alg, rho_c)):
        if not rep.ok:
            raise DomainError(f"invalid coextension data: {rep}")
    coideal = _canonical_coideal(coalg, alg, rho_c)
    base, base_proj = quotient_coalgebra(coalg, coideal)
    # C as a right and left B-comodule through the projection
    right_b = RightComodule(dc, kron(coalg.identity(), base_proj).compose(coalg.comult))
    left_b = LeftComodule(dc, kron(base_proj, coalg.identity()).compose(coalg.comult))
    cosquare = cotensor(right_b, left_b)
    cocan_raw = compose_all(kron(coalg.identity(), rho_c),
                            kron(coalg.comult, alg.identity()))
    cocan = corestrict(cocan_raw, cosquare)
    if cosquare.dim != dc * da:
        raise GaloisError("cotensor square and C (x) A have different dimensions",
                          expected_dim=dc * da, actual_dim=cosquare.dim)
    _, image = kernel_image(cocan)
    if image.dim != dc * da:
        raise GaloisError("canonical map of the coextension is not bijective",
                          expected_dim=dc * da, actual_dim=cosquare.dim,
                          rank=image.dim)
    cocan_inv = invert(cocan)
    # psi = (eps (x) A (x) C) . (cocan_inv (x) C) . (C (x) Delta) . cocan
    idc = coalg.identity()
    spread = kron(idc, coalg.comult).compose(cosquare.inclusion())  # S -> C,C,C
    spread = corestrict(spread, cosquare, right=dc)                 # S -> S (x) C
    psi = compose_all(kron_all(coalg.counit_map(), alg.identity(), idc),
                      kron(cocan_inv, idc),
                      spread,
                      cocan)
    psi = psi.reshaped((dc, da), (da, dc))
    ent = make_entwining(alg, coalg, psi)
    coext = Coextension(coalg, alg, rho_c, coideal, base, base_proj,
                        cosquare, cocan, cocan_inv, ent)
    rep = verify_entwined_module(coext.module_C())
    if not rep.ok:
        raise InconsistencyError(f"C is not entwined over its own coextension: {rep}")
    return coext


def pointed_kappa(x: Coextension):
    """The character kappa with eps(c.a) = eps(c) kappa(a), if one exists."""
    f = x.field
    dc, da = x.coalg.dim, x.alg.dim
    eps = x.coalg.counit
    pivot = None
    for i, v in enumerate(eps):
        if v != 0:
            pivot = i
            break
    if pivot is None:
        raise InconsistencyError("counit of a counital coalgebra vanishes")
    scale = f.inv(eps[pivot])
    ins_c = LinMap.element(f, (dc,), tuple(f.one if t == pivot else f.zero
                                           for t in range(dc)))
    kappa_map = compose_all(x.coalg.counit_map(), x.rho_c,
                            kron(ins_c, x.alg.identity())).scale(scale)
    kappa = kappa_map.entries[0]
    # eps . action = eps (x) kappa on all of C (x) A
    lhs = x.coalg.counit_map().compose(x.rho_c)
    rhs = kron(x.coalg.counit_map(), kappa_map.reshaped((da,), SCALAR.factors))
    if not lhs.equals(rhs):
        return None
    # kappa is an algebra map
    kmap = LinMap.functional(f, (da,), kappa)
    if not kmap.compose(x.alg.mult).equals(kron(kmap, kmap)):
        return None
    if kmap.apply(x.alg.unit)[0] != f.one:
        return None
    return kappa


def cotranslation_map(x: Coextension) -> LinMap:
    """For a coextension of the ground field, the map C (x) C -> A inverting
    the canonical map in the first leg; its two composition laws and the
    normalisation are verified exactly."""
    f = x.field
    if x.base.dim != 1:
        raise InputError("cotranslation map needs a coextension of the ground field")
    dc, da = x.coalg.dim, x.alg.dim
    if x.cosquare.dim != dc * dc:
        raise InconsistencyError("cotensor square of a trivial base is not full")
    gamma = compose_all(kron(x.coalg.counit_map(), x.alg.identity()),
                        x.cocan_inv,
                        x.cosquare.retraction())
    gamma = gamma.reshaped((dc, dc), (da,))
    idc, ida = x.coalg.identity(), x.alg.identity()
    # multiplicativity against the action
    lhs = x.alg.mult.compose(kron(gamma, ida))
    rhs = gamma.compose(kron(idc, x.rho_c))
    if not lhs.equals(rhs):
        raise InconsistencyError("cotranslation map fails its action law")
    # comultiplicative contraction law
    lhs2 = compose_all(x.alg.mult, kron(gamma, gamma),
                       kron_all(idc, x.coalg.comult, idc))
    rhs2 = gamma.compose(kron_all(idc, x.coalg.counit_map(), idc))
    if not lhs2.equals(rhs2):
        raise InconsistencyError("cotranslation map fails its contraction law")
    # normalisation gamma . Delta = unit . eps
    norm = gamma.compose(x.coalg.comult)
    target = x.alg.unit_map().compose(x.coalg.counit_map())
    if not norm.equals(target):
        raise InconsistencyError("cotranslation map is not normalised")
    return gamma
