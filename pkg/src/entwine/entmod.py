"""Entwined modules and the functors between their categories.

A module here is simultaneously a right module and a right comodule whose
action and coaction commute through psi.  The two functors induced by a
morphism of entwinings (tensoring up along the algebra map, cotensoring
down along the coalgebra map) are realised with explicit quotient and
subspace plumbing, so that every derived structure map is an honest matrix
and not a coset description.

Over a field the preservation hypotheses needed for these constructions
(cotensoring preserves the relevant cokernels, tensoring the relevant
kernels) hold automatically, so no runtime check is made for them; the
landing and descent assertions on each individual map still run.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, InputError
from .entwining import Entwining, EntwiningMorphism
from .linalg import (LinMap, QuotientModule, Subspace, TensorShape, SCALAR,
                     compose_all, corestrict, descend, kernel_image, kron,
                     kron_all, quotient_by)
from .structures import Algebra, CheckReport, law


@dataclass(frozen=True)
class RightModule:
    dim: int
    action: LinMap  # (dim, dimA) -> (dim)


@dataclass(frozen=True)
class LeftModule:
    dim: int
    action: LinMap  # (dimA, dim) -> (dim)


@dataclass(frozen=True)
class RightComodule:
    dim: int
    coaction: LinMap  # (dim) -> (dim, dimC)


@dataclass(frozen=True)
class LeftComodule:
    dim: int
    coaction: LinMap  # (dim) -> (dimC, dim)


@dataclass(frozen=True)
class EntwinedModule:
    ent: Entwining
    dim: int
    action: LinMap    # (dim, dimA) -> (dim)
    coaction: LinMap  # (dim) -> (dim, dimC)

    def __post_init__(self):
        da, dc, dm = self.ent.alg.dim, self.ent.coalg.dim, self.dim
        if self.action.domain.factors != (dm, da) or self.action.codomain.factors != (dm,):
            raise InputError("action shape does not match the module")
        if self.coaction.domain.factors != (dm,) or self.coaction.codomain.factors != (dm, dc):
            raise InputError("coaction shape does not match the module")

    @property
    def field(self):
        return self.ent.field

    def as_module(self) -> RightModule:
        return RightModule(self.dim, self.action)

    def as_comodule(self) -> RightComodule:
        return RightComodule(self.dim, self.coaction)

    def identity(self) -> LinMap:
        return LinMap.identity(self.field, (self.dim,))


def check_right_module(alg: Algebra, m: RightModule, failures):
    idm = LinMap.identity(alg.field, (m.dim,))
    law(failures, "action associativity",
        m.action.compose(kron(m.action, alg.identity())),
        m.action.compose(kron(idm, alg.mult)))
    law(failures, "action unitality",
        m.action.compose(kron(idm, alg.unit_map())), idm)


def check_right_comodule(coalg, m: RightComodule, failures):
    idm = LinMap.identity(coalg.field, (m.dim,))
    law(failures, "coaction coassociativity",
        kron(m.coaction, coalg.identity()).compose(m.coaction),
        kron(idm, coalg.comult).compose(m.coaction))
    law(failures, "coaction counitality",
        kron(idm, coalg.counit_map()).compose(m.coaction), idm)


def verify_entwined_module(m: EntwinedModule) -> CheckReport:
    e = m.ent
    failures = []
    check_right_module(e.alg, m.as_module(), failures)
    check_right_comodule(e.coalg, m.as_comodule(), failures)
    idm = m.identity()
    law(failures, "entwined compatibility",
        m.coaction.compose(m.action),
        compose_all(kron(m.action, e.coalg.identity()),
                    kron(idm, e.psi),
                    kron(m.coaction, e.alg.identity())))
    return CheckReport("entwined module", tuple(failures))


def regular_module(alg: Algebra) -> RightModule:
    return RightModule(alg.dim, alg.mult)


def regular_comodule(coalg) -> RightComodule:
    return RightComodule(coalg.dim, coalg.comult)


def standard_module(kind: str, base, ent: Entwining) -> EntwinedModule:
    """The two canonical entwined modules over any entwining.

    "mod_tensor_c": from a right module M, the space M (x) C with coaction
    M (x) comult and action through psi.  "comod_tensor_a": from a right
    comodule V, the space V (x) A with action V (x) mult and coaction
    through psi.
    """
    f = ent.field
    a, c = ent.alg, ent.coalg
    if kind == "mod_tensor_c":
        if not isinstance(base, RightModule):
            raise DomainError("mod_tensor_c needs a right module base")
        failures = []
        check_right_module(a, base, failures)
        if failures:
            raise DomainError(f"base is not a module: {failures}")
        idm = LinMap.identity(f, (base.dim,))
        action = compose_all(kron(base.action, c.identity()), kron(idm, ent.psi))
        coaction = kron(idm, c.comult)
        out = EntwinedModule(ent, base.dim * c.dim,
                             action.reshaped((base.dim * c.dim, a.dim),
                                             (base.dim * c.dim,)),
                             coaction.reshaped((base.dim * c.dim,),
                                               (base.dim * c.dim, c.dim)))
    elif kind == "comod_tensor_a":
        if not isinstance(base, RightComodule):
            raise DomainError("comod_tensor_a needs a right comodule base")
        failures = []
        check_right_comodule(c, base, failures)
        if failures:
            raise DomainError(f"base is not a comodule: {failures}")
        idv = LinMap.identity(f, (base.dim,))
        action = kron(idv, a.mult)
        coaction = compose_all(kron(idv, ent.psi), kron(base.coaction, a.identity()))
        out = EntwinedModule(ent, base.dim * a.dim,
                             action.reshaped((base.dim * a.dim, a.dim),
                                             (base.dim * a.dim,)),
                             coaction.reshaped((base.dim * a.dim,),
                                               (base.dim * a.dim, c.dim)))
    else:
        raise InputError(f"unknown standard module kind {kind!r}")
    rep = verify_entwined_module(out)
    if not rep.ok:
        raise DomainError(f"standard module failed verification: {rep}")
    return out


# ---------------------------------------------------------------------------
# cotensor products and tensor products over A


def cotensor(x: RightComodule, y: LeftComodule) -> Subspace:
    """V [] W inside V (x) W: the kernel of the coaction equalising map."""
    f = x.coaction.field
    xc = x.coaction.codomain.factors[1]
    yc = y.coaction.codomain.factors[0]
    if xc != yc:
        raise InputError("cotensor factors do not share a coalgebra")
    idx = LinMap.identity(f, (x.dim,))
    idy = LinMap.identity(f, (y.dim,))
    eq = kron(x.coaction, idy).sub(kron(idx, y.coaction))
    kernel, _ = kernel_image(eq)
    return Subspace(f, TensorShape((x.dim, y.dim)), kernel.basis, kernel.pivots)


def tensor_over_A(m: RightModule, n: LeftModule) -> QuotientModule:
    """M (x)_A N as an explicit quotient with projection and section."""
    f = m.action.field
    ma = m.action.domain.factors[1]
    na = n.action.domain.factors[0]
    if ma != na:
        raise InputError("tensor factors do not share an algebra")
    idm = LinMap.identity(f, (m.dim,))
    idn = LinMap.identity(f, (n.dim,))
    eq = kron(m.action, idn).sub(kron(idm, n.action))
    _, relations = kernel_image(eq)
    relations = Subspace(f, TensorShape((m.dim, n.dim)), relations.basis,
                         relations.pivots)
    return quotient_by(relations)


# ---------------------------------------------------------------------------
# the two functors attached to a morphism of entwinings


def _module_over_dst_algebra(mor: EntwiningMorphism) -> LeftModule:
    """The target algebra as a left module over the source through f."""
    f = mor.src.field
    dst_a = mor.dst.alg
    action = dst_a.mult.compose(kron(mor.f, dst_a.identity()))
    return LeftModule(dst_a.dim, action)


def induce(mor: EntwiningMorphism, m: EntwinedModule):
    """M (x)_A A~ as a module over the target entwining.

    Returns the module together with the quotient plumbing that realises it.
    """
    if m.ent is not mor.src and m.ent != mor.src:
        raise InputError("module does not live over the source entwining")
    f = m.field
    dst = mor.dst
    da2, dc2 = dst.alg.dim, dst.coalg.dim
    quot = tensor_over_A(m.as_module(), _module_over_dst_algebra(mor))
    idm = m.identity()
    ida2 = dst.alg.identity()
    # action (x (x)_A a~) . a~' = x (x)_A (a~ a~')
    act_raw = kron(idm, dst.alg.mult)
    action = descend(quot.projection.compose(act_raw), quot, right=da2)
    # coaction x (x) a~ -> x0 (x) psi~(g(x1) (x) a~)
    coact_raw = compose_all(kron_all(idm, dst.psi),
                            kron_all(idm, mor.g, ida2),
                            kron(m.coaction, ida2))
    coaction = descend(kron(quot.projection, dst.coalg.identity()).compose(coact_raw),
                       quot)
    qd = quot.dim
    out = EntwinedModule(dst, qd,
                         action.reshaped((qd, da2), (qd,)),
                         coaction.reshaped((qd,), (qd, dc2)))
    rep = verify_entwined_module(out)
    if not rep.ok:
        raise DomainError(f"induced module failed verification: {rep}")
    return out, quot


def _comodule_over_dst_left(mor: EntwiningMorphism) -> LeftComodule:
    """The source coalgebra as a left comodule over the target through g."""
    src_c = mor.src.coalg
    coaction = kron(mor.g, src_c.identity()).compose(src_c.comult)
    return LeftComodule(src_c.dim, coaction)


def coinduce(mor: EntwiningMorphism, mt: EntwinedModule):
    """M~ [] C as a module over the source entwining.

    Returns the module together with the cotensor subspace that carries it.
    """
    if mt.ent is not mor.dst and mt.ent != mor.dst:
        raise InputError("module does not live over the target entwining")
    f = mt.field
    src = mor.src
    da, dc = src.alg.dim, src.coalg.dim
    sub = cotensor(mt.as_comodule(), _comodule_over_dst_left(mor))
    idmt = mt.identity()
    idc = src.coalg.identity()
    # coaction Sum m~ (x) c -> Sum m~ (x) c1 (x) c2
    coact_raw = kron(idmt, src.coalg.comult).compose(sub.inclusion())
    coaction = corestrict(coact_raw, sub, right=dc)
    # action Sum m~ (x) c . a = Sum m~ f(a_alpha) (x) c^alpha
    mult_f = mt.action.compose(kron(idmt, mor.f))
    act_raw = compose_all(kron(mult_f, idc),
                          kron(idmt, src.psi),
                          kron(sub.inclusion(), src.alg.identity()))
    action = corestrict(act_raw, sub)
    sd = sub.dim
    out = EntwinedModule(src, sd,
                         action.reshaped((sd, da), (sd,)),
                         coaction.reshaped((sd,), (sd, dc)))
    rep = verify_entwined_module(out)
    if not rep.ok:
        raise DomainError(f"coinduced module failed verification: {rep}")
    return out, sub


def functor_apply(direction: str, mor: EntwiningMorphism,
                  m: EntwinedModule) -> EntwinedModule:
    if direction == "induce":
        return induce(mor, m)[0]
    if direction == "coinduce":
        return coinduce(mor, m)[0]
    raise InputError(f"unknown functor direction {direction!r}")


def induce_morphism(mor: EntwiningMorphism, phi: LinMap,
                    src_quot: QuotientModule, dst_quot: QuotientModule) -> LinMap:
    """phi (x)_A A~ between two induced modules."""
    da2 = mor.dst.alg.dim
    raw = dst_quot.projection.compose(kron(phi, LinMap.identity(phi.field, (da2,))))
    return descend(raw, src_quot)


def coinduce_morphism(mor: EntwiningMorphism, phi: LinMap,
                      src_sub: Subspace, dst_sub: Subspace) -> LinMap:
    """phi [] C between two coinduced modules."""
    dc = mor.src.coalg.dim
    raw = kron(phi, LinMap.identity(phi.field, (dc,))).compose(src_sub.inclusion())
    return corestrict(raw, dst_sub)


def adjunction_unit(mor: EntwiningMorphism, m: EntwinedModule) -> LinMap:
    """m -> m0 (x) 1 (x) m1, landing in the coinduced module of the induced one."""
    fm, quot = induce(mor, m)
    gfm, sub = coinduce(mor, fm)
    f = m.field
    idm = m.identity()
    idc = mor.src.coalg.identity()
    raw = compose_all(kron(quot.projection, idc),
                      kron_all(idm, mor.dst.alg.unit_map(), idc),
                      m.coaction)
    return corestrict(raw, sub)


def adjunction_counit(mor: EntwiningMorphism, mt: EntwinedModule) -> LinMap:
    """Sum m~ (x) c (x) a~ -> Sum m~ . a~ eps(c), off the induced module of
    the coinduced one."""
    gmt, sub = coinduce(mor, mt)
    fgmt, quot = induce(mor, gmt)
    f = mt.field
    ida2 = mor.dst.alg.identity()
    raw = compose_all(mt.action,
                      kron_all(mt.identity(), mor.src.coalg.counit_map(), ida2),
                      kron(sub.inclusion(), ida2))
    return descend(raw, quot)


def adjunction_maps(mor: EntwiningMorphism, m: EntwinedModule,
                    mt: EntwinedModule):
    """The unit at m and counit at m~ of the induction/coinduction adjunction.

    Both triangle identities are re-verified exactly before returning.
    """
    phi = adjunction_unit(mor, m)
    psi = adjunction_counit(mor, mt)
    # counit(F m) . F(unit_m) = id on F m
    fm, q_fm = induce(mor, m)
    gfm, s_gfm = coinduce(mor, fm)
    fgfm, q_fgfm = induce(mor, gfm)
    f_phi = induce_morphism(mor, phi, q_fm, q_fgfm)
    left = adjunction_counit(mor, fm).compose(f_phi)
    if not left.equals(fm.identity()):
        raise DomainError("adjunction triangle (counit . F unit) failed")
    # G(counit_m~) . unit(G m~) = id on G m~
    gmt, s_gmt = coinduce(mor, mt)
    fgmt, q_fgmt = induce(mor, gmt)
    gfgmt, s_gfgmt = coinduce(mor, fgmt)
    g_psi = coinduce_morphism(mor, psi, s_gfgmt, s_gmt)
    right = g_psi.compose(adjunction_unit(mor, gmt))
    if not right.equals(gmt.identity()):
        raise DomainError("adjunction triangle (G counit . unit) failed")
    return phi, psi


# ---------------------------------------------------------------------------
# fixed parts and morphism spaces


def fixed_part(m: EntwinedModule, rho_a: LinMap) -> Subspace:
    """Elements whose coaction after any action agrees with acting through
    the coaction of the algebra itself."""
    f = m.field
    da = m.ent.alg.dim
    rows = []
    idm = m.identity()
    for j in range(da):
        basis_a = tuple(f.one if t == j else f.zero for t in range(da))
        ins_a = LinMap.element(f, (da,), basis_a)
        lhs = m.coaction.compose(m.action.compose(kron(idm, ins_a)))
        rho_val = rho_a.column(j)
        ins_ac = LinMap.element(f, (da, m.ent.coalg.dim), rho_val)
        rhs = kron(m.action, m.ent.coalg.identity()).compose(kron(idm, ins_ac))
        rows.extend(lhs.sub(rhs).entries)
    if not rows:
        return Subspace.full(f, (m.dim,))
    cond = LinMap.from_rows(f, (m.dim,), (len(rows),), rows)
    kernel, _ = kernel_image(cond)
    return kernel


def hom_AC(m: EntwinedModule, n: EntwinedModule) -> Subspace:
    """All maps commuting with both the actions and the coactions, as a
    subspace of the full matrix space with ambient (dim N, dim M)."""
    if m.ent != n.ent:
        raise InputError("modules live over different entwinings")
    f = m.field
    e = m.ent
    da, dc = e.alg.dim, e.coalg.dim
    from .linalg import op_in_unknown
    xdom, xcod = TensorShape((m.dim,)), TensorShape((n.dim,))
    # A-linearity: X . action_M = action_N . (X (x) id_A)
    lin_lhs = op_in_unknown(m.action, SCALAR, xdom, xcod, SCALAR,
                            LinMap.identity(f, (n.dim,)))
    lin_rhs = op_in_unknown(LinMap.identity(f, (m.dim, da)), SCALAR, xdom, xcod,
                            TensorShape((da,)), n.action)
    # C-colinearity: coaction_N . X = (X (x) id_C) . coaction_M
    col_lhs = op_in_unknown(LinMap.identity(f, (m.dim,)), SCALAR, xdom, xcod,
                            SCALAR, n.coaction)
    col_rhs = op_in_unknown(m.coaction, SCALAR, xdom, xcod, TensorShape((dc,)),
                            LinMap.identity(f, (n.dim, dc)))
    rows = list(lin_lhs.sub(lin_rhs).entries) + list(col_lhs.sub(col_rhs).entries)
    cond = LinMap.from_rows(f, (n.dim * m.dim,), (len(rows),), rows)
    kernel, _ = kernel_image(cond)
    return Subspace(f, TensorShape((n.dim, m.dim)), kernel.basis, kernel.pivots)


def hom_vector_as_map(field, vec, m_dim: int, n_dim: int) -> LinMap:
    """Reshape a vector of the hom-space ambient back into a map M -> N."""
    rows = [tuple(vec[i * m_dim + j] for j in range(m_dim)) for i in range(n_dim)]
    return LinMap.from_rows(field, (m_dim,), (n_dim,), rows)
