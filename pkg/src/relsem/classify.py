"""Classification against the four product-partition semigroup classes.

``check_product_class(h, kind)`` decides whether an abstract semigroup is
isomorphic to the closure generated by a product partition of that kind,
reports each defining condition with a witness, and, for members, builds
the canonical concrete model together with a verified isomorphism.

Condition names follow the ii1..ii5 scheme used in the report format of
the command line interface.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotInClassError
from .generation import GeneratedSemigroup, from_partition
from .partitions import Partition, ProductKind
from .relations import BinaryRelation, GroundSet
from .semigroups import AbstractSemigroup, BandDecomposition, is_ideal


@dataclass(frozen=True)
class ConditionReport:
    """One defining condition: pass/fail plus the first failing witness."""

    name: str
    passed: bool
    witness: tuple[str, ...] = ()
    detail: str = ""


@dataclass(frozen=True)
class CanonicalModel:
    """A concrete closure plus the bijection onto the classified input.

    ``to_input[i]`` is the input element index the i-th closure element
    maps to; the mapping is verified to be an isomorphism at build time.
    ``kind`` records which product partition generates the model.
    """

    semigroup: GeneratedSemigroup
    to_input: tuple[int, ...]
    kind: ProductKind


@dataclass(frozen=True)
class ClassVerdict:
    member: bool
    conditions: tuple[ConditionReport, ...]
    model: CanonicalModel | None = None
    notes: tuple[str, ...] = ()

    def condition(self, name: str) -> ConditionReport:
        for report in self.conditions:
            if report.name == name:
                return report
        raise KeyError(name)

    def first_failure(self) -> ConditionReport | None:
        for report in self.conditions:
            if not report.passed:
                return report
        return None


# ---------------------------------------------------------------------------
# shared helpers
# ---------------------------------------------------------------------------

def _verify_model(h: AbstractSemigroup, model: GeneratedSemigroup,
                  to_input) -> None:
    m = h.size
    if len(model) != m or sorted(to_input) != list(range(m)):
        raise RuntimeError("canonical model is not a bijection")
    for i in range(m):
        for j in range(m):
            if to_input[model.table[i][j]] != h.table[to_input[i]][to_input[j]]:
                raise RuntimeError("canonical model is not a homomorphism")


def _names(h: AbstractSemigroup, indices) -> tuple[str, ...]:
    return tuple(h.names[i] for i in indices)


# ---------------------------------------------------------------------------
# the plain class (closures of all-products partitions)
# ---------------------------------------------------------------------------

def _plain_conditions(h: AbstractSemigroup):
    """Evaluate ii1..ii4; also return the fixed-element map used by models.

    ii1: a zero exists once there are two elements.
    ii2: distinct idempotents multiply to the zero.
    ii3: each ordered pair of nontrivial idempotents fixes exactly one
         nonzero element a = left * a * right.
    ii4: each nonzero element is fixed by exactly one such pair.
    """
    m = h.size
    t = h.table
    zero = h.zero()
    idem = h.idempotents()
    nt = h.nontrivial_idempotents()
    fixed_by_pair: dict[tuple[int, int], int] = {}
    reports = []

    if m == 1:
        reports.append(ConditionReport("ii1", True, (), "single element"))
    else:
        reports.append(ConditionReport(
            "ii1", zero is not None, (),
            "" if zero is not None else "no zero element"))

    ii2_ok, ii2_wit = True, ()
    for x in idem:
        for y in idem:
            if x == y:
                continue
            if zero is None or t[x][y] != zero:
                ii2_ok, ii2_wit = False, _names(h, (x, y))
                break
        if not ii2_ok:
            break
    reports.append(ConditionReport("ii2", ii2_ok, ii2_wit))

    ii3_ok, ii3_wit, ii3_detail = True, (), ""
    for il in nt:
        for ir in nt:
            fixed = [a for a in range(m)
                     if a != zero and t[t[il][a]][ir] == a]
            if len(fixed) == 1:
                fixed_by_pair[(il, ir)] = fixed[0]
            elif ii3_ok:
                ii3_ok = False
                ii3_wit = _names(h, (il, ir))
                ii3_detail = f"{len(fixed)} nonzero elements fixed"
    reports.append(ConditionReport("ii3", ii3_ok, ii3_wit, ii3_detail))

    ii4_ok, ii4_wit, ii4_detail = True, (), ""
    if m >= 2:
        for a in range(m):
            if a == zero:
                continue
            pairs = [(il, ir) for il in nt for ir in nt
                     if t[t[il][a]][ir] == a]
            if len(pairs) != 1:
                ii4_ok = False
                ii4_wit = _names(h, (a,))
                ii4_detail = f"{len(pairs)} idempotent pairs fix it"
                break
    reports.append(ConditionReport("ii4", ii4_ok, ii4_wit, ii4_detail))

    return reports, fixed_by_pair


def _plain_model(h: AbstractSemigroup, fixed_by_pair) -> CanonicalModel:
    """Ground the nontrivial idempotents, take singleton blocks, close."""
    if h.size == 1:
        ground = GroundSet(1, labels=(h.names[0],))
        model = from_partition(Partition.finest(ground), ProductKind.PLAIN)
        _verify_model(h, model, (0,))
        return CanonicalModel(model, (0,), ProductKind.PLAIN)
    nt = h.nontrivial_idempotents()
    ground = GroundSet(len(nt), labels=_names(h, nt))
    model = from_partition(Partition.finest(ground), ProductKind.PLAIN)
    zero = h.zero()
    to_input = []
    for rel in model.elements:
        if rel.is_empty():
            to_input.append(zero)
        else:
            ((t1, t2),) = rel.pairs()
            to_input.append(fixed_by_pair[(nt[t1], nt[t2])])
    to_input = tuple(to_input)
    _verify_model(h, model, to_input)
    return CanonicalModel(model, to_input, ProductKind.PLAIN)


def _check_plain(h: AbstractSemigroup) -> ClassVerdict:
    reports, fixed_by_pair = _plain_conditions(h)
    member = all(r.passed for r in reports)
    model = _plain_model(h, fixed_by_pair) if member else None
    return ClassVerdict(member, tuple(reports), model)


# ---------------------------------------------------------------------------
# band decomposition and the symmetrized class
# ---------------------------------------------------------------------------

def decompose_band_with_core(h: AbstractSemigroup) -> BandDecomposition | None:
    """Deterministic core/groups split, or None when no candidate works.

    Group candidates are the non-idempotents g with g**3 = g, each paired
    with its idempotent square; the core is whatever remains.  The split
    is returned only if it satisfies all three clauses of a band of
    subsemigroups with core: the core is an ideal, each pair is closed,
    and distinct pairs multiply into the core.
    """
    m = h.size
    t = h.table
    idem = set(h.idempotents())
    cands = [g for g in range(m)
             if g not in idem and t[t[g][g]][g] == g]
    if not cands:
        return None
    member_of: dict[int, tuple[int, int]] = {}
    pairs: list[tuple[int, int]] = []
    for g in cands:
        pair = tuple(sorted((g, t[g][g])))
        if pair not in pairs:
            for el in pair:
                if el in member_of:
                    return None
            for el in pair:
                member_of[el] = pair
            pairs.append(pair)
    covered = set(member_of)
    core = tuple(i for i in range(m) if i not in covered)
    if not core:
        return None
    if not is_ideal(h, core):
        return None
    core_set = set(core)
    for pair in pairs:
        for x in pair:
            for y in pair:
                if t[x][y] not in pair:
                    return None
    for p1 in pairs:
        for p2 in pairs:
            if p1 is p2:
                continue
            for x in p1:
                for y in p2:
                    if t[x][y] not in core_set:
                        return None
    return BandDecomposition(core, tuple(sorted(pairs)))


def _sym_conditions(h: AbstractSemigroup, dec: BandDecomposition):
    """Evaluate the band conditions ii1..ii5 over a given decomposition."""
    m = h.size
    t = h.table
    reports = []
    notes = []
    core_set = set(dec.core)
    core_sg = h.restrict(dec.core)
    core_verdict = _check_plain(core_sg)
    if core_verdict.member:
        reports.append(ConditionReport("ii1", True))
    else:
        failing = core_verdict.first_failure()
        reports.append(ConditionReport(
            "ii1", False, failing.witness,
            f"core fails {failing.name}" if failing else "core not in class"))

    ii2_ok, ii2_wit = True, ()
    for pair in dec.groups:
        a, b = pair
        e, g = (a, b) if h.is_idempotent(a) else (b, a)
        if not (h.is_idempotent(e) and t[g][g] == e and t[g][e] == g
                and t[e][g] == g):
            ii2_ok, ii2_wit = False, _names(h, pair)
            break
    reports.append(ConditionReport("ii2", ii2_ok, ii2_wit))

    idem = h.idempotents()
    idem_set = set(idem)
    ii3_ok, ii3_wit, ii3_detail = True, (), ""
    for x in idem:
        for y in idem:
            p = t[x][y]
            if p not in idem_set:
                ii3_ok, ii3_wit = False, _names(h, (x, y))
                ii3_detail = "product of idempotents is not idempotent"
                break
            if p != t[y][x]:
                ii3_ok, ii3_wit = False, _names(h, (x, y))
                ii3_detail = "idempotents do not commute"
                break
        if not ii3_ok:
            break
    reports.append(ConditionReport("ii3", ii3_ok, ii3_wit, ii3_detail))

    ntc = tuple(dec.core[i] for i in core_sg.nontrivial_idempotents())
    outer = tuple(e for e in idem if e not in core_set)
    if len(ntc) <= 1:
        notes.append("the core has at most one nontrivial idempotent, so the "
                     "pairing condition is vacuous forward and forces an "
                     "empty complement backward")
    ii4_ok, ii4_wit, ii4_detail = True, (), ""
    for i, e1 in enumerate(ntc):
        for e2 in ntc[i + 1:]:
            links = [e for e in outer if t[e1][e] == e1 and t[e2][e] == e2]
            if len(links) != 1:
                ii4_ok = False
                ii4_wit = _names(h, (e1, e2))
                ii4_detail = f"{len(links)} linking idempotents outside the core"
                break
        if not ii4_ok:
            break
    if ii4_ok:
        for e in outer:
            anchors = [x for x in ntc if t[x][e] == x]
            if len(anchors) != 2:
                ii4_ok = False
                ii4_wit = _names(h, (e,))
                ii4_detail = f"{len(anchors)} core idempotents anchor it"
                break
    reports.append(ConditionReport("ii4", ii4_ok, ii4_wit, ii4_detail))

    zero = h.zero()
    ii5_ok, ii5_wit, ii5_detail = True, (), ""
    if zero is None:
        ii5_ok, ii5_detail = False, "no zero element to compare against"
    else:
        for x in idem:
            if x not in core_set:
                continue
            for y in range(m):
                if y in idem_set:
                    continue
                for p in (t[x][y], t[y][x]):
                    if (p == zero) != (p in idem_set):
                        ii5_ok, ii5_wit = False, _names(h, (x, y))
                        break
                if not ii5_ok:
                    break
            if not ii5_ok:
                break
    reports.append(ConditionReport("ii5", ii5_ok, ii5_wit, ii5_detail))
    return reports, notes


def _sym_model(h: AbstractSemigroup, dec: BandDecomposition) -> CanonicalModel:
    """Extend the core model over the group elements, then close symmetrized."""
    t = h.table
    core_sg = h.restrict(dec.core)
    core_verdict = _check_plain(core_sg)
    core_model = core_verdict.model
    ground = core_model.semigroup.ground
    model = from_partition(Partition.finest(ground), ProductKind.SYM)

    # image of every input element, read off the core model plus the
    # pairing of outer idempotents with core idempotent pairs
    phi: dict[int, BinaryRelation] = {}
    for i, rel in enumerate(core_model.semigroup.elements):
        phi[dec.core[core_model.to_input[i]]] = rel
    idem_set = set(h.idempotents())
    core_set = set(dec.core)
    ntc = tuple(dec.core[i] for i in core_sg.nontrivial_idempotents())
    for e in h.idempotents():
        if e in core_set:
            continue
        anchors = [x for x in ntc if t[x][e] == x]
        phi[e] = phi[anchors[0]] | phi[anchors[1]]
    for pair in dec.groups:
        for x in pair:
            if x in idem_set:
                continue
            diag = sorted(a for a, b in phi[t[x][x]].pairs() if a == b)
            i, j = diag
            phi[x] = BinaryRelation.from_pairs(ground, [(i, j), (j, i)])

    index_by_rel = {rel: idx for idx, rel in enumerate(model.elements)}
    to_input = [None] * len(model.elements)
    for h_idx, rel in phi.items():
        to_input[index_by_rel[rel]] = h_idx
    to_input = tuple(to_input)
    _verify_model(h, model, to_input)
    return CanonicalModel(model, to_input, ProductKind.SYM)


def _check_sym(h: AbstractSemigroup) -> ClassVerdict:
    dec = decompose_band_with_core(h)
    band = ConditionReport(
        "band", dec is not None, (),
        "" if dec is not None else "no core/groups split of the required shape")
    if dec is None:
        return ClassVerdict(False, (band,))
    reports, notes = _sym_conditions(h, dec)
    reports = [band] + reports
    member = all(r.passed for r in reports)
    model = _sym_model(h, dec) if member else None
    return ClassVerdict(member, tuple(reports), model, tuple(notes))


# ---------------------------------------------------------------------------
# identity-adjoined classes
# ---------------------------------------------------------------------------

def _check_unit_like(h: AbstractSemigroup, base_kind: ProductKind) -> ClassVerdict:
    """Member iff h is the identity adjunction of a base-class member."""
    m = h.size
    t = h.table
    is_sym = base_kind is ProductKind.SYM
    unit_kind = ProductKind.SYM_UNIT if is_sym else ProductKind.UNIT
    notes: list[str] = []

    if m == 1 and not is_sym:
        conditions = (ConditionReport(
            "identity", True, (), "single element is its own unit extension"),)
        ground = GroundSet(1, labels=(h.names[0],))
        model = from_partition(Partition.finest(ground), ProductKind.UNIT)
        _verify_model(h, model, (0,))
        return ClassVerdict(True, conditions,
                            CanonicalModel(model, (0,), ProductKind.UNIT))

    e = h.identity()
    reports = [ConditionReport("identity", e is not None, (),
                               "" if e is not None else "no identity element")]
    if e is None:
        return ClassVerdict(False, tuple(reports))

    if is_sym:
        own = _check_sym(h)
        if own.member:
            # the member already carries its identity, so it is its own
            # unit extension; no larger closure realizes it
            notes.append("already has an identity and is its own unit "
                         "extension")
            reports.append(ConditionReport(
                "self-unit", True, (), "member of the base class with identity"))
            return ClassVerdict(True, tuple(reports), own.model, tuple(notes))

    if is_sym and m == 2 and t[1 - e][1 - e] == e:
        notes.append("two-element group; the two-block pair partition "
                     "already generates it with the merged diagonal as "
                     "closure identity, the degenerate case excluded from "
                     "the adjunction correspondence")

    rest = [i for i in range(m) if i != e]
    if not rest:
        reports.append(ConditionReport(
            "complement-nonempty", False, (),
            "nothing remains after removing the identity"))
        return ClassVerdict(False, tuple(reports), notes=tuple(notes))
    closed_wit = ()
    closed = True
    for i in rest:
        for j in rest:
            if t[i][j] == e:
                closed, closed_wit = False, _names(h, (i, j))
                break
        if not closed:
            break
    reports.append(ConditionReport("complement-closed", closed, closed_wit))
    if not closed:
        return ClassVerdict(False, tuple(reports), notes=tuple(notes))

    g = h.restrict(rest)
    base_verdict = _check_sym(g) if is_sym else _check_plain(g)
    if base_verdict.member:
        reports.append(ConditionReport("complement-in-class", True))
    else:
        failing = base_verdict.first_failure()
        reports.append(ConditionReport(
            "complement-in-class", False,
            failing.witness if failing else (),
            f"complement fails {failing.name}" if failing else ""))
    identity_free = g.identity() is None
    reports.append(ConditionReport(
        "complement-identity-free", identity_free, (),
        "" if identity_free else
        "complement already has an identity, so adjunction cannot reach h"))
    member = all(r.passed for r in reports)
    if not member:
        return ClassVerdict(False, tuple(reports), notes=tuple(notes))

    base_model = base_verdict.model
    ground = base_model.semigroup.ground
    model = from_partition(Partition.finest(ground), unit_kind)
    rel_to_g = {base_model.semigroup.elements[i]: rest[base_model.to_input[i]]
                for i in range(len(base_model.semigroup))}
    identity_rel = BinaryRelation.diagonal(ground)
    to_input = []
    for rel in model.elements:
        if rel == identity_rel:
            to_input.append(e)
        else:
            to_input.append(rel_to_g[rel])
    to_input = tuple(to_input)
    _verify_model(h, model, to_input)
    return ClassVerdict(True, tuple(reports),
                        CanonicalModel(model, to_input, unit_kind),
                        tuple(notes))


# ---------------------------------------------------------------------------
# public entry points
# ---------------------------------------------------------------------------

def check_product_class(h: AbstractSemigroup, kind: ProductKind) -> ClassVerdict:
    """Decide membership in the class generated by the given product kind."""
    if kind is ProductKind.PLAIN:
        return _check_plain(h)
    if kind is ProductKind.SYM:
        return _check_sym(h)
    if kind is ProductKind.UNIT:
        return _check_unit_like(h, ProductKind.PLAIN)
    return _check_unit_like(h, ProductKind.SYM)


def canonical_model(h: AbstractSemigroup, kind: ProductKind) -> CanonicalModel:
    """The verified concrete model of a member; raises for non-members."""
    verdict = check_product_class(h, kind)
    if not verdict.member:
        failing = verdict.first_failure()
        raise NotInClassError(
            f"not a member of the {kind.value} class"
            + (f" ({failing.name} fails)" if failing else ""))
    return verdict.model
