"""Named checks T1..T18 run over a corpus of groups.

Each (check, group) pair yields exactly one :class:`TheoremOutcome`. A check
whose hypothesis does not apply reports ``HYPOTHESIS_NOT_MET``; a statement
that fails on a group in its scope reports ``VIOLATION`` with the measured
quantities. Biconditionals are evaluated with both sides computed
independently, and one-sided failures are named in the detail.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from typing import Callable, Iterable

import numpy as np

from .catalog import CorpusItem
from .centralizers import (
    conjugate_type,
    count_by_formula_f1,
    count_by_formula_pp1,
    is_CA_group,
    is_F_group,
    is_strict_center_partition,
    profile,
)
from .classify import all_centralizers_maximal, is_extraspecial, is_ultraspecial
from .constructors import PLUS, construct_extraspecial
from .errors import CentraError, NotApplicable, NotPGroup, SearchBudgetExceeded
from .group import (
    Group,
    commutator_subgroup,
    exponent,
    is_abelian_subgroup,
    is_elementary_abelian,
    is_elementary_abelian_subgroup,
    nilpotency_class,
    normal_subgroups_of_prime_index,
    quotient,
)
from .isoclinism import DEFAULT_BUDGET, are_isoclinic, isoclinic_to_extraspecial
from .numbers import factorize, geometric_count, is_prime, prime_power, smallest_prime_divisor
from .zclasses import check_max_zclass_characterization, upper_bound_check, z_partition

HOLDS = "HOLDS"
HYPOTHESIS_NOT_MET = "HYPOTHESIS_NOT_MET"
VIOLATION = "VIOLATION"
SKIPPED = "SKIPPED(budget)"
ERROR = "ERROR"

THEOREM_IDS = tuple(f"T{i}" for i in range(1, 19))
MANIFEST = "MANIFEST"
LOAD = "LOAD"

EXIT_OK = 0
EXIT_VIOLATION = 2
EXIT_LOAD_ERROR = 3


@dataclass(frozen=True)
class TheoremOutcome:
    theorem_id: str
    group: str
    status: str
    detail: str

    def record(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


class _Unmet(Exception):
    pass


class _Context:
    """Per-run caches shared by the checks (pairwise isoclinism, representatives)."""

    def __init__(self, items: list[CorpusItem], budget: int):
        self.items = items
        self.budget = budget
        self.pairs: dict[tuple[int, int], object] = {}

    def groups(self) -> list[tuple[int, CorpusItem]]:
        return [(i, it) for i, it in enumerate(self.items) if it.group is not None]

    def isoclinic(self, i: int, j: int):
        key = (min(i, j), max(i, j))
        if key not in self.pairs:
            G, H = self.items[key[0]].group, self.items[key[1]].group
            try:
                self.pairs[key] = are_isoclinic(G, H, budget=self.budget)
            except SearchBudgetExceeded as exc:
                self.pairs[key] = exc
        return self.pairs[key]

    def ultraspecial_reps(self, order: int) -> list[tuple[int, CorpusItem]]:
        out = []
        for i, it in self.groups():
            if it.group.order != order:
                continue
            try:
                if is_ultraspecial(it.group):
                    out.append((i, it))
            except NotPGroup:
                pass
        return out


def _flag(b: bool) -> str:
    return "yes" if b else "no"


def _biconditional(name_l: str, lhs: bool, name_r: str, rhs: bool) -> str | None:
    if lhs and not rhs:
        return f"{name_l} holds but {name_r} fails"
    if rhs and not lhs:
        return f"{name_r} holds but {name_l} fails"
    return None


def _result(failures: list[str], detail: str) -> tuple[str, str]:
    if failures:
        return VIOLATION, "; ".join(failures) + " | " + detail
    return HOLDS, detail


def _nonabelian(G: Group) -> None:
    if G.is_abelian:
        raise _Unmet("G is abelian")


def _zx_sizes(G: Group) -> str:
    return ",".join(map(str, sorted(set(profile(G).zx_quotient_orders)))) or "-"


def _is_cp_power(Q: Group, p: int, k: int) -> bool:
    return Q.order == p**k and is_elementary_abelian(Q, p)


# ---------------------------------------------------------------------------
# the checks


def t1_rank_one(G: Group, ctx: _Context, idx: int) -> tuple[str, str]:
    """Strict Z(G)-partition, F-group and rank 1 agree."""
    _nonabelian(G)
    prof = profile(G)
    strict = is_strict_center_partition(G)
    f = is_F_group(G)
    rank1 = prof.rank == 1
    fails = [
        m
        for m in (
            _biconditional("strict partition", strict, "F-group", f),
            _biconditional("F-group", f, "rank 1", rank1),
        )
        if m
    ]
    return _result(fails, f"strict={_flag(strict)} F={_flag(f)} rank={prof.rank}")


def t2_isoclinic_cent(G: Group, ctx: _Context, idx: int) -> tuple[str, str]:
    """Isoclinic corpus members have equal centralizer counts."""
    cent = profile(G).cent_count
    partners, skipped, fails = [], [], []
    for j, other in ctx.groups():
        if j == idx:
            continue
        res = ctx.isoclinic(idx, j)
        if isinstance(res, SearchBudgetExceeded):
            skipped.append(other.name)
            continue
        if res:
            oc = profile(other.group).cent_count
            partners.append(f"{other.name}({oc})")
            if oc != cent:
                fails.append(f"isoclinic to {other.name} but |Cent| {cent} != {oc}")
    if not partners and not skipped:
        raise _Unmet("no isoclinic partner in the corpus")
    if skipped and not partners and not fails:
        return SKIPPED, f"budget exceeded against {','.join(skipped)}"
    detail = f"|Cent|={cent} partners={','.join(partners) or '-'}"
    if skipped:
        detail += f" budget-skipped={','.join(skipped)}"
    return _result(fails, detail)


def t3_zmud(G: Group, ctx: _Context, idx: int) -> tuple[str, str]:
    """An abelian normal subgroup of prime index p forces |G| = p |Z(G)| |G'|."""
    _nonabelian(G)
    cands = [(p, N) for p, N in normal_subgroups_of_prime_index(G) if is_abelian_subgroup(G, N)]
    if not cands:
        raise _Unmet("no abelian normal subgroup of prime index")
    z = profile(G).center.size
    d = commutator_subgroup(G).size
    primes = sorted({p for p, _ in cands})
    fails = [f"p={p}: {p}*{z}*{d} != {G.order}" for p in primes if p * z * d != G.order]
    return _result(fails, f"|G|={G.order} |Z|={z} |G'|={d} p={','.join(map(str, primes))}")


def t4_cent_equals_index(G: Group, ctx: _Context, idx: int) -> tuple[str, str]:
    """|Cent(G)| = [G:Z(G)] iff every |Z(x)/Z(G)| = 2."""
    prof = profile(G)
    lhs = prof.cent_count == prof.center_index
    rhs = all(s == 2 for s in prof.zx_quotient_orders)
    fail = _biconditional("|Cent|=[G:Z]", lhs, "all |Z(x)/Z|=2", rhs)
    return _result(
        [fail] if fail else [],
        f"|Cent|={prof.cent_count} [G:Z]={prof.center_index} |Z(x)/Z| in {{{_zx_sizes(G)}}}",
    )


def t5_upper_bound_parts(G: Group, ctx: _Context, idx: int) -> tuple[str, str]:
    """Parts (a)-(d): consequences of |Cent| or the z-class count reaching [G:Z(G)]."""
    prof = profile(G)
    zc = z_partition(G).zclass_count
    cent_eq = prof.cent_count == prof.center_index
    z_eq = zc == prof.center_index
    f = is_F_group(G)
    all_two = all(s == 2 for s in prof.zx_quotient_orders)
    Q = quotient(G, prof.center)
    el2 = is_elementary_abelian(Q, 2)
    fails = []
    if cent_eq and not f:
        fails.append("(a) |Cent|=[G:Z] but not an F-group")
    if cent_eq and not el2:
        fails.append("(b) |Cent|=[G:Z] but G/Z not elementary abelian 2-group")
    c = _biconditional("(c) z-count=[G:Z]", z_eq, "all |Z(x)/Z|=2", all_two)
    if c:
        fails.append(c)
    if z_eq and not f:
        fails.append("(d) z-count=[G:Z] but not an F-group")
    if not upper_bound_check(G) and zc <= prof.center_index and not c:
        fails.append("z-count bound check disagrees")
    if zc > prof.center_index:
        fails.append(f"z-count {zc} exceeds [G:Z] {prof.center_index}")
    detail = (
        f"|Cent|={prof.cent_count} z={zc} [G:Z]={prof.center_index} F={_flag(f)} "
        f"G/Z el.ab.2={_flag(el2)} |Z(x)/Z| in {{{_zx_sizes(G)}}}"
    )
    return _result(fails, detail)


def _special_two_isoclinic(G: Group, ctx: _Context) -> tuple[bool, str]:
    """Whether ``G`` is isoclinic to a special 2-group.

    Isoclinism preserves ``G/Z(G)`` and ``G'``, and a special 2-group has both
    elementary abelian, which gives necessity. Conversely a stem group ``H``
    of the family has ``Z(H) <= H'``; with ``H/Z(H)`` abelian this forces
    ``Z(H) = H' ~ G'``, so ``H`` is a special 2-group when both are
    elementary abelian 2-groups. When ``|G'| = 2`` the claim is also
    confirmed against a concrete extraspecial group.
    """
    prof = profile(G)
    Q = quotient(G, prof.center)
    D = commutator_subgroup(G)
    structural = is_elementary_abelian(Q, 2) and D.size > 1 and is_elementary_abelian_subgroup(G, D, 2)
    note = "structural"
    if structural and D.size == 2:
        pk = prime_power(Q.order)
        a = pk[1] // 2
        match = are_isoclinic(G, construct_extraspecial(2, a, PLUS), budget=ctx.budget)
        if not match:
            return False, f"structural yes but not isoclinic to 2^{2 * a + 1}+ ({match.reason})"
        note = f"isoclinic to extraspecial 2^{2 * a + 1}"
    return structural, note


def t6_cent_bounds(G: Group, ctx: _Context, idx: int) -> tuple[str, str]:
    """p+2 <= |Cent| <= [G:Z(G)] with the equality characterisations."""
    _nonabelian(G)
    prof = profile(G)
    p = smallest_prime_divisor(G.order)
    cent = prof.cent_count
    Q = quotient(G, prof.center)
    fails = []
    if cent < p + 2:
        fails.append(f"|Cent|={cent} < p+2={p + 2}")
    a_eq = cent == p + 2
    a_quot = _is_cp_power(Q, p, 2)
    iso = are_isoclinic(G, construct_extraspecial(p, 1, PLUS), budget=ctx.budget)
    a_iso = bool(iso)
    for m in (
        _biconditional("(a) |Cent|=p+2", a_eq, "G/Z=CpxCp", a_quot),
        _biconditional("(a) G/Z=CpxCp", a_quot, f"isoclinic to {p}^3 extraspecial", a_iso),
    ):
        if m:
            fails.append(m)
    if cent > prof.center_index:
        fails.append(f"|Cent|={cent} > [G:Z]={prof.center_index}")
    b_eq = cent == prof.center_index
    b_two = all(s == 2 for s in prof.zx_quotient_orders)
    b_special, note = _special_two_isoclinic(G, ctx)
    for m in (
        _biconditional("(b) |Cent|=[G:Z]", b_eq, "all |Z(x)/Z|=2", b_two),
        _biconditional("(b) |Cent|=[G:Z]", b_eq, "isoclinic to special 2-group", b_special),
    ):
        if m:
            fails.append(m)
    detail = (
        f"p={p} |Cent|={cent} [G:Z]={prof.center_index} G/Z=CpxCp:{_flag(a_quot)} "
        f"iso-{p}^3:{_flag(a_iso)} all-2:{_flag(b_two)} special-2-family:{_flag(b_special)} ({note})"
    )
    return _result(fails, detail)


def t7_formula_f1(G: Group, ctx: _Context, idx: int) -> tuple[str, str]:
    try:
        predicted = count_by_formula_f1(G)
    except NotApplicable as exc:
        raise _Unmet(exc.reason) from None
    cent = profile(G).cent_count
    fails = [] if predicted == cent else [f"formula {predicted} != |Cent| {cent}"]
    return _result(fails, f"|Cent|={cent} formula={predicted}")


def t8_exponent_p(G: Group, ctx: _Context, idx: int) -> tuple[str, str]:
    """For each prime p: all |Z(x)/Z|=p iff F-group, exp(G/Z)=p and the count formula."""
    _nonabelian(G)
    prof = profile(G)
    Q = quotient(G, prof.center)
    f = is_F_group(G)
    e = exponent(Q)
    fails, parts = [], []
    for p in sorted(factorize(prof.center_index)):
        lhs = all(s == p for s in prof.zx_quotient_orders)
        pk = prime_power(prof.center_index)
        formula = pk is not None and pk[0] == p and prof.cent_count == geometric_count(p, pk[1])
        rhs = f and e == p and formula
        m = _biconditional(f"all |Z(x)/Z|={p}", lhs, "F & exponent & count", rhs)
        if m:
            fails.append(m)
        parts.append(f"p={p}:{_flag(lhs)}/{_flag(rhs)}")
    return _result(fails, f"F={_flag(f)} exp(G/Z)={e} |Cent|={prof.cent_count} " + " ".join(parts))


def t9_p4_not_ca(G: Group, ctx: _Context, idx: int) -> tuple[str, str]:
    _nonabelian(G)
    prof = profile(G)
    pk = prime_power(prof.center_index)
    if pk is None or pk[1] != 4:
        raise _Unmet(f"[G:Z]={prof.center_index} is not p^4")
    if not is_F_group(G):
        raise _Unmet("not an F-group")
    if is_CA_group(G):
        raise _Unmet("G is a CA-group")
    p = pk[0]
    want = p**3 + p**2 + p + 2
    fails = [] if prof.cent_count == want else [f"|Cent|={prof.cent_count} != {want}"]
    return _result(fails, f"p={p} |Cent|={prof.cent_count} predicted={want}")


def _uniform_index(G: Group) -> int | None:
    if G.is_abelian:
        return None
    return conjugate_type(G).uniform


def t10_index_p(G: Group, ctx: _Context, idx: int) -> tuple[str, str]:
    n = _uniform_index(G)
    if n is None or not is_prime(n):
        raise _Unmet("conjugate type is not (p,1)")
    p = n
    prof = profile(G)
    Q = quotient(G, prof.center)
    fails = []
    pk = prime_power(Q.order)
    if pk is None or pk[0] != p or not is_elementary_abelian(Q, p):
        fails.append("(a) G/Z is not an elementary abelian p-group")
        k = None
    else:
        k = pk[1]
        want = geometric_count(p, k)
        zc = z_partition(G).zclass_count
        if not prof.cent_count == zc == want:
            fails.append(f"(b) |Cent|={prof.cent_count} z={zc} formula={want}")
    nac = prof.nacent_count
    m = _biconditional("(c) nacent=1", nac == 1, "G/Z=CpxCp", _is_cp_power(Q, p, 2))
    if m:
        fails.append(m)
    m = _biconditional("(d) nacent=|Cent|", nac == prof.cent_count, "|G/Z|>p^2", Q.order > p * p)
    if m:
        fails.append(m)
    return _result(fails, f"p={p} k={k} |Cent|={prof.cent_count} nacent={nac}")


def t11_extraspecial(G: Group, ctx: _Context, idx: int) -> tuple[str, str]:
    try:
        es = is_extraspecial(G)
    except NotPGroup:
        es = False
    if not es:
        raise _Unmet("not extraspecial")
    p, n = prime_power(G.order)
    a = (n - 1) // 2
    want = geometric_count(p, 2 * a)
    cent, zc = profile(G).cent_count, z_partition(G).zclass_count
    fails = [] if cent == zc == want else [f"|Cent|={cent} z={zc} formula={want}"]
    return _result(fails, f"p={p} a={a} |Cent|={cent} z={zc} formula={want}")


def t12_index_p2(G: Group, ctx: _Context, idx: int) -> tuple[str, str]:
    n = _uniform_index(G)
    pk = prime_power(n) if n else None
    if pk is None or pk[1] != 2:
        raise _Unmet("conjugate type is not (p^2,1)")
    p = pk[0]
    prof = profile(G)
    Q = quotient(G, prof.center)
    first = is_elementary_abelian(Q, p)
    second = (
        p % 2 == 1
        and not Q.is_abelian
        and Q.order == p**3
        and exponent(Q) == p
        and prof.cent_count == p * p + p + 2
    )
    fails = [] if first or second else ["neither alternative holds"]
    return _result(
        fails,
        f"p={p} |G/Z|={Q.order} G/Z abelian={_flag(Q.is_abelian)} exp={exponent(Q)} "
        f"|Cent|={prof.cent_count} alt1={_flag(first)} alt2={_flag(second)}",
    )


def t13_formula_pp1(G: Group, ctx: _Context, idx: int) -> tuple[str, str]:
    try:
        predicted, v = count_by_formula_pp1(G)
    except NotApplicable as exc:
        raise _Unmet(exc.reason) from None
    cent = profile(G).cent_count
    fails = [] if predicted == cent else [f"formula {predicted} != |Cent| {cent}"]
    return _result(fails, f"|Cent|={cent} formula={predicted} v={v}")


def t14_p2_plus_two(G: Group, ctx: _Context, idx: int) -> tuple[str, str]:
    """For |Cent| = p^2+2: index p^2 everywhere iff G/Z = Cp^4 and F, iff isoclinic to ultraspecial p^6."""
    _nonabelian(G)
    prof = profile(G)
    r = math.isqrt(prof.cent_count - 2)
    if r * r != prof.cent_count - 2 or not is_prime(r):
        raise _Unmet(f"|Cent|={prof.cent_count} is not p^2+2")
    p = r
    Q = quotient(G, prof.center)
    lhs = _uniform_index(G) == p * p
    rhs = _is_cp_power(Q, p, 4) and is_F_group(G)
    fails = []
    m = _biconditional(f"index {p * p} everywhere", lhs, "G/Z=Cp^4 and F", rhs)
    if m:
        fails.append(m)
    reps = ctx.ultraspecial_reps(p**6)
    if not reps:
        iso_note = f"no ultraspecial group of order {p ** 6} in corpus"
    else:
        j, rep = reps[0]
        res = ctx.isoclinic(idx, j) if j != idx else True
        if isinstance(res, SearchBudgetExceeded):
            return SKIPPED, f"budget exceeded against {rep.name}"
        iso = bool(res)
        m = _biconditional(f"index {p * p} everywhere", lhs, f"isoclinic to {rep.name}", iso)
        if m:
            fails.append(m)
        iso_note = f"iso-{rep.name}={_flag(iso)}"
    return _result(fails, f"p={p} uniform-p^2={_flag(lhs)} Cp^4&F={_flag(rhs)} {iso_note}")


def t15_six_centralizers(G: Group, ctx: _Context, idx: int) -> tuple[str, str]:
    prof = profile(G)
    if prof.center_index != 16:
        raise _Unmet(f"[G:Z]={prof.center_index} != 16")
    reps = ctx.ultraspecial_reps(64)
    if not reps:
        raise _Unmet("no ultraspecial group of order 64 in corpus")
    j, rep = reps[0]
    res = ctx.isoclinic(idx, j) if j != idx else True
    if isinstance(res, SearchBudgetExceeded):
        return SKIPPED, f"budget exceeded against {rep.name}"
    six = prof.cent_count == 6
    fail = _biconditional("|Cent|=6", six, f"isoclinic to {rep.name}", bool(res))
    return _result([fail] if fail else [], f"|Cent|={prof.cent_count} iso-{rep.name}={_flag(bool(res))}")


def _normal_sylow_orders(Q: Group) -> dict[int, int]:
    """Primes whose Sylow subgroup of ``Q`` is normal, with its order."""
    out = {}
    orders = Q.element_orders
    for p, e in factorize(Q.order).items():
        size = p**e
        count = int(np.sum(size % orders == 0))
        if count == size:
            out[p] = size
    return out


def t16_maximal_centralizers(G: Group, ctx: _Context, idx: int) -> tuple[str, str]:
    _nonabelian(G)
    if not all_centralizers_maximal(G):
        raise _Unmet("some centralizer is not maximal")
    prof = profile(G)
    Q = quotient(G, prof.center)
    zc = z_partition(G).zclass_count
    fails = []
    if nilpotency_class(G) is not None:
        pk = prime_power(Q.order)
        if pk is None:
            return VIOLATION, f"nilpotent but |G/Z|={Q.order} is not a prime power"
        p, k = pk
        want = geometric_count(p, k)
        if not prof.cent_count == zc == want:
            fails.append(f"|Cent|={prof.cent_count} z={zc} formula={want}")
        nac = prof.nacent_count
        m = _biconditional("nacent=1", nac == 1, "G/Z=CpxCp", _is_cp_power(Q, p, 2))
        if m:
            fails.append(m)
        m = _biconditional("nacent=|Cent|", nac == prof.cent_count, "|G/Z|>p^2", Q.order > p * p)
        if m:
            fails.append(m)
        return _result(fails, f"nilpotent p={p} k={k} |Cent|={prof.cent_count} z={zc} nacent={nac}")
    qcent = profile(Q).cent_count
    sylows = {p: s for p, s in _normal_sylow_orders(Q).items() if s < Q.order}
    if len(sylows) != 1:
        fails.append(f"G/Z has normal Sylow subgroups {sorted(sylows.items())}")
        pa = None
    else:
        (pa,) = sylows.values()
        if not prof.cent_count == qcent == pa + 2:
            fails.append(f"|Cent|={prof.cent_count} |Cent(G/Z)|={qcent} p^a+2={pa + 2}")
    ca = is_CA_group(G)
    if not ca:
        fails.append("not a CA-group")
    # the remark about prior work: an abelian G/Z in this branch is recorded, not asserted
    finding = " finding: G/Z abelian" if Q.is_abelian else ""
    return _result(
        fails,
        f"non-nilpotent |Cent|={prof.cent_count} |Cent(G/Z)|={qcent} p^a={pa} CA={_flag(ca)} "
        f"G/Z abelian={_flag(Q.is_abelian)}{finding}",
    )


def t17_max_zclasses(G: Group, ctx: _Context, idx: int) -> tuple[str, str]:
    try:
        res = check_max_zclass_characterization(G)
    except NotApplicable as exc:
        raise _Unmet(exc.reason) from None
    detail = (
        f"p={res.p} k={res.k} z={res.zclass_count} bound={res.bound} "
        f"G/Z el.ab.={_flag(res.elementary_quotient)} Z(x)=<x,Z>:{_flag(res.zx_generated)}"
    )
    if res.holds:
        return HOLDS, detail
    side = "count attains the bound but conditions fail" if res.lhs else "conditions hold but count differs"
    return VIOLATION, f"{side} | {detail}"


def t18_derived_order_p(G: Group, ctx: _Context, idx: int) -> tuple[str, str]:
    D = commutator_subgroup(G)
    if not is_prime(D.size):
        raise _Unmet(f"|G'|={D.size} is not prime")
    prof = profile(G)
    if not D <= prof.center:
        raise _Unmet("G' is not central")
    p = D.size
    try:
        match = isoclinic_to_extraspecial(G, budget=ctx.budget)
    except SearchBudgetExceeded:
        return SKIPPED, "budget exceeded in the extraspecial isoclinism search"
    if match is None:
        return VIOLATION, f"not isoclinic to any extraspecial {p}-group (|G/Z|={prof.center_index})"
    want = geometric_count(p, 2 * match.a)
    zc = z_partition(G).zclass_count
    fails = [] if prof.cent_count == zc == want else [f"|Cent|={prof.cent_count} z={zc} formula={want}"]
    return _result(fails, f"isoclinic to {p}^{2 * match.a + 1} p={p} a={match.a} |Cent|={prof.cent_count} z={zc}")


CHECKS: dict[str, Callable[[Group, _Context, int], tuple[str, str]]] = {
    "T1": t1_rank_one,
    "T2": t2_isoclinic_cent,
    "T3": t3_zmud,
    "T4": t4_cent_equals_index,
    "T5": t5_upper_bound_parts,
    "T6": t6_cent_bounds,
    "T7": t7_formula_f1,
    "T8": t8_exponent_p,
    "T9": t9_p4_not_ca,
    "T10": t10_index_p,
    "T11": t11_extraspecial,
    "T12": t12_index_p2,
    "T13": t13_formula_pp1,
    "T14": t14_p2_plus_two,
    "T15": t15_six_centralizers,
    "T16": t16_maximal_centralizers,
    "T17": t17_max_zclasses,
    "T18": t18_derived_order_p,
}


# ---------------------------------------------------------------------------
# manifest assertions


def _measure(G: Group, key: str) -> str:
    if key == "order":
        return str(G.order)
    if key == "cent_count":
        return str(profile(G).cent_count)
    if key == "zclass_count":
        return str(z_partition(G).zclass_count)
    if key == "conjugate_type":
        if G.is_abelian:
            return "abelian"
        ct = conjugate_type(G)
        return str(ct.uniform) if ct.uniform is not None else str(ct)
    if key == "center_order":
        return str(profile(G).center.size)
    if key == "derived_order":
        return str(commutator_subgroup(G).size)
    if key == "nacent_count":
        return str(profile(G).nacent_count)
    raise KeyError(key)


def check_assertions(G: Group, assertions: list[tuple[str, str]]) -> tuple[str, str]:
    fails, parts = [], []
    for key, want in assertions:
        try:
            got = _measure(G, key)
        except KeyError:
            fails.append(f"unknown assertion key {key!r}")
            continue
        parts.append(f"{key}={got}")
        if got != want:
            fails.append(f"{key}: expected {want}, measured {got}")
    return _result(fails, " ".join(parts))


# ---------------------------------------------------------------------------
# running


def parse_selection(text: str | None) -> list[str]:
    """``"T1,T4-T6"`` to an ordered list of ids; None selects everything."""
    if not text:
        return list(THEOREM_IDS) + [MANIFEST]
    out: list[str] = []
    for part in text.replace(" ", "").split(","):
        if not part:
            continue
        lo, dash, hi = part.partition("-")
        if dash:
            a, b = int(lo.lstrip("Tt")), int(hi.lstrip("Tt"))
            ids = [f"T{i}" for i in range(a, b + 1)]
        else:
            ids = [MANIFEST if part.upper() == MANIFEST else f"T{int(part.lstrip('Tt'))}"]
        for tid in ids:
            if tid != MANIFEST and tid not in CHECKS:
                raise ValueError(f"unknown theorem id {tid}")
            if tid not in out:
                out.append(tid)
    order = {tid: i for i, tid in enumerate(list(THEOREM_IDS) + [MANIFEST])}
    return sorted(out, key=order.__getitem__)


def run_check(tid: str, G: Group, ctx: _Context, idx: int) -> tuple[str, str]:
    try:
        return CHECKS[tid](G, ctx, idx)
    except _Unmet as exc:
        return HYPOTHESIS_NOT_MET, str(exc)
    except SearchBudgetExceeded as exc:
        return SKIPPED, str(exc)
    except CentraError as exc:
        return ERROR, f"{type(exc).__name__}: {exc}"


def run(
    corpus: list[CorpusItem],
    selection: Iterable[str] | None = None,
    *,
    budget: int = DEFAULT_BUDGET,
) -> list[TheoremOutcome]:
    """Every selected check on every corpus group, ordered by corpus then theorem id."""
    ids = parse_selection(",".join(selection)) if selection is not None else parse_selection(None)
    ctx = _Context(corpus, budget)
    out = []
    for idx, item in enumerate(corpus):
        if item.group is None:
            out.append(TheoremOutcome(LOAD, item.name, ERROR, item.error or "failed to load"))
            continue
        G = item.group
        for tid in ids:
            if tid == MANIFEST:
                if item.assertions:
                    status, detail = check_assertions(G, item.assertions)
                    out.append(TheoremOutcome(MANIFEST, item.name, status, detail))
                continue
            status, detail = run_check(tid, G, ctx, idx)
            out.append(TheoremOutcome(tid, item.name, status, detail))
    return out


def exit_status(outcomes: list[TheoremOutcome]) -> int:
    if any(o.status == ERROR for o in outcomes):
        return EXIT_LOAD_ERROR
    if any(o.status == VIOLATION for o in outcomes):
        return EXIT_VIOLATION
    return EXIT_OK


def summary(outcomes: list[TheoremOutcome]) -> dict[str, int]:
    counts = {s: 0 for s in (HOLDS, HYPOTHESIS_NOT_MET, VIOLATION, SKIPPED, ERROR)}
    for o in outcomes:
        counts[o.status] = counts.get(o.status, 0) + 1
    return counts


def render_records(outcomes: list[TheoremOutcome]) -> str:
    return "".join(o.record() + "\n" for o in outcomes)


def render_table(outcomes: list[TheoremOutcome]) -> str:
    headers = ("theorem", "group", "status", "detail")
    rows = [(o.theorem_id, o.group, o.status, o.detail) for o in outcomes]
    widths = [max([len(headers[i])] + [len(r[i]) for r in rows]) for i in range(3)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers[:3], widths)) + "  " + headers[3]]
    for r in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(r[:3], widths)) + "  " + r[3])
    counts = summary(outcomes)
    lines.append("")
    lines.append("  ".join(f"{k}={v}" for k, v in counts.items()))
    return "\n".join(lines) + "\n"


__all__ = [
    "CHECKS",
    "ERROR",
    "HOLDS",
    "HYPOTHESIS_NOT_MET",
    "SKIPPED",
    "THEOREM_IDS",
    "TheoremOutcome",
    "VIOLATION",
    "check_assertions",
    "exit_status",
    "parse_selection",
    "render_records",
    "summary",
    "render_table",
    "run",
]
