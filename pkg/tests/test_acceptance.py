"""Acceptance criteria, one test each; every test prints a PASS/FAIL line with its runtime."""

from __future__ import annotations

import json
import subprocess
import sys
import time
from contextlib import contextmanager

import pytest

import oracles
from centra.catalog import data_path, load_corpus, load_group_file
from centra.centralizers import conjugate_type, count_by_formula_pp1, is_CA_group, profile
from centra.classify import all_centralizers_maximal, classify, implication_failures, is_special_p
from centra.constructors import from_spec
from centra.group import (
    abelian_invariants,
    commutator_subgroup,
    is_abelian_subgroup,
    is_elementary_abelian,
    normal_subgroups_of_prime_index,
    quotient,
)
from centra.harness import HOLDS, VIOLATION, run
from centra.isoclinism import are_isoclinic
from centra.numbers import geometric_count
from centra.zclasses import z_partition


class Criterion:
    def __init__(self, number: int, limit: float | None):
        self.number = number
        self.limit = limit
        self.failures: list[str] = []
        self.notes: list[str] = []

    def check(self, ok: bool, what: str) -> None:
        (self.notes if ok else self.failures).append(what)


@contextmanager
def criterion(capsys, number: int, limit: float | None = None):
    c = Criterion(number, limit)
    start = time.perf_counter()
    yield c
    elapsed = time.perf_counter() - start
    if limit is not None and elapsed >= limit:
        c.failures.append(f"runtime {elapsed:.2f}s >= {limit}s")
    timing = f"{elapsed:.2f}s" + (f" < {limit:g}s" if limit is not None and elapsed < limit else "")
    status = "FAIL" if c.failures else "PASS"
    body = "; ".join(c.failures) if c.failures else f"{len(c.notes)} checks"
    with capsys.disabled():
        print(f"\n{status} criterion {number}: {body} [{timing}]")
    assert not c.failures, "; ".join(c.failures)


def zx_all_two(G) -> bool:
    return all(s == 2 for s in profile(G).zx_quotient_orders)


def test_criterion_1_d8(capsys):
    with criterion(capsys, 1, 1.0) as c:
        G = from_spec("dihedral:n=8")
        prof = profile(G)
        c.check(prof.cent_count == 4 == prof.center_index, f"cent={prof.cent_count} index={prof.center_index}")
        c.check(z_partition(G).zclass_count == 4, "zclass_count = 4")
        c.check(zx_all_two(G), "every |Z(x)/Z| = 2")
        c.check((prof.cent_count == prof.center_index) == zx_all_two(G), "biconditional both sides agree")
        (o,) = run(load_corpus(_manifest("dihedral:n=8")), ["T4"])
        c.check(o.status == HOLDS, f"T4 {o.status}")


def test_criterion_2_q8(capsys):
    with criterion(capsys, 2, 1.0) as c:
        D8, Q8 = from_spec("dihedral:n=8"), from_spec("quaternion8")
        c.check(profile(Q8).cent_count == 4 and z_partition(Q8).zclass_count == 4, "Q8 counts 4/4")
        c.check(zx_all_two(Q8), "Q8 every |Z(x)/Z| = 2")
        w = are_isoclinic(D8, Q8)
        c.check(bool(w), "D8 and Q8 isoclinic")
        c.check(profile(D8).cent_count == profile(Q8).cent_count, "cent counts equal")


def test_criterion_3_extraspecial_27(capsys):
    with criterion(capsys, 3, 1.0) as c:
        for variant in "+-":
            G = from_spec(f"extraspecial:p=3,a=1,variant={variant}")
            prof = profile(G)
            z = z_partition(G).zclass_count
            want = geometric_count(3, 2, 1)
            c.check(want == 5 and prof.cent_count == z == want, f"{variant}: cent={prof.cent_count} z={z}")
            c.check(prof.cent_count == 3 + 2, f"{variant}: equality p+2")
            Q = quotient(G, prof.center)
            c.check(abelian_invariants(Q) == (3, 3), f"{variant}: G/Z = {abelian_invariants(Q)}")


def test_criterion_4_extraspecial_32(capsys):
    with criterion(capsys, 4, 5.0) as c:
        for variant in "+-":
            G = from_spec(f"extraspecial:p=2,a=2,variant={variant}")
            prof = profile(G)
            z = z_partition(G).zclass_count
            want = geometric_count(2, 4, 1)
            c.check(want == 16 == prof.center_index, f"{variant}: formula {want}")
            c.check(prof.cent_count == z == want, f"{variant}: cent={prof.cent_count} z={z}")
            c.check(zx_all_two(G), f"{variant}: all |Z(x)/Z| = 2")
            c.check(is_special_p(G) and bool(are_isoclinic(G, G)), f"{variant}: isoclinic to a special 2-group")
        plus = from_spec("extraspecial:p=2,a=2,variant=+")
        minus = from_spec("extraspecial:p=2,a=2,variant=-")
        c.check(bool(are_isoclinic(plus, minus)), "variants mutually isoclinic")


def test_criterion_5_heisenberg_and_243(capsys):
    with criterion(capsys, 5, 30.0) as c:
        H = from_spec("heisenberg:p=3")
        prof = profile(H)
        ct = conjugate_type(H)
        c.check(ct.uniform == 3, f"conjugate type {ct}")
        c.check(abelian_invariants(quotient(H, prof.center)) == (3, 3), "G/Z = C3 x C3")
        c.check(prof.cent_count == 5 == z_partition(H).zclass_count, "counts 5/5")
        c.check(prof.nacent_count == 1, f"nacent={prof.nacent_count}")
        for variant in "+-":
            E = from_spec(f"extraspecial:p=3,a=2,variant={variant}")
            pe = profile(E)
            c.check(pe.center_index == 81 > 9, f"{variant}: |G/Z| = {pe.center_index}")
            c.check(pe.nacent_count == pe.cent_count == 41, f"{variant}: nacent={pe.nacent_count} cent={pe.cent_count}")
            c.check(z_partition(E).zclass_count == 41, f"{variant}: zclass 41")


def test_criterion_6_s3_a4(capsys):
    with criterion(capsys, 6, 1.0) as c:
        S3 = from_spec("symmetric:k=3")
        prof = profile(S3)
        c.check(prof.cent_count == 5 and z_partition(S3).zclass_count == 3, "S3 counts 5/3")
        c.check(all_centralizers_maximal(S3), "S3 all centralizers maximal")
        c.check(prof.cent_count == 3 + 2, "non-nilpotent branch p^a + 2 with p^a = 3")
        c.check(is_CA_group(S3), "S3 CA-group")
        A4 = from_spec("alternating4")
        c.check(profile(A4).cent_count == 6 and z_partition(A4).zclass_count == 3, "A4 counts 6/3")
        (o,) = run(load_corpus(_manifest("symmetric:k=3")), ["T16"])
        c.check(o.status == HOLDS and "p^a=3" in o.detail, f"T16 {o.status}")


def test_criterion_7_sg_64_73(capsys):
    with criterion(capsys, 7, 5.0) as c:
        G = load_group_file(data_path("sg_64_73.permgrp"))
        prof = profile(G)
        Q = quotient(G, prof.center)
        c.check(G.order == 64, f"order {G.order}")
        c.check(Q.order == 8 and is_elementary_abelian(Q), f"G/Z {abelian_invariants(Q)}")
        c.check(conjugate_type(G).uniform == 4, f"conjugate type {conjugate_type(G)}")
        count, v = count_by_formula_pp1(G)
        measured_v = sum(1 for s in prof.zx_quotient_orders if s == 4)
        c.check(v == measured_v and count == prof.cent_count, f"formula {count} v={v} cent={prof.cent_count}")


def test_criterion_8_zmud(capsys, corpus):
    with criterion(capsys, 8, None) as c:
        applicable = []
        for item in corpus:
            G = item.group
            if G.is_abelian:
                continue
            primes = {p for p, N in normal_subgroups_of_prime_index(G) if is_abelian_subgroup(G, N)}
            if not primes:
                continue
            applicable.append(item.name)
            z, d = profile(G).center.size, commutator_subgroup(G).size
            for p in primes:
                c.check(G.order == p * z * d, f"{item.name}: {G.order} vs {p}*{z}*{d}")
        for required in ("dihedral:n=8", "quaternion8", "symmetric:k=3", "extraspecial:p=3,a=1,variant=+"):
            c.check(required in applicable, f"{required} applicable")
        outcomes = {o.group: o.status for o in run(corpus, ["T3"])}
        c.check(all(outcomes[n] == HOLDS for n in applicable), "harness T3 HOLDS on all applicable groups")
        H = from_spec("heisenberg:p=3")
        (o,) = run(load_corpus(_manifest("heisenberg:p=3")), ["T3"])
        c.check(o.status == HOLDS and H.order == 27, "Heisenberg 3 T3 HOLDS")


def test_criterion_9_full_verify(capsys):
    with criterion(capsys, 9, 300.0) as c:
        cmd = [sys.executable, "-m", "centra", "verify", "--corpus", "builtin", "--format", "records"]
        first = subprocess.run(cmd, capture_output=True, text=True)
        second = subprocess.run(cmd, capture_output=True, text=True)
        c.check(first.stdout == second.stdout and first.stdout, "byte-identical reports")
        rows = [json.loads(line) for line in first.stdout.splitlines()]
        groups = {r["group"] for r in rows}
        c.check(len(groups) >= 30, f"{len(groups)} groups")
        c.check({r["theorem_id"] for r in rows} >= {f"T{i}" for i in range(1, 19)}, "all of T1-T18 ran")
        violations = sorted(f"{r['theorem_id']}/{r['group']}" for r in rows if r["status"] == VIOLATION)
        c.check(not violations, f"{len(violations)} VIOLATION outcomes: {', '.join(violations)}")


def test_criterion_10_oracle_equivalence(capsys, corpus):
    with criterion(capsys, 10, None) as c:
        for item in corpus:
            G = item.group
            t = oracles.table_of(G)
            fam = oracles.centralizer_family(t)
            prof = profile(G)
            ok = all(set(prof.centralizer_of(x).members.tolist()) == fam[x] for x in range(G.order))
            c.check(ok and prof.cent_count == len(set(fam.values())), f"{item.name}: profile")
            part = z_partition(G)
            c.check({frozenset(k.members) for k in part.classes} == oracles.z_classes(t), f"{item.name}: partition")
            c.check(
                all(k.size == k.normalizer_index * k.fprime_size for k in part.classes), f"{item.name}: size formula"
            )
            rep = classify(G)
            c.check(not implication_failures(G, rep), f"{item.name}: implication chain")


def _manifest(spec: str):
    from centra.catalog import parse_manifest

    return parse_manifest(f"construct {spec}\n")
