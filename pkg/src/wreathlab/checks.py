"""Named verification suites run by ``wreathlab verify``.

Each check reports pass, fail, or skip; a skip means a cap or budget stopped
the check before it could decide, which is never counted as a failure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .abelian import abelian_invariants, abelianization_invariants, dg, dg_brute, dg_p
from .catalog import catalog, dihedral_group, parse_group, quaternion_group, symmetric_group_3
from .config import limits
from .errors import BudgetExceeded, CapExceeded
from .functorial import (abelianization_projection, canonical_gmap_to_product, check_hat_laws,
                         commutator_kernel_matches, compose_homs, cyclic_refinement, descending_to_ascending,
                         induced_from_gmap, induction_step_epis, map_first_argument, map_second_argument,
                         semidirect_quotient)
from .group import cyclic_group, derived_length, is_nilpotent, prime_factors, subgroup, trivial_group
from .homomorphism import verify_homomorphism
from .invariants import (check_wl_eq_dg_characterization, cyclic_conductor, dl_tower_check, is_semiabelian,
                         nilpotent_tower, tower_dg, tower_dg_p, validate_semiabelian_chain, wl_bounds)
from .wreath import TowerSpec, build_tower, regular_wreath

SUITES = ("functorial", "towers", "invariants", "all")


@dataclass
class CheckResult:
    suite: str
    name: str
    status: str  # pass | fail | skip
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"suite": self.suite, "name": self.name, "status": self.status, "detail": self.detail}


def _run(suite: str, name: str, fn: Callable[[], dict]) -> CheckResult:
    try:
        detail = fn()
    except (CapExceeded, BudgetExceeded) as exc:
        return CheckResult(suite, name, "skip", {"reason": str(exc)})
    ok = bool(detail.pop("ok"))
    return CheckResult(suite, name, "pass" if ok else "fail", detail)


def _epi_summary(h) -> dict:
    return {"domain_order": h.domain.order, "codomain_order": h.codomain.order,
            "verified": h.verified, "surjective": h.surjective,
            "kernel_order": h.kernel_order if h.verified else None}


# -- functorial ------------------------------------------------------------------

def functorial_checks(seed: int) -> list[tuple[str, Callable[[], dict]]]:
    C2, C3, C4 = cyclic_group(2), cyclic_group(3), cyclic_group(4)

    def gmap():
        W, phi = canonical_gmap_to_product(C2, C2)
        sizes = sorted({len(f) for f in phi.fibers()})
        return {"ok": phi.is_equivariant() and phi.is_surjective and sizes == [2],
                "source_points": phi.source.degree, "target_points": phi.target.degree, "fiber_sizes": sizes}

    def induced():
        _, phi = canonical_gmap_to_product(C2, C2)
        h = induced_from_gmap(C2, phi)
        d = _epi_summary(h)
        d["ok"] = h.surjective and h.domain.order == 2048 and h.codomain.order == 128 and h.kernel_order == 16
        return d

    def hat_exhaustive():
        _, phi = canonical_gmap_to_product(C2, C2)
        r = check_hat_laws(phi, C2)
        r["ok"] = r["exhaustive"] and r["multiplicative_failures"] == 0 and r["equivariance_failures"] == 0
        return r

    def hat_sampled():
        _, phi = canonical_gmap_to_product(C2, C2)
        r = check_hat_laws(phi, C3, samples=1000, seed=seed)
        r["ok"] = (not r["exhaustive"] and r["multiplicative_cases"] >= 1000
                   and r["multiplicative_failures"] == 0 and r["equivariance_failures"] == 0)
        return r

    def first_arg():
        q = verify_homomorphism(C4, C2, C2.generators)
        h = map_first_argument(q, C2)
        d = _epi_summary(h)
        d["ok"] = h.surjective and (h.domain.order, h.codomain.order, h.kernel_order) == (32, 8, 4)
        return d

    def second_arg():
        q = verify_homomorphism(C4, C2, C2.generators)
        h = map_second_argument(C2, q)
        d = _epi_summary(h)
        d["ok"] = h.surjective and (h.domain.order, h.codomain.order, h.kernel_order) == (64, 8, 8)
        return d

    def chain():
        a, b = induction_step_epis(C2, C2, C2)
        c = compose_homs(a, b)
        dgs = [dg_p(a.domain, 2), dg_p(a.codomain, 2), dg_p(b.codomain, 2)]
        orders = [a.domain.order, a.codomain.order, b.codomain.order]
        return {"ok": a.surjective and b.surjective and c.surjective and orders == [2048, 128, 32]
                and dgs == [3, 3, 3] and c.kernel_order == 64, "orders": orders, "dg2": dgs,
                "composite_kernel": c.kernel_order}

    def chain_trivial_top():
        a, b = induction_step_epis(C2, C2, trivial_group())
        orders = [a.domain.order, a.codomain.order, b.codomain.order]
        return {"ok": a.surjective and b.surjective and orders == [8, 8, 4], "orders": orders}

    def desc_asc():
        h = descending_to_ascending([C2, C2, C2])
        d = _epi_summary(h)
        d["dg2"] = [dg_p(h.domain, 2), dg_p(h.codomain, 2)]
        d["ok"] = h.surjective and (h.domain.order, h.codomain.order) == (2048, 128) and d["dg2"] == [3, 3]
        return d

    def ab_proj(H, G, expected_kernel):
        def run():
            h = abelianization_projection(H, G)
            img = abelian_invariants(h.codomain)
            merged = abelianization_invariants(H) + abelianization_invariants(G)
            return {"ok": h.surjective and commutator_kernel_matches(h) and img == merged
                    and h.kernel_order == expected_kernel, "kernel_order": h.kernel_order,
                    "image_invariants": list(img.factors)}
        return run

    def semidirect(G, a, hgen, expected):
        def run():
            A, H = subgroup(G, [a]), subgroup(G, [hgen])
            h = semidirect_quotient(G, A, H)
            d = _epi_summary(h)
            d["ok"] = h.surjective and (h.domain.order, h.kernel_order) == expected
            return d
        return run

    def refinement(lists, expected_spec):
        def run():
            spec, h = cyclic_refinement(lists)
            primes = prime_factors(h.domain.order)
            same = all(dg_p(h.domain, p) == dg_p(h.codomain, p) for p in primes)
            return {"ok": h.surjective and same and spec.orders == expected_spec, "spec": spec.expr(),
                    "domain_order": h.domain.order, "codomain_order": h.codomain.order}
        return run

    S3 = symmetric_group_3()
    D4 = dihedral_group(4)
    return [
        ("canonical G-map B wr C -> B x C (B=C=C2)", gmap),
        ("induced map over the canonical G-map (A=C2)", induced),
        ("hat laws, exhaustive (A=C2, order 2048)", hat_exhaustive),
        ("hat laws, sampled (A=C3, order 52488)", hat_sampled),
        ("first-argument map C4->C2 over C2", first_arg),
        ("second-argument map C2 over C4->C2", second_arg),
        ("associativity and collapse chain (C2,C2,C2)", chain),
        ("associativity and collapse chain with trivial top", chain_trivial_top),
        ("descending to ascending [2,2,2]", desc_asc),
        ("abelianization projection (C2,C2)", ab_proj(C2, C2, 2)),
        ("abelianization projection (C4,C2)", ab_proj(C4, C2, 4)),
        ("abelianization projection (C3,C2)", ab_proj(C3, C2, 3)),
        ("abelianization projection (S3,C2)", ab_proj(S3, C2, 18)),
        ("semidirect quotient C3 wr C2 -> S3", semidirect(S3, bytes([1, 2, 0]), bytes([1, 0, 2]), (18, 3))),
        ("semidirect quotient C4 wr C2 -> D4", semidirect(D4, D4.generators[0], D4.generators[1], (32, 4))),
        ("cyclic refinement [C2xC2]", refinement([[2, 2]], (2, 2))),
        ("cyclic refinement [C2xC2, C2]", refinement([[2, 2], [2]], (2, 2, 2))),
    ]


# -- towers ------------------------------------------------------------------------

TOWER_SPECS = ((2,), (3,), (2, 2), (3, 2), (2, 3), (4, 2), (2, 4), (3, 3), (2, 2, 2))


def tower_checks(seed: int) -> list[tuple[str, Callable[[], dict]]]:
    out = []
    for orders in TOWER_SPECS:
        out.append((f"derived length of {list(orders)}", lambda o=orders: dl_tower_check(o)))

    def order_formula(orders, b):
        def run():
            spec = TowerSpec(orders, b)
            wg = build_tower(spec)
            n = len(wg.carrier.elements)
            return {"ok": n == spec.projected_order() and len(wg.carrier.generators) == len(orders),
                    "order": n}
        return run

    def dg_additivity(orders, b):
        def run():
            G = build_tower(TowerSpec(orders, b)).carrier
            got = {p: dg_p(G, p) for p in prime_factors(G.order)}
            want = {p: tower_dg_p(orders, p) for p in got}
            return {"ok": got == want and dg(G) == tower_dg(orders), "dg_p": got}
        return run

    def wl_tower(orders):
        def run():
            cert = wl_bounds(build_tower(TowerSpec(orders, "desc")).carrier)
            return {"ok": cert.exact == len(orders), "exact": cert.exact}
        return run

    for orders in TOWER_SPECS:
        for b in ("desc", "asc"):
            if len(orders) > 1 or b == "desc":
                out.append((f"order formula {b} {list(orders)}", order_formula(orders, b)))
                out.append((f"dg_p additivity {b} {list(orders)}", dg_additivity(orders, b)))
        out.append((f"wreath length of desc {list(orders)}", wl_tower(orders)))
    return out


# -- invariants ------------------------------------------------------------------------

def invariants_checks(seed: int) -> list[tuple[str, Callable[[], dict]]]:
    def dg_vs_brute():
        rows = []
        for label, G in catalog(limits().brute_cap):
            rows.append((label, dg(G) if not G.is_trivial else 0, dg_brute(G)))
        bad = [r for r in rows if r[1] != r[2]]
        return {"ok": not bad and len(rows) >= 25, "groups": len(rows), "mismatches": bad}

    def dg_p_wreath():
        pairs = [("C2", "C2"), ("C3", "C2"), ("C2", "C3"), ("C4", "C2"), ("S3", "C2"), ("C2", "S3"),
                 ("C2*C2", "C2"), ("C6", "C2")]
        bad = []
        for h, g in pairs:
            H, G = parse_group(h), parse_group(g)
            W = regular_wreath(H, G).carrier
            for p in prime_factors(W.order):
                if dg_p(W, p) != dg_p(H, p) + dg_p(G, p):
                    bad.append((h, g, p))
        return {"ok": not bad, "pairs": len(pairs), "failures": bad}

    def wl_facts():
        s3, d4, q8 = wl_bounds(symmetric_group_3()), wl_bounds(dihedral_group(4)), wl_bounds(quaternion_group())
        cyc = {n: wl_bounds(cyclic_group(n)).exact for n in range(2, 13)}
        ok = ((s3.exact, s3.dg_value, s3.refuted_up_to) == (2, 1, 1) and (d4.exact, d4.dg_value) == (2, 2)
              and q8.exact == 2 and all(v == 1 for v in cyc.values()))
        return {"ok": ok, "S3": s3.exact, "D4": d4.exact, "Q8": q8.exact, "cyclic": cyc}

    def characterization():
        agree, disagree = 0, []
        for label, G in catalog(64):
            if G.is_trivial:
                continue
            cert = wl_bounds(G)
            ch = check_wl_eq_dg_characterization(G)
            if cert.exact is None:
                disagree.append((label, "wl not exact"))
            elif (cert.exact == cert.dg_value) == ch.has_witness:
                agree += 1
            else:
                disagree.append((label, cert.exact, cert.dg_value, ch.has_witness))
        return {"ok": not disagree, "agreeing": agree, "problems": disagree}

    def semiabelian():
        names = ["S3", "D4", "D5", "D6", "Q8", "A4", "wr(C2,C2)", "wr(C3,C2)", "C2*C2", "C12", "C2*C2*C2"]
        bad = []
        for n in names:
            cert = is_semiabelian(parse_group(n))
            if not cert.verdict or validate_semiabelian_chain(cert):
                bad.append(n)
        return {"ok": not bad, "groups": len(names), "failures": bad}

    def nilpotent():
        bad, n = [], 0
        for label, G in catalog(64):
            if G.is_trivial or not is_nilpotent(G):
                continue
            n += 1
            spec, epi = nilpotent_tower(G)
            if not epi.verified or spec.length != dg(G):
                bad.append(label)
        return {"ok": not bad, "groups": n, "failures": bad}

    def conductor():
        got = {N: cyclic_conductor(N)["p"] for N in (3, 4, 5, 8, 12)}
        return {"ok": got == {3: 7, 4: 5, 5: 11, 8: 17, 12: 13}, "primes": got}

    return [
        ("dg agrees with brute force on the catalog", dg_vs_brute),
        ("dg_p additivity over wreath products", dg_p_wreath),
        ("wreath length of S3, D4, Q8, C2..C12", wl_facts),
        ("wl = dg characterization across the catalog", characterization),
        ("semiabelian chains", semiabelian),
        ("nilpotent tower construction", nilpotent),
        ("cyclic conductor primes", conductor),
    ]


def run_suite(name: str, seed: int = 0) -> list[CheckResult]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    makers = {"functorial": functorial_checks, "towers": tower_checks, "invariants": invariants_checks}
    names = list(makers) if name == "all" else [name]
    out = []
    for suite in names:
        for check_name, fn in makers[suite](seed):
            out.append(_run(suite, check_name, fn))
    return out
