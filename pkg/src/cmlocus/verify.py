"""Batch verification suites over partition families.

Each suite sweeps a family of partitions, checks one cluster of claims at
pinned tolerances, and reports pass/fail counts with messages for every
failure.  The numeric per-partition pipeline is factored into
`partition_report` so the command line, the cache and the test suite all
run exactly the same computation.
"""

from __future__ import annotations

import hashlib
import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import characters as ch
from . import moser
from .exact_poly import (
    HERMITE_SPEC,
    schur_specialized,
    squarefree_certificate,
    wronskian_for_partition,
)
from .errors import CMLocusError
from .locus import DEFAULT_CONFIG, NumericsConfig, pole_structure
from .partitions import Partition, format_partition, partitions_up_to
from .wilson import build_wilson_data, charpoly, verify_relations

# acceptance tolerances, fixed once
LOCUS_RESIDUAL_BOUND = 1e-9
SPEC_M_RESIDUAL_BOUND = 1e-6
SPEC_K_RESIDUAL_BOUND = 1e-5
ONE_ROW_IDENTITY_BOUND = 1e-10
COMMUTATOR_FLOOR = 1e-3
NO_REAL_ROOT_FLOOR = 1e-8


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    messages: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def check(self, condition: bool, message: str):
        if condition:
            self.passed += 1
        else:
            self.failed += 1
            self.messages.append(message)


def gated_family(max_size: int = 10, doubled_size: int | None = None) -> list[Partition]:
    """Rows, columns, doubled partitions and every squarefree-Wronskian
    partition up to the size bounds, deduplicated."""
    if doubled_size is None:
        doubled_size = max(16, max_size)
    seen = {}
    for n in range(1, max_size + 1):
        seen[(n,)] = Partition((n,))
        seen[(1,) * n] = Partition((1,) * n)
    for lam in partitions_up_to(doubled_size // 2):
        doubled = lam.doubled()
        seen[doubled.parts] = doubled
    for lam in partitions_up_to(max_size):
        is_sf, _ = squarefree_certificate(wronskian_for_partition(lam))
        if is_sf:
            seen[lam.parts] = lam
    return [seen[key] for key in sorted(seen)]


def character_digest(lam: Partition) -> str:
    blob = json.dumps(ch.character(lam).to_json_dict(), sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def partition_report(
    lam: Partition,
    cfg: NumericsConfig = DEFAULT_CONFIG,
    integer_tol: float = moser.INTEGER_TOL,
) -> dict:
    """Full numeric pipeline for one partition, as a JSON-able record."""
    w = wronskian_for_partition(lam)
    if w.degree >= 1:
        is_sf, profile = squarefree_certificate(w)
    else:
        is_sf, profile = True, []
    rec = {
        "partition": format_partition(lam),
        "degree": w.degree if w.degree >= 0 else 0,
        "squarefree": is_sf,
        "multiplicity_profile": profile,
        "character_digest": character_digest(lam),
        "roots": [],
        "locus_residual": None,
        "spec_m": None,
        "spec_k": None,
        "roundtrip_ok": None,
        "spec_m_matches_contents": None,
        "spec_k_matches_hook_squares": None,
        "error": None,
    }
    try:
        config = pole_structure(lam, cfg)
        rec["roots"] = [
            {"re": z.real, "im": z.imag, "multiplicity": m}
            for z, m in zip(config.roots, config.multiplicities)
        ]
        rec["locus_residual"] = config.locus_residual
        if is_sf and lam.size > 0:
            recovered, m_report = moser.invert_wronskian_map(
                config.roots, cfg, integer_tol
            )
            rec["spec_m"] = m_report.to_json()
            rec["roundtrip_ok"] = recovered == lam
            rec["spec_m_matches_contents"] = Counter(m_report.rounded) == lam.contents()
            k_report = moser.hessian_spectrum_check(lam, cfg, integer_tol)
            rec["spec_k"] = k_report.to_json()
            hook_squares = Counter()
            for h, mult in lam.hooks().items():
                hook_squares[h * h] += mult
            rec["spec_k_matches_hook_squares"] = Counter(k_report.rounded) == hook_squares
    except CMLocusError as exc:
        rec["error"] = f"{type(exc).__name__}: {exc}"
    return rec


def _report_worker(args):
    parts, cfg_fields, integer_tol = args
    cfg = NumericsConfig(**cfg_fields)
    return partition_report(Partition(parts), cfg, integer_tol)


def compute_reports(
    family,
    cfg: NumericsConfig = DEFAULT_CONFIG,
    integer_tol: float = moser.INTEGER_TOL,
    jobs: int = 1,
) -> list[dict]:
    """partition_report over a family, optionally across worker processes."""
    if jobs <= 1:
        return [partition_report(lam, cfg, integer_tol) for lam in family]
    cfg_fields = {
        "root_tol": cfg.root_tol,
        "newton_tol": cfg.newton_tol,
        "max_iter": cfg.max_iter,
        "cluster_tol": cfg.cluster_tol,
        "digits": cfg.digits,
    }
    args = [(lam.parts, cfg_fields, integer_tol) for lam in family]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_report_worker, args))


# -- suites -------------------------------------------------------------


def suite_wronskian_props(max_size: int = 12, **_) -> SuiteResult:
    from .exact_poly import parity_conjugation_checks

    result = SuiteResult("wronskian-props")
    for lam in partitions_up_to(max_size, include_empty=True):
        w = wronskian_for_partition(lam)
        result.check(w.degree == lam.size, f"{lam}: degree {w.degree} != {lam.size}")
        parity_ok, conj_ok = parity_conjugation_checks(lam)
        result.check(parity_ok, f"{lam}: reflection symmetry broken")
        result.check(conj_ok, f"{lam}: conjugation symmetry broken")
    is_sf, profile = squarefree_certificate(wronskian_for_partition(Partition((2, 1))))
    result.check(
        not is_sf and profile == [3], f"(2,1) multiplicity profile was {profile}"
    )
    cfg21 = pole_structure(Partition((2, 1)))
    result.check(
        cfg21.multiplicities == [2] and abs(cfg21.roots[0]) < 1e-10,
        "(2,1) pole parameter is not m=2 at the origin",
    )
    return result


def suite_schur_bridge(max_size: int = 10, **_) -> SuiteResult:
    result = SuiteResult("schur-bridge")
    for lam in partitions_up_to(max_size, include_empty=True):
        w = wronskian_for_partition(lam)
        s = schur_specialized(lam, HERMITE_SPEC)
        ok = w.degree == s.degree and (
            w.degree < 0 or w.monic() == s.monic()
        )
        result.check(ok, f"{lam}: Wronskian and specialized Schur differ")
    return result


def suite_wilson_relations(max_size: int = 8, **_) -> SuiteResult:
    result = SuiteResult("wilson-relations")
    for lam in partitions_up_to(max_size):
        report = verify_relations(build_wilson_data(lam))
        for name, ok in report.items():
            result.check(ok, f"{lam}: relation {name} failed")
        diag_ok = Counter(
            int(c) for c in build_wilson_data(lam).M.diagonal()
        ) == lam.contents()
        result.check(diag_ok, f"{lam}: grading diagonal is not the content multiset")
    return result


def suite_charpoly(max_size: int = 8, **_) -> SuiteResult:
    result = SuiteResult("charpoly")
    constants = {}
    for lam in partitions_up_to(max_size):
        w = wronskian_for_partition(lam)
        p = charpoly(build_wilson_data(lam).Q)
        result.check(
            p == w.monic(), f"{lam}: char poly differs from monic Wronskian"
        )
        constants[format_partition(lam)] = str(1 / w.leading)
    result.data["normalizing_constants"] = constants
    return result


def suite_characters(max_size: int = 14, **_) -> SuiteResult:
    result = SuiteResult("characters")
    for lam in partitions_up_to(max_size, include_empty=True):
        chi = ch.character(lam)
        ok = chi == ch.character_from_legs(lam) and chi == ch.character_from_hooks(lam)
        result.check(ok, f"{lam}: character routes disagree")
        structural = (
            chi.is_symmetric()
            and chi.at_one() == 2 * lam.size
            and chi.coefficient(0) == 0
            and ch.character(lam.conjugate()) == chi
        )
        result.check(structural, f"{lam}: character structure broken")
    for a in range(13):
        for l in range(13):
            hook = Partition((a + 1,) + (1,) * l)
            result.check(
                ch.one_hook_character(a, l) == ch.character(hook),
                f"one-hook ({a}|{l}) closed form mismatch",
            )
    for n in range(1, 21):
        weights = ch.weights_from_character(ch.character(Partition((n,))))
        result.check(
            weights == Counter({k: 1 for k in range(1, n + 1)}),
            f"row ({n}): weights are not 1..n",
        )
    for lam in partitions_up_to(min(max_size, 10)):
        freqs = ch.spin_frequencies([lam], [0])
        expected = Counter()
        for h, mult in lam.hooks().items():
            expected[h] += mult
            expected[-h] += mult
        from fractions import Fraction

        result.check(
            freqs == Counter({Fraction(v): m for v, m in expected.items()}),
            f"{lam}: spin frequencies do not collapse to hook lengths",
        )
    return result


def suite_moser_numeric(
    max_size: int = 10,
    cfg: NumericsConfig = DEFAULT_CONFIG,
    jobs: int = 1,
    reports: list | None = None,
    doubled_size: int | None = None,
    **_,
) -> SuiteResult:
    result = SuiteResult("moser-numeric")
    if reports is None:
        reports = compute_reports(gated_family(max_size, doubled_size), cfg, jobs=jobs)
    for rec in reports:
        name = rec["partition"]
        if rec["error"]:
            result.check(False, f"{name}: {rec['error']}")
            continue
        if not rec["squarefree"]:
            continue
        result.check(
            rec["locus_residual"] is not None
            and rec["locus_residual"] <= LOCUS_RESIDUAL_BOUND,
            f"{name}: locus residual {rec['locus_residual']}",
        )
        result.check(
            bool(rec["spec_m"]) and rec["spec_m"]["residual"] <= SPEC_M_RESIDUAL_BOUND,
            f"{name}: spectrum rounding residual too large",
        )
        result.check(
            bool(rec["spec_m_matches_contents"]),
            f"{name}: spectrum does not round to the content multiset",
        )
        result.check(bool(rec["roundtrip_ok"]), f"{name}: root -> partition round trip failed")
    return result


def suite_hessian_numeric(
    max_size: int = 10,
    cfg: NumericsConfig = DEFAULT_CONFIG,
    jobs: int = 1,
    reports: list | None = None,
    doubled_size: int | None = None,
    **_,
) -> SuiteResult:
    result = SuiteResult("hessian-numeric")
    if reports is None:
        reports = compute_reports(gated_family(max_size, doubled_size), cfg, jobs=jobs)
    for rec in reports:
        name = rec["partition"]
        if rec["error"]:
            result.check(False, f"{name}: {rec['error']}")
            continue
        if not rec["squarefree"]:
            continue
        result.check(
            bool(rec["spec_k"]) and rec["spec_k"]["residual"] <= SPEC_K_RESIDUAL_BOUND,
            f"{name}: Hessian rounding residual too large",
        )
        result.check(
            bool(rec["spec_k_matches_hook_squares"]),
            f"{name}: Hessian spectrum is not the squared hooks",
        )
    for n in range(1, min(max_size, 10) + 1):
        gap = moser.one_row_identity_check(n, cfg)
        result.check(
            gap <= ONE_ROW_IDENTITY_BOUND, f"row ({n}): K != (M+I)^2, gap {gap:.2e}"
        )
    commutator = moser.hessian_moser_commutator(Partition((3, 1)), cfg)
    result.check(
        commutator > COMMUTATOR_FLOOR,
        f"(3,1): [K, M] unexpectedly small ({commutator:.2e})",
    )
    return result


SUITES = {
    "wronskian-props": suite_wronskian_props,
    "schur-bridge": suite_schur_bridge,
    "wilson-relations": suite_wilson_relations,
    "charpoly": suite_charpoly,
    "characters": suite_characters,
    "moser-numeric": suite_moser_numeric,
    "hessian-numeric": suite_hessian_numeric,
}

DEFAULT_SUITE_SIZES = {
    "wronskian-props": 12,
    "schur-bridge": 10,
    "wilson-relations": 8,
    "charpoly": 8,
    "characters": 14,
    "moser-numeric": 10,
    "hessian-numeric": 10,
}


def run_suites(
    names=None,
    max_size: int | None = None,
    cfg: NumericsConfig = DEFAULT_CONFIG,
    jobs: int = 1,
) -> list[SuiteResult]:
    names = list(SUITES) if not names else list(names)
    results = []
    shared_reports = None
    numeric = [n for n in names if n in ("moser-numeric", "hessian-numeric")]
    if len(numeric) == 2:
        size = max_size or DEFAULT_SUITE_SIZES["moser-numeric"]
        shared_reports = compute_reports(gated_family(size), cfg, jobs=jobs)
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
        size = max_size or DEFAULT_SUITE_SIZES[name]
        kwargs = {"max_size": size, "cfg": cfg, "jobs": jobs}
        if name in numeric and shared_reports is not None:
            kwargs["reports"] = shared_reports
        results.append(SUITES[name](**kwargs))
    return results
