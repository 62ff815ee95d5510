"""Named checks over (field, form, extension) cells and the sweep runner."""

from __future__ import annotations

import hashlib
import itertools
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from functools import cached_property

from .cohomology import (
    H1Context,
    H1Extension,
    context_for,
    decompose_unramified,
    unit_level_classes,
)
from .f2 import Subgroup
from .fields import (
    all_classes,
    constant_extension,
    minus_one_class,
    n_class_bits,
    norm_group,
    quad_ext,
    tower,
)
from .quadform import (
    NotFound,
    PreconditionError,
    QuadraticForm,
    base_change,
    find_lambda_splitting,
    is_hyperbolic,
    is_isometric,
    is_isotropic,
    similarity_group,
    spinor_norm_group,
    springer_decompose,
)
from .serialize import class_to_bits, field_to_json, form_to_json, h1_to_json

VERSION = "1"

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


class ConfigError(ValueError):
    """Invalid sweep configuration or misdeclared regime."""


@dataclass
class CheckReport:
    check: str
    params: dict
    verdict: str
    witnesses: dict = dc_field(default_factory=dict)
    elapsed_ms: float = 0.0
    tested: int = 0
    regime: dict = dc_field(default_factory=dict)
    reason: str | None = None

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "check": self.check,
            "params": self.params,
            "verdict": self.verdict,
            "witnesses": self.witnesses,
            "tested": self.tested,
            "regime": self.regime,
        }
        if self.reason is not None:
            out["reason"] = self.reason
        if timing:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out


class CheckContext:
    """K, Q, and optionally a quadratic L/K with the derived groups."""

    def __init__(self, Q: QuadraticForm, ext=None):
        self.Q, self.K, self.ext = Q, Q.field, ext
        self.L = ext.L if ext is not None else None

    @cached_property
    def QL(self) -> QuadraticForm:
        return base_change(self.Q, self.ext)

    @cached_property
    def G_K(self) -> Subgroup:
        return similarity_group(self.Q)

    @cached_property
    def G_L(self) -> Subgroup:
        return similarity_group(self.QL)

    @cached_property
    def Sn_K(self) -> Subgroup:
        return spinor_norm_group(self.Q)

    @cached_property
    def Sn_L(self) -> Subgroup:
        return spinor_norm_group(self.QL)

    @cached_property
    def h1K(self) -> H1Context:
        return context_for(self.Q)

    @cached_property
    def h1ext(self) -> H1Extension:
        return H1Extension(self.h1K, self.ext)

    @property
    def h1L(self) -> H1Context:
        return self.h1ext.ctxL

    def params(self) -> dict:
        out = {"field": field_to_json(self.K), "form": form_to_json(self.Q)["entries"]}
        if self.ext is not None:
            out["ext"] = class_to_bits(self.K, self.ext.d) if self.ext.degree == 2 else {"constant_degree": self.ext.degree}
        return out


def _need_ext(ctx: CheckContext) -> None:
    if ctx.ext is None or ctx.ext.degree != 2:
        raise PreconditionError("needs a quadratic extension L/K")


def _need_even(ctx: CheckContext) -> None:
    if ctx.Q.dim % 2:
        raise PreconditionError("needs an even-dimensional form")


# -- checks -----------------------------------------------------------------
# Each returns (verdict, tested, witnesses, regime).

def check_scharlau(ctx: CheckContext):
    _need_ext(ctx)
    bad = []
    elems = ctx.G_L.elements()
    for lam in elems:
        n = ctx.ext.norm_class(lam)
        if n not in ctx.G_K:
            bad.append({"lambda": class_to_bits(ctx.L, lam), "norm": class_to_bits(ctx.K, n)})
    return (FAIL if bad else PASS), len(elems), {"counterexamples": bad[:5]} if bad else {}, {}


def check_knebusch(ctx: CheckContext):
    _need_ext(ctx)
    if ctx.Q.dim < 2:
        raise PreconditionError("spinor norms need dim >= 2")
    bad = []
    elems = ctx.Sn_L.elements()
    for s in elems:
        n = ctx.ext.norm_class(s)
        if n not in ctx.Sn_K:
            bad.append({"spinor_norm": class_to_bits(ctx.L, s), "norm": class_to_bits(ctx.K, n)})
    return (FAIL if bad else PASS), len(elems), {"counterexamples": bad[:5]} if bad else {}, {}


def _h_stability(ctx: CheckContext):
    H = ctx.h1ext
    HL = H.ctxL.subgroup_H(ctx.QL)
    bad = []
    for x in HL:
        n = H.norm(x)
        jn = ctx.h1K.map_j(n)
        expected = ctx.ext.norm_class(H.ctxL.map_j(x))
        if jn not in ctx.G_K:
            bad.append({"kind": "norm leaves H(K)", "x": h1_to_json(x), "j_norm": class_to_bits(ctx.K, jn)})
        elif jn != expected:
            bad.append({"kind": "j-naturality", "x": h1_to_json(x), "j_norm": class_to_bits(ctx.K, jn),
                        "norm_j": class_to_bits(ctx.K, expected)})
    return bad, len(HL)


def check_h_stability(ctx: CheckContext):
    _need_ext(ctx)
    _need_even(ctx)
    bad, tested = _h_stability(ctx)
    return (FAIL if bad else PASS), tested, {"counterexamples": bad[:5]} if bad else {}, {}


def check_sq_commutes(ctx: CheckContext, regime: str = "TrivialKernel"):
    _need_ext(ctx)
    _need_even(ctx)
    if regime == "TrivialKernel":
        if ctx.K.height != 1:
            raise ConfigError("TrivialKernel regime is only declared for height-1 towers")
        bad = []
        for level, h1, G in (("L", ctx.h1L, ctx.G_L), ("K", ctx.h1K, ctx.G_K)):
            for x in h1.enumerate():
                if h1.map_j(x) not in G:
                    bad.append({"kind": f"H({level}) is not all of H^1", "x": h1_to_json(x)})
        more, tested = _h_stability(ctx)
        bad += more
        tested += len(ctx.h1L.enumerate()) + len(ctx.h1K.enumerate())
        return (FAIL if bad else PASS), tested, {"counterexamples": bad[:5]} if bad else {}, {"regime": regime}
    if regime != "Partial":
        raise ConfigError(f"unknown regime {regime!r}")
    # Only classes i_L(f) with f a spinor norm are known to lie in the kernel;
    # for those the norm is i_K(N f) with N f again a spinor norm.
    H = ctx.h1ext
    verified, unverified = 0, 0
    bad = []
    for x in H.ctxL.enumerate():
        if H.ctxL.map_j(x) != 0:
            unverified += 1
            continue
        f = next((c for c in all_classes(ctx.L) if H.ctxL.equal(H.ctxL.map_i(c), x) and c in ctx.Sn_L), None)
        if f is None:
            unverified += 1
            continue
        nf = ctx.ext.norm_class(f)
        verified += 1
        if nf not in ctx.Sn_K or not ctx.h1K.equal(H.norm(x), ctx.h1K.map_i(nf)):
            bad.append({"x": h1_to_json(x), "f": class_to_bits(ctx.L, f), "norm_f": class_to_bits(ctx.K, nf)})
    regime_info = {"regime": regime, "verified": verified, "unverified": unverified}
    if bad:
        return FAIL, verified, {"counterexamples": bad[:5]}, regime_info
    if verified == 0:
        return SKIPPED, 0, {}, regime_info
    return PASS, verified, {}, regime_info


def check_r_triviality(ctx: CheckContext):
    """Certificate for the R-triviality of PGO+ of tau x <1, t>."""
    K = ctx.K
    if K.height == 0:
        raise PreconditionError("needs a Laurent field")
    top = 1 << K.height
    tau = ctx.Q
    if any(c & top for c in tau.entries):
        raise PreconditionError("tau must be a unit form")
    xi = QuadraticForm(K, tau.entries + tuple(c | top for c in tau.entries))
    m1 = minus_one_class(K)
    G = similarity_group(xi)
    witnesses = []
    span = Subgroup.trivial(n_class_bits(K))
    lacking = []
    for lam in G.elements():
        x = lam & (top - 1)
        ok = True
        for d in sorted({top ^ m1, x ^ top ^ m1}):
            if is_hyperbolic(base_change(xi, quad_ext(K, d))):
                span = span.join(norm_group(K, d))
                witnesses.append(class_to_bits(K, d))
            else:
                ok = False
        if not ok:
            lacking.append(class_to_bits(K, lam))
    not_covered = [class_to_bits(K, lam) for lam in G.elements() if lam not in span]
    verdict = PASS if not lacking and not not_covered else FAIL
    wit = {"splitting_classes": sorted(map(list, {tuple(w) for w in witnesses}))}
    if verdict == FAIL:
        wit["lacking_witness"] = lacking
        wit["not_covered"] = not_covered
    return verdict, len(G), wit, {"xi": form_to_json(xi)["entries"]}


def _unit_diagonal(Q: QuadraticForm) -> bool:
    top = 1 << Q.field.height
    return all(not c & top for c in Q.entries)


def check_unit_decomposition(ctx: CheckContext):
    _need_ext(ctx)
    _need_even(ctx)
    if not _unit_diagonal(ctx.QL):
        raise PreconditionError("Q_L is not unit diagonal")
    h1 = ctx.h1L
    top = 1 << ctx.L.height
    bad, tested = [], 0
    for u in h1.enumerate():
        if h1.map_j(u) & top:
            continue
        tested += 1
        try:
            decompose_unramified(h1, u)
        except AssertionError as exc:
            bad.append({"u": h1_to_json(u), "error": str(exc)})
    if tested == 0:
        return SKIPPED, 0, {}, {"reason": "no class with unit j-image"}
    return (FAIL if bad else PASS), tested, {"counterexamples": bad[:5]} if bad else {}, {}


def check_ramified_unit_norm(ctx: CheckContext):
    _need_ext(ctx)
    _need_even(ctx)
    if not ctx.ext.ramified:
        raise PreconditionError("needs a ramified L/K")
    q, p = springer_decompose(ctx.Q)
    if q.dim != p.dim:
        raise PreconditionError("needs dim q = dim p")
    H = ctx.h1ext
    units = unit_level_classes(H.ctxL)
    bad = []
    for u in units:
        if not ctx.h1K.equal(H.norm(u), ctx.h1K.one()):
            bad.append({"u_prime": h1_to_json(u), "norm": h1_to_json(H.norm(u))})
    if not units:
        return SKIPPED, 0, {}, {"reason": "no unit-level classes"}
    return (FAIL if bad else PASS), len(units), {"counterexamples": bad[:5]} if bad else {}, {}


def expected_kernel_i(h1: H1Context) -> list[int]:
    if h1.odd:
        return sorted({0, h1.d ^ minus_one_class(h1.X)})
    return [0] if h1.d == 0 else [0, h1.d]


def check_keri(ctx: CheckContext):
    _need_even(ctx)
    h1 = ctx.h1K
    got = h1.kernel_i()
    expected = expected_kernel_i(h1)
    verdict = PASS if got == expected else FAIL
    wit = {} if verdict == PASS else {"kernel": [class_to_bits(ctx.K, c) for c in got],
                                      "expected": [class_to_bits(ctx.K, c) for c in expected]}
    return verdict, len(all_classes(ctx.K)), wit, {"parity": h1.parity, "split": h1.alg.split}


def check_exactness(ctx: CheckContext):
    _need_even(ctx)
    h1 = ctx.h1K
    elems = h1.enumerate()
    image_i = h1.image_i()
    bad = []
    for x in elems:
        in_ker = h1.map_j(x) == 0
        if in_ker != h1.contains(image_i, x):
            bad.append({"x": h1_to_json(x), "j": class_to_bits(ctx.K, h1.map_j(x))})
    gaps = h1.enumeration_gaps()
    image_j = h1.image_j()
    count_ok = len(elems) == len(image_i) * len(image_j)
    wit = {}
    if bad:
        wit["counterexamples"] = bad[:5]
    if gaps:
        wit["unreached_j_values"] = [class_to_bits(ctx.K, c) for c in gaps]
    if not count_ok:
        wit["count"] = {"h1": len(elems), "image_i": len(image_i), "image_j": len(image_j)}
    verdict = PASS if not bad and not gaps and count_ok else FAIL
    return verdict, len(elems), wit, {"parity": h1.parity, "split": h1.alg.split}


def check_isotropic_sn_full(ctx: CheckContext):
    if not is_isotropic(ctx.Q):
        return SKIPPED, 0, {}, {"reason": "Q is anisotropic"}
    Sn = ctx.Sn_K
    if Sn.is_full():
        return PASS, 1, {}, {}
    return FAIL, 1, {"spinor_norms": [class_to_bits(ctx.K, c) for c in Sn.elements()]}, {}


def check_odd_degree_injectivity(ctx: CheckContext):
    M = constant_extension(ctx.K, 3)
    QM = base_change(ctx.Q, M)
    Sn_M = spinor_norm_group(QM)
    bad = []
    for c in all_classes(ctx.K):
        if M.res_class(c) in Sn_M and c not in ctx.Sn_K:
            bad.append(class_to_bits(ctx.K, c))
    return (FAIL if bad else PASS), len(all_classes(ctx.K)), {"counterexamples": bad} if bad else {}, {}


def check_lambda_splitting(ctx: CheckContext):
    """Search results are verified everywhere; NotFound only counts as a
    failure inside the regime where a splitting must exist (L/K ramified, lambda not a square in L)."""
    _need_ext(ctx)
    K = ctx.K
    top = 1 << K.height
    q, p = springer_decompose(ctx.Q)
    if q.dim == p.dim:
        raise PreconditionError("needs dim q != dim p")
    tested = 0
    bad, found, outside = [], [], []
    for lam in all_classes(K):
        if lam == 0 or lam & top:
            continue
        lam_L = ctx.ext.res_class(lam)
        if lam_L not in ctx.G_L:
            continue
        tested += 1
        in_regime = ctx.ext.ramified and lam_L != 0
        try:
            sp = find_lambda_splitting(ctx.Q, lam, ctx.ext)
        except NotFound:
            record = {"lambda": class_to_bits(K, lam), "error": "NotFound"}
            (bad if in_regime else outside).append(record)
            continue
        fL, gL = base_change(sp.f, ctx.ext), base_change(sp.g, ctx.ext)
        ok = (
            is_isometric(sp.f + sp.g, ctx.Q)
            and is_isometric(fL.scale(lam_L), fL)
            and is_isometric(gL.scale(lam_L), gL)
        )
        record = {"lambda": class_to_bits(K, lam), "f": form_to_json(sp.f)["entries"], "g": form_to_json(sp.g)["entries"]}
        (found if ok else bad).append(record)
    if tested == 0:
        return SKIPPED, 0, {}, {"reason": "no nonsquare unit lambda in G(Q_L)"}
    wit = {"splittings": found}
    if outside:
        wit["not_found_outside_regime"] = outside
    if bad:
        wit["counterexamples"] = bad
    return (FAIL if bad else PASS), tested, wit, {"ramified": ctx.ext.ramified}


def check_norm_group_index(ctx: CheckContext):
    """Symbol-defined norm groups match actual norms (index 2 over local fields)."""
    K = ctx.K
    bad = []
    ds = [d for d in all_classes(K) if d]
    for d in ds:
        N = norm_group(K, d)
        ext = quad_ext(K, d)
        actual = Subgroup(n_class_bits(K), [ext.norm_class(z) for z in all_classes(ext.L)])
        # index 2 is a local-field fact; deeper towers have larger residue groups
        if (K.height <= 1 and N.index() != 2) or N != actual:
            bad.append({"d": class_to_bits(K, d), "index": N.index(),
                        "symbol_group": [class_to_bits(K, c) for c in N.elements()],
                        "norms": [class_to_bits(K, c) for c in actual.elements()]})
    return (FAIL if bad else PASS), len(ds), {"counterexamples": bad} if bad else {}, {}


CHECKS = {
    "scharlau": check_scharlau,
    "knebusch": check_knebusch,
    "h_stability": check_h_stability,
    "sq_commutes": check_sq_commutes,
    "r_triviality": check_r_triviality,
    "unit_decomposition": check_unit_decomposition,
    "ramified_unit_norm": check_ramified_unit_norm,
    "keri": check_keri,
    "exactness": check_exactness,
    "isotropic_sn_full": check_isotropic_sn_full,
    "odd_degree_injectivity": check_odd_degree_injectivity,
    "lambda_splitting": check_lambda_splitting,
    "norm_group_index": check_norm_group_index,
}

# checks that do not depend on the extension run once per (field, form)
EXT_FREE = {"keri", "exactness", "isotropic_sn_full", "odd_degree_injectivity", "r_triviality"}
FIELD_ONLY = {"norm_group_index"}


def run_check(check: str, Q: QuadraticForm, ext=None, regime: str = "TrivialKernel") -> CheckReport:
    if check not in CHECKS:
        raise ConfigError(f"unknown check {check!r}; known: {sorted(CHECKS)}")
    ctx = CheckContext(Q, ext)
    start = time.perf_counter()
    try:
        if check == "sq_commutes":
            verdict, tested, wit, reg = check_sq_commutes(ctx, regime)
        else:
            verdict, tested, wit, reg = CHECKS[check](ctx)
        reason = reg.pop("reason", None) if verdict == SKIPPED else None
        if verdict == PASS and tested == 0:
            verdict, reason = SKIPPED, "no elements tested"
    except PreconditionError as exc:
        verdict, tested, wit, reg, reason = SKIPPED, 0, {}, {}, str(exc)
    elapsed = (time.perf_counter() - start) * 1000
    return CheckReport(check, ctx.params(), verdict, wit, elapsed, tested, reg, reason)


# -- sweeps -----------------------------------------------------------------

@dataclass
class SweepConfig:
    q: tuple = (3, 5)
    height: int = 1
    dims: tuple = (2, 4, 6)
    extensions: object = "all"
    cubic: bool = True
    checks: tuple = tuple(CHECKS)
    seed: int = 0
    workers: int = 1
    regime: str = "TrivialKernel"
    sample: int | None = None

    @classmethod
    def from_json(cls, obj: dict) -> "SweepConfig":
        if not isinstance(obj, dict):
            raise ConfigError("config must be a JSON object")
        known = {"q", "height", "dims", "max_dim", "extensions", "cubic", "checks", "seed", "workers", "regime", "sample"}
        unknown = set(obj) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        kw = {}
        if "q" in obj:
            kw["q"] = tuple(int(v) for v in obj["q"])
        if "height" in obj:
            kw["height"] = int(obj["height"])
        if "max_dim" in obj:
            kw["dims"] = tuple(range(2, int(obj["max_dim"]) + 1, 2))
        if "dims" in obj:
            kw["dims"] = tuple(int(v) for v in obj["dims"])
        for key in ("extensions", "cubic", "seed", "workers", "regime", "sample"):
            if key in obj:
                kw[key] = obj[key]
        if "checks" in obj:
            checks = obj["checks"]
            kw["checks"] = tuple(CHECKS) if checks == "all" else tuple(checks)
        cfg = cls(**kw)
        cfg.validate()
        return cfg

    def validate(self) -> None:
        for q in self.q:
            if q < 3 or q % 2 == 0:
                raise ConfigError(f"q must be an odd prime power, got {q}")
            try:
                tower(q, ())
            except ValueError as exc:
                raise ConfigError(str(exc)) from exc
        if self.height not in (1, 2):
            raise ConfigError("height must be 1 or 2")
        if not self.dims or any(d < 1 for d in self.dims):
            raise ConfigError("dims must be positive")
        for c in self.checks:
            if c not in CHECKS:
                raise ConfigError(f"unknown check {c!r}")
        if self.regime not in ("TrivialKernel", "Partial"):
            raise ConfigError(f"unknown regime {self.regime!r}")
        if self.regime == "TrivialKernel" and self.height != 1 and "sq_commutes" in self.checks:
            raise ConfigError("TrivialKernel regime is only declared for height-1 towers")
        if not isinstance(self.workers, int) or self.workers < 1:
            raise ConfigError("workers must be a positive integer")
        if self.extensions != "all" and not isinstance(self.extensions, list):
            raise ConfigError("extensions must be 'all' or a list of class bit-vectors")

    def to_json(self) -> dict:
        return {
            "q": list(self.q),
            "height": self.height,
            "dims": list(self.dims),
            "extensions": self.extensions,
            "cubic": self.cubic,
            "checks": list(self.checks),
            "seed": self.seed,
            "regime": self.regime,
            "sample": self.sample,
        }

    def digest(self) -> str:
        return hashlib.sha256(json.dumps(self.to_json(), sort_keys=True).encode()).hexdigest()[:16]


SYMBOLS = ("t", "s")


def grid_field(q: int, height: int):
    return tower(q, SYMBOLS[:height][::-1])


def grid_forms(K, dims) -> list[QuadraticForm]:
    """Forms q + t p with unit-class entries in canonical sorted order."""
    top = 1 << K.height
    units = range(top)
    out = []
    for n in dims:
        for a in range(n + 1):
            for qs in itertools.combinations_with_replacement(units, a):
                for ps in itertools.combinations_with_replacement(units, n - a):
                    out.append(QuadraticForm(K, qs + tuple(c | top for c in ps)))
    return out


def grid_extensions(K, spec) -> list[int]:
    if spec == "all":
        return [d for d in all_classes(K) if d]
    from .serialize import class_from_bits

    return [class_from_bits(K, d) for d in spec]


def unit_forms(K, max_dim: int = 3) -> list[QuadraticForm]:
    units = range(1 << K.height)
    return [
        QuadraticForm(K, entries)
        for n in range(1, max_dim + 1)
        for entries in itertools.combinations_with_replacement(units, n)
    ]


def _cells(cfg: SweepConfig) -> list[tuple]:
    cells = []
    for q in cfg.q:
        K = grid_field(q, cfg.height)
        forms = grid_forms(K, cfg.dims)
        if cfg.sample is not None and cfg.sample < len(forms):
            rng = random.Random(f"{cfg.seed}:{q}")
            forms = sorted(rng.sample(forms, cfg.sample), key=lambda Q: (Q.dim, Q.entries))
        exts = grid_extensions(K, cfg.extensions)
        for check in cfg.checks:
            if check in FIELD_ONLY:
                cells.append((check, q, cfg.height, (), None))
            elif check == "r_triviality":
                cells += [(check, q, cfg.height, tau.entries, None) for tau in unit_forms(K)]
            elif check in EXT_FREE:
                if check == "odd_degree_injectivity" and not cfg.cubic:
                    continue
                cells += [(check, q, cfg.height, Q.entries, None) for Q in forms]
            else:
                cells += [(check, q, cfg.height, Q.entries, d) for Q in forms for d in exts]
    return cells


def _run_cell(cell, regime):
    check, q, height, entries, d = cell
    K = grid_field(q, height)
    Q = QuadraticForm(K, entries)
    ext = quad_ext(K, d) if d is not None else None
    return run_check(check, Q, ext, regime)


def _run_chunk(args):
    chunk, regime = args
    return [_run_cell(c, regime) for c in chunk]


def _cell_key(cell) -> tuple:
    check, q, height, entries, d = cell
    return (check, q, height, len(entries), entries, -1 if d is None else d)


def run_sweep(cfg: SweepConfig) -> list[CheckReport]:
    cfg.validate()
    cells = sorted(_cells(cfg), key=_cell_key)
    if cfg.workers == 1 or len(cells) < 2:
        reports = [_run_cell(c, cfg.regime) for c in cells]
    else:
        n = cfg.workers * 4
        chunks = [cells[i::n] for i in range(n)]
        reports_by_cell = {}
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            for chunk, result in zip(chunks, pool.map(_run_chunk, [(c, cfg.regime) for c in chunks])):
                for cell, rep in zip(chunk, result):
                    reports_by_cell[cell] = rep
        reports = [reports_by_cell[c] for c in cells]
    return reports


def coverage(reports: list[CheckReport]) -> dict:
    out: dict = {}
    for r in reports:
        entry = out.setdefault(r.check, {"cells": 0, "exhaustive": 0, "sampled": 0, "pass": 0, "fail": 0,
                                         "skipped": 0, "tested": 0})
        entry["cells"] += 1
        entry["exhaustive"] += 1
        entry[r.verdict] += 1
        entry["tested"] += r.tested
    return dict(sorted(out.items()))


def build_report(cfg: SweepConfig, reports: list[CheckReport], timing: bool = True) -> dict:
    cov = coverage(reports)
    if cfg.sample is not None:
        for entry in cov.values():
            entry["sampled"], entry["exhaustive"] = entry["exhaustive"], 0
    return {
        "version": VERSION,
        "config_digest": cfg.digest(),
        "cells": [r.to_json(timing) for r in reports],
        "coverage": cov,
    }


def exit_code(reports: list[CheckReport]) -> int:
    return 1 if any(r.verdict == FAIL for r in reports) else 0
