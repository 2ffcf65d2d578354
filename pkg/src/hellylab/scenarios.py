"""Scenario configs: a line-oriented, versioned text format naming one chain
builder and a list of operations to run against it.

Example::

    hellylab-scenario v1
    seed 7
    chain random n=6 window=0..3 density=0.25
    op validate budget=10000
    op verify-helly h=2 levels=0..2
    op verify-colorful k=2 levels=0..1 max-class-size=3
    op verify-fractional k=2 level=0 subset=all
    op lemma-check id=31a k=2 level=0
    op theorem id=25 k=2 level=0 alpha=1/3
    op search-counterexample d=1 target=2 v=1/2 trials=3 generator=intervals n=5

Every referenced level range is validated against the chain window before
anything runs. Exit policy: violations from validators, verifiers, lemma and
theorem checks on exact chains are failures (nonzero); counterexample-search
findings are results, never failures.
"""

from __future__ import annotations

import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .builders import (
    MonteCarloBackend,
    QuantitativeChainSpec,
    SyntheticChainSpec,
    bounded_size_chain,
    nerve_chain,
    quantitative_chain,
    random_chain,
    subsampled_chain,
)
from .chains import HypergraphChain, validate_chain
from .engine import (
    extract_large_edge,
    missing_bound_cross_arity,
    missing_bound_same_arity,
    refine_family,
    stability_check,
    NeighborhoodFamily,
)
from .errors import ChainRejectedError, ExtractionFailedError, InputError
from .formats import load_bodies, load_chain
from .reports import rows_to_csv, rows_to_summary, write_report
from .search import SearchSpec, search_counterexample
from .verify import colorful_helly_holds, fractional_profile, helly_holds

REPORT_COLUMNS = (
    "op_index",
    "operation",
    "params",
    "level",
    "status",
    "certificate",
    "values",
)

VERSION_HEADER = "hellylab-scenario v1"


@dataclass
class Directive:
    lineno: int
    kind: str  # "seed" | "chain" | "subsample" | "op"
    name: str
    args: dict[str, str]


@dataclass
class Scenario:
    source: str
    seed: int
    chain_directives: list[Directive]
    ops: list[Directive]


def _parse_kv(tokens: list[str], source: str, lineno: int) -> dict[str, str]:
    args: dict[str, str] = {}
    for tok in tokens:
        if "=" not in tok:
            raise InputError(f"{source}:{lineno}: expected key=value, got {tok!r}")
        key, val = tok.split("=", 1)
        if key in args:
            raise InputError(f"{source}:{lineno}: duplicate key {key!r}")
        args[key] = val
    return args


def parse_scenario(text: str, source: str = "<scenario>") -> Scenario:
    lines = text.splitlines()
    idx = 0
    while idx < len(lines) and not lines[idx].strip():
        idx += 1
    if idx >= len(lines) or lines[idx].strip() != VERSION_HEADER:
        raise InputError(
            f"{source}:{idx + 1}: first line must be {VERSION_HEADER!r}"
        )
    seed = 0
    chain_directives: list[Directive] = []
    ops: list[Directive] = []
    for lineno in range(idx + 1, len(lines)):
        raw = lines[lineno].strip()
        if not raw or raw.startswith("#"):
            continue
        tokens = raw.split()
        kind = tokens[0]
        if kind == "seed":
            if len(tokens) != 2:
                raise InputError(f"{source}:{lineno + 1}: expected 'seed <int>'")
            seed = int(tokens[1])
        elif kind == "chain":
            if len(tokens) < 2:
                raise InputError(f"{source}:{lineno + 1}: chain needs a builder name")
            chain_directives.append(
                Directive(lineno + 1, "chain", tokens[1],
                          _parse_kv(tokens[2:], source, lineno + 1))
            )
        elif kind == "subsample":
            chain_directives.append(
                Directive(lineno + 1, "subsample", "subsample",
                          _parse_kv(tokens[1:], source, lineno + 1))
            )
        elif kind == "op":
            if len(tokens) < 2:
                raise InputError(f"{source}:{lineno + 1}: op needs a name")
            ops.append(
                Directive(lineno + 1, "op", tokens[1],
                          _parse_kv(tokens[2:], source, lineno + 1))
            )
        else:
            raise InputError(f"{source}:{lineno + 1}: unknown directive {kind!r}")
    return Scenario(source=source, seed=seed, chain_directives=chain_directives, ops=ops)


def _range(val: str, where: str) -> tuple[int, int]:
    if ".." not in val:
        raise InputError(f"{where}: expected a..b range, got {val!r}")
    a, b = val.split("..", 1)
    return int(a), int(b)


def _fraction(val: str, where: str) -> Fraction:
    try:
        return Fraction(val)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"{where}: not a rational: {val!r}")


def _subset(val: str):
    if val in ("all", ""):
        return None
    return tuple(int(t) for t in val.split(","))


def build_chain(scn: Scenario, base_dir: str = ".") -> HypergraphChain:
    if not scn.chain_directives:
        raise InputError(f"{scn.source}: scenario has no chain directive")
    chain: HypergraphChain | None = None
    for d in scn.chain_directives:
        where = f"{scn.source}:{d.lineno}"
        a = d.args
        if d.kind == "subsample":
            if chain is None:
                raise InputError(f"{where}: subsample needs a chain first")
            chain = subsampled_chain(
                chain, int(a["period"]), int(a.get("anchor", "0"))
            )
            continue
        if chain is not None:
            raise InputError(f"{where}: only one chain per scenario")
        name = d.name
        if name == "explicit":
            chain = load_chain(os.path.join(base_dir, a["file"]))
        elif name == "nerve":
            bodies = load_bodies(os.path.join(base_dir, a["bodies"]))
            chain = nerve_chain(bodies, window=_range(a.get("window", "-4..4"), where))
        elif name == "quantitative":
            bodies = load_bodies(os.path.join(base_dir, a["bodies"]))
            backend = a.get("backend", "exact")
            if backend == "mc":
                backend = MonteCarloBackend(
                    samples=int(a.get("samples", "100000")),
                    confidence=float(a.get("confidence", "0.95")),
                    seed=int(a.get("mcseed", str(scn.seed))),
                )
            chain = quantitative_chain(
                QuantitativeChainSpec(
                    bodies=tuple(bodies),
                    v=_fraction(a["v"], where),
                    window=_range(a["window"], where),
                    backend=backend,
                )
            )
        elif name == "random":
            chain = random_chain(
                SyntheticChainSpec(
                    n=int(a["n"]),
                    window=_range(a["window"], where),
                    density=float(a.get("density", "0.1")),
                    seed=int(a.get("chainseed", str(scn.seed))),
                )
            )
        elif name == "bounded":
            sizes = [int(t) for t in a["sizes"].split(",")]
            chain = bounded_size_chain(int(a["n"]), sizes, lmin=int(a.get("lmin", "0")))
        else:
            raise InputError(f"{where}: unknown chain builder {name!r}")
    assert chain is not None
    return chain


def _required_levels(op: Directive, where: str) -> tuple[int, int] | None:
    a = op.args
    name = op.name
    if name == "verify-helly" or name == "verify-colorful":
        lo, hi = _range(a.get("levels", a.get("level", "0") + ".." + a.get("level", "0")), where)
        return lo, hi + 1
    if name == "verify-fractional":
        lvl = int(a["level"])
        return lvl, lvl + 1
    if name == "lemma-check":
        which = a.get("id", "")
        if which == "31a":
            lvl = int(a["level"])
            return lvl, lvl + 1
        if which == "31b":
            lvl = int(a["level"])
            return lvl, lvl + 2
        if which == "32":
            t = int(a["t"])
            return t, t + 1
        raise InputError(f"{where}: lemma-check id must be 31a, 31b or 32")
    if name == "theorem":
        which = a.get("id", "")
        if which == "25":
            lvl, k = int(a["level"]), int(a["k"])
            return lvl, lvl + k + 1
        if which == "26":
            lvl = int(a["level"])
            return lvl, lvl + 3
        raise InputError(f"{where}: theorem id must be 25 or 26")
    return None


def _values(**kw) -> str:
    from .reports import fmt_value

    return "; ".join(f"{k}={fmt_value(v)}" for k, v in kw.items() if v is not None)


def run_op(
    chain: HypergraphChain, op: Directive, scn: Scenario, op_index: int, workers: int
) -> tuple[list[dict], bool]:
    """Execute one operation; returns (rows, failed)."""
    a = op.args
    where = f"{scn.source}:{op.lineno}"
    rows: list[dict] = []
    failed = False

    def row(level=None, status="", certificate=None, **values):
        rows.append(
            {
                "op_index": op_index,
                "operation": op.name,
                "params": " ".join(f"{k}={v}" for k, v in sorted(a.items())),
                "level": level,
                "status": status,
                "certificate": str(certificate) if certificate is not None else "",
                "values": _values(**values),
            }
        )

    if op.name == "validate":
        cert = validate_chain(chain, int(a.get("budget", "10000")), seed=scn.seed)
        if cert is None:
            row(status="ok")
        else:
            suspect = cert.kind == "suspect"
            row(status="suspect" if suspect else "violation", certificate=cert)
            failed = not suspect
    elif op.name == "verify-helly":
        h = int(a["h"])
        lo, hi = _range(a.get("levels", f"{a.get('level', '0')}..{a.get('level', '0')}"), where)
        for lvl in range(lo, hi + 1):
            cert = helly_holds(chain, h, lvl)
            if cert is None:
                row(level=lvl, status="ok", h=h)
            else:
                suspect = cert.kind == "suspect"
                row(level=lvl, status="suspect" if suspect else "violation",
                    certificate=cert, h=h)
                failed |= not suspect
    elif op.name == "verify-colorful":
        k = int(a["k"])
        lo, hi = _range(a.get("levels", f"{a.get('level', '0')}..{a.get('level', '0')}"), where)
        mcs = a.get("max-class-size", "3")
        mcs_val = None if mcs in ("full", "none") else int(mcs)
        budget = int(a.get("budget", "0"))
        for lvl in range(lo, hi + 1):
            check = colorful_helly_holds(
                chain, k, lvl, max_class_size=mcs_val, budget=budget
            )
            row(level=lvl, status=check.status, certificate=check.certificate,
                k=k, universe=check.universe, tuples=check.tuples_checked)
            failed |= check.status == "violation"
    elif op.name == "verify-fractional":
        k, lvl = int(a["k"]), int(a["level"])
        prof = fractional_profile(chain, k, lvl, _subset(a.get("subset", "all")))
        row(level=lvl, status="profile", k=k, alpha=prof.alpha, beta=prof.beta,
            largest_edge=prof.largest_edge)
    elif op.name == "lemma-check":
        which = a["id"]
        subset = _subset(a.get("subset", "all"))
        if which == "31a":
            k, lvl = int(a["k"]), int(a["level"])
            missing, bound = missing_bound_same_arity(chain, lvl, subset, k)
            ok = missing >= bound
            status = ("consistent" if ok else "violation") if chain.exact else "suspect"
            row(level=lvl, status=status, k=k, missing=missing, bound=bound)
            failed |= chain.exact and not ok
        elif which == "31b":
            h, k, lvl = int(a["h"]), int(a["k"]), int(a["level"])
            missing, bound = missing_bound_cross_arity(chain, lvl, subset, h, k)
            ok = Fraction(missing) >= bound
            status = ("consistent" if ok else "violation") if chain.exact else "suspect"
            row(level=lvl, status=status, h=h, k=k, missing=missing, bound=bound)
            failed |= chain.exact and not ok
        else:  # 32
            k, t = int(a["k"]), int(a["t"])
            c = _fraction(a["c"], where)
            arity = int(a["arity"])
            host = tuple(range(chain.n)) if subset is None else subset
            from itertools import combinations

            family_level = a.get("family-edges-at")
            if family_level is None:
                members = tuple(combinations(sorted(host), arity))
            else:
                flvl = int(family_level)
                members = tuple(
                    m for m in combinations(sorted(host), arity)
                    if chain.member(m, flvl)
                )
            family = NeighborhoodFamily(arity=arity, host=tuple(sorted(host)),
                                        members=members)
            try:
                step = refine_family(chain, t, c, family, k)
                row(level=t, status="extracted", k=k,
                    family_out=len(step.family.members), missing=step.missing,
                    pairs=step.pair_count, closed_form_ok=step.closed_form_ok)
            except (InputError, ExtractionFailedError) as e:
                row(level=t, status="inapplicable", note=str(e))
    elif op.name == "theorem":
        which = a["id"]
        subset = _subset(a.get("subset", "all"))
        if which == "25":
            k, lvl = int(a["k"]), int(a["level"])
            alpha = _fraction(a["alpha"], where)
            target = a.get("target")
            outcome = extract_large_edge(
                chain, lvl, subset, k, alpha,
                target_fraction=None if target is None else _fraction(target, where),
            )
            cert = None
            if outcome.kind == "contradiction-witness":
                from . import certificates as certs

                cert = certs.colorful_violation(outcome.witness, outcome.level)
            row(level=lvl, status=outcome.kind, certificate=cert,
                k=k, alpha=outcome.alpha_observed, beta=outcome.beta,
                target=outcome.target, reachable=outcome.reachable,
                reason=outcome.reason, large_edge=outcome.large_edge,
                outcome_level=outcome.level)
            failed |= chain.exact and outcome.kind == "contradiction-witness"
        else:  # 26
            h, k, lvl = int(a["h"]), int(a["k"]), int(a["level"])
            eps = _fraction(a["epsilon"], where)
            rep = stability_check(
                chain, h, k, lvl, subset, eps,
                premises_verified=a.get("premises-verified", "") == "yes",
            )
            row(level=lvl, status=rep.status, h=h, k=k, epsilon=eps,
                edge_fraction=rep.edge_fraction,
                missing_fraction=rep.missing_fraction, delta=rep.delta,
                note=rep.note or None)
            failed |= rep.status == "violation"
    elif op.name == "search-counterexample":
        spec = SearchSpec(
            dimension=int(a.get("d", "1")),
            target=int(a["target"]),
            v_candidates=tuple(
                _fraction(t, where) for t in a.get("v", "1/2").split(",")
            ),
            mode=a.get("mode", "colorful"),
            generator=a.get("generator", "intervals"),
            n_bodies=int(a.get("n", "5")),
            scale=int(a.get("scale", "4")),
            vertex_budget=int(a.get("vertices", "6")),
            window=_range(a.get("window", "0..3"), where),
            trials=int(a.get("trials", "10")),
            seed=scn.seed,
            max_class_size=(
                None if a.get("max-class-size", "full") in ("full", "none")
                else int(a["max-class-size"])
            ),
            budget=int(a.get("budget", "0")),
        )
        report = search_counterexample(spec, workers=workers)
        for f in report.findings:
            row(level=f.level, status="suspect-finding" if f.suspect else "finding",
                certificate=f.certificate, trial=f.trial, v=f.v)
        for p in report.profiles:
            row(level=p["level"], status="profile", trial=p["trial"], v=p["v"],
                alpha=p["alpha"], beta=p["beta"])
        row(status="search-done", trials=report.trials_run,
            findings=len(report.findings), universe=report.universe)
    else:
        raise InputError(f"{where}: unknown operation {op.name!r}")
    return rows, failed


def run_scenario(
    path: str,
    out_dir: str | None = None,
    seed: int | None = None,
    workers: int = 1,
    fmt: str = "summary",
    stream=None,
) -> int:
    """Run a scenario file; returns the process exit status."""
    stream = stream if stream is not None else sys.stdout
    with open(path, "r", encoding="utf-8") as f:
        scn = parse_scenario(f.read(), source=path)
    if seed is not None:
        scn.seed = seed
    base_dir = os.path.dirname(path) or "."
    try:
        chain = build_chain(scn, base_dir=base_dir)
    except ChainRejectedError as e:
        print(f"{path}: chain rejected: {e.certificate}", file=stream)
        return 2
    lo, hi = chain.window
    for op in scn.ops:
        req = _required_levels(op, f"{scn.source}:{op.lineno}")
        if req is not None and not (lo <= req[0] and req[1] <= hi):
            raise InputError(
                f"{scn.source}:{op.lineno}: operation needs levels "
                f"[{req[0]}, {req[1]}] but the chain window is [{lo}, {hi}]"
            )
    all_rows: list[dict] = []
    any_failed = False
    for i, op in enumerate(scn.ops):
        t0 = time.perf_counter()
        rows, failed = run_op(chain, op, scn, i, workers)
        print(
            f"[timing] op{i} {op.name}: {time.perf_counter() - t0:.3f}s",
            file=sys.stderr,
        )
        all_rows.extend(rows)
        any_failed |= failed
    csv_text = rows_to_csv(all_rows, REPORT_COLUMNS)
    summary_text = rows_to_summary(all_rows, REPORT_COLUMNS)
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
        stem = os.path.splitext(os.path.basename(path))[0]
        write_report(os.path.join(out_dir, f"{stem}.csv"), csv_text)
        write_report(os.path.join(out_dir, f"{stem}.txt"), summary_text)
    print(csv_text if fmt == "csv" else summary_text, end="", file=stream)
    return 1 if any_failed else 0
