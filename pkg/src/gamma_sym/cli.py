"""Command-line front end: ``gamma-sym {grade,verify,classify,table,scan,audit}``.

Exit codes: 0 success, 1 failed check or oracle disagreement, 2 usage or
I/O error, 3 degenerate metric (classify only).
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import numpy as np

from .exact import format_rational, parse_rational
from .grading import (
    ODD_LABELS,
    cached_graded_basis,
    explicit_s3_fixture,
    grading_document,
    symmetric_pair_check,
    verify_fixed_algebra,
    verify_grading,
    Certificate,
)
from .metrics import (
    CONVENTIONS,
    MetricParams,
    build_form,
    invariance_residual,
    invariant_form_space,
    killing_restriction,
    metric_report,
    ConsistencyError,
)
from .signature import (
    DEGENERATE,
    classification_oracle,
    classify,
    riemann_threshold,
    sample_params,
    six_case_table,
    threshold_audit,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DEGENERATE = 0, 1, 2, 3
DEFAULT_RANK = 2
RANK_CAP = 6

CSV_COLUMNS = ["k", "lam1_a", "lam2_a", "lam1_b", "lam2_b", "lam1_c", "lam2_c",
               "p", "q", "z", "verdict", "oracle", "sig_a", "sig_b", "sig_c"]


class UsageError(Exception):
    pass


def _err(msg: str):
    print(msg, file=sys.stderr)


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------

def write_atomic(path: str, text: str):
    """Write via a temporary file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit(text: str, out: str | None):
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def dump_json(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Argument handling
# ---------------------------------------------------------------------------

def _rank(cfg) -> int:
    k = cfg.rank
    if k < 1:
        raise UsageError(f"--rank must be >= 1, got {k}")
    if k > RANK_CAP and not cfg.allow_large_rank:
        raise UsageError(f"--rank {k} exceeds the cap of {RANK_CAP}; pass --allow-large-rank to override")
    return k


def _rational_list(text: str) -> list:
    try:
        return [parse_rational(t) for t in text.split(",")]
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _threads() -> int:
    raw = os.environ.get("GAMMA_SYM_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"GAMMA_SYM_THREADS must be a positive integer, got {raw!r}")
    if n < 1:
        raise UsageError(f"GAMMA_SYM_THREADS must be a positive integer, got {raw!r}")
    return n


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def run_grade(cfg) -> int:
    k = _rank(cfg)
    if cfg.fixture == "s3":
        if k != 1:
            raise UsageError("--fixture s3 lives at --rank 1")
        cert = explicit_s3_fixture()
        dec = cert.decomposition
        certs = [cert]
    else:
        dec = cached_graded_basis(k)
        certs = [verify_grading(dec)]
    doc = grading_document(dec, certs)
    emit(dump_json(doc), cfg.out)
    failed = [f"{c.name}: {chk.name}" for c in certs for chk in c.failures()]
    for line in failed:
        _err(f"FAILED {line}")
    return EXIT_FAIL if failed else EXIT_OK


def _verify_certificates(k: int, convention: str) -> list:
    dec = cached_graded_basis(k)
    certs = [verify_grading(dec), verify_fixed_algebra(dec)]
    certs += [symmetric_pair_check(dec, g) for g in ODD_LABELS]
    metrics = Certificate("metrics", info={"convention": convention})
    space = invariant_form_space(dec)
    expected = 3 if k == 1 else 6
    metrics.add("invariant form space dimension", len(space) == expected, detail=f"{len(space)} vs {expected}")
    try:
        _, params = killing_restriction(dec)
        uniform = len({params.lam1_a, params.lam1_b, params.lam1_c}) == 1 and params.lam1_a == 2 * params.lam2_a \
            and params.lam2_a == params.lam2_b == params.lam2_c
        metrics.add("Killing restriction in the family with lam1 = 2 lam2", uniform, detail=str(params))
    except ConsistencyError as exc:
        metrics.add("Killing restriction in the family with lam1 = 2 lam2", False, detail=str(exc))
    probe = MetricParams.from_sequence([3, 1, 2, Fraction(-5, 3), Fraction(1, 2), 7])
    res = invariance_residual(dec, build_form(dec, probe, convention))
    metrics.add(f"adapted family invariant ({convention} convention)", res.value == 0, res.value,
                detail="" if res.witness is None else "witness h={}, x={}, y={}".format(*res.witness))
    certs.append(metrics)
    if k == 1:
        certs.append(explicit_s3_fixture())
    return certs


def run_verify(cfg) -> int:
    k = _rank(cfg)
    certs = _verify_certificates(k, cfg.convention)
    doc = {"rank": k, "passed": all(c.passed for c in certs), "certificates": [c.to_json() for c in certs]}
    emit(dump_json(doc), cfg.out)
    failed = [f"{c.name}: {chk.name}" for c in certs for chk in c.failures()]
    for line in failed:
        _err(f"FAILED {line}")
    return EXIT_FAIL if failed else EXIT_OK


def run_classify(cfg) -> int:
    k = _rank(cfg)
    if cfg.params is None:
        raise UsageError("classify requires --params l1a,l2a,l1b,l2b,l1c,l2c")
    vals = _rational_list(cfg.params)
    if len(vals) != 6:
        raise UsageError(f"--params needs 6 rationals, got {len(vals)}")
    params = MetricParams.from_sequence(vals)
    report = classify(params, k, cfg.convention)
    oracle = classification_oracle(params, k, cfg.convention)
    doc = report.to_json()
    doc["oracle"] = {"verdict": oracle.verdict, "total_signature": list(oracle.total),
                     "agrees": oracle.verdict == report.verdict and oracle.total == report.total}
    emit(dump_json(doc), cfg.out)
    if cfg.metric_out:
        write_atomic(cfg.metric_out, dump_json(metric_report(cached_graded_basis(k), params, cfg.convention)))
    if not doc["oracle"]["agrees"]:
        _err(f"classify and oracle disagree: {report.verdict} vs {oracle.verdict}")
        return EXIT_FAIL
    _err(f"verdict: {report.verdict}")
    return EXIT_DEGENERATE if report.verdict == DEGENERATE else EXIT_OK


def run_table(cfg) -> int:
    k = _rank(cfg)
    T = format_rational(riemann_threshold(k))
    conditions = [
        f"lam1 > 0, lam2 > {T} lam1",
        f"lam1 > 0, -lam1/2 < lam2 < {T} lam1",
        "lam1 > 0, lam2 < -lam1/2",
        "lam1 < 0, lam2 > -lam1/2",
        f"lam1 < 0, {T} lam1 < lam2 < -lam1/2",
        f"lam1 < 0, lam2 < {T} lam1",
    ]
    rows = [{"row": i + 1, "name": name, "condition": cond, "p": sig[0], "q": sig[1]}
            for i, ((name, _, sig), cond) in enumerate(zip(six_case_table(k), conditions))]
    if cfg.format == "json":
        emit(dump_json({"rank": k, "dim": k * (2 * k - 1), "r": k, "threshold": T, "rows": rows}), cfg.out)
    else:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=["row", "name", "condition", "p", "q"], lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        emit(buf.getvalue(), cfg.out)
    return EXIT_OK


def _scan_row(args):
    k, values, convention = args
    params = MetricParams.from_sequence(values)
    rep = classify(params, k, convention)
    ora = classification_oracle(params, k, convention)
    ok = rep.verdict == ora.verdict and rep.total == ora.total and all(
        a.signature == b.signature for a, b in zip(rep.components, ora.components))
    row = [str(k)] + [format_rational(v) for v in params.as_tuple()]
    row += [str(rep.total.positive), str(rep.total.negative), str(rep.total.zero), rep.verdict,
            "ok" if ok else f"MISMATCH oracle={ora.verdict}{tuple(ora.total)}"]
    row += ["({},{},{})".format(*c.signature) for c in rep.components]
    return row


def run_scan(cfg) -> int:
    k = _rank(cfg)
    if cfg.grid is None and cfg.seed is None:
        raise UsageError("scan requires --grid or --seed")
    if cfg.grid is not None and cfg.seed is not None:
        raise UsageError("scan takes either --grid or --seed, not both")
    if cfg.grid is not None:
        grid = sorted(set(_rational_list(cfg.grid)))
        points = [tuple(p) for p in itertools.product(grid, repeat=6)]
    else:
        if cfg.count < 1:
            raise UsageError("--count must be positive")
        rng = np.random.default_rng(cfg.seed)
        points = [p.as_tuple() for p in sample_params(rng, k, cfg.count)]
    points.sort()
    jobs = [(k, p, cfg.convention) for p in points]
    threads = _threads()
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(_scan_row, jobs, chunksize=max(1, len(jobs) // (8 * threads))))
    else:
        rows = [_scan_row(j) for j in jobs]
    bad = [r for r in rows if r[11] != "ok"]
    if cfg.format == "json":
        emit(dump_json({"rank": k, "convention": cfg.convention, "columns": CSV_COLUMNS, "rows": rows}), cfg.out)
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        w.writerows(rows)
        emit(buf.getvalue(), cfg.out)
    for r in bad:
        _err("disagreement: " + ",".join(r))
    return EXIT_FAIL if bad else EXIT_OK


def run_audit(cfg) -> int:
    k = _rank(cfg)
    rep = threshold_audit(k, cfg.convention)
    emit(dump_json(rep.to_json()), cfg.out)
    for name, v in rep.candidates.items():
        _err(f"{name}: {format_rational(v)}")
    _err("oracle boundary: " + ("none found" if rep.boundary is None else format_rational(rep.boundary)))
    return EXIT_OK if rep.passed else EXIT_FAIL


COMMANDS = {"grade": run_grade, "verify": run_verify, "classify": run_classify,
            "table": run_table, "scan": run_scan, "audit": run_audit}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gamma-sym", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=False):
        p.add_argument("--rank", "-k", type=int, default=DEFAULT_RANK, help="rank parameter k (ambient so(4k))")
        p.add_argument("--out", "-o", help="output file (default: stdout)")
        p.add_argument("--allow-large-rank", action="store_true", help=f"permit rank above {RANK_CAP}")
        if formats:
            p.add_argument("--format", choices=("csv", "json"), default="csv")
        return p

    def convention(p):
        p.add_argument("--convention", choices=CONVENTIONS, default="split",
                       help="cross-term convention of the Gram matrix")

    g = common(sub.add_parser("grade", help="build and certify the grading"))
    g.add_argument("--fixture", choices=("s3",), help="use the literal 4x4 rank-1 matrices")
    convention(common(sub.add_parser("verify", help="run every structural certificate")))
    c = common(sub.add_parser("classify", help="classify one metric"))
    c.add_argument("--params", help="six rationals l1a,l2a,l1b,l2b,l1c,l2c")
    c.add_argument("--metric-out", help="also write the metric report here")
    convention(c)
    common(sub.add_parser("table", help="print the six-case signature table"), formats=True)
    s = common(sub.add_parser("scan", help="classify a grid or a random sample"), formats=True)
    s.add_argument("--grid", help="comma-separated rationals; Cartesian product over the six slots")
    s.add_argument("--seed", type=int)
    s.add_argument("--count", type=int, default=500)
    convention(s)
    convention(common(sub.add_parser("audit", help="locate the Riemannian threshold with the oracle")))
    return parser


_VALUE_OPTIONS = ("--grid", "--params")


def _glue_values(argv: list) -> list:
    """``--grid -1,1`` -> ``--grid=-1,1`` so argparse does not read the value as a flag."""
    out, i = [], 0
    while i < len(argv):
        if argv[i] in _VALUE_OPTIONS and i + 1 < len(argv):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = parser.parse_args(_glue_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        _err(f"usage error: {exc}")
        return EXIT_USAGE
    except OSError as exc:
        _err(f"I/O error: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
