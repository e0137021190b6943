"""Command-line frontend: ``zamolod <subcommand> ...``.

Exit codes: 0 success, 2 verification failure, 1 usage or IO error.
Vertex numbers in all output are 1-based.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from . import biagram as bgm
from . import catalog, transform, tropical, tsystem, wgraph
from .biagram import DynkinBiagram
from .exchange import ExchangeMatrix, is_recurrent
from .laurent import to_text

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# input helpers
# ---------------------------------------------------------------------------

def _add_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("--in", dest="inp", help="biagram or exchange-matrix JSON file")
    p.add_argument("--family", help="catalog family id (instead of --in)")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--variant")
    p.add_argument("--json", action="store_true", help="machine-readable output")


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _load(args) -> DynkinBiagram:
    if args.family:
        return catalog.build(catalog.FamilySpec(args.family, args.n, args.m, args.variant))
    if not args.inp:
        raise UsageError("one of --in or --family is required")
    obj = _read_json(args.inp)
    return DynkinBiagram.from_json(obj)


def _write(text: str, out: Optional[str]) -> None:
    if out:
        try:
            with open(out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {out}: {exc}") from exc
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def _frac(x: Fraction) -> str:
    return str(x)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_catalog(args) -> int:
    if args.action == "list":
        fams = catalog.list_families()
        if args.json:
            _write(_dump([{"id": f.id, "params": f.params, "item": f.item, "variants": list(f.variants)} for f in fams]), None)
        else:
            for f in fams:
                extra = f" variants={','.join(f.variants)}" if f.variants else ""
                _write(f"{f.id:28s} params={f.params or '-':3s} {f.item}{extra}\n", None)
        return EXIT_OK
    if args.action == "build":
        if not args.family:
            raise UsageError("catalog build needs --family")
        bg = _load(args)
        _write(_dump(bg.to_json()), args.out)
        return EXIT_OK
    return _sweep(args)


def _sweep(args) -> int:
    rows = catalog.sweep(args.max_n, args.max_m, args.trials, args.seed, args.max_rank)
    ok = all(r["admissible"] and r["recurrent"] and r.get("periodic", True) for r in rows)
    if args.json:
        text = _dump(rows)
    else:
        text = catalog.rows_to_csv(rows)
    _write(text, args.csv)
    if args.csv:
        print(f"{len(rows)} rows written to {args.csv}")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_check(args) -> int:
    bg = _load(args)
    pairs = bg.nonadmissible_pairs()
    rec = is_recurrent(bg.to_exchange_matrix())
    report = {"n": bg.n, "admissible": not pairs, "recurrent": rec,
              "witness": [i + 1 for i in pairs[0]] if pairs else None}
    try:
        g, d = bgm.component_types(bg)
        report["gamma_types"] = [t.name for t in g]
        report["delta_types"] = [t.name for t in d]
        report["coxeter"] = list(bgm.coxeter_numbers(bg))
    except (bgm.NonDynkinComponent, bgm.MixedCoxeterNumbers) as exc:
        report["dynkin_error"] = str(exc)
    if args.json:
        _write(_dump(report), None)
    else:
        lines = [f"n = {bg.n}", f"admissible: {report['admissible']}", f"recurrent: {rec}"]
        if pairs:
            lines.append("nonadmissible pair: ({}, {})".format(*report["witness"]))
        if "coxeter" in report:
            lines.append(f"Gamma: {' + '.join(report['gamma_types']) or '-'}  Delta: {' + '.join(report['delta_types']) or '-'}")
            lines.append("h_Gamma = {}, h_Delta = {}".format(*report["coxeter"]))
        if "dynkin_error" in report:
            lines.append(f"not a Dynkin biagram: {report['dynkin_error']}")
        _write("\n".join(lines) + "\n", None)
    return EXIT_OK if report["admissible"] and rec and "dynkin_error" not in report else EXIT_VERIFY


def _parse_kt(text: str, n: int):
    out = []
    for tok in text.split(";"):
        k, t = (int(x) for x in tok.split(","))
        if not 1 <= k <= n:
            raise UsageError(f"vertex {k} out of range")
        out.append((k - 1, t))
    return out


def cmd_evolve(args) -> int:
    bg = _load(args)
    traj = tsystem.evolve(bg, args.steps)
    if args.print:
        want = _parse_kt(args.print, bg.n)
    else:
        want = [(k, st.t) for st in traj for k in sorted(st.values)]
    res = []
    for k, t in want:
        if t > args.steps or k not in traj[t].values:
            raise UsageError(f"T_{k + 1}({t}) is not populated")
        res.append({"k": k + 1, "t": t, "value": to_text(traj[t].values[k])})
    if args.json:
        _write(_dump(res), None)
    else:
        _write("".join(f"T_{r['k']}({r['t']}) = {r['value']}\n" for r in res), None)
    return EXIT_OK


def _lambda(args, bg) -> List[Fraction]:
    try:
        return tropical.parse_lambda(args.lam, bg.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_tropical(args) -> int:
    bg = _load(args)
    lam = _lambda(args, bg)
    tr = tropical.evolve(bg, lam, args.steps - 1)
    fmt = "json" if args.json else args.format
    if fmt == "json":
        obj = {
            "states": [{"t": st.t, "values": {str(k + 1): _frac(v) for k, v in sorted(st.values.items())}} for st in tr.states],
            "colors": [{"k": k + 1, "t": t, "color": c} for (k, t), c in sorted(tr.colors.items(), key=lambda x: (x[0][1], x[0][0]))],
        }
        _write(_dump(obj), None)
    else:
        _write(tropical.format_table(bg, tr, args.steps), None)
    return EXIT_OK


def cmd_period(args) -> int:
    bg = _load(args)
    if args.mode == "exact":
        N = tsystem.detect_period(bg, args.max_N)
    else:
        if not args.lam:
            raise UsageError("--mode tropical needs --lambda")
        N = tropical.trop_period(bg, _lambda(args, bg), args.max_N)
    if args.json:
        _write(_dump({"period": N, "mode": args.mode}), None)
    else:
        _write(("none" if N is None else str(N)) + "\n", None)
    return EXIT_OK if N is not None else EXIT_VERIFY


def _parse_perm(text: str, n: int) -> List[int]:
    toks = text.replace(",", " ").split()
    perm = [int(x) - 1 for x in toks]
    if sorted(perm) != list(range(n)):
        raise UsageError(f"--perm must be a permutation of 1..{n}")
    return perm


def cmd_fold(args) -> int:
    if args.script:
        out = transform.replay(_read_json(args.script))
        _write(_dump(out.to_json()), args.out)
        return EXIT_OK
    if not args.inp:
        raise UsageError("fold needs --in (or --script)")
    obj = _read_json(args.inp)
    if "b" in obj:
        m = ExchangeMatrix.from_json(obj)
    else:
        m = DynkinBiagram.from_json(obj).to_exchange_matrix()
    if not args.perm:
        raise UsageError("fold needs --perm")
    perm = _parse_perm(args.perm, m.n)
    try:
        f = transform.validate_automorphism(m, perm)
    except transform.ViolatesCondition as exc:
        w = tuple(i + 1 for i in exc.witness)
        msg = {"error": "ViolatesCondition", "condition": exc.condition, "witness": list(w)}
        _write(_dump(msg) if args.json else f"condition ({exc.condition}) violated at {w}\n", None)
        return EXIT_VERIFY
    folded = transform.fold(m, f)
    res = folded.to_json()
    res["orbits"] = [[i + 1 for i in o] for o in f.orbits]
    _write(_dump(res), args.out)
    return EXIT_OK


def cmd_flip(args) -> int:
    bg = _load(args)
    _write(_dump(transform.global_flip(bg).to_json()), getattr(args, "out", None))
    return EXIT_OK


def cmd_wcell(args) -> int:
    bg = _load(args)
    try:
        seed = [int(x) for x in args.seed.split(",")]
    except ValueError as exc:
        raise UsageError("--seed must look like 1,3") from exc
    try:
        cell = wgraph.build_product_cell(bg, seed)
    except wgraph.PropagationConflict as exc:
        _write(_dump({"error": str(exc)}) if args.json else f"propagation conflict: {exc}\n", None)
        return EXIT_VERIFY
    p, q = args.p, args.q
    if p is None or q is None:
        hg, hd = bgm.coxeter_numbers(bg)
        p = hg if p is None else p
        q = hd if q is None else q
    res = {"tau": [sorted(t) for t in cell.tau], "p": p, "q": q}
    ok = True
    if args.verify:
        rep = wgraph.verify_hecke_relations(cell, p, q, raise_on_failure=False)
        res["relations"] = {k: (None if v is None else [v[0] + 1, v[1] + 1]) for k, v in rep.items()}
        ok = all(v is None for v in rep.values())
    if args.json:
        _write(_dump(res), None)
    else:
        lines = [f"tau({k + 1}) = {{{','.join(map(str, sorted(t)))}}}" for k, t in enumerate(cell.tau)]
        for k, v in res.get("relations", {}).items():
            lines.append(f"{k}: {'ok' if v is None else 'FAIL at entry ' + str(tuple(v))}")
        _write("\n".join(lines) + "\n", None)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_conjecture(args) -> int:
    bg = _load(args)
    res = tropical.conjecture_harness(bg, args.trials, args.seed)
    exp = tropical.conjecture_expected(bg)
    if args.json:
        obj = {"trials": res.trials, "generic": res.generic, "agree": res.agree, "expected": list(exp),
               "candidates": [{"lambda": [str(x) for x in lam], "counts": list(c)} for lam, c in res.candidates]}
        _write(_dump(obj), None)
    elif args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["trials", "generic", "agree", "expected_gamma", "expected_delta", "candidates"])
        w.writerow([res.trials, res.generic, res.agree, exp[0], exp[1], len(res.candidates)])
        _write(buf.getvalue(), None)
    else:
        _write(f"expected (Gamma, Delta) = {exp}; generic {res.generic}/{res.trials}; agree {res.agree}\n", None)
        for lam, c in res.candidates:
            _write(f"candidate: lambda = ({', '.join(map(str, lam))}) counts = {c}\n", None)
    return EXIT_OK if not res.candidates else EXIT_VERIFY


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_sweep_args(p) -> None:
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--max-m", type=int, default=3)
    p.add_argument("--max-rank", type=int)
    p.add_argument("--trials", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", help="write the table to this path")
    p.add_argument("--json", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="zamolod", description="Dynkin biagrams, T-systems and their periodicity.")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    p = sub.add_parser("catalog", help="list, build or sweep catalog families")
    p.add_argument("action", choices=["list", "build", "sweep"])
    _add_source(p)
    p.add_argument("--out")
    _add_sweep_args_catalog(p)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("check", help="admissibility, recurrence and types")
    _add_source(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("evolve", help="exact birational T-system")
    _add_source(p)
    p.add_argument("--steps", type=int, default=4)
    p.add_argument("--print", help="k,t pairs separated by ';' (1-based k)")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("tropical", help="tropical T-system from a rational lambda")
    _add_source(p)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--steps", type=int, default=14, help="number of rows (t = 0 .. steps-1)")
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.add_argument("--table", action="store_const", const="table", dest="format")
    p.set_defaults(func=cmd_tropical)

    p = sub.add_parser("period", help="detect the period N")
    _add_source(p)
    p.add_argument("--max-N", dest="max_N", type=int)
    p.add_argument("--mode", choices=["exact", "tropical"], default="exact")
    p.add_argument("--lambda", dest="lam")
    p.set_defaults(func=cmd_period)

    p = sub.add_parser("fold", help="fold by a bicolored automorphism")
    p.add_argument("--in", dest="inp")
    p.add_argument("--perm", help="1-based images, e.g. '1 3 2'")
    p.add_argument("--script", help="derivation script JSON to replay")
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_fold)

    p = sub.add_parser("flip", help="global flip (transpose)")
    _add_source(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_flip)

    p = sub.add_parser("wcell", help="I2(p) x I2(q) cell from a biagram")
    _add_source(p)
    p.add_argument("--seed", default="1,3")
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_wcell)

    p = sub.add_parser("conjecture", help="mutation-count harness")
    _add_source(p)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("sweep", help="catalog sweep (same as 'catalog sweep')")
    _add_sweep_args(p)
    p.set_defaults(func=_sweep)
    return ap


def _add_sweep_args_catalog(p) -> None:
    # --json is already provided by _add_source
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--max-m", type=int, default=3)
    p.add_argument("--max-rank", type=int)
    p.add_argument("--trials", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv")


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, catalog.InvalidSpec, ValueError, KeyError) as exc:
        print(f"zamolod: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
