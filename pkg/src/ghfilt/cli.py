"""Command-line front end: ``ghfilt <subcommand> --config case.json``.

Reports are deterministic JSON (``command``, ``engine_version``, ``config``,
``results``, ``status``); timing and a one-line summary go to stderr only.

Exit codes: 0 success, 1 schema error or failed verification, 2 a
mathematical error on validated input (e.g. a singular normalization).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .exact import Q, rat_str
from .filtration import (CheckFailed, bad_space_probe, chain_theorem_check, ext1_cross_dim, ext1_self_dim,
                         jantzen, radical_filtration, socle_filtration)
from .induce import (CensusMismatch, DecomposeFailure, DimensionTooLarge, induce, restrict_decompose,
                     weight_census)
from .intertwine import (EquivarianceViolated, NotHolomorphic, NotStandardInput, SingularNormalization,
                         build_delta)
from .modrep import (IrrationalWeight, MixedNu, NoOneDimModule, NotPerpendicular, RelationViolated,
                     chain_module, make_module, one_dim_module, tensor_with_character, weights_json)
from .rootsys import datum_from_json
from .schemas import SchemaError, validate_config, validate_report

EXIT_OK, EXIT_FAIL, EXIT_MATH = 0, 1, 2

MATH_ERRORS = (SingularNormalization, NotHolomorphic, EquivarianceViolated, NotStandardInput,
               NotPerpendicular, NoOneDimModule, RelationViolated, IrrationalWeight, MixedNu,
               DimensionTooLarge, CensusMismatch, DecomposeFailure, CheckFailed, ArithmeticError)


class ConfigError(ValueError):
    """A config that passes the schema but names something that does not exist."""


# ---------------------------------------------------------------------------
# config -> objects
# ---------------------------------------------------------------------------

def _vec(v):
    return tuple(Q(x) for x in v)


def _names_to_J(d, names):
    try:
        return d.normalize_J(names or [])
    except (KeyError, ValueError) as e:
        raise ConfigError(f"unknown simple root in {names}: {e}") from None


def build_module(d, spec, J_default=()):
    kind = spec["kind"]
    if kind == "one_dim":
        J = _names_to_J(d, spec.get("J", J_default))
        return one_dim_module(d, J, _vec(spec["weight"]), label=spec.get("label", ""))
    if kind == "matrices":
        J = _names_to_J(d, spec.get("J", J_default))
        vecs = spec["vectors"]
        if set(vecs) != set(d.names):
            raise ConfigError(f"vectors must give one matrix per simple root {list(d.names)}")
        refl = {nm: [[Q(x) for x in row] for row in m] for nm, m in spec.get("reflections", {}).items()}
        if {d.names.index(nm) for nm in refl} != set(J):
            raise ConfigError("reflections must be given exactly for the roots in J")
        vm = [[[Q(x) for x in row] for row in vecs[nm]] for nm in d.names]
        return make_module(d, J, refl, vm, label=spec.get("label", ""))
    if kind == "chain":
        return chain_module(build_module(d, spec["base"], J_default), spec["r"], _vec(spec["eta"]))
    if kind == "tensor_with_character":
        return tensor_with_character(build_module(d, spec["base"], J_default), _vec(spec["nu"]))
    if kind == "induce":
        J = _names_to_J(d, spec.get("J", J_default))
        U = build_module(d, spec["U"], spec.get("J", J_default))
        eta = _vec(spec["eta"]) if "eta" in spec else None
        return induce(d, J, U, eta).module
    raise ConfigError(f"unknown module kind {kind!r}")


class Case:
    """A validated config turned into engine objects (lazily)."""

    def __init__(self, cfg):
        self.cfg = cfg
        self.d = datum_from_json(cfg["datum"])
        self.J = _names_to_J(self.d, cfg.get("J", []))

    def need(self, *keys):
        missing = [k for k in keys if k not in self.cfg]
        if missing:
            raise ConfigError(f"this command needs config key(s) {missing}")

    @property
    def U(self):
        self.need("U")
        return build_module(self.d, self.cfg["U"], self.cfg.get("J", []))

    @property
    def eta(self):
        self.need("eta")
        return _vec(self.cfg["eta"])

    def directions(self):
        return [_vec(v) for v in self.cfg.get("directions", [])]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_datum(case: Case, opts) -> dict:
    d = case.d
    out = {"datum": d.to_json(), "rank": d.n, "order_W": len(d.W),
           "positive_roots": [d.root_name(r) for r in d.positive_roots],
           "pairing": [[rat_str(x) for x in row] for row in d.P]}
    if "J" in case.cfg:
        out["J"] = [d.names[j] for j in case.J]
        out["coset_minima"] = [d.word_str(w) for w in d.coset_minima(case.J)]
        out["order_W_J"] = len(d.parabolic(case.J))
    return out


def cmd_induce(case: Case, opts) -> dict:
    eta = case.eta if "eta" in case.cfg else None
    X = induce(case.d, case.J, case.U, eta)
    out = {"dim": X.dim, "basis": [X.label_str(k) for k in range(X.dim)]}
    if eta is None:
        out["weights"] = weights_json(weight_census(X))
        split = restrict_decompose(X)
        out["restriction"] = {"U_block_dim": split.u_block.dim,
                              "Y_block_dim": split.y_block.dim if split.y_block else 0}
    return out


def cmd_jantzen(case: Case, opts) -> dict:
    rep = jantzen(case.d, case.J, case.U, case.eta, allow_nontempered=opts.allow_nontempered)
    out = rep.to_json()
    out["layer_dims"] = list(rep.layer_dims)
    return out


def _filtered_module(case: Case):
    if "module" in case.cfg:
        return build_module(case.d, case.cfg["module"], case.cfg.get("J", []))
    return induce(case.d, case.J, case.U).module


def cmd_radical(case: Case, opts) -> dict:
    rep = radical_filtration(_filtered_module(case))
    out = rep.to_json()
    out["layer_dims"] = list(rep.layer_dims)
    return out


def cmd_socle(case: Case, opts) -> dict:
    rep = socle_filtration(_filtered_module(case))
    out = rep.to_json()
    out["layer_dims"] = list(rep.layer_dims)
    return out


def cmd_bad(case: Case, opts) -> dict:
    case.need("directions")
    pr = bad_space_probe(case.d, case.J, case.U, case.directions())
    return pr.to_json()


def cmd_ext1(case: Case, opts) -> dict:
    assume = opts.assume_ss_ext_vanishing
    if "other" in case.cfg:
        o = case.cfg["other"]
        J2 = _names_to_J(case.d, o["J"])
        U2 = build_module(case.d, o["U"], o["J"])
        res = ext1_cross_dim(case.d, (case.J, case.U), (J2, U2), assume=assume,
                             directions=case.directions())
    else:
        res = ext1_self_dim(case.d, case.J, case.U, case.directions(), assume=assume)
    return res.to_json()


def cmd_chain_check(case: Case, opts) -> dict:
    case.need("r")
    rep = chain_theorem_check(case.d, case.J, case.U, case.eta, case.cfg["r"])
    return rep.to_json()


COMMANDS = {
    "datum": cmd_datum,
    "induce": cmd_induce,
    "jantzen": cmd_jantzen,
    "radical": cmd_radical,
    "socle": cmd_socle,
    "bad": cmd_bad,
    "ext1": cmd_ext1,
    "chain-check": cmd_chain_check,
}


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

def make_report(command, config, results, status, error=None) -> dict:
    rep = {"command": command, "engine_version": __version__, "config": config,
           "results": results, "status": status}
    if error is not None:
        rep["error"] = {"type": type(error).__name__, "message": str(error)}
    validate_report(rep)
    return rep


def dumps(report) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise SchemaError(f"{path}: {e}") from None
    validate_config(cfg)
    return cfg


def run_one(command: str, path: str, opts) -> tuple:
    """Returns (exit code, report or None, stderr text)."""
    t0 = time.perf_counter()
    try:
        cfg = _load_config(path)
        case = Case(cfg)
    except (SchemaError, ConfigError) as e:
        return EXIT_FAIL, None, f"{path}: schema error: {e}"
    try:
        results = COMMANDS[command](case, opts)
    except ConfigError as e:
        return EXIT_FAIL, None, f"{path}: config error: {e}"
    except MATH_ERRORS as e:
        rep = make_report(command, cfg, None, "math-error", e)
        return EXIT_MATH, rep, f"{path}: {type(e).__name__}: {e}"
    rep = make_report(command, cfg, results, "ok")
    return EXIT_OK, rep, f"{path}: ok ({time.perf_counter() - t0:.2f} s)"


def _run_one_star(args):
    return run_one(*args)


def _emit(report, out_path):
    text = dumps(report)
    if out_path:
        Path(out_path).parent.mkdir(parents=True, exist_ok=True)
        Path(out_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


def run_command(opts) -> int:
    configs = opts.config or []
    if not configs:
        print("error: --config PATH is required", file=sys.stderr)
        return EXIT_FAIL
    jobs = max(1, opts.jobs or 1)
    args = [(opts.command, c, opts) for c in configs]
    if jobs > 1 and len(configs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            outcomes = list(ex.map(_run_one_star, args))
    else:
        outcomes = [run_one(*a) for a in args]
    code = EXIT_OK
    many = len(configs) > 1
    for path, (rc, rep, msg) in zip(configs, outcomes):
        print(msg, file=sys.stderr)
        code = max(code, rc)
        if rep is None:
            continue
        if many and opts.out:
            _emit(rep, os.path.join(opts.out, Path(path).stem + ".json"))
        elif many:
            # one report per line, in config order
            sys.stdout.write(json.dumps(rep, sort_keys=True, ensure_ascii=False) + "\n")
            sys.stdout.flush()
        else:
            _emit(rep, opts.out)
    return code


def run_verify(opts) -> int:
    from . import verify
    if opts.filter and opts.filter.split("/")[0] not in verify.groups():
        print(f"unknown filter {opts.filter!r}; groups: {', '.join(verify.groups())}", file=sys.stderr)
        return EXIT_FAIL
    t0 = time.perf_counter()
    results = verify.run(opts.filter, fixture_dir=opts.fixtures)
    for r in results:
        print(f"{r.line()}  ({r.seconds:.2f} s)", file=sys.stderr)
    failed = [r for r in results if not r.passed]
    status = "failed" if failed else "ok"
    rep = make_report("verify-paper", {"filter": opts.filter} if opts.filter else None,
                      {"checks": [r.to_json() for r in results],
                       "passed": len(results) - len(failed), "failed": len(failed)}, status)
    _emit(rep, opts.out)
    print(f"{len(results) - len(failed)}/{len(results)} checks passed in {time.perf_counter() - t0:.2f} s",
          file=sys.stderr)
    if failed:
        print(f"first failing check: {failed[0].group}/{failed[0].name}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ghfilt", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"ghfilt {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name in list(COMMANDS) + ["verify-paper"]:
        sp = sub.add_parser(name)
        sp.add_argument("--out", metavar="PATH", help="write the report here (a directory for several configs)")
        if name == "verify-paper":
            sp.add_argument("--filter", metavar="NAME", help="run one check group (or group/name)")
            sp.add_argument("--fixtures", metavar="DIR", help="read golden fixtures from DIR")
            continue
        sp.add_argument("--config", metavar="PATH", action="append", help="case config (repeatable)")
        sp.add_argument("--jobs", type=int, default=1, metavar="N", help="parallel configs")
        sp.add_argument("--allow-nontempered", action="store_true")
        sp.add_argument("--assume-ss-ext-vanishing", action="store_true")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        opts = parser.parse_args(argv)
    except SystemExit as e:  # argparse usage errors count as schema errors
        return EXIT_OK if e.code == 0 else EXIT_FAIL
    if opts.command == "verify-paper":
        return run_verify(opts)
    return run_command(opts)


def exit_code_selftest() -> dict:
    """Run three tiny configs in-process and report their exit codes."""
    cfgs = {
        "ok": {"datum": {"type": "A1", "k": "1"}},
        "schema": {"datum": {"type": "A1", "k": "1"}, "bogus": 1},
        "math": {"datum": {"type": "A1", "k": "1"}, "J": [],
                 "U": {"kind": "one_dim", "weight": ["0"]}, "eta": ["0"]},
    }
    cmds = {"ok": "datum", "schema": "datum", "math": "jantzen"}
    out = {}
    with tempfile.TemporaryDirectory() as tmp:
        for key, cfg in cfgs.items():
            path = os.path.join(tmp, f"{key}.json")
            with open(path, "w", encoding="utf-8") as fh:
                json.dump(cfg, fh)
            args = [cmds[key], "--config", path, "--out", os.path.join(tmp, f"{key}.out.json")]
            if key == "math":
                args.append("--allow-nontempered")
            saved = sys.stderr
            sys.stderr = open(os.devnull, "w")
            try:
                out[key] = main(args)
            finally:
                sys.stderr.close()
                sys.stderr = saved
    return out


if __name__ == "__main__":
    sys.exit(main())
