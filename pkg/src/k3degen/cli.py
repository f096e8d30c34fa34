"""Command-line front end.

Human-readable text goes to stdout; JSON only to ``--out`` / ``--manifest``
paths. Exit codes: 0 degenerate (or success), 10 nondegenerate, 2 input
error, 1 verification failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__, charsub, lattice, verify
from .charsub import CharacteristicSubspace, CharsubError
from .degeneracy import (
    ConditionDisagreement,
    DivisorConfiguration,
    construct_classes,
    decide,
    equivalence_audit,
)
from .hodge import DeRhamModel, OracleDisagreement, Verdict, analyze
from .lattice import LatticeError

EXIT_DEGENERATE = 0
EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_NONDEGENERATE = 10


class InputError(Exception):
    pass


def _dump(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _write_json(path, data, outputs):
    text = _dump(data)
    Path(path).write_text(text)
    outputs[str(path)] = hashlib.sha256(text.encode()).hexdigest()


def _read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError as exc:
        raise InputError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from exc


def _load_lattice(source, p):
    try:
        lat, implied = lattice.load_lattice(source)
    except FileNotFoundError as exc:
        raise InputError(f"no such file: {source}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {source}: {exc}") from exc
    except (KeyError, TypeError) as exc:
        raise InputError(f"lattice JSON must have a 'gram' matrix: {exc}") from exc
    if p is None:
        p = implied if implied is not None else lattice.infer_prime(lat)
    elif implied is not None and implied != p:
        raise InputError(f"--p {p} conflicts with the shorthand's p={implied}")
    return lat, p


def _load_config(lat, path):
    data = _read_json(path)
    if not isinstance(data, dict) or "classes" not in data:
        raise InputError(f"{path}: configuration JSON must have a 'classes' list")
    return DivisorConfiguration.from_json(lat, data)


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


# --- commands ---------------------------------------------------------------


def cmd_lattice_info(args, out):
    lat, p = _load_lattice(args.source, args.p)
    sigma0 = lattice.artin_invariant(lat, p)
    n0 = lattice.p_kernel(lat, p)
    basis = n0.basis_array[..., 0].tolist()
    print(f"rank: {lat.rank}")
    print(f"det: {lat.det}")
    print(f"p: {p}")
    print(f"sigma0: {sigma0}")
    print(f"N_0 dimension: {n0.dim}")
    print("N_0 basis:")
    for row in basis:
        print("  " + " ".join(str(x) for x in row))
    report = {"rank": lat.rank, "det": lat.det, "p": p, "sigma0": sigma0, "n0_basis": basis}
    if args.out:
        _write_json(args.out, report, out["outputs"])
    out["summary"] = {"sigma0": sigma0, "det": lat.det}
    return EXIT_OK


def cmd_lattice_synth(args, out):
    lat = lattice.synthesize_gram(args.p, args.sigma0)
    _write_json(args.out, lat.to_json(), out["outputs"])
    print(f"wrote rank-{lat.rank} Gram matrix with det {lat.det} to {args.out}")
    out["summary"] = {"det": lat.det}
    return EXIT_OK


def cmd_charsub_gen(args, out):
    cs = charsub.generate(args.p, args.sigma0, args.strategy, args.seed)
    _write_json(args.out, cs.to_json(), out["outputs"])
    print(f"characteristic subspace p={cs.p} sigma0={cs.sigma0} over GF({cs.p}^{cs.field.n})")
    print(f"dim K = {cs.K.dim}, dim(K + phi K) = {cs.K_plus_phi_K.dim}, dim U = {cs.U.dim}")
    print(f"wrote {args.out}")
    out["summary"] = {"n": cs.field.n}
    return EXIT_OK


def _verdict_exit(verdict):
    return EXIT_NONDEGENERATE if verdict is Verdict.NONDEGENERATE else EXIT_DEGENERATE


def cmd_decide(args, out):
    lat, p = _load_lattice(args.lattice, args.p)
    config = _load_config(lat, args.classes)
    d = decide(config, p, finite_height=args.finite_height)
    print(f"verdict: {d.verdict}")
    print(f"dim N_D: {d.dim_ND}")
    if not args.finite_height:
        print(f"dim N_D cap N_0: {d.dim_ND_cap_N0}")
        print(f"sigma0: {d.sigma0}")
    if args.out:
        _write_json(args.out, d.to_json(), out["outputs"])
    out["summary"] = d.to_json()
    return _verdict_exit(d.verdict)


def cmd_construct(args, out):
    lat, p = _load_lattice(args.lattice, args.p)
    config = construct_classes(lat, p, args.r, seed=args.seed)
    _write_json(args.out, config.to_json(), out["outputs"])
    print(f"constructed {len(config)} class(es); wrote {args.out}")
    out["summary"] = {"classes": len(config)}
    return EXIT_OK


def cmd_audit(args, out):
    lat, p = _load_lattice(args.lattice, args.p)
    cs = CharacteristicSubspace.from_json(_read_json(args.charsub))
    config = _load_config(lat, args.classes)
    model = DeRhamModel(lat, cs)
    audit = equivalence_audit(lat, cs, config, p, model=model)
    report = analyze(model, config.classes)
    names = {
        "rational_criterion": "(1) dim(N_D cap N_0) >= sigma0",
        "f2_in_chern_span": "(2) F^2 in span of de Rham Chern classes",
        "hodge_rank_drop": "(3) dim C < dim N_D",
        "nondegenerate": "(4) log HdR spectral sequence nondegenerate",
    }
    for key, value in audit._asdict().items():
        print(f"{names[key]}: {value}")
    print("all four conditions hold" if audit.holds else "all four conditions fail")
    if args.out:
        _write_json(args.out, {"conditions": audit._asdict(), "report": report.to_json()}, out["outputs"])
    out["summary"] = {"conditions_hold": audit.holds, "report": report.to_json()}
    return _verdict_exit(report.verdict)


def cmd_verify(args, out):
    cfg = verify.VerifyConfig(args.p_list, args.sigma0_list, args.trials, args.seed)
    results = verify.run(cfg, modules=args.module, jobs=args.jobs)
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{r.name:<{width}}  {status}  checks={r.checked}")
        for note in r.notes:
            print(f"{'':<{width}}  note: {note}")
        for failure in r.failures:
            print(f"{'':<{width}}  failure: {failure}")
    ok = all(r.passed for r in results)
    print("all suites pass" if ok else "some suites FAILED")
    if args.out:
        _write_json(args.out, {"suites": [r.to_json() for r in results], "passed": ok}, out["outputs"])
    out["summary"] = {r.name: {"passed": r.passed, "checked": r.checked} for r in results}
    return EXIT_OK if ok else EXIT_FAILED


# --- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="k3degen", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--manifest", help="write a JSON run manifest to this path")
    sub = parser.add_subparsers(dest="command", required=True)

    lat = sub.add_parser("lattice", help="lattice analysis")
    lsub = lat.add_subparsers(dest="action", required=True)
    info = lsub.add_parser("info", parents=[common], help="rank, det, sigma0 and N_0 basis")
    info.add_argument("source", help="Gram JSON path or ss:p=<p>,sigma0=<s>")
    info.add_argument("--p", type=int, help="prime (inferred from the source or |det| if omitted)")
    info.add_argument("--out", help="write the report as JSON")
    info.set_defaults(func=cmd_lattice_info)
    synth = lsub.add_parser("synth", parents=[common], help="write a synthesized Gram JSON")
    synth.add_argument("--p", type=int, required=True)
    synth.add_argument("--sigma0", type=int, required=True)
    synth.add_argument("--out", required=True)
    synth.set_defaults(func=cmd_lattice_synth)

    cs = sub.add_parser("charsub", help="characteristic subspaces")
    csub = cs.add_subparsers(dest="action", required=True)
    gen = csub.add_parser("gen", parents=[common], help="generate a characteristic subspace")
    gen.add_argument("--p", type=int, required=True)
    gen.add_argument("--sigma0", type=int, required=True)
    gen.add_argument("--strategy", choices=charsub.STRATEGIES, default="seeded-random")
    gen.add_argument("--seed", type=int)
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=cmd_charsub_gen)

    dec = sub.add_parser("decide", parents=[common], help="degenerate / nondegenerate verdict")
    dec.add_argument("--lattice", required=True)
    dec.add_argument("--classes", required=True)
    dec.add_argument("--p", type=int)
    dec.add_argument("--finite-height", action="store_true", help="input surface has finite height")
    dec.add_argument("--out")
    dec.set_defaults(func=cmd_decide)

    con = sub.add_parser("construct", parents=[common], help="build a nondegenerate configuration")
    con.add_argument("--lattice", required=True)
    con.add_argument("--r", type=int, required=True)
    con.add_argument("--p", type=int)
    con.add_argument("--seed", type=int, help="choose T at random instead of the canonical one")
    con.add_argument("--out", required=True)
    con.set_defaults(func=cmd_construct)

    aud = sub.add_parser("audit", parents=[common], help="check the four equivalent conditions")
    aud.add_argument("--lattice", required=True)
    aud.add_argument("--charsub", required=True)
    aud.add_argument("--classes", required=True)
    aud.add_argument("--p", type=int)
    aud.add_argument("--out")
    aud.set_defaults(func=cmd_audit)

    ver = sub.add_parser("verify", parents=[common], help="run the property suites")
    ver.add_argument("--module", action="append", choices=sorted(verify.MODULE_SUITES))
    ver.add_argument("--p-list", type=_int_list)
    ver.add_argument("--sigma0-list", type=_int_list)
    ver.add_argument("--trials", type=int)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--jobs", type=int, default=1)
    ver.add_argument("--out")
    ver.set_defaults(func=cmd_verify)

    rep = sub.add_parser("replay", help="re-run a manifest and compare output hashes")
    rep.add_argument("manifest_in", metavar="MANIFEST")
    rep.set_defaults(func=cmd_replay, manifest=None)
    return parser


def _params(args):
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "manifest")}


def _strip_manifest(argv):
    out, skip = [], False
    for tok in argv:
        if skip:
            skip = False
        elif tok == "--manifest":
            skip = True
        elif not tok.startswith("--manifest="):
            out.append(tok)
    return out


def cmd_replay(args, out):
    manifest = _read_json(args.manifest_in)
    try:
        argv, recorded = manifest["argv"], manifest["outcome"]
    except (KeyError, TypeError) as exc:
        raise InputError(f"{args.manifest_in}: not a run manifest (missing {exc})") from exc
    if argv and argv[0] == "replay":
        raise InputError("refusing to replay a replay manifest")
    code, rerun = _execute(_strip_manifest(argv))
    same = code == recorded.get("exit_code") and rerun["outputs"] == recorded.get("outputs")
    print("replay reproduced identical outputs" if same else "replay DIFFERS from the manifest")
    for path, digest in sorted(recorded.get("outputs", {}).items()):
        now = rerun["outputs"].get(path)
        print(f"  {path}: {'ok' if now == digest else 'changed'}")
    out["summary"] = {"identical": same}
    return EXIT_OK if same else EXIT_FAILED


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    return _execute(argv)[0]


def _execute(argv):
    parser = build_parser()
    args = parser.parse_args(argv)
    out = {"outputs": {}, "summary": None}
    try:
        code = args.func(args, out)
    except (InputError, LatticeError, CharsubError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_INPUT
    except (OracleDisagreement, ConditionDisagreement) as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        code = EXIT_FAILED
    if args.manifest:
        manifest = {
            "command": " ".join(filter(None, [args.command, getattr(args, "action", None)])),
            "argv": argv,
            "params": _params(args),
            "version": __version__,
            "prng": {"algorithm": "PCG64", "library": "numpy", "version": np.__version__},
            "outcome": {"exit_code": code, "outputs": out["outputs"], "summary": out["summary"]},
        }
        Path(args.manifest).write_text(_dump(manifest))
    return code, out


if __name__ == "__main__":
    sys.exit(main())
