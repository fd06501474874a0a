"""Command-line entry point.

Every subcommand emits JSON (or CSV for search hits) with all numbers as
decimal strings, so arbitrary-precision values survive any consumer and
identical inputs give identical outputs. Exit codes: 0 success or vacuous
verdict, 1 failed mathematical assertion, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .dickson import carlitz_check, dickson_eval, dickson_poly
from .errors import VerificationError
from .fields import FIELD_ORDER_LIMIT, FieldSpec
from .irreducibility import certify_dickson_translate, turnwald_decide
from .kloosterman import SWEEP_ORDER_LIMIT, kloosterman_sum, weil_bound_ok
from .lucas import (
    LucasPair,
    bhv_window_check,
    endgame_sweep,
    lucas_terms,
    no_primitive_divisor_chain,
    primitive_divisor,
)
from .subfield import (
    SearchConfig,
    contradiction_replay,
    divisibility_step,
    exhaustive_search,
    lemma9_check,
    minimal_polynomial,
)

CEILING_ENV = "KLSUM_CEILING"


@dataclass
class RunConfig:
    seed: int = 0
    ceiling: int = FIELD_ORDER_LIMIT
    workers: int = 1
    output: str | None = None
    fmt: str = "json"
    ceiling_env: str | None = None


def _load_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"bad config line (expected key = value): {line!r}")
            key, val = line.split("=", 1)
            values[key.strip()] = val.strip()
    return values


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    env_ceiling = os.environ.get(CEILING_ENV)
    if env_ceiling is not None:
        cfg.ceiling = int(env_ceiling)
        cfg.ceiling_env = env_ceiling
    if getattr(args, "config", None):
        for key, val in _load_config_file(args.config).items():
            if key == "seed":
                cfg.seed = int(val)
            elif key == "ceiling":
                cfg.ceiling = int(val)
            elif key == "workers":
                cfg.workers = int(val)
            elif key == "output":
                cfg.output = val
            elif key == "format":
                cfg.fmt = val
            else:
                raise ValueError(f"unknown config key: {key}")
    # explicit flags win over config file and environment
    if getattr(args, "seed", None) is not None:
        cfg.seed = args.seed
    if getattr(args, "workers", None) is not None:
        cfg.workers = args.workers
    if getattr(args, "output", None) is not None:
        cfg.output = args.output
    if getattr(args, "format", None) is not None:
        cfg.fmt = args.format
    return cfg


def _stringify(obj):
    """Render every integer as a decimal string, recursively."""
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return repr(obj)
    if isinstance(obj, complex):
        return f"{obj.real!r}{obj.imag:+}j"
    if isinstance(obj, dict):
        return {str(k): _stringify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_stringify(v) for v in obj]
    return obj


def _emit(payload, cfg: RunConfig, text: str | None = None) -> None:
    out = text if text is not None else json.dumps(_stringify(payload), indent=2, sort_keys=True)
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(out + ("" if out.endswith("\n") else "\n"))
    else:
        print(out)


def _parse_coeffs(text: str) -> list[int]:
    return [int(c) for c in text.split(",")]


def _field_from_args(args, cfg: RunConfig) -> FieldSpec:
    if args.p**args.d > cfg.ceiling:
        raise ValueError(f"field order {args.p}^{args.d} exceeds ceiling {cfg.ceiling}")
    return FieldSpec.create(args.p, args.d, cfg.seed)


# -- subcommand handlers -----------------------------------------------------


def _cmd_field(args, cfg: RunConfig) -> int:
    fld = _field_from_args(args, cfg)
    _emit(fld.to_json(), cfg)
    return 0


def _cmd_kloosterman(args, cfg: RunConfig) -> int:
    fld = _field_from_args(args, cfg)
    if (args.b is None) == (args.b_index is None):
        raise ValueError("give exactly one of --b or --b-index")
    if args.b is not None:
        b = fld.element(_parse_coeffs(args.b) + [0] * (fld.d - len(_parse_coeffs(args.b))))
    else:
        b = fld.generator**args.b_index
    kv = kloosterman_sum(fld, b)
    _emit(
        {
            "field": fld.to_json(),
            "b": list(b.coeffs),
            "counts": list(kv.counts),
            "coords": list(kv.value.coords),
            "embeddings": kv.value.embeddings(),
            "is_minus_one": kv.is_minus_one(),
            "weil_bound_ok": weil_bound_ok(kv),
        },
        cfg,
    )
    return 0


def _cmd_dickson(args, cfg: RunConfig) -> int:
    if args.mode == "coeffs":
        poly = dickson_poly(args.n, args.r)
        _emit({"n": args.n, "r": args.r, "coeffs": poly.to_json()}, cfg)
    else:
        value = dickson_eval(args.n, args.r, args.x)
        _emit({"n": args.n, "r": args.r, "x": args.x, "value": str(value)}, cfg)
    return 0


def _cmd_carlitz(args, cfg: RunConfig) -> int:
    d = args.m * args.n
    if args.p**d > cfg.ceiling:
        raise ValueError(f"field order {args.p}^{d} exceeds ceiling {cfg.ceiling}")
    fld = FieldSpec.create(args.p, d, cfg.seed)
    a = fld.subfield_generator(args.m) ** args.a
    check = carlitz_check(fld, args.m, a)
    _emit(check.to_json(), cfg)
    return 0 if check.equal else 1


def _cmd_minpoly(args, cfg: RunConfig) -> int:
    rec = minimal_polynomial(args.p, args.m, args.a, cfg.seed)
    ok = lemma9_check(rec)
    payload = rec.to_json()
    payload["binomial_congruence"] = ok
    _emit(payload, cfg)
    return 0 if ok else 1


def _cmd_irred(args, cfg: RunConfig) -> int:
    cert = turnwald_decide(args.n, args.r)
    payload = cert.to_json()
    if args.certify_primes:
        pattern_cert = certify_dickson_translate(args.n, args.r, args.certify_primes)
        payload["pattern_certificate"] = pattern_cert.to_json()
        if cert.verdict == "irreducible" and pattern_cert.verdict == "reducible":
            raise VerificationError("pattern certificate contradicts the decision")
    _emit(payload, cfg)
    return 0


def _cmd_lucas(args, cfg: RunConfig) -> int:
    if args.mode == "check":
        report = bhv_window_check(LucasPair(args.P, args.Q), args.kmax)
        _emit(report.to_json(), cfg)
        return 0 if report.ok or not report.hypothesis_ok else 1
    if args.mode == "primdiv":
        pair = LucasPair(args.P, args.Q)
        witness = primitive_divisor(pair, args.k)
        u_k, v_k = lucas_terms(pair, args.k)
        _emit(
            {
                "P": args.P,
                "Q": args.Q,
                "k": args.k,
                "u_k": str(u_k),
                "v_k": str(v_k),
                "witness": None if witness is None else str(witness),
            },
            cfg,
        )
        return 0
    if args.mode == "chain":
        verdict = no_primitive_divisor_chain(args.l, args.c, args.s)
        _emit(verdict.to_json(), cfg)
        return 0 if verdict.endgame_ok else 1
    # endgame sweep
    results = [endgame_sweep(args.l, c, args.smax) for c in (1, -1)]
    _emit({"sweeps": results}, cfg)
    return 0 if all(not r["violations"] for r in results) else 1


def _cmd_search(args, cfg: RunConfig) -> int:
    primes = tuple(int(p) for p in args.p.split(","))
    max_order = args.max_order if args.max_order is not None else min(cfg.ceiling, SWEEP_ORDER_LIMIT)
    config = SearchConfig(
        primes=primes,
        max_order=max_order,
        seed=cfg.seed,
        workers=cfg.workers,
        checkpoint_path=args.resume,
        ceiling_env=cfg.ceiling_env,
    )
    report = exhaustive_search(config)
    if args.report:
        with open(args.report, "w") as fh:
            json.dump(_stringify(report.to_json()), fh, indent=2, sort_keys=True)
    if cfg.fmt == "csv":
        _emit(None, cfg, text=report.hits_csv())
    else:
        _emit(report.to_json(), cfg)
    return 0


def _cmd_replay(args, cfg: RunConfig) -> int:
    trace = contradiction_replay(args.p, args.l, args.m, cfg.seed)
    _emit(trace.to_json(), cfg)
    return 0


def _cmd_divstep(args, cfg: RunConfig) -> int:
    verdict = divisibility_step(args.p, args.m, args.l, args.a, cfg.seed)
    _emit(verdict.to_json(), cfg)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="klsum",
        description="Exact Kloosterman sums and the verification suite around them.",
    )
    parser.add_argument("--config", help="key = value configuration file")
    parser.add_argument("--seed", type=int, help="deterministic field-construction seed")
    parser.add_argument("--workers", type=int, help="parallel workers for sweeps")
    parser.add_argument("--output", help="write the result to this path instead of stdout")
    parser.add_argument("--format", choices=["json", "csv"], help="output format")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("field", help="construct a field and print its descriptor")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.set_defaults(func=_cmd_field)

    sp = sub.add_parser("kloosterman", help="evaluate a Kloosterman sum exactly")
    ksub = sp.add_subparsers(dest="mode", required=True)
    ev = ksub.add_parser("eval")
    ev.add_argument("--p", type=int, required=True)
    ev.add_argument("--d", type=int, required=True)
    ev.add_argument("--b", help="comma-separated coefficients of b")
    ev.add_argument("--b-index", type=int, help="b as a power of the generator")
    ev.set_defaults(func=_cmd_kloosterman)

    sp = sub.add_parser("dickson", help="Dickson polynomial coefficients or values")
    dsub = sp.add_subparsers(dest="mode", required=True)
    for mode in ("coeffs", "eval"):
        dp = dsub.add_parser(mode)
        dp.add_argument("--n", type=int, required=True)
        dp.add_argument("--r", type=int, required=True)
        if mode == "eval":
            dp.add_argument("--x", type=int, required=True)
        dp.set_defaults(func=_cmd_dickson)

    sp = sub.add_parser("carlitz", help="check the base/extension identity on one instance")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--a", type=int, required=True, help="power index of a in the subfield")
    sp.set_defaults(func=_cmd_carlitz)

    sp = sub.add_parser("minpoly", help="minimal polynomial of K_q(a) with the mod-p congruence")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--a", type=int, required=True, help="power index of a in F_q^*")
    sp.set_defaults(func=_cmd_minpoly)

    sp = sub.add_parser("irred", help="irreducibility certificate for D_n(x, r) + 1")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--certify-primes", type=int, default=0)
    sp.set_defaults(func=_cmd_irred)

    sp = sub.add_parser("lucas", help="Lucas sequences and primitive divisors")
    lsub = sp.add_subparsers(dest="mode", required=True)
    lc = lsub.add_parser("check")
    lc.add_argument("--P", type=int, required=True)
    lc.add_argument("--Q", type=int, required=True)
    lc.add_argument("--kmax", type=int, default=200)
    pd = lsub.add_parser("primdiv")
    pd.add_argument("--P", type=int, required=True)
    pd.add_argument("--Q", type=int, required=True)
    pd.add_argument("--k", type=int, required=True)
    ch = lsub.add_parser("chain")
    ch.add_argument("--l", type=int, required=True)
    ch.add_argument("--c", type=int, required=True)
    ch.add_argument("--s", type=int, required=True)
    eg = lsub.add_parser("endgame")
    eg.add_argument("--l", type=int, required=True)
    eg.add_argument("--smax", type=int, default=10**6)
    for lp in (lc, pd, ch, eg):
        lp.set_defaults(func=_cmd_lucas)

    sp = sub.add_parser("search", help="exhaustive subfield sweep for K = -1 hits")
    sp.add_argument("--p", required=True, help="comma-separated primes")
    sp.add_argument("--max-order", type=int, help=f"sweep ceiling (<= {SWEEP_ORDER_LIMIT})")
    sp.add_argument("--report", help="also write the full JSON report here")
    sp.add_argument("--resume", help="checkpoint file to resume from / write to")
    sp.set_defaults(func=_cmd_search)

    sp = sub.add_parser("replay", help="executed replay of the contradiction chain")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--m", type=int, default=1)
    sp.set_defaults(func=_cmd_replay)

    sp = sub.add_parser("divstep", help="divisibility of the Dickson translate by the minimal polynomial")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--a", type=int, required=True)
    sp.set_defaults(func=_cmd_divstep)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _resolve_config(args)
        return args.func(args, cfg)
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ZeroDivisionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
