"""
kforms - Command Line Interface

Entry point for evaluating expressions, running verification suites and
the field-theory helpers.

Features:
    - eval: evaluate an expression on the exact or plane-wave backend
    - verify: run a suite and print its versioned JSON report
    - dispersion: solve the deformed mass shell for k0
    - noether: currents and energy-momentum tensor of a field from a mode file
    - suites: list suite names

Exit codes: 0 success, 1 failed identities or engine errors, 2 usage,
parse and type errors.
"""

import argparse
import json
import logging
import sys
from fractions import Fraction

import numpy as np

import config
import fieldtheory
from evaluator import BackendError, EvalEnv, evaluate_text
from expression_parser import ExprTypeError, ParseError
from verification import run_suite

logging.basicConfig(level=config.LOG_LEVEL, format=config.LOG_FORMAT)
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def _json_default(value):
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, complex):
        return [value.real, value.imag]
    raise TypeError(f"not JSON serializable: {type(value).__name__}")


def to_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, default=_json_default)


def _complex_pair(value) -> list[float]:
    value = complex(value)
    return [value.real, value.imag]


def _load_modes(path: str) -> list:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            records = json.load(handle)
    except (OSError, json.JSONDecodeError) as e:
        raise ValueError(f"cannot read mode file {path}: {e}")
    if not isinstance(records, list):
        raise ValueError(f"mode file {path} must hold a JSON array of {{re, im, k}} records")
    return records


def _parse_kappa(text: str | None, backend: str):
    if text is None or text == "symbolic":
        return None
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"--kappa expects a rational number or 'symbolic', got {text!r}")
    return float(value) if backend == "wave" else value


def _parse_vector(text: str) -> np.ndarray:
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"--k expects three comma-separated numbers, got {text!r}")
    if len(values) != 3:
        raise argparse.ArgumentTypeError(f"--k expects three components, got {len(values)}")
    return np.array(values)


# =============================================================================
# COMMANDS
# =============================================================================
def cmd_eval(args) -> int:
    kappa = _parse_kappa(args.kappa, args.backend)
    phi = None
    if args.modes:
        phi = fieldtheory.config_from_modes(_load_modes(args.modes), 0.0,
                                            kappa or config.WAVE_KAPPA).phi
    env = EvalEnv(backend=args.backend, kappa=kappa, phi=phi)
    print(evaluate_text(args.expression, env))
    return EXIT_OK


def cmd_verify(args) -> int:
    report = run_suite(args.suite, seed=args.seed, tol=args.tol, grid_points=args.grid,
                       half_width=args.domain, timing=args.timing)
    text = to_json(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
        logger.info(f"Report written to {args.out}")
    else:
        print(text)
    if not report['valid']:
        print(f"[error] suite {args.suite}: {len(report['failures'])} failed case(s)", file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK


def cmd_dispersion(args) -> int:
    kvec = args.k
    k0 = fieldtheory.dispersion_solve(kvec, args.mass, args.kappa)
    k = (k0,) + tuple(float(v) for v in kvec)
    print(to_json({
        'k0': k0,
        'k': list(k),
        'mass': args.mass,
        'kappa': args.kappa,
        'residual': fieldtheory.dispersion_residual(k, args.mass, args.kappa),
    }))
    return EXIT_OK


def cmd_noether(args) -> int:
    cfg = fieldtheory.config_from_modes(_load_modes(args.modes), args.mass, args.kappa)
    conservation = fieldtheory.conservation_check(cfg)
    charge = fieldtheory.u1_charge_check(cfg)
    first, second = fieldtheory.action_forms(cfg)
    tensor = fieldtheory.em_tensor(cfg)
    on_shell = fieldtheory.eom_residual(cfg).max_abs() <= config.TOLERANCES["conservation"] * cfg.scale()
    result = {
        'mass': cfg.mass,
        'kappa': cfg.kappa,
        'modes': len(cfg.phi.modes()),
        'on_shell': bool(on_shell),
        'action': {'hodge_form': _complex_pair(first), 'wave_operator_form': _complex_pair(second)},
        'em_tensor_zero_mode': [[_complex_pair(v) for v in row] for row in tensor.at_mode()],
        'em_tensor_asymmetry': tensor.asymmetry(),
        'conservation': {key: conservation[key] for key in ('valid', 'cases', 'failures')},
        'u1_conservation': {key: charge[key] for key in ('valid', 'cases', 'failures')},
    }
    result['valid'] = conservation['valid'] and charge['valid']
    print(to_json(result))
    if not on_shell:
        logger.warning("field is off-shell; currents need not be conserved")
    return EXIT_OK if result['valid'] else EXIT_FAILURE


def cmd_suites(args) -> int:
    for name in config.SUITES + ["all"]:
        print(name)
    return EXIT_OK


# =============================================================================
# ARGUMENTS
# =============================================================================
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kforms", description="κ-Minkowski differential forms kernel.")
    commands = parser.add_subparsers(dest="command", required=True)

    p_eval = commands.add_parser("eval", help="evaluate an expression")
    p_eval.add_argument("expression")
    p_eval.add_argument("--kappa", default="symbolic", help="rational κ or 'symbolic' (default)")
    p_eval.add_argument("--backend", choices=config.BACKENDS, default=config.DEFAULT_BACKEND)
    p_eval.add_argument("--modes", help="JSON mode file bound to phi (wave backend)")
    p_eval.set_defaults(func=cmd_eval)

    p_verify = commands.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite", choices=config.SUITES + ["all"])
    p_verify.add_argument("--seed", type=int, default=config.DEFAULT_SEED,
                          help="random seed (default: KFORMS_SEED)")
    p_verify.add_argument("--tol", type=float, default=None, help="override every numeric tolerance")
    p_verify.add_argument("--out", help="write the JSON report here instead of stdout")
    p_verify.add_argument("--grid", type=int, default=None, help="star-product grid points N")
    p_verify.add_argument("--domain", type=float, default=None, help="star-product half-width L")
    p_verify.add_argument("--timing", action="store_true", default=config.REPORT_TIMING,
                          help="add elapsed seconds to the report")
    p_verify.set_defaults(func=cmd_verify)

    p_disp = commands.add_parser("dispersion", help="solve the deformed mass shell")
    p_disp.add_argument("--k", type=_parse_vector, required=True, help='spatial momentum "kx,ky,kz"')
    p_disp.add_argument("--mass", type=float, default=0.0)
    p_disp.add_argument("--kappa", type=float, default=config.WAVE_KAPPA)
    p_disp.set_defaults(func=cmd_dispersion)

    p_noether = commands.add_parser("noether", help="Noether currents of a field")
    p_noether.add_argument("--modes", required=True, help="JSON array of {re, im, k: [k0,k1,k2,k3]}")
    p_noether.add_argument("--mass", type=float, default=0.0)
    p_noether.add_argument("--kappa", type=float, default=config.WAVE_KAPPA)
    p_noether.set_defaults(func=cmd_noether)

    p_suites = commands.add_parser("suites", help="list verification suites")
    p_suites.set_defaults(func=cmd_suites)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logger.info(f"kforms {args.command}")
    try:
        return args.func(args)
    except (ParseError, ExprTypeError, BackendError, TypeError, argparse.ArgumentTypeError) as e:
        print(f"[error] {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ArithmeticError) as e:
        print(f"[error] {e}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
