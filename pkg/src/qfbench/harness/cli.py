"""Command-line entry point: ``qfbench <subcommand> [flags]``.

Exit codes: 0 success, 1 invalid config, 2 campaign aborted (a state slot
exhausted its degeneracy resamples), 3 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from ..errors import ConfigError
from ..identities import cosine_identity_residual, sorkin_identity_residual
from .campaign import PLANNERS, run_campaign, summarize
from .config import FORMATS, TESTS, build_config, load_config_file
from .qasm import export_qasm
from .report import render_report

EXIT_OK, EXIT_CONFIG, EXIT_ABORTED, EXIT_IO = 0, 1, 2, 3

log = logging.getLogger("qfbench")


def _add_campaign_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat YAML key-value config file")
    p.add_argument("--states", type=int, help="number of random states (default 20)")
    p.add_argument("--shots", type=int, help="shots per circuit (default 10000)")
    p.add_argument("--seed", type=int, help="campaign seed (default 0)")
    p.add_argument("--modes", help="comma list of exact,ideal-sampled,noisy,noisy-exact")
    p.add_argument("--alpha", type=float, help="Peres superposition weight (default 1/sqrt 2)")
    p.add_argument("--n-paths", type=int, help="path count for kappa-n (4 or 8)")
    p.add_argument("--noise-readout", help="readout flip e, or e01,e10")
    p.add_argument("--noise-deph1", type=float, help="dephasing per single-qubit gate")
    p.add_argument("--noise-deph2", type=float, help="dephasing per CNOT (both qubits)")
    p.add_argument("--resamples", type=int, help="bootstrap resamples (default 1000)")
    p.add_argument("--real-only", action="store_true", default=None, help="force all phases to zero")
    p.add_argument("--workers", type=int, help="parallel worker processes")
    p.add_argument("--out", help="report path (stdout if omitted)")
    p.add_argument("--format", choices=FORMATS, help="report format (default csv)")
    p.add_argument("--qasm-dir", help="also write every circuit as OpenQASM here")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qfbench", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)
    for test in TESTS:
        _add_campaign_flags(sub.add_parser(test, help=f"run a {test} campaign"))
    ident = sub.add_parser("identities", help="check the F and kappa identities numerically")
    ident.add_argument("--seed", type=int, default=0)
    ident.add_argument("--samples", type=int, default=100_000)
    exp = sub.add_parser("export-qasm", help="write a campaign's circuits as OpenQASM 2.0")
    exp.add_argument("--test", choices=TESTS, default="peres")
    _add_campaign_flags(exp)
    return parser


_FLAG_KEYS = (
    "states", "shots", "seed", "modes", "alpha", "n_paths", "noise_readout",
    "noise_deph1", "noise_deph2", "resamples", "real_only", "workers", "out", "format",
)


def _config_from_args(args, test):
    values = load_config_file(args.config) if args.config else {}
    values["test"] = test
    for key in _FLAG_KEYS:
        v = getattr(args, key, None)
        if v is not None:
            values[key] = v
    return build_config(values)


def write_qasm(config, directory) -> list[Path]:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for i in range(config.n_states):
        plan = PLANNERS[config.test](config, i)
        for name, circuit in plan.circuits:
            path = out / f"{config.test}_s{i:03d}_{name}.qasm"
            path.write_text(export_qasm(circuit))
            written.append(path)
    return written


def _identities(args) -> int:
    r4 = cosine_identity_residual(args.samples, args.seed)
    r3 = sorkin_identity_residual(max(1, args.samples // 10), 3, args.seed)
    r_4 = sorkin_identity_residual(max(1, args.samples // 10), 4, args.seed)
    print(f"cosine identity  max|F - 1|   = {r4:.3e}  ({'ok' if r4 < 1e-9 else 'FAIL'})")
    print(f"kappa3 identity  max|kappa3|  = {r3:.3e}  ({'ok' if r3 < 1e-12 else 'FAIL'})")
    print(f"kappa4 identity  max|kappa4|  = {r_4:.3e}  ({'ok' if r_4 < 1e-12 else 'FAIL'})")
    return EXIT_OK


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
    )
    if args.command == "identities":
        return _identities(args)
    test = args.test if args.command == "export-qasm" else args.command
    try:
        config = _config_from_args(args, test)
    except ConfigError as exc:
        print(f"invalid config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        if args.command == "export-qasm":
            if not args.qasm_dir:
                print("invalid config: export-qasm needs --qasm-dir", file=sys.stderr)
                return EXIT_CONFIG
            paths = write_qasm(config, args.qasm_dir)
            print(f"wrote {len(paths)} circuit(s) to {args.qasm_dir}", file=sys.stderr)
            return EXIT_OK
        if args.qasm_dir:
            write_qasm(config, args.qasm_dir)
        records = run_campaign(config)
        text = render_report(records, config)
        if config.out:
            Path(config.out).write_text(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO
    print(json.dumps(summarize(records), indent=2), file=sys.stderr)
    if any(r.aborted for r in records):
        print("campaign aborted: degenerate-state resampling exhausted", file=sys.stderr)
        return EXIT_ABORTED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
