"""Command-line front end: spectra, entropies, grid sweeps, verification.

Every run is deterministic (no clocks, no RNG): identical configurations
produce byte-identical documents. Exact rationals are serialized as "p/q"
strings next to float renderings so JSON numbers never lose precision.

Exit codes: 0 success, 1 verification failure (requested methods or suites
disagree), 2 usage error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .entropy import InvalidSpectrumError, renyi, von_neumann
from .oracle.dense import DEFAULT_MAX_DIM, ResourceCapError, eigenspectrum
from .oracle.fock import fock_block_spectrum
from .oracle.pauli import pauli_density_matrix_spin1
from .spectrum import block_spectrum, eigenvalue_recurrence, saturation_value
from .verify import SUITES, run_suite

__all__ = ["RunConfig", "run_spectrum", "run_entropy", "run_verify", "main"]

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

FORMULA_METHODS = ("recurrence", "closed_form")
ORACLE_METHODS = ("fock_oracle", "pauli_oracle")
ALL_METHODS = FORMULA_METHODS + ORACLE_METHODS

_MATCH_TOL = 1e-9
_ZERO_TOL = 1e-10


class UsageError(ValueError):
    """Invalid argument combination detected after parsing."""


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved description of one run; every field is deterministic."""

    command: str
    spin: int = 1
    lengths: tuple[int, ...] = (2,)
    methods: tuple[str, ...] = ("recurrence",)
    alphas: tuple[float, ...] = (0.5, 1.0, 2.0)
    output_format: str = "json"
    max_dim: int = DEFAULT_MAX_DIM
    out: str | None = None
    suite: str = "all"
    max_spin: int = 5
    max_length: int | None = None
    explicit_lengths: bool = False

    def as_document(self) -> dict:
        doc = {
            "command": self.command,
            "spin": self.spin,
            "format": self.output_format,
            "max_dim": self.max_dim,
        }
        if self.command == "verify":
            doc["suite"] = self.suite
            doc["max_spin"] = self.max_spin
            if self.max_length is not None:
                doc["max_length"] = self.max_length
            if self.explicit_lengths:
                doc["lengths"] = list(self.lengths)
        else:
            doc["lengths"] = list(self.lengths)
        if self.command in ("spectrum", "sweep"):
            doc["methods"] = list(self.methods)
        if self.command == "entropy":
            doc["alphas"] = list(self.alphas)
        return doc


def _reference_entries(S: int, L: int) -> list[tuple[int, Fraction]]:
    return [(J, eigenvalue_recurrence(S, L, J)) for J in range(S + 1)]


def _assign_sectors(
    values: list[float], reference: list[tuple[int, Fraction]]
) -> tuple[list[tuple[int, float, int]], int, float, bool, str]:
    """Label oracle eigenvalues with the J sector of the nearest formula value.

    Returns (rows, leftover count, max |leftover|, ok flag, detail). The flag
    drops when any match deviates beyond 1e-9 or a leftover exceeds 1e-10.
    """
    remaining = list(values)
    rows = []
    ok = True
    notes = []
    for J, lam in sorted(reference, key=lambda item: -float(item[1])):
        target = float(lam)
        consumed = []
        for _ in range(2 * J + 1):
            if not remaining:
                ok = False
                notes.append(f"ran out of eigenvalues at J={J}")
                break
            best = min(range(len(remaining)), key=lambda i: abs(remaining[i] - target))
            consumed.append(remaining.pop(best))
        if not consumed:
            continue
        deviation = max(abs(v - target) for v in consumed)
        if deviation > _MATCH_TOL:
            ok = False
            notes.append(f"J={J} deviates by {deviation:.3e}")
        rows.append((J, sum(consumed) / len(consumed), 2 * J + 1))
    leftover_max = max((abs(v) for v in remaining), default=0.0)
    if leftover_max > _ZERO_TOL:
        ok = False
        notes.append(f"leftover eigenvalue {leftover_max:.3e}")
    detail = "; ".join(notes) if notes else (
        f"matched formula values within {_MATCH_TOL}, leftovers below {_ZERO_TOL}"
    )
    rows.sort(key=lambda row: row[0])
    return rows, len(remaining), leftover_max, ok, detail


def _oracle_values(cfg: RunConfig, method: str, L: int) -> list[float]:
    if method == "fock_oracle":
        return fock_block_spectrum(cfg.spin, L, max_dim=cfg.max_dim)
    if cfg.spin != 1:
        raise UsageError("pauli_oracle supports bulk spin 1 only")
    return eigenspectrum(pauli_density_matrix_spin1(L), max_dim=max(cfg.max_dim, 3**7))


def run_spectrum(cfg: RunConfig) -> tuple[dict, int]:
    """Per-(L, J) eigenvalues for every requested method, with agreement checks."""
    results = []
    checks = []
    failed = False
    for L in cfg.lengths:
        formula_specs = {}
        for method in cfg.methods:
            if method not in FORMULA_METHODS:
                continue
            spec = block_spectrum(cfg.spin, L, method=_SPEC_METHOD[method])
            formula_specs[method] = spec
            for J, value, mult in spec.entries:
                results.append(
                    {
                        "S": cfg.spin,
                        "L": L,
                        "J": J,
                        "lambda_exact": str(value),
                        "lambda_float": float(value),
                        "multiplicity": mult,
                        "method": method,
                    }
                )
        if len(formula_specs) == 2:
            agree = (
                formula_specs["recurrence"].entries
                == formula_specs["closed_form"].entries
            )
            failed = failed or not agree
            checks.append(
                {
                    "suite": "spectrum",
                    "name": f"formula_agreement_L{L}",
                    "passed": agree,
                    "detail": "recurrence and closed form are exactly equal"
                    if agree
                    else "recurrence and closed form differ",
                }
            )
        reference = _reference_entries(cfg.spin, L)
        for method in cfg.methods:
            if method not in ORACLE_METHODS:
                continue
            values = _oracle_values(cfg, method, L)
            rows, leftovers, leftover_max, ok, detail = _assign_sectors(values, reference)
            failed = failed or not ok
            for J, value, mult in rows:
                results.append(
                    {
                        "S": cfg.spin,
                        "L": L,
                        "J": J,
                        "lambda_exact": None,
                        "lambda_float": value,
                        "multiplicity": mult,
                        "method": method,
                    }
                )
            if leftovers:
                results.append(
                    {
                        "S": cfg.spin,
                        "L": L,
                        "J": None,
                        "lambda_exact": None,
                        "lambda_float": leftover_max,
                        "multiplicity": leftovers,
                        "method": method + "_null_modes",
                    }
                )
            checks.append(
                {
                    "suite": "spectrum",
                    "name": f"{method}_agreement_L{L}",
                    "passed": ok,
                    "detail": detail + " (reference: recurrence)",
                }
            )
    results.sort(
        key=lambda row: (
            row["S"],
            row["L"],
            row["J"] if row["J"] is not None else 1 << 30,
            row["method"],
        )
    )
    doc = _document(cfg, results, checks)
    return doc, EXIT_VERIFY if failed else EXIT_OK


_SPEC_METHOD = {"recurrence": "recurrence", "closed_form": "closed_form"}


def run_entropy(cfg: RunConfig) -> tuple[dict, int]:
    """Von Neumann plus Renyi entropies per block length, in nats."""
    results = []
    saturation = saturation_value(cfg.spin)
    for L in cfg.lengths:
        spec = block_spectrum(cfg.spin, L)
        for alpha in cfg.alphas:
            value = von_neumann(spec) if alpha == 1.0 else renyi(spec, alpha)
            results.append(
                {
                    "S": cfg.spin,
                    "L": L,
                    "alpha": alpha,
                    "value": value,
                    "saturation_gap": saturation - value,
                }
            )
    results.sort(key=lambda row: (row["S"], row["L"], row["alpha"]))
    return _document(cfg, results, []), EXIT_OK


def run_verify(cfg: RunConfig) -> tuple[dict, int]:
    """Run a named suite; exit 1 carries the first counterexample in checks."""
    kwargs = {"spin": cfg.spin, "max_spin": cfg.max_spin, "max_dim": cfg.max_dim}
    if cfg.max_length is not None:
        kwargs["max_length"] = cfg.max_length
    if cfg.explicit_lengths:
        kwargs["lengths"] = list(cfg.lengths)
        kwargs.setdefault("max_length", max(cfg.lengths))
    checks = run_suite(cfg.suite, **kwargs)
    passed = all(check["passed"] for check in checks)
    return _document(cfg, [], checks), EXIT_OK if passed else EXIT_VERIFY


def _document(cfg: RunConfig, results: list, checks: list) -> dict:
    return {
        "config": cfg.as_document(),
        "results": results,
        "checks": checks,
        "version": __version__,
    }


def _render_json(doc: dict) -> str:
    import json

    return json.dumps(doc, indent=2) + "\n"


def _render_csv(doc: dict, command: str) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    if command == "entropy":
        writer.writerow(["S", "L", "alpha", "value"])
        for row in doc["results"]:
            writer.writerow(
                [row["S"], row["L"], f"{row['alpha']:.17g}", f"{row['value']:.17g}"]
            )
    elif command == "verify":
        writer.writerow(["suite", "name", "passed", "detail"])
        for check in doc["checks"]:
            writer.writerow(
                [check["suite"], check["name"], check["passed"], check["detail"]]
            )
    else:
        writer.writerow(
            ["S", "L", "J", "multiplicity", "method", "lambda_exact", "lambda_float"]
        )
        for row in doc["results"]:
            writer.writerow(
                [
                    row["S"],
                    row["L"],
                    "" if row["J"] is None else row["J"],
                    row["multiplicity"],
                    row["method"],
                    row["lambda_exact"] or "",
                    f"{row['lambda_float']:.17g}",
                ]
            )
    return buffer.getvalue()


def _positive_spin(text: str) -> int:
    message = "bulk spin must be a positive integer"
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(message) from None
    if value < 1:
        raise argparse.ArgumentTypeError(message)
    return value


def _length_range(text: str) -> tuple[int, ...]:
    message = "length must be a positive integer or an inclusive range a..b"
    try:
        if ".." in text:
            low_text, _, high_text = text.partition("..")
            low, high = int(low_text), int(high_text)
        else:
            low = high = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(message) from None
    if low < 1 or high < low:
        raise argparse.ArgumentTypeError(message)
    return tuple(range(low, high + 1))


def _method_list(text: str) -> tuple[str, ...]:
    methods = []
    for part in text.split(","):
        name = part.strip()
        if not name:
            continue
        if name not in ALL_METHODS:
            raise argparse.ArgumentTypeError(
                f"unknown method {name!r}; choose from {', '.join(ALL_METHODS)}"
            )
        if name not in methods:
            methods.append(name)
    if not methods:
        raise argparse.ArgumentTypeError("at least one method is required")
    return tuple(methods)


def _alpha_list(text: str) -> tuple[float, ...]:
    try:
        alphas = [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("alpha values must be numbers") from None
    if not alphas or any(a <= 0 for a in alphas):
        raise argparse.ArgumentTypeError("alpha values must be positive")
    return tuple(sorted(set(alphas) | {1.0}))


def _add_common(parser: argparse.ArgumentParser, *, lengths_default: str) -> None:
    parser.add_argument("--spin", type=_positive_spin, default=1, help="bulk spin S (positive integer)")
    parser.add_argument(
        "--length",
        type=_length_range,
        default=_length_range(lengths_default),
        help="block length, a single integer or an inclusive range a..b",
    )
    parser.add_argument("--format", choices=("json", "csv"), default="json", dest="output_format")
    parser.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM, help="dense-matrix dimension cap")
    parser.add_argument("--out", default=None, help="write the document to this path instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="akltblock",
        description="Exact block entanglement spectra of spin-S valence-bond-solid chains.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    spectrum = commands.add_parser("spectrum", help="block density-matrix eigenvalues")
    _add_common(spectrum, lengths_default="2")
    spectrum.add_argument(
        "--method",
        type=_method_list,
        default=("recurrence",),
        help="comma list from: " + ", ".join(ALL_METHODS),
    )

    sweep = commands.add_parser("sweep", help="spectra over a length range")
    _add_common(sweep, lengths_default="2..8")
    sweep.add_argument(
        "--method",
        type=_method_list,
        default=("recurrence", "closed_form"),
        help="comma list from: " + ", ".join(ALL_METHODS),
    )

    entropy = commands.add_parser("entropy", help="von Neumann and Renyi block entropies")
    _add_common(entropy, lengths_default="2")
    entropy.add_argument(
        "--alpha",
        type=_alpha_list,
        default=(0.5, 1.0, 2.0),
        help="comma list of positive Renyi orders (1 = von Neumann, always included)",
    )

    verify = commands.add_parser("verify", help="run a verification suite")
    verify.add_argument("suite", choices=sorted(SUITES) + ["all"])
    verify.add_argument("--spin", type=_positive_spin, default=1)
    verify.add_argument("--max-spin", type=int, default=5)
    verify.add_argument("--length", type=_length_range, default=None)
    verify.add_argument("--max-length", type=int, default=None)
    verify.add_argument("--format", choices=("json", "csv"), default="json", dest="output_format")
    verify.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM)
    verify.add_argument("--out", default=None)
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.command == "verify":
        explicit = args.length is not None
        return RunConfig(
            command="verify",
            spin=args.spin,
            lengths=args.length if explicit else (2,),
            explicit_lengths=explicit,
            output_format=args.output_format,
            max_dim=args.max_dim,
            out=args.out,
            suite=args.suite,
            max_spin=args.max_spin,
            max_length=args.max_length,
        )
    kwargs = {
        "command": args.command,
        "spin": args.spin,
        "lengths": args.length,
        "output_format": args.output_format,
        "max_dim": args.max_dim,
        "out": args.out,
    }
    if args.command in ("spectrum", "sweep"):
        kwargs["methods"] = args.method
    if args.command == "entropy":
        kwargs["alphas"] = args.alpha
    return RunConfig(**kwargs)


_DISPATCH = {
    "spectrum": run_spectrum,
    "sweep": run_spectrum,
    "entropy": run_entropy,
    "verify": run_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    cfg = _config_from_args(args)
    try:
        doc, code = _DISPATCH[cfg.command](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (InvalidSpectrumError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = (
        _render_json(doc)
        if cfg.output_format == "json"
        else _render_csv(doc, cfg.command)
    )
    if cfg.out:
        with open(cfg.out, "w", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
