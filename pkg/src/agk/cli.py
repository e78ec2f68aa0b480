"""Command-line front end: ``agk factor|centralizer|decompose|verify``.

Every command writes one JSON document to standard output.  Exit codes:
0 success, 1 precondition or property failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from agk.centralizers import CentralizerSpec, LemmaId, membership, residuals
from agk.commutators import express_D_element, sl_commutator_factorize, transvection_factorize
from agk.core import AffineElement, DetClass, matrix_from_json, matrix_to_json
from agk.factorization import glplus_split, sl_block_factorize, so_factorize
from agk.harness import PropertyId, run_all, verify
from agk.vectordecomp import ball_sum_decompose, unit_sum_decompose
from agk.words import GeneratorWord, letter_to_json, product_of_commutators

FACTOR_KINDS = ("so", "sl-blocks", "transvections", "commutators", "glplus", "d-element")
LEMMAS = ("neg-identity", "sign-flip", "scalar", "j-sl2", "block-m")

CLASS_TOL = 1e-9
RECON_TOL = 1e-8


class UsageError(Exception):
    """Bad command line or unreadable input; exit code 2."""


@dataclass
class Command:
    verb: str
    options: dict = field(default_factory=dict)


def _default_seed() -> int:
    raw = os.environ.get("AGK_SEED")
    if raw is None or raw.strip() == "":
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"AGK_SEED must be an integer, got {raw!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        values = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty dimension list")
    return values


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="agk", description="Affine group constructions with JSON I/O.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("factor", help="factor a matrix into generators")
    p.add_argument("kind", choices=FACTOR_KINDS)
    p.add_argument("--input", "--matrix", dest="input", help="matrix JSON, inline or a file path")
    p.add_argument("--x1", type=float, help="translation for d-element")
    p.add_argument("--d", help="SL(n-1) block for d-element, inline or a file path")
    p.add_argument("--tol", type=float, default=None)

    p = sub.add_parser("centralizer", help="test membership in a closed-form centralizer")
    p.add_argument("--lemma", required=True, choices=LEMMAS)
    p.add_argument("--check", required=True, help="affine element JSON, inline or a file path")
    p.add_argument("--det-class", default="SL", help="GL, SL, ABS_SL or GL_PLUS (default SL)")
    p.add_argument("--tol", type=float, default=CLASS_TOL)

    p = sub.add_parser("decompose", help="split a vector into two sphere points")
    p.add_argument("target", choices=("vector",))
    p.add_argument("--x", required=True, help="JSON array, inline or a file path")
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--tol", type=float, default=1e-12)

    p = sub.add_parser("verify", help="run randomized property checks")
    p.add_argument("--property", dest="prop")
    p.add_argument("--all", action="store_true")
    p.add_argument("--n", type=_int_list, default=None)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    return parser


def parse(argv) -> Command:
    """Validate ``argv`` into a :class:`Command`; raises :class:`UsageError`."""
    ns = build_parser().parse_args(list(argv))
    opts = vars(ns)
    verb = opts.pop("verb")
    if verb == "factor":
        if opts["kind"] == "d-element":
            if opts["x1"] is None or opts["d"] is None:
                raise UsageError("factor d-element needs --x1 and --d")
        elif opts["input"] is None:
            raise UsageError(f"factor {opts['kind']} needs --input")
    elif verb == "verify":
        if opts["all"] == (opts["prop"] is not None):
            raise UsageError("verify needs exactly one of --property or --all")
        if opts["n"] is None:
            opts["n"] = [2, 3, 4, 5] if opts["all"] else None
            if opts["n"] is None:
                raise UsageError("verify --property needs --n")
        if opts["prop"] is not None:
            try:
                opts["prop"] = PropertyId.parse(opts["prop"])
            except ValueError as exc:
                raise UsageError(str(exc)) from None
        if opts["trials"] < 1:
            raise UsageError("--trials must be positive")
        if opts["seed"] is None:
            opts["seed"] = _default_seed()
    elif verb == "centralizer":
        try:
            opts["det_class"] = DetClass.parse(opts["det_class"])
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    tol = opts.get("tol")
    if tol is not None and not tol > 0:
        raise UsageError("--tol must be positive")
    return Command(verb, opts)


def _load_json(text: str):
    stripped = text.strip()
    try:
        if stripped[:1] in ("{", "[") or stripped[:1].isdigit() or stripped[:1] == "-":
            return json.loads(stripped)
        return json.loads(Path(text).read_text())
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON: {exc}") from None
    except OSError as exc:
        raise UsageError(f"cannot read {text!r}: {exc.strerror}") from None


def _load_matrix(text: str) -> np.ndarray:
    try:
        return matrix_from_json(_load_json(text))
    except ValueError as exc:
        raise UsageError(f"bad matrix: {exc}") from None


def _load_vector(text: str) -> np.ndarray:
    doc = _load_json(text)
    if not isinstance(doc, list) or not all(isinstance(t, (int, float)) for t in doc):
        raise UsageError("vector must be a JSON array of numbers")
    return np.array(doc, dtype=float)


def _rel(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.linalg.norm(a - b) / max(1.0, np.linalg.norm(b)))


def _factor(opts: dict) -> tuple[dict, bool]:
    kind = opts["kind"]
    tol = opts["tol"]
    if kind == "d-element":
        d = _load_matrix(opts["d"])
        x1 = opts["x1"]
        pairs = express_D_element(x1, d, tol or CLASS_TOL)
        n = d.shape[0] + 1
        lin = np.eye(n)
        lin[1:, 1:] = d
        target = AffineElement._trusted(np.eye(n)[0] * x1, lin)
        got = product_of_commutators(pairs, n, affine=True)
        residual = got.distance(target) / max(1.0, float(np.linalg.norm(lin)))
        spec = CentralizerSpec(LemmaId.SIGN_FLIP, n, DetClass.SL) if n % 2 else None
        per_letter = []
        for p in pairs:
            if spec is None:
                per_letter.append(None)
            else:
                gaps = list(residuals(spec, p.g).values()) + list(residuals(spec, p.h).values())
                per_letter.append(max(gaps))
        doc = {"n": n, "letters": [letter_to_json(p) for p in pairs],
               "letter_residuals": per_letter, "residual": residual}
        return doc, residual <= RECON_TOL

    m = _load_matrix(opts["input"])
    n = m.shape[0]
    class_tol = tol or CLASS_TOL
    if kind == "so":
        word = so_factorize(m, class_tol)
    elif kind == "sl-blocks":
        word = sl_block_factorize(m, class_tol)
    elif kind == "transvections":
        word = GeneratorWord(n, transvection_factorize(m, class_tol))
    elif kind == "commutators":
        pairs = sl_commutator_factorize(m, class_tol)
        residual = _rel(product_of_commutators(pairs, n), m)
        per_letter = [abs(float(np.linalg.det(p.value())) - 1.0) for p in pairs]
        doc = {"n": n, "letters": [letter_to_json(p) for p in pairs],
               "letter_residuals": per_letter, "residual": residual}
        return doc, residual <= RECON_TOL
    else:
        lam, s = glplus_split(m, class_tol)
        residual = _rel(lam * s, m)
        doc = {
            "n": n,
            "letters": [
                {"kind": "scalar_diagonal", "params": {"lambda": lam}},
                {"kind": "sl_matrix", "params": {"matrix": matrix_to_json(s)}},
            ],
            "residual": residual,
        }
        return doc, residual <= RECON_TOL
    residual = _rel(word.matrix(), m)
    doc = word.to_json()
    if kind == "transvections":
        doc["letter_residuals"] = [abs(float(np.linalg.det(t)) - 1.0) for t in word.matrices()]
    doc["residual"] = residual
    return doc, residual <= RECON_TOL


def _centralizer(opts: dict) -> tuple[dict, bool]:
    doc = _load_json(opts["check"])
    try:
        g = AffineElement.from_json(doc)
    except ValueError as exc:
        raise UsageError(f"bad affine element: {exc}") from None
    spec = CentralizerSpec(LemmaId.parse(opts["lemma"]), g.n, opts["det_class"])
    res = residuals(spec, g)
    out = {
        "lemma": spec.lemma_id.value,
        "det_class": spec.det_class.value,
        "member": membership(spec, g, opts["tol"]),
        "residuals": [{"name": k, "value": v} for k, v in res.items()],
        "det": float(np.linalg.det(g.linear)),
    }
    return out, True


def _decompose(opts: dict) -> tuple[dict, bool]:
    x = _load_vector(opts["x"])
    if opts["delta"] is None:
        w = unit_sum_decompose(x, opts["tol"])
    else:
        w = ball_sum_decompose(x, opts["delta"], opts["tol"])
    return w.to_json(x), True


def _verify(opts: dict) -> tuple[dict, bool]:
    if opts["all"]:
        reports = run_all(opts["n"], opts["trials"], opts["tol"], opts["seed"], opts["workers"])
    else:
        reports = [verify(opts["prop"], n, opts["trials"], opts["tol"], opts["seed"], opts["workers"])
                   for n in opts["n"]]
    failures = sum(r.failures for r in reports)
    doc = {
        "seed": opts["seed"],
        "trials": opts["trials"],
        "tol": opts["tol"],
        "n": opts["n"],
        "failures": failures,
        "passed": failures == 0,
        "reports": [r.to_json() for r in reports],
    }
    for r in reports:
        if not r.passed:
            print(f"FAIL {r.property.value} n={r.n}: {r.failures}/{r.trials}", file=sys.stderr)
    return doc, failures == 0


HANDLERS = {"factor": _factor, "centralizer": _centralizer, "decompose": _decompose, "verify": _verify}


def run(cmd: Command, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        doc, ok = HANDLERS[cmd.verb](cmd.options)
    except UsageError as exc:
        print(f"agk: {exc}", file=sys.stderr)
        return 2
    except (ValueError, np.linalg.LinAlgError) as exc:
        print(f"agk: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    json.dump(doc, stdout, allow_nan=False)
    stdout.write("\n")
    if not ok:
        print("agk: check failed", file=sys.stderr)
    return 0 if ok else 1


def main(argv=None) -> int:
    try:
        cmd = parse(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        print(f"agk: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    return run(cmd)


if __name__ == "__main__":
    sys.exit(main())
