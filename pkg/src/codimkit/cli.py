"""Command-line front end: ``codimkit <subcommand> [flags]``.

Sequence operands (``--left``, ``--right``, ``--input``) accept three forms:

* ``cat:NAME``: a catalog entry, e.g. ``cat:M2``
* ``rat:NUM/DEN``: a rational function from comma-separated coefficient lists
  (lowest degree first), e.g. ``rat:1,-1/1,-2``
* anything else is a path to a JSON sequence file ``{"offset": 0, "terms": [...]}``

Output is compact JSON by default (rationals as strings) or an aligned table
with ``--format table``.  Exit status: 0 success, 1 failed verification,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Optional

from . import guessing, oracle, pi_model, rational, series
from .characters import BudgetError as CharacterBudgetError
from .polynomial import Polynomial
from .rational import RationalFunction, expand_rational
from .series import Sequence, SeriesError, as_rational

DEFAULT_TERMS = 20


class InputError(Exception):
    """Reported on stderr with exit status 2; ``kind`` prefixes the message."""

    def __init__(self, kind: str, message: str):
        super().__init__(f"{kind}: {message}")


# --- operands ------------------------------------------------------------------

def _coeff_list(text: str) -> Polynomial:
    try:
        return Polynomial(as_rational(x) for x in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError("malformed rational", f"{text!r}: {exc}") from exc


def _parse_rational(text: str) -> RationalFunction:
    num, sep, den = text.partition("/")
    try:
        return RationalFunction(_coeff_list(num), _coeff_list(den) if sep else Polynomial([1]))
    except (SeriesError, ZeroDivisionError) as exc:
        raise InputError("malformed rational", str(exc)) from exc


def _catalog(name: str) -> pi_model.CatalogEntry:
    try:
        return pi_model.catalog_entry(name)
    except pi_model.UnknownCatalogEntry as exc:
        known = ", ".join(pi_model.CATALOG)
        raise InputError("unknown catalog name", f"{name!r} (known: {known})") from exc


def _read_sequence_file(path: str) -> Sequence:
    try:
        with open(path, encoding="utf-8") as fh:
            return Sequence.from_json(json.load(fh))
    except OSError as exc:
        raise InputError("malformed sequence file", f"{path}: {exc.strerror}") from exc
    except (ValueError, TypeError) as exc:
        raise InputError("malformed sequence file", f"{path}: {exc}") from exc


class Operand:
    def __init__(self, text: str):
        self.text = text
        self.rational: Optional[RationalFunction] = None
        self.entry = None
        self.fixed: Optional[Sequence] = None
        if text.startswith("cat:"):
            self.entry = _catalog(text[4:])
            self.rational = self.entry.rational
        elif text.startswith("rat:"):
            self.rational = _parse_rational(text[4:])
        else:
            self.fixed = _read_sequence_file(text)

    def terms(self, N: int) -> Sequence:
        if self.entry is not None:
            return self.entry.terms(N)
        if self.rational is not None:
            return expand_rational(self.rational, N)
        if self.fixed.end < N:
            raise InputError("malformed sequence file", f"{self.text} has {self.fixed.end} terms, {N} requested")
        return Sequence(self.fixed.prefix(N))

    @property
    def available(self) -> Optional[int]:
        return self.fixed.end if self.fixed is not None else None


def _catalog_or_operand(text: str) -> Operand:
    if text in pi_model.CATALOG:
        return Operand("cat:" + text)
    return Operand(text)


# --- subcommands ----------------------------------------------------------------

def cmd_expand(args) -> dict:
    op = Operand(args.input)
    return op.terms(args.terms).to_json()


def _binary(args, seq_op, rat_op) -> dict:
    a, b = Operand(args.left), Operand(args.right)
    out = seq_op(a.terms(args.terms), b.terms(args.terms), args.terms).to_json()
    if args.closed_form:
        if a.rational is None or b.rational is None:
            raise InputError("closed form unavailable", "both operands must be rational (rat: or a rational catalog entry)")
        out["rational"] = rat_op(a.rational, b.rational).to_json()
    return out


def cmd_lr_prod(args) -> dict:
    return _binary(args, series.lr_product_seq, rational.lr_product_rational)


def cmd_hadamard(args) -> dict:
    return _binary(args, lambda a, b, N: series.hadamard_series(a, b), rational.hadamard_rational)


def cmd_guess(args) -> dict:
    op = Operand(args.input)
    N = args.terms if args.terms is not None else (op.available or DEFAULT_TERMS)
    s = op.terms(N)
    if args.kind == "recurrence":
        rep = guessing.guess_recurrence(s, args.max_order, args.max_start, args.holdout)
    elif args.kind == "rational":
        rep = guessing.guess_rational(s, args.max_order, args.max_start, args.holdout)
    else:
        rep = guessing.guess_algebraic(s, args.max_ydeg, args.max_tdeg, args.holdout)
    out = rep.to_json()
    if rep.found and args.kind == "algebraic":
        out["equation"] = str(rep.model)
    return out


def cmd_catalog(args) -> dict:
    if args.list:
        return {"names": list(pi_model.CATALOG)}
    if not args.name:
        raise InputError("usage", "catalog needs --name or --list")
    entry = _catalog(args.name)
    out = entry.terms(args.terms).to_json()
    if args.notes:
        out["notes"] = entry.notes
    return out


def cmd_tideal_prod(args) -> dict:
    a, b = _catalog_or_operand(args.left), _catalog_or_operand(args.right)
    return pi_model.tideal_product(a.terms(args.terms), b.terms(args.terms), args.terms, args.variant).to_json()


def cmd_proper(args) -> dict:
    op = _catalog_or_operand(args.input)
    if args.direction == "to-proper":
        return pi_model.codim_to_proper(op.terms(args.terms), args.terms).to_json()
    N = args.terms
    src = op.terms(min(N, op.available) if op.available is not None else N)
    return pi_model.proper_to_codim(src, N, finite_support=args.finite_support).to_json()


def _generators(exprs: list) -> oracle.GeneratorSet:
    try:
        polys = [oracle.BUILTINS[e]() if e in oracle.BUILTINS else oracle.parse_polynomial(e) for e in exprs]
        return oracle.GeneratorSet(polys, list(exprs))
    except ValueError as exc:
        raise InputError("malformed generator", str(exc)) from exc


def cmd_oracle(args) -> dict:
    g = _generators(args.generator)
    if args.times:
        sub = oracle.product_ideal_multilinear_span(g, _generators(args.times), args.n, args.seed,
                                                    args.exact, args.allow_degree_6)
    else:
        sub = oracle.tideal_multilinear_span(g, args.n, args.seed, args.exact)
    return sub.to_json()


def _verify_chebyshev(N: int) -> bool:
    i0 = pi_model.bessel_series(0, N + 2)
    lhs = pi_model.chebyshev_operator_apply(2, i0)
    rhs = series.derivative(pi_model.bessel_series(1, N + 2)) * 2 - i0.truncate(N + 1)
    return lhs.truncate(N) == rhs.truncate(N)


def _verify_f5(N: int) -> bool:
    got = pi_model.proper_to_codim(pi_model.f5_proper_codimensions(N), N)
    return got == series.to_ordinary(rational.exppoly_expand(pi_model.EXP_F5, N))


IDENTITIES = {
    "m2-exp-closed-form": lambda N: pi_model.verify_exp_closed_form("M2", N),
    "etensore-exp-closed-form": lambda N: pi_model.verify_exp_closed_form("EtensorE", N),
    "m2-perturbed": lambda N: pi_model.m2_exp_closed_form(N, bessel_index=2)
    == series.to_exponential(pi_model.catalog_terms("M2", N), N),
    "chebyshev-i2": _verify_chebyshev,
    "f5-proper": _verify_f5,
    "m2-ordinary-closed-form": lambda N: pi_model.m2_ordinary_closed_form(N) == pi_model.catalog_terms("M2", N),
    "etensore-ordinary-closed-form": lambda N: pi_model.etensore_ordinary_closed_form(N)
    == pi_model.catalog_terms("EtensorE", N),
}


def cmd_verify(args) -> dict:
    ok = bool(IDENTITIES[args.identity](args.order))
    return {"identity": args.identity, "order": args.order, "ok": ok}


def cmd_asymptotics(args) -> dict:
    entry = _catalog(args.name)
    est = pi_model.estimate_exponent(entry.terms(args.cutoff))
    out = {"name": args.name, "N": args.cutoff, "root": est.root, "ratio": est.ratio, "nearest": est.nearest}
    if args.name == "M2":
        rate, order = pi_model.asymptotic_profile_m2(args.cutoff)
        out.update(rate=rate, poly_order=order)
    return out


# --- output ----------------------------------------------------------------------

def _table(obj: dict) -> str:
    lines = []
    if isinstance(obj.get("terms"), list):
        off = obj.get("offset", 0)
        width = len(str(off + len(obj["terms"])))
        lines += [f"{off + i:>{width}}  {t}" for i, t in enumerate(obj["terms"])]
        rest = {k: v for k, v in obj.items() if k not in ("terms", "offset")}
    else:
        rest = obj
    if rest:
        width = max(len(k) for k in rest)
        lines += [f"{k:<{width}}  {v if not isinstance(v, (dict, list)) else json.dumps(v)}" for k, v in rest.items()]
    return "\n".join(lines)


def _positive(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="codimkit", description="Generating-function tools for codimension sequences.")
    p.add_argument("--format", choices=["json", "table"], default="json")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress (oracle seed and primes) to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        sp.add_argument("--format", choices=["json", "table"], default=argparse.SUPPRESS)
        return sp

    sp = add("expand", cmd_expand, "expand an operand to N terms")
    sp.add_argument("--input", required=True)
    sp.add_argument("--terms", type=_positive, default=DEFAULT_TERMS)

    for name, func, help_ in (("lr-prod", cmd_lr_prod, "binomial-convolution product"),
                              ("hadamard", cmd_hadamard, "termwise product")):
        sp = add(name, func, help_)
        sp.add_argument("--left", required=True)
        sp.add_argument("--right", required=True)
        sp.add_argument("--terms", type=_positive, default=DEFAULT_TERMS)
        sp.add_argument("--closed-form", action="store_true", help="also reconstruct the rational product")

    sp = add("guess", cmd_guess, "guess a recurrence, rational function or algebraic equation")
    sp.add_argument("--input", required=True)
    sp.add_argument("--kind", choices=["recurrence", "rational", "algebraic"], default="recurrence")
    sp.add_argument("--terms", type=_positive, default=None)
    sp.add_argument("--holdout", type=_positive, default=None)
    sp.add_argument("--max-order", type=_positive, default=4)
    sp.add_argument("--max-start", type=_positive, default=2)
    sp.add_argument("--max-ydeg", type=_positive, default=2)
    sp.add_argument("--max-tdeg", type=_positive, default=4)

    sp = add("catalog", cmd_catalog, "codimension sequences of known algebras and T-ideals")
    sp.add_argument("--name")
    sp.add_argument("--terms", type=_positive, default=DEFAULT_TERMS)
    sp.add_argument("--notes", action="store_true")
    sp.add_argument("--list", action="store_true")

    sp = add("tideal-prod", cmd_tideal_prod, "codimensions of a product of T-ideals")
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)
    sp.add_argument("--terms", type=_positive, default=DEFAULT_TERMS)
    sp.add_argument("--variant", choices=[pi_model.DERIVED, pi_model.PAPER], default=pi_model.DEFAULT_VARIANT)

    sp = add("proper", cmd_proper, "ordinary <-> proper codimensions")
    sp.add_argument("--input", required=True)
    sp.add_argument("--direction", choices=["to-proper", "to-codim"], default="to-proper")
    sp.add_argument("--terms", type=_positive, default=DEFAULT_TERMS)
    sp.add_argument("--finite-support", action="store_true", help="treat missing proper terms as zero")

    sp = add("oracle", cmd_oracle, "brute-force codimension in the multilinear space P_n")
    sp.add_argument("--generator", action="append", required=True, help="builtin name or expression; repeatable")
    sp.add_argument("--times", action="append", help="second factor of a product of T-ideals; repeatable")
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--seed", type=int, default=oracle.DEFAULT_SEED)
    sp.add_argument("--exact", action="store_true", help="cross-check with rational elimination (n <= 4)")
    sp.add_argument("--allow-degree-6", action="store_true")

    sp = add("verify", cmd_verify, "check a series identity exactly")
    sp.add_argument("--identity", choices=sorted(IDENTITIES), required=True)
    sp.add_argument("--order", type=_positive, default=25)

    sp = add("asymptotics", cmd_asymptotics, "growth-rate estimates from exact terms")
    sp.add_argument("--name", default="M2")
    sp.add_argument("--cutoff", type=_positive, default=500)
    return p


def _configure_logging(verbose: bool) -> None:
    # a fresh handler per call so the current sys.stderr is used
    log = logging.getLogger("codimkit")
    for h in list(log.handlers):
        log.removeHandler(h)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
    log.addHandler(handler)
    log.setLevel(logging.INFO if verbose else logging.WARNING)
    log.propagate = False


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    try:
        result = args.func(args)
    except InputError as exc:
        print(f"codimkit: error: {exc}", file=sys.stderr)
        return 2
    except (oracle.BudgetError, CharacterBudgetError) as exc:
        print(f"codimkit: error: budget exceeded: {exc}", file=sys.stderr)
        return 2
    except (guessing.InsufficientTermsError, SeriesError, ValueError) as exc:
        print(f"codimkit: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if args.format == "table":
        print(_table(result))
    else:
        print(json.dumps(result, separators=(",", ":")))
    if args.command == "verify" and not result["ok"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
