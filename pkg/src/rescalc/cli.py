"""Command-line front end: ``rescalc <command> [flags]``.

Commands: normalize, restrict, ann, ch, arm, decompose, primdec, and
check (sub-checks: leibniz, duality, prima, sep).  Exit codes: 0 on
success, 1 when a verification verdict fails (the witness is printed),
2 on input errors.  With ``--json`` the output is a stable, key-sorted
document ``{"version", "command", "inputs", "result"}`` containing no
floating point; identical inputs produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .calculus import (
    Monomial,
    coleff_herrera,
    is_monomial_complete_intersection,
    mul_monomial,
    pv_mul,
    res_mul,
    residue_pv_product,
)
from .constructible import restrict
from .currents import Current, ElementaryTerm, Factor, Kind, Piece, PolyCoeff, dbar
from .decomposition import (
    CurrentVector,
    DecompositionReport,
    annihilator,
    decompose,
    duality_check,
    sep_check,
)
from .errors import DualityMismatch, EngineError, NonMonomialAnnihilator, ParseError
from .grammar import (
    format_current,
    format_ideal,
    format_module,
    format_monomial,
    format_prime,
    parse_current,
    parse_current_vector,
    parse_ideal,
    parse_module,
    parse_monomial_list,
    parse_set,
)
from .monomials import MonomialIdeal, MonomialModule, MonomialPrime

JSON_VERSION = "1"

EXIT_OK = 0
EXIT_VERDICT = 1
EXIT_INPUT = 2


# ---------------------------------------------------------------------------
# json encoding


def current_to_json(T: Current) -> Dict[str, Any]:
    terms = []
    for t in T.terms:
        coeff = [
            {
                "num": p.coef.numerator,
                "den": p.coef.denominator,
                "alpha": list(p.alpha),
                "beta": list(p.beta),
                "dz": list(p.dz),
                "dzb": list(p.dzb),
            }
            for p in t.coeff.pieces
        ]
        factors = [
            {"var": i + 1, "kind": f.kind.name.lower(), "exp": f.exp}
            for i, f in enumerate(t.factors)
            if f.kind != Kind.NONE
        ]
        terms.append({"coeff": coeff, "factors": factors})
    return {"terms": terms}


def current_from_json(doc: Dict[str, Any], n: int) -> Current:
    from .currents import normalize, zero

    terms = []
    for td in doc["terms"]:
        factors = [Factor.none()] * n
        for fd in td["factors"]:
            kind = Kind.PV if fd["kind"] == "pv" else Kind.RES
            factors[fd["var"] - 1] = Factor(kind, fd["exp"])
        pieces = tuple(
            Piece(
                Fraction(pd["num"], pd["den"]),
                tuple(pd["alpha"]),
                tuple(pd["beta"]),
                tuple(pd["dz"]),
                tuple(pd["dzb"]),
            )
            for pd in td["coeff"]
        )
        terms.append(ElementaryTerm(PolyCoeff(n, pieces), tuple(factors)))
    if not terms:
        return zero(n)
    return normalize(terms, n=n)


def vector_to_json(T: CurrentVector) -> Dict[str, Any]:
    return {"rank": T.rank, "components": [current_to_json(c) for c in T.components]}


def ideal_to_json(I: MonomialIdeal) -> List[List[int]]:
    return [list(g) for g in sorted(I.gens)]


def module_to_json(M: MonomialModule) -> Dict[str, Any]:
    return {
        "rank": M.rank,
        "gens": [[k, list(g)] for k, g in sorted(M.gens())],
    }


def prime_to_json(p: MonomialPrime) -> List[int]:
    return sorted(p.vars)


def report_to_json(rep: DecompositionReport) -> Dict[str, Any]:
    comps = []
    for c in rep.components:
        comps.append(
            {
                "prime": prime_to_json(c.prime),
                "current": vector_to_json(c.current),
                "annihilator": module_to_json(c.annihilator),
                "checks": {
                    "primary": _verdict_json(c.primary),
                    "sep": _verdict_json(c.sep),
                    "leading": _verdict_json(c.leading),
                },
            }
        )
    return {
        "ass": [prime_to_json(p) for p in rep.ass],
        "components": comps,
        "verdicts": {
            "sum": _verdict_json(rep.sum_check),
            "intersection": _verdict_json(rep.intersection_check),
            "minimality": _verdict_json(rep.minimality_check),
        },
        "all_ok": rep.all_ok,
    }


def _verdict_json(v) -> Dict[str, Any]:
    return {"ok": v.ok, "witness": v.witness}


def _emit_json(command: str, inputs: Dict[str, Any], result: Any) -> str:
    doc = {
        "version": JSON_VERSION,
        "command": command,
        "inputs": inputs,
        "result": result,
    }
    return json.dumps(doc, sort_keys=True, indent=2)


# ---------------------------------------------------------------------------
# human output


def _vector_text(T: CurrentVector) -> str:
    if T.rank == 1:
        return format_current(T.components[0])
    return "; ".join(
        f"e{k}: {format_current(c)}" for k, c in enumerate(T.components, start=1)
    )


def _pf(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


def _report_text(rep: DecompositionReport) -> List[str]:
    lines = [f"module: {format_module(rep.module)}"]
    lines.append(
        "associated primes: "
        + ", ".join(format_prime(p, rep.n) for p in rep.ass)
    )
    for c in rep.components:
        lines.append(f"component {format_prime(c.prime, rep.n)}:")
        lines.append(f"  current: {_vector_text(c.current)}")
        lines.append(f"  annihilator: {format_module(c.annihilator)}")
        lines.append(
            f"  primary: {_pf(c.primary.ok)}   sep: {_pf(c.sep.ok)}   "
            f"leading: {_pf(c.leading.ok)}"
        )
        for v in (c.primary, c.sep, c.leading):
            if v.witness:
                lines.append(f"  witness: {v.witness}")
    lines.append(f"sum check: {_pf(rep.sum_check.ok)}")
    lines.append(f"intersection check: {_pf(rep.intersection_check.ok)}")
    lines.append(f"minimality check: {_pf(rep.minimality_check.ok)}")
    for v in (rep.sum_check, rep.intersection_check, rep.minimality_check):
        if v.witness:
            lines.append(f"witness: {v.witness}")
    lines.append(f"all checks: {_pf(rep.all_ok)}")
    return lines


# ---------------------------------------------------------------------------
# randomized check suites (used by `check leibniz`)


def _random_current(rng: random.Random, n: int, max_exp: int = 3) -> Current:
    from .currents import normalize, zero

    terms = []
    for _ in range(rng.randint(1, 3)):
        factors = []
        for _i in range(n):
            k = rng.choice([Kind.NONE, Kind.NONE, Kind.PV, Kind.RES])
            factors.append(
                Factor.none() if k == Kind.NONE else Factor(k, rng.randint(1, max_exp))
            )
        alpha = tuple(rng.randint(0, 2) for _ in range(n))
        beta = tuple(rng.randint(0, 2) for _ in range(n))
        dz = tuple(sorted(rng.sample(range(1, n + 1), rng.randint(0, n))))
        dzb = tuple(sorted(rng.sample(range(1, n + 1), rng.randint(0, 1))))
        pc = PolyCoeff.term(
            n,
            coef=Fraction(rng.randint(-3, 3), rng.randint(1, 2)),
            alpha=alpha,
            beta=beta,
            dz=dz,
            dzb=dzb,
        )
        if not pc.is_zero:
            terms.append(ElementaryTerm(pc, tuple(factors)))
    if not terms:
        return zero(n)
    return normalize(terms, n=n)


def _random_monomial(rng: random.Random, n: int, max_exp: int = 3) -> Monomial:
    exps = [rng.randint(0, max_exp - 1) for _ in range(n)]
    if not any(exps):
        exps[rng.randrange(n)] = rng.randint(1, max_exp)
    return Monomial.make(exps)


def check_leibniz(n: int, seed: int, cases: int = 200) -> Tuple[bool, bool, str]:
    """Both product rules on random (g, T); returns (ok1, ok2, witness)."""
    rng = random.Random(seed)
    for _ in range(cases):
        T = _random_current(rng, rng.randint(1, n))
        g = _random_monomial(rng, T.n)
        lhs = dbar(pv_mul(g, T))
        rhs = res_mul(g, T) + pv_mul(g, dbar(T))
        if lhs != rhs:
            return False, True, f"g = {format_monomial(g)}, T = {format_current(T)}"
        if dbar(res_mul(g, T)) != res_mul(g, dbar(T)).scale(-1):
            return True, False, f"g = {format_monomial(g)}, T = {format_current(T)}"
    return True, True, ""


# ---------------------------------------------------------------------------
# command implementations


def _stdout(lines: Sequence[str]) -> None:
    for line in lines:
        print(line)


def _cmd_normalize(args) -> int:
    T = parse_current(args.current, args.n)
    if args.json:
        print(_emit_json("normalize", {"current": args.current, "n": args.n}, current_to_json(T)))
    else:
        print(format_current(T))
    return EXIT_OK


def _cmd_restrict(args) -> int:
    T = parse_current(args.current, args.n)
    W = parse_set(args.set, args.n)
    out = restrict(W, T)
    if args.json:
        print(
            _emit_json(
                "restrict",
                {"current": args.current, "set": args.set, "n": args.n},
                current_to_json(out),
            )
        )
    else:
        print(format_current(out))
    return EXIT_OK


def _cmd_ann(args) -> int:
    T = CurrentVector(parse_current_vector(args.current, args.n))
    M = annihilator(T, seed=args.seed)
    if args.json:
        print(
            _emit_json(
                "ann", {"current": args.current, "n": args.n, "seed": args.seed},
                module_to_json(M),
            )
        )
    else:
        print(format_module(M))
    return EXIT_OK


def _cmd_ch(args) -> int:
    fs = parse_monomial_list(args.ideal, args.n)
    T = coleff_herrera(fs, args.n)
    if args.json:
        print(_emit_json("ch", {"ideal": args.ideal, "n": args.n}, current_to_json(T)))
    else:
        print(format_current(T))
    return EXIT_OK


def _cmd_arm(args) -> int:
    fs = parse_monomial_list(args.ideal, args.n)
    T = residue_pv_product(fs, args.q, 1, n=args.n)
    if args.json:
        print(
            _emit_json(
                "arm", {"ideal": args.ideal, "q": args.q, "n": args.n}, current_to_json(T)
            )
        )
    else:
        print(format_current(T))
    return EXIT_OK


def _parse_target_module(args) -> MonomialModule:
    if getattr(args, "module", None):
        return parse_module(args.module, args.n)
    if getattr(args, "ideal", None):
        return MonomialModule.from_ideal(parse_ideal(args.ideal, args.n))
    raise EngineError("one of --ideal or --module is required")


def _cmd_decompose(args) -> int:
    R = CurrentVector(parse_current_vector(args.current, args.n))
    J = _parse_target_module(args)
    rep = decompose(R, J, seed=args.seed)
    if args.json:
        inputs = {"current": args.current, "n": args.n, "seed": args.seed}
        if args.module:
            inputs["module"] = args.module
        else:
            inputs["ideal"] = args.ideal
        print(_emit_json("decompose", inputs, report_to_json(rep)))
    else:
        _stdout(_report_text(rep))
    return EXIT_OK if rep.all_ok else EXIT_VERDICT


def _cmd_primdec(args) -> int:
    if not args.module and not args.ideal:
        raise EngineError("one of --ideal or --module is required")
    if args.module:
        M = parse_module(args.module, args.n)
        comps = M.primary_decomposition()
        texts = [format_module(c) for c in comps]
        jdoc = [module_to_json(c) for c in comps]
        inputs = {"module": args.module, "n": args.n}
    else:
        I = parse_ideal(args.ideal, args.n)
        from .monomials import primary_decomposition_oracle

        comps = primary_decomposition_oracle(I)
        texts = [format_ideal(c) for c in comps]
        jdoc = [ideal_to_json(c) for c in comps]
        inputs = {"ideal": args.ideal, "n": args.n}
    if args.json:
        print(_emit_json("primdec", inputs, jdoc))
    else:
        for t in texts:
            print(t)
    return EXIT_OK


def _cmd_check(args) -> int:
    inputs: Dict[str, Any] = {"what": args.what, "n": args.n, "seed": args.seed}
    lines: List[str] = []
    result: Dict[str, Any] = {}
    ok = True
    if args.what == "leibniz":
        ok1, ok2, witness = check_leibniz(args.n, args.seed)
        ok = ok1 and ok2
        lines.append(f"product rule: {_pf(ok1)} (200 cases)")
        lines.append(f"derived rule under dbar: {_pf(ok2)} (200 cases)")
        if witness:
            lines.append(f"witness: {witness}")
        result = {"product_rule": ok1, "dbar_rule": ok2, "witness": witness or None}
    elif args.what == "duality":
        if not args.ideal:
            raise EngineError("check duality requires --ideal")
        fs = parse_monomial_list(args.ideal, args.n)
        inputs["ideal"] = args.ideal
        if not is_monomial_complete_intersection(fs, args.n):
            raise EngineError("the tuple is not a monomial complete intersection")
        ok = duality_check(fs, args.n, seed=args.seed)
        lines.append(f"duality: {_pf(ok)}")
        result = {"duality": ok}
    elif args.what == "prima":
        if not args.current:
            raise EngineError("check prima requires --current")
        R = CurrentVector(parse_current_vector(args.current, args.n))
        inputs["current"] = args.current
        J = _parse_target_module(args)
        if args.module:
            inputs["module"] = args.module
        else:
            inputs["ideal"] = args.ideal
        rep = decompose(R, J, seed=args.seed)
        ok = rep.all_ok
        lines.append(f"sum check: {_pf(rep.sum_check.ok)}")
        lines.append(f"intersection check: {_pf(rep.intersection_check.ok)}")
        lines.append(f"minimality check: {_pf(rep.minimality_check.ok)}")
        for c in rep.components:
            lines.append(
                f"component {format_prime(c.prime, rep.n)}: primary {_pf(c.primary.ok)}, "
                f"sep {_pf(c.sep.ok)}, leading {_pf(c.leading.ok)}"
            )
        result = report_to_json(rep)["verdicts"]
        result["all_ok"] = rep.all_ok
    elif args.what == "sep":
        if not args.current or not args.ideal:
            raise EngineError("check sep requires --current and --ideal")
        R = CurrentVector(parse_current_vector(args.current, args.n))
        inputs["current"] = args.current
        prime_ideal = parse_ideal(args.ideal, args.n)
        inputs["ideal"] = args.ideal
        vars_ = []
        for g in prime_ideal.gens:
            if sum(g) != 1:
                raise EngineError("the prime must be generated by single variables")
            vars_.append(next(i + 1 for i, e in enumerate(g) if e))
        ok = sep_check(R, MonomialPrime.of(vars_))
        lines.append(f"sep: {_pf(ok)}")
        result = {"sep": ok}
    else:  # unreachable through argparse
        raise EngineError(f"unknown check {args.what!r}")
    if args.json:
        print(_emit_json("check", inputs, result))
    else:
        _stdout(lines)
    return EXIT_OK if ok else EXIT_VERDICT


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="rescalc",
        description="exact calculus of residue and principal value currents",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, *, current=False, set_=False, ideal=False, module=False, q=False):
        p.add_argument("--n", type=int, required=True, help="number of variables")
        if current:
            p.add_argument("--current", required=True, help="current expression")
        if set_:
            p.add_argument("--set", required=True, help="constructible set expression")
        if ideal:
            p.add_argument("--ideal", help="comma-separated monomials")
        if module:
            p.add_argument("--module", help="comma-separated 'e<k>: mono' entries")
        if q:
            p.add_argument("--q", type=int, required=True, help="number of residue factors")
        p.add_argument("--json", action="store_true", help="structured output")
        p.add_argument("--seed", type=int, default=0, help="seed for certification passes")

    common(sub.add_parser("normalize", help="normal form of a current"), current=True)
    common(sub.add_parser("restrict", help="restrict a current to a set"), current=True, set_=True)
    common(sub.add_parser("ann", help="annihilator of a current vector"), current=True)
    common(sub.add_parser("ch", help="Coleff-Herrera product of monomials"), ideal=True)
    common(sub.add_parser("arm", help="product with q residue factors"), ideal=True, q=True)
    common(
        sub.add_parser("decompose", help="decompose along associated primes"),
        current=True, ideal=True, module=True,
    )
    common(sub.add_parser("primdec", help="primary decomposition oracle"), ideal=True, module=True)
    pc = sub.add_parser("check", help="verification suites")
    pc.add_argument("what", choices=("leibniz", "duality", "prima", "sep"))
    common(pc, ideal=True, module=True)
    pc.add_argument("--current", help="current expression")
    return top


_COMMANDS = {
    "normalize": _cmd_normalize,
    "restrict": _cmd_restrict,
    "ann": _cmd_ann,
    "ch": _cmd_ch,
    "arm": _cmd_arm,
    "decompose": _cmd_decompose,
    "primdec": _cmd_primdec,
    "check": _cmd_check,
}


def run(argv: Sequence[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as e:
        return EXIT_INPUT if e.code not in (0, None) else EXIT_OK
    try:
        if not 1 <= args.n <= 16:
            raise EngineError(f"--n must be in 1..16, got {args.n}")
        return _COMMANDS[args.command](args)
    except NonMonomialAnnihilator as e:
        print(f"FAIL: {e}", file=sys.stderr)
        return EXIT_VERDICT
    except (ParseError, DualityMismatch, EngineError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
