"""Command-line frontend: parsing, dispatch, reporting, and the corpus runner.

Verbs: split, galois, aut, fixed, primitive, census, verify-corpus.  Exit
codes: 0 success, 2 domain/precondition errors, 3 capability errors, 1
internal invariant violations or corpus mismatches.  GALOIS_KIT_SEED supplies
the default seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from importlib.resources import files as _pkg_files

from . import galois_core as core
from .errors import CapabilityError, DomainError, GaloisKitError, InternalError
from .exact_arith import QQ, GF
from .extensions import (ExtensionTower, adjoin_root, as_tower,
                         base_field_from_json, base_field_to_json,
                         collapse_to_simple, format_element, format_polynomial,
                         lift_poly, poly_to_json, scalar_to_json,
                         splitting_field, subalgebra_span, tower_from_json,
                         tower_to_json, trivial_tower)
from .polynomials import Polynomial

DEFAULT_CORPUS = "data/corpus.json"


# ---------------------------------------------------------------------------
# Expression grammar: INT or INT/INT coefficients, names, + - * / ^ ( )
# ---------------------------------------------------------------------------


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        if ch in "+-*/^()":
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise DomainError(f"syntax error at position {i}: unexpected {ch!r}")
    tokens.append(("end", None, len(text)))
    return tokens


class _ExprParser:
    """Recursive-descent evaluator over any commutative ring with 1.

    ``constant`` maps a Python int into the ring; ``variables`` binds names.
    Division requires an invertible divisor (a nonzero constant when the ring
    is a polynomial ring).
    """

    def __init__(self, text, variables, constant):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.variables = variables
        self.constant = constant

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise DomainError(
                f"syntax error at position {tok[2]}: expected {kind}, got {tok[0]}")
        self.pos += 1
        return tok

    def parse(self):
        v = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise DomainError(f"syntax error at position {tok[2]}: trailing input")
        return v

    def expr(self):
        v = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            v = v + rhs if op == "+" else v - rhs
        return v

    def term(self):
        v = self.factor()
        while self.peek()[0] in ("*", "/"):
            op, _, at = self.take()
            rhs = self.factor()
            if op == "*":
                v = v * rhs
            else:
                v = self._divide(v, rhs, at)
        return v

    def _divide(self, a, b, at):
        if isinstance(b, Polynomial):
            if b.is_zero:
                raise DomainError(f"zero denominator at position {at}")
            if b.degree > 0:
                raise DomainError(
                    f"division by a non-constant at position {at}")
            try:
                return a.scale(b.domain.one / b.coeffs[0])
            except DomainError:
                raise DomainError(
                    f"coefficient not invertible in the base field at position {at}")
        if not b:
            raise DomainError(f"zero denominator at position {at}")
        return a / b

    def factor(self):
        tok = self.peek()
        if tok[0] == "-":
            self.take()
            return -self.factor()
        v = self.atom()
        if self.peek()[0] == "^":
            self.take()
            etok = self.take("int")
            v = v ** etok[1]
        return v

    def atom(self):
        tok = self.take()
        kind, val, at = tok
        if kind == "int":
            return self.constant(val)
        if kind == "name":
            if val not in self.variables:
                raise DomainError(f"unknown name {val!r} at position {at}")
            return self.variables[val]
        if kind == "(":
            v = self.expr()
            self.take(")")
            return v
        raise DomainError(f"syntax error at position {at}: unexpected {kind}")


def parse_polynomial(text: str, base) -> Polynomial:
    """Parse a univariate polynomial in x over Q or F_p."""
    variables = {"x": Polynomial.x(base)}
    constant = lambda i: Polynomial.constant(base, base.coerce(i))
    value = _ExprParser(text, variables, constant).parse()
    return value


def parse_poly_over_tower(text: str, tower: ExtensionTower) -> Polynomial:
    """Polynomial in x whose coefficients may mention tower generators."""
    top = tower.top_field if tower.num_levels else tower.base
    variables = {"x": Polynomial.x(top)}
    for k, name in enumerate(tower.generator_names(), start=1):
        gen = top.coerce(tower.generator(k))
        variables[name] = Polynomial.constant(top, gen)
    constant = lambda i: Polynomial.constant(top, top.coerce(i))
    return _ExprParser(text, variables, constant).parse()


def parse_element(text: str, tower: ExtensionTower):
    """Evaluate an expression in the tower generators to a field element."""
    top = tower.top_field if tower.num_levels else tower.base
    variables = {}
    for k, name in enumerate(tower.generator_names(), start=1):
        variables[name] = top.coerce(tower.generator(k))
    return _ExprParser(text, variables, top.coerce).parse()


# ---------------------------------------------------------------------------
# Command plumbing
# ---------------------------------------------------------------------------


def _default_seed() -> int:
    env = os.environ.get("GALOIS_KIT_SEED")
    return int(env) if env else 0


def _parse_base(spec: str):
    try:
        return base_field_from_json(spec)
    except (ValueError, DomainError):
        raise DomainError(f"bad base field spec {spec!r}; use Q or F<p>")


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="galois-kit",
        description="Exact splitting fields, automorphism groups, and Galois checks over Q and F_p.")
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp, poly=True):
        if poly:
            sp.add_argument("poly", nargs="?", help="defining polynomial in x")
            sp.add_argument("--tower", help="tower JSON file as input instead of a polynomial")
        sp.add_argument("--base", default="Q", help="base field: Q or F<p> (default Q)")
        sp.add_argument("--seed", type=int, default=None, help="seed (default: GALOIS_KIT_SEED or 0)")
        sp.add_argument("--json", action="store_true", help="emit a JSON report")

    sp = sub.add_parser("split", help="build the splitting field of a polynomial")
    common(sp)
    sp.add_argument("--tower-out", help="write the resulting tower as JSON")

    sp = sub.add_parser("galois", help="run the three-way Galois check on an extension")
    common(sp)

    sp = sub.add_parser("aut", help="enumerate the automorphism group")
    common(sp)
    sp.add_argument("--strategy", choices=("roots", "recursive"), default="roots")

    sp = sub.add_parser("fixed", help="fixed field of the full automorphism group")
    common(sp)

    sp = sub.add_parser("primitive", help="collapse a tower to a simple extension")
    common(sp)

    sp = sub.add_parser("census", help="count elements of F_{p^n} in proper subfields")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--budget", type=int, default=4096)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--seed", type=int, default=None)

    sp = sub.add_parser("verify-corpus", help="run the Galois check over an instance corpus")
    sp.add_argument("corpus", nargs="?", help="corpus JSON path (default: bundled corpus)")
    sp.add_argument("--parallelism", type=int, default=1)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--json", action="store_true")
    return p


def _input_tower(args) -> ExtensionTower:
    base = _parse_base(args.base)
    has_poly = getattr(args, "poly", None) is not None
    has_tower = getattr(args, "tower", None) is not None
    if has_poly == has_tower:
        raise DomainError("provide exactly one input: a polynomial or --tower FILE")
    if has_tower:
        with open(args.tower, "r", encoding="utf-8") as fh:
            return tower_from_json(json.load(fh), seed=args.seed or 0)
    f = parse_polynomial(args.poly, base)
    return adjoin_root(base, f, seed=args.seed or 0)


def _emit(args, data: dict, human: str) -> None:
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(human)


def run(args) -> int:
    """Dispatch a parsed command; returns the process exit code."""
    if args.seed is None:
        args.seed = _default_seed()
    verb = args.verb.replace("-", "_")
    return getattr(sys.modules[__name__], f"_cmd_{verb}")(args)


def _cmd_split(args) -> int:
    base = _parse_base(args.base)
    if args.poly is None:
        raise DomainError("split needs a polynomial")
    f = parse_polynomial(args.poly, base)
    result = splitting_field(f, base, seed=args.seed)
    tower = result.tower
    data = {
        "input": format_polynomial(f),
        "base": base_field_to_json(base),
        "degree": tower.degree(),
        "tower": tower_to_json(tower),
        "roots": [scalar_to_json(r) for r in result.roots],
        "roots_pretty": [format_element(r) for r in result.roots],
        "transcript": [
            {"step": s.index, "generator": s.generator,
             "modulus": poly_to_json(s.modulus),
             "modulus_pretty": format_polynomial(s.modulus),
             "degree": s.modulus.degree, "tower_degree": s.tower_degree}
            for s in result.transcript
        ],
        "seed": args.seed,
    }
    if args.tower_out:
        with open(args.tower_out, "w", encoding="utf-8") as fh:
            json.dump(tower_to_json(tower), fh, indent=2, sort_keys=True)
    lines = [f"splitting field of {format_polynomial(f)} over {base!r}",
             f"  degree [L:K] = {tower.degree()}"]
    for s in result.transcript:
        lines.append("  " + s.describe())
    lines.append("  roots: " + ", ".join(format_element(r) for r in result.roots))
    _emit(args, data, "\n".join(lines))
    return 0


def _report_data(report: core.GaloisReport, seed: int) -> dict:
    data = report.to_json_dict()
    data["seed"] = seed
    return data


def _cmd_galois(args) -> int:
    tower = _input_tower(args)
    report = core.galois_report(tower, seed=args.seed)
    lines = [f"extension of degree {report.degree} over {tower.base!r}",
             f"  |Aut(L,K)| = {report.aut_order}  (condition a: {report.condition_a})",
             f"  fixed-field degree = {report.fixed_degree}  (condition c: {report.condition_c})",
             f"  verdict: {'GALOIS' if report.verdict else 'NOT GALOIS'}"]
    if report.certificate is not None:
        lines.append(f"  certificate f = {format_polynomial(report.certificate.poly)}"
                     f"  (squarefree, splits, roots generate L)")
    if report.note:
        lines.append(f"  note: {report.note}")
    lines.append(f"  generic element z = {format_element(report.generic)} with "
                 f"min poly {format_polynomial(report.generic_min_poly)}")
    _emit(args, _report_data(report, args.seed), "\n".join(lines))
    return 0


def _cmd_aut(args) -> int:
    tower = _input_tower(args)
    group = core.automorphism_group(tower, strategy=args.strategy, seed=args.seed)
    collapse = group.collapse
    data = {
        "degree": tower.degree(),
        "order": group.order,
        "strategy": args.strategy,
        "primitive_element": format_element(collapse.primitive),
        "primitive_min_poly": poly_to_json(collapse.min_poly),
        "images": [scalar_to_json(s.image) for s in group.elements],
        "images_pretty": [format_element(s.image) for s in group.elements],
        "seed": args.seed,
    }
    lines = [f"Aut(L,K) for a degree-{tower.degree()} extension of {tower.base!r}",
             f"  order {group.order}, primitive element "
             f"{format_element(collapse.primitive)} with min poly "
             f"{format_polynomial(collapse.min_poly)}"]
    for i, s in enumerate(group.elements):
        tag = " (identity)" if i == 0 else ""
        lines.append(f"  sigma_{i}: t -> {format_element(s.image)}{tag}")
    _emit(args, data, "\n".join(lines))
    return 0


def _cmd_fixed(args) -> int:
    tower = _input_tower(args)
    group = core.automorphism_group(tower, seed=args.seed)
    result = core.fixed_field(group.elements)
    data = {
        "degree": tower.degree(),
        "group_order": group.order,
        "fixed_degree": result.degree,
        "basis": [scalar_to_json(b) for b in result.basis],
        "basis_pretty": [format_element(b) for b in result.basis],
        "generator": format_element(result.generator),
        "generator_min_poly": poly_to_json(result.min_poly),
        "seed": args.seed,
    }
    human = (f"fixed field of the full group (order {group.order}): degree "
             f"{result.degree}\n  basis: "
             + ", ".join(format_element(b) for b in result.basis)
             + f"\n  generator {format_element(result.generator)} with min poly "
             + format_polynomial(result.min_poly))
    _emit(args, data, human)
    return 0


def _cmd_primitive(args) -> int:
    tower = _input_tower(args)
    collapse = collapse_to_simple(tower)
    data = {
        "degree": tower.degree(),
        "primitive_element": format_element(collapse.primitive),
        "min_poly": poly_to_json(collapse.min_poly),
        "min_poly_pretty": format_polynomial(collapse.min_poly),
        "generator_images": [scalar_to_json(g) for g in collapse.generator_images],
        "seed": args.seed,
    }
    human = (f"simple form of a degree-{tower.degree()} tower: Q-style modulus "
             f"{format_polynomial(collapse.min_poly)}\n  primitive element = "
             f"{format_element(collapse.primitive)}")
    _emit(args, data, human)
    return 0


def _cmd_census(args) -> int:
    report = core.subfield_element_census(args.p, args.n, budget=args.budget)
    data = report.to_json_dict()
    human = (f"F_{{{args.p}^{args.n}}}: {report.union_count} of {report.field_size} "
             f"elements lie in a proper subfield; bound "
             f"{report.bound} < {report.field_size}\n  per-subfield sizes: "
             + ", ".join(f"F_{args.p}^{m}: {c}" for m, c in sorted(report.subfield_sizes.items())))
    _emit(args, data, human)
    return 0


# ---------------------------------------------------------------------------
# Corpus runner
# ---------------------------------------------------------------------------


def load_corpus(path: str | None):
    if path is None:
        text = _pkg_files("galois_kit").joinpath(DEFAULT_CORPUS).read_text("utf-8")
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    try:
        instances = json.loads(text)
    except json.JSONDecodeError as e:
        raise DomainError(f"corpus file does not parse: {e}")
    if not isinstance(instances, list) or not instances:
        raise DomainError("corpus must be a nonempty JSON array of instances")
    names = [inst.get("name") for inst in instances]
    if len(set(names)) != len(names) or None in names:
        raise DomainError("corpus instances must carry unique names")
    return instances


def build_instance_tower(inst: dict, seed: int):
    base = _parse_base(inst["base"])
    construct = inst["construct"]
    if "split" in construct:
        f = parse_polynomial(construct["split"], base)
        return splitting_field(f, base, seed=seed).tower
    if "adjoin" in construct:
        tower = trivial_tower(base)
        for text in construct["adjoin"]:
            f = parse_poly_over_tower(text, tower)
            tower = tower.adjoin(f, seed=seed)
        return tower
    raise DomainError(f"instance {inst['name']}: construct needs split or adjoin")


def evaluate_instance(inst: dict, seed: int) -> dict:
    tower = build_instance_tower(inst, seed)
    report = core.galois_report(tower, seed=seed)
    group = core.automorphism_group(tower, seed=seed)
    mismatches = []
    expected = inst.get("expected", {})

    def expect(key, actual):
        if key in expected and expected[key] != actual:
            mismatches.append(f"{key}: expected {expected[key]}, got {actual}")

    expect("galois", report.verdict)
    expect("degree", report.degree)
    expect("aut_order", report.aut_order)
    expect("fixed_degree", report.fixed_degree)
    if report.condition_a != report.condition_c:
        mismatches.append("condition (a) and (c) disagree")
    if not report.order_bound_ok:
        mismatches.append("|G| exceeds [L:K]")
    intermediates = []
    for inter in inst.get("intermediates", ()):
        gens = [parse_element(g, tower) for g in inter["generators"]]
        span = subalgebra_span(tower, gens)
        entry = {"name": inter.get("name", ",".join(inter["generators"])),
                 "degree": span.dimension}
        if "expected_degree" in inter and inter["expected_degree"] != span.dimension:
            mismatches.append(
                f"intermediate {entry['name']}: degree {span.dimension} != "
                f"expected {inter['expected_degree']}")
        if report.verdict:
            ok = core.intermediate_fixed_check(tower, gens, group=group, seed=seed)
            entry["fixed_check"] = ok
            if not ok:
                mismatches.append(f"intermediate {entry['name']}: fixed-field check failed")
        intermediates.append(entry)
    return {
        "name": inst["name"],
        "report": _report_data(report, seed),
        "intermediates": intermediates,
        "mismatches": mismatches,
        "status": "PASS" if not mismatches else "FAIL",
    }


def verify_corpus(path: str | None, parallelism: int = 1, seed: int = 0) -> dict:
    """Run the Galois check over every instance; summary is order-stable."""
    instances = sorted(load_corpus(path), key=lambda i: i["name"])
    if parallelism > 1:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            results = list(pool.map(lambda i: evaluate_instance(i, seed), instances))
    else:
        results = [evaluate_instance(i, seed) for i in instances]
    results.sort(key=lambda r: r["name"])
    passed = sum(1 for r in results if r["status"] == "PASS")
    return {
        "seed": seed,
        "instances": results,
        "summary": {"total": len(results), "passed": passed,
                    "failed": len(results) - passed},
    }


def _cmd_verify_corpus(args) -> int:
    outcome = verify_corpus(args.corpus, parallelism=args.parallelism, seed=args.seed)
    if args.json:
        print(json.dumps(outcome, indent=2, sort_keys=True))
    else:
        width = max(len(r["name"]) for r in outcome["instances"]) + 2
        for r in outcome["instances"]:
            rep = r["report"]
            line = (f"{r['name']:<{width}} {r['status']}  verdict={rep['verdict']} "
                    f"|G|={rep['aut_order']} [L:K]={rep['degree']} "
                    f"fixed={rep['fixed_degree']}")
            if r["mismatches"]:
                line += "  <- " + "; ".join(r["mismatches"])
            print(line)
        s = outcome["summary"]
        print(f"{s['passed']}/{s['total']} instances passed")
    if outcome["summary"]["failed"]:
        failing = [r["name"] for r in outcome["instances"] if r["status"] == "FAIL"]
        print(f"corpus mismatches in: {', '.join(failing)}", file=sys.stderr)
        return 1
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return run(args)
    except DomainError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except CapabilityError as e:
        print(f"capability error: {e}", file=sys.stderr)
        return 3
    except InternalError as e:
        print(f"internal invariant violation: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
