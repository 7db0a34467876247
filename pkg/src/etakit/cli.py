"""Command-line front end.

Verbs: eta, order, span, restrict, nf, basis, sq, wu, push, verify, table.
Exact rationals print as p/q; cyclotomic values in the z^k text format;
verification reports in text or JSON.  Exit status 0 on success, 1 on
computation errors (the error class name is printed), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import glrverify
from .eta import (LensSpec, ManifoldSpec, Modulus, eta_lens_bundle,
                  eta_lens_bundle_float, eta_lens_cyclic,
                  eta_lens_cyclic_float, eta_donnelly, eta_donnelly_float,
                  eta_order, quaternion_free_rep, rational_determinant,
                  span_order_lower_bound, thm31_modulus)
from .f2ring import (F2ParseError, PresentedF2Algebra, SteenrodData,
                     circle_bundle_cohomology, circle_bundle_steenrod,
                     d8_to_v2_restriction, dihedral_cohomology,
                     dual_pushforward, dual_pushforward_map, klein_cohomology,
                     lens_space_cohomology, sd_to_circle_bundle,
                     sd_to_d8_restriction, semidihedral_cohomology,
                     semidihedral_steenrod, stiefel_whitney, wu_classes)
from .grouprep import (CharacterTable, InclusionMap, ValidationError,
                       VirtualCharacter, builtin_group, character_table,
                       restrict_virtual, table_from_json)


class ParseError(ValueError):
    pass


_CHAR_ALIASES = {
    "sd16": {"c8hat": "chi2", "d8hat": "chi3", "q8hat": "chi4", "one": "r0"},
    "q8": {"one": "r0"},
}


# -- configuration ---------------------------------------------------------------


@dataclass
class Config:
    degree_bound: int = 64
    root_order_cap: int = 64
    algebras: dict = field(default_factory=dict)
    steenrod: dict = field(default_factory=dict)
    tables: dict = field(default_factory=dict)
    inclusions: dict = field(default_factory=dict)


def load_config(path: Optional[str]) -> Config:
    """Read the JSON configuration; absent keys fall back to defaults."""
    if path is None:
        path = os.environ.get("ETAKIT_CONFIG")
    if path is None:
        return Config()
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if not text.strip():
        return Config()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"config: {exc.msg} (line {exc.lineno}, column {exc.colno})")
    cfg = Config(degree_bound=int(data.get("degree_bound", 64)),
                 root_order_cap=int(data.get("root_order_cap", 64)))
    for name, block in data.get("algebras", {}).items():
        gens = [(g[0], int(g[1])) for g in block["generators"]]
        poincare = None
        if "poincare" in block:
            poincare = (int(block["poincare"]["dimension"]), block["poincare"]["top"])
        try:
            alg = PresentedF2Algebra(
                f"custom:{name}", gens, block.get("relations", []),
                degree_bound=int(block.get("degree_bound", cfg.degree_bound)),
                precedence=block.get("precedence"), poincare=poincare)
        except ValueError as exc:
            if isinstance(exc, F2ParseError):
                raise
            raise ValidationError(f"algebra {name!r}: {exc}")
        cfg.algebras[name] = alg
        if "steenrod" in block:
            table = {(g, int(i)): v for g, sub in block["steenrod"].items()
                     for i, v in sub.items()}
            cfg.steenrod[name] = SteenrodData(alg, table)
    for name, block in data.get("tables", {}).items():
        cfg.tables[name] = table_from_json(block)
    for name, block in data.get("inclusions", {}).items():
        cfg.inclusions[name] = InclusionMap.from_images(
            builtin_group(block["source"]), builtin_group(block["target"]),
            block["images"])
    return cfg


# -- small parsers ------------------------------------------------------------------


def parse_character(table: CharacterTable, text: str) -> VirtualCharacter:
    """Mini-grammar for virtual characters: integers, irreducible names,
    +, -, *, ^ and parentheses, e.g. "(2-tau)^2" or
    "4 + rho*rho5 - 2*(rho+rho5)"."""
    token_re = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>\d+)"
                          r"|(?P<op>[-+*^()]))")
    tokens = []
    scan = 0
    while scan < len(text):
        m = token_re.match(text, scan)
        if m is None or m.end() == scan:
            if text[scan:].strip():
                raise ParseError(f"unexpected character {text[scan]!r} at "
                                 f"position {scan}")
            break
        tokens.append((m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
        scan = m.end()
    aliases = _CHAR_ALIASES.get(table.group.name, {})
    pos = [0]

    def peek():
        return tokens[pos[0]] if pos[0] < len(tokens) else ("end", "", len(text))

    def advance():
        tok = peek()
        pos[0] += 1
        return tok

    def atom() -> VirtualCharacter:
        kind, val, p = advance()
        if kind == "name":
            name = aliases.get(val, val)
            try:
                return table.irreducible(name)
            except KeyError:
                raise ParseError(f"unknown character {val!r} at position {p}; "
                                 f"choose from {', '.join(table.irreducible_names)}")
        if kind == "int":
            return table.constant(int(val))
        if kind == "op" and val == "(":
            e = expr()
            kind, val, p = advance()
            if val != ")":
                raise ParseError(f"expected ')' at position {p}")
            return e
        raise ParseError(f"unexpected token {val!r} at position {p}")

    def factor() -> VirtualCharacter:
        e = atom()
        while peek()[0] == "op" and peek()[1] == "^":
            advance()
            kind, val, p = advance()
            if kind != "int":
                raise ParseError(f"exponent must be an integer at position {p}")
            e = e ** int(val)
        return e

    def term() -> VirtualCharacter:
        e = factor()
        while peek()[0] == "op" and peek()[1] == "*":
            advance()
            e = e * factor()
        return e

    def expr() -> VirtualCharacter:
        negate = False
        if peek()[0] == "op" and peek()[1] in "+-":
            negate = advance()[1] == "-"
        e = term()
        if negate:
            e = -e
        while peek()[0] == "op" and peek()[1] in "+-":
            op = advance()[1]
            t = term()
            e = e - t if op == "-" else e + t
        return e

    result = expr()
    if peek()[0] != "end":
        raise ParseError(f"unexpected token {peek()[1]!r} at position {peek()[2]}")
    return result


def _parse_int_tuple(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(",") if x.strip() != "")


def _parse_fraction_matrix(text: str) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row.split(",")] for row in text.split(";")]


def _resolve_algebra(tag: str, cfg: Config) -> PresentedF2Algebra:
    if tag.startswith("custom:"):
        name = tag[len("custom:"):]
        if name not in cfg.algebras:
            raise ValidationError(f"no custom algebra {name!r} in the configuration")
        return cfg.algebras[name]
    if tag == "sd":
        return semidihedral_cohomology(cfg.degree_bound)
    if tag == "d8":
        return dihedral_cohomology(cfg.degree_bound)
    if tag == "v2":
        return klein_cohomology(cfg.degree_bound)
    m = re.fullmatch(r"m(\d+)", tag)
    if m:
        dim = int(m.group(1))
        if dim % 2:
            raise ValidationError("total-space algebras have even dimension")
        return circle_bundle_cohomology(dim // 2, cfg.degree_bound)
    m = re.fullmatch(r"lens(\d+)", tag)
    if m:
        dim = int(m.group(1))
        if dim % 2 == 0:
            raise ValidationError("lens-space algebras have odd dimension")
        return lens_space_cohomology((dim + 1) // 2, cfg.degree_bound)
    raise ValidationError(f"unknown algebra {tag!r}; use sd, d8, v2, m<2n>, "
                          f"lens<2n-1> or custom:<name>")


def _resolve_steenrod(tag: str, algebra: PresentedF2Algebra, branch: str,
                      cfg: Config) -> SteenrodData:
    if tag.startswith("custom:"):
        name = tag[len("custom:"):]
        if name not in cfg.steenrod:
            raise ValidationError(f"no steenrod data for custom algebra {name!r}")
        return cfg.steenrod[name]
    if tag == "sd":
        return semidihedral_steenrod(algebra)
    if re.fullmatch(r"m(\d+)", tag):
        sq1 = "Z*s" if branch == "spin" else "Z*(t+s)"
        return circle_bundle_steenrod(algebra, sq1)
    raise ValidationError(f"no builtin steenrod data for algebra {tag!r}")


def _character_table_for(tag: str, cfg: Config) -> CharacterTable:
    if tag.startswith("custom:"):
        name = tag[len("custom:"):]
        if name not in cfg.tables:
            raise ValidationError(f"no custom table {name!r} in the configuration")
        return cfg.tables[name]
    return character_table(tag)


_DEFAULT_IMAGES = {
    ("sd16", "q8"): {"i": "s^2", "j": "t*s"},
    ("sd16", "c8"): {"g": "s"},
    ("sd16", "c2"): {"g": "t"},
    ("sd16", "c4"): {"g": "s^2"},
    ("q8", "c4"): {"g": "i"},
    ("d8", "v2"): {"a": "f", "b": "r^2*f"},
}


# -- command handlers ------------------------------------------------------------------


def _emit_eta(value: Fraction, modulus: Modulus, args, float_value: float) -> None:
    if args.float:
        print(f"{float_value:.12g}")
        return
    order = eta_order(value, modulus)
    if args.format == "json":
        print(json.dumps({"value": str(value), "order": order,
                          "modulus": str(modulus),
                          "order_mod_z": eta_order(value, Modulus.Z),
                          "order_mod_2z": eta_order(value, Modulus.TWO_Z)}))
    else:
        print(f"{value} (order {order} mod {modulus})")


def _cmd_eta(args, cfg: Config) -> int:
    if args.engine in ("cyclic", "bundle"):
        if args.l > cfg.root_order_cap:
            raise ValidationError(f"root order {args.l} exceeds the cap "
                                  f"{cfg.root_order_cap}")
        table = character_table(f"c{args.l}")
        rho = parse_character(table, args.rho)
        if args.engine == "cyclic":
            spec = LensSpec(args.l, _parse_int_tuple(args.a))
            value = eta_lens_cyclic(spec, rho)
            fval = eta_lens_cyclic_float(spec, rho)
        else:
            chern = _parse_int_tuple(args.chern) if args.chern else None
            spec = LensSpec(args.l, _parse_int_tuple(args.a), kind="bundle",
                            chern=chern)
            value = eta_lens_bundle(spec, rho)
            fval = eta_lens_bundle_float(spec, rho)
    else:
        table = character_table("q8")
        rho = parse_character(table, args.rho)
        rep = quaternion_free_rep(args.k)
        spec = ManifoldSpec(quaternion_k=args.k)
        value = eta_donnelly(rep, rho)
        fval = eta_donnelly_float(rep, rho)
    if args.mod == "z":
        modulus = Modulus.Z
    elif args.mod == "2z":
        modulus = Modulus.TWO_Z
    else:
        modulus = thm31_modulus(spec.dimension, rho)
    _emit_eta(value, modulus, args, fval)
    return 0


def _cmd_order(args, cfg: Config) -> int:
    modulus = Modulus.TWO_Z if args.mod == "2z" else Modulus.Z
    print(eta_order(Fraction(args.value), modulus))
    return 0


def _cmd_span(args, cfg: Config) -> int:
    rows = _parse_fraction_matrix(args.matrix)
    det = rational_determinant(rows)
    order = span_order_lower_bound(rows)
    if args.format == "json":
        print(json.dumps({"det": str(det), "order": order}))
    else:
        print(f"det = {det} (order {order} mod Z)")
    return 0


def _cmd_restrict(args, cfg: Config) -> int:
    group = builtin_group(args.group)
    sub = builtin_group(args.subgroup)
    if args.images:
        images = dict(item.split("=", 1) for item in args.images.split(","))
    else:
        key = (group.name, sub.name)
        if key not in _DEFAULT_IMAGES:
            raise ValidationError(f"no default inclusion for {sub.name} in "
                                  f"{group.name}; pass --images")
        images = _DEFAULT_IMAGES[key]
    inclusion = InclusionMap.from_images(sub, group, images)
    chi = parse_character(_character_table_for(args.group, cfg), args.chi)
    restricted = restrict_virtual(chi, inclusion)
    if args.format == "json":
        print(json.dumps({"coefficients": list(restricted.coeffs),
                          "names": list(restricted.table.irreducible_names)}))
    else:
        print(str(restricted))
    return 0


def _cmd_nf(args, cfg: Config) -> int:
    algebra = _resolve_algebra(args.algebra, cfg)
    print(str(algebra.parse(args.expr)))
    return 0


def _cmd_basis(args, cfg: Config) -> int:
    algebra = _resolve_algebra(args.algebra, cfg)
    mons = [algebra.format_monomial(m) for m in algebra.graded_basis(args.degree)]
    if args.format == "json":
        print(json.dumps(mons))
    else:
        print(" ".join(mons) if mons else "(empty)")
    return 0


def _cmd_sq(args, cfg: Config) -> int:
    algebra = _resolve_algebra(args.algebra, cfg)
    data = _resolve_steenrod(args.algebra, algebra, args.branch, cfg)
    print(str(data.sq(args.i, algebra.parse(args.expr))))
    return 0


def _cmd_wu(args, cfg: Config) -> int:
    algebra = _resolve_algebra(args.algebra, cfg)
    data = _resolve_steenrod(args.algebra, algebra, args.branch, cfg)
    v = wu_classes(algebra, data)
    lines = [f"v{j} = {vj}" for j, vj in enumerate(v)]
    if args.sw:
        w = stiefel_whitney(algebra, data)
        lines += [f"w{k} = {wk}" for k, wk in enumerate(w)]
    if args.format == "json":
        print(json.dumps({line.split(" = ")[0]: line.split(" = ")[1]
                          for line in lines}))
    else:
        print("\n".join(lines))
    return 0


_BUILTIN_MAPS = {
    "sd-to-d8": lambda cfg: sd_to_d8_restriction(
        semidihedral_cohomology(cfg.degree_bound), dihedral_cohomology(cfg.degree_bound)),
    "d8-to-v2": lambda cfg: d8_to_v2_restriction(
        dihedral_cohomology(cfg.degree_bound), klein_cohomology(cfg.degree_bound)),
}


def _cmd_push(args, cfg: Config) -> int:
    key = args.map
    m = re.fullmatch(r"sd-to-m(\d+)", key)
    if m:
        hom = sd_to_circle_bundle(semidihedral_cohomology(cfg.degree_bound),
                                  circle_bundle_cohomology(int(m.group(1)) // 2,
                                                           cfg.degree_bound))
    elif key in _BUILTIN_MAPS:
        hom = _BUILTIN_MAPS[key](cfg)
    else:
        raise ValidationError(f"unknown map {key!r}; use sd-to-d8, d8-to-v2 "
                              f"or sd-to-m<2n>")
    if args.format == "json":
        print(json.dumps(dual_pushforward(hom, args.degree)))
        return 0
    push = dual_pushforward_map(hom, args.degree)
    src, tgt = hom.source, hom.target
    for t_mon, support in push.items():
        image = " + ".join(f"xi({src.format_monomial(s)})"
                           for s in sorted(support, reverse=True)) or "0"
        print(f"xi({tgt.format_monomial(t_mon)}) -> {image}")
    return 0


def _cmd_verify(args, cfg: Config) -> int:
    report = glrverify.run_report(args.suite)
    if args.format == "json":
        print(report.to_json())
    else:
        print(report.to_text())
    return 0 if not report.failures else 1


def _cmd_table(args, cfg: Config) -> int:
    if args.n is not None:
        orders, rank = glrverify.kerap_lookup(args.n)
        if args.format == "json":
            print(json.dumps({"n": args.n, "one_column": list(orders),
                              "two_column_rank": rank}))
        else:
            print(f"n={args.n}: one-column orders {list(orders)}, "
                  f"two-column rank {rank}")
        return 0
    if args.group is None:
        raise ValidationError("pass --n for the kernel table or --group for "
                              "a character table")
    table = _character_table_for(args.group, cfg)
    if args.format == "json":
        print(json.dumps({
            "group": table.group.name,
            "classes": [{"name": n, "size": s} for n, s in
                        zip(table.group.class_names, table.group.class_sizes)],
            "irreducibles": [{"name": name, "values": [str(v) for v in row]}
                             for name, row in zip(table.irreducible_names, table.rows)],
        }))
    else:
        print(f"{table.group.name}: classes " +
              " ".join(f"{n}(size {s})" for n, s in
                       zip(table.group.class_names, table.group.class_sizes)))
        for name, row in zip(table.irreducible_names, table.rows):
            vals = []
            for v in row:
                r = v.as_rational()
                vals.append(str(r) if r is not None else str(v))
            print(f"  {name}: " + ", ".join(vals))
    return 0


# -- argument wiring ------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="etakit",
        description="Exact eta invariants, character restrictions, mod-2 "
                    "cohomology normal forms, and the verification report.")
    parser.add_argument("--config", default=None,
                        help="JSON configuration path (or set ETAKIT_CONFIG)")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("eta", help="exact eta invariant of a quotient manifold")
    p.add_argument("engine", choices=("cyclic", "bundle", "quaternion"))
    p.add_argument("--l", type=int, default=8, help="cyclic group order")
    p.add_argument("--a", default="1,1", help="odd weight tuple, comma separated")
    p.add_argument("--chern", default=None, help="bundle chern numbers")
    p.add_argument("--k", type=int, default=0, help="quaternion parameter")
    p.add_argument("--rho", required=True, help="virtual character expression")
    p.add_argument("--mod", choices=("auto", "z", "2z"), default="auto")
    p.add_argument("--float", action="store_true", help="double-precision oracle")
    add_format(p)
    p.set_defaults(handler=_cmd_eta)

    p = sub.add_parser("order", help="order of a rational in R/Z or R/2Z")
    p.add_argument("--value", required=True)
    p.add_argument("--mod", choices=("z", "2z"), default="z")
    add_format(p)
    p.set_defaults(handler=_cmd_order)

    p = sub.add_parser("span", help="determinant order certificate for a matrix")
    p.add_argument("--matrix", required=True,
                   help="rows separated by ';', entries by ','")
    add_format(p)
    p.set_defaults(handler=_cmd_span)

    p = sub.add_parser("restrict", help="restrict a virtual character to a subgroup")
    p.add_argument("--group", required=True)
    p.add_argument("--subgroup", required=True)
    p.add_argument("--images", default=None,
                   help="generator images, e.g. 'i=s^2,j=t*s'")
    p.add_argument("--chi", required=True)
    add_format(p)
    p.set_defaults(handler=_cmd_restrict)

    p = sub.add_parser("nf", help="normal form in a presented algebra")
    p.add_argument("--algebra", required=True)
    p.add_argument("--expr", required=True)
    add_format(p)
    p.set_defaults(handler=_cmd_nf)

    p = sub.add_parser("basis", help="monomial basis of a graded component")
    p.add_argument("--algebra", required=True)
    p.add_argument("--degree", type=int, required=True)
    add_format(p)
    p.set_defaults(handler=_cmd_basis)

    p = sub.add_parser("sq", help="Steenrod square of an element")
    p.add_argument("--algebra", required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--expr", required=True)
    p.add_argument("--branch", choices=("spin", "nonspin"), default="spin")
    add_format(p)
    p.set_defaults(handler=_cmd_sq)

    p = sub.add_parser("wu", help="Wu classes (and optionally Stiefel-Whitney)")
    p.add_argument("--algebra", required=True)
    p.add_argument("--branch", choices=("spin", "nonspin"), default="spin")
    p.add_argument("--sw", action="store_true")
    add_format(p)
    p.set_defaults(handler=_cmd_wu)

    p = sub.add_parser("push", help="dual-basis pushforward in homology")
    p.add_argument("--map", required=True)
    p.add_argument("--degree", type=int, required=True)
    add_format(p)
    p.set_defaults(handler=_cmd_push)

    p = sub.add_parser("verify", help="run the claim verification report")
    p.add_argument("--suite", default="all",
                   help="all or one of: " + ", ".join(sorted(glrverify.SUITES)))
    add_format(p)
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("table", help="reference kernel rows / character tables")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--group", default=None)
    add_format(p)
    p.set_defaults(handler=_cmd_table)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        return args.handler(args, cfg)
    except (ValueError, ArithmeticError, KeyError, OSError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
