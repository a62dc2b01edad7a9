"""The ``qmat`` command line and its ``.qm`` document format.

A document looks like::

    # comments run to end of line
    ground q=2 n=2
    [family I]
    0
    10
    [rank]
    0 = 0
    01 = 0
    ...

Exit codes: 0 when every check passes, 1 when a violation or
counterexample is found, 2 for usage and input errors.
"""

from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import crypto, gf, verify
from .axioms import AxiomViolation, Mode, check, parse_axioms
from .family import SubspaceFamily
from .lattice import (LatticeError, Subspace, SubspaceLattice, enumerate_subspaces, get_lattice,
                      parse_subspace)
from .qmatroid import LoopSpaceError, RankFunction, contraction, dual, make_qmatroid, restriction

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2

NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
HEADER_RE = re.compile(r"ground\s+q=(\d+)\s+n=(\d+)\Z")
FAMILY_RE = re.compile(r"\[family\s+(\S+)\]\Z")


class DocumentError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


@dataclass
class Document:
    q: int
    n: int
    families: dict[str, SubspaceFamily] = field(default_factory=dict)
    rank: RankFunction | None = None

    @property
    def lattice(self) -> SubspaceLattice:
        return get_lattice(self.q, self.n)


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse(text: str) -> Document:
    """Parse and validate a ``.qm`` document."""
    doc = None
    section = None  # a family name, or None for the rank section
    in_section = False
    rank_values: dict[Subspace, int] = {}
    rank_line = None
    for no, raw in enumerate(text.split("\n"), 1):
        line = _strip(raw.rstrip("\r"))
        if not line:
            continue
        if doc is None:
            m = HEADER_RE.match(line)
            if not m:
                raise DocumentError(f"expected 'ground q=<prime> n=<int>', got {line!r}", no)
            q, n = int(m.group(1)), int(m.group(2))
            try:
                gf.check_order(q)
                doc = Document(q, n)
                lat = doc.lattice
            except (gf.FieldError, LatticeError) as exc:
                raise DocumentError(str(exc), no) from None
            continue
        if line.startswith("["):
            m = FAMILY_RE.match(line)
            if m:
                name = m.group(1)
                if not NAME_RE.match(name):
                    raise DocumentError(f"bad family name {name!r}", no)
                if name in doc.families:
                    raise DocumentError(f"duplicate family {name!r}", no)
                doc.families[name] = SubspaceFamily(lat)
                section, in_section = name, True
            elif line == "[rank]":
                if rank_line is not None:
                    raise DocumentError("duplicate [rank] section", no)
                rank_line = no
                section, in_section = None, True
            else:
                raise DocumentError(f"unknown section {line!r}", no)
            continue
        if not in_section:
            raise DocumentError(f"{line!r} outside any section", no)
        if section is not None:
            s = _literal(line, doc, no)
            fam = doc.families[section]
            if s in fam:
                raise DocumentError(f"duplicate subspace {s.literal()} in family {section}", no)
            doc.families[section] = SubspaceFamily(lat, fam.mask | 1 << lat.id(s))
        else:
            lit, eq, value = line.partition("=")
            value = value.strip()
            if not eq or not value.isascii() or not value.isdigit():
                raise DocumentError(f"expected '<subspace> = <nonneg int>', got {line!r}", no)
            s = _literal(lit, doc, no)
            if s in rank_values:
                raise DocumentError(f"duplicate rank entry for {s.literal()}", no)
            rank_values[s] = int(value)
    if doc is None:
        raise DocumentError("missing 'ground' header")
    if rank_line is not None:
        missing = [s for s in doc.lattice if s not in rank_values]
        if missing:
            raise DocumentError(f"rank section is not total: no value for {missing[0].literal()}",
                                rank_line)
        doc.rank = RankFunction.from_mapping(doc.lattice, rank_values)
    return doc


def _literal(text: str, doc: Document, no: int) -> Subspace:
    try:
        return parse_subspace(text, doc.q, doc.n)
    except LatticeError as exc:
        raise DocumentError(str(exc), no) from None


def render(doc: Document) -> str:
    """Canonical text: families in insertion order, members and rank entries
    in lattice order."""
    out = [f"ground q={doc.q} n={doc.n}"]
    for name, fam in doc.families.items():
        out.append(f"[family {name}]")
        out.extend(s.literal() for s in fam)
    if doc.rank is not None:
        out.append("[rank]")
        out.extend(f"{s.literal()} = {v}" for s, v in doc.rank.items())
    return "\n".join(out) + "\n"


def load(path: str) -> Document:
    return parse(Path(path).read_text(encoding="utf-8"))


# --------------------------------------------------------------------------
# command line


class UsageError(Exception):
    pass


def _family(doc: Document, name: str | None) -> SubspaceFamily:
    if name is None:
        if len(doc.families) != 1:
            raise UsageError("choose a family with --family")
        return next(iter(doc.families.values()))
    try:
        return doc.families[name]
    except KeyError:
        raise UsageError(f"no family named {name!r}") from None


def _rank(doc: Document, name: str | None, kind: str) -> RankFunction:
    """The rank section, or the rank derived from a family of the given kind."""
    if name is None and doc.rank is not None:
        return doc.rank
    if name is None and not doc.families:
        raise UsageError("document has neither a rank section nor a family")
    return crypto.convert(kind, "rank", _family(doc, name), check=False)


def _subspace(text: str, q: int, n: int) -> Subspace:
    # commas are accepted so that witness literals can be pasted back
    try:
        return parse_subspace(text.replace(",", " "), q, n)
    except LatticeError as exc:
        raise UsageError(str(exc)) from None


def _fail(rep) -> int:
    print(rep.line())
    return EXIT_VIOLATION


def cmd_check(args) -> int:
    doc = load(args.file)
    axioms = parse_axioms(args.axioms)
    mode = Mode(args.mode)
    ok = True
    for ax in axioms:
        if ax.kind == "rank":
            target = _rank(doc, args.family, "independent")
        else:
            target = _family(doc, args.family)
        rep = check(ax, target, mode)
        print(rep.line())
        ok &= rep.passed
    return EXIT_OK if ok else EXIT_VIOLATION


def _print_rank(q: int, n: int, r: RankFunction) -> None:
    sys.stdout.write(render(Document(q, n, rank=r)))


def cmd_derive(args) -> int:
    doc = load(args.file)
    if args.source == "rank":
        if doc.rank is None:
            raise UsageError("document has no rank section")
        payload = doc.rank
    else:
        payload = _family(doc, args.family)
    try:
        result = crypto.convert(args.source, args.target, payload, check=not args.no_check)
    except AxiomViolation as exc:
        return _fail(exc.report)
    if isinstance(result, RankFunction):
        _print_rank(doc.q, doc.n, result)
    else:
        out = Document(doc.q, doc.n, {args.name or args.target: result})
        sys.stdout.write(render(out))
    return EXIT_OK


def cmd_dual(args) -> int:
    doc = load(args.file)
    try:
        m = make_qmatroid(_rank(doc, args.family, args.kind))
    except AxiomViolation as exc:
        return _fail(exc.report)
    _print_rank(doc.q, doc.n, dual(m).rank)
    return EXIT_OK


def cmd_minor(args) -> int:
    doc = load(args.file)
    try:
        m = make_qmatroid(_rank(doc, args.family, args.kind))
    except AxiomViolation as exc:
        return _fail(exc.report)
    x = _subspace(args.restrict or args.contract, doc.q, doc.n)
    minor = restriction(m, x) if args.restrict else contraction(m, x)
    _print_rank(minor.q, minor.n, minor.rank)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    if args.census:
        axioms = parse_axioms(args.census)
        k = verify.census(args.q, args.n, axioms, args.up_to_iso, Mode(args.mode))
        iso = " up-to-iso" if args.up_to_iso else ""
        print(f"census q={args.q} n={args.n} axioms={','.join(map(str, axioms))}{iso}: {k}")
    elif args.families:
        lat = get_lattice(args.q, args.n)
        count = 0
        for fam in verify.enumerate_families(lat, args.families):
            print(repr(fam))
            count += 1
        print(f"# {count} families")
    else:
        for s in enumerate_subspaces(args.q, args.n, args.dim):
            print(s.literal())
    return EXIT_OK


def cmd_mine(args) -> int:
    found = verify.mine(parse_axioms(args.satisfy), parse_axioms(args.violate), args.q, args.n,
                        args.limit, args.up_to_iso, Mode(args.mode))
    if not found:
        print("# no family found")
        return EXIT_OK
    doc = Document(args.q, args.n)
    for i, fam in enumerate(found, 1):
        doc.families[f"M{i}"] = fam
    sys.stdout.write(render(doc))
    return EXIT_VIOLATION


def cmd_verify(args) -> int:
    specs = verify.theorems(args.theorem)
    lat = get_lattice(args.q, args.n)
    search = verify.default_search(lat)
    if args.search or args.samples is not None or args.seed is not None:
        search = verify.Search(args.search or search.kind,
                               args.samples if args.samples is not None else search.count,
                               args.seed if args.seed is not None else search.seed)
    results = [verify.run_theorem(spec, args.q, args.n, search, Mode(args.mode))
               for spec in specs]
    for res in results:
        print(res.report())
    for res in results:
        print(res.result_line())
    return EXIT_OK if all(r.ok for r in results) else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qmat", description="Check and explore q-matroids.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_mode(p):
        p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.DIMENSION.value,
                       help="how maximal/minimal members are chosen (default: dimension)")

    def with_ground(p):
        p.add_argument("--q", type=int, required=True)
        p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("check", help="check axioms on a family or rank function")
    p.add_argument("--file", required=True)
    p.add_argument("--family", help="family section to check; rank axioms then use its "
                                    "derived rank")
    p.add_argument("--axioms", required=True, help="comma-separated, e.g. I1,I2,I3,I4")
    with_mode(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("derive", help="convert between rank, independent, bases, spanning")
    p.add_argument("--file", required=True)
    p.add_argument("--family")
    p.add_argument("--from", dest="source", choices=crypto.KINDS, required=True)
    p.add_argument("--to", dest="target", choices=crypto.KINDS, required=True)
    p.add_argument("--name", help="name of the output family (default: the --to kind)")
    p.add_argument("--no-check", action="store_true", help="skip the input axiom check")
    p.set_defaults(func=cmd_derive)

    for name, func, help_ in (("dual", cmd_dual, "print the dual rank function"),
                              ("minor", cmd_minor, "print a restriction or contraction")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--file", required=True)
        p.add_argument("--family", help="use a family instead of the rank section")
        p.add_argument("--kind", choices=crypto.KINDS[1:], default="independent",
                       help="what --family describes (default: independent)")
        if name == "minor":
            g = p.add_mutually_exclusive_group(required=True)
            g.add_argument("--restrict", metavar="SUBSPACE")
            g.add_argument("--contract", metavar="SUBSPACE")
        p.set_defaults(func=func)

    p = sub.add_parser("enumerate", help="list subspaces or families, or count a census")
    with_ground(p)
    p.add_argument("--dim", type=int, help="only subspaces of this dimension")
    p.add_argument("--families", choices=verify.CONSTRAINTS)
    p.add_argument("--census", metavar="AXIOMS", help="count families satisfying AXIOMS")
    p.add_argument("--up-to-iso", action="store_true")
    with_mode(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("mine", help="search for counterexample families")
    p.add_argument("--satisfy", required=True)
    p.add_argument("--violate", required=True)
    with_ground(p)
    p.add_argument("--limit", type=int, default=10)
    p.add_argument("--up-to-iso", action="store_true")
    with_mode(p)
    p.set_defaults(func=cmd_mine)

    p = sub.add_parser("verify", help="run the theorem harness")
    p.add_argument("--theorem", default="all", help="T1..T12, T12a, T12b or all")
    with_ground(p)
    p.add_argument("--search", choices=("exhaustive", "pruned", "sampled"))
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    with_mode(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (OSError, DocumentError, UsageError, LatticeError, LoopSpaceError,
            gf.FieldError, ValueError) as exc:
        where = f"{args.file}: " if getattr(args, "file", None) else ""
        print(f"qmat: error: {where}{exc}", file=sys.stderr)
        return EXIT_USAGE


run = main

if __name__ == "__main__":
    sys.exit(main())
