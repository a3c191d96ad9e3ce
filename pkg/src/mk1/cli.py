"""Command-line front end.

Every command reads exact inputs (table files, code files, formula files,
digit strings) and writes exact, byte-deterministic output.  Exit status:
0 on success, 1 for unparseable input or bad usage, 2 for a domain error
(reported on stderr as ``error <Reason>: <message>``).
"""

from __future__ import annotations

import argparse
import sys

from . import circuits, dfa, green, plep, reductions
from .congruence import noncollision_measure
from .elements import compose, format_table, parse_table, part
from .errors import Mk1Error, ParseError
from .kary import parse_krational
from .words import PrefixCode, parse_word


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def _read_table(path: str):
    return parse_table(_read(path))


def _read_code(path: str) -> PrefixCode:
    """Code files: a "k <int>" header, then one word per line."""
    k = None
    words = []
    for raw in _read(path).splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if k is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "k" or not parts[1].isdigit():
                raise ParseError(f"expected a 'k <int>' header, got {line!r}")
            k = int(parts[1])
            continue
        words.append(parse_word(line, k))
    if k is None:
        raise ParseError("empty code file")
    return PrefixCode.make(k, words)


def _read_formula(path: str) -> reductions.BooleanFormula:
    return reductions.parse_formula(_read(path))


def _cmd_normalize(args):
    print(format_table(_read_table(args.table).reduced()))


def _cmd_compose(args):
    f, g = _read_table(args.f), _read_table(args.g)
    print(format_table(compose(f, g)))


def _cmd_measure(args):
    print(_read_code(args.code).mu)


def _cmd_heights(args):
    e = _read_table(args.table)
    report = dfa.height_report_via_dfa(e) if args.dfa else green.heights(e)
    print(green.format_height_report(report))


_RELATIONS = {
    "leqR": green.leq_R,
    "leqL": green.leq_L,
    "eqR": green.eq_R,
    "eqL": green.eq_L,
    "eqD-M": green.eq_D_M,
    "eqD-plep": plep.eq_D_plep,
}


def _cmd_green(args):
    verdict = _RELATIONS[args.relation](_read_table(args.f), _read_table(args.g))
    print("true" if verdict else "false")


def _cmd_dindex(args):
    e = _read_table(args.table)
    if args.kind == "M":
        idx = green.d_index_M(e)
        print("zero" if idx is None else idx)
    else:
        print(plep.d_index_plep(e))


def _cmd_chain(args):
    lo = parse_krational(args.k, args.lo)
    hi = parse_krational(args.k, args.hi)
    elements = green.dense_chain(args.k, lo, hi, args.count)
    print("\n\n".join(format_table(e) for e in elements))


def _cmd_with_heights(args):
    h_r = parse_krational(args.k, args.r)
    h_l = parse_krational(args.k, args.l)
    print(format_table(green.element_with_heights(args.k, h_r, h_l)))


def _cmd_synth_id(args):
    word = parse_word(args.word, args.k)
    print(" ".join(circuits.synthesize_partial_identity(args.k, word)))


def _cmd_eval_gen(args):
    tokens = circuits.parse_generator_word(" ".join(args.tokens))
    print(format_table(circuits.eval_generator_word(args.k, tokens)))


def _cmd_phi_b(args):
    f = _read_formula(args.formula)
    e = reductions.encode_formula(f)
    print(format_table(e))
    if args.check:
        noncoll = noncollision_measure(part(e))
        count = reductions.recover_count(f.m, f.n, noncoll)
        print(f"noncollision {noncoll}")
        print(f"predicted {reductions.predicted_noncollision(f.m, f.n, count)}")
        print(f"count {count}")


def _cmd_count_forallsat(args):
    f = _read_formula(args.formula)
    if args.via_element:
        if not reductions.covers_every_y(f):
            f = reductions.ensure_surjective(f)
        print(reductions.count_via_element(f))
    else:
        print(reductions.count_forall_sat(f))


def _cmd_dfa_mu(args):
    automaton = dfa.trie_dfa(_read_code(args.code))
    if args.dump:
        print(dfa.format_dfa(automaton))
        print(f"mu: {dfa.dfa_measure(automaton)}")
    else:
        print(dfa.dfa_measure(automaton))


def _cmd_witness_plep(args):
    w = plep.plep_d_witness(_read_table(args.f), _read_table(args.g))
    print(f"tlep {'true' if w.tlep else 'false'}")
    print()
    print(format_table(w.b))
    print()
    print(format_table(w.b_prime))


def _cmd_separate(args):
    c1, c2 = green.separating_context(_read_table(args.f), _read_table(args.g))
    print(format_table(c1))
    print()
    print(format_table(c2))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mk1", description="Exact table-element calculator.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", help="reduce a table to its normal form")
    p.add_argument("table")
    p.set_defaults(func=_cmd_normalize)

    p = sub.add_parser("compose", help="compose two tables (f after g)")
    p.add_argument("f")
    p.add_argument("g")
    p.set_defaults(func=_cmd_compose)

    p = sub.add_parser("measure", help="measure of a prefix code")
    p.add_argument("code")
    p.set_defaults(func=_cmd_measure)

    p = sub.add_parser("heights", help="R/L height report of a table")
    p.add_argument("table")
    p.add_argument("--dfa", action="store_true",
                   help="compute via minimal automata instead of word lists")
    p.set_defaults(func=_cmd_heights)

    p = sub.add_parser("green", help="compare two tables in a Green order")
    p.add_argument("relation", choices=sorted(_RELATIONS))
    p.add_argument("f")
    p.add_argument("g")
    p.set_defaults(func=_cmd_green)

    p = sub.add_parser("dindex", help="D-class index of a table")
    p.add_argument("kind", choices=["M", "plep"])
    p.add_argument("table")
    p.set_defaults(func=_cmd_dindex)

    p = sub.add_parser("chain", help="idempotents strictly between two measures")
    p.add_argument("k", type=int)
    p.add_argument("lo")
    p.add_argument("hi")
    p.add_argument("count", type=int)
    p.set_defaults(func=_cmd_chain)

    p = sub.add_parser("with-heights", help="an element with prescribed heights")
    p.add_argument("k", type=int)
    p.add_argument("r")
    p.add_argument("l")
    p.set_defaults(func=_cmd_with_heights)

    p = sub.add_parser("synth-id", help="generator word for a one-hole identity")
    p.add_argument("k", type=int)
    p.add_argument("word")
    p.set_defaults(func=_cmd_synth_id)

    p = sub.add_parser("eval-gen", help="evaluate a generator word to a table")
    p.add_argument("k", type=int)
    p.add_argument("tokens", nargs="+")
    p.set_defaults(func=_cmd_eval_gen)

    p = sub.add_parser("phi-b", help="counting element of a boolean formula")
    p.add_argument("formula")
    p.add_argument("--check", action="store_true",
                   help="also report its noncollision measure and the count")
    p.set_defaults(func=_cmd_phi_b)

    p = sub.add_parser("count-forallsat", help="number of y with ∀x B(x,y)")
    p.add_argument("formula")
    p.add_argument("--via-element", action="store_true",
                   help="recover the count from an exact measure instead")
    p.set_defaults(func=_cmd_count_forallsat)

    p = sub.add_parser("dfa-mu", help="code measure via its minimal automaton")
    p.add_argument("code")
    p.add_argument("--dump", action="store_true", help="also print the automaton")
    p.set_defaults(func=_cmd_dfa_mu)

    p = sub.add_parser("witness-plep", help="conjugators linking two plep tables")
    p.add_argument("f")
    p.add_argument("g")
    p.set_defaults(func=_cmd_witness_plep)

    p = sub.add_parser("separate", help="contexts telling two tables apart")
    p.add_argument("f")
    p.add_argument("g")
    p.set_defaults(func=_cmd_separate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as stop:
        return 0 if stop.code == 0 else 1
    try:
        args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Mk1Error as exc:
        print(f"error {exc.reason}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
