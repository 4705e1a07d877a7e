"""Command line interface: ``stvb <command> ...``.

Exit codes: 0 on success or a proved equivalence, 1 when a search ends in
``DistinctByInvariant`` / ``NotProvedWithinBounds`` or a check fails, 2 on
usage and parse errors.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import sys

from .closure import braid_morse, close, closure_invariants, crossing_totals, load_morse, morse_crossing_totals, morse_invariants
from .errors import StvbError
from .homs import invariants
from .markov import MOVESETS, _moves_cached, apply_move, markov_equivalent
from .reduced import expand_generator, reduce_word
from .relations import RULESETS
from .rewrite import check_derivation, equivalent, load_derivation, verify_presentation
from .word import Generator, Kind, format_word, parse

__all__ = ["main", "run", "build_parser"]


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _nonneg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError("expected a non-negative integer")
    return value


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="stvb", description="Singular twisted virtual braid words, rewriting and Markov moves.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        return sp

    sp = cmd("parse", "parse and print a word in canonical form")
    sp.add_argument("word")

    sp = cmd("inv", "invariant record of a word (JSON)")
    sp.add_argument("word")

    sp = cmd("equiv", "bounded rewrite search between two words")
    sp.add_argument("word1")
    sp.add_argument("word2")
    sp.add_argument("--rules", choices=sorted(RULESETS), default="standard")
    sp.add_argument("--max-len", type=_positive)
    sp.add_argument("--max-states", type=_positive, default=100_000)

    sp = cmd("expand", "a generator in the reduced generating set")
    sp.add_argument("generator", help="e.g. s2, S3, t2, g3")
    sp.add_argument("--degree", type=_positive, required=True)

    sp = cmd("reduce", "rewrite a word letterwise in the reduced generating set")
    sp.add_argument("word")

    sp = cmd("markov", "bounded search with Markov moves and braid relations")
    sp.add_argument("word1")
    sp.add_argument("word2")
    sp.add_argument("--moves", choices=sorted(MOVESETS), default="full")
    sp.add_argument("--max-degree", type=_positive)
    sp.add_argument("--max-len", type=_positive)
    sp.add_argument("--max-states", type=_positive, default=100_000)

    sp = cmd("close", "closure code and closure invariants of a word")
    sp.add_argument("word")

    sp = cmd("braid", "braid a Morse diagram file")
    sp.add_argument("file")

    sp = cmd("verify", "relation sweep: both sides of every relation share invariants")
    sp.add_argument("--presentation", choices=("standard", "reduced", "standard+aux"), default="standard")
    sp.add_argument("--degree", type=_positive, required=True)
    sp.add_argument("--samples", type=_nonneg, default=0, help="also check Markov moves on this many random words")
    sp.add_argument("--seed", type=int, default=0)

    sp = cmd("check", "replay a derivation file")
    sp.add_argument("file")
    sp.add_argument("--expect", help="word the derivation must end at")
    return p


_GEN = {"s": Kind.SIGMA_POS, "S": Kind.SIGMA_NEG, "v": Kind.V, "t": Kind.TAU, "g": Kind.GAMMA}


def _generator(token: str) -> Generator:
    if len(token) < 2 or token[0] not in _GEN or not token[1:].isdigit():
        raise StvbError(f"unknown generator {token!r}")
    return Generator(_GEN[token[0]], int(token[1:]))


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _verdict_out(args, verdict) -> int:
    if args.json:
        _emit(verdict.to_json())
    else:
        print(verdict.describe())
        for step in verdict.trace:
            print(f"  {step}")
    return 0 if verdict.is_equivalent else 1


def _cmd_parse(args) -> int:
    w = parse(args.word)
    if args.json:
        _emit({"degree": w.degree, "letters": [str(x) for x in w.letters]})
    else:
        print(format_word(w))
    return 0


def _cmd_inv(args) -> int:
    _emit(invariants(parse(args.word)).to_json())
    return 0


def _cmd_equiv(args) -> int:
    a, b = parse(args.word1), parse(args.word2)
    verdict = equivalent(a, b, args.rules, args.max_len, args.max_states)
    return _verdict_out(args, verdict)


def _cmd_expand(args) -> int:
    w = expand_generator(_generator(args.generator), args.degree)
    if args.json:
        _emit({"word": format_word(w)})
    else:
        print(format_word(w))
    return 0


def _cmd_reduce(args) -> int:
    w = reduce_word(parse(args.word))
    if args.json:
        _emit({"word": format_word(w)})
    else:
        print(format_word(w))
    return 0


def _cmd_markov(args) -> int:
    a, b = parse(args.word1), parse(args.word2)
    verdict = markov_equivalent(a, b, args.max_degree, args.max_len, args.max_states, args.moves)
    return _verdict_out(args, verdict)


def _cmd_close(args) -> int:
    w = parse(args.word)
    code, inv = close(w), closure_invariants(w)
    if args.json:
        _emit({"components": code.to_json(), "invariants": inv.to_json()})
    else:
        for k, comp in enumerate(code.components, 1):
            print(f"component {k}: " + (" ".join(_event_text(ev) for ev in comp) or "(no events)"))
        print(f"bar parities {list(inv.bar_parities)}, singular passes {list(inv.singular_passes)}")
    return 0


def _event_text(ev) -> str:
    name = type(ev).__name__
    if name in ("Over", "Under"):
        return f"{name}({ev.crossing},{'+' if ev.sign > 0 else '-'})"
    if name == "Bar":
        return "Bar"
    return f"{name}({ev.crossing})"


def _cmd_braid(args) -> int:
    d = load_morse(args.file)
    w = braid_morse(d)
    direct, braided = morse_invariants(d), closure_invariants(w)
    agree = direct == braided and morse_crossing_totals(d).essential() == crossing_totals(w).essential()
    if args.json:
        _emit({"word": format_word(w), "invariants": direct.to_json(), "agree": agree})
    else:
        print(format_word(w))
        print(f"components {direct.components}, bar parities {list(direct.bar_parities)}, agree {agree}")
    return 0 if agree else 1


def _cmd_verify(args) -> int:
    report = verify_presentation(args.presentation, args.degree)
    ok = report.ok
    out = {"presentation": args.presentation, "degree": args.degree, "instances": report.checked,
           "skipped": list(report.skipped), "failures": [[str(r), f] for r, f in report.failures]}
    lines = [report.summary()]
    if args.samples:
        checked, bad = _markov_sweep(args.seed, args.samples)
        ok = ok and not bad
        out["markov"] = {"moves": checked, "failures": bad}
        lines.append(f"markov moves: {checked} applications, {len(bad)} change closure invariants")
    if args.json:
        _emit(out)
    else:
        print("\n".join(lines))
    return 0 if ok else 1


def _markov_sweep(seed: int, samples: int) -> tuple[int, list[str]]:
    from .corpus import random_words

    checked = 0
    bad = []
    for w in random_words(seed, samples):
        before = closure_invariants(w)
        for m in _moves_cached(w.degree, MOVESETS["full"]):
            try:
                after = apply_move(w, m)
            except StvbError:
                continue
            checked += 1
            if closure_invariants(after) != before:
                bad.append(f"{m} on {format_word(w)}")
    return checked, bad


def _cmd_check(args) -> int:
    start, steps = load_derivation(args.file)
    result = check_derivation(start, steps)
    ok = result.valid and (args.expect is None or result.final == parse(args.expect))
    if args.json:
        _emit({"valid": result.valid, "final": format_word(result.final), "failingStep": result.failing_step, "ok": ok})
    else:
        status = "valid" if result.valid else f"invalid at step {result.failing_step}"
        print(f"{status}; {len(steps)} steps; final {format_word(result.final)}")
    return 0 if ok else 1


_COMMANDS = {
    "parse": _cmd_parse,
    "inv": _cmd_inv,
    "equiv": _cmd_equiv,
    "expand": _cmd_expand,
    "reduce": _cmd_reduce,
    "markov": _cmd_markov,
    "close": _cmd_close,
    "braid": _cmd_braid,
    "verify": _cmd_verify,
    "check": _cmd_check,
}


def run(argv: list[str]) -> tuple[int, str]:
    """Run one command; returns the exit code and everything written to stdout."""
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        try:
            args = build_parser().parse_args(argv)
            code = _COMMANDS[args.command](args)
        except _UsageError as exc:
            print(exc, file=sys.stderr)
            code = 2
        except (StvbError, OSError, ValueError) as exc:
            print(f"stvb: error: {exc}", file=sys.stderr)
            code = 2
        except SystemExit as exc:  # --help
            code = exc.code if isinstance(exc.code, int) else 0
    return code, buf.getvalue()


def main(argv: list[str] | None = None) -> int:
    code, out = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
