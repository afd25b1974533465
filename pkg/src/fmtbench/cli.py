"""Command-line interface.

Exit status: 0 for success or a true answer, 1 for a false answer (not
equivalent, not a model, empty result, failed experiment), 2 for errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .evaluate import DEFAULT_BUDGET, BudgetExceeded, Evaluator
from .experiments import experiment_gurevich_demo, experiment_tait
from .forbidden import (
    compute_Fk,
    dump_forbidden,
    forbidden_to_universal,
    read_forbidden,
    universal_equivalent,
    ForbiddenSet,
)
from .gadgets import TAU0_PLAN, GadgetGraph, cycle_taxonomy, dump_roles, encode, extract, pairs_plan, parse_roles
from .interp import apply_interp, builtin_interp, fast_apply, translate
from .logic import (
    BUILTIN_NAMES,
    TAU_0,
    TAU_E,
    builtin_sentence,
    builtin_vocab,
    check_vocabulary,
    is_universal,
    load_vocabulary,
    parse_formula,
    prenex_universal,
    relation_symbols,
    render_formula,
)
from .logic.analysis import formula_size
from .structures import dump_structure, enumerate_structures, read_structure
from .structures.fileio import write_structure
from .tm import FAMILIES, ONE_STEP, TWO_STEP, canonical_model, compile_sentence, read_machine, run

BUILTIN_MACHINES = {"one_step": ONE_STEP, "two_step": TWO_STEP}


class CliError(Exception):
    pass


# -- loading helpers --------------------------------------------------------------------


def load_vocab_arg(ref):
    return load_vocabulary(ref) if ref else None


def _parse_params(text):
    params = {}
    for item in filter(None, text.split(",")):
        key, _, value = item.partition("=")
        params[key.strip()] = int(value)
    return params


def load_sentence(ref: str, vocab=None):
    """A builtin name (``phi_c:r=5`` passes parameters) or a formula file.

    Returns ``(formula, vocabulary)``; without an explicit vocabulary one is
    inferred from the symbols used (edge vocabulary, then the ordered one).
    """
    name, _, params = ref.partition(":")
    if name in BUILTIN_NAMES and not Path(ref).exists():
        p = _parse_params(params)
        if name == "phi1_tau":
            if vocab is None:
                raise CliError("phi1_tau needs --vocab with complement pairs")
            p["vocab"] = vocab
        f = builtin_sentence(name, p)
        voc = vocab or builtin_vocab(name, p)
        check_vocabulary(f, voc)
        return f, voc
    path = Path(ref)
    if not path.exists():
        raise CliError(f"{ref!r} is neither a builtin sentence nor a file")
    lines = [ln.split("#", 1)[0] for ln in path.read_text().splitlines()]
    f = parse_formula(" ".join(lines), vocab)
    if vocab is None:
        used = relation_symbols(f)
        for cand in (TAU_E, TAU_0):
            if all(s in cand and cand.arity(s) == a for s, a in used.items()):
                vocab = cand
                break
        else:
            raise CliError("cannot infer the vocabulary; pass --vocab")
    return f, vocab


def load_machine(ref: str):
    if ref in BUILTIN_MACHINES:
        return BUILTIN_MACHINES[ref]
    return read_machine(ref)


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# -- subcommands -----------------------------------------------------------------------------


def cmd_eval(args):
    a = read_structure(args.structure)
    f, _ = load_sentence(args.sentence, a.vocab)
    truth = Evaluator(a, args.eval_budget).satisfies(f)
    print("true" if truth else "false")
    return 0 if truth else 1


def _guard_size(k, args):
    if k > args.max_size:
        raise CliError(f"bound {k} exceeds --max-size {args.max_size}")


def cmd_fk(args):
    f, vocab = load_sentence(args.sentence, load_vocab_arg(args.vocab))
    _guard_size(args.k, args)
    fs = compute_Fk(f, args.k, vocab, args.eval_budget)
    if args.dedup:
        fs = ForbiddenSet(fs.vocab, tuple(fs.up_to_isomorphism()), fs.k)
    _emit(dump_forbidden(fs), args.out)
    return 0


def cmd_u2f(args):
    f, vocab = load_sentence(args.sentence, load_vocab_arg(args.vocab))
    if not is_universal(f):
        raise CliError("u2f expects a universal sentence")
    k = args.k or max(1, len(prenex_universal(f)[0]))
    _guard_size(k, args)
    _emit(dump_forbidden(compute_Fk(f, k, vocab, args.eval_budget)), args.out)
    return 0


def cmd_f2u(args):
    fs = read_forbidden(args.input, load_vocab_arg(args.vocab))
    _emit(render_formula(forbidden_to_universal(fs)) + "\n", args.out)
    return 0


def cmd_univeq(args):
    vocab = load_vocab_arg(args.vocab)
    f, va = load_sentence(args.first, vocab)
    g, vb = load_sentence(args.second, vocab or va)
    if va != vb:
        raise CliError("the two sentences use different vocabularies")
    same = universal_equivalent(f, g, va, args.eval_budget)
    print("equivalent" if same else "not equivalent")
    return 0 if same else 1


def cmd_gadget(args):
    if args.action == "encode":
        a = read_structure(args.input)
        gg = encode(a, budget=args.eval_budget)
        if args.out:
            write_structure(gg.graph, args.out)
            Path(args.out + ".roles").write_text(dump_roles(gg))
        else:
            sys.stdout.write(dump_structure(gg.graph, "G"))
        print(f"# {gg.size} vertices", file=sys.stderr)
        return 0
    if args.action == "decode":
        g = read_structure(args.input)
        vocab = load_vocab_arg(args.vocab)
        plan = TAU0_PLAN if vocab is None or vocab == TAU_0 else pairs_plan(vocab)
        o = extract(g, plan)
        if o is None:
            print("empty")
            return 1
        _emit(dump_structure(o, "O"), args.out)
        return 0
    if args.action == "taxonomy":
        a = read_structure(args.input)
        if "E" in a.vocab and "Lt" not in a.vocab:
            gg = _load_gadget_graph(a, args)
        else:
            gg = encode(a, budget=args.eval_budget)
        report = cycle_taxonomy(gg, args.max_len)
        print(report.text())
        return 0
    raise CliError(f"unknown gadget action {args.action}")


def _load_gadget_graph(g, args):
    roles_path = Path(args.input + ".roles")
    if not roles_path.exists():
        raise CliError(f"a graph input needs its roles file {roles_path}")
    roles = parse_roles(roles_path.read_text())
    vocab = load_vocab_arg(args.vocab)
    plan = TAU0_PLAN if vocab is None or vocab == TAU_0 else pairs_plan(vocab)
    n = sum(1 for r in roles.values() if r.kind == "basic")
    return GadgetGraph(g, roles, plan, n)


def _interp_for(vocab):
    return builtin_interp("tau0" if vocab is None or vocab == TAU_0 else vocab)


def cmd_interp(args):
    vocab = load_vocab_arg(args.vocab)
    interp = _interp_for(vocab)
    if args.action == "translate":
        f, _ = load_sentence(args.sentence, interp.vocab)
        tr = translate(f, interp)
        _emit(render_formula(tr) + "\n", args.out)
        print(f"# size {formula_size(f)} -> {formula_size(tr)}", file=sys.stderr)
        return 0
    if args.action == "apply":
        g = read_structure(args.input)
        o = apply_interp(g, interp, args.eval_budget) if args.exact else fast_apply(g, interp)
        if o is None:
            print("empty")
            return 1
        _emit(dump_structure(o, "O"), args.out)
        return 0
    raise CliError(f"unknown interp action {args.action}")


def cmd_tm(args):
    machine = load_machine(args.machine)
    if args.action == "run":
        trace = run(machine, args.word, args.max_steps)
        for j, c in enumerate(trace.configs):
            tape = "".join(map(str, c.tape)) or "-"
            print(f"{j:4d} {c.state:>6s} head={c.head} tape={tape}")
        print(f"halted after {trace.steps} steps" if trace.halted else f"not halted after {trace.steps} steps")
        return 0 if trace.halted else 1
    if args.action == "compile":
        f = compile_sentence(machine, args.word, args.family)
        _emit(render_formula(f) + "\n", args.out)
        print(f"# size {formula_size(f)}", file=sys.stderr)
        return 0
    if args.action == "canonical":
        a = canonical_model(machine, args.word, args.max_steps)
        if args.out:
            write_structure(a, args.out)
        else:
            sys.stdout.write(dump_structure(a, f"A_{args.word or 'empty'}", a.vocab.name))
        return 0
    raise CliError(f"unknown tm action {args.action}")


def cmd_enumerate(args):
    vocab = load_vocab_arg(args.vocab) or TAU_E
    _guard_size(args.k, args)
    pred = None
    if args.sentence:
        pred, _ = load_sentence(args.sentence, vocab)
    count = 0
    for i, a in enumerate(enumerate_structures(vocab, args.k, pred), 1):
        count += 1
        if not args.count:
            sys.stdout.write(dump_structure(a, f"S{i}"))
    if args.count:
        print(count)
    return 0


def cmd_experiment(args):
    if args.name == "tait":
        report = experiment_tait(args.n, args.k, args.level, args.eval_budget)
    elif args.name == "gurevich":
        report = experiment_gurevich_demo(load_machine(args.machine), args.word, args.k, args.eval_budget, args.max_steps)
    else:
        raise CliError(f"unknown experiment {args.name}")
    print(report.text())
    if args.report:
        report.write(args.report)
    return 0 if report.passed else 1


# -- parser --------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-size", type=int, default=5, help="largest universe for exhaustive enumeration")
    common.add_argument("--eval-budget", type=lambda s: int(float(s)), default=DEFAULT_BUDGET,
                        help="node-expansion cap for evaluation and search")
    common.add_argument("--vocab", help="builtin vocabulary name or vocabulary file")

    p = argparse.ArgumentParser(prog="fmtbench", description="finite model theory workbench", parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eval", parents=[common], help="evaluate a sentence on a structure")
    s.add_argument("--structure", required=True)
    s.add_argument("--sentence", required=True)
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("fk", parents=[common], help="counter-structures of size at most k")
    s.add_argument("--sentence", required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--dedup", action="store_true", help="one member per isomorphism class")
    s.add_argument("--out")
    s.set_defaults(func=cmd_fk)

    s = sub.add_parser("u2f", parents=[common], help="forbidden set of a universal sentence")
    s.add_argument("--sentence", required=True)
    s.add_argument("--k", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_u2f)

    s = sub.add_parser("f2u", parents=[common], help="universal sentence of a forbidden set")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_f2u)

    s = sub.add_parser("univeq", parents=[common], help="decide equivalence of universal sentences")
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(func=cmd_univeq)

    s = sub.add_parser("gadget", parents=[common], help="graph encoding of ordered structures")
    s.add_argument("action", choices=["encode", "decode", "taxonomy"])
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--out")
    s.add_argument("--max-len", type=int, default=16)
    s.set_defaults(func=cmd_gadget)

    s = sub.add_parser("interp", parents=[common], help="translate sentences or apply the interpretation")
    s.add_argument("action", choices=["translate", "apply"])
    s.add_argument("--sentence")
    s.add_argument("--in", dest="input")
    s.add_argument("--exact", action="store_true", help="evaluate the defining formulas instead of pattern search")
    s.add_argument("--out")
    s.set_defaults(func=cmd_interp)

    s = sub.add_parser("tm", parents=[common], help="machines: run, compile sentences, canonical models")
    s.add_argument("action", choices=["run", "compile", "canonical"])
    s.add_argument("--machine", required=True, help="machine file or one_step / two_step")
    s.add_argument("--word", default="")
    s.add_argument("--family", choices=FAMILIES, default="chi")
    s.add_argument("--max-steps", type=int, default=10_000)
    s.add_argument("--out")
    s.set_defaults(func=cmd_tm)

    s = sub.add_parser("enumerate", parents=[common], help="list structures up to a size")
    s.add_argument("--k", "--n", dest="k", type=int, required=True)
    s.add_argument("--sentence")
    s.add_argument("--count", action="store_true")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("experiment", parents=[common], help="run an experiment and report")
    s.add_argument("name", choices=["tait", "gurevich"])
    s.add_argument("--n", type=int, default=3)
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--level", choices=["structure", "graph"], default="structure")
    s.add_argument("--machine", default="two_step")
    s.add_argument("--word", default="00")
    s.add_argument("--max-steps", type=int, default=10_000)
    s.add_argument("--report")
    s.set_defaults(func=cmd_experiment)
    return p


def run_command(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if args.command == "interp":
        if args.action == "translate" and not args.sentence:
            print("error: interp translate needs --sentence", file=sys.stderr)
            return 2
        if args.action == "apply" and not args.input:
            print("error: interp apply needs --in", file=sys.stderr)
            return 2
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: budget exceeded: {exc}", file=sys.stderr)
        return 2
    except (CliError, ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
