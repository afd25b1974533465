"""One-tape machines over {0, 1}, their simulation, and sentences describing runs.

Cells and time steps are both elements of an ordered structure: C0(x, t)
says cell x holds 0 at time t, H_q(x, t) says that at time t the machine is
in state q scanning cell x.  Each of these symbols comes with a complement
symbol so that every constraint can be stated with the symbols occurring
negatively.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .logic.analysis import formula_size
from .logic.formula import Eq, Exists, Forall, Formula, Implies, Not, Or, Rel, conj, forall, neq
from .logic.sentences import disjointness_conjuncts, lt, phi0_conjuncts, phi1_tau
from .logic.vocab import TAU_0, Vocabulary
from .structures.core import FinStructure

MOVES = {"L": -1, "S": 0, "R": 1}
MOVE_NAMES = {v: k for k, v in MOVES.items()}
FAMILIES = ("phi0w", "phi1M", "gamma", "chi", "pi", "alpha", "rho")
C0, C0_COMP = "C0", "C0_comp"


class MachineError(ValueError):
    pass


class MachineStuck(MachineError):
    pass


class NotHalting(MachineError):
    pass


@dataclass(frozen=True)
class Instruction:
    state: str
    read: int
    new_state: str
    write: int
    move: int

    def __str__(self):
        return f"instr {self.state} {self.read} {self.new_state} {self.write} {MOVE_NAMES[self.move]}"


@dataclass(frozen=True)
class TuringMachine:
    states: tuple[str, ...]
    start: str
    halt: str
    instructions: tuple[Instruction, ...]
    name: str = "M"

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "instructions", tuple(self.instructions))
        if len(set(self.states)) != len(self.states):
            raise MachineError("duplicate state names")
        if self.start not in self.states or self.halt not in self.states:
            raise MachineError("start and halt must be states")
        if self.start == self.halt:
            raise MachineError("start and halt states must differ")
        seen = set()
        for ins in self.instructions:
            if ins.state not in self.states or ins.new_state not in self.states:
                raise MachineError(f"unknown state in {ins}")
            if ins.read not in (0, 1) or ins.write not in (0, 1) or ins.move not in (-1, 0, 1):
                raise MachineError(f"malformed instruction {ins}")
            if ins.state == self.halt:
                raise MachineError("no instruction may leave the halting state")
            if (ins.state, ins.read) in seen:
                raise MachineError(f"two instructions for ({ins.state}, {ins.read})")
            seen.add((ins.state, ins.read))

    def lookup(self, state: str, symbol: int) -> Instruction | None:
        for ins in self.instructions:
            if ins.state == state and ins.read == symbol:
                return ins
        return None

    def vocabulary(self) -> Vocabulary:
        names = [C0] + [head(q) for q in self.states]
        return TAU_0.with_pairs(names, 2, "_comp", name=f"tau_M_{self.name}")


def head(q: str) -> str:
    return f"H_{q}"


def head_comp(q: str) -> str:
    return f"H_{q}_comp"


# -- simulation ----------------------------------------------------------------------


@dataclass(frozen=True)
class Configuration:
    state: str
    head: int
    tape: tuple[int, ...]  # written prefix; cells beyond hold 0

    def cell(self, i: int) -> int:
        return self.tape[i] if i < len(self.tape) else 0


@dataclass(frozen=True)
class RunTrace:
    word: str
    configs: tuple[Configuration, ...]
    halted: bool

    @property
    def steps(self) -> int:
        return len(self.configs) - 1

    @property
    def h(self) -> int | None:
        return self.steps if self.halted else None


def _word_bits(w: str) -> tuple[int, ...]:
    if any(c not in "01" for c in w):
        raise MachineError(f"word {w!r} is not over {{0,1}}")
    return tuple(int(c) for c in w)


def run(machine: TuringMachine, w: str, max_steps: int = 10_000) -> RunTrace:
    if max_steps < 0:
        raise ValueError("max_steps must be nonnegative")
    conf = Configuration(machine.start, 0, _word_bits(w))
    configs = [conf]
    while conf.state != machine.halt and len(configs) - 1 < max_steps:
        a = conf.cell(conf.head)
        ins = machine.lookup(conf.state, a)
        if ins is None:
            raise MachineStuck(f"no instruction for state {conf.state} reading {a} at step {len(configs) - 1}")
        tape = list(conf.tape) + [0] * max(0, conf.head + 1 - len(conf.tape))
        tape[conf.head] = ins.write
        pos = conf.head + ins.move
        if pos < 0:
            raise MachineError(f"head moves left of cell 0 at step {len(configs) - 1}")
        conf = Configuration(ins.new_state, pos, tuple(tape))
        configs.append(conf)
    return RunTrace(w, tuple(configs), conf.state == machine.halt)


# -- machine files --------------------------------------------------------------------


def parse_machine(text: str) -> TuringMachine:
    name, states, start, halt, instrs = "M", None, None, None, []
    ended = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ended:
            raise MachineError(f"line {lineno}: content after 'end'")
        parts = line.split()
        key = parts[0]
        try:
            if key == "machine":
                name = parts[1]
            elif key == "states":
                states = tuple(parts[1:])
            elif key == "start":
                start = parts[1]
            elif key == "halt":
                halt = parts[1]
            elif key == "instr":
                q, a, p, b, d = parts[1:]
                if d not in MOVES:
                    raise MachineError(f"line {lineno}: move must be L, S or R")
                instrs.append(Instruction(q, int(a), p, int(b), MOVES[d]))
            elif key == "end":
                ended = True
            else:
                raise MachineError(f"line {lineno}: unknown keyword {key!r}")
        except (IndexError, ValueError) as exc:
            if isinstance(exc, MachineError):
                raise
            raise MachineError(f"line {lineno}: malformed {key!r} line") from exc
    if states is None or start is None or halt is None:
        raise MachineError("machine file needs states, start and halt lines")
    return TuringMachine(states, start, halt, tuple(instrs), name)


def dump_machine(machine: TuringMachine) -> str:
    lines = [f"machine {machine.name}", "states " + " ".join(machine.states),
             f"start {machine.start}", f"halt {machine.halt}"]
    lines += [str(i) for i in machine.instructions]
    lines.append("end")
    return "\n".join(lines) + "\n"


def read_machine(path) -> TuringMachine:
    return parse_machine(Path(path).read_text())


ONE_STEP = TuringMachine(("q0", "qh"), "q0", "qh", (Instruction("q0", 0, "qh", 1, 0),), "one_step")
TWO_STEP = TuringMachine(
    ("q0", "q1", "qh"), "q0", "qh",
    (Instruction("q0", 0, "q1", 1, 1), Instruction("q1", 0, "qh", 1, 0)),
    "two_step",
)


# -- sentence compiler -------------------------------------------------------------------


def _cell(a: int, x: str, t: str) -> Formula:
    """C_a(x, t): C0 for a = 0, its complement for a = 1."""
    return Rel(C0 if a == 0 else C0_COMP, (x, t))


def _frame(y: str, t: str, t2: str) -> Formula:
    return conj(
        Implies(Rel(C0, (y, t)), Not(Rel(C0_COMP, (y, t2)))),
        Implies(Rel(C0_COMP, (y, t)), Not(Rel(C0, (y, t2)))),
    )


def _no_head(machine, y, t, states=None) -> Formula:
    states = machine.states if states is None else states
    lits = [Not(Rel(head(r), (y, t))) for r in states]
    return conj(lits) if len(lits) > 1 else lits[0]


def step_conjunct(machine: TuringMachine, ins: Instruction) -> Formula:
    """One universal conjunct forcing the effect of ``ins`` on the next time step."""
    x, xn, t, tn, y = "x", "x'", "t", "t'", "y"
    hyp = [Rel(head(ins.state), (x, t)), _cell(ins.read, x, t)]
    if ins.move == 1:
        hyp.append(Rel("S", (x, xn)))
        target = xn
    elif ins.move == -1:
        hyp.append(Rel("S", (xn, x)))
        target = xn
    else:
        target = x
    hyp.append(Rel("S", (t, tn)))
    others = [r for r in machine.states if r != ins.new_state]
    effect = [
        Not(_cell(1 - ins.write, x, tn)),
        Not(Rel(head_comp(ins.new_state), (target, tn))),
    ]
    if others:
        effect.append(_no_head(machine, target, tn, others))
    effect.append(Implies(neq(y, target), _no_head(machine, y, tn)))
    effect.append(Implies(neq(y, x), _frame(y, t, tn)))
    variables = [x] + ([xn] if target == xn else []) + [t, tn, y]
    return forall(variables, Implies(conj(hyp), conj(effect)))


def phi2_conjuncts(machine: TuringMachine) -> list[Formula]:
    return [step_conjunct(machine, ins) for ins in machine.instructions]


def phi_w_conjuncts(machine: TuringMachine, w: str) -> list[Formula]:
    bits = _word_bits(w)
    k = len(bits)
    out = []
    if k:
        xs = [f"x{i}" for i in range(1, k + 1)]
        chain = [Rel("U_min", (xs[0],))] + [Rel("S", (xs[i], xs[i + 1])) for i in range(k - 1)]
        lits = [Not(_cell(1 - b, xs[i], xs[0])) for i, b in enumerate(bits)]
        out.append(forall(xs, Implies(conj(chain), conj(lits))))
        rest = chain + [lt(xs[-1], "x")]
        out.append(forall(xs + ["x"], Implies(conj(rest), Not(Rel(C0_COMP, ("x", xs[0]))))))
    else:
        out.append(forall(["x1", "x"], Implies(Rel("U_min", ("x1",)), Not(Rel(C0_COMP, ("x", "x1"))))))
    start_head = [Not(Rel(head_comp(machine.start), ("x", "x")))]
    others = [q for q in machine.states if q != machine.start]
    if others:
        start_head.append(_no_head(machine, "x", "x", others))
    start_head.append(Implies(neq("y", "x"), _no_head(machine, "y", "x")))
    out.append(forall(["x", "y"], Implies(Rel("U_min", ("x",)), conj(start_head))))
    return out


def phi0w(machine: TuringMachine, w: str) -> Formula:
    vocab = machine.vocabulary()
    parts = phi0_conjuncts() + disjointness_conjuncts(vocab) + phi2_conjuncts(machine) + phi_w_conjuncts(machine, w)
    return conj(parts)


def phi1M(machine: TuringMachine) -> Formula:
    return phi1_tau(machine.vocabulary())


def gamma(machine: TuringMachine) -> Formula:
    """The halting state is reached at the last time point and not before."""
    hq = head(machine.halt)
    never_before = forall(["t'", "y"], Implies(lt("t'", "t"), Not(Rel(hq, ("y", "t'")))))
    return Exists("t", Exists("x", conj(Rel("U_max", ("t",)), Rel(hq, ("x", "t")), never_before)))


def chi(machine, w):
    return conj(phi0w(machine, w), Implies(phi1M(machine), Not(gamma(machine))))


def pi(machine, w):
    return conj(phi0w(machine, w), phi1M(machine), gamma(machine))


def alpha(machine, w):
    return conj(phi0w(machine, w), Implies(phi1M(machine), gamma(machine)))


def rho(machine, w, interp=None):
    from .interp import builtin_interp, translate, universe_empty_sentence

    interp = interp or builtin_interp(machine.vocabulary())
    return Or((universe_empty_sentence(interp), translate(chi(machine, w), interp)))


def compile_sentence(machine: TuringMachine, w: str, family: str) -> Formula:
    if family == "phi0w":
        return phi0w(machine, w)
    if family == "phi1M":
        return phi1M(machine)
    if family == "gamma":
        return gamma(machine)
    if family == "chi":
        return chi(machine, w)
    if family == "pi":
        return pi(machine, w)
    if family == "alpha":
        return alpha(machine, w)
    if family == "rho":
        return rho(machine, w)
    raise ValueError(f"unknown sentence family {family!r}; expected one of {', '.join(FAMILIES)}")


def measure_size_constant(machine: TuringMachine, words, family: str = "chi") -> Fraction:
    """max |sentence(w)| / |w| over the nonempty words given."""
    ratios = [Fraction(formula_size(compile_sentence(machine, w, family)), len(w)) for w in words if w]
    if not ratios:
        raise ValueError("need at least one nonempty word")
    return max(ratios)


# -- models ----------------------------------------------------------------------------


def canonical_model(machine: TuringMachine, w: str, max_steps: int = 10_000) -> FinStructure:
    """The structure on h(w)+1 points that records the halting run."""
    trace = run(machine, w, max_steps)
    if not trace.halted:
        raise NotHalting(f"machine does not halt on {w!r} within {max_steps} steps")
    return encoding_structure(machine, trace, trace.steps + 1)


def encoding_structure(machine: TuringMachine, trace: RunTrace, size: int) -> FinStructure:
    """Natural order on [size] with the first ``size`` configurations written in."""
    vocab = machine.vocabulary()
    m = size
    rel: dict[str, set] = {
        "Lt": {(a, b) for a in range(1, m + 1) for b in range(a + 1, m + 1)},
        "U_min": {(1,)},
        "U_max": {(m,)},
        "S": {(a, a + 1) for a in range(1, m)},
    }
    everything = {(a, b) for a in range(1, m + 1) for b in range(1, m + 1)}
    zeros = set()
    heads = {q: set() for q in machine.states}
    for j in range(m):
        conf = trace.configs[min(j, trace.steps)]
        for i in range(m):
            if conf.cell(i) == 0:
                zeros.add((i + 1, j + 1))
        heads[conf.state].add((conf.head + 1, j + 1))
    rel[C0], rel[C0_COMP] = zeros, everything - zeros
    for q in machine.states:
        rel[head(q)], rel[head_comp(q)] = heads[q], everything - heads[q]
    return FinStructure.build(vocab, m, rel)


def order_elements(a: FinStructure, order: str = "Lt") -> list[int]:
    """Elements listed from least to greatest (the order must be linear)."""
    below = {e: 0 for e in a.universe}
    for x, y in a[order]:
        below[y] += 1
    ranked = sorted(a.universe, key=lambda e: below[e])
    if [below[e] for e in ranked] != list(range(a.size)):
        raise ValueError("the order relation is not a linear order")
    return ranked


def verify_encoding(a: FinStructure, machine: TuringMachine, w: str, r: int) -> bool:
    """Do the first r+1 elements record the first r steps of the run on ``w``?"""
    if r < 0 or r + 1 > a.size:
        raise ValueError("r+1 must not exceed the structure size")
    trace = run(machine, w, r)
    if trace.steps < r:
        raise ValueError(f"the run stops after {trace.steps} steps, fewer than r = {r}")
    elems = order_elements(a)[: r + 1]
    c0 = a[C0]
    hs = {q: a[head(q)] for q in machine.states}
    for j in range(r + 1):
        conf = trace.configs[j]
        for i in range(r + 1):
            pair = (elems[i], elems[j])
            if (pair in c0) != (conf.cell(i) == 0):
                return False
            for q in machine.states:
                if (pair in hs[q]) != (conf.state == q and conf.head == i):
                    return False
    return True
