import pytest
from hypothesis import given
from hypothesis import strategies as st

from fmtbench.evaluate import find_model, models
from fmtbench.logic import Polarity, formula_size, is_universal, polarity
from fmtbench.structures import complete_ordering, induced_substructure, isomorphic
from fmtbench.tm import (
    FAMILIES,
    ONE_STEP,
    TWO_STEP,
    Instruction,
    MachineError,
    MachineStuck,
    NotHalting,
    TuringMachine,
    alpha,
    canonical_model,
    chi,
    compile_sentence,
    dump_machine,
    encoding_structure,
    measure_size_constant,
    order_elements,
    parse_machine,
    phi0w,
    phi1M,
    pi,
    read_machine,
    run,
    verify_encoding,
)

# writes 1, 1, steps back, rewrites: exercises left moves (h = 3)
BACK_AND_FORTH = parse_machine("""
machine back
states q0 q1 q2 qh
start q0
halt qh
instr q0 0 q1 1 R
instr q1 0 q2 1 L
instr q2 1 qh 0 S
end
""")

# never halts
LOOP = parse_machine("""
machine loop
states q0 qh
start q0
halt qh
instr q0 0 q0 0 R
end
""")


def test_runs_of_the_samples():
    t1 = run(ONE_STEP, "0")
    assert t1.halted and t1.h == 1
    assert t1.configs[-1].tape == (1,)
    t2 = run(TWO_STEP, "00")
    assert t2.h == 2
    assert [c.head for c in t2.configs] == [0, 1, 1]
    assert t2.configs[-1].tape == (1, 1)
    t3 = run(BACK_AND_FORTH, "")
    assert t3.h == 3
    assert [c.head for c in t3.configs] == [0, 1, 0, 0]
    assert t3.configs[-1].tape == (0, 1)


def test_run_errors():
    with pytest.raises(MachineStuck):
        run(ONE_STEP, "1")
    with pytest.raises(MachineError):
        run(ONE_STEP, "2")
    trace = run(LOOP, "", max_steps=20)
    assert not trace.halted and trace.h is None and trace.steps == 20
    with pytest.raises(NotHalting):
        canonical_model(LOOP, "", max_steps=20)
    left = TuringMachine(("q0", "qh"), "q0", "qh", (Instruction("q0", 0, "qh", 0, -1),))
    with pytest.raises(MachineError):
        run(left, "")


@pytest.mark.parametrize("machine", [ONE_STEP, TWO_STEP, BACK_AND_FORTH, LOOP])
def test_machine_text_round_trip(machine):
    assert parse_machine(dump_machine(machine)) == machine


def test_sample_machine_files(data_dir):
    assert read_machine(data_dir / "machines" / "one_step.tm") == ONE_STEP
    assert read_machine(data_dir / "machines" / "two_step.tm") == TWO_STEP


@pytest.mark.parametrize("text", [
    "machine m\nstates q0 qh\nstart q0\nend\n",
    "machine m\nstates q0 qh\nstart q0\nhalt qh\ninstr q0 0 qh 1 X\nend\n",
    "machine m\nstates q0 qh\nstart q0\nhalt qh\ninstr q0 0 qz 1 S\nend\n",
    "machine m\nstates q0 qh\nstart q0\nhalt qh\ninstr q0 0 qh 1 S\ninstr q0 0 qh 0 S\nend\n",
    "machine m\nstates q0 qh\nstart q0\nhalt qh\ninstr qh 0 q0 1 S\nend\n",
    "machine m\nstates q0 qh\nstart q0\nhalt qh\ninstr q0 0 qh\nend\n",
    "machine m\nstates q0 qh\nstart q0\nhalt qh\nend\nstates q1\n",
    "machine m\nstates q0 qh\nstart q0\nhalt q0\nend\n",
])
def test_malformed_machine_files(text):
    with pytest.raises(MachineError):
        parse_machine(text)


@pytest.mark.parametrize("machine, word", [(ONE_STEP, "0"), (TWO_STEP, "00"), (BACK_AND_FORTH, "")])
def test_canonical_model(machine, word):
    a = canonical_model(machine, word)
    h = run(machine, word).h
    assert a.size == h + 1
    assert verify_encoding(a, machine, word, h)
    assert models(a, pi(machine, word))
    assert not models(a, chi(machine, word))
    assert models(a, alpha(machine, word))


@pytest.mark.parametrize("machine, word", [(ONE_STEP, "0"), (TWO_STEP, "00")])
def test_canonical_model_is_the_only_small_model(machine, word):
    h = run(machine, word).h
    sentence = pi(machine, word)
    for n in range(1, h + 1):
        assert find_model(sentence, n, machine.vocabulary()) is None
    found = find_model(sentence, h + 1, machine.vocabulary())
    assert found is not None and isomorphic(found, canonical_model(machine, word))


@pytest.mark.parametrize("machine, word", [(ONE_STEP, "0"), (TWO_STEP, "00"), (BACK_AND_FORTH, "")])
def test_proper_induced_substructures_model_chi(machine, word):
    a = canonical_model(machine, word)
    c = chi(machine, word)
    for mask in range(1, 2 ** a.size - 1):
        sub = induced_substructure(a, [e for e in a.universe if mask >> (e - 1) & 1])
        assert models(sub, c)
        assert not models(sub, phi1M(machine))


@pytest.mark.parametrize("machine", [ONE_STEP, TWO_STEP, BACK_AND_FORTH])
@pytest.mark.parametrize("word", ["", "0", "1", "00", "0110"])
def test_polarity_contract(machine, word):
    f = phi0w(machine, word)
    assert is_universal(f)
    for name in machine.vocabulary().names:
        if name != "Lt":
            assert polarity(name, f) in (Polarity.NEGATIVE, Polarity.ABSENT), name


@given(st.sampled_from(FAMILIES[:-1]), st.text("01", max_size=4))
def test_compilation_is_deterministic(family, word):
    assert compile_sentence(TWO_STEP, word, family) == compile_sentence(TWO_STEP, word, family)


def test_unknown_family():
    with pytest.raises(ValueError):
        compile_sentence(ONE_STEP, "0", "nonsense")


def test_size_constant_grows_linearly():
    words = ["0" * i for i in range(1, 6)]
    c = measure_size_constant(TWO_STEP, words, "phi0w")
    sizes = [formula_size(compile_sentence(TWO_STEP, w, "phi0w")) for w in words]
    assert sizes == sorted(sizes) and len(set(sizes)) == len(sizes)
    assert all(s <= c * len(w) for s, w in zip(sizes, words))
    assert c > 0
    with pytest.raises(ValueError):
        measure_size_constant(TWO_STEP, [""])


def test_encoding_structure_prefix():
    trace = run(TWO_STEP, "00")
    a = encoding_structure(TWO_STEP, trace, 2)
    assert verify_encoding(a, TWO_STEP, "00", 1)
    assert order_elements(a) == [1, 2]
    with pytest.raises(ValueError):
        order_elements(complete_ordering(3).replace(Lt=[(1, 2)]))
