from hypothesis import given
from hypothesis import strategies as st

from fmtbench.report import ExperimentReport

values = st.one_of(st.integers(), st.booleans(), st.text(max_size=10))


@given(st.lists(st.tuples(st.text(max_size=20), values, values), max_size=6),
       st.floats(0, 1000, allow_nan=False), st.lists(st.text(max_size=10), max_size=3))
def test_json_round_trip(checks, wall, notes):
    r = ExperimentReport("x", {"n": 3})
    for d, e, o in checks:
        r.check(d, e, o)
    r.wall_time = wall
    r.notes = notes
    again = ExperimentReport.from_json(r.to_json())
    assert again.to_dict() == r.to_dict()
    assert again.passed == r.passed == all(e == o for _, e, o in checks)


def test_text_and_files(tmp_path):
    r = ExperimentReport("demo", {"n": 2})
    assert r.check("one", 1, 1)
    assert not r.check("two", 2, 3)
    assert not r.passed
    text = r.text()
    assert "[PASS] one" in text and "[FAIL] two" in text and text.endswith("FAIL")
    r.write(tmp_path / "demo.json")
    assert ExperimentReport.from_json((tmp_path / "demo.json").read_text()).checks == r.checks
    assert (tmp_path / "demo.txt").read_text().strip() == text


def test_key_order_is_stable():
    r = ExperimentReport("demo", {"n": 2})
    assert list(r.to_dict()) == ["name", "params", "passed", "checks", "wall_time", "budget_usage", "notes"]
