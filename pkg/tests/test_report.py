import json

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from nart.report import EXIT_CODES, FAIL, PASS, UNVERIFIABLE, Report


def test_verdicts_and_exit_codes():
    rep = Report()
    rep.add("a", True)
    assert rep.finalize().verdict == PASS and rep.exit_code == 0
    rep.add("b", False, {"vector": np.array([1, -1])})
    assert rep.finalize().verdict == FAIL and rep.exit_code == 1
    rep.verdict = UNVERIFIABLE
    assert rep.finalize().exit_code == 2
    assert EXIT_CODES == {PASS: 0, FAIL: 1, UNVERIFIABLE: 2}


def test_numpy_witness_serializes():
    rep = Report(relation_matrix=[[np.int64(1), np.int64(-1)]])
    rep.add("x", False, {"v": np.array([2, 3]), "n": np.int64(4)})
    data = json.loads(rep.dumps())
    assert data["relation_matrix"] == [[1, -1]]
    assert data["checks"][0]["witness"] == {"v": [2, 3], "n": 4}
    assert "FAIL" in rep.table()


@given(
    st.lists(st.tuples(st.text(min_size=1, max_size=8), st.booleans(), st.one_of(st.none(), st.integers()))),
    st.lists(st.lists(st.integers(-5, 5), min_size=2, max_size=2), max_size=3),
)
def test_round_trip(checks, rows):
    rep = Report(title="t", basis_order=["a", "b"], relation_matrix=rows, invariant_factors=[1])
    for name, ok, wit in checks:
        rep.add(name, ok, wit)
    rep.finalize()
    data = json.loads(rep.dumps())
    assert Report.from_json(data).to_json() == data
