"""Smoke test for the qhdpy extension module.

Build and run from the repository root:

    cargo build -p qhd-py --release --features extension-module
    cp target/release/libqhdpy.so python/qhdpy.so
    python3 python/smoke_test.py
"""

import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import qhdpy  # noqa: E402


def main():
    g = qhdpy.PlumbingGraph.star(-4, [[-3], [-3], [-3]])
    assert len(g) == 4
    assert g.is_negative_definite()
    assert g.is_minimal()
    assert g.determinant() == "81"
    assert g.families() == ["A"]
    assert g.star_shape() == (-4, [[-3], [-3], [-3]])

    d = g.dual()
    assert d == qhdpy.PlumbingGraph.parse("star(1; [-2,-2], [-2,-2], [-2,-2])")
    assert d.dual() == g

    same = qhdpy.PlumbingGraph.parse(g.to_json())
    assert same.is_isomorphic(g)
    assert qhdpy.PlumbingGraph.parse(g.to_text()) == g

    try:
        qhdpy.PlumbingGraph([("a", -2), ("a", -2)], [])
    except ValueError:
        pass
    else:
        raise AssertionError("duplicate vertex accepted")

    assert qhdpy.hj_expand(9, 2) == [5, 2]
    assert qhdpy.hj_evaluate([5, 2]) == (9, 2)
    assert qhdpy.dual_expansion(9, 2) == [2, 2, 2, 3]
    assert qhdpy.g_chain(3, 1) == [-5, -2]

    members = qhdpy.generate_family("A", 5)
    assert any(m == g for m in members)

    report = json.loads(qhdpy.recognize(g))
    assert {"label": "QHD3(e)", "parameters": {"k": 3, "p": 0}} in report["matches"]

    prop = json.loads(qhdpy.verify_proposition("p:c6", 4))
    assert prop["verdict"] == "ExactMatch"
    assert prop["found"][0]["framings"] == [-2, -2, -2, -2, -2]

    for name in qhdpy.SHIPPED_CLAIMS:
        claims = json.loads(qhdpy.verify_claims(name))
        assert all(r["passed"] or r["informational"] for r in claims["results"]), name

    print("qhdpy smoke test: ok")


if __name__ == "__main__":
    main()
