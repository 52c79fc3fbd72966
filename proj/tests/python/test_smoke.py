"""Smoke tests for the python bindings: exercises the main operations end to
end against the known example values."""

import math
import os

import nnrank as nn


def test_matrix_basics():
    b1 = nn.build_family("B1")
    assert b1.rows == 4 and b1.cols == 4
    assert b1.backend == "exact"
    assert nn.rank(b1) == 3
    assert b1.to_lists()[0] == [1.0, 0.0, 1.0, 0.0]

    m = nn.Matrix([["0.1", "0.9"], ["0.5", "0.5"]])
    assert m.backend == "exact"
    assert m.to_strings()[0][0] == "0.1"

    sto = nn.to_stochastic(b1)
    assert sto.to_lists()[0][0] == 0.5


def test_nonneg_rank_ladder():
    r = nn.nonneg_rank(nn.build_family("B1"))
    assert (r["rank"], r["nn_lower"], r["nn_upper"], r["exact"]) == (3, 4, 4, True)

    p0 = nn.build_family("Peps", "0")
    r0 = nn.nonneg_rank(p0, witness=True)
    assert (r0["nn_lower"], r0["nn_upper"], r0["exact"]) == (3, 3, True)
    assert r0["witness"]["k"] == 3
    assert r0["witness"]["residual"] < 1e-10

    r1 = nn.nonneg_rank(nn.build_family("Peps", "0.1"))
    assert (r1["nn_lower"], r1["nn_upper"], r1["exact"]) == (4, 4, True)


def test_factorize():
    b1 = nn.build_family("B1")
    assert nn.nmf(b1, 4)["residual"] < 1e-8
    assert nn.nmf(b1, 3)["residual"] > 0.05
    assert nn.nnrank_upper(nn.build_family("Peps", "0")) == 3


def test_jacobian():
    x = nn.Matrix([[1, 2], [3, 4]])
    y = nn.Matrix([[5, 6], [7, 8]])
    rep = nn.maximal_rank_check(x, y)
    assert rep["target_rank"] == 2 * (2 + 2 - 2)
    assert rep["jac_rank"] == rep["target_rank"]


def test_perturbations():
    p0 = nn.build_family("Peps", "0")
    n1 = nn.barycentric(p0, "1")
    assert nn.rank(n1) == 1

    probe = nn.semicontinuity_probe(p0, 1e-3, 25, seed=5)
    assert probe["violations"] == 0

    crit = nn.critical_epsilon("Meps", "0", "1", 1e-5)
    assert abs(crit - math.sqrt(2) / 2) < 1e-4

    mid = nn.midpoint_probe(nn.build_family("B1"), nn.build_family("B2"))
    assert mid["rkplusMid"]["nn_upper"] == 3


def test_mixture():
    t = nn.mixture_build(["0.5", "0.5"],
                         [["0.25", "0.75"], ["0.5", "0.5"]],
                         [["0.1", "0.9"], ["0.3", "0.7"]])
    assert nn.independence_residual(t) >= 0
    rep = nn.model_membership(t, 2)
    assert rep["status"] == "Member"


def test_render_and_io(tmp_path=None):
    svg = nn.render_svg(nn.build_family("B1"), "tetra")
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    assert svg == nn.render_svg(nn.build_family("B1"), "tetra")

    import xml.dom.minidom
    dom = xml.dom.minidom.parseString(svg)
    assert dom.documentElement.tagName == "svg"
    assert len(dom.getElementsByTagName("circle")) == 4

    corpus = os.environ.get("NNR_CORPUS_DIR")
    if corpus and os.path.exists(os.path.join(corpus, "b1.csv")):
        b1 = nn.load_matrix(os.path.join(corpus, "b1.csv"))
        assert b1 == nn.build_family("B1")


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for t in tests:
        t()
        print(f"ok {t.__name__}")
    print(f"{len(tests)} python smoke tests passed")


if __name__ == "__main__":
    main()
