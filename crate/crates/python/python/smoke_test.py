"""Quick check of an installed pynoeth build."""

import json

import pynoeth

PARABOLA = """
ring x, y;
order deglex;
ideal y^2, x^2 - y;
"""

PDE = """
ring x, y;
order lex;
module_order top;
components
  { module [x, 1], [y, x], [0, y]; }
  { module [x - 1, 1], [y, 0], [y, x - 1]; center 1, 0; };
space z, t;
"""


def main():
    p = pynoeth.Problem(PARABOLA)
    print(p)
    print("multiplicity:", p.multiplicity())
    print("staircase:", ", ".join(p.staircase()))
    ops = p.noether()[0]
    print("operators:", ", ".join(ops))
    assert ops == ["1", "dx", "1/2 dx^2 + dy", "1/6 dx^3 + dx dy"]

    doc = json.loads(p.json("noether"))
    assert doc["multiplicity"] == 4
    assert doc["operators"][0]["terms"] == [{"pos": 1, "alpha": [0, 0], "coeff": "1"}]

    solution = pynoeth.Problem(PDE).ep_solution()
    print(solution)
    assert "D e^(z)" in solution

    try:
        pynoeth.Problem("ring x; ideal x^2; center 1;").noether()
    except pynoeth.NoethError as e:
        print("rejected:", e)
    else:
        raise SystemExit("expected an error for an ideal not supported at the center")
    print("ok")


if __name__ == "__main__":
    main()
