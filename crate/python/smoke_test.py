"""Smoke test for the kronecker Python extension.

Build and install first:  pip install --no-build-isolation -e crates/python
"""

import json
from fractions import Fraction

import kronecker

TWO_QUADRICS = """
vars x, y;
x^2 + y^2 - 5;
x*y - 2;
"""


def main():
    system = kronecker.System(TWO_QUADRICS)
    assert system.variables == ["x", "y"]
    assert system.degrees == [2, 2]
    assert system.length == 6
    assert system.evaluate([1, 2], 10007) == [0, 0]

    solution = kronecker.solve(system, seed=42, exact=True)
    assert solution.verified
    assert solution.degree == 4
    assert solution.stage_degrees == [2, 4]
    assert solution.minimal_polynomial[-1] == Fraction(1)
    assert kronecker.check(system, solution)

    doc = json.loads(solution.to_json())
    assert doc["format"] == "kronecker-rep/1"
    again = kronecker.load_solution(solution.to_json())
    assert again.minimal_polynomial == solution.minimal_polynomial
    assert kronecker.check(system, again)

    fixed = kronecker.solve(system, seed=42, exact=True)
    assert fixed.to_json() == solution.to_json()

    modular = kronecker.solve_mod_p(system, prime=10007, seed=1)
    assert modular.modulus == 10007
    assert modular.degree == 4
    assert kronecker.check(system, modular)
    assert len(modular.univariate()) == 1

    assert kronecker.rational_reconstruct(3336, 10007) == (1, 3)
    try:
        kronecker.System("vars x; x +;")
    except ValueError:
        pass
    else:
        raise AssertionError("malformed input was accepted")

    print("python smoke test passed:", solution)


if __name__ == "__main__":
    main()
