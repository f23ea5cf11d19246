#!/usr/bin/env python3
"""Solve an exported planar-story LP file with scipy's HiGHS MILP solver.

Usage: solve_lp.py MODEL.lp OUTPUT.sol

Reads the LP text format written by `planar-story ilp-export` (a small,
regular subset of the CPLEX LP dialect: +/-1 coefficients, one constraint
per line, a Bounds section for y_min and a Binaries block) and writes the
solution as "name value" lines plus a trailing "# objective <value>"
comment, the format `planar-story ilp-decode` consumes.
"""

import sys

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp


def parse_lp(text):
    section = None
    constraints = []  # (terms: [(var, coef)], sense, rhs)
    binaries = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("\\"):
            continue
        lowered = line.lower()
        if lowered in ("maximize", "minimize"):
            section = "objective"
            continue
        if lowered == "subject to":
            section = "constraints"
            continue
        if lowered == "bounds":
            section = "bounds"
            continue
        if lowered in ("binaries", "binary"):
            section = "binaries"
            continue
        if lowered == "end":
            break

        if section == "objective":
            # " obj: y_min" -- the objective is always y_min, maximized.
            continue
        if section == "bounds":
            # " 0 <= y_min" -- encoded directly in the variable bounds.
            continue
        if section == "binaries":
            binaries.extend(line.split())
            continue
        if section == "constraints":
            name, _, body = line.partition(":")
            if not body:
                raise ValueError(f"malformed constraint line: {line!r}")
            tokens = body.split()
            terms = []
            sign = 1
            sense = None
            rhs = None
            i = 0
            while i < len(tokens):
                tok = tokens[i]
                if tok == "+":
                    sign = 1
                elif tok == "-":
                    sign = -1
                elif tok in ("<=", ">=", "="):
                    sense = tok
                    rhs = float(tokens[i + 1])
                    i += 1
                else:
                    terms.append((tok, sign))
                    sign = 1
                i += 1
            if sense is None:
                raise ValueError(f"constraint without sense: {line!r}")
            constraints.append((name.strip(), terms, sense, rhs))
    return constraints, binaries


def main():
    if len(sys.argv) != 3:
        print(__doc__, file=sys.stderr)
        return 2
    with open(sys.argv[1]) as fh:
        constraints, binaries = parse_lp(fh.read())

    variables = list(binaries) + ["y_min"]
    index = {name: i for i, name in enumerate(variables)}
    nvar = len(variables)

    c = np.zeros(nvar)
    c[index["y_min"]] = -1.0  # maximize y_min

    a = np.zeros((len(constraints), nvar))
    lb = np.full(len(constraints), -np.inf)
    ub = np.full(len(constraints), np.inf)
    for row, (_, terms, sense, rhs) in enumerate(constraints):
        for var, coef in terms:
            a[row, index[var]] += coef
        if sense == "<=":
            ub[row] = rhs
        elif sense == ">=":
            lb[row] = rhs
        else:
            lb[row] = rhs
            ub[row] = rhs

    integrality = np.ones(nvar)
    integrality[index["y_min"]] = 0
    var_lb = np.zeros(nvar)
    var_ub = np.ones(nvar)
    var_ub[index["y_min"]] = np.inf

    kwargs = {"integrality": integrality, "bounds": Bounds(var_lb, var_ub)}
    if constraints:
        kwargs["constraints"] = LinearConstraint(a, lb, ub)
    result = milp(c=c, **kwargs)
    if not result.success:
        print(f"solver failed: {result.message}", file=sys.stderr)
        return 1

    objective = -result.fun
    with open(sys.argv[2], "w") as out:
        for name, value in zip(variables, result.x):
            rounded = round(value) if name != "y_min" else value
            out.write(f"{name} {rounded:g}\n")
        out.write(f"# objective {objective:.6f}\n")
    print(f"objective {objective:.6f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
