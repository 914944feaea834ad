"""Tour of equality cases: every family evaluated at its extremal profile.

For each inequality family we build the known optimizer, evaluate both sides
with certified quadrature, and print the deficit.  On an extremal the deficit
should sit inside the error budget, so every row below should read PASS with
a deficit many orders of magnitude below 1.
"""

from finslerineq import (ExtremalSpec, NormSpec, TransplantMap,
                         evaluate_case, extremal_profile, moser_profile,
                         sharp_constants)
from finslerineq.cli import _EXTREMAL_DEFAULTS, _MAP_KIND, _map_p

CASES = [
    ("sobolev", 3, 2.0),
    ("sobolev", 4, 2.5),
    ("gn", 3, 3.0),
    ("nash", 4, None),
    ("logsob", 3, 2.0),
    ("poincare", 3, 2.0),
    ("trace", 4, 2.0),
]


def main():
    print(f"{'family':<10} {'N':>2} {'param':>6} {'deficit':>12}  status")
    for family, N, param in CASES:
        spec = NormSpec.euclidean(N if family != "trace" else N - 1)
        m = TransplantMap(kind=_MAP_KIND[family], N=N,
                          p=_map_p(family, param), R=1.0)
        c = sharp_constants(family, N, param, spec=spec)
        params = dict(_EXTREMAL_DEFAULTS[family])
        if family == "gn":
            params["q"] = param
        prof = extremal_profile(family, ExtremalSpec(family, params), m)
        rep = evaluate_case(family, spec, m, prof, c, extremal=True)
        status = "PASS" if rep.passed else "FAIL"
        print(f"{family:<10} {N:>2} {param!s:>6} {rep.deficit:>12.2e}  {status}")

    # the borderline family has no extremal; a Moser profile shows the
    # functional is finite and under budget
    m = TransplantMap(kind="planar", N=4, p=2.0, R=1.0)
    spec = NormSpec.euclidean(4)
    c = sharp_constants("trudinger_moser", 4, None, spec=spec)
    rep = evaluate_case("trudinger_moser", spec, m, moser_profile(m, 5), c)
    print(f"{'tm':<10} {4:>2} {'k=5':>6} {rep.deficit:>12.2e}  "
          f"{'PASS' if rep.passed else 'FAIL'}")


if __name__ == "__main__":
    main()
