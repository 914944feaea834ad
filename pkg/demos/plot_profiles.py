"""Write plot-ready CSVs of the extremal profiles via the CLI entry point.

Produces one CSV per family in demos/out/ with columns s,value,derivative on
a grid that refines geometrically toward the boundary, where the profiles
vary fastest.  Any plotting tool can consume the files directly.
"""

import pathlib

from finslerineq.cli import main as cli_main

OUT = pathlib.Path(__file__).parent / "out"

CASES = [
    ["--family", "sobolev", "--N", "3", "--param", "2"],
    ["--family", "gn", "--N", "3", "--param", "3"],
    ["--family", "nash", "--N", "4"],
    ["--family", "poincare", "--N", "3", "--param", "2"],
    ["--family", "trudinger_moser", "--N", "4",
     "--profile", "moser", "--profile-param", "k=4"],
]


def main():
    OUT.mkdir(exist_ok=True)
    for extra in CASES:
        family = extra[1]
        path = OUT / f"{family}.csv"
        rc = cli_main(["plotdata", *extra, "--format", "csv",
                       "--out", str(path)])
        print(f"{'ok' if rc == 0 else 'ERROR'} {path}")


if __name__ == "__main__":
    main()
