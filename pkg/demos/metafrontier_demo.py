"""Concave and non-concave metafrontier scores for three groups of meta.csv."""
from pathlib import Path

from deakit import make_deadata, metafrontier

HERE = Path(__file__).resolve().parent


def main():
    data = make_deadata(HERE / "meta.csv", ni=1, no=1)
    groups = {"G1": range(0, 8), "G2": range(8, 14), "G3": range(14, 23)}
    res = metafrontier(data, groups, orientation="io", rts="vrs")
    print(res.to_frame().round(5).to_string())


if __name__ == "__main__":
    main()
