"""Malmquist index and decompositions on a small synthetic three-period panel."""
import numpy as np

from deakit import MalmquistSeries, deadata_from_arrays, malmquist_index


def panel(seed=7, periods=3, n=6):
    rng = np.random.default_rng(seed)
    X = rng.uniform(2, 10, (2, n))
    Y = rng.uniform(2, 10, (1, n))
    out = []
    for _ in range(periods):
        out.append(deadata_from_arrays(X.round(3), Y.round(3), [f"U{k + 1}" for k in range(n)]))
        X = X * rng.uniform(0.85, 1.05, X.shape)
        Y = Y * rng.uniform(0.95, 1.2, Y.shape)
    return MalmquistSeries(tuple(out), labels=("2021", "2022", "2023"))


def main():
    series = panel()
    for type2 in ("fgnz", "rd", "bias"):
        res = malmquist_index(series, orientation="io", rts="vrs", type2=type2)
        wide = res.to_long().pivot_table(index=["dmu", "period"], columns="index_name",
                                         values="value")
        print(f"\n== {type2} ==")
        print(wide.round(4).to_string())


if __name__ == "__main__":
    main()
