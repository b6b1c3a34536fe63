"""Bias-corrected BCC scores and 95% intervals for meta.csv."""
from pathlib import Path

import pandas as pd

from deakit import bandwidth, bootstrap_basic, make_deadata

HERE = Path(__file__).resolve().parent


def main():
    data = make_deadata(HERE / "meta.csv", ni=1, no=1)
    res = bootstrap_basic(data, orientation="io", rts="vrs", B=200, seed=2024)
    table = pd.DataFrame({"score": res.score, "score_bc": res.score_bc, "bias": res.bias,
                          "CI_low": res.CI[:, 0], "CI_up": res.CI[:, 1]}, index=res.dmunames)
    delta = 1.0 / res.score
    print(f"bandwidth used = {res.params['h_value']}, rule h1 would give "
          f"{bandwidth(delta, 'h1'):.5f}")
    print(table.round(5).to_string())


if __name__ == "__main__":
    main()
