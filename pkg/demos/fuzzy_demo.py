"""Kao-Liu worst/best score bands for a small trapezoidal-fuzzy data set."""
import numpy as np
import pandas as pd

from deakit import Trapezoid, fuzzy_from_arrays, modelfuzzy_kaoliu


def main():
    m = np.array([[3.0, 4.0, 5.0, 6.0], [2.0, 3.5, 2.5, 4.0]])
    inputs = Trapezoid(mL=m, mR=m + 0.5, dL=0.2 * m, dR=0.2 * m)
    outputs = Trapezoid.crisp([[4.0, 5.0, 6.0, 5.5]])
    data = fuzzy_from_arrays(inputs, outputs, ["P", "Q", "R", "S"])
    res = modelfuzzy_kaoliu(data, "basic", alpha=5, orientation="io", rts="vrs")
    bands = pd.DataFrame(res.bands(), columns=["dmu", "alpha", "lower", "upper"])
    print(bands.round(4).to_string(index=False))


if __name__ == "__main__":
    main()
