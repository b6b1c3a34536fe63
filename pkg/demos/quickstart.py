"""Radial, slack-based and super-efficiency scores on the 23-DMU sample in meta.csv."""
from pathlib import Path

import pandas as pd

from deakit import (extract, make_deadata, model_basic, model_sbmeff, model_supereff,
                    reference_graph_dot, references)

HERE = Path(__file__).resolve().parent


def main():
    data = make_deadata(HERE / "meta.csv", ni=1, no=1)
    bcc = model_basic(data, orientation="io", rts="vrs")
    table = pd.DataFrame({
        "bcc_io": extract(bcc, "efficiencies"),
        "ccr_io": extract(model_basic(data), "efficiencies"),
        "sbm": extract(model_sbmeff(data, rts="vrs"), "efficiencies"),
        "super_crs": extract(model_supereff(data), "efficiencies"),
        "class": bcc.classification(),
    })
    print(table.round(5).to_string())
    print("\nreference set of D:", references(bcc)["D"])
    print("\n" + reference_graph_dot(bcc))


if __name__ == "__main__":
    main()
