"""Command-line driver: ``python -m deakit --data file.csv --model basic ...``."""
from __future__ import annotations

import argparse
import inspect
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

import pandas as pd

from . import export
from .additive import model_additive, model_addmin
from .bootstrap import bootstrap_basic
from .cross import cross_efficiency
from .data import make_deadata, make_deadata_fuzzy, make_malmquist, read_table
from .fuzzy import modelfuzzy_kaoliu
from .lp import dump
from .malmquist import malmquist_index
from .metafrontier import metafrontier
from .multiplier import model_multiplier
from .nonradial import model_deaps, model_nonradial
from .profit import model_profit
from .radial import model_basic, model_fdh, model_rdm
from .results import DeaResult
from .sbm import model_sbmeff
from .supereff import model_addsupereff, model_sbmsupereff, model_supereff

EXIT_OK, EXIT_USAGE, EXIT_IO = 0, 2, 3

MODELS = {
    "basic": model_basic, "fdh": model_fdh, "rdm": model_rdm, "multiplier": model_multiplier,
    "nonradial": model_nonradial, "deaps": model_deaps, "additive": model_additive,
    "addmin": model_addmin, "sbmeff": model_sbmeff, "profit": model_profit,
    "supereff": model_supereff, "sbmsupereff": model_sbmsupereff,
    "addsupereff": model_addsupereff, "cross": cross_efficiency, "kaoliu": modelfuzzy_kaoliu,
    "malmquist": malmquist_index, "bootstrap": bootstrap_basic, "metafrontier": metafrontier,
}

# CLI destination -> (keyword, flag) for model-specific options
MODEL_FLAGS = {
    "orientation": ("orientation", "--orientation"), "rts": ("rts", "--rts"),
    "L": ("L", "--L"), "U": ("U", "--U"), "maxslack": ("maxslack", "--no-maxslack"),
    "epsilon": ("epsilon", "--epsilon"), "irdm": ("irdm", "--irdm"),
    "weight_eff": ("weight_eff", "--weight-eff"),
    "unrestricted_eff": ("restricted_eff", "--unrestricted-eff"),
    "weight_slack_i": ("weight_slack_i", "--weight-slack-i"),
    "weight_slack_o": ("weight_slack_o", "--weight-slack-o"),
    "weight_input": ("weight_input", "--weight-input"),
    "weight_output": ("weight_output", "--weight-output"),
    "kaizen": ("kaizen", "--kaizen"),
    "price_input": ("price_input", "--price-input"),
    "price_output": ("price_output", "--price-output"),
    "unrestricted_optimal": ("restricted_optimal", "--unrestricted-optimal"),
    "no_selfapp": ("selfapp", "--no-selfapp"), "correction": ("correction", "--correction"),
    "alpha": ("alpha", "--alpha"), "submodel": ("kaoliu_modelname", "--submodel"),
    "type1": ("type1", "--type1"), "type2": ("type2", "--type2"),
    "tc_vrs": ("tc_vrs", "--tc-vrs"), "B": ("B", "--B"), "h": ("h", "--h"),
    "seed": ("seed", "--seed"), "jobs": ("n_jobs", "--jobs"),
}
NEGATED = {"maxslack", "unrestricted_eff", "unrestricted_optimal", "no_selfapp"}
LP_MODELS = {"basic", "multiplier", "nonradial", "deaps", "additive", "sbmeff", "profit", "rdm"}


class UsageError(ValueError):
    """Invalid command-line input; the message names the offending flag."""


def _floats(text: str, flag: str):
    try:
        vals = [float(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"{flag}: expected comma-separated numbers, got {text!r}") from None
    return vals[0] if len(vals) == 1 else vals


def _bandwidth(text: str):
    if text in ("h1", "h2", "h3", "h4"):
        return text
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"--h: expected a number or h1..h4, got {text!r}") from None


def parse_selection(text: str, names: Sequence[str], flag: str) -> list[int]:
    """Parse ``"1-8,10,Fisk"``: 1-based positions, ranges or DMU labels."""
    lookup = {n: j for j, n in enumerate(names)}
    out: list[int] = []
    for tok in (t.strip() for t in text.split(",")):
        if not tok:
            continue
        if tok in lookup:
            out.append(lookup[tok])
            continue
        lo, sep, hi = tok.partition("-")
        try:
            a = int(lo)
            b = int(hi) if sep else a
        except ValueError:
            raise UsageError(f"{flag}: unknown DMU or range {tok!r}") from None
        if not (1 <= a <= b <= len(names)):
            raise UsageError(f"{flag}: range {tok!r} outside 1..{len(names)}")
        out.extend(range(a - 1, b))
    if not out:
        raise UsageError(f"{flag}: empty selection")
    return out


def parse_groups(text: str, names: Sequence[str]) -> dict[str, list[int]]:
    """Parse ``"G1=1-8;G2=9-14"`` into a grouping."""
    groups = {}
    for part in (p.strip() for p in text.split(";")):
        if not part:
            continue
        label, sep, members = part.partition("=")
        if not sep or not label.strip():
            raise UsageError(f"--groups: expected NAME=RANGES, got {part!r}")
        groups[label.strip()] = parse_selection(members, names, "--groups")
    if not groups:
        raise UsageError("--groups: no group given")
    return groups


def _columns(text: Optional[str], df: pd.DataFrame, flag: str):
    """Comma-separated header names or 1-based column positions."""
    if text is None:
        return None
    out = []
    for tok in (t.strip() for t in text.split(",")):
        if tok in df.columns:
            out.append(tok)
        elif tok.isdigit() and 1 <= int(tok) <= df.shape[1]:
            out.append(int(tok) - 1)
        else:
            raise UsageError(f"{flag}: unknown column {tok!r}")
    return out


def _specials(args) -> dict:
    out = {}
    for key in ("nc_inputs", "nc_outputs", "nd_inputs", "nd_outputs", "ud_inputs", "ud_outputs"):
        text = getattr(args, key)
        if text:
            flag = "--" + key.replace("_", "-")
            try:
                out[key] = [int(t) - 1 for t in text.split(",")]
            except ValueError:
                raise UsageError(f"{flag}: expected 1-based variable positions") from None
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="deakit", description="Data envelopment analysis models.")
    p.add_argument("--data", required=True, help="CSV file with a header row")
    p.add_argument("--model", required=True, choices=sorted(MODELS))
    p.add_argument("--dmus", default="1", help="DMU label column (name or 1-based position); "
                   "'none' generates labels")
    p.add_argument("--ni", type=int, help="number of input columns after the label column")
    p.add_argument("--no", type=int, help="number of output columns after the inputs")
    p.add_argument("--inputs", help="input columns (names or 1-based positions)")
    p.add_argument("--outputs", help="output columns (names or 1-based positions)")
    for side in ("inputs", "outputs"):
        for par in ("mR", "dL", "dR"):
            p.add_argument(f"--{side}-{par}", dest=f"{side}_{par}",
                           help=f"fuzzy {par} columns of the {side} (kaoliu)")
    for key in ("nc_inputs", "nc_outputs", "nd_inputs", "nd_outputs", "ud_inputs", "ud_outputs"):
        p.add_argument("--" + key.replace("_", "-"), dest=key,
                       help="1-based variable positions, comma-separated")
    p.add_argument("--nper", type=int, help="periods in a wide panel (malmquist)")
    p.add_argument("--percol", help="period column of a long panel (malmquist)")
    p.add_argument("--orientation")
    p.add_argument("--rts", choices=["crs", "vrs", "nirs", "ndrs", "grs"])
    p.add_argument("--L", type=float)
    p.add_argument("--U", type=float)
    p.add_argument("--dmu-eval", help="evaluated DMUs: 1-based ranges or labels")
    p.add_argument("--dmu-ref", help="reference DMUs: 1-based ranges or labels")
    p.add_argument("--no-maxslack", dest="maxslack", action="store_true")
    p.add_argument("--epsilon", type=float)
    p.add_argument("--irdm", action="store_true", default=None)
    p.add_argument("--weight-eff")
    p.add_argument("--unrestricted-eff", action="store_true")
    p.add_argument("--weight-slack-i")
    p.add_argument("--weight-slack-o")
    p.add_argument("--weight-input")
    p.add_argument("--weight-output")
    p.add_argument("--kaizen", action="store_true", default=None)
    p.add_argument("--price-input")
    p.add_argument("--price-output")
    p.add_argument("--unrestricted-optimal", action="store_true")
    p.add_argument("--no-selfapp", action="store_true")
    p.add_argument("--correction", action="store_true", default=None)
    p.add_argument("--alpha", help="alpha levels (kaoliu) or confidence level (bootstrap)")
    p.add_argument("--submodel", help="crisp model inside kaoliu")
    p.add_argument("--type1", choices=["cont", "seq", "glob"])
    p.add_argument("--type2", choices=["fgnz", "rd", "gl", "bias"])
    p.add_argument("--tc-vrs", action="store_true", default=None)
    p.add_argument("--B", type=int)
    p.add_argument("--h")
    p.add_argument("--seed", type=int)
    p.add_argument("--groups", help='metafrontier groups, e.g. "G1=1-8;G2=9-14"')
    p.add_argument("--jobs", type=int)
    p.add_argument("--out", help="output path; standard output when omitted")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--split", action="store_true", help="one file per facet")
    p.add_argument("--emit-lp", action="store_true", help="print the unsolved programs only")
    p.add_argument("--emit-dot", action="store_true", help="also write the reference graph")
    return p


def _option_value(dest: str, raw):
    if dest in NEGATED:
        return False
    flag = MODEL_FLAGS[dest][1]
    if dest in ("weight_eff", "weight_slack_i", "weight_slack_o", "weight_input", "weight_output",
                "price_input", "price_output"):
        return _floats(raw, flag)
    if dest == "alpha":
        return _floats(raw, flag)
    if dest == "h":
        return _bandwidth(raw)
    return raw


def model_kwargs(args, fn) -> dict:
    """Keyword arguments for ``fn`` from the given flags; unsupported flags are errors."""
    params = inspect.signature(fn).parameters
    open_kwargs = any(p.kind is inspect.Parameter.VAR_KEYWORD for p in params.values())
    kwargs = {}
    for dest, (key, flag) in MODEL_FLAGS.items():
        raw = getattr(args, dest, None)
        if raw is None or raw is False:
            continue
        if key not in params and not (open_kwargs and args.model == "kaoliu"):
            raise UsageError(f"{flag} is not supported by --model {args.model}")
        kwargs[key] = _option_value(dest, raw)
    return kwargs


def load_data(args):
    try:
        df = read_table(args.data)
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as exc:
        raise UsageError(f"--data: malformed CSV {args.data}: {exc}") from None
    if args.dmus.lower() == "none":
        dmus = None
    else:
        cols = _columns(args.dmus, df, "--dmus")
        dmus = cols[0]
    special = _specials(args)
    inputs = _columns(args.inputs, df, "--inputs")
    outputs = _columns(args.outputs, df, "--outputs")
    if args.model == "malmquist":
        if args.nper is not None:
            return make_malmquist(df, "horizontal", dmus=dmus, nper=args.nper, ni=args.ni,
                                  no=args.no, **special)
        if args.percol is None:
            raise UsageError("--nper or --percol is required for --model malmquist")
        return make_malmquist(df, "vertical", dmus=dmus, percol=_columns(args.percol, df,
                                                                         "--percol")[0],
                              inputs=inputs, outputs=outputs, ni=args.ni, no=args.no, **special)
    if args.model == "kaoliu":
        if inputs is None or outputs is None:
            raise UsageError("--inputs and --outputs are required for --model kaoliu")
        extra = {}
        for side in ("inputs", "outputs"):
            for par in ("mR", "dL", "dR"):
                cols = _columns(getattr(args, f"{side}_{par}"), df, f"--{side}-{par}")
                if cols is not None:
                    extra[f"{side}_{par}"] = cols
        return make_deadata_fuzzy(df, dmus=dmus, inputs_mL=inputs, outputs_mL=outputs,
                                  **extra, **special)
    if (inputs is None and args.ni is None) or (outputs is None and args.no is None):
        raise UsageError("give --ni/--no or --inputs/--outputs")
    return make_deadata(df, dmus=dmus, inputs=inputs, outputs=outputs, ni=args.ni, no=args.no,
                        **special)


def run(args) -> object:
    data = load_data(args)
    fn = MODELS[args.model]
    kwargs = model_kwargs(args, fn)
    names = data.dmunames
    for dest, key in (("dmu_eval", "dmu_eval"), ("dmu_ref", "dmu_ref")):
        text = getattr(args, dest)
        if text is not None:
            flag = "--" + dest.replace("_", "-")
            if key not in inspect.signature(fn).parameters:
                raise UsageError(f"{flag} is not supported by --model {args.model}")
            kwargs[key] = parse_selection(text, names, flag)
    if args.model == "metafrontier":
        if not args.groups:
            raise UsageError("--groups is required for --model metafrontier")
        kwargs["grouping"] = parse_groups(args.groups, names)
    elif args.groups:
        raise UsageError(f"--groups is not supported by --model {args.model}")
    if args.emit_lp:
        if args.model not in LP_MODELS:
            raise UsageError(f"--emit-lp is not supported by --model {args.model}")
        return fn(data, returnlp=True, **kwargs)
    return fn(data, **kwargs)


def _emit(text: str, target: Optional[Path]):
    if target is None:
        sys.stdout.write(text)
    else:
        try:
            target.write_text(text, encoding="utf-8")
        except OSError as exc:
            raise export.ExportError(f"cannot write {target}: {exc.strerror or exc}") from exc


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = run(args)
        out = Path(args.out) if args.out else None
        if args.emit_lp:
            _emit("".join(f"# DMU {k + 1}\n{dump(p)}" for k, p in enumerate(result)), out)
            return EXIT_OK
        if out is None:
            if args.split:
                raise UsageError("--split needs --out")
            if args.format == "json":
                sys.stdout.write(export.to_json(result) + "\n")
            else:
                sys.stdout.write(export.merged_frame(result).to_csv(float_format="%.17g"))
        else:
            export.summary_export(result, out, args.format, split=args.split)
        if args.emit_dot:
            if not isinstance(result, DeaResult):
                raise UsageError(f"--emit-dot is not supported by --model {args.model}")
            dot = export.reference_graph_dot(result)
            _emit(dot, None if out is None else out.with_suffix(".dot"))
    except BrokenPipeError:
        # reader closed early (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK
    except (FileNotFoundError, PermissionError, IsADirectoryError, export.ExportError) as exc:
        print(f"deakit: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, KeyError, IndexError, TypeError) as exc:
        print(f"deakit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
