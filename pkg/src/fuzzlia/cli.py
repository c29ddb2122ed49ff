"""Command-line front end.

Exit codes: 0 success, 1 a checked property fails, 2 bad input, 3 an
engine or construction refused its operators.
"""

from __future__ import annotations

import json
import sys
from importlib import resources
from pathlib import Path

import click
import numpy as np

from ._grid import GRID_2D, GRID_3D
from .algebra.aggregations import aggregation_from_descriptor
from .algebra.classify import classify
from .algebra.negations import negation_from_descriptor
from .bench import complexity_report, format_report, report_csv
from .engines.core import ENGINES, MODES, infer
from .engines.system import load_system
from .errors import AdmissionError, DescriptorError, FuzzliaError, HypothesisError
from .implications.base import implication_from_descriptor
from .implications.properties import check_lia
from . import lia

EXIT_OK, EXIT_PROPERTY, EXIT_INPUT, EXIT_ADMISSION = 0, 1, 2, 3

RESIDUAL_PREFIX = "residual-of-"

# (fixture, engine, expected output)
EXAMPLES = (
    ("bks_kleene_min.json", "bks", (0.3, 0.3, 0.3)),
    ("sbr_cavg.json", "sbr", (0.2, 0.1, 0.2)),
    ("tip_lukasiewicz.json", "tip", (0.7, 0.6, 0.8)),
)
EXPECTED_COUNTS = {"classical": 82, "hierarchical": 20}


def fmt(v: float) -> str:
    return f"{float(v):.6f}"


def fmt_vec(vals) -> str:
    return " ".join(fmt(v) for v in vals)


def _load_json_arg(text: str):
    if text.startswith("@"):
        try:
            text = Path(text[1:]).read_text(encoding="utf-8")
        except OSError as exc:
            raise DescriptorError(f"cannot read {text[1:]}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DescriptorError(f"invalid JSON descriptor: {exc}") from exc


def parse_aggregation(text: str):
    text = text.strip()
    if text.startswith(("{", "@")):
        return aggregation_from_descriptor(_load_json_arg(text))
    return aggregation_from_descriptor(text)


def parse_negation(text: str):
    text = text.strip()
    if text.startswith(("{", "@")):
        return negation_from_descriptor(_load_json_arg(text))
    return negation_from_descriptor(text)


def parse_implication(text: str):
    """JSON descriptor, ``@file.json``, a family name, or ``residual-of-<aggregation>``.

    The residual shorthand is built without enforcing the implication
    axioms so that invalid residuals can still be examined.
    """
    text = text.strip()
    if text.startswith(("{", "@")):
        return implication_from_descriptor(_load_json_arg(text))
    if text.startswith(RESIDUAL_PREFIX):
        from .implications.families import residual_implication
        return residual_implication(parse_aggregation(text[len(RESIDUAL_PREFIX):]), strict=False)
    return implication_from_descriptor(text)


def _fail(code: int, message: str, ledger=()) -> None:
    click.echo(f"error: {message}", err=True)
    for h in ledger:
        mark = "ok  " if h.holds else "FAIL"
        detail = f" - {h.detail}" if h.detail else ""
        click.echo(f"  [{mark}] {h.name} ({h.certification}){detail}", err=True)
    sys.exit(code)


def _guard(fn):
    """Map library errors onto the exit-code contract."""
    import functools

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (AdmissionError, HypothesisError) as exc:
            _fail(EXIT_ADMISSION, str(exc), exc.ledger)
        except (FuzzliaError, ValueError, OSError) as exc:
            _fail(EXIT_INPUT, str(exc))
    return wrapper


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main():
    """Fuzzy implications, the law of importation and hierarchical inference."""


# -- infer ------------------------------------------------------------------------

@main.command("infer")
@click.option("--system", "system_file", required=True, type=click.Path(dir_okay=False),
              help="System JSON file.")
@click.option("--input", "input_spec", default=None,
              help='Observed labels, e.g. "x1=x12,x2=x23". Defaults to the file\'s "input".')
@click.option("--engine", type=click.Choice(ENGINES), required=True)
@click.option("--mode", type=click.Choice(MODES), default="classical", show_default=True)
@click.option("--count", is_flag=True, help="Append the operation-count table.")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
@_guard
def cmd_infer(system_file, input_spec, engine, mode, count, as_json):
    """Run one inference engine on a system file."""
    system = load_system(system_file)
    if input_spec is None:
        raw = json.loads(Path(system_file).read_text(encoding="utf-8"))
        if "input" not in raw:
            raise DescriptorError("no --input given and the system file has no 'input' entry")
        input_spec = raw["input"]
    out, report = infer(system, input_spec, engine, mode)
    if as_json:
        click.echo(json.dumps(report.as_dict(), indent=2))
        return
    click.echo(fmt_vec(out.memberships))
    if count:
        click.echo(report.opcount.table())


# -- check-lia --------------------------------------------------------------------

@main.command("check-lia")
@click.argument("implication")
@click.argument("aggregation")
@click.option("--grid", default=GRID_3D, show_default=True, type=click.IntRange(min=2))
@click.option("--tol", default=None, type=float, help="Defaults to 1e-9 (1e-6 if tabulated).")
@click.option("--json", "as_json", is_flag=True)
@_guard
def cmd_check_lia(implication, aggregation, grid, tol, as_json):
    """Check I(A(x,y),z) = I(x,I(y,z)) on a grid cube."""
    i = parse_implication(implication)
    a = parse_aggregation(aggregation)
    ent = check_lia(i, a, grid, tol)
    if as_json:
        click.echo(json.dumps(ent.as_dict(), indent=2))
    elif ent.holds:
        click.echo(f"HOLDS  max gap {ent.max_violation:.3g}  {ent.certification}")
    else:
        x, y, z = ent.witness
        click.echo(f"FAILS at ({x:g},{y:g},{z:g}): {ent.detail}  {ent.certification}")
        if ent.extra_witnesses:
            click.echo("violations at x=y=1 (no aggregation can repair these):")
            for _, _, zz, lv, rv in ent.extra_witnesses:
                click.echo(f"  (1,1,{zz:g}): I(1,z)={fmt(lv)} vs I(1,I(1,z))={fmt(rv)}")
    sys.exit(EXIT_OK if ent.holds else EXIT_PROPERTY)


# -- companion --------------------------------------------------------------------

COMPANIONS = ("an", "extreme", "r", "ql", "f", "g", "probabilistic", "power",
              "from-aggregation", "representable")


@main.command("companion")
@click.argument("construction", type=click.Choice(COMPANIONS))
@click.option("--aggregation", "agg", default=None, help="Aggregation (A, A1, copula or t-norm).")
@click.option("--aggregation2", "agg2", default=None, help="Second aggregation (A2 for QL).")
@click.option("--negation", "neg", default=None)
@click.option("--generator", "gen", default=None, help="Generator name or JSON descriptor.")
@click.option("--which", type=click.Choice(["smallest", "greatest"]), default="smallest")
@click.option("--variant", type=click.Choice(["plain", "s"]), default="plain")
@click.option("--json", "as_json", is_flag=True)
@_guard
def cmd_companion(construction, agg, agg2, neg, gen, which, variant, as_json):
    """Construct a LIA partner and certify the pair."""
    def need(value, flag):
        if value is None:
            raise DescriptorError(f"{construction} needs {flag}")
        return value

    def generator_arg():
        g = need(gen, "--generator").strip()
        return _load_json_arg(g) if g.startswith(("{", "@")) else g

    if construction == "an":
        res = lia.companion_for_an_implication(parse_aggregation(need(agg, "--aggregation")),
                                               parse_negation(need(neg, "--negation")))
    elif construction == "extreme":
        res = lia.companion_for_extreme_negations(parse_aggregation(need(agg, "--aggregation")),
                                                  which)
    elif construction == "r":
        res = lia.companion_for_r_implication(parse_aggregation(need(agg, "--aggregation")))
    elif construction == "ql":
        res = lia.companion_for_ql(parse_aggregation(need(agg, "--aggregation")),
                                   parse_aggregation(need(agg2, "--aggregation2")),
                                   parse_negation(need(neg, "--negation")))
    elif construction == "f":
        res = lia.companion_for_f_implication(generator_arg())
    elif construction == "g":
        res = lia.companion_for_g_implication(generator_arg())
    elif construction == "probabilistic":
        res = lia.companion_for_probabilistic(parse_aggregation(need(agg, "--aggregation")),
                                              variant)
    elif construction == "power":
        res = lia.power_implication_lia_verdict(parse_aggregation(need(agg, "--aggregation")))
    elif construction == "from-aggregation":
        res = lia.implication_from_aggregation(parse_aggregation(need(agg, "--aggregation")),
                                               parse_negation(need(neg, "--negation")))
    else:
        res = lia.implication_for_representable(generator_arg(),
                                                None if neg is None else parse_negation(neg))
    if as_json:
        click.echo(json.dumps(res.as_dict(), indent=2, default=str))
        return
    d = res.as_dict()
    click.echo(f"construction: {res.source_theorem}")
    click.echo(f"uniqueness:   {res.uniqueness}")
    click.echo(f"partner:      {json.dumps(d['partner'], default=str)}")
    if res.family_description:
        click.echo(f"family:       {res.family_description}")
    if res.certification is not None:
        c = res.certification
        click.echo(f"LIA:          {'HOLDS' if c.holds else 'FAILS'} ({c.certification})")
    if res.counterexample is not None:
        click.echo(f"counterexample: {json.dumps(res.counterexample, default=str)}")
    for h in res.hypotheses_checked:
        click.echo(f"  [{'ok  ' if h.holds else 'FAIL'}] {h.name} ({h.certification})")


# -- classify ---------------------------------------------------------------------

@main.command("classify")
@click.argument("aggregation")
@click.option("--grid", default=GRID_2D, show_default=True, type=int)
@click.option("--tol", default=None, type=float)
@click.option("--negation", "neg", default=None, help="Negation to test LEM against.")
@click.option("--json", "as_json", is_flag=True)
@_guard
def cmd_classify(aggregation, grid, tol, neg, as_json):
    """Classify an aggregation function on a grid."""
    a = parse_aggregation(aggregation)
    rec = classify(a, grid, tol, None if neg is None else parse_negation(neg))
    d = rec.as_dict()
    if as_json:
        click.echo(json.dumps(d, indent=2))
        return
    for key, value in d.items():
        if key == "certification":
            value = str(rec.certification)
        click.echo(f"{key:<22} {value}")


# -- bench ------------------------------------------------------------------------

def _parse_sizes(text: str):
    try:
        return [tuple(int(v) for v in part.split(",")) for part in text.split(";") if part.strip()]
    except ValueError as exc:
        raise DescriptorError(f"bad --sizes {text!r}: {exc}") from exc


@main.command("bench")
@click.option("--system", "system_file", default=None, type=click.Path(dir_okay=False))
@click.option("--input", "input_spec", default=None)
@click.option("--engine", "engines", type=click.Choice(ENGINES), multiple=True)
@click.option("--mode", "modes", type=click.Choice(MODES), multiple=True)
@click.option("--sizes", default=None, help='Shapes "n1,...,nm,n" separated by ";".')
@click.option("--csv", "as_csv", is_flag=True)
@click.option("--wallclock", is_flag=True, help="Also time random systems (informative).")
@click.option("--json", "as_json", is_flag=True)
@_guard
def cmd_bench(system_file, input_spec, engines, modes, sizes, as_csv, wallclock, as_json):
    """Operation counts of a system, or a predicted complexity table for given sizes."""
    engines = engines or ENGINES
    modes = modes or MODES
    if system_file is not None:
        system = load_system(system_file)
        if input_spec is None:
            raw = json.loads(Path(system_file).read_text(encoding="utf-8"))
            input_spec = raw.get("input")
            if input_spec is None:
                raise DescriptorError("no --input given and the system file has no 'input'")
        results = {}
        for e in engines:
            for m in modes:
                _, rep = infer(system, input_spec, e, m)
                results[f"{e}/{m}"] = rep.opcount
        if as_json:
            click.echo(json.dumps({k: v.as_dict() for k, v in results.items()}, indent=2))
            return
        for key, cnt in results.items():
            if as_csv:
                click.echo(f"# {key}")
                click.echo(cnt.csv(), nl=False)
            else:
                click.echo(f"== {key}")
                click.echo(cnt.table())
        return
    if sizes is None:
        raise DescriptorError("bench needs --system or --sizes")
    rows = complexity_report(engines, _parse_sizes(sizes), modes, wallclock)
    if as_json:
        click.echo(json.dumps([r.as_dict() for r in rows], indent=2))
    elif as_csv:
        click.echo(report_csv(rows), nl=False)
    else:
        click.echo(format_report(rows))


# -- verify-examples ----------------------------------------------------------------

def _fixture_path(directory, name):
    if directory is not None:
        return Path(directory) / name
    return resources.files("fuzzlia.fixtures").joinpath(name)


def verify_examples(directory=None, tol: float = 1e-9) -> list[dict]:
    """Run the three worked example systems through both modes and check the BKS counts."""
    results = []
    for name, engine, expected in EXAMPLES:
        try:
            text = _fixture_path(directory, name).read_text(encoding="utf-8")
            raw = json.loads(text)
            system = load_system(raw)
        except (FuzzliaError, ValueError, OSError) as exc:
            for mode in MODES:
                results.append({"check": f"{engine} {mode} output", "fixture": name,
                                "passed": False, "message": f"validation: {exc}"})
            if engine == "bks":
                for mode in MODES:
                    results.append({"check": f"{engine} {mode} count", "fixture": name,
                                    "passed": False, "message": f"validation: {exc}"})
            continue
        for mode in MODES:
            try:
                out, rep = infer(system, raw.get("input"), engine, mode)
            except FuzzliaError as exc:
                results.append({"check": f"{engine} {mode} output", "fixture": name,
                                "passed": False, "message": str(exc)})
                continue
            ok = bool(np.allclose(out.memberships, expected, rtol=0, atol=tol))
            results.append({"check": f"{engine} {mode} output", "fixture": name, "passed": ok,
                            "got": out.as_list(), "expected": list(expected)})
            if engine == "bks":
                want = EXPECTED_COUNTS[mode]
                got = rep.opcount.total
                results.append({"check": f"{engine} {mode} count", "fixture": name,
                                "passed": got == want, "got": got, "expected": want,
                                "stages": rep.opcount.vector})
    order = [f"{e} {m} output" for _, e, _ in EXAMPLES for m in MODES]
    order += [f"bks {m} count" for m in MODES]
    results.sort(key=lambda r: order.index(r["check"]))
    return results


@main.command("verify-examples")
@click.option("--fixtures", "directory", default=None, type=click.Path(file_okay=False),
              help="Directory with replacement fixtures.")
@click.option("--json", "as_json", is_flag=True)
def cmd_verify_examples(directory, as_json):
    """Reproduce the worked examples; exit 0 only if every check passes."""
    results = verify_examples(directory)
    passed = all(r["passed"] for r in results)
    if as_json:
        click.echo(json.dumps({"passed": passed, "results": results}, indent=2))
    else:
        for r in results:
            tag = "PASS" if r["passed"] else "FAIL"
            if "message" in r:
                click.echo(f"{tag}  {r['check']}: {r['message']}")
            elif isinstance(r.get("got"), list):
                click.echo(f"{tag}  {r['check']}: [{fmt_vec(r['got'])}] "
                           f"expected [{fmt_vec(r['expected'])}]")
            else:
                extra = f" stages {r['stages']}" if "stages" in r else ""
                click.echo(f"{tag}  {r['check']}: {r['got']} expected {r['expected']}{extra}")
    sys.exit(EXIT_OK if passed else EXIT_PROPERTY)


if __name__ == "__main__":
    main()
