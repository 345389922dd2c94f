"""Command-line interface: ``reforcite {simulate,predict,fit,compare,stats}``.

Every option can also come from a JSON file given with ``--config``; keys
are the long option names (dashes or underscores). Explicit flags win over
the file. Outputs go to ``--out`` (created if needed) together with a
``metadata.json`` holding the resolved configuration.

Exit codes: 0 success, 2 usage or parameter error, 3 data error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import platform
import sys
from pathlib import Path

import numpy as np
import scipy

from reforcite import __version__, fitting, meanfield, metrics
from reforcite.graph import SnapshotSchedule
from reforcite.ingest import EdgeListError, load_graph, observed_stats, write_edge_list
from reforcite.models import CP, CPT, PA, ForestFire, RefOrCite1, RefOrCite2, grow, params_to_dict

log = logging.getLogger("reforcite")

EXIT_USAGE = 2
EXIT_DATA = 3

DEFAULTS = {
    "seed": 0,
    "snapshot_step": 5000,
    "sample_sources": 10,
    "o_grid": 100,
    "order": "first-appearance",
    "exact_diameter": False,
    "grid_step": 0.01,
    "t_min": 2,
    "t_max": 100000,
    "points": 50,
    "k0": 1,
    "quantity": "avg-degree",
    "max_edge_factor": 20.0,
}
REALIZATION_DEFAULTS = {"simulate": 1, "compare": 30, "fit": 3}


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


def _add_model_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("model")
    g.add_argument("--model", choices=["reforcite1", "reforcite2", "cp", "cpt", "ff", "pa"])
    g.add_argument("--p", type=float)
    g.add_argument("--p1", type=float)
    g.add_argument("--p2", type=float)
    g.add_argument("--alpha", type=float)
    g.add_argument("--beta", type=float)
    g.add_argument("--pa", type=float, help="forest fire forward burning probability")
    g.add_argument("--b", type=float, help="forest fire backward burning ratio")
    g.add_argument("--m", type=int, help="preferential attachment edges per node")
    g.add_argument("--degree-sequence", help="file of out-degrees (one per line) for cpt")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file mirroring these options")
    p.add_argument("--out", help="output directory")
    p.add_argument("--seed", type=int)
    p.add_argument("-v", "--verbose", action="store_true")


def _add_measure_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--snapshot-step", type=int)
    p.add_argument("--sample-sources", type=int)
    p.add_argument("--o-grid", help="number of evenly spaced points, or comma-separated fractions")
    p.add_argument("--exact-diameter", action="store_const", const=True)


def _add_data_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--data", help="edge-list file (FromNodeId ToNodeId)")
    p.add_argument("--order", help="first-appearance | numeric | timestamps:<file> | given:<file>")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="reforcite", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="grow model networks and measure them")
    _add_common(p)
    _add_model_flags(p)
    _add_measure_flags(p)
    p.add_argument("--n", type=int)
    p.add_argument("--realizations", type=int)
    p.add_argument("--data", help="edge list whose out-degree sequence feeds cpt")
    p.add_argument("--order")

    p = sub.add_parser("predict", help="mean-field prediction series as CSV")
    _add_common(p)
    _add_model_flags(p)
    p.add_argument("--quantity", choices=["avg-degree", "avg-in-degree", "triangles", "rescaled-ccdf",
                                          "degree-ccdf", "expected-avg-degree", "expected-triangles"])
    p.add_argument("--t-min", type=float)
    p.add_argument("--t-max", type=float)
    p.add_argument("--points", type=int)
    p.add_argument("--k0", type=float)

    p = sub.add_parser("fit", help="grid-search model parameters against an edge list")
    _add_common(p)
    _add_data_flags(p)
    p.add_argument("--model", choices=["reforcite1", "reforcite2", "cp", "cpt", "ff"])
    p.add_argument("--grid-step", type=float)
    p.add_argument("--realizations", type=int)
    p.add_argument("--p-sum", type=float, help="fix p1 + p2 instead of solving it from the data")
    p.add_argument("--alpha-grid", help="comma-separated alpha values (cpt)")
    p.add_argument("--beta-grid", help="comma-separated beta values (cpt)")
    p.add_argument("--pa-grid", help="comma-separated p_a values (ff)")
    p.add_argument("--b-grid", help="comma-separated b values (ff)")
    p.add_argument("--max-edge-factor", type=float)
    p.add_argument("--degree-sequence")

    p = sub.add_parser("compare", help="compare model networks with an observed network")
    _add_common(p)
    _add_data_flags(p)
    _add_model_flags(p)
    _add_measure_flags(p)
    p.add_argument("--against", help="compare with this edge list instead of simulating")
    p.add_argument("--realizations", type=int)

    p = sub.add_parser("stats", help="observed statistics of an edge list")
    _add_common(p)
    _add_data_flags(p)
    return parser


def resolve(args: argparse.Namespace) -> dict:
    """Merge defaults, the JSON config file and explicit flags (in that order of precedence)."""
    cfg = dict(DEFAULTS)
    cfg["realizations"] = REALIZATION_DEFAULTS.get(args.command)
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                from_file = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise UsageError(f"cannot read config {args.config}: {e}") from None
        for k, v in from_file.items():
            cfg[k.replace("-", "_")] = v
    for k, v in vars(args).items():
        if v is not None:
            cfg[k] = v
    cfg.pop("config", None)
    return cfg


def _floats(s) -> list[float]:
    if isinstance(s, (list, tuple)):
        return [float(x) for x in s]
    return [float(x) for x in str(s).split(",") if x.strip()]


def _o_grid(v) -> np.ndarray:
    if isinstance(v, (int, float)) or (isinstance(v, str) and "," not in v and "." not in v):
        return metrics.default_o_grid(int(v))
    return np.asarray(_floats(v))


def _need(cfg: dict, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if cfg.get(n) is None]
    if missing:
        raise UsageError(f"{cfg.get('model') or cfg['command']}: missing {', '.join(missing)}")
    return [cfg[n] for n in names]


def _load(cfg: dict, key: str = "data"):
    path = cfg.get(key)
    if path is None:
        raise UsageError(f"--{key} is required")
    order = cfg.get("order") or "first-appearance"
    strategy, _, companion = order.partition(":")
    try:
        return load_graph(path, strategy, companion or None)
    except OSError as e:
        raise DataError(str(e)) from None


def _read_sequence(path) -> list[int]:
    try:
        with open(path, encoding="utf-8") as fh:
            return [int(s) for s in fh.read().split()]
    except (OSError, ValueError) as e:
        raise DataError(f"cannot read degree sequence {path}: {e}") from None


def model_params(cfg: dict, n: int | None = None, observed=None):
    kind = cfg.get("model")
    if kind is None:
        raise UsageError("--model is required")
    if kind == "reforcite1":
        return RefOrCite1(*_need(cfg, "p"))
    if kind == "reforcite2":
        return RefOrCite2(*_need(cfg, "p1", "p2"))
    if kind == "cp":
        return CP(*_need(cfg, "p"))
    if kind == "ff":
        return ForestFire(*_need(cfg, "pa", "b"))
    if kind == "pa":
        return PA(*_need(cfg, "m"))
    if kind == "cpt":
        alpha, beta = _need(cfg, "alpha", "beta")
        if cfg.get("degree_sequence"):
            seq = _read_sequence(cfg["degree_sequence"])
        elif observed is not None:
            seq = observed.out_degrees().tolist()
        else:
            raise UsageError("cpt needs --degree-sequence or --data")
        return CPT(alpha, beta, tuple(seq))
    raise UsageError(f"unknown model {kind!r}")


def _outdir(cfg: dict) -> Path | None:
    if not cfg.get("out"):
        return None
    d = Path(cfg["out"])
    d.mkdir(parents=True, exist_ok=True)
    return d


def _metadata(cfg: dict, **extra) -> dict:
    meta = {
        "config": {k: v for k, v in sorted(cfg.items()) if k != "verbose"},
        "versions": {
            "reforcite": __version__,
            "python": platform.python_version(),
            "numpy": np.__version__,
            "scipy": scipy.__version__,
        },
    }
    meta.update(extra)
    return meta


def _write_json(path: Path, obj) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True, default=_jsonable)
        fh.write("\n")


def _jsonable(x):
    if isinstance(x, np.generic):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, tuple):
        return list(x)
    raise TypeError(f"not JSON serializable: {type(x).__name__}")


def _write_csv(path: Path | None, header, rows) -> None:
    fh = open(path, "w", encoding="utf-8", newline="") if path else sys.stdout
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    finally:
        if path:
            fh.close()


def cmd_simulate(cfg: dict) -> int:
    (n,) = _need(cfg, "n")
    observed = _load(cfg).graph if cfg.get("model") == "cpt" and cfg.get("data") else None
    params = model_params(cfg, n, observed)
    out = _outdir(cfg)
    if out is None:
        raise UsageError("--out is required")
    schedule = SnapshotSchedule(int(cfg["snapshot_step"]))
    grid = _o_grid(cfg["o_grid"])
    reps = int(cfg["realizations"])
    seeds = np.random.SeedSequence(int(cfg["seed"])).spawn(reps)
    for r, ss in enumerate(seeds):
        d = out if reps == 1 else out / f"run_{r:03d}"
        d.mkdir(parents=True, exist_ok=True)
        g = grow(params, int(n), np.random.default_rng(ss))
        s = metrics.summarize(g, schedule, int(cfg["sample_sources"]), grid,
                              seed=np.random.default_rng(ss.spawn(1)[0]), exact_diameter=bool(cfg["exact_diameter"]))
        write_edge_list(g, d / "edges.txt")
        _write_csv(d / "degree_histogram.csv", ["degree", "count"], s.in_dist.rows())
        _write_csv(d / "diameters.csv", ["n_nodes", "diameter"], s.diameters)
        _write_csv(d / "obsolescence.csv", ["o", "r"], s.obsolescence.points)
        _write_json(d / "summary.json", {
            "n": g.n, "m": g.n_edges, "avg_degree": 2 * g.n_edges / g.n, "triangles": s.triangles,
            "h_index": s.h_index, "avg_diameter": s.avg_diameter,
        })
        _write_json(d / "metadata.json", _metadata(cfg, params=params_to_dict(params), realization=r))
        log.info("run %d: %r, %d triangles", r, g, s.triangles)
    return 0


def cmd_predict(cfg: dict) -> int:
    q = cfg["quantity"]
    pts = int(cfg["points"])
    if q in ("rescaled-ccdf", "degree-ccdf"):
        lo, hi = max(1.0, float(cfg["t_min"])), float(cfg["t_max"])
    else:
        lo, hi = float(cfg["t_min"]), float(cfg["t_max"])
    if not lo <= hi:
        raise UsageError("--t-min must not exceed --t-max")
    xs = np.unique(np.round(np.geomspace(lo, hi, pts), 6))
    try:
        if q == "avg-degree":
            (p,) = _need(cfg, "p")
            rows, header = zip(xs, meanfield.avg_degree(xs, p)), ["t", "avg_degree"]
        elif q == "avg-in-degree":
            p1, p2 = _need(cfg, "p1", "p2")
            rows, header = zip(xs, meanfield.avg_in_degree(xs, p1, p2)), ["t", "avg_in_degree"]
        elif q == "triangles":
            (p,) = _need(cfg, "p")
            rows, header = zip(xs, meanfield.triangle_count(xs, p)), ["t", "triangles"]
        elif q == "rescaled-ccdf":
            (p,) = _need(cfg, "p")
            rows, header = zip(xs, meanfield.ccdf_rescaled(xs, p)), ["x", "ccdf"]
        elif q == "degree-ccdf":
            (p,) = _need(cfg, "p")
            k0 = float(cfg["k0"])
            ks = xs[xs >= k0]
            rows, header = zip(ks, meanfield.degree_ccdf(ks, k0, p)), ["k", "ccdf"]
        elif q in ("expected-avg-degree", "expected-triangles"):
            (p,) = _need(cfg, "p")
            kbar, tri = meanfield.expected_series(int(hi), p)
            ts = np.unique(xs.astype(int))
            ts = ts[ts >= 1]
            series = kbar if q == "expected-avg-degree" else tri
            rows, header = zip(ts, series[ts - 1]), ["t", q.removeprefix("expected-").replace("-", "_")]
        else:
            raise UsageError(f"unknown quantity {q!r}")
    except ValueError as e:
        raise UsageError(str(e)) from None
    out = _outdir(cfg)
    _write_csv(out / "prediction.csv" if out else None, header, [(float(a), float(b)) for a, b in rows])
    if out:
        _write_json(out / "metadata.json", _metadata(cfg))
    return 0


def cmd_fit(cfg: dict) -> int:
    loaded = _load(cfg)
    g = loaded.graph
    kind = cfg.get("model")
    if kind is None:
        raise UsageError("--model is required")
    target = metrics.in_degree_distribution(g)
    fc = fitting.FitConfig(target, g.n, float(cfg["grid_step"]), int(cfg["realizations"]), int(cfg["seed"]),
                           cfg.get("max_edge_factor"))
    extra = {}
    if kind in ("reforcite1", "cp"):
        res = fitting.fit_single_parameter(kind, fc)
    elif kind == "reforcite2":
        c = cfg.get("p_sum")
        if c is None:
            c = fitting.solve_p_sum(g.n_edges / g.n, g.n)
        extra["p_sum"] = c
        res = fitting.fit_reforcite2(fc, float(c))
    elif kind == "cpt":
        seq = _read_sequence(cfg["degree_sequence"]) if cfg.get("degree_sequence") else g.out_degrees().tolist()
        res = fitting.fit_cpt(fc, _floats(cfg.get("alpha_grid") or "-1"), _floats(cfg.get("beta_grid") or "0.99"), seq)
    elif kind == "ff":
        res = fitting.fit_forest_fire(fc, _floats(cfg.get("pa_grid") or "0.001,0.01,0.03,0.05"),
                                      _floats(cfg.get("b_grid") or "1,2,10"))
    else:
        raise UsageError(f"cannot fit model {kind!r}")
    result = {"best": params_to_dict(res.model), "l1": res.l1, **extra}
    out = _outdir(cfg)
    if out:
        _write_json(out / "fit.json", result)
        names = [k for k in params_to_dict(res.model) if k not in ("model", "out_degree_sequence_length")]
        _write_csv(out / "grid_trace.csv", names + ["l1"],
                   [[getattr(pr, k) for k in names] + [l1] for pr, l1 in res.grid_trace])
        _write_json(out / "metadata.json", _metadata(cfg))
    else:
        json.dump(result, sys.stdout, indent=2, sort_keys=True, default=_jsonable)
        sys.stdout.write("\n")
    return 0


def cmd_compare(cfg: dict) -> int:
    loaded = _load(cfg)
    obs = loaded.graph
    schedule = SnapshotSchedule(int(cfg["snapshot_step"]))
    grid = _o_grid(cfg["o_grid"])
    kw = dict(schedule=schedule, sample_sources=int(cfg["sample_sources"]), o_grid=grid,
              exact_diameter=bool(cfg["exact_diameter"]))
    master = np.random.SeedSequence(int(cfg["seed"]))
    obs_seed, sim_seed = master.spawn(2)
    obs_summary = metrics.summarize(obs, seed=np.random.default_rng(obs_seed), **kw)
    reports = []
    if cfg.get("against"):
        other = _load(cfg, "against").graph
        reports.append(metrics.evaluate(obs_summary, metrics.summarize(other, seed=np.random.default_rng(sim_seed), **kw)))
        params_desc = {"against": cfg["against"]}
    else:
        params = model_params(cfg, obs.n, obs)
        params_desc = params_to_dict(params)
        for ss in sim_seed.spawn(int(cfg["realizations"])):
            grow_ss, measure_ss = ss.spawn(2)
            g = grow(params, obs.n, np.random.default_rng(grow_ss))
            reports.append(metrics.evaluate(obs_summary, metrics.summarize(g, seed=np.random.default_rng(measure_ss), **kw)))
    keys = ["l1_error", "triangle_ratio", "diameter_ratio", "h_index_ratio"]
    agg = {k: {"mean": float(np.mean([getattr(r, k) for r in reports])),
               "std": float(np.std([getattr(r, k) for r in reports]))} for k in keys}
    result = {
        "model": params_desc,
        "observed": {"n": obs.n, "m": obs.n_edges, "triangles": obs_summary.triangles,
                     "avg_diameter": obs_summary.avg_diameter, "h_index": obs_summary.h_index,
                     "forward_edges": loaded.n_forward},
        "summary": agg,
        "realizations": [r.to_dict() for r in reports],
    }
    out = _outdir(cfg)
    if out:
        _write_json(out / "report.json", result)
        mean_r = np.mean([r.obsolescence.r for r in reports], axis=0)
        _write_csv(out / "obsolescence.csv", ["o", "r_observed", "r_model_mean"],
                   zip(grid.tolist(), obs_summary.obsolescence.r.tolist(), mean_r.tolist()))
        _write_json(out / "metadata.json", _metadata(cfg))
    else:
        json.dump({k: v for k, v in result.items() if k != "realizations"}, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
    return 0


def cmd_stats(cfg: dict) -> int:
    loaded = _load(cfg)
    st = observed_stats(loaded.graph)
    d = st.to_dict()
    d.update(forward_edges=loaded.n_forward, duplicate_edges=loaded.n_duplicates, self_loops=loaded.n_self_loops)
    out = _outdir(cfg)
    if out:
        _write_json(out / "stats.json", d)
        _write_csv(out / "degree_histogram.csv", ["degree", "count"], st.in_degree_distribution.rows())
        _write_csv(out / "out_degree_sequence.csv", ["node", "out_degree"], enumerate(st.out_degree_sequence))
    else:
        json.dump(d, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
    return 0


COMMANDS = {"simulate": cmd_simulate, "predict": cmd_predict, "fit": cmd_fit, "compare": cmd_compare,
            "stats": cmd_stats}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = resolve(args)
        return COMMANDS[args.command](cfg)
    except (UsageError, ValueError) as e:
        if isinstance(e, EdgeListError):
            print(f"reforcite: data error: {e}", file=sys.stderr)
            return EXIT_DATA
        print(f"reforcite: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as e:
        print(f"reforcite: data error: {e}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
