"""Experiment runner: generate instances, run every solver, compare against the exact oracle.

A bench config (YAML) lists instance generators with their seeds, the
algorithms to run and the eps values for the (2+eps) solver; see
``bench.example.yaml``. One record is produced per (instance, algorithm, eps).
Solver failures are logged and recorded on the row, never fatal.
"""
import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, fields
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

import pandas as pd

from .config import _merge, load_yaml
from .errors import InstanceTooLarge
from .generators import gen_instance
from .graph_core import format_rational, parse_rational, set_weight
from .obstructions import SearchBudget
from .svd_solver import exact_svd, five_approx, local_ratio_lower_bound, two_plus_eps

logger = logging.getLogger(__name__)

ALGORITHMS = ('exact', 'five', 'tpe')

BENCH_DEFAULTS: Dict[str, Any] = {
    'instances': [],
    'algorithms': list(ALGORITHMS),
    'epsilons': ['1'],
    'separator': 'exhaustive',
    'prune': False,
    'budget': 10 ** 7,
    'exact_limit': 16,
    'exhaustive_limit': 16,
    'base_size': 4,
    'min_pair_fraction': '1/10',
    'seed_limit': 64,
    'workers': 1,
    'record_runtime': False,
    'format': 'csv',
}


@dataclass
class ExperimentRecord:
    instance_id: str
    kind: str
    params: str
    seed: int
    n: int
    m: int
    algorithm: str
    epsilon: Optional[Fraction] = None
    k: Optional[int] = None
    weight: Optional[Fraction] = None
    exact_weight: Optional[Fraction] = None
    ratio: Optional[Fraction] = None
    lower_bound: Optional[Fraction] = None
    ratio_vs_lower_bound: Optional[Fraction] = None
    planted_weight: Optional[Fraction] = None
    family_size: Optional[int] = None
    runtime: Optional[float] = None
    error: str = ''


COLUMNS = [f.name for f in fields(ExperimentRecord)]


def _ratio(value: Optional[Fraction], reference: Optional[Fraction]) -> Optional[Fraction]:
    if value is None or reference is None:
        return None
    if reference == 0:
        # a zero optimum forces every bounded approximation to zero as well
        return Fraction(1) if value == 0 else None
    return value / reference


def _cell(value: Any) -> Any:
    if value is None:
        return ''
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, float):
        return f"{value:.6f}"
    return value


def _bound(algorithm: str, epsilon: Optional[Fraction]) -> Fraction:
    if algorithm == 'five':
        return Fraction(5)
    if algorithm == 'tpe':
        return 2 + epsilon
    return Fraction(1)


class BenchReport:
    def __init__(self, records: List[ExperimentRecord]):
        self.records = records

    def frame(self) -> pd.DataFrame:
        rows = [{k: _cell(v) for k, v in asdict(r).items()} for r in self.records]
        return pd.DataFrame(rows, columns=COLUMNS)

    def summary(self) -> List[Dict[str, Any]]:
        groups: Dict[Tuple[str, Optional[Fraction]], List[ExperimentRecord]] = {}
        for r in self.records:
            groups.setdefault((r.algorithm, r.epsilon), []).append(r)
        out = []
        for (algorithm, epsilon), recs in groups.items():
            ratios = [r.ratio for r in recs if r.ratio is not None]
            bound = _bound(algorithm, epsilon)
            out.append({
                'algorithm': algorithm,
                'epsilon': epsilon,
                'rows': len(recs),
                'failures': sum(1 for r in recs if r.error),
                'with_exact': len(ratios),
                'max_ratio': max(ratios) if ratios else None,
                'mean_ratio': sum(ratios, Fraction(0)) / len(ratios) if ratios else None,
                'bound': bound,
                'within_bound': all(q <= bound for q in ratios),
            })
        return out

    def summary_frame(self) -> pd.DataFrame:
        return pd.DataFrame([{k: _cell(v) for k, v in row.items()} for row in self.summary()])

    def to_csv(self) -> str:
        return self.frame().to_csv(index=False, lineterminator='\n')

    def to_json(self) -> str:
        payload = {
            'records': [{k: _cell(v) for k, v in asdict(r).items()} for r in self.records],
            'summary': [{k: _cell(v) for k, v in row.items()} for row in self.summary()],
        }
        return json.dumps(payload, indent=2) + "\n"

    def to_text(self) -> str:
        if not self.records:
            return "No experiment rows.\n"
        return (self.frame().to_string(index=False) + "\n\nSummary:\n"
                + self.summary_frame().to_string(index=False) + "\n")

    def render(self, fmt: str) -> str:
        if fmt == 'csv':
            return self.to_csv()
        if fmt == 'json':
            return self.to_json()
        if fmt == 'text':
            return self.to_text()
        raise ValueError(f"unknown report format {fmt!r}")


def load_bench_config(path: str, base: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """Bench defaults, then ``base`` (values taken from the solver config), then the bench file."""
    return _merge(_merge(BENCH_DEFAULTS, base or {}), load_yaml(path))


def expand_instances(cfg: Dict[str, Any]) -> List[Dict[str, Any]]:
    out = []
    for entry in cfg.get('instances') or []:
        if 'kind' not in entry:
            raise ValueError(f"instance entry without 'kind': {entry!r}")
        seeds = entry.get('seeds', [entry.get('seed', 0)])
        for seed in seeds:
            out.append({'kind': entry['kind'], 'params': dict(entry.get('params') or {}),
                        'seed': int(seed), 'weights': entry.get('weights', 'unit')})
    return out


def _params_text(params: Dict[str, Any]) -> str:
    return ",".join(f"{k}={params[k]}" for k in sorted(params))


def instance_label(entry: Dict[str, Any]) -> str:
    return f"{entry['kind']}[{_params_text(entry['params'])}]#s{entry['seed']}"


def _run_instance(index: int, entry: Dict[str, Any], cfg: Dict[str, Any]) -> List[ExperimentRecord]:
    iid = f"{index:04d}:{instance_label(entry)}"
    params = _params_text(entry['params'])
    try:
        inst = gen_instance(entry['kind'], entry['params'], entry['seed'], entry['weights'])
    except Exception as e:
        logger.exception("Error generating %s: %s", iid, e)
        return [ExperimentRecord(iid, entry['kind'], params, entry['seed'], 0, 0, algo,
                                 error=f"{type(e).__name__}: {e}") for algo in cfg['algorithms']]
    g, w = inst.graph, inst.weights

    exact_weight: Optional[Fraction] = None
    exact_error = ''
    if g.n <= cfg['exact_limit']:
        try:
            exact_weight = exact_svd(g, w, limit=cfg['exact_limit']).weight
        except Exception as e:
            logger.exception("Error running exact on %s: %s", iid, e)
            exact_error = f"{type(e).__name__}: {e}"
    else:
        exact_error = str(InstanceTooLarge('exact_svd', g.n, cfg['exact_limit']))
    lower = local_ratio_lower_bound(g, w)
    planted = set_weight(w, inst.planted) if inst.planted is not None else None

    records = []
    for algo in cfg['algorithms']:
        if algo not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {algo!r}, expected one of {ALGORITHMS}")
        for eps in ([parse_rational(e) for e in cfg['epsilons']] if algo == 'tpe' else [None]):
            rec = ExperimentRecord(iid, entry['kind'], params, entry['seed'], g.n, g.m, algo, epsilon=eps,
                                   exact_weight=exact_weight, lower_bound=lower, planted_weight=planted)
            started = time.perf_counter()
            try:
                if algo == 'exact':
                    if exact_weight is None:
                        raise RuntimeError(exact_error)
                    rec.weight = exact_weight
                elif algo == 'five':
                    rec.weight = five_approx(g, w, prune=cfg['prune']).weight
                else:
                    res = two_plus_eps(g, w, eps, separator=cfg['separator'],
                                       budget=SearchBudget(int(cfg['budget'])), prune=cfg['prune'],
                                       base_size=int(cfg['base_size']),
                                       min_pair_fraction=cfg['min_pair_fraction'],
                                       seed_limit=int(cfg['seed_limit']),
                                       exhaustive_limit=int(cfg['exhaustive_limit']))
                    rec.weight, rec.k, rec.family_size = res.weight, res.k_used, res.family_size
            except Exception as e:
                logger.exception("Error running %s on %s: %s", algo, iid, e)
                rec.error = f"{type(e).__name__}: {e}"
            if cfg['record_runtime']:
                rec.runtime = time.perf_counter() - started
            rec.ratio = _ratio(rec.weight, exact_weight)
            rec.ratio_vs_lower_bound = _ratio(rec.weight, lower)
            records.append(rec)
    return records


def run_experiment(config: Dict[str, Any]) -> BenchReport:
    cfg = _merge(BENCH_DEFAULTS, config)
    entries = expand_instances(cfg)
    workers = int(cfg['workers'])
    logger.info("Running %d instances x %s with %d worker(s)", len(entries), cfg['algorithms'], workers)

    def job(item):
        index, entry = item
        return _run_instance(index, entry, cfg)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_instance = list(pool.map(job, enumerate(entries)))
    else:
        per_instance = [job(item) for item in enumerate(entries)]
    report = BenchReport([r for recs in per_instance for r in recs])
    for row in report.summary():
        logger.info("%s eps=%s: %d rows, %d failures, max ratio %s (bound %s)", row['algorithm'],
                    row['epsilon'], row['rows'], row['failures'], row['max_ratio'], row['bound'])
    return report
