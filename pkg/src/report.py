"""Render solver, recognition and separator results as text, JSON or CSV.

Vertex ids are 1-based on output and weights are rational strings.
"""
import io
import json
from typing import Any, Dict, Iterable, List, Optional, Union

import pandas as pd

from .cs_separator import SeparatorCheck, SeparatorFamily
from .graph_core import format_rational
from .obstructions import PathObstruction
from .split_kernel import SmallObstruction, SplitCertificate
from .svd_solver import HittingSetResult

OUTPUT_FORMATS = ('text', 'json', 'csv')


def ids(vertices: Iterable[int]) -> List[int]:
    return [v + 1 for v in sorted(vertices)]


def _ordered_ids(vertices: Iterable[int]) -> List[int]:
    # obstruction vertices keep their cycle / path order
    return [v + 1 for v in vertices]


def _joined(vertices: Iterable[int]) -> str:
    return " ".join(str(v) for v in vertices)


def _check_format(fmt: str):
    if fmt not in OUTPUT_FORMATS:
        raise ValueError(f"unknown output format {fmt!r}, expected one of {OUTPUT_FORMATS}")


def result_to_dict(result: HittingSetResult) -> Dict[str, Any]:
    cut = result.chosen_cut
    return {
        'algorithm': result.algorithm,
        'weight': format_rational(result.weight),
        'x': ids(result.x),
        'clique': ids(result.certificate.clique),
        'stable': ids(result.certificate.stable),
        'k': result.k_used,
        'chosen_cut': None if cut is None else {'a': ids(cut.a), 'b': ids(cut.b)},
        'layers': [{'kind': layer.obstruction.kind, 'vertices': _ordered_ids(layer.obstruction.vertices),
                    't': format_rational(layer.t)} for layer in result.trace.layers],
        'zero_weight_initial': ids(result.trace.zero_weight_initial),
        'family_size': result.family_size,
    }


def render_result(result: HittingSetResult, fmt: str = 'text') -> str:
    _check_format(fmt)
    data = result_to_dict(result)
    if fmt == 'json':
        return json.dumps(data, indent=2) + "\n"
    if fmt == 'csv':
        row = {key: data[key] for key in ('algorithm', 'weight', 'k', 'family_size')}
        row['x'] = _joined(data['x'])
        row['layers'] = len(data['layers'])
        return pd.DataFrame([row]).to_csv(index=False, lineterminator='\n')
    lines = [f"Algorithm: {data['algorithm']}",
             f"Weight: {data['weight']}",
             f"X: {{{_joined(data['x'])}}}",
             f"Clique: {{{_joined(data['clique'])}}}",
             f"Stable: {{{_joined(data['stable'])}}}"]
    if data['k'] is not None:
        lines.append(f"k: {data['k']}")
    if data['chosen_cut'] is not None:
        lines.append(f"Chosen cut: A = {{{_joined(data['chosen_cut']['a'])}}}"
                     f" B = {{{_joined(data['chosen_cut']['b'])}}} (of {data['family_size']})")
    if data['zero_weight_initial']:
        lines.append(f"Zero-weight vertices: {{{_joined(data['zero_weight_initial'])}}}")
    if data['layers']:
        lines.append("\nLayers:")
        for layer in data['layers']:
            lines.append(f"- {layer['kind']} on {_joined(layer['vertices'])}  t = {layer['t']}")
    else:
        lines.append("\nNo layers.")
    return "\n".join(lines) + "\n"


def check_to_dict(found: Union[SplitCertificate, SmallObstruction, PathObstruction]) -> Dict[str, Any]:
    if isinstance(found, SplitCertificate):
        return {'split': True, 'clique': ids(found.clique), 'stable': ids(found.stable)}
    return {'split': False, 'obstruction': found.kind, 'vertices': _ordered_ids(found.vertices)}


def render_check(found: Union[SplitCertificate, SmallObstruction], fmt: str = 'text') -> str:
    _check_format(fmt)
    data = check_to_dict(found)
    if fmt == 'json':
        return json.dumps(data, indent=2) + "\n"
    if fmt == 'csv':
        flat = {k: _joined(v) if isinstance(v, list) else v for k, v in data.items()}
        return pd.DataFrame([flat]).to_csv(index=False, lineterminator='\n')
    if data['split']:
        return f"split\nClique: {{{_joined(data['clique'])}}}\nStable: {{{_joined(data['stable'])}}}\n"
    return f"not split\nInduced {data['obstruction']}: {_joined(data['vertices'])}\n"


def separator_check_to_dict(check: SeparatorCheck, family: Optional[SeparatorFamily] = None) -> Dict[str, Any]:
    data: Dict[str, Any] = {'ok': check.ok, 'pairs_checked': check.pairs_checked, 'counterexample': None}
    if check.counterexample is not None:
        k, s = check.counterexample
        data['counterexample'] = {'clique': ids(k), 'stable': ids(s)}
    if family is not None:
        data['family'] = family.stats()
    return data


def render_separator_check(check: SeparatorCheck, family: Optional[SeparatorFamily] = None,
                           fmt: str = 'text') -> str:
    _check_format(fmt)
    data = separator_check_to_dict(check, family)
    if fmt == 'json':
        return json.dumps(data, indent=2) + "\n"
    if fmt == 'csv':
        row = {'ok': data['ok'], 'pairs_checked': data['pairs_checked'],
               'clique': '', 'stable': ''}
        if data['counterexample'] is not None:
            row['clique'] = _joined(data['counterexample']['clique'])
            row['stable'] = _joined(data['counterexample']['stable'])
        return pd.DataFrame([row]).to_csv(index=False, lineterminator='\n')
    out = io.StringIO()
    if data['ok']:
        out.write(f"ok: all {data['pairs_checked']} (clique, stable set) pairs separated\n")
    else:
        ce = data['counterexample']
        out.write(f"counterexample after {data['pairs_checked']} pairs: "
                  f"clique {{{_joined(ce['clique'])}}} stable {{{_joined(ce['stable'])}}}\n")
    if family is not None:
        out.write(f"family: {family.size} cuts ({family.generator})\n")
    return out.getvalue()


def render_family_stats(family: SeparatorFamily, fmt: str = 'text') -> str:
    _check_format(fmt)
    stats = family.stats()
    stats['generator'] = family.generator
    if fmt == 'json':
        return json.dumps(stats, indent=2) + "\n"
    if fmt == 'csv':
        return pd.DataFrame([stats]).to_csv(index=False, lineterminator='\n')
    return (f"{family.generator} separator: {stats['size']} cuts, depth {stats['depth']}, "
            f"{stats['pairs']} pure pairs\n")
