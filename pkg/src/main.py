import argparse
import logging
import sys
from typing import Dict, List, Optional

from dotenv import load_dotenv

from src.bench import load_bench_config, run_experiment
from src.config import load_config
from src.cs_separator import verify_separator
from src.errors import BudgetExceeded, InstanceParseError, InstanceTooLarge, NotAHittingSet
from src.generators import GENERATOR_KINDS, WEIGHT_MODES, gen_instance
from src.graph_core import parse_rational
from src.instance_io import format_family, parse_family, read_instance, write_instance
from src.obstructions import SearchBudget
from src.report import OUTPUT_FORMATS, render_check, render_family_stats, render_result, render_separator_check
from src.split_kernel import find_small_obstruction, find_split_partition
from src.svd_solver import SEPARATOR_STRATEGIES, build_separator, exact_svd, five_approx, two_plus_eps

logger = logging.getLogger(__name__)

LOG_FORMAT = '[%(asctime)s] %(levelname)s %(name)s: %(message)s'

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_SOLVER = 3


class CliParser(argparse.ArgumentParser):
    """Usage errors exit with 1, not argparse's default 2 (reserved for parse errors)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=OUTPUT_FORMATS, default=None, help='Output format (default from config)')
    common.add_argument('--config', default=None, help='Path to config file (default config.yaml if present)')
    common.add_argument('--verbose', action='store_true', help='Debug logging (local-ratio layers, cut costs)')

    parser = CliParser(prog='svd', description='Split Vertex Deletion: exact, 5- and (2+eps)-approximation')
    sub = parser.add_subparsers(dest='command', required=True, parser_class=CliParser)

    p = sub.add_parser('check', parents=[common], help='Recognize a split graph: certificate or obstruction')
    p.add_argument('instance', help='Instance file (p svd n m / w / e lines)')

    p = sub.add_parser('solve', parents=[common], help='Compute a hitting set X so that G - X is split')
    p.add_argument('instance')
    p.add_argument('--algo', choices=('exact', 'five', 'tpe'), default='tpe')
    p.add_argument('--epsilon', default=None, help='Rational eps > 0, e.g. 1 or 1/2 (tpe only)')
    p.add_argument('--separator', choices=SEPARATOR_STRATEGIES, default=None)
    p.add_argument('--prune', action='store_true', default=None, help='Drop redundant vertices from X')
    p.add_argument('--budget', type=int, default=None, help='Max search nodes for the induced path search')
    p.add_argument('--workers', type=int, default=None, help='Threads used to score separator cuts')

    p = sub.add_parser('separator', help='Build or verify clique-stable set separators')
    sep = p.add_subparsers(dest='action', required=True, parser_class=CliParser)
    b = sep.add_parser('build', parents=[common], help='Write a separator family for an instance')
    b.add_argument('instance')
    b.add_argument('--strategy', choices=SEPARATOR_STRATEGIES, default=None)
    b.add_argument('--out', default=None, help='Family file (stdout if omitted)')
    v = sep.add_parser('verify', parents=[common], help='Check a family file against an instance')
    v.add_argument('instance')
    v.add_argument('family')
    v.add_argument('--mode', choices=('exhaustive', 'sampled'), default='exhaustive')
    v.add_argument('--count', type=int, default=1000, help='Samples in sampled mode')
    v.add_argument('--seed', type=int, default=0)

    p = sub.add_parser('gen', parents=[common], help='Generate a seeded instance')
    p.add_argument('kind', choices=GENERATOR_KINDS)
    p.add_argument('params', nargs='*', help='Generator parameters as key=value, e.g. n=10 p=1/3')
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--weights', choices=WEIGHT_MODES, default='unit')
    p.add_argument('--out', default=None)

    p = sub.add_parser('bench', parents=[common], help='Run an experiment config and report ratios')
    p.add_argument('bench_config', help='Bench YAML (see bench.example.yaml)')
    p.add_argument('--workers', type=int, default=None)
    p.add_argument('--out', default=None)
    return parser


def _key_values(pairs: List[str]) -> Dict[str, str]:
    out = {}
    for pair in pairs:
        key, sep, value = pair.partition('=')
        if not sep or not key:
            raise ValueError(f"expected key=value, got {pair!r}")
        out[key] = value
    return out


def _emit(text: str, out: Optional[str] = None):
    if out:
        with open(out, 'w', encoding='utf-8') as f:
            f.write(text)
        logger.info("Wrote %s", out)
    else:
        sys.stdout.write(text)


def _pick(cli_value, config_value):
    return config_value if cli_value is None else cli_value


def cmd_check(args, config) -> int:
    g, _ = read_instance(args.instance)
    found = find_split_partition(g) or find_small_obstruction(g)
    _emit(render_check(found, args.format))
    return EXIT_OK


def cmd_solve(args, config) -> int:
    g, w = read_instance(args.instance)
    solver, limits, sep_cfg = config['solver'], config['limits'], config['separator']
    if args.algo == 'exact':
        result = exact_svd(g, w, limit=int(limits['exact_svd']))
    elif args.algo == 'five':
        result = five_approx(g, w, prune=bool(_pick(args.prune, solver['prune'])))
    else:
        result = two_plus_eps(
            g, w, parse_rational(str(_pick(args.epsilon, solver['epsilon']))),
            separator=_pick(args.separator, solver['separator']),
            budget=SearchBudget(int(_pick(args.budget, solver['budget']))),
            prune=bool(_pick(args.prune, solver['prune'])),
            workers=int(_pick(args.workers, solver['workers'])),
            base_size=int(sep_cfg['base_size']),
            min_pair_fraction=sep_cfg['min_pair_fraction'],
            seed_limit=int(sep_cfg['seed_limit']),
            exhaustive_limit=int(limits['exhaustive_separator']))
    logger.info("%s on %s: weight %s, |X| = %d", result.algorithm, args.instance, result.weight, len(result.x))
    _emit(render_result(result, args.format))
    return EXIT_OK


def cmd_separator(args, config) -> int:
    g, _ = read_instance(args.instance)
    sep_cfg, limits = config['separator'], config['limits']
    if args.action == 'build':
        family = build_separator(g, _pick(args.strategy, config['solver']['separator']),
                                 base_size=int(sep_cfg['base_size']),
                                 min_pair_fraction=sep_cfg['min_pair_fraction'],
                                 seed_limit=int(sep_cfg['seed_limit']),
                                 exhaustive_limit=int(limits['exhaustive_separator']))
        if args.out:
            _emit(format_family(family), args.out)
            sys.stdout.write(render_family_stats(family, args.format))
        else:
            _emit(format_family(family))
        return EXIT_OK
    with open(args.family, 'r', encoding='utf-8') as f:
        family = parse_family(f.read(), g.n)
    check = verify_separator(g, family, mode=args.mode, count=args.count, seed=args.seed,
                             limit=int(limits['verify_exhaustive']))
    _emit(render_separator_check(check, family, args.format))
    return EXIT_OK if check.ok else EXIT_SOLVER


def cmd_gen(args, config) -> int:
    params = _key_values(args.params)
    inst = gen_instance(args.kind, params, seed=args.seed, weights=args.weights)
    comments = [f"generated by gen {args.kind} {' '.join(args.params)} --seed {args.seed} --weights {args.weights}"]
    if inst.planted is not None:
        comments.append("planted " + " ".join(str(v + 1) for v in inst.planted))
    _emit(write_instance(inst.graph, inst.weights, comments), args.out)
    return EXIT_OK


def cmd_bench(args, config) -> int:
    bench_cfg = load_bench_config(args.bench_config, base={'workers': int(config['solver']['workers'])})
    if args.workers is not None:
        bench_cfg['workers'] = args.workers
    report = run_experiment(bench_cfg)
    _emit(report.render(args.format or bench_cfg['format']), args.out)
    return EXIT_OK


COMMANDS = {
    'check': cmd_check,
    'solve': cmd_solve,
    'separator': cmd_separator,
    'gen': cmd_gen,
    'bench': cmd_bench,
}


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        config = load_config(args.config)
    except FileNotFoundError as e:
        logging.basicConfig(level=logging.INFO, format=LOG_FORMAT, stream=sys.stderr)
        logger.error("%s", e)
        return EXIT_PARSE
    level = logging.DEBUG if args.verbose else getattr(logging, str(config['logging']['level']).upper(), logging.INFO)
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)
    logging.getLogger().setLevel(level)
    if args.format is None and args.command != 'bench':
        args.format = config['output']['format']

    try:
        return COMMANDS[args.command](args, config)
    except (InstanceParseError, FileNotFoundError) as e:
        logger.error("%s", e)
        return EXIT_PARSE
    except (InstanceTooLarge, BudgetExceeded, NotAHittingSet) as e:
        logger.error("Solver failed: %s", e)
        return EXIT_SOLVER
    except ValueError as e:
        logger.error("%s", e)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
