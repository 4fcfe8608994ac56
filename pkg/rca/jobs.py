"""Jobs behind the management commands.

A job turns a declarative config (JSON file plus flag overrides) into a JSON
document.  Settings only enter here; the library modules take explicit
arguments.
"""
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from django.conf import settings
from django.utils import timezone

from . import category_o, kz
from .cherednik import CherednikParams, c_function_table, twist_shift
from .exceptions import ConfigError, NumericalError, PreconditionError, RcaError, UncertifiedError
from .forms import JobConfigForm
from .hecke import compare_with_monodromy, hecke_parameters, specht_matrices, specht_q
from .models import ComputationJob
from .reflection_group import build_group

logger = logging.getLogger(__name__)

COMMANDS = ('describe_group', 'c_function', 'blocks', 'char_l', 'decomp', 'kz')
DECOMPOSITION_ORIENTATION = "mults[i][j] = [Delta(irreps[i]) : L(irreps[j])]; rows are standards, columns simples"
SPECHT_WORDS = ('e', 'T1', 'T2', 'T1T2', 'T1T2T1')


@dataclass
class JobConfig:
    command: str
    group: object
    params: object
    N: int = None
    tol: float = kz.DEFAULT_TOL
    precision: int = 64
    format: str = 'json'
    out: str = ''
    allow_uncertified: bool = False
    irreps: list = None
    words: list = None
    specht: bool = False
    workers: int = 1
    margin: int = category_o.DEFAULT_MARGIN
    slack: int = category_o.DEFAULT_SLACK
    character_degree: int = 8
    digits: int = 12
    check_bound: float = 1e-6
    raw: dict = field(default_factory=dict)

    def selected_irreps(self):
        if not self.irreps:
            return list(self.group.irreps)
        labels = [E.label for E in self.group.irreps]
        for label in self.irreps:
            if label not in labels:
                raise ConfigError('irreps', f"{label!r} is not an irrep of {self.group.name}; choose from {labels}")
        return [self.group.irrep(label) for label in self.irreps]

    def header(self):
        return {
            'command': self.command,
            'group': self.group.name,
            'params': self.params.to_json(),
        }


def load_config_file(path):
    try:
        with open(path, encoding='utf-8') as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError('config', f"cannot read {path}: {exc}") from exc
    except ValueError as exc:
        raise ConfigError('config', f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError('config', f"{path} must hold a JSON object")
    return data


def _group_text(value):
    """Config files may spell the group as a dict; flags always use the short form."""
    if isinstance(value, dict):
        family, param = value.get('family'), value.get('param')
        suffix = '' if value.get('reflection_rep', True) else ':perm'
        return f"{family}:{param}{suffix}"
    return value


def build_config(command, data):
    """Validate ``data`` (config file merged with flags) into a JobConfig."""
    if command not in COMMANDS:
        raise ConfigError('command', f"unknown command {command!r}")
    data = {key: value for key, value in data.items() if value is not None}
    if 'group' not in data:
        raise ConfigError('group', "a group is required")
    form_data = dict(data)
    form_data['group'] = _group_text(data['group'])
    for key in ('irreps', 'words'):
        if isinstance(form_data.get(key), (list, tuple)):
            form_data[key] = (';' if key == 'irreps' else ',').join(form_data[key])
    form = JobConfigForm(form_data)
    if not form.is_valid():
        name, messages = next(iter(form.errors.items()))
        raise ConfigError('config' if name == '__all__' else name, ' '.join(messages))
    cleaned = form.cleaned_data
    group = build_group(cleaned['group'])
    params = CherednikParams.from_spec(group, cleaned['param'])
    config = JobConfig(
        command=command,
        group=group,
        params=params,
        N=cleaned.get('N'),
        tol=cleaned.get('tol') or settings.RCA_DEFAULT_TOL,
        precision=cleaned.get('precision') or settings.RCA_DEFAULT_PRECISION,
        format=cleaned['format'],
        out=cleaned.get('out') or '',
        allow_uncertified=cleaned.get('allow_uncertified', False),
        irreps=cleaned.get('irreps'),
        words=cleaned.get('words'),
        specht=cleaned.get('specht', False),
        workers=cleaned.get('workers') or settings.RCA_MAX_WORKERS,
        margin=settings.RCA_CERTIFICATION_MARGIN,
        slack=settings.RCA_TRUNCATION_SLACK,
        character_degree=settings.RCA_CHARACTER_DEGREE,
        digits=settings.RCA_OUTPUT_DIGITS,
        check_bound=settings.RCA_CHECK_BOUND,
        raw={key: value for key, value in data.items() if key not in ('out', 'format')},
    )
    config.raw['group'] = form_data['group']
    logger.debug("config for %s: %s", command, config.raw)
    return config


def _ordered_map(fn, items, workers):
    """fn over items on a thread pool; results keep the order of ``items``."""
    items = list(items)
    if workers > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(fn, items))
    return [fn(item) for item in items]


# ---------------- Commands ----------------

def cmd_describe_group(config):
    out = config.header()
    out.update(config.group.describe())
    return out


def cmd_c_function(config):
    group, params = config.group, config.params
    table = c_function_table(params)
    twists = {}
    for zeta in group.irreps:
        if zeta.is_linear() and zeta.index != 0:
            shift = twist_shift(params, zeta)
            twists[zeta.label] = None if shift is None else str(shift)
    out = config.header()
    out['c'] = {label: str(c) for label, c in table.items()}
    out['twist_shifts'] = twists
    out['semisimple'] = category_o.is_semisimple(params)
    return out


def cmd_blocks(config):
    partition = category_o.blocks(config.params)
    out = config.header()
    out.update(partition.to_json())
    out['semisimple'] = category_o.is_semisimple(config.params)
    return out


def _character_entry(E, N, config):
    params = config.params
    simple = category_o.simple_character(E, N, params, config.margin)
    standard = category_o.delta_character(E, N, params)
    entry = {
        'irrep': E.label,
        'c': str(c_function_table(params)[E.label]),
        'simple': simple.to_json(),
        'simple_dimensions': simple.dimensions().tolist(),
        'standard_dimensions': standard.dimensions().tolist(),
        'certified': simple.certified,
    }
    if N >= 8:
        d, certified = category_o.ch_variety_dim(simple)
        entry['ch_variety_dim'] = {'value': d, 'certified': certified and simple.certified}
    return entry


def cmd_char_l(config):
    N = config.character_degree if config.N is None else config.N
    irreps = config.selected_irreps()
    entries = _ordered_map(lambda E: _character_entry(E, N, config), irreps, config.workers)
    certified = all(entry['certified'] for entry in entries)
    if not certified and not config.allow_uncertified:
        raise UncertifiedError(
            f"N={N} is too small to certify L({', '.join(e['irrep'] for e in entries if not e['certified'])})")
    out = config.header()
    out['N'] = N
    out['certified'] = certified
    out['characters'] = entries
    return out


def cmd_decomp(config):
    params = config.params
    partition = category_o.blocks(params)
    wanted = {E.label for E in config.selected_irreps()}
    matrices = []
    for block in partition.blocks:
        if not wanted.intersection(block):
            continue
        N = config.N
        if N is None:
            N = category_o.default_degree(block, partition, config.slack)
        matrix = category_o.decomposition_matrix(
            block, N, params, margin=config.margin, allow_uncertified=config.allow_uncertified,
            workers=config.workers, partition=partition)
        matrices.append(matrix.to_json())
    out = config.header()
    out['orientation'] = DECOMPOSITION_ORIENTATION
    out['certified'] = all(all(all(row) for row in m['certified']) for m in matrices)
    out['blocks'] = matrices
    return out


def _default_words(size):
    if size >= 2:
        return list(SPECHT_WORDS)
    return ['e', 'T1']


def check_bound(config):
    """Residual bound for the monodromy checks; it grows linearly once tol exceeds the default."""
    return config.check_bound * max(1.0, config.tol / kz.DEFAULT_TOL)


def _monodromy_checks(rep, conn, containment, config):
    bound = check_bound(config)
    values = {
        'hecke_relation': max(rep.hecke_residuals, default=0.0),
        'eigenvalue_containment': containment,
    }
    if len(rep.generators) >= 2:
        values['braid_relation'] = rep.braid_residual
    checks = {
        name: {
            'value': kz.float_digits(value, config.digits),
            'bound': bound,
            'status': 'PASS' if value < bound else 'FAIL',
        }
        for name, value in values.items()
    }
    # flatness does not depend on the integrator tolerance
    checks['flatness'] = {
        'value': kz.float_digits(conn.flatness_residual, config.digits),
        'bound': config.check_bound,
        'status': 'PASS' if conn.flatness_residual < config.check_bound else 'FAIL',
    }
    return checks


def _monodromy_entry(E, config):
    group, params = config.group, config.params
    conn = kz.assemble_connection(E, params, config.precision)
    rep = kz.monodromy_representation(conn, config.tol)
    entry = rep.to_json(group, config.digits)
    containment = kz.eigenvalue_containment(rep, params)
    entry['flatness_residual'] = kz.float_digits(conn.flatness_residual, config.digits)
    entry['eigenvalue_distance'] = kz.float_digits(containment, config.digits)
    entry['checks'] = _monodromy_checks(rep, conn, containment, config)
    words = config.words or _default_words(len(rep.generators))
    entry['words'] = list(words)
    entry['traces'] = [kz.complex_pair(t, config.digits) for t in kz.monodromy_character(rep, words)]
    if group.rank == 1:
        expected = kz.rank_one_closed_form(E, params, config.precision)
        difference = float(abs(rep.matrices[0][0, 0] - expected))
        entry['closed_form'] = {
            'expected': kz.complex_pair(expected, config.digits),
            'difference': kz.float_digits(difference, config.digits),
            'status': 'PASS' if difference < 1e-6 else 'FAIL',
        }
    if config.specht:
        if group.family != 'symmetric' or E.partition is None:
            raise PreconditionError("the Specht comparison is available for symmetric groups only")
        oracle = specht_matrices(E.partition, specht_q(params, config.precision), config.precision)
        entry['specht'] = compare_with_monodromy(rep, oracle, words, digits=config.digits)
    return entry


def cmd_kz(config):
    entries = _ordered_map(lambda E: _monodromy_entry(E, config), config.selected_irreps(), config.workers)
    out = config.header()
    out['orientation'] = kz.ORIENTATION
    out['tol'] = config.tol
    out['precision'] = config.precision
    out['hecke_roots'] = hecke_parameters(config.params, config.precision).to_json(config.digits)
    out['representations'] = entries
    failed = []
    for entry in entries:
        statuses = {name: check['status'] for name, check in entry['checks'].items()}
        for extra in ('closed_form', 'specht'):
            if extra in entry:
                statuses[extra] = entry[extra]['status']
        failed += [f"{name} for {entry['irrep']}" for name, status in statuses.items() if status != 'PASS']
    out['status'] = 'FAIL' if failed else 'PASS'
    out['certified'] = not failed
    if failed and not config.allow_uncertified:
        raise NumericalError(f"monodromy checks failed: {', '.join(failed)}")
    if failed:
        logger.warning("monodromy checks failed: %s", ', '.join(failed))
    return out


HANDLERS = {
    'describe_group': cmd_describe_group,
    'c_function': cmd_c_function,
    'blocks': cmd_blocks,
    'char_l': cmd_char_l,
    'decomp': cmd_decomp,
    'kz': cmd_kz,
}


def run(config):
    logger.info("running %s on %s", config.command, config.group.name)
    result = HANDLERS[config.command](config)
    logger.info("%s on %s finished", config.command, config.group.name)
    return result


# ---------------- Recording ----------------

def start_job(config):
    return ComputationJob.objects.create(command=config.command, config=config.raw, status='running')


def finish_job(job, result=None, error=None):
    job.finished_at = timezone.now()
    if error is None:
        job.result = result
        job.certified = bool(result.get('certified', True))
        job.status = 'done' if job.certified else 'uncertified'
        job.exit_code = 0
    else:
        job.error_message = str(error)
        job.exit_code = getattr(error, 'exit_code', 1)
        job.status = 'uncertified' if isinstance(error, UncertifiedError) else 'error'
        job.certified = not isinstance(error, UncertifiedError)
    job.save()
    return job


def run_recorded(config):
    """Run ``config`` and keep a ComputationJob row whatever the outcome."""
    job = start_job(config)
    try:
        result = run(config)
    except RcaError as exc:
        finish_job(job, error=exc)
        raise
    finish_job(job, result)
    return result, job
