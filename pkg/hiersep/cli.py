# Copyright 2026 The hiersep Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

# pylint:disable=line-too-long
# pyformat: disable
r"""Decides hierarchy queries read from JSON files and writes JSON reports.

A query file looks like:

  {
    "alphabet": ["a", "b"],
    "languages": {"L1": {"regex": "(aa)*"},
                  "L2": {"dfa": {"states": ["p", "q"],
                                 "delta": {"p": {"a": "q"}, "q": {"a": "p"}},
                                 "initial": "p", "accepting": ["q"]}}},
    "task": "separate",
    "level": "st1",
    "args": ["L1", "L2"],
    "options": {"trace": true, "guards": {"max_n": 8}}
  }

Usage:

python -m hiersep.cli \
  --input=query.json \
  --level=st2 \
  --gin_file=hiersep/configs/runs/desk.gin \
  --alsologtostderr

python -m hiersep.cli --batch=/tmp/corpus --batch_workers=8

Exit codes: 0 for any verdict, 2 for input errors, 3 for guard breaches.
"""
# pyformat: enable
# pylint:enable=line-too-long
import dataclasses
import glob
import os
import time
from concurrent import futures
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from absl import logging
from hiersep import automata
from hiersep import basis as basis_lib
from hiersep import decide
from hiersep import metrics
from hiersep import oracles
from hiersep import utils

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_GUARD_ERROR = 3

TASKS = ('separate', 'cover', 'member', 'imprint')
ORACLES = ('j_trivial', 'upward_closed', 'k_subword:<k>')
REPORT_SUFFIX = '.report.json'


class QueryError(ValueError):
  """A query file does not follow the schema.

  Attributes:
    pointer: JSON pointer to the offending value.
    position: position in a regex, for regex syntax errors.
  """

  def __init__(self, pointer: str, message: str,
               position: Optional[int] = None):
    super().__init__(f'{pointer or "/"}: {message}')
    self.pointer = pointer
    self.position = position


@dataclasses.dataclass(frozen=True)
class Options:
  """Per-query options; command line flags take precedence."""
  basis: Optional[str] = None
  dump_pol: Optional[str] = None
  dump_bpol: Optional[str] = None
  trace: bool = False
  timing: bool = False
  shortcut: bool = True
  pretrim: bool = False
  guards: Mapping[str, Any] = dataclasses.field(default_factory=dict)


_OPTION_TYPES = {
    'basis': str,
    'dump_pol': str,
    'dump_bpol': str,
    'trace': bool,
    'timing': bool,
    'shortcut': bool,
    'pretrim': bool,
}


@dataclasses.dataclass(frozen=True)
class QuerySpec:
  """A parsed query file.

  Attributes:
    alphabet: the ordered letters.
    languages: the named languages, in file order.
    task: one of `TASKS`.
    level: the hierarchy level.
    args: the language names the task applies to.
    options: per-query options.
    base_dir: directory relative paths in the query are resolved against.
  """
  alphabet: Tuple[str, ...]
  languages: Mapping[str, automata.Dfa]
  task: str
  level: decide.Level
  args: Tuple[str, ...]
  options: Options = Options()
  base_dir: str = '.'

  def resolve(self, path: str) -> str:
    return path if os.path.isabs(path) else os.path.join(self.base_dir, path)

  def language(self, name: str) -> automata.Dfa:
    return self.languages[name]


def _expect(value: Any, kind: type, pointer: str, what: str):
  if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
    raise QueryError(pointer, f'{what} must be a {kind.__name__}, got '
                     f'{type(value).__name__}.')


def _parse_dfa(table: Any, alphabet: Tuple[str, ...],
               pointer: str) -> automata.Dfa:
  _expect(table, dict, pointer, 'a DFA table')
  for key in ('states', 'delta', 'initial', 'accepting'):
    if key not in table:
      raise QueryError(f'{pointer}/{key}', 'missing entry.')
  _expect(table['states'], list, f'{pointer}/states', '`states`')
  _expect(table['delta'], dict, f'{pointer}/delta', '`delta`')
  _expect(table['accepting'], list, f'{pointer}/accepting', '`accepting`')
  states = [str(q) for q in table['states']]
  delta = {}
  for q, row in table['delta'].items():
    _expect(row, dict, f'{pointer}/delta/{q}', 'a transition row')
    delta[str(q)] = {a: str(p) for a, p in row.items()}
  try:
    return automata.minimize(
        automata.Dfa.from_table(alphabet, states, delta, str(table['initial']),
                                [str(q) for q in table['accepting']]))
  except ValueError as e:
    raise QueryError(pointer, str(e)) from e


def _parse_language(entry: Any, alphabet: Tuple[str, ...],
                    pointer: str) -> automata.Dfa:
  _expect(entry, dict, pointer, 'a language')
  if ('regex' in entry) == ('dfa' in entry):
    raise QueryError(pointer, 'expected exactly one of `regex` and `dfa`.')
  if 'dfa' in entry:
    return _parse_dfa(entry['dfa'], alphabet, f'{pointer}/dfa')
  _expect(entry['regex'], str, f'{pointer}/regex', '`regex`')
  try:
    return automata.compile_regex(entry['regex'], alphabet)
  except automata.RegexSyntaxError as e:
    raise QueryError(f'{pointer}/regex', str(e), e.position) from e


def _parse_options(raw: Any) -> Options:
  _expect(raw, dict, '/options', '`options`')
  values = {}
  for key, value in raw.items():
    pointer = f'/options/{key}'
    if key == 'guards':
      _expect(value, dict, pointer, '`guards`')
      names = {f.name for f in dataclasses.fields(utils.Guards)}
      for name, limit in value.items():
        if name not in names:
          raise QueryError(f'{pointer}/{name}', 'unknown guard.')
        if not isinstance(limit, (int, float)) or isinstance(limit, bool):
          raise QueryError(f'{pointer}/{name}', 'guards must be numbers.')
      values['guards'] = dict(value)
    elif key in _OPTION_TYPES:
      _expect(value, _OPTION_TYPES[key], pointer, f'`{key}`')
      values[key] = value
    else:
      raise QueryError(pointer, 'unknown option.')
  return Options(**values)


_ARITY = {'separate': (2, 2), 'cover': (1, None), 'member': (1, 1),
          'imprint': (1, 1)}


def parse_query(data: Any,
                base_dir: str = '.',
                *,
                task: Optional[str] = None,
                level: Optional[str] = None) -> QuerySpec:
  """Validates a decoded query file.

  Args:
    data: the decoded JSON document.
    base_dir: directory relative paths are resolved against.
    task: overrides the `task` entry.
    level: overrides the `level` entry.

  Returns:
    The query. Without an `args` entry the task applies to every language,
    in file order.

  Raises:
    QueryError: naming the offending value.
  """
  _expect(data, dict, '', 'the query')
  for key in data:
    if key not in ('alphabet', 'languages', 'task', 'level', 'args',
                   'options'):
      raise QueryError(f'/{key}', 'unknown entry.')
  if 'alphabet' not in data:
    raise QueryError('/alphabet', 'missing entry.')
  _expect(data['alphabet'], list, '/alphabet', '`alphabet`')
  for i, letter in enumerate(data['alphabet']):
    _expect(letter, str, f'/alphabet/{i}', 'a letter')
  alphabet = tuple(data['alphabet'])
  try:
    automata.null(alphabet)
  except ValueError as e:
    raise QueryError('/alphabet', str(e)) from e

  if 'languages' not in data:
    raise QueryError('/languages', 'missing entry.')
  _expect(data['languages'], dict, '/languages', '`languages`')
  languages = {
      name: _parse_language(entry, alphabet, f'/languages/{name}')
      for name, entry in data['languages'].items()
  }

  task = task or data.get('task')
  if task not in TASKS:
    raise QueryError('/task', f'expected one of {list(TASKS)}, got {task!r}.')
  level_name = level or data.get('level')
  if not isinstance(level_name, str):
    raise QueryError('/level', 'missing level.')
  try:
    parsed_level = decide.Level.parse(level_name)
  except ValueError as e:
    raise QueryError('/level', str(e)) from e
  if task == 'cover' and not parsed_level.is_boolean:
    raise QueryError(
        '/level', f'covering needs a Boolean level, got {parsed_level.value}.')

  if 'args' in data:
    _expect(data['args'], list, '/args', '`args`')
    args = tuple(data['args'])
    for i, name in enumerate(args):
      _expect(name, str, f'/args/{i}', 'a language name')
      if name not in languages:
        raise QueryError(f'/args/{i}', f'unknown language {name!r}.')
  else:
    args = tuple(languages)
  low, high = _ARITY[task]
  if len(args) < low or (high is not None and len(args) > high):
    expected = f'{low}' if low == high else f'at least {low}'
    raise QueryError('/args',
                     f'{task} takes {expected} languages, got {len(args)}.')

  options = _parse_options(data.get('options', {}))
  return QuerySpec(alphabet, languages, task, parsed_level, args, options,
                   base_dir)


def load_query(path: str, **overrides) -> QuerySpec:
  """Reads and validates a query file; see `parse_query`."""
  try:
    data = utils.read_json(path)
  except ValueError as e:
    raise QueryError('', f'{path} is not valid JSON: {e}') from e
  return parse_query(data, os.path.dirname(os.path.abspath(path)), **overrides)


def _guards_for(spec: QuerySpec, guards: utils.Guards) -> utils.Guards:
  if not spec.options.guards:
    return guards
  try:
    return dataclasses.replace(guards, **spec.options.guards)
  except ValueError as e:
    raise QueryError('/options/guards', str(e)) from e


def _basis_for(spec: QuerySpec, selector: Optional[str],
               guards: utils.Guards) -> Optional[basis_lib.Basis]:
  selector = selector or spec.options.basis
  if selector is None:
    return None
  if selector.startswith(basis_lib.CUSTOM_PREFIX):
    path = spec.resolve(selector[len(basis_lib.CUSTOM_PREFIX):])
    selector = basis_lib.CUSTOM_PREFIX + path
  try:
    return basis_lib.parse_basis_selector(selector, spec.alphabet,
                                          guards.max_monoid)
  except (ValueError, OSError) as e:
    raise QueryError('/options/basis', str(e)) from e


def decide_query(spec: QuerySpec,
                 guards: Optional[utils.Guards] = None,
                 *,
                 basis: Optional[str] = None,
                 dump_pol: Optional[str] = None,
                 dump_bpol: Optional[str] = None,
                 trace: bool = False) -> Dict[str, Any]:
  """Runs the task of `spec` and returns its report."""
  guards = _guards_for(spec, guards or utils.Guards())
  b = _basis_for(spec, basis, guards)
  dump_pol = dump_pol or spec.options.dump_pol
  dump_bpol = dump_bpol or spec.options.dump_bpol
  trace = trace or spec.options.trace
  kwargs = dict(
      guards=guards,
      basis=b,
      pretrim=spec.options.pretrim,
      dump=bool(dump_pol or dump_bpol))
  langs = [spec.language(name) for name in spec.args]
  if spec.task == 'imprint':
    result = decide.optimal_imprint(langs[0], spec.level, **kwargs)
  else:
    kwargs['shortcut'] = spec.options.shortcut
    if spec.task == 'separate':
      result = decide.separation(langs[0], langs[1], spec.level, **kwargs)
    elif spec.task == 'cover':
      result = decide.covering(langs[0], langs[1:], spec.level, **kwargs)
    else:
      result = decide.membership(langs[0], spec.level, **kwargs)

  for key, path in (('pol', dump_pol), ('bpol', dump_bpol)):
    if not path:
      continue
    if key in result.dumps:
      utils.write_json(spec.resolve(path), result.dumps[key])
    else:
      logging.warning('No %s imprint was computed for this query; %s is not '
                      'written.', key, path)
  report = result.to_json(trace=trace)
  report['task'] = spec.task
  return report


def run_oracle(spec: QuerySpec,
               name: str,
               guards: Optional[utils.Guards] = None) -> Dict[str, Any]:
  """Runs an oracle on the languages of `spec`.

  Args:
    spec: the query; its task and level are ignored.
    name: `j_trivial`, `upward_closed` or `k_subword:<k>`.
    guards: resource limits.

  Returns:
    The oracle report.

  Raises:
    ValueError: for an unknown oracle, or `k_subword` without exactly two
      languages.
  """
  guards = _guards_for(spec, guards or utils.Guards())
  langs = {n: spec.language(n) for n in spec.args}
  if name == 'j_trivial':
    results = {
        n: oracles.is_piecewise_testable(d, guards.max_monoid)
        for n, d in langs.items()
    }
  elif name == 'upward_closed':
    results = {n: oracles.is_upward_closed(d) for n, d in langs.items()}
  elif name.startswith('k_subword:'):
    try:
      k = int(name[len('k_subword:'):])
    except ValueError:
      raise ValueError(f'Invalid oracle {name!r}; expected k_subword:<k>.'
                      ) from None
    if len(spec.args) != 2:
      raise QueryError('/args', 'k_subword compares exactly two languages.')
    l1, l2 = spec.args
    return {
        'oracle': name,
        'separable': oracles.k_subword_separable(
            langs[l1], langs[l2], k, guards.max_subword_profiles),
    }
  else:
    raise ValueError(f'Unknown oracle {name!r}; expected one of {ORACLES}.')
  return {'oracle': name, 'results': results}


def _error_report(e: Exception) -> Tuple[int, Dict[str, Any]]:
  if isinstance(e, utils.GuardError):
    return EXIT_GUARD_ERROR, {
        'error': {'kind': 'guard', 'guard': e.guard, 'message': str(e)}
    }
  error = {'kind': 'input', 'message': str(e)}
  if isinstance(e, QueryError):
    error['pointer'] = e.pointer
    if e.position is not None:
      error['position'] = e.position
  elif isinstance(e, automata.RegexSyntaxError):
    error['position'] = e.position
  return EXIT_INPUT_ERROR, {'error': error}


def run(input_path: str,
        *,
        guards: Optional[utils.Guards] = None,
        task: Optional[str] = None,
        level: Optional[str] = None,
        basis: Optional[str] = None,
        dump_pol: Optional[str] = None,
        dump_bpol: Optional[str] = None,
        trace: bool = False,
        timing: bool = False,
        oracle: Optional[str] = None,
        output: Optional[str] = None) -> Tuple[int, Dict[str, Any]]:
  """Decides one query file.

  Args:
    input_path: the query file.
    guards: resource limits; the query's `guards` option overrides them.
    task: overrides the query's task.
    level: overrides the query's level.
    basis: basis selector overriding the level's basis.
    dump_pol: writes the pointed Pol imprint there.
    dump_bpol: writes the class-pointed BPol imprint there.
    trace: adds the outer fixpoint trace to the report.
    timing: adds `wall_ms` to the report.
    oracle: runs this oracle instead of the task.
    output: writes the report there.

  Returns:
    The exit code and the report.
  """
  start = time.monotonic()
  try:
    spec = load_query(input_path, task=task, level=level)
    if oracle:
      report = run_oracle(spec, oracle, guards)
    else:
      report = decide_query(
          spec,
          guards,
          basis=basis,
          dump_pol=dump_pol,
          dump_bpol=dump_bpol,
          trace=trace)
    code = EXIT_OK
    timing = timing or spec.options.timing
  except (utils.GuardError, ValueError, OSError) as e:
    logging.error('%s: %s', input_path, e)
    code, report = _error_report(e)
  if timing:
    elapsed = metrics.Time().replace_duration(time.monotonic() - start)
    report['wall_ms'] = round(1000 * elapsed.compute())
  if output:
    utils.write_json(output, report)
  return code, report


def report_path(query_path: str) -> str:
  root, _ = os.path.splitext(query_path)
  return root + REPORT_SUFFIX


def _run_one(args: Tuple[str, Dict[str, Any]]) -> Tuple[str, int]:
  path, kwargs = args
  code, _ = run(path, output=report_path(path), **kwargs)
  return path, code


def batch_queries(directory: str) -> List[str]:
  """Returns the query files of `directory`, skipping earlier reports."""
  return sorted(
      p for p in glob.glob(os.path.join(directory, '*.json'))
      if not p.endswith(REPORT_SUFFIX))


def run_batch(directory: str,
              *,
              workers: int = 1,
              guards: Optional[utils.Guards] = None,
              **kwargs) -> Dict[str, int]:
  """Decides every query file of `directory` in a pool of processes.

  Each report is written next to its query as `<name>.report.json`.

  Args:
    directory: the directory holding the `*.json` queries.
    workers: number of worker processes; 1 runs in this process.
    guards: resource limits shared by every query.
    **kwargs: forwarded to `run`.

  Returns:
    The exit code of every query file.
  """
  paths = batch_queries(directory)
  if guards is not None:
    # Plain dataclass so it can be sent to the workers.
    guards = utils.Guards(**dataclasses.asdict(guards))
  jobs = [(p, dict(kwargs, guards=guards)) for p in paths]
  logging.info('Running %d queries from %s with %d workers.', len(paths),
               directory, workers)
  if workers <= 1:
    results = dict(map(_run_one, jobs))
  else:
    with futures.ProcessPoolExecutor(max_workers=workers) as executor:
      results = dict(executor.map(_run_one, jobs))
  failed = sum(1 for code in results.values() if code != EXIT_OK)
  logging.info('Batch done: %d queries, %d failed.', len(results), failed)
  return results


def execute(flag_values, guards: Optional[utils.Guards] = None) -> int:
  """Runs the query or the batch named by the command line flags."""
  guards = guards or utils.Guards()
  overrides = {
      name: getattr(flag_values, name)
      for name in ('max_monoid', 'max_n')
      if getattr(flag_values, name) is not None
  }
  guards = dataclasses.replace(guards, **overrides)
  kwargs = dict(
      task=flag_values.task,
      level=flag_values.level,
      basis=flag_values.basis,
      trace=flag_values.trace,
      timing=flag_values.timing,
      oracle=flag_values.oracle)
  if flag_values.batch:
    results = run_batch(
        flag_values.batch,
        workers=flag_values.batch_workers,
        guards=guards,
        **kwargs)
    return max(results.values(), default=EXIT_OK)
  code, report = run(
      flag_values.input,
      guards=guards,
      dump_pol=flag_values.dump_pol,
      dump_bpol=flag_values.dump_bpol,
      output=flag_values.output,
      **kwargs)
  if not flag_values.output:
    print(utils.canonical_json(report), end='')
  return code


if __name__ == '__main__':
  # pylint:disable=g-import-not-at-top
  from absl import app
  from absl import flags
  import gin
  from hiersep import gin_utils
  # pylint:enable=g-import-not-at-top

  FLAGS = flags.FLAGS

  _DEFAULT_GIN_SEARCH_PATHS = [
      os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
  ]

  flags.DEFINE_multi_string(
      'gin_file',
      default=['hiersep/configs/guards.gin'],
      help='Path to gin configuration file. Multiple paths may be passed and '
      'will be imported in the given order, with later configurations '
      'overriding earlier ones.')

  flags.DEFINE_multi_string(
      'gin_bindings', default=[], help='Individual gin bindings.')

  flags.DEFINE_list(
      'gin_search_paths',
      default=['.'],
      help='Comma-separated list of gin config path prefixes to be prepended '
      'to suffixes given via `--gin_file`. Only the first prefix that '
      'produces a valid path for each suffix will be used.')

  flags.DEFINE_string('input', None, 'Query file.')
  flags.DEFINE_enum('task', None, list(TASKS), 'Overrides the query task.')
  flags.DEFINE_string('level', None,
                      'Overrides the query level (st_half, st1, pol_at, st2, '
                      'dd_half, dd1).')
  flags.DEFINE_string(
      'basis', None, 'Basis overriding the level basis: st0, dd0, at or '
      'custom:<monoid.json>.')
  flags.DEFINE_string('dump_pol', None,
                      'Writes the pointed Pol imprint to this file.')
  flags.DEFINE_string('dump_bpol', None,
                      'Writes the class-pointed BPol imprint to this file.')
  flags.DEFINE_bool('trace', False, 'Adds the fixpoint trace to the report.')
  flags.DEFINE_bool('timing', False, 'Adds `wall_ms` to the report.')
  flags.DEFINE_integer('max_monoid', None, 'Overrides `Guards.max_monoid`.')
  flags.DEFINE_integer('max_n', None, 'Overrides `Guards.max_n`.')
  flags.DEFINE_string(
      'oracle', None, 'Runs an oracle on the query languages instead of the '
      'task: j_trivial, upward_closed or k_subword:<k>.')
  flags.DEFINE_string(
      'batch', None, 'Directory of query files; writes <name>.report.json '
      'next to each.')
  flags.DEFINE_integer('batch_workers', 1, 'Worker processes for --batch.')
  flags.DEFINE_string('output', None,
                      'Report file; the report is printed when unset.')

  def main(argv: Sequence[str]):
    """True main function."""
    if len(argv) > 1:
      raise app.UsageError('Too many command-line arguments.')
    if bool(FLAGS.input) == bool(FLAGS.batch):
      raise app.UsageError('Exactly one of --input and --batch is required.')

    # Create gin-configurable version of `execute`.
    execute_using_gin = gin.configurable(execute)

    gin_utils.parse_gin_flags(
        # User-provided gin paths take precedence if relative paths conflict.
        FLAGS.gin_search_paths + _DEFAULT_GIN_SEARCH_PATHS,
        FLAGS.gin_file,
        FLAGS.gin_bindings)
    code = execute_using_gin(FLAGS)
    if FLAGS.batch:
      gin_utils.save_gin_config(FLAGS.batch)
    return code

  gin_utils.run(main)
