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

"""Tests for hiersep.cli."""

import os
import types

from absl.testing import absltest
from absl.testing import parameterized
from hiersep import automata
from hiersep import cli
from hiersep import utils

ODD_TABLE = {
    'states': ['p', 'q'],
    'delta': {
        'p': {
            'a': 'q'
        },
        'q': {
            'a': 'p'
        }
    },
    'initial': 'p',
    'accepting': ['q']
}


def _parity_query(**extra):
  query = {
      'alphabet': ['a'],
      'languages': {
          'L1': {
              'regex': '(aa)*'
          },
          'L2': {
              'dfa': ODD_TABLE
          }
      },
      'task': 'separate',
      'level': 'st1',
      'args': ['L1', 'L2'],
  }
  query.update(extra)
  return query


def _member_query(regex, level='st1', **extra):
  query = {
      'alphabet': ['a', 'b'],
      'languages': {
          'L': {
              'regex': regex
          }
      },
      'task': 'member',
      'level': level,
  }
  query.update(extra)
  return query


def _flags(**overrides):
  values = dict(
      input=None,
      batch=None,
      batch_workers=1,
      task=None,
      level=None,
      basis=None,
      dump_pol=None,
      dump_bpol=None,
      trace=False,
      timing=False,
      oracle=None,
      output=None,
      max_monoid=None,
      max_n=None)
  values.update(overrides)
  return types.SimpleNamespace(**values)


class CliTest(parameterized.TestCase):

  def setUp(self):
    super().setUp()
    self.tmp_dir = self.create_tempdir().full_path

  def _write(self, name, query):
    path = os.path.join(self.tmp_dir, name)
    utils.write_json(path, query)
    return path

  def test_member(self):
    path = self._write('q.json', _member_query('(a|b)*a(a|b)*'))
    code, report = cli.run(path)
    self.assertEqual(code, cli.EXIT_OK)
    self.assertEqual(report['verdict'], 'Member')
    self.assertEqual(report['task'], 'member')
    self.assertEqual(report['level'], 'st1')
    self.assertNotIn('wall_ms', report)

  def test_parity_separation(self):
    path = self._write('q.json', _parity_query())
    code, report = cli.run(path, trace=True)
    self.assertEqual(code, cli.EXIT_OK)
    self.assertEqual(report['verdict'], 'Inseparable')
    self.assertEqual(report['bad_value'], [0, 1])
    self.assertEqual(report['bad_labels'], ['_', 'a'])
    self.assertEqual(report['trace'], [4, 4])
    self.assertEqual(report['sizes'], {
        'monoid': 2,
        'rating_base': 2,
        'classes': 1
    })

  def test_level_override(self):
    path = self._write('q.json', _member_query('(ab)*'))
    _, report = cli.run(path)
    self.assertEqual(report['verdict'], 'NonMember')
    _, report = cli.run(path, level='DD1')
    self.assertEqual(report['verdict'], 'Member')
    self.assertEqual(report['level'], 'dd1')

  def test_task_override_uses_every_language(self):
    path = self._write('q.json', _member_query('a(a|b)*', task='separate'))
    code, report = cli.run(path)
    self.assertEqual(code, cli.EXIT_INPUT_ERROR)
    self.assertEqual(report['error']['pointer'], '/args')
    code, report = cli.run(path, task='imprint', level='dd_half')
    self.assertEqual(code, cli.EXIT_OK)
    self.assertEqual(report['task'], 'imprint')
    self.assertIn('imprint_labels', report)

  def test_regex_error(self):
    path = self._write('q.json', _member_query('(a|b'))
    code, report = cli.run(path)
    self.assertEqual(code, cli.EXIT_INPUT_ERROR)
    self.assertEqual(report['error']['kind'], 'input')
    self.assertEqual(report['error']['pointer'], '/languages/L/regex')
    self.assertEqual(report['error']['position'], 4)

  def test_deeply_nested_regex(self):
    regex = '(' * 3000 + 'a' + ')' * 3000
    path = self._write('q.json', _member_query(regex))
    code, report = cli.run(path)
    self.assertEqual(code, cli.EXIT_INPUT_ERROR)
    self.assertEqual(report['error']['pointer'], '/languages/L/regex')
    self.assertEqual(report['error']['position'],
                     automata.MAX_REGEX_NESTING)

  def test_unknown_letter(self):
    path = self._write('q.json', _member_query('ac'))
    _, report = cli.run(path)
    self.assertEqual(report['error']['position'], 1)

  @parameterized.named_parameters(
      ('unknown_entry', {'bogus': 1}, '/bogus'),
      ('unknown_option', {'options': {'bogus': True}}, '/options/bogus'),
      ('bad_option_type', {'options': {'trace': 'yes'}}, '/options/trace'),
      ('unknown_guard', {'options': {'guards': {'max_x': 1}}},
       '/options/guards/max_x'),
      ('negative_guard', {'options': {'guards': {'max_n': -1}}},
       '/options/guards'),
      ('unknown_level', {'level': 'st9'}, '/level'),
      ('unknown_task', {'task': 'split'}, '/task'),
      ('cover_at_pol_level', {'task': 'cover', 'level': 'st_half'}, '/level'),
      ('unknown_arg', {'args': ['L1', 'L3']}, '/args/1'),
      ('list_arg', {'args': [['L1'], 'L2']}, '/args/0'),
      ('too_few_args', {'args': ['L1']}, '/args'),
  )
  def test_schema_errors(self, extra, pointer):
    path = self._write('q.json', _parity_query(**extra))
    code, report = cli.run(path)
    self.assertEqual(code, cli.EXIT_INPUT_ERROR)
    self.assertEqual(report['error']['pointer'], pointer)

  def test_dfa_errors(self):
    table = dict(ODD_TABLE, initial='r')
    path = self._write(
        'q.json',
        _parity_query(languages={
            'L1': {'regex': 'a'},
            'L2': {'dfa': table}
        }))
    code, report = cli.run(path)
    self.assertEqual(code, cli.EXIT_INPUT_ERROR)
    self.assertEqual(report['error']['pointer'], '/languages/L2/dfa')

  def test_missing_and_invalid_files(self):
    code, report = cli.run(os.path.join(self.tmp_dir, 'missing.json'))
    self.assertEqual(code, cli.EXIT_INPUT_ERROR)
    path = os.path.join(self.tmp_dir, 'broken.json')
    with open(path, 'w') as f:
      f.write('{"alphabet": ')
    code, report = cli.run(path)
    self.assertEqual(code, cli.EXIT_INPUT_ERROR)
    self.assertIn('not valid JSON', report['error']['message'])

  def test_guard_breach(self):
    path = self._write(
        'q.json', _member_query('(ab)*', options={'guards': {
            'max_n': 2
        }}))
    code, report = cli.run(path)
    self.assertEqual(code, cli.EXIT_GUARD_ERROR)
    self.assertEqual(report['error']['kind'], 'guard')
    self.assertEqual(report['error']['guard'], 'max_n')

  def test_reports_are_byte_identical(self):
    path = self._write('q.json', _member_query('(ab)*', level='dd1'))
    outputs = []
    for i in range(2):
      output = os.path.join(self.tmp_dir, f'report{i}.json')
      cli.run(path, trace=True, output=output)
      with open(output, 'rb') as f:
        outputs.append(f.read())
    self.assertEqual(outputs[0], outputs[1])

  def test_timing(self):
    path = self._write('q.json', _member_query('b*'))
    _, report = cli.run(path, timing=True)
    self.assertGreaterEqual(report['wall_ms'], 0)
    path = self._write('t.json', _member_query('b*', options={'timing': True}))
    _, report = cli.run(path)
    self.assertIn('wall_ms', report)

  def test_dumps(self):
    dump = os.path.join(self.tmp_dir, 'bpol.json')
    path = self._write('q.json', _parity_query())
    cli.run(path, dump_bpol=dump)
    self.assertEqual(utils.read_json(dump), {'_': [[0, 1]]})

  def test_dump_paths_are_relative_to_the_query(self):
    path = self._write(
        'q.json',
        _parity_query(level='st_half', options={'dump_pol': 'pol.json'}))
    code, _ = cli.run(path)
    self.assertEqual(code, cli.EXIT_OK)
    self.assertTrue(os.path.exists(os.path.join(self.tmp_dir, 'pol.json')))

  def test_basis_override(self):
    path = self._write(
        'q.json',
        _member_query('a(a|b)*', level='st1', options={'basis': 'dd0'}))
    _, report = cli.run(path)
    self.assertEqual(report['verdict'], 'Member')
    _, report = cli.run(path, basis='st0')
    self.assertEqual(report['verdict'], 'NonMember')

  @parameterized.parameters(
      ('j_trivial', {'results': {'L1': False, 'L2': False}}),
      ('upward_closed', {'results': {'L1': False, 'L2': False}}),
      ('k_subword:3', {'separable': False}),
  )
  def test_oracles(self, oracle, expected):
    path = self._write('q.json', _parity_query())
    code, report = cli.run(path, oracle=oracle)
    self.assertEqual(code, cli.EXIT_OK)
    self.assertEqual(report, dict(expected, oracle=oracle))

  def test_unknown_oracle(self):
    path = self._write('q.json', _parity_query())
    code, report = cli.run(path, oracle='simon')
    self.assertEqual(code, cli.EXIT_INPUT_ERROR)
    self.assertIn('Unknown oracle', report['error']['message'])

  def test_batch(self):
    self._write('a.json', _member_query('(a|b)*a(a|b)*'))
    self._write('b.json', _member_query('(a|b'))
    results = cli.run_batch(self.tmp_dir, guards=utils.Guards())
    self.assertEqual(
        results, {
            os.path.join(self.tmp_dir, 'a.json'): cli.EXIT_OK,
            os.path.join(self.tmp_dir, 'b.json'): cli.EXIT_INPUT_ERROR,
        })
    report = utils.read_json(os.path.join(self.tmp_dir, 'a.report.json'))
    self.assertEqual(report['verdict'], 'Member')
    # Reports of an earlier run are not picked up as queries.
    self.assertLen(cli.batch_queries(self.tmp_dir), 2)

  def test_execute(self):
    path = self._write('q.json', _member_query('(ab)*'))
    output = os.path.join(self.tmp_dir, 'out.json')
    code = cli.execute(_flags(input=path, output=output, level='st2'))
    self.assertEqual(code, cli.EXIT_OK)
    self.assertEqual(utils.read_json(output)['verdict'], 'Member')

  def test_execute_guard_flags(self):
    path = self._write('q.json', _member_query('(ab)*'))
    output = os.path.join(self.tmp_dir, 'out.json')
    code = cli.execute(_flags(input=path, output=output, max_n=3))
    self.assertEqual(code, cli.EXIT_GUARD_ERROR)
    self.assertEqual(utils.read_json(output)['error']['guard'], 'max_n')

  def test_execute_batch(self):
    self._write('a.json', _member_query('b*'))
    self._write('b.json', _member_query('(ab)*', options={'guards': {
        'max_n': 2
    }}))
    code = cli.execute(_flags(batch=self.tmp_dir))
    self.assertEqual(code, cli.EXIT_GUARD_ERROR)


if __name__ == '__main__':
  absltest.main()
