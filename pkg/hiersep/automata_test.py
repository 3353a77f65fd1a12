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

"""Tests for hiersep.automata."""

from absl.testing import absltest
from absl.testing import parameterized
from hiersep import automata
from hiersep import corpus
import numpy as np

AB = ('a', 'b')


class ParseRegexTest(parameterized.TestCase):

  @parameterized.named_parameters(
      ('star', '(ab)*',
       automata.Star(
           automata.Concat(automata.Literal('a'), automata.Literal('b')))),
      ('epsilon', '_', automata.Epsilon()),
      ('empty', '~', automata.Empty()),
      ('union', 'a|b',
       automata.Union(automata.Literal('a'), automata.Literal('b'))),
      ('whitespace', ' a  b ',
       automata.Concat(automata.Literal('a'), automata.Literal('b'))),
  )
  def test_parse(self, text, expected):
    self.assertEqual(automata.parse_regex(text, AB), expected)

  def test_concatenation_binds_tighter_than_union(self):
    self.assertEqual(
        automata.parse_regex('ab|b*', AB),
        automata.Union(
            automata.Concat(automata.Literal('a'), automata.Literal('b')),
            automata.Star(automata.Literal('b'))))

  @parameterized.named_parameters(
      ('dangling_union', 'a|', 2),
      ('unclosed', '(a', 2),
      ('unopened', 'a)', 1),
      ('leading_star', '*a', 0),
      ('empty_text', '', 0),
  )
  def test_syntax_error_position(self, text, position):
    with self.assertRaises(automata.RegexSyntaxError) as cm:
      automata.parse_regex(text, AB)
    self.assertEqual(cm.exception.position, position)

  def test_unknown_letter(self):
    with self.assertRaises(automata.UnknownLetterError) as cm:
      automata.parse_regex('abc', AB)
    self.assertEqual(cm.exception.position, 2)

  def test_reserved_letter_in_alphabet(self):
    with self.assertRaises(ValueError):
      automata.parse_regex('a', ('a', '*'))

  def test_nesting_limit(self):
    depth = automata.MAX_REGEX_NESTING
    automata.parse_regex('(' * depth + 'a' + ')' * depth, AB)
    with self.assertRaises(automata.RegexSyntaxError) as cm:
      automata.parse_regex(
          '(' * (depth + 1) + 'a' + ')' * (depth + 1), AB)
    self.assertEqual(cm.exception.position, depth)


class DfaTest(parameterized.TestCase):

  def test_ab_star_is_three_states(self):
    d = automata.compile_regex('(ab)*', AB)
    self.assertEqual(d.num_states, 3)
    self.assertEqual(d.initial, 0)
    self.assertEqual(d.accepting, frozenset({0}))
    self.assertEqual(d.delta, ((1, 2), (2, 0), (2, 2)))

  def test_empty_language(self):
    d = automata.compile_regex('~', AB)
    self.assertEqual(d.num_states, 1)
    self.assertEmpty(d.accepting)
    self.assertTrue(automata.is_empty(d))

  @parameterized.parameters('a', 'b', 'ab', 'a|b')
  def test_compiled_automata_are_canonical(self, regex):
    d = automata.compile_regex(regex, AB)
    self.assertEqual(d, automata.minimize(d))

  def test_equal_languages_compile_identically(self):
    self.assertEqual(
        automata.compile_regex('b', AB), automata.compile_regex('b|~', AB))
    self.assertEqual(
        automata.letter(AB, 'b'), automata.compile_regex('b', AB))

  def test_long_union_chain(self):
    d = automata.compile_regex('|'.join(['a', 'b', '_'] * 1000), AB)
    self.assertEqual(d, automata.compile_regex('a|b|_', AB))

  def test_full_language(self):
    d = automata.compile_regex('(a|b)*', AB)
    self.assertEqual(d, automata.full(AB))
    self.assertEqual(d.accepting, frozenset({0}))

  @parameterized.parameters(
      ('(ab)*', '', True),
      ('(ab)*', 'abab', True),
      ('(ab)*', 'aba', False),
      ('a(a|b)*', 'ab', True),
      ('a(a|b)*', 'ba', False),
      ('_', '', True),
      ('_', 'a', False),
  )
  def test_accepts(self, regex, word, expected):
    d = automata.compile_regex(regex, AB)
    self.assertEqual(automata.accepts(d, word), expected)

  def test_run_rejects_unknown_letter(self):
    with self.assertRaises(automata.AlphabetMismatchError):
      automata.compile_regex('a', AB).accepts('c')

  def test_from_table_adds_sink(self):
    d = automata.Dfa.from_table(
        AB, ['p', 'q'], {'p': {'a': 'q'}, 'q': {'b': 'p'}}, 'p', ['p'])
    self.assertEqual(d.num_states, 3)
    self.assertTrue(automata.equal(d, automata.compile_regex('(ab)*', AB)))

  def test_from_table_unknown_state(self):
    with self.assertRaises(ValueError):
      automata.Dfa.from_table(AB, ['p'], {'p': {'a': 'r'}}, 'p', [])

  def test_invalid_delta(self):
    with self.assertRaises(ValueError):
      automata.Dfa(AB, ((0,),), 0, frozenset())

  def test_to_json_round_trip(self):
    d = automata.compile_regex('a*b', AB)
    dump = d.to_json()
    again = automata.Dfa.from_table(dump['alphabet'], dump['states'],
                                    dump['delta'], dump['initial'],
                                    dump['accepting'])
    self.assertEqual(again, d)


class BooleanOperationsTest(parameterized.TestCase):

  def test_complement_of_full_is_empty(self):
    self.assertTrue(
        automata.is_empty(automata.complement(automata.full(AB))))

  def test_parities_are_disjoint(self):
    even = automata.compile_regex('(aa)*', 'a')
    odd = automata.compile_regex('a(aa)*', 'a')
    self.assertTrue(automata.is_empty(automata.intersect(even, odd)))
    self.assertEqual(
        automata.union(even, odd), automata.compile_regex('a*', 'a'))

  def test_double_complement(self):
    d = automata.compile_regex('(ab)*', AB)
    self.assertTrue(
        automata.equal(d, automata.complement(automata.complement(d))))

  def test_alphabet_mismatch(self):
    with self.assertRaises(automata.AlphabetMismatchError):
      automata.intersect(
          automata.compile_regex('a', 'a'), automata.compile_regex('a', AB))

  def test_difference(self):
    d = automata.difference(
        automata.compile_regex('a*', AB), automata.compile_regex('aa*', AB))
    self.assertEqual(d, automata.epsilon(AB))

  def test_concatenate_and_star(self):
    ab = automata.concatenate(
        automata.letter(AB, 'a'), automata.letter(AB, 'b'))
    self.assertEqual(
        automata.star(ab), automata.compile_regex('(ab)*', AB))

  def test_shortest_word(self):
    d = automata.compile_regex('(a|b)*bb', AB)
    self.assertEqual(automata.shortest_word(d), 'bb')
    self.assertIsNone(automata.shortest_word(automata.null(AB)))

  def test_words(self):
    self.assertEqual(
        automata.words(automata.compile_regex('(ab)*', AB), 4),
        ['', 'ab', 'abab'])


class RandomRegexTest(parameterized.TestCase):

  def setUp(self):
    super().setUp()
    self.rng = np.random.default_rng(2026)

  def test_union_semantics(self):
    for _ in range(25):
      r1 = corpus.random_regex(self.rng, AB, 8)
      r2 = corpus.random_regex(self.rng, AB, 8)
      d1 = automata.compile_regex(r1, AB)
      d2 = automata.compile_regex(r2, AB)
      u = automata.union(d1, d2)
      for w in automata.all_words(AB, 6):
        self.assertEqual(
            u.accepts(w), d1.accepts(w) or d2.accepts(w), msg=(r1, r2, w))

  def test_minimize_is_idempotent(self):
    for _ in range(25):
      d = automata.compile_regex(
          corpus.random_regex(self.rng, AB, 8), AB)
      self.assertEqual(automata.minimize(d), d)
      self.assertEqual(automata.minimize(automata.minimize(d)), d)

  def test_double_complement_on_corpus(self):
    for _, d in corpus.regex_corpus(3, 20):
      self.assertEqual(automata.complement(automata.complement(d)), d)


if __name__ == '__main__':
  absltest.main()
