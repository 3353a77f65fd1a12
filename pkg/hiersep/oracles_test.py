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

"""Tests for hiersep.oracles."""

from absl.testing import absltest
from absl.testing import parameterized
from hiersep import algebra
from hiersep import automata
from hiersep import basis as basis_lib
from hiersep import bpol_fixpoint
from hiersep import corpus
from hiersep import oracles
from hiersep import rating
from hiersep import test_utils
from hiersep import utils

AB = ('a', 'b')


def _monoid(name):
  return algebra.transition_monoid(test_utils.language(name)).morphism.target


class JTrivialityTest(parameterized.TestCase):

  def test_ab_star_structure(self):
    j = oracles.j_structure(_monoid('ab_star'))
    self.assertEqual(j.classes, ((0,), (1, 2, 4, 5), (3,)))
    self.assertTrue(j.j_equivalent(1, 5))
    self.assertFalse(j.j_equivalent(0, 3))

  @parameterized.parameters(('contains_a', True), ('b_star', True),
                            ('epsilon', True), ('ab_star', False),
                            ('starts_a', False), ('even', False))
  def test_is_j_trivial(self, name, expected):
    self.assertEqual(oracles.is_j_trivial(_monoid(name)), expected)
    self.assertEqual(oracles.is_j_trivial_by_order(_monoid(name)), expected)

  def test_both_tests_agree_on_corpus(self):
    for text, d in corpus.regex_corpus(3, 40):
      m = algebra.transition_monoid(d).morphism.target
      self.assertEqual(
          oracles.is_j_trivial(m), oracles.is_j_trivial_by_order(m), msg=text)

  def test_piecewise_testable(self):
    self.assertTrue(
        oracles.is_piecewise_testable(
            automata.compile_regex('(a|b)*ab(a|b)*', AB)))
    self.assertFalse(
        oracles.is_piecewise_testable(test_utils.language('ab_star')))


class SubwordOrderTest(parameterized.TestCase):

  @parameterized.parameters('empty', 'full', 'contains_a')
  def test_upward_closed(self, name):
    self.assertTrue(oracles.is_upward_closed(test_utils.language(name)))

  @parameterized.parameters('epsilon', 'b_star', 'ab_star', 'starts_a')
  def test_not_upward_closed(self, name):
    self.assertFalse(oracles.is_upward_closed(test_utils.language(name)))

  def test_upward_closure(self):
    self.assertTrue(
        automata.equal(
            oracles.upward_closure(test_utils.language('starts_a')),
            test_utils.language('contains_a')))
    self.assertTrue(
        automata.equal(
            oracles.upward_closure(test_utils.language('ab_star')),
            test_utils.language('full')))

  def test_profile_monoid_size(self):
    self.assertEqual(oracles.subword_profile_morphism(AB, 0).size, 1)
    self.assertEqual(oracles.subword_profile_morphism(AB, 1).size, 4)

  def test_profiles(self):
    profiles = oracles.subword_profiles(test_utils.language('b_star'), 1)
    self.assertEqual(profiles, {frozenset({''}), frozenset({'', 'b'})})

  def test_k_subword_separable(self):
    contains_a = test_utils.language('contains_a')
    b_star = test_utils.language('b_star')
    self.assertTrue(oracles.k_subword_separable(contains_a, b_star, 1))
    self.assertFalse(oracles.k_subword_separable(contains_a, b_star, 0))

  @parameterized.parameters(*range(oracles.MAX_SUBWORD_K + 1))
  def test_parity_is_never_k_separable(self, k):
    self.assertFalse(
        oracles.k_subword_separable(
            test_utils.language('even'), test_utils.language('odd'), k))

  def test_first_letter_is_never_k_separable(self):
    starts_b = automata.compile_regex('b(a|b)*', AB)
    self.assertFalse(
        oracles.k_subword_separable(
            test_utils.language('starts_a'), starts_b, 3))

  @parameterized.parameters(-1, oracles.MAX_SUBWORD_K + 1)
  def test_k_out_of_range(self, k):
    with self.assertRaisesRegex(ValueError, 'k must be between'):
      oracles.subword_profiles(test_utils.language('full'), k)

  def test_profile_guard(self):
    with self.assertRaises(utils.GuardError) as cm:
      oracles.subword_profiles(test_utils.language('full'), 3, max_profiles=4)
    self.assertEqual(cm.exception.guard, 'max_subword_profiles')

  def test_alphabet_mismatch(self):
    with self.assertRaises(automata.AlphabetMismatchError):
      oracles.k_subword_separable(
          test_utils.language('even'), test_utils.language('b_star'), 1)


class NaiveRbpolTest(absltest.TestCase):

  def _parity(self):
    eta = algebra.transition_monoid(test_utils.language('even')).morphism
    b = basis_lib.builtin('st0', ('a',))
    rho = rating.RatingMap(eta)
    return b, rho, bpol_fixpoint.SatSet.full(b.num_classes, rho)

  def test_parity(self):
    b, rho, s = self._parity()
    triples = oracles.naive_rbpol(s, b, rho)
    member = lambda query: oracles.naive_rbpol_member(
        s, b, rho, query, triples=triples)
    self.assertTrue(member((0, 1, [1])))
    self.assertTrue(member((0, 1, [3])))
    self.assertTrue(member((0, 1, [0, 1, 2, 3])))
    self.assertTrue(member((0, 2, [3])))
    self.assertFalse(member((0, 3, [1])))

  def test_computes_triples_when_missing(self):
    b, rho, s = self._parity()
    self.assertTrue(oracles.naive_rbpol_member(s, b, rho, (0, 2, [2])))

  def test_size_guard(self):
    eta = algebra.transition_monoid(test_utils.language('ab_star')).morphism
    b = basis_lib.builtin('st0', AB)
    rho = rating.RatingMap(eta)
    with self.assertRaises(utils.GuardError) as cm:
      oracles.naive_rbpol(
          bpol_fixpoint.SatSet.full(b.num_classes, rho), b, rho)
    self.assertEqual(cm.exception.guard, 'max_oracle_n')


if __name__ == '__main__':
  absltest.main()
