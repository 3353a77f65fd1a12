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

"""Tests for hiersep.pol_fixpoint."""

from absl.testing import absltest
from absl.testing import parameterized
from hiersep import algebra
from hiersep import automata
from hiersep import basis as basis_lib
from hiersep import pol_fixpoint
from hiersep import rating
from hiersep import test_utils
from hiersep import utils
import numpy as np

AB = ('a', 'b')


def _setup(language: str, basis_name: str):
  eta = algebra.transition_monoid(test_utils.language(language)).morphism
  b = basis_lib.builtin(basis_name, eta.alphabet)
  return basis_lib.compatible_morphism(eta, b), rating.RatingMap(eta)


class PolSaturateTest(parameterized.TestCase):

  def test_parity_over_st0_is_everything(self):
    alpha, rho = _setup('even', 'st0')
    p = pol_fixpoint.pol_saturate(alpha, rho)
    self.assertEqual(p.elements(), list(range(alpha.size)))
    for s in range(alpha.size):
      self.assertEqual(p.at(s).maxima, {rho.full})
    self.assertEqual(p.universal().maxima, {rho.full})

  def test_parity_over_dd0_keeps_epsilon_apart(self):
    alpha, rho = _setup('even', 'dd0')
    p = pol_fixpoint.pol_saturate(alpha, rho)
    # Only the empty word maps to the identity of α.
    self.assertEqual(p.at(alpha('')).maxima, {rho.one})
    self.assertEqual(p.at(alpha('aa')).maxima, {rho.full})

  def test_contains_a_over_st0(self):
    alpha, rho = _setup('contains_a', 'st0')
    self.assertEqual(alpha.size, 2)
    s = 1 << rho.eta('a')
    p = pol_fixpoint.pol_saturate(alpha, rho)
    # Closure at the idempotent identity: 1·ρ(A*)·1 = {1, s}.
    self.assertEqual(p.at(alpha('')).maxima, {rho.one | s})
    self.assertEqual(p.at(alpha('a')).maxima, {s})

  @parameterized.parameters(('ab_star', 'st0'), ('ab_star', 'at'),
                            ('contains_a', 'dd0'), ('starts_a', 'at'))
  def test_contains_trivial_pairs(self, language, basis_name):
    alpha, rho = _setup(language, basis_name)
    p = pol_fixpoint.pol_saturate(alpha, rho)
    rng = np.random.default_rng(0)
    for w in test_utils.sample_words(rng, AB, 100, 10):
      self.assertIn((alpha(w), rho.of_word(w)), p)
      self.assertTrue(p.contains(alpha(w), 0))

  def test_closed_under_products(self):
    alpha, rho = _setup('ab_star', 'at')
    p = pol_fixpoint.pol_saturate(alpha, rho)
    pairs = p.maximal_pairs()
    for s1, r1 in pairs:
      for s2, r2 in pairs:
        self.assertIn((alpha.target.multiply(s1, s2), rho.multiply(r1, r2)), p)

  def test_order_does_not_matter(self):
    alpha, rho = _setup('ab_star', 'at')
    expected = pol_fixpoint.pol_saturate(alpha, rho)
    for seed in range(3):
      self.assertEqual(
          pol_fixpoint.pol_saturate(
              alpha, rho, rng=np.random.default_rng(seed)), expected)

  def test_image_of(self):
    alpha, rho = _setup('contains_a', 'st0')
    p = pol_fixpoint.pol_saturate(alpha, rho)
    everything = p.image_of(range(alpha.size))
    self.assertEqual(everything, p.universal())
    self.assertEqual(p.image_of([]), rating.Downset())

  def test_work_guard(self):
    alpha, rho = _setup('ab_star', 'at')
    with self.assertRaises(utils.GuardError) as cm:
      pol_fixpoint.pol_saturate(
          alpha, rho, guards=utils.Guards(max_pol_work=100))
    self.assertEqual(cm.exception.guard, 'max_pol_work')

  def test_alphabet_mismatch(self):
    alpha, _ = _setup('ab_star', 'st0')
    _, rho = _setup('even', 'st0')
    with self.assertRaises(automata.AlphabetMismatchError):
      pol_fixpoint.pol_saturate(alpha, rho)

  def test_to_json(self):
    alpha, rho = _setup('even', 'st0')
    dump = pol_fixpoint.pol_saturate(alpha, rho).to_json(alpha)
    self.assertEqual(dump, {'_': [[0, 1]], 'a': [[0, 1]]})


if __name__ == '__main__':
  absltest.main()
