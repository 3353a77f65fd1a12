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

"""Least fixpoint computing α-pointed Pol(C)-optimal imprints.

Given a C-compatible morphism α: A* → M and the rating map ρ of a morphism η,
`pol_saturate` computes the least subset S of M × R such that:

1. (α(w), ρ(w)) ∈ S for every word w;
2. S is downward closed in its second component;
3. (s1 s2, r1 r2) ∈ S whenever (s1, r1), (s2, r2) ∈ S;
4. (e, f·ρ(⌈e⌉)·f) ∈ S for every pair of idempotents (e, f) ∈ S.

For a multiplicative ρ this set is the α-pointed Pol(C)-optimal ρ-imprint: the
pairs (s, r) such that r belongs to the optimal imprint of α⁻¹(s).

Rule 1 is generated from ε and the letters by rule 3. Rule 4 is only applied
to maximal pairs (e, r) with e idempotent, using the idempotent power of r:
every idempotent f ≤ r satisfies f ≤ r^ω, so nothing is lost.
"""
import collections
import dataclasses
from typing import Any, Dict, Iterable, List, Mapping, Optional, Tuple

from absl import logging
from hiersep import automata
from hiersep import basis as basis_lib
from hiersep import metrics
from hiersep import rating
from hiersep import utils
import numpy as np


@dataclasses.dataclass(frozen=True)
class PointedImprint:
  """A downward closed subset of M × R, one `Downset` per element of M."""
  parts: Mapping[int, rating.Downset]
  stats: metrics.FixpointStats = dataclasses.field(
      default=metrics.FixpointStats(), compare=False)

  def at(self, m: int) -> rating.Downset:
    return self.parts.get(m, rating.Downset())

  def contains(self, m: int, r: rating.RatingValue) -> bool:
    return r in self.at(m)

  def __contains__(self, pair: Tuple[int, rating.RatingValue]) -> bool:
    return self.contains(*pair)

  def elements(self) -> List[int]:
    return sorted(self.parts)

  def maximal_pairs(self) -> List[Tuple[int, rating.RatingValue]]:
    return [(m, r) for m in self.elements() for r in sorted(self.parts[m].maxima)]

  def image_of(self, elements: Iterable[int]) -> rating.Downset:
    """Returns the union of the parts at `elements`.

    For L = α⁻¹(elements) this is the optimal imprint of L, since optimal
    imprints commute with finite unions.
    """
    result = rating.Downset()
    for m in elements:
      result = result.union(self.at(m))
    return result

  def universal(self) -> rating.Downset:
    return self.image_of(self.parts)

  def to_json(self, alpha: basis_lib.CompatibleMorphism) -> Mapping[str, Any]:
    return {
        alpha.target.label(m): self.parts[m].to_json() for m in self.elements()
    }


def pol_saturate(alpha: basis_lib.CompatibleMorphism,
                 rho: rating.RatingMap,
                 *,
                 guards: Optional[utils.Guards] = None,
                 deadline: Optional[utils.Deadline] = None,
                 rng: Optional[np.random.Generator] = None) -> PointedImprint:
  """Computes the least Pol(C)-saturated subset of M × R.

  Args:
    alpha: a C-compatible morphism, as built by `basis.compatible_morphism`.
    rho: the rating map; must share `alpha`'s alphabet.
    guards: resource limits.
    deadline: wall clock budget, checked while iterating.
    rng: if given, the worklist is consumed in random order. The result does
      not depend on the order.

  Returns:
    The pointed imprint.

  Raises:
    utils.GuardError: if |M|·2^|N| exceeds `guards.max_pol_work` or the
      deadline passes.
  """
  guards = guards or utils.Guards()
  deadline = deadline or utils.NO_DEADLINE
  if alpha.alphabet != rho.alphabet:
    raise automata.AlphabetMismatchError(
        f'Alphabets differ: {alpha.alphabet} vs {rho.alphabet}.')
  utils.check_guard('max_pol_work', alpha.size * 2**rho.n, guards.max_pol_work,
                    '|M|·2^|N| for the Pol saturation')

  reach = basis_lib.reach_pairs(alpha.basis, rho.eta, guards.max_monoid)
  class_rating = [
      reach.class_image_mask(d) for d in range(alpha.basis.num_classes)
  ]
  table = alpha.target.table
  idempotents = alpha.target.idempotents
  maxima: Dict[int, List[rating.RatingValue]] = collections.defaultdict(list)
  worklist = collections.deque()

  def insert(m: int, r: rating.RatingValue):
    current = maxima[m]
    if any(rating.leq(r, k) for k in current):
      return
    maxima[m] = [k for k in current if not rating.leq(k, r)] + [r]
    worklist.append((m, r))

  insert(alpha.target.identity, rho.one)
  for a in range(len(alpha.alphabet)):
    insert(alpha.letter_images[a], 1 << rho.eta.letter_images[a])

  processed = 0
  while worklist:
    if rng is not None:
      worklist.rotate(-int(rng.integers(len(worklist))))
    m, r = worklist.popleft()
    if r not in maxima[m]:
      continue  # Superseded by a larger value.
    processed += 1
    if processed % 256 == 0:
      deadline.check('Pol saturation')
    if m in idempotents:
      f = rho.idempotent_power(r)
      closed = rho.multiply(rho.multiply(f, class_rating[alpha.class_of(m)]), f)
      insert(m, closed)
    snapshot = [(m2, r2) for m2, values in maxima.items() for r2 in values]
    for m2, r2 in snapshot:
      insert(int(table[m, m2]), rho.multiply(r, r2))
      insert(int(table[m2, m]), rho.multiply(r2, r))

  parts = {
      m: rating.Downset(frozenset(values))
      for m, values in maxima.items()
      if values
  }
  stats = metrics.FixpointStats(
      iterations=metrics.Sum.from_value(processed),
      trace=(sum(len(p.maxima) for p in parts.values()),))
  logging.info('Pol saturation: %d pairs processed, %d maximal pairs over %d '
               'elements.', processed, stats.trace[0], len(parts))
  return PointedImprint(parts, stats)
