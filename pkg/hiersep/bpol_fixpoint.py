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

"""Greatest fixpoint computing class-pointed BPol(C)-optimal imprints.

`bpol_imprint` returns the greatest BPol(C)-saturated subset P of
(A*/∼C) × R: P(D) is the BPol(C)-optimal ρ-imprint of the class D, and the
union of all P(D) is the BPol(C)-optimal universal imprint.

Starting from S0 = (A*/∼C) × R, each outer step keeps the pairs (D, r) for
which some t ≥ r is a sum r1 + ... + rk with every (D, ri, {t}) in R[S].
R[S] is the least set of triples (D, q, U) ∈ (A*/∼C) × R × 2^R containing
(⌈w⌉, ρ(w), {ρ(w)}) for every word w and closed under:

* extended downset: (D, q, V) for V ⊆ ↓U;
* multiplication: (D·D', qq', UU');
* S-restricted closure: (E, f, F·S(E)·F) when E, f and F are idempotent.

The `Frontier` never materializes the extended downset rule. It keeps, for
every (D, q), the antichain-normalized U components that are maximal for the
order ↓U ⊆ ↓U', and answers membership with V ⊆ ↓U. The closure rule is
applied to every kept triple whose D and q are idempotent, through the
idempotent power of U; every idempotent triple of the literal R[S] lies below
one of these.
"""
import collections
import dataclasses
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

from absl import logging
from hiersep import automata
from hiersep import basis as basis_lib
from hiersep import metrics
from hiersep import rating
from hiersep import utils
import numpy as np

Family = frozenset  # An antichain of rating values, the U of a triple.
Triple = Tuple[int, rating.RatingValue, Family]


def covers(us: Iterable[rating.RatingValue],
           vs: Iterable[rating.RatingValue]) -> bool:
  """Whether every value of `vs` lies below some value of `us`."""
  us = tuple(us)
  return all(any(rating.leq(v, u) for u in us) for v in vs)


@dataclasses.dataclass(frozen=True)
class SatSet:
  """A subset of (A*/∼C) × R, downward closed in every class."""
  parts: Tuple[rating.Downset, ...]
  stats: metrics.FixpointStats = dataclasses.field(
      default=metrics.FixpointStats(), compare=False)

  @classmethod
  def full(cls, num_classes: int, rho: rating.RatingMap) -> 'SatSet':
    return cls(tuple(rating.Downset(frozenset({rho.full}))
                     for _ in range(num_classes)))

  @property
  def num_classes(self) -> int:
    return len(self.parts)

  def at(self, cls: int) -> rating.Downset:
    """S(D) = {r | (D, r) ∈ S}."""
    return self.parts[cls]

  def contains(self, cls: int, r: rating.RatingValue) -> bool:
    return r in self.parts[cls]

  def issubset(self, other: 'SatSet') -> bool:
    return all(a.issubset(b) for a, b in zip(self.parts, other.parts))

  def universal(self) -> rating.Downset:
    """The union of all S(D)."""
    result = rating.Downset()
    for part in self.parts:
      result = result.union(part)
    return result

  def cardinality(self) -> int:
    """Number of pairs, counting the downward closure."""
    return sum(len(part.materialize()) for part in self.parts)

  def to_json(self, b: basis_lib.Basis) -> Mapping[str, Any]:
    return {
        b.monoid.label(d): self.parts[d].to_json()
        for d in range(self.num_classes)
    }


class Frontier:
  """The triples of R[S] kept by `rbpol_frontier`.

  Maps every (class, q) to the U components that are maximal for ↓U ⊆ ↓U'.
  Only grows during one computation.
  """

  def __init__(self):
    self._families: Dict[Tuple[int, rating.RatingValue], List[Family]] = {}
    self._num_triples = 0
    self.processed = 0

  def __len__(self) -> int:
    return self._num_triples

  def keys(self) -> List[Tuple[int, rating.RatingValue]]:
    return list(self._families)

  def families(self, cls: int, q: rating.RatingValue) -> List[Family]:
    return self._families.get((cls, q), [])

  def triples(self) -> Iterator[Triple]:
    for (cls, q), families in self._families.items():
      for family in families:
        yield cls, q, family

  def holds(self, cls: int, q: rating.RatingValue, family: Family) -> bool:
    """Whether exactly this triple is currently kept."""
    return family in self._families.get((cls, q), ())

  def insert(self, cls: int, q: rating.RatingValue, family: Family) -> bool:
    """Adds a triple unless it is dominated; returns whether it was added."""
    families = self._families.setdefault((cls, q), [])
    if any(covers(kept, family) for kept in families):
      return False
    kept = [f for f in families if not covers(family, f)]
    self._num_triples += len(kept) + 1 - len(families)
    kept.append(family)
    self._families[(cls, q)] = kept
    return True

  def member(self, cls: int, q: rating.RatingValue,
             vs: Iterable[rating.RatingValue]) -> bool:
    """Whether (cls, q, vs) belongs to R[S]."""
    vs = tuple(vs)
    return any(covers(f, vs) for f in self.families(cls, q))


def rbpol_frontier(s: SatSet,
                   b: basis_lib.Basis,
                   rho: rating.RatingMap,
                   *,
                   guards: Optional[utils.Guards] = None,
                   deadline: Optional[utils.Deadline] = None,
                   rng: Optional[np.random.Generator] = None) -> Frontier:
  """Computes the frontier representation of R[S].

  Args:
    s: the current set S, downward closed in every class.
    b: the basis C.
    rho: the rating map.
    guards: resource limits.
    deadline: wall clock budget.
    rng: if given, the worklist is consumed in random order. The kept triples
      do not depend on the order.

  Returns:
    The frontier.

  Raises:
    utils.GuardError: if more than `guards.max_frontier` triples are kept or
      the deadline passes.
  """
  guards = guards or utils.Guards()
  deadline = deadline or utils.NO_DEADLINE
  if b.alphabet != rho.alphabet:
    raise automata.AlphabetMismatchError(
        f'Alphabets differ: {b.alphabet} vs {rho.alphabet}.')
  class_table = b.monoid.table
  idempotent_classes = b.monoid.idempotents
  restrict = [s.at(d).maxima for d in range(b.num_classes)]
  frontier = Frontier()
  worklist = collections.deque()

  def insert(cls: int, q: rating.RatingValue, family: Family):
    if frontier.insert(cls, q, family):
      utils.check_guard('max_frontier', len(frontier), guards.max_frontier,
                        'R[S] frontier size')
      worklist.append((cls, q, family))

  one = rho.one
  insert(b.monoid.identity, one, Family({one}))
  for a in range(len(b.alphabet)):
    q = 1 << rho.eta.letter_images[a]
    insert(b.class_morphism.letter_images[a], q, Family({q}))

  while worklist:
    if rng is not None:
      worklist.rotate(-int(rng.integers(len(worklist))))
    cls, q, family = worklist.popleft()
    if not frontier.holds(cls, q, family):
      continue  # Superseded by a larger family.
    frontier.processed += 1
    if frontier.processed % 256 == 0:
      deadline.check('R[S] computation')
    if cls in idempotent_classes and rho.is_idempotent(q):
      f = rho.idempotent_power_set(family)
      insert(cls, q,
             rho.multiply_sets(rho.multiply_sets(f, restrict[cls]), f))
    for cls2, q2, family2 in list(frontier.triples()):
      insert(int(class_table[cls, cls2]), rho.multiply(q, q2),
             rho.multiply_sets(family, family2))
      insert(int(class_table[cls2, cls]), rho.multiply(q2, q),
             rho.multiply_sets(family2, family))
  logging.vlog(1, 'R[S]: %d triples after %d steps.', len(frontier),
               frontier.processed)
  return frontier


def rbpol_member(frontier: Frontier, cls: int, q: rating.RatingValue,
                 vs: Iterable[rating.RatingValue]) -> bool:
  """Whether (cls, q, vs) ∈ R[S], i.e. vs ⊆ ↓U for a kept (cls, q, U)."""
  return frontier.member(cls, q, vs)


def _good_sums(frontier: Frontier, cls: int,
               max_candidates: int) -> List[rating.RatingValue]:
  """Returns the t = r1 + ... + rk with every (cls, ri, {t}) in R[S].

  Candidates are the sums of values q with some (cls, q, U) kept and q ≤ u for
  some u ∈ U. A candidate t is kept when the admissible q ≤ t add up to t:
  + is idempotent, so some of them sum to t iff all of them do.
  """
  bounds = {}
  for d, q in frontier.keys():
    if d != cls:
      continue
    us = rating.maximal(u for family in frontier.families(cls, q)
                        for u in family if rating.leq(q, u))
    if us:
      bounds[q] = us
  ceilings = rating.maximal(u for us in bounds.values() for u in us)
  candidates = {0}
  queue = collections.deque([0])
  while queue:
    t = queue.popleft()
    for q in bounds:
      nxt = t | q
      if nxt in candidates or not any(rating.leq(nxt, c) for c in ceilings):
        continue
      candidates.add(nxt)
      utils.check_guard('max_frontier', len(candidates), max_candidates,
                        'number of candidate sums')
      queue.append(nxt)
  good = []
  for t in candidates:
    total = 0
    for q, us in bounds.items():
      if rating.leq(q, t) and any(rating.leq(t, u) for u in us):
        total |= q
    if total == t:
      good.append(t)
  return good


def saturation_step(
    s: SatSet,
    b: basis_lib.Basis,
    rho: rating.RatingMap,
    *,
    guards: Optional[utils.Guards] = None,
    deadline: Optional[utils.Deadline] = None,
    rng: Optional[np.random.Generator] = None
) -> Tuple[SatSet, Frontier]:
  """Keeps the pairs of `s` that satisfy the saturation condition for `s`.

  Returns:
    The next set and the frontier of R[s] it was computed from.
  """
  guards = guards or utils.Guards()
  frontier = rbpol_frontier(
      s, b, rho, guards=guards, deadline=deadline, rng=rng)
  parts = []
  for cls in range(b.num_classes):
    good = rating.Downset.from_values(
        _good_sums(frontier, cls, guards.max_frontier))
    parts.append(s.at(cls).intersection(good))
  return SatSet(tuple(parts)), frontier


def bpol_imprint(b: basis_lib.Basis,
                 rho: rating.RatingMap,
                 *,
                 guards: Optional[utils.Guards] = None,
                 deadline: Optional[utils.Deadline] = None,
                 pretrim: bool = False,
                 rng: Optional[np.random.Generator] = None) -> SatSet:
  """Computes the greatest BPol(C)-saturated subset of (A*/∼C) × R.

  Args:
    b: the basis C.
    rho: the rating map.
    guards: resource limits.
    deadline: wall clock budget; defaults to `guards.max_wall_seconds`.
    pretrim: start from S0(D) = ↓{ρ(D)} instead of all of R. Every pair
      removed this way fails the saturation condition anyway.
    rng: if given, every R[S] computation consumes its worklist in random
      order.

  Returns:
    The set P with P(D) the BPol(C)-optimal imprint of D. Its `stats` hold
    the outer iteration count, the largest frontier, and the trace of sizes.
  """
  guards = guards or utils.Guards()
  deadline = deadline or guards.deadline()
  if pretrim:
    reach = basis_lib.reach_pairs(b, rho.eta, guards.max_monoid)
    s = SatSet(
        tuple(
            rating.Downset(frozenset({reach.class_image_mask(d)}))
            for d in range(b.num_classes)))
  else:
    s = SatSet.full(b.num_classes, rho)
  stats = metrics.FixpointStats(trace=(s.cardinality(),))
  while True:
    deadline.check('BPol saturation')
    s_next, frontier = saturation_step(
        s, b, rho, guards=guards, deadline=deadline, rng=rng)
    stats = stats.merge(
        metrics.FixpointStats(
            iterations=metrics.Sum.from_value(1),
            frontier=metrics.Max.from_value(len(frontier)),
            inner_iterations=metrics.Sum.from_value(frontier.processed),
            trace=(s_next.cardinality(),)))
    logging.vlog(1, 'BPol iteration %d: %d pairs, %d frontier triples.',
                 stats.iterations.compute(), stats.trace[-1], len(frontier))
    if s_next == s:
      break
    s = s_next
  logging.info('BPol saturation over %s: %d outer iterations, largest '
               'frontier %d, %d pairs.', b.name, stats.iterations.compute(),
               stats.frontier.compute(), stats.trace[-1])
  return dataclasses.replace(s, stats=stats)
