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

"""Independent checks for special cases of the decision procedures.

None of these decides separation at a hierarchy level in general:

* `is_j_trivial`: a language is piecewise testable iff its syntactic monoid
  is J-trivial.
* `is_upward_closed`: the Pol(ST0) languages are the languages upward closed
  for the subword order.
* `k_subword_separable`: a language that is a union of ∼k classes (same
  subwords of length at most k) is piecewise testable, so disjoint ∼k
  profiles certify separability at ST1.
* `naive_rbpol`: the set R[S] computed by applying its four rules literally,
  for tiny rating sets.
"""
import collections
import dataclasses
import itertools
from typing import FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from absl import logging
from hiersep import algebra
from hiersep import automata
from hiersep import basis as basis_lib
from hiersep import bpol_fixpoint
from hiersep import rating
from hiersep import utils
import numpy as np

MAX_SUBWORD_K = 6
MAX_ORACLE_N = 3

# -----------------------------------------------------------------------------
# Green's J relation.
# -----------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class JStructure:
  """Principal two-sided ideals and J-classes of a finite monoid.

  Attributes:
    ideals: `ideals[x]` is the bitset of MxM.
    classes: the J-classes, each sorted, ordered by least element.
  """
  ideals: Tuple[int, ...]
  classes: Tuple[Tuple[int, ...], ...]

  def j_equivalent(self, x: int, y: int) -> bool:
    return self.ideals[x] == self.ideals[y]


def j_structure(m: algebra.FiniteMonoid) -> JStructure:
  table = m.table
  ideals = []
  for x in range(m.size):
    # Row s of table[table[:, x]] holds (s·x)·t for every t.
    ideals.append(utils.mask_of(int(y) for y in np.unique(table[table[:, x]])))
  groups = collections.defaultdict(list)
  for x, ideal in enumerate(ideals):
    groups[ideal].append(x)
  classes = sorted(tuple(group) for group in groups.values())
  return JStructure(tuple(ideals), tuple(classes))


def is_j_trivial(m: algebra.FiniteMonoid) -> bool:
  """Whether every J-class of `m` is a singleton."""
  return all(len(c) == 1 for c in j_structure(m).classes)


def is_j_trivial_by_order(m: algebra.FiniteMonoid) -> bool:
  """Whether the J-preorder of `m` is antisymmetric.

  Builds ≤_J as the boolean product of the left and right Cayley reachability
  relations.
  """
  size = m.size
  left = np.zeros((size, size), dtype=bool)  # left[x, z]: z ∈ Mx.
  right = np.zeros((size, size), dtype=bool)  # right[z, y]: y ∈ zM.
  for x in range(size):
    left[x, m.table[:, x]] = True
    right[x, m.table[x, :]] = True
  above = (left.astype(np.int64) @ right.astype(np.int64)) > 0
  both = above & above.T
  return bool(np.array_equal(both, np.eye(size, dtype=bool)))


def syntactic_monoid(d: automata.Dfa,
                     max_size: int = algebra.DEFAULT_MAX_MONOID
                    ) -> algebra.RecognizedLanguage:
  """The transition monoid of the minimal automaton of L(d)."""
  return algebra.transition_monoid(automata.minimize(d), max_size)


def is_piecewise_testable(d: automata.Dfa,
                          max_size: int = algebra.DEFAULT_MAX_MONOID) -> bool:
  return is_j_trivial(syntactic_monoid(d, max_size).morphism.target)


# -----------------------------------------------------------------------------
# Subword order.
# -----------------------------------------------------------------------------


def upward_closure(d: automata.Dfa) -> automata.Dfa:
  """The minimal automaton of the words having a subword in L(d).

  Determinizes `d` with a self-loop added on every letter at every state.
  """

  def follow(states, a):
    return states | frozenset(d.delta[q][a] for q in states)

  return automata.determinize(d.alphabet, frozenset({d.initial}),
                              lambda s: bool(s & d.accepting), follow)


def is_upward_closed(d: automata.Dfa) -> bool:
  """Whether L(d) is a shuffle ideal, i.e. equals its upward closure."""
  return automata.equal(upward_closure(d), d)


def _check_k(k: int):
  if not 0 <= k <= MAX_SUBWORD_K:
    raise ValueError(f'k must be between 0 and {MAX_SUBWORD_K}, got {k}.')


def _profile_product(k: int):

  def multiply(p: FrozenSet[str], q: FrozenSet[str]) -> FrozenSet[str]:
    return frozenset(u + v for u in p for v in q if len(u) + len(v) <= k)

  return multiply


def _letter_profiles(alphabet: Sequence[str], k: int) -> List[FrozenSet[str]]:
  return [frozenset(u for u in ('', a) if len(u) <= k) for a in alphabet]


def subword_profile_morphism(
    alphabet: Sequence[str],
    k: int,
    max_size: int = utils.Guards().max_subword_profiles) -> algebra.Morphism:
  """The morphism sending a word to its set of subwords of length ≤ k."""
  _check_k(k)
  alphabet = tuple(alphabet)
  morphism, _ = algebra.generate_monoid(
      alphabet, frozenset({''}), _letter_profiles(alphabet, k),
      _profile_product(k), max_size, f'{k}-subword profile monoid',
      'max_subword_profiles')
  return morphism


def subword_profiles(d: automata.Dfa,
                     k: int,
                     max_profiles: int = utils.Guards().max_subword_profiles
                    ) -> FrozenSet[FrozenSet[str]]:
  """Returns the ∼k profiles of the words of L(d).

  Explores the pairs (state, profile) reachable from (initial, {ε}).
  """
  _check_k(k)
  multiply = _profile_product(k)
  letters = _letter_profiles(d.alphabet, k)
  start = (d.initial, frozenset({''}))
  seen = {start}
  queue = collections.deque([start])
  touched = set()
  while queue:
    q, profile = queue.popleft()
    if q in d.accepting:
      touched.add(profile)
    for a, value in enumerate(letters):
      nxt = (d.delta[q][a], multiply(profile, value))
      if nxt not in seen:
        seen.add(nxt)
        utils.check_guard('max_subword_profiles', len(seen), max_profiles,
                          f'number of (state, {k}-profile) pairs')
        queue.append(nxt)
  return frozenset(touched)


def k_subword_separable(
    l1: automata.Dfa,
    l2: automata.Dfa,
    k: int,
    max_profiles: int = utils.Guards().max_subword_profiles) -> bool:
  """Whether no word of L1 has the same subwords of length ≤ k as one of L2.

  Raises:
    ValueError: if k exceeds `MAX_SUBWORD_K`.
    utils.GuardError: if too many profiles are explored.
  """
  if l1.alphabet != l2.alphabet:
    raise automata.AlphabetMismatchError(
        f'Alphabets differ: {l1.alphabet} vs {l2.alphabet}.')
  p1 = subword_profiles(l1, k, max_profiles)
  p2 = subword_profiles(l2, k, max_profiles)
  return p1.isdisjoint(p2)


# -----------------------------------------------------------------------------
# Literal R[S].
# -----------------------------------------------------------------------------

NaiveTriple = Tuple[int, rating.RatingValue, int]


def _set_product(rho: rating.RatingMap, u: int, v: int) -> int:
  """{xy | x ∈ U, y ∈ V} for sets of rating values given as bitsets."""
  out = 0
  for x in utils.bits_of(u):
    for y in utils.bits_of(v):
      out |= 1 << rho.multiply(x, y)
  return out


def naive_rbpol(s: bpol_fixpoint.SatSet,
                b: basis_lib.Basis,
                rho: rating.RatingMap,
                max_n: int = MAX_ORACLE_N) -> Set[NaiveTriple]:
  """Computes R[S] by applying its four rules literally.

  Triples are (class, q, U) with U a set of rating values stored as a bitset
  over R; every subset allowed by the extended downset rule is materialized.

  Raises:
    utils.GuardError: if |N| exceeds `max_n`.
  """
  utils.check_guard('max_oracle_n', rho.n, max_n, '|N| for the literal R[S]')
  class_table = b.monoid.table
  idempotent_classes = b.monoid.idempotents
  restrict = [
      utils.mask_of(s.at(d).materialize()) for d in range(b.num_classes)
  ]
  products = {}

  def product(u: int, v: int) -> int:
    key = (u, v)
    if key not in products:
      products[key] = _set_product(rho, u, v)
    return products[key]

  triples: Set[NaiveTriple] = set()
  order = []
  worklist = collections.deque()

  def add(triple: NaiveTriple):
    cls, q, u = triple
    if triple in triples:
      return
    down = utils.mask_of(
        itertools.chain.from_iterable(
            utils.submasks(r) for r in utils.bits_of(u)))
    for v in utils.submasks(down):
      t = (cls, q, v)
      if t not in triples:
        triples.add(t)
        order.append(t)
        worklist.append(t)

  reach = basis_lib.reach_pairs(b, rho.eta)
  for cls, x in sorted(reach.pairs):
    r = 1 << x
    add((cls, r, 1 << r))

  while worklist:
    cls, q, u = worklist.popleft()
    if (cls in idempotent_classes and rho.is_idempotent(q) and
        product(u, u) == u):
      add((cls, q, product(product(u, restrict[cls]), u)))
    for cls2, q2, u2 in list(order):
      add((int(class_table[cls, cls2]), rho.multiply(q, q2), product(u, u2)))
      add((int(class_table[cls2, cls]), rho.multiply(q2, q), product(u2, u)))
  logging.vlog(1, 'Literal R[S]: %d triples.', len(triples))
  return triples


def naive_rbpol_member(s: bpol_fixpoint.SatSet,
                       b: basis_lib.Basis,
                       rho: rating.RatingMap,
                       query: Tuple[int, rating.RatingValue,
                                    Iterable[rating.RatingValue]],
                       *,
                       triples: Optional[Set[NaiveTriple]] = None) -> bool:
  """Whether the query triple (class, q, V) belongs to the literal R[S].

  `triples` may hold a precomputed `naive_rbpol(s, b, rho)`.
  """
  if triples is None:
    triples = naive_rbpol(s, b, rho)
  cls, q, vs = query
  return (cls, q, utils.mask_of(vs)) in triples
