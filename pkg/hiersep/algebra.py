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

"""Finite monoids and morphisms from free monoids.

Monoids are stored as dense multiplication tables over element indices
`0..size-1`. Every construction only keeps the elements reachable from the
letter images (image restriction), and every element carries a shortest
witness word as its label.
"""
import collections
import dataclasses
from typing import Any, Callable, FrozenSet, Hashable, List, Mapping, Optional, Sequence, Tuple, TYPE_CHECKING

from absl import logging
import cached_property
from hiersep import automata
from hiersep import utils
import numpy as np

if TYPE_CHECKING:
  cached_property = property  # pylint: disable=invalid-name
else:
  cached_property = cached_property.cached_property

DEFAULT_MAX_MONOID = utils.Guards().max_monoid


@dataclasses.dataclass(frozen=True, eq=False)
class FiniteMonoid:
  """A finite monoid given by its multiplication table.

  Attributes:
    table: `table[x, y]` is the index of the product `xy`.
    identity: index of the neutral element.
    labels: optional shortest witness word of every element ('' for ε).
  """
  table: np.ndarray
  identity: int
  labels: Optional[Tuple[str, ...]] = None

  def __post_init__(self):
    table = np.asarray(self.table, dtype=np.int32)
    object.__setattr__(self, 'table', table)
    table.setflags(write=False)
    if table.ndim != 2 or table.shape[0] != table.shape[1]:
      raise ValueError(f'Expected a square table, got shape {table.shape}.')
    size = table.shape[0]
    if size == 0:
      raise ValueError('A monoid needs at least one element.')
    if table.min() < 0 or table.max() >= size:
      raise ValueError(f'Table entries must lie in 0..{size - 1}.')
    if not 0 <= self.identity < size:
      raise ValueError(f'Identity {self.identity} is not in 0..{size - 1}.')
    everything = np.arange(size)
    if (not np.array_equal(table[self.identity], everything) or
        not np.array_equal(table[:, self.identity], everything)):
      raise ValueError(f'Element {self.identity} is not neutral.')
    if self.labels is not None and len(self.labels) != size:
      raise ValueError(f'Expected {size} labels, got {len(self.labels)}.')

  @property
  def size(self) -> int:
    return self.table.shape[0]

  def multiply(self, x: int, y: int) -> int:
    return int(self.table[x, y])

  def power(self, x: int, k: int) -> int:
    result = self.identity
    for _ in range(k):
      result = self.multiply(result, x)
    return result

  def is_associative(self) -> bool:
    t = self.table
    left = t[t]  # left[x, y, z] = (xy)z
    right = t[np.arange(self.size)[:, None, None], t[None, :, :]]  # x(yz)
    return bool(np.array_equal(left, right))

  def label(self, x: int) -> str:
    if self.labels is None:
      return str(x)
    return self.labels[x] or '_'

  @cached_property
  def idempotents(self) -> FrozenSet[int]:
    diagonal = self.table[np.arange(self.size), np.arange(self.size)]
    return frozenset(int(x) for x in np.flatnonzero(diagonal == np.arange(
        self.size)))

  def to_json(self) -> Mapping[str, Any]:
    dump = {
        'size': self.size,
        'table': self.table.tolist(),
        'identity': self.identity,
    }
    if self.labels is not None:
      dump['labels'] = [self.label(x) for x in range(self.size)]
    return dump


@dataclasses.dataclass(frozen=True, eq=False)
class Morphism:
  """A morphism from A* into a finite monoid, given by the letter images."""
  alphabet: Tuple[str, ...]
  target: FiniteMonoid
  letter_images: Tuple[int, ...]

  def __post_init__(self):
    if len(self.alphabet) != len(self.letter_images):
      raise ValueError(f'Expected {len(self.alphabet)} letter images, got '
                       f'{len(self.letter_images)}.')
    if any(not 0 <= x < self.target.size for x in self.letter_images):
      raise ValueError('Letter images must be elements of the target.')

  @cached_property
  def _letter_index(self) -> Mapping[str, int]:
    return {a: self.letter_images[i] for i, a in enumerate(self.alphabet)}

  def __call__(self, word: automata.Word) -> int:
    x = self.target.identity
    table = self.target.table
    for letter in word:
      try:
        x = int(table[x, self._letter_index[letter]])
      except KeyError:
        raise automata.AlphabetMismatchError(
            f'Letter {letter!r} is not in the alphabet {self.alphabet}.'
        ) from None
    return x

  @property
  def size(self) -> int:
    return self.target.size

  def to_json(self) -> Mapping[str, Any]:
    dump = dict(self.target.to_json())
    dump['alphabet'] = list(self.alphabet)
    dump['letter_images'] = dict(zip(self.alphabet, self.letter_images))
    return dump


@dataclasses.dataclass(frozen=True, eq=False)
class ProductMorphism(Morphism):
  """An image-restricted product morphism with its two projections."""
  first: Tuple[int, ...]
  second: Tuple[int, ...]


@dataclasses.dataclass(frozen=True, eq=False)
class RecognizedLanguage:
  """The language `morphism⁻¹(accepting)`."""
  morphism: Morphism
  accepting: FrozenSet[int]

  def contains(self, word: automata.Word) -> bool:
    return self.morphism(word) in self.accepting


def morphism_from_json(dump: Mapping[str, Any]) -> Morphism:
  """Reads the monoid dump format extended with `alphabet`/`letter_images`."""
  try:
    alphabet = tuple(dump['alphabet'])
    images = dump['letter_images']
    monoid = FiniteMonoid(
        np.asarray(dump['table'], dtype=np.int32), int(dump['identity']),
        tuple(dump['labels']) if 'labels' in dump else None)
  except KeyError as e:
    raise ValueError(f'Monoid dump is missing the {e} entry.') from None
  if 'size' in dump and dump['size'] != monoid.size:
    raise ValueError(
        f'Monoid dump declares size {dump["size"]} but has a '
        f'{monoid.size}x{monoid.size} table.')
  if not monoid.is_associative():
    raise ValueError('Monoid dump table is not associative.')
  if set(images) != set(alphabet):
    raise ValueError(f'`letter_images` must map exactly the letters of '
                     f'{list(alphabet)}.')
  return Morphism(alphabet, monoid, tuple(int(images[a]) for a in alphabet))


def generate_monoid(
    alphabet: Sequence[str],
    identity: Hashable,
    letter_values: Sequence[Hashable],
    multiply: Callable[[Any, Any], Hashable],
    max_size: int = DEFAULT_MAX_MONOID,
    what: str = 'monoid',
    guard: str = 'max_monoid') -> Tuple[Morphism, List[Hashable]]:
  """Builds the monoid generated by `letter_values` under `multiply`.

  Elements are discovered breadth-first from `identity` by right
  multiplication with letters (in alphabet order), so every element's label
  is a shortest, then lexicographically least, word mapped to it.

  Args:
    alphabet: the ordered letters.
    identity: the neutral value.
    letter_values: the value of each letter.
    multiply: associative multiplication on values.
    max_size: size guard.
    what: name used in guard messages.
    guard: name of the guard raised on overflow.

  Returns:
    The morphism onto the generated monoid and the value of every element.

  Raises:
    utils.GuardError: if more than `max_size` elements are generated.
  """
  alphabet = tuple(alphabet)
  values = [identity]
  labels = ['']
  index = {identity: 0}
  i = 0
  while i < len(values):
    for a, letter_value in zip(alphabet, letter_values):
      value = multiply(values[i], letter_value)
      if value not in index:
        utils.check_guard(guard, len(values) + 1, max_size, f'{what} size')
        index[value] = len(values)
        values.append(value)
        labels.append(labels[i] + a)
    i += 1
  size = len(values)
  table = np.empty((size, size), dtype=np.int32)
  for x, u in enumerate(values):
    for y, v in enumerate(values):
      table[x, y] = index[multiply(u, v)]
  images = tuple(index[multiply(identity, v)] for v in letter_values)
  logging.vlog(1, 'Generated %s with %d elements.', what, size)
  return Morphism(alphabet, FiniteMonoid(table, 0, tuple(labels)),
                  images), values


def transition_monoid(
    d: automata.Dfa,
    max_size: int = DEFAULT_MAX_MONOID) -> RecognizedLanguage:
  """Returns the transition morphism of `d` and the accepting elements.

  Elements are the state transformations induced by words; `xy` applies `x`
  then `y`.
  """
  n = d.num_states

  def multiply(f, g):
    return tuple(g[q] for q in f)

  letter_values = [
      tuple(d.delta[q][a] for q in range(n)) for a in range(len(d.alphabet))
  ]
  morphism, values = generate_monoid(d.alphabet, tuple(range(n)),
                                     letter_values, multiply, max_size,
                                     'transition monoid')
  accepting = frozenset(
      x for x, f in enumerate(values) if f[d.initial] in d.accepting)
  return RecognizedLanguage(morphism, accepting)


def product(m1: Morphism,
            m2: Morphism,
            max_size: int = DEFAULT_MAX_MONOID) -> ProductMorphism:
  """Returns the image-restricted product of `m1` and `m2`."""
  if m1.alphabet != m2.alphabet:
    raise automata.AlphabetMismatchError(
        f'Alphabets differ: {m1.alphabet} vs {m2.alphabet}.')
  t1 = m1.target.table
  t2 = m2.target.table

  def multiply(u, v):
    return int(t1[u[0], v[0]]), int(t2[u[1], v[1]])

  morphism, values = generate_monoid(
      m1.alphabet, (m1.target.identity, m2.target.identity),
      list(zip(m1.letter_images, m2.letter_images)), multiply, max_size,
      'product monoid')
  return ProductMorphism(morphism.alphabet, morphism.target,
                         morphism.letter_images,
                         tuple(u for u, _ in values),
                         tuple(v for _, v in values))


def idempotent_power(m: FiniteMonoid, x: int) -> int:
  """Returns the idempotent power x^ω of `x`."""
  power = x
  while m.multiply(power, power) != power:
    power = m.multiply(power, x)
  return power


def idempotents(m: FiniteMonoid) -> FrozenSet[int]:
  return m.idempotents


def language_image(m: Morphism, d: automata.Dfa) -> FrozenSet[int]:
  """Returns `{m(w) | w ∈ L(d)}`.

  Explores the pairs (state of `d`, element of the target) reachable from
  (initial, identity) reading letters.
  """
  if m.alphabet != d.alphabet:
    raise automata.AlphabetMismatchError(
        f'Alphabets differ: {m.alphabet} vs {d.alphabet}.')
  table = m.target.table
  start = (d.initial, m.target.identity)
  seen = {start}
  queue = collections.deque([start])
  image = set()
  while queue:
    q, x = queue.popleft()
    if q in d.accepting:
      image.add(x)
    for a, y in enumerate(m.letter_images):
      nxt = (d.delta[q][a], int(table[x, y]))
      if nxt not in seen:
        seen.add(nxt)
        queue.append(nxt)
  return frozenset(image)
