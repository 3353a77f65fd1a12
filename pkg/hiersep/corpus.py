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

"""Seeded random regular languages with small syntactic monoids.

Used by the corpus-writing script and by the tests that check decisions
against the oracles.
"""

from typing import List, Sequence, Tuple

from absl import logging
from hiersep import algebra
from hiersep import automata
import numpy as np


def random_regex(rng: np.random.Generator, alphabet: Sequence[str],
                 size: int) -> str:
  """Returns a random regex whose syntax tree has at most `size` nodes."""
  if size <= 1:
    choice = rng.integers(len(alphabet) + 2)
    if choice < len(alphabet):
      return alphabet[choice]
    return '_' if choice == len(alphabet) else '~'
  op = 0 if size == 2 else rng.integers(3)
  if op == 0:
    return f'({random_regex(rng, alphabet, size - 1)})*'
  left = int(rng.integers(1, size - 1))
  right = size - 1 - left
  l = random_regex(rng, alphabet, left)
  r = random_regex(rng, alphabet, right)
  if op == 1:
    return f'({l}|{r})'
  return f'({l})({r})'


def regex_corpus(seed: int,
                 count: int,
                 alphabet: Sequence[str] = ('a', 'b'),
                 max_size: int = 8,
                 max_monoid: int = 30) -> List[Tuple[str, automata.Dfa]]:
  """Returns `count` distinct languages with small syntactic monoids.

  Args:
    seed: seed of the random generator; equal seeds give equal corpora.
    count: number of languages.
    alphabet: the letters.
    max_size: largest syntax tree of a drawn regex.
    max_monoid: largest syntactic monoid of a kept language.

  Returns:
    (regex, minimal automaton) pairs, no two recognizing the same language.

  Raises:
    RuntimeError: if `100 * count` draws do not give `count` languages.
  """
  rng = np.random.default_rng(seed)
  alphabet = tuple(alphabet)
  corpus = []
  seen = set()
  attempts = 0
  while len(corpus) < count:
    attempts += 1
    if attempts > 100 * count:
      raise RuntimeError(f'Could not draw {count} languages.')
    text = random_regex(rng, alphabet, int(rng.integers(1, max_size + 1)))
    d = automata.compile_regex(text, alphabet)
    if d in seen:
      continue
    m = algebra.transition_monoid(d, max_size=10**4)
    if m.morphism.size > max_monoid:
      continue
    seen.add(d)
    corpus.append((text, d))
  logging.debug('Drew %d languages in %d attempts.', count, attempts)
  return corpus
