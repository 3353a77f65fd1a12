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

"""Regular expressions and complete deterministic automata.

Every regular language handled by hiersep is represented by a complete `Dfa`
over an explicit, ordered alphabet in which one character is one letter. The
constructions here always return minimal automata numbered in breadth-first
order (letters in alphabet order), so two minimal automata recognize the same
language exactly when they compare equal.

Regular expression grammar (whitespace is ignored):

  expr   := term ('|' term)*
  term   := factor+
  factor := base ('*')?
  base   := letter | '_' | '~' | '(' expr ')'

`_` denotes the empty word and `~` the empty language. Parentheses nest at
most `MAX_REGEX_NESTING` deep.
"""
import collections
import dataclasses
import itertools
from typing import Any, Callable, Dict, FrozenSet, Hashable, Iterator, List, Mapping, Optional, Sequence, Tuple, TYPE_CHECKING

import cached_property

if TYPE_CHECKING:
  cached_property = property  # pylint: disable=invalid-name
else:
  cached_property = cached_property.cached_property

Letter = str
Word = str

_RESERVED = frozenset('|*()_~')
# Deepest accepted nesting of parentheses.
MAX_REGEX_NESTING = 100


class RegexSyntaxError(ValueError):
  """A regular expression does not follow the grammar."""

  def __init__(self, message: str, position: int):
    super().__init__(f'{message} at position {position}')
    self.position = position


class UnknownLetterError(RegexSyntaxError):
  """A regular expression uses a letter outside of the declared alphabet."""


class AlphabetMismatchError(ValueError):
  """Two automata over different alphabets were combined."""


# -----------------------------------------------------------------------------
# Regular expression syntax trees.
# -----------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class Regex:
  """Base class of regular expression syntax trees."""


@dataclasses.dataclass(frozen=True)
class Empty(Regex):
  pass


@dataclasses.dataclass(frozen=True)
class Epsilon(Regex):
  pass


@dataclasses.dataclass(frozen=True)
class Literal(Regex):
  letter: Letter


@dataclasses.dataclass(frozen=True)
class Union(Regex):
  left: Regex
  right: Regex


@dataclasses.dataclass(frozen=True)
class Concat(Regex):
  left: Regex
  right: Regex


@dataclasses.dataclass(frozen=True)
class Star(Regex):
  inner: Regex


class _Parser:
  """Recursive descent parser for the grammar in the module docstring."""

  def __init__(self, text: str, alphabet: Sequence[Letter]):
    self._text = text
    self._alphabet = frozenset(alphabet)
    self._pos = 0
    self._depth = 0

  def _skip_space(self):
    while self._pos < len(self._text) and self._text[self._pos].isspace():
      self._pos += 1

  def _peek(self) -> Optional[str]:
    self._skip_space()
    if self._pos < len(self._text):
      return self._text[self._pos]
    return None

  def _starts_base(self, char: Optional[str]) -> bool:
    return char is not None and (char not in _RESERVED or char in '(_~')

  def parse(self) -> Regex:
    tree = self._expr()
    char = self._peek()
    if char is not None:
      raise RegexSyntaxError(f'unexpected {char!r}', self._pos)
    return tree

  def _expr(self) -> Regex:
    tree = self._term()
    while self._peek() == '|':
      self._pos += 1
      tree = Union(tree, self._term())
    return tree

  def _term(self) -> Regex:
    char = self._peek()
    if not self._starts_base(char):
      found = 'end of input' if char is None else repr(char)
      raise RegexSyntaxError(f'expected a letter, "_", "~" or "(", found '
                             f'{found}', self._pos)
    tree = self._factor()
    while self._starts_base(self._peek()):
      tree = Concat(tree, self._factor())
    return tree

  def _factor(self) -> Regex:
    tree = self._base()
    if self._peek() == '*':
      self._pos += 1
      tree = Star(tree)
    return tree

  def _base(self) -> Regex:
    char = self._peek()
    start = self._pos
    self._pos += 1
    if char == '(':
      if self._depth == MAX_REGEX_NESTING:
        raise RegexSyntaxError(
            f'parentheses nested deeper than {MAX_REGEX_NESTING}', start)
      self._depth += 1
      tree = self._expr()
      self._depth -= 1
      if self._peek() != ')':
        raise RegexSyntaxError('missing ")"', self._pos)
      self._pos += 1
      return tree
    if char == '_':
      return Epsilon()
    if char == '~':
      return Empty()
    if char not in self._alphabet:
      raise UnknownLetterError(f'letter {char!r} is not in the alphabet',
                               start)
    return Literal(char)


def parse_regex(text: str, alphabet: Sequence[Letter]) -> Regex:
  """Parses `text` into a syntax tree over `alphabet`.

  Args:
    text: the regular expression.
    alphabet: the declared letters.

  Returns:
    The syntax tree.

  Raises:
    RegexSyntaxError: if `text` does not follow the grammar.
    UnknownLetterError: if `text` uses a letter outside of `alphabet`.
  """
  return _Parser(text, _check_alphabet(alphabet)).parse()


def _check_alphabet(alphabet: Sequence[Letter]) -> Tuple[Letter, ...]:
  alphabet = tuple(alphabet)
  if len(set(alphabet)) != len(alphabet):
    raise ValueError(f'Alphabet letters must be distinct, got {alphabet}.')
  for letter in alphabet:
    if len(letter) != 1 or letter in _RESERVED or letter.isspace():
      raise ValueError(
          f'Letters must be single non-reserved characters, got {letter!r}.')
  return alphabet


# -----------------------------------------------------------------------------
# Automata.
# -----------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class Dfa:
  """A complete deterministic automaton.

  Attributes:
    alphabet: the ordered letters.
    delta: `delta[q][i]` is the state reached from `q` reading `alphabet[i]`.
    initial: the initial state.
    accepting: the accepting states.
  """
  alphabet: Tuple[Letter, ...]
  delta: Tuple[Tuple[int, ...], ...]
  initial: int
  accepting: FrozenSet[int]

  def __post_init__(self):
    n = len(self.delta)
    if n == 0:
      raise ValueError('A `Dfa` needs at least one state.')
    if not 0 <= self.initial < n:
      raise ValueError(f'Initial state {self.initial} is not in 0..{n - 1}.')
    if any(not 0 <= q < n for q in self.accepting):
      raise ValueError(f'Accepting states {sorted(self.accepting)} are not in '
                       f'0..{n - 1}.')
    for q, row in enumerate(self.delta):
      if len(row) != len(self.alphabet):
        raise ValueError(f'State {q} has {len(row)} transitions, expected '
                         f'{len(self.alphabet)}.')
      if any(not 0 <= p < n for p in row):
        raise ValueError(f'State {q} has a transition outside of 0..{n - 1}.')

  @property
  def num_states(self) -> int:
    return len(self.delta)

  @cached_property
  def letter_index(self) -> Mapping[Letter, int]:
    return {a: i for i, a in enumerate(self.alphabet)}

  def run(self, word: Word, state: Optional[int] = None) -> int:
    """Returns the state reached reading `word` from `state` (or initial)."""
    q = self.initial if state is None else state
    for letter in word:
      try:
        q = self.delta[q][self.letter_index[letter]]
      except KeyError:
        raise AlphabetMismatchError(
            f'Letter {letter!r} is not in the alphabet {self.alphabet}.'
        ) from None
    return q

  def accepts(self, word: Word) -> bool:
    return self.run(word) in self.accepting

  @classmethod
  def from_table(cls, alphabet: Sequence[Letter], states: Sequence[Hashable],
                 delta: Mapping[Hashable, Mapping[Letter, Hashable]],
                 initial: Hashable, accepting: Sequence[Hashable]) -> 'Dfa':
    """Builds an automaton from named states, adding a sink if needed.

    Args:
      alphabet: the ordered letters.
      states: state names.
      delta: `delta[state][letter]` is the target state name. Missing entries
        go to a fresh rejecting sink.
      initial: name of the initial state.
      accepting: names of the accepting states.

    Returns:
      The complete automaton; state `i` is `states[i]`, the sink (if any) is
      the last state.
    """
    alphabet = _check_alphabet(alphabet)
    index = {name: i for i, name in enumerate(states)}
    if len(index) != len(states):
      raise ValueError(f'State names must be distinct, got {list(states)}.')
    for name in [initial, *accepting, *delta]:
      if name not in index:
        raise ValueError(f'Unknown state {name!r}.')
    sink = len(states)
    rows = []
    for name in states:
      row = []
      transitions = delta.get(name, {})
      for letter in transitions:
        if letter not in alphabet:
          raise UnknownLetterError(
              f'letter {letter!r} of state {name!r} is not in the alphabet', 0)
      for letter in alphabet:
        target = transitions.get(letter)
        if target is None:
          row.append(sink)
        elif target not in index:
          raise ValueError(f'Unknown state {target!r}.')
        else:
          row.append(index[target])
      rows.append(tuple(row))
    if any(sink in row for row in rows):
      rows.append(tuple(sink for _ in alphabet))
    return cls(alphabet, tuple(rows), index[initial],
               frozenset(index[name] for name in accepting))

  def to_json(self) -> Mapping[str, Any]:
    return {
        'alphabet': list(self.alphabet),
        'states': [str(q) for q in range(self.num_states)],
        'delta': {
            str(q): {a: str(p) for a, p in zip(self.alphabet, row)
                    } for q, row in enumerate(self.delta)
        },
        'initial': str(self.initial),
        'accepting': [str(q) for q in sorted(self.accepting)],
    }


def _crawl(alphabet: Tuple[Letter, ...], initial: Hashable,
           is_final: Callable[[Any], bool],
           follow: Callable[[Any, int], Hashable]) -> Dfa:
  """Explores the states reachable from `initial` in breadth-first order.

  Args:
    alphabet: the ordered letters.
    initial: the initial state, any hashable value.
    is_final: whether a state accepts.
    follow: `follow(state, i)` is the state reached reading `alphabet[i]`.

  Returns:
    The automaton of the reachable states, numbered in discovery order.
  """
  index = {initial: 0}
  states = [initial]
  rows = []
  accepting = set()
  i = 0
  while i < len(states):
    state = states[i]
    if is_final(state):
      accepting.add(i)
    row = []
    for a in range(len(alphabet)):
      target = follow(state, a)
      j = index.get(target)
      if j is None:
        j = index[target] = len(states)
        states.append(target)
      row.append(j)
    rows.append(tuple(row))
    i += 1
  return Dfa(alphabet, tuple(rows), 0, frozenset(accepting))


def minimize(d: Dfa) -> Dfa:
  """Returns the canonical minimal automaton of `L(d)`.

  Unreachable states are dropped, language-equivalent states are merged by
  partition refinement, and the result is numbered in breadth-first order.
  """
  d = _crawl(d.alphabet, d.initial, lambda q: q in d.accepting,
             lambda q, a: d.delta[q][a])
  block = [1 if q in d.accepting else 0 for q in range(d.num_states)]
  num_blocks = len(set(block))
  while True:
    signatures = {}
    refined = []
    for q in range(d.num_states):
      signature = (block[q],) + tuple(block[p] for p in d.delta[q])
      refined.append(signatures.setdefault(signature, len(signatures)))
    block = refined
    if len(signatures) == num_blocks:
      break
    num_blocks = len(signatures)
  representative = {}
  for q in range(d.num_states):
    representative.setdefault(block[q], q)
  return _crawl(d.alphabet, block[d.initial],
                lambda b: representative[b] in d.accepting,
                lambda b, a: block[d.delta[representative[b]][a]])


def determinize(alphabet: Sequence[Letter], initial: Hashable,
                is_final: Callable[[Any], bool],
                follow: Callable[[Any, int], Hashable]) -> Dfa:
  """Returns the minimal automaton of an implicitly given one.

  States are arbitrary hashable values (e.g. frozensets of NFA states for a
  subset construction); see `_crawl` for the arguments.
  """
  return minimize(_crawl(_check_alphabet(alphabet), initial, is_final, follow))


def null(alphabet: Sequence[Letter]) -> Dfa:
  """The automaton of the empty language."""
  alphabet = _check_alphabet(alphabet)
  return Dfa(alphabet, ((0,) * len(alphabet),), 0, frozenset())


def full(alphabet: Sequence[Letter]) -> Dfa:
  """The automaton of A*."""
  alphabet = _check_alphabet(alphabet)
  return Dfa(alphabet, ((0,) * len(alphabet),), 0, frozenset({0}))


def epsilon(alphabet: Sequence[Letter]) -> Dfa:
  """The automaton of {ε}."""
  alphabet = _check_alphabet(alphabet)
  return Dfa(alphabet, ((1,) * len(alphabet), (1,) * len(alphabet)), 0,
             frozenset({0}))


def letter(alphabet: Sequence[Letter], a: Letter) -> Dfa:
  """The automaton of {a}."""
  alphabet = _check_alphabet(alphabet)
  if a not in alphabet:
    raise UnknownLetterError(f'letter {a!r} is not in the alphabet', 0)
  row0 = tuple(1 if b == a else 2 for b in alphabet)
  sink = (2,) * len(alphabet)
  return minimize(Dfa(alphabet, (row0, sink, sink), 0, frozenset({1})))


def _same_alphabet(d1: Dfa, d2: Dfa):
  if d1.alphabet != d2.alphabet:
    raise AlphabetMismatchError(
        f'Alphabets differ: {d1.alphabet} vs {d2.alphabet}.')


def _product(d1: Dfa, d2: Dfa, combine: Callable[[bool, bool], bool]) -> Dfa:
  _same_alphabet(d1, d2)
  return minimize(
      _crawl(
          d1.alphabet, (d1.initial, d2.initial),
          lambda s: combine(s[0] in d1.accepting, s[1] in d2.accepting),
          lambda s, a: (d1.delta[s[0]][a], d2.delta[s[1]][a])))


def complement(d: Dfa) -> Dfa:
  return minimize(
      Dfa(d.alphabet, d.delta, d.initial,
          frozenset(range(d.num_states)) - d.accepting))


def intersect(d1: Dfa, d2: Dfa) -> Dfa:
  return _product(d1, d2, lambda x, y: x and y)


def union(d1: Dfa, d2: Dfa) -> Dfa:
  return _product(d1, d2, lambda x, y: x or y)


def difference(d1: Dfa, d2: Dfa) -> Dfa:
  return _product(d1, d2, lambda x, y: x and not y)


def concatenate(d1: Dfa, d2: Dfa) -> Dfa:
  """The automaton of L(d1)L(d2)."""
  _same_alphabet(d1, d2)

  def enter(q1, targets):
    if q1 in d1.accepting:
      return targets | {d2.initial}
    return targets

  def follow(state, a):
    q1, qs2 = state
    p1 = d1.delta[q1][a]
    return p1, enter(p1, frozenset(d2.delta[q][a] for q in qs2))

  initial = (d1.initial, enter(d1.initial, frozenset()))
  return minimize(
      _crawl(d1.alphabet, initial, lambda s: bool(s[1] & d2.accepting),
             follow))


def star(d: Dfa) -> Dfa:
  """The automaton of L(d)*."""
  # -1 is a fresh accepting copy of the initial state.
  def follow(states, a):
    targets = {d.delta[d.initial if q == -1 else q][a] for q in states}
    if targets & d.accepting:
      targets.add(d.initial)
    return frozenset(targets)

  return minimize(
      _crawl(d.alphabet, frozenset({-1}),
             lambda s: -1 in s or bool(s & d.accepting), follow))


def _children(r: Regex) -> Tuple[Regex, ...]:
  if isinstance(r, (Union, Concat)):
    return r.left, r.right
  if isinstance(r, Star):
    return (r.inner,)
  return ()


def _build(r: Regex, parts: Sequence[Dfa], alphabet: Tuple[Letter, ...]) -> Dfa:
  if isinstance(r, Empty):
    return null(alphabet)
  if isinstance(r, Epsilon):
    return epsilon(alphabet)
  if isinstance(r, Literal):
    return letter(alphabet, r.letter)
  if isinstance(r, Union):
    return union(*parts)
  if isinstance(r, Concat):
    return concatenate(*parts)
  if isinstance(r, Star):
    return star(parts[0])
  raise TypeError(f'Not a regular expression: {r!r}')


def to_min_dfa(r: Regex, alphabet: Sequence[Letter]) -> Dfa:
  """Returns the minimal complete automaton of the language denoted by `r`.

  The tree is walked in post-order with an explicit stack, so long chains of
  concatenations or unions do not hit the recursion limit.
  """
  alphabet = _check_alphabet(alphabet)
  built: List[Dfa] = []
  stack = [(r, False)]
  while stack:
    node, expanded = stack.pop()
    children = _children(node)
    if children and not expanded:
      stack.append((node, True))
      stack.extend((child, False) for child in reversed(children))
      continue
    parts = built[len(built) - len(children):]
    del built[len(built) - len(children):]
    built.append(_build(node, parts, alphabet))
  return built[0]


def compile_regex(text: str, alphabet: Sequence[Letter]) -> Dfa:
  """Parses `text` and returns its minimal automaton."""
  return to_min_dfa(parse_regex(text, alphabet), alphabet)


def is_empty(d: Dfa) -> bool:
  return shortest_word(d) is None


def accepts(d: Dfa, word: Word) -> bool:
  return d.accepts(word)


def equal(d1: Dfa, d2: Dfa) -> bool:
  """Whether `d1` and `d2` recognize the same language."""
  _same_alphabet(d1, d2)
  return minimize(d1) == minimize(d2)


def shortest_word(d: Dfa) -> Optional[Word]:
  """Returns a shortest accepted word (length-lexicographic), or None."""
  parent: Dict[int, Tuple[int, Letter]] = {}
  seen = {d.initial}
  queue = collections.deque([d.initial])
  while queue:
    q = queue.popleft()
    if q in d.accepting:
      word = []
      while q in parent:
        q, a = parent[q]
        word.append(a)
      return ''.join(reversed(word))
    for a, p in zip(d.alphabet, d.delta[q]):
      if p not in seen:
        seen.add(p)
        parent[p] = (q, a)
        queue.append(p)
  return None


def all_words(alphabet: Sequence[Letter], max_len: int) -> Iterator[Word]:
  """Yields every word of length at most `max_len` in length-lex order."""
  for n in range(max_len + 1):
    for letters in itertools.product(alphabet, repeat=n):
      yield ''.join(letters)


def words(d: Dfa, max_len: int) -> List[Word]:
  """Returns the accepted words of length at most `max_len`."""
  return [w for w in all_words(d.alphabet, max_len) if d.accepts(w)]
