"""Word problem in the right-angled Artin group of a graph.

Elements are represented by their shortlex normal form: the reduced word
that is lexicographically least, letters ordered by generator name with
the positive letter before its inverse. Normal forms are plain tuples of
:class:`Letter` and so are hashable and immutable.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Sequence
from typing import NamedTuple

from .errors import InvalidInputError, InvariantViolation, ResourceLimitError, WordSyntaxError
from .graph import DefiningGraph

DEFAULT_MAX_RADIUS = 6
DEFAULT_MAX_WORD_LENGTH = 64
DEFAULT_MAX_ELEMENTS = 200_000

EMPTY_WORD = "ε"


class Letter(NamedTuple):
    generator: str
    sign: int

    def inverse(self) -> Letter:
        return Letter(self.generator, -self.sign)

    def key(self) -> tuple[str, int]:
        return (self.generator, 0 if self.sign > 0 else 1)

    def __str__(self) -> str:
        return self.generator if self.sign > 0 else f"{self.generator}^-1"


NormalForm = tuple[Letter, ...]
Word = Sequence[Letter]

IDENTITY: NormalForm = ()


class ConjugateGenerator(NamedTuple):
    """The element ``conjugator * base * conjugator^-1``."""

    base: str
    conjugator: NormalForm

    def label(self) -> str:
        return f"{self.base}@{format_word(self.conjugator)}"


def shortlex_key(w: Word) -> tuple[int, tuple[tuple[str, int], ...]]:
    return (len(w), tuple(x.key() for x in w))


def parse_word(text: str, g: DefiningGraph | None = None) -> tuple[Letter, ...]:
    """Parse ``"c b a b^-1"``. ``ε``, ``e`` or ``1`` alone denote the empty word.

    ``e`` is only treated as the identity when it is not a generator of ``g``.
    """
    tokens = text.split()
    if len(tokens) == 1 and tokens[0] in (EMPTY_WORD, "1", "e") and (g is None or tokens[0] not in g):
        return ()
    out = []
    for tok in tokens:
        name, sign = tok, 1
        if tok.endswith("^-1"):
            name, sign = tok[:-3], -1
        elif tok.endswith("^1"):
            name = tok[:-2]
        if not name or "^" in name:
            raise WordSyntaxError(f"bad word token {tok!r}")
        if g is not None and name not in g:
            raise WordSyntaxError(f"unknown generator {name!r}")
        out.append(Letter(name, sign))
    return tuple(out)


def format_word(w: Word, empty: str = EMPTY_WORD) -> str:
    return " ".join(str(x) for x in w) if w else empty


def inverse(w: Word) -> tuple[Letter, ...]:
    return tuple(x.inverse() for x in reversed(w))


def _check_letters(g: DefiningGraph, w: Word) -> None:
    for x in w:
        if x.generator not in g:
            raise InvalidInputError(f"unknown generator {x.generator!r}")
        if x.sign not in (1, -1):
            raise InvalidInputError(f"letter sign must be +1 or -1, got {x.sign!r}")


def free_reduce(g: DefiningGraph, w: Word) -> list[Letter]:
    """Cancel every pair ``x ... x^-1`` whose interior commutes with ``x``.

    Letters are appended one at a time; the prefix is always reduced, so a
    new letter can cancel against at most one earlier letter.
    """
    out: list[Letter] = []
    for x in w:
        for i in range(len(out) - 1, -1, -1):
            y = out[i]
            if y.generator == x.generator:
                if y.sign == -x.sign:
                    del out[i]
                    break
                out.append(x)
                break
            if not g.adjacent(x.generator, y.generator):
                out.append(x)
                break
        else:
            out.append(x)
    return out


def _lex_linearize(g: DefiningGraph, w: list[Letter]) -> NormalForm:
    """Least word in the commutation class of a reduced word.

    Letter ``j`` must stay after letter ``i < j`` when the two do not
    commute; among letters with no pending predecessor the least is emitted.
    """
    n = len(w)
    later: list[list[int]] = [[] for _ in range(n)]
    blockers = [0] * n
    for j in range(n):
        gj = w[j].generator
        for i in range(j):
            gi = w[i].generator
            if gi == gj or not g.adjacent(gi, gj):
                later[i].append(j)
                blockers[j] += 1
    ready = [i for i in range(n) if not blockers[i]]
    out = []
    while ready:
        i = min(ready, key=lambda k: w[k].key())
        ready.remove(i)
        out.append(w[i])
        for j in later[i]:
            blockers[j] -= 1
            if not blockers[j]:
                ready.append(j)
    return tuple(out)


def normalize(g: DefiningGraph, w: Word) -> NormalForm:
    """Shortlex normal form of the element represented by ``w``."""
    _check_letters(g, w)
    return _lex_linearize(g, free_reduce(g, w))


def multiply(g: DefiningGraph, *words: Word) -> NormalForm:
    return normalize(g, [x for w in words for x in w])


def is_identity(g: DefiningGraph, w: Word) -> bool:
    return not normalize(g, w)


def is_reduced(g: DefiningGraph, w: Word) -> bool:
    return len(free_reduce(g, w)) == len(w)


def commutes(g: DefiningGraph, u: Word, w: Word) -> bool:
    return is_identity(g, [*u, *w, *inverse(u), *inverse(w)])


def terminal_letters(g: DefiningGraph, w: Word) -> list[int]:
    """Positions of letters of a reduced word that can be shuffled to its end."""
    out = []
    for i, x in enumerate(w):
        if all(y.generator != x.generator and g.adjacent(x.generator, y.generator) for y in w[i + 1:]):
            out.append(i)
    return out


def initial_letters(g: DefiningGraph, w: Word) -> list[int]:
    """Positions of letters of a reduced word that can be shuffled to its front."""
    out = []
    for i, x in enumerate(w):
        if all(y.generator != x.generator and g.adjacent(x.generator, y.generator) for y in w[:i]):
            out.append(i)
    return out


def closed_star(g: DefiningGraph, v: str) -> frozenset[str]:
    return g.neighbors(v) | {v}


def _strip_suffix_in(g: DefiningGraph, w: Word, allowed: frozenset[str]) -> NormalForm:
    cur = list(normalize(g, w))
    while True:
        hits = [i for i in terminal_letters(g, cur) if cur[i].generator in allowed]
        if not hits:
            return _lex_linearize(g, cur)
        del cur[hits[0]]


def coset_minimum_exhaustive(g: DefiningGraph, w: Word, generators: Iterable[str]) -> NormalForm:
    """Shortlex-least element of ``w * <generators>`` by breadth-first search.

    Only subgroup elements of length at most ``|w|`` are tried, which
    suffices because ``w = m * h^-1`` is reduced for the coset minimum ``m``.
    """
    w = normalize(g, w)
    gens = sorted(set(generators))
    best = w
    seen = {IDENTITY}
    frontier = [IDENTITY]
    for _ in range(len(w)):
        nxt = []
        for h in frontier:
            for s in gens:
                for sign in (1, -1):
                    hs = normalize(g, [*h, Letter(s, sign)])
                    if len(hs) != len(h) + 1 or hs in seen:
                        continue
                    seen.add(hs)
                    nxt.append(hs)
                    cand = normalize(g, [*w, *hs])
                    if shortlex_key(cand) < shortlex_key(best):
                        best = cand
        frontier = nxt
    return best


def conjugate_canonical(g: DefiningGraph, base: str, conj: Word, verify: bool = False) -> ConjugateGenerator:
    """Canonical name for ``conj * base * conj^-1``.

    The centraliser of a generator is generated by its closed star, so the
    conjugate only depends on the coset ``conj * <star(base)>``. Its least
    element is found by deleting terminal letters that lie in the star.
    With ``verify`` the result is checked against an exhaustive coset search.
    """
    if base not in g:
        raise InvalidInputError(f"unknown base vertex {base!r}")
    star = closed_star(g, base)
    rep = _strip_suffix_in(g, conj, star)
    if verify:
        other = coset_minimum_exhaustive(g, conj, star)
        if other != rep:
            raise InvariantViolation(
                f"coset minimisation disagrees for {base}@{format_word(conj)}: "
                f"{format_word(rep)} vs {format_word(other)}"
            )
        if not is_identity(g, [*conjugate_element(ConjugateGenerator(base, rep)),
                               *inverse(conjugate_element(ConjugateGenerator(base, normalize(g, conj))))]):
            raise InvariantViolation("canonical conjugate denotes a different element")
    return ConjugateGenerator(base, rep)


def conjugate_element(c: ConjugateGenerator) -> tuple[Letter, ...]:
    """A word for the group element ``conjugator * base * conjugator^-1``."""
    return (*c.conjugator, Letter(c.base, 1), *inverse(c.conjugator))


def ball(g: DefiningGraph, radius: int, max_elements: int = DEFAULT_MAX_ELEMENTS) -> list[NormalForm]:
    """All elements of word length at most ``radius``, shortlex sorted."""
    if radius < 0:
        raise InvalidInputError("radius must be non-negative")
    letters = [Letter(v, s) for v in g for s in (1, -1)]
    out = [IDENTITY]
    seen = {IDENTITY}
    frontier = [IDENTITY]
    for _ in range(radius):
        nxt = []
        for x in frontier:
            for s in letters:
                y = normalize(g, [*x, s])
                if len(y) == len(x) + 1 and y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > max_elements:
                        raise ResourceLimitError(
                            f"ball of radius {radius} exceeds {max_elements} elements"
                        )
        nxt.sort(key=shortlex_key)
        out.extend(nxt)
        frontier = nxt
    return out


def enumerate_conjugates(
    g: DefiningGraph,
    base: str,
    radius: int,
    max_radius: int = DEFAULT_MAX_RADIUS,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
) -> list[ConjugateGenerator]:
    """Distinct conjugates of ``base`` whose canonical conjugator has length <= radius."""
    if base not in g:
        raise InvalidInputError(f"unknown base vertex {base!r}")
    if radius < 0:
        raise InvalidInputError("radius must be non-negative")
    if radius > max_radius:
        raise ResourceLimitError(f"conjugator radius {radius} exceeds bound {max_radius}")
    star = closed_star(g, base)
    return [
        ConjugateGenerator(base, x)
        for x in ball(g, radius, max_elements)
        if not any(x[i].generator in star for i in terminal_letters(g, x))
    ]


def word_oracle_form(g: DefiningGraph, w: Word) -> tuple[Letter, ...]:
    """Independent normal form by exploring the rewriting graph.

    Explores all words reachable by swapping adjacent commuting letters;
    as soon as one of them has an adjacent ``x x^-1`` pair it is cancelled
    and the search restarts from the shorter word. The least word of the
    final swap class is returned. Exponential; for testing only.
    """
    cur = tuple(w)
    while True:
        seen = {cur}
        queue = deque([cur])
        shorter = None
        while queue and shorter is None:
            u = queue.popleft()
            for i in range(len(u) - 1):
                a, b = u[i], u[i + 1]
                if a.generator == b.generator and a.sign == -b.sign:
                    shorter = u[:i] + u[i + 2:]
                    break
                if a.generator != b.generator and g.adjacent(a.generator, b.generator):
                    v = u[:i] + (b, a) + u[i + 2:]
                    if v not in seen:
                        seen.add(v)
                        queue.append(v)
        if shorter is None:
            return min(seen, key=shortlex_key)
        cur = shorter
