"""Words, presentations and the group data file format.

A word is a tuple of *letters*.  Letter ``2*i`` is generator ``i`` and
``2*i + 1`` its inverse, so ``letter ^ 1`` inverts a letter.  The same
numbering indexes the columns of a coset table.

Text syntax is whitespace separated tokens with optional caret exponents,
e.g. ``R1^-2 J R1^2 J^-1``.  A negative or repeated exponent expands into
repeated letters; ``1`` denotes the empty word.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from ..errors import DataError, ValidationError

Word = tuple


def inverse_letter(a: int) -> int:
    return a ^ 1


def free_reduce(word) -> tuple:
    out: list[int] = []
    for a in word:
        if out and out[-1] == a ^ 1:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def cyclic_reduce(word) -> tuple:
    w = free_reduce(word)
    i, j = 0, len(w) - 1
    while i < j and w[i] == w[j] ^ 1:
        i += 1
        j -= 1
    return w[i : j + 1]


def inverse(word) -> tuple:
    return tuple(a ^ 1 for a in reversed(word))


def multiply(*words) -> tuple:
    return free_reduce(a for w in words for a in w)


def power(word, n: int) -> tuple:
    if n < 0:
        return power(inverse(word), -n)
    return free_reduce(tuple(word) * n)


def conjugate(word, by) -> tuple:
    """by^-1 * word * by."""
    return multiply(inverse(by), word, by)


def letters(word) -> list[tuple[int, int]]:
    """(generator index, exponent) pairs, exponent in {1, -1}."""
    return [(a >> 1, -1 if a & 1 else 1) for a in word]


def from_letters(pairs) -> tuple:
    out = []
    for g, e in pairs:
        if e not in (1, -1):
            raise ValidationError(f"exponent must be +-1, got {e}")
        out.append(2 * g + (e < 0))
    return free_reduce(out)


@dataclass
class Presentation:
    generators: list[str]
    relators: list[tuple] = field(default_factory=list)

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            raise ValidationError(f"duplicate generator names in {self.generators}")
        self.relators = [free_reduce(r) for r in self.relators]

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def parse(self, text: str) -> tuple:
        return parse_word(text, self.generators)

    def format(self, word) -> str:
        return format_word(word, self.generators)

    def __str__(self):
        rels = ", ".join(self.format(r) for r in self.relators)
        return f"< {', '.join(self.generators)} | {rels} >"


def parse_word(text: str, names) -> tuple:
    index = {name: i for i, name in enumerate(names)}
    out: list[int] = []
    tokens = text.replace("*", " ").split()
    for tok in tokens:
        if tok == "1":
            continue
        name, caret, exp = tok.partition("^")
        if name not in index:
            raise ValidationError(f"unknown generator {name!r} in {text!r}")
        try:
            e = int(exp) if caret else 1
        except ValueError:
            raise ValidationError(f"bad exponent in {tok!r}") from None
        a = 2 * index[name] + (e < 0)
        out.extend([a] * abs(e))
    return free_reduce(out)


def format_word(word, names) -> str:
    if not word:
        return "1"
    parts = []
    i = 0
    while i < len(word):
        a = word[i]
        j = i
        while j < len(word) and word[j] == a:
            j += 1
        n = (j - i) * (-1 if a & 1 else 1)
        name = names[a >> 1]
        parts.append(name if n == 1 else f"{name}^{n}")
        i = j
    return " ".join(parts)


@dataclass
class GroupData:
    """A presentation plus the side data the subgroup search needs.

    ``torsion`` holds representatives of the conjugacy classes of elements
    of prime order, ``peripheral`` generates one cusp stabilizer and
    ``intersection`` generates the designated base subgroup for staged
    searches.
    """

    presentation: Presentation
    torsion: list[tuple] = field(default_factory=list)
    peripheral: list[tuple] = field(default_factory=list)
    intersection: list[tuple] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    @property
    def generators(self):
        return self.presentation.generators

    def parse(self, text: str) -> tuple:
        return self.presentation.parse(text)

    def format(self, word) -> str:
        return self.presentation.format(word)


SECTIONS = ("generators", "relators", "torsion", "peripheral", "intersection")


def parse_group_data(text: str) -> GroupData:
    """Parse the line-oriented group data format.

    Sections start with ``name:`` on a line of their own; each following
    non-blank line is one word (the ``generators:`` section instead lists
    names separated by whitespace).  ``#`` starts a comment; comment lines of
    the form ``# key: value`` before the first section are kept as metadata.
    """
    sections: dict[str, list[str]] = {}
    meta: dict[str, str] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith("#"):
            if current is None and ":" in line:
                key, _, value = line[1:].partition(":")
                meta[key.strip()] = value.strip()
            continue
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        head, colon, rest = line.partition(":")
        if colon and head.strip() in SECTIONS:
            current = head.strip()
            if current in sections:
                raise DataError(f"line {lineno}: duplicate section {current!r}")
            sections[current] = []
            if rest.strip():
                sections[current].append(rest.strip())
            continue
        if current is None:
            raise DataError(f"line {lineno}: content before the first section")
        sections[current].append(line)

    if "generators" not in sections:
        raise DataError("missing generators: section")
    names = " ".join(sections["generators"]).replace(",", " ").split()
    pres = Presentation(names, [])
    try:
        pres.relators = [parse_word(s, names) for s in sections.get("relators", [])]
        data = GroupData(
            presentation=pres,
            torsion=[parse_word(s, names) for s in sections.get("torsion", [])],
            peripheral=[parse_word(s, names) for s in sections.get("peripheral", [])],
            intersection=[parse_word(s, names) for s in sections.get("intersection", [])],
            meta=meta,
        )
    except ValidationError as exc:
        raise ValidationError(f"group data: {exc}") from None
    return data


def load_group_data(path) -> GroupData:
    return parse_group_data(Path(path).read_text())


def dump_group_data(data: GroupData) -> str:
    lines = [f"# {k}: {v}" for k, v in data.meta.items()]
    lines.append("generators: " + " ".join(data.generators))
    for name in SECTIONS[1:]:
        words = data.presentation.relators if name == "relators" else getattr(data, name)
        lines.append(f"{name}:")
        lines.extend("  " + data.format(w) for w in words)
    return "\n".join(lines) + "\n"
