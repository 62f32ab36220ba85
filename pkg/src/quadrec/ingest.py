"""Reading and writing the tab-separated file formats.

All files are UTF-8, ``\\t``-separated, ``\\n``-terminated, without quoting;
labels may not contain tabs or newlines.  Blank lines and lines starting with
``#`` are ignored on input.

taggings      ``user  tag  resource``
demographics  ``user  gender  age  occupation``
concepts      ``|U|  |T|  |R|  |P|  labels...`` (one concept per line)
model         ``P label`` / ``U user attr...`` / ``T label`` / ``R label`` /
              ``Y user tag resource attr``
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import ParseError, UnbucketableAge, UnknownLabel
from .model import ConceptSet, Dimension, PFolksonomy, QuadriConcept, build_pfolksonomy

MAX_AGE = 120


@dataclass(frozen=True)
class AgeBucketing:
    """Contiguous inclusive age ranges, each with a label."""

    buckets: tuple[tuple[int, int, str], ...]

    def __post_init__(self):
        if not self.buckets:
            raise ValueError("at least one age bucket is required")
        for (lo, hi, _), (nlo, _, _) in zip(self.buckets, self.buckets[1:]):
            if nlo != hi + 1:
                raise ValueError(f"age buckets not contiguous at {hi}/{nlo}")
        for lo, hi, label in self.buckets:
            if lo > hi or not label:
                raise ValueError(f"bad age bucket {lo}-{hi} {label!r}")

    @classmethod
    def parse(cls, text: str) -> AgeBucketing:
        """Parse ``"0-17,18-25,46+"``; ``a+`` runs up to ``MAX_AGE``."""
        buckets = []
        for item in text.split(","):
            item = item.strip()
            try:
                if item.endswith("+"):
                    lo, hi = int(item[:-1]), MAX_AGE
                else:
                    lo_s, hi_s = item.split("-")
                    lo, hi = int(lo_s), int(hi_s)
            except ValueError:
                raise ValueError(f"bad age bucket {item!r}") from None
            buckets.append((lo, hi, item))
        return cls(tuple(buckets))

    def label(self, age: int) -> str | None:
        for lo, hi, label in self.buckets:
            if lo <= age <= hi:
                return label
        return None

    def __str__(self):
        return ",".join(label for _, _, label in self.buckets)


DEFAULT_BUCKETING = AgeBucketing.parse("0-17,18-25,26-35,36-45,46+")


def _records(path) -> Iterator[tuple[int, list[str]]]:
    with open(path, encoding="utf-8", newline="\n") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            yield lineno, [field.strip() for field in line.split("\t")]


def _expect(path, lineno, fields, n, what):
    if len(fields) != n:
        raise ParseError(path, lineno, f"expected {n} tab-separated fields ({what}), got {len(fields)}")
    for i, value in enumerate(fields, 1):
        if not value:
            raise ParseError(path, lineno, f"field {i} is empty")


def parse_taggings(path) -> list[tuple[str, str, str]]:
    out = []
    for lineno, fields in _records(path):
        _expect(path, lineno, fields, 3, "user, tag, resource")
        out.append(tuple(fields))
    return out


def parse_demographics(path, bucketing: AgeBucketing = DEFAULT_BUCKETING) -> dict[str, set[str]]:
    """Map each user to namespaced attributes ``gender:``, ``age:``, ``occ:``."""
    out = {}
    for lineno, fields in _records(path):
        _expect(path, lineno, fields, 4, "user, gender, age, occupation")
        user, gender, age_s, occupation = fields
        try:
            age = int(age_s)
        except ValueError:
            raise ParseError(path, lineno, f"age {age_s!r} is not an integer") from None
        if user in out:
            raise ParseError(path, lineno, f"duplicate user {user!r}")
        bucket = bucketing.label(age)
        if bucket is None:
            raise UnbucketableAge(user, age)
        out[user] = {f"gender:{gender}", f"age:{bucket}", f"occ:{occupation}"}
    return out


def _check_label(label):
    if "\t" in label or "\n" in label:
        raise ValueError(f"label {label!r} contains a tab or newline")
    return label


def write_lines(path, lines: Iterable[str]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in lines:
            fh.write(line + "\n")


def write_taggings(taggings, path) -> None:
    write_lines(path, ("\t".join(map(_check_label, t)) for t in taggings))


def write_demographics(rows, path) -> None:
    """``rows``: (user, gender, age, occupation) tuples."""
    write_lines(path, (f"{u}\t{g}\t{a}\t{o}" for u, g, a, o in rows))


def concept_lines(cs: ConceptSet, f: PFolksonomy) -> Iterator[str]:
    for c in cs:
        labels = c.labels(f)
        sizes = "\t".join(str(len(s)) for s in labels)
        yield sizes + "\t" + "\t".join(_check_label(x) for s in labels for x in s)


def write_concepts(cs: ConceptSet, f: PFolksonomy, path) -> None:
    write_lines(path, concept_lines(cs, f))


def read_concepts(path, f: PFolksonomy) -> ConceptSet:
    concepts = []
    for lineno, fields in _records(path):
        try:
            sizes = [int(x) for x in fields[:4]]
        except ValueError:
            raise ParseError(path, lineno, "first four fields must be set sizes") from None
        if len(sizes) != 4 or min(sizes) < 1 or len(fields) != 4 + sum(sizes):
            raise ParseError(path, lineno, "set sizes do not match the number of labels")
        labels = fields[4:]
        sets = []
        for dim, n in zip(Dimension, sizes):
            chunk, labels = labels[:n], labels[n:]
            idx = []
            for label in chunk:
                i = f.index(dim, label)
                if i is None:
                    raise UnknownLabel(dim.name.lower(), label)
                idx.append(i)
            sets.append(idx)
        concepts.append(QuadriConcept(*sets))
    try:
        return ConceptSet(tuple(concepts))
    except ValueError as exc:
        raise ParseError(path, 0, str(exc)) from None


def write_model(f: PFolksonomy, path) -> None:
    def lines():
        yield "#pfolksonomy"
        for p in f.profiles:
            yield "P\t" + _check_label(p)
        for u, attrs in zip(f.users, f.user_profiles):
            yield "\t".join(["U", _check_label(u)] + [f.profiles[p] for p in sorted(attrs)])
        for t in f.tags:
            yield "T\t" + _check_label(t)
        for r in f.resources:
            yield "R\t" + _check_label(r)
        for q in sorted(f.quadruples):
            yield "Y\t" + "\t".join(f.tables[d][i] for d, i in enumerate(q))

    write_lines(path, lines())


def read_model(path) -> PFolksonomy:
    tables = {"U": [], "T": [], "R": [], "P": []}
    attrs, quads = [], []
    for lineno, fields in _records(path):
        kind = fields[0]
        if kind in ("T", "R", "P"):
            _expect(path, lineno, fields, 2, kind)
            tables[kind].append(fields[1])
        elif kind == "U":
            if len(fields) < 2:
                raise ParseError(path, lineno, "user line needs a label")
            tables["U"].append(fields[1])
            attrs.append(fields[2:])
        elif kind == "Y":
            _expect(path, lineno, fields, 5, "Y user tag resource attribute")
            quads.append((lineno, fields[1:]))
        else:
            raise ParseError(path, lineno, f"unknown record type {kind!r}")
    lookup = {k: {s: i for i, s in enumerate(v)} for k, v in tables.items()}

    def resolve(kind, label, lineno):
        try:
            return lookup[kind][label]
        except KeyError:
            raise ParseError(path, lineno, f"unknown label {label!r}") from None

    user_profiles = [[resolve("P", a, 0) for a in row] for row in attrs]
    index_quads = [
        tuple(resolve(k, s, lineno) for k, s in zip("UTRP", q)) for lineno, q in quads
    ]
    return PFolksonomy.from_quadruples(
        tables["U"], tables["T"], tables["R"], tables["P"], index_quads, user_profiles
    )


def load_folksonomy(taggings_path, demographics_path, bucketing: AgeBucketing = DEFAULT_BUCKETING):
    return build_pfolksonomy(parse_taggings(taggings_path), parse_demographics(demographics_path, bucketing))
