"""Two interchangeable Arabic stemmers over shared, versioned rule data.

The light stemmer strips antefixes and prefixes from the front and
postfixes and suffixes from the back, longest match first, repeating until
nothing matches and never leaving fewer than ``min_stem_len`` letters, so
stemming is idempotent on its own output. The root stemmer applies the
identical stripping and then matches the residual against same-length
templates to extract a 3- or 4-letter root, falling back to the residual
when nothing matches. Because both stemmers share one stripping pass, the
equivalence classes of the root stemmer are always at least as coarse as
the light stemmer's.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from importlib.resources import files
from pathlib import Path

from .errors import RuleFormatError

MODE_ROOT = "root"
MODE_LIGHT = "light"
MODE_NONE = "none"
MODES = (MODE_ROOT, MODE_LIGHT, MODE_NONE)

KIND_ROOT = "root"
KIND_STEM = "stem"

RULE_FILES = ("antefixes.txt", "prefixes.txt", "suffixes.txt", "postfixes.txt", "patterns.txt")


def default_rules_dir() -> Path:
    return Path(str(files("semspace") / "data" / "rules"))


def _read_entries(path: Path) -> list[str]:
    """One entry per line; '#' starts a comment; blank lines ignored."""
    entries: list[str] = []
    seen = set()
    for raw in path.read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line or line in seen:
            continue
        seen.add(line)
        entries.append(line)
    return entries


def _longest_first(entries: list[str]) -> tuple[str, ...]:
    return tuple(sorted(entries, key=lambda e: -len(e)))  # stable: file order breaks ties


@dataclass(frozen=True)
class AffixTable:
    antefixes: tuple[str, ...]
    prefixes: tuple[str, ...]
    suffixes: tuple[str, ...]
    postfixes: tuple[str, ...]
    min_stem_len: int = 2

    def __post_init__(self):
        for name in ("antefixes", "prefixes", "suffixes", "postfixes"):
            entries = getattr(self, name)
            if any(not e for e in entries):
                raise RuleFormatError(f"empty entry in {name}")
            if len(set(entries)) != len(entries):
                raise RuleFormatError(f"duplicate entry in {name}")
        if self.min_stem_len < 2:
            raise RuleFormatError("min_stem_len must be >= 2")


@dataclass(frozen=True)
class Pattern:
    template: str
    root_positions: tuple[int, ...]

    def __post_init__(self):
        k = len(self.root_positions)
        if not 3 <= k <= 4:
            raise RuleFormatError(f"pattern {self.template!r}: needs 3 or 4 root positions, got {k}")
        if list(self.root_positions) != sorted(set(self.root_positions)):
            raise RuleFormatError(f"pattern {self.template!r}: positions must be strictly increasing")
        if self.root_positions[-1] >= len(self.template):
            raise RuleFormatError(f"pattern {self.template!r}: position out of range")

    def match(self, residual: str) -> str | None:
        """The extracted root, or None when a literal position disagrees."""
        if len(residual) != len(self.template):
            return None
        roots = set(self.root_positions)
        for i, ch in enumerate(self.template):
            if i not in roots and residual[i] != ch:
                return None
        return "".join(residual[i] for i in self.root_positions)


@dataclass(frozen=True)
class PatternTable:
    patterns: tuple[Pattern, ...]

    def by_length(self, length: int) -> tuple[Pattern, ...]:
        return tuple(p for p in self.patterns if len(p.template) == length)


@dataclass(frozen=True)
class Stripped:
    antefix: str | None = None
    prefix: str | None = None
    suffix: str | None = None
    postfix: str | None = None


@dataclass(frozen=True)
class StemResult:
    original: str
    output: str
    kind: str  # KIND_ROOT or KIND_STEM
    stripped: Stripped
    residual: str  # token minus stripped affixes, before any template match
    pattern: str | None = None  # template that produced a root, if any

    def reconstruct(self) -> str:
        """Re-attach the stripped parts around the residual."""
        s = self.stripped
        return (s.antefix or "") + (s.prefix or "") + self.residual + (s.suffix or "") + (s.postfix or "")


@dataclass(frozen=True)
class Decomposition:
    antefix: str | None
    prefix: str | None
    core: str  # root when a template matched, residual otherwise
    suffix: str | None
    postfix: str | None


def _strip_one(word: str, affixes: tuple[str, ...], side: str, floor: int) -> tuple[str | None, str]:
    for affix in affixes:
        if len(word) - len(affix) < floor:
            continue
        if side == "front" and word.startswith(affix):
            return affix, word[len(affix):]
        if side == "back" and word.endswith(affix):
            return affix, word[: -len(affix)]
    return None, word


def _strip_affixes(token: str, table: AffixTable) -> tuple[Stripped, str]:
    """Strip the four affix regions in word order: antefixes, then prefixes,
    then (from the end) postfixes, then suffixes.

    Each region is exhausted before the next begins, and once a region has
    started, later front (or back) matches from either list accumulate into
    it, so the parts concatenate back to the original string exactly and the
    residual carries no strippable affix at all: stemming is idempotent.
    """
    floor = table.min_stem_len
    rest = token

    antefix_parts: list[str] = []
    while True:
        affix, rest2 = _strip_one(rest, table.antefixes, "front", floor)
        if affix is None:
            break
        antefix_parts.append(affix)
        rest = rest2
    prefix_parts: list[str] = []
    while True:
        affix, rest2 = _strip_one(rest, table.prefixes, "front", floor)
        if affix is None:
            affix, rest2 = _strip_one(rest, table.antefixes, "front", floor)
        if affix is None:
            break
        prefix_parts.append(affix)
        rest = rest2

    postfix_parts: list[str] = []
    while True:
        affix, rest2 = _strip_one(rest, table.postfixes, "back", floor)
        if affix is None:
            break
        postfix_parts.insert(0, affix)
        rest = rest2
    suffix_parts: list[str] = []
    while True:
        affix, rest2 = _strip_one(rest, table.suffixes, "back", floor)
        if affix is None:
            affix, rest2 = _strip_one(rest, table.postfixes, "back", floor)
        if affix is None:
            break
        suffix_parts.insert(0, affix)
        rest = rest2

    return (
        Stripped(
            "".join(antefix_parts) or None,
            "".join(prefix_parts) or None,
            "".join(suffix_parts) or None,
            "".join(postfix_parts) or None,
        ),
        rest,
    )


def light_stem(token: str, table: AffixTable) -> StemResult:
    stripped, residual = _strip_affixes(token, table)
    return StemResult(token, residual, KIND_STEM, stripped, residual)


def _match_root(residual: str, patterns: PatternTable) -> tuple[str, str] | None:
    for pattern in patterns.by_length(len(residual)):
        root = pattern.match(residual)
        if root is not None:
            return root, pattern.template
    return None


def root_stem(token: str, table: AffixTable, patterns: PatternTable) -> StemResult:
    stripped, residual = _strip_affixes(token, table)
    matched = _match_root(residual, patterns)
    if matched is None:
        return StemResult(token, residual, KIND_ROOT, stripped, residual)
    root, template = matched
    return StemResult(token, root, KIND_ROOT, stripped, residual, pattern=template)


def decompose(token: str, table: AffixTable, patterns: PatternTable) -> Decomposition:
    result = root_stem(token, table, patterns)
    s = result.stripped
    return Decomposition(s.antefix, s.prefix, result.output, s.suffix, s.postfix)


def load_affix_table(rules_dir: Path, min_stem_len: int = 2) -> AffixTable:
    def longest(name: str) -> tuple[str, ...]:
        path = rules_dir / name
        if not path.is_file():
            raise RuleFormatError(f"missing rule file: {path}")
        return _longest_first(_read_entries(path))

    return AffixTable(
        antefixes=longest("antefixes.txt"),
        prefixes=longest("prefixes.txt"),
        suffixes=longest("suffixes.txt"),
        postfixes=longest("postfixes.txt"),
        min_stem_len=min_stem_len,
    )


def load_pattern_table(rules_dir: Path) -> PatternTable:
    path = rules_dir / "patterns.txt"
    if not path.is_file():
        raise RuleFormatError(f"missing rule file: {path}")
    patterns = []
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise RuleFormatError(f"{path}:{lineno}: expected 'template<TAB>positions'")
        template = parts[0].strip()
        try:
            positions = tuple(int(p) for p in parts[1].split(","))
        except ValueError:
            raise RuleFormatError(f"{path}:{lineno}: positions must be integers") from None
        patterns.append(Pattern(template, positions))
    return PatternTable(tuple(patterns))


def rules_fingerprint(rules_dir: Path) -> str:
    """Stable hash of the rule files, for provenance tracking."""
    digest = hashlib.sha256()
    for name in RULE_FILES:
        path = rules_dir / name
        digest.update(name.encode("utf-8"))
        digest.update(b"\x00")
        digest.update(path.read_bytes() if path.is_file() else b"")
        digest.update(b"\x00")
    return digest.hexdigest()


def default_tables() -> tuple[AffixTable, PatternTable]:
    rules = default_rules_dir()
    return load_affix_table(rules), load_pattern_table(rules)


@dataclass(frozen=True)
class StemmerConfig:
    """How tokens are reduced before they index matrix rows."""

    mode: str = MODE_NONE
    affixes: AffixTable | None = None
    patterns: PatternTable | None = None
    rules_fingerprint: str = ""
    stopwords: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown stemmer mode: {self.mode!r}")
        if self.mode in (MODE_ROOT, MODE_LIGHT) and self.affixes is None:
            raise ValueError(f"mode {self.mode!r} requires affix rules")
        if self.mode == MODE_ROOT and self.patterns is None:
            raise ValueError("root mode requires pattern rules")

    def stem_token(self, token: str) -> str | None:
        """Reduced form of a normalized token; None drops it (stopword)."""
        if token in self.stopwords:
            return None
        if self.mode == MODE_NONE:
            return token
        if self.mode == MODE_LIGHT:
            return light_stem(token, self.affixes).output
        return root_stem(token, self.affixes, self.patterns).output


def make_config(mode: str, rules_dir: Path | None = None, stopwords: frozenset[str] = frozenset()) -> StemmerConfig:
    """Build a StemmerConfig from a rules directory (the shipped one by default)."""
    if mode == MODE_NONE:
        return StemmerConfig(mode=mode, stopwords=stopwords)
    rules = rules_dir if rules_dir is not None else default_rules_dir()
    return StemmerConfig(
        mode=mode,
        affixes=load_affix_table(rules),
        patterns=load_pattern_table(rules) if mode == MODE_ROOT else None,
        rules_fingerprint=rules_fingerprint(rules),
        stopwords=stopwords,
    )
