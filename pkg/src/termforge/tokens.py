"""Tokenization and coarse part-of-speech tagging.

The pipeline deliberately avoids external morphological analyzers: a small
rule/lexicon tagger assigns one of six coarse tags, and everything downstream
(term grammar, hypernym patterns, collocate profiles) is defined over those
tags plus surface words.  Real taggers can be plugged in through the
``Tagger`` protocol.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable, Iterable, Protocol

TAGS = ("NOUN", "ADJ", "PREP", "VERB", "OTHER", "PUNCT")

# Words stay whole across internal hyphens/apostrophes; any other
# non-space, non-word character is emitted as a single punctuation token.
DEFAULT_TOKEN_PATTERN = re.compile(r"\w+(?:[-'’]\w+)*|[^\w\s]")


@dataclass(frozen=True)
class Token:
    """One corpus token: surface form, case-folded form, coarse tag."""

    surface: str
    normalized: str
    tag: str

    def __post_init__(self):
        if not self.surface:
            raise ValueError("token surface must be non-empty")
        if self.tag not in TAGS:
            raise ValueError(f"unknown tag {self.tag!r}")


class Tagger(Protocol):
    """Anything that maps a normalized word form to a coarse tag."""

    def tag(self, normalized: str) -> str: ...


@dataclass(frozen=True)
class LanguageProfile:
    """Closed-class lexicons and affix rules driving the default tagger.

    The shipped profiles (``en``, ``cs``) are intentionally small: they only
    need to separate content words from function words well enough for the
    term grammar and the hypernym patterns to operate.
    """

    language: str
    prepositions: frozenset = frozenset()
    verbs: frozenset = frozenset()
    adjectives: frozenset = frozenset()
    other_words: frozenset = frozenset()  # determiners, conjunctions, pronouns...
    adjective_suffixes: tuple = ()
    verb_suffixes: tuple = ()
    stop_words: frozenset = frozenset()
    token_pattern: re.Pattern = DEFAULT_TOKEN_PATTERN


def normalize_phrase(text: str) -> str:
    """Case-fold and collapse whitespace: the canonical phrase form used by
    frequency tables, similarity measures, and store lookups."""
    return " ".join(text.casefold().split())


def fold_diacritics(text: str) -> str:
    """Strip combining marks ("katastrální" -> "katastralni"); dropped
    diacritics are the most common misspelling close-term detection must
    catch."""
    decomposed = unicodedata.normalize("NFKD", text)
    return "".join(ch for ch in decomposed if not unicodedata.combining(ch))


def _is_punct(word: str) -> bool:
    return all(unicodedata.category(ch)[0] in ("P", "S") for ch in word)


_NUMBER_RE = re.compile(r"\d+([.,]\d+)*$")


class RuleTagger:
    """Default tagger: lexicon lookups first, then adjective suffix rules.

    Content words fall through to NOUN, which matches how the default term
    grammar (ADJ* NOUN+) is written.
    """

    def __init__(self, profile: LanguageProfile):
        self.profile = profile

    def tag(self, normalized: str) -> str:
        p = self.profile
        if _is_punct(normalized):
            return "PUNCT"
        if _NUMBER_RE.match(normalized):
            return "OTHER"
        if normalized in p.prepositions:
            return "PREP"
        if normalized in p.other_words:
            return "OTHER"
        if normalized in p.verbs:
            return "VERB"
        if normalized in p.adjectives:
            return "ADJ"
        for suffix in p.verb_suffixes:
            if normalized.endswith(suffix) and len(normalized) > len(suffix) + 1:
                return "VERB"
        for suffix in p.adjective_suffixes:
            if normalized.endswith(suffix) and len(normalized) > len(suffix) + 1:
                return "ADJ"
        return "NOUN"


def tokenize(
    text: str,
    profile: LanguageProfile | None = None,
    tagger: Tagger | None = None,
) -> list[Token]:
    """Split ``text`` into tagged tokens.

    Joining the surfaces with single spaces reconstructs the word content of
    the input; punctuation characters come out as separate PUNCT tokens.
    Empty input yields an empty list.
    """
    if profile is None:
        profile = LanguageProfile(language="und")
    if tagger is None:
        tagger = RuleTagger(profile)
    tokens = []
    for match in profile.token_pattern.finditer(text):
        surface = match.group(0)
        normalized = surface.casefold()
        tokens.append(Token(surface, normalized, tagger.tag(normalized)))
    return tokens


def _read_wordlist(name: str) -> frozenset:
    ref = resources.files("termforge.data").joinpath(name)
    words = set()
    for line in ref.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.add(line.casefold())
    return frozenset(words)


def load_stop_words(language: str, path: str | None = None) -> frozenset:
    """Stop words for ``language``: bundled list, or a user file (one word
    per line, ``#`` comments), or empty when neither exists."""
    if path is not None:
        words = set()
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line and not line.startswith("#"):
                    words.add(line.casefold())
        return frozenset(words)
    try:
        return _read_wordlist(f"stopwords.{language}.txt")
    except FileNotFoundError:
        return frozenset()


_EN = dict(
    prepositions="""
        of in on at by with from to for under over between through during
        against among within without about above below across behind beyond
        near into onto upon per via
    """,
    verbs="""
        is are was were be been being am has have had do does did can could
        will would shall should may might must include includes contains
        contain denotes denote means mean becomes become
    """,
    adjectives="""
        digital new old large small main local global public general common
        private national international auxiliary
    """,
    other_words="""
        the a an this that these those which what who whose whom it its they
        them their he she his her we us our you your i me my and or but nor
        not no yes as if then than so such both each every all any some few
        many much more most other another similar same own very also too only
        just when where why how there here now while because although
    """,
)

_EN_ADJ_SUFFIXES = (
    "graphic", "metric", "tric", "ical", "ial", "ive", "ous", "ary",
    "able", "ible", "less", "ish",
)

_CS = dict(
    prepositions="""
        v ve na do z ze s se k ke ku o u za pod pode nad nade před přede při
        mezi po pro bez od ode proti podle kolem vedle skrz během kvůli dle
    """,
    verbs="""
        je jsou byl byla bylo byly být bývá bude budou není nejsou má mají
        znamená tvoří patří provádí závisí musí může nesmí smí trvá lze
    """,
    adjectives="",
    other_words="""
        a i ale nebo ani či že ten ta to tento tato toto těchto tohoto který
        která které kteří jak kde kdy proč co kdo se si svůj svá své jeho
        její jejich můj tvůj náš váš takový taková takové každý každá
        každé všechny všichni některý některá některé jiný jiná jiné další
        podobný podobná podobné stejný jen pouze také též už již ještě velmi
        tak zde tam když protože aby pak tedy
    """,
)

# Plain "ní" is deliberately absent: vowel+ní words are mostly verbal nouns
# (měření, vyrovnání) while adjectives carry a consonant before the suffix
# (katastrální, státní).
_CS_ADJ_SUFFIXES = (
    "lní", "tní", "vní", "dní", "bní", "mní", "rní", "sní", "zní",
    "kní", "ční", "šní", "žní", "hní", "cní", "jní", "pní",
    "ný", "ná", "né", "ných",
    "ový", "ová", "ové", "ových", "ovým", "ovou",
    "ský", "ská", "ské", "ských", "ským", "skou",
    "cký", "cká", "cké", "ckých", "ckým", "ckou",
    "ický", "ická", "ické", "itý", "itá", "ité",
)


# Czech 3rd-person verb endings distinctive enough for a rule tagger
# (zobrazuje, používá, zpracovávají...).
_CS_VERB_SUFFIXES = ("uje", "ují", "ává", "ávají", "ívá", "ívají")


def _profile_from_spec(
    language: str, spec: dict, suffixes: tuple, verb_suffixes: tuple = ()
) -> LanguageProfile:
    return LanguageProfile(
        language=language,
        prepositions=frozenset(spec["prepositions"].split()),
        verbs=frozenset(spec["verbs"].split()),
        adjectives=frozenset(spec["adjectives"].split()),
        other_words=frozenset(spec["other_words"].split()),
        adjective_suffixes=suffixes,
        verb_suffixes=verb_suffixes,
        stop_words=load_stop_words(language),
    )


_BUILTIN_PROFILES: dict[str, Callable[[], LanguageProfile]] = {
    "en": lambda: _profile_from_spec("en", _EN, _EN_ADJ_SUFFIXES),
    "cs": lambda: _profile_from_spec("cs", _CS, _CS_ADJ_SUFFIXES, _CS_VERB_SUFFIXES),
}

_profile_cache: dict[str, LanguageProfile] = {}


def profile_for(language: str) -> LanguageProfile:
    """Profile for ``language``; unknown languages get a bare default that
    tags every content word NOUN (the documented fallback)."""
    if language not in _profile_cache:
        factory = _BUILTIN_PROFILES.get(language)
        if factory is not None:
            _profile_cache[language] = factory()
        else:
            _profile_cache[language] = LanguageProfile(
                language=language, stop_words=load_stop_words(language)
            )
    return _profile_cache[language]
