"""Exception types shared across the package."""


class TermforgeError(Exception):
    """Base class for all errors raised by this package."""


class DecodingError(TermforgeError):
    """Raw input could not be decoded as text.

    Carries the byte offset at which decoding failed.
    """

    def __init__(self, message: str, byte_offset: int):
        super().__init__(f"{message} (byte offset {byte_offset})")
        self.byte_offset = byte_offset


class MixedLanguageError(TermforgeError):
    """Documents of different languages were passed to a single-language build."""


class GrammarSyntaxError(TermforgeError):
    """A term-grammar rule failed to parse.

    Carries the rule index and the character position of the offending input.
    """

    def __init__(self, message: str, rule_index: int, position: int):
        super().__init__(f"rule {rule_index}, char {position}: {message}")
        self.rule_index = rule_index
        self.position = position


class LexicalizationError(TermforgeError):
    """A hypernym pattern has no lexicalization for the requested language."""


class EmptyLexiconError(TermforgeError):
    """A bilingual lexicon with no entries was supplied."""


class StoreError(TermforgeError):
    """Base class for thesaurus store errors."""


class UnknownEntryError(StoreError):
    """An operation referenced an entry id that does not exist."""


class CycleError(StoreError):
    """A mutation would introduce a cycle in the broader-term relation.

    ``path`` holds the offending id sequence, closing the loop.
    """

    def __init__(self, path: list):
        super().__init__("broader relation would become cyclic: " + " -> ".join(path))
        self.path = list(path)


class ConflictError(StoreError):
    """An optimistic-concurrency check failed (stale revision token)."""


class ReviewStateError(StoreError):
    """A review decision was applied to an entry not in candidate status."""

    def __init__(self, entry_id: str, status: str):
        super().__init__(f"entry {entry_id} is not reviewable (status: {status})")
        self.status = status


class PipelineError(TermforgeError):
    """A pipeline stage could not run (typically a missing prerequisite artifact)."""
