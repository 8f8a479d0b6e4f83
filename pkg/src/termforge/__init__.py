"""termforge: corpus-driven terminology thesaurus workbench.

Pipeline stages build tokenized domain corpora from raw documents, extract
and rank candidate terms against a reference corpus, mine hypernym and
translation candidates, and manage the resulting multilingual thesaurus
through a JSON HTTP API with SKOS export.
"""

__version__ = "0.1.0"

from .cleaning import CleaningConfig, CleaningReport, clean_document
from .corpus import (
    ConcordanceLine,
    CorpusIndex,
    CorpusStats,
    Document,
    Paragraph,
    build_corpus,
    concordance,
    corpus_stats,
)
from .dedup import DedupReport, dedup
from .errors import TermforgeError
from .extraction import TermCandidate, extract_candidates, rank_terms, term_rank
from .grammar import TermGrammar, compile_term_grammar, load_grammar
from .relations import (
    HypernymPattern,
    RelationCandidate,
    extract_hypernym_pairs,
    lexsim,
    load_hypernym_patterns,
    logdice,
    suggest_hypernyms,
)
from .store import ImportMapping, ImportReport, ThesaurusEntry, ThesaurusStore
from .skos import export_skos, import_skos
from .tokens import Token, profile_for, tokenize
from .translations import (
    BilingualLexicon,
    CollocateProfile,
    TranslationCandidate,
    collocate_profile,
    evaluate_translations,
    translation_candidates,
)
