/** Externalized UI strings. Thesaurus data itself renders as-is. */

const STRINGS: Record<string, Record<string, string>> = {
  en: {
    "tree.empty": "No entries yet.",
    "tree.heading": "Thesaurus",
    "tree.expand": "Expand",
    "tree.collapse": "Collapse",
    "detail.heading": "Entry",
    "detail.examples": "Corpus examples",
    "detail.related": "Related terms",
    "detail.inStore": "in thesaurus",
    "editor.heading": "Edit entry",
    "editor.term": "Term",
    "editor.variants": "Variants (one per line)",
    "editor.explanations": "Explanations (one per line)",
    "editor.translations": "Translations",
    "editor.broader": "Broader terms",
    "editor.broaderSuggestions": "Suggested broader terms",
    "editor.translationSuggestions": "Suggested translations",
    "editor.addBroader": "Add",
    "editor.removeBroader": "Remove",
    "editor.manualBroader": "Add broader by id",
    "editor.save": "Save",
    "editor.saved": "Saved.",
    "editor.conflict": "Save rejected: the entry changed on the server. Your edits are preserved.",
    "editor.error": "Save failed",
    "editor.pick": "Pick a suggestion…",
    "review.heading": "Candidate review",
    "review.empty": "No candidates waiting for review.",
    "review.rank": "rank",
    "review.source": "source",
    "review.approve": "Approve",
    "review.reject": "Reject",
    "review.examples": "Usage examples",
    "review.hypernyms": "Suggested broader terms",
    "review.translations": "Suggested translations",
    "review.rejected": "Rejected.",
    "review.approved": "Approved.",
    "review.error": "Review failed",
    "search.placeholder": "Search terms…",
    "search.includeCandidates": "include candidates",
    "app.browse": "Browse",
    "app.review": "Review",
  },
};

let locale = "en";

export function setLocale(next: string): void {
  if (STRINGS[next]) locale = next;
}

export function t(key: string): string {
  return STRINGS[locale]?.[key] ?? STRINGS.en?.[key] ?? key;
}
