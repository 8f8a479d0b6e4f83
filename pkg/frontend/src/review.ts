/**
 * Candidate review queue: one card per extracted candidate with its rank,
 * provenance, corpus snippets, and suggestion pick-lists. Approve posts the
 * chosen broader ids and any picked translations; reject keeps the record
 * server-side (it stays findable through the search flags).
 */

import {
  ApiClient,
  CandidateItem,
  ExampleLine,
  Suggestions,
} from "./api.js";
import { t } from "./i18n.js";
import { QueueFilter, ViewState } from "./state.js";

export class ReviewQueue {
  private root: HTMLElement;

  constructor(
    private readonly container: HTMLElement,
    private readonly api: ApiClient,
    private readonly state: ViewState,
    private readonly onDecision: () => void = () => {},
  ) {
    this.root = document.createElement("div");
    this.root.className = "review-queue";
    container.appendChild(this.root);
  }

  async refresh(): Promise<void> {
    const page = await this.api.candidates();
    const items = page.results.filter((item) => this.matchesFilter(item));
    this.root.textContent = "";

    const heading = document.createElement("h2");
    heading.textContent = t("review.heading");
    this.root.appendChild(heading);

    if (items.length === 0) {
      const empty = document.createElement("p");
      empty.className = "review-empty";
      empty.textContent = t("review.empty");
      this.root.appendChild(empty);
      return;
    }
    for (const item of items) {
      const [suggestions, examples] = await Promise.all([
        this.api.suggestions(item.id),
        this.api.examples(item.id),
      ]);
      this.root.appendChild(this.renderCard(item, suggestions, examples.examples));
    }
  }

  private matchesFilter(item: CandidateItem): boolean {
    const filter: QueueFilter = this.state.queueFilter;
    if (filter === "ranked") return item.rank !== null;
    if (filter === "manual") return item.rank === null;
    return true;
  }

  private renderCard(
    item: CandidateItem,
    suggestions: Suggestions,
    examples: ExampleLine[],
  ): HTMLElement {
    const card = document.createElement("article");
    card.className = "candidate-card";
    card.dataset.id = item.id;

    const title = document.createElement("h3");
    title.textContent = item.term;
    const badge = document.createElement("span");
    badge.className = "id-badge";
    badge.textContent = item.id;
    title.appendChild(badge);
    card.appendChild(title);

    const provenance = document.createElement("p");
    provenance.className = "provenance";
    provenance.textContent =
      `${t("review.source")}: ${item.source}` +
      (item.rank !== null ? ` · ${t("review.rank")}: ${item.rank}` : "");
    card.appendChild(provenance);

    if (examples.length > 0) {
      const block = document.createElement("section");
      const label = document.createElement("h4");
      label.textContent = t("review.examples");
      block.appendChild(label);
      const list = document.createElement("ul");
      for (const line of examples) {
        const li = document.createElement("li");
        li.className = "kwic";
        li.textContent = `${line.left} [${line.match}] ${line.right}`;
        list.appendChild(li);
      }
      block.appendChild(list);
      card.appendChild(block);
    }

    // hypernym suggestions as checkboxes (store-resolvable ones only)
    const hypernymBlock = document.createElement("section");
    const hypernymLabel = document.createElement("h4");
    hypernymLabel.textContent = t("review.hypernyms");
    hypernymBlock.appendChild(hypernymLabel);
    const chosen = new Set<string>();
    for (const suggestion of suggestions.hypernyms) {
      for (const storeId of suggestion.store_ids) {
        const row = document.createElement("label");
        row.className = "hypernym-option";
        const box = document.createElement("input");
        box.type = "checkbox";
        box.value = storeId;
        box.dataset.term = suggestion.hypernym;
        box.addEventListener("change", () => {
          if (box.checked) chosen.add(storeId);
          else chosen.delete(storeId);
        });
        row.appendChild(box);
        row.appendChild(
          document.createTextNode(
            ` ${suggestion.hypernym} (${suggestion.method}, ${suggestion.score.toFixed(2)})`,
          ),
        );
        hypernymBlock.appendChild(row);
      }
    }
    card.appendChild(hypernymBlock);

    // translation suggestions per language
    const pickedTranslations: Record<string, string[]> = {};
    const langs = Object.keys(suggestions.translations).sort();
    if (langs.length > 0) {
      const block = document.createElement("section");
      const label = document.createElement("h4");
      label.textContent = t("review.translations");
      block.appendChild(label);
      for (const lang of langs) {
        const candidates = suggestions.translations[lang] ?? [];
        if (candidates.length === 0) continue;
        const row = document.createElement("div");
        row.dataset.lang = lang;
        row.appendChild(document.createTextNode(`${lang}: `));
        for (const candidate of candidates) {
          const option = document.createElement("label");
          const box = document.createElement("input");
          box.type = "checkbox";
          box.value = candidate.target_term;
          box.addEventListener("change", () => {
            const list = pickedTranslations[lang] ?? [];
            if (box.checked) {
              pickedTranslations[lang] = [...list, candidate.target_term];
            } else {
              pickedTranslations[lang] = list.filter((v) => v !== candidate.target_term);
            }
          });
          option.appendChild(box);
          option.appendChild(
            document.createTextNode(` ${candidate.target_term} (${candidate.overlap})`),
          );
          row.appendChild(option);
        }
        block.appendChild(row);
      }
      card.appendChild(block);
    }

    const status = document.createElement("p");
    status.className = "review-status";
    status.dataset.role = "status";
    card.appendChild(status);

    const approve = document.createElement("button");
    approve.type = "button";
    approve.className = "approve";
    approve.textContent = t("review.approve");
    approve.addEventListener("click", () => {
      void this.decide(item.id, card, {
        decision: "approve",
        broader: [...chosen],
        edits: Object.keys(pickedTranslations).length
          ? {
              translations: Object.fromEntries(
                Object.entries(pickedTranslations).filter(([, v]) => v.length),
              ),
            }
          : undefined,
      });
    });

    const reject = document.createElement("button");
    reject.type = "button";
    reject.className = "reject";
    reject.textContent = t("review.reject");
    reject.addEventListener("click", () => {
      void this.decide(item.id, card, { decision: "reject" });
    });

    card.append(approve, reject);
    return card;
  }

  private async decide(
    id: string,
    card: HTMLElement,
    request: { decision: "approve" | "reject"; broader?: string[]; edits?: object },
  ): Promise<void> {
    const status = card.querySelector<HTMLElement>('[data-role="status"]');
    try {
      await this.api.review(id, request);
      if (status) {
        status.textContent =
          request.decision === "approve" ? t("review.approved") : t("review.rejected");
      }
      card.dataset.decided = request.decision;
      this.onDecision();
    } catch (error) {
      if (status) {
        status.textContent = `${t("review.error")}: ${
          error instanceof Error ? error.message : error
        }`;
      }
    }
  }

  element(): HTMLElement {
    return this.root;
  }
}
