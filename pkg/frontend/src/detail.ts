/**
 * Read-only entry panel: the stored fields plus the corpus-backed displays
 * (usage examples, related terms). Pure rendering of API responses.
 */

import { ApiClient, EntryDetail } from "./api.js";
import { t } from "./i18n.js";

export class DetailPanel {
  private root: HTMLElement;

  constructor(container: HTMLElement, private readonly api: ApiClient) {
    this.root = document.createElement("div");
    this.root.className = "detail";
    container.appendChild(this.root);
  }

  async load(entryId: string): Promise<EntryDetail> {
    const detail = await this.api.entry(entryId);
    this.render(detail);
    return detail;
  }

  private render(detail: EntryDetail): void {
    this.root.textContent = "";
    const entry = detail.entry;

    const heading = document.createElement("h2");
    heading.textContent = entry.term;
    const badge = document.createElement("span");
    badge.className = "id-badge";
    badge.textContent = entry.id;
    heading.appendChild(badge);
    this.root.appendChild(heading);

    const meta = document.createElement("p");
    meta.className = "entry-meta";
    meta.textContent = `${entry.status} · ${entry.source} · ${entry.reliability}`;
    this.root.appendChild(meta);

    for (const explanation of entry.explanations) {
      const p = document.createElement("p");
      p.className = "explanation";
      p.textContent = explanation.category
        ? `${explanation.text} (${explanation.category})`
        : explanation.text;
      this.root.appendChild(p);
    }

    if (detail.broader_terms.length > 0) {
      const list = document.createElement("ul");
      list.className = "broader-paths";
      for (const parent of detail.broader_terms) {
        const item = document.createElement("li");
        item.textContent = `${parent.term} (${parent.id})`;
        list.appendChild(item);
      }
      this.root.appendChild(list);
    }

    const translations = Object.entries(entry.translations).sort();
    if (translations.length > 0) {
      const dl = document.createElement("dl");
      dl.className = "translations";
      for (const [lang, phrases] of translations) {
        const dt = document.createElement("dt");
        dt.textContent = lang;
        const dd = document.createElement("dd");
        dd.textContent = phrases.join("; ");
        dl.append(dt, dd);
      }
      this.root.appendChild(dl);
    }

    if (detail.examples.length > 0) {
      const label = document.createElement("h3");
      label.textContent = t("detail.examples");
      this.root.appendChild(label);
      const list = document.createElement("ul");
      list.className = "examples";
      for (const line of detail.examples) {
        const item = document.createElement("li");
        item.className = "kwic";
        item.textContent = `${line.left} [${line.match}] ${line.right}`;
        list.appendChild(item);
      }
      this.root.appendChild(list);
    }

    if (detail.related.length > 0) {
      const label = document.createElement("h3");
      label.textContent = t("detail.related");
      this.root.appendChild(label);
      const list = document.createElement("ul");
      list.className = "related";
      for (const related of detail.related) {
        const item = document.createElement("li");
        item.textContent = `${related.term} (${related.similarity.toFixed(3)})`;
        if (related.in_store) {
          const mark = document.createElement("span");
          mark.className = "in-store";
          mark.textContent = ` · ${t("detail.inStore")}`;
          item.appendChild(mark);
        }
        list.appendChild(item);
      }
      this.root.appendChild(list);
    }
  }

  element(): HTMLElement {
    return this.root;
  }
}
