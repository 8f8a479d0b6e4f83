/**
 * Entry editor: a form over PUT /entries/{id} with pick-lists fed by the
 * suggestion endpoint. Picking a suggested broader term or translation only
 * fills the form; nothing reaches the server until Save. Saves carry the
 * entry's revision count, and a concurrent-edit rejection keeps the buffer.
 */

import { ApiClient, ApiError, EntryDetail, EntryUpdate, Suggestions } from "./api.js";
import { t } from "./i18n.js";
import { ViewState } from "./state.js";

export class EntryEditor {
  private root: HTMLElement;
  private detail: EntryDetail | null = null;
  private suggestions: Suggestions | null = null;

  constructor(
    private readonly container: HTMLElement,
    private readonly api: ApiClient,
    private readonly state: ViewState,
    private readonly onSaved: () => void = () => {},
  ) {
    this.root = document.createElement("div");
    this.root.className = "editor";
    container.appendChild(this.root);
  }

  async load(entryId: string): Promise<void> {
    this.detail = await this.api.entry(entryId);
    this.suggestions = await this.api.suggestions(entryId);
    const entry = this.detail.entry;
    this.state.openBuffer(entry.id, entry.revisions.length, {
      term: entry.term,
      variants: [...entry.variants],
      explanations: entry.explanations.map((e) => ({ ...e })),
      translations: Object.fromEntries(
        Object.entries(entry.translations).map(([lang, list]) => [lang, [...list]]),
      ),
      broader: [...entry.broader],
    });
    this.render();
  }

  private buffer(): EntryUpdate {
    const buffer = this.state.editBuffer;
    if (!buffer) throw new Error("editor has no loaded entry");
    return buffer.fields;
  }

  private render(): void {
    if (!this.detail || !this.suggestions) return;
    const fields = this.buffer();
    this.root.textContent = "";

    const heading = document.createElement("h2");
    heading.textContent = t("editor.heading");
    this.root.appendChild(heading);

    const status = document.createElement("p");
    status.className = "editor-status";
    status.dataset.role = "status";
    this.root.appendChild(status);

    const form = document.createElement("form");
    form.addEventListener("submit", (event) => event.preventDefault());
    this.root.appendChild(form);

    // term
    form.appendChild(this.labelled(t("editor.term"), () => {
      const input = document.createElement("input");
      input.name = "term";
      input.value = fields.term ?? "";
      input.addEventListener("input", () => this.state.touchBuffer({ term: input.value }));
      return input;
    }));

    // variants
    form.appendChild(this.labelled(t("editor.variants"), () => {
      const area = document.createElement("textarea");
      area.name = "variants";
      area.value = (fields.variants ?? []).join("\n");
      area.addEventListener("input", () => {
        this.state.touchBuffer({
          variants: area.value.split("\n").map((v) => v.trim()).filter(Boolean),
        });
      });
      return area;
    }));

    // explanations
    form.appendChild(this.labelled(t("editor.explanations"), () => {
      const area = document.createElement("textarea");
      area.name = "explanations";
      area.value = (fields.explanations ?? []).map((e) => e.text).join("\n");
      area.addEventListener("input", () => {
        this.state.touchBuffer({
          explanations: area.value
            .split("\n")
            .map((line) => line.trim())
            .filter(Boolean)
            .map((text) => ({ text, category: "" })),
        });
      });
      return area;
    }));

    form.appendChild(this.renderBroaderSection());
    form.appendChild(this.renderTranslationSection());

    const save = document.createElement("button");
    save.type = "button";
    save.name = "save";
    save.textContent = t("editor.save");
    save.addEventListener("click", () => void this.save());
    form.appendChild(save);
  }

  private labelled(caption: string, make: () => HTMLElement): HTMLElement {
    const wrapper = document.createElement("label");
    wrapper.className = "field";
    const span = document.createElement("span");
    span.textContent = caption;
    wrapper.append(span, make());
    return wrapper;
  }

  private renderBroaderSection(): HTMLElement {
    const fields = this.buffer();
    const section = document.createElement("fieldset");
    section.className = "broader-section";
    const legend = document.createElement("legend");
    legend.textContent = t("editor.broader");
    section.appendChild(legend);

    const list = document.createElement("ul");
    list.className = "broader-list";
    for (const parentId of fields.broader ?? []) {
      const item = document.createElement("li");
      item.dataset.parentId = parentId;
      const named = this.detail?.broader_terms.find((b) => b.id === parentId);
      item.textContent = named ? `${named.term} (${parentId})` : parentId;
      const remove = document.createElement("button");
      remove.type = "button";
      remove.textContent = t("editor.removeBroader");
      remove.addEventListener("click", () => {
        this.state.touchBuffer({
          broader: (this.buffer().broader ?? []).filter((b) => b !== parentId),
        });
        this.render();
      });
      item.appendChild(remove);
      list.appendChild(item);
    }
    section.appendChild(list);

    // suggestion pick-list: only suggestions resolvable to store entries
    const pick = document.createElement("select");
    pick.name = "broader-suggestions";
    pick.setAttribute("aria-label", t("editor.broaderSuggestions"));
    const placeholder = document.createElement("option");
    placeholder.value = "";
    placeholder.textContent = t("editor.pick");
    pick.appendChild(placeholder);
    for (const suggestion of this.suggestions?.hypernyms ?? []) {
      for (const storeId of suggestion.store_ids) {
        const option = document.createElement("option");
        option.value = storeId;
        option.textContent = `${suggestion.hypernym} (${suggestion.method}, ${suggestion.score.toFixed(2)})`;
        pick.appendChild(option);
      }
    }
    pick.addEventListener("change", () => {
      if (!pick.value) return;
      const broader = this.buffer().broader ?? [];
      if (!broader.includes(pick.value)) {
        this.state.touchBuffer({ broader: [...broader, pick.value] });
      }
      this.render();
    });
    section.appendChild(pick);

    // manual entry stays possible
    const manual = document.createElement("input");
    manual.name = "manual-broader";
    manual.placeholder = t("editor.manualBroader");
    const add = document.createElement("button");
    add.type = "button";
    add.name = "add-broader";
    add.textContent = t("editor.addBroader");
    add.addEventListener("click", () => {
      const value = manual.value.trim();
      if (!value) return;
      const broader = this.buffer().broader ?? [];
      if (!broader.includes(value)) {
        this.state.touchBuffer({ broader: [...broader, value] });
      }
      this.render();
    });
    section.append(manual, add);
    return section;
  }

  private renderTranslationSection(): HTMLElement {
    const fields = this.buffer();
    const section = document.createElement("fieldset");
    section.className = "translations-section";
    const legend = document.createElement("legend");
    legend.textContent = t("editor.translations");
    section.appendChild(legend);

    const languages = new Set<string>([
      ...Object.keys(fields.translations ?? {}),
      ...Object.keys(this.suggestions?.translations ?? {}),
    ]);
    for (const lang of [...languages].sort()) {
      const row = document.createElement("div");
      row.className = "translation-row";
      row.dataset.lang = lang;

      const label = document.createElement("label");
      label.textContent = lang;
      row.appendChild(label);

      const input = document.createElement("input");
      input.name = `translation-${lang}`;
      input.value = (fields.translations?.[lang] ?? []).join("; ");
      input.addEventListener("input", () => {
        const translations = { ...(this.buffer().translations ?? {}) };
        translations[lang] = input.value.split(";").map((v) => v.trim()).filter(Boolean);
        this.state.touchBuffer({ translations });
      });
      row.appendChild(input);

      const picks = this.suggestions?.translations?.[lang] ?? [];
      if (picks.length > 0) {
        const pick = document.createElement("select");
        pick.name = `translation-pick-${lang}`;
        pick.setAttribute("aria-label", t("editor.translationSuggestions"));
        const placeholder = document.createElement("option");
        placeholder.value = "";
        placeholder.textContent = t("editor.pick");
        pick.appendChild(placeholder);
        for (const candidate of picks) {
          const option = document.createElement("option");
          option.value = candidate.target_term;
          option.textContent = `${candidate.target_term} (${candidate.overlap})`;
          pick.appendChild(option);
        }
        pick.addEventListener("change", () => {
          if (!pick.value) return;
          const translations = { ...(this.buffer().translations ?? {}) };
          const list = translations[lang] ?? [];
          if (!list.includes(pick.value)) translations[lang] = [...list, pick.value];
          this.state.touchBuffer({ translations });
          this.render();
        });
        row.appendChild(pick);
      }
      section.appendChild(row);
    }
    return section;
  }

  async save(): Promise<void> {
    const buffer = this.state.editBuffer;
    if (!buffer) return;
    const status = this.root.querySelector<HTMLElement>('[data-role="status"]');
    try {
      await this.api.updateEntry(buffer.entryId, {
        ...buffer.fields,
        expected_revision: buffer.baseRevision,
      });
      this.state.clearBufferAfterSave();
      if (status) status.textContent = t("editor.saved");
      this.onSaved();
      await this.load(buffer.entryId);
    } catch (error) {
      // Failed saves keep the buffer so nothing typed is lost.
      if (status) {
        status.textContent =
          error instanceof ApiError && error.code === "conflict"
            ? t("editor.conflict")
            : `${t("editor.error")}: ${error instanceof Error ? error.message : error}`;
      }
    }
  }

  element(): HTMLElement {
    return this.root;
  }
}
