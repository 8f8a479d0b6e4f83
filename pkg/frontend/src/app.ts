/** Application shell: search box, browse panel (tree + detail + editor),
 * and the review queue, wired over one ApiClient and one ViewState. */

import { ApiClient } from "./api.js";
import { AppConfig } from "./config.js";
import { DetailPanel } from "./detail.js";
import { EntryEditor } from "./editor.js";
import { t } from "./i18n.js";
import { ReviewQueue } from "./review.js";
import { ViewState } from "./state.js";
import { TreeView } from "./tree.js";

export class App {
  readonly api: ApiClient;
  readonly state = new ViewState();
  readonly tree: TreeView;
  readonly detail: DetailPanel;
  readonly editor: EntryEditor;
  readonly review: ReviewQueue;

  constructor(rootElement: HTMLElement, config: AppConfig) {
    this.api = new ApiClient(config);

    const nav = document.createElement("nav");
    const browseTab = document.createElement("button");
    browseTab.textContent = t("app.browse");
    const reviewTab = document.createElement("button");
    reviewTab.textContent = t("app.review");
    nav.append(browseTab, reviewTab);
    rootElement.appendChild(nav);

    const searchBox = document.createElement("input");
    searchBox.type = "search";
    searchBox.placeholder = t("search.placeholder");
    rootElement.appendChild(searchBox);
    const searchResults = document.createElement("ul");
    searchResults.className = "search-results";
    rootElement.appendChild(searchResults);

    const browsePanel = document.createElement("section");
    browsePanel.className = "panel-browse";
    const reviewPanel = document.createElement("section");
    reviewPanel.className = "panel-review";
    reviewPanel.hidden = true;
    rootElement.append(browsePanel, reviewPanel);

    browseTab.addEventListener("click", () => {
      browsePanel.hidden = false;
      reviewPanel.hidden = true;
    });
    reviewTab.addEventListener("click", () => {
      browsePanel.hidden = true;
      reviewPanel.hidden = false;
      void this.review.refresh();
    });

    searchBox.addEventListener("change", () => {
      void this.runSearch(searchBox.value, searchResults);
    });

    this.tree = new TreeView(browsePanel, this.api, this.state, (id) => {
      void this.openEntry(id);
    });
    this.detail = new DetailPanel(browsePanel, this.api);
    this.editor = new EntryEditor(browsePanel, this.api, this.state, () => {
      void this.tree.refresh();
    });
    this.review = new ReviewQueue(reviewPanel, this.api, this.state, () => {
      void this.tree.refresh();
    });
  }

  async start(): Promise<void> {
    await this.tree.refresh();
  }

  async openEntry(id: string): Promise<void> {
    this.state.activeEntryId = id;
    await this.detail.load(id);
    await this.editor.load(id);
  }

  private async runSearch(query: string, into: HTMLElement): Promise<void> {
    into.textContent = "";
    if (!query.trim()) return;
    const page = await this.api.search(query, { includeCandidates: true });
    for (const result of page.results) {
      const item = document.createElement("li");
      const link = document.createElement("a");
      link.href = "#";
      link.textContent = `${result.term} (${result.status})`;
      link.addEventListener("click", (event) => {
        event.preventDefault();
        void this.openEntry(result.id);
      });
      item.appendChild(link);
      into.appendChild(item);
    }
  }
}
