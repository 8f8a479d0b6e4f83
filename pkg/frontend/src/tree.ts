/**
 * Expanding multi-level tree over GET /tree.
 *
 * Children load lazily on first expansion. An entry with several broader
 * terms appears under each of them, always wearing the same id badge.
 */

import { ApiClient, TreeNode } from "./api.js";
import { t } from "./i18n.js";
import { ViewState } from "./state.js";

export class TreeView {
  private root: HTMLElement;

  constructor(
    private readonly container: HTMLElement,
    private readonly api: ApiClient,
    private readonly state: ViewState,
    private readonly onSelect: (id: string) => void,
  ) {
    this.root = document.createElement("div");
    this.root.className = "tree";
    container.appendChild(this.root);
  }

  async refresh(): Promise<void> {
    const { tree } = await this.api.tree(undefined, 1);
    this.root.textContent = "";
    if (tree.length === 0) {
      const empty = document.createElement("p");
      empty.className = "tree-empty";
      empty.textContent = t("tree.empty");
      this.root.appendChild(empty);
      return;
    }
    this.root.appendChild(this.renderLevel(tree, ""));
  }

  private renderLevel(nodes: TreeNode[], parentPath: string): HTMLUListElement {
    const list = document.createElement("ul");
    list.className = "tree-level";
    for (const node of nodes) {
      list.appendChild(this.renderNode(node, parentPath));
    }
    return list;
  }

  private renderNode(node: TreeNode, parentPath: string): HTMLLIElement {
    const key = this.state.nodeKey(parentPath, node.id);
    const item = document.createElement("li");
    item.className = "tree-node";
    item.dataset.id = node.id;
    item.dataset.key = key;

    const row = document.createElement("div");
    row.className = "tree-row";

    const toggle = document.createElement("button");
    toggle.type = "button";
    toggle.className = "tree-toggle";
    toggle.textContent = "+";
    toggle.setAttribute("aria-label", t("tree.expand"));

    const label = document.createElement("a");
    label.href = "#";
    label.className = "tree-term";
    label.textContent = node.term;
    label.addEventListener("click", (event) => {
      event.preventDefault();
      this.state.activeEntryId = node.id;
      this.onSelect(node.id);
    });

    const badge = document.createElement("span");
    badge.className = "id-badge";
    badge.dataset.entryId = node.id;
    badge.textContent = node.id;

    row.append(toggle, label, badge);
    item.appendChild(row);

    const childHost = document.createElement("div");
    childHost.className = "tree-children";
    childHost.hidden = true;
    item.appendChild(childHost);

    toggle.addEventListener("click", () => {
      void this.toggleNode(node.id, key, toggle, childHost, parentPath);
    });
    return item;
  }

  /** Exposed for tests: expand/collapse one node, loading children lazily. */
  async toggleNode(
    id: string,
    key: string,
    toggle: HTMLButtonElement,
    childHost: HTMLElement,
    parentPath: string,
  ): Promise<void> {
    const nowOpen = this.state.toggle(key);
    if (!nowOpen) {
      childHost.hidden = true;
      toggle.textContent = "+";
      toggle.setAttribute("aria-label", t("tree.expand"));
      return;
    }
    if (!childHost.dataset.loaded) {
      const { tree } = await this.api.tree(id, 2);
      const children = tree[0]?.children ?? [];
      childHost.appendChild(this.renderLevel(children, key));
      childHost.dataset.loaded = "true";
    }
    childHost.hidden = false;
    toggle.textContent = "−";
    toggle.setAttribute("aria-label", t("tree.collapse"));
  }

  /** Test hook: the id badges currently rendered under a given entry id. */
  badgesUnder(parentId: string): string[] {
    const host = this.root.querySelector<HTMLElement>(
      `li[data-id="${parentId}"] > .tree-children`,
    );
    if (!host) return [];
    return Array.from(
      host.querySelectorAll<HTMLElement>(":scope > ul > li > .tree-row .id-badge"),
    ).map((badge) => badge.dataset.entryId ?? "");
  }

  element(): HTMLElement {
    return this.root;
  }
}
