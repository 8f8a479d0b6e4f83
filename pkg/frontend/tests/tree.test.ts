/** Tree rendering against a live backend: diamond fixture, lazy expansion,
 * empty state. */

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { ViewState } from "../src/state.js";
import { TreeView } from "../src/tree.js";
import { Backend, seedEntry, startBackend, until } from "./helpers.js";

let backend: Backend;

beforeAll(async () => {
  backend = await startBackend();
});

afterAll(async () => {
  await backend.stop();
});

function makeTree() {
  const host = document.createElement("div");
  document.body.appendChild(host);
  const api = new ApiClient({ baseUrl: backend.baseUrl, token: backend.token });
  const state = new ViewState();
  return new TreeView(host, api, state, () => {});
}

async function expand(tree: TreeView, parentId: string): Promise<void> {
  const item = tree
    .element()
    .querySelector<HTMLElement>(`li[data-id="${parentId}"]`);
  expect(item).not.toBeNull();
  const toggle = item!.querySelector<HTMLButtonElement>(".tree-toggle");
  toggle!.click();
  await until(() => {
    const children = item!.querySelector<HTMLElement>(".tree-children");
    return children && !children.hidden && children.dataset.loaded === "true";
  });
}

describe("tree view", () => {
  it("shows the empty state before any entries exist", async () => {
    const tree = makeTree();
    await tree.refresh();
    expect(tree.element().querySelector(".tree-empty")).not.toBeNull();
  });

  it("renders a diamond with the child under both parents, same id badge", async () => {
    const parentA = await seedEntry(backend, { term: "alpha parent" });
    const parentB = await seedEntry(backend, { term: "beta parent" });
    const child = await seedEntry(backend, {
      term: "diamond child",
      broader: [parentA, parentB],
    });

    const tree = makeTree();
    await tree.refresh();

    // lazy: nothing under the parents until they are expanded
    expect(tree.badgesUnder(parentA)).toEqual([]);
    await expand(tree, parentA);
    await expand(tree, parentB);

    expect(tree.badgesUnder(parentA)).toContain(child);
    expect(tree.badgesUnder(parentB)).toContain(child);

    const badges = Array.from(
      tree
        .element()
        .querySelectorAll<HTMLElement>(`.id-badge[data-entry-id="${child}"]`),
    ).map((badge) => badge.textContent);
    expect(badges).toHaveLength(2);
    expect(new Set(badges).size).toBe(1);
  });

  it("expands deeper levels on demand", async () => {
    const top = await seedEntry(backend, { term: "grandparent" });
    const mid = await seedEntry(backend, { term: "middle", broader: [top] });
    const leaf = await seedEntry(backend, { term: "leaf", broader: [mid] });

    const tree = makeTree();
    await tree.refresh();
    expect(tree.element().querySelector(`li[data-id="${leaf}"]`)).toBeNull();
    await expand(tree, top);
    expect(tree.badgesUnder(top)).toContain(mid);
    expect(tree.element().querySelector(`li[data-id="${leaf}"]`)).toBeNull();
    await expand(tree, mid);
    expect(tree.badgesUnder(mid)).toContain(leaf);
  });
});
