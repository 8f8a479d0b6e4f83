/**
 * Client-side view state: which tree nodes are open, which entry is active,
 * the candidate-queue filter, and the unsaved edit buffer.
 *
 * Tree nodes are keyed by their path (parent chain), not by entry id: an
 * entry sitting under two parents expands independently at each place.
 */

import type { EntryUpdate } from "./api.js";

export type QueueFilter = "all" | "ranked" | "manual";

export interface EditBuffer {
  entryId: string;
  baseRevision: number;
  fields: EntryUpdate;
}

export class ViewState {
  readonly expanded = new Set<string>();
  activeEntryId: string | null = null;
  queueFilter: QueueFilter = "all";
  editBuffer: EditBuffer | null = null;

  nodeKey(parentPath: string, id: string): string {
    return parentPath ? `${parentPath}/${id}` : id;
  }

  isExpanded(key: string): boolean {
    return this.expanded.has(key);
  }

  toggle(key: string): boolean {
    if (this.expanded.has(key)) {
      this.expanded.delete(key);
      return false;
    }
    this.expanded.add(key);
    return true;
  }

  openBuffer(entryId: string, baseRevision: number, fields: EntryUpdate): void {
    this.editBuffer = { entryId, baseRevision, fields };
  }

  touchBuffer(patch: Partial<EntryUpdate>): void {
    if (!this.editBuffer) throw new Error("no active edit buffer");
    this.editBuffer.fields = { ...this.editBuffer.fields, ...patch };
  }

  /** Successful saves clear the buffer; failed ones must leave it intact. */
  clearBufferAfterSave(): void {
    this.editBuffer = null;
  }
}
