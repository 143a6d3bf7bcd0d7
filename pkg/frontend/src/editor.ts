import { searchTitles } from "./state";
import type { StatusName } from "./types";
import { STATUS_NAMES } from "./types";

export interface StatusEditor {
  root: HTMLElement;
  setJournals(rows: { key: string; title: string }[]): void;
}

/** Search-and-set editor: type a title, pick a candidate, choose a status.
 *  No mutation is sent while the query is ambiguous. */
export function createStatusEditor(
  onApply: (key: string, status: StatusName) => void,
): StatusEditor {
  let journals: { key: string; title: string }[] = [];
  let selectedKey: string | null = null;

  const root = document.createElement("div");
  root.className = "editor";
  root.innerHTML = `
    <div class="editor-label">Subscribed status editor</div>
    <input type="search" class="editor-query" placeholder="Search journal title" />
    <ul class="editor-candidates"></ul>
    <div class="editor-statuses"></div>
    <button class="editor-apply" disabled>Apply</button>
  `;
  const query = root.querySelector<HTMLInputElement>(".editor-query")!;
  const list = root.querySelector<HTMLUListElement>(".editor-candidates")!;
  const statuses = root.querySelector<HTMLDivElement>(".editor-statuses")!;
  const apply = root.querySelector<HTMLButtonElement>(".editor-apply")!;

  for (const status of STATUS_NAMES) {
    const id = `status-${status}`;
    const wrap = document.createElement("label");
    wrap.htmlFor = id;
    wrap.innerHTML = `<input type="radio" name="status" id="${id}" value="${status}" ${
      status === "MAYBE" ? "checked" : ""
    }/> ${status === "BLANK" ? "(blank)" : status}`;
    statuses.appendChild(wrap);
  }

  function chosenStatus(): StatusName {
    const checked = statuses.querySelector<HTMLInputElement>("input:checked");
    return (checked?.value ?? "MAYBE") as StatusName;
  }

  function refreshCandidates(): void {
    const hits = searchTitles(journals, query.value).slice(0, 8);
    list.textContent = "";
    selectedKey = hits.length === 1 ? hits[0].key : null;
    for (const hit of hits) {
      const item = document.createElement("li");
      item.textContent = hit.title;
      item.dataset.key = hit.key;
      if (hit.key === selectedKey) item.classList.add("selected");
      item.addEventListener("click", () => {
        selectedKey = hit.key;
        query.value = hit.title;
        refreshCandidates();
        selectedKey = hit.key; // survive the refresh
        apply.disabled = false;
      });
      list.appendChild(item);
    }
    apply.disabled = selectedKey === null;
  }

  query.addEventListener("input", refreshCandidates);
  apply.addEventListener("click", () => {
    if (selectedKey !== null) onApply(selectedKey, chosenStatus());
  });

  return {
    root,
    setJournals(rows) {
      journals = rows;
      refreshCandidates();
    },
  };
}
