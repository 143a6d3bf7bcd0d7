import type { StatusName, SummaryTable } from "./types";
import { STATUS_COLORS, STATUS_NAMES } from "./types";

const dollars = new Intl.NumberFormat("en-US", {
  style: "currency",
  currency: "USD",
  maximumFractionDigits: 0,
});

function label(status: StatusName): string {
  return status === "BLANK" ? "(blank)" : status;
}

/** Render the running decision totals; numbers come straight from the server. */
export function renderSummary(el: HTMLElement, table: SummaryTable, heading: string): void {
  const rows = STATUS_NAMES.map((status) => {
    const bucket = table[status];
    return `<tr>
      <td><span class="dot" style="background:${STATUS_COLORS[status]}"></span>${label(status)}</td>
      <td class="num">${bucket.titles}</td>
      <td class="num">${dollars.format(bucket.dollars)}</td>
    </tr>`;
  }).join("");
  el.innerHTML = `<h2>${heading}</h2>
  <table class="summary">
    <thead><tr><th>Subscribed</th><th class="num">Titles</th><th class="num">Dollars</th></tr></thead>
    <tbody>${rows}</tbody>
    <tfoot><tr><td>Total</td>
      <td class="num">${table.total_titles}</td>
      <td class="num">${dollars.format(table.total_dollars)}</td></tr></tfoot>
  </table>`;
}
