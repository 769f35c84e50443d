/** Explainability panel: per-indicator contribution tables as HTML. */

import { escapeHtml, fmt, fmtTime } from "./format";
import type { TraceIndicatorView } from "./viewmodel";

function rowHtml(row: {
  feature: string;
  direction: string;
  weight: number;
  available: boolean;
  value: number | null;
  mu: number | null;
  sigma: number | null;
  z: number | null;
  psi: number | null;
  clipped: boolean;
}): string {
  const capBadge = row.clipped ? ` <span class="badge cap">capped</span>` : "";
  const cls = row.available ? "row-available" : "row-absent";
  return (
    `<tr class="${cls}">` +
    `<td>${escapeHtml(row.feature)}${capBadge}</td>` +
    `<td data-field="value">${fmt(row.value, 4)}</td>` +
    `<td data-field="mu">${fmt(row.mu, 4)}</td>` +
    `<td data-field="sigma">${fmt(row.sigma, 4)}</td>` +
    `<td data-field="z">${fmt(row.z, 4)}</td>` +
    `<td>${escapeHtml(row.direction)}</td>` +
    `<td data-field="psi">${fmt(row.psi, 4)}</td>` +
    `<td data-field="weight">${fmt(row.weight, 2)}</td>` +
    `</tr>`
  );
}

export function tracePanel(
  windowStart: number,
  support: number | null,
  indicators: TraceIndicatorView[],
): string {
  const header =
    `<h3>Window ${fmtTime(windowStart)}` +
    (support === null ? "" : ` — support signal ${support}`) +
    `</h3>`;
  const sections = indicators
    .map((view) => {
      const absent = view.rows.filter((r) => !r.available).length;
      return (
        `<section class="trace-indicator" data-indicator="${view.indicator}">` +
        `<h4>(${view.indicator}) ${escapeHtml(view.label)}</h4>` +
        `<p class="trace-summary">` +
        `score <b data-field="score">${fmt(view.score, 6)}</b>, ` +
        `smoothed <b data-field="ema">${fmt(view.ema, 6)}</b>, ` +
        `coverage <b data-field="coverage">${fmt(view.coverage, 4)}</b>` +
        ` (${absent} feature${absent === 1 ? "" : "s"} absent), ` +
        `presence bit <b data-field="bit">${view.bit ?? "–"}</b></p>` +
        `<table class="trace-table"><thead><tr>` +
        `<th>feature</th><th>value</th><th>baseline μ</th><th>baseline σ</th>` +
        `<th>z̃</th><th>direction</th><th>ψ</th><th>weight</th>` +
        `</tr></thead><tbody>` +
        view.rows.map(rowHtml).join("") +
        `</tbody></table></section>`
      );
    })
    .join("");
  return header + sections;
}

export function traceNotFound(windowStart: number): string {
  return (
    `<div class="empty">No trace stored for window ${fmtTime(windowStart)}. ` +
    `Only scored windows carry traces (warmup windows do not).</div>`
  );
}
