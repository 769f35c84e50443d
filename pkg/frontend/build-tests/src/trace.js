"use strict";
/** Explainability panel: per-indicator contribution tables as HTML. */
Object.defineProperty(exports, "__esModule", { value: true });
exports.tracePanel = tracePanel;
exports.traceNotFound = traceNotFound;
const format_1 = require("./format");
function rowHtml(row) {
    const capBadge = row.clipped ? ` <span class="badge cap">capped</span>` : "";
    const cls = row.available ? "row-available" : "row-absent";
    return (`<tr class="${cls}">` +
        `<td>${(0, format_1.escapeHtml)(row.feature)}${capBadge}</td>` +
        `<td data-field="value">${(0, format_1.fmt)(row.value, 4)}</td>` +
        `<td data-field="mu">${(0, format_1.fmt)(row.mu, 4)}</td>` +
        `<td data-field="sigma">${(0, format_1.fmt)(row.sigma, 4)}</td>` +
        `<td data-field="z">${(0, format_1.fmt)(row.z, 4)}</td>` +
        `<td>${(0, format_1.escapeHtml)(row.direction)}</td>` +
        `<td data-field="psi">${(0, format_1.fmt)(row.psi, 4)}</td>` +
        `<td data-field="weight">${(0, format_1.fmt)(row.weight, 2)}</td>` +
        `</tr>`);
}
function tracePanel(windowStart, support, indicators) {
    const header = `<h3>Window ${(0, format_1.fmtTime)(windowStart)}` +
        (support === null ? "" : ` — support signal ${support}`) +
        `</h3>`;
    const sections = indicators
        .map((view) => {
        const absent = view.rows.filter((r) => !r.available).length;
        return (`<section class="trace-indicator" data-indicator="${view.indicator}">` +
            `<h4>(${view.indicator}) ${(0, format_1.escapeHtml)(view.label)}</h4>` +
            `<p class="trace-summary">` +
            `score <b data-field="score">${(0, format_1.fmt)(view.score, 6)}</b>, ` +
            `smoothed <b data-field="ema">${(0, format_1.fmt)(view.ema, 6)}</b>, ` +
            `coverage <b data-field="coverage">${(0, format_1.fmt)(view.coverage, 4)}</b>` +
            ` (${absent} feature${absent === 1 ? "" : "s"} absent), ` +
            `presence bit <b data-field="bit">${view.bit ?? "–"}</b></p>` +
            `<table class="trace-table"><thead><tr>` +
            `<th>feature</th><th>value</th><th>baseline μ</th><th>baseline σ</th>` +
            `<th>z̃</th><th>direction</th><th>ψ</th><th>weight</th>` +
            `</tr></thead><tbody>` +
            view.rows.map(rowHtml).join("") +
            `</tbody></table></section>`);
    })
        .join("");
    return header + sections;
}
function traceNotFound(windowStart) {
    return (`<div class="empty">No trace stored for window ${(0, format_1.fmtTime)(windowStart)}. ` +
        `Only scored windows carry traces (warmup windows do not).</div>`);
}
