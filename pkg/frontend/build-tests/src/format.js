"use strict";
/** Display formatting. Full precision is preserved in tooltips/data attrs. */
Object.defineProperty(exports, "__esModule", { value: true });
exports.fmt = fmt;
exports.fmtTime = fmtTime;
exports.escapeHtml = escapeHtml;
function fmt(value, digits = 3) {
    if (value === null) {
        return "–";
    }
    if (Number.isInteger(value) && Math.abs(value) < 1e6) {
        return String(value);
    }
    return value.toFixed(digits);
}
function fmtTime(seconds) {
    const h = Math.floor(seconds / 3600);
    const m = Math.floor((seconds % 3600) / 60);
    const s = Math.floor(seconds % 60);
    const mm = String(m).padStart(2, "0");
    const ss = String(s).padStart(2, "0");
    return h > 0 ? `${h}:${mm}:${ss}` : `${m}:${ss}`;
}
function escapeHtml(text) {
    return text
        .replace(/&/g, "&amp;")
        .replace(/</g, "&lt;")
        .replace(/>/g, "&gt;")
        .replace(/"/g, "&quot;");
}
