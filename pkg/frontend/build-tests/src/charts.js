"use strict";
/** Hand-rolled SVG timeline rendering.
 *
 * Pure string builders so tests can assert on output without a DOM. The
 * data values plotted are exactly the view-model numbers; scaling applies
 * only to pixel coordinates, and each sample carries its raw value in a
 * data attribute.
 */
Object.defineProperty(exports, "__esModule", { value: true });
exports.metricChart = metricChart;
exports.indicatorChart = indicatorChart;
exports.supportStrip = supportStrip;
const format_1 = require("./format");
const WIDTH = 640;
const HEIGHT = 120;
const PAD = { left: 46, right: 10, top: 8, bottom: 18 };
function makeScale(times, values, includeValue) {
    const tMin = Math.min(...times);
    const tMax = Math.max(...times);
    let vMin = Math.min(...values);
    let vMax = Math.max(...values);
    if (includeValue !== undefined) {
        vMin = Math.min(vMin, includeValue);
        vMax = Math.max(vMax, includeValue);
    }
    if (vMax - vMin < 1e-9) {
        vMin -= 1;
        vMax += 1;
    }
    const innerW = WIDTH - PAD.left - PAD.right;
    const innerH = HEIGHT - PAD.top - PAD.bottom;
    return {
        x: (t) => PAD.left + (tMax === tMin ? innerW / 2 : ((t - tMin) / (tMax - tMin)) * innerW),
        y: (v) => PAD.top + innerH - ((v - vMin) / (vMax - vMin)) * innerH,
        tMin, tMax, vMin, vMax,
    };
}
function axis(scale) {
    return [
        `<text class="axis" x="2" y="${scale.y(scale.vMax) + 4}">${(0, format_1.fmt)(scale.vMax, 2)}</text>`,
        `<text class="axis" x="2" y="${scale.y(scale.vMin) + 4}">${(0, format_1.fmt)(scale.vMin, 2)}</text>`,
        `<text class="axis" x="${PAD.left}" y="${HEIGHT - 4}">${(0, format_1.fmtTime)(scale.tMin)}</text>`,
        `<text class="axis" x="${WIDTH - PAD.right - 40}" y="${HEIGHT - 4}">${(0, format_1.fmtTime)(scale.tMax)}</text>`,
    ].join("");
}
function polyline(points, scale, cssClass) {
    const coords = points
        .map((p) => `${scale.x(p.t).toFixed(1)},${scale.y(p.v).toFixed(1)}`)
        .join(" ");
    return `<polyline class="${cssClass}" fill="none" points="${coords}"/>`;
}
function sampleDots(points, scale, windowAttr = "data-window") {
    return points
        .map((p) => `<circle class="dot" r="2.5" cx="${scale.x(p.t).toFixed(1)}" ` +
        `cy="${scale.y(p.v).toFixed(1)}" ${windowAttr}="${p.t}" data-value="${p.v}">` +
        `<title>t=${(0, format_1.fmtTime)(p.t)} value=${(0, format_1.fmt)(p.v, 6)}</title></circle>`)
        .join("");
}
function metricChart(series) {
    if (series.points.length === 0) {
        return `<div class="empty">no samples for ${series.metric}</div>`;
    }
    const pts = series.points.map((p) => ({ t: p.windowStart, v: p.value }));
    const scale = makeScale(pts.map((p) => p.t), pts.map((p) => p.v));
    return (`<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" class="chart" role="img" ` +
        `aria-label="${series.metric} timeline">` +
        axis(scale) +
        polyline(pts, scale, "line metric-line") +
        sampleDots(pts, scale) +
        `</svg>`);
}
/** EMA trajectory with the threshold line and activation shading. */
function indicatorChart(view) {
    const emaPts = view.windows
        .filter((w) => w.ema !== null)
        .map((w) => ({ t: w.windowStart, v: w.ema }));
    if (emaPts.length === 0) {
        return `<div class="empty">no scored windows yet</div>`;
    }
    const scale = makeScale(emaPts.map((p) => p.t), emaPts.map((p) => p.v), view.theta);
    const thresholdY = scale.y(view.theta).toFixed(1);
    const windowPx = view.windows.length > 1
        ? Math.max(2, (scale.x(view.windows[1].windowStart) - scale.x(view.windows[0].windowStart)))
        : 10;
    const shading = view.windows
        .filter((w) => w.bit === 1)
        .map((w) => `<rect class="active" x="${(scale.x(w.windowStart) - windowPx / 2).toFixed(1)}" ` +
        `y="${PAD.top}" width="${windowPx.toFixed(1)}" height="${HEIGHT - PAD.top - PAD.bottom}" ` +
        `data-window="${w.windowStart}"/>`)
        .join("");
    return (`<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" class="chart" role="img" ` +
        `aria-label="indicator ${view.indicator} trajectory">` +
        shading +
        axis(scale) +
        `<line class="threshold" x1="${PAD.left}" x2="${WIDTH - PAD.right}" ` +
        `y1="${thresholdY}" y2="${thresholdY}" data-theta="${view.theta}"/>` +
        polyline(emaPts, scale, "line ema-line") +
        sampleDots(emaPts, scale) +
        `</svg>`);
}
function supportStrip(points) {
    if (points.length === 0) {
        return `<div class="empty">no support signal yet</div>`;
    }
    const times = points.map((p) => p.windowStart);
    const scale = makeScale(times, [0, 1]);
    const cells = points
        .map((p) => `<rect class="${p.support ? "support-on" : "support-off"}" ` +
        `x="${(scale.x(p.windowStart) - 3).toFixed(1)}" y="8" width="6" height="14" ` +
        `data-window="${p.windowStart}" data-support="${p.support}">` +
        `<title>t=${(0, format_1.fmtTime)(p.windowStart)} support=${p.support}</title></rect>`)
        .join("");
    return `<svg viewBox="0 0 ${WIDTH} 30" class="chart support-strip">${cells}</svg>`;
}
