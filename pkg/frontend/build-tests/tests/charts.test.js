"use strict";
/** Chart semantics: threshold lines, shading, degraded/empty states. */
var __importDefault = (this && this.__importDefault) || function (mod) {
    return (mod && mod.__esModule) ? mod : { "default": mod };
};
Object.defineProperty(exports, "__esModule", { value: true });
const strict_1 = __importDefault(require("node:assert/strict"));
const node_test_1 = require("node:test");
const charts_1 = require("../src/charts");
function view(overrides = {}) {
    return {
        indicator: 5,
        label: "Psychomotor change",
        beta: 0.5,
        theta: 1.0,
        windows: [
            { windowStart: 0, score: 0.1, ema: 0.1, coverage: 0.5, bit: 0 },
            { windowStart: 10, score: 1.4, ema: 0.75, coverage: 0.5, bit: 0 },
            { windowStart: 20, score: 1.9, ema: 1.32, coverage: 0.5, bit: 1 },
            { windowStart: 30, score: 1.2, ema: 1.26, coverage: 0.5, bit: 1 },
        ],
        ...overrides,
    };
}
(0, node_test_1.test)("threshold reference line sits at theta", () => {
    const svg = (0, charts_1.indicatorChart)(view({ theta: 1.25 }));
    strict_1.default.ok(svg.includes(`class="threshold"`));
    strict_1.default.ok(svg.includes(`data-theta="1.25"`));
});
(0, node_test_1.test)("activation shading covers exactly the bit=1 windows", () => {
    const svg = (0, charts_1.indicatorChart)(view());
    const rects = [...svg.matchAll(/class="active"[^/]*data-window="(\d+)"/g)];
    strict_1.default.deepEqual(rects.map((m) => m[1]), ["20", "30"]);
});
(0, node_test_1.test)("ema polyline skips windows without a smoothed value", () => {
    const v = view();
    v.windows[1] = { ...v.windows[1], ema: null };
    const svg = (0, charts_1.indicatorChart)(v);
    const dots = [...svg.matchAll(/data-window="(\d+)" data-value=/g)];
    strict_1.default.deepEqual(dots.map((m) => m[1]), ["0", "20", "30"]);
});
(0, node_test_1.test)("no scored windows renders an explicit empty state", () => {
    const svg = (0, charts_1.indicatorChart)(view({ windows: [] }));
    strict_1.default.ok(svg.includes("no scored windows"));
    strict_1.default.ok(!svg.includes("<svg"));
});
(0, node_test_1.test)("metric chart empty state names the metric", () => {
    const html = (0, charts_1.metricChart)({ metric: "hnr", points: [] });
    strict_1.default.ok(html.includes("no samples for hnr"));
});
(0, node_test_1.test)("support strip marks fired windows distinctly", () => {
    const svg = (0, charts_1.supportStrip)([
        { windowStart: 0, support: 0 },
        { windowStart: 10, support: 1 },
        { windowStart: 20, support: 0 },
    ]);
    strict_1.default.equal((svg.match(/support-on/g) ?? []).length, 1);
    strict_1.default.equal((svg.match(/support-off/g) ?? []).length, 2);
    strict_1.default.ok(svg.includes(`data-support="1"`));
});
