"use strict";
/** View models are verbatim copies of API numbers: no client-side score math.
 *
 * The only transformations allowed here are grouping and labeling; every
 * numeric field must come straight out of a payload field.
 */
Object.defineProperty(exports, "__esModule", { value: true });
exports.INDICATOR_LABELS = void 0;
exports.indicatorViews = indicatorViews;
exports.metricSeries = metricSeries;
exports.metricNames = metricNames;
exports.supportWindows = supportWindows;
exports.traceViews = traceViews;
exports.INDICATOR_LABELS = {
    1: "Depressed mood",
    2: "Loss of interest",
    3: "Weight/appetite change",
    4: "Sleep disturbance",
    5: "Psychomotor change",
    6: "Fatigue",
    7: "Worthlessness/guilt",
    8: "Diminished concentration",
    9: "Suicidality",
};
function indicatorViews(payload) {
    return payload.indicators.map((series) => ({
        indicator: series.indicator,
        label: exports.INDICATOR_LABELS[series.indicator] ?? `Indicator ${series.indicator}`,
        beta: series.beta,
        theta: series.theta,
        windows: series.points.map((p) => ({
            windowStart: p.window_start,
            score: p.score,
            ema: p.ema,
            coverage: p.coverage,
            bit: p.bit,
        })),
    }));
}
function metricSeries(records, metric) {
    return {
        metric,
        points: records
            .filter((r) => r.metric === metric && r.value !== null)
            .map((r) => ({ windowStart: r.window_start, value: r.value })),
    };
}
function metricNames(records) {
    const names = new Set();
    for (const record of records) {
        names.add(record.metric);
    }
    return [...names].sort();
}
function supportWindows(payload) {
    return payload.points.map((p) => ({ windowStart: p.window_start, support: p.support }));
}
/** tauOf gives the configured clip cap per feature (display only). */
function traceViews(payload, tauOf) {
    return payload.indicators.map((entry) => ({
        indicator: entry.indicator,
        label: exports.INDICATOR_LABELS[entry.indicator] ?? `Indicator ${entry.indicator}`,
        score: entry.score,
        ema: entry.ema,
        coverage: entry.coverage,
        bit: entry.bit,
        rows: entry.rows.map((row) => ({
            feature: row.feature,
            direction: row.direction,
            weight: row.weight,
            available: row.available,
            value: row.value,
            mu: row.mu,
            sigma: row.sigma,
            z: row.z,
            psi: row.psi,
            clipped: row.z !== null && Math.abs(row.z) >= tauOf(row.feature),
        })),
    }));
}
