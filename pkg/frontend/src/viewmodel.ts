/** View models are verbatim copies of API numbers: no client-side score math.
 *
 * The only transformations allowed here are grouping and labeling; every
 * numeric field must come straight out of a payload field.
 */

import type {
  IndicatorsPayload,
  MetricRecord,
  SupportPayload,
  TracePayload,
} from "./types";

export const INDICATOR_LABELS: Record<number, string> = {
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

export interface WindowView {
  windowStart: number;
  score: number | null;
  ema: number | null;
  coverage: number | null;
  bit: number | null;
}

export interface IndicatorView {
  indicator: number;
  label: string;
  beta: number;
  theta: number;
  windows: WindowView[];
}

export function indicatorViews(payload: IndicatorsPayload): IndicatorView[] {
  return payload.indicators.map((series) => ({
    indicator: series.indicator,
    label: INDICATOR_LABELS[series.indicator] ?? `Indicator ${series.indicator}`,
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

export interface MetricSeriesView {
  metric: string;
  points: { windowStart: number; value: number }[];
}

export function metricSeries(records: MetricRecord[], metric: string): MetricSeriesView {
  return {
    metric,
    points: records
      .filter((r) => r.metric === metric && r.value !== null)
      .map((r) => ({ windowStart: r.window_start, value: r.value as number })),
  };
}

export function metricNames(records: MetricRecord[]): string[] {
  const names = new Set<string>();
  for (const record of records) {
    names.add(record.metric);
  }
  return [...names].sort();
}

export function supportWindows(payload: SupportPayload): { windowStart: number; support: number }[] {
  return payload.points.map((p) => ({ windowStart: p.window_start, support: p.support }));
}

export interface TraceRowView {
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
}

export interface TraceIndicatorView {
  indicator: number;
  label: string;
  score: number | null;
  ema: number | null;
  coverage: number | null;
  bit: number | null;
  rows: TraceRowView[];
}

/** tauOf gives the configured clip cap per feature (display only). */
export function traceViews(
  payload: TracePayload,
  tauOf: (feature: string) => number,
): TraceIndicatorView[] {
  return payload.indicators.map((entry) => ({
    indicator: entry.indicator,
    label: INDICATOR_LABELS[entry.indicator] ?? `Indicator ${entry.indicator}`,
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
