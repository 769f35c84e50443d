/** Payload shapes of the service API. Field names mirror the server exactly. */

export interface MetricRecord {
  subject_id: string;
  metric: string;
  value: number | null;
  window_start: number;
  quality_ok: boolean;
  provenance: string;
  time: string;
}

export interface IndicatorPoint {
  window_start: number;
  score: number | null;
  ema: number | null;
  coverage: number | null;
  bit: number | null;
}

export interface IndicatorSeries {
  indicator: number;
  beta: number;
  theta: number;
  points: IndicatorPoint[];
}

export interface IndicatorsPayload {
  subject_id: string;
  indicators: IndicatorSeries[];
}

export interface SupportPoint {
  window_start: number;
  support: number;
}

export interface SupportPayload {
  subject_id: string;
  points: SupportPoint[];
}

export interface BaselineMetric {
  mu: number;
  sigma: number;
  count: number;
  last_update: string | null;
}

export interface BaselineSnapshot {
  version: number;
  reason: string;
  metrics: Record<string, BaselineMetric>;
}

export interface BaselinesPayload {
  subject_id: string;
  snapshots: BaselineSnapshot[];
}

export interface TraceRow {
  feature: string;
  weight: number;
  direction: string;
  value: number | null;
  mu: number | null;
  sigma: number | null;
  z: number | null;
  psi: number | null;
  available: boolean;
}

export interface TraceIndicator {
  indicator: number;
  score: number | null;
  ema: number | null;
  coverage: number | null;
  bit: number | null;
  rows: TraceRow[];
}

export interface TracePayload {
  subject_id: string;
  window_start: number;
  support: number | null;
  indicators: TraceIndicator[];
}

export interface MappingConfig {
  entries: {
    feature: string;
    biomarker: string;
    indicator: number;
    direction: string;
    weight: number;
  }[];
  indicators: Record<string, { beta: number; theta: number }>;
  clip: Record<string, number> & { default: number };
  warmup_windows: number;
}

export interface StatusPayload {
  data_dir: string;
  subjects: string[];
  collections: Record<string, number>;
}
