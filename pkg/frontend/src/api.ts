/** Thin fetch client; all data access goes through the service API. */

import type {
  BaselinesPayload,
  IndicatorsPayload,
  MappingConfig,
  MetricRecord,
  StatusPayload,
  SupportPayload,
  TracePayload,
} from "./types";

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export class ApiClient {
  constructor(private base: string = "") {}

  private async get<T>(path: string): Promise<T> {
    const response = await fetch(this.base + path);
    if (!response.ok) {
      throw new ApiError(response.status, `${path}: HTTP ${response.status}`);
    }
    return (await response.json()) as T;
  }

  status(): Promise<StatusPayload> {
    return this.get("/status");
  }

  config(): Promise<MappingConfig> {
    return this.get("/config");
  }

  indicators(subject: string): Promise<IndicatorsPayload> {
    return this.get(`/indicators?subject=${encodeURIComponent(subject)}`);
  }

  support(subject: string): Promise<SupportPayload> {
    return this.get(`/support?subject=${encodeURIComponent(subject)}`);
  }

  baselines(subject: string): Promise<BaselinesPayload> {
    return this.get(`/baselines?subject=${encodeURIComponent(subject)}`);
  }

  aggregated(subject: string, metric?: string): Promise<MetricRecord[]> {
    const filter = metric ? `&metric=${encodeURIComponent(metric)}` : "";
    return this.get(`/metrics/aggregated?subject=${encodeURIComponent(subject)}${filter}`);
  }

  contextual(subject: string, metric?: string): Promise<MetricRecord[]> {
    const filter = metric ? `&metric=${encodeURIComponent(metric)}` : "";
    return this.get(`/metrics/contextual?subject=${encodeURIComponent(subject)}${filter}`);
  }

  trace(subject: string, window: number): Promise<TracePayload> {
    return this.get(`/trace/${window}?subject=${encodeURIComponent(subject)}`);
  }

  async submitPhq9(body: {
    subject_id: string;
    timestamp: string;
    items: Record<string, number>;
  }): Promise<{ absorbed_windows: number; updated_metrics: Record<string, number> }> {
    const response = await fetch(this.base + "/phq9", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!response.ok) {
      const detail = await response.text();
      throw new ApiError(response.status, detail);
    }
    return await response.json();
  }
}
