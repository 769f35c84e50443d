"use strict";
/** Thin fetch client; all data access goes through the service API. */
Object.defineProperty(exports, "__esModule", { value: true });
exports.ApiClient = exports.ApiError = void 0;
class ApiError extends Error {
    status;
    constructor(status, message) {
        super(message);
        this.status = status;
    }
}
exports.ApiError = ApiError;
class ApiClient {
    base;
    constructor(base = "") {
        this.base = base;
    }
    async get(path) {
        const response = await fetch(this.base + path);
        if (!response.ok) {
            throw new ApiError(response.status, `${path}: HTTP ${response.status}`);
        }
        return (await response.json());
    }
    status() {
        return this.get("/status");
    }
    config() {
        return this.get("/config");
    }
    indicators(subject) {
        return this.get(`/indicators?subject=${encodeURIComponent(subject)}`);
    }
    support(subject) {
        return this.get(`/support?subject=${encodeURIComponent(subject)}`);
    }
    baselines(subject) {
        return this.get(`/baselines?subject=${encodeURIComponent(subject)}`);
    }
    aggregated(subject, metric) {
        const filter = metric ? `&metric=${encodeURIComponent(metric)}` : "";
        return this.get(`/metrics/aggregated?subject=${encodeURIComponent(subject)}${filter}`);
    }
    contextual(subject, metric) {
        const filter = metric ? `&metric=${encodeURIComponent(metric)}` : "";
        return this.get(`/metrics/contextual?subject=${encodeURIComponent(subject)}${filter}`);
    }
    trace(subject, window) {
        return this.get(`/trace/${window}?subject=${encodeURIComponent(subject)}`);
    }
    async submitPhq9(body) {
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
exports.ApiClient = ApiClient;
