"use strict";
/** PHQ-9 schema enforcement happens before any network call. */
var __importDefault = (this && this.__importDefault) || function (mod) {
    return (mod && mod.__esModule) ? mod : { "default": mod };
};
Object.defineProperty(exports, "__esModule", { value: true });
const strict_1 = __importDefault(require("node:assert/strict"));
const node_test_1 = require("node:test");
const phq9_1 = require("../src/phq9");
function allAnswered(value = 0) {
    return Object.fromEntries(phq9_1.PHQ9_ITEMS.map((item) => [item.key, value]));
}
(0, node_test_1.test)("complete all-zero form validates and builds the exact schema", () => {
    const answers = allAnswered(0);
    strict_1.default.equal((0, phq9_1.validatePhq9)(answers).valid, true);
    const body = (0, phq9_1.buildSubmission)("local", answers, () => "2026-01-01T00:00:00Z");
    strict_1.default.ok(body);
    strict_1.default.deepEqual(Object.keys(body.items).sort(), [
        "Q1", "Q2", "Q3", "Q4", "Q5", "Q6", "Q7", "Q8", "Q9",
    ]);
    strict_1.default.deepEqual(body, {
        subject_id: "local",
        timestamp: "2026-01-01T00:00:00Z",
        items: allAnswered(0),
    });
});
(0, node_test_1.test)("a single missing item blocks submission", () => {
    const answers = allAnswered(1);
    answers["Q5"] = null;
    const result = (0, phq9_1.validatePhq9)(answers);
    strict_1.default.equal(result.valid, false);
    strict_1.default.ok(result.errors["Q5"]);
    strict_1.default.equal((0, phq9_1.buildSubmission)("local", answers), null);
});
(0, node_test_1.test)("out-of-range and non-integer answers are rejected", () => {
    for (const bad of [-1, 4, 1.5, 2.0001]) {
        const answers = allAnswered(2);
        answers["Q3"] = bad;
        const result = (0, phq9_1.validatePhq9)(answers);
        strict_1.default.equal(result.valid, false, `value ${bad} must fail`);
        strict_1.default.equal((0, phq9_1.buildSubmission)("local", answers), null);
    }
    // boundary values pass
    for (const ok of [0, 3]) {
        strict_1.default.equal((0, phq9_1.validatePhq9)(allAnswered(ok)).valid, true);
    }
});
(0, node_test_1.test)("unknown item keys are rejected", () => {
    const answers = { ...allAnswered(0), Q10: 0 };
    const result = (0, phq9_1.validatePhq9)(answers);
    strict_1.default.equal(result.valid, false);
    strict_1.default.ok(result.errors["Q10"]);
});
(0, node_test_1.test)("every item from Q1 to Q9 is present exactly once in the form model", () => {
    strict_1.default.deepEqual(phq9_1.PHQ9_ITEMS.map((item) => item.key), ["Q1", "Q2", "Q3", "Q4", "Q5", "Q6", "Q7", "Q8", "Q9"]);
});
