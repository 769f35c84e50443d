"use strict";
/** PHQ-9 form model: validation happens entirely before any network call. */
Object.defineProperty(exports, "__esModule", { value: true });
exports.CRISIS_NOTICE = exports.ANSWER_OPTIONS = exports.PHQ9_ITEMS = void 0;
exports.validatePhq9 = validatePhq9;
exports.buildSubmission = buildSubmission;
exports.PHQ9_ITEMS = [
    { key: "Q1", text: "Little interest or pleasure in doing things" },
    { key: "Q2", text: "Feeling down, depressed, or hopeless" },
    { key: "Q3", text: "Trouble falling or staying asleep, or sleeping too much" },
    { key: "Q4", text: "Feeling tired or having little energy" },
    { key: "Q5", text: "Poor appetite or overeating" },
    { key: "Q6", text: "Feeling bad about yourself" },
    { key: "Q7", text: "Moving or speaking slowly, or being fidgety/restless" },
    { key: "Q8", text: "Trouble concentrating on things" },
    { key: "Q9", text: "Thoughts that you would be better off dead, or of hurting yourself" },
];
exports.ANSWER_OPTIONS = [
    { value: 0, label: "Not at all" },
    { value: 1, label: "Several days" },
    { value: 2, label: "More than half the days" },
    { value: 3, label: "Nearly every day" },
];
exports.CRISIS_NOTICE = "If you are having thoughts of self-harm, please reach out now: contact " +
    "local emergency services or a crisis line (988 in the US, 116 123 in the " +
    "UK/IE, or your local equivalent). This tool is not an emergency service.";
/** Every one of Q1..Q9 must be answered with an integer 0-3. */
function validatePhq9(answers) {
    const errors = {};
    for (const item of exports.PHQ9_ITEMS) {
        const value = answers[item.key];
        if (value === null || value === undefined) {
            errors[item.key] = "answer required";
        }
        else if (!Number.isInteger(value) || value < 0 || value > 3) {
            errors[item.key] = "answer must be 0-3";
        }
    }
    for (const key of Object.keys(answers)) {
        if (!exports.PHQ9_ITEMS.some((item) => item.key === key)) {
            errors[key] = "unknown item";
        }
    }
    return { valid: Object.keys(errors).length === 0, errors };
}
/** Returns a request body only when the form is fully valid; null otherwise. */
function buildSubmission(subject, answers, now = () => new Date().toISOString()) {
    if (!validatePhq9(answers).valid) {
        return null;
    }
    const items = {};
    for (const item of exports.PHQ9_ITEMS) {
        items[item.key] = answers[item.key];
    }
    return { subject_id: subject, timestamp: now(), items };
}
