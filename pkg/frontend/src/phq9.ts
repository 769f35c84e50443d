/** PHQ-9 form model: validation happens entirely before any network call. */

export const PHQ9_ITEMS: { key: string; text: string }[] = [
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

export const ANSWER_OPTIONS = [
  { value: 0, label: "Not at all" },
  { value: 1, label: "Several days" },
  { value: 2, label: "More than half the days" },
  { value: 3, label: "Nearly every day" },
];

export const CRISIS_NOTICE =
  "If you are having thoughts of self-harm, please reach out now: contact " +
  "local emergency services or a crisis line (988 in the US, 116 123 in the " +
  "UK/IE, or your local equivalent). This tool is not an emergency service.";

export interface Phq9Submission {
  subject_id: string;
  timestamp: string;
  items: Record<string, number>;
}

export interface ValidationResult {
  valid: boolean;
  errors: Record<string, string>;
}

/** Every one of Q1..Q9 must be answered with an integer 0-3. */
export function validatePhq9(answers: Record<string, number | null | undefined>): ValidationResult {
  const errors: Record<string, string> = {};
  for (const item of PHQ9_ITEMS) {
    const value = answers[item.key];
    if (value === null || value === undefined) {
      errors[item.key] = "answer required";
    } else if (!Number.isInteger(value) || value < 0 || value > 3) {
      errors[item.key] = "answer must be 0-3";
    }
  }
  for (const key of Object.keys(answers)) {
    if (!PHQ9_ITEMS.some((item) => item.key === key)) {
      errors[key] = "unknown item";
    }
  }
  return { valid: Object.keys(errors).length === 0, errors };
}

/** Returns a request body only when the form is fully valid; null otherwise. */
export function buildSubmission(
  subject: string,
  answers: Record<string, number | null | undefined>,
  now: () => string = () => new Date().toISOString(),
): Phq9Submission | null {
  if (!validatePhq9(answers).valid) {
    return null;
  }
  const items: Record<string, number> = {};
  for (const item of PHQ9_ITEMS) {
    items[item.key] = answers[item.key] as number;
  }
  return { subject_id: subject, timestamp: now(), items };
}
