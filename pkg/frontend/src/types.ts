// Wire types mirrored from the session-service JSON API.

export type Phase = "Learning" | "Building" | "Tuning" | "Testing" | "Done";
export type Verdict = "M" | "W";

export interface PublicState {
    id: string;
    engine: string;
    seed: number;
    phase: Phase;
    learning_trials: number;
    correct_in_window: number;
    criterion_met: boolean;
    trial_staged: boolean;
    has_system: boolean;
    probe_count: number;
    test: TestSummary | null;
}

export interface Trial {
    temperature: number;
    pressure: number;
    trial_index: number;
}

export interface AnswerFeedback {
    correct: boolean;
    correct_answer: Verdict;
    trials_completed: number;
    correct_in_window: number;
    criterion_met: boolean;
    phase: Phase;
}

export interface BeliefReportDoc {
    scale: string;
    values: Record<string, number>;
    verdict: Verdict;
}

export interface TestRecord {
    temperature: number;
    pressure: number;
    evidence_type: "consistent" | "mixed";
    answer: Verdict;
    correct_answer: Verdict;
    correct: boolean;
}

export interface TestSummary {
    accuracy: number;
    consistent_accuracy: number | null;
    mixed_accuracy: number | null;
    trials_to_tune: number;
    records: TestRecord[];
}

export interface FieldSchema {
    path: string;
    label: string;
    type: string;
    min?: number;
    max?: number;
    default?: number;
    ordered_group?: string;
}

export interface RuleListSchema {
    path: string;
    antecedents: string[];
    fields: FieldSchema[];
}

export interface EngineSchema {
    label: string;
    scale: string;
    fields: FieldSchema[];
    rules?: RuleListSchema;
}

export type SchemaDoc = Record<string, EngineSchema>;

export interface ReadingSpec {
    mean: number;
    sd: number;
}

export interface DomainDoc {
    readings: Record<string, ReadingSpec>;
}

export interface ApiErrorBody {
    code: string;
    field?: string;
    message: string;
    details?: { field: string; message: string }[];
}

// A system document is an engine-specific JSON object with a "kind" tag.
export type SystemDoc = { kind: string } & Record<string, unknown>;
