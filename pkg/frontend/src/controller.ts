// Application state machine: everything the screens render, with all
// inference and validation delegated to the API.

import { ApiClient, ApiError, NetworkError } from "./api.js";
import { applyServerErrors, buildFormModel, formToDoc } from "./forms.js";
import type { FormModel } from "./forms.js";
import type {
    AnswerFeedback, BeliefReportDoc, Phase, PublicState, SchemaDoc,
    TestSummary, Trial,
} from "./types.js";

export type Screen = "start" | "learning" | "editor" | "console" | "results";

/** Default screen for a protocol phase. */
export function screenForPhase(phase: Phase): Screen {
    switch (phase) {
        case "Learning": return "learning";
        case "Building": return "editor";
        case "Tuning": return "console";
        case "Testing": return "results";
        case "Done": return "results";
    }
}

/** The UI may never outrun the protocol: editors only after Learning, etc. */
export function screenAllowed(screen: Screen, phase: Phase): boolean {
    switch (screen) {
        case "start": return true;
        case "learning": return phase === "Learning";
        case "editor": return phase === "Building" || phase === "Tuning";
        case "console": return phase === "Tuning";
        case "results": return phase === "Testing" || phase === "Done";
    }
}

export interface ProbeEntry {
    temperature: number;
    pressure: number;
    report: BeliefReportDoc;
}

export class ParticipantApp {
    state: PublicState | null = null;
    screen: Screen = "start";
    trial: Trial | null = null;
    feedback: AnswerFeedback | null = null;
    form: FormModel | null = null;
    probes: ProbeEntry[] = [];
    summary: TestSummary | null = null;
    engines: string[] = [];
    schemas: SchemaDoc | null = null;
    /** Set after a network failure; `retry` re-runs the failed action. */
    lastError: { message: string; retry: () => Promise<void> } | null = null;

    private listeners: (() => void)[] = [];

    constructor(public api: ApiClient) {}

    onChange(listener: () => void): void {
        this.listeners.push(listener);
    }

    private notify(): void {
        for (const fn of this.listeners) fn();
    }

    /** Wrap an action so a network failure leaves state intact and retryable. */
    private async guarded(action: () => Promise<void>): Promise<void> {
        try {
            await action();
            this.lastError = null;
        } catch (err) {
            if (err instanceof NetworkError) {
                this.lastError = { message: err.message, retry: () => this.guarded(action) };
            } else {
                throw err;
            }
        } finally {
            this.notify();
        }
    }

    async loadMeta(): Promise<void> {
        await this.guarded(async () => {
            this.engines = (await this.api.engines()).engines;
            this.schemas = await this.api.schemas();
        });
    }

    async startSession(engine: string, seed: number): Promise<void> {
        await this.guarded(async () => {
            this.state = await this.api.createSession(engine, seed);
            this.screen = screenForPhase(this.state.phase);
            this.trial = null;
            this.feedback = null;
            this.form = null;
            this.probes = [];
            this.summary = null;
            await this.afterPhaseChange();
        });
    }

    async resumeSession(id: string): Promise<void> {
        await this.guarded(async () => {
            this.state = await this.api.getSession(id);
            this.summary = this.state.test;
            this.probes = [];
            this.screen = screenForPhase(this.state.phase);
            await this.afterPhaseChange();
        });
    }

    private async afterPhaseChange(): Promise<void> {
        if (!this.state) return;
        if (this.screen === "learning" && this.trial === null) {
            this.trial = await this.api.getTrial(this.state.id);
        }
        if (this.screen === "editor" && this.form === null) {
            await this.prepareForm();
        }
    }

    private async prepareForm(): Promise<void> {
        if (!this.state) return;
        if (!this.schemas) this.schemas = await this.api.schemas();
        const stored = await this.api.getSystem(this.state.id);
        this.form = buildFormModel(this.state.engine, this.schemas[this.state.engine],
                                   stored);
    }

    /** Navigate if the protocol phase allows the screen. */
    async requestScreen(screen: Screen): Promise<void> {
        if (!this.state || !screenAllowed(screen, this.state.phase)) return;
        this.screen = screen;
        if (screen === "editor") await this.guarded(() => this.prepareForm());
        else if (screen === "learning" && this.trial === null) {
            await this.guarded(async () => {
                this.trial = await this.api.getTrial(this.state!.id);
            });
        } else {
            this.notify();
        }
    }

    async submitAnswer(verdict: "M" | "W"): Promise<void> {
        await this.guarded(async () => {
            if (!this.state || !this.trial) return;
            this.feedback = await this.api.answer(this.state.id, verdict);
            this.state = await this.api.getSession(this.state.id);
            this.trial = null;
            if (this.state.phase === "Learning") {
                this.trial = await this.api.getTrial(this.state.id);
            } else {
                // criterion reached: route to the system editor automatically
                this.screen = screenForPhase(this.state.phase);
                await this.afterPhaseChange();
            }
        });
    }

    async saveSystem(): Promise<boolean> {
        if (!this.state || !this.form) return false;
        const doc = formToDoc(this.form);
        if (doc === null) {
            this.notify();
            return false;
        }
        let saved = false;
        await this.guarded(async () => {
            try {
                await this.api.putSystem(this.state!.id, doc);
                saved = true;
                this.form!.generalError = null;
            } catch (err) {
                if (err instanceof ApiError && err.status === 400) {
                    applyServerErrors(this.form!, err.body.details ?? [],
                                      err.body.message);
                    return;
                }
                throw err;
            }
            this.state = await this.api.getSession(this.state!.id);
            this.screen = screenForPhase(this.state.phase);
        });
        return saved;
    }

    async runProbe(temperature: number, pressure: number): Promise<void> {
        await this.guarded(async () => {
            if (!this.state) return;
            const report = await this.api.probe(this.state.id, temperature, pressure);
            this.probes.push({ temperature, pressure, report });
            this.state = await this.api.getSession(this.state.id);
        });
    }

    async finish(): Promise<void> {
        await this.guarded(async () => {
            if (!this.state) return;
            this.summary = await this.api.finalize(this.state.id);
            this.state = await this.api.getSession(this.state.id);
            this.screen = screenForPhase(this.state.phase);
        });
    }
}
