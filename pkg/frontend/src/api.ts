import type {
    AnswerFeedback, ApiErrorBody, BeliefReportDoc, DomainDoc, PublicState,
    SchemaDoc, SystemDoc, TestSummary, Trial, Verdict,
} from "./types.js";

/** Error carrying the server's structured {code, field?, message, details?} body. */
export class ApiError extends Error {
    constructor(public status: number, public body: ApiErrorBody) {
        super(body.message);
    }
}

/** The server was unreachable; the action can be retried without state loss. */
export class NetworkError extends Error {
    constructor(public cause_: unknown) {
        super("could not reach the server");
    }
}

export class ApiClient {
    constructor(private base: string = "") {}

    private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
        let response: Response;
        try {
            response = await fetch(this.base + path, {
                method,
                headers: body === undefined ? {} : { "Content-Type": "application/json" },
                body: body === undefined ? undefined : JSON.stringify(body),
            });
        } catch (err) {
            throw new NetworkError(err);
        }
        const text = await response.text();
        const parsed = text ? JSON.parse(text) : null;
        if (!response.ok) {
            const fallback: ApiErrorBody = { code: "http_error", message: response.statusText };
            throw new ApiError(response.status, (parsed as ApiErrorBody) ?? fallback);
        }
        return parsed as T;
    }

    engines(): Promise<{ engines: string[] }> {
        return this.request("GET", "/engines");
    }

    schemas(): Promise<SchemaDoc> {
        return this.request("GET", "/schemas");
    }

    domain(): Promise<DomainDoc> {
        return this.request("GET", "/domain");
    }

    createSession(engine: string, seed: number): Promise<PublicState> {
        return this.request("POST", "/sessions", { engine, seed });
    }

    getSession(id: string): Promise<PublicState> {
        return this.request("GET", `/sessions/${id}`);
    }

    getTrial(id: string): Promise<Trial> {
        return this.request("GET", `/sessions/${id}/trial`);
    }

    answer(id: string, verdict: Verdict): Promise<AnswerFeedback> {
        return this.request("POST", `/sessions/${id}/answer`, { verdict });
    }

    /** Stored system document, or null when none has been saved yet. */
    async getSystem(id: string): Promise<SystemDoc | null> {
        try {
            return await this.request<SystemDoc>("GET", `/sessions/${id}/system`);
        } catch (err) {
            if (err instanceof ApiError && err.status === 404) return null;
            throw err;
        }
    }

    putSystem(id: string, doc: SystemDoc): Promise<{ phase: string }> {
        return this.request("PUT", `/sessions/${id}/system`, doc);
    }

    probe(id: string, temperature: number, pressure: number): Promise<BeliefReportDoc> {
        return this.request("POST", `/sessions/${id}/probe`, { temperature, pressure });
    }

    finalize(id: string): Promise<TestSummary> {
        return this.request("POST", `/sessions/${id}/finalize`);
    }
}
