// End-to-end protocol drive against the real HTTP service: the script walks
// the same controller + form-model code paths the browser UI uses.

import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { ApiClient } from "../src/api.js";
import { ParticipantApp } from "../src/controller.js";
import { beliefEntries } from "../src/format.js";
import { getPath } from "../src/forms.js";

const PORT = 8931;
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;
let dataDir: string;

async function waitForServer(): Promise<void> {
    for (let attempt = 0; attempt < 200; attempt++) {
        try {
            const res = await fetch(`${BASE}/engines`);
            if (res.ok) return;
        } catch {
            // not up yet
        }
        await new Promise((r) => setTimeout(r, 100));
    }
    throw new Error("session service did not come up");
}

beforeAll(async () => {
    dataDir = mkdtempSync(join(tmpdir(), "uisbench-ui-"));
    server = spawn("uisbench",
                   ["serve", "--port", String(PORT), "--data-dir", dataDir],
                   { stdio: "ignore" });
    await waitForServer();
});

afterAll(() => {
    server?.kill();
    rmSync(dataDir, { recursive: true, force: true });
});

/** Answer learning trials with the conjunctive heuristic until Building. */
async function learnToCriterion(app: ParticipantApp): Promise<void> {
    for (let i = 0; i < 600 && app.state!.phase === "Learning"; i++) {
        expect(app.trial).not.toBeNull();
        const { temperature, pressure } = app.trial!;
        const verdict = temperature >= 190 && pressure >= 76 ? "M" : "W";
        await app.submitAnswer(verdict);
        expect(app.lastError).toBeNull();
    }
    expect(app.state!.phase).toBe("Building");
    expect(app.screen).toBe("editor");   // criterion reached -> auto-navigation
}

function fillFields(app: ParticipantApp, values: Record<string, string>): void {
    for (const field of app.form!.scalars) {
        const value = values[field.schema.path];
        expect(value, `no scripted value for ${field.schema.path}`).toBeDefined();
        field.text = value!;
    }
}

describe("full participant protocol over HTTP", () => {
    it("completes a session with the independence engine", async () => {
        const app = new ParticipantApp(new ApiClient(BASE));
        await app.loadMeta();
        expect(app.engines).toContain("independence");

        await app.startSession("independence", 91);
        expect(app.state!.phase).toBe("Learning");
        expect(app.screen).toBe("learning");

        await learnToCriterion(app);

        // the editor form was built from the schema served by the API
        expect(app.form).not.toBeNull();
        fillFields(app, {
            "ramps.temp.lo": "185", "ramps.temp.hi": "195",
            "ramps.pressure.lo": "73", "ramps.pressure.hi": "79",
            "params.p_nn": "0.1",
            "params.p_nh": "0.30000000000000004",   // awkward float survives
            "params.p_hn": "0.2", "params.p_hh": "0.9",
        });
        const saved = await app.saveSystem();
        expect(saved).toBe(true);
        expect(app.state!.phase).toBe("Tuning");
        expect(app.screen).toBe("console");

        // editor round-trip: every field comes back losslessly
        const typed = Object.fromEntries(
            app.form!.scalars.map((f) => [f.schema.path, f.text]));
        const stored = await app.api.getSystem(app.state!.id);
        expect(getPath(stored, "params.p_nh")).toBe(0.30000000000000004);
        await app.requestScreen("editor");
        const reloaded = Object.fromEntries(
            app.form!.scalars.map((f) => [f.schema.path, f.text]));
        expect(reloaded).toEqual(typed);

        // probes render the API's numbers verbatim
        await app.requestScreen("console");
        await app.runProbe(200, 82);
        const probe = app.probes[0];
        expect(probe.report.verdict).toBe("M");
        expect(probe.report.values["probability"]).toBe(0.9);
        const display = Object.fromEntries(beliefEntries(probe.report));
        expect(display["P(malfunction)"]).toBe(String(probe.report.values["probability"]));
        expect(Number(display["P(malfunction)"])).toBe(probe.report.values["probability"]);

        await app.finish();
        expect(app.state!.phase).toBe("Done");
        expect(app.screen).toBe("results");
        expect(app.summary!.records).toHaveLength(30);
        expect(app.summary!.trials_to_tune).toBe(1);
    });

    it("completes a session with the certainty-factor engine", async () => {
        const app = new ParticipantApp(new ApiClient(BASE));
        await app.loadMeta();
        await app.startSession("emycin", 17);
        await learnToCriterion(app);

        fillFields(app, {
            "ramps.temp.lo": "185", "ramps.temp.hi": "195",
            "ramps.pressure.lo": "73", "ramps.pressure.hi": "79",
            "activation_threshold": "0",
        });
        const rules = app.form!.rules!;
        rules.rows[0].antecedent = "temp";
        rules.rows[0].fields[0].text = "0";
        rules.rows.push({
            antecedent: "pressure",
            fields: [{ schema: rules.fieldSchemas[0], text: "0", error: null }],
        });
        rules.rows.push({
            antecedent: "temp_and_pressure",
            fields: [{ schema: rules.fieldSchemas[0], text: "0.9", error: null }],
        });

        // server-side validation is authoritative: send an illegal CF first
        rules.rows[2].fields[0].text = "1.5";
        expect(await app.saveSystem()).toBe(false);
        expect(app.state!.phase).toBe("Building");
        expect(rules.rows.some((r) => r.fields[0].error !== null)
               || app.form!.generalError !== null).toBe(true);

        rules.rows[2].fields[0].text = "0.9";
        expect(await app.saveSystem()).toBe(true);
        expect(app.state!.phase).toBe("Tuning");

        const stored = await app.api.getSystem(app.state!.id);
        expect(getPath(stored, "rules.2.cf")).toBe(0.9);
        expect(getPath(stored, "rules.1.antecedent")).toBe("pressure");
        // every rule row round-trips through the editor rebuild
        const typedRules = rules.rows.map((r) => [r.antecedent, r.fields[0].text]);
        await app.requestScreen("editor");
        expect(app.form!.rules!.rows.map((r) => [r.antecedent, r.fields[0].text]))
            .toEqual(typedRules);
        await app.requestScreen("console");

        await app.runProbe(200, 82);
        const report = app.probes[0].report;
        expect(report.scale).toBe("cf");
        expect(report.verdict).toBe("M");
        const display = Object.fromEntries(beliefEntries(report));
        expect(display["CF"]).toBe(String(report.values["cf"]));

        await app.finish();
        expect(app.state!.phase).toBe("Done");
        expect(app.summary!.records).toHaveLength(30);
    });

    it("cannot navigate to the editor during Learning", async () => {
        const app = new ParticipantApp(new ApiClient(BASE));
        await app.loadMeta();
        await app.startSession("fuzzy", 3);
        expect(app.screen).toBe("learning");
        await app.requestScreen("editor");
        expect(app.screen).toBe("learning");   // request was refused
    });

    it("resumes a session from its id", async () => {
        const app = new ParticipantApp(new ApiClient(BASE));
        await app.loadMeta();
        await app.startSession("regression", 55);
        const id = app.state!.id;
        const trial = app.trial!;

        const other = new ParticipantApp(new ApiClient(BASE));
        await other.loadMeta();
        await other.resumeSession(id);
        expect(other.state!.id).toBe(id);
        expect(other.screen).toBe("learning");
        // the staged trial is re-served, not skipped
        expect(other.trial).toEqual(trial);
    });
});
