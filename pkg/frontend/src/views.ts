// DOM rendering. One render function per screen; main.ts re-renders on
// every controller change. Belief values are printed verbatim.

import type { ParticipantApp } from "./controller.js";
import type { FieldState, FormModel, RuleRow } from "./forms.js";
import { emptyRuleRow } from "./forms.js";
import { beliefEntries, percent, readingDisplay, SCALE_LABELS, verdictLabel } from "./format.js";

function el<K extends keyof HTMLElementTagNameMap>(
    tag: K, attrs: Record<string, string> = {}, ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
    const node = document.createElement(tag);
    for (const [key, value] of Object.entries(attrs)) {
        if (key === "class") node.className = value;
        else node.setAttribute(key, value);
    }
    node.append(...children);
    return node;
}

function button(label: string, onClick: () => void, cls = "btn"): HTMLButtonElement {
    const b = el("button", { class: cls }, label);
    b.addEventListener("click", onClick);
    return b;
}

export function renderApp(app: ParticipantApp, root: HTMLElement): void {
    root.replaceChildren();
    root.append(renderHeader(app));
    if (app.lastError) {
        root.append(el("div", { class: "banner error" },
            `Connection problem: ${app.lastError.message} `,
            button("Retry", () => { void app.lastError?.retry(); }, "btn small")));
    }
    switch (app.screen) {
        case "start": root.append(renderStart(app)); break;
        case "learning": root.append(renderLearning(app)); break;
        case "editor": root.append(renderEditor(app)); break;
        case "console": root.append(renderConsole(app)); break;
        case "results": root.append(renderResults(app)); break;
    }
}

function renderHeader(app: ParticipantApp): HTMLElement {
    const phase = app.state?.phase ?? "—";
    const header = el("header", {},
        el("h1", {}, "Machine diagnosis workbench"),
        el("div", { class: "phase" }, `Phase: ${phase}`));
    if (app.state && app.state.phase === "Tuning") {
        header.append(el("nav", {},
            button("Editor", () => { void app.requestScreen("editor"); }, "btn small"),
            button("Test console", () => { void app.requestScreen("console"); },
                   "btn small")));
    }
    return header;
}

function renderStart(app: ParticipantApp): HTMLElement {
    const select = el("select", { id: "engine" });
    for (const kind of app.engines) {
        select.append(el("option", { value: kind }, kind));
    }
    const seed = el("input", { type: "number", value: "0", id: "seed" });
    const start = button("Start session", () => {
        void app.startSession(select.value, Number(seed.value) || 0);
    });
    return el("section", { class: "card" },
        el("h2", {}, "New session"),
        el("p", {}, "You will learn to diagnose a machine from temperature and "
            + "pressure readings, then encode your knowledge in an inference system."),
        el("label", {}, "Inference system: ", select),
        el("label", {}, "Seed: ", seed),
        start);
}

function renderLearning(app: ParticipantApp): HTMLElement {
    const section = el("section", { class: "card" }, el("h2", {}, "Learning trials"));
    const state = app.state;
    if (!state) return section;
    if (app.feedback) {
        const fb = app.feedback;
        section.append(el("div", { class: fb.correct ? "banner ok" : "banner warn" },
            `${fb.correct ? "Correct" : "Incorrect"} — the machine was ` +
            `${verdictLabel(fb.correct_answer)}.`));
    }
    if (app.trial) {
        section.append(
            el("div", { class: "readings" },
                el("div", { class: "reading" }, "Temperature: ",
                   el("strong", {}, readingDisplay(app.trial.temperature))),
                el("div", { class: "reading" }, "Pressure: ",
                   el("strong", {}, readingDisplay(app.trial.pressure)))),
            el("p", {}, "Is the machine malfunctioning or working?"),
            el("div", {},
                button("M — malfunction", () => { void app.submitAnswer("M"); }),
                button("W — working", () => { void app.submitAnswer("W"); })));
    }
    section.append(el("p", { class: "muted" },
        `Trials completed: ${state.learning_trials}. ` +
        `Correct in the last 20: ${state.correct_in_window} (need 17).`));
    return section;
}

function fieldInput(field: FieldState, onInput: (text: string) => void): HTMLElement {
    const input = el("input", { type: "text", value: field.text });
    input.addEventListener("input", () => onInput(input.value));
    const hint = field.schema.min !== undefined && field.schema.max !== undefined
        ? ` [${field.schema.min} … ${field.schema.max}]` : "";
    const wrapper = el("label", { class: "field" },
        el("span", {}, field.schema.label + hint), input);
    if (field.error) wrapper.append(el("span", { class: "field-error" }, field.error));
    return wrapper;
}

function ruleRowView(app: ParticipantApp, model: FormModel, row: RuleRow,
                     index: number): HTMLElement {
    const rules = model.rules!;
    const select = el("select", {});
    for (const a of rules.antecedents) {
        const option = el("option", { value: a }, a.replaceAll("_", " "));
        if (a === row.antecedent) option.setAttribute("selected", "selected");
        select.append(option);
    }
    select.addEventListener("change", () => { row.antecedent = select.value; });
    const rowEl = el("div", { class: "rule-row" },
        el("span", { class: "muted" }, `rule ${index + 1}: if `), select);
    for (const field of row.fields) {
        rowEl.append(fieldInput(field, (text) => { field.text = text; }));
    }
    rowEl.append(button("remove", () => {
        rules.rows.splice(index, 1);
        rerender(app);
    }, "btn small danger"));
    return rowEl;
}

// re-render hook installed by main.ts; kept indirect so views stay testable
let rerender: (app: ParticipantApp) => void = () => {};
export function setRerender(fn: (app: ParticipantApp) => void): void {
    rerender = fn;
}

function renderEditor(app: ParticipantApp): HTMLElement {
    const section = el("section", { class: "card" });
    const model = app.form;
    if (!model) return section;
    section.append(el("h2", {}, `System editor — ${model.label}`),
                   el("p", { class: "muted" },
                      `Answers come back on the ${SCALE_LABELS[model.scale] ?? model.scale} scale.`));
    if (model.generalError) {
        section.append(el("div", { class: "banner error" }, model.generalError));
    }
    if (model.rules) {
        const rulesBox = el("div", { class: "rules" }, el("h3", {}, "Rules"));
        model.rules.rows.forEach((row, i) => rulesBox.append(ruleRowView(app, model, row, i)));
        rulesBox.append(button("add rule", () => {
            model.rules!.rows.push(emptyRuleRow(model));
            rerender(app);
        }, "btn small"));
        section.append(rulesBox);
    }
    const fieldsBox = el("div", { class: "fields" }, el("h3", {}, "Parameters"));
    for (const field of model.scalars) {
        fieldsBox.append(fieldInput(field, (text) => { field.text = text; }));
    }
    section.append(fieldsBox);
    section.append(button("Save system", () => {
        void app.saveSystem().then(() => rerender(app));
    }));
    return section;
}

function probeView(app: ParticipantApp): HTMLElement {
    const box = el("div", { class: "probes" }, el("h3", {}, "Probe history"));
    for (const probe of [...app.probes].reverse()) {
        const entries = beliefEntries(probe.report)
            .map(([label, value]) => `${label} = ${value}`).join(", ");
        box.append(el("div", { class: "probe" },
            `(${readingDisplay(probe.temperature)}, ${readingDisplay(probe.pressure)}) ` +
            `→ ${entries} → ${verdictLabel(probe.report.verdict)}`));
    }
    return box;
}

function renderConsole(app: ParticipantApp): HTMLElement {
    const section = el("section", { class: "card" }, el("h2", {}, "Test console"));
    const temp = el("input", { type: "text", placeholder: "temperature" });
    const pressure = el("input", { type: "text", placeholder: "pressure" });
    const run = button("Run probe", () => {
        const t = Number(temp.value);
        const p = Number(pressure.value);
        if (Number.isFinite(t) && Number.isFinite(p)) void app.runProbe(t, p);
    });
    section.append(
        el("p", {}, "Try readings of your own choosing; refine the system in the "
            + "editor until you are satisfied."),
        el("div", { class: "probe-form" },
           el("label", {}, "Temperature: ", temp),
           el("label", {}, "Pressure: ", pressure), run),
        probeView(app),
        el("hr", {}),
        button("Finish: run the 30 test trials", () => { void app.finish(); },
               "btn primary"));
    return section;
}

function renderResults(app: ParticipantApp): HTMLElement {
    const section = el("section", { class: "card" }, el("h2", {}, "Results"));
    const summary = app.summary;
    if (!summary) return section;
    section.append(
        el("p", {}, `Overall accuracy: `, el("strong", {}, percent(summary.accuracy))),
        el("p", {}, `Consistent evidence: ${percent(summary.consistent_accuracy)}`),
        el("p", { class: "highlight" },
           `Mixed evidence: ${percent(summary.mixed_accuracy)}`),
        el("p", {}, `Tuning probes used: ${summary.trials_to_tune}`));
    const table = el("table", {},
        el("tr", {}, el("th", {}, "#"), el("th", {}, "temp"), el("th", {}, "pressure"),
           el("th", {}, "evidence"), el("th", {}, "answer"), el("th", {}, "truth"),
           el("th", {}, "correct")));
    summary.records.forEach((r, i) => {
        table.append(el("tr", { class: r.evidence_type === "mixed" ? "mixed-row" : "" },
            el("td", {}, String(i + 1)),
            el("td", {}, readingDisplay(r.temperature)),
            el("td", {}, readingDisplay(r.pressure)),
            el("td", {}, r.evidence_type),
            el("td", {}, r.answer),
            el("td", {}, r.correct_answer),
            el("td", {}, r.correct ? "✓" : "✗")));
    });
    section.append(table);
    return section;
}
