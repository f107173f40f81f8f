// Schema-driven form models for the engine editors.
//
// Field values live as strings while editing; numbers cross the wire.
// JavaScript's Number<->string conversion is shortest-round-trip, so a value
// fetched from the API, shown in a field, and saved back is bit-identical.

import type { EngineSchema, FieldSchema, SystemDoc } from "./types.js";

export interface FieldState {
    schema: FieldSchema;
    text: string;
    error: string | null;
}

export interface RuleRow {
    antecedent: string;
    fields: FieldState[];
}

export interface FormModel {
    kind: string;
    label: string;
    scale: string;
    scalars: FieldState[];
    rules: { path: string; antecedents: string[]; fieldSchemas: FieldSchema[];
             rows: RuleRow[] } | null;
    generalError: string | null;
}

function isIndex(segment: string): boolean {
    return /^\d+$/.test(segment);
}

export function getPath(doc: unknown, path: string): unknown {
    let node: unknown = doc;
    for (const segment of path.split(".")) {
        if (node === null || node === undefined) return undefined;
        if (Array.isArray(node)) {
            node = node[Number(segment)];
        } else if (typeof node === "object") {
            node = (node as Record<string, unknown>)[segment];
        } else {
            return undefined;
        }
    }
    return node;
}

export function setPath(doc: Record<string, unknown>, path: string, value: unknown): void {
    const segments = path.split(".");
    let node: Record<string, unknown> | unknown[] = doc;
    for (let i = 0; i < segments.length - 1; i++) {
        const key = segments[i];
        const nextIsIndex = isIndex(segments[i + 1]);
        const container = Array.isArray(node)
            ? (node as unknown[])[Number(key)]
            : (node as Record<string, unknown>)[key];
        if (container === undefined || container === null) {
            const fresh: Record<string, unknown> | unknown[] = nextIsIndex ? [] : {};
            if (Array.isArray(node)) (node as unknown[])[Number(key)] = fresh;
            else (node as Record<string, unknown>)[key] = fresh;
            node = fresh;
        } else {
            node = container as Record<string, unknown> | unknown[];
        }
    }
    const last = segments[segments.length - 1];
    if (Array.isArray(node)) (node as unknown[])[Number(last)] = value;
    else (node as Record<string, unknown>)[last] = value;
}

export function numberToText(value: unknown): string {
    return typeof value === "number" ? String(value) : "";
}

function fieldState(schema: FieldSchema, doc: SystemDoc | null): FieldState {
    const existing = doc ? getPath(doc, schema.path) : undefined;
    const fallback = schema.default !== undefined ? String(schema.default) : "";
    return {
        schema,
        text: existing !== undefined ? numberToText(existing) : fallback,
        error: null,
    };
}

function ruleRowFromDoc(fieldSchemas: FieldSchema[],
                        rule: Record<string, unknown>): RuleRow {
    return {
        antecedent: String(rule["antecedent"] ?? ""),
        fields: fieldSchemas.map((fs) => ({
            schema: fs,
            text: numberToText(rule[fs.path]),
            error: null,
        })),
    };
}

export function emptyRuleRow(model: FormModel): RuleRow {
    if (!model.rules) throw new Error(`engine ${model.kind} has no rules`);
    return {
        antecedent: model.rules.antecedents[0],
        fields: model.rules.fieldSchemas.map((fs) => ({ schema: fs, text: "", error: null })),
    };
}

/** Build the editable model for one engine, pre-filled from a stored document. */
export function buildFormModel(kind: string, schema: EngineSchema,
                               doc: SystemDoc | null): FormModel {
    const model: FormModel = {
        kind,
        label: schema.label,
        scale: schema.scale,
        scalars: schema.fields.map((fs) => fieldState(fs, doc)),
        rules: null,
        generalError: null,
    };
    if (schema.rules) {
        const docRules = doc ? (getPath(doc, schema.rules.path) as unknown[]) ?? [] : [];
        model.rules = {
            path: schema.rules.path,
            antecedents: schema.rules.antecedents,
            fieldSchemas: schema.rules.fields,
            rows: (docRules as Record<string, unknown>[]).map((r) =>
                ruleRowFromDoc(schema.rules!.fields, r)),
        };
        if (model.rules.rows.length === 0) model.rules.rows.push(emptyRuleRow(model));
    }
    return model;
}

function parseField(field: FieldState): number | null {
    const text = field.text.trim();
    if (text === "") {
        field.error = "required";
        return null;
    }
    const value = Number(text);
    if (!Number.isFinite(value)) {
        field.error = "not a number";
        return null;
    }
    if (field.schema.min !== undefined && value < field.schema.min) {
        field.error = `must be ≥ ${field.schema.min}`;
        return null;
    }
    if (field.schema.max !== undefined && value > field.schema.max) {
        field.error = `must be ≤ ${field.schema.max}`;
        return null;
    }
    field.error = null;
    return value;
}

/**
 * Assemble the wire document from the form, recording per-field errors.
 * Range checks here are hints only; the server remains authoritative.
 */
export function formToDoc(model: FormModel): SystemDoc | null {
    let ok = true;
    const doc: SystemDoc = { kind: model.kind };
    for (const field of model.scalars) {
        const value = parseField(field);
        if (value === null) { ok = false; continue; }
        setPath(doc, field.schema.path, value);
    }
    if (model.rules) {
        const rules: Record<string, unknown>[] = [];
        for (const row of model.rules.rows) {
            const rule: Record<string, unknown> = { antecedent: row.antecedent };
            for (const field of row.fields) {
                const value = parseField(field);
                if (value === null) { ok = false; continue; }
                rule[field.schema.path] = value;
            }
            rules.push(rule);
        }
        setPath(doc, model.rules.path, rules);
    }
    return ok ? doc : null;
}

function clearErrors(model: FormModel): void {
    model.generalError = null;
    for (const f of model.scalars) f.error = null;
    for (const row of model.rules?.rows ?? []) for (const f of row.fields) f.error = null;
}

/** Attach server-side validation messages to the fields they name. */
export function applyServerErrors(
    model: FormModel,
    details: { field: string; message: string }[],
    message: string,
): void {
    clearErrors(model);
    const unmatched: string[] = [];
    for (const detail of details) {
        const name = detail.field.split(".").pop() ?? detail.field;
        let hit = false;
        for (const f of model.scalars) {
            const tail = f.schema.path.split(".").pop();
            if (f.schema.path === detail.field || tail === name) {
                f.error = detail.message;
                hit = true;
            }
        }
        for (const row of model.rules?.rows ?? []) {
            for (const f of row.fields) {
                if (f.schema.path === name) {
                    f.error = detail.message;
                    hit = true;
                }
            }
        }
        if (!hit) unmatched.push(`${detail.field}: ${detail.message}`);
    }
    model.generalError = unmatched.length > 0 ? unmatched.join("; ") : message;
}
