// Display formatting. Belief values are rendered verbatim (shortest
// round-trip string of the API's number); only raw readings get rounded.

import type { BeliefReportDoc } from "./types.js";

export const SCALE_LABELS: Record<string, string> = {
    "cf": "certainty factor",
    "probability": "probability",
    "posterior-probability-with-prior": "posterior probability (with prior)",
    "belief-pair": "belief pair",
    "membership-degree": "membership degree",
};

export const VALUE_LABELS: Record<string, string> = {
    cf: "CF",
    probability: "P(malfunction)",
    raw: "raw (unclamped)",
    posterior: "posterior",
    prior: "prior",
    bel_w: "Bel(working)",
    bel_m: "Bel(malfunction)",
    degree: "degree",
};

export function verdictLabel(verdict: "M" | "W"): string {
    return verdict === "M" ? "M — malfunction" : "W — working";
}

export function readingDisplay(value: number): string {
    return value.toFixed(1);
}

/** [label, verbatim value] pairs for a belief report, stable order. */
export function beliefEntries(report: BeliefReportDoc): [string, string][] {
    const order = ["cf", "probability", "raw", "posterior", "prior",
                   "bel_w", "bel_m", "degree"];
    const keys = Object.keys(report.values)
        .sort((a, b) => order.indexOf(a) - order.indexOf(b));
    return keys.map((k) => [VALUE_LABELS[k] ?? k, String(report.values[k])]);
}

export function percent(value: number | null): string {
    return value === null ? "n/a" : `${(100 * value).toFixed(1)}%`;
}
