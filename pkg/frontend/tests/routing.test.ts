import { describe, expect, it } from "vitest";

import { screenAllowed, screenForPhase } from "../src/controller.js";
import type { Phase } from "../src/types.js";

const PHASES: Phase[] = ["Learning", "Building", "Tuning", "Testing", "Done"];

describe("phase routing", () => {
    it("maps each phase to its screen", () => {
        expect(screenForPhase("Learning")).toBe("learning");
        expect(screenForPhase("Building")).toBe("editor");
        expect(screenForPhase("Tuning")).toBe("console");
        expect(screenForPhase("Testing")).toBe("results");
        expect(screenForPhase("Done")).toBe("results");
    });

    it("never reaches the editor before Building", () => {
        expect(screenAllowed("editor", "Learning")).toBe(false);
        expect(screenAllowed("editor", "Building")).toBe(true);
        expect(screenAllowed("editor", "Tuning")).toBe(true);
        expect(screenAllowed("editor", "Done")).toBe(false);
    });

    it("console requires Tuning", () => {
        for (const phase of PHASES) {
            expect(screenAllowed("console", phase)).toBe(phase === "Tuning");
        }
    });

    it("learning only during Learning", () => {
        for (const phase of PHASES) {
            expect(screenAllowed("learning", phase)).toBe(phase === "Learning");
        }
    });

    it("results only after testing has started", () => {
        for (const phase of PHASES) {
            expect(screenAllowed("results", phase))
                .toBe(phase === "Testing" || phase === "Done");
        }
    });
});
