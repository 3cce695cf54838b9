import { describe, expect, it } from "vitest";

import { layoutBoard, rolldownRows, tallyRows } from "./layout.js";
import type { Snapshot } from "./model.js";

function smallSnapshot(overrides: Partial<Snapshot> = {}): Snapshot {
    return {
        id: "g1",
        variant: "betti",
        targets: [1, 1, 1],
        initial: ["m1", "top"],
        board: {
            elements: [
                { id: "bottom", rank: 0, slot: 0 },
                { id: "m1", rank: 1, slot: 0 },
                { id: "m2", rank: 1, slot: 1 },
                { id: "top", rank: 2, slot: 0 },
            ],
            covers: [
                ["top", "m1"],
                ["top", "m2"],
                ["m1", "bottom"],
                ["m2", "bottom"],
            ],
        },
        k: 2,
        ball: "top",
        occupied: ["bottom"],
        rolldown: { m1: "bottom" },
        walls: [{ edge: ["m1", "bottom"], reason: "occupied" }],
        tally: { "0": 1 },
        legal_moves: [
            ["top", "m1"],
            ["top", "m2"],
        ],
        can_finalize: false,
        finished: false,
        success: null,
        ...overrides,
    };
}

describe("layoutBoard", () => {
    it("places minimal elements at the bottom and spaces rows by slot", () => {
        const layout = layoutBoard(smallSnapshot());
        const byId = new Map(layout.vertices.map((v) => [v.id, v]));
        expect(byId.get("bottom")!.y).toBeGreaterThan(byId.get("m1")!.y);
        expect(byId.get("m1")!.y).toBeGreaterThan(byId.get("top")!.y);
        expect(byId.get("m1")!.x).toBeLessThan(byId.get("m2")!.x);
        // same-rank vertices share a row
        expect(byId.get("m1")!.y).toBe(byId.get("m2")!.y);
    });

    it("marks circled, squared, and ball vertices from the snapshot", () => {
        const layout = layoutBoard(smallSnapshot());
        const byId = new Map(layout.vertices.map((v) => [v.id, v]));
        expect(byId.get("m1")!.circled).toBe(true);
        expect(byId.get("bottom")!.squared).toBe(true);
        expect(byId.get("top")!.ball).toBe(true);
        expect(byId.get("m2")!.circled).toBe(false);
    });

    it("classifies edges as open, walled, or legal", () => {
        const layout = layoutBoard(smallSnapshot());
        const byKey = new Map(layout.edges.map((e) => [`${e.from}->${e.to}`, e]));
        expect(byKey.get("m1->bottom")!.state).toBe("walled");
        expect(byKey.get("m1->bottom")!.reason).toBe("occupied");
        expect(byKey.get("top->m1")!.state).toBe("legal");
        expect(byKey.get("m2->bottom")!.state).toBe("open");
    });
});

describe("tally and rolldown views", () => {
    it("flags saturated ranks", () => {
        const rows = tallyRows(smallSnapshot());
        expect(rows).toEqual([
            { rank: 0, count: 1, target: 1, full: true },
            { rank: 1, count: 0, target: 1, full: false },
            { rank: 2, count: 0, target: 1, full: false },
        ]);
    });

    it("lists rolldowns in release order", () => {
        expect(rolldownRows(smallSnapshot())).toEqual([["m1", "bottom"]]);
    });
});
