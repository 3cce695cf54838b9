import { describe, expect, it } from "vitest";

import type { Snapshot } from "./model.js";
import { renderBanner, renderBoardSvg, renderRolldownTable, renderTallyBar } from "./view.js";

function snapshot(overrides: Partial<Snapshot> = {}): Snapshot {
    return {
        id: "g",
        variant: "betti",
        targets: [1, 1],
        initial: ["a", "b"],
        board: {
            elements: [
                { id: "a", rank: 0, slot: 0 },
                { id: "b", rank: 1, slot: 0 },
            ],
            covers: [["b", "a"]],
        },
        k: 1,
        ball: "a",
        occupied: [],
        rolldown: {},
        walls: [],
        tally: {},
        legal_moves: [],
        can_finalize: true,
        finished: false,
        success: null,
        ...overrides,
    };
}

describe("rendering", () => {
    it("draws walls dashed with their reason attached", () => {
        const svg = renderBoardSvg(
            snapshot({ walls: [{ edge: ["b", "a"], reason: "betti-rank-full" }] }),
        );
        expect(svg).toContain("edge-walled");
        expect(svg).toContain('data-reason="betti-rank-full"');
    });

    it("highlights legal slides", () => {
        const svg = renderBoardSvg(snapshot({ ball: "b", legal_moves: [["b", "a"]] }));
        expect(svg).toContain("edge-legal");
    });

    it("reports the Betti tally with saturated ranks greyed", () => {
        const html = renderTallyBar(snapshot({ tally: { "0": 1 } }));
        expect(html).toContain("rank 0: 1/1");
        expect(html).toContain("tally-full");
    });

    it("banners success exactly when the histogram matched", () => {
        expect(renderBanner(snapshot({ finished: true, ball: null, success: true }))).toContain(
            "successful",
        );
        expect(renderBanner(snapshot({ finished: true, ball: null, success: false }))).toContain(
            "unsuccessful",
        );
        expect(renderBanner(snapshot({ ball: "a", can_finalize: true }))).toContain("finalize");
    });

    it("escapes ids in the table", () => {
        const html = renderRolldownTable(snapshot({ rolldown: { a: "a" } }));
        expect(html).toContain("<td>a</td><td>a</td>");
    });
});
