// DOM wiring: new-game form -> board -> click-slide -> finalize -> export.
// The server is authoritative; every click re-renders from its snapshot.

import { GameApi, replayScript } from "./api.js";
import type { GameConfig, Snapshot } from "./model.js";
import { renderBanner, renderBoardSvg, renderRolldownTable, renderTallyBar } from "./view.js";

interface AppState {
    api: GameApi;
    gameId: string | null;
    snapshot: Snapshot | null;
    config: GameConfig | null;
    flash: string;
}

const FIGURES = ["fig1", "fig2", "fig3", "fig4"];

function configFromForm(form: HTMLFormElement): GameConfig {
    const data = new FormData(form);
    const preset = String(data.get("preset") ?? "fig2");
    if (FIGURES.includes(preset)) {
        return { builtin: "figure", target: preset };
    }
    if (preset === "custom") {
        const raw = String(data.get("config") ?? "{}");
        return JSON.parse(raw) as GameConfig;
    }
    throw new Error(`unknown preset ${preset}`);
}

function render(root: HTMLElement, state: AppState): void {
    const board = root.querySelector<HTMLElement>("#board")!;
    const side = root.querySelector<HTMLElement>("#side")!;
    if (!state.snapshot) {
        board.innerHTML = "<p>No game yet: pick a preset and start one.</p>";
        side.innerHTML = "";
        return;
    }
    const snapshot = state.snapshot;
    board.innerHTML = renderBoardSvg(snapshot);
    side.innerHTML = [
        state.flash ? `<div class="flash">${state.flash}</div>` : "",
        renderBanner(snapshot),
        renderTallyBar(snapshot),
        `<div class="controls">` +
            `<button id="finalize" ${snapshot.can_finalize ? "" : "disabled"}>finalize</button>` +
            `<button id="undo" ${snapshot.k > 1 || Object.keys(snapshot.rolldown).length ? "" : "disabled"}>undo</button>` +
            `<button id="export" ${state.gameId ? "" : "disabled"}>export transcript</button>` +
            `</div>`,
        renderRolldownTable(snapshot),
    ].join("\n");
    wireBoard(root, state);
}

function wireBoard(root: HTMLElement, state: AppState): void {
    for (const line of root.querySelectorAll<SVGLineElement>("line.edge-legal")) {
        line.addEventListener("click", async () => {
            if (!state.gameId) return;
            const edge: [string, string] = [line.dataset.from!, line.dataset.to!];
            const result = await state.api.postMove(state.gameId, edge);
            if (result.ok) {
                state.snapshot = result.value;
                state.flash = "";
            } else {
                // 409: show the wall reason inline; the state is unchanged
                state.flash = `illegal slide: ${result.error.reason}`;
                const fresh = await state.api.getState(state.gameId);
                if (fresh.ok) state.snapshot = fresh.value;
            }
            render(root, state);
        });
    }
    root.querySelector<HTMLButtonElement>("#finalize")?.addEventListener("click", async () => {
        if (!state.gameId) return;
        const result = await state.api.postFinalize(state.gameId);
        if (result.ok) {
            state.snapshot = result.value;
            state.flash = "";
        } else {
            state.flash = `cannot finalize: ${result.error.reason}`;
        }
        render(root, state);
    });
    root.querySelector<HTMLButtonElement>("#undo")?.addEventListener("click", async () => {
        if (!state.gameId || !state.config) return;
        // undo = replay the transcript minus its last slide in a fresh session
        const transcript = await state.api.getTranscript(state.gameId);
        if (!transcript.ok) return;
        const moves = transcript.value.moves.map((m) => m.edge);
        const prefix = moves.slice(0, Math.max(0, moves.length - 1));
        const replayed = await replayScript(state.api, state.config, prefix);
        state.gameId = replayed.id;
        state.snapshot = replayed.final;
        state.flash = "";
        render(root, state);
    });
    root.querySelector<HTMLButtonElement>("#export")?.addEventListener("click", async () => {
        if (!state.gameId) return;
        const transcript = await state.api.getTranscript(state.gameId);
        if (!transcript.ok) return;
        const blob = new Blob([JSON.stringify(transcript.value, null, 2)], {
            type: "application/json",
        });
        const anchor = document.createElement("a");
        anchor.href = URL.createObjectURL(blob);
        anchor.download = `${state.gameId}-transcript.json`;
        anchor.click();
        URL.revokeObjectURL(anchor.href);
    });
}

export function init(root: HTMLElement, baseUrl = ""): AppState {
    const state: AppState = {
        api: new GameApi(baseUrl),
        gameId: null,
        snapshot: null,
        config: null,
        flash: "",
    };
    const form = root.querySelector<HTMLFormElement>("#new-game")!;
    form.addEventListener("submit", async (event) => {
        event.preventDefault();
        let config: GameConfig;
        try {
            config = configFromForm(form);
        } catch (err) {
            state.flash = `bad config: ${err}`;
            render(root, state);
            return;
        }
        const created = await state.api.createGame(config);
        if (!created.ok) {
            state.flash = `server rejected the config: ${created.error.reason}`;
            render(root, state);
            return;
        }
        state.config = config;
        state.gameId = created.value.id;
        state.snapshot = created.value.snapshot;
        state.flash = "";
        render(root, state);
    });
    render(root, state);
    return state;
}
