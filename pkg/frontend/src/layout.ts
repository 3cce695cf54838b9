// Pure layout: snapshot -> positioned vertices and edges. The server's
// layout hint (rank row + slot index) fixes the picture, bottom-up like
// the hand-drawn diagrams: minimal elements at the bottom of the page.

import type { Snapshot } from "./model.js";

export interface LayoutOptions {
    width: number;
    rowHeight: number;
    margin: number;
}

export const DEFAULT_LAYOUT: LayoutOptions = { width: 760, rowHeight: 86, margin: 48 };

export type EdgeState = "open" | "walled" | "legal";

export interface VertexView {
    id: string;
    rank: number;
    x: number;
    y: number;
    circled: boolean; // initial subset
    squared: boolean; // occupied (rested) slots
    ball: boolean;
}

export interface EdgeView {
    from: string; // upper vertex
    to: string; // lower vertex
    x1: number;
    y1: number;
    x2: number;
    y2: number;
    state: EdgeState;
    reason?: string;
}

export interface BoardLayout {
    width: number;
    height: number;
    vertices: VertexView[];
    edges: EdgeView[];
}

export function layoutBoard(snapshot: Snapshot, options: LayoutOptions = DEFAULT_LAYOUT): BoardLayout {
    const ranks = snapshot.board.elements.map((e) => e.rank);
    const maxRank = Math.max(...ranks, 0);
    const rowCounts = new Map<number, number>();
    for (const element of snapshot.board.elements) {
        rowCounts.set(element.rank, (rowCounts.get(element.rank) ?? 0) + 1);
    }
    const height = options.margin * 2 + maxRank * options.rowHeight;
    const positions = new Map<string, { x: number; y: number }>();
    const initial = new Set(snapshot.initial);
    const occupied = new Set(snapshot.occupied);
    const vertices: VertexView[] = snapshot.board.elements.map((element) => {
        const rowWidth = rowCounts.get(element.rank) ?? 1;
        const x = ((element.slot + 1) / (rowWidth + 1)) * options.width;
        const y = options.margin + (maxRank - element.rank) * options.rowHeight;
        positions.set(element.id, { x, y });
        return {
            id: element.id,
            rank: element.rank,
            x,
            y,
            circled: initial.has(element.id),
            squared: occupied.has(element.id),
            ball: snapshot.ball === element.id,
        };
    });
    const wallReasons = new Map<string, string>();
    for (const wall of snapshot.walls) {
        wallReasons.set(wall.edge.join("->"), wall.reason);
    }
    const legal = new Set(snapshot.legal_moves.map((edge) => edge.join("->")));
    const edges: EdgeView[] = snapshot.board.covers.map(([upper, lower]) => {
        const a = positions.get(upper)!;
        const b = positions.get(lower)!;
        const key = `${upper}->${lower}`;
        let state: EdgeState = "open";
        let reason: string | undefined;
        if (wallReasons.has(key)) {
            state = "walled";
            reason = wallReasons.get(key);
        } else if (legal.has(key)) {
            state = "legal";
        }
        return { from: upper, to: lower, x1: a.x, y1: a.y, x2: b.x, y2: b.y, state, reason };
    });
    return { width: options.width, height, vertices, edges };
}

export interface TallyRow {
    rank: number;
    count: number;
    target: number;
    full: boolean;
}

export function tallyRows(snapshot: Snapshot): TallyRow[] {
    if (!snapshot.targets) {
        return [];
    }
    return snapshot.targets.map((target, rank) => {
        const count = snapshot.tally[String(rank)] ?? 0;
        return { rank, count, target, full: count >= target };
    });
}

// The two-column (w_k, v_k) table in release order; unfinished balls are
// simply absent.
export function rolldownRows(snapshot: Snapshot): [string, string][] {
    const rows: [string, string][] = [];
    for (const origin of snapshot.initial) {
        const rest = snapshot.rolldown[origin];
        if (rest !== undefined) {
            rows.push([origin, rest]);
        }
    }
    return rows;
}
