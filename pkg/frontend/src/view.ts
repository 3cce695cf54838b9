// Pure rendering: layout -> SVG markup string, plus the banner and table
// fragments. Render state is a function of the last server snapshot only.

import { BoardLayout, TallyRow, layoutBoard, rolldownRows, tallyRows } from "./layout.js";
import type { Snapshot } from "./model.js";

const RADIUS = 7;

function escapeXml(text: string): string {
    return text
        .replace(/&/g, "&amp;")
        .replace(/</g, "&lt;")
        .replace(/>/g, "&gt;")
        .replace(/"/g, "&quot;");
}

export function renderBoardSvg(snapshot: Snapshot): string {
    const layout: BoardLayout = layoutBoard(snapshot);
    const parts: string[] = [];
    parts.push(
        `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${layout.width} ${layout.height}" ` +
            `width="${layout.width}" height="${layout.height}" class="board">`,
    );
    for (const edge of layout.edges) {
        const classes = `edge edge-${edge.state}`;
        const data =
            `data-from="${escapeXml(edge.from)}" data-to="${escapeXml(edge.to)}"` +
            (edge.reason ? ` data-reason="${escapeXml(edge.reason)}"` : "");
        parts.push(
            `<line class="${classes}" ${data} x1="${edge.x1}" y1="${edge.y1}" ` +
                `x2="${edge.x2}" y2="${edge.y2}" />`,
        );
    }
    for (const vertex of layout.vertices) {
        const group: string[] = [];
        group.push(`<circle class="slot" cx="${vertex.x}" cy="${vertex.y}" r="3.5" />`);
        if (vertex.circled) {
            group.push(
                `<circle class="initial" cx="${vertex.x}" cy="${vertex.y}" r="${RADIUS + 4}" />`,
            );
        }
        if (vertex.squared) {
            const side = (RADIUS + 6) * 2;
            group.push(
                `<rect class="rested" x="${vertex.x - side / 2}" y="${vertex.y - side / 2}" ` +
                    `width="${side}" height="${side}" />`,
            );
        }
        if (vertex.ball) {
            group.push(`<circle class="ball" cx="${vertex.x}" cy="${vertex.y}" r="${RADIUS}" />`);
        }
        group.push(
            `<text class="label" x="${vertex.x + 12}" y="${vertex.y - 8}">` +
                `${escapeXml(vertex.id)}</text>`,
        );
        parts.push(`<g class="vertex" data-id="${escapeXml(vertex.id)}">${group.join("")}</g>`);
    }
    parts.push("</svg>");
    return parts.join("\n");
}

export function renderTallyBar(snapshot: Snapshot): string {
    const rows: TallyRow[] = tallyRows(snapshot);
    if (!rows.length) {
        return "";
    }
    const cells = rows
        .map(
            (row) =>
                `<span class="tally${row.full ? " tally-full" : ""}" data-rank="${row.rank}">` +
                `rank ${row.rank}: ${row.count}/${row.target}</span>`,
        )
        .join(" ");
    return `<div class="tally-bar">${cells}</div>`;
}

export function renderRolldownTable(snapshot: Snapshot): string {
    const rows = rolldownRows(snapshot);
    const body = rows
        .map(
            ([origin, rest], index) =>
                `<tr><td>${index + 1}</td><td>${escapeXml(origin)}</td>` +
                `<td>${escapeXml(rest)}</td></tr>`,
        )
        .join("");
    return (
        `<table class="rolldown"><thead><tr><th>step</th><th>w</th><th>v</th></tr></thead>` +
        `<tbody>${body}</tbody></table>`
    );
}

export function renderBanner(snapshot: Snapshot): string {
    if (!snapshot.finished) {
        return snapshot.ball
            ? `<div class="banner">ball at <b>${escapeXml(snapshot.ball)}</b>` +
                  (snapshot.can_finalize ? " - cannot roll, finalize it" : " - pick a slide") +
                  `</div>`
            : "";
    }
    if (snapshot.success === null) {
        return `<div class="banner done">game over</div>`;
    }
    return snapshot.success
        ? `<div class="banner success">successful game: the rank histogram matches the targets</div>`
        : `<div class="banner failure">unsuccessful game</div>`;
}
