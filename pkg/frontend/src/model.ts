// Wire types mirroring the game server's snapshot and transcript documents.

export interface BoardElement {
    id: string;
    rank: number;
    slot: number;
}

export interface Wall {
    edge: [string, string];
    reason: string;
}

export interface Snapshot {
    id: string;
    variant: string;
    targets: number[] | null;
    initial: string[];
    board: {
        elements: BoardElement[];
        covers: [string, string][];
    };
    k: number;
    ball: string | null;
    occupied: string[];
    rolldown: Record<string, string>;
    walls: Wall[];
    tally: Record<string, number>;
    legal_moves: [string, string][];
    can_finalize: boolean;
    finished: boolean;
    success: boolean | null;
}

export interface CreateResponse {
    id: string;
    snapshot: Snapshot;
}

export interface MovesResponse {
    moves: [string, string][];
    can_finalize: boolean;
    finished: boolean;
}

export interface Transcript {
    config: unknown;
    moves: { ball: string; edge: [string, string] }[];
    rolldown: Record<string, string>;
    success: boolean | null;
}

export interface ApiError {
    code: string;
    reason: string;
}

export type GameConfig = Record<string, unknown>;
