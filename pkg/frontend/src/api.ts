// Thin fetch client for the game server. The UI never transitions game
// state locally: every mutation returns the authoritative snapshot.

import type {
    ApiError,
    CreateResponse,
    GameConfig,
    MovesResponse,
    Snapshot,
    Transcript,
} from "./model.js";

export type ApiResult<T> =
    | { ok: true; value: T }
    | { ok: false; status: number; error: ApiError };

async function parse<T>(response: Response): Promise<ApiResult<T>> {
    const body = await response.json();
    if (response.ok) {
        return { ok: true, value: body as T };
    }
    const error: ApiError = body?.error ?? {
        code: "unknown",
        reason: `status ${response.status}`,
    };
    return { ok: false, status: response.status, error };
}

export class GameApi {
    constructor(private readonly baseUrl: string = "") {}

    private url(path: string): string {
        return `${this.baseUrl}${path}`;
    }

    async createGame(config: GameConfig): Promise<ApiResult<CreateResponse>> {
        const response = await fetch(this.url("/games"), {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify(config),
        });
        return parse<CreateResponse>(response);
    }

    async getState(id: string): Promise<ApiResult<Snapshot>> {
        return parse<Snapshot>(await fetch(this.url(`/games/${id}`)));
    }

    async getMoves(id: string): Promise<ApiResult<MovesResponse>> {
        return parse<MovesResponse>(await fetch(this.url(`/games/${id}/moves`)));
    }

    async postMove(id: string, edge: [string, string]): Promise<ApiResult<Snapshot>> {
        const response = await fetch(this.url(`/games/${id}/moves`), {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify({ edge }),
        });
        return parse<Snapshot>(response);
    }

    async postFinalize(id: string): Promise<ApiResult<Snapshot>> {
        const response = await fetch(this.url(`/games/${id}/finalize`), {
            method: "POST",
        });
        return parse<Snapshot>(response);
    }

    async getTranscript(id: string): Promise<ApiResult<Transcript>> {
        return parse<Transcript>(await fetch(this.url(`/games/${id}/transcript`)));
    }
}

export interface DriveResult {
    id: string;
    snapshots: Snapshot[];
    final: Snapshot;
}

// Replay a move script: finalize whenever the ball is stuck, otherwise
// apply the next scripted slide. Used by the undo feature (replay of a
// transcript prefix into a fresh session) and by the tests.
export async function replayScript(
    api: GameApi,
    config: GameConfig,
    script: [string, string][],
): Promise<DriveResult> {
    const created = await api.createGame(config);
    if (!created.ok) {
        throw new Error(`create failed: ${created.error.reason}`);
    }
    const id = created.value.id;
    let snapshot = created.value.snapshot;
    const snapshots = [snapshot];
    let index = 0;
    while (!snapshot.finished) {
        if (snapshot.can_finalize) {
            const result = await api.postFinalize(id);
            if (!result.ok) throw new Error(result.error.reason);
            snapshot = result.value;
        } else {
            if (index >= script.length) {
                break; // out of scripted moves; leave the session mid-game
            }
            const result = await api.postMove(id, script[index]);
            index += 1;
            if (!result.ok) throw new Error(result.error.reason);
            snapshot = result.value;
        }
        snapshots.push(snapshot);
    }
    return { id, snapshots, final: snapshot };
}
