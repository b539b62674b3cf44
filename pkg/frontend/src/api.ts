/** Thin fetch wrapper over the session service; all navigation logic stays server-side. */

import type {
    CommandResponse,
    CorpusEntry,
    CorpusExample,
    CreateSessionResponse,
    DescriptionConfigPayload,
    Landmark,
    Verb,
} from "./types.js";

export class ServiceError extends Error {
    constructor(
        message: string,
        public readonly code: string,
        public readonly status: number,
    ) {
        super(message);
    }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class SessionClient {
    constructor(
        private readonly baseUrl: string,
        private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
    ) {}

    private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
        const init: RequestInit = { method };
        if (body !== undefined) {
            init.headers = { "Content-Type": "application/json" };
            init.body = JSON.stringify(body);
        }
        const response = await this.fetchImpl(this.baseUrl + path, init);
        const payload = (await response.json()) as Record<string, unknown>;
        if (!response.ok) {
            const error = (payload as { error?: { code?: string; message?: string } }).error ?? {};
            throw new ServiceError(error.message ?? response.statusText, error.code ?? "UNKNOWN", response.status);
        }
        return payload as T;
    }

    listExamples(): Promise<{ examples: CorpusEntry[] }> {
        return this.request("GET", "/corpus");
    }

    getExample(name: string): Promise<CorpusExample> {
        return this.request("GET", `/corpus/${encodeURIComponent(name)}`);
    }

    createSession(payload: {
        example?: string;
        spec?: unknown;
        data?: unknown;
        variant?: string;
        drillOrders?: string[][];
        binaryLeafSize?: number;
        descriptionConfig?: DescriptionConfigPayload;
    }): Promise<CreateSessionResponse> {
        return this.request("POST", "/sessions", payload);
    }

    sendCommand(sessionId: string, verb: Verb, target?: string): Promise<CommandResponse> {
        const body: { verb: Verb; target?: string } = { verb };
        if (target !== undefined) body.target = target;
        return this.request("POST", `/sessions/${sessionId}/commands`, body);
    }

    landmarks(sessionId: string, kinds: string[]): Promise<{ landmarks: Landmark[] }> {
        const query = kinds.length ? `?kind=${encodeURIComponent(kinds.join(","))}` : "";
        return this.request("GET", `/sessions/${sessionId}/landmarks${query}`);
    }

    deleteSession(sessionId: string): Promise<{ deleted: boolean }> {
        return this.request("DELETE", `/sessions/${sessionId}`);
    }
}
