/** Thin fetch wrapper over the session service; all navigation logic stays server-side. */
export class ServiceError extends Error {
    constructor(message, code, status) {
        super(message);
        this.code = code;
        this.status = status;
    }
}
export class SessionClient {
    constructor(baseUrl, fetchImpl = (input, init) => fetch(input, init)) {
        this.baseUrl = baseUrl;
        this.fetchImpl = fetchImpl;
    }
    async request(method, path, body) {
        const init = { method };
        if (body !== undefined) {
            init.headers = { "Content-Type": "application/json" };
            init.body = JSON.stringify(body);
        }
        const response = await this.fetchImpl(this.baseUrl + path, init);
        const payload = (await response.json());
        if (!response.ok) {
            const error = payload.error ?? {};
            throw new ServiceError(error.message ?? response.statusText, error.code ?? "UNKNOWN", response.status);
        }
        return payload;
    }
    listExamples() {
        return this.request("GET", "/corpus");
    }
    getExample(name) {
        return this.request("GET", `/corpus/${encodeURIComponent(name)}`);
    }
    createSession(payload) {
        return this.request("POST", "/sessions", payload);
    }
    sendCommand(sessionId, verb, target) {
        const body = { verb };
        if (target !== undefined)
            body.target = target;
        return this.request("POST", `/sessions/${sessionId}/commands`, body);
    }
    landmarks(sessionId, kinds) {
        const query = kinds.length ? `?kind=${encodeURIComponent(kinds.join(","))}` : "";
        return this.request("GET", `/sessions/${sessionId}/landmarks${query}`);
    }
    deleteSession(sessionId) {
        return this.request("DELETE", `/sessions/${sessionId}`);
    }
}
