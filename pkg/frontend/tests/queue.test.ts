import assert from "node:assert/strict";
import { test } from "node:test";

import type { SessionClient } from "../src/api.js";
import { ChartController } from "../src/controller.js";
import type { CommandResponse, CorpusExample, CreateSessionResponse } from "../src/types.js";
import { FakeHost } from "./fakes.js";

const EXAMPLE: CorpusExample = {
    name: "tiny",
    variant: "encodingTree",
    spec: {
        mark: "point",
        encoding: {
            x: { field: "x", type: "quantitative" },
            y: { field: "y", type: "quantitative" },
        },
    },
    data: [
        { x: 1, y: 2 },
        { x: 3, y: 4 },
    ],
};

const CREATED: CreateSessionResponse = {
    sessionId: "s1",
    summaryUtterance: "Chart. Point mark.",
    structureDump: {
        form: "tree",
        variant: "encodingTree",
        rootId: "root",
        branches: {},
        nodes: [
            { id: "root", kind: "root", role: "root", label: "Chart", parentId: null, childIds: ["root/x"], spatialCoord: null, granularity: "existence", rowIds: [0, 1] },
            { id: "root/x", kind: "channelBranch", role: "x", label: "X-axis: x", parentId: "root", childIds: [], spatialCoord: null, granularity: "overview", rowIds: [0, 1] },
        ],
    },
};

function makeResponse(cursorId: string, utterance: string, highlight: number[]): CommandResponse {
    return {
        status: "moved",
        cursorId,
        cursorPath: ["root", cursorId],
        utterance,
        highlightRowIds: highlight,
        levelChanged: true,
        clamped: false,
        invalidCode: null,
    };
}

interface Pending {
    resolve: (response: CommandResponse) => void;
    verb: string;
}

function fakeApi() {
    const pending: Pending[] = [];
    let inFlight = 0;
    let maxInFlight = 0;
    const api = {
        async getExample() {
            return EXAMPLE;
        },
        async createSession() {
            return CREATED;
        },
        sendCommand(_session: string, verb: string) {
            inFlight += 1;
            maxInFlight = Math.max(maxInFlight, inFlight);
            return new Promise<CommandResponse>((resolve) => {
                pending.push({
                    verb,
                    resolve: (response) => {
                        inFlight -= 1;
                        resolve(response);
                    },
                });
            });
        },
        async landmarks() {
            return { landmarks: [] };
        },
    };
    return { api: api as unknown as SessionClient, pending, stats: () => ({ maxInFlight }) };
}

test("keys queue: one command in flight, order preserved, live text follows", async () => {
    const { api, pending, stats } = fakeApi();
    const host = new FakeHost();
    const controller = new ChartController(api, host);
    await controller.start("tiny");
    assert.equal(host.liveText, "Chart. Point mark.");

    assert.equal(controller.handleKey({ key: "ArrowDown" }), true);
    assert.equal(controller.handleKey({ key: "ArrowRight" }), true);
    assert.equal(controller.handleKey({ key: "ArrowRight", repeat: true }), false); // repeat suppressed
    assert.equal(controller.handleKey({ key: "z" }), false); // not in the contract
    assert.equal(controller.handleKey({ key: "w" }), true);

    // wait for the first command to reach the fake service
    await new Promise((resolve) => setImmediate(resolve));
    assert.equal(pending.length, 1, "later commands must wait for the first");
    assert.equal(pending[0].verb, "down");
    pending[0].resolve(makeResponse("root/x", "X-axis.", [0]));

    await new Promise((resolve) => setImmediate(resolve));
    assert.equal(pending.length, 2);
    assert.equal(pending[1].verb, "right");
    pending[1].resolve(makeResponse("root/x", "End of region. X-axis.", [0]));

    await new Promise((resolve) => setImmediate(resolve));
    assert.equal(pending[2].verb, "spatialUp");
    pending[2].resolve(makeResponse("root/x", "That move is not available here.", [0, 1]));

    await controller.idle();
    assert.equal(stats().maxInFlight, 1);
    assert.deepEqual(host.announcements, [
        "Chart. Point mark.",
        "X-axis.",
        "End of region. X-axis.",
        "That move is not available here.",
    ]);
    assert.equal(host.statusLines[host.statusLines.length - 1], "Chart > X-axis: x");
});

test("tab opens the menu and question mark shows help without commands", async () => {
    const { api, pending } = fakeApi();
    const host = new FakeHost();
    const controller = new ChartController(api, host);
    await controller.start("tiny");
    controller.handleKey({ key: "Tab" });
    controller.handleKey({ key: "?" });
    await new Promise((resolve) => setImmediate(resolve));
    assert.equal(host.menuOpened, 1);
    assert.equal(host.helpShown, 1);
    assert.equal(pending.length, 0);
});

test("service failure is shown and spoken", async () => {
    const host = new FakeHost();
    const api = {
        async getExample() {
            return EXAMPLE;
        },
        async createSession() {
            return CREATED;
        },
        async sendCommand() {
            throw new Error("boom");
        },
        async landmarks() {
            return { landmarks: [] };
        },
    } as unknown as SessionClient;
    const controller = new ChartController(api, host);
    await controller.start("tiny");
    await controller.issue("down");
    assert.equal(host.errors.length, 1);
    assert.match(host.liveText, /Connection problem/);
});
